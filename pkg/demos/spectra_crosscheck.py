"""Closed-form spectra of both polymer models checked by shooting on the eigen-ODE."""

import math

import numpy as np

from polyzeta import bk_model, sierra_model
from polyzeta.bk_model import PolymerScale, SelfAdjointDomain
from polyzeta.sierra_model import SierraParams
from polyzeta.verify_numeric import bk_spec, shoot_spectrum, sierra_spec


def bk_demo(mu0=0.05, theta=math.pi):
    scale = PolymerScale(mu0)
    dom = SelfAdjointDomain.for_scale(scale, 2 * (math.pi / 4 - 0.3) / mu0, theta)
    closed = np.array([bk_model.spectrum(n, dom, scale) for n in range(8)])
    shot = shoot_spectrum(bk_spec(scale, dom), 8).levels
    print(f"BK model, mu0={mu0}, spacing {bk_model.level_spacing(dom, scale):.6f}")
    for c, s in zip(closed, shot):
        print(f"  closed {c:14.9f}  shot {s:14.9f}  residual {bk_model.boundary_residual(c, dom, scale):.1e}")


def sierra_demo(mu0=0.05, l_p=1.0, m2=40.0, theta=math.pi):
    params = SierraParams.make(l_p, mu0)
    for conv in sierra_model.CONVENTIONS:
        levels = [sierra_model.sierra_spectrum(n, theta, m2, params, conv) for n in range(-4, 0)]
        res = max(sierra_model.sierra_boundary_residual(E, m2, theta, params, conv) for E in levels)
        print(f"Sierra model, {conv} convention: levels n=-4..-1 {np.round(levels, 6)}, "
              f"max residual at levels {res:.2e}")
    shot = shoot_spectrum(sierra_spec(params, m2, theta, "self-adjoint"), 4).levels
    print(f"  shooting (self-adjoint): {np.round(shot, 6)}")


if __name__ == "__main__":
    bk_demo()
    print()
    sierra_demo()
