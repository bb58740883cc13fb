"""Zero staircase of zeta against the smooth count plus the prime-sum correction.

Prints a table at the midpoints between consecutive zeros and then compares the
Berry-Keating and polymer phase-space counts with the area oracle.
"""

import math

import numpy as np

from polyzeta import riemann
from polyzeta.phase_space import ClassicalHamiltonian, PhaseSpaceCuts, area_count_oracle, n_bk, n_poly_closed


def staircase_table():
    zeros = riemann.find_zeros(80.0)
    print(f"{len(zeros.zeros)} zeros below 80, first = {zeros.zeros[0]:.9f}")
    mids = 0.5 * (zeros.zeros[:-1] + zeros.zeros[1:])
    smooth = riemann.smooth_count(mids)
    fl = riemann.fluctuation_sum(mids, 10_000, 10)
    exact = riemann.staircase(mids, zeros).values
    print(f"{'E':>8} {'exact':>6} {'smooth':>9} {'smooth+fl':>10}")
    for E, n, s, f in zip(mids, exact, smooth, fl):
        print(f"{E:8.3f} {int(n):6d} {s:9.4f} {s + f:10.4f}")


def phase_space_table(mu0=0.01):
    cuts = PhaseSpaceCuts.symmetric()
    poly = ClassicalHamiltonian("xp-polymer", mu0)
    print(f"\npolymer scale mu0 = {mu0}")
    print(f"{'E':>8} {'N_bk':>10} {'N_poly':>10} {'oracle':>10} {'oracle-N_poly':>14}")
    for E in (20.0, 50.0, 100.0, 200.0):
        oracle = area_count_oracle(poly, E, cuts)
        closed = n_poly_closed(E, cuts, mu0)
        print(f"{E:8.1f} {n_bk(E, cuts):10.4f} {closed:10.4f} {oracle:10.4f} {oracle - closed:14.4f}")
    # the gap is one Planck cell over 2 pi plus an endpoint tail
    print(f"l_x l_p / 2pi = {cuts.l_x * cuts.l_p / (2 * math.pi):.4f}")


if __name__ == "__main__":
    np.set_printoptions(precision=6)
    staircase_table()
    phase_space_table()
