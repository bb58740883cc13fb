"""Walk through the measured findings: expansion orders, count offsets, conventions."""

import json

from polyzeta import findings


if __name__ == "__main__":
    for item in findings.all_findings():
        print(json.dumps(item, indent=2, sort_keys=True, default=float))
        print()
