#!/usr/bin/env python3
"""Solve a sparse SDPA file with sdpa-python and write SDPA-style results.

Usage: sdpa_solve.py INPUT.dat-s OUTPUT.out

Only the lines the generator reads back are written: phase.value,
objValPrimal and objValDual, in the sign convention of the SDPA binary
(minimise c^T x).
"""

import sys
import warnings


def main(argv):
    if len(argv) != 3:
        print(__doc__.strip(), file=sys.stderr)
        return 1
    try:
        import sdpap
    except ImportError:
        print("sdpa-python (module sdpap) is not installed", file=sys.stderr)
        return 3

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        A, b, c, K, J = sdpap.importsdpa(argv[1])
        option = {
            "print": "no",
            "epsilonStar": 1.0e-9,
            "epsilonDash": 1.0e-9,
            "maxIteration": 200,
        }
        _, _, info, _, sdpainfo = sdpap.solve(A, b, c, K, J, option)

    # importsdpa flips signs: its primal is the SDPA dual and vice versa.
    primal = -float(info["dualObj"])
    dual = -float(info["primalObj"])
    # sdpainfo reports the phase in the SDPA convention; info is flipped.
    phase = sdpainfo.get("phasevalue", "noINFO")
    with open(argv[2], "w") as out:
        out.write("phase.value  = %s\n" % phase)
        out.write("iteration    = %d\n" % sdpainfo.get("iteration", -1))
        out.write("objValPrimal = %+.16e\n" % primal)
        out.write("objValDual   = %+.16e\n" % dual)
    print("phase %s primal %.10g dual %.10g" % (phase, primal, dual))
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
