#!/usr/bin/env python3
"""Report the twist scalars of the decomposition-based symmetry.

For each homogeneous sample the decomposition route is compared
piecewise against the bare closed shape K_{-r h_i} E_i^(r) (moved
piece); the scalar separating them is printed next to the two
Euler-form exponent candidates.  The route itself never consumes the
candidates; this is the calibration experiment behind that design.
"""

from qhall.cartan import A2, A3, dims_of_height
from qhall.falgebra import FElement, weight_basis
from qhall.ratfunc import ONE
from qhall.symmetries import calibrate_twist


def samples(datum, bound):
    out = []
    for total in range(1, bound + 1):
        for nu in dims_of_height(datum.rank, total):
            for w in weight_basis(datum, nu).basis_words[:2]:
                out.append(FElement(datum, {w: ONE}))
    return out


def main():
    for label, datum, vertex in (("A2 i=1", A2, 1), ("A2 i=2", A2, 2), ("A3 i=2", A3, 2)):
        print(f"== {label}")
        for entry in calibrate_twist(datum, vertex, samples(datum, 3)):
            flags = []
            for cand in ("euler(nu,ri)", "euler(ri,nu)"):
                if entry[f"matches {cand}"]:
                    flags.append(cand)
            print(
                f"  weight={entry['weight']} r={entry['level']} "
                f"scalar={entry['scalar']}"
                + (f"  matches {', '.join(flags)}" if flags else "")
            )


if __name__ == "__main__":
    main()
