"""Compare the Pythagorean detectors with the descent engine for p = 1 (mod 8).

The alpha detector should succeed exactly when p lies in the image of alpha-bar,
the beta detector exactly when 2 does.

    python scripts/detectors_vs_descent.py --limit 500 --bound 1000
"""

import argparse

from congruent_descent.arith import primes_below
from congruent_descent.curves import Curve
from congruent_descent.descent import LocallyObstructed, ProvenSolvable, descend
from congruent_descent.theory import alpha_pm_pythagorean, beta_pythagorean


def _status(s) -> str:
    if isinstance(s, ProvenSolvable):
        return "in"
    return "out" if isinstance(s, LocallyObstructed) else "?"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--limit", type=int, default=500)
    ap.add_argument("--bound", type=int, default=1000)
    args = ap.parse_args()
    disagreements = 0
    print("    p  alpha  p in Im  beta  2 in Im  rank bounds")
    for p in (p for p in primes_below(args.limit) if p % 8 == 1):
        res = descend(Curve.congruent(p), args.bound)
        bar = res.image_bar.classes
        a = alpha_pm_pythagorean(p, args.bound) is not None
        b = beta_pythagorean(p, args.bound) is not None
        sp, s2 = _status(bar[p]), _status(bar[2])
        # a definite disagreement needs a witness on one side and an obstruction on the other
        clash = (a and sp == "out") or (not a and sp == "in") or (b and s2 == "out") or (not b and s2 == "in")
        disagreements += clash
        print(f"{p:5d}  {a!s:5s}  {sp:7s}  {b!s:5s} {s2:7s}  ({res.bounds.lower}, {res.bounds.upper}){'  <-' if clash else ''}")
    print(f"disagreements: {disagreements}")


if __name__ == "__main__":
    main()
