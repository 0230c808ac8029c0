"""Check that every prime p = 5 (mod 8) below a limit has an alpha+- witness.

    python scripts/alpha_five_mod_eight.py --limit 500 --bound 1000
"""

import argparse

from congruent_descent.arith import primes_below
from congruent_descent.theory import alpha_pm_pythagorean


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--limit", type=int, default=500)
    ap.add_argument("--bound", type=int, default=1000, help="largest c tried")
    args = ap.parse_args()
    missing = []
    for p in (p for p in primes_below(args.limit) if p % 8 == 5):
        w = alpha_pm_pythagorean(p, args.bound)
        if w is None:
            missing.append(p)
            print(f"{p:5d}  none with c <= {args.bound}")
        else:
            print(f"{p:5d}  {w.kind:10s} (a, b, c) = ({w.a}, {w.b}, {w.c})  aux {w.auxiliary_square_root}")
    print(f"primes without a witness: {missing or 'none'}")


if __name__ == "__main__":
    main()
