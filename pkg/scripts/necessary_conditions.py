"""List every labelled space whose found witness breaks its residue predicate.

    python scripts/necessary_conditions.py --limit 150 --bound 100 [--corrected]
"""

import argparse
import itertools

from congruent_descent.arith import primes_below
from congruent_descent.descent import ProvenSolvable, search_homogeneous
from congruent_descent.theory import CongruentCase, labelled_spaces, necessary_condition


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--limit", type=int, default=150, help="largest p, q")
    ap.add_argument("--bound", type=int, default=100, help="search bound on m, e")
    ap.add_argument("--corrected", action="store_true", help="use the sign-corrected a4/a5 predicates")
    args = ap.parse_args()
    odd = [p for p in primes_below(args.limit + 1) if p > 2]
    cases = [CongruentCase(v, p) for p in odd for v in ("P", "TwoP")]
    cases += [CongruentCase(v, p, q) for p, q in itertools.combinations(odd, 2) for v in ("PQ", "TwoPQ")]
    spaces = witnessed = violations = 0
    for case in cases:
        for S in labelled_spaces(case):
            spaces += 1
            res = search_homogeneous(S, args.bound)
            if not isinstance(res, ProvenSolvable):
                continue
            witnessed += 1
            nc = necessary_condition(S.label, case, corrected=args.corrected)
            if not nc.holds:
                violations += 1
                w = res.witness
                print(f"n={case.n:6d} part {case.part} {S.label:3s} ({S.b1}, 0, {S.b2})  (m, e, N)=({w.m}, {w.e}, {w.N})  fails: {nc.description}")
    print(f"{len(cases)} cases, {spaces} spaces, {witnessed} witnessed, {violations} violations")


if __name__ == "__main__":
    main()
