"""Command line front end: rank, triangle, survey, forms and raw descent."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .arith import primes_below
from .curves import Curve
from .descent import (
    ENGINE_VERSION,
    HomogeneousSpace,
    InconsistencyError,
    LocallyObstructed,
    ProvenSolvable,
    descend,
    default_moduli,
    local_obstruction,
    point_from_witness,
    search_homogeneous,
)
from .points import RationalPoint, RightTriangle, point_height, point_search, pull_back, triangle_from_point
from .theory import (
    TheoremVerdict,
    classify,
    form_primes,
    rank2_criterion,
    theorem_rank,
)

CACHE_ENV = "CONGRUENT_DESCENT_CACHE"

EXIT_OK = 0
EXIT_UNDECIDED = 2
EXIT_UNSUPPORTED = 3
EXIT_INCONSISTENT = 4


@dataclass
class RunConfig:
    search_bound: int = 1000
    moduli_override: Optional[list[int]] = None
    output_format: str = "json"
    cache_path: Optional[Path] = None
    parallelism: int = 1

    def __post_init__(self) -> None:
        if self.search_bound < 1:
            raise ValueError("search bound must be >= 1")
        if self.parallelism < 1:
            raise ValueError("parallelism must be >= 1")
        if self.output_format not in ("json", "csv", "text"):
            raise ValueError(f"unknown format {self.output_format}")


# --------------------------------------------------------------------------- cache


@dataclass
class ResultCache:
    """Append-only JSON lines keyed by (n, engine version, bound, moduli)."""

    path: Path
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        self.path = Path(self.path)
        if self.path.exists():
            for line in self.path.read_text().splitlines():
                if not line.strip():
                    continue
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError:
                    continue
                self._index[self._key(rec["n"], rec["engine_version"], rec["bound"], rec.get("moduli"))] = rec["report"]

    @staticmethod
    def _key(n, version, bound, moduli) -> tuple:
        return (n, version, bound, tuple(moduli) if moduli else None)

    def get(self, n: int, cfg: RunConfig) -> Optional[dict]:
        return self._index.get(self._key(n, ENGINE_VERSION, cfg.search_bound, cfg.moduli_override))

    def put(self, n: int, cfg: RunConfig, report: dict) -> None:
        key = self._key(n, ENGINE_VERSION, cfg.search_bound, cfg.moduli_override)
        if key in self._index:
            return
        self._index[key] = report
        rec = {
            "n": n,
            "engine_version": ENGINE_VERSION,
            "bound": cfg.search_bound,
            "moduli": cfg.moduli_override,
            "curve": report["curve"],
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
            "report": report,
        }
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a") as fh:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


# --------------------------------------------------------------------------- rank


def _resolve_verdict(n: int, bound: int) -> tuple[Optional[dict], TheoremVerdict]:
    case = classify(n)
    if case is None:
        return None, TheoremVerdict(condition="unsupported-shape", citation="n is not p, 2p, pq or 2pq")
    verdict = theorem_rank(case)
    if verdict.condition == "deferred-rank2-criterion":
        verdict = rank2_criterion(case.p, bound)
    return case.to_json(), verdict


def compute_rank(n: int, cfg: RunConfig) -> tuple[dict, int]:
    """Theorem verdict plus descent bounds for y^2 = x^3 - n^2 x."""
    if n < 1:
        raise ValueError("n must be positive")
    case, verdict = _resolve_verdict(n, cfg.search_bound)
    E = Curve.congruent(n)
    result = descend(E, cfg.search_bound, cfg.moduli_override)
    b = result.bounds
    flags = []
    if case is None:
        flags.append("unsupported-shape")

    conflict = None
    if verdict.rank is not None and not b.lower <= verdict.rank <= b.upper:
        conflict = f"theorem rank {verdict.rank} outside descent bounds [{b.lower}, {b.upper}]"

    exact = b.exact
    if exact is None and verdict.rank is not None and conflict is None:
        exact = verdict.rank
        flags.append("descent-incomplete")
    congruent = None if exact is None else exact >= 1
    if congruent is None and b.lower >= 1:
        congruent = True

    report = {
        "n": n,
        "engine_version": ENGINE_VERSION,
        "search_bound": cfg.search_bound,
        "case": case,
        "verdict": verdict.to_json(),
        "curve": E.to_json(),
        "rank_bounds": b.to_json(),
        "rank": exact,
        "congruent": congruent,
        "flags": flags,
        "alpha": result.image.to_json(),
        "alpha_bar": result.image_bar.to_json(),
    }
    if conflict:
        report["conflict"] = conflict
        return report, EXIT_INCONSISTENT
    if case is None:
        return report, EXIT_UNSUPPORTED
    return report, EXIT_OK if exact is not None else EXIT_UNDECIDED


def cmd_rank(n: int, cfg: RunConfig, cache: Optional[ResultCache] = None) -> tuple[dict, int]:
    if cache is not None:
        hit = cache.get(n, cfg)
        if hit is not None:
            return hit, _exit_code(hit)
    report, code = compute_rank(n, cfg)
    if cache is not None and code != EXIT_INCONSISTENT:
        cache.put(n, cfg, report)
    return report, code


def _exit_code(report: dict) -> int:
    if "conflict" in report:
        return EXIT_INCONSISTENT
    if report["case"] is None:
        return EXIT_UNSUPPORTED
    return EXIT_OK if report["rank"] is not None else EXIT_UNDECIDED


# --------------------------------------------------------------------------- triangle


def cmd_triangle(n: int, cfg: RunConfig) -> tuple[dict, int]:
    """A rational right triangle of area n from a non-torsion point, if one is found."""
    E = Curve.congruent(n)
    result = descend(E, cfg.search_bound, cfg.moduli_override)
    found = [(P, "descent") for P in result.image.points.values()]
    found += [(pull_back(E, P), "descent") for P in result.image_bar.points.values() if not P.at_infinity and P.y != 0]
    if result.bounds.upper > 0:
        found += [(P, "point-search") for P in point_search(E, min(cfg.search_bound, 50))]
    # lowest point first, with y > 0
    candidates = sorted(
        {(RationalPoint(P.x, abs(P.y)), src) for P, src in found if not P.at_infinity and P.y != 0},
        key=lambda ps: (point_height(ps[0]), ps[0].x, ps[1]),
    )
    report = {"n": n, "engine_version": ENGINE_VERSION, "search_bound": cfg.search_bound, "rank_bounds": result.bounds.to_json()}
    if not candidates:
        report["triangle"] = None
        report["reason"] = "rank 0" if result.bounds.upper == 0 else "none found at bound"
        return report, EXIT_UNDECIDED
    P, source = candidates[0]
    report["point"] = P.to_json()
    report["source"] = source
    tri = triangle_from_point(n, P)
    if tri.leg_a > tri.leg_b:
        tri = RightTriangle(tri.leg_b, tri.leg_a, tri.hyp)
    report["triangle"] = tri.to_json()
    return report, EXIT_OK


# --------------------------------------------------------------------------- survey

_SHAPE = re.compile(r"^\s*(2?)(pq|p)\s*<\s*(\d+)\s*$")
_CONGRUENCE = re.compile(r"^\s*p\s*(?:≡|==|=)\s*(\d+)\s*mod\s*(\d+)\s*$")


def parse_range(spec: str) -> list[int]:
    """Values n for specs like "p<500", "2pq<2000" or "p≡1 mod 8, p<300".

    The bound is on n itself; a congruence filter applies to every prime factor p, q.
    """
    parts = [s for s in spec.split(",") if s.strip()]
    shape = _SHAPE.match(parts[-1]) if parts else None
    if shape is None:
        raise ValueError(f"cannot parse range {spec!r}")
    congruences = []
    for part in parts[:-1]:
        c = _CONGRUENCE.match(part)
        if c is None:
            raise ValueError(f"cannot parse condition {part!r}")
        congruences.append((int(c.group(1)), int(c.group(2))))
    two, kind, limit = shape.group(1) == "2", shape.group(2), int(shape.group(3))
    ok = lambda r: all(r % mod == res % mod for res, mod in congruences)  # noqa: E731
    scale = 2 if two else 1
    if kind == "p":
        ps = primes_below(limit // scale + 1)
        if two:
            ps = [p for p in ps if p > 2]
        return [scale * p for p in ps if ok(p) and scale * p < limit]
    odd = [p for p in primes_below(limit // (3 * scale) + 1) if p > 2]
    out = [scale * p * q for i, p in enumerate(odd) for q in odd[i + 1 :] if scale * p * q < limit and ok(p) and ok(q)]
    return sorted(out)


def cmd_survey(spec: str, cfg: RunConfig, cache: Optional[ResultCache] = None) -> tuple[dict, int]:
    ns = parse_range(spec)
    rows: list[Optional[dict]] = [None] * len(ns)
    todo = []
    for i, n in enumerate(ns):
        hit = cache.get(n, cfg) if cache else None
        if hit is not None:
            rows[i] = _row_from_report(hit)
        else:
            todo.append(i)
    jobs = [(ns[i], cfg) for i in todo]
    if cfg.parallelism > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(cfg.parallelism) as pool:
            computed = list(pool.map(_survey_row_with_report, jobs, chunksize=1))
    else:
        computed = [_survey_row_with_report(j) for j in jobs]
    for i, (row, report) in zip(todo, computed):
        rows[i] = row
        if cache is not None and row["violation"] is None:
            cache.put(ns[i], cfg, report)
    summary = {
        "rows": len(rows),
        "agreements": sum(r["agreement"] for r in rows),
        "rank_known": sum(r["rank"] is not None for r in rows),
        "undecided": sum(r["rank"] is None for r in rows),
        "descent_incomplete": sum("descent-incomplete" in r["flags"] for r in rows),
        "violations": sum(r["violation"] is not None for r in rows),
    }
    out = {"range": spec, "engine_version": ENGINE_VERSION, "search_bound": cfg.search_bound, "rows": rows, "summary": summary}
    if summary["violations"]:
        for r in rows:
            if r["violation"]:
                print(f"violation at n={r['n']}: {r['violation']}", file=sys.stderr)
        return out, EXIT_INCONSISTENT
    return out, EXIT_OK


def _survey_row_with_report(args: tuple[int, RunConfig]) -> tuple[dict, dict]:
    n, cfg = args
    report, _ = compute_rank(n, cfg)
    return _row_from_report(report), report


def _row_from_report(report: dict) -> dict:
    b, v, case = report["rank_bounds"], report["verdict"], report["case"]
    return {
        "n": report["n"],
        "variant": case["variant"] if case else None,
        "residues": case["residues"] if case else None,
        "legendre_pq": case.get("legendre_pq") if case else None,
        "verdict_rank": v["rank"],
        "verdict_condition": v["condition"],
        "lower": b["lower"],
        "upper": b["upper"],
        "rank": report["rank"],
        "flags": report["flags"],
        "agreement": v["rank"] is not None and b["lower"] == b["upper"] == v["rank"],
        "violation": report.get("conflict"),
    }


# --------------------------------------------------------------------------- forms / descent


def cmd_forms(xy_bound: int, max_value: Optional[int]) -> tuple[dict, int]:
    rows = [{"value": v, "form": f, "x": x, "y": y} for v, f, x, y in form_primes(xy_bound, max_value)]
    return {"xy_bound": xy_bound, "max_value": max_value, "rows": rows}, EXIT_OK


def cmd_descent(b1: int, a: int, b2: int, cfg: RunConfig, classical: bool) -> tuple[dict, int]:
    S = HomogeneousSpace.classical(b1, a, b2) if classical else HomogeneousSpace(b1, a, b2)
    moduli = cfg.moduli_override or default_moduli(S)
    sieve_space = S if classical else HomogeneousSpace.classical(b1, a, b2)
    obstruction = local_obstruction(sieve_space, moduli)
    search = search_homogeneous(S, cfg.search_bound)
    report = {
        "engine_version": ENGINE_VERSION,
        "space": S.to_json(),
        "moduli": moduli,
        "obstruction": obstruction.to_json(),
        "search": search.to_json(),
    }
    proven = isinstance(search, ProvenSolvable)
    blocked = isinstance(obstruction, LocallyObstructed)
    if proven:
        report["point"] = point_from_witness(S, search.witness).to_json()
    if proven and blocked:
        w = search.witness
        # a bare witness may break the unit conditions the sieve assumed; only a classical one contradicts it
        if sieve_space.admits(w.m, w.e, w.N):
            return report, EXIT_INCONSISTENT
        report["note"] = "witness violates the unit conditions under which the sieve obstructs"
    return report, EXIT_OK if proven or blocked else EXIT_UNDECIDED


# --------------------------------------------------------------------------- rendering


def _flatten(d, prefix=""):
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            out[key] = json.dumps(v, sort_keys=True)
        else:
            out[key] = v if not isinstance(v, list) else " ".join(map(str, v))
    return out


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2)
    rows = report.get("rows")
    if fmt == "csv":
        buf = io.StringIO()
        records = [_flatten(r) for r in rows] if rows is not None else [_flatten(report)]
        fields = list(dict.fromkeys(k for r in records for k in r))
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(records)
        return buf.getvalue().rstrip("\n")
    lines = []
    if rows is not None:
        for r in rows:
            lines.append("  ".join(f"{k}={v}" for k, v in _flatten(r).items()))
        for k, v in report.items():
            if k != "rows":
                lines += [f"{kk}: {vv}" for kk, vv in _flatten({k: v}).items()]
    else:
        lines = [f"{k}: {v}" for k, v in _flatten(report).items()]
    return "\n".join(lines)


def _int_list(text: str) -> list[int]:
    vals = [int(v) for v in text.split(",") if v.strip()]
    if not vals or any(v < 2 for v in vals):
        raise argparse.ArgumentTypeError("moduli must be integers >= 2")
    return vals


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, default=1000, help="search bound on m, e (default 1000)")
    common.add_argument("--moduli", type=_int_list, default=None, help="comma separated sieve moduli")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--cache", type=Path, default=os.environ.get(CACHE_ENV) or None, help=f"JSON lines cache (default ${CACHE_ENV})")
    common.add_argument("--jobs", type=int, default=1)

    parser = argparse.ArgumentParser(prog="congruent-descent", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("rank", parents=[common], help="rank of y^2 = x^3 - n^2 x")
    p.add_argument("n", type=int)
    p = sub.add_parser("triangle", parents=[common], help="rational right triangle of area n")
    p.add_argument("n", type=int)
    p = sub.add_parser("survey", parents=[common], help='sweep a range such as "p<500" or "2pq<2000"')
    p.add_argument("range")
    p = sub.add_parser("forms", parents=[common], help="prime values of the quartic forms f1, f2, f3")
    p.add_argument("--xy", type=int, default=20, help="bound on |x|, |y|")
    p.add_argument("--max-value", type=int, default=None)
    p = sub.add_parser("descent", parents=[common], help="one homogeneous space")
    p.add_argument("--b1", type=int, required=True)
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--b2", type=int, required=True)
    p.add_argument("--classical", action="store_true", help="impose the unit conditions on the search too")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(args.bound, args.moduli, args.format, args.cache, args.jobs)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    cache = ResultCache(cfg.cache_path) if cfg.cache_path else None
    try:
        if args.command == "rank":
            report, code = cmd_rank(args.n, cfg, cache)
            if report["case"] is None:
                print(f"warning: {args.n} is not of shape p, 2p, pq, 2pq; descent only", file=sys.stderr)
        elif args.command == "triangle":
            report, code = cmd_triangle(args.n, cfg)
        elif args.command == "survey":
            report, code = cmd_survey(args.range, cfg, cache)
        elif args.command == "forms":
            report, code = cmd_forms(args.xy, args.max_value)
        else:
            report, code = cmd_descent(args.b1, args.a, args.b2, cfg, args.classical)
    except InconsistencyError as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    print(render(report, cfg.output_format))
    return code


if __name__ == "__main__":
    sys.exit(main())
