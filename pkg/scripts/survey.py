"""Run the rank survey over the standard ranges and save one JSON file per range.

    python scripts/survey.py --bound 1000 --jobs 4 --out results/
"""

import argparse
import json
from dataclasses import dataclass
from pathlib import Path

from congruent_descent.cli import RunConfig, cmd_survey

RANGES = ("p<500", "2p<500", "pq<2000", "2pq<2000")


@dataclass
class SurveyConfig:
    bound: int = 1000
    jobs: int = 4
    out: Path = Path("results")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bound", type=int, default=SurveyConfig.bound)
    ap.add_argument("--jobs", type=int, default=SurveyConfig.jobs)
    ap.add_argument("--out", type=Path, default=SurveyConfig.out)
    cfg = SurveyConfig(**vars(ap.parse_args()))
    cfg.out.mkdir(parents=True, exist_ok=True)
    for spec in RANGES:
        report, code = cmd_survey(spec, RunConfig(search_bound=cfg.bound, parallelism=cfg.jobs))
        name = spec.replace("<", "_lt_") + ".json"
        (cfg.out / name).write_text(json.dumps(report, indent=1))
        s = report["summary"]
        gaps = [r["n"] for r in report["rows"] if "descent-incomplete" in r["flags"]]
        print(f"{spec:10s} exit={code} rows={s['rows']} agree={s['agreements']} undecided={s['undecided']} "
              f"violations={s['violations']} descent short of verdict: {len(gaps)}")


if __name__ == "__main__":
    main()
