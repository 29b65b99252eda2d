"""Rebuild the N = 40 exponent bound probe by probe and print the candidate table."""

import argparse
import json
from dataclasses import asdict, dataclass, field

from oddbrauer.brauer import exponent_bound, refine, s_candidates
from oddbrauer.cli import factored


@dataclass
class Config:
    m: int = 40
    probes: list = field(default_factory=lambda: [5, 13, 17])
    search_bound: int = 100
    json: bool = False


def run(cfg: Config) -> dict:
    steps = []
    for k in range(1, len(cfg.probes) + 1):
        report = s_candidates(cfg.m, cfg.probes[:k])
        steps.append({"probes": cfg.probes[:k], "bounded": report.bounded(), "unbounded": report.unbounded()})
    final = refine(s_candidates(cfg.m, cfg.probes), cfg.search_bound)
    bound = exponent_bound(cfg.m, cfg.probes, cfg.search_bound)
    return {
        "config": asdict(cfg),
        "steps": steps,
        "surviving": {l: {"phi_upper": e.phi_upper, "witnesses": e.witnesses} for l, e in final.surviving().items()},
        "exponent_bound": bound,
        "factored": factored(bound),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=Config.m)
    ap.add_argument("--probes", type=lambda s: [int(x) for x in s.split(",")], default=Config().probes)
    ap.add_argument("--search-bound", type=int, default=Config.search_bound)
    ap.add_argument("--json", action="store_true")
    a = ap.parse_args()
    out = run(Config(a.m, a.probes, a.search_bound, a.json))
    if a.json:
        print(json.dumps(out, indent=2, default=str))
        return
    for step in out["steps"]:
        print(f"probes {step['probes']}: bounded {step['bounded']} unbounded {step['unbounded']}")
    print(f"after search bound {a.search_bound}: {out['surviving']}")
    print(f"exponent bound {out['exponent_bound']} = {out['factored']}")


if __name__ == "__main__":
    main()
