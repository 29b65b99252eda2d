"""Run the 2-adic Kummer-surface check at several precisions and compare."""

import argparse
import json
import time
from dataclasses import dataclass, field

from oddbrauer.qp2 import kummer_example_verify


@dataclass
class Config:
    K0: int = 8
    precisions: list = field(default_factory=lambda: [12, 14, 16])
    dump: str | None = None  # write the last report as JSON here


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--K0", type=int, default=Config.K0)
    ap.add_argument("--precisions", type=lambda s: [int(x) for x in s.split(",")], default=Config().precisions)
    ap.add_argument("--dump")
    a = ap.parse_args()
    cfg = Config(a.K0, a.precisions, a.dump)

    first = None
    for K in cfg.precisions:
        t = time.perf_counter()
        report = kummer_example_verify(cfg.K0, K)
        sets = report.signature_sets()
        first = first or sets
        print(
            f"K={K:2d} K0={cfg.K0}: {report.summary()}; "
            f"x signatures {len(report.x_classes)}, u signatures {len(report.u_classes)}, "
            f"refinements {report.refinements}, same as K={cfg.precisions[0]}: {sets == first} "
            f"({time.perf_counter() - t:.1f}s)"
        )
    if cfg.dump:
        with open(cfg.dump, "w", encoding="utf-8") as fh:
            json.dump(report.to_dict(), fh, indent=2)


if __name__ == "__main__":
    main()
