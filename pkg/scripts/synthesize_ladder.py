"""Search the zig-zag pattern family for a ladder that keeps the count constant."""

import argparse
import json
import time
from dataclasses import asdict, dataclass, field
from typing import List

from fewham.constructions import LadderSynthesisError, load_gadget, parity_obstruction, synthesize_ladder_pattern


@dataclass
class Config:
    family: str = "widened"
    probe: List[int] = field(default_factory=lambda: [2, 3, 4])
    max_trials: int = 0
    out: str = ""


def run(cfg: Config) -> dict:
    spec = load_gadget()
    t0 = time.monotonic()
    out = {"config": asdict(cfg), "parity": parity_obstruction(spec)}
    try:
        rep = synthesize_ladder_pattern(spec, cfg.probe, cfg.family, cfg.max_trials or None)
    except LadderSynthesisError as exc:
        out.update(found=False, degree_rejections=exc.report.degree_rejections, trials=len(exc.report.trials), near_misses=exc.report.near_misses)
    else:
        last = rep.trials[-1]
        out.update(found=True, pattern=rep.pattern.to_dict(), degree_rejections=rep.degree_rejections, trials=len(rep.trials), counts=last.counts)
        if cfg.out:
            with open(cfg.out, "w") as fh:
                json.dump(rep.pattern.to_dict(), fh, indent=1, sort_keys=True)
    out["seconds"] = round(time.monotonic() - t0, 3)
    return out


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--family", default=Config.family, choices=("strict", "widened"))
    ap.add_argument("--probe", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--max-trials", type=int, default=0)
    ap.add_argument("--out", default="")
    print(json.dumps(run(Config(**vars(ap.parse_args()))), indent=1, default=str))
