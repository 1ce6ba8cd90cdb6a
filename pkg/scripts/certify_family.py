"""Certify the shipped gadget and pattern over a range of ell and print per-ell counts."""

import argparse
import time
from dataclasses import dataclass, field
from typing import List

from fewham.constructions import load_gadget, load_pattern
from fewham.verify import certify_family


@dataclass
class Config:
    ells: List[int] = field(default_factory=lambda: [2, 3, 4])
    workers: int = 1
    enumerate_cycles: bool = True
    timing: bool = True


def run(cfg: Config) -> str:
    t0 = time.monotonic()
    rep = certify_family(load_gadget(), load_pattern(), cfg.ells, cfg.workers, cfg.enumerate_cycles)
    for name in rep.failed():
        print("FAILED", name, rep.checks[name].witness)
    print(f"overall={rep.overall} in {time.monotonic() - t0:.1f}s")
    return rep.to_json(timing=cfg.timing)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ells", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--no-enumerate", dest="enumerate_cycles", action="store_false")
    ap.add_argument("--no-timing", dest="timing", action="store_false")
    print(run(Config(**vars(ap.parse_args()))))
