"""Scan a gadget candidate space and print the rejection tally and the first hit."""

import argparse
import json
import time
from dataclasses import asdict, dataclass

from fewham.constructions import CANDIDATE_SPACES, search_gadgets


@dataclass
class Config:
    space: str = "subdivided-petersen"
    all_hits: bool = False
    out: str = ""


def run(cfg: Config) -> dict:
    t0 = time.monotonic()
    res = search_gadgets(cfg.space, first_only=not cfg.all_hits)
    out = {
        "config": asdict(cfg),
        "graphs": res.graphs_examined,
        "paths": res.paths_examined,
        "rejections": res.stats,
        "found": res.spec is not None,
        "seconds": round(time.monotonic() - t0, 3),
    }
    if res.spec is not None:
        out["path"] = list(res.spec.path)
        out["source"] = res.spec.source
        if cfg.out:
            with open(cfg.out, "w") as fh:
                json.dump(res.spec.to_dict(), fh, indent=1, sort_keys=True)
    return out


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--space", default=Config.space, choices=sorted(CANDIDATE_SPACES))
    ap.add_argument("--all-hits", action="store_true", help="keep scanning after the first hit")
    ap.add_argument("--out", default="", help="write the first hit as gadget JSON")
    print(json.dumps(run(Config(**vars(ap.parse_args()))), indent=1))
