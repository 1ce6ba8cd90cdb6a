"""Build the 70-vertex graph and count its Hamiltonian cycles by frontier DP and by budgeted search."""

import argparse
import json
import time
from dataclasses import asdict, dataclass

from fewham.connectivity import vertex_connectivity
from fewham.constructions import meredith_graph
from fewham.frontier import count_hamiltonian_cycles_frontier
from fewham.hamilton import Budget, count_hamiltonian_cycles


@dataclass
class Config:
    matching: int = 0
    max_nodes: int = 2_000_000
    max_seconds: float = 600.0
    workers: int = 1
    skip_search: bool = False


def run(cfg: Config) -> dict:
    M = meredith_graph(cfg.matching)
    out = {"config": asdict(cfg), "n": M.n, "simple": M.is_simple(), "regular4": M.is_regular(4)}
    out["vertex_connectivity"] = vertex_connectivity(M)[0]
    t0 = time.monotonic()
    out["frontier_count"] = count_hamiltonian_cycles_frontier(M)
    out["frontier_seconds"] = round(time.monotonic() - t0, 3)
    if not cfg.skip_search:
        hr = count_hamiltonian_cycles(M, budget=Budget(cfg.max_nodes, cfg.max_seconds), workers=cfg.workers, stop_after=1)
        out["search"] = {
            "count": hr.count,
            "complete": hr.exact,
            "nodes": hr.nodes_expanded,
            "seconds": round(hr.elapsed, 3),
            "verdict": "non-hamiltonian" if hr.exact and not hr.count else ("hamiltonian" if hr.count else "inconclusive by budget"),
        }
    return out


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--matching", type=int, default=0)
    ap.add_argument("--max-nodes", type=int, default=Config.max_nodes)
    ap.add_argument("--max-seconds", type=float, default=Config.max_seconds)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--skip-search", action="store_true")
    print(json.dumps(run(Config(**vars(ap.parse_args()))), indent=1))
