"""Run the parity and second-cycle suites on a seeded random regular corpus."""

import argparse
from dataclasses import dataclass

from fewham.verify import default_corpus, property_suite


@dataclass
class Config:
    seed: int = 2024
    cubic: int = 50
    cubic_max_n: int = 16
    quintic: int = 20
    quintic_max_n: int = 14


def run(cfg: Config) -> str:
    corpus = default_corpus(cfg.seed, cfg.cubic, cfg.cubic_max_n, cfg.quintic, cfg.quintic_max_n)
    return property_suite(corpus).to_json(timing=True)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(Config()).items():
        ap.add_argument("--" + name.replace("_", "-"), type=int, default=default)
    print(run(Config(**vars(ap.parse_args()))))
