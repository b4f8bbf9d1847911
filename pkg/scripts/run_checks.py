#!/usr/bin/env python3
"""Run the property suites with one seed and dimension bound and print a summary.

    python3 scripts/run_checks.py --seed 3 --samples 30
"""

from __future__ import annotations

import argparse
import random
import time
from dataclasses import dataclass

from etqft import sampling
from etqft.cob import frobenius as fr
from etqft.cob.tqft import relation_suite
from etqft.extended import lift_discrete, relation_suite_extended
from etqft.monoidal import MonoidalContext, check_semistrict
from etqft.report import Report
from etqft.twocells import check_strict_2category
from etqft.twovect import from_chain_complex, validate


@dataclass
class RunConfig:
    seed: int = 0
    samples: int = 50
    max_dim: int = 3
    color: bool = False


def axiom_suite(cfg: RunConfig) -> Report:
    rep = Report(f"internal-category axioms (samples={cfg.samples}, seed={cfg.seed})")
    rng = random.Random(cfg.seed)
    for _ in range(cfg.samples):
        sub = validate(from_chain_complex(sampling.random_chain_complex(rng, cfg.max_dim, cfg.max_dim)))
        for name, check in sub.checks.items():
            rep.record(name, not check.failures, *check.failures[:1])
    return rep


def suites(cfg: RunConfig):
    yield "axioms", lambda: axiom_suite(cfg)
    yield "2-category", lambda: check_strict_2category(cfg.samples, cfg.seed, cfg.max_dim)
    ctx = MonoidalContext(max_dim=cfg.max_dim, samples=cfg.samples, seed=cfg.seed)
    yield "monoidal", lambda: check_semistrict(ctx)
    for name in fr.BUNDLED:
        yield f"relations {name}", lambda n=name: relation_suite(fr.bundled(n))
        yield f"extended {name}", lambda n=name: relation_suite_extended(lift_discrete(fr.bundled(n)))


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--max-dim", type=int, default=3)
    p.add_argument("--color", action="store_true")
    a = p.parse_args()
    cfg = RunConfig(a.seed, a.samples, a.max_dim, a.color)

    ok = True
    for label, suite in suites(cfg):
        t0 = time.perf_counter()
        rep = suite()
        print(rep.table(color=cfg.color))
        print(f"[{label}: {time.perf_counter() - t0:.2f} s]\n")
        ok &= rep.passed
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
