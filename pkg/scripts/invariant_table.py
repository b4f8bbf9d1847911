#!/usr/bin/env python3
"""Print closed-surface invariants for the bundled (or given) Frobenius algebras.

    python3 scripts/invariant_table.py --max-genus 4
    python3 scripts/invariant_table.py --algebra my-algebra.json --extended
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from etqft.cob import frobenius as fr
from etqft.cob.tqft import closed_invariant, surface_word
from etqft.exactlinalg import fstr
from etqft.extended import evaluate_extended, lift_discrete, restrict


@dataclass
class TableConfig:
    algebras: list[str] = field(default_factory=lambda: list(fr.BUNDLED))
    max_genus: int = 2
    extended: bool = False


def invariant_rows(cfg: TableConfig) -> list[tuple[str, list[str]]]:
    rows = []
    for spec in cfg.algebras:
        f = fr.load_algebra(spec)
        values = [closed_invariant(g, f) for g in range(cfg.max_genus + 1)]
        if cfg.extended:
            # the same numbers through the 2Vect evaluation
            fo = lift_discrete(f)
            lifted = [restrict(evaluate_extended(surface_word(g), fo)).entries[0]
                      for g in range(cfg.max_genus + 1)]
            assert lifted == values, spec
        rows.append((spec, [fstr(v) for v in values]))
    return rows


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--algebra", action="append", help="algebra file or bundled name (repeatable)")
    p.add_argument("--max-genus", type=int, default=2)
    p.add_argument("--extended", action="store_true", help="cross-check through lift_discrete")
    a = p.parse_args()
    cfg = TableConfig(max_genus=a.max_genus, extended=a.extended)
    if a.algebra:
        cfg.algebras = a.algebra

    rows = invariant_rows(cfg)
    header = ["algebra"] + [f"g={g}" for g in range(cfg.max_genus + 1)]
    width = max(len(header[0]), *(len(name) for name, _ in rows))
    print("  ".join([header[0].ljust(width)] + [h.rjust(5) for h in header[1:]]))
    for name, values in rows:
        print("  ".join([name.ljust(width)] + [v.rjust(5) for v in values]))


if __name__ == "__main__":
    main()
