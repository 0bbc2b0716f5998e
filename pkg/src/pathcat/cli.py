"""Command-line front end: tables, verification reports, diagrams.

CF grammar for --sigma and --k: "c0;c1,c2,(p1,...,pm)" -- entries before
the semicolon / parentheses are the prefix, the parenthesized block is
the repeating period.  "1;(2)" is the CF of sqrt(2).
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from dataclasses import dataclass
from typing import Optional

from .errors import PathcatError, ResourceLimit
from .cat_paths import KSequence, alpha_beta, enumerate_words
from . import boundary, bratteli, cf_order, finite_cat, groupoid, measure


@dataclass
class RunConfig:
    k: KSequence
    theta: cf_order.CFStream
    levels: int
    resolution: int
    fmt: str
    budget: int
    seed: int


def parse_cf(text: str) -> cf_order.CFStream:
    """Parse "c0;c1,c2,(p1,...,pm)" into a CF stream."""
    text = text.strip()
    if ";" in text:
        head, _, rest = text.partition(";")
        parts = [head] + [p for p in rest.split(",") if p]
    else:
        parts = [p for p in text.split(",") if p]
    prefix: list[int] = []
    period: list[int] = []
    in_period = False
    for p in parts:
        p = p.strip()
        if p.startswith("("):
            in_period = True
            p = p[1:]
        closing = p.endswith(")")
        if closing:
            p = p[:-1]
        if p:
            (period if in_period else prefix).append(int(p))
        if closing:
            in_period = False
    if not period:
        raise PathcatError("need a parenthesized period, e.g. \"1;(2)\"")
    return cf_order.CFStream(tuple(prefix), tuple(period))


def _k_from_stream(s: cf_order.CFStream) -> KSequence:
    return KSequence(s.prefix, s.period)


def build_config(args: argparse.Namespace) -> RunConfig:
    if (args.sigma is None) == (args.k is None):
        raise PathcatError("provide exactly one of --sigma / --k")
    if args.levels > 10 ** 3:
        raise PathcatError("levels must be <= 1000")
    budget = int(os.environ.get("PATHCAT_BUDGET", args.budget))
    if budget > 10 ** 7:
        raise PathcatError("budget must be <= 10^7")
    if args.sigma is not None:
        sigma = parse_cf(args.sigma)
        k = cf_order.k_sequence_from_sigma(sigma, args.k1)
    else:
        k = _k_from_stream(parse_cf(args.k))
    return RunConfig(k, cf_order.theta_from_k(k), args.levels,
                     args.resolution, args.format, budget, args.seed)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_kseq(cfg: RunConfig) -> int:
    n = max(cfg.levels, 12)
    print("k  :", ", ".join(str(cfg.k[i]) for i in range(1, n + 1)), "...")
    print("cf :", ", ".join(str(c) for c in cfg.theta.head(n)), "...")
    lo, hi = measure.a0_bounds(cfg.k, max(n // 2, 2))
    print(f"theta in [{lo}, {hi}]  (~{float((lo + hi) / 2):.12f})")
    return 0


def cmd_ktheory(cfg: RunConfig) -> int:
    print("level  B_i")
    for i in range(1, cfg.levels + 1):
        print(f"{i:5d}  {cf_order.bmat(cfg.k[i])!r}")
    groups = cf_order.collapse(cfg.k, cfg.levels)
    print("collapse groups (levels, c_even, c_odd):")
    for g in groups:
        print(f"  {g.levels}  {g.c_even}  {g.c_odd}")
    print(f"unit class at level 1: ({cfg.k[1] + 2}, {cfg.k[1] + 1})")
    rng = random.Random(cfg.seed)
    ctx = measure.ThetaContext(cfg.k)
    print("sample cone decisions (v = x theta + y, positive?):")
    for _ in range(5):
        v = (rng.randint(-3, 3), rng.randint(-3, 3))
        positive = v == (0, 0) or ctx.sign(*v) > 0
        print(f"  {v}  {positive}")
    return 0


def cmd_measure(cfg: RunConfig) -> int:
    rows = measure.measure_table_json(cfg.k, cfg.levels)
    if cfg.fmt == "json":
        import json
        print(json.dumps(rows, indent=2))
        return 0
    print("  i  a_i (x theta + y)        b_i (x theta + y)")
    for r in rows:
        a, b = r["a"], r["b"]
        print(f"{r['i']:3d}  {a['x']}t{a['y']:+d} (~{r['a_float']:.6f})"
              f"    {b['x']}t{b['y']:+d} (~{r['b_float']:.6f})")
    return 0


def cmd_partition(cfg: RunConfig) -> int:
    n = min(cfg.levels, 4)
    res = cfg.resolution or 3 * n + 4
    q = boundary.partition_Q(n, cfg.k)
    ok = boundary.verify_partition(q, res, cfg.k, budget=cfg.budget)
    print(f"{q.label}: {len(q.cells)} cells, partition check "
          f"{'passed' if ok else 'FAILED'} at resolution {res}")
    add = measure.verify_additivity(q, cfg.k)
    print(f"additivity: sum = {add.total!r}, "
          f"{'passed' if add.ok else 'FAILED'}")
    if cfg.fmt == "json":
        import json
        print(json.dumps(boundary.partition_json(q), indent=2))
    return 0 if ok and add.ok else 1


def cmd_bratteli(cfg: RunConfig) -> int:
    levels = max(cfg.levels, 2)
    d1 = bratteli.chain_from_k(cfg.k, levels)
    d2 = bratteli.chain_effros_shen(cfg.theta, levels)
    if cfg.fmt in ("dot", "json"):
        print(bratteli.emit(d1, cfg.fmt), end="")
    else:
        print("k-chain dims:   ", d1.levels[:8], "...")
        print("simple-CF dims: ", d2.levels[:8], "...")
    verdict = bratteli.equivalent(d1, d2)
    print(f"equivalent: {verdict}")
    return 0 if verdict else 1


def cmd_cycles(args: argparse.Namespace) -> int:
    if args.builtin:
        if args.builtin != "example2":
            raise PathcatError(f"unknown builtin {args.builtin!r}")
        c = finite_cat.example2()
    else:
        with open(args.file) as fh:
            c = finite_cat.category_from_json(fh.read())
    rep = finite_cat.validate(c)
    print(f"category: {len(c.elements)} elements, "
          f"{'valid' if rep.ok else 'INVALID'}")
    for v in rep.violations:
        print("  !", v)
    cycles = finite_cat.generalized_cycles(c)
    if not cycles:
        print("no generalized cycles")
    for cy in cycles:
        tag = " [truncated table]" if cy.truncated else ""
        ent = "entrance" if cy.has_entrance else "no entrance"
        print(f"({cy.mu},{cy.nu}): generalized cycle, {ent}{tag}")
    return 0 if rep.ok else 1


def cmd_verify(cfg: RunConfig) -> int:
    """Small end-to-end property suite; exit 0 iff everything passes."""
    k, ctx = cfg.k, measure.ThetaContext(cfg.k)
    checks: list[tuple[str, bool]] = []

    q = boundary.partition_Q(2, k)
    checks.append(("Q_2 partition",
                   boundary.verify_partition(q, 10, k, budget=cfg.budget)))
    checks.append(("Q_2 additivity", measure.verify_additivity(q, k, ctx).ok))

    eqs = boundary.refinement_equations(1, 1, 1, k)
    ok_eq = all(boundary.verify_identity(lhs, list(rhs), 12, k,
                                         budget=cfg.budget)
                for lhs, rhs in eqs)
    checks.append(("refinement equations (1,1,1)", ok_eq))

    checks.append(("E/F counts i<=5", all(
        (len(bratteli.ef_sets(i, k).E), len(bratteli.ef_sets(i, k).F))
        == bratteli.ef_counts(i, k) for i in range(6))))

    d1 = bratteli.chain_from_k(k, 20)
    d2 = bratteli.chain_effros_shen(cfg.theta, 20)
    checks.append(("diagram equivalence", bratteli.equivalent(d1, d2)))

    rng = random.Random(cfg.seed)
    ok_inv = True
    words = enumerate_words(k, 3)
    for _ in range(50):
        nu1, nu2 = rng.choice(words), rng.choice(words)
        if nu1.source != nu2.source:
            continue
        e = boundary.zset(alpha_beta(nu1.source.index, rng.randint(0, 2),
                                     rng.randint(0, 2)))
        ok_inv &= measure.verify_invariance(nu1, nu2, e, k, ctx)
    checks.append(("measure invariance", ok_inv))

    failed = [name for name, ok in checks if not ok]
    for name, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    return 1 if failed else 0


# ---------------------------------------------------------------------------

def main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="pathcat",
        description="exact combinatorics of the path category Lambda(k)")
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--sigma", help="CF of the target irrational")
        p.add_argument("--k1", type=int, default=0,
                       help="k_1 when deriving k from --sigma")
        p.add_argument("--k", help="explicit k-sequence, e.g. \"1,(1)\"")
        p.add_argument("--levels", type=int, default=8)
        p.add_argument("--resolution", type=int, default=0)
        p.add_argument("--format", choices=["text", "json", "dot"],
                       default="text")
        p.add_argument("--budget", type=int, default=10 ** 6)
        p.add_argument("--seed", type=int, default=2024)

    for name in ("kseq", "ktheory", "measure", "partition", "bratteli",
                 "verify"):
        add_common(sub.add_parser(name))
    pc = sub.add_parser("cycles")
    pc.add_argument("--builtin", help="builtin category name (example2)")
    pc.add_argument("--file", help="category JSON file")

    args = parser.parse_args(argv)
    try:
        if args.cmd == "cycles":
            if bool(args.builtin) == bool(args.file):
                parser.error("cycles needs exactly one of --builtin/--file")
            return cmd_cycles(args)
        cfg = build_config(args)
        return {
            "kseq": cmd_kseq, "ktheory": cmd_ktheory,
            "measure": cmd_measure, "partition": cmd_partition,
            "bratteli": cmd_bratteli, "verify": cmd_verify,
        }[args.cmd](cfg)
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except PathcatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
