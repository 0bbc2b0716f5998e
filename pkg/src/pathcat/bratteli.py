"""The AF chain attached to k (E_i / F_i data) and Effros-Shen diagrams.

Two-row Bratteli chains: levels carry dimension pairs (column vectors),
edges carry 2x2 multiplicity matrices, and dims_{i+1} = M_i . dims_i.
Diagram equivalence is decided by telescoped-matrix equality at common
dimension cuts, which is what the k <-> continued-fraction dictionary
predicts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import BadCuts, PathcatError
from .cat_paths import (
    KSequence, Path, alpha_beta, compose, enumerate_words, phi_set, unit,
)
from .boundary import Partition, zdiff, zset
from .cf_order import (
    CFStream, IDENTITY, IntMatrix2, bmat, cmat, collapse_zeros,
)


@dataclass(frozen=True)
class BratteliDiagram:
    """levels[i] is the dimension pair, edges[i] maps level i to i+1."""

    levels: tuple[tuple[int, int], ...]
    edges: tuple[IntMatrix2, ...]

    def __post_init__(self) -> None:
        if len(self.edges) != len(self.levels) - 1:
            raise PathcatError("need one edge matrix per consecutive pair")
        for i, m in enumerate(self.edges):
            if any(v < 0 for v in (m.a, m.b, m.c, m.d)):
                raise PathcatError("multiplicities must be >= 0")
            if (m.a == 0 and m.b == 0) or (m.c == 0 and m.d == 0) or \
                    (m.a == 0 and m.c == 0) or (m.b == 0 and m.d == 0):
                raise PathcatError("zero row/column in multiplicity matrix")
            if m.apply_vec(self.levels[i]) != self.levels[i + 1]:
                raise PathcatError(
                    f"dims at level {i + 1} do not propagate")


# ---------------------------------------------------------------------------
# E_i / F_i data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EFSets:
    level: int
    E: tuple[Path, ...]
    F: tuple[Path, ...]


def ef_sets(i: int, k: KSequence) -> EFSets:
    """E_i = all words of length i out of v_1; F_i = {eta beta^q : eta in
    Phi_i, |eta| + q = i + 1}."""
    e = tuple(enumerate_words(k, i))
    f = tuple(compose(eta, alpha_beta(eta.source.index, 0, i + 1 - eta.length))
              for eta in phi_set(i, k))
    return EFSets(i, e, f)


def ef_counts(i: int, k: KSequence) -> tuple[int, int]:
    """(|E_i|, |F_i|) by the B-matrix recursion from (1, 1) at level 0."""
    v = (1, 1)
    for lvl in range(i):
        v = bmat(k[lvl + 1]).apply_vec(v)
    return v


def ab_partition(i: int, k: KSequence) -> Partition:
    """A_i u B_i: cells Z(mu)\\Z(mu beta) for mu in E_i and Z(mu) for mu
    in F_i -- the partition of X underlying the i-th finite-dimensional
    subalgebra."""
    ef = ef_sets(i, k)
    cells = [zdiff(mu, compose(mu, alpha_beta(mu.source.index, 0, 1)))
             for mu in ef.E]
    cells += [zset(mu) for mu in ef.F]
    return Partition(f"A_{i}uB_{i}", tuple(cells), None)


# ---------------------------------------------------------------------------
# Chains
# ---------------------------------------------------------------------------

def chain_from_k(k: KSequence, levels: int) -> BratteliDiagram:
    """Levels 1..levels of the AF chain: dims start at (k_1+2, k_1+1) and
    the i -> i+1 multiplicities are B_i = [[k_{i+1}+1, 1], [k_{i+1}, 1]]."""
    if levels < 1:
        raise PathcatError("need at least one level")
    dims = [(k[1] + 2, k[1] + 1)]
    edges = []
    for i in range(1, levels):
        m = bmat(k[i + 1])
        edges.append(m)
        dims.append(m.apply_vec(dims[-1]))
    return BratteliDiagram(tuple(dims), tuple(edges))


def simple_coeffs(theta: CFStream, count: int) -> list[int]:
    """First `count` coefficients of the simple CF of theta (zeros
    collapsed away; a trailing buffer absorbs truncation artifacts)."""
    raw = collapse_zeros(theta.head(2 * count + 8))
    coeffs = raw[:count + 1]
    if len(coeffs) < count + 1 or any(c < 1 for c in coeffs[1:]):
        raise PathcatError("not enough simple coefficients")
    return coeffs


def chain_effros_shen(theta: CFStream, levels: int) -> BratteliDiagram:
    """The Effros-Shen chain of theta = [0; g_1, g_2, ...]: dims
    (q_n, q_{n-1}) starting at n = 1, multiplicities [[g_{n+1},1],[1,0]]."""
    if levels < 1:
        raise PathcatError("need at least one level")
    g = simple_coeffs(theta, levels + 1)
    if g[0] != 0:
        raise PathcatError("expected theta in (0, 1)")
    q_prev, q_cur = 1, g[1]
    dims = [(q_cur, q_prev)]
    edges = []
    for n in range(2, levels + 1):
        m = cmat(g[n])
        edges.append(m)
        q_prev, q_cur = q_cur, g[n] * q_cur + q_prev
        dims.append((q_cur, q_prev))
    return BratteliDiagram(tuple(dims), tuple(edges))


def telescope(d: BratteliDiagram, cuts: list[int]) -> BratteliDiagram:
    """Contract the chain to the given level indices (strictly
    increasing), multiplying the multiplicity matrices in between."""
    if not cuts or list(cuts) != sorted(set(cuts)) or \
            cuts[0] < 0 or cuts[-1] >= len(d.levels):
        raise BadCuts(f"bad cut points {cuts}")
    dims = tuple(d.levels[c] for c in cuts)
    edges = []
    for a, b in zip(cuts, cuts[1:]):
        m = IDENTITY
        for i in range(a, b):
            m = d.edges[i] * m
        edges.append(m)
    return BratteliDiagram(dims, tuple(edges))


def _segment(d: BratteliDiagram, a: int, b: int) -> IntMatrix2:
    m = IDENTITY
    for i in range(a, b):
        m = d.edges[i] * m
    return m


def _align(d1: BratteliDiagram, d2: BratteliDiagram) -> bool:
    """Greedy common-cut alignment: equal dims at each cut and equal
    telescoped matrices between consecutive cuts.  Succeeds when the
    alignment reaches the truncation horizon of the shorter chain."""
    i = j = None
    for i0 in range(len(d1.levels)):
        for j0 in range(len(d2.levels)):
            if d1.levels[i0] == d2.levels[j0]:
                i, j = i0, j0
                break
        if i is not None:
            break
    if i is None:
        return False
    gmax = max(i, j, 1)
    cuts = 1
    while True:
        found = False
        for i1 in range(i + 1, len(d1.levels)):
            m1 = _segment(d1, i, i1)
            for j1 in range(j + 1, len(d2.levels)):
                if d1.levels[i1] == d2.levels[j1] and \
                        _segment(d2, j, j1) == m1:
                    gmax = max(gmax, i1 - i, j1 - j)
                    i, j = i1, j1
                    cuts += 1
                    found = True
                    break
            if found:
                break
        if not found:
            break
    tail1 = len(d1.levels) - 1 - i
    tail2 = len(d2.levels) - 1 - j
    return cuts >= 2 and (tail1 <= gmax or tail2 <= gmax)


def equivalent(d1: BratteliDiagram, d2: BratteliDiagram) -> bool:
    """Same inductive limit, decided by telescoping to common dims."""
    return _align(d1, d2) or _align(d2, d1)


# ---------------------------------------------------------------------------
# Emission
# ---------------------------------------------------------------------------

def emit(d: BratteliDiagram, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({
            "levels": [list(lv) for lv in d.levels],
            "edges": [[[m.a, m.b], [m.c, m.d]] for m in d.edges],
        }, indent=2) + "\n"
    if fmt != "dot":
        raise PathcatError(f"unknown format {fmt!r}")
    lines = ["digraph bratteli {", "  rankdir=TB;"]
    for i, (p, q) in enumerate(d.levels):
        lines.append(f"  {{ rank=same; e{i} [label=\"{p}\"];"
                     f" f{i} [label=\"{q}\"]; }}")
    for i, m in enumerate(d.edges):
        for src, dst, mult in (("e", "e", m.a), ("f", "e", m.b),
                               ("e", "f", m.c), ("f", "f", m.d)):
            if mult == 0:
                continue
            if mult <= 3:
                for _ in range(mult):
                    lines.append(f"  {src}{i} -> {dst}{i + 1};")
            else:
                lines.append(
                    f"  {src}{i} -> {dst}{i + 1} [label=\"{mult}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_diagram_json(text: str) -> BratteliDiagram:
    data = json.loads(text)
    levels = tuple((lv[0], lv[1]) for lv in data["levels"])
    edges = tuple(IntMatrix2(m[0][0], m[0][1], m[1][0], m[1][1])
                  for m in data["edges"])
    return BratteliDiagram(levels, edges)
