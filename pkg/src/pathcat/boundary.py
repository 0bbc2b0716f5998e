"""Symbolic boundary points of X = v_1.dLambda and clopen partitions.

A boundary point is an infinite word: finitely many gamma edges followed
by an infinite Lambda_1 tail alpha^a beta^b (a + b infinite), or
infinitely many gamma edges.  We store a finite exact prefix plus a tail
marker, with resolution bookkeeping: every finite number stored is exact,
and the point stands for the class of boundary points agreeing with it on
all membership tests against cylinder expressions within the resolution.

The enumeration in enumerate_points is a faithful finite quotient: every
boundary point agrees with exactly one emitted symbolic point on all
tests with path lengths <= the resolution, and distinct emitted points
are distinguished by some such test.  sweep_signatures is the same
recursion with subtree pruning, used to verify partitions at resolutions
where the full point list would be enormous.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Optional, Union

from .errors import (
    InsufficientResolution,
    NotAPrefix,
    PathcatError,
    ResourceLimit,
)
from .cat_paths import (
    KSequence, L1, L2, Path, Vertex,
    alpha_beta, compose, factor_out, is_prefix, make_path, meets, phi_set,
    unit,
)


# ---------------------------------------------------------------------------
# Tails and symbolic points
# ---------------------------------------------------------------------------

class _Omega:
    """Marker for an L1 component known only to exceed the resolution."""

    def __repr__(self) -> str:
        return "omega"


OMEGA = _Omega()


def _is_omega(v) -> bool:
    return v is OMEGA


@dataclass(frozen=True)
class GammaTail:
    """The canonical continuation: gamma^(1) where k > 0, else beta.

    A point with this tail has infinitely many gamma edges; its concrete
    continuation is the canonical rule, which represents the whole class
    of points whose next gamma edge lies beyond the resolution window.
    """


@dataclass(frozen=True)
class ABTail:
    """Final Lambda_1 factor alpha^a beta^b with a = omega or b = omega."""

    a: Union[int, _Omega]
    b: Union[int, _Omega]

    def __post_init__(self) -> None:
        if not (_is_omega(self.a) or _is_omega(self.b)):
            raise PathcatError("AB tail needs a = omega or b = omega")
        for v in (self.a, self.b):
            if not _is_omega(v) and v < 0:
                raise PathcatError("AB components must be >= 0")

    def __repr__(self) -> str:
        return f"AB({self.a},{self.b})"


Tail = Union[GammaTail, ABTail]


@dataclass(frozen=True)
class SymbolicPoint:
    """prefix (exact Path) + tail + the ambient k-rule and a resolution."""

    prefix: Path
    tail: Tail
    k: KSequence
    resolution: int

    def __post_init__(self) -> None:
        if isinstance(self.tail, ABTail) and self.prefix.blocks:
            if not isinstance(self.prefix.blocks[-1], L2):
                raise PathcatError("AB tail requires prefix empty or ending L2")
        self.prefix.check_branches(self.k)

    @property
    def is_maximal(self) -> bool:
        if isinstance(self.tail, GammaTail):
            return True
        return _is_omega(self.tail.a) and _is_omega(self.tail.b)

    def __repr__(self) -> str:
        t = "Gamma" if isinstance(self.tail, GammaTail) else repr(self.tail)
        return f"<{self.prefix!r}*{t}@{self.resolution}>"


def make_point(prefix: Path, tail: Tail, k: KSequence,
               resolution: int) -> SymbolicPoint:
    """Build a point, folding a trailing L1 of the prefix into an AB tail."""
    if isinstance(tail, ABTail) and prefix.blocks and \
            isinstance(prefix.blocks[-1], L1):
        last = prefix.blocks[-1]
        a = tail.a if _is_omega(tail.a) else tail.a + last.m
        b = tail.b if _is_omega(tail.b) else tail.b + last.n
        prefix = Path(prefix.range, prefix.blocks[:-1])
        tail = ABTail(a, b)
    return SymbolicPoint(prefix, tail, k, resolution)


# ---------------------------------------------------------------------------
# Materialized block view and prefix tests
# ---------------------------------------------------------------------------

def _push_item(items: list, item) -> None:
    if items and items[-1][0] == "L1" and item[0] == "L1":
        _t, m0, n0 = items.pop()
        _t, m1, n1 = item
        m = OMEGA if (_is_omega(m0) or _is_omega(m1)) else m0 + m1
        n = OMEGA if (_is_omega(n0) or _is_omega(n1)) else n0 + n1
        items.append(("L1", m, n))
    else:
        items.append(item)


def point_items(x: SymbolicPoint, count: int) -> list:
    """At least `count` normal-form blocks of x (or all of them up to an
    unbounded final L1), as ("L1", m, n) / ("L2", level, branch) tuples
    with OMEGA allowed in L1 components."""
    items: list = []
    for b in x.prefix.blocks:
        if isinstance(b, L1):
            _push_item(items, ("L1", b.m, b.n))
        else:
            _push_item(items, ("L2", b.level, b.branch))
    if isinstance(x.tail, ABTail):
        _push_item(items, ("L1", x.tail.a, x.tail.b))
        return items
    level = x.prefix.source.index
    while len(items) < count + 1:
        if x.k[level] > 0:
            _push_item(items, ("L2", level, 1))
            level += 1
        else:
            nxt = x.k.first_positive_after(level)
            _push_item(items, ("L1", 0, nxt - level))
            level = nxt
    return items


def _component_le(v, w) -> bool:
    """v <= w with OMEGA larger than every integer (v finite here)."""
    if _is_omega(w):
        return True
    if _is_omega(v):
        return False
    return v <= w


def point_has_prefix(x: SymbolicPoint, mu: Path) -> bool:
    """Exact test: mu is an initial factor of the boundary point x."""
    if mu.range != x.prefix.range:
        raise PathcatError("prefix test needs matching range")
    if mu.is_unit:
        return True
    items = point_items(x, len(mu.blocks))
    if len(items) < len(mu.blocks):
        return False
    for i, b in enumerate(mu.blocks[:-1]):
        it = items[i]
        if isinstance(b, L1):
            if it != ("L1", b.m, b.n):
                return False
        elif it != ("L2", b.level, b.branch):
            return False
    last = mu.blocks[-1]
    it = items[len(mu.blocks) - 1]
    if isinstance(last, L1):
        return it[0] == "L1" and _component_le(last.m, it[1]) \
            and _component_le(last.n, it[2])
    return it == ("L2", last.level, last.branch)


def materialize(x: SymbolicPoint, upto: int) -> SymbolicPoint:
    """Extend the stored prefix of a GammaTail point along its canonical
    continuation until it has length >= upto (an exact operation)."""
    if not isinstance(x.tail, GammaTail):
        return x
    blocks = list(x.prefix.blocks)
    level = x.prefix.source.index
    length = x.prefix.length
    while length < upto:
        if x.k[level] > 0:
            blocks.append(L2(level, 1))
            level += 1
            length += 1
        else:
            nxt = x.k.first_positive_after(level)
            step = nxt - level
            if blocks and isinstance(blocks[-1], L1):
                last = blocks.pop()
                blocks.append(L1(last.m, last.n + step))
            else:
                blocks.append(L1(0, step))
            level = nxt
            length += step
    return SymbolicPoint(Path(x.prefix.range, tuple(blocks)), x.tail,
                         x.k, x.resolution)


def strip_prefix(x: SymbolicPoint, p: Path) -> SymbolicPoint:
    """The point y with x = p.y; raises NotAPrefix when p is not in x."""
    if not point_has_prefix(x, p):
        raise NotAPrefix(f"{p!r} not a prefix of {x!r}")
    if isinstance(x.tail, GammaTail):
        x = materialize(x, p.length + 1)
    try:
        if is_prefix(p, x.prefix):
            return SymbolicPoint(factor_out(x.prefix, p), x.tail,
                                 x.k, x.resolution)
    except PathcatError:
        pass
    # AB tail and p reaches past the stored prefix: p's extra block is a
    # single L1 eating into the tail.
    assert isinstance(x.tail, ABTail)
    pb, xb = p.blocks, x.prefix.blocks
    if len(pb) == len(xb) + 1 and pb[:len(xb)] == xb and \
            isinstance(pb[-1], L1):
        last = pb[-1]
        a = x.tail.a if _is_omega(x.tail.a) else x.tail.a - last.m
        b = x.tail.b if _is_omega(x.tail.b) else x.tail.b - last.n
        return SymbolicPoint(unit(p.source), ABTail(a, b), x.k, x.resolution)
    raise NotAPrefix(f"{p!r} not alignable with {x!r}")  # pragma: no cover


def prepend(q: Path, x: SymbolicPoint) -> SymbolicPoint:
    """The point q.x (source of q must match the root of x)."""
    if q.source != x.prefix.range:
        raise PathcatError("prepend needs s(q) = range of the point")
    merged = compose(q, x.prefix)
    return make_point(merged, x.tail, x.k, x.resolution)


def canonical_point(x: SymbolicPoint) -> SymbolicPoint:
    """Shortest stored prefix representing the same boundary point.

    For a GammaTail this strips trailing blocks that the canonical
    continuation would regenerate (gamma^(1) at positive-k levels, beta
    runs at zero-k levels); AB tails are already canonical via make_point.
    """
    if isinstance(x.tail, ABTail):
        return make_point(x.prefix, x.tail, x.k, x.resolution)
    blocks = list(x.prefix.blocks)
    pos = x.prefix.source.index  # level just past the prefix
    while blocks:
        b = blocks[-1]
        if isinstance(b, L2):
            if b.branch == 1 and x.k[b.level] > 0:
                blocks.pop()
                pos = b.level
                continue
            break
        # L1(m, n): the continuation regenerates a beta run over zero-k levels
        t = 0
        while t < b.n and x.k[pos - 1 - t] == 0:
            t += 1
        if t == 0:
            break
        pos -= t
        blocks.pop()
        if b.m > 0 or b.n > t:
            blocks.append(L1(b.m, b.n - t))
            break
    return SymbolicPoint(Path(x.prefix.range, tuple(blocks)), x.tail,
                         x.k, x.resolution)


# ---------------------------------------------------------------------------
# Cylinder expressions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CylinderExpr:
    """Z(base) minus the union of Z(s) for s in subtracted."""

    base: Path
    subtracted: tuple[Path, ...] = ()

    def __post_init__(self) -> None:
        for s in self.subtracted:
            if not is_prefix(self.base, s) or s == self.base:
                raise PathcatError(f"{s!r} does not strictly extend base")

    def max_path_length(self) -> int:
        return max([self.base.length] + [s.length for s in self.subtracted])

    def __repr__(self) -> str:
        if not self.subtracted:
            return f"Z({self.base!r})"
        subs = ",".join(f"Z({s!r})" for s in self.subtracted)
        return f"Z({self.base!r})\\{subs}"


def zset(base: Path) -> CylinderExpr:
    return CylinderExpr(base)


def zdiff(base: Path, *subtracted: Path) -> CylinderExpr:
    return CylinderExpr(base, tuple(subtracted))


def prepend_expr(mu: Path, expr: CylinderExpr) -> CylinderExpr:
    return CylinderExpr(compose(mu, expr.base),
                        tuple(compose(mu, s) for s in expr.subtracted))


def contains(expr: CylinderExpr, x: SymbolicPoint) -> bool:
    """Exact membership of the point in the cylinder expression."""
    if x.resolution < 1 + expr.max_path_length():
        raise InsufficientResolution(
            f"resolution {x.resolution} < 1 + {expr.max_path_length()}")
    if not point_has_prefix(x, expr.base):
        return False
    return not any(point_has_prefix(x, s) for s in expr.subtracted)


@dataclass(frozen=True)
class Partition:
    """A labeled family of cylinder expressions claimed to partition
    either X (cover=None) or the union of the cover sets."""

    label: str
    cells: tuple[CylinderExpr, ...]
    cover: Optional[tuple[CylinderExpr, ...]] = None

    def max_path_length(self) -> int:
        out = max(c.max_path_length() for c in self.cells)
        if self.cover:
            out = max(out, max(c.max_path_length() for c in self.cover))
        return out


# ---------------------------------------------------------------------------
# The finite-resolution oracle
# ---------------------------------------------------------------------------

POINT_BUDGET = 10 ** 6


def enumerate_points(resolution: int, k: KSequence, root: int = 1,
                     budget: int = POINT_BUDGET) -> list[SymbolicPoint]:
    """All membership classes of v_root.dLambda at the given resolution.

    Every boundary point agrees with exactly one returned symbolic point
    on membership in cylinder expressions with path lengths <= resolution.
    The recursion is over exact gamma positions; at each node w with
    remaining window R = resolution - |w| it emits the AB classes with one
    component < R (larger components collapse to omega), the "horizon"
    classes whose next gamma edge falls just outside the window, and
    recurses into the in-window gamma edges.
    """
    if resolution < 1:
        raise PathcatError("resolution must be >= 1")
    out: list[SymbolicPoint] = []

    def emit(p: SymbolicPoint) -> None:
        out.append(p)
        if len(out) > budget:
            raise ResourceLimit(f"more than {budget} symbolic points")

    def node(w: Path) -> None:
        rwin = resolution - w.length
        if rwin <= 0:
            emit(SymbolicPoint(w, ABTail(OMEGA, OMEGA), k, resolution))
            return
        for a in range(rwin):
            emit(SymbolicPoint(w, ABTail(a, OMEGA), k, resolution))
            emit(SymbolicPoint(w, ABTail(OMEGA, a), k, resolution))
        emit(SymbolicPoint(w, ABTail(OMEGA, OMEGA), k, resolution))
        base_level = w.range.index + w.length
        for m in range(rwin):
            for n in range(rwin):
                if m + n < rwin:
                    continue
                if k[base_level + m + n] > 0:
                    pre = make_path(w.range.index, list(w.blocks) + [L1(m, n)])
                    emit(SymbolicPoint(pre, GammaTail(), k, resolution))
        for total in range(rwin):
            level = base_level + total
            if k[level] == 0:
                continue
            l1s = [[]] if total == 0 else [[L1(m, total - m)]
                                           for m in range(total + 1)]
            for l1 in l1s:
                for j in range(1, k[level] + 1):
                    node(make_path(w.range.index,
                                   list(w.blocks) + l1 + [L2(level, j)]))

    node(unit(root))
    return out


# ---------------------------------------------------------------------------
# Pruned signature sweep
# ---------------------------------------------------------------------------

_IN, _OUT, _MAYBE = 1, 0, -1


def _status(expr: CylinderExpr, w: Path) -> int:
    """Constant membership of all boundary points below the node w, if
    decidable from w alone."""
    if any(is_prefix(s, w) for s in expr.subtracted):
        return _OUT
    if not meets(expr.base, w):
        return _OUT
    if is_prefix(expr.base, w) and \
            not any(meets(s, w) for s in expr.subtracted):
        return _IN
    return _MAYBE


def sweep_signatures(sets: list[CylinderExpr], resolution: int, k: KSequence,
                     root: int = 1,
                     budget: int = POINT_BUDGET) -> set[tuple[bool, ...]]:
    """Membership signatures (one bool per set) realized by boundary points.

    Same class structure as enumerate_points, but a subtree is pruned as
    soon as every set's membership is constant on it, so it stays feasible
    at resolutions where the full class list would be enormous.
    """
    for e in sets:
        if resolution < 1 + e.max_path_length():
            raise InsufficientResolution(
                f"resolution {resolution} too small for {e!r}")
    signatures: set[tuple[bool, ...]] = set()
    work = 0

    def account(units: int = 1) -> None:
        nonlocal work
        work += units
        if work > budget:
            raise ResourceLimit(f"sweep exceeded budget {budget}")

    def node(w: Path, stats: list[int]) -> None:
        account()
        stats = [s if s != _MAYBE else _status(sets[i], w)
                 for i, s in enumerate(stats)]
        open_idx = [i for i, s in enumerate(stats) if s == _MAYBE]
        if not open_idx:
            signatures.add(tuple(s == _IN for s in stats))
            return
        rwin = resolution - w.length

        def classify(point: SymbolicPoint) -> None:
            account()
            sig = [s == _IN for s in stats]
            for i in open_idx:
                sig[i] = contains(sets[i], point)
            signatures.add(tuple(sig))

        if rwin <= 0:
            classify(SymbolicPoint(w, ABTail(OMEGA, OMEGA), k, resolution))
            return
        for a in range(rwin):
            classify(SymbolicPoint(w, ABTail(a, OMEGA), k, resolution))
            classify(SymbolicPoint(w, ABTail(OMEGA, a), k, resolution))
        classify(SymbolicPoint(w, ABTail(OMEGA, OMEGA), k, resolution))
        base_level = w.range.index + w.length
        for m in range(rwin):
            for n in range(rwin):
                if m + n < rwin:
                    continue
                if k[base_level + m + n] > 0:
                    pre = make_path(w.range.index, list(w.blocks) + [L1(m, n)])
                    classify(SymbolicPoint(pre, GammaTail(), k, resolution))
        for total in range(rwin):
            level = base_level + total
            if k[level] == 0:
                continue
            l1s = [[]] if total == 0 else [[L1(m, total - m)]
                                           for m in range(total + 1)]
            for l1 in l1s:
                for j in range(1, k[level] + 1):
                    node(make_path(w.range.index,
                                   list(w.blocks) + l1 + [L2(level, j)]),
                         stats)

    node(unit(root), [_MAYBE] * len(sets))
    return signatures


def verify_partition(partition: Partition, resolution: int, k: KSequence,
                     root: int = 1, budget: int = POINT_BUDGET) -> bool:
    """Cells are pairwise disjoint and their union is the cover (X if the
    partition has no cover), on every membership class."""
    cells = list(partition.cells)
    cover = list(partition.cover) if partition.cover is not None \
        else [zset(unit(root))]
    sigs = sweep_signatures(cells + cover, resolution, k, root, budget)
    nc = len(cells)
    for sig in sigs:
        inside = any(sig[nc:])
        if sum(sig[:nc]) != (1 if inside else 0):
            return False
    return True


def refines(partition: Partition, expr: CylinderExpr, resolution: int,
            k: KSequence, root: int = 1, budget: int = POINT_BUDGET) -> bool:
    """Every cell is contained in or disjoint from expr."""
    cells = list(partition.cells)
    sigs = sweep_signatures(cells + [expr], resolution, k, root, budget)
    verdict: dict[int, bool] = {}
    for sig in sigs:
        for i in range(len(cells)):
            if sig[i]:
                if verdict.setdefault(i, sig[-1]) != sig[-1]:
                    return False
    return True


def refines_all(partition: Partition, exprs: list[CylinderExpr],
                resolution: int, k: KSequence, root: int = 1,
                budget: int = POINT_BUDGET) -> list[bool]:
    """refines() for many expressions in a single sweep."""
    cells = list(partition.cells)
    nc = len(cells)
    sigs = sweep_signatures(cells + exprs, resolution, k, root, budget)
    verdict: dict[tuple[int, int], bool] = {}
    out = [True] * len(exprs)
    for sig in sigs:
        for i in range(nc):
            if sig[i]:
                for e in range(len(exprs)):
                    bit = sig[nc + e]
                    if verdict.setdefault((i, e), bit) != bit:
                        out[e] = False
    return out


def verify_identity(lhs: CylinderExpr, rhs: Iterable[CylinderExpr],
                    resolution: int, k: KSequence, root: int = 1,
                    budget: int = POINT_BUDGET) -> bool:
    """lhs equals the disjoint union of the rhs cells, exactly."""
    cells = list(rhs)
    sigs = sweep_signatures([lhs] + cells, resolution, k, root, budget)
    return all(sum(sig[1:]) == (1 if sig[0] else 0) for sig in sigs)


# ---------------------------------------------------------------------------
# The partitions P_{m,n}, Q_n and the refinement identities
# ---------------------------------------------------------------------------

def _p_cells(m: int, n: int, k: KSequence):
    """The four cell families of P_{m,n}, rooted at v_m."""
    p1 = [zdiff(alpha_beta(m, n + 1, j), alpha_beta(m, n + 1, j + 1))
          for j in range(n + 1)]
    p2 = [zdiff(alpha_beta(m, i, n + 1), alpha_beta(m, i + 1, n + 1))
          for i in range(n + 1)]
    p3 = [zset(make_path(m, ([L1(i, j)] if i + j else [])
                         + [L2(m + i + j, r)]))
          for i in range(n + 1) for j in range(n + 1)
          if n <= i + j
          for r in range(1, k[m + i + j] + 1)]
    p4 = [zset(alpha_beta(m, n + 1, n + 1))]
    return p1, p2, p3, p4


def w_cover(m: int, n: int) -> tuple[CylinderExpr, ...]:
    """W_{m,n} = union of Z(v_m alpha^p beta^q) over p + q = n."""
    return tuple(zset(alpha_beta(m, p, n - p)) for p in range(n + 1))


def partition_P(m: int, n: int, k: KSequence) -> Partition:
    """The partition of W_{m,n} refining every Z(nu), Z(nu)\\Z(nu lambda)
    with nu in v_m Lambda_1 of length n and lambda a single edge."""
    p1, p2, p3, p4 = _p_cells(m, n, k)
    return Partition(f"P_{m},{n}", tuple(p1 + p2 + p3 + p4), w_cover(m, n))


def partition_Q(n: int, k: KSequence) -> Partition:
    """Q_n = union over mu in Phi_n of mu . P_{|mu|+1, n-|mu|}: a partition
    of all of X refining every Z(nu), Z(nu)\\Z(nu lambda) with |nu| <= n."""
    if n < 1:
        raise PathcatError("Q_n needs n >= 1")
    cells: list[CylinderExpr] = []
    for mu in phi_set(n, k):
        inner = partition_P(mu.length + 1, n - mu.length, k)
        cells.extend(prepend_expr(mu, c) for c in inner.cells)
    return Partition(f"Q_{n}", tuple(cells), None)


def refinement_equations(m: int, p: int, q: int, k: KSequence
                         ) -> list[tuple[CylinderExpr, tuple[CylinderExpr, ...]]]:
    """The four explicit refinement identities at nu = v_m alpha^p beta^q.

    Returns (left side, disjoint right-side cells) pairs: the cylinder
    Z(nu) itself, Z(nu) minus its alpha / beta one-edge extensions, and
    Z(nu) minus each gamma extension (one identity per branch).
    """
    n = p + q
    p1, p2, p3, p4 = _p_cells(m, n, k)

    def p1_sel(j0): return [p1[j] for j in range(j0, n + 1)]
    def p2_sel(i0): return [p2[i] for i in range(i0, n + 1)]

    def gamma_cells(i_rng, j_rng, skip=None):
        out = []
        for i in i_rng:
            for j in j_rng:
                for r in range(1, k[m + i + j] + 1):
                    if skip and (i, j, r) == skip:
                        continue
                    out.append(zset(make_path(
                        m, ([L1(i, j)] if i + j else []) + [L2(m + i + j, r)])))
        return out

    nu = alpha_beta(m, p, q)
    eqs = []
    # (1) Z(nu) itself
    eqs.append((zset(nu), tuple(
        p1_sel(q) + p2_sel(p)
        + gamma_cells(range(p, n + 1), range(q, n + 1)) + p4)))
    # (2) Z(nu) \ Z(nu alpha)
    eqs.append((zdiff(nu, alpha_beta(m, p + 1, q)), tuple(
        [zdiff(alpha_beta(m, p, n + 1), alpha_beta(m, p + 1, n + 1))]
        + gamma_cells([p], range(q, n + 1)))))
    # (3) Z(nu) \ Z(nu beta)
    eqs.append((zdiff(nu, alpha_beta(m, p, q + 1)), tuple(
        [zdiff(alpha_beta(m, n + 1, q), alpha_beta(m, n + 1, q + 1))]
        + gamma_cells(range(p, n + 1), [q]))))
    # (4) Z(nu) \ Z(nu gamma^(r)), one identity per branch r
    for r in range(1, k[m + n] + 1):
        lhs = zdiff(nu, make_path(
            m, ([L1(p, q)] if n else []) + [L2(m + n, r)]))
        rhs = (p1_sel(q) + p2_sel(p)
               + gamma_cells(range(p, n + 1), range(q, n + 1),
                             skip=(p, q, r)) + p4)
        eqs.append((lhs, tuple(rhs)))
    return eqs


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------

def path_json(p: Path) -> dict:
    blocks = []
    for b in p.blocks:
        if isinstance(b, L1):
            blocks.append({"type": "L1", "m": b.m, "n": b.n})
        else:
            blocks.append({"type": "L2", "level": b.level, "branch": b.branch})
    return {"range": p.range.index, "blocks": blocks}


def expr_json(e: CylinderExpr) -> dict:
    return {"base": path_json(e.base),
            "subtracted": [path_json(s) for s in e.subtracted]}


def partition_json(p: Partition, resolution: Optional[int] = None,
                   point_count: Optional[int] = None) -> dict:
    out = {"label": p.label, "cells": [expr_json(c) for c in p.cells]}
    if resolution is not None:
        out["verified"] = {"resolution": resolution,
                           "point_count": point_count}
    return out
