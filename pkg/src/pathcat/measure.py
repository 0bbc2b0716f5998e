"""The unique invariant probability measure on X, exactly in Z.theta + Z.

a_0 = theta and the level recursion has integer coefficients, so every
measure value is x*theta + y with integer x, y, and every additivity or
invariance claim becomes an integer pair identity.  Comparisons (sign
certification) go through nested rational bounds on theta; floats appear
only in report columns.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    NegativeMeasure,
    PathcatError,
    RefinementMismatch,
    ResourceLimit,
)
from .cat_paths import KSequence, Path
from .boundary import (
    CylinderExpr, Partition, partition_Q, prepend_expr, sweep_signatures,
    zset,
)
from .cf_order import cf_eval, theta_from_k

SIGN_BUDGET = 1000


def a0_bounds(k: KSequence, n: int) -> tuple[Fraction, Fraction]:
    """[0,1,k_1,...,1,k_n] <= theta <= [0,1,k_1,...,1,k_n,1], exactly."""
    if n < 1:
        raise PathcatError("a0_bounds needs n >= 1")
    coeffs = [0]
    for i in range(1, n + 1):
        coeffs.extend((1, k[i]))
    lo = cf_eval(coeffs)
    hi = cf_eval(coeffs + [1])
    return (min(lo, hi), max(lo, hi))


class ThetaContext:
    """Shared certified bounds on theta for one k-sequence."""

    def __init__(self, k: KSequence):
        self.k = k
        self.theta = theta_from_k(k)
        self._bounds: list[tuple[Fraction, Fraction]] = []

    def bounds(self, depth: int) -> tuple[Fraction, Fraction]:
        while len(self._bounds) < depth:
            self._bounds.append(a0_bounds(self.k, len(self._bounds) + 1))
        return self._bounds[depth - 1]

    def sign(self, x: int, y: int) -> int:
        """Certified sign of x*theta + y (theta irrational, so never 0
        unless x = y = 0)."""
        if x == 0:
            return (y > 0) - (y < 0)
        for depth in range(1, SIGN_BUDGET + 1):
            lo, hi = self.bounds(depth)
            vals = (x * lo + y, x * hi + y)
            if min(vals) > 0:
                return 1
            if max(vals) < 0:
                return -1
        raise ResourceLimit("sign certification exceeded its budget")

    def __eq__(self, other) -> bool:
        return isinstance(other, ThetaContext) and self.k == other.k

    def __hash__(self) -> int:
        return hash(self.k)


@dataclass(frozen=True)
class ThetaLinear:
    """The exact value x*theta + y."""

    x: int
    y: int
    ctx: ThetaContext

    def _binop(self, other: "ThetaLinear", sx: int) -> "ThetaLinear":
        if self.ctx != other.ctx:
            raise PathcatError("mixed theta contexts")
        return ThetaLinear(self.x + sx * other.x, self.y + sx * other.y,
                           self.ctx)

    def __add__(self, other: "ThetaLinear") -> "ThetaLinear":
        return self._binop(other, 1)

    def __sub__(self, other: "ThetaLinear") -> "ThetaLinear":
        return self._binop(other, -1)

    def __neg__(self) -> "ThetaLinear":
        return ThetaLinear(-self.x, -self.y, self.ctx)

    def scale(self, c: int) -> "ThetaLinear":
        return ThetaLinear(c * self.x, c * self.y, self.ctx)

    def sign(self) -> int:
        return self.ctx.sign(self.x, self.y)

    @property
    def is_nonnegative(self) -> bool:
        return self.x == self.y == 0 or self.sign() >= 0

    def to_float(self) -> float:
        lo, hi = self.ctx.bounds(20)
        mid = (lo + hi) / 2
        return float(self.x * mid + self.y)

    def __repr__(self) -> str:
        return f"({self.x}theta{self.y:+d})"


def tlin(x: int, y: int, ctx: ThetaContext) -> ThetaLinear:
    return ThetaLinear(x, y, ctx)


@dataclass(frozen=True)
class ABPair:
    """a_i = mu(Z(mu_1..mu_i) \\ Z(mu_1..mu_{i+1})), b_i = mu(Z(mu_1..mu_{i+1}))
    for words out of v_1 (only lengths matter)."""

    level: int
    a: ThetaLinear
    b: ThetaLinear


def ab(i: int, k: KSequence, ctx: Optional[ThetaContext] = None) -> ABPair:
    """Exact (a_i, b_i): a_0 = theta, b_0 = 1 - theta, and one recursion
    step per level: (a_{i+1}, b_{i+1}) = (a_i - k_{i+1} b_i,
    -a_i + (k_{i+1}+1) b_i).  b_{-1} := 1 (mu(X) = 1)."""
    ctx = ctx or ThetaContext(k)
    if i < -1:
        raise PathcatError("ab defined for i >= -1")
    if i == -1:
        return ABPair(-1, tlin(0, 0, ctx), tlin(0, 1, ctx))
    a, b = tlin(1, 0, ctx), tlin(-1, 1, ctx)
    for lvl in range(i):
        kk = k[lvl + 1]
        a, b = a - b.scale(kk), b.scale(kk + 1) - a
    for v in (a, b):
        if not v.is_nonnegative:
            raise NegativeMeasure(f"a_{i} or b_{i} negative: {v!r}")
    return ABPair(i, a, b)


def _depth(nu: Path) -> int:
    """Edge count from v_1 to the source of nu (nu may be rooted at any
    v_m; only lengths enter the measure)."""
    return nu.range.index - 1 + nu.length


def mu_basic(expr: CylinderExpr, k: KSequence,
             ctx: Optional[ThetaContext] = None) -> ThetaLinear:
    """mu(Z(nu)) = b_{h-1} with h = depth of nu; mu(Z(nu)\\Z(nu lambda)) =
    a_h for any single edge lambda."""
    ctx = ctx or ThetaContext(k)
    h = _depth(expr.base)
    if not expr.subtracted:
        return ab(h - 1, k, ctx).b
    if len(expr.subtracted) == 1 and \
            expr.subtracted[0].length == expr.base.length + 1:
        return ab(h, k, ctx).a
    raise PathcatError(f"not a basic cylinder expression: {expr!r}")


def mu_ie(expr: CylinderExpr, k: KSequence,
          ctx: Optional[ThetaContext] = None) -> ThetaLinear:
    """mu of a general cylinder expression by inclusion-exclusion over the
    subtracted sets (joins of cylinders are cylinders or empty)."""
    from .cat_paths import mce
    ctx = ctx or ThetaContext(k)
    total = tlin(0, 0, ctx)
    subs = expr.subtracted
    for size in range(len(subs) + 1):
        for combo in itertools.combinations(subs, size):
            join: Optional[Path] = expr.base
            for s in combo:
                join = mce(join, s)
                if join is None:
                    break
            if join is None:
                continue
            total = total + ab(_depth(join) - 1, k, ctx).b.scale((-1) ** size)
    return total


def mu_expr(expr: CylinderExpr, k: KSequence, resolution: int,
            ctx: Optional[ThetaContext] = None) -> ThetaLinear:
    """mu via decomposition into Q_h cells (h = deepest path in expr).

    Every cell must be contained in or disjoint from expr; a partial cell
    raises RefinementMismatch.  Requires expr rooted at v_1.
    """
    ctx = ctx or ThetaContext(k)
    if expr.base.range.index != 1:
        raise PathcatError("mu_expr decomposes subsets of X (root v_1)")
    h = max(expr.max_path_length(), 1)
    q = partition_Q(h, k)
    cells = list(q.cells)
    sigs = sweep_signatures(cells + [expr], resolution, k)
    inside: dict[int, bool] = {}
    for sig in sigs:
        for i, bit in enumerate(sig[:-1]):
            if bit:
                if inside.setdefault(i, sig[-1]) != sig[-1]:
                    raise RefinementMismatch(
                        f"cell {cells[i]!r} is partial in {expr!r}")
    total = tlin(0, 0, ctx)
    for i, flag in inside.items():
        if flag:
            total = total + mu_basic(cells[i], k, ctx)
    return total


@dataclass(frozen=True)
class AdditivityReport:
    label: str
    ok: bool
    total: ThetaLinear
    expected: ThetaLinear
    cell_values: tuple[ThetaLinear, ...]


def verify_additivity(p: Partition, k: KSequence,
                      ctx: Optional[ThetaContext] = None) -> AdditivityReport:
    """Sum of cell measures equals the measure of the cover (1 for X)."""
    ctx = ctx or ThetaContext(k)
    values = tuple(
        mu_basic(c, k, ctx) if _is_basic(c) else mu_ie(c, k, ctx)
        for c in p.cells)
    total = tlin(0, 0, ctx)
    for v in values:
        total = total + v
    if p.cover is None:
        expected = tlin(0, 1, ctx)
    else:
        expected = _mu_union(list(p.cover), k, ctx)
    return AdditivityReport(p.label, total == expected, total, expected,
                            values)


def _is_basic(expr: CylinderExpr) -> bool:
    return not expr.subtracted or (
        len(expr.subtracted) == 1
        and expr.subtracted[0].length == expr.base.length + 1)


def _mu_union(sets: list[CylinderExpr], k: KSequence,
              ctx: ThetaContext) -> ThetaLinear:
    """Inclusion-exclusion for a union of plain cylinders."""
    from .cat_paths import mce
    if any(e.subtracted for e in sets):
        raise PathcatError("cover sets must be plain cylinders")
    total = tlin(0, 0, ctx)
    for size in range(1, len(sets) + 1):
        for combo in itertools.combinations(sets, size):
            join: Optional[Path] = combo[0].base
            for e in combo[1:]:
                join = mce(join, e.base)
                if join is None:
                    break
            if join is None:
                continue
            total = total + ab(_depth(join) - 1, k, ctx).b.scale(
                (-1) ** (size + 1))
    return total


def verify_invariance(nu1: Path, nu2: Path, expr: CylinderExpr,
                      k: KSequence,
                      ctx: Optional[ThetaContext] = None) -> bool:
    """mu(nu1 . E) = mu(nu2 . E) for equal-length nu1, nu2 with the same
    source (the bisection [nu1, nu2, E] moves mass without changing it)."""
    if nu1.length != nu2.length or nu1.source != nu2.source:
        raise PathcatError("invariance needs |nu1| = |nu2|, s(nu1) = s(nu2)")
    ctx = ctx or ThetaContext(k)
    lhs = mu_ie(prepend_expr(nu1, expr), k, ctx)
    rhs = mu_ie(prepend_expr(nu2, expr), k, ctx)
    return lhs == rhs


def pair_inner(pair: ABPair, v: tuple[int, int]) -> ThetaLinear:
    """<(a_i, b_i), (m, n)> = m a_i + n b_i."""
    return pair.a.scale(v[0]) + pair.b.scale(v[1])


def measure_table_json(k: KSequence, upto: int) -> list[dict]:
    ctx = ThetaContext(k)
    rows = []
    for i in range(upto + 1):
        p = ab(i, k, ctx)
        lo, hi = ctx.bounds(max(i, 1))
        rows.append({
            "i": i,
            "a": {"x": p.a.x, "y": p.a.y},
            "b": {"x": p.b.x, "y": p.b.y},
            "a_float": p.a.to_float(),
            "b_float": p.b.to_float(),
            "bound_lo": str(lo),
            "bound_hi": str(hi),
        })
    return rows
