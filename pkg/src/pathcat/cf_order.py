"""Continued fractions, 2x2 integer matrices, and the ordered K0 data.

Everything here is exact: irrationals are represented only by their
continued-fraction coefficient rules (finite prefix + eventual period),
values are bracketed by Fraction intervals, and positivity decisions are
made by interval refinement, never by floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .errors import InvalidCF, LevelOverflow, PathcatError, ResourceLimit
from .cat_paths import KSequence, L1, L2, Path


# ---------------------------------------------------------------------------
# Extended reals
# ---------------------------------------------------------------------------

class _Infinity:
    """The single point at infinity of the projective line."""

    def __repr__(self) -> str:
        return "INF"


INF = _Infinity()

ExtReal = Union[Fraction, _Infinity]


def _recip(z: ExtReal) -> ExtReal:
    if z is INF:
        return Fraction(0)
    if z == 0:
        return INF
    return 1 / z


# ---------------------------------------------------------------------------
# 2x2 integer matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntMatrix2:
    a: int
    b: int
    c: int
    d: int

    def __mul__(self, other: "IntMatrix2") -> "IntMatrix2":
        return IntMatrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "IntMatrix2":
        det = self.det()
        if det not in (1, -1):
            raise PathcatError(f"no integer inverse, det = {det}")
        return IntMatrix2(self.d * det, -self.b * det,
                          -self.c * det, self.a * det)

    def apply_vec(self, v: tuple[int, int]) -> tuple[int, int]:
        m, n = v
        return (self.a * m + self.b * n, self.c * m + self.d * n)

    def power(self, e: int) -> "IntMatrix2":
        out = IDENTITY
        for _ in range(e):
            out = out * self
        return out

    def transpose(self) -> "IntMatrix2":
        return IntMatrix2(self.a, self.c, self.b, self.d)

    def __repr__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


IDENTITY = IntMatrix2(1, 0, 0, 1)


def cmat(a: int) -> IntMatrix2:
    """The continued-fraction step matrix [[a,1],[1,0]]."""
    return IntMatrix2(a, 1, 1, 0)


M1 = cmat(1)
SWAP = cmat(0)
T = IntMatrix2(1, 1, 0, 1)  # = M1 * SWAP


def bmat(k: int) -> IntMatrix2:
    """The connecting matrix [[k+1,1],[k,1]] = M1 * cmat(k)."""
    return IntMatrix2(k + 1, 1, k, 1)


def flt_apply(mat: IntMatrix2, z: ExtReal) -> ExtReal:
    """Fractional-linear action (az+b)/(cz+d) on the projective line."""
    if z is INF:
        num, den = Fraction(mat.a), Fraction(mat.c)
    else:
        num, den = mat.a * z + mat.b, mat.c * z + mat.d
    if den == 0:
        return INF
    return num / den


def cf_eval(coeffs, tail: ExtReal = INF) -> ExtReal:
    """Evaluate [a0, a1, ..., an, tail] with extended-real arithmetic.

    Zero coefficients are allowed; INF is a legitimate value (e.g. the
    empty list with tail INF).
    """
    z = tail
    for a in reversed(list(coeffs)):
        r = _recip(z)
        z = INF if r is INF else a + r
    return z


# ---------------------------------------------------------------------------
# CF streams
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CFStream:
    """Coefficient rule c_0, c_1, ... given by a prefix and eventual period.

    simple=True enforces c_i >= 1 for i >= 1.  Generalized streams may
    contain zeros but must produce positive entries at infinitely many
    even and infinitely many odd positions, with c_1 > 0; this is checked
    on the rule.
    """

    prefix: tuple[int, ...]
    period: tuple[int, ...]
    simple: bool = True

    def __post_init__(self) -> None:
        if not self.period:
            raise InvalidCF("need a nonempty eventual period")
        if any(c < 0 for c in self.prefix + self.period):
            raise InvalidCF("coefficients must be nonnegative")
        if self.simple:
            if any(c == 0 for c in self.prefix[1:]) or 0 in self.period:
                raise InvalidCF("simple stream has c_i >= 1 for i >= 1")
        else:
            if self[1] == 0:
                raise InvalidCF("generalized stream needs c_1 > 0")
            # Two period lengths past the prefix cover both parities.
            start = len(self.prefix)
            window = range(start, start + 2 * len(self.period))
            if not any(self[i] > 0 and i % 2 == 0 for i in window):
                raise InvalidCF("need c_i > 0 at infinitely many even i")
            if not any(self[i] > 0 and i % 2 == 1 for i in window):
                raise InvalidCF("need c_i > 0 at infinitely many odd i")

    def __getitem__(self, i: int) -> int:
        if i < 0:
            raise InvalidCF("coefficient index must be >= 0")
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def head(self, count: int) -> tuple[int, ...]:
        return tuple(self[i] for i in range(count))

    def shift(self) -> "CFStream":
        """The stream [c_1, c_2, ...]."""
        if self.prefix:
            return CFStream(self.prefix[1:], self.period, self.simple)
        return CFStream(self.period[1:], self.period[1:] + self.period[:1],
                        self.simple)

    def interval(self, depth: int) -> tuple[Fraction, Fraction]:
        """An open interval around the value, from the depth-th truncation.

        For a simple stream the tail after any cut lies in (1, oo), so the
        value lies strictly between [c_0..c_n] and [c_0..c_n + 1].
        """
        if not self.simple:
            raise InvalidCF("interval bracketing needs a simple stream")
        n = max(depth, 1)
        lo = cf_eval(self.head(n + 1))
        hi = cf_eval(self.head(n) + (self[n] + 1,))
        return (min(lo, hi), max(lo, hi))

    def __repr__(self) -> str:
        return f"CF{list(self.prefix)}+{list(self.period)}*"


def convergents(stream: CFStream, count: int) -> list[Fraction]:
    """The first `count` finite convergents p_n/q_n (simple streams)."""
    out = []
    p0, q0, p1, q1 = 1, 0, stream[0], 1
    out.append(Fraction(p1, q1))
    for i in range(1, count):
        a = stream[i]
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        out.append(Fraction(p1, q1))
    return out


def collapse_zeros(coeffs) -> list[int]:
    """Normalize a finite generalized CF: [..., x, 0, y, ...] -> [..., x+y, ...].

    The leading coefficient may stay 0 ([0; ...] notation).
    """
    out: list[int] = []
    for a in coeffs:
        out.append(a)
        while len(out) >= 3 and out[-2] == 0:
            y = out.pop()
            out.pop()
            out[-1] += y
    return out


# ---------------------------------------------------------------------------
# The sigma <-> k <-> theta dictionary
# ---------------------------------------------------------------------------

def k_sequence_from_sigma(sigma: CFStream, k1: int) -> KSequence:
    """(k_i) = (k1, c_0, 0^{c_1 - 1}, c_2, 0^{c_3 - 1}, c_4, ...).

    k1 is a free parameter; sigma must be simple (infinite, so irrational
    by the rule representation).
    """
    if not sigma.simple:
        raise InvalidCF("k-sequence dictionary needs a simple sigma")

    def block(p: int) -> tuple[int, ...]:
        # the pair (c_{2p}, c_{2p+1}) contributes [c_{2p}] + (c_{2p+1}-1) zeros
        return (sigma[2 * p],) + (0,) * (sigma[2 * p + 1] - 1)

    # pairs (c_{2p}, c_{2p+1}) repeat with period L once 2p is past the prefix
    s, per = len(sigma.prefix), len(sigma.period)
    pair_period = per if per % 2 == 1 else per // 2
    p0 = (s + 1) // 2
    prefix = (k1,) + tuple(itertools.chain.from_iterable(
        block(p) for p in range(p0)))
    period = tuple(itertools.chain.from_iterable(
        block(p) for p in range(p0, p0 + pair_period)))
    return KSequence(prefix, period)


def theta_from_k(k: KSequence) -> CFStream:
    """theta = [0, 1, k_1, 1, k_2, 1, k_3, ...] as a generalized stream."""
    n = len(k.prefix)
    prefix = (0,) + tuple(itertools.chain.from_iterable(
        (1, k[i]) for i in range(1, n + 1)))
    period = tuple(itertools.chain.from_iterable(
        (1, v) for v in k.period))
    return CFStream(prefix, period, simple=False)


def theta_interval(theta: CFStream, depth: int) -> tuple[Fraction, Fraction]:
    """Exact bracketing of a generalized theta-stream [0,1,k_1,1,k_2,...].

    Cutting after a k-entry (even position 2*depth) leaves a tail
    [1, k_{depth+1}, ...] in (1, oo), so the value lies strictly between
    the truncation and the truncation with a final +1.
    """
    n = 2 * depth + 1
    lo = cf_eval(theta.head(n))
    hi = cf_eval(theta.head(n - 1) + (theta[n - 1] + 1,))
    if lo is INF or hi is INF:
        raise InvalidCF("theta truncation did not evaluate to a rational")
    return (min(lo, hi), max(lo, hi))


def verify_theta_dictionary(sigma: CFStream, k1: int, depth: int,
                            width: Fraction = Fraction(1, 10 ** 6)) -> bool:
    """Check theta = [0, 1, k1, 1, sigma] by comparing exact intervals.

    The image of sigma's convergent interval under z -> [0,1,k1,1,z] must
    intersect theta's own interval at every level, and both shrink below
    `width` by the requested depth.
    """
    theta = theta_from_k(k_sequence_from_sigma(sigma, k1))
    mat = cmat(0) * cmat(1) * cmat(k1) * cmat(1)
    for d in range(1, depth + 1):
        lo_t, hi_t = theta_interval(theta, d)
        a, b = sigma.interval(d)
        im = sorted([flt_apply(mat, a), flt_apply(mat, b)])
        if im[1] < lo_t or hi_t < im[0]:
            return False
    return (hi_t - lo_t) < width and (im[1] - im[0]) < width


# ---------------------------------------------------------------------------
# Connecting matrices and the telescoping collapse
# ---------------------------------------------------------------------------

def connecting_matrix(i: int, k: KSequence) -> IntMatrix2:
    """B_i = [[k_{i+1}+1, 1], [k_{i+1}, 1]].

    Levels -2 and -1 model the backward extension of the chain: the step
    out of level -2 is the swap matrix and the step out of level -1 is T.
    """
    if i == -2:
        return SWAP
    if i == -1:
        return T
    if i < -2:
        raise LevelOverflow(f"no connecting matrix at level {i}")
    return bmat(k[i + 1])


@dataclass(frozen=True)
class CollapseGroup:
    """One telescoped group: a positive k-entry and its trailing zeros."""

    levels: tuple[int, ...]      # k-indices consumed (value first, then zeros)
    c_even: int                  # the positive entry
    c_odd: int                   # zeros + 1
    b_product: IntMatrix2        # T^(c_odd - 1) * B(c_even)
    c_product: IntMatrix2        # cmat(c_odd) * cmat(c_even)


def collapse(k: KSequence, up_to: int) -> list[CollapseGroup]:
    """Telescope B_1, B_2, ... (k-entries k_2, k_3, ...) into cmat-pairs.

    Each maximal run [c, 0, ..., 0] of k-entries (c > 0 followed by z
    zeros) satisfies T^z * B(c) = cmat(z+1) * cmat(c) exactly.  Only
    complete groups within k_2..k_{up_to} are returned.
    """
    groups: list[CollapseGroup] = []
    i = 2
    while i <= up_to:
        if k[i] == 0:
            raise PathcatError(f"k_{i} = 0 cannot start a collapse group")
        c = k[i]
        levels = [i]
        j = i + 1
        while j <= up_to and k[j] == 0:
            levels.append(j)
            j += 1
        if j > up_to and (j > up_to + 1 or k.first_positive_after(j - 1) != j):
            break  # trailing zeros might continue past the window
        z = len(levels) - 1
        bprod = T.power(z) * bmat(c)
        cprod = cmat(z + 1) * cmat(c)
        if bprod != cprod:
            raise PathcatError("collapse identity failed")  # pragma: no cover
        groups.append(CollapseGroup(tuple(levels), c, z + 1, bprod, cprod))
        i = j
    return groups


def collapse_grand_product(groups: list[CollapseGroup]) -> IntMatrix2:
    """Product of the group factors, later groups on the left."""
    out = IDENTITY
    for g in groups:
        out = g.b_product * out
    return out


# ---------------------------------------------------------------------------
# The cone P_sigma and exact positivity
# ---------------------------------------------------------------------------

POSITIVITY_BUDGET = 1000


def is_positive_cone(v: tuple[int, int], sigma: CFStream,
                     budget: int = POSITIVITY_BUDGET) -> bool:
    """Decide sigma*m + n >= 0 exactly by refining convergent intervals.

    Terminates for any genuine irrational rule because sigma*m + n != 0
    whenever (m, n) != (0, 0).
    """
    m, n = v
    if m == 0:
        return n >= 0
    for depth in range(1, budget + 1):
        lo, hi = sigma.interval(depth)
        vals = (m * lo + n, m * hi + n)
        if min(vals) > 0:
            return True
        if max(vals) < 0:
            return False
    raise ResourceLimit("positivity refinement exceeded its budget")


def cone_transform_check(d0: int, s: CFStream,
                         vectors: Optional[list[tuple[int, int]]] = None) -> bool:
    """Verify cmat(d0)(P_s) = P_{s'} with s' = s shifted by one step.

    Checked exactly on a sample of lattice vectors: v in P_s iff
    cmat(d0) v in P_{s'}, because (s', 1) cmat(d0) = s' (s, 1) when
    s = d0 + 1/s'.
    """
    sp = s.shift()
    if vectors is None:
        vectors = [(1, 1), (1, -1), (-1, 1), (-1, -1), (2, -1), (-2, 3),
                   (0, 0), (0, 1), (0, -1), (3, -4), (-3, 4), (5, -7)]
    mat = cmat(d0)
    for v in vectors:
        if is_positive_cone(v, s) != is_positive_cone(mat.apply_vec(v), sp):
            return False
    return True


# ---------------------------------------------------------------------------
# Ordered Z^2 elements (the two distinguished K0 generators per level)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrderedZ2Element:
    """Integer coordinates (m, n) w.r.t. the level's generator pair.

    m multiplies the class of Z(alpha^level) \\ Z(alpha^level beta), and n
    the class of Z(beta^(level+1)).
    """

    m: int
    n: int
    level: int

    def vec(self) -> tuple[int, int]:
        return (self.m, self.n)


def k0_push(v: OrderedZ2Element, to_level: int,
            k: KSequence) -> OrderedZ2Element:
    """Push coordinates up the chain: the column picks up B_level each step."""
    if to_level < v.level:
        raise LevelOverflow(
            f"cannot push from level {v.level} down to {to_level}")
    m, n = v.m, v.n
    for lvl in range(v.level, to_level):
        m, n = connecting_matrix(lvl, k).apply_vec((m, n))
    return OrderedZ2Element(m, n, to_level)


def class_of_basic(expr) -> OrderedZ2Element:
    """K0 class of a basic cylinder expression.

    Z(nu) |-> (0, 1) at level |nu| - 1 and Z(nu) \\ Z(nu lambda) |-> (1, 0)
    at level |nu| (a single edge lambda); only the lengths matter because
    same-length cylinders carry equivalent projections.  Z(v_1) itself is
    the unit, (1, 1) at level 0.
    """
    base: Path = expr.base
    subtracted: tuple[Path, ...] = tuple(expr.subtracted)
    if not subtracted:
        if base.is_unit:
            return OrderedZ2Element(1, 1, 0)
        return OrderedZ2Element(0, 1, base.length - 1)
    if len(subtracted) == 1 and subtracted[0].length == base.length + 1:
        return OrderedZ2Element(1, 0, base.length)
    raise PathcatError(f"not a basic cylinder expression: {expr!r}")


# ---------------------------------------------------------------------------
# K0(C*(G_i)) elements and the positivity criterion
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class K0GiElement:
    """A typical K0 element over the level-i groupoid.

    coeffs maps (level, branch) to the tuple of integer coefficients of a
    compact-open partition of the level's boundary fiber (cells stored by
    coefficient only -- the classes depend only on the partition sizes).
    Missing (level, branch) pairs carry the trivial partition with
    coefficient 0.  (m, n) are the coordinates on the free Z^2 summand.
    """

    coeffs: tuple[tuple[tuple[int, int], tuple[int, ...]], ...]
    m: int
    n: int

    @staticmethod
    def make(coeffs: dict[tuple[int, int], tuple[int, ...]],
             m: int, n: int) -> "K0GiElement":
        items = tuple(sorted((key, tuple(val)) for key, val in coeffs.items()))
        return K0GiElement(items, m, n)

    def coeff_map(self) -> dict[tuple[int, int], tuple[int, ...]]:
        return dict(self.coeffs)


def k0_is_positive(a: K0GiElement, i: int, k: KSequence) -> bool:
    """a >= 0 iff c_{l,r,j} + m + n*(l - i - 1) >= 0 for all l > i, r, j.

    Constraints exist exactly at the levels with k_l >= 1 (the branch
    index r runs over 1..k_l).  There are infinitely many such levels, so
    beyond the support the criterion forces n >= 0 and then, since the
    zero-coefficient values grow with l, it is enough to check the first
    positive-k level past the support.
    """
    cmap = a.coeff_map()
    for (lvl, r) in cmap:
        if lvl <= i:
            raise PathcatError(f"support level {lvl} not above i = {i}")
        if not 1 <= r <= k[lvl]:
            raise PathcatError(f"branch {r} out of range at level {lvl}")
    if a.n < 0:
        return False
    top = max((lvl for (lvl, _r) in cmap), default=i)
    check_until = max(top, k.first_positive_after(top))
    for lvl in range(i + 1, check_until + 1):
        for r in range(1, k[lvl] + 1):
            for c in cmap.get((lvl, r), (0,)):
                if c + a.m + a.n * (lvl - i - 1) < 0:
                    return False
    return True
