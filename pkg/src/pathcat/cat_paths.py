"""Word engine for the amalgamated category of paths Lambda(k).

Morphisms are stored in block normal form: an alternating sequence of
L1 blocks (a commuting alpha^m beta^n segment, recorded by its degree
(m, n)) and L2 blocks (a single gamma edge, recorded by level and
branch).  Two consecutive L2 blocks are legal; two consecutive L1
blocks are not (they would merge).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .errors import (
    NotACycleCandidate,
    NotAPrefix,
    PathcatError,
    SourceRangeMismatch,
)


# ---------------------------------------------------------------------------
# k-sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KSequence:
    """Total function i -> k_i (i >= 1) given by a prefix and an eventual period.

    The period must contain a positive entry so that k_i > 0 for
    infinitely many i.
    """

    prefix: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.period:
            raise PathcatError("KSequence needs a nonempty eventual period")
        if any(v < 0 for v in self.prefix + self.period):
            raise PathcatError("k_i must be nonnegative")
        if max(self.period) == 0:
            raise PathcatError("k_i must be positive infinitely often")

    def __getitem__(self, i: int) -> int:
        if i < 1:
            raise PathcatError(f"k_i defined for i >= 1, got {i}")
        if i <= len(self.prefix):
            return self.prefix[i - 1]
        return self.period[(i - len(self.prefix) - 1) % len(self.period)]

    def first_positive_after(self, i: int) -> int:
        """Smallest j > i with k_j > 0."""
        j = i + 1
        while self[j] == 0:
            j += 1
        return j

    def head(self, count: int) -> tuple[int, ...]:
        return tuple(self[i] for i in range(1, count + 1))


def constant_k(value: int) -> KSequence:
    return KSequence((), (value,))


# ---------------------------------------------------------------------------
# Vertices and blocks
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Vertex:
    index: int

    def __post_init__(self) -> None:
        if self.index < 1:
            raise PathcatError("vertex index must be >= 1")


@dataclass(frozen=True)
class L1:
    """Degree block alpha^m beta^n (up to commutation)."""

    m: int
    n: int

    def __post_init__(self) -> None:
        if self.m < 0 or self.n < 0 or self.m + self.n < 1:
            raise PathcatError(f"bad L1 block ({self.m},{self.n})")

    @property
    def length(self) -> int:
        return self.m + self.n


@dataclass(frozen=True)
class L2:
    """A single gamma edge gamma_level^(branch)."""

    level: int
    branch: int

    def __post_init__(self) -> None:
        if self.level < 1 or self.branch < 1:
            raise PathcatError(f"bad L2 block ({self.level},{self.branch})")

    @property
    def length(self) -> int:
        return 1


Block = L1 | L2


# ---------------------------------------------------------------------------
# Paths
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Path:
    """A morphism of Lambda(k) in block normal form."""

    range: Vertex
    blocks: tuple[Block, ...] = ()

    def __post_init__(self) -> None:
        pos = self.range.index
        prev_l1 = False
        for b in self.blocks:
            if isinstance(b, L1):
                if prev_l1:
                    raise PathcatError("two consecutive L1 blocks")
                prev_l1 = True
            else:
                if b.level != pos:
                    raise PathcatError(
                        f"L2 level {b.level} inconsistent with position {pos}")
                prev_l1 = False
            pos += b.length

    @property
    def length(self) -> int:
        return sum(b.length for b in self.blocks)

    @property
    def source(self) -> Vertex:
        return Vertex(self.range.index + self.length)

    @property
    def is_unit(self) -> bool:
        return not self.blocks

    def check_branches(self, k: KSequence) -> None:
        """Validate every gamma branch against k (1 <= branch <= k_level)."""
        for b in self.blocks:
            if isinstance(b, L2) and b.branch > k[b.level]:
                raise PathcatError(
                    f"branch {b.branch} exceeds k_{b.level} = {k[b.level]}")

    def degree_tail(self) -> tuple[int, int]:
        """Degree of the trailing Lambda_1 factor ((0,0) if it ends with L2)."""
        if self.blocks and isinstance(self.blocks[-1], L1):
            return (self.blocks[-1].m, self.blocks[-1].n)
        return (0, 0)

    def __repr__(self) -> str:
        parts = []
        for b in self.blocks:
            if isinstance(b, L1):
                parts.append(f"a^{b.m}b^{b.n}")
            else:
                parts.append(f"g{b.level}({b.branch})")
        body = ".".join(parts) if parts else "id"
        return f"<v{self.range.index}:{body}>"


def unit(v: Vertex | int) -> Path:
    if isinstance(v, int):
        v = Vertex(v)
    return Path(v)


def _push_block(blocks: list[Block], b: Block) -> None:
    """Append a block, merging adjacent L1 blocks."""
    if blocks and isinstance(blocks[-1], L1) and isinstance(b, L1):
        last = blocks.pop()
        blocks.append(L1(last.m + b.m, last.n + b.n))
    else:
        blocks.append(b)


def make_path(range_index: int, blocks: list[Block] | tuple[Block, ...]) -> Path:
    """Build a Path, normalizing adjacent L1 blocks."""
    merged: list[Block] = []
    for b in blocks:
        _push_block(merged, b)
    return Path(Vertex(range_index), tuple(merged))


def from_edges(range_index: int, edges: list) -> Path:
    """Build a path edge by edge.

    Edge spellings: "a" (alpha), "b" (beta), ("g", branch) (gamma at the
    current level).  Normalization to block form happens on the fly.
    """
    blocks: list[Block] = []
    pos = range_index
    for e in edges:
        if e == "a":
            _push_block(blocks, L1(1, 0))
        elif e == "b":
            _push_block(blocks, L1(0, 1))
        elif isinstance(e, tuple) and e[0] == "g":
            _push_block(blocks, L2(pos, e[1]))
        else:
            raise PathcatError(f"unknown edge spelling {e!r}")
        pos += 1
    return Path(Vertex(range_index), tuple(blocks))


def alpha_beta(range_index: int, m: int, n: int) -> Path:
    """The path v_range alpha^m beta^n (unit when m=n=0)."""
    if m == 0 and n == 0:
        return unit(range_index)
    return Path(Vertex(range_index), (L1(m, n),))


def gamma(level: int, branch: int = 1) -> Path:
    return Path(Vertex(level), (L2(level, branch),))


# ---------------------------------------------------------------------------
# Composition and factorization
# ---------------------------------------------------------------------------

def compose(mu: Path, nu: Path) -> Path:
    """Normal form of mu.nu (nu extends mu; source(mu) must equal range(nu))."""
    if mu.source != nu.range:
        raise SourceRangeMismatch(
            f"source {mu.source} != range {nu.range}")
    blocks = list(mu.blocks)
    for b in nu.blocks:
        _push_block(blocks, b)
    return Path(mu.range, tuple(blocks))


def compose_all(*paths: Path) -> Path:
    out = paths[0]
    for p in paths[1:]:
        out = compose(out, p)
    return out


def is_prefix(mu: Path, lam: Path) -> bool:
    """True iff lam is in mu.Lambda (mu is an initial factor of lam)."""
    if mu.range != lam.range:
        raise SourceRangeMismatch("prefix test needs equal ranges")
    mb, lb = mu.blocks, lam.blocks
    if not mb:
        return True
    if len(mb) > len(lb):
        return False
    for i in range(len(mb) - 1):
        if mb[i] != lb[i]:
            return False
    last, other = mb[-1], lb[len(mb) - 1]
    if isinstance(last, L1):
        return isinstance(other, L1) and last.m <= other.m and last.n <= other.n
    return last == other


def factor_out(lam: Path, mu: Path) -> Path:
    """The unique remainder nu with lam = compose(mu, nu)."""
    if not is_prefix(mu, lam):
        raise NotAPrefix(f"{mu!r} is not a prefix of {lam!r}")
    if mu.is_unit:
        return lam
    idx = len(mu.blocks)
    rest: list[Block] = []
    last, other = mu.blocks[-1], lam.blocks[idx - 1]
    if isinstance(last, L1):
        dm, dn = other.m - last.m, other.n - last.n  # type: ignore[union-attr]
        if dm or dn:
            rest.append(L1(dm, dn))
    rest.extend(lam.blocks[idx:])
    return make_path(mu.source.index, rest)


def mce(mu: Path, nu: Path) -> Optional[Path]:
    """Minimal common extension of mu and nu, or None when they are disjoint.

    Normal forms must agree on all factors before the shorter factor
    count; a genuine join only happens between trailing L1 blocks with
    incomparable degrees (component-wise max).
    """
    if mu.range != nu.range:
        raise SourceRangeMismatch("mce needs equal ranges")
    a, b = mu.blocks, nu.blocks
    d = 0
    while d < len(a) and d < len(b) and a[d] == b[d]:
        d += 1
    if d == len(a):
        return nu  # every block of mu equals the corresponding block of nu
    if d == len(b):
        return mu
    # First difference strictly inside both: a common extension requires it
    # to be at the last block of at least one path.
    if d == len(a) - 1 and d == len(b) - 1:
        x, y = a[d], b[d]
        if isinstance(x, L1) and isinstance(y, L1):
            join = L1(max(x.m, y.m), max(x.n, y.n))
            return make_path(mu.range.index, list(a[:d]) + [join])
        return None
    if d == len(a) - 1:
        return nu if is_prefix(mu, nu) else None
    if d == len(b) - 1:
        return mu if is_prefix(nu, mu) else None
    return None


def meets(mu: Path, nu: Path) -> bool:
    return mce(mu, nu) is not None


def entrance_witness(mu: Path, nu: Path, k: KSequence) -> Path:
    """eta in s(mu).Lambda with mu.eta disjoint from nu.

    Construction: pad mu to the first level i >= s(mu) with k_i != 0 and
    end with gamma_i^(1).  The padding direction (all beta or all alpha)
    is chosen so that nu cannot catch up with mu's trailing degree before
    the gamma edge pins the factorization.
    """
    if mu.range != nu.range or mu.source != nu.source or mu == nu:
        raise NotACycleCandidate("need r(mu)=r(nu), s(mu)=s(nu), mu != nu")
    src = mu.source.index
    i = k.first_positive_after(src - 1)
    pad = i - src
    fillers = [(L1(0, pad),), (L1(pad, 0),)] if pad else [()]
    for filler in fillers:
        eta = Path(Vertex(src), tuple(filler) + (L2(i, 1),))
        if mce(compose(mu, eta), nu) is None:
            return eta
    raise NotACycleCandidate(
        f"no witness for ({mu!r}, {nu!r})")  # pragma: no cover


# ---------------------------------------------------------------------------
# Enumeration helpers (oracles and orbit moves)
# ---------------------------------------------------------------------------

def enumerate_words(k: KSequence, length: int, from_level: int = 1) -> list[Path]:
    """All paths of exactly the given length with range v_from_level."""
    out: list[Path] = []

    def rec(blocks: list[Block], pos: int, remaining: int, need_l2: bool) -> None:
        if remaining == 0:
            out.append(Path(Vertex(from_level), tuple(blocks)))
            return
        for j in range(1, k[pos] + 1):
            blocks.append(L2(pos, j))
            rec(blocks, pos + 1, remaining - 1, False)
            blocks.pop()
        if not need_l2:
            for total in range(1, remaining + 1):
                for m in range(total + 1):
                    blocks.append(L1(m, total - m))
                    rec(blocks, pos + total, remaining - total, True)
                    blocks.pop()

    rec([], from_level, length, False)
    return out


def enumerate_words_upto(k: KSequence, max_length: int,
                         from_level: int = 1) -> list[Path]:
    """All paths of length <= max_length with range v_from_level."""
    out: list[Path] = []
    for ln in range(max_length + 1):
        out.extend(enumerate_words(k, ln, from_level))
    return out


def phi_set(i: int, k: KSequence) -> list[Path]:
    """Phi_i: the unit v_1 plus all words of length <= i whose last edge is
    a gamma edge."""
    out = [unit(1)]
    for w in enumerate_words_upto(k, i):
        if w.blocks and isinstance(w.blocks[-1], L2):
            out.append(w)
    return out


def prefixes_of_length(lam: Path, length: int) -> list[Path]:
    """All paths p of the given length with is_prefix(p, lam)."""
    out: list[Path] = []

    def rec(idx: int, remaining: int, acc: list[Block]) -> None:
        if remaining == 0:
            out.append(make_path(lam.range.index, list(acc)))
            return
        if idx >= len(lam.blocks):
            return
        b = lam.blocks[idx]
        if isinstance(b, L2):
            acc.append(b)
            rec(idx + 1, remaining - 1, acc)
            acc.pop()
            return
        # partial cut of an L1 block is only allowed at the end of the prefix
        for dm in range(min(b.m, remaining) + 1):
            for dn in range(min(b.n, remaining - dm) + 1):
                if dm + dn == 0:
                    continue
                if dm + dn == remaining:
                    acc.append(L1(dm, dn))
                    out.append(make_path(lam.range.index, list(acc)))
                    acc.pop()
                elif dm == b.m and dn == b.n:
                    acc.append(b)
                    rec(idx + 1, remaining - b.length, acc)
                    acc.pop()

    rec(0, length, [])
    # distinct cut orders can produce the same normal form
    seen: dict[tuple, Path] = {}
    for p in out:
        seen.setdefault((p.range, p.blocks), p)
    return list(seen.values())
