"""Explicit finite categories of paths: element lists, composition
tables, validation, and a generalized-cycle / entrance detector.

Ships the nine-element two-square example (two vertices-in-a-row graph
with commuting relations a1 b2 = b1 a2 and a1 a2 = b1 b2) whose pair
(a1, b1) is a generalized cycle without an entrance.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .errors import PathcatError
from .cat_paths import KSequence, compose, enumerate_words, mce


@dataclass
class FiniteCategory:
    """units and elements are ids (units included in elements); compose
    maps composable pairs (f, g) -> fg, f after g.  Partiality (absent
    pairs) is only legal for truncated exports."""

    units: list[str]
    elements: list[str]
    range_map: dict[str, str]
    source_map: dict[str, str]
    compose: dict[tuple[str, str], str]
    truncated: bool = False

    def composable(self, f: str, g: str) -> bool:
        return self.source_map[f] == self.range_map[g]


@dataclass
class ValidationReport:
    ok: bool
    violations: list[str]


def validate(c: FiniteCategory) -> ValidationReport:
    """Exhaustive small-category axioms + cancellativity + no inverses."""
    bad: list[str] = []
    for u in c.units:
        if c.range_map[u] != u or c.source_map[u] != u:
            bad.append(f"unit {u} is not its own range/source")
    for (f, g), fg in c.compose.items():
        if not c.composable(f, g):
            bad.append(f"table entry ({f},{g}) is not composable")
        elif c.range_map[fg] != c.range_map[f] or \
                c.source_map[fg] != c.source_map[g]:
            bad.append(f"({f},{g})->{fg} breaks range/source")
    for f, g in itertools.product(c.elements, c.elements):
        if c.composable(f, g) and (f, g) not in c.compose:
            if not c.truncated:
                bad.append(f"composable pair ({f},{g}) missing from table")
    for f in c.elements:
        if c.compose.get((f, c.source_map[f])) not in (f, None):
            bad.append(f"right identity fails at {f}")
        if c.compose.get((c.range_map[f], f)) not in (f, None):
            bad.append(f"left identity fails at {f}")
    for f, g, h in itertools.product(c.elements, repeat=3):
        fg = c.compose.get((f, g))
        gh = c.compose.get((g, h))
        if fg is not None and gh is not None:
            lhs = c.compose.get((fg, h))
            rhs = c.compose.get((f, gh))
            if lhs is not None and rhs is not None and lhs != rhs:
                bad.append(f"associativity fails at ({f},{g},{h})")
    for f in c.elements:
        for g, h in itertools.product(c.elements, c.elements):
            if c.compose.get((f, g)) is not None and \
                    c.compose.get((f, g)) == c.compose.get((f, h)) and g != h:
                bad.append(f"left cancellation fails: {f}({g})={f}({h})")
            if c.compose.get((g, f)) is not None and \
                    c.compose.get((g, f)) == c.compose.get((h, f)) and g != h:
                bad.append(f"right cancellation fails: ({g}){f}=({h}){f}")
    for f in c.elements:
        if f in c.units:
            continue
        for g in c.elements:
            if c.compose.get((f, g)) in c.units and \
                    c.compose.get((g, f)) in c.units:
                bad.append(f"nonunit {f} has inverse {g}")
    return ValidationReport(not bad, bad)


def extensions(c: FiniteCategory, mu: str) -> set[str]:
    """mu.Lambda within the table (mu itself included, via the unit)."""
    return {c.compose[(mu, g)] for g in c.elements
            if (mu, g) in c.compose}


def common_extensions(c: FiniteCategory, mu: str, nu: str) -> set[str]:
    return extensions(c, mu) & extensions(c, nu)


def is_generalized_cycle(c: FiniteCategory, mu: str, nu: str) -> bool:
    """mu != nu, same source and range, and every extension of mu has a
    common extension with nu (checked over the finite table)."""
    if mu == nu or c.source_map[mu] != c.source_map[nu] or \
            c.range_map[mu] != c.range_map[nu]:
        return False
    return all(common_extensions(c, nu, eta) for eta in extensions(c, mu))


@dataclass(frozen=True)
class CycleReport:
    mu: str
    nu: str
    has_entrance: bool
    truncated: bool


def generalized_cycles(c: FiniteCategory) -> list[CycleReport]:
    """All generalized cycles in the table; the entrance verdict is the
    symmetric check.  On truncated exports the verdicts are only as good
    as the table (flagged via .truncated)."""
    out = []
    for mu, nu in itertools.permutations(c.elements, 2):
        if is_generalized_cycle(c, mu, nu):
            out.append(CycleReport(
                mu, nu, not is_generalized_cycle(c, nu, mu), c.truncated))
    return out


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def _close_units(c: FiniteCategory) -> FiniteCategory:
    """Fill in the forced unit compositions."""
    for f in c.elements:
        c.compose.setdefault((f, c.source_map[f]), f)
        c.compose.setdefault((c.range_map[f], f), f)
    return c


def example2() -> FiniteCategory:
    """The nine-element category: edges a1, b1: w2 -> w1 and a2, b2:
    w3 -> w2 with a1 b2 = b1 a2 and a1 a2 = b1 b2."""
    units = ["v1", "v2", "v3"]
    elements = units + ["a1", "a2", "b1", "b2", "a1a2", "a1b2"]
    rng = {"a1": "v1", "b1": "v1", "a2": "v2", "b2": "v2",
           "a1a2": "v1", "a1b2": "v1"}
    src = {"a1": "v2", "b1": "v2", "a2": "v3", "b2": "v3",
           "a1a2": "v3", "a1b2": "v3"}
    for u in units:
        rng[u] = src[u] = u
    comp = {("a1", "a2"): "a1a2", ("a1", "b2"): "a1b2",
            ("b1", "a2"): "a1b2", ("b1", "b2"): "a1a2"}
    return _close_units(FiniteCategory(units, elements, rng, src, comp))


def trivial_category() -> FiniteCategory:
    return _close_units(FiniteCategory(["v"], ["v"], {"v": "v"},
                                       {"v": "v"}, {}))


def with_inverse() -> FiniteCategory:
    """A two-element groupoid-like table: g is its own inverse (the
    validator must flag it)."""
    units = ["v"]
    elements = ["v", "g"]
    c = FiniteCategory(units, elements, {"v": "v", "g": "v"},
                       {"v": "v", "g": "v"}, {("g", "g"): "v"})
    return _close_units(c)


def lambda_truncation(k: KSequence, max_length: int,
                      max_vertex: int) -> FiniteCategory:
    """Words of length <= max_length between the first max_vertex
    vertices of the big category, compositions kept when the product
    stays inside the window.  Verdicts on this table are truncated."""
    paths = []
    for m in range(1, max_vertex + 1):
        for length in range(max_length + 1):
            for w in enumerate_words(k, length, from_level=m):
                if w.source.index <= max_vertex:
                    paths.append(w)
    ids = {p: repr(p) for p in paths}
    units = [ids[p] for p in paths if p.is_unit]
    rng = {ids[p]: repr(next(q for q in paths
                             if q.is_unit and q.range == p.range))
           for p in paths}
    src = {ids[p]: repr(next(q for q in paths
                             if q.is_unit and q.range == p.source))
           for p in paths}
    comp = {}
    lookup = {repr(p): p for p in paths}
    for p, q in itertools.product(paths, paths):
        if p.source != q.range:
            continue
        pq = compose(p, q)
        if pq.length <= max_length:
            comp[(ids[p], ids[q])] = repr(pq)
    c = FiniteCategory(units, [ids[p] for p in paths], rng, src, comp,
                       truncated=True)
    c.path_lookup = lookup  # type: ignore[attr-defined]
    return c


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def category_json(c: FiniteCategory) -> str:
    return json.dumps({
        "units": c.units,
        "elements": [{"id": e, "range": c.range_map[e],
                      "source": c.source_map[e]} for e in c.elements],
        "compose": [[f, g, fg] for (f, g), fg in sorted(c.compose.items())],
    }, indent=2) + "\n"


def category_from_json(text: str) -> FiniteCategory:
    data = json.loads(text)
    rng = {e["id"]: e["range"] for e in data["elements"]}
    src = {e["id"]: e["source"] for e in data["elements"]}
    comp = {(f, g): fg for f, g, fg in data["compose"]}
    return FiniteCategory(list(data["units"]),
                          [e["id"] for e in data["elements"]],
                          rng, src, comp)
