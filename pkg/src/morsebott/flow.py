"""Discrete vector fields, Forman's axioms, and closed orbit detection.

An orbit alternates arrow steps (facet to cofacet) with descents to a
different facet and never revisits a cell, so enumeration reduces to
elementary cycles of the digraph on cells whose up-edges are the arrows and
whose down-edges are the facet descents.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import networkx as nx

from .complex import Complex
from .morse import Collection, DiscreteFunction, _require_total, collection_of

Arrow = tuple[str, str]


@dataclass(frozen=True)
class ArrowSet:
    arrows: frozenset[Arrow]

    def sources(self) -> list[str]:
        return sorted({a for a, _ in self.arrows})

    def targets(self) -> list[str]:
        return sorted({b for _, b in self.arrows})

    def __len__(self) -> int:
        return len(self.arrows)


@dataclass(frozen=True)
class Orbit:
    """Closed alternating path, stored as sigma0, tau0, sigma1, ..., tau_m."""

    cells: tuple[str, ...]
    collections: tuple[int, ...] = ()

    def arrows(self) -> tuple[Arrow, ...]:
        return tuple(
            (self.cells[i], self.cells[i + 1]) for i in range(0, len(self.cells), 2)
        )

    def pretty(self) -> str:
        steps = []
        for i, cid in enumerate(self.cells):
            steps.append(cid)
            steps.append(" -> " if i % 2 == 0 else " > ")
        return "".join(steps) + self.cells[0]


class OrbitList(list):
    """A list of orbits that remembers whether enumeration was cut short."""

    def __init__(self, orbits: Iterable[Orbit] = (), truncated: bool = False):
        super().__init__(orbits)
        self.truncated = truncated


@dataclass(frozen=True)
class FlowViolation:
    rule: str
    cell: str
    detail: str


@dataclass(frozen=True)
class FlowVerdict:
    ok: bool
    violations: tuple[FlowViolation, ...]


def vector_field(X: Complex, f: DiscreteFunction) -> ArrowSet:
    """Arrows sigma -> tau over the regular facet pairs with f(sigma) >= f(tau)."""
    _require_total(X, f)
    arrows = {
        (rec.child, rec.parent)
        for rec in X.faces
        if rec.regular and f(rec.child) >= f(rec.parent)
    }
    return ArrowSet(frozenset(arrows))


def is_combinatorial(V: ArrowSet, X: Complex) -> FlowVerdict:
    """Check Forman's axioms: each cell heads at most one arrow, tails at
    most one arrow, and never both; arrows must sit on regular facets."""
    violations: list[FlowViolation] = []
    out_count: dict[str, list[str]] = {}
    in_count: dict[str, list[str]] = {}
    regular_pairs = {(rec.child, rec.parent) for rec in X.faces if rec.regular}
    for arrow in sorted(V.arrows):
        src, dst = arrow
        out_count.setdefault(src, []).append(dst)
        in_count.setdefault(dst, []).append(src)
        if arrow not in regular_pairs:
            violations.append(
                FlowViolation(
                    "not-a-regular-facet",
                    src,
                    f"{src!r} is not a regular facet of {dst!r}",
                )
            )
    for cid, dsts in sorted(out_count.items()):
        if len(dsts) > 1:
            violations.append(
                FlowViolation("multiple-outgoing", cid, f"{cid!r} -> {sorted(dsts)}")
            )
    for cid, srcs in sorted(in_count.items()):
        if len(srcs) > 1:
            violations.append(
                FlowViolation("multiple-incoming", cid, f"{sorted(srcs)} -> {cid!r}")
            )
    for cid in sorted(set(out_count) & set(in_count)):
        violations.append(
            FlowViolation("source-and-target", cid, f"{cid!r} both heads and tails an arrow")
        )
    return FlowVerdict(not violations, tuple(violations))


def _cell_digraph(V: ArrowSet, X: Complex) -> nx.DiGraph:
    # Up-edges are the arrows, down-edges every facet descent; since arrows
    # raise dimension and descents lower it, the direction identifies the kind.
    graph = nx.DiGraph()
    graph.add_edges_from(V.arrows)
    graph.add_edges_from((rec.parent, rec.child) for rec in X.faces)
    return graph


def _as_orbit(cycle: Sequence[str], X: Complex) -> tuple[str, ...] | None:
    """Canonical cell tuple when the elementary cycle is a closed orbit.

    Orbits alternate an arrow step with a descent, so the cells must bounce
    between two adjacent dimensions; the two-cell bounce sigma -> tau > sigma
    is not an orbit.  Rotations start at a bottom-dimension cell and the
    lexicographically least one is the canonical form.
    """
    if len(cycle) < 4 or len(cycle) % 2:
        return None
    dims = [X.dim(cid) for cid in cycle]
    low = min(dims)
    offset = 0 if dims[0] == low else 1
    for i, dim in enumerate(dims):
        if dim != low + (i - offset) % 2:
            return None
    starts = range(offset, len(cycle), 2)
    return min(tuple(cycle[s:]) + tuple(cycle[:s]) for s in starts)


def closed_orbits(V: ArrowSet, X: Complex, max_orbits: int | None = None) -> OrbitList:
    """All elementary closed orbits, deduplicated up to rotation.

    ``max_orbits`` caps the enumeration; the returned list's ``truncated``
    flag records whether the cap was hit.
    """
    graph = _cell_digraph(V, X)
    orbits: list[Orbit] = []
    truncated = False
    for cycle in nx.simple_cycles(graph):
        cells = _as_orbit(cycle, X)
        if cells is None:
            continue
        if max_orbits is not None and len(orbits) >= max_orbits:
            truncated = True
            break
        orbits.append(Orbit(cells))
    orbits.sort(key=lambda o: (len(o.cells), o.cells))
    return OrbitList(orbits, truncated)


def cross_collection_orbits(
    V: ArrowSet,
    X: Complex,
    collections_: Sequence[Collection],
    max_orbits: int | None = None,
) -> OrbitList:
    """Flow-consistent closed orbits visiting at least two collections.

    A descent that ends on a strictly dearer cell runs against the flow (the
    exit direction of a cell is its lower-or-equal boundary), so orbits
    containing such a step are not trajectories and are skipped.  For the
    vector field of a discrete Morse-Bott function every step of a remaining
    orbit is value non-increasing and any collection change drops the value
    strictly, hence this list is empty.
    """
    lookup = collection_of(collections_)
    annotated = []
    found = closed_orbits(V, X, max_orbits)
    for orbit in found:
        cells = orbit.cells
        ids = tuple(lookup[cid].id for cid in cells)
        if len(set(ids)) < 2:
            continue
        descends = all(
            lookup[cells[(i + 1) % len(cells)]].value <= lookup[cells[i]].value
            for i in range(1, len(cells), 2)
        )
        if descends:
            annotated.append(Orbit(cells, ids))
    return OrbitList(annotated, found.truncated)


def to_dot(V: ArrowSet, X: Complex) -> str:
    """The arrow digraph in DOT format, one node per cell."""
    lines = ["digraph vector_field {"]
    for cid in X.ids():
        lines.append(f'  "{cid}" [label="{cid} ({X.dim(cid)})"];')
    for src, dst in sorted(V.arrows):
        lines.append(f'  "{src}" -> "{dst}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
