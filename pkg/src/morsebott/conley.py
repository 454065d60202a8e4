"""Index pairs and homological Conley indices for reduced collections."""

from __future__ import annotations

from dataclasses import dataclass

from .complex import Complex, closure, is_subcomplex, restrict
from .homology import (
    Polynomial,
    Z,
    betti,
    chain_complex,
    euler_characteristic,
    poincare_polynomial,
    reduced_boundary,
    relative_chain_complex,
)
from .morse import DiscreteFunction, ReducedCollection, reduced_collections
from .analysis import _require_morse_bott


@dataclass(frozen=True)
class IndexPair:
    invariant: ReducedCollection
    neighborhood: frozenset[str]
    exit_set: frozenset[str]
    exit_cells: frozenset[str]


@dataclass(frozen=True)
class InvariantSetEntry:
    id: int
    conley_index: Polynomial
    chi_neighborhood: int
    chi_exit: int
    chi_reduced: int
    euler_ok: bool


@dataclass(frozen=True)
class ConleyReport:
    per_set: tuple[InvariantSetEntry, ...]
    poincare_complex: Polynomial
    conley_sum: Polynomial
    correction: Polynomial
    divisible: bool
    nonneg: bool
    agrees_with_reduced: bool

    @property
    def ok(self) -> bool:
        return (
            self.divisible
            and self.nonneg
            and self.agrees_with_reduced
            and all(entry.euler_ok for entry in self.per_set)
        )


@dataclass(frozen=True)
class EulerIndexVerdict:
    ok: bool
    chi_reduced: int
    chi_neighborhood: int
    chi_exit: int


def isolated_invariant_sets(X: Complex, f: DiscreteFunction) -> list[ReducedCollection]:
    """Nonempty reduced collections that are not noncritical pairs."""
    _require_morse_bott(X, f)
    return reduced_collections(X, f)


def index_pair(X: Complex, f: DiscreteFunction, I: ReducedCollection) -> IndexPair:
    """Isolating neighborhood (the closure of I) and exit set.

    The exit set collects the closure cells outside I whose value does not
    exceed the collection value; for a discrete Morse-Bott function this is
    all of N minus I, and both N and E are subcomplexes.  Either failing
    signals non-Morse-Bott input.
    """
    N = closure(X, I.cells)
    E = frozenset(cid for cid in N - I.cells if f(cid) <= I.value)
    if E != N - I.cells:
        raise ValueError(
            "exit set is not the whole boundary part; function is not discrete Morse-Bott"
        )
    if not is_subcomplex(X, N) or not is_subcomplex(X, E):
        raise ValueError("index pair members are not subcomplexes")
    exit_cells = frozenset(cid for cid in E if f(cid) == I.value)
    return IndexPair(I, N, E, exit_cells)


def conley_index(X: Complex, f: DiscreteFunction, I: ReducedCollection) -> Polynomial:
    """Poincare polynomial of the relative homology of the index pair."""
    pair = index_pair(X, f, I)
    inside = restrict(X, pair.neighborhood)
    return poincare_polynomial(betti(relative_chain_complex(inside, pair.exit_set, Z)))


def euler_index_check(X: Complex, f: DiscreteFunction, I: ReducedCollection) -> EulerIndexVerdict:
    """chi(reduced collection) against chi(N) - chi(E), everything over Z."""
    pair = index_pair(X, f, I)
    chi_n = euler_characteristic(betti(chain_complex(restrict(X, pair.neighborhood), Z)))
    chi_e = (
        euler_characteristic(betti(chain_complex(restrict(X, pair.exit_set), Z)))
        if pair.exit_set
        else 0
    )
    chi_red = euler_characteristic(betti(reduced_boundary(X, I, Z)))
    return EulerIndexVerdict(chi_red == chi_n - chi_e, chi_red, chi_n, chi_e)


def conley_theorem_check(X: Complex, f: DiscreteFunction) -> ConleyReport:
    """Assemble the summed Conley indices and split off (1 + t) R(t)."""
    sets = isolated_invariant_sets(X, f)
    entries = []
    total = Polynomial()
    reduced_total = Polynomial()
    for I in sets:
        index = conley_index(X, f, I)
        euler = euler_index_check(X, f, I)
        entries.append(
            InvariantSetEntry(
                I.parent,
                index,
                euler.chi_neighborhood,
                euler.chi_exit,
                euler.chi_reduced,
                euler.ok,
            )
        )
        total = total + index
        reduced_total = reduced_total + poincare_polynomial(betti(reduced_boundary(X, I, Z)))
    complex_poly = poincare_polynomial(betti(chain_complex(X, Z)))
    correction, remainder = (total - complex_poly).divide_by_one_plus_t()
    return ConleyReport(
        per_set=tuple(entries),
        poincare_complex=complex_poly,
        conley_sum=total,
        correction=correction,
        divisible=remainder == 0,
        nonneg=correction.is_nonnegative,
        agrees_with_reduced=total == reduced_total,
    )
