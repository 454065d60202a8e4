"""Morse-Bott inequality assembly: defect polynomials, the correction term
R(t), kernel-sum comparisons, and Euler summaries."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complex import Complex
from .homology import (
    Polynomial,
    Z,
    _assemble,
    betti,
    chain_complex,
    poincare_polynomial,
    reduced_boundary,
)
from .morse import (
    DiscreteFunction,
    MorseBottVerdict,
    ReducedCollection,
    check_morse_bott,
    reduced_collections,
)


@dataclass(frozen=True)
class CollectionEntry:
    id: int
    value: Fraction
    cell_counts: tuple[int, ...]
    poincare: Polynomial
    defect: Polynomial


@dataclass(frozen=True)
class InequalityReport:
    per_collection: tuple[CollectionEntry, ...]
    poincare_complex: Polynomial
    poincare_sum: Polynomial
    correction: Polynomial
    divisible: bool
    nonneg: bool
    euler_identity: bool

    @property
    def ok(self) -> bool:
        return self.divisible and self.nonneg and self.euler_identity


def _cell_counts(R: ReducedCollection) -> tuple[int, ...]:
    top = max((R.complex.dim(c) for c in R.cells), default=-1)
    counts = [0] * (top + 1)
    for cid in R.cells:
        counts[R.complex.dim(cid)] += 1
    return tuple(counts)


def collection_defect(X: Complex, R: ReducedCollection) -> Polynomial:
    """The defect r(t) with counts(t) = P_t + (1 + t) r(t).

    Computed twice, by exact polynomial division and by the per-degree
    kernel formula; a remainder, a negative coefficient, or disagreement
    between the two routes raises, as it signals broken input.
    """
    if not R.cells:
        raise ValueError("empty reduced collection")
    counts = _cell_counts(R)
    cc = reduced_boundary(X, R, Z)
    summary = betti(cc)
    quotient, remainder = (Polynomial(counts) - poincare_polynomial(summary)).divide_by_one_plus_t()
    if remainder != 0:
        raise ValueError("defect division left a remainder")
    if not quotient.is_nonnegative:
        raise ValueError("defect has a negative coefficient")
    direct = Polynomial(
        counts[k] - summary.kernel_dims[k] for k in range(1, len(counts))
    )
    if direct != quotient:
        raise ValueError("defect computed by division and by kernels disagree")
    return quotient


def _require_morse_bott(X: Complex, f: DiscreteFunction) -> MorseBottVerdict:
    verdict = check_morse_bott(X, f)
    if not verdict.ok:
        first = verdict.violations[0]
        raise ValueError(
            f"function is not discrete Morse-Bott "
            f"({len(verdict.violations)} violations, first: {first.rule} at {first.cell!r})"
        )
    return verdict


def morse_bott_inequalities(X: Complex, f: DiscreteFunction) -> InequalityReport:
    """Sum the reduced-collection polynomials and split off (1 + t) R(t).

    Only nonempty reduced collections that are not noncritical pairs enter
    the sum.  Divisibility failure or a negative coefficient is reported in
    the verdict flags, never raised.
    """
    _require_morse_bott(X, f)
    entries = []
    total = Polynomial()
    for R in reduced_collections(X, f):
        poly = poincare_polynomial(betti(reduced_boundary(X, R, Z)))
        entries.append(
            CollectionEntry(R.parent, R.value, _cell_counts(R), poly, collection_defect(X, R))
        )
        total = total + poly
    complex_poly = poincare_polynomial(betti(chain_complex(X, Z)))
    correction, remainder = (total - complex_poly).divide_by_one_plus_t()
    return InequalityReport(
        per_collection=tuple(entries),
        poincare_complex=complex_poly,
        poincare_sum=total,
        correction=correction,
        divisible=remainder == 0,
        nonneg=correction.is_nonnegative,
        euler_identity=total.evaluate(-1) == complex_poly.evaluate(-1),
    )


def kernel_inequality_check(X: Complex, f: DiscreteFunction) -> dict[int, bool]:
    """Per degree k >= 1, compare the summed kernel dimensions of the
    reduced-collection boundary operators against the kernel of the boundary
    restricted to the union of those collections.

    The restricted operator is block-triangular when the collections are
    ordered by value, with the per-collection operators on the diagonal, so
    every entry should come out True for a discrete Morse-Bott function.
    """
    _require_morse_bott(X, f)
    sets = reduced_collections(X, f)
    union: frozenset[str] = frozenset().union(*(R.cells for R in sets)) if sets else frozenset()
    restricted = _assemble(X, union, Z)
    summed: dict[int, int] = {}
    for R in sets:
        summary = betti(reduced_boundary(X, R, Z))
        for k, dim in enumerate(summary.kernel_dims):
            summed[k] = summed.get(k, 0) + dim
    restricted_summary = betti(restricted) if union else None
    out = {}
    for k in range(1, max(X.top_dim, 0) + 1):
        lhs = summed.get(k, 0)
        rhs = (
            restricted_summary.kernel_dims[k]
            if restricted_summary is not None and k <= restricted.top
            else 0
        )
        out[k] = lhs >= rhs
    return out


def euler_summary(report: InequalityReport) -> tuple[int, int, bool]:
    """(Euler number of the complex, summed reduced-collection Euler numbers,
    whether they agree)."""
    chi_complex = report.poincare_complex.evaluate(-1)
    chi_sum = report.poincare_sum.evaluate(-1)
    return chi_complex, chi_sum, chi_complex == chi_sum
