"""Exact chain-complex machinery over Z and Z/2.

Boundary matrices are plain tuples of integer rows.  Integer homology goes
through a hand-rolled Smith normal form (exact big-integer arithmetic,
minimal-absolute-value pivoting, so results are deterministic); the Z/2 path
is an independent Gaussian-elimination rank used as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .complex import Complex, closure, is_subcomplex, restrict

Z = "Z"
Z2 = "Z2"

Matrix = tuple[tuple[int, ...], ...]


class Polynomial:
    """An integer polynomial in t, coefficients stored lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "Polynomial":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(
            (self[k] + other[k] for k in range(n)),
        )

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial((self[k] - other[k] for k in range(n)))

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)})"

    def evaluate(self, x: int) -> int:
        value = 0
        for c in reversed(self.coeffs):
            value = value * x + c
        return value

    @property
    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def divide_by_one_plus_t(self) -> tuple["Polynomial", int]:
        """Quotient and (constant) remainder of division by 1 + t."""
        quotient = [0] * max(len(self.coeffs) - 1, 0)
        carry = 0
        for k in range(len(self.coeffs) - 1, 0, -1):
            quotient[k - 1] = self[k] - carry
            carry = quotient[k - 1]
        remainder = self[0] - carry
        return Polynomial(quotient), remainder

    def pretty(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                text = str(abs(c))
            else:
                base = "t" if k == 1 else f"t^{k}"
                text = base if abs(c) == 1 else f"{abs(c)}{base}"
            parts.append((c < 0, text))
        neg, text = parts[0]
        rendered = ("-" if neg else "") + text
        for neg, text in parts[1:]:
            rendered += (" - " if neg else " + ") + text
        return rendered


@dataclass(frozen=True)
class SNFResult:
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix."""

    factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.factors)


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SNFResult:
    """Invariant factors by elementary row/column operations.

    The pivot at each step is the entry of least absolute value (ties broken
    by position), which keeps intermediate growth small and the procedure
    deterministic.
    """
    A = [list(map(int, row)) for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    if any(len(row) != n for row in A):
        raise ValueError("ragged matrix")
    factors: list[int] = []
    t = 0
    while t < min(m, n):
        pivot = _min_abs_position(A, t, m, n)
        if pivot is None:
            break
        pi, pj = pivot
        A[t], A[pi] = A[pi], A[t]
        if pj != t:
            for row in A:
                row[t], row[pj] = row[pj], row[t]
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
        while True:
            restart = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    if q:
                        A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:  # 0 < remainder < pivot: promote it
                        A[t], A[i] = A[i], A[t]
                        restart = True
            if restart:
                continue
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    if q:
                        for row in A:
                            row[j] -= q * row[t]
                    if A[t][j]:
                        for row in A:
                            row[t], row[j] = row[j], row[t]
                        restart = True
            if restart:
                continue
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % A[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[offender])]
        factors.append(A[t][t])
        t += 1
    return SNFResult(tuple(factors))


def _min_abs_position(A, t, m, n):
    best = None
    best_abs = None
    for i in range(t, m):
        for j in range(t, n):
            v = A[i][j]
            if v and (best_abs is None or abs(v) < best_abs):
                best, best_abs = (i, j), abs(v)
    return best


def rank_mod2(matrix: Sequence[Sequence[int]]) -> int:
    """Rank over the two-element field, rows packed as bit masks."""
    rows = []
    for row in matrix:
        bits = 0
        for j, v in enumerate(row):
            if v % 2:
                bits |= 1 << j
        if bits:
            rows.append(bits)
    rank = 0
    pivots: list[int] = []
    for bits in rows:
        for p in pivots:
            if bits & (p & -p):
                bits ^= p
        if bits:
            pivots.append(bits)
            rank += 1
    return rank


@dataclass(frozen=True)
class ChainComplex:
    """Graded bases of cell ids with boundary matrices D_k: degree k -> k-1.

    ``matrices[k]`` has one row per cell of ``bases[k-1]`` and one column per
    cell of ``bases[k]``; ``matrices[0]`` has no rows.
    """

    ring: str
    bases: tuple[tuple[str, ...], ...]
    matrices: tuple[Matrix, ...]

    @property
    def top(self) -> int:
        return len(self.bases) - 1

    def n_cells(self, k: int) -> int:
        return len(self.bases[k]) if 0 <= k <= self.top else 0

    def boundary(self, k: int) -> Matrix:
        return self.matrices[k]


@dataclass(frozen=True)
class HomologySummary:
    ring: str
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    kernel_dims: tuple[int, ...]


def _assemble(X: Complex, cells: Iterable[str], ring: str) -> ChainComplex:
    """Bases and boundary matrices of the boundary restricted to ``cells``.

    Entries exist only between cells of the set; no chain-property check is
    performed here.
    """
    if ring not in (Z, Z2):
        raise ValueError(f"unknown coefficient ring {ring!r}")
    cells = frozenset(cells)
    top = max((X.dim(c) for c in cells), default=-1)
    bases = tuple(
        tuple(sorted(c for c in cells if X.dim(c) == k)) for k in range(top + 1)
    )
    index = [{cid: i for i, cid in enumerate(base)} for base in bases]
    grids: list[list[list[int]]] = [
        [[0] * len(bases[k]) for _ in range(len(bases[k - 1]))] if k else []
        for k in range(top + 1)
    ]
    for rec in X.faces:
        if rec.parent in cells and rec.child in cells:
            k = X.dim(rec.parent)
            grids[k][index[k - 1][rec.child]][index[k][rec.parent]] += rec.incidence
    if ring == Z2:
        grids = [[[v % 2 for v in row] for row in grid] for grid in grids]
    matrices = tuple(tuple(tuple(row) for row in grid) for grid in grids)
    return ChainComplex(ring, bases, matrices)


def _check_composition(cc: ChainComplex, what: str) -> None:
    for k in range(2, cc.top + 1):
        rows_high = cc.matrices[k]
        rows_low = cc.matrices[k - 1]
        for j in range(cc.n_cells(k)):
            for i in range(cc.n_cells(k - 2)):
                total = sum(
                    rows_low[i][mid] * rows_high[mid][j]
                    for mid in range(cc.n_cells(k - 1))
                )
                if cc.ring == Z2:
                    total %= 2
                if total:
                    raise ValueError(
                        f"{what}: boundary does not square to zero between "
                        f"{cc.bases[k][j]!r} and {cc.bases[k - 2][i]!r}"
                    )


def chain_complex(X: Complex, ring: str = Z) -> ChainComplex:
    """The full boundary operator of the complex over Z or Z/2."""
    cc = _assemble(X, X.cells, ring)
    _check_composition(cc, "chain complex")
    return cc


def relative_chain_complex(X: Complex, A: Iterable[str], ring: str = Z) -> ChainComplex:
    """Quotient complex on the cells outside the subcomplex ``A``."""
    A = frozenset(A)
    if not is_subcomplex(X, A):
        raise ValueError("relative part is not a subcomplex")
    cc = _assemble(X, frozenset(X.cells) - A, ring)
    _check_composition(cc, "relative chain complex")
    return cc


def reduced_boundary(X: Complex, R, ring: str = Z) -> ChainComplex:
    """Boundary operator restricted to the cells of a reduced collection."""
    cells = frozenset(getattr(R, "cells", R))
    cc = _assemble(X, cells, ring)
    _check_composition(cc, "reduced boundary")
    return cc


def _ranks(cc: ChainComplex) -> tuple[list[int], list[SNFResult | None]]:
    ranks = []
    snfs: list[SNFResult | None] = []
    for k in range(cc.top + 1):
        if cc.ring == Z2:
            ranks.append(rank_mod2(cc.matrices[k]))
            snfs.append(None)
        else:
            snf = smith_normal_form(cc.matrices[k])
            ranks.append(snf.rank)
            snfs.append(snf)
    return ranks, snfs


def betti(cc: ChainComplex) -> HomologySummary:
    """Free ranks, torsion factors, and kernel dimensions per degree.

    Over Z the "dimension" of a homology group means its free rank; torsion
    is reported separately as the invariant factors greater than one.
    """
    ranks, snfs = _ranks(cc)
    ranks.append(0)  # no boundary from above the top degree
    betti_numbers = []
    kernel_dims = []
    torsion = []
    for k in range(cc.top + 1):
        ker = cc.n_cells(k) - ranks[k]
        kernel_dims.append(ker)
        betti_numbers.append(ker - ranks[k + 1])
        if cc.ring == Z and k + 1 <= cc.top:
            assert snfs[k + 1] is not None
            torsion.append(tuple(d for d in snfs[k + 1].factors if d > 1))
        else:
            torsion.append(())
    return HomologySummary(
        cc.ring, tuple(betti_numbers), tuple(torsion), tuple(kernel_dims)
    )


def poincare_polynomial(summary: HomologySummary) -> Polynomial:
    return Polynomial(summary.betti)


def euler_characteristic(summary: HomologySummary) -> int:
    return poincare_polynomial(summary).evaluate(-1)


def equivalence_check(X: Complex, R) -> bool:
    """Compare the restricted-boundary homology of a reduced collection with
    the relative homology of (closure, closure minus collection)."""
    cells = frozenset(getattr(R, "cells", R))
    direct = betti(reduced_boundary(X, cells, Z))
    closed = closure(X, cells)
    rel = betti(relative_chain_complex(restrict(X, closed), closed - cells, Z))
    if Polynomial(direct.betti) != Polynomial(rel.betti):
        return False
    width = max(len(direct.torsion), len(rel.torsion))
    pad = lambda t: tuple(t) + ((),) * (width - len(t))
    return pad(direct.torsion) == pad(rel.torsion)
