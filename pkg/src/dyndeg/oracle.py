"""Independent reference values for the degree machinery.

Three deliberately separate routes live here:

* eigen_degrees: the spectral route.  The characteristic polynomial of the
  exponent matrix is computed exactly over the integers (Faddeev-LeVerrier,
  every division asserted exact), then all roots are found simultaneously
  at high working precision.  The degree-p reference value is the product
  of the p largest root moduli.  Nothing is shared with the compound-matrix
  engine beyond the input matrix.

* ring_expand_oracle: a brute-force expander for products of classes.  It
  multiplies term lists outright with truncation and no intermediate
  collection or caching, providing an independent check of mul /
  kaehler_power / pair on small spaces.

* compound_vs_minors: checks compound(A, p)^n against the minors of A^n
  computed directly (multiplicativity of compounds), exact integers.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import mpmath as mp
import sympy

from .cohomology import CohClass, Space, unit_class
from .intmat import IntMatrix, det, freeze, identity, mat_mul, mat_pow, trace
from .monomial import NonDominantError, compound


class RootFindingError(RuntimeError):
    """The simultaneous root iteration did not converge."""


class OracleSizeError(ValueError):
    """The brute-force expansion would exceed its size cap."""


def charpoly(matrix) -> tuple[int, ...]:
    """Exact monic characteristic polynomial coefficients of a square matrix.

    Returns (1, c_1, ..., c_k) with det(tI - A) = t^k + c_1 t^{k-1} + ... + c_k.
    Uses the Faddeev-LeVerrier recursion; the division by the step index is
    exact over the integers and is asserted.
    """
    mat = freeze(matrix)
    k = len(mat)
    if len(mat[0]) != k:
        raise ValueError("characteristic polynomial needs a square matrix")
    coeffs = [1]
    aux = identity(k)
    for step in range(1, k + 1):
        if step > 1:
            aux = tuple(
                tuple(
                    prod[i][j] + (coeffs[-1] if i == j else 0)
                    for j in range(k)
                )
                for i in range(k)
            )
        prod = mat_mul(mat, aux)
        tr = trace(prod)
        if tr % step != 0:
            raise AssertionError("Faddeev-LeVerrier division was not exact")
        coeffs.append(-(tr // step))
    return tuple(coeffs)


_ORACLE_DPS = 60
_ROOT_TOL = 1e-10


@dataclass(frozen=True)
class EigenDegrees:
    """Spectral reference data: sorted root moduli and their running products.

    degrees[p] is the product of the p largest moduli (degrees[0] = 1.0).
    The last entry agrees with |det| up to root-finder error, and the whole
    profile is log-concave by construction (moduli sorted descending).
    """

    moduli: tuple[float, ...]
    degrees: tuple[float, ...]

    @property
    def dim(self) -> int:
        return len(self.moduli)

    def degree(self, p: int) -> float:
        return self.degrees[p]


def _root_moduli(poly: Sequence[int]) -> list[float]:
    """All complex root moduli of an integer polynomial, with multiplicity.

    Multiple roots break simultaneous iteration, so the polynomial is first
    split into squarefree factors exactly over the integers; each factor
    then has distinct roots and the iteration converges.
    """
    x = sympy.Symbol("x")
    _, factors = sympy.Poly(list(poly), x, domain=sympy.ZZ).sqf_list()
    moduli: list[float] = []
    with mp.workdps(_ORACLE_DPS):
        for factor, multiplicity in factors:
            coeffs = [int(c) for c in factor.all_coeffs()]
            if len(coeffs) < 2:
                continue
            try:
                roots = mp.polyroots(coeffs, maxsteps=600, extraprec=200)
            except mp.mp.NoConvergence as exc:
                raise RootFindingError(
                    "simultaneous root iteration did not converge"
                ) from exc
            for r in roots:
                moduli.extend([float(abs(r))] * multiplicity)
    return moduli


def eigen_degrees(matrix) -> EigenDegrees:
    mat = freeze(matrix)
    if det(mat) == 0:
        raise NonDominantError("matrix is singular (det = 0)")
    poly = charpoly(mat)
    moduli = sorted(_root_moduli(poly), reverse=True)
    degrees = [1.0]
    for m in moduli:
        degrees.append(degrees[-1] * m)
    result = EigenDegrees(tuple(moduli), tuple(degrees))
    residual = abs(result.degrees[-1] - abs(det(mat))) / abs(det(mat))
    if residual > _ROOT_TOL:
        raise RootFindingError(
            f"root moduli product misses |det| by relative {residual:.3e}"
        )
    return result


TermList = Sequence[tuple[Sequence[int], int]]


def _as_term_list(factor) -> tuple[tuple[tuple[int, ...], int], ...]:
    if isinstance(factor, CohClass):
        return factor.terms
    return tuple((tuple(int(x) for x in e), int(c)) for e, c in factor)


def ring_expand_oracle(
    space: Space,
    factors: Iterable[CohClass | TermList],
    term_cap: int = 2_000_000,
) -> CohClass:
    """Expand a product of classes term by term, with truncation only.

    Every cross term of the full product is formed explicitly (no pairwise
    collection, no caching); monomials exceeding a factor bound are dropped.
    Intended as an independent check of the ring operations on small spaces
    (total dimension <= 8); raises OracleSizeError beyond its caps.
    """
    if space.dim > 8:
        raise OracleSizeError("brute-force oracle is limited to dim <= 8")
    term_lists = [_as_term_list(f) for f in factors]
    if not term_lists:
        return unit_class(space)
    count = math.prod(len(t) for t in term_lists)
    if count > term_cap:
        raise OracleSizeError(f"expansion of {count} terms exceeds cap {term_cap}")
    degrees = []
    for terms in term_lists:
        degs = {sum(e) for e, _ in terms}
        if len(degs) > 1:
            raise ValueError("oracle factors must be pure-degree classes")
        degrees.append(degs.pop() if degs else 0)
    total_degree = sum(degrees)
    bounds = space.factors
    acc: dict[tuple[int, ...], int] = {}
    for combo in itertools.product(*term_lists):
        exponent = [0] * space.num_factors
        coefficient = 1
        for e, c in combo:
            for i, x in enumerate(e):
                exponent[i] += x
            coefficient *= c
        if any(exponent[i] > bounds[i] for i in range(len(bounds))):
            continue
        key = tuple(exponent)
        acc[key] = acc.get(key, 0) + coefficient
    return CohClass.make(space, total_degree, acc)


def pair_oracle(c1: CohClass, c2: CohClass) -> int:
    """Independent pairing: top-monomial coefficient of the brute-force product."""
    if c1.space != c2.space:
        raise ValueError("pairing oracle needs classes on the same space")
    space = c1.space
    if c1.degree + c2.degree != space.dim:
        raise ValueError("pairing oracle needs complementary degrees")
    expanded = ring_expand_oracle(space, [c1, c2])
    return expanded.coeff(space.top)


def compound_vs_minors(matrix, p: int, n: int) -> bool:
    """Exact check that compound(A, p)^n equals the p-minors of A^n."""
    mat = freeze(matrix)
    direct = compound(mat_pow(mat, n), p).matrix
    op = compound(mat, p)
    powered = identity(len(op.subsets))
    for _ in range(n):
        powered = mat_mul(op.matrix, powered)
    return direct == powered
