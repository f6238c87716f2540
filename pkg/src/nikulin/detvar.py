"""Degrees of symmetric determinantal loci and quadric-space dimension counts."""

from __future__ import annotations

import operator
from dataclasses import dataclass
from math import comb

from .errors import FormulaViolationError, OutOfRangeError


def det_degree(r: int, e: int) -> int:
    """Degree of the locus of symmetric e x e matrices of corank >= r.

    Ratio of two binomial products, prod_i C(e+i, r-i) / prod_i C(2i+1, i)
    for i = 0..r-1; the quotient is asserted to be integral rather than
    rounded.  r = 0 is the empty product (degree 1).
    """
    r = operator.index(r)
    e = operator.index(e)
    if not 0 <= r <= e:
        raise OutOfRangeError(f"corank must satisfy 0 <= r <= e, got r={r}, e={e}")
    numerator = 1
    denominator = 1
    for i in range(r):
        numerator *= comb(e + i, r - i)
        denominator *= comb(2 * i + 1, i)
    quotient, remainder = divmod(numerator, denominator)
    if remainder:
        raise FormulaViolationError(
            f"binomial quotient for corank {r}, size {e} is not integral: "
            f"{numerator}/{denominator}"
        )
    return quotient


@dataclass(frozen=True)
class QuadricSpaceDims:
    sym2_dim: int
    ideal_dim: int
    codim_ideal: int


def quadric_space_dims(gm: int) -> QuadricSpaceDims:
    """Dimension count for the space of quadrics through a genus-gm curve model."""
    gm = operator.index(gm)
    if gm < 2:
        raise OutOfRangeError(f"twisted genus must be at least 2, got {gm}")
    sym2 = comb(gm + 2, 2)
    codim = 4 * gm - 2
    return QuadricSpaceDims(sym2, sym2 - codim, codim)


def rank_locus_codim(gm: int, k: int) -> int:
    """Codimension C(gm+2-k, 2) of the rank <= k locus in the space of quadrics.

    k = gm+2 is allowed (codimension 0: already the full space at k = gm+1).
    """
    gm = operator.index(gm)
    k = operator.index(k)
    if not 1 <= k <= gm + 2:
        raise OutOfRangeError(f"rank bound must satisfy 1 <= k <= gm+2, got k={k}, gm={gm}")
    return comb(gm + 2 - k, 2)


def expected_rank_ideal_dim(gm: int, k: int) -> int:
    """Expected dimension (k-4)*gm + (4+3k-k^2)/2 of the rank <= k part of the ideal.

    Cross-checked against the count assembled from quadric_space_dims and
    rank_locus_codim; any disagreement is raised, never absorbed.
    """
    dims = quadric_space_dims(gm)
    numerator = 4 + 3 * k - k * k
    if numerator % 2:
        raise FormulaViolationError(f"(4+3k-k^2) is odd for k={k}; expected even")
    closed = (k - 4) * gm + numerator // 2
    assembled = dims.sym2_dim - dims.codim_ideal - rank_locus_codim(gm, k)
    if closed != assembled:
        raise FormulaViolationError(
            f"closed form {closed} differs from assembled count {assembled} "
            f"at gm={gm}, k={k}"
        )
    return closed
