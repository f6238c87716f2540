"""Exact arithmetic in the rank-9 Picard lattice of a polarized Nikulin surface.

The lattice is Z*L (+) N, where L is the genus-g polarization (L^2 = 2g-2) and
N is the rank-8 even negative definite lattice spanned by eight disjoint nodal
classes R_1..R_8 together with their half sum e = (R_1+...+R_8)/2.  A divisor
class a*L + sum_i b_i*R_i is stored with doubled nodal coefficients t_i = 2*b_i,
so every operation stays in plain (arbitrary-precision) integers; membership in
the lattice is equivalent to all t_i sharing one parity.

The genus enters only through the pairing, so the same coefficient vector can
be reused across genus sweeps: operations that need g take it explicitly.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass

from .errors import InvalidGenusError, OutOfRangeError, ParityError

NODAL_COUNT = 8
RANK = 9


@dataclass(frozen=True)
class GenusProfile:
    """The decomposition g = 2k^2 + p with k >= 1 and 0 <= p < 4k+2."""

    g: int
    k: int
    p: int

    def twisted_genus(self, m: int) -> int:
        """Sectional genus g - 2m^2 of the m-fold twist of the polarization."""
        return self.g - 2 * m * m


def decompose_profile(g: int) -> GenusProfile:
    """Split a genus g >= 2 into the unique (k, p) with g = 2k^2 + p, 0 <= p < 4k+2."""
    g = operator.index(g)
    if g < 2:
        raise InvalidGenusError(f"genus must be at least 2, got {g}")
    k = math.isqrt(g // 2)
    p = g - 2 * k * k
    # uniqueness: 2k^2 <= g < 2(k+1)^2 is exactly 0 <= p < 4k+2
    assert k >= 1 and 0 <= p < 4 * k + 2
    return GenusProfile(g, k, p)


@dataclass(frozen=True)
class DivisorClass:
    """A lattice class a*L + sum_i (t_i/2)*R_i with all t_i of one parity."""

    a: int
    t: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", operator.index(self.a))
        t = tuple(operator.index(x) for x in self.t)
        if len(t) != NODAL_COUNT:
            raise ParityError(f"expected {NODAL_COUNT} doubled nodal coefficients, got {len(t)}")
        if len({x % 2 for x in t}) > 1:
            raise ParityError(f"mixed parities in doubled nodal coefficients {t}")
        object.__setattr__(self, "t", t)

    # -- distinguished classes ------------------------------------------------

    @classmethod
    def zero(cls) -> "DivisorClass":
        return cls(0, (0,) * NODAL_COUNT)

    @classmethod
    def polarization(cls) -> "DivisorClass":
        """The class L."""
        return cls(1, (0,) * NODAL_COUNT)

    @classmethod
    def half_nodal(cls) -> "DivisorClass":
        """The class e with 2e = R_1 + ... + R_8."""
        return cls(0, (1,) * NODAL_COUNT)

    @classmethod
    def nodal(cls, i: int) -> "DivisorClass":
        """The i-th nodal class R_i, i in 1..8."""
        if not 1 <= i <= NODAL_COUNT:
            raise OutOfRangeError(f"nodal index must be in 1..{NODAL_COUNT}, got {i}")
        t = [0] * NODAL_COUNT
        t[i - 1] = 2
        return cls(0, tuple(t))

    @classmethod
    def twisted_polarization(cls, m: int) -> "DivisorClass":
        """The m-fold twist L - m*e."""
        return cls(1, (-m,) * NODAL_COUNT)

    # -- module structure -----------------------------------------------------

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.a + other.a, tuple(x + y for x, y in zip(self.t, other.t)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.a - other.a, tuple(x - y for x, y in zip(self.t, other.t)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.a, tuple(-x for x in self.t))

    def __mul__(self, n: int) -> "DivisorClass":
        n = operator.index(n)
        return DivisorClass(n * self.a, tuple(n * x for x in self.t))

    __rmul__ = __mul__

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        return {"a": self.a, "t": list(self.t)}

    @classmethod
    def from_json(cls, data: dict) -> "DivisorClass":
        return cls(data["a"], tuple(data["t"]))


def _check_genus(g: int) -> int:
    g = operator.index(g)
    if g < 2:
        raise InvalidGenusError(f"genus must be at least 2, got {g}")
    return g


def gram_matrix(g: int) -> list[list[int]]:
    """Gram matrix of the pairing in the ordered integral basis (L, e, R_1..R_7).

    L^2 = 2g-2, e^2 = -4, R_i^2 = -2, L.e = L.R_i = R_i.R_j = 0 (i != j) and
    e.R_i = -1; R_8 = 2e - R_1 - ... - R_7 is the derived eighth nodal class.
    """
    g = _check_genus(g)
    mat = [[0] * RANK for _ in range(RANK)]
    mat[0][0] = 2 * g - 2
    mat[1][1] = -4
    for i in range(2, RANK):
        mat[i][i] = -2
        mat[1][i] = mat[i][1] = -1
    return mat


def basis_coordinates(divisor: DivisorClass) -> tuple[int, ...]:
    """Integer coordinates of a class in the basis (L, e, R_1..R_7)."""
    t = divisor.t
    last = t[-1]
    # (t_i - t_8)/2 is integral exactly because all t_i share one parity
    return (divisor.a, last) + tuple((x - last) // 2 for x in t[:-1])


def intersect(d1: DivisorClass, d2: DivisorClass, g: int) -> int:
    """Symmetric bilinear pairing of two classes at genus g."""
    g = _check_genus(g)
    cross = sum(x * y for x, y in zip(d1.t, d2.t))
    q, r = divmod(cross, 2)
    assert r == 0, "parity invariant guarantees an even cross term"
    return d1.a * d2.a * (2 * g - 2) - q


def sectional_genus(divisor: DivisorClass, g: int) -> int:
    """Arithmetic genus 1 + D^2/2 of a curve class with D^2 >= -2."""
    square = intersect(divisor, divisor, g)
    if square < -2:
        raise OutOfRangeError(f"self-intersection {square} is below -2")
    assert square % 2 == 0, "the lattice is even"
    return 1 + square // 2


def riemann_roch_chi(divisor: DivisorClass, g: int) -> int:
    """Euler characteristic 2 + D^2/2 of a line bundle on a K3 surface."""
    square = intersect(divisor, divisor, g)
    assert square % 2 == 0, "the lattice is even"
    return 2 + square // 2


def is_two_divisible(divisor: DivisorClass) -> bool:
    """True iff the class is 2*D' for some lattice class D'.

    Requires a even and all t_i congruent mod 4 (all 0 or all 2), so that the
    halved coefficients again share one parity.
    """
    if divisor.a % 2:
        return False
    residues = {x % 4 for x in divisor.t}
    return residues == {0} or residues == {2}


def _bareiss_determinant(rows: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; exact for integer matrices."""
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = 1
    for j in range(n - 1):
        if m[j][j] == 0:
            for i in range(j + 1, n):
                if m[i][j] != 0:
                    m[j], m[i] = m[i], m[j]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(j + 1, n):
            for k in range(j + 1, n):
                m[i][k] = (m[i][k] * m[j][j] - m[i][j] * m[j][k]) // prev
            m[i][j] = 0
        prev = m[j][j]
    return sign * m[n - 1][n - 1]


def nikulin_block_determinant(g: int) -> int:
    """|det| of the 8x8 Gram block on (e, R_1..R_7); independent of g."""
    mat = gram_matrix(g)
    block = [row[1:] for row in mat[1:]]
    return abs(_bareiss_determinant(block))
