"""Tautological divisor classes on the moduli space of polarized Nikulin surfaces.

The engine works in a truncated graded ring over the universal surface.  Fiber
generators are the first Chern class of the universal polarization bundle, the
first Chern class of the universal half-nodal bundle, and the second Chern
class of the relative tangent sheaf; base generators are the pulled-back Hodge
class and the two indeterminate twist classes of the universal bundles.  The
grading weighs the tangent class twice and is truncated at total degree 3,
which is exactly what survives pushforward into codimension one.

Pushing a fiber monomial forward produces a kappa class: codimension-0 kappas
are the numeric fiber intersection numbers (2g-2, -4, 0 and the Euler number
24), codimension-1 kappas are formal basis symbols, and everything else is an
exact zero or an explicitly flagged truncation.  On top of the engine sit the
relative Riemann-Roch computation of the pushforward bundles (verified against
its closed form on every call), the twist-invariant combinations of the six
codimension-1 kappas, and the class of the rank-4 quadric divisor.

All coefficients are exact rationals; floats are rejected outright.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction

from .detvar import det_degree
from .errors import DerivationFailureError, OutOfRangeError, TheoremCheckError
from .lattice import decompose_profile

FIBER_DEGREE_CAP = 3

# exponent slots: (polar, nodal, tangent2, hodge, polar_twist, nodal_twist)
_GEN_NAMES = ("l", "e", "t2", "h", "a", "b")
_GEN_WEIGHTS = (1, 1, 2, 1, 1, 1)
_UNIT_EXPO = (0, 0, 0, 0, 0, 0)

KAPPA_CODIM1 = ("k300", "k210", "k120", "k030", "k101", "k011")
BASE_KEYS = ("unit",) + KAPPA_CODIM1 + ("lam", "alpha", "beta")


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("floating point is not allowed in exact computations")
    return Fraction(value)


def _degree(expo: tuple) -> int:
    return sum(e * w for e, w in zip(expo, _GEN_WEIGHTS))


class FiberPoly:
    """Exact-rational polynomial in the six generators, truncated at degree 3.

    Multiplication drops monomials above the cap and marks the result as
    truncated; the flag propagates so downstream consumers can tell an exact
    class from a capped one.
    """

    __slots__ = ("terms", "truncated")

    def __init__(self, terms: dict | None = None, truncated: bool = False):
        clean: dict[tuple, Fraction] = {}
        dropped = False
        for expo, coeff in (terms or {}).items():
            q = _as_fraction(coeff)
            if q == 0:
                continue
            if _degree(expo) > FIBER_DEGREE_CAP:
                dropped = True
                continue
            clean[expo] = q
        self.terms = clean
        self.truncated = truncated or dropped

    @classmethod
    def one(cls) -> "FiberPoly":
        return cls({_UNIT_EXPO: 1})

    @classmethod
    def generator(cls, index: int) -> "FiberPoly":
        expo = [0] * 6
        expo[index] = 1
        return cls({tuple(expo): 1})

    def coefficient(self, expo: tuple) -> Fraction:
        return self.terms.get(tuple(expo), Fraction(0))

    def graded_part(self, degree: int) -> "FiberPoly":
        return FiberPoly({e: c for e, c in self.terms.items() if _degree(e) == degree})

    def is_zero(self) -> bool:
        return not self.terms

    def _coerce(self, other) -> "FiberPoly":
        if isinstance(other, FiberPoly):
            return other
        return FiberPoly({_UNIT_EXPO: _as_fraction(other)})

    def __add__(self, other) -> "FiberPoly":
        other = self._coerce(other)
        merged = dict(self.terms)
        for expo, coeff in other.terms.items():
            merged[expo] = merged.get(expo, Fraction(0)) + coeff
        return FiberPoly(merged, self.truncated or other.truncated)

    __radd__ = __add__

    def __neg__(self) -> "FiberPoly":
        return FiberPoly({e: -c for e, c in self.terms.items()}, self.truncated)

    def __sub__(self, other) -> "FiberPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "FiberPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "FiberPoly":
        other = self._coerce(other)
        product: dict[tuple, Fraction] = {}
        dropped = False
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                expo = tuple(x + y for x, y in zip(e1, e2))
                if _degree(expo) > FIBER_DEGREE_CAP:
                    dropped = True
                    continue
                product[expo] = product.get(expo, Fraction(0)) + c1 * c2
        return FiberPoly(product, self.truncated or other.truncated or dropped)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "FiberPoly":
        exponent = operator.index(exponent)
        if exponent < 0:
            raise OutOfRangeError("negative powers are not defined in the truncated ring")
        result = FiberPoly.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiberPoly):
            other = self._coerce(other)
        return self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "FiberPoly(0)"
        bits = []
        for expo in sorted(self.terms, key=lambda e: (_degree(e), e)):
            mono = "*".join(
                name if power == 1 else f"{name}^{power}"
                for name, power in zip(_GEN_NAMES, expo)
                if power
            )
            coeff = self.terms[expo]
            bits.append(f"{coeff}" if not mono else f"{coeff}*{mono}")
        flag = ", truncated" if self.truncated else ""
        return f"FiberPoly({' + '.join(bits)}{flag})"


POLAR_C1 = FiberPoly.generator(0)
NODAL_C1 = FiberPoly.generator(1)
TANGENT_C2 = FiberPoly.generator(2)
HODGE = FiberPoly.generator(3)
POLAR_TWIST = FiberPoly.generator(4)
NODAL_TWIST = FiberPoly.generator(5)


class BaseClass:
    """Exact-rational combination of the degree-0 unit, the six codimension-1
    kappa symbols, the Hodge class and the two twist classes."""

    __slots__ = ("coeffs", "truncated")

    def __init__(self, coeffs: dict | None = None, truncated: bool = False):
        clean: dict[str, Fraction] = {}
        for key, value in (coeffs or {}).items():
            if key not in BASE_KEYS:
                raise KeyError(f"unknown base symbol {key!r}")
            q = _as_fraction(value)
            if q != 0:
                clean[key] = q
        self.coeffs = clean
        self.truncated = truncated

    def coefficient(self, key: str) -> Fraction:
        if key not in BASE_KEYS:
            raise KeyError(f"unknown base symbol {key!r}")
        return self.coeffs.get(key, Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "BaseClass") -> "BaseClass":
        merged = dict(self.coeffs)
        for key, value in other.coeffs.items():
            merged[key] = merged.get(key, Fraction(0)) + value
        return BaseClass(merged, self.truncated or other.truncated)

    def __sub__(self, other: "BaseClass") -> "BaseClass":
        return self + (-other)

    def __neg__(self) -> "BaseClass":
        return BaseClass({k: -v for k, v in self.coeffs.items()}, self.truncated)

    def __mul__(self, scalar) -> "BaseClass":
        q = _as_fraction(scalar)
        return BaseClass({k: q * v for k, v in self.coeffs.items()}, self.truncated)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, BaseClass) and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        if not self.coeffs:
            return "BaseClass(0)"
        bits = [f"{self.coeffs[k]}*{k}" for k in BASE_KEYS if k in self.coeffs]
        flag = ", truncated" if self.truncated else ""
        return f"BaseClass({' + '.join(bits)}{flag})"

    def to_json(self) -> dict:
        return {key: str(self.coefficient(key)) for key in BASE_KEYS}


def _codim0_value(a: int, b: int, c: int, g: int) -> int:
    # fiber intersection numbers of the universal bundles on a K3 fiber
    return {(2, 0, 0): 2 * g - 2, (1, 1, 0): 0, (0, 2, 0): -4, (0, 0, 1): 24}[(a, b, c)]


_BASE_SLOT = {(0, 0, 0): "unit", (1, 0, 0): "lam", (0, 1, 0): "alpha", (0, 0, 1): "beta"}


def pushforward(poly: FiberPoly, g: int) -> BaseClass:
    """Integrate a fiber polynomial over the universal surface.

    A monomial with fiber exponents (a, b, c) lands in codimension a+b+2c-2:
    negative codimension is an exact zero, codimension 0 contributes its fiber
    number times the base part, codimension 1 contributes a kappa symbol, and
    anything deeper is dropped with the truncation flag set.
    """
    decompose_profile(g)
    out: dict[str, Fraction] = {}
    dropped = False

    def add(key: str, value: Fraction):
        out[key] = out.get(key, Fraction(0)) + value

    for expo, coeff in poly.terms.items():
        a, b, c = expo[0], expo[1], expo[2]
        base = expo[3:]
        codim = a + b + 2 * c - 2
        if codim < 0:
            continue
        if codim == 0:
            slot = _BASE_SLOT.get(base)
            if slot is None:
                dropped = True  # base degree >= 2 exceeds the codimension-1 target
                continue
            add(slot, coeff * _codim0_value(a, b, c, g))
        elif codim == 1:
            if base != (0, 0, 0):
                dropped = True
                continue
            add(f"k{a}{b}{c}", coeff)
        else:
            dropped = True
    return BaseClass(out, poly.truncated or dropped)


def chern_character(x, y, n: int) -> FiberPoly:
    """Truncated exponential 1 + nc + n^2 c^2/2 + n^3 c^3/6 of c = x*l + y*e."""
    n = operator.index(n)
    if n < 1:
        raise OutOfRangeError(f"tensor power must be at least 1, got {n}")
    c = _as_fraction(x) * POLAR_C1 + _as_fraction(y) * NODAL_C1
    return (
        FiberPoly.one()
        + n * c
        + Fraction(n * n, 2) * (c * c)
        + Fraction(n**3, 6) * (c * c * c)
    )


def todd_relative() -> FiberPoly:
    """Todd class of the relative tangent sheaf; its c1 is minus the Hodge pullback."""
    return (
        FiberPoly.one()
        - Fraction(1, 2) * HODGE
        + Fraction(1, 12) * (HODGE * HODGE + TANGENT_C2)
        - Fraction(1, 24) * (HODGE * TANGENT_C2)
    )


def _require_bundle_range(n: int, m: int, g: int):
    n = operator.index(n)
    profile = decompose_profile(g)
    if n < 1:
        raise OutOfRangeError(f"tensor power must be at least 1, got {n}")
    if not 0 <= m <= profile.k:
        raise OutOfRangeError(f"m must be in 0..k={profile.k}, got {m}")
    if m == profile.k and profile.p < 2:
        raise OutOfRangeError(
            f"the pushforward bundle needs p >= 2 when m = k; got p={profile.p}"
        )
    return n, profile


def pushforward_bundle_rank(n: int, m: int, g: int) -> int:
    """Rank n^2(g_m - 1) + 2 of the pushforward of the n-th power of the twist.

    Computed by the engine (degree-2 pushforward of the Riemann-Roch product)
    and checked against the closed form on every call.
    """
    n, profile = _require_bundle_range(n, m, g)
    gm = profile.twisted_genus(m)
    product = chern_character(1, -m, n) * todd_relative()
    engine = pushforward(product.graded_part(2), g)
    expected = n * n * (gm - 1) + 2
    if engine != BaseClass({"unit": expected}):
        raise DerivationFailureError(
            f"engine rank {engine!r} differs from closed form {expected} "
            f"at n={n}, m={m}, g={g}"
        )
    return expected


def _closed_form_c1(n: int, m: int, gm: int) -> BaseClass:
    cubic = Fraction(n**3, 6)
    linear = Fraction(n, 12)
    return BaseClass(
        {
            "k300": cubic,
            "k210": -3 * m * cubic,
            "k120": 3 * m * m * cubic,
            "k030": -(m**3) * cubic,
            "k101": linear,
            "k011": -m * linear,
            "lam": -(1 + Fraction(n * n, 2) * (gm - 1)),
        }
    )


def c1_pushforward_bundle(n: int, m: int, g: int) -> BaseClass:
    """First Chern class of the pushforward of the n-th power of the m-fold twist.

    The engine pushes the degree-3 part of the Riemann-Roch product forward
    and the result is compared coefficient-wise with the closed form

        n^3/6 [k300 - 3m k210 + 3m^2 k120 - m^3 k030]
        + n/12 [k101 - m k011] - [1 + n^2/2 (g_m - 1)] lam.

    Any mismatch raises with the differing coefficients; it is never patched.
    """
    n, profile = _require_bundle_range(n, m, g)
    gm = profile.twisted_genus(m)
    pushforward_bundle_rank(n, m, g)
    product = chern_character(1, -m, n) * todd_relative()
    engine = pushforward(product.graded_part(3), g)
    closed = _closed_form_c1(n, m, gm)
    if engine != closed:
        diffs = {
            key: (str(engine.coefficient(key)), str(closed.coefficient(key)))
            for key in BASE_KEYS
            if engine.coefficient(key) != closed.coefficient(key)
        }
        raise DerivationFailureError(
            f"engine and closed form disagree at n={n}, m={m}, g={g}: {diffs}"
        )
    return engine


_KAPPA_EXPONENTS = {
    "k300": (3, 0, 0),
    "k210": (2, 1, 0),
    "k120": (1, 2, 0),
    "k030": (0, 3, 0),
    "k101": (1, 0, 1),
    "k011": (0, 1, 1),
}


def twist_kappas(alpha_weight, beta_weight, g: int) -> dict[str, BaseClass]:
    """The six codimension-1 kappas after twisting the universal bundles.

    Replaces the polarization generator by l + w_a * A and the half-nodal
    generator by e + w_b * B; terms beyond linear order in the twists die in
    the pushforward.
    """
    wa = _as_fraction(alpha_weight)
    wb = _as_fraction(beta_weight)
    polar = POLAR_C1 + wa * POLAR_TWIST
    nodal = NODAL_C1 + wb * NODAL_TWIST
    table = {}
    for name, (ea, eb, ec) in _KAPPA_EXPONENTS.items():
        table[name] = pushforward(polar**ea * nodal**eb * TANGENT_C2**ec, g)
    return table


def substitute_kappas(x: BaseClass, table: dict[str, BaseClass]) -> BaseClass:
    """Replace each kappa symbol in x by its entry in the table."""
    result = BaseClass({k: v for k, v in x.coeffs.items() if k not in _KAPPA_EXPONENTS})
    for name in _KAPPA_EXPONENTS:
        coeff = x.coefficient(name)
        if coeff:
            result = result + coeff * table[name]
    return result


def gamma_basis(g: int) -> tuple[BaseClass, BaseClass, BaseClass, BaseClass]:
    """The four twist-invariant codimension-1 combinations of kappa classes."""
    decompose_profile(g)
    quarter = Fraction(g - 1, 4)
    twelfth = Fraction(g - 1, 12)
    gamma0 = BaseClass({"k300": 1, "k101": -quarter})
    gamma1 = BaseClass({"k210": 1, "k011": -twelfth})
    gamma2 = BaseClass({"k101": 1, "k120": 6})
    gamma3 = BaseClass({"k011": 1, "k030": 2})
    return gamma0, gamma1, gamma2, gamma3


def gamma_invariance_check(g: int) -> bool:
    """True iff all four invariant combinations shed their twist terms exactly."""
    table = twist_kappas(1, 1, g)
    for combo in gamma_basis(g):
        twisted = substitute_kappas(combo, table)
        if twisted.coefficient("alpha") != 0 or twisted.coefficient("beta") != 0:
            return False
    return True


@dataclass(frozen=True)
class GammaCoefficients:
    """Coordinates of a base class in the invariant basis, plus the leftover."""

    c0: Fraction
    c1: Fraction
    c2: Fraction
    c3: Fraction
    clam: Fraction
    residual: BaseClass

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction, Fraction, Fraction]:
        return (self.c0, self.c1, self.c2, self.c3, self.clam)

    def to_json(self) -> dict:
        return {
            "c0": str(self.c0),
            "c1": str(self.c1),
            "c2": str(self.c2),
            "c3": str(self.c3),
            "lambda": str(self.clam),
            "residual": self.residual.to_json(),
        }


def gamma_basis_reduce(x: BaseClass, g: int) -> GammaCoefficients:
    """Express x in the invariant basis plus Hodge class, exactly.

    The k300, k210, k120, k030 and lam slots are each hit by exactly one basis
    element, which pins the five coefficients; whatever survives (at most the
    k101 and k011 slots for twist-free input) is returned as the residual.
    Non-membership shows up as a nonzero residual, never as an error.
    """
    gamma0, gamma1, gamma2, gamma3 = gamma_basis(g)
    c0 = x.coefficient("k300")
    c1 = x.coefficient("k210")
    c2 = x.coefficient("k120") / 6
    c3 = x.coefficient("k030") / 2
    clam = x.coefficient("lam")
    recombined = (
        c0 * gamma0 + c1 * gamma1 + c2 * gamma2 + c3 * gamma3 + clam * BaseClass({"lam": 1})
    )
    return GammaCoefficients(c0, c1, c2, c3, clam, x - recombined)


@dataclass(frozen=True)
class ModuliDivisorClass:
    """The rank-4 quadric divisor class: invariant-basis coordinates and scale.

    The scale (a determinantal degree) multiplies the coefficient tuple rather
    than being folded in, so both the normalized tuple and the scaled class
    stay inspectable.
    """

    gamma: GammaCoefficients
    scale: int
    kappa_class: BaseClass
    twisted_genus: int

    def scaled_coefficients(self) -> tuple[Fraction, ...]:
        return tuple(self.scale * c for c in self.gamma.as_tuple())

    def to_json(self) -> dict:
        return {
            "twisted_genus": self.twisted_genus,
            "scale": self.scale,
            "gamma": self.gamma.to_json(),
            "scaled_gamma": [str(c) for c in self.scaled_coefficients()],
            "kappa": self.kappa_class.to_json(),
        }


def divisor_class(g: int, m: int) -> ModuliDivisorClass:
    """Class of the divisor of surfaces whose m-twisted model lies on a rank-4 quadric.

    Combines the first Chern classes of the squared and plain pushforward
    bundles, reduces to the invariant basis, and checks the result against the
    expected tuple

        (2/(g_m+1), -6m/(g_m+1), m^2/(g_m+1), -m^3/(g_m+1)) and 2g_m - 1

    with zero residual.  The scale is the degree of the corank g_m - 3 locus
    of symmetric (g_m+1) x (g_m+1) matrices.
    """
    profile = decompose_profile(g)
    admissible = 0 <= m <= profile.k - 1 or (m == profile.k and profile.p >= 3)
    if not admissible:
        raise OutOfRangeError(
            f"the divisor needs m <= k-1, or m = k with p >= 3; "
            f"got m={m} with k={profile.k}, p={profile.p}"
        )
    gm = profile.twisted_genus(m)
    if gm < 3:
        raise OutOfRangeError(
            f"the determinantal scale needs twisted genus >= 3, got g_m={gm}"
        )
    rank1 = pushforward_bundle_rank(1, m, g)
    rank2 = pushforward_bundle_rank(2, m, g)
    combo = c1_pushforward_bundle(2, m, g) - Fraction(2 * rank2, rank1) * c1_pushforward_bundle(
        1, m, g
    )
    reduced = gamma_basis_reduce(combo, g)
    expected = (
        Fraction(2, gm + 1),
        Fraction(-6 * m, gm + 1),
        Fraction(m * m, gm + 1),
        Fraction(-(m**3), gm + 1),
        Fraction(2 * gm - 1),
    )
    if not reduced.residual.is_zero() or reduced.as_tuple() != expected:
        raise TheoremCheckError(
            f"reduction at g={g}, m={m} gave {reduced.as_tuple()} with residual "
            f"{reduced.residual!r}; expected {expected} with zero residual"
        )
    scale = det_degree(gm - 3, gm + 1)
    return ModuliDivisorClass(reduced, scale, combo, gm)
