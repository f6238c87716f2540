"""Positivity of the twisted polarizations L - m*e on a Nikulin surface.

Two complementary routes are implemented.  Analytic checks evaluate the exact
rational inequalities behind ampleness and very-ampleness (a Cauchy-Schwarz
bound and a hyperelliptic-obstruction threshold, each computed in two
independent forms that must agree).  Bounded exhaustive searches enumerate
lattice classes on a finite coefficient window and look for numerical
obstructions or decompositions.

Search verdicts are necessary-condition level: effectivity of a class is not
decidable from lattice data alone, so witnesses satisfy the numerical
constraints of an obstruction, while an empty result rules obstructions out
within the window only.  Searches scan in a canonical order (ascending in the
polarization coefficient, then ascending lexicographic in the negated nodal
tuple) so results are reproducible and schedule-independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalInconsistencyError, InvalidBoundsError, OutOfRangeError
from .lattice import (
    NODAL_COUNT,
    DivisorClass,
    basis_coordinates,
    decompose_profile,
    intersect,
    is_two_divisible,
    riemann_roch_chi,
)

AMPLE = "ample"
VERY_AMPLE = "very-ample"
OBSTRUCTED = "obstructed"
OUT_OF_RANGE = "out-of-range"

FIXED_CURVE = "rational-fixed-curve"
BASEPOINT_FREE = "basepoint-free-pencil-or-more"


@dataclass(frozen=True)
class SearchBounds:
    """Window for exhaustive enumeration: a in [.., a_max], |t_i| <= t_max."""

    a_max: int
    t_max: int

    def __post_init__(self):
        if self.a_max < 1 or self.t_max < 1:
            raise InvalidBoundsError(
                f"bounds must be strictly positive, got a_max={self.a_max}, t_max={self.t_max}"
            )


DEFAULT_BOUNDS = SearchBounds(a_max=2, t_max=10)


@dataclass(frozen=True)
class PositivityVerdict:
    status: str
    witness: DivisorClass | None
    rationale: str

    def __post_init__(self):
        if (self.status == OBSTRUCTED) != (self.witness is not None):
            raise InternalInconsistencyError("witness must be present exactly when obstructed")

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "witness": self.witness.to_json() if self.witness else None,
            "rationale": self.rationale,
        }


@dataclass(frozen=True)
class CliffordData:
    genus: int
    max_clifford: int


@dataclass(frozen=True)
class LkSystem:
    """Moving/fixed analysis of the k-fold twist: h0 and the dichotomy kind."""

    h0: int
    kind: str
    fixed_part: DivisorClass | None


@dataclass(frozen=True)
class EmbeddingData:
    ambient_dim: int
    curve_genus: int
    curve_degree: int


def _scan_key(divisor: DivisorClass) -> tuple:
    return (divisor.a, tuple(-x for x in divisor.t))


def _check_bounds(bounds) -> SearchBounds:
    if not isinstance(bounds, SearchBounds):
        raise InvalidBoundsError("bounds must be a SearchBounds instance")
    return bounds


def ampleness_analytic_check(g: int, m: int) -> bool:
    """Exact form of the Cauchy-Schwarz ampleness bound: (g-1)(g_m-1)/m^2 > 2.

    This is the weakest (a=1) case of the quadratic estimate; for m = k it
    specializes to 2(g-1)(p-1)/(g-p) > 2.
    """
    profile = decompose_profile(g)
    if m == 0:
        raise OutOfRangeError("the ampleness bound divides by m^2; m must be positive")
    if not 1 <= m <= profile.k:
        raise OutOfRangeError(f"m must be in 1..k={profile.k}, got {m}")
    gm = profile.twisted_genus(m)
    return Fraction((g - 1) * (gm - 1), m * m) > 2


def _threshold_forms(g: int, big_t: int) -> tuple[bool, bool]:
    """The hyperelliptic-obstruction threshold in its two exact forms.

    Form one compares T against (2g^2-8g+7)/(2g-2); form two is the square-free
    rearrangement of f(T) < 1: g-T-2 > 0 and (g-1+T)/(2g-2) < (g-T-2)^2.
    """
    direct = Fraction(big_t) < Fraction(2 * g * g - 8 * g + 7, 2 * g - 2)
    x = g - big_t - 2
    square_free = x > 0 and Fraction(g - 1 + big_t, 2 * g - 2) < x * x
    return direct, square_free


def very_ampleness_threshold(g: int, big_t: int) -> bool:
    """True iff the threshold holds; raises if the two forms ever disagree."""
    direct, square_free = _threshold_forms(g, big_t)
    if direct != square_free:
        raise InternalInconsistencyError(
            f"threshold forms disagree at g={g}, T={big_t}: "
            f"direct={direct}, square-free={square_free}"
        )
    return direct


def very_ample_check(g: int, m: int) -> PositivityVerdict:
    """Classify the m-fold twist as very-ample / ample / obstructed.

    Very-ampleness requires the exact threshold T=2m^2 < (2g^2-8g+7)/(2g-2)
    (ruling out hyperelliptic degenerations) together with non-2-divisibility
    of the class (ruling out a double genus-2 curve).  When the ampleness
    bound itself fails (m=k with p <= 1), the verdict is obstructed and the
    witness is the degenerate twist L_k.
    """
    profile = decompose_profile(g)
    if not 1 <= m <= profile.k:
        return PositivityVerdict(OUT_OF_RANGE, None, "m-out-of-range")
    if not ampleness_analytic_check(g, m):
        witness = DivisorClass.twisted_polarization(m)
        square = intersect(witness, witness, g)
        rationale = FIXED_CURVE if square == -2 else "elliptic-pencil"
        return PositivityVerdict(OBSTRUCTED, witness, rationale)
    if not very_ampleness_threshold(g, 2 * m * m):
        return PositivityVerdict(AMPLE, None, "hyperelliptic-threshold")
    if is_two_divisible(DivisorClass.twisted_polarization(m)):
        return PositivityVerdict(AMPLE, None, "two-divisible")
    return PositivityVerdict(VERY_AMPLE, None, "threshold-ok")


def lk_system_analysis(g: int) -> LkSystem:
    """Moving/fixed decomposition of the k-fold twist: h0 = p+1, fixed iff p = 0."""
    profile = decompose_profile(g)
    lk = DivisorClass.twisted_polarization(profile.k)
    h0 = riemann_roch_chi(lk, g)
    assert h0 == profile.p + 1
    if profile.p == 0:
        return LkSystem(h0, FIXED_CURVE, lk)
    return LkSystem(h0, BASEPOINT_FREE, None)


def _nonneg_tuples(square_target: int, min_sum: int, cap: int, parity: int):
    """Tuples u in [0,cap]^8, all u_i = parity mod 2, sum u_i^2 = square_target,
    sum u_i >= min_sum, in ascending lexicographic order."""
    caps = cap * cap

    def rec(prefix: list, s_rem: int, need: int):
        slot = len(prefix)
        if slot == NODAL_COUNT:
            if s_rem == 0 and need <= 0:
                yield tuple(prefix)
            return
        rem = NODAL_COUNT - slot - 1
        for u in range(parity, cap + 1, 2):
            uu = u * u
            if uu > s_rem:
                break
            s_next = s_rem - uu
            if s_next > rem * caps:
                continue
            need_next = need - u
            if need_next > 0:
                # Cauchy-Schwarz: rem slots with square budget s_next reach at
                # most sqrt(rem * s_next) in linear sum
                if need_next > rem * cap or need_next * need_next > rem * s_next:
                    continue
            prefix.append(u)
            yield from rec(prefix, s_next, need_next)
            prefix.pop()

    yield from rec([], square_target, min_sum)


def _signed_tuples(square_target: int, exact_sum: int | None, cap: int, parity: int):
    """Tuples t in [-cap,cap]^8, all t_i = parity mod 2, sum t_i^2 = square_target,
    and (when given) sum t_i = exact_sum, in descending lexicographic order."""
    caps = cap * cap
    start = cap if cap % 2 == parity % 2 else cap - 1

    def rec(prefix: list, s_rem: int, t_rem: int | None):
        slot = len(prefix)
        if slot == NODAL_COUNT:
            if s_rem == 0 and (t_rem is None or t_rem == 0):
                yield tuple(prefix)
            return
        rem = NODAL_COUNT - slot - 1
        for v in range(start, -cap - 1, -2):
            vv = v * v
            if vv > s_rem:
                continue
            s_next = s_rem - vv
            if s_next > rem * caps:
                continue
            if t_rem is None:
                t_next = None
            else:
                t_next = t_rem - v
                if abs(t_next) > rem * cap or t_next * t_next > rem * s_next:
                    continue
                if (t_next - rem * parity) % 2:
                    continue
            prefix.append(v)
            yield from rec(prefix, s_next, t_next)
            prefix.pop()

    if exact_sum is not None and (exact_sum - NODAL_COUNT * parity) % 2:
        return
    yield from rec([], square_target, exact_sum)


def rational_obstruction_search(
    g: int, m: int, bounds: SearchBounds = DEFAULT_BOUNDS
) -> DivisorClass | None:
    """Scan for a (-2)-class meeting the m-fold twist non-positively.

    Enumerates D = a*L + sum(t_i/2)R_i with 1 <= a <= a_max, |t_i| <= t_max,
    D^2 = -2 and D.R_i >= 0 for every i (the reduction to candidates containing
    no nodal curve, i.e. t_i <= 0), returning the canonically first D with
    D.L_m <= 0, or None.  Empty output corroborates ampleness on the window.
    """
    profile = decompose_profile(g)
    bounds = _check_bounds(bounds)
    if not 0 <= m <= profile.k:
        raise OutOfRangeError(f"m must be in 0..k={profile.k}, got {m}")
    if m == 0:
        # D.L = 2a(g-1) > 0 for every candidate; nothing to scan
        return None
    for a in range(1, bounds.a_max + 1):
        # D^2 = -2 pins sum t_i^2; D.L_m <= 0 reads m * sum(-t_i) >= 4a(g-1)
        square = 4 * a * a * (g - 1) + 4
        min_sum = -(-4 * a * (g - 1) // m)
        best = None
        for parity in (0, 1):
            u = next(_nonneg_tuples(square, min_sum, bounds.t_max, parity), None)
            if u is None:
                continue
            candidate = DivisorClass(a, tuple(-x for x in u))
            if best is None or _scan_key(candidate) < _scan_key(best):
                best = candidate
        if best is not None:
            return best
    return None


def movable_decomposition_search(
    g: int, target: DivisorClass, bounds: SearchBounds = DEFAULT_BOUNDS
) -> list[tuple[DivisorClass, DivisorClass]]:
    """All splittings target = D1 + D2 passing the movability filters.

    Each summand must satisfy a_i >= 0, D_i.L > 0 and chi(D_i) >= 2, the
    lattice-level necessary conditions for carrying a pencil.  Pairs are
    unordered (canonical component first) and listed in canonical order.
    The expected output for a twisted polarization is the empty list.
    """
    decompose_profile(g)
    bounds = _check_bounds(bounds)
    results = []
    cap = bounds.t_max
    lo_a = max(1, target.a - bounds.a_max)
    hi_a = min(bounds.a_max, target.a - 1)
    for a1 in range(lo_a, hi_a + 1):
        a2 = target.a - a1
        budget1 = 4 * a1 * a1 * (g - 1)  # chi >= 2 reads sum t_i^2 <= 4a^2(g-1)
        budget2 = 4 * a2 * a2 * (g - 1)
        for parity in (0, 1):
            for t1 in _split_tuples(target.t, cap, parity, budget1, budget2):
                d1 = DivisorClass(a1, t1)
                d2 = target - d1
                if _scan_key(d1) > _scan_key(d2):
                    continue
                assert riemann_roch_chi(d1, g) >= 2 and riemann_roch_chi(d2, g) >= 2
                results.append((d1, d2))
    results.sort(key=lambda pair: (_scan_key(pair[0]), _scan_key(pair[1])))
    return results


def _split_tuples(target_t: tuple, cap: int, parity: int, budget1: int, budget2: int):
    """Tuples t with |t_i| <= cap, |target_i - t_i| <= cap, fixed parity, and
    both square sums within their budgets."""

    def rec(prefix: list, used1: int, used2: int):
        slot = len(prefix)
        if slot == NODAL_COUNT:
            yield tuple(prefix)
            return
        lo = max(-cap, target_t[slot] - cap)
        hi = min(cap, target_t[slot] + cap)
        first = lo if lo % 2 == parity % 2 else lo + 1
        for v in range(first, hi + 1, 2):
            u1 = used1 + v * v
            if u1 > budget1:
                continue
            w = target_t[slot] - v
            u2 = used2 + w * w
            if u2 > budget2:
                continue
            prefix.append(v)
            yield from rec(prefix, u1, u2)
            prefix.pop()

    yield from rec([], 0, 0)


def _is_primitive(divisor: DivisorClass) -> bool:
    return math.gcd(*basis_coordinates(divisor)) == 1


def _passes_effectivity(divisor: DivisorClass) -> bool:
    # necessary-conditions level: positive polarization degree, or a nonzero
    # effective combination of nodal classes
    if divisor.a >= 1:
        return True
    return divisor.a == 0 and all(x >= 0 for x in divisor.t) and any(divisor.t)


def noether_lefschetz_condition_search(
    g: int, m: int, condition: str, bounds: SearchBounds = DEFAULT_BOUNDS
) -> DivisorClass | None:
    """Scan for a witness of one of the three codimension-one degenerations.

    Condition "a": a primitive class E with E^2 = 0 and E.L_m = 1.
    Condition "b": a primitive class E with E^2 = 0 and E.L_m = 2.
    Condition "c": a class G with G^2 = -2 and G.L_m = 0.

    Returns the canonically first witness inside the window, or None.
    """
    profile = decompose_profile(g)
    bounds = _check_bounds(bounds)
    if condition not in ("a", "b", "c"):
        raise OutOfRangeError(f"condition must be one of a, b, c, got {condition!r}")
    if not 0 <= m <= profile.k:
        raise OutOfRangeError(f"m must be in 0..k={profile.k}, got {m}")
    pairing_target = {"a": 1, "b": 2, "c": 0}[condition]
    square_shift = 4 if condition == "c" else 0
    need_primitive = condition in ("a", "b")
    for a in range(0, bounds.a_max + 1):
        square = 4 * a * a * (g - 1) + square_shift
        if a == 0 and square == 0:
            continue  # only the zero class
        # pairing: 2a(g-1) + (m/2) sum t = target  <=>  m sum t = 2(target - 2a(g-1))
        rhs = 2 * (pairing_target - 2 * a * (g - 1))
        if m == 0:
            if rhs != 0:
                continue
            exact_sum = None
        else:
            if rhs % m:
                continue
            exact_sum = rhs // m
        best = None
        for parity in (0, 1):
            for t in _signed_tuples(square, exact_sum, bounds.t_max, parity):
                candidate = DivisorClass(a, t)
                if not _passes_effectivity(candidate):
                    continue
                if need_primitive and not _is_primitive(candidate):
                    continue
                if best is None or _scan_key(candidate) < _scan_key(best):
                    best = candidate
                break  # tuples arrive in canonical order within a parity class
        if best is not None:
            return best
    return None


def clifford_max(genus: int) -> CliffordData:
    """Maximal Clifford index floor((genus-1)/2), with the low-genus conventions.

    Genus 0, 1, 2 give 0; genus 3 gives 1 (the general, non-hyperelliptic
    branch of the convention; the hyperelliptic sub-case is not visible from
    lattice data).
    """
    if genus < 0:
        raise OutOfRangeError(f"genus must be non-negative, got {genus}")
    if genus == 0:
        return CliffordData(0, 0)
    return CliffordData(genus, (genus - 1) // 2)


def embedding_data(g: int, m: int) -> EmbeddingData:
    """Numerical data of the model traced by the (m+1)-st twist under the m-th.

    A curve in the (m+1)-twist system is embedded by the m-twist as a
    linearly normal curve of genus g_{m+1} and degree 2(g_m - 2m - 1) in
    projective space of dimension g_m.
    """
    profile = decompose_profile(g)
    if not 1 <= m <= profile.k - 1:
        raise OutOfRangeError(f"m must be in 1..k-1={profile.k - 1}, got {m}")
    gm = profile.twisted_genus(m)
    degree = 2 * (gm - 2 * m - 1)
    pairing = intersect(
        DivisorClass.twisted_polarization(m),
        DivisorClass.twisted_polarization(m + 1),
        g,
    )
    if pairing != degree:
        raise InternalInconsistencyError(
            f"degree {degree} disagrees with the lattice pairing {pairing} at g={g}, m={m}"
        )
    return EmbeddingData(gm, profile.twisted_genus(m + 1), degree)
