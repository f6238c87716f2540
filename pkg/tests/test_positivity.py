from fractions import Fraction

import pytest

from nikulin import (
    DEFAULT_BOUNDS,
    DivisorClass,
    InvalidBoundsError,
    OutOfRangeError,
    SearchBounds,
    ampleness_analytic_check,
    clifford_max,
    decompose_profile,
    embedding_data,
    intersect,
    lk_system_analysis,
    movable_decomposition_search,
    noether_lefschetz_condition_search,
    rational_obstruction_search,
    riemann_roch_chi,
    very_ample_check,
    very_ampleness_threshold,
)
from nikulin.positivity import _threshold_forms


# -- analytic ampleness -----------------------------------------------------------


def test_ampleness_examples():
    assert ampleness_analytic_check(8, 1)  # 7*5/1 = 35 > 2
    for k in range(1, 51):
        assert ampleness_analytic_check(2 * k * k + 2, k)
        assert not ampleness_analytic_check(2 * k * k, k)
    with pytest.raises(OutOfRangeError):
        ampleness_analytic_check(8, 0)
    with pytest.raises(OutOfRangeError):
        ampleness_analytic_check(8, 3)


# -- very-ampleness ---------------------------------------------------------------


def test_very_ample_examples():
    verdict = very_ample_check(11, 2)
    assert verdict.status == "very-ample" and verdict.witness is None
    # the threshold at g=11 is 161/20, just above T=8
    assert Fraction(2 * 121 - 88 + 7, 20) == Fraction(161, 20)
    assert very_ample_check(8, 1).status == "very-ample"
    for k in range(1, 20):
        assert very_ample_check(2 * k * k + 2, k).status == "ample"


def test_very_ample_degenerate_twists():
    fixed = very_ample_check(8, 2)
    assert fixed.status == "obstructed"
    assert fixed.rationale == "rational-fixed-curve"
    assert intersect(fixed.witness, fixed.witness, 8) == -2
    pencil = very_ample_check(9, 2)
    assert pencil.status == "obstructed"
    assert pencil.rationale == "elliptic-pencil"
    assert intersect(pencil.witness, pencil.witness, 9) == 0
    assert very_ample_check(8, 3).status == "out-of-range"


def test_threshold_forms_agree_on_window():
    for g in range(4, 201):
        profile = decompose_profile(g)
        for m in range(1, profile.k + 1):
            direct, square_free = _threshold_forms(g, 2 * m * m)
            assert direct == square_free
            assert very_ampleness_threshold(g, 2 * m * m) == direct


def test_verdicts_uniformly_very_ample_below_top_twist():
    for g in range(8, 61):
        profile = decompose_profile(g)
        for m in range(1, profile.k):
            assert very_ample_check(g, m).status == "very-ample"


# -- moving/fixed analysis ---------------------------------------------------------


def test_lk_analysis():
    fixed = lk_system_analysis(8)
    assert (fixed.h0, fixed.kind) == (1, "rational-fixed-curve")
    assert fixed.fixed_part == DivisorClass.twisted_polarization(2)
    for k in (2, 3, 4):
        pencil = lk_system_analysis(2 * k * k + 1)
        assert (pencil.h0, pencil.kind) == (2, "basepoint-free-pencil-or-more")
        assert pencil.fixed_part is None
    assert lk_system_analysis(11).h0 == 4


def test_lk_h0_matches_euler_characteristic():
    for g in range(2, 120):
        profile = decompose_profile(g)
        lk = DivisorClass.twisted_polarization(profile.k)
        assert lk_system_analysis(g).h0 == riemann_roch_chi(lk, g)


# -- obstruction search -------------------------------------------------------------


def test_obstruction_search_empty_below_top_twist():
    assert rational_obstruction_search(8, 1, SearchBounds(3, 8)) is None
    assert rational_obstruction_search(20, 2, SearchBounds(2, 10)) is None
    assert rational_obstruction_search(8, 0) is None


def test_obstruction_search_finds_degenerate_top_twist():
    witness = rational_obstruction_search(8, 2, SearchBounds(1, 4))
    # canonical scan order: the all-odd (-2)-class precedes L - 2e
    assert witness == DivisorClass(1, (-1, -1, -1, -1, -1, -3, -3, -3))
    assert intersect(witness, witness, 8) == -2
    lk = DivisorClass.twisted_polarization(2)
    assert intersect(witness, lk, 8) <= 0
    for i in range(1, 9):
        assert intersect(witness, DivisorClass.nodal(i), 8) >= 0


def test_obstruction_search_rejects_bad_input():
    with pytest.raises(InvalidBoundsError):
        SearchBounds(0, 5)
    with pytest.raises(InvalidBoundsError):
        SearchBounds(2, 0)
    with pytest.raises(OutOfRangeError):
        rational_obstruction_search(8, 5)


# -- movable decompositions -----------------------------------------------------------


def test_no_movable_decomposition_of_twists():
    assert movable_decomposition_search(8, DivisorClass.twisted_polarization(1), SearchBounds(2, 8)) == []
    assert movable_decomposition_search(18, DivisorClass.twisted_polarization(2), SearchBounds(2, 10)) == []


def test_double_polarization_splits():
    L = DivisorClass.polarization()
    for g in (8, 11, 20):
        pairs = movable_decomposition_search(g, 2 * L, SearchBounds(2, 1))
        assert (L, L) in pairs
        for d1, d2 in pairs:
            assert d1 + d2 == 2 * L
            assert d1.a >= 1 and d2.a >= 1
            assert riemann_roch_chi(d1, g) >= 2 and riemann_roch_chi(d2, g) >= 2


# -- Noether-Lefschetz style conditions -------------------------------------------------


def test_elliptic_pencil_conditions_empty_at_genus_eight():
    assert noether_lefschetz_condition_search(8, 1, "a", SearchBounds(2, 8)) is None
    assert noether_lefschetz_condition_search(8, 1, "b", SearchBounds(2, 8)) is None


def test_orthogonal_nodal_condition():
    # nodal classes meet the once-twisted polarization in 1, so they are no witness
    r1 = DivisorClass.nodal(1)
    assert intersect(r1, DivisorClass.twisted_polarization(1), 8) == 1
    assert noether_lefschetz_condition_search(8, 1, "c", SearchBounds(2, 8)) is None
    # at m=0 the orthogonality R.L = 0 is universal; the first nodal class wins
    assert noether_lefschetz_condition_search(8, 0, "c", SearchBounds(2, 8)) == r1


def test_condition_tag_validated():
    with pytest.raises(OutOfRangeError):
        noether_lefschetz_condition_search(8, 1, "d", DEFAULT_BOUNDS)


# -- Clifford index ---------------------------------------------------------------------


def test_clifford_values():
    assert clifford_max(6).max_clifford == 2
    assert clifford_max(2).max_clifford == 0
    assert clifford_max(1).max_clifford == 0
    assert clifford_max(0).max_clifford == 0
    assert clifford_max(3).max_clifford == 1
    for genus in range(4, 200):
        assert clifford_max(genus).max_clifford == (genus - 1) // 2
    with pytest.raises(OutOfRangeError):
        clifford_max(-1)


def test_clifford_maximal_for_twist_genera():
    for g in range(8, 101):
        profile = decompose_profile(g)
        for m in range(0, profile.k + 1):
            gm = profile.twisted_genus(m)
            if gm >= 4:
                assert clifford_max(gm).max_clifford == (gm - 1) // 2


# -- embedding data ----------------------------------------------------------------------


def test_embedding_examples():
    data = embedding_data(8, 1)
    assert (data.ambient_dim, data.curve_genus, data.curve_degree) == (6, 0, 6)
    for k in range(2, 7):
        one = embedding_data(2 * k * k + 1, k - 1)
        assert (one.ambient_dim, one.curve_genus) == (4 * k - 1, 1)
        assert one.curve_degree == 4 * k
        two = embedding_data(2 * k * k + 2, k - 1)
        assert (two.ambient_dim, two.curve_genus) == (4 * k, 2)
        assert two.curve_degree == 4 * k + 2
    with pytest.raises(OutOfRangeError):
        embedding_data(8, 2)
    with pytest.raises(OutOfRangeError):
        embedding_data(8, 0)


def test_embedding_degree_identity_sweep():
    for g in range(8, 201):
        profile = decompose_profile(g)
        for m in range(1, profile.k):
            gm = profile.twisted_genus(m)
            pairing = intersect(
                DivisorClass.twisted_polarization(m),
                DivisorClass.twisted_polarization(m + 1),
                g,
            )
            assert pairing == 2 * (gm - 2 * m - 1)
            assert embedding_data(g, m).curve_degree == pairing
