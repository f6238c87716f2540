import random
from fractions import Fraction

import pytest

from nikulin import (
    BaseClass,
    DerivationFailureError,
    FiberPoly,
    HODGE,
    NODAL_C1,
    NODAL_TWIST,
    OutOfRangeError,
    POLAR_C1,
    POLAR_TWIST,
    TANGENT_C2,
    TheoremCheckError,
    c1_pushforward_bundle,
    chern_character,
    decompose_profile,
    divisor_class,
    gamma_basis,
    gamma_basis_reduce,
    gamma_invariance_check,
    pushforward,
    pushforward_bundle_rank,
    substitute_kappas,
    todd_relative,
    twist_kappas,
)

GENERATORS = (POLAR_C1, NODAL_C1, TANGENT_C2, HODGE, POLAR_TWIST, NODAL_TWIST)


def random_poly(rng: random.Random) -> FiberPoly:
    poly = FiberPoly()
    for _ in range(rng.randint(1, 5)):
        term = FiberPoly.one() * Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        for _ in range(rng.randint(0, 3)):
            term = term * rng.choice(GENERATORS)
        poly = poly + term
    return poly


# -- ring laws ---------------------------------------------------------------------


def test_ring_laws_on_random_polynomials():
    rng = random.Random(31415)
    for _ in range(60):
        x, y, z = (random_poly(rng) for _ in range(3))
        assert x * y == y * x
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + FiberPoly() == x
        assert x * FiberPoly.one() == x


def test_truncation_is_flagged():
    quartic = (POLAR_C1 * POLAR_C1) * (NODAL_C1 * NODAL_C1)
    assert quartic.is_zero() and quartic.truncated
    cubic = POLAR_C1 * POLAR_C1 * NODAL_C1
    assert not cubic.truncated and not cubic.is_zero()


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        FiberPoly({(1, 0, 0, 0, 0, 0): 0.5})
    with pytest.raises(TypeError):
        BaseClass({"k300": 0.25})
    with pytest.raises(TypeError):
        POLAR_C1 * 0.5


# -- Chern character and Todd class ---------------------------------------------------


def test_chern_character_of_line_class():
    ch = chern_character(1, 0, 1)
    expected = (
        FiberPoly.one()
        + POLAR_C1
        + Fraction(1, 2) * POLAR_C1**2
        + Fraction(1, 6) * POLAR_C1**3
    )
    assert ch == expected
    assert chern_character(0, 0, 5) == FiberPoly.one()
    with pytest.raises(OutOfRangeError):
        chern_character(1, 0, 0)


def test_chern_character_cubic_term():
    for m in (0, 1, 2):
        for n in (1, 2, 3):
            cubic = chern_character(1, -m, n).graded_part(3)
            assert cubic == Fraction(n**3, 6) * (POLAR_C1 - m * NODAL_C1) ** 3


def test_todd_graded_parts():
    td = todd_relative()
    assert td.graded_part(0) == FiberPoly.one()
    assert td.graded_part(1) == Fraction(-1, 2) * HODGE
    assert td.graded_part(2) == Fraction(1, 12) * (HODGE * HODGE + TANGENT_C2)
    assert td.graded_part(3) == Fraction(-1, 24) * (HODGE * TANGENT_C2)


# -- pushforward -------------------------------------------------------------------------


def test_pushforward_codim_zero_values():
    for g in (3, 8, 20):
        assert pushforward(POLAR_C1 * POLAR_C1, g) == BaseClass({"unit": 2 * g - 2})
        assert pushforward(POLAR_C1 * NODAL_C1, g) == BaseClass()
        assert pushforward(NODAL_C1 * NODAL_C1, g) == BaseClass({"unit": -4})
        assert pushforward(TANGENT_C2, g) == BaseClass({"unit": 24})
    assert pushforward(TANGENT_C2 * HODGE, 8) == BaseClass({"lam": 24})
    assert pushforward(POLAR_C1 * HODGE * HODGE, 8) == BaseClass()


def test_pushforward_codim_one_symbols():
    cube = pushforward(POLAR_C1**3, 8)
    assert cube == BaseClass({"k300": 1})
    mixed = pushforward(POLAR_C1 * NODAL_C1 * NODAL_C1, 8)
    assert mixed == BaseClass({"k120": 1})
    tangent = pushforward(NODAL_C1 * TANGENT_C2, 8)
    assert tangent == BaseClass({"k011": 1})


def test_projection_formula():
    rng = random.Random(7)
    slots = ((HODGE, "lam"), (POLAR_TWIST, "alpha"), (NODAL_TWIST, "beta"))
    fiber_gens = (POLAR_C1, NODAL_C1)
    for _ in range(40):
        g = rng.choice((3, 8, 20))
        x = FiberPoly()
        for _ in range(rng.randint(1, 3)):
            term = Fraction(rng.randint(-5, 5)) * rng.choice(fiber_gens) * rng.choice(fiber_gens)
            x = x + term
        x = x + Fraction(rng.randint(-3, 3)) * TANGENT_C2
        base, slot = rng.choice(slots)
        unit = pushforward(x, g).coefficient("unit")
        assert pushforward(x * base, g) == BaseClass({slot: unit})


# -- relative Riemann-Roch -----------------------------------------------------------------


def closed_form(n: int, m: int, gm: int) -> BaseClass:
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


def test_c1_examples():
    for g in (5, 8, 20):
        assert c1_pushforward_bundle(1, 0, g) == BaseClass(
            {"k300": Fraction(1, 6), "k101": Fraction(1, 12), "lam": -Fraction(g + 1, 2)}
        )
    two_one_eight = c1_pushforward_bundle(2, 1, 8)
    assert two_one_eight == BaseClass(
        {
            "k300": Fraction(4, 3),
            "k210": -4,
            "k120": 4,
            "k030": Fraction(-4, 3),
            "k101": Fraction(1, 6),
            "k011": Fraction(-1, 6),
            "lam": -11,
        }
    )
    assert pushforward_bundle_rank(2, 1, 8) == 22


def test_c1_small_sweep_matches_closed_form():
    for g in range(3, 25):
        profile = decompose_profile(g)
        for m in range(0, profile.k + 1):
            if m == profile.k and profile.p < 2:
                continue
            for n in (1, 2, 3):
                assert c1_pushforward_bundle(n, m, g) == closed_form(n, m, profile.twisted_genus(m))


def test_c1_range_checks():
    with pytest.raises(OutOfRangeError):
        c1_pushforward_bundle(0, 0, 8)
    with pytest.raises(OutOfRangeError):
        c1_pushforward_bundle(1, 3, 8)
    with pytest.raises(OutOfRangeError):
        c1_pushforward_bundle(1, 2, 8)  # m = k with p = 0


# -- kappa twists and invariants --------------------------------------------------------------


def test_twist_examples():
    g = 8
    table = twist_kappas(1, 1, g)
    assert table["k300"] == BaseClass({"k300": 1, "alpha": 3 * (2 * g - 2)})
    assert table["k011"] == BaseClass({"k011": 1, "beta": 24})
    assert table["k120"] == BaseClass({"k120": 1, "alpha": -4})
    assert table["k030"] == BaseClass({"k030": 1, "beta": -12})
    assert table["k101"] == BaseClass({"k101": 1, "alpha": 24})
    assert table["k210"] == BaseClass({"k210": 1, "beta": 2 * g - 2})
    identity = twist_kappas(0, 0, g)
    for name, value in identity.items():
        assert value == BaseClass({name: 1})


def test_gamma_invariance_and_nontriviality():
    for g in range(3, 101):
        assert gamma_invariance_check(g)
    table = twist_kappas(2, 3, 11)
    changed = [name for name, value in table.items() if value != BaseClass({name: 1})]
    assert len(changed) == 6
    for combo in gamma_basis(11):
        twisted = substitute_kappas(combo, table)
        assert twisted.coefficient("alpha") == 0
        assert twisted.coefficient("beta") == 0
        assert twisted == combo


# -- reduction to the invariant basis -----------------------------------------------------------


def test_reduce_recovers_basis_elements():
    g = 8
    gamma0, gamma1, gamma2, gamma3 = gamma_basis(g)
    reduced = gamma_basis_reduce(gamma0, g)
    assert reduced.as_tuple() == (1, 0, 0, 0, 0)
    assert reduced.residual.is_zero()
    reduced = gamma_basis_reduce(3 * gamma1 - 2 * gamma3 + BaseClass({"lam": 5}), g)
    assert reduced.as_tuple() == (0, 3, 0, -2, 5)
    assert reduced.residual.is_zero()


def test_reduce_flags_non_membership():
    g = 8
    reduced = gamma_basis_reduce(BaseClass({"k300": 1}), g)
    assert not reduced.residual.is_zero()
    assert reduced.residual == BaseClass({"k101": Fraction(g - 1, 4)})


def test_bracket_identities():
    for g in range(3, 61):
        profile = decompose_profile(g)
        gamma0, gamma1, gamma2, gamma3 = gamma_basis(g)
        for m in range(0, profile.k + 1):
            gm = profile.twisted_genus(m)
            first = 2 * gamma0 + m * m * gamma2
            assert first == BaseClass(
                {"k300": 2, "k101": -Fraction(gm - 1, 2), "k120": 6 * m * m}
            )
            second = -(m**3) * gamma3 - 6 * m * gamma1
            assert second == BaseClass(
                {
                    "k030": -2 * m**3,
                    "k011": Fraction(m * (gm - 1), 2),
                    "k210": -6 * m,
                }
            )


# -- the divisor class --------------------------------------------------------------------------


def test_divisor_class_examples():
    result = divisor_class(8, 1)
    assert result.gamma.as_tuple() == (
        Fraction(2, 7),
        Fraction(-6, 7),
        Fraction(1, 7),
        Fraction(-1, 7),
        11,
    )
    assert result.scale == 294
    assert result.twisted_genus == 6
    top = divisor_class(11, 2)
    assert top.gamma.as_tuple() == (Fraction(1, 2), -3, 1, -2, 5)
    assert top.scale == 1


def test_divisor_class_untwisted_pattern():
    for g in (3, 8, 20, 33):
        result = divisor_class(g, 0)
        assert result.gamma.as_tuple() == (Fraction(2, g + 1), 0, 0, 0, 2 * g - 1)
        assert result.gamma.residual.is_zero()


def test_divisor_class_refusals():
    with pytest.raises(OutOfRangeError) as exc:
        divisor_class(8, 2)  # m = k with p = 0 < 3
    assert "p >= 3" in str(exc.value)
    with pytest.raises(OutOfRangeError):
        divisor_class(2, 0)  # twisted genus 2 has no determinantal scale
    with pytest.raises(OutOfRangeError):
        divisor_class(8, 3)


def test_divisor_class_scaled_coefficients():
    result = divisor_class(8, 1)
    assert result.scaled_coefficients() == (
        Fraction(84),
        Fraction(-252),
        Fraction(42),
        Fraction(-42),
        Fraction(3234),
    )


# -- serialization -----------------------------------------------------------------------------


def test_base_class_json_uses_fraction_strings():
    payload = c1_pushforward_bundle(2, 1, 8).to_json()
    assert payload["k300"] == "4/3"
    assert payload["lam"] == "-11"
    assert payload["alpha"] == "0"
    gamma = divisor_class(8, 1).gamma.to_json()
    assert gamma["c0"] == "2/7" and gamma["lambda"] == "11"
