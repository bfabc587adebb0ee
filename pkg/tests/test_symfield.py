import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import noetherlab.catalog as catalog
from noetherlab.scalars import QQ, Field
from noetherlab.symfield import (Character, ExpressionError, Polynomial,
                                 RationalFunction, SubstitutionMap,
                                 VariableSpace, character_check, eigen_factor,
                                 is_fixed, monomial_exponents, parse_expression,
                                 poly_gcd, poly_product, variables)

GF7 = Field(7)


@pytest.fixture
def sp3():
    return VariableSpace(["x0", "x1", "x2"])


def test_poly_examples(sp3):
    x0, x1, x2 = variables(sp3, QQ)
    assert (x0 + x1) + (-x1) == x0
    assert (x0 + 1) * (x0 - 1) == x0 * x0 - 1
    y0, _, _ = variables(sp3, GF7)
    assert y0.scale(7).is_zero()


def test_space_errors(sp3):
    other = VariableSpace(["a", "b"])
    x0 = Polynomial.variable(sp3, QQ, "x0")
    a = Polynomial.variable(other, QQ, "a")
    with pytest.raises(ValueError, match="spaces differ"):
        x0 + a
    with pytest.raises(ValueError, match="fields differ"):
        x0 + Polynomial.variable(sp3, GF7, "x0")
    with pytest.raises(ValueError):
        VariableSpace(["x", "x"])


def test_ratfunc_examples(sp3):
    x0, x1, x2 = variables(sp3, QQ)
    w = 1 + x1 + x1 * x2
    assert (1 / w + x1 / w + (x1 * x2) / w).is_one()
    assert ((x0 * x0 - 1) / (x0 - 1)) == RationalFunction.of(x0 + 1)
    with pytest.raises(ZeroDivisionError):
        x0 / (x1 - x1)


def test_ratfunc_random_inverses(sp3):
    rng = random.Random(11)
    xs = variables(sp3, GF7)
    for _ in range(60):
        a = _random_poly(sp3, GF7, rng)
        b = _random_poly(sp3, GF7, rng)
        if a.is_zero() or b.is_zero():
            continue
        r = (a / b) * (b / a)
        assert r.is_one()
        assert ((a / b) * b) == RationalFunction.of(a)


def _random_poly(space, field, rng, max_terms=3, max_exp=3):
    items = []
    for _ in range(rng.randint(0, max_terms)):
        exps = tuple(rng.randint(0, max_exp) for _ in range(space.n))
        coeff = rng.randrange(1, field.char) if field.char else \
            Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        items.append((exps, coeff))
    return Polynomial.from_terms(space, field, items)


def test_canonical_soundness(sp3):
    rng = random.Random(5)
    for _ in range(100):
        f = _random_poly(sp3, QQ, rng)
        assert (f - f).is_zero()
    zero = RationalFunction.of(0, sp3, QQ)
    assert (zero - zero).is_zero()


def test_gcd_normalization_monic_denominator(sp3):
    x0, x1, _ = variables(sp3, QQ)
    r = x0 / (x1.scale(3) + 3)
    assert r.den.leading_coefficient().value == 1


def test_artin_schreier_by_expansion():
    for p in (2, 3, 5, 7, 11):
        field = Field(p)
        space = VariableSpace(["X"])
        (x,) = variables(space, field)
        prod = Polynomial.constant(space, field, 1)
        for i in range(p):
            prod = prod * (x + i)
        assert prod == x ** p - x


# -- substitution ----------------------------------------------------------------


def test_subst_cycle_of_seven():
    space = VariableSpace([f"x{i}" for i in range(7)])
    sigma = catalog.index_substitution(space, GF7, lambda i: (i + 1) % 7)
    x0 = Polynomial.variable(space, GF7, "x0")
    assert sigma.apply(x0) == RationalFunction.of(
        Polynomial.variable(space, GF7, "x1"))
    total = poly_product([Polynomial.constant(space, GF7, 1)])
    sym = Polynomial.zero(space, GF7)
    for name in space.names:
        sym = sym + Polynomial.variable(space, GF7, name)
    ok, witness = is_fixed(sigma, RationalFunction.of(sym))
    assert ok and witness is None


def test_subst_lemma29_hand_value():
    # p = 3, characteristic 3: u = 2 y1 + y2, sigma: y1 -> y2, y2 -> 1 - y1 - y2
    gf3 = Field(3)
    space = VariableSpace(["y1", "y2"])
    y1, y2 = variables(space, gf3)
    sigma = SubstitutionMap.from_images(space, gf3, {"y1": y2, "y2": 1 - y1 - y2})
    u = y1.scale(2) + y2
    got = sigma.apply(u)
    assert got == RationalFunction.of(1 + y1.scale(2) + y2)
    assert got == RationalFunction.of(u + 1)
    ok, witness = is_fixed(sigma, RationalFunction.of(u))
    assert not ok
    assert witness == RationalFunction.of(-1, space, gf3) + 0


def test_is_fixed_witness_direction():
    # witness is f - m(f): for sigma(u) = u + 1 the witness is -1
    gf3 = Field(3)
    space = VariableSpace(["y1", "y2"])
    y1, y2 = variables(space, gf3)
    sigma = SubstitutionMap.from_images(space, gf3, {"y1": y2, "y2": 1 - y1 - y2})
    u = y1.scale(2) + y2
    ok, witness = is_fixed(sigma, u)
    assert not ok
    assert witness == RationalFunction.of(2, space, gf3)  # -1 mod 3


def test_kind_classification(sp3):
    x0, x1, x2 = variables(sp3, QQ)
    perm = SubstitutionMap.from_images(sp3, QQ, {"x0": x1, "x1": x2, "x2": x0})
    assert perm.kind == "permutation"
    twisted = SubstitutionMap.from_images(sp3, QQ, {"x0": x0.scale(-1)})
    assert twisted.kind == "twisted-permutation"
    mono = SubstitutionMap.from_images(sp3, QQ, {"x2": 1 / (x0 * x1 * x2)})
    assert mono.kind == "monomial"
    affine = SubstitutionMap.from_images(sp3, QQ, {"x2": 1 - x0 - x2})
    assert affine.kind == "affine"
    general = SubstitutionMap.from_images(sp3, QQ, {"x2": x0 / (x1 + 1)})
    assert general.kind == "general"


def test_subst_homomorphism_sampled():
    field = GF7
    fam = catalog.def16(7, 3, field)
    rng = random.Random(99)
    for name, m in fam.maps.items():
        for _ in range(60):
            f = RationalFunction.of(_random_poly(fam.space, field, rng))
            g = RationalFunction.of(_random_poly(fam.space, field, rng))
            assert m.apply(f + g) == m.apply(f) + m.apply(g)
            assert m.apply(f * g) == m.apply(f) * m.apply(g)


def test_subst_compose_against_sequential():
    for p, a in ((3, 2), (7, 3)):
        field = Field(p)
        fam = catalog.def16(p, a, field)
        gens = [RationalFunction.of(Polynomial.variable(fam.space, field, n))
                for n in fam.space.names]
        for name_a, ma in fam.maps.items():
            for name_b, mb in fam.maps.items():
                composed = ma.compose(mb)
                for v in gens:
                    assert composed.apply(v) == ma.apply(mb.apply(v)), (name_a, name_b)


def test_compose_involutions():
    gf7 = GF7
    fam = catalog.def16(7, 2, gf7)
    ident = SubstitutionMap.identity(fam.space, gf7)
    l1, l2 = fam["lambda1"], fam["lambda2"]
    assert l2.compose(l2) == ident
    assert l1.compose(l1).compose(l1).compose(l1) == ident
    s1 = fam["sigma1"]
    assert s1.compose(s1.inverse()) == ident


def test_declared_inverse_validated(sp3):
    x0, x1, x2 = variables(sp3, QQ)
    forward = SubstitutionMap.from_images(sp3, QQ, {"x0": x1, "x1": x0})
    good = SubstitutionMap.from_images(sp3, QQ, {"x0": x1, "x1": x0})
    SubstitutionMap(sp3, QQ, forward.images, inverse=good)  # fine
    bad = SubstitutionMap.identity(sp3, QQ)
    with pytest.raises(ValueError, match="does not invert"):
        SubstitutionMap(sp3, QQ, forward.images, inverse=bad)


def test_substitution_pole_error(sp3):
    x0, x1, x2 = variables(sp3, QQ)
    collapse = SubstitutionMap.from_images(sp3, QQ, {"x1": x0})
    f = x2 / (x1 - x0)
    with pytest.raises(ZeroDivisionError, match="vanishes"):
        collapse.apply(f)


def test_eigen_factor(sp3):
    x0, x1, x2 = variables(sp3, GF7)
    scaling = SubstitutionMap.from_images(sp3, GF7, {"x0": x0.scale(3)})
    c = eigen_factor(scaling, RationalFunction.of(x0 ** 2))
    assert c == GF7.scalar(2)  # 3^2 = 9 = 2
    ident = SubstitutionMap.identity(sp3, GF7)
    assert eigen_factor(ident, (x0 + x1) / x2) == GF7.scalar(1)
    assert eigen_factor(scaling, RationalFunction.of(x0 + x1)) is None


def test_monomial_exponents(sp3):
    x0, x1, x2 = variables(sp3, QQ)
    assert monomial_exponents(x0 ** 2 / x2) == (2, 0, -1)
    with pytest.raises(ValueError, match="not a monomial"):
        monomial_exponents(RationalFunction.of(x0 + x1))


# -- characters ------------------------------------------------------------------


def test_character_check():
    chi = Character(GF7, {"sigma": 1, "tau": -1}, 2)
    assert character_check(chi, ["tau^6"], d=2)
    assert chi.evaluate_word("tau^2") == GF7.scalar(1)
    trivial = Character(GF7, {"sigma": 1, "tau": 1}, 1)
    assert character_check(trivial, ["sigma*tau", "tau^5"])
    with pytest.raises(ValueError, match="does not satisfy"):
        Character(GF7, {"tau": 3}, 2)
    with pytest.raises(ValueError, match="not defined"):
        chi.evaluate_word("rho")


def test_character_power_order():
    chi = Character(GF7, {"tau": 3}, 6)
    assert chi.exact_order() == 6
    assert chi.power(2).exact_order() == 3
    assert chi.power(6).is_trivial()


# -- text form -------------------------------------------------------------------


def test_parse_examples(sp3):
    x0, x1, x2 = variables(sp3, QQ)
    expr = (x0 ** 2 * x1 + 3) / (x2 - 1)
    assert str(expr) == "(x0^2*x1 + 3)/(x2 - 1)"
    assert parse_expression(str(expr), sp3, QQ) == expr
    assert parse_expression("0", sp3, QQ).is_zero()
    assert parse_expression("-x0^2", sp3, QQ) == RationalFunction.of(-(x0 ** 2))
    assert parse_expression("1/2*x0", sp3, QQ) == RationalFunction.of(
        x0.scale(Fraction(1, 2)))
    with pytest.raises(ExpressionError, match="unknown variable"):
        parse_expression("q + 1", sp3, QQ)
    with pytest.raises(ExpressionError):
        parse_expression("x0 + ", sp3, QQ)
    with pytest.raises(ExpressionError):
        parse_expression("(x0", sp3, QQ)


@st.composite
def _ratfuncs(draw):
    space = VariableSpace(["x0", "x1"])
    field = QQ
    def poly():
        items = draw(st.lists(
            st.tuples(st.tuples(st.integers(0, 4), st.integers(0, 4)),
                      st.integers(-6, 6)),
            max_size=4))
        return Polynomial.from_terms(space, field, items)
    num = poly()
    den = poly()
    if den.is_zero():
        den = Polynomial.constant(space, field, 1)
    return RationalFunction(num, den)


@settings(max_examples=150, deadline=None)
@given(_ratfuncs())
def test_text_roundtrip(rf):
    space = VariableSpace(["x0", "x1"])
    assert parse_expression(str(rf), space, QQ) == rf


@settings(max_examples=60, deadline=None)
@given(_ratfuncs(), _ratfuncs())
def test_field_laws_on_random_fractions(a, b):
    assert a + b == b + a
    assert a * b == b * a
    assert (a - b) + b == a
    if not b.is_zero():
        assert (a / b) * b == a


def test_gcd_against_known_factorizations(sp3):
    x0, x1, x2 = variables(sp3, QQ)
    rng = random.Random(3)
    basis = [x0 + 1, x1 - 2, x0 + x1 + x2, x2 ** 2 + x0]
    for _ in range(25):
        common = poly_product([basis[i] for i in range(len(basis))
                               if rng.random() < 0.5] or [x0 * 0 + 1])
        extra_a = basis[rng.randrange(len(basis))]
        extra_b = basis[rng.randrange(len(basis))]
        if extra_a == extra_b:
            continue
        a = common * extra_a
        b = common * extra_b
        g = poly_gcd(a, b)
        # the gcd must divide both and be divisible by the planted factor
        assert poly_gcd(g, common.monic()) == common.monic()
        assert (a / g).den.is_one() and (b / g).den.is_one()
