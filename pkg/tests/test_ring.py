import pytest
from hypothesis import given, settings, strategies as st

from pushforward import (
    EQ,
    GT,
    LT,
    ContextMismatchError,
    MonomialOrdering,
    PolynomialParseError,
    QQ,
    RingContext,
    RingMap,
    compare,
    parse_polynomial,
)
from pushforward.ring import mono_mul


@pytest.fixture
def xy_local():
    return RingContext.local(("x", "y"))


@pytest.fixture
def xy_graded():
    return RingContext.graded(("x", "y"))


class TestCompare:
    def test_degrevlex_x_beats_y(self):
        ord2 = MonomialOrdering.degrevlex(2)
        assert compare((1, 0), (0, 1), ord2) == GT

    def test_local_unit_is_leading(self):
        ord2 = MonomialOrdering.negdegrevlex(2)
        assert compare((0, 0), (1, 0), ord2) == GT

    def test_degrevlex_revlex_tiebreak(self):
        # x^2*y vs x*y^2: same degree, checked by hand enumeration
        ord2 = MonomialOrdering.degrevlex(2)
        assert compare((2, 1), (1, 2), ord2) == GT

    def test_equal(self):
        ord2 = MonomialOrdering.degrevlex(2)
        assert compare((1, 2), (1, 2), ord2) == EQ

    def test_length_mismatch(self):
        with pytest.raises(ContextMismatchError):
            compare((1,), (1, 0), MonomialOrdering.degrevlex(2))

    @given(
        st.lists(
            st.tuples(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6)),
            min_size=2,
            max_size=2,
        ),
        st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)),
    )
    def test_multiplicative(self, monos, factor):
        # m1 > m2 implies m1*m > m2*m, for both ordering kinds
        m1, m2 = monos
        for ordering in (
            MonomialOrdering.degrevlex(3),
            MonomialOrdering.negdegrevlex(3),
        ):
            before = compare(m1, m2, ordering)
            after = compare(mono_mul(m1, factor), mono_mul(m2, factor), ordering)
            assert before == after


class TestArithmetic:
    def test_add_cancels(self, xy_local):
        p = xy_local.poly("x + 1")
        q = xy_local.poly("x")
        assert p + (-1) * q == xy_local.one()

    def test_difference_of_squares(self):
        ctx = RingContext.local(("x", "x'"))
        p = ctx.poly("x - x'") * ctx.poly("x + x'")
        assert p == ctx.poly("x^2 - x'^2")

    def test_exact_rational_product(self, xy_local):
        x = xy_local.var("x")
        p = x * QQ(1, 2)
        q = x * QQ(2, 3)
        assert p * q == xy_local.poly("x^2") * QQ(1, 3)

    def test_context_mismatch(self, xy_local, xy_graded):
        with pytest.raises(ContextMismatchError):
            xy_local.var("x") + xy_graded.var("x")

    def test_pow(self, xy_local):
        p = xy_local.poly("x + y")
        assert p ** 3 == p * p * p
        assert p ** 0 == xy_local.one()


small_coeffs = st.integers(-4, 4)


def polys(ctx, max_terms=4, max_exp=3):
    mono = st.tuples(*(st.integers(0, max_exp) for _ in range(ctx.nvars)))
    term = st.tuples(mono, small_coeffs)
    def build(terms):
        acc = ctx.zero()
        for m, c in terms:
            acc = acc + ctx.monomial(m, c) if c else acc
        return acc
    return st.lists(term, max_size=max_terms).map(build)


class TestRingAxioms:
    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_associative_distributive_commutative(self, data):
        ctx = RingContext.local(("x", "y"))
        p = data.draw(polys(ctx))
        q = data.draw(polys(ctx))
        r = data.draw(polys(ctx))
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert p * q == q * p
        assert p * (q + r) == p * q + p * r

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_coefficients_stay_normalized(self, data):
        ctx = RingContext.local(("x", "y"))
        p = data.draw(polys(ctx))
        q = data.draw(polys(ctx))
        import math

        for c in (p * q + p).terms.values():
            assert c.denominator > 0
            assert math.gcd(int(c.numerator), int(c.denominator)) == 1


class TestLeadingData:
    def test_local_leading_term_and_ecart(self, xy_local):
        p = xy_local.poly("x - x^2")
        mono, coeff = p.leading_term()
        assert mono == (1, 0)
        assert coeff == 1
        assert p.ecart() == 1

    def test_global_leading_term(self, xy_graded):
        p = xy_graded.poly("x - x^2")
        mono, coeff = p.leading_term()
        assert mono == (2, 0)
        assert coeff == -1

    def test_homogeneous_ecart_is_zero(self, xy_local):
        assert xy_local.poly("x^2 + x*y + y^2").ecart() == 0

    def test_zero_has_no_leading_term(self, xy_local):
        with pytest.raises(ValueError):
            xy_local.zero().leading_term()


class TestRingMap:
    def crosscap(self):
        src = RingContext.local(("x", "y"))
        tgt = RingContext.local(("X1", "X2", "Y"))
        phi = RingMap(
            tgt, src, [src.poly("x"), src.poly("y^2"), src.poly("x*y")]
        )
        return src, tgt, phi

    def test_crosscap_y_image(self):
        src, tgt, phi = self.crosscap()
        assert phi(tgt.var("Y")) == src.poly("x*y")

    def test_crosscap_product_image(self):
        src, tgt, phi = self.crosscap()
        assert phi(tgt.poly("X1*X2")) == src.poly("x*y^2")

    def test_identity(self, xy_local):
        ident = RingMap.identity(xy_local)
        p = xy_local.poly("x^2 - 3*y + 1/2")
        assert ident(p) == p

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_is_ring_homomorphism(self, data):
        src, tgt, phi = self.crosscap()
        p = data.draw(polys(tgt, max_terms=3, max_exp=2))
        q = data.draw(polys(tgt, max_terms=3, max_exp=2))
        assert phi(p + q) == phi(p) + phi(q)
        assert phi(p * q) == phi(p) * phi(q)

    def test_wrong_arity(self, xy_local):
        with pytest.raises(ContextMismatchError):
            RingMap(xy_local, xy_local, [xy_local.var("x")])


class TestTextFormat:
    def test_render_omits_unit_denominator(self, xy_local):
        p = xy_local.poly("3*x - 1/2*y")
        assert str(p) == "3*x - 1/2*y"

    def test_render_zero(self, xy_local):
        assert str(xy_local.zero()) == "0"

    def test_terms_in_decreasing_order_local(self, xy_local):
        # decreasing local order puts the constant first
        p = xy_local.poly("x^2 + 1 + y")
        assert str(p) == "1 + y + x^2"

    def test_parse_errors(self, xy_local):
        with pytest.raises(PolynomialParseError):
            xy_local.poly("x +")
        with pytest.raises(PolynomialParseError):
            xy_local.poly("x / y")
        with pytest.raises(PolynomialParseError):
            xy_local.poly("2 ** 3")

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_roundtrip(self, data):
        ctx = RingContext.local(("x", "y", "z"))
        p = data.draw(polys(ctx, max_terms=5, max_exp=4))
        assert parse_polynomial(str(p), ctx) == p

    def test_parse_accepts_primes_and_parens(self):
        ctx = RingContext.local(("x", "x'"))
        assert ctx.poly("(x + x')^2") == ctx.poly("x^2 + 2*x*x' + x'^2")
