import pytest
from hypothesis import given, settings, strategies as st

from pushforward import (
    INFINITE,
    Ideal,
    QQ,
    RingContext,
    eliminate,
    ideal_contains,
    ideal_equal,
    ideal_intersect,
    ideal_power,
    ideal_product,
    ideal_quotient,
    ideal_sum,
    kbase,
    normal_form,
    standard_basis,
    vdim,
)
from pushforward.stdbasis import (
    _prepare,
    content_normalized,
    exact_divide,
    mora_normal_form,
    truncated_normal_form,
)


@pytest.fixture
def xy():
    return RingContext.local(("x", "y"))


@pytest.fixture
def xyz():
    return RingContext.local(("x", "y", "z"))


class TestStandardBasis:
    def test_local_unit_factor(self, xy):
        # x = (1-x)^{-1} (x - x^2) in the localization, so NF(x) = 0
        I = Ideal(xy, ["x - x^2"])
        basis = I.std()
        assert [g.leading_monomial() for g in basis] == [(1, 0)]
        assert normal_form(xy.var("x"), I).is_zero()

    def test_monomial_ideal_is_its_own_basis(self, xy):
        I = Ideal(xy, ["x^2", "y^2"])
        assert sorted(str(g) for g in I.std()) == ["x^2", "y^2"]

    def test_single_binomial(self, xyz):
        I = Ideal(xyz, ["z - x^2*y"])
        assert len(I.std()) == 1

    def test_buchberger_criterion(self, xy):
        # every S-polynomial of the returned basis reduces to zero
        from pushforward.ring import mono_lcm, mono_div
        I = Ideal(xy, ["x^2 - y^3", "x*y^2 - x^3", "y^4 - x^2*y"])
        basis = I.std()
        prepared = _prepare(basis)
        for i in range(len(prepared)):
            for j in range(i + 1, len(prepared)):
                a, b = prepared[i], prepared[j]
                lcm = mono_lcm(a.lm, b.lm)
                sa = a.poly * xy.monomial(mono_div(lcm, a.lm), 1 / a.lc)
                sb = b.poly * xy.monomial(mono_div(lcm, b.lm), 1 / b.lc)
                r = mora_normal_form(sa - sb, prepared, membership_only=True)
                assert r.is_zero()

    def test_membership_both_ways(self, xy):
        gens = ["x^2 + y^5", "x*y^2 - y^3"]
        I = Ideal(xy, gens)
        basis = I.std()
        for g in gens:
            assert I.contains(xy.poly(g))
        # recompute from a permuted generator list: same ideal both ways
        J = Ideal(xy, list(reversed(gens)))
        assert ideal_equal(I, J)
        for b in basis:
            assert J.contains(b)


class TestNormalForm:
    def test_crosscap_relation(self, xy):
        # phi(Y)*1 - phi(X1)*y with the zero ideal
        p = xy.poly("x*y") - xy.poly("x") * xy.var("y")
        assert normal_form(p, Ideal(xy, [])).is_zero()

    def test_unit_ideal(self, xy):
        assert normal_form(xy.poly("x^3 - y"), Ideal(xy, ["1"])).is_zero()

    def test_localized_membership(self, xy):
        assert normal_form(xy.var("x"), Ideal(xy, ["x - x^2"])).is_zero()

    def test_idempotent(self, xy):
        I = Ideal(xy, ["x^2 - y^3", "y^4"])
        p = xy.poly("x^3 + x*y + 2")
        r = normal_form(p, I)
        assert normal_form(r, I) == r

    @settings(max_examples=30, deadline=None)
    @given(st.data())
    def test_linear_on_zero_dimensional(self, data, xy):
        I = Ideal(xy, ["x^2 - y^3", "y^4"])
        mono = st.tuples(st.integers(0, 4), st.integers(0, 4))
        term = st.tuples(mono, st.integers(-3, 3))
        def mk(terms):
            acc = xy.zero()
            for m, c in terms:
                acc = acc + xy.monomial(m, c) if c else acc
            return acc
        p = mk(data.draw(st.lists(term, max_size=4)))
        q = mk(data.draw(st.lists(term, max_size=4)))
        a = QQ(data.draw(st.integers(-3, 3)))
        b = QQ(data.draw(st.integers(-3, 3)))
        lhs = normal_form(p * a + q * b, I)
        rhs = normal_form(p, I) * a + normal_form(q, I) * b
        assert lhs == rhs


class TestKbaseVdim:
    def test_crosscap_pullback(self, xy):
        qb = kbase(Ideal(xy, ["x", "y^2"]))
        assert qb.finite_flag
        assert [str(p) for p in qb.polynomials()] == ["1", "y"]

    def test_square_staircase(self, xy):
        qb = kbase(Ideal(xy, ["x^2", "y^2"]))
        assert [str(p) for p in qb.polynomials()] == ["1", "x", "y", "x*y"]

    def test_unit_ideal_empty(self, xy):
        qb = kbase(Ideal(xy, ["1"]))
        assert qb.finite_flag and len(qb) == 0
        assert vdim(Ideal(xy, ["1"])) == 0

    def test_vdim_point(self, xy):
        assert vdim(Ideal(xy, ["x", "y"])) == 1

    def test_vdim_fat_point(self, xy):
        assert vdim(Ideal(xy, ["x^2", "x*y", "y^2"])) == 3

    def test_vdim_staircase_count(self, xy):
        # staircase enumeration oracle: 2 x 3 box
        brute = {
            (a, b)
            for a in range(2)
            for b in range(3)
        }
        I = Ideal(xy, ["x^2", "y^3"])
        assert vdim(I) == len(brute) == 6
        assert set(kbase(I).monomials) == brute

    def test_infinite(self, xy):
        assert vdim(Ideal(xy, ["x*y"])) is INFINITE
        assert not kbase(Ideal(xy, ["x*y"])).finite_flag

    def test_vdim_matches_kbase_length(self, xy):
        for gens in (["x^3", "y^2"], ["x - x^2", "y^5"], ["x + y"]):
            I = Ideal(xy, gens)
            d = vdim(I)
            if d is INFINITE:
                continue
            assert d == len(kbase(I))

    def test_localized_curve_selection(self, xy):
        # x - x^2 generates <x> locally: staircase in 1 effective variable
        assert vdim(Ideal(xy, ["x - x^2", "y^3"])) == 3


class TestIdealOps:
    def test_quotient_basic(self, xy):
        q = ideal_quotient(Ideal(xy, ["x^2"]), Ideal(xy, ["x"]))
        assert ideal_equal(q, Ideal(xy, ["x"]))

    def test_intersect_basic(self, xy):
        i = ideal_intersect(Ideal(xy, ["x"]), Ideal(xy, ["y"]))
        assert ideal_equal(i, Ideal(xy, ["x*y"]))

    def test_sum_and_product(self, xy):
        a = Ideal(xy, ["x"])
        b = Ideal(xy, ["y"])
        assert ideal_equal(ideal_sum(a, b), Ideal(xy, ["x", "y"]))
        assert ideal_equal(ideal_product(a, b), Ideal(xy, ["x*y"]))

    def test_power(self, xy):
        p = ideal_power(Ideal(xy, ["x", "y"]), 2)
        assert ideal_equal(p, Ideal(xy, ["x^2", "x*y", "y^2"]))

    def test_quotient_by_unit_ideal(self, xy):
        j = Ideal(xy, ["x^2", "x*y"])
        q = ideal_quotient(j, Ideal(xy, ["1"]))
        assert ideal_equal(q, j)

    def test_quotient_product_contained(self, xy):
        # product(quotient(I, J), J) is contained in I
        I = Ideal(xy, ["x^2*y - y^3", "x^3"])
        J = Ideal(xy, ["x", "y^2"])
        q = ideal_quotient(I, J)
        prod = ideal_product(q, J)
        assert ideal_contains(I, prod)

    def test_eliminate_graph(self, xy):
        # image of t -> (t^2, t^3): eliminate the source variable
        ctx = RingContext.local(("t", "X", "Y"))
        I = Ideal(ctx, ["X - t^2", "Y - t^3"])
        img = eliminate(I, ["t"])
        expect = Ideal(img.context, ["Y^2 - X^3"])
        assert ideal_equal(img, expect)

    def test_intersect_is_contained_in_both(self, xy):
        a = Ideal(xy, ["x^2", "y"])
        b = Ideal(xy, ["x - y^2"])
        i = ideal_intersect(a, b)
        assert ideal_contains(a, i)
        assert ideal_contains(b, i)


class TestExactDivide:
    def test_divides(self, xy):
        p = xy.poly("(x + y^2)*(x^2 - y)")
        assert exact_divide(p, xy.poly("x + y^2")) == xy.poly("x^2 - y")

    def test_rejects_nondivisible(self, xy):
        from pushforward import ExactDivisionError
        with pytest.raises(ExactDivisionError):
            exact_divide(xy.poly("x^2 + y"), xy.poly("x + 1"))


class TestTruncatedNormalForm:
    def test_matches_membership_on_zero_dim(self, xy):
        I = Ideal(xy, ["x^2 - y^3", "y^4"])
        reducers = _prepare(I.std())
        p = xy.poly("x^2")  # congruent to y^3
        r = truncated_normal_form(p, reducers, cutoff=vdim(I) + 1)
        assert r == xy.poly("y^3")

    def test_content_normalized(self, xy):
        p = xy.poly("4*x^2 - 6*y")
        q = content_normalized(p)
        assert q == xy.poly("3*y - 2*x^2") or q == xy.poly("2*x^2 - 3*y")
        # leading coefficient positive
        assert q.leading_coeff() > 0
