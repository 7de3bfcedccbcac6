import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wildcomp import (ConstantBase, DivisionByZero, NEG_INFINITY, NotMonic,
                      Poly, ZeroPolynomial, compose, count_roots_in_field,
                      derivative, divrem, evaluate, exact_div, format_poly,
                      gcd, is_squarefree, max_power_dividing, modexp_x_to_q,
                      parse_poly, poly_pth_root, second_degree,
                      taylor_expansion)
from wildcomp.polyring import KARATSUBA_THRESHOLD, _mul_raw, _mul_school

from conftest import F, P

FIELDS = [F(2), F(3), F(5), F(2, 2), F(3, 2), F(2, 3)]


def polys(min_len=0, max_len=9):
    return st.sampled_from(FIELDS).flatmap(
        lambda spec: st.lists(st.integers(0, spec.q - 1),
                              min_size=min_len, max_size=max_len)
        .map(lambda c: Poly(spec, c)))


def poly_pairs(max_len=9):
    return st.sampled_from(FIELDS).flatmap(
        lambda spec: st.tuples(
            st.lists(st.integers(0, spec.q - 1), max_size=max_len),
            st.lists(st.integers(0, spec.q - 1), max_size=max_len),
        ).map(lambda t: (Poly(spec, t[0]), Poly(spec, t[1]))))


def poly_triples(max_len=6):
    return st.sampled_from(FIELDS).flatmap(
        lambda spec: st.tuples(
            *[st.lists(st.integers(0, spec.q - 1), max_size=max_len)] * 3
        ).map(lambda t: tuple(Poly(spec, c) for c in t)))


class TestMul:
    def test_freshmans_dream(self):
        assert P(F(2), "x+1") * P(F(2), "x+1") == P(F(2), "x^2+1")

    def test_f4_scalar_coefficient(self):
        spec = F(2, 2)
        assert P(spec, "x^2+2") * P(spec, "x") == P(spec, "x^3+2*x")

    def test_product_of_shifted_squares_over_f3(self):
        spec = F(3)
        a = P(spec, "x") * P(spec, "x+2") ** 2  # x(x-1)^2
        b = P(spec, "x") * P(spec, "x+1") ** 2  # x(x-2)^2
        out = [0] * (a.degree + b.degree + 1)
        for i, ai in enumerate(a.encodings):
            for j, bj in enumerate(b.encodings):
                out[i + j] = spec.add_i(out[i + j], spec.mul_i(ai, bj))
        assert a * b == Poly(spec, out)
        assert (a * b).encodings[6] == 1  # leading term x^6

    @given(poly_triples())
    def test_ring_laws(self, fgh):
        f, g, h = fgh
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h

    def test_karatsuba_matches_schoolbook(self):
        rng = random.Random(5)
        spec = F(3, 2)
        n = 3 * KARATSUBA_THRESHOLD
        for _ in range(10):
            a = [rng.randrange(spec.q) for _ in range(n)] + [1]
            b = [rng.randrange(spec.q) for _ in range(n - 7)] + [1]
            assert _mul_raw(spec, a, b) == _mul_school(spec, a, b)


class TestDivRem:
    def test_exact(self):
        q, r = divrem(P(F(2), "x^3"), P(F(2), "x"))
        assert (q, r) == (P(F(2), "x^2"), Poly.zero(F(2)))

    def test_with_remainder(self):
        q, r = divrem(P(F(2), "x^3+x+1"), P(F(2), "x^2+1"))
        assert q == P(F(2), "x") and r == Poly.one(F(2))

    def test_smaller_dividend(self):
        a, b = P(F(5), "x+1"), P(F(5), "x^3")
        assert divrem(a, b) == (Poly.zero(F(5)), a)

    def test_zero_divisor(self):
        with pytest.raises(DivisionByZero):
            divrem(P(F(5), "x"), Poly.zero(F(5)))

    @given(poly_pairs())
    def test_division_identity(self, ab):
        a, b = ab
        if b.is_zero:
            return
        q, r = divrem(a, b)
        assert q * b + r == a
        assert r.degree < b.degree


class TestExactDiv:
    def test_examples(self):
        assert exact_div(P(F(5), "x^2+4"), P(F(5), "x+4")) == P(F(5), "x+1")
        assert exact_div(P(F(5), "x^2+1"), P(F(5), "x")) is None

    @given(poly_pairs(max_len=6))
    def test_recovers_factor(self, fg):
        f, g = fg
        if g.is_zero:
            return
        assert exact_div(f * g, g) == f


class TestGcd:
    def test_gcd_zero_zero_is_zero(self):
        assert gcd(Poly.zero(F(3)), Poly.zero(F(3))).is_zero

    def test_common_factor(self):
        assert gcd(P(F(5), "x^2+4"), P(F(5), "x+4")) == P(F(5), "x+4")

    def test_root_gcd_degree(self):
        spec = F(3)
        f = P(spec, "x^4+2")  # roots 1 and 2
        x3 = modexp_x_to_q(f, 3)
        assert gcd(x3 - Poly.x(spec), f).degree == 2

    @given(poly_pairs(max_len=7))
    def test_divides_both_and_monic(self, ab):
        a, b = ab
        g = gcd(a, b)
        if g.is_zero:
            assert a.is_zero and b.is_zero
        else:
            assert g.is_monic()
            assert exact_div(a, g) is not None or a.is_zero
            assert exact_div(b, g) is not None or b.is_zero


class TestDerivative:
    def test_pth_power_vanishes(self):
        assert derivative(P(F(3), "x^3")).is_zero
        assert derivative(P(F(2), "x^2")).is_zero

    def test_termwise(self):
        assert derivative(P(F(3), "x^9+x^5+x")) == P(F(3), "2*x^4+1")

    def test_constant(self):
        assert derivative(P(F(5), "3")).is_zero

    @given(poly_pairs(max_len=6))
    def test_leibniz(self, fg):
        f, g = fg
        assert derivative(f * g) == derivative(f) * g + f * derivative(g)


class TestEvaluate:
    def test_examples(self):
        assert evaluate(P(F(3), "x^2+1"), F(3).one).val == 2
        f = P(F(5), "x^3+2*x+4")
        assert evaluate(f, F(5).zero).val == 4

    @given(polys(), st.integers(min_value=0))
    def test_against_monomial_sum(self, f, seed):
        a = f.spec.elem(seed % f.spec.q)
        total = f.spec.zero
        for i, c in enumerate(f.coeffs):
            total = total + c * a ** i
        assert evaluate(f, a) == total


class TestCompose:
    def test_frobenius_commutation(self):
        spec = F(2)
        h = P(spec, "x^2+x")
        assert compose(P(spec, "x^2"), h) == P(spec, "x^4+x^2")
        assert compose(h, P(spec, "x^2")) == P(spec, "x^4+x^2")

    def test_identity(self):
        f = P(F(5), "x^3+2*x")
        assert compose(f, Poly.x(F(5))) == f

    @given(poly_pairs(max_len=5))
    def test_degree_law(self, gh):
        g, h = gh
        if g.degree < 1 or h.degree < 1:
            return
        assert compose(g, h).degree == g.degree * h.degree

    @given(poly_triples(max_len=4))
    @settings(deadline=None)
    def test_associativity(self, abc):
        a, b, c = abc
        if b.degree < 1 or c.degree < 1:
            return
        assert compose(compose(a, b), c) == compose(a, compose(b, c))

    @given(polys(max_len=8), st.integers(min_value=0), st.integers(min_value=1))
    def test_linear_path_matches_horner(self, f, w, u):
        spec = f.spec
        lin = Poly(spec, (w % spec.q, 1 + u % (spec.q - 1) if spec.q > 1 else 1))
        acc = Poly.zero(spec)
        power = Poly.one(spec)
        for c in f.coeffs:
            acc = acc + c * power
            power = power * lin
        assert compose(f, lin) == acc


class TestModExp:
    def test_examples(self):
        assert modexp_x_to_q(P(F(2), "x^2+1"), 4) == Poly.one(F(2))
        # x mod (x - a) is the constant a; Fermat keeps it fixed
        assert modexp_x_to_q(P(F(3), "x+2"), 3) == Poly.one(F(3))
        assert modexp_x_to_q(P(F(3), "x^4+2*x+1"), 3) == P(F(3), "x^3")

    def test_constant_modulus_rejected(self):
        with pytest.raises(ConstantBase):
            modexp_x_to_q(Poly.one(F(2)), 4)


class TestCountRoots:
    def test_examples(self):
        assert count_roots_in_field(P(F(2), "x^3+x+1")) == 0
        assert count_roots_in_field(P(F(3), "x^4+2")) == 2
        assert count_roots_in_field(P(F(2, 2), "x^3+1")) == 3

    def test_zero_polynomial(self):
        with pytest.raises(ZeroPolynomial):
            count_roots_in_field(Poly.zero(F(2)))

    @pytest.mark.parametrize("spec", [F(2), F(3), F(2, 2)])
    def test_exhaustive_agreement_all_small_polys(self, spec):
        import itertools
        for deg in range(1, 5):
            for tail in itertools.product(range(spec.q), repeat=deg):
                f = Poly(spec, tail[:-1] + (tail[-1] or 1,))
                if f.degree < 1:
                    continue
                brute = sum(1 for a in spec if evaluate(f, a).val == 0)
                assert count_roots_in_field(f) == brute


class TestTaylor:
    def test_square_of_base(self):
        spec = F(2)
        base = P(spec, "x^2+x")
        digits = taylor_expansion(base * base, base)
        assert [d.encodings for d in digits] == [(), (), (1,)]

    def test_cubic_in_x_squared(self):
        digits = taylor_expansion(P(F(2), "x^3+x+1"), P(F(2), "x^2"))
        assert [format_poly(d) for d in digits] == ["x+1", "x"]

    def test_constant_base_rejected(self):
        with pytest.raises(ConstantBase):
            taylor_expansion(P(F(2), "x"), Poly.one(F(2)))

    @given(poly_pairs(max_len=14))
    def test_round_trip(self, fb):
        f, base = fb
        if base.degree < 1:
            return
        digits = taylor_expansion(f, base)
        acc = Poly.zero(f.spec)
        power = Poly.one(f.spec)
        for d in digits:
            assert d.degree < base.degree
            acc = acc + d * power
            power = power * base
        assert acc == f


class TestMaxPower:
    def test_examples(self):
        assert max_power_dividing(P(F(2), "x^3+x^2"), P(F(2), "x")) == 2
        assert max_power_dividing(P(F(2), "x+1"), P(F(2), "x")) == 0

    @given(poly_pairs(max_len=5), st.integers(0, 4))
    def test_constructed_power(self, bu, k):
        base, u = bu
        if base.degree < 1 or u.is_zero:
            return
        if exact_div(u, base) is not None:
            return
        assert max_power_dividing(base ** k * u, base) == k


class TestPolyPthRoot:
    def test_examples(self):
        assert poly_pth_root(P(F(2), "x^4+x^2"), 1) == P(F(2), "x^2+x")
        assert poly_pth_root(P(F(3), "x^3"), 1) == P(F(3), "x")
        assert poly_pth_root(P(F(2), "x^2+x"), 1) is None

    @given(polys(max_len=5), st.integers(1, 2))
    def test_powers_back(self, g, l):
        step = g.spec.p ** l
        f = g ** step
        got = poly_pth_root(f, l)
        assert got == g


class TestSecondDegree:
    def test_examples(self):
        assert second_degree(P(F(2), "x^4")) == NEG_INFINITY
        assert second_degree(P(F(3), "x^9+x^5+x")) == 5
        spec = F(3)
        assert second_degree(P(spec, "x^9+x^3")) == 3

    def test_not_monic(self):
        with pytest.raises(NotMonic):
            second_degree(P(F(3), "2*x^2"))


class TestSquarefree:
    def test_examples(self):
        assert is_squarefree(P(F(2), "x^2+x"))
        assert not is_squarefree(P(F(2), "x^2"))
        assert not is_squarefree(P(F(3), "x^3+1"))  # (x+1)^3

    def test_pth_power_coefficients(self):
        # nonconstant members of F[x^p] are never squarefree
        assert not is_squarefree(P(F(3), "x^6+x^3+1"))


class TestTextForm:
    def test_canonical_printing(self):
        spec = F(3, 2)
        assert format_poly(P(spec, "x^9+x^5+x")) == "x^9+x^5+x"
        assert format_poly(Poly.zero(spec)) == "0"
        assert format_poly(Poly(spec, (2, 0, 1))) == "x^2+2"
        assert format_poly(Poly(spec, (0, 5))) == "5*x"

    def test_parse_any_order_and_duplicates(self):
        spec = F(3)
        assert parse_poly(spec, "x+x^9+x^5") == P(spec, "x^9+x^5+x")
        assert parse_poly(spec, "x+x+x") == Poly.zero(spec)

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_poly(F(3), "x^-1")
        with pytest.raises(ValueError):
            parse_poly(F(3), "7*x")  # encoding out of range

    @given(polys())
    def test_round_trip(self, f):
        assert parse_poly(f.spec, format_poly(f)) == f
