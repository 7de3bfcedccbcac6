import random

import pytest

from wildcomp import (CollisionTag, DegreeMismatch, MultiplyParams,
                      SimplyParams, brute_force_decompositions, build_M,
                      build_S, classify, count_roots_in_field,
                      decompositions_S, enumerate_decompositions,
                      identify_multiply, identify_simply, original_shift)
from wildcomp.identify import _t_poly

from conftest import F, MO, random_monic_original


def random_simply_params(rng, spec, r):
    divisors = [d for d in range(1, r) if (r - 1) % d == 0]
    return SimplyParams(spec.elem(rng.randrange(1, spec.q)),
                        spec.elem(rng.randrange(1, spec.q)),
                        rng.randrange(2), rng.choice(divisors), r)


def random_multiply_params(rng, spec, r):
    choices = [m for m in range(2, r - 1) if m % spec.p]
    while True:
        b = spec.elem(rng.randrange(1, spec.q))
        a = spec.elem(rng.randrange(1, spec.q))
        if a != b ** r:
            return MultiplyParams(a, b, rng.choice(choices), r)


class TestIdentifySimply:
    def test_char3_example(self):
        got = identify_simply(MO(F(3), "x^9+x^5+x"), 3)
        assert got is not None
        assert (got.k, got.u.val, got.s.val, got.eps, got.m, got.w.val) == \
            (2, 2, 1, 0, 2, 0)

    def test_pure_power_fails(self):
        assert identify_simply(MO(F(2), "x^4"), 2) is None

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            identify_simply(MO(F(2), "x^4"), 4)

    @pytest.mark.parametrize("spec,r", [(F(2), 2), (F(2, 2), 2), (F(2, 3), 2),
                                        (F(3), 3), (F(3, 2), 3), (F(5), 5)])
    def test_round_trip_exhaustive_all_tuples_and_shifts(self, spec, r):
        import itertools
        divisors = [d for d in range(1, r) if (r - 1) % d == 0]
        for uv, sv, eps, m in itertools.product(range(1, spec.q),
                                                range(1, spec.q),
                                                (0, 1), divisors):
            params = SimplyParams(spec.elem(uv), spec.elem(sv), eps, m, r)
            base = build_S(params)
            for wv in range(spec.q):
                w = spec.elem(wv)
                f = original_shift(base, w)
                got = identify_simply(f, r)
                assert got is not None, (params, w)
                rebuilt = original_shift(
                    build_S(SimplyParams(got.u, got.s, got.eps, got.m, r)),
                    got.w)
                assert rebuilt == f, (params, w)

    @pytest.mark.parametrize("spec,r", [(F(2, 2), 2), (F(2, 3), 2),
                                        (F(2, 3), 8), (F(3, 2), 3),
                                        (F(3, 3), 3), (F(5, 2), 5)])
    def test_round_trip_random(self, spec, r):
        rng = random.Random(hash((spec.q, r)) & 0xFFFF)
        for _ in range(30):
            params = random_simply_params(rng, spec, r)
            w = spec.elem(rng.randrange(spec.q))
            f = original_shift(build_S(params), w)
            got = identify_simply(f, r)
            assert got is not None, (params, w)
            rebuilt = original_shift(
                build_S(SimplyParams(got.u, got.s, got.eps, got.m, r)), got.w)
            assert rebuilt == f

    def test_eps0_normalization_preserves_k(self):
        # scaling (u, s) -> (u s^(r+1), 1) is a bijection on the root set
        rng = random.Random(9)
        for spec, r in [(F(3, 2), 3), (F(5), 5), (F(2, 3), 2)]:
            for _ in range(25):
                u = spec.elem(rng.randrange(1, spec.q))
                s = spec.elem(rng.randrange(1, spec.q))
                k1 = count_roots_in_field(_t_poly(spec, u.val, 0, r))
                k2 = count_roots_in_field(
                    _t_poly(spec, (u * s ** (r + 1)).val, 0, r))
                assert k1 == k2

    def test_rejects_random_noise(self, census_reports):
        rng = random.Random(23)
        report = census_reports[(3, 3)]
        for _ in range(300):
            f = random_monic_original(rng, F(3), 9)
            got = identify_simply(f, 3)
            if got is not None and got.k >= 2:
                key = bytes(f.poly.encodings[1:9])
                assert report.pair_counts.get(key, 0) >= 2


class TestIdentifyMultiply:
    def test_f5_example(self):
        f, _ = build_M(MultiplyParams(F(5).elem(2), F(5).one, 2, 5))
        got = identify_multiply(f, 5)
        assert got is not None
        rebuilt = original_shift(
            build_M(MultiplyParams(got.a, got.b, got.m, 5))[0], got.w)
        assert rebuilt == f
        assert got.m == 2  # min-rule normalizes m below r/2

    def test_vanishing_derivative_fails(self):
        assert identify_multiply(MO(F(5), "x^25"), 5) is None
        assert identify_multiply(MO(F(5), "x^25+x^5"), 5) is None

    def test_small_r_always_fails(self):
        assert identify_multiply(MO(F(2), "x^4+x^2+x"), 2) is None
        assert identify_multiply(MO(F(3), "x^9+x^5+x"), 3) is None

    def test_coincident_a_pair(self):
        # 2a = b^r makes the final quadratic collapse to a double root;
        # the single candidate must still be tried
        spec = F(5)
        for bv in range(1, 5):
            b = spec.elem(bv)
            a = (b ** 5) / spec.scalar(2)
            params = MultiplyParams(a, b, 2, 5)
            assert params.a_star == a
            f, _ = build_M(params)
            got = identify_multiply(f, 5)
            assert got is not None, params
            rebuilt = original_shift(
                build_M(MultiplyParams(got.a, got.b, got.m, 5))[0], got.w)
            assert rebuilt == f

    @pytest.mark.parametrize("spec,r", [(F(5), 5), (F(7), 7)])
    def test_round_trip_exhaustive_all_tuples_and_shifts(self, spec, r):
        choices = [m for m in range(2, r - 1) if m % spec.p]
        for bv in range(1, spec.q):
            b = spec.elem(bv)
            br = b ** r
            for av in range(1, spec.q):
                a = spec.elem(av)
                if a == br:
                    continue
                for m in choices:
                    base, _ = build_M(MultiplyParams(a, b, m, r))
                    for wv in range(spec.q):
                        w = spec.elem(wv)
                        f = original_shift(base, w)
                        got = identify_multiply(f, r)
                        assert got is not None, (a, b, m, w)
                        rebuilt = original_shift(
                            build_M(MultiplyParams(got.a, got.b, got.m, r))[0],
                            got.w)
                        assert rebuilt == f, (a, b, m, w)

    @pytest.mark.parametrize("spec,r", [(F(5), 5), (F(5, 2), 5), (F(7), 7),
                                        (F(2, 3), 8), (F(3, 2), 9)])
    def test_round_trip_random(self, spec, r):
        rng = random.Random(hash((spec.q, r)) & 0xFFFF)
        for _ in range(25):
            params = random_multiply_params(rng, spec, r)
            w = spec.elem(rng.randrange(spec.q))
            f = original_shift(build_M(params)[0], w)
            got = identify_multiply(f, r)
            assert got is not None, (params, w)
            rebuilt = original_shift(
                build_M(MultiplyParams(got.a, got.b, got.m, r))[0], got.w)
            assert rebuilt == f

    def test_rejects_random_noise(self, census_reports):
        rng = random.Random(29)
        report = census_reports[(5, 5)]
        for _ in range(150):
            f = random_monic_original(rng, F(5), 25)
            got = identify_multiply(f, 5)
            if got is not None:
                key = bytes(f.poly.encodings[1:25])
                assert report.pair_counts.get(key, 0) >= 2


class TestClassify:
    def test_examples(self):
        assert classify(MO(F(2), "x^4+x^2")).tag is CollisionTag.FROBENIUS
        cls = classify(MO(F(3), "x^9+x^5+x"))
        assert cls.tag is CollisionTag.SIMPLY and cls.simply.k == 2
        assert classify(MO(F(2), "x^4")).tag is CollisionTag.NONE

    def test_multiply_tag(self):
        f, _ = build_M(MultiplyParams(F(5).elem(2), F(5).one, 2, 5))
        shifted = original_shift(f, F(5).elem(3))
        cls = classify(shifted)
        assert cls.tag is CollisionTag.MULTIPLY

    def test_simply_with_small_T_is_not_a_collision_class(self):
        # S(1,1,1,1) over F_2 has an empty root set: no 2-collision
        cls = classify(MO(F(2), "x^4+x^2+x"))
        assert cls.tag is CollisionTag.NONE

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            classify(MO(F(2), "x^8"))


class TestEnumerateDecompositions:
    def test_frobenius_case(self):
        res = enumerate_decompositions(MO(F(2), "x^4+x^2"))
        assert res.complete and res.collision.k == 2
        assert {(str(d.g), str(d.h)) for d in res.collision} == {
            ("x^2", "x^2+x"), ("x^2+x", "x^2")}

    def test_simply_case_matches_construction(self):
        res = enumerate_decompositions(MO(F(3), "x^9+x^5+x"))
        base = decompositions_S(SimplyParams(F(3).elem(2), F(3).one, 0, 2, 3))
        assert res.collision.decomps == base.decomps

    def test_none_case_brute_force(self):
        res = enumerate_decompositions(MO(F(2), "x^4+x^2+x"))
        assert res.complete and res.collision.k == 0
        res = enumerate_decompositions(MO(F(2), "x^4"))  # x^2 o x^2 only
        assert res.complete and res.collision.k == 1

    def test_agrees_with_brute_force(self):
        rng = random.Random(31)
        for spec in (F(2), F(3), F(2, 2)):
            p = spec.p
            for _ in range(40):
                f = random_monic_original(rng, spec, p * p)
                res = enumerate_decompositions(f)
                assert res.complete
                assert res.collision.decomps == \
                    frozenset(brute_force_decompositions(f))

    def test_fallback_skipped_flag(self):
        spec = F(5)
        f = MO(spec, "x^25")
        res = enumerate_decompositions(f, brute_force_limit=3)
        assert not res.complete and res.collision.k == 0
