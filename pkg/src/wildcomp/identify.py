"""Parameter recovery and collision classification at degree r^2.

``identify_simply`` and ``identify_multiply`` recover construction
parameters (and the shift) from a raw polynomial, returning None on any
failure path; a mandatory final reconstruction test keeps them sound on
arbitrary input.  ``classify`` combines them with the Frobenius test into
the full trichotomy at degree p^2, and ``enumerate_decompositions`` lists
every degree-p right component of a classified polynomial.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

from .constructions import (MultiplyParams, SimplyParams, build_M, build_S,
                            decompositions_S, frobenius_map,
                            prime_power_exponent)
from .decomp_core import (Collision, Decomposition, DegreeMismatch,
                          MonicOriginal, left_divide, original_shift,
                          shift_decomposition)
from .gf import FieldElem, solve_quadratic
from .polyring import (NEG_INFINITY, Poly, count_roots_in_field, derivative,
                       exact_div, gcd, max_power_dividing, poly_pth_root,
                       second_degree)

# Right-component spaces larger than this are not brute-forced.
BRUTE_FORCE_FIELD_LIMIT = 81
BRUTE_FORCE_SPACE_LIMIT = 1 << 13


class CollisionTag(str, Enum):
    FROBENIUS = "F"
    SIMPLY = "S"
    MULTIPLY = "M"
    NONE = "none"


class SimplyMatch(NamedTuple):
    k: int
    u: FieldElem
    s: FieldElem
    eps: int
    m: int
    w: FieldElem


class MultiplyMatch(NamedTuple):
    a: FieldElem
    b: FieldElem
    m: int
    w: FieldElem


@dataclass(frozen=True)
class CollisionClass:
    tag: CollisionTag
    simply: Optional[SimplyMatch] = None
    multiply: Optional[MultiplyMatch] = None


class EnumeratedDecompositions(NamedTuple):
    collision: Collision
    complete: bool


def _t_poly(spec, u: int, eps: int, r: int) -> Poly:
    """y^(r+1) - eps*u*y + u as a polynomial over spec."""
    enc = [0] * (r + 2)
    enc[-1] = 1
    enc[0] = u
    if eps:
        enc[1] = spec.neg_i(u)
    return Poly(spec, enc)


def identify_simply(f: MonicOriginal, r: int) -> Optional[SimplyMatch]:
    """Recover (k, u, s, eps, m, w) with f = S(u,s,eps,m)^(w), or None.

    Branches on whether r divides the second degree, reads l and m off it,
    then s, u and w off three coefficients; a full rebuild of the candidate
    is the final arbiter.  k counts the roots of y^(r+1) - eps*u*y + u.
    """
    spec = f.spec
    prime_power_exponent(r, spec.p)
    if f.degree != r * r:
        raise DegreeMismatch(f"expected degree {r * r}, got {f.degree}")
    d2 = second_degree(f.poly)
    if d2 == NEG_INFINITY:
        return None
    d2 = int(d2)
    n = r * r
    if d2 % r == 0:
        eps = 1
        ell, rem = divmod(n - d2, r)
        if rem or ell == 0 or (r - 1) % ell:
            return None
        m = (r - 1) // ell
        denom = f.poly.coefficient_encoding(n - ell * r)
        if denom == 0:
            return None
        s_enc = spec.neg_i(spec.mul_i(
            f.poly.coefficient_encoding(n - ell * r - ell), spec.inv_i(denom)))
        if s_enc == 0:
            return None
        u_enc = spec.mul_i(spec.mul_i(ell % spec.p, denom),
                           spec.inv_i(spec.pow_i(s_enc, r)))
    else:
        eps = 0
        ell, rem = divmod(n - d2, r + 1)
        if rem or ell == 0 or (r - 1) % ell:
            return None
        m = (r - 1) // ell
        s_enc = 1
        u_enc = spec.neg_i(spec.mul_i(
            ell % spec.p, f.poly.coefficient_encoding(n - ell * r - ell)))
    if u_enc == 0 or s_enc == 0:
        return None
    if m == 1:
        w_enc = 0
    else:
        denom = f.poly.coefficient_encoding(n - ell * r - ell)
        if denom == 0:
            return None
        w_enc = spec.mul_i(
            m % spec.p,
            spec.mul_i(f.poly.coefficient_encoding(n - ell * r - ell - 1),
                       spec.inv_i(denom)))
    u, s, w = spec.elem(u_enc), spec.elem(s_enc), spec.elem(w_enc)
    params = SimplyParams(u, s, eps, m, r)
    if original_shift(build_S(params), w) != f:
        return None
    k = count_roots_in_field(_t_poly(spec, u_enc, eps, r))
    return SimplyMatch(k, u, s, eps, m, w)


def _p_valuation(i: int, p: int) -> int:
    v = 0
    while i % p == 0:
        i //= p
        v += 1
    return v


def identify_multiply(f: MonicOriginal, r: int) -> Optional[MultiplyMatch]:
    """Recover (a, b, m, w) with f = M(a,b,m)^(w), or None.

    Works down the derivative: its squarefree part isolates the quadratic
    x(x-b) shifted by w, a power count recovers m, and the two candidate
    values of a are the roots of y^2 - b^r y - m^(-2) b^(r-1) lc(f').  Both
    candidates are checked by full reconstruction.
    """
    spec = f.spec
    p = spec.p
    prime_power_exponent(r, p)
    if f.degree != r * r:
        raise DegreeMismatch(f"expected degree {r * r}, got {f.degree}")
    if r < 5:
        # no m with 1 < m < r-1 and p not dividing m exists
        return None
    fprime = derivative(f.poly)
    if fprime.is_zero:
        return None
    lcf = fprime.lc()
    f0 = fprime * lcf.inv()
    if p == 2:
        root = poly_pth_root(f0, 1)
        if root is None:
            return None
        f0 = root
    f1 = exact_div(f0, gcd(f0, derivative(f0)))
    if f1 is None or not 4 <= f1.degree <= r + 2:
        return None
    k = max_power_dividing(f0, f1)
    if p == 2:
        k *= 2
    m = min(k + 1, r - k - 1)
    if m < 2:
        return None
    if p == 2 or (m * m + 1) % p:
        big = gcd(f1 ** (r - m), f0)
        small = gcd(f1 ** (r - m - 1), f0)
        f2 = exact_div(big, small)
        if f2 is None:
            return None
    else:
        small = gcd(f1 ** (r - m - 1), f0)
        f3 = exact_div(f0, small)
        if f3 is None:
            return None
        exps = [i for i, c in enumerate(f3.encodings) if c and i]
        if not exps:
            return None
        ell = min(_p_valuation(i, p) for i in exps)
        f3 = poly_pth_root(f3, ell)
        if f3 is None:
            return None
        f2 = exact_div(f3, gcd(f3, derivative(f3)))
        if f2 is None:
            return None
    if f2.degree != 2:
        return None
    roots = solve_quadratic(f2.coefficient(2), f2.coefficient(1),
                            f2.coefficient(0))
    if roots is None:
        return None
    x1, x2 = roots
    b = x2 - x1
    w = -x1
    if m % p == 0:
        return None  # m^(-2) undefined
    minv = spec.scalar(m).inv()
    br = b ** r
    c1 = -br
    c0 = -(minv * minv) * b ** (r - 1) * lcf
    candidates: list[FieldElem]
    if p > 2:
        disc = c1 * c1 - spec.scalar(4) * c0
        if disc.val == 0:
            # double root b^r / 2: the two admissible a coincide (a = a*)
            candidates = [br / spec.scalar(2)]
        else:
            pair = solve_quadratic(spec.one, c1, c0)
            if pair is None:
                return None
            candidates = list(pair)
    else:
        pair = solve_quadratic(spec.one, c1, c0)
        if pair is None:
            return None
        candidates = list(pair)
    for a in candidates:
        if a.val == 0 or a == br:
            continue
        cand, _ = build_M(MultiplyParams(a, b, m, r))
        if original_shift(cand, w) == f:
            return MultiplyMatch(a, b, m, w)
    return None


def classify(f: MonicOriginal) -> CollisionClass:
    """Collision determination at degree p^2.

    Tag F for f in F[x^p] minus x^(p^2); else S when simple identification
    succeeds with k >= 2; else M when multiple identification succeeds;
    else none (no 2-collision).
    """
    spec = f.spec
    p = spec.p
    if f.degree != p * p:
        raise DegreeMismatch(f"classification needs degree {p * p}")
    if derivative(f.poly).is_zero and f.poly != Poly.monomial(spec, p * p):
        return CollisionClass(CollisionTag.FROBENIUS)
    sm = identify_simply(f, p)
    if sm is not None and sm.k >= 2:
        return CollisionClass(CollisionTag.SIMPLY, simply=sm)
    mm = identify_multiply(f, p)
    if mm is not None:
        return CollisionClass(CollisionTag.MULTIPLY, multiply=mm)
    return CollisionClass(CollisionTag.NONE)


def _all_monic_originals(spec, degree: int):
    for inner in itertools.product(range(spec.q), repeat=degree - 1):
        yield MonicOriginal(Poly(spec, (0,) + inner + (1,)))


def brute_force_decompositions(f: MonicOriginal) -> list[Decomposition]:
    """All (g, h) with f = g(h) and deg h = p, by scanning right components."""
    spec = f.spec
    p = spec.p
    out = []
    for h in _all_monic_originals(spec, p):
        g = left_divide(f, h)
        if g is not None and g.degree >= 2:
            out.append(Decomposition(g, h))
    return out


def enumerate_decompositions(
        f: MonicOriginal, *,
        brute_force_limit: int = BRUTE_FORCE_FIELD_LIMIT
) -> EnumeratedDecompositions:
    """The complete set of degree-p decompositions of f.

    Classified polynomials are answered from their construction (2 pairs
    for F and M, one per root t for S); unclassified ones fall back to a
    brute-force scan of all q^(p-1) right components.  ``complete`` is
    False only when that scan was skipped because the field is too large.
    """
    spec = f.spec
    p = spec.p
    cls = classify(f)
    if cls.tag is CollisionTag.FROBENIUS:
        h = poly_pth_root(f.poly, 1)
        assert h is not None
        hm = MonicOriginal(h)
        xp = MonicOriginal(Poly.monomial(spec, p))
        pairs = {Decomposition(xp, hm),
                 Decomposition(MonicOriginal(frobenius_map(h, p)), xp)}
        return EnumeratedDecompositions(Collision(f, frozenset(pairs)), True)
    if cls.tag is CollisionTag.SIMPLY:
        sm = cls.simply
        base = decompositions_S(SimplyParams(sm.u, sm.s, sm.eps, sm.m, p))
        pairs = {shift_decomposition(d, sm.w) for d in base}
        return EnumeratedDecompositions(Collision(f, frozenset(pairs)), True)
    if cls.tag is CollisionTag.MULTIPLY:
        mm = cls.multiply
        _, base = build_M(MultiplyParams(mm.a, mm.b, mm.m, p))
        pairs = {shift_decomposition(d, mm.w) for d in base}
        return EnumeratedDecompositions(Collision(f, frozenset(pairs)), True)
    if spec.q > brute_force_limit or spec.q ** (p - 1) > BRUTE_FORCE_SPACE_LIMIT:
        return EnumeratedDecompositions(Collision(f, frozenset()), False)
    pairs = brute_force_decompositions(f)
    return EnumeratedDecompositions(Collision(f, frozenset(pairs)), True)
