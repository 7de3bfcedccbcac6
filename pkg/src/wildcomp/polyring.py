"""Dense univariate polynomial arithmetic over F_q.

Coefficients are stored as integer field encodings (see :mod:`wildcomp.gf`)
with no trailing zeros; the zero polynomial is the empty tuple and its
degree is the sentinel ``NEG_INFINITY``.  All operations are exact.
"""

from __future__ import annotations

import re
from typing import Optional, Sequence, Union

from .gf import DivisionByZero, FieldElem, FieldSpec, MixedFields

NEG_INFINITY = float("-inf")

# Multiplications with both operands of at least this degree split via
# Karatsuba; below it schoolbook wins at desk scale.
KARATSUBA_THRESHOLD = 32


class ZeroPolynomial(Exception):
    pass


class ConstantBase(Exception):
    pass


class NotMonic(Exception):
    pass


Degree = Union[int, float]


class Poly:
    """Immutable dense polynomial; coefficient i is a field encoding."""

    __slots__ = ("spec", "_c")

    def __init__(self, spec: FieldSpec, encodings: Sequence[int] = ()):
        enc = list(encodings)
        while enc and enc[-1] == 0:
            enc.pop()
        self.spec = spec
        self._c = tuple(enc)

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, spec: FieldSpec) -> "Poly":
        return cls(spec)

    @classmethod
    def one(cls, spec: FieldSpec) -> "Poly":
        return cls(spec, (1,))

    @classmethod
    def x(cls, spec: FieldSpec) -> "Poly":
        return cls(spec, (0, 1))

    @classmethod
    def monomial(cls, spec: FieldSpec, i: int,
                 coeff: Optional[FieldElem] = None) -> "Poly":
        c = 1 if coeff is None else coeff.val
        return cls(spec, (0,) * i + (c,))

    @classmethod
    def constant(cls, c: FieldElem) -> "Poly":
        return cls(c.spec, (c.val,))

    @classmethod
    def from_coeffs(cls, spec: FieldSpec,
                    coeffs: Sequence[FieldElem]) -> "Poly":
        for c in coeffs:
            if c.spec != spec:
                raise MixedFields("coefficient from a different field")
        return cls(spec, tuple(c.val for c in coeffs))

    # -- basic queries --------------------------------------------------------

    @property
    def degree(self) -> Degree:
        return len(self._c) - 1 if self._c else NEG_INFINITY

    @property
    def encodings(self) -> tuple[int, ...]:
        return self._c

    @property
    def coeffs(self) -> tuple[FieldElem, ...]:
        return tuple(self.spec.elem(c) for c in self._c)

    @property
    def is_zero(self) -> bool:
        return not self._c

    def coefficient(self, i: int) -> FieldElem:
        return self.spec.elem(self._c[i] if 0 <= i < len(self._c) else 0)

    def coefficient_encoding(self, i: int) -> int:
        return self._c[i] if 0 <= i < len(self._c) else 0

    def lc(self) -> FieldElem:
        if not self._c:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.spec.elem(self._c[-1])

    def is_monic(self) -> bool:
        return bool(self._c) and self._c[-1] == 1

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Poly) and self._c == other._c
                and self.spec == other.spec)

    def __hash__(self) -> int:
        return hash((self.spec, self._c))

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r}, {self.spec})"

    def __bool__(self) -> bool:
        return bool(self._c)

    # -- arithmetic ------------------------------------------------------------

    def _same(self, other: "Poly") -> None:
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.spec != self.spec:
            raise MixedFields("polynomials over different fields")

    def __add__(self, other: "Poly") -> "Poly":
        self._same(other)
        return Poly(self.spec, _add_raw(self.spec, self._c, other._c))

    def __sub__(self, other: "Poly") -> "Poly":
        self._same(other)
        return Poly(self.spec, _sub_raw(self.spec, self._c, other._c))

    def __neg__(self) -> "Poly":
        neg = self.spec.neg_i
        return Poly(self.spec, tuple(neg(c) for c in self._c))

    def __mul__(self, other: Union["Poly", FieldElem]) -> "Poly":
        if isinstance(other, FieldElem):
            if other.spec != self.spec:
                raise MixedFields("scalar from a different field")
            return Poly(self.spec, _scale_raw(self.spec, self._c, other.val))
        self._same(other)
        return Poly(self.spec, _mul_raw(self.spec, self._c, other._c))

    def __rmul__(self, other: FieldElem) -> "Poly":
        return self.__mul__(other)

    def __pow__(self, e: int) -> "Poly":
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial exponent must be a non-negative integer")
        result = (1,)
        base = self._c
        spec = self.spec
        while e:
            if e & 1:
                result = _mul_raw(spec, result, base)
            e >>= 1
            if e:
                base = _mul_raw(spec, base, base)
        return Poly(spec, result)

    def __call__(self, a: FieldElem) -> FieldElem:
        return evaluate(self, a)

    def shift_up(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if not self._c:
            return self
        return Poly(self.spec, (0,) * k + self._c)


# ---------------------------------------------------------------------------
# Raw kernels on encoding tuples.  These also back the census hot loops.
# ---------------------------------------------------------------------------

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _add_raw(spec: FieldSpec, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    add = spec.add_i
    out = list(a)
    for i, c in enumerate(b):
        if c:
            out[i] = add(out[i], c)
    return _trim(out)


def _sub_raw(spec: FieldSpec, a: Sequence[int], b: Sequence[int]) -> list[int]:
    sub = spec.sub_i
    out = list(a)
    if len(out) < len(b):
        out.extend([0] * (len(b) - len(out)))
    for i, c in enumerate(b):
        if c:
            out[i] = sub(out[i], c)
    return _trim(out)


def _scale_raw(spec: FieldSpec, a: Sequence[int], cv: int) -> list[int]:
    if cv == 0:
        return []
    if cv == 1:
        return list(a)
    mul = spec.mul_i
    return [mul(c, cv) if c else 0 for c in a]


def _mul_school(spec: FieldSpec, a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    mult = spec._mult
    addt = spec._addt
    q = spec.q
    if mult is not None:
        for i, ai in enumerate(a):
            if ai:
                base = ai * q
                for j, bj in enumerate(b):
                    if bj:
                        k = i + j
                        out[k] = addt[out[k] * q + mult[base + bj]]
    else:
        mul = spec.mul_i
        add = spec.add_i
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = add(out[i + j], mul(ai, bj))
    return _trim(out)


def _mul_raw(spec: FieldSpec, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    if min(len(a), len(b)) - 1 < KARATSUBA_THRESHOLD:
        return _mul_school(spec, a, b)
    return _mul_karatsuba(spec, a, b)


def _mul_karatsuba(spec: FieldSpec, a: Sequence[int], b: Sequence[int]) -> list[int]:
    k = max(len(a), len(b)) // 2
    a0, a1 = _trim(list(a[:k])), list(a[k:])
    b0, b1 = _trim(list(b[:k])), list(b[k:])
    z0 = _mul_raw(spec, a0, b0)
    z2 = _mul_raw(spec, a1, b1)
    mid = _mul_raw(spec, _add_raw(spec, a0, a1), _add_raw(spec, b0, b1))
    z1 = _sub_raw(spec, _sub_raw(spec, mid, z0), z2)
    out = [0] * (len(a) + len(b) - 1)
    add = spec.add_i
    for i, c in enumerate(z0):
        if c:
            out[i] = add(out[i], c)
    for i, c in enumerate(z1):
        if c:
            out[k + i] = add(out[k + i], c)
    for i, c in enumerate(z2):
        if c:
            out[2 * k + i] = add(out[2 * k + i], c)
    return _trim(out)


def _divrem_raw(spec: FieldSpec, a: Sequence[int],
                b: Sequence[int]) -> tuple[list[int], list[int]]:
    if not b:
        raise DivisionByZero("polynomial division by zero")
    if len(a) < len(b):
        return [], _trim(list(a))
    db = len(b) - 1
    r = list(a)
    qout = [0] * (len(a) - db)
    mul = spec.mul_i
    sub = spec.sub_i
    monic = b[-1] == 1
    inv_lc = 1 if monic else spec.inv_i(b[-1])
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if c:
            f = c if monic else mul(c, inv_lc)
            qout[i - db] = f
            off = i - db
            for j in range(db):
                bj = b[j]
                if bj:
                    r[off + j] = sub(r[off + j], mul(f, bj))
            r[i] = 0
    return qout, _trim(r[:db])


def _taylor_raw(spec: FieldSpec, f: Sequence[int],
                base: Sequence[int]) -> list[list[int]]:
    """Digits d_i with f = sum d_i * base^i and deg d_i < deg base."""
    db = len(base) - 1
    if len(f) - 1 < db:
        return [list(f)]
    pows = [list(base)]
    while 2 * (len(pows[-1]) - 1) <= len(f) - 1:
        pows.append(_mul_raw(spec, pows[-1], pows[-1]))
    digits: list[list[int]] = []

    def rec(g: Sequence[int], k: int) -> None:
        if k == 0:
            digits.append(list(g))
            return
        pw = pows[k - 1]
        if len(g) < len(pw):
            rec(g, k - 1)
            digits.extend([] for _ in range(1 << (k - 1)))
        else:
            qq, rr = _divrem_raw(spec, g, pw)
            rec(rr, k - 1)
            rec(qq, k - 1)

    rec(list(f), len(pows))
    while len(digits) > 1 and not digits[-1]:
        digits.pop()
    return digits


# ---------------------------------------------------------------------------
# Public operations.
# ---------------------------------------------------------------------------

def mul(a: Poly, b: Poly) -> Poly:
    return a * b


def divrem(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Quotient and remainder with deg r < deg b."""
    a._same(b)
    if b.is_zero:
        raise DivisionByZero("polynomial division by zero")
    q, r = _divrem_raw(a.spec, a._c, b._c)
    return Poly(a.spec, q), Poly(a.spec, r)


def exact_div(a: Poly, b: Poly) -> Optional[Poly]:
    """Quotient if b divides a exactly, else None."""
    q, r = divrem(a, b)
    return q if r.is_zero else None


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by Euclid; gcd(0, 0) = 0."""
    a._same(b)
    spec = a.spec
    x, y = a._c, b._c
    while y:
        x, y = y, tuple(_divrem_raw(spec, x, y)[1])
    if not x:
        return Poly.zero(spec)
    if x[-1] != 1:
        x = tuple(_scale_raw(spec, x, spec.inv_i(x[-1])))
    return Poly(spec, x)


def derivative(f: Poly) -> Poly:
    spec = f.spec
    p = spec.p
    mul_i = spec.mul_i
    out = []
    for i in range(1, len(f._c)):
        s = i % p
        c = f._c[i]
        out.append(mul_i(c, s) if (s and c) else 0)
    return Poly(spec, out)


def evaluate(f: Poly, a: FieldElem) -> FieldElem:
    if a.spec != f.spec:
        raise MixedFields("evaluation point from a different field")
    spec = f.spec
    acc = 0
    av = a.val
    mul_i = spec.mul_i
    add_i = spec.add_i
    for c in reversed(f._c):
        acc = add_i(mul_i(acc, av), c)
    return spec.elem(acc)


def compose(g: Poly, h: Poly) -> Poly:
    """g(h), by Horner in h; linear h goes through the Taylor-shift path."""
    g._same(h)
    spec = g.spec
    if g.is_zero:
        return g
    if h.degree <= 0:
        return Poly.constant(evaluate(g, h.coefficient(0)))
    if h.degree == 1:
        return _compose_linear(g, h)
    gc = g._c
    acc: Sequence[int] = (gc[-1],)
    for i in range(len(gc) - 2, -1, -1):
        acc = _mul_raw(spec, acc, h._c)
        if gc[i]:
            if acc:
                acc = list(acc)
                acc[0] = spec.add_i(acc[0], gc[i])
            else:
                acc = [gc[i]]
    return Poly(spec, acc)


def _compose_linear(g: Poly, h: Poly) -> Poly:
    spec = g.spec
    w, u = h._c[0], h._c[1]
    gc: Sequence[int] = g._c
    if u != 1:
        mul_i = spec.mul_i
        upow = 1
        scaled = []
        for c in gc:
            scaled.append(mul_i(c, upow) if c else 0)
            upow = mul_i(upow, u)
        gc = scaled
    if w == 0:
        return Poly(spec, gc)
    t = spec.mul_i(w, spec.inv_i(u))
    digits = _taylor_raw(spec, gc, (spec.neg_i(t), 1))
    return Poly(spec, [d[0] if d else 0 for d in digits])


def modexp_x_to_q(modulus: Poly, e: int) -> Poly:
    """x^e mod modulus by square and multiply."""
    if modulus.degree < 1:
        raise ConstantBase("modulus must have degree at least 1")
    if e < 0:
        raise ValueError("exponent must be non-negative")
    spec = modulus.spec
    mc = modulus._c
    result = _divrem_raw(spec, (1,), mc)[1]
    base = _divrem_raw(spec, (0, 1), mc)[1]
    while e:
        if e & 1:
            result = _divrem_raw(spec, _mul_raw(spec, result, base), mc)[1]
        e >>= 1
        if e:
            base = _divrem_raw(spec, _mul_raw(spec, base, base), mc)[1]
    return Poly(spec, result)


def count_roots_in_field(f: Poly) -> int:
    """Number of distinct roots of f in F_q, as deg gcd(x^q - x mod f, f).

    Under assertions (test builds) the gcd-based count is cross-checked
    against exhaustive evaluation whenever q <= 256.
    """
    if f.is_zero:
        raise ZeroPolynomial("root count of the zero polynomial")
    spec = f.spec
    if f.degree == 0:
        return 0
    xq = modexp_x_to_q(f, spec.q)
    t = xq - Poly.x(spec)
    g = gcd(t, f)
    n = int(g.degree) if not g.is_zero else 0
    if spec.q <= 256:
        assert n == sum(
            1 for v in range(spec.q) if evaluate(f, spec.elem(v)).val == 0
        ), "gcd-based and exhaustive root counts disagree"
    return n


def taylor_expansion(f: Poly, base: Poly) -> list[Poly]:
    """Digits a_0..a_{v-1} with f = sum a_i * base^i, deg a_i < deg base."""
    f._same(base)
    if base.degree < 1:
        raise ConstantBase("expansion base must have degree at least 1")
    return [Poly(f.spec, d) for d in _taylor_raw(f.spec, f._c, base._c)]


def max_power_dividing(f: Poly, base: Poly) -> int:
    """Largest k with base^k dividing f."""
    if f.is_zero:
        raise ZeroPolynomial("every power divides the zero polynomial")
    if base.degree < 1:
        raise ConstantBase("base must have degree at least 1")
    digits = _taylor_raw(f.spec, f._c, base._c)
    for k, d in enumerate(digits):
        if d:
            return k
    raise AssertionError("nonzero polynomial with all-zero expansion")


def poly_pth_root(f: Poly, l: int) -> Optional[Poly]:
    """g with g^(p^l) = f, or None when some exponent is not divisible by p^l."""
    if l < 0:
        raise ValueError("root order must be non-negative")
    if l == 0 or f.is_zero:
        return f
    spec = f.spec
    step = spec.p ** l
    out = [0] * ((len(f._c) - 1) // step + 1)
    for i, c in enumerate(f._c):
        if c:
            if i % step:
                return None
            out[i // step] = spec.pth_root_i(c, l)
    return Poly(spec, out)


def second_degree(f: Poly) -> Degree:
    """deg(f - x^n) for monic f of degree n; NEG_INFINITY for f = x^n."""
    if f.is_zero or f._c[-1] != 1:
        raise NotMonic("second degree requires a monic polynomial")
    return Poly(f.spec, f._c[:-1]).degree


def is_squarefree(f: Poly) -> bool:
    if f.is_zero:
        raise ZeroPolynomial("squarefreeness of the zero polynomial")
    if f.degree == 0:
        return True
    df = derivative(f)
    if df.is_zero:
        return False
    return gcd(f, df).degree == 0


# ---------------------------------------------------------------------------
# Text form: terms like "c*x^i", "x^i", "x", "c" joined by "+", descending.
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(r"^(?:(\d+)\*)?x(?:\^(\d+))?$|^(\d+)$")


def format_poly(f: Poly) -> str:
    if f.is_zero:
        return "0"
    terms = []
    for i in range(len(f._c) - 1, -1, -1):
        c = f._c[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            xs = "x" if i == 1 else f"x^{i}"
            terms.append(xs if c == 1 else f"{c}*{xs}")
    return "+".join(terms)


def parse_poly(spec: FieldSpec, text: str) -> Poly:
    """Parse the term grammar; any term order is accepted, duplicates add."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial text")
    acc: dict[int, int] = {}
    for term in s.split("+"):
        m = _TERM_RE.match(term)
        if not m:
            raise ValueError(f"bad polynomial term {term!r}")
        if m.group(3) is not None:
            c, i = int(m.group(3)), 0
        else:
            c = int(m.group(1)) if m.group(1) else 1
            i = int(m.group(2)) if m.group(2) else 1
        if c >= spec.q:
            raise ValueError(f"coefficient encoding {c} out of range for {spec}")
        acc[i] = spec.add_i(acc.get(i, 0), c)
    out = [0] * (max(acc) + 1)
    for i, c in acc.items():
        out[i] = c
    return Poly(spec, out)
