"""Composition and decomposition primitives for monic original polynomials.

A polynomial is *monic original* when its leading coefficient is 1 and its
constant coefficient is 0.  Composition with such polynomials is closed, and
every composition identity in this package is phrased over them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .gf import FieldElem, FieldSpec, MixedFields
from .polyring import NotMonic, Poly, compose, evaluate, taylor_expansion


class NotOriginal(Exception):
    pass


class DegreeMismatch(Exception):
    pass


@dataclass(frozen=True)
class MonicOriginal:
    """A monic polynomial of degree >= 1 with zero constant term."""

    poly: Poly

    def __post_init__(self) -> None:
        p = self.poly
        if p.is_zero or p.encodings[-1] != 1:
            raise NotMonic(f"{p} is not monic")
        if p.encodings[0] != 0:
            raise NotOriginal(f"{p} has nonzero constant term")

    @property
    def spec(self) -> FieldSpec:
        return self.poly.spec

    @property
    def degree(self) -> int:
        return int(self.poly.degree)

    def __str__(self) -> str:
        return str(self.poly)

    def shifted(self, w: FieldElem) -> "MonicOriginal":
        return original_shift(self, w)


def make_monic_original(f: Poly) -> MonicOriginal:
    """Wrap f, validating the monic original discipline."""
    return MonicOriginal(f)


@dataclass(frozen=True)
class Decomposition:
    """An ordered pair (g, h) of nonlinear monic originals, read as g(h)."""

    g: MonicOriginal
    h: MonicOriginal

    def __post_init__(self) -> None:
        if self.g.spec != self.h.spec:
            raise MixedFields("decomposition components over different fields")
        if self.g.degree < 2 or self.h.degree < 2:
            raise ValueError("decomposition components must be nonlinear")

    def compose(self) -> MonicOriginal:
        return MonicOriginal(compose(self.g.poly, self.h.poly))

    def __str__(self) -> str:
        return f"({self.g}, {self.h})"


@dataclass(frozen=True)
class Collision:
    """A set of decompositions sharing composition f and left-component degree."""

    f: MonicOriginal
    decomps: frozenset[Decomposition]

    def __post_init__(self) -> None:
        object.__setattr__(self, "decomps", frozenset(self.decomps))
        degs = set()
        for d in self.decomps:
            if d.compose() != self.f:
                raise ValueError(f"{d} does not compose to {self.f}")
            degs.add(d.g.degree)
        if len(degs) > 1:
            raise ValueError("left-component degrees differ")

    @property
    def k(self) -> int:
        return len(self.decomps)

    def __iter__(self) -> Iterator[Decomposition]:
        return iter(self.decomps)

    def __len__(self) -> int:
        return len(self.decomps)


def left_divide(f: MonicOriginal, h: MonicOriginal) -> Optional[MonicOriginal]:
    """The unique g with f = g(h) if it exists, else None.

    Read off the h-adic expansion of f: g exists exactly when every digit
    is constant, and then digit i is g's coefficient of x^i.
    """
    if f.spec != h.spec:
        raise MixedFields("operands over different fields")
    if f.degree % h.degree:
        raise DegreeMismatch(f"deg {h.degree} does not divide deg {f.degree}")
    enc = []
    for d in taylor_expansion(f.poly, h.poly):
        if d.degree > 0:
            return None
        enc.append(d.coefficient_encoding(0))
    return MonicOriginal(Poly(f.spec, enc))


def original_shift(f: MonicOriginal, w: FieldElem) -> MonicOriginal:
    """(x - f(w)) o f o (x + w): the additive-group action on monic originals."""
    if w.spec != f.spec:
        raise MixedFields("shift amount from a different field")
    if w.val == 0:
        return f
    t = compose(f.poly, Poly(f.spec, (w.val, 1)))
    # subtracting t(0) only clears the constant term
    return MonicOriginal(Poly(f.spec, (0,) + t.encodings[1:]))


def shift_decomposition(d: Decomposition, w: FieldElem) -> Decomposition:
    """The shifted pair (g^(h(w)), h^(w)), which decomposes f^(w)."""
    hw = evaluate(d.h.poly, w)
    return Decomposition(original_shift(d.g, hw), original_shift(d.h, w))
