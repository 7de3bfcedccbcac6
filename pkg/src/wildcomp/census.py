"""Exhaustive composition census at degree p^2 over F_q.

Enumerates all q^(2p-2) pairs (g, h) of degree-p monic originals, groups
the compositions, and compares the observed maximal-collision spectrum and
class breakdown against the exact closed forms.  This is the ground-truth
oracle for the counting module and for the classifier.

Monic originals of degree p are indexed by the base-q little-endian
encoding of their inner coefficients (c_1, ..., c_{p-1}); a pair (g, h) is
packed as g_index * q^(p-1) + h_index.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from . import counting
from .counting import Spectrum, _log_base
from .decomp_core import Decomposition, MonicOriginal
from .gf import FieldSpec, NotPrime, _is_prime, field_new
from .identify import CollisionTag, classify
from .polyring import Poly, _mul_raw, format_poly

# Runs enumerate more pairs than this are refused outright.
PAIR_LIMIT = 1 << 24


class TooLarge(Exception):
    pass


def mo_index_to_inner(idx: int, q: int, p: int) -> tuple[int, ...]:
    out = []
    for _ in range(p - 1):
        idx, c = divmod(idx, q)
        out.append(c)
    return tuple(out)


def mo_index_to_poly(spec: FieldSpec, idx: int, degree: int) -> MonicOriginal:
    inner = mo_index_to_inner(idx, spec.q, degree)
    return MonicOriginal(Poly(spec, (0,) + inner + (1,)))


def unpack_pair(spec: FieldSpec, packed: int, p: int) -> Decomposition:
    big_q = spec.q ** (p - 1)
    gidx, hidx = divmod(packed, big_q)
    return Decomposition(mo_index_to_poly(spec, gidx, p),
                         mo_index_to_poly(spec, hidx, p))


def poly_of_key(spec: FieldSpec, key, p: int) -> MonicOriginal:
    return MonicOriginal(Poly(spec, (0,) + tuple(key) + (1,)))


@dataclass
class Mismatch:
    kind: str
    where: str
    observed: Any
    predicted: Any

    def to_json(self) -> dict:
        return {"kind": self.kind, "where": self.where,
                "observed": str(self.observed), "predicted": str(self.predicted)}


@dataclass
class CensusReport:
    p: int
    q: int
    spectrum_observed: dict[int, int]
    spectrum_predicted: Spectrum
    class_counts: dict[str, int]
    class_spectrum: dict[str, dict[int, int]]
    decomposable_observed: int
    mismatches: list[Mismatch]
    # raw tables, kept for cross-checks; not part of the serialized report
    field_spec: FieldSpec = field(repr=False)
    pair_counts: dict = field(repr=False)
    colliding_pairs: dict = field(repr=False)

    def poly_of_key(self, key) -> MonicOriginal:
        return poly_of_key(self.field_spec, key, self.p)

    def decompositions_of_key(self, key) -> set[Decomposition]:
        return {unpack_pair(self.field_spec, pr, self.p)
                for pr in self.colliding_pairs[key]}

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "spectrum_observed": {str(k): v for k, v in
                                  sorted(self.spectrum_observed.items())},
            "spectrum_predicted": {str(k): v for k, v in
                                   sorted(self.spectrum_predicted.counts.items())},
            "class_counts": {t: self.class_counts.get(t, 0) for t in "FSM"},
            "class_spectrum": {t: {str(k): v for k, v in sorted(ks.items())}
                               for t, ks in self.class_spectrum.items()},
            "decomposable_observed": self.decomposable_observed,
            "decomposable_predicted": self.spectrum_predicted.d_total,
            "mismatches": [m.to_json() for m in self.mismatches],
            "verified": verify(self),
            "class_partition_ok": class_partition_check(self),
        }


def _tabulate_range(spec: FieldSpec, lo: int, hi: int) -> dict:
    """Compose every g against h for h indices in [lo, hi); group by f."""
    p, q = spec.p, spec.q
    n = p * p
    big_q = q ** (p - 1)
    addt = spec._addt
    as_key = bytes if q <= 255 else tuple
    if addt is not None:
        def vacc(acc: list[int], piece: list[int]) -> list[int]:
            out = acc[:]
            for i, v in enumerate(piece):
                if v:
                    out[i] = addt[out[i] * q + v]
            return out
    else:
        add_i = spec.add_i

        def vacc(acc: list[int], piece: list[int]) -> list[int]:
            out = acc[:]
            for i, v in enumerate(piece):
                if v:
                    out[i] = add_i(out[i], v)
            return out

    table: dict = {}
    mul_i = spec.mul_i
    for hidx in range(lo, hi):
        h = [0, *mo_index_to_inner(hidx, q, p), 1]
        pows: list[list[int]] = [[], h]
        for _ in range(p - 1):
            pows.append(_mul_raw(spec, pows[-1], h))
        scaled = [None]
        for level in range(1, p):
            pw = pows[level]
            scaled.append([[mul_i(v, c) if v else 0 for v in pw]
                           for c in range(q)])

        def rec(level: int, acc: list[int], gpart: int) -> None:
            pieces = scaled[level]
            if level == 1:
                base_pair = gpart * q
                for c in range(q):
                    out = vacc(acc, pieces[c])
                    key = as_key(out[1:n])
                    pair = (base_pair + c) * big_q + hidx
                    lst = table.get(key)
                    if lst is None:
                        table[key] = [pair]
                    else:
                        lst.append(pair)
            else:
                for c in range(q):
                    rec(level - 1, vacc(acc, pieces[c]), gpart * q + c)

        rec(p - 1, pows[p], 0)
    return table


def _census_worker(args: tuple[int, int, int, int]) -> dict:
    p, d, lo, hi = args
    return _tabulate_range(field_new(p, d), lo, hi)


def run_census(p: int, q: int, threads: int = 1) -> CensusReport:
    """Enumerate all degree-p compositions over F_q and tabulate collisions."""
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    d = _log_base(q, p)
    total_pairs = q ** (2 * p - 2)
    if total_pairs > PAIR_LIMIT:
        raise TooLarge(f"{total_pairs} composition pairs exceed {PAIR_LIMIT}")
    spec = field_new(p, d)
    big_q = q ** (p - 1)

    if threads > 1:
        shards = []
        step = -(-big_q // threads)
        for lo in range(0, big_q, step):
            shards.append((p, d, lo, min(lo + step, big_q)))
        table: dict = {}
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_census_worker, shards):
                for key, pairs in part.items():
                    lst = table.get(key)
                    if lst is None:
                        table[key] = pairs
                    else:
                        lst.extend(pairs)
    else:
        table = _tabulate_range(spec, 0, big_q)

    pair_counts: dict = {}
    colliding: dict = {}
    spectrum_observed: dict[int, int] = {}
    for key, pairs in table.items():
        k = len(pairs)
        pair_counts[key] = k
        spectrum_observed[k] = spectrum_observed.get(k, 0) + 1
        if k >= 2:
            colliding[key] = tuple(pairs)
    table.clear()

    predicted = counting.spectrum(p, q)
    mismatches: list[Mismatch] = []
    for k in sorted(set(spectrum_observed) | set(predicted.counts)):
        obs = spectrum_observed.get(k, 0)
        pred = predicted.c(k)
        if obs != pred:
            mismatches.append(Mismatch("spectrum", f"k={k}", obs, pred))

    class_spectrum: dict[str, dict[int, int]] = {"F": {}, "S": {}, "M": {}}
    for key, pairs in colliding.items():
        f = poly_of_key(spec, key, p)
        cls = classify(f)
        if cls.tag is CollisionTag.NONE:
            mismatches.append(Mismatch("classification", format_poly(f.poly),
                                       "none", "a collision class"))
            continue
        per_k = class_spectrum[cls.tag.value]
        per_k[len(pairs)] = per_k.get(len(pairs), 0) + 1

    mass = sum(k * c for k, c in spectrum_observed.items())
    if mass != total_pairs:
        mismatches.append(Mismatch("mass", "sum k*c_k", mass, total_pairs))

    return CensusReport(
        p=p,
        q=q,
        spectrum_observed=spectrum_observed,
        spectrum_predicted=predicted,
        class_counts={t: sum(ks.values()) for t, ks in class_spectrum.items()},
        class_spectrum=class_spectrum,
        decomposable_observed=len(pair_counts),
        mismatches=mismatches,
        field_spec=spec,
        pair_counts=pair_counts,
        colliding_pairs=colliding,
    )


def verify(report: CensusReport) -> bool:
    """True when the observed census matches every prediction and invariant."""
    if report.mismatches:
        return False
    total = report.q ** (2 * report.p - 2)
    obs = report.spectrum_observed
    if sum(k * c for k, c in obs.items()) != total:
        return False
    if report.decomposable_observed != sum(obs.values()):
        return False
    if report.decomposable_observed != report.spectrum_predicted.d_total:
        return False
    return all(obs.get(k, 0) == report.spectrum_predicted.c(k)
               for k in set(obs) | set(report.spectrum_predicted.counts))


def class_partition_check(report: CensusReport) -> bool:
    """Observed class breakdown equals the three per-family closed forms."""
    p, q = report.p, report.q
    expected: dict[str, dict[int, int]] = {
        "F": {2: q ** (p - 1) - 1},
        "S": {2: counting.count_simply(q, p, 2),
              p + 1: counting.count_simply(q, p, p + 1)},
        "M": {2: counting.count_multiply(q, p)},
    }
    for tag, ks in expected.items():
        got = {k: v for k, v in report.class_spectrum.get(tag, {}).items() if v}
        want = {k: v for k, v in ks.items() if v}
        if got != want:
            return False
    return True
