"""Exhaustive property sweeps over ring families, with replayable reports.

A suite expands into ring units (a ring spec plus arguments).  For each unit
the ring and its lattice are built and a sequence of checks is run; a check
returns ``(expected, actual)`` and any mismatch becomes a counterexample.
Counterexamples carry the ring spec, the ideals in the ring-spec ideal
syntax and the check name, so :func:`replay` can rerun exactly the same check
in a fresh process.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from . import classify as cl
from . import complement as cm
from .arith import factorize, is_prime
from .errors import DomainError, PreconditionError, SizeCapError, TheoremViolation
from .lattice import (
    StructuredLattice,
    enumerate_ideals,
    hasse,
    minimal_generators,
    minimal_ideals,
    socle,
)
from .ringspec import build, parse_ideal
from .rings import (
    StructuredRing,
    TableRing,
    indices_to_mask,
    make_matrix_ring,
    make_quotient,
    make_unitization,
    structured_ideal_mask,
    table_cap,
    to_table,
)

CONVENTIONS = (
    "proper-means-nonzero-proper",
    "relative-reading=ring",
    "unitization-over-Z_c",
    "product-zero-ideal-excluded",
)


# ---------------------------------------------------------------------------
# lattices and ideal encoding


@lru_cache(maxsize=48)
def _cyclic_lattice(spec: str, cap=None):
    return enumerate_ideals(build(spec, cap))


@lru_cache(maxsize=None)
def _other_lattice(spec: str, cap=None):
    return enumerate_ideals(build(spec, cap))


def lattice_for(spec: str, cap=None):
    """Cached lattice; the few non-cyclic corpus rings are kept for the whole run."""
    if spec.startswith("zn:"):
        return _cyclic_lattice(spec, cap)
    return _other_lattice(spec, cap)


def _memo(L, key, make):
    store = L.__dict__.setdefault("_verifier_memo", {})
    if key not in store:
        store[key] = make()
    return store[key]


def encode_ideal(L, i: int) -> str:
    """Ideal text accepted by :func:`midealkit.ringspec.parse_ideal`."""
    if isinstance(L, StructuredLattice):
        return "[" + ",".join(str(x) for x in L.ideals[i]) + "]"
    return ",".join(str(g) for g in minimal_generators(L.ring, L.ideals[i]))


def decode_ideal(L, text: str) -> int:
    return L.find(parse_ideal(L.ring, text))


def _table_lattice(L):
    return _memo(L, "table", lambda: enumerate_ideals(to_table(L.ring)))


# ---------------------------------------------------------------------------
# checks: name -> f(L, *ideal_indices, **args) -> (expected, actual)

CHECKS: dict = {}


def check(name):
    def deco(fn):
        CHECKS[name] = fn
        return fn

    return deco


@check("charzn")
def _charzn(L, j):
    f, order = cl._zn_view(L)
    o = cl.is_m_ideal_oracle(L, j).holds
    e = tuple(L.ideals[j][k] for k in order)
    return [o, o], [cl.is_m_ideal(L, j), cl.is_m_ideal_zn(f, e)]


@check("dichotomy")
def _dichotomy(L, j):
    return cl.is_m_ideal_oracle(L, j).holds, cl.is_m_ideal(L, j)


@check("fast-paths")
def _fast_paths(L, j):
    slow = [cl.is_essential(L, j, fast=False), cl.is_relatively_irreducible(L, j, fast=False)]
    fast = [cl.is_essential(L, j), cl.is_relatively_irreducible(L, j)]
    return [[v.holds, list(v.witness)] for v in slow], [[v.holds, list(v.witness)] for v in fast]


@check("essential-is-m-ideal")
def _eim(L, j):
    if not cl.is_essential(L, j):
        raise PreconditionError(f"{L.label(j)} is not essential")
    return True, cl.is_m_ideal_oracle(L, j).holds


@check("minimal-is-m-ideal")
def _minimal(L, j):
    if not cl.is_minimal(L, j):
        raise PreconditionError(f"{L.label(j)} is not minimal")
    return True, cl.is_m_ideal_oracle(L, j).holds


@check("socle")
def _socle(L):
    s = socle(L)
    expected = True if len(minimal_ideals(L)) <= 1 else cl.is_essential(L, s).holds
    return expected, cl.is_m_ideal_oracle(L, s).holds


@check("socle-meet")
def _socle_meet(L):
    acc = L.top
    for i in L:
        if cl.is_essential(L, i):
            acc = L.meet(acc, i)
    return L.label(socle(L)), L.label(acc)


@check("intersection")
def _intersection(L, a, b):
    if not (cl.is_m_ideal_oracle(L, a) and cl.is_m_ideal_oracle(L, b)):
        raise PreconditionError("both ideals must be M-ideals")
    return True, cl.is_m_ideal_oracle(L, L.meet(a, b)).holds


def _quotient_lattice(L, k):
    def make():
        q = make_quotient(L.ring, L.ideals[k])
        return q, enumerate_ideals(q.ring)

    return _memo(L, ("quot", k), make)


@check("quotient")
def _quotient(L, j, k):
    if not L.leq(k, j) or not cl.is_m_ideal_oracle(L, j):
        raise PreconditionError("need K inside an M-ideal J")
    q, LQ = _quotient_lattice(L, k)
    if len(LQ) < 2:
        return True, True  # R/K is the zero ring, J/K its only ideal
    return True, cl.is_m_ideal_oracle(LQ, LQ.find(q.push(L.ideals[j]))).holds


def _factor_lattices(L):
    def make():
        r = L.ring
        out, start = [], 0
        for g in r.groups:
            sub = StructuredRing(r.components[start:start + g], groups=(g,))
            out.append((slice(start, start + g), enumerate_ideals(sub)))
            start += g
        return out

    return _memo(L, "factors", make)


@check("product-fix")
def _product_fix(L, i):
    if not isinstance(L, StructuredLattice) or len(L.ring.groups) < 2:
        raise PreconditionError("need a structured product of at least two factors")
    comps = [(F, F.find(L.ideals[i][sl])) for sl, F in _factor_lattices(L)]
    return cl.is_m_ideal_oracle(L, i).holds, cl.classify_product(comps).m_ideal


@check("dss")
def _dss(L):
    sf = L.ring.is_squarefree()
    return [sf, sf], [cl.every_proper_m_ideal_is_summand(L).holds, cl.is_direct_sum_of_simple(L).holds]


@check("dss-equivalence")
def _dss_equivalence(L):
    return cl.every_proper_m_ideal_is_summand(L).holds, cl.is_direct_sum_of_simple(L).holds


@check("nmi")
def _nmi(L):
    n = L.ring.cardinality
    return is_prime(n), not cl.nonzero_proper_m_ideals(L)


def _copy_in_unitization(L):
    base = L.ring.meta.get("unitization_of")
    if base is None:
        raise PreconditionError("ring was not built as a unitization")
    return L.find(indices_to_mask(range(base.size)))


@check("unitization-example")
def _unitization_example(L):
    copy = _copy_in_unitization(L)
    found = cl.nonzero_proper_m_ideals(L)
    expected = {"m_ideals": [L.label(copy)], "simple": True, "summand": False}
    actual = {
        "m_ideals": [L.label(i) for i in found],
        "simple": cl.is_simple_ideal_ring(L, copy),
        "summand": cl.is_direct_summand(L, copy).holds,
    }
    return expected, actual


def _matrix_lattice(L, k):
    def make():
        base = L.ring if isinstance(L.ring, TableRing) else to_table(L.ring)
        M = make_matrix_ring(base, k)
        return base, enumerate_ideals(M)

    return _memo(L, ("mat", k), make)


def _base_mask(L, i):
    r = L.ring
    return structured_ideal_mask(r, L.ideals[i]) if isinstance(r, StructuredRing) else L.ideals[i]


@check("morita")
def _morita(L, j, k=2):
    base, LM = _matrix_lattice(L, k)
    up = LM.find(cl.transport_matrix_ideal(base, k, "up", _base_mask(L, j)))
    return (
        [cl.is_essential(L, j).holds, cl.is_m_ideal_oracle(L, j).holds],
        [cl.is_essential(LM, up).holds, cl.is_m_ideal_oracle(LM, up).holds],
    )


@check("morita-bijection")
def _morita_bijection(L, k=2):
    base, LM = _matrix_lattice(L, k)
    images = sorted(LM.find(cl.transport_matrix_ideal(base, k, "up", _base_mask(L, i))) for i in L)
    back = [
        cl.transport_matrix_ideal(base, k, "down", LM.ideals[x]) == _base_mask(L, i)
        for i, x in zip(L, [LM.find(cl.transport_matrix_ideal(base, k, "up", _base_mask(L, i))) for i in L])
    ]
    return [len(L), list(range(len(L))), True], [len(LM), images, all(back)]


@check("ideal-count")
def _ideal_count(L, count=2):
    return count, len(L)


@check("krs1")
def _krs1(L, n, n2):
    if not (L.leq(n, n2) and cl.is_m_ideal_oracle(L, n2) and cl.is_m_ideal_in(L, n, n2)):
        raise PreconditionError("need N an M-ideal of the ring N' and N' an M-ideal")
    return True, cl.is_m_ideal_oracle(L, n).holds


@check("krs2")
def _krs2(L, a1, b1, a2, b2):
    for a, b in ((a1, b1), (a2, b2)):
        if not (L.leq(a, b) and cl.is_m_ideal_in(L, a, b)):
            raise PreconditionError(f"{L.label(a)} is not an M-ideal of {L.label(b)}")
    return True, cl.is_m_ideal_in(L, L.meet(a1, a2), L.meet(b1, b2)).holds


@check("mct")
def _mct(L, n, q):
    try:
        res = cm.m_complement_containing(L, n, q)
    except TheoremViolation:
        return True, False
    return True, cm.verify_certificate(L, res)


@check("lco")
def _lco(L, n):
    return True, bool(cm.all_m_complements(L, n))


@check("relative-complement")
def _relative_complement(L, a, n, b):
    return True, cm.relative_complement_check(L, a, n, b).holds


@check("unitization")
def _unitization(L):
    R = L.ring
    U = make_unitization(R)
    LU = _memo(L, "unit", lambda: enumerate_ideals(U))
    inside = indices_to_mask(range(R.size))
    if not U.is_ideal(inside):
        return "R is an ideal of R^1", "R is not an ideal of R^1"
    mine = sorted(L.label(i) for i in L if cl.is_m_ideal_oracle(L, i))
    theirs = [k for k in LU if cl.is_m_ideal_oracle(LU, k)]
    contained = sorted(L.label(L.find(LU.ideals[k])) for k in theirs if LU.ideals[k] & ~inside == 0)
    cut = sorted({L.label(L.find(LU.ideals[k] & inside)) for k in theirs})
    return [mine, mine], [contained, cut]


@check("fl1")
def _fl1(L, i):
    try:
        got = cl.find_proper_m_ideal_over(L, i)
    except TheoremViolation:
        return True, False
    k = got.ideal
    if got.kind == "summand":
        ok = L.meet(i, k) == L.zero and L.join(i, k) == L.top
    else:
        ok = L.leq(i, k) and k != L.top and cl.is_m_ideal_oracle(L, k).holds
    return True, ok


@check("pros")
def _pros(L, i):
    if i in (L.zero, L.top) or not cl.is_direct_summand(L, i):
        raise PreconditionError(f"{L.label(i)} is not a nontrivial summand")
    return cl.is_relatively_irreducible(L, i).holds, cl.is_m_ideal_oracle(L, i).holds


@check("m-ideal-value")
def _m_ideal_value(L, j, expected=True):
    return expected, cl.is_m_ideal_oracle(L, j).holds


@check("charmuclosed")
def _charmuclosed(L, i):
    expected = cl.is_essentially_closed(L, i).holds and not cl.is_relatively_irreducible(L, i).holds
    return expected, cl.is_m_closed(L, i).holds


def _predicates(L, i):
    return [
        cl.is_essential(L, i).holds,
        cl.is_relatively_irreducible(L, i).holds,
        cl.is_m_ideal_oracle(L, i).holds,
        cl.is_minimal(L, i).holds,
        cl.is_maximal(L, i).holds,
        cl.is_direct_summand(L, i).holds,
    ]


def _to_table_index(L, i):
    T = _table_lattice(L)
    return T, T.find(structured_ideal_mask(L.ring, L.ideals[i]))


@check("representation-lattice")
def _representation_lattice(L):
    T = _table_lattice(L)
    pos = [T.index.get(structured_ideal_mask(L.ring, e), -1) for e in L.ideals]
    edges = sorted((pos[a], pos[b]) for a, b in hasse(L))
    sizes = [L.cardinality(i) for i in L]
    return [len(L), sorted(range(len(L))), hasse(T), sizes], [
        len(T),
        sorted(pos),
        edges,
        [T.cardinality(p) if p >= 0 else -1 for p in pos],
    ]


@check("representation-predicates")
def _representation_predicates(L, i):
    T, t = _to_table_index(L, i)
    return _predicates(L, i), _predicates(T, t)


# ---------------------------------------------------------------------------
# suites


@dataclass(frozen=True)
class Suite:
    name: str
    statement: str
    quick: dict
    full: dict
    units: Callable  # params -> list of (spec, unit_args)
    sweep: Callable  # (L, unit_args, params) -> iterable of (check, indices, check_args)


SUITES: dict = {}


def suite(name, statement, quick, full):
    def deco(fn):
        units, sweep = fn()
        SUITES[name] = Suite(name, statement, quick, full, units, sweep)
        return fn

    return deco


def _zn_units(lo=2):
    return lambda p: [(f"zn:{n}", {}) for n in range(lo, p["max_n"] + 1)]


def _squarefree_units(p):
    return [(f"zn:{n}", {}) for n in range(2, p["max_n"] + 1) if factorize(n).is_squarefree()]


def _spec_size(spec):
    r = build(spec, cap=10**9)
    return r.cardinality if isinstance(r, StructuredRing) else r.size


# Small rings outside the cyclic family, used by the general-purpose suites.
EXTRA_RINGS = (
    "prod:zn:2,zn:2",
    "prod:zn:4,zn:2",
    "prod:zn:3,zn:9,zn:3",
    "prod:zn:8,zn:4",
    "null:8",
    "sut:3:zn:2",
    "prod:null:2,zn:3",
    "ideal:zn:12/2",
    "mat:2:zn:2",
    "unit:mat:2:zn:2",
    "unit:sut:3:zn:2",
    "unit:null:4",
    "unit:prod:null:2,zn:3",
    "prod:(mat:2:zn:2),zn:2",
    "mat:2:zn:3",
    "mat:2:zn:4",
    "unit:null:16",
    "mat:2:zn:5",
    "mat:2:zn:6",
)


@lru_cache(maxsize=None)
def _extra_sizes():
    return {s: _spec_size(s) for s in EXTRA_RINGS}


def _with_extras(zn_units):
    def units(p):
        out = zn_units(p)
        limit = p.get("max_table", 0)
        out += [(s, {}) for s in EXTRA_RINGS if _extra_sizes()[s] <= limit]
        return out

    return units


def _every_ideal(name):
    def sweep(L, a, p):
        for j in L:
            yield name, (j,), {}

    return sweep


@suite(
    "charzn",
    "On every ideal of Z_n the closed-form exponent test, the dichotomy and the pairwise definition agree.",
    {"max_n": 200},
    {"max_n": 1000},
)
def _():
    return _zn_units(), _every_ideal("charzn")


@suite(
    "chmi-dichotomy",
    "An ideal is an M-ideal exactly when it is essential or relatively irreducible; the fast tests match the definitional ones.",
    {"max_n": 200, "max_table": 256},
    {"max_n": 1000, "max_table": 4096},
)
def _():
    def sweep(L, a, p):
        for j in L:
            yield "dichotomy", (j,), {}
            yield "fast-paths", (j,), {}

    return _with_extras(_zn_units()), sweep


@suite(
    "eim",
    "Essential ideals and minimal ideals are M-ideals.",
    {"max_n": 200, "max_table": 256},
    {"max_n": 1000, "max_table": 4096},
)
def _():
    def sweep(L, a, p):
        for j in L:
            if cl.is_essential(L, j):
                yield "essential-is-m-ideal", (j,), {}
        for j in minimal_ideals(L):
            yield "minimal-is-m-ideal", (j,), {}

    return _with_extras(_zn_units()), sweep


@suite(
    "socle",
    "With at most one minimal ideal the socle is an M-ideal; otherwise it is one iff it is essential. The socle is the meet of the essential ideals.",
    {"max_n": 200, "max_table": 256},
    {"max_n": 1000, "max_table": 4096},
)
def _():
    def sweep(L, a, p):
        yield "socle", (), {}
        yield "socle-meet", (), {}

    return _with_extras(_zn_units()), sweep


@suite(
    "intersections",
    "The intersection of two M-ideals is an M-ideal.",
    {"max_n": 200, "max_table": 256},
    {"max_n": 300, "max_table": 4096},
)
def _():
    def sweep(L, a, p):
        ms = [j for j in L if cl.is_m_ideal_oracle(L, j)]
        for x, i in enumerate(ms):
            for j in ms[x:]:
                yield "intersection", (i, j), {}

    return _with_extras(_zn_units()), sweep


@suite(
    "quotient",
    "If J is an M-ideal and K is an ideal inside J then J/K is an M-ideal of R/K.",
    {"max_n": 200},
    {"max_n": 200},
)
def _():
    def sweep(L, a, p):
        for j in L:
            if cl.is_m_ideal_oracle(L, j):
                for k in L.below(j):
                    yield "quotient", (j, k), {}

    return _zn_units(), sweep


def _prime_powers(limit):
    return [q for q in range(2, limit + 1) if len(factorize(q).factors) == 1]


@suite(
    "product-fix",
    "A nonzero ideal of a product of two rings is an M-ideal iff every slot is essential, or exactly one slot is nonzero and that slot is relatively irreducible.",
    {"max_component": 9},
    {"max_component": 27},
)
def _():
    def units(p):
        qs = _prime_powers(p["max_component"])
        return [(f"prod:zn:{a},zn:{b}", {}) for x, a in enumerate(qs) for b in qs[x:]]

    def sweep(L, a, p):
        for i in L.nonzero():
            yield "product-fix", (i,), {}

    return units, sweep


@suite(
    "dss",
    "For Z_n: every nonzero proper M-ideal is a summand iff Z_n is a direct sum of simple ideals iff n is squarefree. A ring with nonzero proper M-ideals that are simple need not split (unitization of M_2(F_2)).",
    {"max_n": 200},
    {"max_n": 1000},
)
def _():
    def units(p):
        return _zn_units()(p) + [("unit:mat:2:zn:2", {"example": True})]

    def sweep(L, a, p):
        if a.get("example"):
            yield "unitization-example", (), {}
            yield "dss-equivalence", (), {}
        else:
            yield "dss", (), {}

    return units, sweep


@suite(
    "nmi",
    "Z_n has no nonzero proper M-ideal iff n is prime.",
    {"max_n": 200},
    {"max_n": 1000},
)
def _():
    def sweep(L, a, p):
        yield "nmi", (), {}

    return _zn_units(), sweep


@suite(
    "morita-matrix",
    "The map I -> M_2(I) is a bijection from ideals of Z_n to ideals of M_2(Z_n) preserving essential and M-ideal status; M_2 over a field is simple.",
    {"max_base": 4, "fields": [2, 3]},
    {"max_base": 6, "fields": [2, 3]},
)
def _():
    def units(p):
        out = [(f"zn:{n}", {"k": 2}) for n in range(2, p["max_base"] + 1)]
        return out + [(f"mat:2:zn:{q}", {"simple": True}) for q in p["fields"]]

    def sweep(L, a, p):
        if a.get("simple"):
            yield "ideal-count", (), {"count": 2}
            return
        yield "morita-bijection", (), {"k": a["k"]}
        for j in L:
            yield "morita", (j,), {"k": a["k"]}

    return units, sweep


def _rel_m_table(L):
    """For each ideal b, the ideals a inside b that are M-ideals of the ring b."""
    return _memo(L, "relm", lambda: {b: [a for a in L.below(b) if cl.is_m_ideal_in(L, a, b)] for b in L})


@suite(
    "krs",
    "(1) An M-ideal of the ring N', where N' is an M-ideal, is an M-ideal of R. (2) In regular rings, if A_i is an M-ideal of B_i then A_1 meet A_2 is an M-ideal of B_1 meet B_2.",
    {"max_n": 200, "max_regular": 210},
    {"max_n": 200, "max_regular": 210},
)
def _():
    def units(p):
        out = [(f"zn:{n}", {"part": 1}) for n in range(2, p["max_n"] + 1)]
        out += [(s, {"part": 2}) for s, _ in _squarefree_units({"max_n": p["max_regular"]})]
        return out

    def sweep(L, a, p):
        rel = _rel_m_table(L)
        if a["part"] == 1:
            for n2 in L:
                if cl.is_m_ideal_oracle(L, n2):
                    for n in rel[n2]:
                        yield "krs1", (n, n2), {}
            return
        pairs = [(x, b) for b in L for x in rel[b]]
        for a1, b1 in pairs:
            for a2, b2 in pairs:
                yield "krs2", (a1, b1, a2, b2), {}

    return units, sweep


@suite(
    "complements-mct",
    "Whenever N meets Q in zero there is an M-complement of N containing Q; every ideal has an M-complement.",
    {"max_n": 200, "max_lco": 200},
    {"max_n": 200, "max_lco": 500},
)
def _():
    def units(p):
        top = max(p["max_n"], p["max_lco"])
        return [(f"zn:{n}", {"mct": n <= p["max_n"]}) for n in range(2, top + 1)]

    def sweep(L, a, p):
        for n in L:
            yield "lco", (n,), {}
            if a["mct"]:
                for q in L:
                    if L.meet(n, q) == L.zero:
                        yield "mct", (n, q), {}

    return units, sweep


def uni_corpus() -> list:
    """Non-unital rings with at most 16 elements used for the unitization suite."""
    specs = [f"null:{m}" for m in range(2, 17)]
    for n in range(2, 17):
        L = lattice_for(f"zn:{n}")
        for i in L.nonzero():
            if i == L.top:
                continue
            spec = f"ideal:zn:{n}/{L.ring.generators(L.ideals[i])[0]}"
            if not build(spec).unital:
                specs.append(spec)
    specs += [
        "sut:2:zn:2",
        "sut:3:zn:2",
        "sut:2:zn:3",
        "sut:2:zn:4",
        "prod:null:2,zn:2",
        "prod:null:2,zn:3",
        "prod:(sut:3:zn:2),null:2",
    ]
    return specs


@suite(
    "unitization-uni",
    "For a non-unital R, the M-ideals of R are the M-ideals of R^1 lying inside R, and also the intersections of R with M-ideals of R^1.",
    {},
    {},
)
def _():
    def units(p):
        return [(s, {}) for s in uni_corpus()]

    def sweep(L, a, p):
        yield "unitization", (), {}

    return units, sweep


@suite(
    "fl1",
    "A nonzero proper ideal is a summand or lies in a proper M-ideal.",
    {"max_n": 200, "max_table": 256},
    {"max_n": 300, "max_table": 4096},
)
def _():
    def sweep(L, a, p):
        for i in L.nonzero():
            if i != L.top:
                yield "fl1", (i,), {}

    return _with_extras(_zn_units()), sweep


@suite(
    "pros",
    "A nontrivial direct summand is an M-ideal iff it is relatively irreducible.",
    {"max_n": 200, "max_table": 256},
    {"max_n": 1000, "max_table": 4096},
)
def _():
    def sweep(L, a, p):
        for i in L.nonzero():
            if i != L.top and cl.is_direct_summand(L, i):
                yield "pros", (i,), {}

    return _with_extras(_zn_units()), sweep


@suite(
    "sdp-regression",
    "The ideal (2) is not an M-ideal of Z_90 but is one of Z_6.",
    {},
    {},
)
def _():
    def units(p):
        return [("zn:90", {"expected": False}), ("zn:6", {"expected": True})]

    def sweep(L, a, p):
        yield "m-ideal-value", (L.find(L.ring.ideal_from_generators([2])),), {"expected": a["expected"]}

    return units, sweep


@suite(
    "charmuclosed",
    "A proper ideal is M-closed iff it is essentially closed and not relatively irreducible.",
    {"max_n": 200},
    {"max_n": 300},
)
def _():
    def sweep(L, a, p):
        for i in L:
            if i != L.top:
                yield "charmuclosed", (i,), {}

    return _zn_units(), sweep


@suite(
    "oracle-agreement",
    "Structured and operation-table enumeration of Z_n give isomorphic lattices with equal predicates on every ideal.",
    {"max_n": 200},
    {"max_n": 300},
)
def _():
    def sweep(L, a, p):
        yield "representation-lattice", (), {}
        for i in L:
            yield "representation-predicates", (i,), {}

    return _zn_units(), sweep


@suite(
    "relative-complement",
    "In a regular ring with distributive ideal lattice, if B is an M-complement of A and A lies in N then B meet N is an M-complement of A in N.",
    {"max_n": 210},
    {"max_n": 210},
)
def _():
    def sweep(L, a, p):
        comps = {x: [b for b in L if cm.is_m_complement(L, x, b)] for x in L}
        for x in L:
            for n in L.above(x):
                for b in comps[x]:
                    yield "relative-complement", (x, n, b), {}

    return _squarefree_units, sweep


# ---------------------------------------------------------------------------
# running


@dataclass
class VerificationReport:
    suite: str
    params: dict
    cases: int
    elapsed_ms: int
    counterexamples: list = field(default_factory=list)
    conventions: tuple = CONVENTIONS

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "params": dict(self.params, conventions=list(self.conventions)),
            "cases": self.cases,
            "elapsed_ms": self.elapsed_ms,
            "pass": self.passed,
            "counterexamples": self.counterexamples,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _check_params(p: dict, cap: int):
    limit = p.get("max_table")
    if limit is not None and limit > cap:
        raise SizeCapError(f"max_table={limit} exceeds the table cap {cap}")
    if p.get("max_base") is not None and p["max_base"] ** 4 > cap:
        raise SizeCapError(f"M_2(Z_{p['max_base']}) exceeds the table cap {cap}")


def _run_unit(name: str, spec: str, unit_args: dict, params: dict, cap: int):
    s = SUITES[name]
    L = lattice_for(spec, cap)
    cases, found = 0, []
    for check_name, idx, args in s.sweep(L, unit_args, params):
        cases += 1
        expected, actual = CHECKS[check_name](L, *idx, **args)
        if expected != actual:
            found.append(
                {
                    "check": check_name,
                    "ring": spec,
                    "ideals": [encode_ideal(L, i) for i in idx],
                    "labels": [L.label(i) for i in idx],
                    "args": args,
                    "expected": expected,
                    "actual": actual,
                }
            )
    return cases, found


def _run_unit_packed(job):
    return _run_unit(*job)


def resolve_params(name: str, params=None, profile: str = "full") -> dict:
    if name not in SUITES:
        raise DomainError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    if profile not in ("quick", "full"):
        raise DomainError(f"profile must be 'quick' or 'full', got {profile!r}")
    s = SUITES[name]
    base = dict(s.quick if profile == "quick" else s.full)
    for k, v in (params or {}).items():
        if k not in base:
            raise DomainError(f"suite {name} has no parameter {k!r}; known: {sorted(base)}")
        base[k] = v
    return base


def run_suite(name: str, params=None, profile: str = "full", workers: int = 1, cap=None) -> VerificationReport:
    """Run one suite; ``params`` override the profile defaults."""
    p = resolve_params(name, params, profile)
    cap = table_cap(cap)
    _check_params(p, cap)
    start = time.perf_counter()
    jobs = [(name, spec, a, p, cap) for spec, a in SUITES[name].units(p)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_run_unit_packed, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_run_unit(*j) for j in jobs]
    cases = sum(c for c, _ in results)
    found = [x for _, f in results for x in f]
    elapsed = int(round((time.perf_counter() - start) * 1000))
    return VerificationReport(name, p, cases, elapsed, found)


def run_all(profile: str = "quick", workers: int = 1, cap=None) -> list:
    return [run_suite(name, profile=profile, workers=workers, cap=cap) for name in SUITES]


# ---------------------------------------------------------------------------
# replay


@dataclass
class ReplayResult:
    check: str
    ring: str
    expected: object
    actual: object
    recorded_expected: object
    recorded_actual: object

    @property
    def mismatch(self) -> bool:
        """The check still fails on this input."""
        return self.expected != self.actual

    @property
    def reproduced(self) -> bool:
        return self.expected == self.recorded_expected and self.actual == self.recorded_actual


def replay_counterexample(cx: dict, cap=None) -> ReplayResult:
    name = cx["check"]
    if name not in CHECKS:
        raise DomainError(f"unknown check {name!r}")
    L = enumerate_ideals(build(cx["ring"], cap))
    idx = [decode_ideal(L, t) for t in cx.get("ideals", [])]
    expected, actual = CHECKS[name](L, *idx, **cx.get("args", {}))
    expected, actual = json.loads(json.dumps([expected, actual]))
    return ReplayResult(name, cx["ring"], expected, actual, cx.get("expected"), cx.get("actual"))


def replay(line, cap=None) -> list:
    """Rerun a report line, a single counterexample, or a classify record."""
    obj = json.loads(line) if isinstance(line, str) else line
    if "counterexamples" in obj:
        return [replay_counterexample(cx, cap) for cx in obj["counterexamples"]]
    if "check" in obj:
        return [replay_counterexample(obj, cap)]
    if "report" in obj and "ring" in obj:
        return [_replay_classification(obj, cap)]
    raise DomainError("line is neither a report, a counterexample nor a classify record")


def _replay_classification(obj: dict, cap=None) -> ReplayResult:
    L = enumerate_ideals(build(obj["ring"], cap))
    i = decode_ideal(L, obj["ideal"])
    rec = obj["report"]
    rep = cl.classify(L, i, method=rec.get("method", "auto"), reading=rec.get("reading", "ring")).to_dict(L)
    keys = [k for k in rep if k not in ("ideal",)]
    now = json.loads(json.dumps({k: rep[k] for k in keys}))
    then = {k: rec.get(k) for k in keys}
    # "expected" is the recorded verdict and "actual" the recomputed one
    return ReplayResult("classify", obj["ring"], then, now, then, then)
