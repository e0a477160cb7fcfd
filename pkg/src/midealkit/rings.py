"""Ring representations and constructions.

Two carriers are used throughout:

``StructuredRing``
    A finite commutative ring ``Z_{q_1} x ... x Z_{q_r}`` with every ``q_j`` a
    prime power.  Ideals are exponent tuples ``(e_1, ..., e_r)`` naming
    ``prod_j (p_j^e_j)``.  This is the fast path.

``TableRing``
    An arbitrary finite ring given by addition and multiplication tables over
    element indices ``0..N-1``.  Ideals are Python ``int`` bit masks.  This is
    the oracle path and also covers non-commutative and non-unital rings.
"""

from __future__ import annotations

import json
import math
import os
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .arith import FactoredInteger, factorize
from .errors import (
    AdditionAxiomError,
    AssociativityError,
    DistributivityError,
    DomainError,
    InvalidIdealError,
    RingAxiomError,
    SizeCapError,
    UnitError,
)

DEFAULT_TABLE_CAP = 4096
# above this size table axioms are checked on additive generators only
EXHAUSTIVE_CHECK_LIMIT = 256


def table_cap(cap=None) -> int:
    if cap is not None:
        return int(cap)
    env = os.environ.get("MIDEALKIT_CAP")
    return int(env) if env else DEFAULT_TABLE_CAP


# ---------------------------------------------------------------------------
# bit masks


def bools_to_mask(b) -> int:
    b = np.asarray(b, dtype=bool)
    return int.from_bytes(np.packbits(b, bitorder="little").tobytes(), "little")


def mask_to_bools(mask: int, n: int) -> np.ndarray:
    raw = np.frombuffer(mask.to_bytes((n + 7) // 8 or 1, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


def mask_to_indices(mask: int, n: int) -> np.ndarray:
    return np.flatnonzero(mask_to_bools(mask, n))


def indices_to_mask(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


# ---------------------------------------------------------------------------
# structured rings


@dataclass(frozen=True)
class StructuredRing:
    """``prod_j Z_{q_j}`` with prime-power moduli ``q_j``.

    ``groups`` records how many consecutive components belong to each
    user-level factor, so that ideals can be displayed by generators.
    An empty component list denotes the zero ring.
    """

    components: tuple
    origin: str = ""
    groups: tuple = ()

    def __post_init__(self):
        comps = tuple(int(q) for q in self.components)
        object.__setattr__(self, "components", comps)
        for q in comps:
            if q < 2 or len(factorize(q).factors) != 1:
                raise DomainError(f"component {q} is not a prime power >= 2")
        groups = tuple(self.groups) or ((len(comps),) if comps else ())
        if sum(groups) != len(comps) or any(g < 1 for g in groups):
            raise DomainError(f"groups {groups} do not partition {len(comps)} components")
        object.__setattr__(self, "groups", groups)

    @cached_property
    def primes(self) -> tuple:
        return tuple(factorize(q).factors[0][0] for q in self.components)

    @cached_property
    def exponents(self) -> tuple:
        return tuple(factorize(q).factors[0][1] for q in self.components)

    @property
    def cardinality(self) -> int:
        return math.prod(self.components)

    @property
    def is_zero_ring(self) -> bool:
        return not self.components

    def distinct_primes(self) -> bool:
        """True when the ring is cyclic, i.e. isomorphic to ``Z_n``."""
        return len(set(self.primes)) == len(self.primes)

    def is_squarefree(self) -> bool:
        return all(m == 1 for m in self.exponents)

    def modulus(self) -> FactoredInteger:
        """The ``Z_n`` this ring is isomorphic to (distinct primes only)."""
        if not self.distinct_primes() or self.is_zero_ring:
            raise DomainError(f"{self.origin or self.components} is not cyclic")
        order = sorted(range(len(self.components)), key=lambda j: self.primes[j])
        return FactoredInteger(
            self.cardinality, tuple((self.primes[j], self.exponents[j]) for j in order)
        )

    def check_ideal(self, e) -> tuple:
        e = tuple(int(x) for x in e)
        if len(e) != len(self.components) or any(
            not 0 <= x <= m for x, m in zip(e, self.exponents)
        ):
            raise InvalidIdealError(f"{e} is not an exponent vector of {self.origin or self.components}")
        return e

    def zero_ideal(self) -> tuple:
        return self.exponents

    def whole_ideal(self) -> tuple:
        return (0,) * len(self.components)

    def ideal_size(self, e) -> int:
        return math.prod(p ** (m - x) for p, m, x in zip(self.primes, self.exponents, e))

    def _group_slices(self):
        start = 0
        for g in self.groups:
            yield slice(start, start + g)
            start += g

    def ideal_from_generators(self, gens: Sequence[int]) -> tuple:
        """One generator per factor; each factor reads its generator mod its order."""
        gens = list(gens)
        if len(gens) != len(self.groups):
            raise InvalidIdealError(
                f"expected {len(self.groups)} generator(s) for {self.origin}, got {len(gens)}"
            )
        e = []
        for g, sl in zip(gens, self._group_slices()):
            for p, m in zip(self.primes[sl], self.exponents[sl]):
                x = 0
                g_abs = abs(int(g))
                while x < m and (g_abs == 0 or g_abs % p == 0):
                    if g_abs:
                        g_abs //= p
                    x += 1
                e.append(x)
        return tuple(e)

    def generators(self, e) -> tuple:
        """Display generators of an ideal, one per factor (0 for a zero slot)."""
        out = []
        for sl in self._group_slices():
            ps, ms, xs = self.primes[sl], self.exponents[sl], e[sl]
            if tuple(xs) == tuple(ms):
                out.append(0)
            else:
                out.append(math.prod(p**x for p, x in zip(ps, xs)))
        return tuple(out)

    def label(self, e) -> str:
        gens = "x".join(f"({g})" for g in self.generators(e)) or "(0)"
        return f"{gens} {list(e)}"


def make_zn(n: int) -> StructuredRing:
    """``Z_n`` split into its prime-power components."""
    f = factorize(n)
    return StructuredRing(tuple(p**m for p, m in f.factors), origin=f"zn:{n}")


def make_product(rings: Sequence[StructuredRing]) -> StructuredRing:
    rings = list(rings)
    if not rings:
        raise DomainError("make_product needs at least one ring")
    comps = tuple(q for r in rings for q in r.components)
    groups = tuple(g for r in rings for g in r.groups)
    origin = "prod:" + ",".join(r.origin for r in rings)
    return StructuredRing(comps, origin=origin, groups=groups)


def structured_coords(r: StructuredRing) -> np.ndarray:
    """``(N, r)`` array of residues; row ``i`` is element ``i`` (C order)."""
    if r.is_zero_ring:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.unravel_index(np.arange(r.cardinality), r.components)
    return np.stack(grids, axis=1).astype(np.int64)


def structured_ideal_mask(r: StructuredRing, e) -> int:
    """Mask, in ``to_table`` indexing, of the structured ideal ``e``."""
    coords = structured_coords(r)
    keep = np.ones(len(coords), dtype=bool)
    for j, (p, x) in enumerate(zip(r.primes, e)):
        keep &= coords[:, j] % (p**x) == 0
    return bools_to_mask(keep)


def to_table(r: StructuredRing, cap=None) -> "TableRing":
    """Operation tables of a structured ring, elements in mixed radix."""
    cap = table_cap(cap)
    n = r.cardinality
    if n > cap:
        raise SizeCapError(f"{r.origin or r.components} has {n} elements, cap is {cap}")
    if r.is_zero_ring:
        zero = np.zeros((1, 1), dtype=np.int64)
        return TableRing(zero, zero, 0, None, name=r.origin or "zero", _validated=True)
    coords = structured_coords(r)
    comps = np.array(r.components)
    s = (coords[:, None, :] + coords[None, :, :]) % comps
    add = np.ravel_multi_index(tuple(np.moveaxis(s, 2, 0)), r.components)
    p = (coords[:, None, :] * coords[None, :, :]) % comps
    mul = np.ravel_multi_index(tuple(np.moveaxis(p, 2, 0)), r.components)
    one = int(np.ravel_multi_index(tuple(1 % comps), r.components))
    # generator-based checks are exact and much cheaper than all triples
    return validate_table(add, mul, zero=0, unit=one, name=r.origin, exhaustive=False)


# ---------------------------------------------------------------------------
# table rings


def _chunks(n, size=64):
    for start in range(0, n, size):
        yield start, min(n, start + size)


def _reach(add: np.ndarray, zero: int, gens) -> np.ndarray:
    """Left-nested sums ``((0 + g1) + g2) + ...`` of generators."""
    seen = np.zeros(len(add), dtype=bool)
    seen[zero] = True
    frontier = np.array([zero])
    gens = np.asarray(list(gens), dtype=np.int64)
    while len(frontier) and len(gens):
        nxt = np.unique(add[np.ix_(frontier, gens)])
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return seen


def _greedy_generators(add: np.ndarray, zero: int) -> tuple:
    gens = []
    seen = _reach(add, zero, gens)
    for x in range(len(add)):
        if not seen[x]:
            gens.append(x)
            seen = _reach(add, zero, gens)
    return tuple(gens)


def _first_true(mask: np.ndarray) -> tuple:
    return tuple(int(i) for i in np.argwhere(mask)[0])


class TableRing:
    """A finite ring presented by operation tables.

    Build instances with :func:`validate_table`; the constructor trusts its
    arguments.  Tables are read-only ``int64`` arrays.
    """

    def __init__(self, add, mul, zero, unit, name="", *, embedding=None, _validated=False):
        if not _validated:
            raise TypeError("use validate_table() to build a TableRing")
        self.add = np.asarray(add, dtype=np.int64)
        self.mul = np.asarray(mul, dtype=np.int64)
        self.add.setflags(write=False)
        self.mul.setflags(write=False)
        self.size = len(self.add)
        self.zero = int(zero)
        self.unit = None if unit is None else int(unit)
        self.name = name
        self.embedding = None if embedding is None else tuple(int(i) for i in embedding)
        self.commutative = bool(np.array_equal(self.mul, self.mul.T))
        self.meta = {}
        if self.size == 1:
            self.additive_generators = ()
            self.characteristic = 1
        else:
            self.additive_generators = _greedy_generators(self.add, self.zero)
            self.characteristic = math.lcm(*(self.additive_order(g) for g in self.additive_generators))

    @property
    def unital(self) -> bool:
        return self.unit is not None

    @cached_property
    def neg(self) -> np.ndarray:
        return np.argmax(self.add == self.zero, axis=1)

    def additive_order(self, x: int) -> int:
        k, y = 1, int(x)
        while y != self.zero:
            y = int(self.add[y, x])
            k += 1
        return k

    def multiples(self, c: int) -> np.ndarray:
        """``(c, N)`` array whose row ``a`` is ``a * y`` for every element ``y``."""
        out = np.empty((c, self.size), dtype=np.int64)
        out[0] = self.zero
        ar = np.arange(self.size)
        for a in range(1, c):
            out[a] = self.add[out[a - 1], ar]
        return out

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    @property
    def zero_mask(self) -> int:
        return 1 << self.zero

    def is_ideal(self, mask: int) -> bool:
        b = mask_to_bools(mask, self.size)
        if not b[self.zero]:
            return False
        idx = np.flatnonzero(b)
        return bool(
            b[self.add[np.ix_(idx, idx)]].all()
            and b[self.neg[idx]].all()
            and b[self.mul[:, idx]].all()
            and b[self.mul[idx, :]].all()
        )

    def span_add(self, b: np.ndarray, c: int) -> np.ndarray:
        """Subgroup generated by subgroup ``b`` (bool array) and element ``c``."""
        if b[c]:
            return b
        add, c = self.add, int(c)
        reps, ck = [], c
        while not b[ck]:
            reps.append(ck)
            ck = int(add[ck, c])
        out = b.copy()
        out[add[np.ix_(np.flatnonzero(b), reps)]] = True
        return out

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "zero": self.zero,
            "unit": self.unit,
            "add": self.add.tolist(),
            "mul": self.mul.tolist(),
            "name": self.name,
        }

    def __repr__(self):
        flags = []
        if self.commutative:
            flags.append("commutative")
        flags.append("unital" if self.unital else "non-unital")
        return f"TableRing({self.name or '?'}, size={self.size}, {', '.join(flags)}, char={self.characteristic})"


def _check_addition(add, zero, exhaustive):
    n = len(add)
    ar = np.arange(n)
    bad = add[zero] != ar
    if bad.any():
        raise AdditionAxiomError("zero is not a left additive identity", (zero, int(np.argmax(bad))))
    bad = add != add.T
    if bad.any():
        raise AdditionAxiomError("addition is not commutative", _first_true(bad))
    for x in range(n):
        if len(np.unique(add[x])) != n:
            raise AdditionAxiomError("addition row is not a permutation", (x,))
    if exhaustive:
        for lo, hi in _chunks(n):
            lhs = add[add[lo:hi]]  # (x+y)+z for x in chunk
            rhs = add[np.arange(lo, hi)[:, None, None], add[None, :, :]]
            bad = lhs != rhs
            if bad.any():
                x, y, z = _first_true(bad)
                raise AdditionAxiomError("addition is not associative", (x + lo, y, z))
    else:
        gens = _greedy_generators(add, zero)
        for g in gens:
            lhs = add[add, g]
            rhs = add[ar[:, None], add[:, g][None, :]]
            bad = lhs != rhs
            if bad.any():
                x, y = _first_true(bad)
                raise AdditionAxiomError("addition is not associative", (x, y, g))


def _check_mul_assoc_exhaustive(mul):
    n = len(mul)
    for lo, hi in _chunks(n):
        lhs = mul[mul[lo:hi]]  # (ab)c
        rhs = mul[np.arange(lo, hi)[:, None, None], mul[None, :, :]]  # a(bc)
        bad = lhs != rhs
        if bad.any():
            a, b, c = _first_true(bad)
            raise AssociativityError("multiplication is not associative", (a + lo, b, c))


def _check_distributive(add, mul, gens=None):
    n = len(add)
    ar = np.arange(n)
    cols = ar if gens is None else np.asarray(gens)
    for lo, hi in _chunks(n):
        a = np.arange(lo, hi)[:, None, None]
        # a(b+c) = ab + ac
        lhs = mul[a, add[:, cols][None, :, :]]
        rhs = add[mul[a, ar[None, :, None]], mul[a, cols[None, None, :]]]
        bad = lhs != rhs
        if bad.any():
            i, b, c = _first_true(bad)
            raise DistributivityError("left distributivity fails", (i + lo, b, int(cols[c])))
        # (b+c)a = ba + ca
        lhs = mul[add[:, cols][None, :, :], a]
        rhs = add[mul[ar[None, :, None], a], mul[cols[None, None, :], a]]
        bad = lhs != rhs
        if bad.any():
            i, b, c = _first_true(bad)
            raise DistributivityError("right distributivity fails", (i + lo, b, int(cols[c])))


def validate_table(add, mul, zero=0, unit=None, name="", *, embedding=None, exhaustive=None) -> TableRing:
    """Check the ring axioms and return a :class:`TableRing`.

    Small tables (up to ``EXHAUSTIVE_CHECK_LIMIT`` elements) are checked on all
    triples.  Larger ones are checked on additive generators, which is exact:
    a map that is additive on generators is additive, and a bi-additive
    product that is associative on generators is associative.
    """
    try:
        add = np.array(add, dtype=np.int64)
        mul = np.array(mul, dtype=np.int64)
    except (ValueError, TypeError) as exc:
        raise RingAxiomError(f"tables are not rectangular integer arrays: {exc}") from None
    if add.ndim != 2 or add.shape[0] != add.shape[1] or mul.shape != add.shape:
        raise RingAxiomError(f"tables must be square and of equal size, got {add.shape} and {mul.shape}")
    n = len(add)
    if n == 0:
        raise RingAxiomError("empty ring")
    for t, nm in ((add, "add"), (mul, "mul")):
        if t.min() < 0 or t.max() >= n:
            raise RingAxiomError(f"{nm} table has entries outside 0..{n - 1}")
    if not 0 <= int(zero) < n:
        raise RingAxiomError(f"zero index {zero} out of range")
    zero = int(zero)
    if exhaustive is None:
        exhaustive = n <= EXHAUSTIVE_CHECK_LIMIT
    _check_addition(add, zero, exhaustive)
    if exhaustive:
        _check_mul_assoc_exhaustive(mul)
        _check_distributive(add, mul)
    else:
        gens = _greedy_generators(add, zero)
        _check_distributive(add, mul, gens)
        g = np.asarray(gens)
        lhs = mul[mul[np.ix_(g, g)][:, :, None], g[None, None, :]]
        rhs = mul[g[:, None, None], mul[np.ix_(g, g)][None, :, :]]
        bad = lhs != rhs
        if bad.any():
            a, b, c = _first_true(bad)
            raise AssociativityError("multiplication is not associative", (int(g[a]), int(g[b]), int(g[c])))
    ar = np.arange(n)
    if unit is not None:
        unit = int(unit)
        if not (0 <= unit < n and np.array_equal(mul[unit], ar) and np.array_equal(mul[:, unit], ar)):
            raise UnitError(f"{unit} is not a two-sided multiplicative identity", (unit,))
    elif n > 1:
        cand = np.flatnonzero((mul == ar[None, :]).all(axis=1) & (mul == ar[:, None]).all(axis=0))
        unit = int(cand[0]) if len(cand) else None
    else:
        unit = None
    return TableRing(add, mul, zero, unit, name=name, embedding=embedding, _validated=True)


def load_table(path) -> TableRing:
    """Read a table ring from its JSON file; invalid rings are refused."""
    with open(path) as fh:
        doc = json.load(fh)
    missing = {"size", "zero", "add", "mul"} - set(doc)
    if missing:
        raise RingAxiomError(f"{path}: missing keys {sorted(missing)}")
    ring = validate_table(doc["add"], doc["mul"], doc["zero"], doc.get("unit"), doc.get("name", str(path)))
    if ring.size != doc["size"]:
        raise RingAxiomError(f"{path}: size field {doc['size']} disagrees with tables ({ring.size})")
    return ring


def dump_table(ring: TableRing, path) -> None:
    with open(path, "w") as fh:
        json.dump(ring.to_json(), fh)


# ---------------------------------------------------------------------------
# constructions on table rings


def make_matrix_ring(base: TableRing, k: int, cap=None) -> TableRing:
    """Full ``k x k`` matrix ring over a unital table ring.

    Element index is the row-major entry tuple read in base ``base.size``.
    """
    cap = table_cap(cap)
    if k < 1:
        raise DomainError("matrix size must be >= 1")
    if not base.unital:
        raise DomainError("matrix rings are only built over unital base rings")
    n = base.size
    size = n ** (k * k)
    if size > cap:
        raise SizeCapError(f"M_{k} over a {n}-element ring has {size} elements, cap is {cap}")
    entries = matrix_entries(n, k, size)
    weights = n ** np.arange(k * k - 1, -1, -1)
    flat = entries.reshape(size, k * k)
    add = np.empty((size, size), dtype=np.int64)
    mul = np.empty((size, size), dtype=np.int64)
    for lo, hi in _chunks(size, 128):
        s = base.add[flat[lo:hi, None, :], flat[None, :, :]]
        add[lo:hi] = s @ weights
        a = entries[lo:hi, None]  # (c, 1, k, k)
        b = entries[None, :]  # (1, size, k, k)
        prod = None
        for j in range(k):
            term = base.mul[a[..., :, j][..., :, None], b[..., j, :][..., None, :]]
            prod = term if prod is None else base.add[prod, term]
        mul[lo:hi] = prod.reshape(hi - lo, size, k * k) @ weights
    ident = np.full((k, k), base.zero)
    np.fill_diagonal(ident, base.unit)
    unit = int(ident.reshape(-1) @ weights)
    ring = validate_table(add, mul, zero=int(np.full(k * k, base.zero) @ weights), unit=unit,
                          name=f"mat:{k}:{base.name}")
    ring.meta.update(matrix_base=base, matrix_k=k)
    return ring


def matrix_entries(n: int, k: int, size=None) -> np.ndarray:
    size = n ** (k * k) if size is None else size
    grids = np.unravel_index(np.arange(size), (n,) * (k * k))
    return np.stack(grids, axis=1).reshape(size, k, k).astype(np.int64)


def product_tables(rings: Sequence[TableRing], cap=None) -> TableRing:
    """Direct product of table rings (mixed radix, first factor most significant)."""
    rings = list(rings)
    if not rings:
        raise DomainError("product needs at least one ring")
    cap = table_cap(cap)
    sizes = tuple(r.size for r in rings)
    size = math.prod(sizes)
    if size > cap:
        raise SizeCapError(f"product has {size} elements, cap is {cap}")
    coords = np.stack(np.unravel_index(np.arange(size), sizes), axis=1)
    adds, muls = [], []
    for j, r in enumerate(rings):
        adds.append(r.add[coords[:, None, j], coords[None, :, j]])
        muls.append(r.mul[coords[:, None, j], coords[None, :, j]])
    add = np.ravel_multi_index(tuple(adds), sizes)
    mul = np.ravel_multi_index(tuple(muls), sizes)
    zero = int(np.ravel_multi_index(tuple(r.zero for r in rings), sizes))
    unit = None
    if all(r.unital for r in rings):
        unit = int(np.ravel_multi_index(tuple(r.unit for r in rings), sizes))
    return validate_table(add, mul, zero, unit, name="prod:" + ",".join(r.name for r in rings))


@dataclass
class Quotient:
    """A quotient ring with its projection.

    ``project`` maps an element of the parent to an element of ``ring``;
    ``push`` and ``pull`` map ideals forward and back.
    """

    ring: object
    project: Callable
    push: Callable
    pull: Callable
    kernel: object = None
    projection: np.ndarray = field(default=None, repr=False)


def make_quotient(r, K) -> Quotient:
    if isinstance(r, StructuredRing):
        return _structured_quotient(r, K)
    if isinstance(r, TableRing):
        return _table_quotient(r, K)
    raise DomainError(f"cannot form a quotient of {r!r}")


def _structured_quotient(r: StructuredRing, K) -> Quotient:
    K = r.check_ideal(K)
    keep = [j for j, x in enumerate(K) if x > 0]
    comps = tuple(r.primes[j] ** K[j] for j in keep)
    groups = []
    start = 0
    for g in r.groups:
        c = sum(1 for j in keep if start <= j < start + g)
        if c:
            groups.append(c)
        start += g
    gens = r.generators(K)
    origin = f"quot:{r.origin}/{','.join(str(g) for g in gens)}"
    q = StructuredRing(comps, origin=origin, groups=tuple(groups))

    def project(x):
        return tuple(int(x[j]) % comps[i] for i, j in enumerate(keep))

    def push(e):
        e = r.check_ideal(e)
        return tuple(min(e[j], K[j]) for j in keep)

    def pull(f):
        f = q.check_ideal(f)
        out = [0] * len(K)
        for i, j in enumerate(keep):
            out[j] = f[i]
        return tuple(out)

    return Quotient(q, project, push, pull, kernel=K)


def _table_quotient(r: TableRing, K: int) -> Quotient:
    if not r.is_ideal(K):
        raise InvalidIdealError("quotient by a set that is not an ideal")
    kidx = mask_to_indices(K, r.size)
    proj = np.full(r.size, -1, dtype=np.int64)
    reps = []
    for x in range(r.size):
        if proj[x] < 0:
            proj[r.add[x, kidx]] = len(reps)
            reps.append(x)
    reps = np.array(reps)
    add = proj[r.add[np.ix_(reps, reps)]]
    mul = proj[r.mul[np.ix_(reps, reps)]]
    if len(reps) == 1:
        ring = TableRing(add, mul, 0, None, name=f"{r.name}/K", _validated=True)
    else:
        unit = None if r.unit is None else int(proj[r.unit])
        ring = validate_table(add, mul, int(proj[r.zero]), unit, name=f"{r.name}/K")

    def push(mask):
        return indices_to_mask(np.unique(proj[mask_to_indices(mask, r.size)]))

    def pull(mask):
        b = mask_to_bools(mask, ring.size)
        return bools_to_mask(b[proj])

    return Quotient(ring, lambda x: int(proj[x]), push, pull, kernel=K, projection=proj)


def make_unitization(r: TableRing, cap=None) -> TableRing:
    """Adjoin an identity over ``Z_c``, ``c`` the additive characteristic.

    Element ``(a, x)`` has index ``a * N + x``, so the copy of ``r`` occupies
    indices ``0..N-1`` and element ``x`` of ``r`` keeps its index.
    """
    if r.size == 1:
        raise DomainError("unitization of the zero ring is degenerate")
    if r.unital:
        warnings.warn(f"{r.name or 'ring'} is already unital; its unitization splits off Z_c", stacklevel=2)
    c = r.characteristic
    n = r.size
    size = c * n
    if size > table_cap(cap):
        raise SizeCapError(f"unitization has {size} elements, cap is {table_cap(cap)}")
    mult = r.multiples(c)
    ids = np.arange(size)
    a, x = ids // n, ids % n
    A, B = a[:, None], a[None, :]
    X, Y = x[:, None], x[None, :]
    add = ((A + B) % c) * n + r.add[X, Y]
    mul = ((A * B) % c) * n + r.add[r.add[mult[A, Y], mult[B, X]], r.mul[X, Y]]
    ring = validate_table(add, mul, zero=r.zero, unit=n + r.zero, name=f"unitization({r.name})")
    ring.meta.update(unitization_of=r)
    return ring


def subring_of_ideal(r: TableRing, J: int) -> TableRing:
    """The ideal ``J`` regarded as a ring in its own right."""
    if not r.is_ideal(J):
        raise InvalidIdealError("subring_of_ideal needs an ideal")
    idx = mask_to_indices(J, r.size)
    pos = np.full(r.size, -1, dtype=np.int64)
    pos[idx] = np.arange(len(idx))
    add = pos[r.add[np.ix_(idx, idx)]]
    mul = pos[r.mul[np.ix_(idx, idx)]]
    if len(idx) == 1:
        return TableRing(add, mul, 0, None, name=f"{r.name}|J", embedding=idx, _validated=True)
    return validate_table(add, mul, int(pos[r.zero]), None, name=f"{r.name}|J", embedding=idx)


def null_ring(n: int) -> TableRing:
    """``Z_n`` with identically zero multiplication."""
    ar = np.arange(n)
    return validate_table((ar[:, None] + ar[None, :]) % n, np.zeros((n, n), dtype=int), 0, name=f"null:{n}")


def strictly_upper_triangular(base: TableRing, k: int) -> TableRing:
    """Strictly upper-triangular ``k x k`` matrices over a unital ring."""
    full = make_matrix_ring(base, k, cap=base.size ** (k * k))
    ent = matrix_entries(base.size, k)
    lower = np.tril(np.ones((k, k), dtype=bool))
    keep = (ent[:, lower] == base.zero).all(axis=1)
    sub = subring_of_ideal_like(full, np.flatnonzero(keep))
    sub.name = f"sut:{k}:{base.name}"
    return sub


def subring_of_ideal_like(r: TableRing, idx) -> TableRing:
    """Restrict the tables to a subset closed under both operations."""
    idx = np.asarray(idx)
    pos = np.full(r.size, -1, dtype=np.int64)
    pos[idx] = np.arange(len(idx))
    add = pos[r.add[np.ix_(idx, idx)]]
    mul = pos[r.mul[np.ix_(idx, idx)]]
    if (add < 0).any() or (mul < 0).any():
        raise DomainError("subset is not closed under the ring operations")
    return validate_table(add, mul, int(pos[r.zero]), None, embedding=idx)
