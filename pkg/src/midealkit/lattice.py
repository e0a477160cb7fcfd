"""Ideal lattices of finite rings.

Ideals are stored once, sorted by cardinality and then by key, so index 0 is
the zero ideal and the last index is the whole ring.  All predicates in
:mod:`midealkit.classify` work on these indices.
"""

from __future__ import annotations

import math
from itertools import product

import numpy as np

from .errors import DomainError, SizeCapError, UnsupportedOperationError
from .rings import (
    StructuredRing,
    TableRing,
    bools_to_mask,
    mask_to_bools,
    mask_to_indices,
    subring_of_ideal,
)

DEFAULT_LATTICE_CAP = 20_000
# meet/join tables are precomputed below this many ideals
_TABLE_LIMIT = 2048


class IdealLattice:
    """Finite lattice of two-sided ideals of ``ring``.

    Subclasses supply the key operations; the base class turns them into
    index arithmetic with cached meet tables and order bitsets.
    """

    def __init__(self, ring, keys):
        self.ring = ring
        self.ideals = sorted(set(keys), key=self._sort_key)
        self.index = {k: i for i, k in enumerate(self.ideals)}
        self._meet = None
        self._up = None
        self._down = None
        self._relative = {}

    # -- subclass hooks -------------------------------------------------
    def _sort_key(self, key):
        raise NotImplementedError

    def _meet_key(self, a, b):
        raise NotImplementedError

    def _leq_key(self, a, b):
        raise NotImplementedError

    def cardinality(self, i) -> int:
        raise NotImplementedError

    def label(self, i) -> str:
        raise NotImplementedError

    def _restricted(self, keys):
        return type(self)(self.ring, keys)

    # -- basic structure -------------------------------------------------
    def __len__(self):
        return len(self.ideals)

    def __iter__(self):
        return iter(range(len(self.ideals)))

    def __repr__(self):
        return f"{type(self).__name__}({len(self)} ideals)"

    @property
    def zero(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.ideals) - 1

    def nonzero(self):
        return range(1, len(self.ideals))

    def find(self, key) -> int:
        try:
            return self.index[key]
        except KeyError:
            raise DomainError(f"{key!r} is not an ideal of this lattice") from None

    def leq(self, i, j) -> bool:
        if self._up is not None:
            return bool(self._up[i] >> j & 1)
        return self._leq_key(self.ideals[i], self.ideals[j])

    def meet(self, i, j) -> int:
        if self._meet is None and len(self) <= _TABLE_LIMIT:
            self._build_meet_table()
        if self._meet is not None:
            return self._meet[i][j]
        return self.index[self._meet_key(self.ideals[i], self.ideals[j])]

    def join(self, i, j) -> int:
        common = self.up_set(i) & self.up_set(j)
        return (common & -common).bit_length() - 1

    def _build_meet_table(self):
        keys = self.ideals
        idx = self.index
        mk = self._meet_key
        self._meet = [[idx[mk(a, b)] for b in keys] for a in keys]

    def _build_order(self):
        n = len(self)
        up = [0] * n
        down = [0] * n
        for i in range(n):
            a = self.ideals[i]
            for j in range(i, n):
                if self._leq_key(a, self.ideals[j]):
                    up[i] |= 1 << j
                    down[j] |= 1 << i
        self._up, self._down = up, down

    def up_set(self, i) -> int:
        """Bitset of ideals containing ideal ``i`` (itself included)."""
        if self._up is None:
            self._build_order()
        return self._up[i]

    def down_set(self, i) -> int:
        """Bitset of ideals contained in ideal ``i`` (itself included)."""
        if self._down is None:
            self._build_order()
        return self._down[i]

    def below(self, i):
        """Indices of ideals contained in ``i``, in lattice order."""
        return _bits(self.down_set(i))

    def above(self, i):
        return _bits(self.up_set(i))

    def restrict(self, j) -> "IdealLattice":
        """Ideals of the ring contained in ideal ``j``; ``j`` becomes the top."""
        return self._restricted([self.ideals[i] for i in self.below(j)])

    def relative(self, j, reading="ring"):
        """Lattice of ideals of ideal ``j`` and a map from our indices into it.

        ``reading="ambient"`` uses ideals of the whole ring lying inside ``j``;
        ``reading="ring"`` uses ideals of ``j`` regarded as a ring.  Returns
        ``(lattice, to_sub)`` where ``to_sub[i]`` is the position of our ideal
        ``i`` (for ``i`` inside ``j``) in the returned lattice.
        """
        cache_key = (j, reading)
        if cache_key in self._relative:
            return self._relative[cache_key]
        if reading == "ambient" or (reading == "ring" and self._readings_agree()):
            sub = self.restrict(j)
            to_sub = {i: sub.index[self.ideals[i]] for i in self.below(j)}
        elif reading == "ring":
            sub, to_sub = self._ring_reading(j)
        else:
            raise DomainError(f"unknown reading {reading!r}")
        self._relative[cache_key] = (sub, to_sub)
        return sub, to_sub

    def _readings_agree(self) -> bool:
        return False

    def _ring_reading(self, j):
        raise NotImplementedError

    # -- lattice-level queries -------------------------------------------
    def is_distributive(self) -> bool:
        n = len(self)
        for a in range(n):
            for b in range(n):
                jab = self.join(a, b)
                for c in range(n):
                    if self.meet(jab, c) != self.join(self.meet(a, c), self.meet(b, c)):
                        return False
        return True


def _bits(x: int):
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


class StructuredLattice(IdealLattice):
    """Ideals of a :class:`StructuredRing` as exponent tuples."""

    def _sort_key(self, e):
        return (self.ring.ideal_size(e), tuple(-x for x in e))

    def _meet_key(self, a, b):
        return tuple(max(x, y) for x, y in zip(a, b))

    def _join_key(self, a, b):
        return tuple(min(x, y) for x, y in zip(a, b))

    def _leq_key(self, a, b):
        return all(x >= y for x, y in zip(a, b))

    def join(self, i, j) -> int:
        return self.index[self._join_key(self.ideals[i], self.ideals[j])]

    def cardinality(self, i) -> int:
        return self.ring.ideal_size(self.ideals[i])

    def label(self, i) -> str:
        return self.ring.label(self.ideals[i])

    def generators(self, i):
        return self.ring.generators(self.ideals[i])

    def _readings_agree(self) -> bool:
        # in a cyclic ring every additive subgroup is an ideal
        return self.ring.distinct_primes()

    def _ring_reading(self, j):
        from .rings import to_table

        tlat = enumerate_ideals(to_table(self.ring))
        from .rings import structured_ideal_mask

        masks = {i: structured_ideal_mask(self.ring, self.ideals[i]) for i in self.below(j)}
        sub, tsub = tlat._ring_reading(tlat.find(masks[j]))
        return sub, {i: tsub[tlat.find(m)] for i, m in masks.items()}


class TableLattice(IdealLattice):
    """Ideals of a :class:`TableRing` as integer bit masks."""

    def _sort_key(self, m):
        return (m.bit_count(), m)

    def _meet_key(self, a, b):
        return a & b

    def _leq_key(self, a, b):
        return a & ~b == 0

    def meet(self, i, j) -> int:
        if self._meet is None and len(self) <= _TABLE_LIMIT:
            self._build_meet_table()
        if self._meet is not None:
            return self._meet[i][j]
        return self.index[self.ideals[i] & self.ideals[j]]

    def cardinality(self, i) -> int:
        return self.ideals[i].bit_count()

    def elements(self, i):
        return mask_to_indices(self.ideals[i], self.ring.size)

    def label(self, i) -> str:
        idx = self.elements(i)
        gens = minimal_generators(self.ring, self.ideals[i])
        return f"<{','.join(map(str, gens)) or self.ring.zero}>#{len(idx)}"

    def _ring_reading(self, j):
        sub_ring = subring_of_ideal(self.ring, self.ideals[j])
        sub = enumerate_ideals(sub_ring)
        emb = np.asarray(sub_ring.embedding)
        pos = np.full(self.ring.size, -1, dtype=np.int64)
        pos[emb] = np.arange(len(emb))
        to_sub = {}
        for i in self.below(j):
            local = bools_to_mask(np.isin(np.arange(len(emb)), pos[self.elements(i)]))
            to_sub[i] = sub.find(local)
        return sub, to_sub


# ---------------------------------------------------------------------------
# enumeration


def generated_ideal(r: TableRing, gens) -> int:
    """Smallest two-sided ideal of ``r`` containing ``gens`` (as a mask).

    Closes the additive span under left and right multiplication by the
    additive generators of ``r``; by bi-additivity that is closure under
    multiplication by every element.
    """
    b = np.zeros(r.size, dtype=bool)
    b[r.zero] = True
    for g in gens:
        g = int(g)
        if not 0 <= g < r.size:
            raise DomainError(f"element {g} out of range for a ring of size {r.size}")
        b = r.span_add(b, g)
    return bools_to_mask(_close_ideal(r, b))


def _close_ideal(r: TableRing, b: np.ndarray) -> np.ndarray:
    s = np.asarray(r.additive_generators, dtype=np.int64)
    if not len(s):
        return b
    while True:
        idx = np.flatnonzero(b)
        prods = np.unique(np.concatenate([r.mul[np.ix_(s, idx)].ravel(), r.mul[np.ix_(idx, s)].ravel()]))
        new = prods[~b[prods]]
        if not len(new):
            return b
        for c in new:
            b = r.span_add(b, int(c))


def minimal_generators(r: TableRing, mask: int) -> list:
    """A short generating set of the ideal ``mask``, chosen greedily by index."""
    target = mask_to_bools(mask, r.size)
    b = np.zeros(r.size, dtype=bool)
    b[r.zero] = True
    gens = []
    for x in np.flatnonzero(target):
        if not b[x]:
            gens.append(int(x))
            b = _close_ideal(r, r.span_add(b, int(x)))
            if np.array_equal(b, target):
                break
    return gens


def _join_masks(r: TableRing, a: int, gens_b) -> int:
    """Ideal ``a`` plus the ideal generated by ``gens_b``."""
    bb = mask_to_bools(a, r.size)
    for g in gens_b:
        bb = r.span_add(bb, g)
    return bools_to_mask(_close_ideal(r, bb))


def _enumerate_table(r: TableRing, cap: int) -> TableLattice:
    principal = {}
    for x in range(r.size):
        m = generated_ideal(r, [x])
        principal.setdefault(m, x)
    principal.setdefault(r.zero_mask, r.zero)
    prin = list(principal.items())
    found = {m: None for m, _ in prin}
    queue = list(found)
    while queue:
        a = queue.pop()
        for pm, x in prin:
            if pm & ~a == 0:
                continue
            j = _join_masks(r, a, [x])
            if j not in found:
                found[j] = None
                queue.append(j)
                if len(found) > cap:
                    raise SizeCapError(f"ideal lattice exceeds {cap} ideals")
    return TableLattice(r, found)


def enumerate_ideals(r, cap=None) -> IdealLattice:
    """All two-sided ideals of a structured or table ring."""
    cap = DEFAULT_LATTICE_CAP if cap is None else int(cap)
    if isinstance(r, StructuredRing):
        count = math.prod(m + 1 for m in r.exponents)
        if count > cap:
            raise SizeCapError(f"{r.origin} has {count} ideals, cap is {cap}")
        return StructuredLattice(r, product(*(range(m + 1) for m in r.exponents)))
    if isinstance(r, TableRing):
        return _enumerate_table(r, cap)
    raise DomainError(f"cannot enumerate ideals of {r!r}")


# ---------------------------------------------------------------------------
# distinguished ideals


def minimal_ideals(L: IdealLattice) -> list:
    """Atoms of the lattice."""
    return [i for i in L.nonzero() if L.down_set(i) == (1 << i) | 1]


def maximal_ideals(L: IdealLattice) -> list:
    """Coatoms of the lattice."""
    top = L.top
    return [i for i in range(top) if L.up_set(i) == (1 << i) | (1 << top)]


def socle(L: IdealLattice) -> int:
    acc = L.zero
    for i in minimal_ideals(L):
        acc = L.join(acc, i)
    return acc


def jacobson_radical(L: IdealLattice) -> int:
    """Meet of the maximal ideals; commutative unital rings only."""
    r = L.ring
    if isinstance(r, TableRing) and not (r.commutative and r.unital):
        raise UnsupportedOperationError("Jacobson radical is only computed for commutative unital rings")
    if isinstance(r, StructuredRing) and r.is_zero_ring:
        raise UnsupportedOperationError("zero ring")
    acc = L.top
    for i in maximal_ideals(L):
        acc = L.meet(acc, i)
    return acc


def hasse(L: IdealLattice) -> list:
    """Covering pairs ``(a, b)``: ``a`` strictly inside ``b``, nothing between."""
    edges = []
    for b in L:
        strict_below = L.down_set(b) & ~(1 << b)
        for a in _bits(strict_below):
            between = strict_below & L.up_set(a) & ~(1 << a)
            if not between:
                edges.append((a, b))
    return sorted(edges)


def to_dot(L: IdealLattice, attrs=None, name="ideals") -> str:
    """Hasse diagram in DOT syntax, edges pointing upward.

    ``attrs`` maps an index to extra node attributes (``{"mideal": "true"}``).
    """
    attrs = attrs or {}
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=box];"]
    for i in L:
        extra = dict(attrs.get(i, {}))
        items = [f'label="{_dot_escape(L.label(i))}"'] + [f'{k}="{v}"' for k, v in sorted(extra.items())]
        lines.append(f"  n{i} [{', '.join(items)}];")
    for a, b in hasse(L):
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')
