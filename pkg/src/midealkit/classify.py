"""Per-ideal predicates: essential, relatively irreducible, M-ideal and friends.

Every predicate takes an :class:`~midealkit.lattice.IdealLattice` and ideal
indices into it.  Predicates that can fail with a concrete reason return a
:class:`Verdict` whose ``witness`` is the least violating tuple of indices in
lattice order.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field

import numpy as np

from .arith import FactoredInteger
from .errors import DomainError, InvariantError, TheoremViolation
from .lattice import IdealLattice, StructuredLattice, TableLattice, _bits, minimal_ideals
from .rings import matrix_entries, mask_to_bools, bools_to_mask


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: tuple = ()

    def __bool__(self):
        return self.holds


def _require_nonzero_ring(L: IdealLattice):
    if len(L) < 2:
        raise DomainError("classification needs a nonzero ring")


# ---------------------------------------------------------------------------
# the three base predicates


def is_essential(L: IdealLattice, j: int, fast: bool = True) -> Verdict:
    """``j`` meets every nonzero ideal.

    With ``fast`` only minimal ideals are tested; every nonzero ideal of a
    finite ring contains one, and the least violating ideal is always minimal,
    so both paths return the same witness.
    """
    if j == L.zero:
        return Verdict(False, (L.top,))
    candidates = minimal_ideals(L) if fast else L.nonzero()
    for i in candidates:
        if L.meet(j, i) == L.zero:
            return Verdict(False, (i,))
    return Verdict(True)


def is_relatively_irreducible(L: IdealLattice, i: int, fast: bool = True) -> Verdict:
    """No two nonzero ideals inside ``i`` intersect trivially.

    The fast path counts minimal ideals inside ``i``: two distinct ones meet
    in zero, and any violating pair contains such a pair.
    """
    if fast:
        atoms = [a for a in minimal_ideals(L) if L.leq(a, i)]
        if len(atoms) >= 2:
            return Verdict(False, (atoms[0], atoms[1]))
        return Verdict(True)
    sub = [x for x in L.below(i) if x != L.zero]
    for a_pos, a in enumerate(sub):
        for b in sub[a_pos + 1:]:
            if L.meet(a, b) == L.zero:
                return Verdict(False, (a, b))
    return Verdict(True)


def is_m_ideal_oracle(L: IdealLattice, j: int) -> Verdict:
    """Two-ideal form of the M-ideal definition, checked on every pair."""
    zero = L.zero
    hits = 0
    for i in L.nonzero():
        if L.meet(j, i) != zero:
            hits |= 1 << i
    members = _bits(hits)
    for pos, a in enumerate(members):
        for b in members[pos + 1:]:
            m = L.meet(a, b)
            if m != zero and not hits >> m & 1:
                return Verdict(False, (a, b))
    return Verdict(True)


def is_m_ideal(L: IdealLattice, j: int) -> bool:
    """M-ideal via the dichotomy: essential or relatively irreducible."""
    return bool(is_essential(L, j)) or bool(is_relatively_irreducible(L, j))


def is_m_ideal_zn(f: FactoredInteger, e) -> bool:
    """Closed-form M-ideal test for the ideal with exponents ``e`` in ``Z_n``.

    Fails exactly when two distinct primes have exponent below their bound
    while some prime sits at its bound.
    """
    e = f.check(e)
    bounds = f.exponents
    strict = [x < m for x, m in zip(e, bounds)]
    if not any(strict) or all(strict):
        # zero ideal, or essential (which includes the whole ring)
        return True
    return sum(strict) < 2


def zn_is_essential(f: FactoredInteger, e) -> bool:
    e = f.check(e)
    return all(x < m for x, m in zip(e, f.exponents))


def _zn_view(L: IdealLattice):
    """``(FactoredInteger, permutation)`` for a cyclic structured lattice, else None."""
    if not isinstance(L, StructuredLattice) or not L.ring.distinct_primes() or L.ring.is_zero_ring:
        return None
    r = L.ring
    order = sorted(range(len(r.components)), key=lambda j: r.primes[j])
    return r.modulus(), order


def is_m_ideal_closed_form(L: IdealLattice, j: int) -> bool:
    view = _zn_view(L)
    if view is None:
        raise DomainError("closed form applies to cyclic rings Z_n only")
    f, order = view
    e = L.ideals[j]
    return is_m_ideal_zn(f, tuple(e[k] for k in order))


# ---------------------------------------------------------------------------
# order-theoretic predicates


def is_minimal(L: IdealLattice, i: int) -> Verdict:
    if i == L.zero:
        return Verdict(False, (i,))
    inner = [x for x in L.below(i) if x not in (L.zero, i)]
    if inner:
        return Verdict(False, (inner[0],))
    return Verdict(True)


def is_maximal(L: IdealLattice, i: int) -> Verdict:
    if i == L.top:
        return Verdict(False, (i,))
    outer = [x for x in L.above(i) if x not in (i, L.top)]
    if outer:
        return Verdict(False, (outer[0],))
    return Verdict(True)


def is_direct_summand(L: IdealLattice, i: int) -> Verdict:
    """``i`` has a complement; the witness is the complement when it holds.

    When it fails the witness lists every ideal meeting ``i`` trivially, none
    of which sums with ``i`` to the whole ring.
    """
    disjoint = [x for x in L if L.meet(i, x) == L.zero]
    for x in disjoint:
        if L.join(i, x) == L.top:
            return Verdict(True, (x,))
    return Verdict(False, tuple(disjoint))


# ---------------------------------------------------------------------------
# relative predicates and closedness


def is_essential_in(L: IdealLattice, i: int, j: int, reading: str = "ring") -> Verdict:
    """``i`` is essential as an ideal of the ideal ``j``."""
    if not L.leq(i, j):
        raise DomainError("relative predicates need i inside j")
    sub, to_sub = L.relative(j, reading)
    v = is_essential(sub, to_sub[i])
    return Verdict(v.holds, ())


def is_m_ideal_in(L: IdealLattice, i: int, j: int, reading: str = "ring") -> Verdict:
    """``i`` is an M-ideal of the ideal ``j`` (oracle in the relative lattice)."""
    if not L.leq(i, j):
        raise DomainError("relative predicates need i inside j")
    sub, to_sub = L.relative(j, reading)
    return Verdict(is_m_ideal_oracle(sub, to_sub[i]).holds, ())


def is_essentially_closed(L: IdealLattice, i: int, reading: str = "ring") -> Verdict:
    for j in L.above(i):
        if j != i and is_essential_in(L, i, j, reading):
            return Verdict(False, (j,))
    return Verdict(True)


def is_m_closed(L: IdealLattice, i: int, reading: str = "ring") -> Verdict:
    for j in L.above(i):
        if j != i and is_m_ideal_in(L, i, j, reading):
            return Verdict(False, (j,))
    return Verdict(True)


# ---------------------------------------------------------------------------
# reports


@dataclass
class ClassificationReport:
    ideal: int
    label: str
    is_zero: bool
    is_whole: bool
    essential: bool
    relatively_irreducible: bool
    minimal: bool
    maximal: bool
    m_ideal: bool
    essentially_closed: bool
    m_closed: bool
    direct_summand: bool
    method: str
    witnesses: dict = field(default_factory=dict)
    reading: str = "ring"
    reading_divergence: bool = False
    conventions: tuple = ("proper-means-nonzero-proper",)

    def to_dict(self, L: IdealLattice = None) -> dict:
        d = asdict(self)
        d["conventions"] = list(self.conventions)
        if L is not None:
            d["witnesses"] = {k: [L.label(x) for x in v] for k, v in self.witnesses.items()}
        else:
            d["witnesses"] = {k: list(v) for k, v in self.witnesses.items()}
        return d


def classify(L: IdealLattice, i: int, method: str = "auto", reading: str = "ring") -> ClassificationReport:
    """Every predicate for ideal ``i`` with witnesses for the false ones."""
    _require_nonzero_ring(L)
    if method == "auto":
        method = "closed-form" if _zn_view(L) is not None else "dichotomy"
    ess = is_essential(L, i)
    rel = is_relatively_irreducible(L, i)
    oracle = is_m_ideal_oracle(L, i)
    if method == "closed-form":
        m_ideal = is_m_ideal_closed_form(L, i)
    elif method == "dichotomy":
        m_ideal = is_m_ideal(L, i)
    elif method == "oracle":
        m_ideal = oracle.holds
    else:
        raise DomainError(f"unknown method {method!r}")
    if m_ideal != (ess.holds or rel.holds) or m_ideal != oracle.holds:
        raise InvariantError(
            f"M-ideal paths disagree on {L.label(i)}: {method}={m_ideal}, "
            f"essential={ess.holds}, rel.irr={rel.holds}, oracle={oracle.holds}"
        )
    mini = is_minimal(L, i)
    maxi = is_maximal(L, i)
    ec = is_essentially_closed(L, i, reading)
    mc = is_m_closed(L, i, reading)
    ds = is_direct_summand(L, i)
    divergence = False
    if isinstance(L, TableLattice):
        other = "ambient" if reading == "ring" else "ring"
        divergence = (
            ec.holds != is_essentially_closed(L, i, other).holds
            or mc.holds != is_m_closed(L, i, other).holds
        )
    witnesses = {}
    for name, v in (
        ("essential", ess),
        ("relatively_irreducible", rel),
        ("m_ideal", oracle),
        ("minimal", mini),
        ("maximal", maxi),
        ("essentially_closed", ec),
        ("m_closed", mc),
    ):
        if not v.holds:
            witnesses[name] = v.witness
    witnesses["direct_summand"] = ds.witness
    return ClassificationReport(
        ideal=i,
        label=L.label(i),
        is_zero=i == L.zero,
        is_whole=i == L.top,
        essential=ess.holds,
        relatively_irreducible=rel.holds,
        minimal=mini.holds,
        maximal=maxi.holds,
        m_ideal=m_ideal,
        essentially_closed=ec.holds,
        m_closed=mc.holds,
        direct_summand=ds.holds,
        method=method,
        witnesses=witnesses,
        reading=reading,
        reading_divergence=divergence,
    )


def check_witnesses(L: IdealLattice, rep: ClassificationReport) -> bool:
    """Re-verify every witness stored in a report against the lattice."""
    i, w, z = rep.ideal, rep.witnesses, L.zero
    ok = True
    if "essential" in w:
        (x,) = w["essential"]
        ok &= x != z and L.meet(i, x) == z
    if "relatively_irreducible" in w:
        a, b = w["relatively_irreducible"]
        ok &= a != z and b != z and L.leq(a, i) and L.leq(b, i) and L.meet(a, b) == z
    if "m_ideal" in w:
        a, b = w["m_ideal"]
        m = L.meet(a, b)
        ok &= m != z and L.meet(i, a) != z and L.meet(i, b) != z and L.meet(i, m) == z
    if "minimal" in w:
        (x,) = w["minimal"]
        ok &= i == z if x == i else (x != z and x != i and L.leq(x, i))
    if "maximal" in w:
        (x,) = w["maximal"]
        ok &= i == L.top if x == i else (x != L.top and x != i and L.leq(i, x))
    if "essentially_closed" in w:
        (x,) = w["essentially_closed"]
        ok &= x != i and bool(is_essential_in(L, i, x, rep.reading))
    if "m_closed" in w:
        (x,) = w["m_closed"]
        ok &= x != i and bool(is_m_ideal_in(L, i, x, rep.reading))
    ds = w.get("direct_summand", ())
    if rep.direct_summand:
        ok &= L.meet(i, ds[0]) == z and L.join(i, ds[0]) == L.top
    else:
        disjoint = tuple(x for x in L if L.meet(i, x) == z)
        ok &= ds == disjoint and all(L.join(i, x) != L.top for x in ds)
    return bool(ok)


# ---------------------------------------------------------------------------
# direct products


class ProductClass(str, enum.Enum):
    ESSENTIAL_PRODUCT = "essential-product"
    SINGLE_SLOT_IRREDUCIBLE = "single-slot-irreducible"
    NOT_M_IDEAL = "not-m-ideal"

    @property
    def m_ideal(self) -> bool:
        return self is not ProductClass.NOT_M_IDEAL


def classify_product(components) -> ProductClass:
    """Classify ``prod_k I_k`` from per-factor data only.

    ``components`` is a list of ``(lattice, ideal_index)`` pairs, one per
    factor ring.  All slots nonzero: M-ideal iff each slot is essential.
    Exactly one nonzero slot: M-ideal iff that slot is relatively
    irreducible.  Otherwise not an M-ideal.
    """
    components = list(components)
    if len(components) < 2:
        raise DomainError("classify_product needs at least two factors")
    nonzero = [(L, i) for L, i in components if i != L.zero]
    if not nonzero:
        raise DomainError("at least one factor ideal must be nonzero")
    if len(nonzero) == len(components):
        if all(is_essential(L, i) for L, i in components):
            return ProductClass.ESSENTIAL_PRODUCT
        return ProductClass.NOT_M_IDEAL
    if len(nonzero) == 1:
        L, i = nonzero[0]
        if is_relatively_irreducible(L, i):
            return ProductClass.SINGLE_SLOT_IRREDUCIBLE
    return ProductClass.NOT_M_IDEAL


# ---------------------------------------------------------------------------
# structure


def _square_is_zero(L: IdealLattice, i: int) -> bool:
    if isinstance(L, StructuredLattice):
        r = L.ring
        return all(2 * x >= m for x, m in zip(L.ideals[i], r.exponents) if x < m)
    idx = L.elements(i)
    return bool((L.ring.mul[np.ix_(idx, idx)] == L.ring.zero).all())


def is_simple_ideal_ring(L: IdealLattice, i: int) -> bool:
    """Ideal ``i`` regarded as a ring is simple (two ideals, nonzero product)."""
    if i == L.zero or _square_is_zero(L, i):
        return False
    card = L.cardinality(i)
    if card > 1 and all(card % d for d in range(2, int(card**0.5) + 1)):
        return True  # prime order: only two additive subgroups
    sub, _ = L.relative(i, "ring")
    return len(sub) == 2


def every_proper_m_ideal_is_summand(L: IdealLattice) -> Verdict:
    """Scan nonzero proper M-ideals; witness is the first one with no complement."""
    _require_nonzero_ring(L)
    for i in range(1, L.top):
        if is_m_ideal_oracle(L, i) and not is_direct_summand(L, i):
            return Verdict(False, (i,))
    return Verdict(True)


def is_direct_sum_of_simple(L: IdealLattice) -> Verdict:
    """Find independent minimal ideals, each a simple ring, summing to the ring.

    Ideal lattices are modular, so greedily keeping each minimal ideal that
    meets the running sum trivially yields a maximal independent family.
    The witness lists the chosen summands when it holds.
    """
    _require_nonzero_ring(L)
    chosen, acc = [], L.zero
    for a in minimal_ideals(L):
        if L.meet(acc, a) == L.zero:
            chosen.append(a)
            acc = L.join(acc, a)
    if acc != L.top:
        return Verdict(False, tuple(chosen))
    for a in chosen:
        if not is_simple_ideal_ring(L, a):
            return Verdict(False, (a,))
    return Verdict(True, tuple(chosen))


def nonzero_proper_m_ideals(L: IdealLattice) -> list:
    return [i for i in range(1, L.top) if is_m_ideal_oracle(L, i)]


@dataclass(frozen=True)
class OverIdeal:
    kind: str  # "summand" or "m_ideal"
    ideal: int


def find_proper_m_ideal_over(L: IdealLattice, i: int) -> OverIdeal:
    """A complement of ``i`` if it is a summand, else a proper M-ideal above it.

    The M-ideal is the least maximal member of the proper non-summand ideals
    containing ``i``; it is checked with the oracle before being returned.
    """
    if i in (L.zero, L.top):
        raise DomainError("need a nonzero proper ideal")
    ds = is_direct_summand(L, i)
    if ds:
        return OverIdeal("summand", ds.witness[0])
    pool = [k for k in L.above(i) if k != L.top and not is_direct_summand(L, k)]
    pool_bits = sum(1 << k for k in pool)
    for k in pool:
        if (L.up_set(k) & pool_bits) == 1 << k:
            if not is_m_ideal_oracle(L, k):
                raise TheoremViolation(f"maximal non-summand {L.label(k)} over {L.label(i)} is not an M-ideal")
            return OverIdeal("m_ideal", k)
    raise InvariantError("empty candidate pool")  # pragma: no cover


def m_dimension(L: IdealLattice) -> int:
    """Length of the longest strictly ascending chain of M-ideals."""
    members = [i for i in L if is_m_ideal(L, i)]
    best = {}
    for i in members:
        best[i] = max((best[j] + 1 for j in members if j in best and j != i and L.leq(j, i)), default=0)
    return max(best.values(), default=0)


# ---------------------------------------------------------------------------
# matrix rings


def transport_matrix_ideal(base, k: int, direction: str, ideal: int, matrix_ring=None) -> int:
    """Map ideals between ``base`` and ``M_k(base)``.

    ``direction="up"`` sends ``I`` to ``M_k(I)``; ``"down"`` recovers ``I``
    from a matrix ideal as the set of its top-left entries.
    """
    n = base.size
    ent = matrix_entries(n, k)
    if direction == "up":
        inside = mask_to_bools(ideal, n)
        return bools_to_mask(inside[ent].all(axis=(1, 2)))
    if direction == "down":
        size = n ** (k * k)
        members = np.flatnonzero(mask_to_bools(ideal, size))
        corner = np.zeros(n, dtype=bool)
        corner[ent[members, 0, 0]] = True
        got = bools_to_mask(corner)
        if transport_matrix_ideal(base, k, "up", got) != ideal:
            raise InvariantError("matrix ideal is not of the form M_k(I)")
        return got
    raise DomainError(f"direction must be 'up' or 'down', got {direction!r}")
