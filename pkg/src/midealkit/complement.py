"""M-complements: ``N'`` with ``N ∩ N' = 0`` and ``N + N'`` an M-ideal."""

from __future__ import annotations

from dataclasses import dataclass, field

from .classify import Verdict, is_m_ideal_oracle
from .errors import PreconditionError, TheoremViolation
from .lattice import IdealLattice, StructuredLattice


@dataclass
class ComplementResult:
    target: int
    constraint: int
    complement: int
    meet: int  # N ∩ N', always the zero ideal
    join: int  # N + N'
    join_is_m_ideal: Verdict
    all_complements: list = field(default=None)

    def to_dict(self, L: IdealLattice) -> dict:
        d = {
            "target": L.label(self.target),
            "constraint": L.label(self.constraint),
            "complement": L.label(self.complement),
            "meet": L.label(self.meet),
            "join": L.label(self.join),
            "join_is_m_ideal": self.join_is_m_ideal.holds,
        }
        if self.all_complements is not None:
            d["all_complements"] = [L.label(x) for x in self.all_complements]
        return d


def verify_certificate(L: IdealLattice, res: ComplementResult) -> bool:
    """Recheck a result from scratch through the oracle."""
    n, c = res.target, res.complement
    return (
        L.meet(n, c) == L.zero
        and L.leq(res.constraint, c)
        and L.join(n, c) == res.join
        and is_m_ideal_oracle(L, L.join(n, c)).holds
    )


def m_complement_containing(L: IdealLattice, n: int, q: int = None) -> ComplementResult:
    """Maximal ideal disjoint from ``n`` and containing ``q``.

    Among several maximal candidates the least in lattice order is returned.
    The join with ``n`` is checked with the oracle; a failure would refute
    the existence theorem and raises :class:`TheoremViolation`.
    """
    q = L.zero if q is None else q
    if L.meet(n, q) != L.zero:
        raise PreconditionError(f"{L.label(n)} and {L.label(q)} intersect nontrivially")
    pool = [x for x in L.above(q) if L.meet(n, x) == L.zero]
    pool_bits = sum(1 << x for x in pool)
    for x in pool:
        if L.up_set(x) & pool_bits == 1 << x:
            j = L.join(n, x)
            verdict = is_m_ideal_oracle(L, j)
            if not verdict:
                raise TheoremViolation(
                    f"maximal disjoint ideal {L.label(x)} of {L.label(n)} gives a non-M-ideal sum"
                )
            return ComplementResult(n, q, x, L.meet(n, x), j, verdict)
    raise AssertionError("unreachable: the pool contains q")  # pragma: no cover


def all_m_complements(L: IdealLattice, n: int) -> list:
    return [x for x in L if L.meet(n, x) == L.zero and is_m_ideal_oracle(L, L.join(n, x))]


def is_m_complement(L: IdealLattice, n: int, x: int) -> bool:
    return L.meet(n, x) == L.zero and bool(is_m_ideal_oracle(L, L.join(n, x)))


def is_regular(L: IdealLattice) -> bool:
    """Von Neumann regularity: every ``a`` has ``x`` with ``a x a = a``."""
    r = L.ring
    if isinstance(L, StructuredLattice):
        return r.is_squarefree()
    mul = r.mul
    for a in range(r.size):
        if not (mul[mul[a], a] == a).any():
            return False
    return True


def relative_complement_check(L: IdealLattice, a: int, n: int, b: int) -> Verdict:
    """Intersecting an M-complement with an ideal above the target.

    Hypotheses (regular ring, distributive ideal lattice, ``a ⊆ n``, ``b`` an
    M-complement of ``a``) are verified and reported as
    :class:`PreconditionError`.  The conclusion is checked inside the ring
    ``n``: ``a ∩ (b ∩ n) = 0`` and ``a + (b ∩ n)`` is an M-ideal of ``n``.
    """
    if not is_regular(L):
        raise PreconditionError("ring is not von Neumann regular")
    if not _distributive(L):
        raise PreconditionError("ideal lattice is not distributive")
    if not L.leq(a, n):
        raise PreconditionError(f"{L.label(a)} is not inside {L.label(n)}")
    if not is_m_complement(L, a, b):
        raise PreconditionError(f"{L.label(b)} is not an M-complement of {L.label(a)}")
    bn = L.meet(b, n)
    if L.meet(a, bn) != L.zero:
        return Verdict(False, (a, bn))
    s = L.join(a, bn)
    sub, to_sub = L.relative(n, "ring")
    v = is_m_ideal_oracle(sub, to_sub[s])
    return Verdict(v.holds, () if v.holds else (s, n))


def _distributive(L: IdealLattice) -> bool:
    cached = getattr(L, "_distributive_cache", None)
    if cached is None:
        cached = L.is_distributive()
        L._distributive_cache = cached
    return cached
