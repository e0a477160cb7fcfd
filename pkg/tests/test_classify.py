from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from midealkit import classify as cl
from midealkit.arith import factorize
from midealkit.errors import DomainError
from midealkit.lattice import enumerate_ideals
from midealkit.rings import (
    make_matrix_ring,
    make_product,
    make_zn,
    mask_to_indices,
    null_ring,
    strictly_upper_triangular,
    to_table,
)

from oracles import (
    all_ideals,
    essential,
    m_ideal,
    m_ideal_nary,
    relatively_irreducible,
    zn_ideal_sets,
)


def zl(n):
    return enumerate_ideals(make_zn(n))


def gen(L, i):
    return L.ring.cardinality // L.cardinality(i)


def at(L, d):
    return next(i for i in L if gen(L, i) == d)


# -- examples ---------------------------------------------------------------


def test_essential_examples():
    L = zl(12)
    v = cl.is_essential(L, at(L, 3))
    assert not v and [gen(L, x) for x in v.witness] == [4]
    assert cl.is_essential(L, at(L, 2))
    for n in (2, 12, 30):
        assert not cl.is_essential(zl(n), 0)


def test_relatively_irreducible_examples():
    L = zl(12)
    assert cl.is_relatively_irreducible(L, at(L, 3))
    L = zl(6)
    v = cl.is_relatively_irreducible(L, L.top)
    assert not v and sorted(gen(L, x) for x in v.witness) == [2, 3]
    for n in (12, 30, 900):
        L = zl(n)
        assert all(cl.is_relatively_irreducible(L, a) for a in cl.minimal_ideals(L))


def test_m_ideal_oracle_examples():
    L = zl(30)
    v = cl.is_m_ideal_oracle(L, at(L, 2))
    assert not v and {gen(L, x) for x in v.witness} == {3, 5}
    L = zl(12)
    assert cl.is_m_ideal_oracle(L, at(L, 3))
    assert cl.is_m_ideal_oracle(L, L.zero)


def test_m_ideal_dichotomy_examples():
    L = zl(24)
    j = at(L, 6)
    assert cl.is_m_ideal(L, j) and not cl.is_essential(L, j)
    L = zl(900)
    assert not cl.is_m_ideal(L, at(L, 60))
    L = zl(6)
    assert cl.is_m_ideal(L, at(L, 2))


def test_closed_form_examples():
    f = factorize(900)
    assert cl.is_m_ideal_zn(f, (1, 1, 0)) and cl.zn_is_essential(f, (1, 1, 0))
    assert cl.is_m_ideal_zn(f, (1, 0, 1))
    assert not cl.is_m_ideal_zn(f, (2, 1, 1))
    f = factorize(180)
    assert not cl.is_m_ideal_zn(f, (0, 0, 1))
    assert not cl.is_m_ideal_zn(f, (1, 1, 1))
    assert cl.is_m_ideal_zn(f, f.zero_vector()) and cl.is_m_ideal_zn(f, f.whole_vector())
    with pytest.raises(DomainError):
        cl.is_m_ideal_zn(f, (3, 0, 0))


def test_closed_form_only_for_cyclic():
    L = enumerate_ideals(make_product([make_zn(2), make_zn(2)]))
    with pytest.raises(DomainError):
        cl.is_m_ideal_closed_form(L, 1)


def test_direct_summand_examples():
    L = zl(12)
    v = cl.is_direct_summand(L, at(L, 4))
    assert v and [gen(L, x) for x in v.witness] == [3]
    assert not cl.is_direct_summand(zl(4), 1)
    L = zl(6)
    v = cl.is_direct_summand(L, at(L, 2))
    assert v and [gen(L, x) for x in v.witness] == [3]


def test_closedness_examples():
    L = zl(4)
    assert not cl.is_essentially_closed(L, at(L, 2))
    L = zl(6)
    assert cl.is_essentially_closed(L, at(L, 2))
    assert not cl.is_m_closed(L, at(L, 2))


def test_minimal_and_maximal_flags():
    L = zl(180)
    rep = cl.classify(L, at(L, 5))
    assert rep.maximal and not rep.m_ideal and not rep.minimal
    assert cl.check_witnesses(L, rep)


def test_classify_report_z30_two():
    L = zl(30)
    rep = cl.classify(L, at(L, 2))
    assert rep.method == "closed-form" and not rep.m_ideal
    d = rep.to_dict(L)
    assert {w.split()[0] for w in d["witnesses"]["m_ideal"]} == {"(3)", "(5)"}
    assert "proper-means-nonzero-proper" in d["conventions"]


def test_classify_methods_agree_and_reject_unknown():
    L = zl(60)
    for i in L:
        reps = [cl.classify(L, i, method=m) for m in ("closed-form", "dichotomy", "oracle")]
        assert len({r.m_ideal for r in reps}) == 1
    with pytest.raises(DomainError):
        cl.classify(L, 1, method="guess")


def test_classify_rejects_zero_ring():
    L = enumerate_ideals(make_zn(12).__class__((), origin="zero"))
    with pytest.raises(DomainError):
        cl.classify(L, 0)


# -- oracle equivalence -----------------------------------------------------


def _sets_structured(L):
    n = L.ring.cardinality
    by_d = zn_ideal_sets(n)
    return [by_d[gen(L, i)] for i in L]


def _sets_table(L):
    return [frozenset(mask_to_indices(m, L.ring.size).tolist()) for m in L.ideals]


def _check_against_oracle(L, sets, zero=0):
    for i in L:
        j = sets[i]
        ess = essential(sets, j, zero)
        rel = relatively_irreducible(sets, j, zero)
        mi = m_ideal(sets, j, zero)
        assert cl.is_essential(L, i).holds == ess
        assert cl.is_essential(L, i, fast=False).holds == ess
        assert cl.is_relatively_irreducible(L, i).holds == rel
        assert cl.is_relatively_irreducible(L, i, fast=False).holds == rel
        assert cl.is_m_ideal_oracle(L, i).holds == mi == cl.is_m_ideal(L, i)
        assert m_ideal_nary(sets, j, zero) == mi
        rep = cl.classify(L, i)
        assert cl.check_witnesses(L, rep)


def test_zn_predicates_match_set_oracle():
    for n in range(2, 121):
        L = zl(n)
        _check_against_oracle(L, _sets_structured(L))
        for i in L:
            assert cl.is_m_ideal_closed_form(L, i) == cl.is_m_ideal_oracle(L, i).holds


def _rings():
    z2 = to_table(make_zn(2))
    return [
        to_table(make_product([make_zn(2), make_zn(2)])),
        to_table(make_product([make_zn(4), make_zn(2)])),
        null_ring(4),
        strictly_upper_triangular(z2, 3),
        make_matrix_ring(z2, 2),
        to_table(make_product([make_zn(2), make_zn(2), make_zn(3)])),
    ]


@pytest.mark.parametrize("r", _rings(), ids=lambda r: r.name or repr(r))
def test_table_predicates_match_set_oracle(r):
    L = enumerate_ideals(r)
    sets = _sets_table(L)
    ref = all_ideals(r.add.tolist(), r.mul.tolist(), r.zero)
    assert sorted(sets, key=lambda s: (len(s), sorted(s))) == ref
    _check_against_oracle(L, sets, r.zero)


def _restricted_ideals(r, elems):
    """Ideals of the ideal ``elems`` regarded as a ring, as sets of original indices."""
    elems = sorted(elems)
    pos = {x: k for k, x in enumerate(elems)}
    add = [[pos[int(r.add[a, b])] for b in elems] for a in elems]
    mul = [[pos[int(r.mul[a, b])] for b in elems] for a in elems]
    return [frozenset(elems[k] for k in s) for s in all_ideals(add, mul, pos[r.zero])]


def _closed_oracle(r, sets, i, relation):
    for j in sets:
        if i < j:
            inner = _restricted_ideals(r, j)
            if relation(inner, i, r.zero):
                return False
    return True


@pytest.mark.parametrize("r", _rings()[:5], ids=lambda r: r.name or repr(r))
def test_closedness_matches_set_oracle_ring_reading(r):
    L = enumerate_ideals(r)
    sets = _sets_table(L)
    for i in L:
        assert cl.is_essentially_closed(L, i).holds == _closed_oracle(r, sets, sets[i], essential)
        assert cl.is_m_closed(L, i).holds == _closed_oracle(r, sets, sets[i], m_ideal)


@given(st.integers(min_value=2, max_value=400), st.data())
@settings(max_examples=150, deadline=None)
def test_m_closed_identity_for_proper_ideals(n, data):
    L = zl(n)
    i = data.draw(st.sampled_from(list(L)))
    if i in (L.zero, L.top):
        return
    want = cl.is_essentially_closed(L, i).holds and not cl.is_relatively_irreducible(L, i).holds
    assert cl.is_m_closed(L, i).holds == want


# -- products ---------------------------------------------------------------


def test_classify_product_examples():
    z4, z9, z25 = zl(4), zl(9), zl(25)
    assert cl.classify_product([(z4, 1), (z9, 1)]) is cl.ProductClass.ESSENTIAL_PRODUCT
    assert cl.classify_product([(z4, 1), (z9, 0)]) is cl.ProductClass.SINGLE_SLOT_IRREDUCIBLE
    got = cl.classify_product([(z4, 1), (z9, 1), (z25, 0)])
    # the same ideal inside Z_900 is (2 * 3 * 25) = (150)
    sets = zn_ideal_sets(900)
    assert got.m_ideal == m_ideal(list(sets.values()), sets[150])


def test_classify_product_errors():
    with pytest.raises(DomainError):
        cl.classify_product([(zl(4), 1)])
    with pytest.raises(DomainError):
        cl.classify_product([(zl(4), 0), (zl(9), 0)])


def test_classify_product_matches_oracle_small():
    qs = [2, 3, 4, 8, 9]
    for a, b in combinations(qs, 2):
        la, lb = zl(a), zl(b)
        prod = enumerate_ideals(make_product([make_zn(a), make_zn(b)]))
        for i in la:
            for j in lb:
                if i == la.zero and j == lb.zero:
                    continue
                key = la.ideals[i] + lb.ideals[j]
                assert cl.classify_product([(la, i), (lb, j)]).m_ideal == cl.is_m_ideal_oracle(prod, prod.find(key)).holds


# -- structure --------------------------------------------------------------


def test_direct_sum_examples():
    for n, want in [(30, True), (12, False), (7, True), (2, True)]:
        L = zl(n)
        assert cl.every_proper_m_ideal_is_summand(L).holds == want
        assert cl.is_direct_sum_of_simple(L).holds == want


def test_find_proper_m_ideal_over_examples():
    L = zl(4)
    assert cl.find_proper_m_ideal_over(L, at(L, 2)) == cl.OverIdeal("m_ideal", at(L, 2))
    L = zl(12)
    assert cl.find_proper_m_ideal_over(L, at(L, 4)) == cl.OverIdeal("summand", at(L, 3))
    L = zl(8)
    assert cl.find_proper_m_ideal_over(L, at(L, 4)) == cl.OverIdeal("m_ideal", at(L, 2))
    with pytest.raises(DomainError):
        cl.find_proper_m_ideal_over(L, L.zero)
    with pytest.raises(DomainError):
        cl.find_proper_m_ideal_over(L, L.top)


def _longest_m_chain(n):
    sets = list(zn_ideal_sets(n).values())
    ms = [s for s in sets if m_ideal(sets, s)]
    memo = {}

    def up(s):
        if s not in memo:
            memo[s] = max((1 + up(t) for t in ms if s < t), default=0)
        return memo[s]

    return max(up(s) for s in ms)


def test_m_dimension_examples():
    assert cl.m_dimension(zl(7)) == 1
    assert cl.m_dimension(zl(4)) == 2
    for n in (30, 12, 60, 90, 180):
        assert cl.m_dimension(zl(n)) == _longest_m_chain(n)


def test_transport_examples():
    base = to_table(make_zn(6))
    m = make_matrix_ring(base, 2)
    L = enumerate_ideals(base)
    two = next(i for i in L if L.cardinality(i) == 3)
    up = cl.transport_matrix_ideal(base, 2, "up", L.ideals[two])
    assert up.bit_count() == 3**4 and m.is_ideal(up)
    assert cl.transport_matrix_ideal(base, 2, "down", up) == L.ideals[two]
    assert cl.transport_matrix_ideal(base, 2, "up", base.zero_mask) == m.zero_mask
    assert cl.transport_matrix_ideal(base, 2, "up", base.full_mask) == m.full_mask
    assert cl.transport_matrix_ideal(base, 2, "down", m.full_mask) == base.full_mask
    with pytest.raises(DomainError):
        cl.transport_matrix_ideal(base, 2, "sideways", 1)
