import json
import warnings

import numpy as np
import pytest

from midealkit.errors import (
    AdditionAxiomError,
    AssociativityError,
    DistributivityError,
    DomainError,
    InvalidIdealError,
    RingAxiomError,
    SizeCapError,
    UnitError,
)
from midealkit.lattice import enumerate_ideals, generated_ideal
from midealkit.rings import (
    StructuredRing,
    dump_table,
    indices_to_mask,
    load_table,
    make_matrix_ring,
    make_product,
    make_quotient,
    make_unitization,
    make_zn,
    mask_to_indices,
    null_ring,
    strictly_upper_triangular,
    subring_of_ideal,
    table_cap,
    to_table,
    validate_table,
)

from oracles import all_ideals, zn_tables


def test_make_zn_components():
    assert make_zn(12).components == (4, 3)
    assert make_zn(7).components == (7,)
    assert make_zn(900).components == (4, 9, 25)


def test_make_zn_rejects_small():
    with pytest.raises(DomainError):
        make_zn(1)


def test_structured_ring_rejects_non_prime_power():
    with pytest.raises(DomainError):
        StructuredRing((6,))


def test_make_product_concatenates():
    assert make_product([make_zn(4), make_zn(9)]).components == (4, 9)
    r = make_product([make_zn(2), make_zn(2)])
    assert r.components == (2, 2) and not r.distinct_primes()
    assert make_product([make_zn(6), make_zn(10)]).components == (2, 3, 2, 5)


def test_make_product_empty_rejected():
    with pytest.raises(DomainError):
        make_product([])


def test_product_generators_per_factor():
    r = make_product([make_zn(6), make_zn(10)])
    e = r.ideal_from_generators([2, 5])
    assert e == (1, 0, 0, 1)
    assert r.generators(e) == (2, 5)


def test_to_table_z6():
    t = to_table(make_zn(6), cap=100)
    add, mul = zn_tables(6)
    assert t.size == 6 and t.commutative and t.unital and t.characteristic == 6
    # the mixed-radix encoding is an isomorphism onto Z_6
    phi = {i: next(x for x in range(6) if (x % 2, x % 3) == divmod(i, 3)) for i in range(6)}
    for a in range(6):
        for b in range(6):
            assert phi[int(t.add[a, b])] == add[phi[a]][phi[b]]
            assert phi[int(t.mul[a, b])] == mul[phi[a]][phi[b]]


def test_to_table_product_size_and_cap():
    assert to_table(make_product([make_zn(4), make_zn(9)]), cap=100).size == 36
    with pytest.raises(SizeCapError):
        to_table(make_zn(900), cap=100)


def test_cap_from_environment(monkeypatch):
    monkeypatch.setenv("MIDEALKIT_CAP", "50")
    assert table_cap() == 50
    with pytest.raises(SizeCapError):
        to_table(make_zn(60))


def test_validate_z6_tables():
    add, mul = zn_tables(6)
    r = validate_table(add, mul)
    assert r.commutative and r.unit == 1 and r.characteristic == 6


def test_validate_detects_corrupted_product():
    add, mul = zn_tables(6)
    mul[1][2] = 5
    with pytest.raises(RingAxiomError) as exc:
        validate_table(add, mul)
    assert isinstance(exc.value, (AssociativityError, DistributivityError))
    assert exc.value.witness


def test_validate_detects_non_associative_multiplication():
    # bilinear on F_2^2 with e1 e1 = e2, e2 e1 = e1, so (e1 e1) e1 = e1 but e1 (e1 e1) = 0
    def enc(a, b):
        return a + 2 * b

    add = [[enc((x % 2 + y % 2) % 2, (x // 2 + y // 2) % 2) for y in range(4)] for x in range(4)]
    mul = [[enc((x // 2) * (y % 2), (x % 2) * (y % 2)) for y in range(4)] for x in range(4)]
    with pytest.raises(AssociativityError) as exc:
        validate_table(add, mul)
    a, b, c = exc.value.witness
    m = np.array(mul)
    assert m[m[a, b], c] != m[a, m[b, c]]


def test_validate_detects_broken_addition():
    add, mul = zn_tables(4)
    add[1][2], add[2][1] = 0, 0
    with pytest.raises(AdditionAxiomError):
        validate_table(add, mul)
    add, mul = zn_tables(4)
    add[1][2] = 0
    with pytest.raises(AdditionAxiomError):
        validate_table(add, mul)


def test_validate_rejects_bad_shapes_and_unit():
    add, mul = zn_tables(3)
    with pytest.raises(RingAxiomError):
        validate_table(add, mul[:2])
    with pytest.raises(UnitError):
        validate_table(add, mul, unit=2)


def test_generator_checks_agree_with_exhaustive():
    add, mul = zn_tables(12)
    a = validate_table(add, mul, exhaustive=True)
    b = validate_table(add, mul, exhaustive=False)
    assert a.unit == b.unit == 1
    bad = [row[:] for row in mul]
    bad[5][7] = 1
    for mode in (True, False):
        with pytest.raises(RingAxiomError):
            validate_table(add, bad, exhaustive=mode)


def test_null_ring_two_elements():
    r = null_ring(2)
    assert not r.unital and r.size == 2


def test_table_json_round_trip(tmp_path):
    r = to_table(make_zn(10))
    path = tmp_path / "z10.json"
    dump_table(r, path)
    data = json.loads(path.read_text())
    assert set(data) == {"size", "zero", "unit", "add", "mul", "name"}
    back = load_table(path)
    assert np.array_equal(back.add, r.add) and np.array_equal(back.mul, r.mul) and back.unit == r.unit


def test_load_refuses_invalid(tmp_path):
    add, mul = zn_tables(4)
    mul[2][3] = 1
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"size": 4, "zero": 0, "unit": None, "add": add, "mul": mul, "name": "bad"}))
    with pytest.raises(RingAxiomError):
        load_table(path)


def test_matrix_ring_m2_z2():
    m = make_matrix_ring(to_table(make_zn(2)), 2)
    assert m.size == 16 and m.unital and not m.commutative


def test_matrix_ring_k1_is_base():
    base = to_table(make_zn(6))
    m = make_matrix_ring(base, 1)
    assert np.array_equal(m.add, base.add) and np.array_equal(m.mul, base.mul)


def test_matrix_ring_m2_z6_size():
    assert make_matrix_ring(to_table(make_zn(6)), 2).size == 1296


def test_matrix_ring_guards():
    with pytest.raises(DomainError):
        make_matrix_ring(null_ring(2), 2)
    with pytest.raises(SizeCapError):
        make_matrix_ring(to_table(make_zn(9)), 2, cap=4096)


def test_structured_quotient_z12_mod_4():
    r = make_zn(12)
    q = make_quotient(r, r.ideal_from_generators([4]))
    assert q.ring.cardinality == 4 and q.ring.components == (4,)
    assert q.push(r.ideal_from_generators([2])) == q.ring.ideal_from_generators([2])


def test_quotient_trivial_cases():
    r = make_zn(12)
    assert make_quotient(r, r.zero_ideal()).ring.cardinality == 12
    assert make_quotient(r, r.whole_ideal()).ring.cardinality == 1
    t = to_table(r)
    assert make_quotient(t, t.full_mask).ring.size == 1


def test_table_quotient_is_homomorphism_with_kernel():
    for spec_ring in (to_table(make_zn(12)), make_matrix_ring(to_table(make_zn(2)), 2)):
        L = enumerate_ideals(spec_ring)
        for K in L.ideals:
            q = make_quotient(spec_ring, K)
            p = q.projection
            r = spec_ring
            assert np.array_equal(p[r.add], q.ring.add[p[:, None], p[None, :]])
            assert np.array_equal(p[r.mul], q.ring.mul[p[:, None], p[None, :]])
            assert indices_to_mask(np.flatnonzero(p == p[r.zero])) == K
            for I in L.ideals:
                plus = L.ideals[L.join(L.index[I], L.index[K])]
                assert q.pull(q.push(I)) == plus


def test_quotient_rejects_non_ideal():
    t = to_table(make_zn(12))
    with pytest.raises(InvalidIdealError):
        make_quotient(t, 0b110)


def test_unitization_of_null_ideal_of_z4():
    # {0, 2} in Z_4 has zero multiplication and characteristic 2
    r = subring_of_ideal(to_table(make_zn(4)), indices_to_mask([0, 2]))
    u = make_unitization(r)
    assert u.size == 4 and u.unital and u.commutative
    nil = [x for x in range(4) if x != u.zero and u.mul[x, x] == u.zero]
    assert len(nil) == 1
    # Z_2[t]/(t^2) is local: exactly 3 ideals in a chain
    assert len(enumerate_ideals(u)) == 3


def test_unitization_properties_on_corpus():
    cases = [null_ring(3), null_ring(4), strictly_upper_triangular(to_table(make_zn(2)), 3),
             subring_of_ideal(to_table(make_zn(8)), generated_ideal(to_table(make_zn(8)), [2]))]
    for r in cases:
        u = make_unitization(r)
        assert u.unital and u.size == r.characteristic * r.size
        inside = indices_to_mask(range(r.size))
        assert u.is_ideal(inside)
        back = subring_of_ideal(u, inside)
        assert np.array_equal(back.add, r.add) and np.array_equal(back.mul, r.mul)


def test_unitization_guards():
    with pytest.raises(DomainError):
        make_unitization(null_ring(1))
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        u = make_unitization(make_matrix_ring(to_table(make_zn(2)), 2))
    assert u.size == 32 and any("already unital" in str(x.message) for x in w)


def test_subring_of_ideal_examples():
    z8 = to_table(make_zn(8))
    r = subring_of_ideal(z8, generated_ideal(z8, [2]))
    assert r.size == 4 and not r.unital
    assert subring_of_ideal(z8, z8.full_mask).unital
    z6 = to_table(make_zn(6))
    # (2) in Z_6 is a copy of Z_3 whose identity is 4
    ideal2 = next(m for m in enumerate_ideals(z6).ideals if bin(m).count("1") == 3)
    sub = subring_of_ideal(z6, ideal2)
    assert sub.size == 3 and sub.unital


def test_subring_rejects_non_ideal():
    with pytest.raises(InvalidIdealError):
        subring_of_ideal(to_table(make_zn(6)), 0b11)


def test_strictly_upper_triangular_is_nilpotent():
    r = strictly_upper_triangular(to_table(make_zn(2)), 3)
    assert r.size == 8 and not r.unital
    x = np.arange(8)
    cube = r.mul[r.mul[x[:, None, None], x[None, :, None]], x[None, None, :]]
    assert (cube == r.zero).all()


def test_table_enumeration_matches_brute_force_small_rings():
    rings = [to_table(make_zn(12)), null_ring(4), strictly_upper_triangular(to_table(make_zn(2)), 3),
             make_matrix_ring(to_table(make_zn(2)), 2)]
    for r in rings:
        ref = all_ideals(r.add.tolist(), r.mul.tolist(), r.zero)
        got = enumerate_ideals(r)
        assert sorted(frozenset(mask_to_indices(m, r.size).tolist()) for m in got.ideals) == sorted(ref)
