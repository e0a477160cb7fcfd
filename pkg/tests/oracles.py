"""Independent reference implementations used as test oracles.

Nothing here imports midealkit: ideals are plain frozensets of element
indices, found by brute force, and the predicates follow the definitions
literally.
"""

from itertools import combinations


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def naive_factor(n):
    out, p = [], 2
    while n > 1:
        if n % p == 0:
            m = 0
            while n % p == 0:
                n //= p
                m += 1
            out.append((p, m))
        p += 1
    return out


def zn_tables(n):
    add = [[(a + b) % n for b in range(n)] for a in range(n)]
    mul = [[(a * b) % n for b in range(n)] for a in range(n)]
    return add, mul


def zn_ideal_sets(n):
    """Ideals of Z_n keyed by their positive generator d | n."""
    return {d: frozenset(range(0, n, d)) if d < n else frozenset({0}) for d in divisors(n)}


def _subgroup(add, zero, elems):
    found = {zero} | set(elems)
    frontier = list(found)
    while frontier:
        x = frontier.pop()
        for y in list(found):
            s = add[x][y]
            if s not in found:
                found.add(s)
                frontier.append(s)
    return frozenset(found)


def all_ideals(add, mul, zero=0):
    """Every two-sided ideal, by walking the lattice of additive subgroups."""
    n = len(add)
    seen = {_subgroup(add, zero, [])}
    frontier = list(seen)
    while frontier:
        h = frontier.pop()
        for x in range(n):
            if x not in h:
                g = _subgroup(add, zero, h | {x})
                if g not in seen:
                    seen.add(g)
                    frontier.append(g)
    return sorted(
        (h for h in seen if all(mul[r][x] in h and mul[x][r] in h for x in h for r in range(n))),
        key=lambda s: (len(s), sorted(s)),
    )


def essential(ideals, j, zero=0):
    z = frozenset({zero})
    return j != z and all(j & i != z for i in ideals if i != z)


def relatively_irreducible(ideals, i, zero=0):
    z = frozenset({zero})
    subs = [x for x in ideals if x != z and x <= i]
    return all(a & b != z for a, b in combinations(subs, 2))


def m_ideal(ideals, j, zero=0):
    """Literal two-ideal form of the definition."""
    z = frozenset({zero})
    nz = [i for i in ideals if i != z]
    for a in nz:
        for b in nz:
            if a & b != z and j & a != z and j & b != z and j & a & b == z:
                return False
    return True


def m_ideal_nary(ideals, j, zero=0, arity=3):
    """Finite-collection form for collections of up to ``arity`` ideals."""
    z = frozenset({zero})
    nz = [i for i in ideals if i != z]
    for k in range(2, arity + 1):
        for coll in combinations(nz, k):
            meet = frozenset.intersection(*coll)
            if meet != z and all(j & a != z for a in coll) and j & meet == z:
                return False
    return True


def ideal_sum(add, a, b, zero=0):
    return _subgroup(add, zero, a | b)
