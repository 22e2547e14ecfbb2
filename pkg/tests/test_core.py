import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latkit.core import (Lattice, antichains, bits, boolean_lattice, chain, diamond, down_mask, dual,
                         find_isomorphism, from_covers, interval, is_isomorphic, lower_subsets, m3,
                         mask_of, n5, product, restrict, sublattice_generated, vertical_sum)
from latkit.errors import CycleError, LatticeFormatError, NonCoverEdge, NotALattice


def brute_join(L, x, y):
    ubs = [z for z in range(L.n) if L.leq[x, z] and L.leq[y, z]]
    least = [z for z in ubs if all(L.leq[z, w] for w in ubs)]
    assert len(least) == 1
    return least[0]


def brute_meet(L, x, y):
    lbs = [z for z in range(L.n) if L.leq[z, x] and L.leq[z, y]]
    great = [z for z in lbs if all(L.leq[w, z] for w in lbs)]
    assert len(great) == 1
    return great[0]


def test_tables_match_brute_force(small_catalog):
    for L in small_catalog:
        for x, y in itertools.product(range(L.n), repeat=2):
            assert L.join(x, y) == brute_join(L, x, y)
            assert L.meet(x, y) == brute_meet(L, x, y)
            assert L.join_table[x, y] == L.join(x, y)


def test_join_irreducibles_have_one_lower_cover(small_catalog):
    for L in small_catalog:
        for x in range(L.n):
            reducible = x == L.bottom or any(
                L.join(a, b) == x for a in range(L.n) for b in range(L.n) if L.lt(a, x) and L.lt(b, x))
            assert (x in L.join_irreducibles) == (not reducible)
            assert (x in L.join_irreducibles) == (len(L.lower_covers(x)) == 1)


def test_m3_n5_shapes(M3, N5):
    assert M3.labels == ("0", "a", "b", "c", "1")
    assert sorted(M3.label(x) for x in M3.join_irreducibles) == ["a", "b", "c"]
    assert N5.le(N5.index("a"), N5.index("c"))
    assert N5.label(N5.join(N5.index("a"), N5.index("b"))) == "1"
    assert M3.atoms == frozenset(M3.indices("abc"))


def test_boolean_labels():
    B = boolean_lattice(3)
    assert B.labels == ("0", "a", "b", "c", "ab", "ac", "bc", "1")
    assert B.label(B.join(B.index("a"), B.index("bc"))) == "1"


def test_constructors_sizes():
    assert chain(4).n == 4
    assert diamond(4).n == 6
    assert product(chain(2), chain(3)).n == 6
    assert vertical_sum(m3(), chain(3)).n == 7
    assert dual(n5()).n == 5
    assert is_isomorphic(dual(n5()), n5())
    assert is_isomorphic(product(chain(2), chain(2)), boolean_lattice(2))
    assert not is_isomorphic(m3(), n5())


def test_from_covers_errors():
    with pytest.raises(CycleError):
        from_covers(["0", "a", "1"], [["0", "a"], ["a", "0"], ["a", "1"]])
    with pytest.raises(NonCoverEdge):
        from_covers(["0", "a", "1"], [["0", "a"], ["a", "1"], ["0", "1"]])
    with pytest.raises(NotALattice):
        # two maximal elements: no top
        from_covers(["0", "a", "b"], [["0", "a"], ["0", "b"]])
    with pytest.raises(NotALattice):
        # a, b have two minimal upper bounds
        from_covers(["0", "a", "b", "c", "d", "1"],
                    [["0", "a"], ["0", "b"], ["a", "c"], ["a", "d"], ["b", "c"], ["b", "d"],
                     ["c", "1"], ["d", "1"]])
    with pytest.raises(LatticeFormatError):
        from_covers(["0", "0"], [])
    with pytest.raises(LatticeFormatError):
        from_covers(["0", "1"], [["0", "x"]])
    with pytest.raises(LatticeFormatError):
        from_covers([], [])


def test_lattice_rejects_bad_order():
    with pytest.raises(LatticeFormatError):
        Lattice(["a", "b"], [[True, False], [True, False]])  # not reflexive


def test_restrict_and_interval(M3):
    I = interval(M3, M3.index("0"), M3.index("a"))
    assert I.labels == ("0", "a")
    R = restrict(M3, M3.indices(["0", "a", "b", "1"]))
    assert is_isomorphic(R, boolean_lattice(2))


def test_antichains_match_brute_force(small_catalog):
    for L in small_catalog:
        brute = set()
        for r in range(L.n + 1):
            for S in itertools.combinations(range(L.n), r):
                if all(not L.le(x, y) and not L.le(y, x) for x, y in itertools.combinations(S, 2)):
                    brute.add(mask_of(S))
        assert set(antichains(L)) == brute


def test_lower_subsets_are_down_closed(small_catalog):
    for L in small_catalog:
        subs = list(lower_subsets(L))
        assert len(subs) == len(set(subs))
        for H in subs:
            assert down_mask(L, H) == H


def test_sublattice_generated(M3, N5):
    assert sublattice_generated(M3, M3.indices("ab")) == frozenset(M3.indices(["0", "a", "b", "1"]))
    assert sublattice_generated(N5, N5.indices("ab")) == frozenset(range(5)) - {N5.index("c")}


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 500), st.data())
def test_isomorphism_under_relabelling(k, data):
    lat = list(itertools.islice((L for n in range(1, 7) for L in _catalog_cache()), None))
    L = lat[k % len(lat)]
    perm = data.draw(st.permutations(list(range(L.n))))
    inv = np.argsort(perm)
    leq = L.leq[np.ix_(inv, inv)]
    P = Lattice([f"e{i}" for i in range(L.n)], leq)
    iso = find_isomorphism(L, P)
    assert iso is not None
    for x, y in itertools.product(range(L.n), repeat=2):
        assert L.le(x, y) == P.le(iso[x], iso[y])


_CACHE = []


def _catalog_cache():
    if not _CACHE:
        from latkit.enumeration import catalog
        _CACHE.extend(catalog(6))
    return _CACHE


def test_bits_roundtrip():
    assert list(bits(0b10110)) == [1, 2, 4]
    assert mask_of([1, 2, 4]) == 0b10110


def test_n5_is_not_m3():
    assert find_isomorphism(n5(), m3()) is None
