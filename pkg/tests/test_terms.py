import itertools
import os

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latkit import terms as tm
from latkit.core import boolean_lattice, chain, m3, vertical_sum
from latkit.errors import ParseError, SizeGuard, UnboundVariable
from latkit.terms import Join, Meet, Var


def test_parse_examples():
    assert tm.parse_term("x & (y | z)") == Meet(Var("x"), Join(Var("y"), Var("z")))
    assert tm.parse_term("x | y | z") == Join(Join(Var("x"), Var("y")), Var("z"))
    assert tm.parse_term("x | y & z") == Join(Var("x"), Meet(Var("y"), Var("z")))
    assert tm.parse_term("((y0))") == Var("y0")


def test_parse_error_reports_token():
    with pytest.raises(ParseError) as e:
        tm.parse_term("x & & y")
    assert e.value.token_index == 3
    assert "token 3" in str(e.value)
    for bad in ["", "x &", "(x | y", "x y", "X", "x | 1"]:
        with pytest.raises(ParseError):
            tm.parse_term(bad)


terms_strategy = st.recursive(
    st.sampled_from(["x", "y", "z", "w1"]).map(Var),
    lambda kids: st.tuples(st.sampled_from([Meet, Join]), kids, kids).map(lambda t: t[0](t[1], t[2])),
    max_leaves=12)


@settings(max_examples=200, deadline=None)
@given(terms_strategy)
def test_print_parse_roundtrip(t):
    assert tm.parse_term(str(t)) == t


def test_evaluate_examples(M3, N5):
    a, b = M3.indices("ab")
    assert M3.label(tm.evaluate(M3, "x|y", {"x": a, "y": b})) == "1"
    e = {"x": N5.index("b"), "y": N5.index("c"), "z": N5.index("a")}
    assert N5.label(tm.evaluate(N5, "y & (x | z)", e)) == "c"
    for x in range(M3.n):
        assert tm.evaluate(M3, "x&x", {"x": x}) == x
    with pytest.raises(UnboundVariable):
        tm.evaluate(M3, "x|q", {"x": 0})


def _brute_identity(L, s, t):
    names = tm.variables(s, t)
    for vals in itertools.product(range(L.n), repeat=len(names)):
        env = dict(zip(names, vals))
        if tm.evaluate(L, s, env) != tm.evaluate(L, t, env):
            return env
    return None


@pytest.mark.parametrize("pair", [tm.DISTRIBUTIVE, tm.MODULAR, tm.ndistr_identity(2)])
def test_vectorized_scan_matches_scalar_scan(small_catalog, pair):
    for L in small_catalog:
        v = tm.holds_identity(L, *pair)
        first = _brute_identity(L, *pair)
        assert v.holds == (first is None)
        if first is not None:
            assert v.counterexample == first  # same canonical (lexicographic) witness


def test_block_size_does_not_change_witness(monkeypatch, M3):
    before = tm.holds_identity(M3, *tm.ndistr_identity(1)).counterexample
    monkeypatch.setattr(tm, "_BLOCK", 4)
    assert tm.holds_identity(M3, *tm.ndistr_identity(1)).counterexample == before


def test_distributivity_counterexample_m3(M3):
    v = tm.holds_identity(M3, *tm.DISTRIBUTIVE)
    assert not v
    assert {k: M3.label(x) for k, x in v.counterexample.items()} == {"x": "a", "y": "b", "z": "c"}
    assert tm.holds_identity(chain(3), *tm.DISTRIBUTIVE)
    assert tm.holds_identity(M3, "x & (y | z)", "x & (y | z)")


def test_n_distributivity(M3):
    assert not tm.is_n_distributive(M3, 1)
    assert tm.is_n_distributive(M3, 2)
    assert tm.is_n_distributive(chain(4), 1)
    assert tm.is_n_distributive_by_covers(M3, 2)
    assert not tm.is_n_distributive_by_covers(M3, 1)
    with pytest.raises(ValueError):
        tm.ndistr_identity(0)


def test_p_terms():
    assert str(tm.p_term(0)) == "y"
    assert tm.p_term(1) == tm.parse_term("y & (x | z)")
    assert tm.p_term(2) == tm.parse_term("y & (x | (z & (x | y)))")


def test_named_properties(M3, N5, B4):
    assert not tm.is_modular(N5)
    assert tm.is_join_semidistributive(N5)
    assert tm.is_modular(M3)
    jsd = tm.is_join_semidistributive(M3)
    assert not jsd
    assert all(f(B4) for f in (tm.is_modular, tm.is_distributive, tm.is_join_semidistributive))


def test_jsd_matches_brute_quasi_identity(small_catalog):
    for L in small_catalog:
        brute = all(L.join(x, y) != L.join(x, z) or L.join(x, y) == L.join(x, L.meet(y, z))
                    for x, y, z in itertools.product(range(L.n), repeat=3))
        assert bool(tm.is_join_semidistributive(L)) == brute


def test_sentence_brute(small_catalog):
    def brute(L):
        for x, y, z, t1, t2 in itertools.product(range(L.n), repeat=5):
            s = L.join(L.join(x, y), z)
            if L.lt(s, t1) and L.lt(t1, t2):
                lhs = L.meet(L.join(x, y), z)
                rhs = L.join(L.meet(x, z), L.meet(y, z))
                if lhs != rhs:
                    return False
        return True

    for L in small_catalog:
        assert bool(tm.holds_sentence_1storder(L)) == brute(L)


def test_sentence_m3_with_chain_on_top():
    L = vertical_sum(m3(), chain(3, labels=["1", "t1", "t2"]))
    assert not tm.holds_sentence_1storder(L)
    assert tm.holds_sentence_1storder(m3())


def test_catalog_invariants(small_catalog):
    for L in small_catalog:
        sdj = [bool(tm.holds_sdj(L, n)) for n in range(0, 5)]
        for n in range(4):
            assert not sdj[n] or sdj[n + 1]
        if any(sdj):
            assert tm.is_join_semidistributive(L)
        assert tm.holds_inclusion(L, "y & z", tm.p_term(3))
        assert tm.holds_inclusion(L, tm.p_term(3), "y")
        d = bool(tm.is_distributive(L))
        assert d == bool(tm.is_n_distributive(L, 1))
        assert d == bool(tm.holds_sdj(L, 1))
        assert not d or tm.is_modular(L)


def test_budget_guard(monkeypatch, M3):
    with pytest.raises(SizeGuard):
        tm.is_n_distributive(M3, 3, limit=100)
    monkeypatch.setenv("LATKIT_BUDGET", "10")
    with pytest.raises(SizeGuard):
        tm.is_distributive(M3)
    monkeypatch.delenv("LATKIT_BUDGET")
    assert os.environ.get("LATKIT_BUDGET") is None
    assert tm.is_modular(M3)


def test_refute():
    r = tm.refute(*tm.DISTRIBUTIVE, max_size=5)
    assert r.found and r.lattice.n == 5
    assert not tm.holds_identity(r.lattice, *tm.DISTRIBUTIVE)
    assert not tm.refute("x", "x", max_size=6).found
    assert not tm.refute(*tm.DISTRIBUTIVE, n=1, max_size=7).found
    assert tm.refute(*tm.DISTRIBUTIVE, n=2, max_size=5).found
    with pytest.raises(SizeGuard):
        tm.refute("x", "x", max_size=9)


def test_boolean_sdj():
    assert tm.holds_sdj(boolean_lattice(3), 1)
