"""The sixteen acceptance criteria.

Each test reruns the matching ``verify-paper`` claim and adds pinned checks of
its own.  A one-line PASS/FAIL record per criterion is printed and collected
for the terminal summary.  Run as a script to get just those lines.

Pinned tolerances: criterion 1 is an exact label match, criterion 2 requires
SD-join-3 on K(B8) in under 60 s, the whole suite must finish in under 300 s,
everything else is an exact count or an exhaustive check.
"""
import itertools
import time

import numpy as np
import pytest

from latkit import congruences as con
from latkit import covers as cv
from latkit import enumeration as en
from latkit import kdfamily as kd
from latkit import seeds as sd
from latkit import terms as tm
from latkit import verify
from latkit.core import bits, boolean_lattice, chain, m3, n5, product, sublattice_generated

SDJ3_KB8_SECONDS = 60.0
TOTAL_SECONDS = 300.0
COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 5, 6: 15, 7: 53}

DOMAINS = {
    "2": chain(2),
    "B4": boolean_lattice(2),
    "B8": boolean_lattice(3),
    "3-chain": chain(3),
    "2x3": product(chain(2), chain(3)),
}
K_SIZES = {"2": 11, "B4": 21, "B8": 41, "3-chain": 16, "2x3": 31}

_elapsed = []


def _criterion(cid, lines, checks):
    """Run claim ``cid`` plus ``checks`` (a callable yielding (ok, message)), record, assert."""
    t = time.perf_counter()
    res = verify.run_claim(cid)
    problems = [] if res.status == verify.PASS else [f"claim: {res.details}"]
    try:
        problems += [msg for ok, msg in checks() if not ok]
    except Exception as exc:
        problems.append(f"{type(exc).__name__}: {exc}")
    _elapsed.append(time.perf_counter() - t)
    status = "PASS" if not problems else "FAIL"
    line = f"ACCEPTANCE criterion {cid:2d}: {status} - {res.description}"
    if problems:
        line += " [" + "; ".join(problems) + "]"
    lines.append((cid, line))
    print(line)
    assert not problems, line


def test_criterion_01(acceptance_lines):
    def checks():
        B = boolean_lattice(2)
        K = kd.build_KD(B)
        L = K.lattice
        trip = [L.label(K.element(q)) for q in kd.sdj2_witness(B)]
        yield trip == ["(1,a,0,0)", "(0,b,0,1)", "(0,a,1,0)"], f"witness {trip}"
        env = dict(zip("xyz", (K.element(q) for q in kd.sdj2_witness(B))))
        yield L.label(tm.evaluate(L, tm.p_term(2), env)) == "(0,b,0,0)", "p2 value"
        yield L.label(tm.evaluate(L, tm.SDJ_RHS, env)) == "(1,a,0,0)", "x|(y&z) value"
        yield not tm.holds_sdj(L, 2), "holds_sdj(K(B4),2) reported valid"
    _criterion(1, acceptance_lines, checks)


def test_criterion_02(acceptance_lines):
    def checks():
        for name, D in DOMAINS.items():
            L = kd.build_KD(D).lattice
            yield L.n == K_SIZES[name], f"|K({name})|={L.n}"
            t = time.perf_counter()
            ok = bool(tm.holds_sdj(L, 3))
            dt = time.perf_counter() - t
            yield ok, f"SD-join-3 fails on K({name})"
            if name == "B8":
                yield dt < SDJ3_KB8_SECONDS, f"K(B8) took {dt:.1f}s"
    _criterion(2, acceptance_lines, checks)


def test_criterion_03(acceptance_lines):
    def checks():
        for name, D in DOMAINS.items():
            yield bool(tm.is_join_semidistributive(kd.build_KD(D).lattice)), f"K({name}) not JSD"
    _criterion(3, acceptance_lines, checks)


def test_criterion_04(acceptance_lines):
    def checks():
        for name in ("2", "B4", "B8"):
            B = DOMAINS[name]
            K = kd.build_KD(B)
            L = K.lattice
            si, mono = con.is_subdirectly_irreducible(L, max_size=L.n)
            yield si, f"K({name}) not SI"
            yield mono == con.principal_congruence(L, L.bottom, K.q(1)), f"K({name}) monolith"
            c2 = con.principal_congruence(L, L.bottom, K.q(2))
            for x in range(B.n):
                if x != B.bottom:
                    ok = con.principal_congruence(L, L.bottom, K.xq1(x)) == c2
                    yield ok, f"K({name}) con(0,q2) != con(0,{B.label(x)}q1)"
    _criterion(4, acceptance_lines, checks)


def test_criterion_05(acceptance_lines):
    def checks():
        L = kd.build_KD(DOMAINS["B8"]).lattice
        rng = np.random.default_rng(0)
        for n in (1, 2, 3):
            worst = max(len(sublattice_generated(L, rng.choice(L.n, size=n, replace=False).tolist()))
                        for _ in range(50))
            yield worst <= 2 ** (2 ** n + 3), f"n={n}: {worst} elements"
    _criterion(5, acceptance_lines, checks)


def test_criterion_06(acceptance_lines):
    def checks():
        for name in ("2", "B4", "B8"):
            D = DOMAINS[name]
            prof = kd.principal_ideal_distributivity_profile(D)
            yield prof <= kd.allowed_nondistributive_tops(D), f"K({name}) profile {prof}"
    _criterion(6, acceptance_lines, checks)


def test_criterion_07(acceptance_lines):
    def checks():
        for name in ("2", "B4"):
            yield bool(tm.holds_sentence_1storder(kd.build_KD(DOMAINS[name]).lattice)), f"K({name})"
    _criterion(7, acceptance_lines, checks)


def test_criterion_08(acceptance_lines):
    def checks():
        cat = list(en.catalog(7))
        yield len(cat) == 78, f"{len(cat)} lattices of size <= 7"
        for L, n in itertools.product(cat, (1, 2, 3)):
            if bool(tm.is_n_distributive(L, n)) != bool(tm.is_n_distributive_by_covers(L, n)):
                yield False, f"{L.name} n={n}"
        yield not tm.is_n_distributive(m3(), 1), "M3 1-distributive"
        yield bool(tm.is_n_distributive(m3(), 2)), "M3 not 2-distributive"
    _criterion(8, acceptance_lines, checks)


def test_criterion_09(acceptance_lines):
    def checks():
        for L in en.catalog(6):
            bad = verify._cover_calculus_failures(L)
            yield not bad, f"{L.name}: {bad[:1]}"
        checked = 0
        for n in range(1, 9):
            for L in en.lattices(n, max_size=8):
                for p in L.join_irreducibles:
                    for m in cv.cover_masks(L, p, "cover"):
                        if m & ~L.ji_mask:
                            continue
                        checked += 1
                        if (cv.kind_of(L, p, m) == "minimal") != cv.is_minimal_by_definition(L, p, bits(m)):
                            yield False, f"{L.name} p={L.label(p)}"
        yield checked > 0, "no covers checked"
    _criterion(9, acceptance_lines, checks)


def test_criterion_10(acceptance_lines, catalog7):
    def checks():
        for L in catalog7:
            yield bool(sd.is_strongly_spatial(L)), L.name
        yield bool(sd.is_strongly_spatial(kd.build_KD(DOMAINS["B4"]).lattice)), "K(B4)"
    _criterion(10, acceptance_lines, checks)


def test_criterion_11(acceptance_lines, small_catalog):
    def checks():
        pairs = 0
        for L in small_catalog:
            nz = [x for x in range(L.n) if x != L.bottom]
            for r in range(len(nz) + 1):
                for S in itertools.combinations(nz, r):
                    pairs += 1
                    if bool(sd.is_pre_seed(L, S)) != bool(sd.galois_pi_is_homomorphism(L, S)):
                        yield False, f"{L.name} {S}"
        yield pairs == 583, f"{pairs} (L, subset) pairs"
    _criterion(11, acceptance_lines, checks)


def test_criterion_12(acceptance_lines):
    def checks():
        for L, n in ((m3(), 2), (n5(), 2), (kd.build_KD(chain(2)).lattice, 2)):
            yield not tm.is_n_distributive(L, 1), f"{L.name} is distributive"
            J = sorted(L.join_irreducibles)
            for r in range(len(J) + 1):
                for P in itertools.combinations(J, r):
                    yield bool(tm.is_n_distributive(sd.span(L, P).as_lattice(), n)), f"{L.name} P={P}"
        for L in en.catalog(5):
            J = sorted(L.join_irreducibles)
            for t in ("x & (y | z)", "(x & y) | (x & z)", "x | (y & (x | z))"):
                for vals in itertools.product(range(L.n), repeat=3):
                    a = dict(zip("xyz", vals))
                    full = sd.eval_relative(sd.span(L, J), t, a)
                    if full != tm.evaluate(L, t, a):
                        yield False, f"{L.name} {t} {a}"
                    for r in range(len(J) + 1):
                        for P in itertools.combinations(J, r):
                            if not L.le(sd.eval_relative(sd.span(L, P), t, a), full):
                                yield False, f"{L.name} P={P} {t} {a}"
    _criterion(12, acceptance_lines, checks)


def test_criterion_13(acceptance_lines, catalog7):
    def checks():
        a, b, c = m3().indices("abc")
        yield cv.collinear(m3(), a, b, c), "col(a,b,c) in M3"
        yield cv.classify_cover(m3(), a, (b, c)).at_least("tight"), "a <= b|c not tight"
        triples = 0
        for L in catalog7:
            if tm.is_modular(L):
                for p, q, r in itertools.permutations(sorted(L.join_irreducibles), 3):
                    if cv.collinear(L, p, q, r):
                        triples += 1
                        yield cv.classify_cover(L, p, (q, r)).at_least("tight"), f"{L.name} {p},{q},{r}"
        yield triples == 180, f"{triples} collinear triples"
    _criterion(13, acceptance_lines, checks)


def test_criterion_14(acceptance_lines):
    def checks():
        for n, k in COUNTS.items():
            got = en.lattices(n).count()
            yield got == k, f"size {n}: {got}"
        for n in range(1, 7):
            yield len(en.naive_lattices(n)) == COUNTS[n], f"naive size {n}"
    _criterion(14, acceptance_lines, checks)


def test_criterion_15(acceptance_lines):
    def checks():
        for name in ("2", "B4"):
            D = DOMAINS[name]
            n = kd.build_KD(D).lattice.n
            yield n == K_SIZES[name], f"|K({name})|={n}"
            yield verify._quadruple_filter_count(D) == n, f"filter count for {name}"
    _criterion(15, acceptance_lines, checks)


def test_criterion_16(acceptance_lines):
    def checks():
        for lhs, rhs in (tm.DISTRIBUTIVE, tm.MODULAR):
            r = tm.refute(lhs, rhs, max_size=5)
            yield r.found and r.lattice.n <= 5, f"no counterexample to {lhs} = {rhs}"
            if r.found:
                yield not tm.holds_identity(r.lattice, lhs, rhs), "reported lattice satisfies the identity"
        for k in range(1, 8):
            yield not tm.refute("x", "x", max_size=k).found, f"x=x refuted at {k}"
    _criterion(16, acceptance_lines, checks)


def test_total_runtime():
    report = verify.verify_all()
    total = sum(r.seconds for r in report.results)
    assert report.ok, report.text()
    assert total < TOTAL_SECONDS, f"verify-paper took {total:.1f}s"


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))
