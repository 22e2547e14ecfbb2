"""The finite verification suite behind ``latkit verify-paper``.

Each claim is a function returning ``(status, details)``; the report lists
them in id order.  Catalog-wide claims use their own size bound, optionally
capped by ``max_size``.
"""
from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import congruences as con
from . import covers as cv
from . import enumeration as en
from . import kdfamily as kd
from . import seeds as sd
from . import terms as tm
from .core import Lattice, bits, boolean_lattice, chain, lower_subsets, m3, n5, product, sublattice_generated

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class ClaimResult:
    claim: int
    description: str
    status: str
    details: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{self.status.upper():7}] claim {self.claim:2d}: {self.description} -- {self.details}"


@dataclass
class VerificationReport:
    results: list[ClaimResult]

    @property
    def ok(self) -> bool:
        return all(r.status != FAIL for r in self.results)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def text(self) -> str:
        lines = [r.line() for r in self.results]
        counts = {s: sum(r.status == s for r in self.results) for s in (PASS, FAIL, SKIPPED)}
        lines.append(f"{counts[PASS]} passed, {counts[FAIL]} failed, {counts[SKIPPED]} skipped")
        return "\n".join(lines)

    def to_json(self) -> dict:
        rows = []
        for r in self.results:
            d = asdict(r)
            d.pop("seconds")  # keep JSON output stable across runs
            rows.append(d)
        return {"ok": self.ok, "claims": rows}


def _bound(scope: int, cap: int | None) -> int:
    return scope if cap is None else min(scope, cap)


def _catalog(n: int):
    return en.catalog(n) if n <= en.DEFAULT_SIZE else (
        L for k in range(1, n + 1) for L in en.enumerate_lattices(k, max_size=n))


def test_domains() -> dict[str, Lattice]:
    return {
        "2": chain(2, name="2"),
        "B4": boolean_lattice(2, name="B4"),
        "B8": boolean_lattice(3, name="B8"),
        "3-chain": chain(3, name="C3"),
        "2x3": product(chain(2), chain(3), name="2x3"),
    }


def _ok(cond: bool, details: str):
    return (PASS if cond else FAIL), details


# -- claims -------------------------------------------------------------

def claim_1(cap=None):
    B = boolean_lattice(2, name="B4")
    K = kd.build_KD(B)
    L = K.lattice
    x, y, z = (K.element(q) for q in kd.sdj2_witness(B))
    env = {"x": x, "y": y, "z": z}
    lhs = L.label(tm.evaluate(L, tm.p_term(2), env))
    rhs = L.label(tm.evaluate(L, tm.SDJ_RHS, env))
    v = tm.holds_sdj(L, 2)
    good = lhs == "(0,b,0,0)" and rhs == "(1,a,0,0)" and not v.holds
    return _ok(good, f"p2(x,y,z)={lhs}, x|(y&z)={rhs}; search: {v.describe(L)}")


def claim_2(cap=None):
    bad, sizes = [], []
    for name, D in test_domains().items():
        L = kd.build_KD(D).lattice
        sizes.append(f"{name}:{L.n}")
        if not tm.holds_sdj(L, 3):
            bad.append(name)
    return _ok(not bad, f"K(D) sizes {', '.join(sizes)}" + (f"; fails for {bad}" if bad else ""))


def claim_3(cap=None):
    bad = [name for name, D in test_domains().items()
           if not tm.is_join_semidistributive(kd.build_KD(D).lattice)]
    return _ok(not bad, "all five K(D) are join-semidistributive" if not bad else f"fails for {bad}")


def claim_4(cap=None):
    notes, good = [], True
    for name, B in (("2", chain(2)), ("B4", boolean_lattice(2)), ("B8", boolean_lattice(3))):
        K = kd.build_KD(B)
        L = K.lattice
        si, mono = con.is_subdirectly_irreducible(L, max_size=L.n)
        c1 = con.principal_congruence(L, L.bottom, K.q(1))
        c2 = con.principal_congruence(L, L.bottom, K.q(2))
        same = all(con.principal_congruence(L, L.bottom, K.xq1(x)) == c2
                   for x in range(B.n) if x != B.bottom)
        good &= si and mono == c1 and same
        notes.append(f"K({name}): SI={si}, monolith=con(0,q1):{mono == c1}, con(0,q2)=con(0,xq1):{same}")
    return _ok(good, "; ".join(notes))


def claim_5(cap=None, seed=0):
    K = kd.build_KD(boolean_lattice(3))
    L = K.lattice
    rng = np.random.default_rng(seed)
    worst = {}
    for n in (1, 2, 3):
        bound = 2 ** (2 ** n + 3)
        sizes = [len(sublattice_generated(L, rng.choice(L.n, size=n, replace=False).tolist()))
                 for _ in range(50)]
        worst[n] = (max(sizes), bound)
    good = all(m <= b for m, b in worst.values())
    return _ok(good, ", ".join(f"n={n}: max {m} <= {b}" for n, (m, b) in worst.items()))


def claim_6(cap=None):
    notes, good = [], True
    for name, D in (("2", chain(2)), ("B4", boolean_lattice(2)), ("B8", boolean_lattice(3))):
        prof = kd.principal_ideal_distributivity_profile(D)
        allowed = kd.allowed_nondistributive_tops(D)
        good &= prof <= allowed
        notes.append(f"K({name}): {len(prof)} non-distributive ideals")
    return _ok(good, "; ".join(notes))


def claim_7(cap=None):
    res = {name: tm.holds_sentence_1storder(kd.build_KD(B).lattice)
           for name, B in (("2", chain(2)), ("B4", boolean_lattice(2)))}
    return _ok(all(res.values()), ", ".join(f"K({k}): {v.describe()}" for k, v in res.items()))


def claim_8(cap=None):
    size = _bound(7, cap)
    count, mismatches = 0, []
    for L in _catalog(size):
        count += 1
        for n in (1, 2, 3):
            if bool(tm.is_n_distributive(L, n)) != bool(tm.is_n_distributive_by_covers(L, n)):
                mismatches.append((L.name, n))
    M = m3()
    named = not tm.is_n_distributive(M, 1) and bool(tm.is_n_distributive(M, 2))
    return _ok(not mismatches and named,
               f"{count} lattices of size <= {size}, n=1..3: {len(mismatches)} disagreements; "
               f"M3 1-distributive: no, 2-distributive: yes" if named else f"M3 check failed; {mismatches[:3]}")


def _cover_calculus_failures(L: Lattice) -> list[str]:
    out = []
    lowers = list(lower_subsets(L))
    for p in range(L.n):
        T = list(cv.cover_masks(L, p, "tight"))
        I = list(cv.cover_masks(L, p, "irredundant"))
        M = set(cv.cover_masks(L, p, "minimal"))
        for A in M:
            if A & ~L.ji_mask:
                out.append(f"{L.name}: minimal cover outside J(L)")
        # minimal covers are the refinement-minimal irredundant covers
        refmin = {A for A in I if not any(B != A and cv.refines_mask(L, B, A) for B in I)}
        if refmin != M:
            out.append(f"{L.name}: minimal covers of {L.label(p)} differ from refinement-minimal ones")
        for A in T:
            if not A & ~L.ji_mask and not cv.is_minimal_by_definition(L, p, bits(A)):
                out.append(f"{L.name}: tight cover inside J(L) not minimal")
        pairs = [(A1, A0) for A1 in T for A0 in T if cv.refines_mask(L, A1, A0)]
        for A1, A0 in pairs:
            if L.join_mask(A0) != L.join_mask(A1):
                out.append(f"{L.name}: joins differ for refining tight covers")
            for a in bits(A0):
                part = A1 & L.down[a]
                if L.join_mask(part) != a or cv.kind_of(L, a, part) not in ("tight", "minimal"):
                    out.append(f"{L.name}: A1 below {L.label(a)} does not join to it tightly")
            for a, b in itertools.combinations(bits(A0), 2):
                if A1 & L.down[a] & L.down[b]:
                    out.append(f"{L.name}: overlapping parts below {L.label(a)}, {L.label(b)}")
            for H in lowers:
                if (A0 & H).bit_count() > (A1 & H).bit_count():
                    out.append(f"{L.name}: cardinality drops on a lower set")
        for A2, A1 in pairs:
            for A1b, A0 in pairs:
                if A1b != A1:
                    continue
                for a2 in bits(A2):
                    for a0 in bits(A0):
                        if L.le(a2, a0) and not any(L.le(a2, a1) and L.le(a1, a0) for a1 in bits(A1)):
                            out.append(f"{L.name}: interpolation fails")
    return out


def claim_9(cap=None):
    small = _bound(6, cap)
    failures, lattices = [], 0
    for L in _catalog(small):
        lattices += 1
        failures += _cover_calculus_failures(L)
    big = _bound(8, cap)
    checked, disagree = 0, 0
    for L in _catalog(big):
        for p in range(L.n):
            for E in cv.antichains(L):
                if not L.le(p, L.join_mask(E)):
                    continue
                checked += 1
                if (cv.kind_of(L, p, E) == "minimal") != cv.is_minimal_by_definition(L, p, bits(E)):
                    disagree += 1
    good = not failures and not disagree
    details = (f"lemmas over {lattices} lattices of size <= {small}: {len(failures)} violations; "
               f"fast vs definitional minimality on {checked} antichain covers (size <= {big}): "
               f"{disagree} disagreements")
    if failures:
        details += f"; first: {failures[0]}"
    return _ok(good, details)


def claim_10(cap=None):
    size = _bound(7, cap)
    bad = [L.name for L in _catalog(size) if not sd.is_strongly_spatial(L)]
    kb4 = sd.is_strongly_spatial(kd.build_KD(boolean_lattice(2)).lattice).holds
    return _ok(not bad and kb4, f"size <= {size}: {len(bad)} failures; K(B4): {kb4}")


def claim_11(cap=None):
    size = _bound(6, cap)
    checked, bad = 0, []
    for L in _catalog(size):
        nz = (((1 << L.n) - 1) & ~(1 << L.bottom))
        sub = nz
        while True:
            checked += 1
            if bool(sd.is_pre_seed(L, sub)) != bool(sd.galois_pi_is_homomorphism(L, sub)):
                bad.append((L.name, L.format_set(bits(sub))))
            if sub == 0:
                break
            sub = (sub - 1) & nz
    return _ok(not bad, f"{checked} (L, subset) pairs with |L| <= {size}: {len(bad)} disagreements")


def random_term(rng, names=("x", "y", "z"), depth: int = 3) -> tm.Term:
    if depth == 0 or rng.random() < 0.3:
        return tm.Var(str(rng.choice(names)))
    op = tm.Meet if rng.random() < 0.5 else tm.Join
    return op(random_term(rng, names, depth - 1), random_term(rng, names, depth - 1))


def _least_n(L: Lattice, top: int = 4) -> int | None:
    return next((n for n in range(1, top + 1) if tm.is_n_distributive(L, n)), None)


def claim_12(cap=None, seed=0):
    rng = np.random.default_rng(seed)
    pool = [L for L in _catalog(_bound(7, cap)) if L.n >= 2]
    mono_bad = eq_bad = 0
    for _ in range(100):
        L = pool[rng.integers(len(pool))]
        J = sorted(L.join_irreducibles)
        Q = [p for p in J if rng.random() < 0.6]
        P = [p for p in Q if rng.random() < 0.6]
        t = random_term(rng)
        a = {v: int(rng.integers(L.n)) for v in ("x", "y", "z")}
        SP, SQ = sd.span(L, P), sd.span(L, Q)
        if not L.le(sd.eval_relative(SP, t, a), sd.eval_relative(SQ, t, a)):
            mono_bad += 1
        if sd.eval_relative(sd.span(L, J), t, a) != tm.evaluate(L, t, a):
            eq_bad += 1
    spans_bad, notes = [], []
    for L in (m3(), n5(), kd.build_KD(chain(2)).lattice):
        n = _least_n(L)
        notes.append(f"{L.name or 'K(2)'}:{n}")
        J = sorted(L.join_irreducibles)
        for r in range(len(J) + 1):
            for P in itertools.combinations(J, r):
                if not tm.is_n_distributive(sd.span(L, P).as_lattice(), n):
                    spans_bad.append((L.name, P))
    good = not (mono_bad or eq_bad or spans_bad)
    return _ok(good, f"100 random instances: {mono_bad} monotonicity and {eq_bad} equality failures; "
                     f"spans of join-irreducibles keep n-distributivity ({', '.join(notes)}): "
                     f"{len(spans_bad)} failures")


def claim_13(cap=None):
    size = _bound(7, cap)
    triples, bad = 0, []
    for L in _catalog(size):
        if not tm.is_modular(L):
            continue
        J = sorted(L.join_irreducibles)
        for p, q, r in itertools.permutations(J, 3):
            if cv.collinear(L, p, q, r):
                triples += 1
                if not cv.classify_cover(L, p, (q, r)).at_least("tight"):
                    bad.append((L.name, p, q, r))
    M = m3()
    named = cv.collinear(M, *M.indices("abc")) and cv.classify_cover(M, M.index("a"), M.indices("bc")).at_least("tight")
    return _ok(not bad and named, f"{triples} collinear triples in modular lattices of size <= {size}: "
                                  f"{len(bad)} not tight; M3 col(a,b,c) tight: {named}")


def claim_14(cap=None):
    size = _bound(7, cap)
    expected = [1, 1, 1, 2, 5, 15, 53][:size]
    counts = [sum(1 for _ in en.enumerate_lattices(n)) for n in range(1, size + 1)]
    naive = [len(en.naive_lattices(n)) for n in range(1, min(size, 6) + 1)]
    good = counts == expected and naive == counts[:len(naive)]
    return _ok(good, f"canonical {counts}, naive {naive}")


def _quadruple_filter_count(D: Lattice) -> int:
    # straight from the definition, independent of kdfamily
    def minus(v, top):
        return 1 if v == top else 0
    count = 0
    for x0, x1, x2, x3 in itertools.product((0, 1), range(D.n), (0, 1), (0, 1)):
        m = (minus(x0, 1), minus(x1, D.top), minus(x2, 1), minus(x3, 1))
        vals = (x0, x1, x2, x3)
        ok = True
        for i, j, k in itertools.combinations(range(4), 3):
            if m[i] and m[k]:
                top = D.top if j == 1 else 1
                ok &= vals[j] == top
        count += ok
    return count


def claim_15(cap=None):
    sizes = {name: kd.build_KD(D).lattice.n for name, D in (("2", chain(2)), ("B4", boolean_lattice(2)))}
    oracle = {name: _quadruple_filter_count(D) for name, D in (("2", chain(2)), ("B4", boolean_lattice(2)))}
    good = sizes == oracle == {"2": 11, "B4": 21}
    return _ok(good, f"|K(2)|={sizes['2']}, |K(B4)|={sizes['B4']} (filter oracle {oracle['2']}, {oracle['B4']})")


def claim_16(cap=None):
    d = tm.refute(*tm.DISTRIBUTIVE, max_size=5)
    m = tm.refute(*tm.MODULAR, max_size=5)
    x = tm.refute("x", "x", max_size=_bound(7, cap))
    good = d.found and d.lattice.n <= 5 and m.found and m.lattice.n <= 5 and not x.found
    return _ok(good, f"distributivity: {d.describe()}; modularity: {m.describe()}; x=x: {x.describe()}")


CLAIMS = {
    1: ("K(B4) violates SD-join-2 with the explicit witness triple", claim_1),
    2: ("K(D) satisfies SD-join-3 for five small distributive D", claim_2),
    3: ("K(D) is join-semidistributive for the same D", claim_3),
    4: ("K(B) is subdirectly irreducible with monolith con(0,q1)", claim_4),
    5: ("subsets of K(B8) generate small sublattices", claim_5),
    6: ("only three principal ideals of K(D) fail distributivity", claim_6),
    7: ("K(B) satisfies the first-order sentence", claim_7),
    8: ("identity and cover tests for n-distributivity agree", claim_8),
    9: ("tight-cover lemmas and the fast minimality test", claim_9),
    10: ("finite lattices are strongly spatial", claim_10),
    11: ("pre-seeds are exactly the sets with a homomorphic projection", claim_11),
    12: ("relative term values grow with P and reach the true value", claim_12),
    13: ("collinear triples give tight covers in modular lattices", claim_13),
    14: ("lattice counts per size, two generators agreeing", claim_14),
    15: ("sizes of K(2) and K(B4)", claim_15),
    16: ("bounded refuter finds and exhausts as expected", claim_16),
}


def run_claim(cid: int, max_size: int | None = None, seed: int = 0) -> ClaimResult:
    desc, fn = CLAIMS[cid]
    t = time.perf_counter()
    kwargs = {"seed": seed} if cid in (5, 12) else {}
    try:
        status, details = fn(max_size, **kwargs)
    except Exception as exc:  # a crash is a failed claim, not a crashed report
        status, details = FAIL, f"{type(exc).__name__}: {exc}"
    return ClaimResult(cid, desc, status, details, time.perf_counter() - t)


def _run(args):
    return run_claim(*args)


def verify_all(max_size: int | None = None, seed: int = 0, jobs: int = 1,
               claims=None) -> VerificationReport:
    ids = sorted(CLAIMS) if claims is None else list(claims)
    work = [(cid, max_size, seed) for cid in ids]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_run, work))  # map keeps submission order
    else:
        results = [_run(w) for w in work]
    return VerificationReport(results)
