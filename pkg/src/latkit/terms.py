"""Lattice terms, their parser and exhaustive identity / quasi-identity checks.

Grammar (``&`` is meet and binds tighter than ``|``, join; both associate to
the left)::

    term   := factor { "|" factor }
    factor := atom { "&" atom }
    atom   := ident | "(" term ")"
    ident  := [a-z][a-z0-9_]*

Identity checks scan all ``|L|**k`` assignments in lexicographic order (the
first variable in :func:`variables` order varies slowest), vectorized with
numpy one block at a time.  The first failing assignment is the reported
witness, so results do not depend on block size.
"""
from __future__ import annotations

import itertools
import os
import re
from dataclasses import dataclass, field
from typing import Mapping, Union

import numpy as np

from .core import Lattice, bits
from .errors import ParseError, SizeGuard, UnboundVariable

DEFAULT_BUDGET = 10 ** 8
_BLOCK = 1 << 18


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Meet:
    left: "Term"
    right: "Term"

    def __str__(self):
        return f"{_wrap(self.left)} & {_wrap(self.right)}"


@dataclass(frozen=True)
class Join:
    left: "Term"
    right: "Term"

    def __str__(self):
        return f"{_wrap(self.left)} | {_wrap(self.right)}"


Term = Union[Var, Meet, Join]


def _wrap(t) -> str:
    return str(t) if isinstance(t, Var) else f"({t})"


for _cls in (Var, Meet, Join):
    _cls.__and__ = lambda self, other: Meet(self, other)
    _cls.__or__ = lambda self, other: Join(self, other)


def join_of(terms) -> Term:
    """Left-associated join of a nonempty sequence of terms."""
    terms = list(terms)
    acc = terms[0]
    for t in terms[1:]:
        acc = Join(acc, t)
    return acc


def meet_of(terms) -> Term:
    terms = list(terms)
    acc = terms[0]
    for t in terms[1:]:
        acc = Meet(acc, t)
    return acc


def _natural(name: str):
    return [int(tok) if tok.isdigit() else tok for tok in re.split(r"(\d+)", name)]


def variables(*terms: Term) -> tuple[str, ...]:
    """Variable names occurring in the terms, in natural sort order (y2 < y10)."""
    seen: set[str] = set()
    stack = list(terms)
    while stack:
        t = stack.pop()
        if isinstance(t, Var):
            seen.add(t.name)
        else:
            stack.extend((t.left, t.right))
    return tuple(sorted(seen, key=_natural))


# -- parser -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:([a-z][a-z0-9_]*)|([&|()]))")


def _tokenize(src: str):
    tokens = []
    pos = 0
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos == len(src):
            return tokens
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", pos, len(tokens) + 1)
        start = m.start(1) if m.group(1) else m.start(2)
        tokens.append((m.group(1) or m.group(2), start))
        pos = m.end()


def parse_term(src: str) -> Term:
    tokens = _tokenize(src)
    i = 0

    def peek():
        return tokens[i][0] if i < len(tokens) else None

    def fail(msg):
        pos = tokens[i][1] if i < len(tokens) else len(src)
        raise ParseError(msg, pos, i + 1)

    def term():
        nonlocal i
        t = factor()
        while peek() == "|":
            i += 1
            t = Join(t, factor())
        return t

    def factor():
        nonlocal i
        t = atom()
        while peek() == "&":
            i += 1
            t = Meet(t, atom())
        return t

    def atom():
        nonlocal i
        tok = peek()
        if tok is None:
            fail("unexpected end of input")
        if tok == "(":
            i += 1
            t = term()
            if peek() != ")":
                fail("expected ')'")
            i += 1
            return t
        if tok in ("&", "|", ")"):
            fail(f"expected a variable or '(' but found {tok!r}")
        i += 1
        return Var(tok)

    t = term()
    if i != len(tokens):
        fail(f"unexpected {tokens[i][0]!r}")
    return t


def as_term(t) -> Term:
    return parse_term(t) if isinstance(t, str) else t


# -- evaluation ---------------------------------------------------------

def evaluate(L: Lattice, t: Term, assignment: Mapping[str, int]) -> int:
    """Value of ``t`` in ``L`` (assignment maps variable names to element indices)."""
    t = as_term(t)
    if isinstance(t, Var):
        try:
            return assignment[t.name]
        except KeyError:
            raise UnboundVariable(t.name) from None
    a = evaluate(L, t.left, assignment)
    b = evaluate(L, t.right, assignment)
    return L.meet(a, b) if isinstance(t, Meet) else L.join(a, b)


def _veval(L: Lattice, t: Term, env: dict, memo: dict):
    if t in memo:
        return memo[t]
    if isinstance(t, Var):
        try:
            v = env[t.name]
        except KeyError:
            raise UnboundVariable(t.name) from None
    else:
        a = _veval(L, t.left, env, memo)
        b = _veval(L, t.right, env, memo)
        v = (L.meet_table if isinstance(t, Meet) else L.join_table)[a, b]
    memo[t] = v
    return v


@dataclass
class Verdict:
    """Outcome of an exhaustive check; truthy iff the property holds."""

    holds: bool
    counterexample: dict | None = None
    checked: int = 0
    note: str = field(default="", compare=False)

    def __bool__(self):
        return self.holds

    def describe(self, L: Lattice | None = None) -> str:
        if self.holds:
            return "VALID"
        text = "INVALID " + format_assignment(self.counterexample, L)
        return f"{text} ({self.note})" if self.note else text


def format_assignment(a: Mapping | None, L: Lattice | None = None) -> str:
    if not a:
        return ""

    def lab(v):
        if isinstance(v, str):
            return v
        if isinstance(v, (tuple, list, frozenset, set)):
            return "{" + ",".join(lab(x) for x in sorted(v)) + "}"
        return L.label(v) if L is not None else str(v)

    return ", ".join(f"{k}={lab(v)}" for k, v in a.items())


def budget() -> int:
    return int(os.environ.get("LATKIT_BUDGET", DEFAULT_BUDGET))


def search(L: Lattice, names, failing, limit: int | None = None) -> Verdict:
    """Scan all assignments of ``names`` for one where ``failing(env)`` is true.

    ``failing`` receives a dict of index arrays (scalars for the variables
    fixed in the current block) and returns a boolean array.
    """
    names = list(names)
    k, n = len(names), L.n
    total = n ** k
    limit = budget() if limit is None else limit
    if total > limit:
        raise SizeGuard(f"{total} assignments over {L.n} elements exceed the budget of {limit}")
    inner = k
    while inner > 0 and n ** inner > _BLOCK:
        inner -= 1
    outer = k - inner
    if inner:
        grids = [g.reshape(-1) for g in np.meshgrid(*[np.arange(n)] * inner, indexing="ij")]
    else:
        grids = []
    for prefix in itertools.product(range(n), repeat=outer):
        env = dict(zip(names[:outer], (np.intp(v) for v in prefix)))
        env.update(zip(names[outer:], grids))
        bad = np.broadcast_to(np.asarray(failing(env)), (n ** inner,) if inner else ())
        if bad.any():
            pos = int(np.argmax(bad)) if inner else 0
            rest = np.unravel_index(pos, (n,) * inner) if inner else ()
            values = list(prefix) + [int(v) for v in rest]
            return Verdict(False, dict(zip(names, values)), total)
    return Verdict(True, None, total)


def holds_identity(L: Lattice, s, t, limit: int | None = None) -> Verdict:
    s, t = as_term(s), as_term(t)

    def failing(env):
        memo: dict = {}
        return _veval(L, s, env, memo) != _veval(L, t, env, memo)

    return search(L, variables(s, t), failing, limit)


def holds_inclusion(L: Lattice, s, t, limit: int | None = None) -> Verdict:
    """``s <= t`` under every assignment."""
    s, t = as_term(s), as_term(t)

    def failing(env):
        memo: dict = {}
        a, b = _veval(L, s, env, memo), _veval(L, t, env, memo)
        return L.join_table[a, b] != b

    return search(L, variables(s, t), failing, limit)


# -- named identities ---------------------------------------------------

def ndistr_identity(n: int) -> tuple[Term, Term]:
    """Both sides of ``x & (y0|...|yn) = |_i (x & |_{j != i} yj)``."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    x = Var("x")
    ys = [Var(f"y{i}") for i in range(n + 1)]
    lhs = Meet(x, join_of(ys))
    rhs = join_of(Meet(x, join_of(ys[:i] + ys[i + 1:])) for i in range(n + 1))
    return lhs, rhs


def is_n_distributive(L: Lattice, n: int, limit: int | None = None) -> Verdict:
    return holds_identity(L, *ndistr_identity(n), limit=limit)


def is_n_distributive_by_covers(L: Lattice, n: int, max_size: int | None = None) -> Verdict:
    """Every irredundant join-cover of every join-irreducible has at most ``n`` members."""
    from .covers import cover_masks

    for p in sorted(L.join_irreducibles):
        for a in cover_masks(L, p, "irredundant", max_size=max_size):
            if a.bit_count() > n:
                return Verdict(False, {"p": p, "cover": tuple(bits(a))})
    return Verdict(True)


def p_term(n: int, x: str = "x", y: str = "y", z: str = "z") -> Term:
    """``p_0 = y`` and ``p_{n+1}(x, y, z) = y & (x | p_n(x, z, y))``."""
    if n < 0:
        raise ValueError("n must be a natural number")
    if n == 0:
        return Var(y)
    return Meet(Var(y), Join(Var(x), p_term(n - 1, x, z, y)))


SDJ_RHS = Join(Var("x"), Meet(Var("y"), Var("z")))


def holds_sdj(L: Lattice, n: int, limit: int | None = None) -> Verdict:
    """The inclusion ``p_n(x, y, z) <= x | (y & z)``."""
    return holds_inclusion(L, p_term(n), SDJ_RHS, limit)


def is_join_semidistributive(L: Lattice) -> Verdict:
    """``x|y = x|z`` implies ``x|y = x|(y&z)``."""
    J, M = L.join_table, L.meet_table

    def failing(env):
        x, y, z = env["x"], env["y"], env["z"]
        xy = J[x, y]
        return (xy == J[x, z]) & (xy != J[x, M[y, z]])

    return search(L, ("x", "y", "z"), failing)


MODULAR = (parse_term("x & (y | (x & z))"), parse_term("(x & y) | (x & z)"))
DISTRIBUTIVE = (parse_term("x & (y | z)"), parse_term("(x & y) | (x & z)"))


def is_modular(L: Lattice) -> Verdict:
    return holds_identity(L, *MODULAR)


def is_distributive(L: Lattice) -> Verdict:
    return holds_identity(L, *DISTRIBUTIVE)


def holds_sentence_1storder(L: Lattice) -> Verdict:
    """``x|y|z < t1 < t2`` implies ``(x|y) & z = (x&z) | (y&z)``.

    The two existential witnesses only matter through whether ``x|y|z`` has a
    two-step chain above it; they are reported as the lowest-index choice.
    """
    J, M = L.join_table, L.meet_table
    t1_for = []
    for s in range(L.n):
        cands = [t for t in bits(L.up[s]) if t != s and L.up[t] != 1 << t]
        t1_for.append(cands[0] if cands else -1)
    has_chain = np.array([t >= 0 for t in t1_for])

    def failing(env):
        x, y, z = env["x"], env["y"], env["z"]
        xy = J[x, y]
        s = J[xy, z]
        return has_chain[s] & (M[xy, z] != J[M[x, z], M[y, z]])

    v = search(L, ("x", "y", "z"), failing)
    if not v.holds:
        ce = v.counterexample
        s = L.join(L.join(ce["x"], ce["y"]), ce["z"])
        t1 = t1_for[s]
        t2 = next(t for t in bits(L.up[t1]) if t != t1)
        ce.update(t1=t1, t2=t2)
    v.checked = L.n ** 5
    return v


# -- refutation search --------------------------------------------------

@dataclass
class Refutation:
    """Result of a bounded counterexample search over the lattice catalog."""

    lattice: Lattice | None
    assignment: dict | None
    max_size: int
    searched: int

    @property
    def found(self) -> bool:
        return self.lattice is not None

    def describe(self) -> str:
        if not self.found:
            return f"exhausted: no counterexample among {self.searched} lattices of size <= {self.max_size}"
        return (f"counterexample in {self.lattice.name} ({self.lattice.n} elements): "
                f"{format_assignment(self.assignment, self.lattice)}")


def refute(s, t, n: int | None = None, max_size: int = 7) -> Refutation:
    """Look for a finite lattice (n-distributive if ``n`` is given) violating ``s = t``.

    A semi-decision procedure: a negative answer only means no counterexample
    exists up to ``max_size`` elements.
    """
    from .enumeration import MAX_SIZE, enumerate_lattices

    if max_size > MAX_SIZE:
        raise SizeGuard(f"refutation search is limited to lattices of size <= {MAX_SIZE}")
    s, t = as_term(s), as_term(t)
    searched = 0
    for size in range(1, max_size + 1):
        for L in enumerate_lattices(size, max_size=max_size):
            if n is not None and not is_n_distributive(L, n):
                continue
            searched += 1
            v = holds_identity(L, s, t)
            if not v.holds:
                return Refutation(L, v.counterexample, max_size, searched)
    return Refutation(None, None, max_size, searched)
