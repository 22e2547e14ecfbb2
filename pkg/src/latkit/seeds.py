"""Join-closed subsets, the projection onto them, and the seed hierarchy.

For a finite lattice the ideal lattice of ``L`` is isomorphic to ``L`` and
the ideal lattice of a join-closed subset ``S`` is isomorphic to ``S``
(principal ideals), so the Galois pair between them is just the inclusion of
``S`` into ``L`` and the projection ``a -> max(S & down(a))``.  No separate
ideal type exists for that reason.

Quantifiers over join-covers ``X`` of ``p`` range over antichains of
``L - {0}``: whether ``X`` covers ``p``, and which sets refine ``X``, depend
on ``X`` only through its down-set, and every down-set is generated by its
antichain of maximal elements.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .core import Lattice, antichains, bits, check_size, down_mask, mask_of, restrict
from .covers import cover_masks, refines_mask
from .errors import UnboundVariable
from .terms import Meet, Term, Var, Verdict, as_term


@dataclass(frozen=True)
class SubJoinSemilattice:
    """A subset of ``ambient`` containing 0 and closed under binary join."""

    ambient: Lattice
    carrier: int  # element mask
    generators: int = field(default=0, compare=False)

    @cached_property
    def members(self) -> tuple[int, ...]:
        return tuple(bits(self.carrier))

    @cached_property
    def proj_table(self) -> tuple[int, ...]:
        L = self.ambient
        # carrier & down(a) is join-closed and contains 0, so its join is its maximum
        return tuple(L.join_mask(self.carrier & L.down[a]) for a in range(L.n))

    def __contains__(self, x: int) -> bool:
        return bool(self.carrier >> x & 1)

    def proj(self, a: int) -> int:
        return self.proj_table[a]

    def join(self, x: int, y: int) -> int:
        return self.ambient.join(x, y)

    def meet(self, x: int, y: int) -> int:
        """Relative meet: largest carrier element below ``x & y``."""
        return self.proj_table[self.ambient.meet(x, y)]

    def as_lattice(self, name: str | None = None) -> Lattice:
        """The carrier as a standalone lattice (ambient labels kept)."""
        L = self.ambient
        return restrict(L, self.members, name=name or f"span({L.format_set(bits(self.generators))})")

    def format(self) -> str:
        return self.ambient.format_set(self.members)


def span(L: Lattice, sigma: Iterable) -> SubJoinSemilattice:
    """``sigma`` together with 0, closed under binary join."""
    gens = mask_of(L.index(x) for x in sigma)
    carrier = gens | 1 << L.bottom
    frontier = list(bits(carrier))
    while frontier:
        new = []
        for x in frontier:
            for y in bits(carrier):
                z = L.join(x, y)
                if not carrier >> z & 1:
                    carrier |= 1 << z
                    new.append(z)
        frontier = new
    return SubJoinSemilattice(L, carrier, gens)


def proj(S: SubJoinSemilattice, a) -> int:
    return S.proj(S.ambient.index(a))


def relative_meet(S: SubJoinSemilattice, x, y) -> int:
    L = S.ambient
    return S.meet(L.index(x), L.index(y))


def eval_relative(S: SubJoinSemilattice, t: Term | str, assignment: Mapping[str, int]) -> int:
    """Evaluate ``t`` in the carrier on the projected assignment (joins are ambient, meets relative)."""
    t = as_term(t)

    def ev(u):
        if isinstance(u, Var):
            try:
                return S.proj(assignment[u.name])
            except KeyError:
                raise UnboundVariable(u.name) from None
        a, b = ev(u.left), ev(u.right)
        return S.meet(a, b) if isinstance(u, Meet) else S.join(a, b)

    return ev(t)


# -- density and seeds --------------------------------------------------

def _sigma_mask(L: Lattice, sigma) -> int:
    if isinstance(sigma, int):
        return sigma
    return mask_of(L.index(x) for x in sigma)


def is_join_dense(L: Lattice, sigma) -> Verdict:
    """Every element is the join of the members of ``sigma`` below it."""
    m = _sigma_mask(L, sigma)
    for a in range(L.n):
        if L.join_mask(m & L.down[a]) != a:
            return Verdict(False, {"a": a}, checked=a + 1)
    return Verdict(True, checked=L.n)


def is_join_dense_by_separation(L: Lattice, sigma) -> Verdict:
    """Equivalent test: for ``a </= b`` some ``x`` in ``sigma`` has ``x <= a`` and ``x </= b``."""
    m = _sigma_mask(L, sigma)
    for a in range(L.n):
        for b in range(L.n):
            if not L.le(a, b) and not m & L.down[a] & ~L.down[b]:
                return Verdict(False, {"a": a, "b": b})
    return Verdict(True)


def _covers_of(L: Lattice, p: int):
    """Antichain join-covers of ``p`` inside ``L - {0}``."""
    within = ((1 << L.n) - 1) & ~(1 << L.bottom)
    for X in antichains(L, within):
        if L.le(p, L.join_mask(X)):
            yield X


def is_pre_seed(L: Lattice, sigma, max_size: int | None = None) -> Verdict:
    """Each join-cover ``X`` of each ``p`` in ``sigma`` is refined by a cover of ``p`` inside ``sigma``.

    The best candidate is ``sigma & down(X)``, so the test is ``p <= join(sigma & down(X))``.
    """
    check_size(L, max_size, "pre-seed test")
    m = _sigma_mask(L, sigma)
    checked = 0
    for p in bits(m):
        for X in _covers_of(L, p):
            checked += 1
            if not L.le(p, L.join_mask(m & down_mask(L, X))):
                return Verdict(False, {"p": p, "X": tuple(bits(X))}, checked)
    return Verdict(True, checked=checked)


def _structural(L: Lattice, m: int) -> Verdict | None:
    if m & ~L.ji_mask:
        x = next(bits(m & ~L.ji_mask))
        return Verdict(False, {"not_join_irreducible": x}, note="not contained in J(L)")
    dense = is_join_dense(L, m)
    if not dense:
        return Verdict(False, dense.counterexample, note="not join-dense")
    return None


def is_quasi_seed(L: Lattice, sigma, max_size: int | None = None) -> Verdict:
    """A join-dense pre-seed made of join-irreducibles."""
    m = _sigma_mask(L, sigma)
    bad = _structural(L, m)
    if bad is not None:
        return bad
    return is_pre_seed(L, m, max_size)


def is_seed(L: Lattice, sigma, max_size: int | None = None) -> Verdict:
    """Join-dense, inside J(L), and each join-cover ``X`` of each ``p`` in ``sigma``
    is refined by a minimal join-cover of ``p`` contained in ``sigma``."""
    check_size(L, max_size, "seed test")
    m = _sigma_mask(L, sigma)
    bad = _structural(L, m)
    if bad is not None:
        return bad
    checked = 0
    for p in bits(m):
        inside = list(cover_masks(L, p, "minimal", within=m, max_size=max_size))
        for X in _covers_of(L, p):
            checked += 1
            if not any(refines_mask(L, I, X) for I in inside):
                return Verdict(False, {"p": p, "X": tuple(bits(X))}, checked)
    return Verdict(True, checked=checked)


def is_strongly_spatial(L: Lattice, max_size: int | None = None) -> Verdict:
    """The join-irreducibles (the points, for finite ``L``) form a seed."""
    return is_seed(L, L.ji_mask, max_size)


def galois_pi_is_homomorphism(L: Lattice, sigma) -> Verdict:
    """Projection onto ``span(sigma)`` preserves joins, and sends meets to relative meets."""
    S = span(L, bits(_sigma_mask(L, sigma)))
    P = S.proj_table
    for a in range(L.n):
        for b in range(a, L.n):
            if P[L.join(a, b)] != L.join(P[a], P[b]):
                return Verdict(False, {"a": a, "b": b, "op": "join"})
            if P[L.meet(a, b)] != S.meet(P[a], P[b]):
                return Verdict(False, {"a": a, "b": b, "op": "meet"})
    return Verdict(True, checked=L.n * (L.n + 1) // 2)
