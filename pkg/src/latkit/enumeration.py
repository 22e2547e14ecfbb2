"""All finite lattices of a given size, up to isomorphism.

Generation is by canonical augmentation: removing any coatom from a lattice of
size ``n + 1`` leaves a lattice of size ``n``, so every lattice of size
``n + 1`` arises from one of size ``n`` by adding a new coatom ``c`` below the
top.  The lower covers of ``c`` form an antichain ``A``; the result is a
lattice exactly when every join of two elements of the down-set of ``A``
stays in that down-set or is the top.  Candidates are deduplicated through a
canonical form (refined invariant colouring, then the lexicographically least
order matrix over colour-preserving relabellings).

:func:`naive_lattices` is an unrelated cross-check: it lists every naturally
labelled partial order on the interior elements and keeps one representative
per isomorphism class using backtracking isomorphism tests.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator

import numpy as np

from .core import Lattice, antichains, bits, down_mask, find_isomorphism
from .errors import LatticeFormatError, NotALattice, SizeGuard, UnknownPredicate

DEFAULT_SIZE = 7
MAX_SIZE = 8


def _refined_colours(L: Lattice) -> list[int]:
    colour = [(L.down[x].bit_count(), L.up[x].bit_count(), len(L.lower_covers(x)),
               len(L.upper_covers(x))) for x in range(L.n)]
    ranks = {c: i for i, c in enumerate(sorted(set(colour)))}
    col = [ranks[c] for c in colour]
    while True:
        sig = [(col[x], tuple(sorted(col[y] for y in L.lower_covers(x))),
                tuple(sorted(col[y] for y in L.upper_covers(x)))) for x in range(L.n)]
        ranks = {c: i for i, c in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(col)):
            return new
        col = new


def canonical_form(L: Lattice) -> tuple[tuple[int, ...], int]:
    """``(order, key)``: a canonical relabelling and the order-matrix bit key under it.

    Two lattices are isomorphic iff their keys are equal.  ``order[i]`` is the
    original index of the element placed at position ``i``.
    """
    col = _refined_colours(L)
    cells: dict[int, list[int]] = {}
    for x in range(L.n):
        cells.setdefault(col[x], []).append(x)
    groups = [cells[c] for c in sorted(cells)]
    leq = L.leq
    best = None
    for perms in itertools.product(*(itertools.permutations(g) for g in groups)):
        order = [x for p in perms for x in p]
        sub = leq[np.ix_(order, order)]
        key = int.from_bytes(np.packbits(sub.reshape(-1)).tobytes(), "big")
        if best is None or key < best[1]:
            best = (tuple(order), key)
    return best


def _canonical_labels(n: int) -> list[str]:
    if n == 1:
        return ["0"]
    return ["0"] + [chr(ord("a") + i) for i in range(n - 2)] + ["1"]


def _relabel(L: Lattice, order, name: str) -> Lattice:
    return Lattice(_canonical_labels(L.n), L.leq[np.ix_(order, order)], name=name)


def _add_coatom(L: Lattice, A: int) -> Lattice:
    n = L.n
    leq = np.zeros((n + 1, n + 1), dtype=bool)
    leq[:n, :n] = L.leq
    leq[n, n] = leq[n, L.top] = True
    for x in bits(down_mask(L, A)):
        leq[x, n] = True
    # keep the top last so that labels stay readable before canonical relabelling
    order = [x for x in range(n) if x != L.top] + [n, L.top]
    leq = leq[np.ix_(order, order)]
    return Lattice([str(i) for i in range(n + 1)], leq)


def _extensions(L: Lattice) -> Iterator[Lattice]:
    top = L.top
    within = ((1 << L.n) - 1) & ~(1 << top)
    for A in antichains(L, within):
        if not A:
            continue
        D = down_mask(L, A)
        ok = all(L.join(x, y) == top or D >> L.join(x, y) & 1
                 for x in bits(D) for y in bits(D) if x < y)
        if ok:
            yield _add_coatom(L, A)


@lru_cache(maxsize=None)
def _level(n: int) -> tuple[Lattice, ...]:
    if n == 1:
        return (Lattice(["0"], [[True]], name="lat1_1"),)
    if n == 2:
        return (Lattice(["0", "1"], [[True, True], [False, True]], name="lat2_1"),)
    found: dict[int, tuple[Lattice, tuple]] = {}
    for L in _level(n - 1):
        for cand in _extensions(L):
            order, key = canonical_form(cand)
            if key not in found:
                found[key] = (cand, order)
    out = []
    for k, key in enumerate(sorted(found), start=1):
        cand, order = found[key]
        out.append(_relabel(cand, order, f"lat{n}_{k}"))
    return tuple(out)


def enumerate_lattices(n: int, max_size: int = DEFAULT_SIZE) -> Iterator[Lattice]:
    """Yield one lattice per isomorphism class of ``n``-element lattices.

    Lattices are named ``lat{n}_{k}`` by position in canonical order.  Sizes
    above ``max_size`` (default 7) need an explicit override, and nothing above
    8 is supported.
    """
    if n < 1:
        raise ValueError("lattice size must be positive")
    if n > max_size or n > MAX_SIZE:
        raise SizeGuard(f"enumeration of size {n} exceeds the limit {min(max_size, MAX_SIZE)}")
    yield from _level(n)


def catalog(max_n: int = DEFAULT_SIZE) -> Iterator[Lattice]:
    """All lattices with 1..max_n elements."""
    for n in range(1, max_n + 1):
        yield from enumerate_lattices(n, max_size=max(max_n, DEFAULT_SIZE))


def naive_lattices(n: int) -> list[Lattice]:
    """Independent (slow) generator: all posets with 0 and 1 added, deduplicated."""
    if n > 7:
        raise SizeGuard("the naive generator is meant for n <= 7")
    if n == 1:
        return [Lattice(["0"], [[True]])]
    k = n - 2
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    reps: list[Lattice] = []
    labels = _canonical_labels(n)
    for choice in itertools.product((False, True), repeat=len(pairs)):
        inner = np.eye(k, dtype=bool)
        for (i, j), on in zip(pairs, choice):
            inner[i, j] = on
        m = inner.astype(int)
        if ((m @ m > 0) != inner).any():
            continue
        leq = np.zeros((n, n), dtype=bool)
        leq[0, :] = True
        leq[:, n - 1] = True
        leq[1:n - 1, 1:n - 1] = inner
        try:
            L = Lattice(labels, leq)
        except (NotALattice, LatticeFormatError):
            continue
        if not any(find_isomorphism(L, R) is not None for R in reps):
            reps.append(L)
    return reps


# -- filtering ----------------------------------------------------------

@dataclass
class Catalog:
    """A lazily filtered stream of lattices of one size."""

    size: int
    source: Callable[[], Iterable[Lattice]]

    def __iter__(self):
        return iter(self.source())

    def count(self) -> int:
        return sum(1 for _ in self)


def lattices(n: int, max_size: int = DEFAULT_SIZE) -> Catalog:
    if n < 1:
        raise ValueError("lattice size must be positive")
    if n > max_size or n > MAX_SIZE:
        raise SizeGuard(f"enumeration of size {n} exceeds the limit {min(max_size, MAX_SIZE)}")
    return Catalog(n, lambda: enumerate_lattices(n, max_size))


def predicate(text: str) -> Callable[[Lattice], bool]:
    """Parse ``name[:param]`` into a lattice predicate.

    Names: ``ndistr:N``, ``modular``, ``distributive``, ``jsd``, ``si``,
    ``sdj:N``, ``true``.
    """
    from . import congruences, terms

    name, _, param = text.partition(":")
    name = name.strip().lower()

    def need_int():
        try:
            return int(param)
        except ValueError:
            raise UnknownPredicate(f"predicate {name!r} needs an integer parameter, got {param!r}") from None

    if name in ("ndistr", "n-distributive"):
        k = need_int()
        return lambda L: bool(terms.is_n_distributive(L, k))
    if name == "sdj":
        k = need_int()
        return lambda L: bool(terms.holds_sdj(L, k))
    if param:
        raise UnknownPredicate(f"predicate {name!r} takes no parameter")
    table = {
        "modular": lambda L: bool(terms.is_modular(L)),
        "distributive": lambda L: bool(terms.is_distributive(L)),
        "jsd": lambda L: bool(terms.is_join_semidistributive(L)),
        "join-semidistributive": lambda L: bool(terms.is_join_semidistributive(L)),
        "si": lambda L: congruences.is_subdirectly_irreducible(L)[0],
        "true": lambda L: True,
    }
    if name not in table:
        raise UnknownPredicate(f"unknown predicate {text!r}")
    return table[name]


def filter_catalog(c: Catalog, pred) -> Catalog:
    test = predicate(pred) if isinstance(pred, str) else pred
    return Catalog(c.size, lambda: (L for L in c if test(L)))
