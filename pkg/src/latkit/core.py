"""Finite lattices stored as dense indices with precomputed order and operation tables.

Elements are the integers ``0..n-1``; labels only matter for input and output.
Internally, element sets are Python ints used as bit masks (bit ``i`` set means
element ``i`` is a member).  Public helpers accept any iterable of indices and
return ``frozenset`` values.
"""
from __future__ import annotations

import itertools
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CycleError, LatticeFormatError, NonCoverEdge, NotALattice, NotJoinIrreducible, SizeGuard

#: Routines that enumerate subsets refuse larger lattices unless told otherwise.
SUBSET_LIMIT = 64


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def check_size(L: "Lattice", limit: int | None, what: str) -> None:
    limit = SUBSET_LIMIT if limit is None else limit
    if L.n > limit:
        raise SizeGuard(f"{what}: lattice {L.name or '<unnamed>'} has {L.n} elements, "
                        f"limit is {limit} (pass a larger max_size to override)")


class Lattice:
    """An immutable finite lattice.

    Parameters
    ----------
    labels : sequence of str
        Element names; element ``i`` is ``labels[i]``.
    leq : array-like, shape (n, n)
        ``leq[i, j]`` is true iff ``i <= j``.  Must be a partial order in which
        every pair has a least upper bound and a greatest lower bound.
    name : str
    covers : sequence of (int, int), optional
        The cover pairs in presentation order.  Only kept so that files round
        trip unchanged; derived from ``leq`` when omitted.
    """

    def __init__(self, labels: Sequence[str], leq, name: str = "", covers=None):
        labels = tuple(str(x) for x in labels)
        n = len(labels)
        if n == 0:
            raise LatticeFormatError("a lattice needs at least one element")
        if len(set(labels)) != n:
            dup = next(x for x in labels if labels.count(x) > 1)
            raise LatticeFormatError(f"duplicate element label {dup!r}")
        leq = np.array(leq, dtype=bool)
        if leq.shape != (n, n):
            raise LatticeFormatError(f"order matrix has shape {leq.shape}, expected {(n, n)}")
        if not leq.diagonal().all():
            raise LatticeFormatError("order relation is not reflexive")
        both = leq & leq.T
        np.fill_diagonal(both, False)
        if both.any():
            i, j = map(int, np.argwhere(both)[0])
            raise CycleError(labels[i], labels[j])
        m = leq.astype(np.int64)
        if ((m @ m > 0) != leq).any():
            raise LatticeFormatError("order relation is not transitive")
        leq.flags.writeable = False

        self.name = name
        self.labels = labels
        self.n = n
        self.leq = leq
        self.down = [mask_of(np.flatnonzero(leq[:, x]).tolist()) for x in range(n)]
        self.up = [mask_of(np.flatnonzero(leq[x, :]).tolist()) for x in range(n)]
        self._index = {lab: i for i, lab in enumerate(labels)}
        self._join = [[0] * n for _ in range(n)]
        self._meet = [[0] * n for _ in range(n)]
        for x in range(n):
            for y in range(x, n):
                j = self._least(self.up[x] & self.up[y])
                if j is None:
                    raise NotALattice(labels[x], labels[y], "least upper bound")
                k = self._greatest(self.down[x] & self.down[y])
                if k is None:
                    raise NotALattice(labels[x], labels[y], "greatest lower bound")
                self._join[x][y] = self._join[y][x] = j
                self._meet[x][y] = self._meet[y][x] = k
        self.join_table = np.array(self._join, dtype=np.intp)
        self.meet_table = np.array(self._meet, dtype=np.intp)
        self.join_table.flags.writeable = False
        self.meet_table.flags.writeable = False
        self._lower = tuple(
            tuple(x for x in bits(self.down[y] & ~(1 << y))
                  if self.up[x] & self.down[y] == (1 << x) | (1 << y))
            for y in range(n))
        self._upper = tuple(tuple(y for y in range(n) if x in self._lower[y]) for x in range(n))
        if covers is None:
            covers = [(x, y) for y in range(n) for x in self._lower[y]]
            covers.sort()
        self.covers = tuple((int(a), int(b)) for a, b in covers)

    def _least(self, m):
        for u in bits(m):
            if m & ~self.up[u] == 0:
                return u
        return None

    def _greatest(self, m):
        for u in bits(m):
            if m & ~self.down[u] == 0:
                return u
        return None

    # -- basic queries -------------------------------------------------
    def __len__(self):
        return self.n

    def __repr__(self):
        return f"Lattice({self.name!r}, n={self.n})"

    def __eq__(self, other):
        return (isinstance(other, Lattice) and self.labels == other.labels
                and np.array_equal(self.leq, other.leq))

    def __hash__(self):
        return hash((self.labels, self.leq.tobytes()))

    def index(self, label) -> int:
        """Index of an element given by label (ints are passed through)."""
        if isinstance(label, (int, np.integer)):
            if not 0 <= label < self.n:
                raise LatticeFormatError(f"element index {label} out of range")
            return int(label)
        try:
            return self._index[label]
        except KeyError:
            raise LatticeFormatError(f"unknown element {label!r}") from None

    def indices(self, labels) -> list[int]:
        return [self.index(x) for x in labels]

    def label(self, i: int) -> str:
        return self.labels[i]

    def le(self, x: int, y: int) -> bool:
        return bool(self.down[y] >> x & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.le(x, y)

    def join(self, x: int, y: int) -> int:
        return self._join[x][y]

    def meet(self, x: int, y: int) -> int:
        return self._meet[x][y]

    def join_all(self, xs: Iterable[int]) -> int:
        acc = self.bottom
        for x in xs:
            acc = self._join[acc][x]
        return acc

    def meet_all(self, xs: Iterable[int]) -> int:
        acc = self.top
        for x in xs:
            acc = self._meet[acc][x]
        return acc

    def join_mask(self, m: int) -> int:
        acc = self.bottom
        J = self._join
        while m:
            low = m & -m
            acc = J[acc][low.bit_length() - 1]
            m ^= low
        return acc

    def lower_covers(self, x: int) -> tuple[int, ...]:
        return self._lower[x]

    def upper_covers(self, x: int) -> tuple[int, ...]:
        return self._upper[x]

    @cached_property
    def bottom(self) -> int:
        return next(x for x in range(self.n) if self.down[x] == 1 << x)

    @cached_property
    def top(self) -> int:
        return next(x for x in range(self.n) if self.up[x] == 1 << x)

    @cached_property
    def ji_mask(self) -> int:
        return mask_of(x for x in range(self.n) if len(self._lower[x]) == 1)

    @cached_property
    def join_irreducibles(self) -> frozenset[int]:
        return frozenset(bits(self.ji_mask))

    @cached_property
    def meet_irreducibles(self) -> frozenset[int]:
        return frozenset(x for x in range(self.n) if len(self._upper[x]) == 1)

    @cached_property
    def atoms(self) -> frozenset[int]:
        if self.n == 1:
            return frozenset()
        return frozenset(self._upper[self.bottom])

    def lower_star(self, p: int) -> int:
        """The unique lower cover of a join-irreducible element."""
        if len(self._lower[p]) != 1:
            raise NotJoinIrreducible(self.labels[p])
        return self._lower[p][0]

    def format_set(self, xs: Iterable[int]) -> str:
        return ",".join(self.labels[x] for x in sorted(xs))


# -- construction -------------------------------------------------------

def _closure(n: int, edges) -> np.ndarray:
    leq = np.eye(n, dtype=bool)
    for a, b in edges:
        leq[a, b] = True
    for k in range(n):
        leq |= np.outer(leq[:, k], leq[k, :])
    return leq


def from_covers(labels: Sequence[str], cover_pairs, name: str = "") -> Lattice:
    """Build a lattice from its Hasse diagram.

    ``cover_pairs`` lists ``(lower, upper)`` label pairs.  Transitively implied
    pairs are rejected rather than dropped.
    """
    labels = [str(x) for x in labels]
    if len(set(labels)) != len(labels):
        dup = next(x for x in labels if labels.count(x) > 1)
        raise LatticeFormatError(f"duplicate element label {dup!r}")
    pos = {lab: i for i, lab in enumerate(labels)}
    edges = []
    for pair in cover_pairs:
        if len(pair) != 2:
            raise LatticeFormatError(f"cover entry {pair!r} is not a pair")
        a, b = (str(x) for x in pair)
        for x in (a, b):
            if x not in pos:
                raise LatticeFormatError(f"cover pair ({a!r}, {b!r}) uses undeclared element {x!r}")
        if a == b:
            raise CycleError(a, b)
        if (pos[a], pos[b]) in edges:
            raise LatticeFormatError(f"cover pair ({a!r}, {b!r}) listed twice")
        edges.append((pos[a], pos[b]))
    n = len(labels)
    leq = _closure(n, edges)
    both = leq & leq.T
    np.fill_diagonal(both, False)
    if both.any():
        i, j = map(int, np.argwhere(both)[0])
        raise CycleError(labels[i], labels[j])
    for a, b in edges:
        between = np.flatnonzero(leq[a, :] & leq[:, b])
        for c in between:
            if c not in (a, b):
                raise NonCoverEdge(labels[a], labels[b], labels[int(c)])
    return Lattice(labels, leq, name=name, covers=edges)


def from_leq(labels: Sequence[str], leq, name: str = "") -> Lattice:
    return Lattice(labels, leq, name=name)


def chain(n: int, labels: Sequence[str] | None = None, name: str | None = None) -> Lattice:
    """The ``n``-element chain; default labels ``0 < 1`` or ``0 < c1 < ... < 1``."""
    if labels is None:
        if n == 1:
            labels = ["0"]
        else:
            labels = ["0"] + [f"c{i}" for i in range(1, n - 1)] + ["1"]
    leq = np.triu(np.ones((n, n), dtype=bool))
    return Lattice(labels, leq, name=name or f"chain{n}")


def diamond(k: int, name: str | None = None) -> Lattice:
    """M_k: a bottom, a top and ``k`` pairwise incomparable atoms (M3 for k=3)."""
    atoms = [chr(ord("a") + i) for i in range(k)]
    covers = [("0", a) for a in atoms] + [(a, "1") for a in atoms]
    return from_covers(["0", *atoms, "1"], covers, name=name or f"M{k}")


def m3() -> Lattice:
    return diamond(3, name="M3")


def n5() -> Lattice:
    """The pentagon 0 < a < c < 1, 0 < b < 1."""
    return from_covers(["0", "a", "b", "c", "1"],
                       [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")], name="N5")


def boolean_lattice(atoms: int | Sequence[str], name: str | None = None) -> Lattice:
    """Subsets of the atom set ordered by inclusion; labels concatenate atom names.

    The empty set is labelled ``0`` and the full set ``1`` (so B4 has elements
    ``0, a, b, 1``).
    """
    if isinstance(atoms, int):
        atoms = [chr(ord("a") + i) for i in range(atoms)]
    atoms = list(atoms)
    k = len(atoms)
    subsets = sorted(range(1 << k), key=lambda s: (bin(s).count("1"), [i for i in range(k) if s >> i & 1]))

    def lab(s):
        if s == 0:
            return "0"
        if s == (1 << k) - 1:
            return "1"
        return "".join(atoms[i] for i in range(k) if s >> i & 1)

    labels = [lab(s) for s in subsets]
    leq = [[(s & ~t) == 0 for t in subsets] for s in subsets]
    return Lattice(labels, leq, name=name or f"B{1 << k}")


def product(*factors: Lattice, name: str | None = None) -> Lattice:
    """Direct product with componentwise order; labels look like ``(a,b)``."""
    if not factors:
        raise ValueError("product needs at least one factor")
    idx = list(itertools.product(*(range(f.n) for f in factors)))
    labels = ["(" + ",".join(f.labels[i] for f, i in zip(factors, t)) + ")" for t in idx]
    leq = np.ones((len(idx), len(idx)), dtype=bool)
    for k, f in enumerate(factors):
        col = np.array([t[k] for t in idx])
        leq &= f.leq[np.ix_(col, col)]
    return Lattice(labels, leq, name=name or "x".join(f.name or "?" for f in factors))


def dual(L: Lattice) -> Lattice:
    return Lattice(L.labels, L.leq.T, name=f"dual({L.name})")


def vertical_sum(A: Lattice, B: Lattice, name: str | None = None) -> Lattice:
    """Stack ``B`` on top of ``A``, identifying the top of ``A`` with the bottom of ``B``.

    The glued element keeps ``A``'s label; labels of ``B`` that clash with
    ``A``'s get primes appended.
    """
    b_rest = [y for y in range(B.n) if y != B.bottom]
    labels = list(A.labels)
    taken = set(labels) | {B.labels[y] for y in b_rest}
    for y in b_rest:
        lab = B.labels[y]
        if lab in A.labels:
            while lab in taken:
                lab += "'"
            taken.add(lab)
        labels.append(lab)
    n = len(labels)
    leq = np.zeros((n, n), dtype=bool)
    leq[:A.n, :A.n] = A.leq
    leq[:A.n, A.n:] = True
    leq[np.ix_(range(A.n, n), range(A.n, n))] = B.leq[np.ix_(b_rest, b_rest)]
    return Lattice(labels, leq, name=name or f"{A.name}+{B.name}")


def restrict(L: Lattice, elements: Iterable[int], name: str | None = None) -> Lattice:
    """The induced sub-order on ``elements`` (must itself be a lattice).

    Labels are kept, so ``result.index(L.label(x))`` maps back and forth.
    """
    keep = sorted(set(elements))
    return Lattice([L.labels[x] for x in keep], L.leq[np.ix_(keep, keep)], name=name or f"{L.name}|")


def interval(L: Lattice, a: int, b: int) -> Lattice:
    return restrict(L, bits(L.up[a] & L.down[b]), name=f"{L.name}[{L.labels[a]},{L.labels[b]}]")


# -- element sets -------------------------------------------------------

def downset(L: Lattice, X: Iterable[int]) -> frozenset[int]:
    m = 0
    for x in X:
        m |= L.down[x]
    return frozenset(bits(m))


def upset(L: Lattice, X: Iterable[int]) -> frozenset[int]:
    m = 0
    for x in X:
        m |= L.up[x]
    return frozenset(bits(m))


def strict_downset(L: Lattice, X: Iterable[int]) -> frozenset[int]:
    m = 0
    for x in X:
        m |= L.down[x] & ~(1 << x)
    return frozenset(bits(m))


def down_mask(L: Lattice, m: int) -> int:
    out = 0
    for x in bits(m):
        out |= L.down[x]
    return out


def join_irreducibles(L: Lattice) -> frozenset[int]:
    return L.join_irreducibles


def atoms(L: Lattice) -> frozenset[int]:
    return L.atoms


def lower_star(L: Lattice, p: int) -> int:
    return L.lower_star(p)


def sublattice_generated(L: Lattice, G: Iterable[int]) -> frozenset[int]:
    """Least subset containing ``G`` closed under binary join and meet."""
    S = set(G)
    if not S:
        raise ValueError("generating set must be nonempty")
    frontier = list(S)
    while frontier:
        new = []
        for x in frontier:
            for y in list(S):
                for z in (L.join(x, y), L.meet(x, y)):
                    if z not in S:
                        S.add(z)
                        new.append(z)
        frontier = new
    return frozenset(S)


def antichains(L: Lattice, within: int | None = None) -> Iterator[int]:
    """All antichains (as masks) inside the element mask ``within``, empty one included."""
    if within is None:
        within = (1 << L.n) - 1
    comparable = [L.down[x] | L.up[x] for x in range(L.n)]

    def rec(chosen, cand):
        if not cand:
            yield chosen
            return
        low = cand & -cand
        i = low.bit_length() - 1
        rest = cand ^ low
        yield from rec(chosen | low, rest & ~comparable[i])
        yield from rec(chosen, rest)

    yield from rec(0, within)


def lower_subsets(L: Lattice) -> Iterator[int]:
    """All down-closed subsets (as masks), one per antichain of maximal elements."""
    for a in antichains(L):
        yield down_mask(L, a)


# -- isomorphism --------------------------------------------------------

def _invariants(L: Lattice) -> list[tuple[int, int, int, int]]:
    return [(L.down[x].bit_count(), L.up[x].bit_count(), len(L.lower_covers(x)),
             len(L.upper_covers(x))) for x in range(L.n)]


def find_isomorphism(A: Lattice, B: Lattice) -> dict[int, int] | None:
    """An order isomorphism ``A -> B`` as an index map, or ``None``.

    Candidates are pre-partitioned by (downset size, upset size, cover degrees)
    and then assigned by backtracking, checking the order both ways.
    """
    if A.n != B.n:
        return None
    ia, ib = _invariants(A), _invariants(B)
    if sorted(ia) != sorted(ib):
        return None
    order = sorted(range(A.n), key=lambda x: (ia[x][0], ia[x]))
    by_inv: dict = {}
    for y in range(B.n):
        by_inv.setdefault(ib[y], []).append(y)
    image: dict[int, int] = {}
    used = [False] * B.n

    def rec(k):
        if k == len(order):
            return True
        a = order[k]
        for b in by_inv[ia[a]]:
            if used[b]:
                continue
            if all(A.leq[a2, a] == B.leq[b2, b] and A.leq[a, a2] == B.leq[b, b2]
                   for a2, b2 in image.items()):
                image[a] = b
                used[b] = True
                if rec(k + 1):
                    return True
                del image[a]
                used[b] = False
        return False

    return dict(image) if rec(0) else None


def is_isomorphic(A: Lattice, B: Lattice) -> bool:
    return find_isomorphism(A, B) is not None
