"""Lattice congruences: principal congruences, Con L, subdirect irreducibility, quotients.

A congruence is stored as a block id per element, normalised so that ids
appear in order of first occurrence (element 0 is always in block 0).  Two
congruences are equal iff their id tuples are equal.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import Lattice, check_size

CON_LIMIT = 40


def _normalise(ids: Iterable[int]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(b, len(seen)) for b in ids)


@dataclass(frozen=True)
class Congruence:
    ids: tuple[int, ...]

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Congruence":
        ids = list(range(n))
        for k, block in enumerate(blocks):
            for x in block:
                ids[x] = n + k
        return cls(_normalise(ids))

    @classmethod
    def identity(cls, n: int) -> "Congruence":
        return cls(tuple(range(n)))

    @classmethod
    def full(cls, n: int) -> "Congruence":
        return cls((0,) * n)

    @property
    def n(self) -> int:
        return len(self.ids)

    @property
    def blocks(self) -> list[tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for x, b in enumerate(self.ids):
            out.setdefault(b, []).append(x)
        return [tuple(v) for _, v in sorted(out.items())]

    def same(self, x: int, y: int) -> bool:
        return self.ids[x] == self.ids[y]

    def is_identity(self) -> bool:
        return len(set(self.ids)) == self.n

    def is_full(self) -> bool:
        return len(set(self.ids)) <= 1

    def leq(self, other: "Congruence") -> bool:
        """``self`` is contained in ``other``."""
        return all(other.ids[x] == other.ids[b[0]] for b in self.blocks for x in b)

    def __le__(self, other):
        return self.leq(other)

    def __lt__(self, other):
        return self != other and self.leq(other)

    def join(self, other: "Congruence") -> "Congruence":
        uf = _UnionFind(self.n)
        for theta in (self, other):
            for b in theta.blocks:
                for x in b[1:]:
                    uf.union(b[0], x)
        return Congruence(_normalise(uf.find(x) for x in range(self.n)))

    def meet(self, other: "Congruence") -> "Congruence":
        return Congruence(_normalise(zip(self.ids, other.ids)))

    def format(self, L: Lattice) -> str:
        return "".join("{" + ",".join(L.labels[x] for x in b) + "}" for b in self.blocks)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True


def generated_congruence(L: Lattice, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Least congruence containing all the given pairs.

    Every pair that merges two classes is pushed through the translations
    ``x -> x|z`` and ``x -> x&z``; pairs already inside one class need no
    processing because their translates are connected through the translates
    of the path joining them.
    """
    uf = _UnionFind(L.n)
    J, M = L._join, L._meet
    work = list(pairs)
    while work:
        x, y = work.pop()
        if not uf.union(x, y):
            continue
        for z in range(L.n):
            work.append((J[x][z], J[y][z]))
            work.append((M[x][z], M[y][z]))
    return Congruence(_normalise(uf.find(x) for x in range(L.n)))


def principal_congruence(L: Lattice, x, y) -> Congruence:
    x, y = L.index(x), L.index(y)
    return generated_congruence(L, [(x, y)])


def is_compatible(L: Lattice, theta: Congruence) -> bool:
    """Full scan: ``x = y (mod theta)`` implies ``x|z = y|z`` and ``x&z = y&z``."""
    b = np.asarray(theta.ids)
    same = b[:, None] == b[None, :]
    for table in (L.join_table, L.meet_table):
        bt = b[table]  # bt[x, z] = block of x op z
        for z in range(L.n):
            col = bt[:, z]
            if ((col[:, None] != col[None, :]) & same).any():
                return False
    return True


def all_congruences(L: Lattice, max_size: int | None = CON_LIMIT) -> list[Congruence]:
    """Every congruence of ``L``, sorted by number of blocks (descending), then ids.

    Con L is the join closure of the principal congruences of covering pairs
    together with the identity congruence.
    """
    check_size(L, max_size, "congruence lattice")
    gens = sorted({principal_congruence(L, a, b) for a, b in L.covers}, key=lambda t: t.ids)
    found = {Congruence.identity(L.n)}
    frontier = list(found)
    while frontier:
        new = []
        for theta in frontier:
            for g in gens:
                psi = theta.join(g)
                if psi not in found:
                    found.add(psi)
                    new.append(psi)
        frontier = new
    return sorted(found, key=lambda t: (-len(set(t.ids)), t.ids))


def congruence_atoms(L: Lattice, max_size: int | None = CON_LIMIT) -> list[Congruence]:
    cons = all_congruences(L, max_size)
    nonzero = [t for t in cons if not t.is_identity()]
    return [t for t in nonzero if not any(s < t for s in nonzero)]


def is_subdirectly_irreducible(L: Lattice, max_size: int | None = CON_LIMIT) -> tuple[bool, Congruence | None]:
    """``(True, monolith)`` when Con L has a unique atom, else ``(False, None)``.

    The one-element lattice is not counted as subdirectly irreducible.
    """
    if L.n < 2:
        return False, None
    atoms = congruence_atoms(L, max_size)
    if len(atoms) == 1:
        return True, atoms[0]
    return False, None


def is_simple(L: Lattice, max_size: int | None = CON_LIMIT) -> bool:
    return L.n >= 2 and len(all_congruences(L, max_size)) == 2


def quotient(L: Lattice, theta: Congruence, name: str | None = None) -> Lattice:
    """``L / theta``; each block is labelled by its least element.

    Blocks of a lattice congruence are intervals, so the least element exists.
    Block ``A <= B`` iff ``a | b`` lies in ``B`` for representatives ``a, b``.
    """
    blocks = theta.blocks
    reps = [L.meet_all(b) for b in blocks]
    k = len(blocks)
    leq = np.zeros((k, k), dtype=bool)
    for i in range(k):
        for j in range(k):
            leq[i, j] = theta.same(L.join(reps[i], reps[j]), reps[j])
    return Lattice([L.labels[r] for r in reps], leq, name=name or f"{L.name}/theta")
