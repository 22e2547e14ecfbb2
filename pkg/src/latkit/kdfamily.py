"""The lattices L(D) = 2 x D x 2 x 2 and their closure systems K(D).

For ``x`` in a bounded lattice let ``x-`` be 1 when ``x`` is the top and 0
otherwise.  ``K(D)`` keeps the quadruples ``(x0, x1, x2, x3)`` with
``xi- & xk- <= xj`` for all ``i < j < k``; in words, whenever two coordinates
are at the top, so is every coordinate between them.  ``gamma`` pushes an
arbitrary quadruple up to the least member of ``K(D)`` above it.

Coordinates 0, 2 and 3 live in the two-element lattice and are stored as 0/1;
coordinate 1 is an element index of ``D``.  ``K(D)`` is built by filtering
``L(D)``, which has only ``8 |D|`` elements.

The infinite Boolean algebra of finite and cofinite subsets of the naturals
is out of reach here; only finite ``D`` are modelled.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .core import Lattice, restrict
from .errors import NoComplementaryPair, NotBoolean, NotDistributive
from .terms import is_distributive

Quad = tuple[int, int, int, int]


def as_bounded_distributive(D: Lattice) -> Lattice:
    if D.n < 2:
        raise NotDistributive(f"{D.name or 'D'} is trivial; a nontrivial lattice is required")
    v = is_distributive(D)
    if not v:
        raise NotDistributive(f"{D.name or 'D'} is not distributive: {v.describe(D)}")
    return D


def _quads(D: Lattice):
    return [(a, x, b, c) for a in (0, 1) for x in range(D.n) for b in (0, 1) for c in (0, 1)]


def _minus(D: Lattice, q: Quad) -> tuple[int, int, int, int]:
    return (q[0], int(q[1] == D.top), q[2], q[3])


def _quad_le(q: Quad, r: Quad, D: Lattice) -> bool:
    return q[0] <= r[0] and D.le(q[1], r[1]) and q[2] <= r[2] and q[3] <= r[3]


def _label(D: Lattice, q: Quad) -> str:
    return f"({q[0]},{D.labels[q[1]]},{q[2]},{q[3]})"


def _order(D: Lattice, quads) -> np.ndarray:
    n = len(quads)
    leq = np.zeros((n, n), dtype=bool)
    for i, q in enumerate(quads):
        for j, r in enumerate(quads):
            leq[i, j] = _quad_le(q, r, D)
    return leq


def in_KD(D: Lattice, q: Quad) -> bool:
    m = _minus(D, q)
    for i, j, k in itertools.combinations(range(4), 3):
        if m[i] and m[k] and not m[j]:
            return False
    return True


def gamma(D: Lattice, q: Quad) -> Quad:
    """``gamma(x)_j = x_j | join{xi- & xk- : i < j < k}``."""
    m = _minus(D, q)
    out = list(q)
    for j in range(4):
        if any(m[i] and m[k] for i in range(j) for k in range(j + 1, 4)):
            out[j] = D.top if j == 1 else 1
    return tuple(out)


def build_LD(D: Lattice) -> Lattice:
    D = as_bounded_distributive(D)
    quads = _quads(D)
    return Lattice([_label(D, q) for q in quads], _order(D, quads), name=f"L({D.name or 'D'})")


@dataclass
class KD:
    """``K(D)`` as a lattice plus the coordinate bookkeeping."""

    D: Lattice
    lattice: Lattice
    coords: list[Quad]
    index: dict[Quad, int] = field(repr=False)

    def element(self, q) -> int:
        q = tuple(q)
        if len(q) == 4 and not isinstance(q[1], int):
            q = (q[0], self.D.index(q[1]), q[2], q[3])
        return self.index[q]

    def q(self, i: int) -> int:
        """The element with the top at place ``i`` and 0 elsewhere."""
        quad = [0, self.D.bottom, 0, 0]
        quad[i] = self.D.top if i == 1 else 1
        return self.index[tuple(quad)]

    def xq1(self, x) -> int:
        return self.index[(0, self.D.index(x), 0, 0)]

    def label(self, i: int) -> str:
        return self.lattice.labels[i]


def build_KD(D: Lattice) -> KD:
    D = as_bounded_distributive(D)
    coords = [q for q in _quads(D) if in_KD(D, q)]
    L = Lattice([_label(D, q) for q in coords], _order(D, coords), name=f"K({D.name or 'D'})")
    return KD(D, L, coords, {q: i for i, q in enumerate(coords)})


def is_boolean(B: Lattice) -> bool:
    if not is_distributive(B):
        return False
    return all(any(B.join(x, y) == B.top and B.meet(x, y) == B.bottom for y in range(B.n))
               for x in range(B.n))


def complementary_pair(B: Lattice, a=None) -> tuple[int, int]:
    """``(a, b)`` with ``a & b = 0``, ``a | b = 1`` and both different from 0 and 1.

    Defaults to the lowest-index atom and its complement.
    """
    if not is_boolean(B):
        raise NotBoolean(f"{B.name or 'B'} is not a Boolean lattice")
    if a is None:
        if not B.atoms or B.top in B.atoms:
            raise NoComplementaryPair(f"{B.name or 'B'} has no complementary pair of proper elements")
        a = min(B.atoms)
    else:
        a = B.index(a)
    if a in (B.bottom, B.top):
        raise NoComplementaryPair(f"{B.labels[a]!r} is 0 or 1")
    b = next(y for y in range(B.n) if B.join(a, y) == B.top and B.meet(a, y) == B.bottom)
    return a, b


def sdj2_witness(B: Lattice, a=None) -> tuple[Quad, Quad, Quad]:
    """``x = (1,a,0,0)``, ``y = (0,b,0,1)``, ``z = (0,a,1,0)`` for a complementary pair ``a, b``."""
    a, b = complementary_pair(B, a)
    return (1, a, 0, 0), (0, b, 0, 1), (0, a, 1, 0)


NONDISTRIBUTIVE_IDEAL_TOPS = ((1, "1", 1, 0), (0, "1", 1, 1), (1, "1", 1, 1))


def principal_ideal_distributivity_profile(D: Lattice | KD) -> set[Quad]:
    """Quadruples ``a`` of ``K(D)`` whose principal ideal is not distributive."""
    K = D if isinstance(D, KD) else build_KD(D)
    L = K.lattice
    out = set()
    for i, q in enumerate(K.coords):
        ideal = restrict(L, [x for x in range(L.n) if L.le(x, i)])
        if not is_distributive(ideal):
            out.add(q)
    return out


def allowed_nondistributive_tops(D: Lattice) -> set[Quad]:
    return {(a, D.top, b, c) for a, _, b, c in NONDISTRIBUTIVE_IDEAL_TOPS}
