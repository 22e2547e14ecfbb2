"""Join-covers: classification, enumeration and refinement.

A finite set ``E`` covers ``p`` when ``p <= join(E)``.  Covers are graded
(each class contained in the previous one)::

    cover > irredundant > tight > minimal

``irredundant``: no member can be dropped.  ``tight``: no member can be
replaced by a strictly smaller element.  ``minimal``: every cover refining
``E`` contains ``E``.  In a finite lattice a tight cover made of
join-irreducibles is minimal, and every minimal cover is of that form, which
is what :func:`classify_cover` uses.  :func:`is_minimal_by_definition` keeps
the literal definition around for cross-checking.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import Lattice, antichains, bits, check_size, down_mask, mask_of
from .errors import NotACover, NotJoinIrreducible, SizeGuard

KINDS = ("cover", "irredundant", "tight", "minimal")


@dataclass(frozen=True)
class Cover:
    target: int
    members: frozenset[int]
    kind: str
    exact: bool  # join of members equals the target

    def at_least(self, kind: str) -> bool:
        return KINDS.index(self.kind) >= KINDS.index(kind)

    def format(self, L: Lattice) -> str:
        return f"{L.label(self.target)} <= {L.format_set(self.members)} [{self.kind}]"


def refines(L: Lattice, X: Iterable[int], Y: Iterable[int]) -> bool:
    """``X <=ref Y``: every member of ``X`` lies below some member of ``Y``."""
    return mask_of(X) & ~down_mask(L, mask_of(Y)) == 0


def refines_mask(L: Lattice, xm: int, ym: int) -> bool:
    return xm & ~down_mask(L, ym) == 0


def covers(L: Lattice, p: int, E: Iterable[int]) -> bool:
    return L.le(p, L.join_mask(mask_of(E)))


def _irredundant(L: Lattice, p: int, m: int) -> bool:
    for u in bits(m):
        if L.le(p, L.join_mask(m & ~(1 << u))):
            return False
    return True


def _tight(L: Lattice, p: int, m: int) -> bool:
    # checking lower covers of u suffices: any x < u lies below one of them
    if m >> L.bottom & 1:
        return False
    for u in bits(m):
        rest = L.join_mask(m & ~(1 << u))
        for x in L.lower_covers(u):
            if L.le(p, L.join(x, rest)):
                return False
    return True


def kind_of(L: Lattice, p: int, m: int) -> str | None:
    """Strongest class of the mask ``m`` as a cover of ``p`` (``None`` if not a cover)."""
    if not L.le(p, L.join_mask(m)):
        return None
    if not _irredundant(L, p, m):
        return "cover"
    if not _tight(L, p, m):
        return "irredundant"
    if m & ~L.ji_mask:
        return "tight"
    return "minimal"


def classify_cover(L: Lattice, p: int, E: Iterable[int]) -> Cover:
    m = mask_of(E)
    kind = kind_of(L, p, m)
    if kind is None:
        raise NotACover(L.label(p), [L.label(x) for x in bits(m)])
    return Cover(p, frozenset(bits(m)), kind, L.join_mask(m) == p)


def is_minimal_by_definition(L: Lattice, p: int, E: Iterable[int], limit: int = 22) -> bool:
    """Literal minimality test: every finite ``X <=ref E`` covering ``p`` contains ``E``.

    Only subsets of the down-set of ``E`` can refine ``E``, so those are all
    enumerated (``2**|down(E)|`` of them).
    """
    m = mask_of(E)
    if not L.le(p, L.join_mask(m)):
        return False
    dm = down_mask(L, m)
    if dm.bit_count() > limit:
        raise SizeGuard(f"definitional minimality test over {dm.bit_count()} elements")
    sub = dm
    while True:
        if sub & m != m and L.le(p, L.join_mask(sub)):
            return False
        if sub == 0:
            return True
        sub = (sub - 1) & dm


def _sorted(masks) -> list[frozenset[int]]:
    out = [frozenset(bits(m)) for m in masks]
    out.sort(key=lambda s: (len(s), sorted(s)))
    return out


def cover_masks(L: Lattice, p: int, kind: str, exact: bool = False, within: int | None = None,
                max_size: int | None = None):
    """Masks of all covers of ``p`` of at least the given class, among antichains.

    Irredundant (hence tight and minimal) covers are always antichains, so the
    scan is complete for those classes; for ``kind='cover'`` only antichain
    covers are produced.
    """
    check_size(L, max_size, "cover enumeration")
    if within is None:
        within = ((1 << L.n) - 1) & ~(1 << L.bottom)
    if kind == "minimal":
        within &= L.ji_mask
    need = KINDS.index(kind)
    for a in antichains(L, within):
        k = kind_of(L, p, a)
        if k is None or KINDS.index(k) < need:
            continue
        if exact and L.join_mask(a) != p:
            continue
        yield a


def irredundant_covers(L: Lattice, p: int, **kw) -> list[frozenset[int]]:
    return _sorted(cover_masks(L, p, "irredundant", **kw))


def tight_covers(L: Lattice, p: int, **kw) -> list[frozenset[int]]:
    return _sorted(cover_masks(L, p, "tight", **kw))


def minimal_join_covers(L: Lattice, p: int, **kw) -> list[frozenset[int]]:
    return _sorted(cover_masks(L, p, "minimal", **kw))


def minimal_join_representations(L: Lattice, p: int, **kw) -> list[frozenset[int]]:
    return _sorted(cover_masks(L, p, "minimal", exact=True, **kw))


def max_irredundant_cover_size(L: Lattice, p: int, max_size: int | None = None) -> int:
    return max((a.bit_count() for a in cover_masks(L, p, "irredundant", max_size=max_size)),
               default=0)


def _tighten(L: Lattice, p: int, m: int) -> int:
    m &= ~(1 << L.bottom)
    changed = True
    while changed:
        changed = False
        for u in bits(m):
            rest_mask = m & ~(1 << u)
            rest = L.join_mask(rest_mask)
            for x in L.lower_covers(u):
                if L.le(p, L.join(x, rest)):
                    m = rest_mask if x == L.bottom else rest_mask | (1 << x)
                    changed = True
                    break
            if changed:
                break
    return m


def refine_to_tight(L: Lattice, p: int, E: Iterable[int]) -> frozenset[int]:
    """Shrink a cover of ``p`` into a tight cover refining it.

    Repeatedly replaces the lowest-index member ``u`` that admits it by its
    lowest-index lower cover ``x`` still keeping ``p`` covered (``x = 0`` means
    ``u`` is dropped), until no such move exists.
    """
    m = mask_of(E)
    if not L.le(p, L.join_mask(m)):
        raise NotACover(L.label(p), [L.label(x) for x in bits(m)])
    return frozenset(bits(_tighten(L, p, m)))


def refine_to_minimal(L: Lattice, p: int, E: Iterable[int]) -> frozenset[int]:
    """Refine a cover of ``p`` to a minimal cover of ``p``.

    Tighten; while some member ``q`` is join-reducible, replace it by the
    lowest-index pair of strictly smaller elements joining to ``q`` and tighten
    again.  Each round gives a strictly finer tight cover, so this terminates.
    """
    m = mask_of(E)
    if not L.le(p, L.join_mask(m)):
        raise NotACover(L.label(p), [L.label(x) for x in bits(m)])
    m = _tighten(L, p, m)
    seen = {m}
    while m & ~L.ji_mask:
        q = next(bits(m & ~L.ji_mask))
        below = [x for x in bits(L.down[q]) if x != q]
        x, y = next((x, y) for i, x in enumerate(below) for y in below[i + 1:] if L.join(x, y) == q)
        m = _tighten(L, p, (m & ~(1 << q)) | (1 << x) | (1 << y))
        if m in seen:
            raise RuntimeError("refinement revisited a cover; refinement order is not antisymmetric here")
        seen.add(m)
    return frozenset(bits(m))


def collinear(L: Lattice, p: int, q: int, r: int) -> bool:
    """``p, q, r`` pairwise incomparable with ``p|q == p|r == q|r``."""
    for x in (p, q, r):
        if x not in L.join_irreducibles:
            raise NotJoinIrreducible(L.label(x))
    for x, y in ((p, q), (p, r), (q, r)):
        if L.le(x, y) or L.le(y, x):
            return False
    return L.join(p, q) == L.join(p, r) == L.join(q, r)
