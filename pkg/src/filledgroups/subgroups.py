"""Generated subgroups, normal subgroups and quotient groups."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .elementset import ElementSet, iter_bits
from .errors import InvalidArgument
from .group import FiniteGroup, conjugacy_classes

# Homomorphism checks are exhaustive up to this order, sampled above it.
EXHAUSTIVE_HOM_CHECK = 64


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    elements: ElementSet
    normal: bool

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def __contains__(self, i: int) -> bool:
        return i in self.elements

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, normal={self.normal}, elements={self.elements.to_list()})"


def _closure_bits(g: FiniteGroup, bits: int) -> int:
    """Mask of the subgroup generated by the elements of ``bits``.

    In a finite group, closing under multiplication by generators suffices.
    """
    rows = g.rows
    gens = list(iter_bits(bits))
    found = 1 << g.identity
    frontier = [g.identity]
    while frontier:
        nxt = []
        for a in frontier:
            row = rows[a]
            for s in gens:
                c = row[s]
                if not found >> c & 1:
                    found |= 1 << c
                    nxt.append(c)
        frontier = nxt
    return found


def _is_normal_bits(g: FiniteGroup, bits: int) -> bool:
    rows, inv = g.rows, g.inverses
    members = list(iter_bits(bits))
    for h in range(g.order):
        hi = inv[h]
        for a in members:
            if not bits >> rows[rows[hi][a]][h] & 1:
                return False
    return True


def _make(g: FiniteGroup, bits: int, normal: bool | None = None) -> Subgroup:
    if normal is None:
        normal = _is_normal_bits(g, bits)
    elements = ElementSet(g.order, bits)
    if g.order % len(elements):
        raise AssertionError(f"subgroup of size {len(elements)} in group of order {g.order}")
    return Subgroup(g, elements, normal)


def generated_subgroup(g: FiniteGroup, gens: ElementSet) -> Subgroup:
    if gens.n != g.order:
        raise InvalidArgument("generators belong to a group of a different order")
    return _make(g, _closure_bits(g, gens.bits))


def is_subgroup(g: FiniteGroup, s: ElementSet) -> bool:
    return bool(s) and _closure_bits(g, s.bits) == s.bits


def normal_subgroups(g: FiniteGroup) -> list[Subgroup]:
    """Every normal subgroup, trivial and whole group included.

    Each normal subgroup is the join of the normal closures of the conjugacy
    classes it contains, so closing the set of class closures under joins
    finds them all. Sorted by size, then by sorted element list.
    """
    class_closures = set()
    for cls in conjugacy_classes(g):
        bits = 0
        for c in cls:
            bits |= 1 << c
        class_closures.add(_closure_bits(g, bits))
    found = {1 << g.identity}
    frontier = list(found)
    while frontier:
        nxt = []
        for n_bits in frontier:
            for c_bits in class_closures:
                if c_bits & ~n_bits:
                    joined = _closure_bits(g, n_bits | c_bits)
                    if joined not in found:
                        found.add(joined)
                        nxt.append(joined)
        frontier = nxt
    subs = [_make(g, bits, normal=True) for bits in found]
    subs.sort(key=lambda s: (s.order, s.elements.to_list()))
    return subs


def quotient(g: FiniteGroup, n: Subgroup, *, seed: int = 0) -> tuple[FiniteGroup, list[int]]:
    """``g / n`` together with the projection ``element -> coset index``.

    Cosets are numbered by their least member, in increasing order.
    """
    if not n.normal:
        raise InvalidArgument("quotient needs a normal subgroup")
    if n.parent is not g and not n.parent.same_table(g):
        raise InvalidArgument("subgroup belongs to a different group")
    rows = g.rows
    members = n.elements.to_list()
    projection = [-1] * g.order
    reps = []
    for a in range(g.order):
        if projection[a] >= 0:
            continue
        idx = len(reps)
        reps.append(a)
        for m in members:
            projection[rows[a][m]] = idx
    table = [[projection[rows[a][b]] for b in reps] for a in reps]
    names = [g.elem_names[a] if n.order == 1 else f"{g.elem_names[a]}N" for a in reps]
    q = FiniteGroup.from_table(table, elem_names=names)
    _check_homomorphism(g, q, projection, seed)
    return q, projection


def _check_homomorphism(g: FiniteGroup, q: FiniteGroup, proj: list[int], seed: int) -> None:
    rows, qrows = g.rows, q.rows
    if g.order <= EXHAUSTIVE_HOM_CHECK:
        pairs = ((a, b) for a in range(g.order) for b in range(g.order))
    else:
        rng = random.Random(seed)
        pairs = ((rng.randrange(g.order), rng.randrange(g.order)) for _ in range(4096))
    for a, b in pairs:
        if proj[rows[a][b]] != qrows[proj[a]][proj[b]]:
            raise AssertionError(f"projection is not a homomorphism at ({a}, {b})")
