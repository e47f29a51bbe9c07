"""Product sets and the product-free / locally maximal / fills predicates.

All sets are :class:`ElementSet` values of one group. The predicates reject
the empty set: product-freeness is only defined for non-empty subsets.
"""

from __future__ import annotations

import re
from typing import Iterable

from .elementset import ElementSet, iter_bits
from .errors import InvalidArgument
from .group import FamilyTag, FiniteGroup


def _check(g: FiniteGroup, *sets: ElementSet) -> None:
    for s in sets:
        if not isinstance(s, ElementSet) or s.n != g.order:
            raise InvalidArgument(f"element set does not belong to a group of order {g.order}")


def _nonempty(s: ElementSet) -> None:
    if not s.bits:
        raise InvalidArgument("set must be non-empty")


def element_set(g: FiniteGroup, elements: Iterable[int]) -> ElementSet:
    return ElementSet.of(g.order, elements)


def product_set(g: FiniteGroup, a: ElementSet, b: ElementSet) -> ElementSet:
    """``{x*y : x in a, y in b}``."""
    _check(g, a, b)
    rows = g.rows
    right = list(b)
    bits = 0
    for x in a:
        row = rows[x]
        for y in right:
            bits |= 1 << row[y]
    return ElementSet(g.order, bits)


def inverse_set(g: FiniteGroup, a: ElementSet) -> ElementSet:
    _check(g, a)
    inv = g.inverses
    bits = 0
    for x in a:
        bits |= 1 << inv[x]
    return ElementSet(g.order, bits)


def t_closure(g: FiniteGroup, s: ElementSet) -> ElementSet:
    """``S u SS u SS^-1 u S^-1 S``."""
    s_inv = inverse_set(g, s)
    return s | product_set(g, s, s) | product_set(g, s, s_inv) | product_set(g, s_inv, s)


def sqrt_set(g: FiniteGroup, s: ElementSet) -> ElementSet:
    """Elements whose square lies in ``s``."""
    _check(g, s)
    rows = g.rows
    bits = s.bits
    return ElementSet(g.order, sum(1 << x for x in range(g.order) if bits >> rows[x][x] & 1))


def is_product_free(g: FiniteGroup, s: ElementSet) -> bool:
    _check(g, s)
    _nonempty(s)
    free = not (s & product_set(g, s, s))
    assert not (free and g.identity in s), "product-free set contains the identity"
    return free


def is_locally_maximal_pf(g: FiniteGroup, s: ElementSet) -> bool:
    """Whether the product-free set ``s`` is locally maximal, tested as
    ``T(s) u sqrt(s) == G`` rather than by trying every extension."""
    if not is_product_free(g, s):
        raise InvalidArgument("set is not product-free")
    return (t_closure(g, s) | sqrt_set(g, s)).bits == (1 << g.order) - 1


def uncovered(g: FiniteGroup, s: ElementSet) -> ElementSet:
    """Non-identity elements outside ``s u ss``."""
    _check(g, s)
    covered = s | product_set(g, s, s)
    return covered.complement_star(g.identity)


def fills(g: FiniteGroup, s: ElementSet) -> bool:
    return not uncovered(g, s)


def dihedral_decompose(g: FiniteGroup, s: ElementSet) -> tuple[ElementSet, ElementSet]:
    """Split ``s`` into its rotations and reflections.

    Relies on the dihedral index layout: rotations occupy the low half.
    """
    if g.family_tag.kind != FamilyTag.DIHEDRAL:
        raise InvalidArgument(f"needs a dihedral-tagged group, got {g.family_tag}")
    _check(g, s)
    half = g.order // 2
    low = (1 << half) - 1
    return ElementSet(g.order, s.bits & low), ElementSet(g.order, s.bits & ~low)


def extend_to_locally_maximal(g: FiniteGroup, s: ElementSet) -> ElementSet:
    """Greedily add the least element that keeps ``s`` product-free."""
    if not is_product_free(g, s):
        raise InvalidArgument("set is not product-free")
    current = s
    while True:
        for x in iter_bits(current.complement().bits):
            bigger = current.with_element(x)
            if is_product_free(g, bigger):
                current = bigger
                break
        else:
            return current


_SYMBOL = re.compile(r"^(?:x(?:\^(-?\d+))?)?(?:\*?(y))?$")


def parse_set_literal(g: FiniteGroup, text: str) -> ElementSet:
    """Parse ``"2,5,8"`` or, in dihedral and dicyclic groups, ``"x^2,x^5*y,y"``."""
    elems = []
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        if tok.lstrip("-").isdigit():
            elems.append(int(tok))
            continue
        elems.append(_parse_symbol(g, tok))
    return ElementSet.of(g.order, elems)


def _parse_symbol(g: FiniteGroup, tok: str) -> int:
    kind = g.family_tag.kind
    m = _SYMBOL.match(tok.replace(" ", ""))
    if kind not in (FamilyTag.DIHEDRAL, FamilyTag.DICYCLIC, FamilyTag.CYCLIC) or m is None:
        try:
            return g.elem_names.index(tok)
        except ValueError:
            raise InvalidArgument(f"cannot parse element {tok!r}") from None
    exp = int(m.group(1)) if m.group(1) is not None else (1 if tok.startswith("x") else 0)
    if kind == FamilyTag.CYCLIC:
        if m.group(2):
            raise InvalidArgument(f"cyclic groups have no element {tok!r}")
        return exp % g.order
    rot = g.order // 2
    return exp % rot + (rot if m.group(2) else 0)


def format_set(g: FiniteGroup, s: ElementSet, symbolic: bool | None = None) -> list[str]:
    """Element names for tagged groups, bare indices otherwise."""
    if symbolic is None:
        symbolic = g.is_tagged
    return [g.elem_names[i] if symbolic else str(i) for i in s]
