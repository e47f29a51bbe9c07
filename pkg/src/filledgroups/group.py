"""Finite groups as validated Cayley tables.

A group of order ``n`` is stored as an ``n x n`` table whose entry ``[i][j]``
is the index of the product ``e_i * e_j``. Everything else (identity,
inverses, element orders) is derived from the table once, at construction.

Built-in constructors put the identity at index 0. Tables read from disk may
place it anywhere; it is detected.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import IO, Callable, Iterable, Sequence

import numpy as np

from .elementset import ElementSet
from .errors import (
    AssociativityError,
    CapacityError,
    EntryRangeError,
    InvalidArgument,
    InvalidParameter,
    LatinSquareError,
    NoIdentityError,
    PermutationParseError,
    ShapeError,
    TokenError,
)

MAX_ORDER = 4096
# Associativity is O(n^3); above this order it only runs when asked for.
ASSOC_CHECK_LIMIT = 256
# XOR tables fit comfortably; 2**12 == MAX_ORDER.
MAX_ELEM_ABELIAN_RANK = 12

Permutation = tuple[int, ...]


@dataclass(frozen=True)
class FamilyTag:
    """Advisory label set by a constructor; never inferred from structure.

    ``param`` follows the family's usual subscript: the group order for
    cyclic, dihedral and dicyclic groups, the rank ``k`` for ``2^k`` and the
    prime ``p`` for ``C_p x| C_4``.
    """

    kind: str
    param: int = 0
    parts: tuple["FamilyTag", ...] = ()

    CYCLIC = "Cyclic"
    DIHEDRAL = "Dihedral"
    DICYCLIC = "Dicyclic"
    ELEM_ABELIAN_2 = "ElemAbelian2"
    SEMIDIRECT_CP_C4 = "SemidirectCpC4"
    PRODUCT = "Product"
    UNTAGGED = "Untagged"

    def __str__(self) -> str:
        if self.kind == self.PRODUCT:
            return "Product(" + ", ".join(str(p) for p in self.parts) + ")"
        if self.kind == self.UNTAGGED:
            return self.kind
        return f"{self.kind}({self.param})"

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind == self.PRODUCT:
            out["parts"] = [p.to_json() for p in self.parts]
        elif self.kind != self.UNTAGGED:
            out["param"] = self.param
        return out


UNTAGGED = FamilyTag(FamilyTag.UNTAGGED)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """An immutable finite group given by its Cayley table.

    Use :meth:`from_table` (or one of the ``make_*`` constructors) rather than
    calling this directly; it validates the table and derives the rest.
    """

    table: np.ndarray
    identity: int
    inverses: tuple[int, ...]
    elem_orders: tuple[int, ...]
    family_tag: FamilyTag = UNTAGGED
    elem_names: tuple[str, ...] = field(default=())

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, tag={self.family_tag})"

    @cached_property
    def rows(self) -> list[list[int]]:
        """The table as nested Python lists; scalar lookups are much cheaper
        here than on the numpy array."""
        return self.table.tolist()

    def mul(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def inv(self, i: int) -> int:
        return self.inverses[i]

    def power(self, i: int, m: int) -> int:
        if m < 0:
            i, m = self.inverses[i], -m
        result = self.identity
        row = self.rows
        for _ in range(m):
            result = row[result][i]
        return result

    def name(self, i: int) -> str:
        return self.elem_names[i]

    @property
    def nonidentity(self) -> list[int]:
        return [i for i in range(self.order) if i != self.identity]

    @property
    def is_tagged(self) -> bool:
        return self.family_tag.kind != FamilyTag.UNTAGGED

    def same_table(self, other: FiniteGroup) -> bool:
        return self.table.shape == other.table.shape and bool(np.array_equal(self.table, other.table))

    @classmethod
    def from_table(
        cls,
        table: Sequence[Sequence[int]] | np.ndarray,
        *,
        family_tag: FamilyTag = UNTAGGED,
        elem_names: Sequence[str] | None = None,
        check_associativity: bool | None = None,
    ) -> FiniteGroup:
        arr = np.array(table, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ShapeError(f"table must be a non-empty square array, got shape {arr.shape}")
        n = arr.shape[0]
        if n > MAX_ORDER:
            raise CapacityError(f"order {n} exceeds the supported bound {MAX_ORDER}")
        _check_range(arr)
        _check_latin(arr)
        identity = _find_identity(arr)
        if check_associativity is None:
            check_associativity = n <= ASSOC_CHECK_LIMIT
        if check_associativity:
            _check_associative(arr)

        arr = arr.astype(np.int32)
        arr.flags.writeable = False
        rows = arr.tolist()
        inverses = tuple(row.index(identity) for row in rows)
        orders = []
        for i in range(n):
            m, x = 1, i
            while x != identity:
                x = rows[x][i]
                m += 1
            orders.append(m)
        if elem_names is None:
            elem_names = [str(i) for i in range(n)]
        elif len(elem_names) != n:
            raise InvalidArgument(f"expected {n} element names, got {len(elem_names)}")
        return cls(arr, identity, inverses, tuple(orders), family_tag, tuple(elem_names))


# -- validation --------------------------------------------------------------


def _check_range(arr: np.ndarray) -> None:
    n = arr.shape[0]
    out_of_range = (arr < 0) | (arr >= n)
    if out_of_range.any():
        i, j = (int(v) for v in np.argwhere(out_of_range)[0])
        raise EntryRangeError(f"entry {int(arr[i, j])} outside [0, {n})", (i, j))


def _first_duplicate(line: np.ndarray) -> int | None:
    seen = set()
    for pos, v in enumerate(line.tolist()):
        if v in seen:
            return pos
        seen.add(v)
    return None


def _check_latin(arr: np.ndarray) -> None:
    n = arr.shape[0]
    target = np.arange(n)
    rows_ok = (np.sort(arr, axis=1) == target).all(axis=1)
    cols_ok = (np.sort(arr, axis=0) == target[:, None]).all(axis=0)
    if rows_ok.all() and cols_ok.all():
        return
    # report whichever offending cell comes first in row-major order
    candidates = []
    for i in np.flatnonzero(~rows_ok):
        candidates.append((int(i), _first_duplicate(arr[i])))
    for j in np.flatnonzero(~cols_ok):
        candidates.append((_first_duplicate(arr[:, j]), int(j)))
    cell = min(candidates)
    raise LatinSquareError(f"duplicate entry {int(arr[cell])} (not a Latin square)", cell)


def _find_identity(arr: np.ndarray) -> int:
    n = arr.shape[0]
    target = np.arange(n)
    for e in range(n):
        if np.array_equal(arr[e], target) and np.array_equal(arr[:, e], target):
            return e
    raise NoIdentityError("no element acts as a two-sided identity")


def _check_associative(arr: np.ndarray) -> None:
    n = arr.shape[0]
    # chunk over i to bound memory: lhs[i,j,k] = (ij)k, rhs[i,j,k] = i(jk)
    step = max(1, (1 << 22) // (n * n))
    for start in range(0, n, step):
        block = arr[start:start + step]
        lhs = arr[block]
        rhs = block[:, arr]
        diff = np.argwhere(lhs != rhs)
        if len(diff):
            i, j, k = (int(v) for v in diff[0])
            i += start
            raise AssociativityError(f"({i}*{j})*{k} != {i}*({j}*{k})", (i, j))


# -- named families ----------------------------------------------------------


def _power_name(sym: str, e: int) -> str:
    if e == 0:
        return "1"
    return sym if e == 1 else f"{sym}^{e}"


def _word(*parts: str) -> str:
    parts = tuple(p for p in parts if p != "1")
    return "*".join(parts) if parts else "1"


def _from_rule(
    n: int, rule: Callable[[np.ndarray, np.ndarray], np.ndarray], tag: FamilyTag, names: Sequence[str]
) -> FiniteGroup:
    """Build the table by applying ``rule`` to whole index grids at once."""
    if n > MAX_ORDER:
        raise CapacityError(f"order {n} exceeds the supported bound {MAX_ORDER}")
    i, j = np.indices((n, n), dtype=np.int64)
    return FiniteGroup.from_table(rule(i, j), family_tag=tag, elem_names=names)


def make_cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidParameter(f"cyclic group order must be >= 1, got {n}")
    names = [_power_name("x", i) for i in range(n)]
    return _from_rule(n, lambda i, j: (i + j) % n, FamilyTag(FamilyTag.CYCLIC, n), names)


def make_dihedral(two_n: int) -> FiniteGroup:
    """Dihedral group of order ``two_n`` = 2n.

    Index ``i < n`` is the rotation ``x^i``; index ``n + i`` is the reflection
    ``x^i*y``. Products follow ``y x = x^-1 y``.
    """
    if two_n % 2 or two_n < 6:
        raise InvalidParameter(f"dihedral order must be even and >= 6, got {two_n}")
    n = two_n // 2

    def rule(i, j):
        a, r = i % n, i // n
        b, s = j % n, j // n
        # x^a y^r * x^b y^s = x^(a + (-1)^r b) y^(r+s)
        return np.where(r == 1, a - b, a + b) % n + n * ((r + s) % 2)

    names = [_power_name("x", i) for i in range(n)] + [_word(_power_name("x", i), "y") for i in range(n)]
    return _from_rule(two_n, rule, FamilyTag(FamilyTag.DIHEDRAL, two_n), names)


def make_dicyclic(four_n: int) -> FiniteGroup:
    """Dicyclic (generalized quaternion) group of order 4n:
    ``<x, y | x^(2n) = 1, y^2 = x^n, x y = y x^-1>``.

    Index ``i < 2n`` is ``x^i``; index ``2n + i`` is ``x^i*y``.
    """
    if four_n % 4 or four_n < 8:
        raise InvalidParameter(f"dicyclic order must be a multiple of 4 and >= 8, got {four_n}")
    m = four_n // 2
    half = four_n // 4

    def rule(i, j):
        a, r = i % m, i // m
        b, s = j % m, j // m
        rot_first = (a + b) % m + m * s
        # x^a y x^b = x^(a-b) y;  x^a y x^b y = x^(a-b) y^2 = x^(a-b+n)
        refl_rot = (a - b) % m + m
        refl_refl = (a - b + half) % m
        return np.where(r == 0, rot_first, np.where(s == 0, refl_rot, refl_refl))

    names = [_power_name("x", i) for i in range(m)] + [_word(_power_name("x", i), "y") for i in range(m)]
    return _from_rule(four_n, rule, FamilyTag(FamilyTag.DICYCLIC, four_n), names)


def make_elementary_abelian_2(k: int) -> FiniteGroup:
    """``(C_2)^k`` with XOR as the operation; ``k`` may be at most 12."""
    if k < 0 or k > MAX_ELEM_ABELIAN_RANK:
        raise InvalidParameter(f"rank must be in [0, {MAX_ELEM_ABELIAN_RANK}], got {k}")
    n = 1 << k
    names = ["1"] + [_word(*(f"e{b}" for b in range(k) if i >> b & 1)) for i in range(1, n)]
    return _from_rule(n, lambda i, j: i ^ j, FamilyTag(FamilyTag.ELEM_ABELIAN_2, k), names)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def order4_multiplier(p: int) -> int:
    """Least ``r`` with ``r^2 = -1 (mod p)``: an automorphism of ``C_p`` of order 4.

    For p = 5 this is 2 = (p - 1)/2. For larger p the value ``(p - 1)/2`` does
    not have order 4 modulo p, so it cannot define an action of ``C_4``.
    """
    for r in range(2, p):
        if r * r % p == p - 1:
            return r
    raise InvalidParameter(f"-1 is not a square modulo {p}")


def make_semidirect_cp_c4(p: int) -> FiniteGroup:
    """``C_p x| C_4`` with ``b a b^-1 = a^r`` where ``r`` has order 4 mod p.

    Needs p prime with p = 1 (mod 4). Index ``i + p*j`` is ``a^i b^j``.
    """
    if not _is_prime(p) or p % 4 != 1:
        raise InvalidParameter(f"p must be a prime congruent to 1 mod 4, got {p}")
    r = order4_multiplier(p)
    twist = np.array([pow(r, j, p) for j in range(4)])

    def rule(i, j):
        a1, b1 = i % p, i // p
        a2, b2 = j % p, j // p
        return (a1 + twist[b1] * a2) % p + p * ((b1 + b2) % 4)

    names = [_word(_power_name("a", i % p), _power_name("b", i // p)) for i in range(4 * p)]
    return _from_rule(4 * p, rule, FamilyTag(FamilyTag.SEMIDIRECT_CP_C4, p), names)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """``g x h`` on pairs; pair ``(i, j)`` gets index ``i * |h| + j``."""
    m = h.order
    n = g.order * m
    if n > MAX_ORDER:
        raise CapacityError(f"product order {n} exceeds the supported bound {MAX_ORDER}")
    gt = g.table.astype(np.int64)
    ht = h.table.astype(np.int64)
    table = (gt[:, None, :, None] * m + ht[None, :, None, :]).reshape(n, n)
    names = [f"({a},{b})" for a in g.elem_names for b in h.elem_names]
    tag = FamilyTag(FamilyTag.PRODUCT, parts=(g.family_tag, h.family_tag))
    return FiniteGroup.from_table(table, family_tag=tag, elem_names=names)


# -- permutations ------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\(|\)|\d+|\S)")


def parse_permutation_cycles(text: str, degree: int) -> Permutation:
    """Parse disjoint-cycle notation such as ``"(1 2 3)(4 5)"``.

    Points are 1-based in the text; the result is a 0-based image tuple.
    Commas between points are accepted as separators.
    """
    if degree < 1:
        raise InvalidParameter(f"degree must be positive, got {degree}")
    image = list(range(degree))
    seen: set[int] = set()
    cycle: list[int] | None = None
    pos = 0
    text_len = len(text)
    while pos < text_len:
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        tok, start = m.group(1), m.start(1)
        pos = m.end()
        if tok == "(":
            if cycle is not None:
                raise PermutationParseError("nested '('", start)
            cycle = []
        elif tok == ")":
            if cycle is None:
                raise PermutationParseError("unmatched ')'", start)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                image[a] = b
            cycle = None
        elif tok.isdigit():
            if cycle is None:
                raise PermutationParseError(f"point {tok} outside a cycle", start)
            point = int(tok)
            if not 1 <= point <= degree:
                raise PermutationParseError(f"point {point} out of range 1..{degree}", start)
            if point - 1 in seen:
                raise PermutationParseError(f"repeated point {point}", start)
            seen.add(point - 1)
            cycle.append(point - 1)
        elif tok == "," and cycle is not None:
            continue
        else:
            raise PermutationParseError(f"unexpected character {tok!r}", start)
    if cycle is not None:
        raise PermutationParseError("unclosed '('", text_len)
    return tuple(image)


def format_permutation_cycles(perm: Sequence[int]) -> str:
    """Inverse of :func:`parse_permutation_cycles`; the identity prints as ``()``."""
    done = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if done[start] or perm[start] == start:
            continue
        cyc = []
        p = start
        while not done[p]:
            done[p] = True
            cyc.append(str(p + 1))
            p = perm[p]
        out.append("(" + " ".join(cyc) + ")")
    return "".join(out) or "()"


def make_from_permutations(
    generators: Iterable[Sequence[int]], degree: int | None = None
) -> FiniteGroup:
    """Close a list of 0-based permutations under composition.

    Products read left to right: ``p*q`` applies ``p`` first. Elements are
    numbered in breadth-first discovery order from the identity, multiplying
    on the right by the generators in the order given.
    """
    gens = [tuple(g) for g in generators]
    if degree is None:
        degree = len(gens[0]) if gens else 1
    for g in gens:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise InvalidParameter(f"not a permutation of degree {degree}: {g}")

    def compose(p: Permutation, q: Permutation) -> Permutation:
        return tuple(q[x] for x in p)

    ident = tuple(range(degree))
    index = {ident: 0}
    elems = [ident]
    queue = deque([ident])
    while queue:
        e = queue.popleft()
        for g in gens:
            f = compose(e, g)
            if f not in index:
                if len(elems) >= MAX_ORDER:
                    raise CapacityError(f"closure exceeds the supported bound {MAX_ORDER}")
                index[f] = len(elems)
                elems.append(f)
                queue.append(f)
    table = [[index[compose(p, q)] for q in elems] for p in elems]
    names = [format_permutation_cycles(p) for p in elems]
    return FiniteGroup.from_table(table, elem_names=names)


def regular_permutations(g: FiniteGroup, elements: Iterable[int]) -> list[Permutation]:
    """Right-regular representation: element ``a`` acts by ``x -> x*a``."""
    return [tuple(int(v) for v in g.table[:, a]) for a in elements]


# -- Cayley table files ------------------------------------------------------


def load_cayley_table(source: IO[str] | IO[bytes] | str | bytes) -> FiniteGroup:
    """Read the whitespace-separated table format written by :func:`dump_cayley_table`."""
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    lines = [
        (no, line.strip())
        for no, line in enumerate(source.splitlines(), 1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise ShapeError("no table found")

    def ints(no: int, line: str, row: int) -> list[int]:
        out = []
        for col, tok in enumerate(line.split()):
            try:
                out.append(int(tok))
            except ValueError:
                raise TokenError(f"bad token {tok!r} on line {no}", (row, col)) from None
        return out

    header = ints(lines[0][0], lines[0][1], -1)
    if len(header) != 1 or header[0] < 1:
        raise ShapeError(f"first line must be a single positive order, got {lines[0][1]!r}")
    n = header[0]
    if n > MAX_ORDER:
        raise CapacityError(f"order {n} exceeds the supported bound {MAX_ORDER}")
    body = lines[1:]
    if len(body) != n:
        raise ShapeError(f"expected {n} table rows, found {len(body)}")
    table = []
    for row, (no, line) in enumerate(body):
        vals = ints(no, line, row)
        if len(vals) != n:
            raise ShapeError(f"row {row} has {len(vals)} entries, expected {n}", (row, min(len(vals), n)))
        table.append(vals)
    return FiniteGroup.from_table(table)


def dump_cayley_table(g: FiniteGroup, comment: str | None = None) -> str:
    width = len(str(g.order - 1))
    out = [f"# generated-by filledgroups; {comment or g.family_tag}", str(g.order)]
    out.extend(" ".join(str(v).rjust(width) for v in row) for row in g.rows)
    return "\n".join(out) + "\n"


# -- queries -----------------------------------------------------------------


def _check_index(g: FiniteGroup, i: int) -> None:
    if not 0 <= i < g.order:
        raise InvalidArgument(f"element index {i} out of range for order {g.order}")


def element_order(g: FiniteGroup, i: int) -> int:
    _check_index(g, i)
    return g.elem_orders[i]


def is_abelian(g: FiniteGroup) -> bool:
    return bool(np.array_equal(g.table, g.table.T))


def conjugacy_classes(g: FiniteGroup) -> list[list[int]]:
    rows, inv = g.rows, g.inverses
    seen = [False] * g.order
    classes = []
    for a in range(g.order):
        if seen[a]:
            continue
        cls = sorted({rows[rows[inv[h]][a]][h] for h in range(g.order)})
        for c in cls:
            seen[c] = True
        classes.append(cls)
    return classes


def center(g: FiniteGroup) -> ElementSet:
    t = g.table
    return ElementSet.of(g.order, (int(i) for i in np.flatnonzero((t == t.T).all(axis=1))))
