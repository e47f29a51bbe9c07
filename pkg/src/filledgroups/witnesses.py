"""Explicit non-filling sets in dihedral groups, and their certificates.

For odd ``n >= 13`` there is an odd ``k`` with ``n`` equal to one of
``5k-6, 5k-4, 5k-2, 5k, 5k+2``; the residue of ``n`` mod 10 picks which.
Each case comes with a set made of an arithmetic run of even-step rotations
and an initial run of reflections. The sets are built here but never
trusted: :func:`verify_witness` recomputes every property.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .elementset import ElementSet
from .errors import InvalidParameter
from .group import FiniteGroup, make_dihedral
from .pfs import format_set, is_locally_maximal_pf, is_product_free, uncovered

D44_INDICES = (2, 5, 8, 18, 21, 27, 38)

# The run-shaped 5k+2 set is not locally maximal when k = 3 (n = 17): x^16
# can be added. This replacement leaves x^(3k) = x^9 uncovered like the others.
N17_WITNESS = {
    "rotations": (1, 3, 11, 16),
    "reflections": (0, 2, 7, 12),
}

# n mod 10 -> (case label, k from n, least k allowed)
_CASES = {
    3: ("5k-2", lambda n: (n + 2) // 5, 3),
    5: ("5k", lambda n: n // 5, 3),
    7: ("5k+2", lambda n: (n - 2) // 5, 3),
    9: ("5k-6", lambda n: (n + 6) // 5, 5),
    1: ("5k-4", lambda n: (n + 4) // 5, 5),
}


@dataclass(frozen=True)
class Certificate:
    group: str
    order: int
    set: ElementSet
    names: tuple[str, ...]
    product_free: bool
    locally_maximal: bool
    fills: bool
    uncovered: ElementSet
    uncovered_names: tuple[str, ...]
    case_label: Optional[str] = None

    @property
    def is_nonfilling_witness(self) -> bool:
        return self.product_free and self.locally_maximal and not self.fills

    def to_json(self) -> dict:
        return {
            "schema": "v1",
            "group": {"family": self.group, "order": self.order},
            "set": {"indices": self.set.to_list(), "names": list(self.names)},
            "product_free": self.product_free,
            "locally_maximal": self.locally_maximal,
            "fills": self.fills,
            "uncovered": {"indices": self.uncovered.to_list(), "names": list(self.uncovered_names)},
            "case_label": self.case_label,
            "nonfilling_witness": self.is_nonfilling_witness,
        }

    def summary(self) -> str:
        verdict = "non-filling witness" if self.is_nonfilling_witness else "not a non-filling witness"
        line = (
            f"{self.group} (order {self.order}): {{{', '.join(self.names)}}} "
            f"product-free={self.product_free} locally-maximal={self.locally_maximal} "
            f"fills={self.fills} -> {verdict}"
        )
        if self.uncovered:
            line += f"; uncovered: {', '.join(self.uncovered_names)}"
        return line


def odd_case(n: int) -> tuple[str, int]:
    """The case label and odd ``k`` for an odd ``n >= 13``."""
    if n % 2 == 0 or n < 13:
        raise InvalidParameter(f"n must be odd and at least 13, got {n}")
    label, k_of, k_min = _CASES[n % 10]
    k = k_of(n)
    assert k % 2 == 1 and k >= k_min, (n, label, k)
    return label, k


def odd_dihedral_witness(n: int) -> tuple[ElementSet, str]:
    """Locally maximal product-free set of ``D_2n`` that does not fill it.

    Uses the standard dihedral indexing: ``x^i`` is ``i``, ``x^i*y`` is ``n + i``.
    """
    label, k = odd_case(n)
    if n == 17:
        rotations, reflections = N17_WITNESS["rotations"], N17_WITNESS["reflections"]
    elif label in ("5k-2", "5k"):
        rotations = range(k, 3 * k - 1, 2)
        reflections = range(k)
    elif label == "5k+2":
        rotations = range(k - 2, 3 * k - 1, 2)
        reflections = range(k - 2)
    elif label == "5k-4":
        rotations = range(k - 2, 3 * k - 3, 2)
        reflections = range(k - 2)
    else:
        # 5k-6: the run x^k..x^(3k-2) is not product-free here (x^(6k-6) = x^k),
        # so the run is shifted down: x^(k-2)..x^(3k-6), reflections y..x^(k-3)y.
        rotations = range(k - 2, 3 * k - 5, 2)
        reflections = range(k - 2)
    elems = [r % n for r in rotations] + [n + r for r in reflections]
    return ElementSet.of(2 * n, elems), label


def d44_witness() -> ElementSet:
    """``{x^2, x^5, x^8, x^18, x^21, x^5*y, x^16*y}`` in the dihedral group of order 44."""
    return ElementSet.of(44, D44_INDICES)


def verify_witness(g: FiniteGroup, s: ElementSet, case_label: Optional[str] = None) -> Certificate:
    product_free = is_product_free(g, s)
    locally_maximal = product_free and is_locally_maximal_pf(g, s)
    missing = uncovered(g, s)
    return Certificate(
        group=str(g.family_tag),
        order=g.order,
        set=s,
        names=tuple(format_set(g, s)),
        product_free=product_free,
        locally_maximal=locally_maximal,
        fills=not missing,
        uncovered=missing,
        uncovered_names=tuple(format_set(g, missing)),
        case_label=case_label,
    )


def certify_odd_dihedral(n: int) -> Certificate:
    s, label = odd_dihedral_witness(n)
    return verify_witness(make_dihedral(2 * n), s, label)


def certify_d44() -> Certificate:
    return verify_witness(make_dihedral(44), d44_witness(), "D44")
