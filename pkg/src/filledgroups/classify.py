"""Filled / not-filled verdicts from structural rules, with search as fallback.

Rules run cheapest first; the first conclusive one decides. Each verdict
keeps the list of every rule consulted so the output can say why.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Optional

from .group import FamilyTag, FiniteGroup, _is_prime, is_abelian
from .search import FILLED, NOT_FILLED, UNKNOWN, SearchBudget, decide_filled
from .subgroups import normal_subgroups, quotient
from .witnesses import Certificate, verify_witness

FILLED_DIHEDRAL_ORDERS = frozenset({6, 8, 10, 12, 14, 22})

RULE_TEXT = {
    "abelian": "abelian groups: only C3, C5 and elementary abelian 2-groups are filled",
    "odd-order": "odd order: only C3 and C5 are filled",
    "dicyclic": "generalized quaternion groups are not filled",
    "dihedral": "dihedral classification: filled exactly for orders 6, 8, 10, 12, 14, 22",
    "order-4p": "order 4p with p >= 5 prime: not filled",
    "index-3": "only C3 is filled among groups with a normal subgroup of index 3",
    "index-5": "normal subgroup of index 5 missing an element of order 5: not filled unless C5",
    "quotient": "quotients of filled groups are filled",
    "search": "exhaustive search",
}


@dataclass
class RuleApplication:
    rule: str
    result: Optional[str]  # None when the rule did not decide
    detail: str = ""

    def to_json(self) -> dict:
        return {"rule": self.rule, "result": self.result, "detail": self.detail}


@dataclass
class Verdict:
    status: str
    provenance: list[RuleApplication] = field(default_factory=list)
    witness: Optional[Certificate] = None
    quotient_chain: Optional[list[tuple[int, str]]] = None
    nodes_visited: int = 0

    @property
    def deciding_rule(self) -> Optional[str]:
        for step in reversed(self.provenance):
            if step.result is not None:
                return step.rule
        return None

    def summary(self) -> str:
        rule = self.deciding_rule
        head = f"{self.status} ({RULE_TEXT.get(rule, rule)})" if rule else self.status
        decided = self.provenance[-1] if self.provenance else None
        if decided is not None and decided.detail:
            head += f": {decided.detail}"
        return head

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "rule": self.deciding_rule,
            "provenance": [p.to_json() for p in self.provenance],
            "witness": self.witness.to_json() if self.witness else None,
            "quotient_chain": (
                [{"subgroup_order": size, "quotient_verdict": v} for size, v in self.quotient_chain]
                if self.quotient_chain is not None
                else None
            ),
            "nodes_visited": self.nodes_visited,
        }


def _decided(rule: str, status: str, detail: str = "") -> Verdict:
    return Verdict(status, [RuleApplication(rule, status, detail)])


# -- individual filters ------------------------------------------------------


def filter_abelian(g: FiniteGroup) -> Optional[Verdict]:
    if not is_abelian(g):
        return None
    if g.order in (3, 5):
        return _decided("abelian", FILLED, f"cyclic of order {g.order}")
    if max(g.elem_orders) <= 2:
        return _decided("abelian", FILLED, f"elementary abelian of order {g.order}")
    return _decided("abelian", NOT_FILLED, f"abelian of order {g.order}, exponent {max(g.elem_orders)}")


def filter_odd_order(g: FiniteGroup) -> Optional[Verdict]:
    n = g.order
    if n % 2 == 0:
        return None
    if n == 1:
        return _decided("odd-order", FILLED, "trivial group")
    if n in (3, 5):
        return _decided("odd-order", FILLED, f"C{n}")
    return _decided("odd-order", NOT_FILLED, f"odd order {n}")


def filter_family(g: FiniteGroup) -> Optional[Verdict]:
    """Decide by constructor tag, or by order 4p for primes p >= 5."""
    tag = g.family_tag
    if tag.kind == FamilyTag.DICYCLIC and tag.param >= 8:
        return _decided("dicyclic", NOT_FILLED, f"Q{tag.param}")
    if tag.kind == FamilyTag.DIHEDRAL:
        status = FILLED if tag.param in FILLED_DIHEDRAL_ORDERS else NOT_FILLED
        return _decided("dihedral", status, f"D{tag.param}")
    if g.order % 4 == 0 and _is_prime(g.order // 4) and g.order // 4 >= 5:
        return _decided("order-4p", NOT_FILLED, f"order {g.order} = 4*{g.order // 4}")
    return None


def filter_index_3(g: FiniteGroup) -> Optional[Verdict]:
    if g.order == 3 or g.order % 3:
        return None
    for n in normal_subgroups(g):
        if n.index == 3:
            return _decided("index-3", NOT_FILLED, f"normal subgroup of index 3, size {n.order}")
    return None


def filter_index_5(g: FiniteGroup) -> Optional[Verdict]:
    if g.order == 5 or g.order % 5:
        return None
    order5 = [i for i, o in enumerate(g.elem_orders) if o == 5]
    for n in normal_subgroups(g):
        if n.index == 5:
            outside = [i for i in order5 if i not in n]
            if outside:
                return _decided(
                    "index-5",
                    NOT_FILLED,
                    f"normal subgroup of size {n.order}; element {outside[0]} of order 5 lies outside",
                )
    return None


class QuotientMemo:
    """Verdicts keyed by the exact Cayley table; safe to share between threads."""

    def __init__(self):
        self._data: dict[bytes, Verdict] = {}
        self._lock = threading.Lock()

    @staticmethod
    def key(g: FiniteGroup) -> bytes:
        return g.order.to_bytes(4, "little") + g.table.tobytes()

    def get(self, g: FiniteGroup) -> Optional[Verdict]:
        with self._lock:
            return self._data.get(self.key(g))

    def put(self, g: FiniteGroup, v: Verdict) -> None:
        with self._lock:
            self._data[self.key(g)] = v

    def __len__(self) -> int:
        return len(self._data)


def filter_quotients(
    g: FiniteGroup, budget: Optional[SearchBudget] = None, memo: Optional[QuotientMemo] = None
) -> Optional[Verdict]:
    """Not filled if some proper quotient is not filled. Never concludes Filled."""
    chain = []
    for n in normal_subgroups(g):
        if n.order == 1 or n.order == g.order:
            continue
        q, _ = quotient(g, n)
        sub = classify(q, budget, memo=memo, use_memo=memo is not None)
        chain.append((n.order, sub.status))
        if sub.status == NOT_FILLED:
            v = _decided(
                "quotient",
                NOT_FILLED,
                f"quotient by a normal subgroup of size {n.order} (order {q.order}) is not filled "
                f"[{sub.deciding_rule}: {sub.provenance[-1].detail}]",
            )
            v.quotient_chain = chain
            return v
    return None


# -- the classifier ----------------------------------------------------------

_FILTERS = (
    ("abelian", filter_abelian),
    ("odd-order", filter_odd_order),
    ("family", filter_family),
    ("index-3", filter_index_3),
    ("index-5", filter_index_5),
)


def classify(
    g: FiniteGroup,
    budget: Optional[SearchBudget] = None,
    *,
    memo: Optional[QuotientMemo] = None,
    use_filters: bool = True,
    use_memo: bool = True,
    threads: int = 1,
) -> Verdict:
    """Run the rules in order, then search. ``use_filters=False`` goes straight
    to search."""
    if use_memo and memo is None:
        memo = QuotientMemo()
    if not use_memo:
        memo = None
    if memo is not None:
        cached = memo.get(g)
        if cached is not None:
            return cached

    provenance: list[RuleApplication] = []
    verdict = None
    if use_filters:
        for name, rule in _FILTERS:
            verdict = rule(g)
            if verdict is not None:
                break
            provenance.append(RuleApplication(name, None))
        if verdict is None:
            verdict = filter_quotients(g, budget, memo)
            if verdict is None:
                provenance.append(RuleApplication("quotient", None))
    if verdict is None:
        verdict = _search_verdict(g, budget, threads)
    verdict.provenance = provenance + verdict.provenance
    if memo is not None:
        memo.put(g, verdict)
    return verdict


def _search_verdict(g: FiniteGroup, budget: Optional[SearchBudget], threads: int) -> Verdict:
    if g.order < 2:
        return _decided("search", FILLED, "trivial group")
    outcome = decide_filled(g, budget, threads=threads)
    if outcome.verdict == NOT_FILLED:
        v = _decided("search", NOT_FILLED, f"counterexample of size {len(outcome.witness)}")
        v.witness = verify_witness(g, outcome.witness, "search")
    elif outcome.verdict == FILLED:
        v = _decided("search", FILLED, f"search tree exhausted after {outcome.nodes_visited} nodes")
    else:
        v = Verdict(
            UNKNOWN,
            [RuleApplication("search", UNKNOWN, f"{outcome.reason} after {outcome.nodes_visited} nodes")],
        )
    v.nodes_visited = outcome.nodes_visited
    return v
