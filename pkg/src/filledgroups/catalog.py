"""Named groups: the shipped permutation fixtures and the built-in families."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .errors import InvalidParameter
from .group import (
    FiniteGroup,
    make_cyclic,
    make_dicyclic,
    make_dihedral,
    make_elementary_abelian_2,
    make_from_permutations,
    make_semidirect_cp_c4,
    parse_permutation_cycles,
)

FAMILIES = {
    # name -> (constructor, how --n maps to the constructor argument)
    "cyclic": (make_cyclic, lambda n: n),
    "dihedral": (make_dihedral, lambda n: 2 * n),
    "dicyclic": (make_dicyclic, lambda n: 4 * n),
    "quaternion": (make_dicyclic, lambda n: 4 * n),
    "elementary-abelian-2": (make_elementary_abelian_2, lambda n: n),
    "cp-c4": (make_semidirect_cp_c4, lambda n: n),
}


def make_family(name: str, n: int) -> FiniteGroup:
    """``--family``/``--n`` lookup. For dihedral groups ``n`` is the number of
    rotations (order 2n); for dicyclic groups the order is 4n."""
    try:
        ctor, arg = FAMILIES[name]
    except KeyError:
        raise InvalidParameter(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}") from None
    return ctor(arg(n))


@lru_cache(maxsize=None)
def _fixture_data() -> dict[str, dict]:
    text = resources.files("filledgroups").joinpath("data/fixtures.json").read_text()
    return {f["name"]: f for f in json.loads(text)["fixtures"]}


def fixture_names() -> list[str]:
    return list(_fixture_data())


def fixture_info(name: str) -> dict:
    try:
        return _fixture_data()[name]
    except KeyError:
        raise InvalidParameter(f"unknown fixture {name!r}; choose from {', '.join(_fixture_data())}") from None


@lru_cache(maxsize=None)
def load_fixture(name: str) -> FiniteGroup:
    info = fixture_info(name)
    gens = [parse_permutation_cycles(text, info["degree"]) for text in info["generators"]]
    return make_from_permutations(gens, info["degree"])
