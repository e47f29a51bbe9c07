import pytest
from hypothesis import settings

from filledgroups.catalog import fixture_names, load_fixture
from filledgroups.group import (
    direct_product,
    make_cyclic,
    make_dicyclic,
    make_dihedral,
    make_elementary_abelian_2,
    make_semidirect_cp_c4,
)

settings.register_profile("default", deadline=None)
settings.load_profile("default")


def build_catalog():
    """Every small group the suite reasons about, keyed by a readable name."""
    groups = {f"C{n}": make_cyclic(n) for n in range(1, 17)}
    groups.update({f"E{1 << k}": make_elementary_abelian_2(k) for k in range(0, 5)})
    groups.update({f"D{2 * n}": make_dihedral(2 * n) for n in range(3, 11)})
    groups.update({f"Q{4 * n}": make_dicyclic(4 * n) for n in range(2, 5)})
    groups["C2xC4"] = direct_product(make_cyclic(2), make_cyclic(4))
    groups["C2xC6"] = direct_product(make_cyclic(2), make_cyclic(6))
    groups["C3xC3"] = direct_product(make_cyclic(3), make_cyclic(3))
    groups["C4xC4"] = direct_product(make_cyclic(4), make_cyclic(4))
    groups["C2xC8"] = direct_product(make_cyclic(2), make_cyclic(8))
    groups["C2xC2xC4"] = direct_product(make_elementary_abelian_2(2), make_cyclic(4))
    groups["C2xD6"] = direct_product(make_cyclic(2), make_dihedral(6))
    groups["C3xS3"] = direct_product(make_cyclic(3), make_dihedral(6))
    groups["G20"] = make_semidirect_cp_c4(5)
    for name in fixture_names():
        groups[f"fx:{name}"] = load_fixture(name)
    return groups


CATALOG = build_catalog()


@pytest.fixture(scope="session")
def catalog():
    return CATALOG


def catalog_upto(order):
    return sorted((k for k, g in CATALOG.items() if g.order <= order), key=lambda k: (CATALOG[k].order, k))


# -- acceptance reporting ----------------------------------------------------

ACCEPTANCE_RESULTS: dict[str, tuple[str, str]] = {}


@pytest.fixture
def acceptance(request):
    """Record this criterion's pass/fail line for the terminal summary."""
    label = request.node.get_closest_marker("criterion").args[0]
    notes = []
    ACCEPTANCE_RESULTS[label] = ("FAIL", "")
    yield notes
    rep = getattr(request.node, "rep_call", None)
    status = "PASS" if rep is not None and rep.passed else "FAIL"
    ACCEPTANCE_RESULTS[label] = (status, "; ".join(notes))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion label")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE_RESULTS, key=lambda s: int(s.split(".")[0])):
        status, note = ACCEPTANCE_RESULTS[label]
        terminalreporter.write_line(f"{status}  {label}" + (f"  [{note}]" if note else ""))
