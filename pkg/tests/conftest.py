import random
import sys

import pytest

from polycube.colorings import (CruxParams, NotSurjective, basic_coloring, crux_coloring,
                                main_coloring, make_linear)
from polycube.search import enumerate_abelian_groups


def random_linear_colorings(count, max_order, seed, ells=(1, 2)):
    """Surjective linear colorings drawn from a seeded generator."""
    rng = random.Random(seed)
    groups = [g for g in enumerate_abelian_groups(max_order) if g.order > 1]
    out = []
    while len(out) < count:
        g = rng.choice(groups)
        ell = rng.choice(ells)
        ws = [tuple(rng.randrange(m) for m in g.moduli) for _ in range(ell + 1)]
        try:
            out.append(make_linear(g, ws, ell, label=f"random {g.moduli} {ws}"))
        except NotSurjective:
            continue
    return out


def fixture_colorings():
    return [
        main_coloring(4),
        basic_coloring(4, 2),
        basic_coloring(3, 1),
        crux_coloring(CruxParams(1, 2, "B")),
    ]


@pytest.fixture(scope="session")
def fixtures():
    return fixture_colorings()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
