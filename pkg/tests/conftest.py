import sys

import pytest

from spsforge.fork import insert_fork
from spsforge.order import P_D8, build_lattice, down_set_lattice
from spsforge.planar import build_diagram, grid

from oracles import small_lattices


def chain(k):
    return build_lattice([(str(i), str(i + 1)) for i in range(k - 1)], [str(i) for i in range(k)])


M3_COVERS = [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")]
N5_COVERS = [("0", "a"), ("a", "c"), ("0", "b"), ("c", "1"), ("b", "1")]

# N7 drawn by hand, independent of the fork engine.
N7_COVERS = [("o", "al"), ("o", "ar"), ("al", "cl"), ("al", "m"), ("ar", "m"),
             ("ar", "cr"), ("cl", "t"), ("m", "t"), ("cr", "t")]
N7_UP = {"o": ["al", "ar"], "al": ["cl", "m"], "ar": ["m", "cr"],
         "cl": ["t"], "m": ["t"], "cr": ["t"], "t": []}
N7_DOWN = {"o": [], "al": ["o"], "ar": ["o"], "cl": ["al"], "m": ["al", "ar"],
           "cr": ["ar"], "t": ["cl", "m", "cr"]}


def n7_diagram():
    return build_diagram(N7_COVERS, N7_UP, N7_DOWN)


def l1():
    D = grid(1, 1)
    return insert_fork(D, D.cells[0])[0]


def named_lattices():
    return {
        "C1": build_lattice([], ["0"]),
        "C2": chain(2),
        "C3": chain(3),
        "C4": chain(4),
        "C2xC2": grid(1, 1).lattice,
        "C2xC3": grid(1, 2).lattice,
        "M3": build_lattice(M3_COVERS),
        "N5": build_lattice(N5_COVERS),
        "N7": n7_diagram().lattice,
        "L1": l1().lattice,
        "D8": down_set_lattice(P_D8),
    }


_SMALL = None


def small_catalogue():
    global _SMALL
    if _SMALL is None:
        _SMALL = small_lattices(6)
    return _SMALL


@pytest.fixture(scope="session")
def catalogue():
    """Named lattices plus every lattice of at most six elements."""
    out = dict(named_lattices())
    for k, L in enumerate(small_catalogue()):
        out[f"small{k}"] = L
    return out


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = sorted(getattr(mod, "RESULTS", []))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in lines:
            terminalreporter.write_line(line)
