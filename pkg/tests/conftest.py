from pathlib import Path

import pytest

from normcheck.automata import parse_file

MACHINES = Path(__file__).resolve().parent.parent / "machines"


def load_machine(name: str):
    return parse_file((MACHINES / name).read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def skewed():
    """Transducer over the branching automaton that favors output 0."""
    return load_machine("skewed.t")


@pytest.fixture(scope="session")
def branching():
    """Unambiguous nondeterministic automaton underlying skewed.t."""
    return load_machine("branching.a")


@pytest.fixture(scope="session")
def even_gap():
    """Erasing transducer that keeps output frequencies uniform."""
    return load_machine("even_gap_selector.t")


@pytest.fixture(scope="session")
def identity():
    return load_machine("identity.t")


@pytest.fixture(scope="session")
def suffix_one():
    """Complete DFA for words ending in 1."""
    return load_machine("suffix_one.a")


@pytest.fixture(scope="session")
def parity():
    """Group DFA: 0 fixes the state, 1 swaps."""
    return load_machine("parity.a")
