"""Weighted automata: weights, equivalence, serialization."""

import random
from fractions import Fraction as F
from itertools import product

import pytest

from helpers import permuted_copy, random_weighted, series_agree

from normcheck.decision import component_analysis
from normcheck.errors import DimensionError, FormatError
from normcheck.linalg import QMatrix
from normcheck.weighted import (
    WeightedAutomaton,
    bernoulli_automaton,
    dump_weighted,
    equivalent,
    parse_weighted,
    weight,
)


@pytest.fixture(scope="module")
def binary_value():
    """Two-state automaton whose weight of w is the number w denotes
    in binary: one counting track, one carrying track."""
    return WeightedAutomaton(
        alphabet=("0", "1"),
        initial=(F(1), F(0)),
        mu={
            "0": QMatrix([[F(1), F(0)], [F(0), F(2)]]),
            "1": QMatrix([[F(1), F(1)], [F(0), F(2)]]),
        },
        final=(F(0), F(1)),
    )


class TestWeight:
    def test_known_word(self, binary_value):
        assert weight(binary_value, "1010") == 10

    def test_empty_word(self, binary_value):
        assert weight(binary_value, "") == 0

    def test_brute_force_binary_values(self, binary_value):
        for n in range(1, 11):
            for bits in product("01", repeat=n):
                w = "".join(bits)
                assert weight(binary_value, w) == int(w, 2)

    def test_unknown_symbol(self, binary_value):
        with pytest.raises(ValueError):
            weight(binary_value, "102")


def test_bernoulli_weights():
    b = bernoulli_automaton(("0", "1"))
    assert weight(b, "") == 1
    assert weight(b, "0110") == F(1, 16)
    b3 = bernoulli_automaton(("a", "b", "c"))
    assert weight(b3, ["a", "c"]) == F(1, 9)


class TestEquivalent:
    def test_permuted_copies_agree(self):
        rng = random.Random(3)
        for _ in range(20):
            wa = random_weighted(rng)
            assert equivalent(wa, permuted_copy(rng, wa)) is None

    def test_witness_separates(self):
        rng = random.Random(4)
        found = 0
        for _ in range(40):
            a, b = random_weighted(rng), random_weighted(rng)
            w = equivalent(a, b)
            if w is None:
                assert series_agree(a, b, 8)
            else:
                found += 1
                word = tuple(w) if w else ()
                assert weight(a, word) != weight(b, word)
        assert found > 10

    def test_witness_is_shortest_and_first(self):
        # differs on "1" but not on "" or "0"
        a = WeightedAutomaton(
            ("0", "1"),
            (F(1),),
            {"0": QMatrix([[F(1, 2)]]), "1": QMatrix([[F(1, 2)]])},
            (F(1),),
        )
        b = WeightedAutomaton(
            ("0", "1"),
            (F(1),),
            {"0": QMatrix([[F(1, 2)]]), "1": QMatrix([[F(1, 3)]])},
            (F(1),),
        )
        assert equivalent(a, b) == "1"

    def test_empty_word_witness(self):
        a = bernoulli_automaton(("0", "1"))
        b = WeightedAutomaton(
            ("0", "1"),
            (F(2),),
            {"0": QMatrix([[F(1, 2)]]), "1": QMatrix([[F(1, 2)]])},
            (F(1),),
        )
        assert equivalent(a, b) == ""

    def test_different_state_counts(self, binary_value):
        # padding with an unreachable state keeps the series
        padded = WeightedAutomaton(
            alphabet=("0", "1"),
            initial=binary_value.initial + (F(0),),
            mu={
                a: QMatrix(
                    [list(m.row(0)) + [F(0)], list(m.row(1)) + [F(0)], [F(0), F(0), F(7)]]
                )
                for a, m in binary_value.mu.items()
            },
            final=binary_value.final + (F(5),),
        )
        assert equivalent(binary_value, padded) is None

    def test_alphabet_mismatch(self, binary_value):
        with pytest.raises(DimensionError):
            equivalent(binary_value, bernoulli_automaton(("a", "b")))


def test_reduced_pair_for_the_uniform_machine(even_gap):
    """The frequency automaton collapses to a 2-state triple whose rows
    both halve the mass per symbol."""
    reduced = WeightedAutomaton(
        alphabet=("0", "1"),
        initial=(F(3, 4), F(1, 4)),
        mu={
            "0": QMatrix([[F(1, 4), F(1, 12)], [F(3, 4), F(1, 4)]]),
            "1": QMatrix([[F(1, 2), F(1, 6)], [F(0), F(0)]]),
        },
        final=(F(1), F(1)),
    )
    fa = component_analysis(even_gap).automaton
    assert equivalent(fa, reduced) is None
    # pi mu(0) + pi mu(1) = pi and each symbol carries half the weight
    from normcheck.linalg import vec_mat, dot

    pi = reduced.initial
    for sym in ("0", "1"):
        assert dot(vec_mat(pi, reduced.mu[sym]), reduced.final) == F(1, 2)


class TestSerialization:
    def test_round_trip(self, binary_value):
        assert parse_weighted(dump_weighted(binary_value)) == binary_value

    def test_round_trip_frequency_automaton(self, skewed):
        fa = component_analysis(skewed).automaton
        assert parse_weighted(dump_weighted(fa)) == fa

    def test_dump_is_line_oriented(self, binary_value):
        lines = dump_weighted(binary_value).splitlines()
        assert lines[0] == "weighted"
        assert lines[1] == "alphabet 0 1"
        assert "mu 0" in lines and "mu 1" in lines

    @pytest.mark.parametrize(
        "text,fragment",
        [
            ("weighted\nalphabet 0\ninitial 1", "missing"),
            ("nope\n", "expected header"),
            ("weighted\nalphabet 0\ninitial 1 2\nmu 0\n1\nfinal 1", "matrix row"),
            ("weighted\nalphabet 0\ninitial x\nmu 0\n1\nfinal 1", "bad rational in 'initial'"),
        ],
    )
    def test_parse_errors(self, text, fragment):
        with pytest.raises(FormatError) as err:
            parse_weighted(text)
        assert fragment in str(err.value)
