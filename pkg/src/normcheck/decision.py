"""Decide whether an unambiguous transducer preserves normality.

The pipeline: trim, reject ambiguous machines, decompose the input
automaton into strongly connected components, and analyze every
component that contains a final state and whose adjacency matrix has
unit spectral radius.  Each analyzed component yields an exact weighted
automaton of limiting output-block frequencies, which is compared
against the uniform reference automaton; normality is preserved exactly
when every analyzed component's frequencies are uniform.

Components with radius below one are visited by no run on any normal
input, so they cannot affect the verdict; when nothing at all is
analyzable, no normal input is accepted and the verdict is vacuously
positive, flagged via ``empty_normal_domain``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .automata import (
    Automaton,
    SccDecomposition,
    Transducer,
    check_unambiguous,
    format_word,
    input_automaton,
    restrict_automaton,
    restrict_transducer,
    scc_decompose,
    trim,
)
from .construction import (
    ConstructionMatrices,
    NormalizedTransducer,
    NormTransition,
    build_frequency_automaton,
    build_matrices,
    normalize,
)
from .errors import (
    AmbiguousTransducerError,
    EmptyLanguageError,
    NoInfiniteOutputError,
    NotAnalyzableError,
)
from .linalg import QMatrix, vec_mat, dot
from .spectral import PerronData, adjacency_matrix, perron_vectors, radius_is_one
from .weighted import WeightedAutomaton, bernoulli_automaton, equivalent, weight

__all__ = [
    "ComponentAnalysis",
    "FrequencyWitness",
    "SccReport",
    "Verdict",
    "block_frequencies",
    "component_analysis",
    "preserves_normality",
]


@dataclass(frozen=True)
class FrequencyWitness:
    """A block whose limiting frequency deviates from uniform."""

    word: str
    weight: Fraction
    expected: Fraction


@dataclass(frozen=True)
class SccReport:
    states: tuple[str, ...]
    contains_final: bool
    radius_one: bool
    analyzed: bool
    preserves: Optional[bool]
    witness: Optional[FrequencyWitness] = None
    no_infinite_output: bool = False


@dataclass(frozen=True)
class Verdict:
    """Outcome of the decision procedure.

    ``preserves`` is the conjunction over analyzed components;
    ``empty_normal_domain`` marks the vacuous case in which no
    component was analyzable, i.e. the machine accepts no normal input
    at all.
    """

    preserves: bool
    scc_reports: tuple[SccReport, ...]
    empty_normal_domain: bool


@dataclass(frozen=True)
class ComponentAnalysis:
    """Everything computed for one analyzable component."""

    index: int
    states: tuple[str, ...]
    perron: PerronData
    normalized: NormalizedTransducer
    transition_weights: dict[NormTransition, Fraction]
    matrices: ConstructionMatrices
    automaton: WeightedAutomaton


def _duplicate_output_witness(t: Transducer, src: str, inp: str) -> str:
    """Input prefix exercising a transition pair with equal input labels."""
    preds: dict[str, tuple[str, str]] = {}
    queue = deque(t.initial)
    seen = set(t.initial)
    while queue:
        q = queue.popleft()
        if q == src:
            word = [inp]
            while q not in t.initial:
                q, sym = preds[q]
                word.append(sym)
            word.reverse()
            return format_word(word)
        for tr in t.transitions:
            if tr.src == q and tr.dst not in seen:
                seen.add(tr.dst)
                preds[tr.dst] = (q, tr.inp)
                queue.append(tr.dst)
    return inp  # src unreachable cannot happen on a trim machine


def _validate(t: Transducer) -> tuple[Transducer, Automaton, SccDecomposition]:
    trimmed = trim(t)
    if not trimmed.states:
        raise EmptyLanguageError("no state lies on an accepting run")
    # Parallel transitions with the same input but different outputs
    # give one input two accepting transducer runs.
    outputs: dict[tuple[str, str, str], tuple[str, ...]] = {}
    for tr in trimmed.transitions:
        key = (tr.src, tr.inp, tr.dst)
        if key in outputs and outputs[key] != tr.out:
            raise AmbiguousTransducerError(
                _duplicate_output_witness(trimmed, tr.src, tr.inp)
            )
        outputs[key] = tr.out
    ia = input_automaton(trimmed)
    witness = check_unambiguous(ia)
    if witness is not None:
        raise AmbiguousTransducerError(witness)
    return trimmed, ia, scc_decompose(ia)


def _analyze(
    trimmed: Transducer, ia: Automaton, index: int, states: tuple[str, ...]
) -> ComponentAnalysis:
    sub_a = restrict_automaton(ia, states)
    perron = perron_vectors(adjacency_matrix(sub_a))
    sub_t = restrict_transducer(trimmed, states)
    nt, weights = normalize(sub_t, perron.alpha)
    matrices = build_matrices(nt, weights)
    automaton = build_frequency_automaton(matrices, nt)
    return ComponentAnalysis(index, states, perron, nt, weights, matrices, automaton)


def preserves_normality(t: Transducer) -> Verdict:
    """Run the full decision procedure.

    Raises :class:`EmptyLanguageError` when trimming empties the
    machine and :class:`AmbiguousTransducerError` (with a witness input
    prefix) when some input carries two accepting runs.
    """
    trimmed, ia, decomposition = _validate(t)
    k_out = len(t.output_alphabet)
    reports: list[SccReport] = []
    analyzed_any = False
    all_preserve = True
    for index, comp in enumerate(decomposition.components):
        sub_a = restrict_automaton(ia, comp.states)
        radius_one = radius_is_one(adjacency_matrix(sub_a))
        if not comp.contains_final or not radius_one:
            reports.append(
                SccReport(comp.states, comp.contains_final, radius_one, False, None)
            )
            continue
        analyzed_any = True
        try:
            analysis = _analyze(trimmed, ia, index, comp.states)
        except NoInfiniteOutputError:
            all_preserve = False
            reports.append(
                SccReport(
                    comp.states,
                    True,
                    True,
                    True,
                    False,
                    no_infinite_output=True,
                )
            )
            continue
        witness_word = equivalent(
            analysis.automaton, bernoulli_automaton(t.output_alphabet)
        )
        if witness_word is None:
            reports.append(SccReport(comp.states, True, True, True, True))
        else:
            all_preserve = False
            symbols = witness_word.split(" ") if " " in witness_word else list(witness_word)
            got = weight(analysis.automaton, symbols)
            expected = Fraction(1, k_out) ** len(symbols)
            reports.append(
                SccReport(
                    comp.states,
                    True,
                    True,
                    True,
                    False,
                    witness=FrequencyWitness(witness_word, got, expected),
                )
            )
    return Verdict(
        preserves=all_preserve,
        scc_reports=tuple(reports),
        empty_normal_domain=not analyzed_any,
    )


def component_analysis(t: Transducer, scc: Optional[int] = None) -> ComponentAnalysis:
    """Analyze one component in depth.

    ``scc`` is the component index as reported by the decomposition;
    when omitted there must be exactly one analyzable component.
    Raises :class:`NotAnalyzableError` when the requested component has
    no final state or its adjacency matrix does not have unit radius.
    """
    trimmed, ia, decomposition = _validate(t)
    analyzable: list[int] = []
    for index, comp in enumerate(decomposition.components):
        sub_a = restrict_automaton(ia, comp.states)
        if comp.contains_final and radius_is_one(adjacency_matrix(sub_a)):
            analyzable.append(index)
    if scc is None:
        if len(analyzable) != 1:
            raise NotAnalyzableError(
                f"{len(analyzable)} analyzable components; select one explicitly"
            )
        scc = analyzable[0]
    if scc not in range(len(decomposition.components)):
        raise NotAnalyzableError(f"no component with index {scc}")
    if scc not in analyzable:
        raise NotAnalyzableError(
            f"component {scc} has no final state or lacks unit spectral radius"
        )
    return _analyze(trimmed, ia, scc, decomposition.components[scc].states)


def block_frequencies(
    t: Transducer, scc: Optional[int] = None, max_len: int = 1
) -> dict[str, Fraction]:
    """Exact limiting frequencies of output blocks up to ``max_len``.

    Keys are rendered block words (the empty block included, with
    frequency 1); values are exact rationals that sum to 1 within each
    block length.
    """
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    fa = component_analysis(t, scc).automaton
    out: dict[str, Fraction] = {}
    frontier: list[tuple[tuple[str, ...], tuple[Fraction, ...]]] = [
        ((), fa.initial)
    ]
    out[""] = dot(fa.initial, fa.final)
    for _ in range(max_len):
        nxt = []
        for word, vec in frontier:
            for sym in fa.alphabet:
                w2 = word + (sym,)
                v2 = vec_mat(vec, fa.mu[sym])
                out[format_word(w2)] = dot(v2, fa.final)
                nxt.append((w2, v2))
        frontier = nxt
    return out
