"""From a strongly connected unit-radius transducer to the weighted
automaton of limiting output-block frequencies.

The steps, each exact over the rationals:

1. *Normalize*: split every transition emitting two or more symbols
   into a chain that emits one symbol per step, the continuation steps
   consuming no input.  Chain states inherit the right-fixed-vector
   value of the original target.
2. *Weight*: an input-consuming transition ``p -> q`` gets weight
   ``alpha_q / (k alpha_p)`` with ``k`` the input alphabet size; chain
   continuations get weight 1.  Outgoing weights then sum to one at
   every state.
3. *Matrices*: ``E`` collects weights of silent (empty-output)
   input-consuming transitions; ``E* = (I - E)^(-1)`` accumulates
   silent runs; ``D_b`` collects weights of transitions emitting ``b``.
   ``P = E* . sum_b D_b`` is row-stochastic and its stationary
   distribution seeds the block-frequency automaton
   ``(pi, b -> E* D_b, all-ones)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .automata import Transducer, Transition
from .errors import DimensionError, NoInfiniteOutputError, SingularMatrixError
from .linalg import QMatrix, solve, stationary
from .weighted import WeightedAutomaton

__all__ = [
    "ConstructionMatrices",
    "NormTransition",
    "NormalizedTransducer",
    "build_frequency_automaton",
    "build_matrices",
    "normalize",
]


class NormTransition(NamedTuple):
    """A transition emitting at most one symbol.

    ``inp`` is ``None`` for chain continuations that consume no input;
    ``out`` is ``None`` when nothing is emitted.
    """

    src: str
    inp: Optional[str]
    out: Optional[str]
    dst: str


@dataclass(frozen=True)
class NormalizedTransducer:
    """Result of splitting long emissions into single-symbol chains.

    Chain states are appended after the original states, one group per
    split transition, the groups ordered by (source index, input
    symbol, target index) of the transition they came from.
    """

    states: tuple[str, ...]
    input_alphabet: tuple[str, ...]
    output_alphabet: tuple[str, ...]
    transitions: tuple[NormTransition, ...]
    original_states: tuple[str, ...]
    chain_parent: dict[str, Transition]

    @property
    def state_index(self) -> dict[str, int]:
        return {q: i for i, q in enumerate(self.states)}


def _fresh_state_names(existing: Sequence[str], count: int) -> list[str]:
    """Invent ids for chain states.

    When every existing id is a decimal integer the numbering simply
    continues, which keeps displays readable; otherwise ids of the form
    ``n<k>`` are used, skipping collisions.
    """
    used = set(existing)
    names: list[str] = []
    if existing and all(q.isdigit() for q in existing):
        nxt = max(int(q) for q in existing) + 1
        while len(names) < count:
            names.append(str(nxt))
            nxt += 1
        return names
    k = len(existing)
    while len(names) < count:
        candidate = f"n{k}"
        k += 1
        if candidate not in used:
            used.add(candidate)
            names.append(candidate)
    return names


def normalize(
    t: Transducer, alpha: Sequence[Fraction]
) -> tuple[NormalizedTransducer, dict[NormTransition, Fraction]]:
    """Split long emissions and attach transition weights.

    ``alpha`` is the right fixed vector of the input automaton's
    adjacency matrix, indexed like ``t.states``.  Returns the
    normalized machine together with the weight of every transition.
    """
    if len(alpha) != len(t.states):
        raise DimensionError("alpha length does not match the state count")
    idx = t.state_index
    k = len(t.input_alphabet)

    short = [tr for tr in t.transitions if len(tr.out) <= 1]
    long = sorted(
        (tr for tr in t.transitions if len(tr.out) >= 2),
        key=lambda tr: (idx[tr.src], tr.inp, idx[tr.dst]),
    )
    chain_total = sum(len(tr.out) - 1 for tr in long)
    fresh = _fresh_state_names(t.states, chain_total)

    states = list(t.states)
    alpha_ext = [x if isinstance(x, Fraction) else Fraction(x) for x in alpha]
    transitions: list[NormTransition] = [
        NormTransition(tr.src, tr.inp, tr.out[0] if tr.out else None, tr.dst)
        for tr in short
    ]
    chain_parent: dict[str, Transition] = {}
    pos = 0
    for tr in long:
        links = len(tr.out) - 1
        chain = fresh[pos : pos + links]
        pos += links
        hops = [tr.src, *chain, tr.dst]
        target_alpha = alpha_ext[idx[tr.dst]]
        for state in chain:
            states.append(state)
            alpha_ext.append(target_alpha)
            chain_parent[state] = tr
        for i, sym in enumerate(tr.out):
            transitions.append(
                NormTransition(hops[i], tr.inp if i == 0 else None, sym, hops[i + 1])
            )

    nt = NormalizedTransducer(
        tuple(states),
        t.input_alphabet,
        t.output_alphabet,
        tuple(transitions),
        t.states,
        chain_parent,
    )
    full_idx = {q: i for i, q in enumerate(states)}
    weights: dict[NormTransition, Fraction] = {}
    for tr in nt.transitions:
        if tr.inp is None:
            weights[tr] = Fraction(1)
        else:
            weights[tr] = alpha_ext[full_idx[tr.dst]] / (k * alpha_ext[full_idx[tr.src]])
    return nt, weights


@dataclass(frozen=True)
class ConstructionMatrices:
    """Silent-step and emission matrices of a normalized machine."""

    e: QMatrix
    e_star: QMatrix
    d: dict[str, QMatrix]
    p_hat: QMatrix
    pi_hat: tuple[Fraction, ...]


def build_matrices(
    nt: NormalizedTransducer, weights: dict[NormTransition, Fraction]
) -> ConstructionMatrices:
    """Assemble E, E* = (I - E)^(-1), the D_b family, and the
    stationary distribution of ``E* . sum_b D_b``.

    Raises :class:`NoInfiniteOutputError` when ``I - E`` is singular,
    which for a strongly connected machine happens exactly when every
    transition is silent.
    """
    n = len(nt.states)
    idx = nt.state_index
    zero = Fraction(0)
    e_rows = [[zero] * n for _ in range(n)]
    d_rows = {b: [[zero] * n for _ in range(n)] for b in nt.output_alphabet}
    for tr in nt.transitions:
        w = weights[tr]
        i, j = idx[tr.src], idx[tr.dst]
        if tr.out is None:
            e_rows[i][j] += w
        else:
            d_rows[tr.out][i][j] += w
    e = QMatrix(e_rows)
    identity = QMatrix.identity(n)
    try:
        e_star = solve(identity - e, identity)
    except SingularMatrixError as exc:
        raise NoInfiniteOutputError(
            "silent transitions form a trap; outputs stay finite"
        ) from exc
    d = {b: QMatrix(rows) for b, rows in d_rows.items()}
    if not d:
        raise NoInfiniteOutputError("the output alphabet is empty")
    d_total = None
    for m in d.values():
        d_total = m if d_total is None else d_total + m
    p_hat = e_star * d_total
    pi_hat = stationary(p_hat)
    return ConstructionMatrices(e, e_star, d, p_hat, pi_hat)


def build_frequency_automaton(
    cm: ConstructionMatrices, nt: NormalizedTransducer
) -> WeightedAutomaton:
    """The weighted automaton whose word weights are the limiting
    output-block frequencies."""
    mu = {b: cm.e_star * cm.d[b] for b in nt.output_alphabet}
    ones = tuple(Fraction(1) for _ in nt.states)
    return WeightedAutomaton(nt.output_alphabet, cm.pi_hat, mu, ones)
