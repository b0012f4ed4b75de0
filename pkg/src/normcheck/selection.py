"""Selection transducers built from deterministic automata.

A selector reads an infinite word and copies or drops each symbol
depending on the automaton's state; the two variants differ in whether
the decision looks at the state *before* reading the symbol (oblivious
of the symbol itself) or the state *after* (the symbol may influence
its own selection).  Both constructions take a complete DFA and return
a transducer whose states are all accepting for the infinite-run
condition, since selection imposes no constraint of its own.
"""

from __future__ import annotations

from .automata import Automaton, Transducer, Transition, is_complete, is_deterministic
from .errors import DfaError

__all__ = [
    "is_group_automaton",
    "nonoblivious_selector",
    "oblivious_selector",
    "prefix_select",
]


def _require_complete_dfa(a: Automaton) -> None:
    if not is_deterministic(a):
        raise DfaError("selection needs a deterministic automaton")
    if not is_complete(a):
        raise DfaError("selection needs a complete automaton")


def oblivious_selector(a: Automaton) -> Transducer:
    """Copy a symbol exactly when it is read from an accepting state."""
    _require_complete_dfa(a)
    transitions = tuple(
        Transition(tr.src, tr.sym, (tr.sym,) if tr.src in a.final else (), tr.dst)
        for tr in a.transitions
    )
    return Transducer(
        states=a.states,
        input_alphabet=a.alphabet,
        output_alphabet=a.alphabet,
        transitions=transitions,
        initial=a.initial,
        final=frozenset(a.states),
    )


def nonoblivious_selector(a: Automaton) -> Transducer:
    """Copy a symbol exactly when reading it enters an accepting state."""
    _require_complete_dfa(a)
    transitions = tuple(
        Transition(tr.src, tr.sym, (tr.sym,) if tr.dst in a.final else (), tr.dst)
        for tr in a.transitions
    )
    return Transducer(
        states=a.states,
        input_alphabet=a.alphabet,
        output_alphabet=a.alphabet,
        transitions=transitions,
        initial=a.initial,
        final=frozenset(a.states),
    )


def is_group_automaton(a: Automaton) -> bool:
    """True when every symbol acts as a permutation of the state set."""
    if not is_deterministic(a) or not is_complete(a):
        return False
    for sym in a.alphabet:
        targets = {a.successors[(q, sym)][0] for q in a.states}
        if len(targets) != len(a.states):
            return False
    return True


def prefix_select(x: str, a: Automaton, mode: str = "oblivious") -> str:
    """Apply the selection rule along a finite prefix.

    Runs the DFA over ``x`` from its initial state and keeps the
    symbols the chosen rule selects.  Useful as a direct reference for
    the selector transducers.
    """
    _require_complete_dfa(a)
    if mode not in ("oblivious", "nonoblivious"):
        raise ValueError(f"unknown mode {mode!r}")
    (state,) = a.initial
    picked = []
    for sym in x:
        if sym not in a.alphabet:
            raise ValueError(f"symbol {sym!r} not in the automaton alphabet")
        nxt = a.successors[(state, sym)][0]
        keep = state in a.final if mode == "oblivious" else nxt in a.final
        if keep:
            picked.append(sym)
        state = nxt
    return "".join(picked)
