"""Finite-prefix experiments against the exact predictions.

The exact decision machinery asserts limit statements; this module
checks them at desk scale by generating a long prefix of a normal
word, pushing it through a transducer, and counting output blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Optional

from .automata import (
    Transducer,
    format_word,
    input_automaton,
    restrict_automaton,
    scc_decompose,
    trim,
)
from .decision import block_frequencies
from .errors import AmbiguousTransducerError, EmptyLanguageError, NoRunError
from .spectral import adjacency_matrix, radius_is_one

__all__ = [
    "BlockStat",
    "FrequencyReport",
    "RunCandidate",
    "RunResult",
    "champernowne",
    "champernowne_stream",
    "compare_frequencies",
    "count_blocks",
    "count_occurrences",
    "run_transducer",
]

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


def _render(n: int, base: int) -> str:
    if n == 0:
        return "0"
    digits = []
    while n:
        digits.append(_DIGITS[n % base])
        n //= base
    return "".join(reversed(digits))


def champernowne_stream(base: int = 2) -> Iterator[str]:
    """Yield, symbol by symbol, 0 1 2 3 ... written in the base."""
    if not 2 <= base <= len(_DIGITS):
        raise ValueError(f"base must be between 2 and {len(_DIGITS)}")
    n = 0
    while True:
        yield from _render(n, base)
        n += 1


def champernowne(base: int, n: int) -> str:
    """First n symbols of the concatenation 0 1 2 3 ... in the base.

    Base 10 starts "0123456789101112"; base 2 starts "011011100101".
    """
    if not 2 <= base <= len(_DIGITS):
        raise ValueError(f"base must be between 2 and {len(_DIGITS)}")
    if n < 0:
        raise ValueError("prefix length must be nonnegative")
    parts: list[str] = []
    total = 0
    k = 0
    while total < n:
        s = _render(k, base)
        parts.append(s)
        total += len(s)
        k += 1
    return "".join(parts)[:n]


def count_occurrences(w: str, v: str) -> int:
    """Occurrences of v in w, overlapping positions counted separately."""
    if not v:
        raise ValueError("cannot count the empty block")
    n = 0
    i = w.find(v)
    while i != -1:
        n += 1
        i = w.find(v, i + 1)
    return n


def count_blocks(word: str, length: int, aligned: bool = False) -> dict[str, int]:
    """Counts of every block of the given length occurring in ``word``.

    Sliding counts by default (positions may overlap); ``aligned``
    restricts to positions that are multiples of the block length.
    """
    if length < 1:
        raise ValueError("block length must be positive")
    counts: dict[str, int] = {}
    step = length if aligned else 1
    for i in range(0, len(word) - length + 1, step):
        block = word[i : i + length]
        counts[block] = counts.get(block, 0) + 1
    return counts


@dataclass(frozen=True)
class RunCandidate:
    """One surviving run hypothesis after a finite prefix."""

    state: str
    output: str
    path: Optional[tuple[str, ...]] = None


@dataclass(frozen=True)
class RunResult:
    """Output common to all surviving runs, plus the runs themselves."""

    output: str
    candidates: tuple[RunCandidate, ...]


def _live_states(ia) -> frozenset[str]:
    # States from which a run can still reach a component that runs on
    # normal input visit forever: final-containing with unit radius.
    targets: set[str] = set()
    for comp in scc_decompose(ia).components:
        if comp.contains_final and radius_is_one(
            adjacency_matrix(restrict_automaton(ia, comp.states))
        ):
            targets.update(comp.states)
    preds: dict[str, set[str]] = {q: set() for q in ia.states}
    for tr in ia.transitions:
        preds[tr.dst].add(tr.src)
    live = set(targets)
    stack = list(targets)
    while stack:
        q = stack.pop()
        for p in preds[q]:
            if p not in live:
                live.add(p)
                stack.append(p)
    return frozenset(live)


def _materialize(node, buf: list[str]) -> tuple[str, ...]:
    chunks = [tuple(buf)]
    while node is not None:
        node, chunk = node
        chunks.append(chunk)
    return tuple(s for chunk in reversed(chunks) for s in chunk)


def run_transducer(t: Transducer, x, keep_trace: bool = False) -> RunResult:
    """Push a finite input prefix through the transducer.

    Explores all runs from the initial states, discarding any that
    enter a state from which no normal input can be accepted.  On a
    finite prefix several runs may survive; the result's ``output`` is
    the longest common prefix of their outputs, and ``candidates``
    lists each survivor (with its full state sequence when
    ``keep_trace`` is set).

    Raises :class:`NoRunError` with the 1-based failing position when
    every run dies, and :class:`AmbiguousTransducerError` when two runs
    on the same prefix converge on one state.
    """
    trimmed = trim(t)
    if not trimmed.states:
        raise EmptyLanguageError("no state lies on an accepting run")
    symbols = list(x)
    alphabet = set(trimmed.input_alphabet)
    live = _live_states(input_automaton(trimmed))
    table: dict[tuple[str, str], list[tuple[tuple[str, ...], str]]] = {}
    for tr in trimmed.transitions:
        if tr.dst in live:
            table.setdefault((tr.src, tr.inp), []).append((tr.out, tr.dst))
    # candidate value: (frozen chunk history, open buffer, path cell)
    cands: dict[str, tuple] = {}
    for q in trimmed.states:
        if q in trimmed.initial and q in live:
            cands[q] = (None, [], (None, q) if keep_trace else None)
    if not cands:
        raise NoRunError(0)
    for pos, sym in enumerate(symbols, start=1):
        if sym not in alphabet:
            raise ValueError(f"symbol {sym!r} not in the input alphabet")
        nxt: dict[str, tuple] = {}
        for state, (hist, buf, path) in cands.items():
            succs = table.get((state, sym), ())
            if len(succs) == 1:
                out, dst = succs[0]
                if dst in nxt:
                    raise AmbiguousTransducerError(format_word(symbols[:pos]))
                if out:
                    buf.extend(out)
                nxt[dst] = (hist, buf, (path, dst) if keep_trace else None)
            elif succs:
                frozen = (hist, tuple(buf)) if buf else hist
                for out, dst in succs:
                    if dst in nxt:
                        raise AmbiguousTransducerError(format_word(symbols[:pos]))
                    nxt[dst] = (frozen, list(out), (path, dst) if keep_trace else None)
        if not nxt:
            raise NoRunError(pos)
        cands = nxt
    order = trimmed.state_index
    finished = []
    for state in sorted(cands, key=order.__getitem__):
        hist, buf, path = cands[state]
        out_syms = _materialize(hist, buf)
        trace = None
        if keep_trace:
            states = []
            while path is not None:
                path, q = path
                states.append(q)
            trace = tuple(reversed(states))
        finished.append((state, out_syms, trace))
    common = finished[0][1]
    for _, out_syms, _ in finished[1:]:
        limit = 0
        for a, b in zip(common, out_syms):
            if a != b:
                break
            limit += 1
        common = common[:limit]
    return RunResult(
        output=format_word(common),
        candidates=tuple(
            RunCandidate(state, format_word(out_syms), trace)
            for state, out_syms, trace in finished
        ),
    )


@dataclass(frozen=True)
class BlockStat:
    block: str
    count: int
    empirical: Fraction
    predicted: Fraction
    deviation: float


@dataclass(frozen=True)
class FrequencyReport:
    source: str
    input_length: int
    output_length: int
    max_block: int
    blocks: tuple[BlockStat, ...]


def _parse_source(source: str) -> tuple[str, int]:
    name, _, arg = source.partition(":")
    if name != "champernowne":
        raise ValueError(f"unknown source {source!r}")
    base = int(arg) if arg else 2
    return name, base


def compare_frequencies(
    t: Transducer,
    source: str = "champernowne:2",
    prefix_len: int = 10**6,
    max_block: int = 2,
    scc: Optional[int] = None,
) -> FrequencyReport:
    """Tabulate empirical output-block frequencies against exact ones.

    Generates ``prefix_len`` input symbols, runs the transducer, and
    counts every output block of length up to ``max_block`` over the
    common output prefix.  Empirical frequency is count over output
    length; deviations are absolute differences from the exact weights.
    """
    if max_block < 1:
        raise ValueError("max_block must be positive")
    _, base = _parse_source(source)
    if any(len(b) != 1 for b in t.output_alphabet):
        raise ValueError("block counting needs single-symbol output labels")
    predicted = block_frequencies(t, scc=scc, max_len=max_block)
    word = champernowne(base, prefix_len)
    output = run_transducer(t, word).output
    stats = []
    for n in range(1, max_block + 1):
        counts = count_blocks(output, n) if len(output) >= n else {}
        for combo in product(sorted(t.output_alphabet), repeat=n):
            block = "".join(combo)
            count = counts.get(block, 0)
            empirical = Fraction(count, len(output)) if output else Fraction(0)
            stats.append(
                BlockStat(
                    block=block,
                    count=count,
                    empirical=empirical,
                    predicted=predicted[block],
                    deviation=float(abs(empirical - predicted[block])),
                )
            )
    return FrequencyReport(
        source=source,
        input_length=len(word),
        output_length=len(output),
        max_block=max_block,
        blocks=tuple(stats),
    )
