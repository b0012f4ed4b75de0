"""Weighted automata over the rationals, viewed as formal series.

A weighted automaton assigns every finite word the rational
``initial . mu(w) . final``.  Equality of the induced series is
decidable by closing the reachable row-vector space of the difference
automaton under the transition matrices; the space has dimension at
most the total state count, so the closure terminates and any
inequality is witnessed by a word found in length-then-alphabet order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .automata import format_word
from .errors import DimensionError, FormatError
from .linalg import QMatrix, dot, vec_mat

__all__ = [
    "WeightedAutomaton",
    "bernoulli_automaton",
    "dump_weighted",
    "equivalent",
    "parse_weighted",
    "weight",
]


def _qtuple(values) -> tuple[Fraction, ...]:
    return tuple(x if isinstance(x, Fraction) else Fraction(x) for x in values)


@dataclass(frozen=True)
class WeightedAutomaton:
    """Initial row vector, per-symbol matrices, final column vector."""

    alphabet: tuple[str, ...]
    initial: tuple[Fraction, ...]
    mu: dict[str, QMatrix]
    final: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "initial", _qtuple(self.initial))
        object.__setattr__(self, "final", _qtuple(self.final))
        n = len(self.initial)
        if n == 0:
            raise DimensionError("weighted automaton needs at least one state")
        if len(self.final) != n:
            raise DimensionError("initial and final vectors have different lengths")
        if set(self.mu) != set(self.alphabet):
            raise DimensionError("transition matrices must cover exactly the alphabet")
        for sym, m in self.mu.items():
            if m.rows != n or m.cols != n:
                raise DimensionError(f"matrix for {sym!r} is not {n}x{n}")

    @property
    def n(self) -> int:
        return len(self.initial)


def weight(wa: WeightedAutomaton, word: Iterable[str]) -> Fraction:
    """The weight of a word; symbols outside the alphabet are an error."""
    v = wa.initial
    for sym in word:
        m = wa.mu.get(sym)
        if m is None:
            raise ValueError(f"symbol {sym!r} is not in the alphabet")
        v = vec_mat(v, m)
    return dot(v, wa.final)


def bernoulli_automaton(alphabet: Iterable[str]) -> WeightedAutomaton:
    """One state; every symbol weighs 1/(alphabet size).

    This is the reference automaton: a sequence is normal exactly when
    all its block frequencies match these uniform weights.
    """
    alphabet = tuple(alphabet)
    if not alphabet:
        raise DimensionError("alphabet must be non-empty")
    w = Fraction(1, len(alphabet))
    one = (Fraction(1),)
    return WeightedAutomaton(
        alphabet, one, {sym: QMatrix([[w]]) for sym in alphabet}, one
    )


def _block_diag(a: QMatrix, b: QMatrix) -> QMatrix:
    n, m = a.rows, b.rows
    zero = Fraction(0)
    rows = []
    for i in range(n):
        rows.append(list(a.row(i)) + [zero] * m)
    for i in range(m):
        rows.append([zero] * n + list(b.row(i)))
    return QMatrix(rows)


def _reduce(v: list[Fraction], basis: list[tuple[int, list[Fraction]]]):
    """Eliminate v against the basis, in insertion order.

    Every basis vector was reduced against all earlier ones when added,
    so it is zero at their pivots; a single pass therefore leaves v
    zero at every pivot column.
    """
    for pivot, u in basis:
        f = v[pivot]
        if f != 0:
            for j in range(len(v)):
                v[j] -= f * u[j]
    return v


def equivalent(a: WeightedAutomaton, b: WeightedAutomaton) -> Optional[str]:
    """Decide whether two weighted automata define the same series.

    Returns ``None`` on equality, otherwise the first word (in
    length-then-alphabet-order of discovery) whose weights differ.  The
    alphabets must agree as sets.
    """
    if set(a.alphabet) != set(b.alphabet):
        raise DimensionError("weighted automata have different alphabets")
    syms = a.alphabet
    init = list(a.initial) + [-x for x in b.initial]
    fin = list(a.final) + list(b.final)
    mats = {s: _block_diag(a.mu[s], b.mu[s]) for s in syms}
    basis: list[tuple[int, list[Fraction]]] = []
    queue: deque[tuple[tuple[str, ...], tuple[Fraction, ...]]] = deque()
    queue.append(((), tuple(init)))
    while queue:
        word, vec = queue.popleft()
        if dot(vec, fin) != 0:
            return format_word(word)
        residual = _reduce(list(vec), basis)
        pivot = next((j for j, x in enumerate(residual) if x != 0), None)
        if pivot is None:
            continue
        pv = residual[pivot]
        basis.append((pivot, [x / pv for x in residual]))
        for s in syms:
            queue.append((word + (s,), vec_mat(vec, mats[s])))
    return None


# ---------------------------------------------------------------------------
# Text dump

def _fmt(x: Fraction) -> str:
    return str(x)  # Fraction renders as 'p/q' or 'p'; both reparse exactly


def dump_weighted(wa: WeightedAutomaton) -> str:
    """Serialize to the line-oriented text form (exact rationals)."""
    lines = ["weighted", "alphabet " + " ".join(wa.alphabet)]
    lines.append("initial " + " ".join(_fmt(x) for x in wa.initial))
    for sym in wa.alphabet:
        lines.append(f"mu {sym}")
        m = wa.mu[sym]
        for i in range(m.rows):
            lines.append(" ".join(_fmt(x) for x in m.row(i)))
    lines.append("final " + " ".join(_fmt(x) for x in wa.final))
    return "\n".join(lines) + "\n"


def parse_weighted(text: str) -> WeightedAutomaton:
    """Inverse of :func:`dump_weighted`."""
    rows = []
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((number, line.split()))
    if not rows or rows[0][1] != ["weighted"]:
        raise FormatError("expected header 'weighted'", rows[0][0] if rows else None)
    it = iter(rows[1:])

    def expect(keyword: str):
        try:
            number, tokens = next(it)
        except StopIteration:
            raise FormatError(f"missing {keyword!r} section") from None
        if tokens[0] != keyword:
            raise FormatError(f"expected {keyword!r}", number)
        return number, tokens[1:]

    _, alphabet = expect("alphabet")
    if not alphabet:
        raise FormatError("alphabet must be non-empty")
    number, init_tok = expect("initial")
    try:
        initial = _qtuple(Fraction(tok) for tok in init_tok)
    except ValueError:
        raise FormatError("bad rational in 'initial'", number) from None
    n = len(initial)
    mu: dict[str, QMatrix] = {}
    for sym in alphabet:
        number, rest = expect("mu")
        if rest != [sym]:
            raise FormatError(f"expected 'mu {sym}'", number)
        matrix_rows = []
        for _ in range(n):
            try:
                number, tokens = next(it)
            except StopIteration:
                raise FormatError(f"matrix for {sym!r} is truncated") from None
            try:
                matrix_rows.append([Fraction(tok) for tok in tokens])
            except ValueError:
                raise FormatError("bad rational in matrix row", number) from None
        mu[sym] = QMatrix(matrix_rows)
    number, fin_tok = expect("final")
    try:
        final = _qtuple(Fraction(tok) for tok in fin_tok)
    except ValueError:
        raise FormatError("bad rational in 'final'", number) from None
    leftover = next(it, None)
    if leftover is not None:
        raise FormatError("unexpected trailing content", leftover[0])
    return WeightedAutomaton(tuple(alphabet), initial, mu, final)
