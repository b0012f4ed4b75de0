"""Finite-state machines over infinite sequences.

Data model and text format for automata and transducers, plus the graph
algorithms every later stage depends on: trimming to the states that
occur on accepting runs, strongly connected components, and the
divergence-tracking self-product that decides unambiguity.

Acceptance is in the limit-visit sense: a run is accepting when it
starts in an initial state and passes through a final state infinitely
often.  A machine is unambiguous when no input sequence labels two
distinct accepting runs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable, NamedTuple, Optional, Sequence, TypeVar

from .errors import FormatError

__all__ = [
    "ATransition",
    "Automaton",
    "SccComponent",
    "SccDecomposition",
    "Transducer",
    "Transition",
    "check_unambiguous",
    "format_word",
    "input_automaton",
    "is_complete",
    "is_deterministic",
    "parse_automaton",
    "parse_file",
    "parse_transducer",
    "restrict_automaton",
    "restrict_transducer",
    "scc_decompose",
    "trim",
    "trim_automaton",
]


class Transition(NamedTuple):
    """One transducer step: consume ``inp``, emit the word ``out``."""

    src: str
    inp: str
    out: tuple[str, ...]
    dst: str


class ATransition(NamedTuple):
    src: str
    sym: str
    dst: str


def format_word(symbols: Sequence[str]) -> str:
    """Render a word for display; single-character symbols concatenate."""
    if all(len(s) == 1 for s in symbols):
        return "".join(symbols)
    return " ".join(symbols)


def _check_common(states, alphabets, initial, final, transitions):
    if len(set(states)) != len(states):
        raise ValueError("duplicate state ids")
    for name, alphabet in alphabets:
        if len(set(alphabet)) != len(alphabet):
            raise ValueError(f"duplicate symbols in {name} alphabet")
    state_set = set(states)
    if not initial <= state_set:
        raise ValueError("initial states must be declared states")
    if not final <= state_set:
        raise ValueError("final states must be declared states")
    if len(set(transitions)) != len(transitions):
        raise ValueError("duplicate transitions")


@dataclass(frozen=True)
class Transducer:
    """A finite-state transducer with limit-visit acceptance.

    ``states`` keeps the declaration order, which fixes the dense index
    used by every matrix built from the machine.  Input labels are
    single symbols; output labels are (possibly empty) words.
    """

    states: tuple[str, ...]
    input_alphabet: tuple[str, ...]
    output_alphabet: tuple[str, ...]
    transitions: tuple[Transition, ...]
    initial: frozenset[str]
    final: frozenset[str]

    def __post_init__(self):
        _check_common(
            self.states,
            [("input", self.input_alphabet), ("output", self.output_alphabet)],
            self.initial,
            self.final,
            self.transitions,
        )
        state_set = set(self.states)
        in_set = set(self.input_alphabet)
        out_set = set(self.output_alphabet)
        for t in self.transitions:
            if t.src not in state_set or t.dst not in state_set:
                raise ValueError(f"transition {t} references an undeclared state")
            if t.inp not in in_set:
                raise ValueError(f"transition {t} reads an undeclared symbol")
            if any(b not in out_set for b in t.out):
                raise ValueError(f"transition {t} emits an undeclared symbol")

    @cached_property
    def state_index(self) -> dict[str, int]:
        return {q: i for i, q in enumerate(self.states)}


@dataclass(frozen=True)
class Automaton:
    """A finite automaton with limit-visit acceptance."""

    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    transitions: tuple[ATransition, ...]
    initial: frozenset[str]
    final: frozenset[str]

    def __post_init__(self):
        _check_common(
            self.states,
            [("input", self.alphabet)],
            self.initial,
            self.final,
            self.transitions,
        )
        state_set = set(self.states)
        sym_set = set(self.alphabet)
        for t in self.transitions:
            if t.src not in state_set or t.dst not in state_set:
                raise ValueError(f"transition {t} references an undeclared state")
            if t.sym not in sym_set:
                raise ValueError(f"transition {t} reads an undeclared symbol")

    @cached_property
    def state_index(self) -> dict[str, int]:
        return {q: i for i, q in enumerate(self.states)}

    @cached_property
    def successors(self) -> dict[tuple[str, str], tuple[str, ...]]:
        table: dict[tuple[str, str], list[str]] = {}
        for t in self.transitions:
            table.setdefault((t.src, t.sym), []).append(t.dst)
        return {k: tuple(v) for k, v in table.items()}


# ---------------------------------------------------------------------------
# Text format


def _significant_lines(text: str):
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line.split()


def _tokenize_output(label: str, alphabet: Sequence[str], line: int) -> tuple[str, ...]:
    if label == "-":
        return ()
    # Greedy longest-match tokenization; unambiguous for the usual
    # single-character alphabets and still workable for longer symbols.
    symbols = sorted(alphabet, key=len, reverse=True)
    out: list[str] = []
    pos = 0
    while pos < len(label):
        for sym in symbols:
            if label.startswith(sym, pos):
                out.append(sym)
                pos += len(sym)
                break
        else:
            raise FormatError(
                f"output label {label!r} is not a word over the output alphabet", line
            )
    return tuple(out)


def _parse_sections(text: str, kind: str):
    lines = iter(_significant_lines(text))
    try:
        number, tokens = next(lines)
    except StopIteration:
        raise FormatError("empty description") from None
    if tokens != [kind]:
        raise FormatError(f"expected header {kind!r}", number)
    sections: dict[str, list[str]] = {}
    transitions: list[tuple[int, list[str]]] = []
    wanted = (
        {"in", "out", "states", "initial", "final"}
        if kind == "transducer"
        else {"in", "states", "initial", "final"}
    )
    for number, tokens in lines:
        key, rest = tokens[0], tokens[1:]
        if key == "t":
            for section in wanted:
                if section not in sections:
                    raise FormatError(
                        f"transition before the {section!r} declaration", number
                    )
            transitions.append((number, rest))
        elif key in wanted:
            if key in sections:
                raise FormatError(f"duplicate {key!r} declaration", number)
            if key in ("in", "out") and any(s == "-" for s in rest):
                raise FormatError("'-' is reserved for the empty word", number)
            sections[key] = rest
        else:
            raise FormatError(f"unknown directive {key!r}", number)
    missing = sorted(wanted - sections.keys())
    if missing:
        raise FormatError(f"missing declaration(s): {', '.join(missing)}")
    return sections, transitions


def parse_transducer(text: str) -> Transducer:
    """Parse the line-oriented transducer format.

    The format is UTF-8 text with ``#`` comments: a ``transducer``
    header, ``in``/``out``/``states``/``initial``/``final``
    declarations, then one ``t <src> <input> <output|-> <dst>`` line per
    transition, ``-`` standing for the empty output word.
    """
    sections, raw_transitions = _parse_sections(text, "transducer")
    states = tuple(sections["states"])
    in_alpha = tuple(sections["in"])
    out_alpha = tuple(sections["out"])
    state_set = set(states)
    seen: set[Transition] = set()
    transitions: list[Transition] = []
    for number, fields in raw_transitions:
        if len(fields) != 4:
            raise FormatError("expected 't <src> <input> <output|-> <dst>'", number)
        src, inp, out_label, dst = fields
        if src not in state_set:
            raise FormatError(f"unknown state {src!r}", number)
        if dst not in state_set:
            raise FormatError(f"unknown state {dst!r}", number)
        if inp not in set(in_alpha):
            raise FormatError(f"unknown input symbol {inp!r}", number)
        t = Transition(src, inp, _tokenize_output(out_label, out_alpha, number), dst)
        if t in seen:
            raise FormatError("duplicate transition", number)
        seen.add(t)
        transitions.append(t)
    for name in ("initial", "final"):
        unknown = [q for q in sections[name] if q not in state_set]
        if unknown:
            raise FormatError(f"unknown state {unknown[0]!r} in {name!r} declaration")
    return Transducer(
        states,
        in_alpha,
        out_alpha,
        tuple(transitions),
        frozenset(sections["initial"]),
        frozenset(sections["final"]),
    )


def parse_automaton(text: str) -> Automaton:
    """Parse the automaton format (``automaton`` header, ``t p a q`` lines)."""
    sections, raw_transitions = _parse_sections(text, "automaton")
    states = tuple(sections["states"])
    alphabet = tuple(sections["in"])
    state_set = set(states)
    seen: set[ATransition] = set()
    transitions: list[ATransition] = []
    for number, fields in raw_transitions:
        if len(fields) != 3:
            raise FormatError("expected 't <src> <symbol> <dst>'", number)
        src, sym, dst = fields
        if src not in state_set:
            raise FormatError(f"unknown state {src!r}", number)
        if dst not in state_set:
            raise FormatError(f"unknown state {dst!r}", number)
        if sym not in set(alphabet):
            raise FormatError(f"unknown symbol {sym!r}", number)
        t = ATransition(src, sym, dst)
        if t in seen:
            raise FormatError("duplicate transition", number)
        seen.add(t)
        transitions.append(t)
    for name in ("initial", "final"):
        unknown = [q for q in sections[name] if q not in state_set]
        if unknown:
            raise FormatError(f"unknown state {unknown[0]!r} in {name!r} declaration")
    return Automaton(
        states,
        alphabet,
        tuple(transitions),
        frozenset(sections["initial"]),
        frozenset(sections["final"]),
    )


def parse_file(text: str) -> Transducer | Automaton:
    """Dispatch on the header line to the right parser."""
    for _, tokens in _significant_lines(text):
        if tokens == ["transducer"]:
            return parse_transducer(text)
        if tokens == ["automaton"]:
            return parse_automaton(text)
        raise FormatError(f"unknown header {' '.join(tokens)!r}")
    raise FormatError("empty description")


# ---------------------------------------------------------------------------
# Graph algorithms

T = TypeVar("T", bound=Hashable)


def _tarjan(nodes: Sequence[T], succ: Callable[[T], Iterable[T]]) -> list[list[T]]:
    """Strongly connected components, iteratively, in deterministic order."""
    index: dict[T, int] = {}
    low: dict[T, int] = {}
    on_stack: set[T] = set()
    stack: list[T] = []
    components: list[list[T]] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work: list[tuple[T, Iterable[T]]] = [(root, iter(succ(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for child in it:
                if child not in index:
                    index[child] = low[child] = counter
                    counter += 1
                    stack.append(child)
                    on_stack.add(child)
                    work.append((child, iter(succ(child))))
                    advanced = True
                    break
                if child in on_stack:
                    low[node] = min(low[node], index[child])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                component = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.append(member)
                    if member == node:
                        break
                components.append(component)
    return components


def _bfs(start: Iterable[T], succ: Callable[[T], Iterable[T]]) -> set[T]:
    seen = set(start)
    queue = deque(seen)
    while queue:
        node = queue.popleft()
        for child in succ(node):
            if child not in seen:
                seen.add(child)
                queue.append(child)
    return seen


def _edge_maps(edges: Iterable[tuple[str, str]]):
    fwd: dict[str, set[str]] = {}
    back: dict[str, set[str]] = {}
    for src, dst in edges:
        fwd.setdefault(src, set()).add(dst)
        back.setdefault(dst, set()).add(src)
    return fwd, back


def _trim_keep(
    states: Sequence[str],
    edges: list[tuple[str, str]],
    initial: frozenset[str],
    final: frozenset[str],
) -> set[str]:
    """States that lie on some accepting run.

    A state survives when it is reachable from an initial state and can
    reach a final state that sits on a cycle; every transition between
    two survivors then occurs on an accepting run.
    """
    fwd, back = _edge_maps(edges)
    reachable = _bfs(initial, lambda q: fwd.get(q, ()))
    components = _tarjan(states, lambda q: fwd.get(q, ()))
    recurrent_finals: set[str] = set()
    for component in components:
        members = set(component)
        nontrivial = len(component) > 1 or any(
            q in fwd.get(q, ()) for q in component
        )
        if nontrivial:
            recurrent_finals |= members & final
    live = _bfs(recurrent_finals, lambda q: back.get(q, ()))
    return reachable & live


def trim(t: Transducer) -> Transducer:
    """Restrict to states occurring on accepting runs (may be empty)."""
    keep = _trim_keep(
        t.states, [(tr.src, tr.dst) for tr in t.transitions], t.initial, t.final
    )
    return Transducer(
        tuple(q for q in t.states if q in keep),
        t.input_alphabet,
        t.output_alphabet,
        tuple(tr for tr in t.transitions if tr.src in keep and tr.dst in keep),
        t.initial & keep,
        t.final & keep,
    )


def trim_automaton(a: Automaton) -> Automaton:
    keep = _trim_keep(
        a.states, [(tr.src, tr.dst) for tr in a.transitions], a.initial, a.final
    )
    return Automaton(
        tuple(q for q in a.states if q in keep),
        a.alphabet,
        tuple(tr for tr in a.transitions if tr.src in keep and tr.dst in keep),
        a.initial & keep,
        a.final & keep,
    )


def input_automaton(t: Transducer) -> Automaton:
    """Forget the outputs; parallel duplicates collapse to one edge."""
    seen: set[ATransition] = set()
    transitions: list[ATransition] = []
    for tr in t.transitions:
        at = ATransition(tr.src, tr.inp, tr.dst)
        if at not in seen:
            seen.add(at)
            transitions.append(at)
    return Automaton(
        t.states, t.input_alphabet, tuple(transitions), t.initial, t.final
    )


def restrict_automaton(
    a: Automaton, states: Iterable[str], initial: Iterable[str] | None = None
) -> Automaton:
    keep = set(states)
    return Automaton(
        tuple(q for q in a.states if q in keep),
        a.alphabet,
        tuple(tr for tr in a.transitions if tr.src in keep and tr.dst in keep),
        frozenset(initial) if initial is not None else a.initial & keep,
        a.final & keep,
    )


def restrict_transducer(t: Transducer, states: Iterable[str]) -> Transducer:
    keep = set(states)
    return Transducer(
        tuple(q for q in t.states if q in keep),
        t.input_alphabet,
        t.output_alphabet,
        tuple(tr for tr in t.transitions if tr.src in keep and tr.dst in keep),
        t.initial & keep,
        t.final & keep,
    )


@dataclass(frozen=True)
class SccComponent:
    states: tuple[str, ...]
    contains_final: bool
    is_trivial: bool


@dataclass(frozen=True)
class SccDecomposition:
    components: tuple[SccComponent, ...]
    component_of: dict[str, int]


def scc_decompose(a: Automaton) -> SccDecomposition:
    """Strongly connected components, ordered by least state index.

    A component is trivial when it is a single state without a
    self-transition; trivial components carry no infinite run.
    """
    fwd: dict[str, set[str]] = {}
    for tr in a.transitions:
        fwd.setdefault(tr.src, set()).add(tr.dst)
    raw = _tarjan(a.states, lambda q: fwd.get(q, ()))
    idx = a.state_index
    ordered = sorted(
        (sorted(component, key=idx.__getitem__) for component in raw),
        key=lambda c: idx[c[0]],
    )
    components = []
    component_of: dict[str, int] = {}
    for i, members in enumerate(ordered):
        trivial = len(members) == 1 and members[0] not in fwd.get(members[0], ())
        components.append(
            SccComponent(
                tuple(members),
                any(q in a.final for q in members),
                trivial,
            )
        )
        for q in members:
            component_of[q] = i
    return SccDecomposition(tuple(components), component_of)


# ---------------------------------------------------------------------------
# Unambiguity

ProductNode = tuple[str, str, bool]


def _product_graph(a: Automaton):
    starts = [
        (p, q, p != q)
        for p in sorted(a.initial, key=a.state_index.__getitem__)
        for q in sorted(a.initial, key=a.state_index.__getitem__)
    ]
    succ = a.successors
    edges: dict[ProductNode, list[tuple[str, ProductNode]]] = {}
    queue = deque(starts)
    seen = set(starts)
    while queue:
        node = queue.popleft()
        p, q, d = node
        out: list[tuple[str, ProductNode]] = []
        for sym in a.alphabet:
            for p2 in succ.get((p, sym), ()):
                for q2 in succ.get((q, sym), ()):
                    diverged = d or (p, sym, p2) != (q, sym, q2)
                    child = (p2, q2, diverged)
                    out.append((sym, child))
                    if child not in seen:
                        seen.add(child)
                        queue.append(child)
        edges[node] = out
    return starts, edges


def _shortest_path(
    sources: Iterable[ProductNode],
    targets: set[ProductNode],
    edges: dict[ProductNode, list[tuple[str, ProductNode]]],
    within: set[ProductNode] | None = None,
    require_step: bool = False,
) -> tuple[list[str], ProductNode]:
    """Shortest symbol path from any source into ``targets``.

    With ``require_step`` the empty path does not count, which turns
    the search into a shortest-cycle search when sources and targets
    overlap.
    """
    if not require_step:
        for s in sources:
            if s in targets:
                return [], s
    # parent[n] = (previous node or None for one-step nodes, symbol)
    parent: dict[ProductNode, tuple[ProductNode | None, str]] = {}
    queue: deque[ProductNode] = deque()
    seen: set[ProductNode] = set()

    def reconstruct(last: ProductNode | None, sym: str) -> list[str]:
        path = [sym]
        cur = last
        while cur is not None:
            prev, s = parent[cur]
            path.append(s)
            cur = prev
        path.reverse()
        return path

    for node in sources:
        for sym, child in edges.get(node, ()):
            if within is not None and child not in within:
                continue
            if child in targets:
                return [sym], child
            if child not in seen:
                seen.add(child)
                parent[child] = (None, sym)
                queue.append(child)
    while queue:
        node = queue.popleft()
        for sym, child in edges.get(node, ()):
            if within is not None and child not in within:
                continue
            if child in targets:
                return reconstruct(node, sym), child
            if child not in seen:
                seen.add(child)
                parent[child] = (node, sym)
                queue.append(child)
    raise RuntimeError("path search failed on a connected component")


def check_unambiguous(a: Automaton) -> Optional[str]:
    """Decide whether some input carries two distinct accepting runs.

    Returns ``None`` when the (trim) automaton is unambiguous, else a
    finite witness word: the prefix of an input on which two runs have
    already diverged and can jointly revisit final states forever.

    The search walks the self-product whose nodes ``(p, q, d)`` carry a
    divergence bit ``d``; a counterexample is a reachable nontrivial
    product component that is divergent and contains a final first
    coordinate as well as a final second coordinate.
    """
    starts, edges = _product_graph(a)
    nodes = list(edges.keys())
    components = _tarjan(
        nodes, lambda n: (child for _, child in edges.get(n, ()))
    )
    final = a.final
    for component in components:
        members = set(component)
        nontrivial = len(component) > 1 or any(
            any(child == node for _, child in edges.get(node, ()))
            for node in component
        )
        if not nontrivial:
            continue
        if not any(d for _, _, d in component):
            continue
        if not any(p in final for p, _, _ in component):
            continue
        if not any(q in final for _, q, _ in component):
            continue
        # Witness: reach the component, touch both final coordinates,
        # close one full loop.
        stem, entry = _shortest_path(starts, members, edges)
        first_finals = {n for n in members if n[0] in final}
        second_finals = {n for n in members if n[1] in final}
        w1, at1 = _shortest_path([entry], first_finals, edges, within=members)
        w2, at2 = _shortest_path([at1], second_finals, edges, within=members)
        w3, _ = _shortest_path(
            [at2], {entry}, edges, within=members, require_step=True
        )
        return format_word(stem + w1 + w2 + w3)
    return None


def is_deterministic(a: Automaton) -> bool:
    """One initial state and at most one successor per state and symbol."""
    if len(a.initial) != 1:
        return False
    return all(len(dsts) <= 1 for dsts in a.successors.values())


def is_complete(a: Automaton) -> bool:
    """Every state has at least one transition for every symbol."""
    return all(
        (q, sym) in a.successors for q in a.states for sym in a.alphabet
    )
