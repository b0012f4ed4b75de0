"""Random machine generators and brute-force oracles shared by tests."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from normcheck.automata import ATransition, Automaton, scc_decompose
from normcheck.linalg import QMatrix, dot, vec_mat
from normcheck.linalg import stationary
from normcheck.weighted import WeightedAutomaton


def random_automaton(
    rng: random.Random, max_states: int = 4, alphabet=("0", "1"), density: float = 0.35
) -> Automaton:
    n = rng.randint(1, max_states)
    states = tuple(str(i + 1) for i in range(n))
    transitions = tuple(
        ATransition(p, a, q)
        for p in states
        for a in alphabet
        for q in states
        if rng.random() < density
    )
    initial = frozenset(rng.sample(states, rng.randint(1, n)))
    final = frozenset(rng.sample(states, rng.randint(1, n)))
    return Automaton(states, alphabet, transitions, initial, final)


def ambiguous_oracle(a: Automaton) -> bool:
    """Exact reference for limit-visit ambiguity.

    Builds the divergence-tracking self-product and decides by brute
    transitive closure whether some reachable diverged pair (x, y) with
    x carrying a final first coordinate and y a final second coordinate
    lies on a common cycle.  That is exactly the condition for two
    distinct runs on one sequence to each visit a final state
    infinitely often.
    """
    edges: dict[tuple, set[tuple]] = {}
    by_src: dict[str, list[ATransition]] = {}
    for tr in a.transitions:
        by_src.setdefault(tr.src, []).append(tr)
    start = [(p, q, p != q) for p in a.initial for q in a.initial]
    reachable: set[tuple] = set()
    stack = list(start)
    while stack:
        node = stack.pop()
        if node in reachable:
            continue
        reachable.add(node)
        p, q, d = node
        for t1 in by_src.get(p, []):
            for t2 in by_src.get(q, []):
                if t1.sym != t2.sym:
                    continue
                child = (t1.dst, t2.dst, d or t1 != t2)
                edges.setdefault(node, set()).add(child)
                if child not in reachable:
                    stack.append(child)
    nodes = sorted(reachable)
    closure = {u: set(edges.get(u, ())) for u in nodes}
    for k in nodes:
        for u in nodes:
            if k in closure[u]:
                closure[u] |= closure[k]
    for x in nodes:
        if not x[2] or x[0] not in a.final:
            continue
        for y in closure[x]:
            if y[1] in a.final and x in closure[y]:
                return True
    return False


def random_weighted(
    rng: random.Random, alphabet=("0", "1"), max_states: int = 4
) -> WeightedAutomaton:
    n = rng.randint(1, max_states)

    def entry():
        return Fraction(rng.randint(-2, 2), rng.randint(1, 3))

    return WeightedAutomaton(
        alphabet=alphabet,
        initial=tuple(entry() for _ in range(n)),
        mu={
            a: QMatrix([[entry() for _ in range(n)] for _ in range(n)])
            for a in alphabet
        },
        final=tuple(entry() for _ in range(n)),
    )


def permuted_copy(rng: random.Random, wa: WeightedAutomaton) -> WeightedAutomaton:
    """Same series, states shuffled."""
    n = wa.n
    perm = list(range(n))
    rng.shuffle(perm)
    return WeightedAutomaton(
        alphabet=wa.alphabet,
        initial=tuple(wa.initial[perm[i]] for i in range(n)),
        mu={
            a: QMatrix([[m[perm[i], perm[j]] for j in range(n)] for i in range(n)])
            for a, m in wa.mu.items()
        },
        final=tuple(wa.final[perm[i]] for i in range(n)),
    )


def series_agree(a: WeightedAutomaton, b: WeightedAutomaton, max_len: int) -> bool:
    """Compare weights on every word up to max_len, sharing prefixes."""

    def walk(depth: int, va, vb) -> bool:
        if dot(va, a.final) != dot(vb, b.final):
            return False
        if depth == max_len:
            return True
        return all(
            walk(depth + 1, vec_mat(va, a.mu[sym]), vec_mat(vb, b.mu[sym]))
            for sym in a.alphabet
        )

    return walk(0, a.initial, b.initial)


def random_connected_dfa(
    rng: random.Random, max_states: int = 6, alphabet=("0", "1")
) -> Automaton:
    """Strongly connected complete DFA with a nonempty final set."""
    n = rng.randint(2, max_states)
    states = tuple(str(i + 1) for i in range(n))
    for _ in range(100):
        transitions = tuple(
            ATransition(p, a, rng.choice(states)) for p in states for a in alphabet
        )
        a0 = Automaton(states, alphabet, transitions, frozenset({states[0]}),
                       frozenset({states[0]}))
        if len(scc_decompose(a0).components) == 1:
            break
    else:
        # force a cycle on the first symbol, keep the rest random
        transitions = tuple(
            ATransition(p, a, states[(i + 1) % n] if a == alphabet[0] else rng.choice(states))
            for i, p in enumerate(states)
            for a in alphabet
        )
    final = frozenset(rng.sample(states, rng.randint(1, n)))
    return Automaton(states, alphabet, transitions, frozenset({rng.choice(states)}), final)


def random_group_automaton(
    rng: random.Random, max_states: int = 6, alphabet=("0", "1")
) -> Automaton:
    """Every symbol permutes the states; some reachable state is final."""
    n = rng.randint(2, max_states)
    states = tuple(str(i + 1) for i in range(n))
    images = {a: rng.sample(states, n) for a in alphabet}
    transitions = tuple(
        ATransition(p, a, images[a][i]) for a in alphabet for i, p in enumerate(states)
    )
    initial = rng.choice(states)
    orbit = {initial}
    frontier = [initial]
    while frontier:
        p = frontier.pop()
        for a in alphabet:
            q = images[a][states.index(p)]
            if q not in orbit:
                orbit.add(q)
                frontier.append(q)
    final = {rng.choice(sorted(orbit))}
    final.update(q for q in states if rng.random() < 0.3)
    return Automaton(
        states, alphabet, transitions, frozenset({initial}), frozenset(final)
    )


def stationary_factors_through_silent_part(analysis) -> bool:
    """The stationary row of P-hat equals the normalized pi'(I - E)
    where pi' is stationary for the full one-step matrix E + sum D_b."""
    cm = analysis.matrices
    n = cm.p_hat.rows
    if any(sum(cm.p_hat.row(i)) != 1 for i in range(n)):
        return False
    full = cm.e
    for m in cm.d.values():
        full = full + m
    pi_prime = stationary(full)
    shifted = vec_mat(pi_prime, cm.e)
    v = tuple(x - y for x, y in zip(pi_prime, shifted))
    total = sum(v)
    if total == 0:
        return False
    return tuple(x / total for x in v) == cm.pi_hat


def all_words(alphabet, max_len: int):
    for n in range(max_len + 1):
        yield from product(alphabet, repeat=n)
