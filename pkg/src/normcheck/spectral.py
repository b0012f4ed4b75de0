"""Spectral analysis of strongly connected unambiguous automata.

The adjacency matrix divides transition counts by the alphabet size, so
a strongly connected unambiguous automaton has spectral radius at most
one.  Whether the radius equals one is then an exact question: it does
precisely when 1 is an eigenvalue, i.e. when ``det(M - I) = 0``.  For a
unit-radius matrix the fixed spaces on both sides are one-dimensional
and spanned by strictly positive vectors; jointly normalized they
induce a row-stochastic matrix over the states whose stationary
distribution is the entrywise product of the two vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .automata import Automaton
from .errors import DimensionError, PositivityError
from .linalg import QMatrix, det, dot, nullspace_1d

__all__ = [
    "PerronData",
    "adjacency_matrix",
    "markov_matrix",
    "perron_vectors",
    "radius_is_one",
]


def adjacency_matrix(a: Automaton) -> QMatrix:
    """Entry ``(p, q)``: number of symbols taking p to q, over alphabet size."""
    if not a.states:
        raise DimensionError("automaton has no states")
    n = len(a.states)
    idx = a.state_index
    counts = [[0] * n for _ in range(n)]
    for tr in a.transitions:
        counts[idx[tr.src]][idx[tr.dst]] += 1
    k = len(a.alphabet)
    return QMatrix([[Fraction(c, k) for c in row] for row in counts])


def radius_is_one(m: QMatrix) -> bool:
    """Exact unit-radius test for matrices known to have radius <= 1."""
    return det(m - QMatrix.identity(m.rows)) == 0


def _markov(m: QMatrix, alpha: tuple[Fraction, ...]) -> QMatrix:
    n = m.rows
    return QMatrix(
        [[m[i, j] * alpha[j] / alpha[i] for j in range(n)] for i in range(n)]
    )


@dataclass(frozen=True)
class PerronData:
    """Adjacency matrix with its positive fixed vectors.

    ``alpha`` is the right fixed vector (``m alpha = alpha``), ``pi``
    the left one (``pi m = pi``), scaled so that ``sum(pi_q alpha_q)``
    is 1.  ``p`` is the induced row-stochastic state matrix.
    """

    m: QMatrix
    alpha: tuple[Fraction, ...]
    pi: tuple[Fraction, ...]
    p: QMatrix


def perron_vectors(m: QMatrix) -> PerronData:
    """Compute the positive fixed vector pair of a unit-radius matrix.

    Requires ``m`` irreducible with spectral radius exactly one.  A
    fixed space of dimension other than one raises ``RankError``; a
    fixed vector that is not strictly positive raises
    :class:`PositivityError`.
    """
    shifted = m - QMatrix.identity(m.rows)
    alpha = nullspace_1d(shifted, side="right")
    pi = nullspace_1d(shifted, side="left")
    # First-nonzero-equals-1 scaling orients a genuinely positive
    # eigenvector positively, so mixed signs can only mean the
    # preconditions fail.
    for name, v in (("right", alpha), ("left", pi)):
        if any(x <= 0 for x in v):
            raise PositivityError(f"{name} fixed vector is not strictly positive")
    mass = dot(pi, alpha)
    pi = tuple(x / mass for x in pi)
    return PerronData(m, alpha, pi, _markov(m, alpha))


def markov_matrix(data: PerronData) -> QMatrix:
    """Row-stochastic matrix ``P[p, q] = M[p, q] alpha_q / alpha_p``."""
    return _markov(data.m, data.alpha)
