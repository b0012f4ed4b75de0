"""Exact decision of normality preservation by unambiguous transducers.

The package decides, in exact rational arithmetic, whether a finite
state transducer maps every normal infinite word to a normal word, and
exposes the construction behind the decision: spectral data of the
input automaton, the normalized transducer, and the weighted automaton
of limiting output-block frequencies.
"""

from .automata import (
    Automaton,
    Transducer,
    Transition,
    input_automaton,
    parse_automaton,
    parse_file,
    parse_transducer,
    scc_decompose,
    trim,
)
from .decision import (
    ComponentAnalysis,
    FrequencyWitness,
    SccReport,
    Verdict,
    block_frequencies,
    component_analysis,
    preserves_normality,
)
from .empirical import (
    FrequencyReport,
    RunResult,
    champernowne,
    champernowne_stream,
    compare_frequencies,
    count_occurrences,
    run_transducer,
)
from .errors import (
    AmbiguousTransducerError,
    DfaError,
    EmptyLanguageError,
    FormatError,
    NoInfiniteOutputError,
    NoRunError,
    NormcheckError,
    NotAnalyzableError,
)
from .linalg import QMatrix
from .selection import (
    is_group_automaton,
    nonoblivious_selector,
    oblivious_selector,
    prefix_select,
)
from .spectral import adjacency_matrix, perron_vectors, radius_is_one
from .weighted import (
    WeightedAutomaton,
    bernoulli_automaton,
    dump_weighted,
    equivalent,
    parse_weighted,
    weight,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousTransducerError",
    "Automaton",
    "ComponentAnalysis",
    "DfaError",
    "EmptyLanguageError",
    "FormatError",
    "FrequencyReport",
    "FrequencyWitness",
    "NoInfiniteOutputError",
    "NoRunError",
    "NormcheckError",
    "NotAnalyzableError",
    "QMatrix",
    "RunResult",
    "SccReport",
    "Transducer",
    "Transition",
    "Verdict",
    "WeightedAutomaton",
    "adjacency_matrix",
    "bernoulli_automaton",
    "block_frequencies",
    "champernowne",
    "champernowne_stream",
    "compare_frequencies",
    "component_analysis",
    "count_occurrences",
    "dump_weighted",
    "equivalent",
    "input_automaton",
    "is_group_automaton",
    "nonoblivious_selector",
    "oblivious_selector",
    "parse_automaton",
    "parse_file",
    "parse_transducer",
    "perron_vectors",
    "prefix_select",
    "preserves_normality",
    "radius_is_one",
    "run_transducer",
    "scc_decompose",
    "trim",
    "weight",
]
