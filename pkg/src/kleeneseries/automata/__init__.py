from .compile import automaton_to_term, compile_term
from .core import WeightedAutomaton, behavior_coefficients, trim
from .dfa import (SupportDFA, dfa_difference, dfa_equivalent, dfa_is_empty,
                  dfa_shortest_word, restrict_to_dfa, support_dfa)
from .equivalence import automata_difference, difference, equivalent, n_difference
from .linear import morphic_image, solve_linear
from .simulation import (RefinementWitness, SimulationWitness, check_simulation,
                         polynomial_matrix, refine, search_simulation)

__all__ = [
    "WeightedAutomaton", "behavior_coefficients", "trim", "compile_term", "automaton_to_term",
    "SupportDFA", "support_dfa", "restrict_to_dfa", "dfa_difference", "dfa_equivalent",
    "dfa_is_empty", "dfa_shortest_word", "n_difference", "difference", "equivalent",
    "automata_difference", "morphic_image", "solve_linear", "SimulationWitness",
    "RefinementWitness", "check_simulation", "search_simulation", "refine", "polynomial_matrix",
]
