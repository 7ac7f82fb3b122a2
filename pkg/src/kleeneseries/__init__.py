"""Rational power series, weighted automata and star-semiring identities."""
from .errors import (NotAMorphismExtension, NotInStarDomain, OutOfWindow, PremiseViolated,
                     SearchBudgetExceeded, TermSyntaxError)
from .matrix import (Matrix, MatrixSemiring, block_star, col_couple, functional, mat_add, mat_mul,
                     mat_star, permutation, row_couple)
from .semiring import (BOOL, INF, INITIAL, NINF, STARSTAR, Morphism, N, Semiring, StarPow,
                       combine, one_star_semiring, quotient, quotient_to_k, semiring_from_name,
                       star)
from .series import (Polynomial, SeriesSemiring, TruncatedSeries, coefficient, decompose_by_value,
                     map_coefficients, polynomial_eval, series_combine, series_star,
                     split_finite_infinite, words)
from .terms import (NormalForm, Term, eval_term, is_ideal, normalize, normalize_disjoint,
                    parse_term, to_text)

__version__ = "0.1.0"
