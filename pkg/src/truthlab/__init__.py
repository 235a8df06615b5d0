"""Finite, checkable versions of compositional truth and overspill constructions."""

from .coding import (
    DecodeError, decode_formula, decode_seq, decode_term, encode_formula, encode_seq,
    encode_term, seq_get, seq_length,
)
from .evaluation import (
    BoundedOracle, ConstantOracle, Delta0Error, EvalConfig, Evaluator, LabeledOracle,
    MissingOracleError, ValuationOracle, eval_bounded, eval_delta0, val,
)
from .grammar import ParseError, parse_formula, parse_term, pretty_print
from .overspill import (
    OMEGA, Finite, NotFound, Rank, ResourceLimitError, StoppingSpec, build_alpha, build_beta,
    build_gamma_sequence, build_psi_sequence, check_outer_disjunction, check_psi_sequence,
    distinctness_sentence, find_max_rank_index, numeral_distinctness, outer_disjunction_D,
    outer_disjunction_tautologies, rank, stopping_disjunction, truth_atom,
)
from .pipelines import demo_theorem31, demo_theorem33
from .prop import ALL, countermodel, is_tautology, max_prefix_entailment, proves_prop, skeletonize
from .syntax import (
    Add, And, Eq, Exists, Forall, Formula, Mul, Not, Or, PrProp, Succ, Term, Var, Zero,
    big_and, big_or, free_vars, implies, is_sentence, numeral, substitute,
)
from .truthclass import (
    LabeledSentenceSet, ViolationReport, check_compositional, check_dc, check_dcin,
    check_propsnd, check_regularity, load_manifest,
)

__version__ = "0.1.0"
