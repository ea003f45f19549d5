from .ast import (
    COMPARISONS,
    And,
    Atom,
    Next,
    Not,
    Or,
    PathFormula,
    Prob,
    StarPath,
    StateFormula,
    TrueF,
    Until,
    atoms,
    conj,
    is_pctl,
)
from .evaluator import (
    DEFAULT_BUDGET,
    EXACT,
    Bounded,
    BudgetExceededError,
    Evaluator,
    HeadAssignment,
    IndeterminateError,
    ProbResult,
    SubGraph,
    UnsupportedFormulaError,
    eval_state,
    path_probability,
    reachable_subgraph,
)
from .linsolve import SingularSystemError, solve_sparse
from .parser import FormulaSyntaxError, parse_formula, parse_path_formula
