from .atam import (
    Eta, QueryResult, QueryVerdict, Rule, axiom_groups, axioms, eta_formulas, local_determinism_failures,
    local_determinism_formulas, location_rules, seed_formula, shape_formula, terminal_formula,
    unique_terminal_assembly_query,
)
from .checker import AtomOutOfRange, CheckResult, Kripke, check, satisfying_states
from .formula import (
    AF, AG, AU, EF, EG, EU, EX, AX, FALSE, TRUE, And, Atom, Const, Formula, Implies, Not, Or, Temporal, Until,
    conj, disj,
)
from .parser import FormulaSyntaxError, parse_formula
