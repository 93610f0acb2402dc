"""Exact computations with equations, clones and quantifier elimination
over finite lattices and semilattices."""

from .equations import EquationSystem, EqTheory, equations_of, galois_closure, is_solution_set, solve
from .formulas import PPFormula, eval_formula, parse_formula, random_formula
from .lattice import (
    BooleanStructure,
    Embedding,
    FiniteLattice,
    FiniteSemilattice,
    birkhoff_embed,
    construct,
    forbidden_sublattice,
    is_boolean,
    is_distributive,
    is_distributive_semilattice,
    median,
    semilattice_to_lattice,
    symdiff3,
)
from .operations import (
    OpTable,
    Relation,
    centralizer_slice,
    clone_slice,
    closure_under,
    commute,
    compose,
    graph,
    pad_and_identify,
    preserves,
    projection,
)
from .qe import (
    IneqItem,
    IneqSystem,
    Interval,
    eliminate_boolean,
    eliminate_semilattice,
    helly_condition,
    residuate,
    to_inequalities,
)
from .sdc import SdcVerdict, decide_sdc, witness_boolean_gap, witness_lattice_pair, witness_semilattice

__version__ = "0.1.0"

__all__ = [
    "BooleanStructure",
    "Embedding",
    "EqTheory",
    "EquationSystem",
    "FiniteLattice",
    "FiniteSemilattice",
    "IneqItem",
    "IneqSystem",
    "Interval",
    "OpTable",
    "PPFormula",
    "Relation",
    "SdcVerdict",
    "birkhoff_embed",
    "centralizer_slice",
    "clone_slice",
    "closure_under",
    "commute",
    "compose",
    "construct",
    "decide_sdc",
    "eliminate_boolean",
    "eliminate_semilattice",
    "equations_of",
    "eval_formula",
    "forbidden_sublattice",
    "galois_closure",
    "graph",
    "helly_condition",
    "is_boolean",
    "is_distributive",
    "is_distributive_semilattice",
    "is_solution_set",
    "median",
    "pad_and_identify",
    "parse_formula",
    "preserves",
    "projection",
    "random_formula",
    "residuate",
    "semilattice_to_lattice",
    "solve",
    "symdiff3",
    "to_inequalities",
    "witness_boolean_gap",
    "witness_lattice_pair",
    "witness_semilattice",
]
