"""Meet/join term trees.

Shared by the formula layer (syntax) and the operation layer (provenance of
generated value tables). Rendering uses the ASCII connectives of the formula
DSL, with meet binding tighter than join.
"""

from dataclasses import dataclass
from functools import reduce

from .errors import JoinInSemilatticeMode


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Meet:
    left: object
    right: object


@dataclass(frozen=True)
class Join:
    left: object
    right: object


TermExpr = Var | Meet | Join


def variables(term) -> set:
    if isinstance(term, Var):
        return {term.name}
    return variables(term.left) | variables(term.right)


def uses_join(term) -> bool:
    if isinstance(term, Var):
        return False
    if isinstance(term, Join):
        return True
    return uses_join(term.left) or uses_join(term.right)


def substitute(term, mapping):
    """Replace variables by terms; names missing from the mapping stay put."""
    if isinstance(term, Var):
        return mapping.get(term.name, term)
    return type(term)(substitute(term.left, mapping), substitute(term.right, mapping))


def evaluate(term, env, algebra) -> int:
    """Value of the term under an assignment env: variable name -> element index."""
    if isinstance(term, Var):
        return env[term.name]
    a = evaluate(term.left, env, algebra)
    b = evaluate(term.right, env, algebra)
    if isinstance(term, Meet):
        return algebra.meet[a][b]
    if algebra.kind != "lattice":
        raise JoinInSemilatticeMode("join term evaluated over a meet-semilattice")
    return algebra.join[a][b]


def meet_all(names):
    """Left-folded meet of one or more variable names."""
    return reduce(Meet, [Var(n) for n in names])


def join_all(names):
    return reduce(Join, [Var(n) for n in names])


def render(term) -> str:
    if isinstance(term, Var):
        return term.name
    if isinstance(term, Meet):
        return f"{_meet_operand(term.left)} /\\ {_meet_operand(term.right)}"
    return f"{render(term.left)} \\/ {render(term.right)}"


def _meet_operand(term) -> str:
    # joins under a meet need parentheses; anything else does not
    if isinstance(term, Join):
        return f"({render(term)})"
    return render(term)
