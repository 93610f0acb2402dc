"""Primitive positive formulas: parsing, rendering, exact evaluation.

DSL grammar (ASCII, whitespace insignificant):

    formula := {"exists" ident+ "."} conj
    conj    := group {"&" group}
    group   := "(" conj ")" | atom
    atom    := term ("=" | "<=") term
    term    := factor {("/\\" | "\\/") factor}
    factor  := ident | "(" term ")"

Meet binds tighter than join. "s <= t" is sugar for the equation
"s = s /\\ t". Free variables are the identifiers not bound by "exists";
unless an explicit variable order is supplied, their sorted names fix the
coordinate order of the relation a formula defines.
"""

import re
from dataclasses import dataclass

import numpy as np

from . import terms
from .errors import (
    BadSpec,
    FormulaSyntaxError,
    JoinInSemilatticeMode,
    UnknownVariable,
)
from .operations import Relation, argument_columns, decode_index

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
                    r"|(?P<op>/\\|\\/|<=|=|&|\.|\(|\)))")


@dataclass(frozen=True)
class PPFormula:
    """Existential prefix plus a conjunction of term equations."""

    free_vars: tuple
    bound_vars: tuple
    atoms: tuple  # pairs (lhs, rhs) of term trees

    def __post_init__(self):
        declared = set(self.free_vars) | set(self.bound_vars)
        if set(self.free_vars) & set(self.bound_vars):
            raise BadSpec("a variable cannot be both free and bound")
        for lhs, rhs in self.atoms:
            stray = (terms.variables(lhs) | terms.variables(rhs)) - declared
            if stray:
                raise UnknownVariable(f"undeclared variables {sorted(stray)} in atom")

    def render(self) -> str:
        """DSL text that parses back to this formula.

        Atoms of the sugar shape s = s /\\ t print as "s <= t". Free
        variables missing from every atom are kept alive with trivial
        atoms so the text defines a relation of the same arity.
        """
        parts = [_render_atom(lhs, rhs) for lhs, rhs in self.atoms]
        used = set()
        for lhs, rhs in self.atoms:
            used |= terms.variables(lhs) | terms.variables(rhs)
        for name in self.free_vars:
            if name not in used:
                parts.append(f"{name} = {name}")
        if not parts:
            raise BadSpec("cannot render a formula with no atoms and no free variables")
        body = " & ".join(parts)
        if self.bound_vars:
            return f"exists {' '.join(self.bound_vars)} . {body}"
        return body


def _render_atom(lhs, rhs) -> str:
    if isinstance(rhs, terms.Meet) and rhs.left == lhs:
        return f"{terms.render(lhs)} <= {terms.render(rhs.right)}"
    return f"{terms.render(lhs)} = {terms.render(rhs)}"


class _Parser:
    def __init__(self, text, mode):
        self.text = text
        self.mode = mode
        self.pos = 0
        self.tokens = []
        self._scan()
        self.at = 0

    def _scan(self):
        pos = 0
        while pos < len(self.text):
            m = _TOKEN.match(self.text, pos)
            if m is None:
                rest = self.text[pos:].lstrip()
                if not rest:
                    break
                raise FormulaSyntaxError(f"unexpected character {rest[0]!r}",
                                         len(self.text) - len(rest))
            kind = "ident" if m.group("ident") else "op"
            value = m.group("ident") or m.group("op")
            self.tokens.append((kind, value, m.start(kind)))
            pos = m.end()

    def peek(self):
        if self.at < len(self.tokens):
            return self.tokens[self.at]
        return (None, None, len(self.text))

    def take(self):
        token = self.peek()
        self.at += 1
        return token

    def expect(self, value):
        kind, got, pos = self.take()
        if got != value:
            raise FormulaSyntaxError(f"expected {value!r}, found {got!r}", pos)

    def parse_prefix(self):
        bound = []
        while self.peek()[:2] == ("ident", "exists"):
            self.take()
            names = []
            while self.peek()[0] == "ident" and self.peek()[1] != "exists":
                names.append(self.take()[1])
            if not names:
                raise FormulaSyntaxError("exists needs at least one variable", self.peek()[2])
            self.expect(".")
            for name in names:
                if name in bound:
                    raise FormulaSyntaxError(f"variable {name!r} bound twice", self.peek()[2])
                bound.append(name)
        return tuple(bound)

    def parse_conj(self):
        atoms = list(self.parse_group())
        while self.peek()[:2] == ("op", "&"):
            self.take()
            atoms.extend(self.parse_group())
        return tuple(atoms)

    def parse_group(self):
        # "(" is ambiguous: it may open a parenthesized conjunction or a
        # parenthesized term inside an atom; try the conjunction first
        if self.peek()[:2] == ("op", "("):
            save = self.at
            self.take()
            try:
                atoms = self.parse_conj()
                self.expect(")")
                return atoms
            except FormulaSyntaxError:
                self.at = save
        return (self.parse_atom(),)

    def parse_atom(self):
        lhs = self.parse_term()
        kind, got, pos = self.take()
        if got == "=":
            return (lhs, self.parse_term())
        if got == "<=":
            rhs = self.parse_term()
            return (lhs, terms.Meet(lhs, rhs))
        raise FormulaSyntaxError(f"expected '=' or '<=', found {got!r}", pos)

    def parse_term(self):
        node = self.parse_meet()
        while self.peek()[:2] == ("op", "\\/"):
            _, _, pos = self.take()
            if self.mode == "semilattice":
                raise JoinInSemilatticeMode(f"join at position {pos} in semilattice mode")
            node = terms.Join(node, self.parse_meet())
        return node

    def parse_meet(self):
        node = self.parse_factor()
        while self.peek()[:2] == ("op", "/\\"):
            self.take()
            node = terms.Meet(node, self.parse_factor())
        return node

    def parse_factor(self):
        kind, got, pos = self.take()
        if kind == "ident":
            if got == "exists":
                raise FormulaSyntaxError("'exists' cannot be used as a variable", pos)
            return terms.Var(got)
        if got == "(":
            node = self.parse_term()
            self.expect(")")
            return node
        raise FormulaSyntaxError(f"expected a variable or '(', found {got!r}", pos)


def parse_formula(text, mode="lattice", variables=None) -> PPFormula:
    """Parse DSL text into a prefix-normal formula.

    With variables given, they fix the free variable order and any other
    unbound identifier is an error; otherwise free variables are the unbound
    identifiers in sorted order.
    """
    if mode not in ("lattice", "semilattice"):
        raise BadSpec(f"unknown mode {mode!r}")
    parser = _Parser(text, mode)
    bound = parser.parse_prefix()
    atoms = parser.parse_conj()
    kind, got, pos = parser.peek()
    if kind is not None:
        raise FormulaSyntaxError(f"unexpected {got!r} after the conjunction", pos)
    occurring = set()
    for lhs, rhs in atoms:
        occurring |= terms.variables(lhs) | terms.variables(rhs)
    if variables is None:
        free = tuple(sorted(occurring - set(bound)))
    else:
        free = tuple(variables)
        stray = occurring - set(bound) - set(free)
        if stray:
            raise UnknownVariable(f"unknown variables {sorted(stray)}")
    return PPFormula(free_vars=free, bound_vars=bound, atoms=atoms)


def _flat_tables(algebra):
    flat_meet = np.array(algebra.meet, dtype=np.int64).reshape(-1)
    flat_join = None
    if algebra.kind == "lattice":
        flat_join = np.array(algebra.join, dtype=np.int64).reshape(-1)
    return flat_meet, flat_join


def _term_columns(term, env, flat_meet, flat_join, size):
    if isinstance(term, terms.Var):
        return env[term.name]
    a = _term_columns(term.left, env, flat_meet, flat_join, size)
    b = _term_columns(term.right, env, flat_meet, flat_join, size)
    if isinstance(term, terms.Meet):
        return flat_meet[a * size + b]
    if flat_join is None:
        raise JoinInSemilatticeMode("join term evaluated over a meet-semilattice")
    return flat_join[a * size + b]


def eval_formula(phi, algebra) -> Relation:
    """The relation a formula defines, by exhaustive assignment and witness search.

    Free variables are assigned in their declared order; bound variables are
    searched existentially over the whole carrier.
    """
    size = algebra.size
    n = len(phi.free_vars)
    m = len(phi.bound_vars)
    cols = argument_columns(size, n + m)
    env = dict(zip(phi.free_vars + phi.bound_vars, cols))
    flat_meet, flat_join = _flat_tables(algebra)
    mask = np.ones(size ** (n + m), dtype=bool)
    for lhs, rhs in phi.atoms:
        left = _term_columns(lhs, env, flat_meet, flat_join, size)
        right = _term_columns(rhs, env, flat_meet, flat_join, size)
        mask &= left == right
    if m:
        mask = mask.reshape(size ** n, size ** m).any(axis=1)
    hits = np.nonzero(mask)[0]
    return Relation(n, size, [decode_index(int(i), size, n) for i in hits])


_FREE_POOL = ("x", "y", "z")
_BOUND_POOL = ("u", "v")


def random_formula(rng, mode="lattice", max_free=3, max_bound=2,
                   max_atoms=6, max_depth=2) -> PPFormula:
    """A random formula drawn from a seeded generator, for round-trip testing."""
    free = _FREE_POOL[:rng.randint(1, max_free)]
    bound = _BOUND_POOL[:rng.randint(0, max_bound)]
    pool = free + bound

    def term(depth):
        if depth == 0 or rng.random() < 0.45:
            return terms.Var(rng.choice(pool))
        node = terms.Meet if mode == "semilattice" or rng.random() < 0.5 else terms.Join
        return node(term(depth - 1), term(depth - 1))

    atoms = []
    for _ in range(rng.randint(1, max_atoms)):
        lhs = term(max_depth)
        rhs = term(max_depth)
        if rng.random() < 0.5:
            atoms.append((lhs, terms.Meet(lhs, rhs)))  # lhs <= rhs
        else:
            atoms.append((lhs, rhs))
    return PPFormula(free_vars=tuple(free), bound_vars=tuple(bound), atoms=tuple(atoms))
