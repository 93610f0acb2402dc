"""Systems of equations, equation theories, and the solution-set closure.

The theory of a tuple set T partitions the n-ary clone slice into blocks of
term operations that agree everywhere on T. Two operations form an equation
satisfied by T exactly when they share a block, so the partition is the
whole theory without materialising quadratically many pairs. The closure of
T is the solution set of that theory; T is a solution set of some system iff
the closure adds nothing.
"""

import numpy as np

from .errors import ArityMismatch, BadSpec, LimitExceeded
from .operations import (
    DEFAULT_CLONE_LIMIT,
    OpTable,
    Relation,
    clone_slice,
    decode_index,
    term_to_op,
)


class EquationSystem:
    """A finite set of n-ary equations f_i = g_i between value tables."""

    def __init__(self, arity, size, pairs):
        self.arity = arity
        self.size = size
        normalized = []
        for f, g in pairs:
            if f.arity != arity or g.arity != arity:
                raise ArityMismatch("all equations must share the system arity")
            if f.size != size or g.size != size:
                raise ArityMismatch("all equations must share one carrier")
            normalized.append((f, g))
        self.pairs = tuple(normalized)

    @classmethod
    def from_terms(cls, term_pairs, var_order, algebra):
        """Tabulate term equations over a fixed variable order."""
        var_order = tuple(var_order)
        pairs = [(term_to_op(lhs, var_order, algebra), term_to_op(rhs, var_order, algebra))
                 for lhs, rhs in term_pairs]
        return cls(len(var_order), algebra.size, pairs)

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __repr__(self):
        return f"EquationSystem({self.arity}-ary, {len(self.pairs)} equations)"


def solve(system, algebra) -> Relation:
    """All tuples satisfying every equation of the system."""
    if algebra.size != system.size:
        raise BadSpec("system and algebra carriers differ")
    n, size = system.arity, system.size
    mask = np.ones(size ** n, dtype=bool)
    for f, g in system.pairs:
        mask &= f.array() == g.array()
    hits = np.nonzero(mask)[0]
    return Relation(n, size, [decode_index(int(i), size, n) for i in hits])


class EqTheory:
    """Partition of a clone slice by agreement on a tuple set."""

    def __init__(self, arity, size, ops, blocks):
        self.arity = arity
        self.size = size
        self.ops = tuple(ops)
        self.blocks = tuple(tuple(b) for b in blocks)
        covered = sorted(i for block in self.blocks for i in block)
        if covered != list(range(len(self.ops))):
            raise BadSpec("blocks must partition the slice")

    def satisfies(self, f, g) -> bool:
        """Is f = g an equation of the theory (same block)?"""
        fi = self.ops.index(f)
        gi = self.ops.index(g)
        return any(fi in block and gi in block for block in self.blocks)

    def induced_system(self) -> EquationSystem:
        """One representative equation per non-representative block member.

        Equivalent to the full theory: every within-block pair follows from
        the representative pairs.
        """
        pairs = []
        for block in self.blocks:
            rep = self.ops[block[0]]
            for other in block[1:]:
                pairs.append((rep, self.ops[other]))
        return EquationSystem(self.arity, self.size, pairs)

    def closure(self) -> Relation:
        """Tuples at which every block is constant: the solution set of the theory."""
        mask = np.ones(self.size ** self.arity, dtype=bool)
        for block in self.blocks:
            if len(block) < 2:
                continue
            first = self.ops[block[0]].array()
            for other in block[1:]:
                mask &= first == self.ops[other].array()
        hits = np.nonzero(mask)[0]
        return Relation(self.arity, self.size,
                        [decode_index(int(i), self.size, self.arity) for i in hits])

    def __repr__(self):
        sizes = sorted((len(b) for b in self.blocks), reverse=True)
        return f"EqTheory({self.arity}-ary, {len(self.ops)} ops, block sizes {sizes})"


def equations_of(relation, generator_ops, limit=DEFAULT_CLONE_LIMIT) -> EqTheory:
    """The equation theory of a tuple set over the clone of the generators.

    Operations are grouped by their value vectors on the tuples of the set;
    the induced pair set is the largest system whose solutions include it.
    """
    ops = clone_slice(generator_ops, relation.arity, limit=limit)
    groups = {}
    for i, op in enumerate(ops):
        key = tuple(op(*t) for t in relation.tuples)
        groups.setdefault(key, []).append(i)
    blocks = sorted(groups.values())
    return EqTheory(relation.arity, relation.size, ops, blocks)


def galois_closure(relation, generator_ops, limit=DEFAULT_CLONE_LIMIT) -> Relation:
    """Solution set of the equation theory of the given tuple set.

    Always a superset of the input; equality means the input is itself the
    solution set of some system over the clone.
    """
    return equations_of(relation, generator_ops, limit=limit).closure()


def is_solution_set(relation, generator_ops, limit=DEFAULT_CLONE_LIMIT):
    """Decide whether the tuple set is the solution set of some system.

    Returns (True, certificate system), (False, gap tuple in the closure but
    not the set), or (None, None) when the clone slice overflows the limit,
    which leaves the question undecided rather than guessed.
    """
    try:
        theory = equations_of(relation, generator_ops, limit=limit)
    except LimitExceeded:
        return None, None
    closure = theory.closure()
    if closure == relation:
        return True, theory.induced_system()
    gap = next(t for t in closure if t not in relation)
    return False, gap
