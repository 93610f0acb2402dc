"""Independent reference implementations used as test oracles.

Everything here is deliberately written with plain Python loops over
itertools, straight from the definitions, so the library's vectorised paths
are checked against code that shares none of their machinery.
"""

from itertools import product

from latclone import terms
from latclone.operations import Relation


def slow_eval_formula(phi, algebra):
    """rel(phi) by nested loops: exhaustive assignments, exhaustive witnesses."""
    size = algebra.size
    hits = []
    for free in product(range(size), repeat=len(phi.free_vars)):
        env = dict(zip(phi.free_vars, free))
        found = False
        for bound in product(range(size), repeat=len(phi.bound_vars)):
            env.update(zip(phi.bound_vars, bound))
            if all(terms.evaluate(lhs, env, algebra) == terms.evaluate(rhs, env, algebra)
                   for lhs, rhs in phi.atoms):
                found = True
                break
        if found:
            hits.append(free)
    return Relation(len(phi.free_vars), size, hits)


def brute_distributive(lattice):
    for x, y, z in product(range(lattice.size), repeat=3):
        left = lattice.meet[x][lattice.join[y][z]]
        right = lattice.join[lattice.meet[x][y]][lattice.meet[x][z]]
        if left != right:
            return False
    return True


def brute_glb(leq, size, a, b):
    lower = [c for c in range(size) if leq[c][a] and leq[c][b]]
    best = [c for c in lower if all(leq[d][c] for d in lower)]
    return best[0] if best else None


def brute_lub(leq, size, a, b):
    upper = [c for c in range(size) if leq[a][c] and leq[b][c]]
    best = [c for c in upper if all(leq[c][d] for d in upper)]
    return best[0] if best else None


def order_matrix(structure):
    return [[structure.leq(a, b) for b in range(structure.size)]
            for a in range(structure.size)]


def meet_of(structure, elements):
    out = elements[0]
    for e in elements[1:]:
        out = structure.meet[out][e]
    return out


def join_of(lattice, elements):
    out = elements[0]
    for e in elements[1:]:
        out = lattice.join[out][e]
    return out


def interval_elements(lattice, lo, hi):
    return {x for x in range(lattice.size) if lattice.leq(lo, x) and lattice.leq(x, hi)}
