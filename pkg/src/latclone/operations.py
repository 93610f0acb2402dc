"""Finitary operations as value tables, relations, and clone machinery.

Value tables are encoded row-major with the last argument varying fastest,
so index(a1,...,an) = ((a1*size + a2)*size + ...) + an. Table equality is
the deduplication key everywhere; the optional provenance term attached to
generated tables is display metadata and takes no part in comparisons.
"""

from itertools import combinations_with_replacement, product

import numpy as np

from . import terms
from .errors import (
    ArityMismatch,
    BadAssignment,
    BadIndex,
    BadSpec,
    LimitExceeded,
)

DEFAULT_CLONE_LIMIT = 100_000
DEFAULT_CENTRALIZER_LIMIT = 100_000
DEFAULT_CLOSURE_LIMIT = 1_000_000


def argument_columns(size, arity):
    """Value of each argument over the lexicographic grid of all tuples."""
    n = size ** arity
    cols = []
    for i in range(arity):
        block = size ** (arity - 1 - i)
        cols.append((np.arange(n) // block) % size)
    return cols


def decode_index(idx, size, arity):
    out = []
    for _ in range(arity):
        idx, r = divmod(idx, size)
        out.append(r)
    return tuple(reversed(out))


class OpTable:
    """An operation {0..size-1}^arity -> {0..size-1} as an explicit table."""

    def __init__(self, arity, size, values, provenance=None):
        if arity < 1:
            raise BadSpec("operations must have arity at least 1")
        if size < 1:
            raise BadSpec("carrier must be nonempty")
        self.arity = arity
        self.size = size
        self.values = tuple(int(v) for v in values)
        if len(self.values) != size ** arity:
            raise BadSpec(f"value table must have {size ** arity} entries")
        if any(v < 0 or v >= size for v in self.values):
            raise BadSpec("value table entry out of range")
        self.provenance = provenance
        self._array = None

    def index(self, args) -> int:
        if len(args) != self.arity:
            raise ArityMismatch(f"expected {self.arity} arguments, got {len(args)}")
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return idx

    def __call__(self, *args) -> int:
        return self.values[self.index(args)]

    def array(self):
        if self._array is None:
            self._array = np.array(self.values, dtype=np.int64)
        return self._array

    def __eq__(self, other):
        return (isinstance(other, OpTable)
                and self.arity == other.arity
                and self.size == other.size
                and self.values == other.values)

    def __hash__(self):
        return hash((self.arity, self.size, self.values))

    def __repr__(self):
        if self.provenance is not None:
            return f"OpTable({self.arity}-ary, {terms.render(self.provenance)})"
        return f"OpTable({self.arity}-ary on {self.size}, {list(self.values)})"


class Relation:
    """A set of fixed-arity tuples in canonical sorted, deduplicated form."""

    def __init__(self, arity, size, tuples):
        if arity < 0:
            raise BadSpec("relations must have nonnegative arity")
        self.arity = arity
        self.size = size
        normalized = set()
        for t in tuples:
            t = tuple(int(v) for v in t)
            if len(t) != arity:
                raise BadSpec(f"tuple {t!r} does not have arity {arity}")
            if any(v < 0 or v >= size for v in t):
                raise BadSpec(f"tuple {t!r} has an entry out of range")
            normalized.add(t)
        self.tuples = tuple(sorted(normalized))
        self._set = frozenset(self.tuples)

    @classmethod
    def full(cls, arity, size):
        return cls(arity, size, product(range(size), repeat=arity))

    def __contains__(self, t):
        return tuple(t) in self._set

    def __iter__(self):
        return iter(self.tuples)

    def __len__(self):
        return len(self.tuples)

    def __eq__(self, other):
        return (isinstance(other, Relation)
                and self.arity == other.arity
                and self.size == other.size
                and self.tuples == other.tuples)

    def __hash__(self):
        return hash((self.arity, self.size, self.tuples))

    def issubset(self, other) -> bool:
        return self._set <= other._set

    def __repr__(self):
        return f"Relation({self.arity}-ary on {self.size}, {len(self.tuples)} tuples)"


def term_to_op(term, var_order, algebra) -> OpTable:
    """Tabulate a term over all assignments to the given variable order."""
    var_order = tuple(var_order)
    missing = terms.variables(term) - set(var_order)
    if missing:
        raise BadSpec(f"term uses variables outside the declared order: {sorted(missing)}")
    size = algebra.size
    cols = argument_columns(size, len(var_order))
    env = dict(zip(var_order, cols))
    flat_meet = np.array(algebra.meet, dtype=np.int64).reshape(-1)
    flat_join = None
    if algebra.kind == "lattice":
        flat_join = np.array(algebra.join, dtype=np.int64).reshape(-1)

    def ev(t):
        if isinstance(t, terms.Var):
            return env[t.name]
        a, b = ev(t.left), ev(t.right)
        if isinstance(t, terms.Meet):
            return flat_meet[a * size + b]
        if flat_join is None:
            raise BadSpec("join term tabulated over a meet-semilattice")
        return flat_join[a * size + b]

    values = ev(term)
    if isinstance(values, np.ndarray):
        values = values.tolist()
    else:  # a bare variable over a 1-element order still yields an array; guard anyway
        values = [int(values)] * (size ** len(var_order))
    return OpTable(len(var_order), size, values, provenance=term)


def meet_op(algebra) -> OpTable:
    """The meet of the structure as a binary table with term provenance."""
    size = algebra.size
    values = [algebra.meet[a][b] for a in range(size) for b in range(size)]
    return OpTable(2, size, values, provenance=terms.Meet(terms.Var("x1"), terms.Var("x2")))


def join_op(lattice) -> OpTable:
    size = lattice.size
    values = [lattice.join[a][b] for a in range(size) for b in range(size)]
    return OpTable(2, size, values, provenance=terms.Join(terms.Var("x1"), terms.Var("x2")))


def generators(structure, mode) -> list:
    """Clone generators for a structure: meet and join, or meet only."""
    if mode == "lattice":
        if structure.kind != "lattice":
            raise BadSpec("lattice mode needs a lattice")
        return [meet_op(structure), join_op(structure)]
    if mode == "semilattice":
        return [meet_op(structure)]
    raise BadSpec(f"unknown mode {mode!r}")


def projection(n, i, size) -> OpTable:
    """The projection onto the i-th of n coordinates (i is 1-based)."""
    if not 1 <= i <= n:
        raise BadIndex(f"projection index {i} outside 1..{n}")
    col = argument_columns(size, n)[i - 1]
    return OpTable(n, size, col.tolist(), provenance=terms.Var(f"x{i}"))


def _positional_vars(op):
    return {f"x{i}" for i in range(1, op.arity + 1)}


def _composed_provenance(f, gs):
    if f.provenance is None or any(g.provenance is None for g in gs):
        return None
    if not terms.variables(f.provenance) <= _positional_vars(f):
        return None
    mapping = {f"x{i + 1}": g.provenance for i, g in enumerate(gs)}
    return terms.substitute(f.provenance, mapping)


def compose(f, gs) -> OpTable:
    """f(g1(x), ..., gn(x)) tabulated pointwise over all argument tuples."""
    gs = list(gs)
    if len(gs) != f.arity:
        raise ArityMismatch(f"{f.arity}-ary operation composed with {len(gs)} inner operations")
    if any(g.size != f.size for g in gs):
        raise ArityMismatch("composition across different carriers")
    k = gs[0].arity
    if any(g.arity != k for g in gs):
        raise ArityMismatch("inner operations must share one arity")
    idx = np.zeros(f.size ** k, dtype=np.int64)
    for g in gs:
        idx = idx * f.size + g.array()
    values = f.array()[idx]
    return OpTable(k, f.size, values.tolist(), provenance=_composed_provenance(f, gs))


def pad_and_identify(f, arity, assignment) -> OpTable:
    """Reshape f by assigning each of its positions to a target position.

    assignment maps f's 1-based positions to 1-based positions of the result,
    so identity padding to arity n+1 adds a fictitious last variable and a
    constant assignment identifies variables.
    """
    assignment = tuple(int(z) for z in assignment)
    if len(assignment) != f.arity:
        raise BadAssignment(f"assignment must cover all {f.arity} positions")
    if any(z < 1 or z > arity for z in assignment):
        raise BadAssignment(f"assignment targets outside 1..{arity}")
    cols = argument_columns(f.size, arity)
    idx = np.zeros(f.size ** arity, dtype=np.int64)
    for z in assignment:
        idx = idx * f.size + cols[z - 1]
    values = f.array()[idx]
    provenance = None
    if f.provenance is not None and terms.variables(f.provenance) <= _positional_vars(f):
        mapping = {f"x{i + 1}": terms.Var(f"x{z}") for i, z in enumerate(assignment)}
        provenance = terms.substitute(f.provenance, mapping)
    return OpTable(arity, f.size, values.tolist(), provenance=provenance)


def graph(f) -> Relation:
    """The (arity+1)-ary relation of argument-value rows of f."""
    rows = []
    for idx, v in enumerate(f.values):
        rows.append(decode_index(idx, f.size, f.arity) + (v,))
    return Relation(f.arity + 1, f.size, rows)


def commute(f, g):
    """Do f and g commute? On failure also return one witness matrix.

    The witness is an f.arity x g.arity matrix Q such that applying g to the
    rows and then f to the column differs from applying f to the columns and
    then g to the row.
    """
    if f.size != g.size:
        raise ArityMismatch("commutation across different carriers")
    n, m, size = f.arity, g.arity, f.size
    for flat in product(range(size), repeat=n * m):
        matrix = tuple(flat[i * m:(i + 1) * m] for i in range(n))
        left = f(*(g(*row) for row in matrix))
        right = g(*(f(*(matrix[i][j] for i in range(n))) for j in range(m)))
        if left != right:
            return False, matrix
    return True, None


def preserves(f, relation):
    """Is the relation closed under componentwise application of f?

    On failure returns (rows, image): arity-many relation members whose
    componentwise image escapes the relation.
    """
    if f.size != relation.size:
        raise ArityMismatch("preservation across different carriers")
    rows = relation.tuples
    if not rows:
        return True, None
    arr = np.array(rows, dtype=np.int64)
    if relation.arity == 0:
        return True, None
    powers = relation.size ** np.arange(relation.arity - 1, -1, -1, dtype=np.int64)
    member = np.sort(arr @ powers)
    if f.arity <= 2:
        if f.arity == 1:
            image = f.array()[arr]
            choices = [(i,) for i in range(len(rows))]
        else:
            idx = arr[:, None, :] * relation.size + arr[None, :, :]
            image = f.array()[idx].reshape(-1, relation.arity)
            choices = [(i, j) for i in range(len(rows)) for j in range(len(rows))]
        codes = image.reshape(-1, relation.arity) @ powers
        ok = np.isin(codes, member)
        if ok.all():
            return True, None
        bad = int(np.argmax(~ok))
        picked = tuple(rows[i] for i in choices[bad])
        return False, (picked, tuple(int(v) for v in image.reshape(-1, relation.arity)[bad]))
    for picked in product(rows, repeat=f.arity):
        image = tuple(f(*(t[c] for t in picked)) for c in range(relation.arity))
        if image not in relation:
            return False, (picked, image)
    return True, None


def _apply_binary(op_array, size, left_vec, right_rows):
    return op_array[left_vec[None, :] * size + right_rows]


_SLICE_MEMO = {}


def clone_slice(generator_ops, n, limit=DEFAULT_CLONE_LIMIT):
    """The n-ary part of the clone generated by the given operations.

    Closure of the n projections under composition with the generators,
    iterated to a fixpoint with canonical deduplication by value table.
    Returns tables sorted by values; raises LimitExceeded when the slice
    would grow past the limit. Results are memoised: the computation is a
    pure function of the generator tables.
    """
    generator_ops = list(generator_ops)
    if not generator_ops:
        raise BadSpec("at least one generator is required")
    size = generator_ops[0].size
    if any(g.size != size for g in generator_ops):
        raise BadSpec("generators must share a carrier")
    if n < 1:
        raise BadSpec("slice arity must be at least 1")
    memo_key = (tuple((g.arity, g.size, g.values, g.provenance) for g in generator_ops),
                n, limit)
    cached = _SLICE_MEMO.get(memo_key)
    if cached is not None:
        return list(cached)

    rows = []
    provs = []
    seen = {}

    def add(vec, prov):
        key = vec.tobytes()
        if key in seen:
            return None
        if len(rows) >= limit:
            raise LimitExceeded(f"clone slice exceeds {limit} tables")
        seen[key] = len(rows)
        rows.append(vec)
        provs.append(prov)
        return len(rows) - 1

    for i in range(n):
        col = argument_columns(size, n)[i].astype(np.int64)
        add(col, terms.Var(f"x{i + 1}"))

    pos = 0
    while pos < len(rows):
        vec = rows[pos]
        partners = np.stack(rows[:pos + 1])
        for g in generator_ops:
            if g.arity == 1:
                out = g.array()[vec]
                add(out, _composed_provenance(g, [_Stub(provs[pos])]))
            elif g.arity == 2:
                for flip in (False, True):
                    if flip:
                        block = _apply_binary(g.array(), size, vec, partners)
                    else:
                        block = g.array()[partners * size + vec[None, :]]
                    for j in range(block.shape[0]):
                        if flip:
                            inner = [_Stub(provs[pos]), _Stub(provs[j])]
                        else:
                            inner = [_Stub(provs[j]), _Stub(provs[pos])]
                        add(block[j], _composed_provenance(g, inner))
            else:
                for combo in product(range(pos + 1), repeat=g.arity):
                    if pos not in combo:
                        continue
                    idx = np.zeros(size ** n, dtype=np.int64)
                    for c in combo:
                        idx = idx * size + rows[c]
                    add(g.array()[idx], _composed_provenance(g, [_Stub(provs[c]) for c in combo]))
        pos += 1

    tables = [OpTable(n, size, vec.tolist(), provenance=prov)
              for vec, prov in zip(rows, provs)]
    tables.sort(key=lambda t: t.values)
    if len(_SLICE_MEMO) >= 64:
        _SLICE_MEMO.clear()
    _SLICE_MEMO[memo_key] = tuple(tables)
    return tables


class _Stub:
    """Carries a provenance term through _composed_provenance."""

    def __init__(self, provenance):
        self.provenance = provenance


def centralizer_slice(generator_ops, k, limit=DEFAULT_CENTRALIZER_LIMIT):
    """All k-ary operations commuting with every generator.

    Depth-first search over the value table: whenever all argument cells of
    a commutation constraint are decided, its target cell is forced, so the
    search only branches on genuinely free cells. Returns tables sorted by
    values; raises LimitExceeded past the limit.
    """
    generator_ops = list(generator_ops)
    if not generator_ops:
        raise BadSpec("at least one generator is required")
    size = generator_ops[0].size
    if any(g.size != size for g in generator_ops):
        raise BadSpec("generators must share a carrier")
    if k < 1:
        raise BadSpec("slice arity must be at least 1")

    ncells = size ** k
    decoded = [decode_index(c, size, k) for c in range(ncells)]

    constraints = []  # (source cells, target cell, generator)
    for g in generator_ops:
        m = g.arity
        for combo in product(range(ncells), repeat=m):
            target = 0
            for i in range(k):
                target = target * size + g(*(decoded[c][i] for c in combo))
            constraints.append((combo, target, g))

    by_source = [[] for _ in range(ncells)]
    by_target = [[] for _ in range(ncells)]
    for cid, (sources, target, _) in enumerate(constraints):
        for c in sources:
            by_source[c].append(cid)
        by_target[target].append(cid)

    values = [-1] * ncells
    pending = [len(sources) for sources, _, _ in constraints]
    trail = []
    results = []

    def do_assign(cell, v, queue):
        values[cell] = v
        trail.append(cell)
        for cid in by_source[cell]:
            pending[cid] -= 1
            if pending[cid] == 0:
                queue.append(cid)
        for cid in by_target[cell]:
            if pending[cid] == 0:
                queue.append(cid)

    def run_queue(queue):
        while queue:
            cid = queue.pop()
            sources, target, g = constraints[cid]
            forced = g(*(values[c] for c in sources))
            if values[target] == -1:
                do_assign(target, forced, queue)
            elif values[target] != forced:
                return False
        return True

    def undo(mark):
        while len(trail) > mark:
            cell = trail.pop()
            values[cell] = -1
            for cid in by_source[cell]:
                pending[cid] += 1

    def dfs(pos):
        while pos < ncells and values[pos] != -1:
            pos += 1
        if pos == ncells:
            if len(results) >= limit:
                raise LimitExceeded(f"centralizer slice exceeds {limit} tables")
            results.append(tuple(values))
            return
        for v in range(size):
            mark = len(trail)
            queue = []
            do_assign(pos, v, queue)
            if run_queue(queue):
                dfs(pos + 1)
            undo(mark)

    dfs(0)
    tables = [OpTable(k, size, vals) for vals in sorted(results)]
    return tables


def closure_under(relation, ops, limit=DEFAULT_CLOSURE_LIMIT) -> Relation:
    """Least superset of the relation closed under every given operation."""
    ops = list(ops)
    if any(op.size != relation.size for op in ops):
        raise ArityMismatch("closure across different carriers")
    size, h = relation.size, relation.arity
    current = set(relation.tuples)
    changed = True
    while changed:
        changed = False
        rows = sorted(current)
        if not rows or h == 0:
            break
        arr = np.array(rows, dtype=np.int64)
        for op in ops:
            if op.arity == 1:
                image = op.array()[arr]
            elif op.arity == 2:
                idx = arr[:, None, :] * size + arr[None, :, :]
                image = op.array()[idx].reshape(-1, h)
            else:
                image = []
                for combo in product(rows, repeat=op.arity):
                    image.append([op(*(t[c] for t in combo)) for c in range(h)])
                image = np.array(image, dtype=np.int64).reshape(-1, h)
            for row in image:
                t = tuple(int(v) for v in row)
                if t not in current:
                    current.add(t)
                    changed = True
                    if len(current) > limit:
                        raise LimitExceeded(f"closure exceeds {limit} tuples")
    return Relation(h, size, current)
