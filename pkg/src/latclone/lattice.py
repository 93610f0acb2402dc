"""Finite lattices and meet-semilattices as explicit operation tables.

Elements are dense indices 0..size-1; labels are display metadata only.
Structures validate their axioms exhaustively at construction time and are
immutable afterwards, so instances can be shared freely between threads.

Construction accepts either a cover relation (a Hasse diagram) or an
explicit meet table. From covers, meet and join are computed as greatest
lower / least upper bounds of the reflexive-transitive order; any validation
failure raises instead of repairing silently.
"""

import warnings
from functools import reduce
from itertools import combinations

from .errors import (
    AxiomViolation,
    BadSpec,
    NoGreatestElement,
    NotALattice,
    NotDistributive,
)

MAX_CARRIER = 16


class NonDistributiveMedian(UserWarning):
    """median() on a non-distributive lattice: only the meet-form is returned."""


def _normalize_names(names):
    names = tuple(str(n) for n in names)
    if not names:
        raise BadSpec("a structure needs at least one element")
    if len(set(names)) != len(names):
        raise BadSpec("duplicate element labels")
    return names


def _normalize_table(table, size, what):
    if len(table) != size:
        raise BadSpec(f"{what} table must have {size} rows")
    rows = []
    for row in table:
        if len(row) != size:
            raise BadSpec(f"{what} table must have {size} columns per row")
        row = tuple(int(v) for v in row)
        if any(v < 0 or v >= size for v in row):
            raise BadSpec(f"{what} table entry out of range")
        rows.append(row)
    return tuple(rows)


def _check_semilattice_axioms(op, size, what):
    for a in range(size):
        if op[a][a] != a:
            raise AxiomViolation(f"{what} is not idempotent at {a}")
        for b in range(size):
            if op[a][b] != op[b][a]:
                raise AxiomViolation(f"{what} is not commutative at ({a},{b})")
            for c in range(size):
                if op[op[a][b]][c] != op[a][op[b][c]]:
                    raise AxiomViolation(f"{what} is not associative at ({a},{b},{c})")


class FiniteLattice:
    """A finite lattice with explicit meet and join tables.

    The derived order is x <= y iff x meet y = x; construction verifies that
    the join table induces the same order and that absorption holds, and
    computes the bottom and top elements.
    """

    kind = "lattice"

    def __init__(self, names, meet, join, max_size=MAX_CARRIER):
        self.names = _normalize_names(names)
        self.size = len(self.names)
        if self.size > max_size:
            raise BadSpec(f"carrier of size {self.size} exceeds the cap {max_size}")
        self.meet = _normalize_table(meet, self.size, "meet")
        self.join = _normalize_table(join, self.size, "join")
        _check_semilattice_axioms(self.meet, self.size, "meet")
        _check_semilattice_axioms(self.join, self.size, "join")
        for a in range(self.size):
            for b in range(self.size):
                if self.meet[a][self.join[a][b]] != a:
                    raise AxiomViolation(f"absorption x /\\ (x \\/ y) = x fails at ({a},{b})")
                if self.join[a][self.meet[a][b]] != a:
                    raise AxiomViolation(f"absorption x \\/ (x /\\ y) = x fails at ({a},{b})")
                if (self.meet[a][b] == a) != (self.join[a][b] == b):
                    raise AxiomViolation(f"meet and join induce different orders at ({a},{b})")
        self.bottom = reduce(lambda x, y: self.meet[x][y], range(self.size))
        self.top = reduce(lambda x, y: self.join[x][y], range(self.size))

    def leq(self, a, b) -> bool:
        return self.meet[a][b] == a

    def index(self, label) -> int:
        try:
            return self.names.index(label)
        except ValueError:
            raise BadSpec(f"unknown element label {label!r}") from None

    def __repr__(self):
        return f"FiniteLattice({list(self.names)!r})"


class FiniteSemilattice:
    """A finite meet-semilattice; the top element is optional."""

    kind = "semilattice"

    def __init__(self, names, meet, max_size=MAX_CARRIER):
        self.names = _normalize_names(names)
        self.size = len(self.names)
        if self.size > max_size:
            raise BadSpec(f"carrier of size {self.size} exceeds the cap {max_size}")
        self.meet = _normalize_table(meet, self.size, "meet")
        _check_semilattice_axioms(self.meet, self.size, "meet")
        self.bottom = reduce(lambda x, y: self.meet[x][y], range(self.size))
        tops = [t for t in range(self.size)
                if all(self.meet[x][t] == x for x in range(self.size))]
        self.top = tops[0] if tops else None

    def leq(self, a, b) -> bool:
        return self.meet[a][b] == a

    def index(self, label) -> int:
        try:
            return self.names.index(label)
        except ValueError:
            raise BadSpec(f"unknown element label {label!r}") from None

    def __repr__(self):
        return f"FiniteSemilattice({list(self.names)!r})"


def _order_from_covers(names, covers):
    """Reflexive-transitive closure of the cover relation; BadSpec on cycles."""
    size = len(names)
    leq = [[i == j for j in range(size)] for i in range(size)]
    for pair in covers:
        if len(pair) != 2:
            raise BadSpec(f"cover entry {pair!r} is not a pair")
        lo, hi = pair
        lo = lo if isinstance(lo, int) else names.index(str(lo)) if str(lo) in names else -1
        hi = hi if isinstance(hi, int) else names.index(str(hi)) if str(hi) in names else -1
        if not (0 <= lo < size and 0 <= hi < size):
            raise BadSpec(f"cover entry {pair!r} names an unknown element")
        if lo == hi:
            raise BadSpec(f"cover entry {pair!r} relates an element to itself")
        leq[lo][hi] = True
    for k in range(size):
        for i in range(size):
            if leq[i][k]:
                for j in range(size):
                    if leq[k][j]:
                        leq[i][j] = True
    for i in range(size):
        for j in range(size):
            if i != j and leq[i][j] and leq[j][i]:
                raise BadSpec(f"cover relation has a cycle through {names[i]!r} and {names[j]!r}")
    return leq


def _glb(leq, size, a, b, names):
    lower = [c for c in range(size) if leq[c][a] and leq[c][b]]
    best = [c for c in lower if all(leq[d][c] for d in lower)]
    if not best:
        raise NotALattice(f"elements {names[a]!r} and {names[b]!r} have no greatest lower bound")
    return best[0]


def _lub(leq, size, a, b, names):
    upper = [c for c in range(size) if leq[a][c] and leq[b][c]]
    best = [c for c in upper if all(leq[c][d] for d in upper)]
    if not best:
        raise NotALattice(f"elements {names[a]!r} and {names[b]!r} have no least upper bound")
    return best[0]


def from_covers(names, covers, kind="lattice", max_size=MAX_CARRIER):
    """Build a validated structure from labels and Hasse-diagram cover pairs."""
    names = _normalize_names(names)
    size = len(names)
    leq = _order_from_covers(names, covers)
    meet = [[_glb(leq, size, a, b, names) for b in range(size)] for a in range(size)]
    if kind == "semilattice":
        return FiniteSemilattice(names, meet, max_size=max_size)
    join = [[_lub(leq, size, a, b, names) for b in range(size)] for a in range(size)]
    return FiniteLattice(names, meet, join, max_size=max_size)


def from_meet_table(names, meet, kind="lattice", max_size=MAX_CARRIER):
    """Build a validated structure from labels and an explicit meet table.

    For kind "lattice" the join table is derived as least upper bounds of the
    order induced by the meet; a pair without an upper bound is NotALattice.
    """
    if kind == "semilattice":
        return FiniteSemilattice(names, meet, max_size=max_size)
    probe = FiniteSemilattice(names, meet, max_size=max_size)
    size = probe.size
    leq = [[probe.leq(a, b) for b in range(size)] for a in range(size)]
    join = [[_lub(leq, size, a, b, probe.names) for b in range(size)] for a in range(size)]
    return FiniteLattice(probe.names, probe.meet, join, max_size=max_size)


def construct(names, covers=None, meet=None, kind="lattice", max_size=MAX_CARRIER):
    """Dispatch between cover-pair and meet-table construction."""
    if kind not in ("lattice", "semilattice"):
        raise BadSpec(f"unknown kind {kind!r}")
    if (covers is None) == (meet is None):
        raise BadSpec("exactly one of covers and meet must be given")
    if covers is not None:
        return from_covers(names, covers, kind=kind, max_size=max_size)
    return from_meet_table(names, meet, kind=kind, max_size=max_size)


def cover_pairs(structure):
    """The Hasse diagram of the derived order, as sorted (lower, upper) pairs."""
    size = structure.size
    lt = [[structure.leq(a, b) and a != b for b in range(size)] for a in range(size)]
    out = []
    for a in range(size):
        for b in range(size):
            if lt[a][b] and not any(lt[a][c] and lt[c][b] for c in range(size)):
                out.append((a, b))
    return out


def _distributivity_scan(lattice):
    """Direct check of x /\\ (y \\/ z) = (x /\\ y) \\/ (x /\\ z) over all triples."""
    meet, join = lattice.meet, lattice.join
    for x in range(lattice.size):
        for y in range(lattice.size):
            for z in range(lattice.size):
                if meet[x][join[y][z]] != join[meet[x][y]][meet[x][z]]:
                    return False, (x, y, z)
    return True, None


def _sublattice_shape(lattice, subset):
    """Classify a meet/join-closed 5-subset as N5 or M3, or neither.

    Returns (kind, elements) with elements in role order (bottom, a, b, c,
    top); for N5 the pair a < b is the comparable side and c the third
    middle element, for M3 the middles are in index order.
    """
    bottom = reduce(lambda x, y: lattice.meet[x][y], subset)
    top = reduce(lambda x, y: lattice.join[x][y], subset)
    middles = [e for e in subset if e != bottom and e != top]
    if len(middles) != 3:
        return None
    comp = [(a, b) for a, b in combinations(middles, 2)
            if lattice.leq(a, b) or lattice.leq(b, a)]
    if not comp:
        return "M3", (bottom, *middles, top)
    if len(comp) == 1:
        lo, hi = comp[0]
        if lattice.leq(hi, lo):
            lo, hi = hi, lo
        third = next(e for e in middles if e not in comp[0])
        return "N5", (bottom, lo, hi, third, top)
    return None


def forbidden_sublattice(lattice):
    """Search for a pentagon or diamond sublattice.

    Returns None, or (kind, elements) for the lexicographically least closed
    5-subset isomorphic to N5 or M3. None is returned exactly when the
    lattice is distributive.
    """
    meet, join = lattice.meet, lattice.join
    for subset in combinations(range(lattice.size), 5):
        inside = set(subset)
        closed = all(meet[a][b] in inside and join[a][b] in inside
                     for a, b in combinations(subset, 2))
        if not closed:
            continue
        shape = _sublattice_shape(lattice, subset)
        if shape is not None:
            return shape
    return None


def is_distributive(lattice):
    """Distributivity verdict plus one violating triple on failure.

    The direct law scan is cross-checked against the forbidden-sublattice
    search; disagreement would be an internal error, not a user error.
    """
    cached = getattr(lattice, "_distributive_cache", None)
    if cached is not None:
        return cached
    verdict, triple = _distributivity_scan(lattice)
    found = forbidden_sublattice(lattice)
    if verdict != (found is None):
        raise RuntimeError("distributivity scan and sublattice search disagree")
    lattice._distributive_cache = (verdict, triple)
    return verdict, triple


class BooleanStructure:
    """A complement map decorating a lattice that supports one."""

    def __init__(self, host, complement):
        self.host = host
        self.complement = tuple(int(c) for c in complement)
        size = host.size
        if len(self.complement) != size:
            raise BadSpec("complement map has the wrong length")
        for x in range(size):
            c = self.complement[x]
            if not 0 <= c < size:
                raise BadSpec("complement map entry out of range")
            if host.meet[x][c] != host.bottom or host.join[x][c] != host.top:
                raise AxiomViolation(f"{host.names[x]!r} and its complement do not split bottom/top")
            if self.complement[c] != x:
                raise AxiomViolation("complement map is not an involution")


def is_boolean(lattice):
    """Boolean verdict; on success also the unique complement map."""
    cached = getattr(lattice, "_boolean_cache", None)
    if cached is not None:
        return cached
    distributive, _ = is_distributive(lattice)
    result = (False, None)
    if distributive:
        complement = []
        for x in range(lattice.size):
            mates = [y for y in range(lattice.size)
                     if lattice.meet[x][y] == lattice.bottom
                     and lattice.join[x][y] == lattice.top]
            if not mates:
                break
            complement.append(mates[0])
        else:
            result = (True, BooleanStructure(lattice, complement))
    lattice._boolean_cache = result
    return result


def median(lattice, x, y, z) -> int:
    """(x /\\ y) \\/ (x /\\ z) \\/ (y /\\ z).

    In a distributive lattice this equals the dual meet-of-joins form; on a
    non-distributive lattice only the meet-form is computed and a
    NonDistributiveMedian warning is emitted.
    """
    if not is_distributive(lattice)[0]:
        warnings.warn("median over a non-distributive lattice uses the meet-form only",
                      NonDistributiveMedian, stacklevel=2)
    meet, join = lattice.meet, lattice.join
    return join[join[meet[x][y]][meet[x][z]]][meet[y][z]]


class Embedding:
    """An injective map of a distributive lattice into the Boolean lattice 2^k.

    Image elements are bitmasks over the atoms; atom i of the target is the
    i-th nonzero join-irreducible element of the source, so bottom maps to
    the empty set and top to the full set.
    """

    def __init__(self, source, atoms, image):
        self.source = source
        self.atoms = tuple(atoms)
        self.target_atoms = len(self.atoms)
        self.image = tuple(int(m) for m in image)
        full = (1 << self.target_atoms) - 1
        size = source.size
        if len(set(self.image)) != size:
            raise RuntimeError("embedding is not injective")
        if self.image[source.bottom] != 0 or self.image[source.top] != full:
            raise RuntimeError("embedding does not send bottom/top to bottom/top")
        for a in range(size):
            for b in range(size):
                if self.image[source.meet[a][b]] != self.image[a] & self.image[b]:
                    raise RuntimeError("embedding does not preserve meet")
                if self.image[source.join[a][b]] != self.image[a] | self.image[b]:
                    raise RuntimeError("embedding does not preserve join")

    def preimage(self, mask):
        """Source element with the given image mask, or None."""
        try:
            return self.image.index(mask)
        except ValueError:
            return None


def join_irreducibles(lattice):
    """Nonzero elements that are not the join of the elements strictly below."""
    out = []
    for j in range(lattice.size):
        if j == lattice.bottom:
            continue
        below = lattice.bottom
        for x in range(lattice.size):
            if x != j and lattice.leq(x, j):
                below = lattice.join[below][x]
        if below != j:
            out.append(j)
    return out


def birkhoff_embed(lattice) -> Embedding:
    """Embed a distributive lattice into 2^J via its join-irreducibles."""
    distributive, _ = is_distributive(lattice)
    if not distributive:
        raise NotDistributive("only distributive lattices embed via join-irreducibles")
    atoms = join_irreducibles(lattice)
    image = []
    for x in range(lattice.size):
        mask = 0
        for i, j in enumerate(atoms):
            if lattice.leq(j, x):
                mask |= 1 << i
        image.append(mask)
    return Embedding(lattice, atoms, image)


def symdiff3(boolean, x, y, z) -> int:
    """Ternary symmetric difference ((x \\/ y \\/ z) /\\ m') \\/ (x /\\ y /\\ z)."""
    host = boolean.host
    meet, join = host.meet, host.join
    m = median(host, x, y, z)
    upper = join[join[x][y]][z]
    lower = meet[meet[x][y]][z]
    return join[meet[upper][boolean.complement[m]]][lower]


def semilattice_to_lattice(semilattice) -> FiniteLattice:
    """Extend a meet-semilattice with a top to a lattice.

    The join of a and b is the meet of their common upper bounds, which is
    nonempty because of the top and is itself an upper bound.
    """
    if semilattice.top is None:
        raise NoGreatestElement("a semilattice without a greatest element has no join")
    size = semilattice.size
    meet = semilattice.meet
    join = []
    for a in range(size):
        row = []
        for b in range(size):
            upper = [c for c in range(size)
                     if semilattice.leq(a, c) and semilattice.leq(b, c)]
            row.append(reduce(lambda x, y: meet[x][y], upper))
        join.append(row)
    return FiniteLattice(semilattice.names, meet, join, max_size=semilattice.size)


def is_distributive_semilattice(semilattice) -> bool:
    """Check that a >= b0 /\\ b1 always splits as a = a0 /\\ a1 with ai >= bi.

    When a top exists the verdict is cross-checked against distributivity of
    the lattice completion; disagreement would be an internal error.
    """
    meet = semilattice.meet
    size = semilattice.size
    verdict = True
    for b0 in range(size):
        for b1 in range(size):
            low = meet[b0][b1]
            for a in range(size):
                if meet[low][a] != low:
                    continue  # a is not above b0 /\ b1
                ok = any(meet[b0][a0] == b0 and meet[b1][a1] == b1 and meet[a0][a1] == a
                         for a0 in range(size) for a1 in range(size))
                if not ok:
                    verdict = False
                    break
            if not verdict:
                break
        if not verdict:
            break
    if semilattice.top is not None:
        completion_verdict, _ = is_distributive(semilattice_to_lattice(semilattice))
        if completion_verdict != verdict:
            raise RuntimeError("semilattice distributivity disagrees with its completion")
    return verdict
