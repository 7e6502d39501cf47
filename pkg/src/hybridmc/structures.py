"""Finite relational structures, graph classes, enumeration and isomorphism.

A :class:`Structure` is a nonempty finite domain of integer ids together
with interpretations for element symbols and relation symbols.  Structures
are value-semantic: :func:`extend` returns a new structure and never mutates
its input, so re-extension at every quantifier in the evaluator is safe.
"""

from __future__ import annotations

import itertools
import random

from .errors import InvalidExtensionError, SizeLimitError
from .symbols import AT, RESERVED_PREFIX, Symbol, rel_symbol, set_symbol


class Structure:
    """Finite structure: domain, element interpretations, relation interpretations.

    ``elems`` maps element symbols to ids; ``rels`` maps relation symbols to
    sets of tuples.  For unary relation symbols, bare ids are accepted and
    normalized to 1-tuples.
    """

    __slots__ = ("domain", "elems", "rels")

    def __init__(self, domain, elems=None, rels=None):
        domain = frozenset(domain)
        if not domain:
            raise ValueError("structure domains are nonempty")
        if not all(isinstance(x, int) and x >= 0 for x in domain):
            raise ValueError("element ids are nonnegative integers")
        self.domain = domain
        norm_elems = {}
        for sym, value in (elems or {}).items():
            self._check_symbol(sym, want_element=True)
            if value not in domain:
                raise InvalidExtensionError(
                    f"{sym!r} interpreted outside the domain: {value!r}")
            norm_elems[sym] = value
        norm_rels = {}
        for sym, tuples in (rels or {}).items():
            self._check_symbol(sym, want_element=False)
            norm_rels[sym] = self._normalize_tuples(sym, tuples, domain)
        self.elems = norm_elems
        self.rels = norm_rels

    @staticmethod
    def _check_symbol(sym, want_element):
        if not isinstance(sym, Symbol):
            raise TypeError(f"signature keys are symbols, got {sym!r}")
        if sym.name.startswith(RESERVED_PREFIX):
            raise ValueError(f"reserved symbol {sym.name!r} in a signature")
        if want_element and not sym.is_element:
            raise InvalidExtensionError(f"{sym!r} is not an element symbol")
        if not want_element and not sym.is_relation:
            raise InvalidExtensionError(f"{sym!r} is not a relation symbol")

    @staticmethod
    def _normalize_tuples(sym, tuples, domain):
        out = set()
        for t in tuples:
            if sym.arity == 1 and isinstance(t, int):
                t = (t,)
            t = tuple(t)
            if len(t) != sym.arity:
                raise InvalidExtensionError(
                    f"tuple {t!r} does not match arity of {sym!r}")
            if not all(x in domain for x in t):
                raise InvalidExtensionError(
                    f"tuple {t!r} for {sym!r} leaves the domain")
            out.add(t)
        return frozenset(out)

    # -- accessors ---------------------------------------------------------

    def sig(self) -> frozenset[Symbol]:
        return frozenset(self.elems) | frozenset(self.rels)

    @property
    def is_pointed(self) -> bool:
        return AT in self.elems

    @property
    def point(self) -> int:
        return self.elems[AT]

    def set_of(self, sym: Symbol) -> frozenset[int]:
        """A unary relation as a plain set of ids."""
        return frozenset(t[0] for t in self.rels[sym])

    def size(self) -> int:
        return len(self.domain)

    # -- value semantics ---------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Structure)
                and self.domain == other.domain
                and self.elems == other.elems
                and self.rels == other.rels)

    __hash__ = None

    def __repr__(self):
        parts = [f"|{len(self.domain)}|"]
        for s in sorted(self.elems, key=lambda s: s.name):
            parts.append(f"{s.name}={self.elems[s]}")
        for s in sorted(self.rels, key=lambda s: s.name):
            parts.append(f"{s.name}:{len(self.rels[s])}")
        return "Structure(" + " ".join(parts) + ")"


def extend(structure: Structure, sym: Symbol, value) -> Structure:
    """Persistent update: interpret ``sym`` as ``value``, keep everything else.

    ``value`` is an element id for element symbols and a set of
    arity-matching tuples (bare ids for set symbols) otherwise.
    """
    if sym.is_element:
        elems = dict(structure.elems)
        elems[sym] = value
        return Structure(structure.domain, elems, structure.rels)
    rels = dict(structure.rels)
    rels[sym] = value
    return Structure(structure.domain, structure.elems, rels)


# ------------------------------------------------------------- graph classes


class GraphClass:
    """One of the structure classes: digraph, graph, grid, pointed digraph."""

    __slots__ = ("kind", "t", "u")

    def __init__(self, kind, t=0, u=1):
        if kind not in ("digraph", "graph", "grid", "pdigraph"):
            raise ValueError(f"unknown class kind {kind!r}")
        if kind == "grid":
            u = 2
        if kind == "pdigraph":
            t, u = 0, 1
        if t < 0 or u < 0:
            raise ValueError("label/relation counts are nonnegative")
        self.kind = kind
        self.t = t
        self.u = u

    def __eq__(self, other):
        return (isinstance(other, GraphClass) and self.kind == other.kind
                and self.t == other.t and self.u == other.u)

    def __hash__(self):
        return hash((self.kind, self.t, self.u))

    def __repr__(self):
        if self.kind == "pdigraph":
            return "PDIGRAPH"
        if self.kind == "grid":
            return f"GRID[{self.t}]"
        return f"{self.kind.upper()}[{self.t},{self.u}]"

    def label_symbols(self) -> tuple[Symbol, ...]:
        return label_symbols(self.t)

    def relation_symbols(self) -> tuple[Symbol, ...]:
        return relation_symbols(self.u)

    def expected_signature(self) -> frozenset[Symbol]:
        sig = set(self.label_symbols()) | set(self.relation_symbols())
        if self.kind == "pdigraph":
            sig.add(AT)
        return frozenset(sig)


def DIGRAPH(t=0, u=1) -> GraphClass:
    return GraphClass("digraph", t, u)


def GRAPH(t=0, u=1) -> GraphClass:
    return GraphClass("graph", t, u)


def GRID(t=0) -> GraphClass:
    return GraphClass("grid", t, 2)


def PDIGRAPH() -> GraphClass:
    return GraphClass("pdigraph")


def label_symbols(t: int) -> tuple[Symbol, ...]:
    """Label symbols for a t-bit class: ``P`` if t == 1, else ``P1..Pt``."""
    if t == 1:
        return (set_symbol("P"),)
    return tuple(set_symbol(f"P{i}") for i in range(1, t + 1))


def relation_symbols(u: int) -> tuple[Symbol, ...]:
    """Edge-relation symbols for a u-relational class: ``R`` or ``R1..Ru``."""
    if u == 1:
        return (rel_symbol("R"),)
    return tuple(rel_symbol(f"R{i}") for i in range(1, u + 1))


# -------------------------------------------------------------------- grids


def make_grid(m: int, n: int, labels=()) -> Structure:
    """The m-by-n grid with vertical (R1) and horizontal (R2) successors.

    Cell (i, j), 1-indexed, gets id ``(i-1)*n + (j-1)``.  ``labels`` is a
    sequence of subsets of cells, each given as (i, j) pairs or raw ids.
    """
    if m < 1 or n < 1:
        raise ValueError("grids have at least one row and one column")

    def cell_id(c):
        if isinstance(c, int):
            if not 0 <= c < m * n:
                raise ValueError(f"cell id {c} out of range")
            return c
        i, j = c
        if not (1 <= i <= m and 1 <= j <= n):
            raise ValueError(f"cell {c!r} outside the {m}x{n} grid")
        return (i - 1) * n + (j - 1)

    labels = [list(cells) for cells in labels]
    r1, r2 = relation_symbols(2)
    vertical = {(cell_id((i, j)), cell_id((i + 1, j)))
                for i in range(1, m) for j in range(1, n + 1)}
    horizontal = {(cell_id((i, j)), cell_id((i, j + 1)))
                  for i in range(1, m + 1) for j in range(1, n)}
    rels = {r1: vertical, r2: horizontal}
    for sym, cells in zip(label_symbols(len(labels)), labels):
        rels[sym] = {(cell_id(c),) for c in cells}
    return Structure(range(m * n), {}, rels)


def grid_coordinates(structure: Structure):
    """Map ids to 1-indexed (row, column) pairs if the R1/R2 reduct is a grid.

    Returns ``None`` when the reduct is not a grid.  Works structurally:
    locate the unique element without predecessors, assign coordinates by
    path-following, then check both relations are exactly the successor
    relations of the assigned coordinates.
    """
    r1, r2 = relation_symbols(2)
    if r1 not in structure.rels or r2 not in structure.rels:
        return None
    rel1, rel2 = structure.rels[r1], structure.rels[r2]
    succ1, succ2 = {}, {}
    has_pred = set()
    for a, b in rel1:
        if a in succ1:
            return None  # not functional
        succ1[a] = b
        has_pred.add(b)
    for a, b in rel2:
        if a in succ2:
            return None
        succ2[a] = b
        has_pred.add(b)
    corners = [x for x in structure.domain if x not in has_pred]
    if len(corners) != 1:
        return None
    corner = corners[0]

    def chain(start, succ):
        out = [start]
        seen = {start}
        while out[-1] in succ:
            nxt = succ[out[-1]]
            if nxt in seen:
                return None  # cycle
            out.append(nxt)
            seen.add(nxt)
        return out

    first_col = chain(corner, succ1)
    if first_col is None:
        return None
    coords = {}
    n_cols = None
    for i, row_start in enumerate(first_col, start=1):
        row = chain(row_start, succ2)
        if row is None:
            return None
        if n_cols is None:
            n_cols = len(row)
        elif len(row) != n_cols:
            return None
        for j, x in enumerate(row, start=1):
            if x in coords:
                return None
            coords[x] = (i, j)
    if len(coords) != len(structure.domain):
        return None
    m, n = len(first_col), n_cols
    expected1 = {(a, b) for a, (i, j) in coords.items()
                 for b, (i2, j2) in coords.items() if i2 == i + 1 and j2 == j}
    expected2 = {(a, b) for a, (i, j) in coords.items()
                 for b, (i2, j2) in coords.items() if i2 == i and j2 == j + 1}
    if rel1 != frozenset(expected1) or rel2 != frozenset(expected2):
        return None
    return coords


def is_grid(structure: Structure) -> bool:
    """Structural grid test for structures whose signature is exactly {R1, R2}."""
    if structure.sig() != frozenset(relation_symbols(2)):
        raise ValueError("is_grid expects signature exactly {R1, R2}")
    return grid_coordinates(structure) is not None


def validate(structure: Structure, cls: GraphClass) -> bool:
    """Class membership: signature match plus the class's structural conditions."""
    if structure.sig() != cls.expected_signature():
        return False
    if cls.kind == "graph":
        for sym in cls.relation_symbols():
            tuples = structure.rels[sym]
            for a, b in tuples:
                if a == b or (b, a) not in tuples:
                    return False
    if cls.kind == "grid":
        return grid_coordinates(structure) is not None
    if cls.kind == "pdigraph":
        return AT in structure.elems
    return True


# -------------------------------------------------------------- isomorphism


def _invariant(structure, order_syms):
    """Per-element refinement vector used to prune the isomorphism search."""
    inv = {x: [] for x in structure.domain}
    for sym in order_syms:
        tuples = structure.rels[sym]
        for x in structure.domain:
            out_deg = sum(1 for t in tuples if t[0] == x)
            in_deg = sum(1 for t in tuples if t[-1] == x)
            member = sum(1 for t in tuples if x in t)
            inv[x].extend((out_deg, in_deg, member))
    return {x: tuple(v) for x, v in inv.items()}


def isomorphic(a: Structure, b: Structure, cap: int = 8) -> bool:
    """Signature-preserving bijection test by backtracking search.

    Raises :class:`SizeLimitError` above ``cap`` elements.
    """
    if len(a.domain) > cap or len(b.domain) > cap:
        raise SizeLimitError(f"isomorphism capped at {cap} elements")
    if a.sig() != b.sig() or len(a.domain) != len(b.domain):
        return False
    rel_syms = sorted(a.rels, key=lambda s: (s.name, s.arity))
    inv_a = _invariant(a, rel_syms)
    inv_b = _invariant(b, rel_syms)
    if sorted(inv_a.values()) != sorted(inv_b.values()):
        return False
    xs = sorted(a.domain, key=lambda x: inv_a[x])
    mapping = {}
    used = set()

    def consistent(x, y):
        if inv_a[x] != inv_b[y]:
            return False
        for sym, val in a.elems.items():
            if val == x and b.elems[sym] != y:
                return False
            if b.elems[sym] == y and val != x:
                return False
        for sym in rel_syms:
            ta, tb = a.rels[sym], b.rels[sym]
            for t in ta:
                if x in t and all(z in mapping or z == x for z in t):
                    img = tuple(y if z == x else mapping[z] for z in t)
                    if img not in tb:
                        return False
            for t in tb:
                if y in t and all(z in used or z == y for z in t):
                    back = {v: k for k, v in mapping.items()}
                    back[y] = x
                    pre = tuple(back[z] for z in t)
                    if pre not in ta:
                        return False
        return True

    def search(i):
        if i == len(xs):
            return True
        x = xs[i]
        for y in sorted(b.domain):
            if y in used or not consistent(x, y):
                continue
            mapping[x] = y
            used.add(y)
            if search(i + 1):
                return True
            del mapping[x]
            used.remove(y)
        return False

    return search(0)


def canonical_key(structure: Structure):
    """A label-invariant key: minimal serialization over all relabelings.

    Only suitable for small structures (factorial in the domain size).
    """
    ids = sorted(structure.domain)
    elem_syms = sorted(structure.elems, key=lambda s: s.name)
    rel_syms = sorted(structure.rels, key=lambda s: (s.name, s.arity))
    best = None
    for perm in itertools.permutations(range(len(ids))):
        relabel = {x: perm[i] for i, x in enumerate(ids)}
        key = (
            tuple(relabel[structure.elems[s]] for s in elem_syms),
            tuple(tuple(sorted(tuple(relabel[x] for x in t)
                               for t in structure.rels[s]))
                  for s in rel_syms),
        )
        if best is None or key < best:
            best = key
    return (len(ids), tuple(s.name for s in elem_syms),
            tuple((s.name, s.arity) for s in rel_syms), best)


# -------------------------------------------------------------- enumeration


def _subsets(items):
    items = list(items)
    for mask in range(1 << len(items)):
        yield frozenset(items[i] for i in range(len(items)) if mask >> i & 1)


def enumerate_structures(cls: GraphClass, max_size: int, dedup: bool = False):
    """Yield every structure of the class with at most ``max_size`` elements.

    With ``dedup`` set, one representative per isomorphism class is produced
    (by canonical form, so keep ``max_size`` small).
    """
    seen = set()

    def emit(structure):
        if dedup:
            key = canonical_key(structure)
            if key in seen:
                return None
            seen.add(key)
        return structure

    for s in _enumerate_raw(cls, max_size):
        out = emit(s)
        if out is not None:
            yield out


def _enumerate_raw(cls, max_size):
    labels = label_symbols(cls.t)
    if cls.kind == "grid":
        for total in range(1, max_size + 1):
            for m in range(1, total + 1):
                if total % m:
                    continue
                n = total // m
                cells = list(range(total))
                for assignment in itertools.product(*(_subsets(cells)
                                                      for _ in labels)):
                    yield make_grid(m, n, assignment)
        return
    rels = relation_symbols(cls.u)
    for d in range(1, max_size + 1):
        ids = list(range(d))
        if cls.kind == "graph":
            pairs = list(itertools.combinations(ids, 2))
            rel_spaces = [[frozenset(p for pair in ps for p in
                                     [(pair[0], pair[1]), (pair[1], pair[0])])
                           for ps in _subsets(pairs)] for _ in rels]
        else:
            all_pairs = list(itertools.product(ids, ids))
            rel_spaces = [list(_subsets(all_pairs)) for _ in rels]
        label_space = [list(_subsets(ids)) for _ in labels]
        for label_choice in itertools.product(*label_space):
            for rel_choice in itertools.product(*rel_spaces):
                rel_interp = {sym: {(x,) for x in chosen}
                              for sym, chosen in zip(labels, label_choice)}
                rel_interp.update(dict(zip(rels, rel_choice)))
                base = Structure(ids, {}, rel_interp)
                if cls.kind == "pdigraph":
                    for point in ids:
                        yield extend(base, AT, point)
                else:
                    yield base


def count_structures(cls: GraphClass, max_size: int) -> int:
    return sum(1 for _ in enumerate_structures(cls, max_size))


def random_structure(cls: GraphClass, size: int, rng: random.Random) -> Structure:
    """A uniformly random structure of the class with exactly ``size`` elements."""
    ids = list(range(size))
    rels = {}
    for sym in label_symbols(cls.t):
        rels[sym] = {(x,) for x in ids if rng.random() < 0.5}
    for sym in relation_symbols(cls.u):
        if cls.kind == "graph":
            chosen = set()
            for a, b in itertools.combinations(ids, 2):
                if rng.random() < 0.5:
                    chosen.add((a, b))
                    chosen.add((b, a))
            rels[sym] = chosen
        else:
            rels[sym] = {(a, b) for a in ids for b in ids
                         if rng.random() < 0.5}
    if cls.kind == "grid":
        raise ValueError("sample grids by choosing a shape and labels instead")
    base = Structure(ids, {}, rels)
    if cls.kind == "pdigraph":
        return extend(base, AT, rng.choice(ids))
    return base
