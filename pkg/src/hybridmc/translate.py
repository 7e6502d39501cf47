"""Source-to-source translations: the standard translation to first-order
logic, and the generic kit-driven sentence translators across a linear
encoding.

A forward kit gives, for every atom and modality of the source signature, a
target formula with reserved placeholder set symbols (``$Y``, ``$Y1`` ...);
a backward kit gives position-indexed tables (one formula per extra-element
index or copy index ``h``) with placeholders ``$X<i>_<j>`` and ``$X_<j>``.
Kits are data rather than code so that :func:`check_kit` can audit every
defining clause against the encoding by exhaustive search.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

from .errors import (BudgetExceededError, FragmentError, IncompleteKitError)
from .formulas import (BOT, TOP, Diamond, ExistsElem, ExistsSet, Formula,
                       Nominal, Not, Or, RelApp, SetApp, SetAtom, all_symbols,
                       and_list, desugar, free_symbols, has_set_quantifier,
                       or_list, substitute_point, substitute_sets)
from .fragments import HBG, in_fragment
from .structures import Structure, extend
from .symbols import AT, GLOBAL, Modality, Symbol, fresh_symbol, set_symbol
from .evaluator import DEFAULT_CONFIG, EvalConfig, _Context, _eval


# ------------------------------------------------------- standard translation


def std_translate(formula: Formula) -> Formula:
    """Translate a hybrid formula (backward and global modalities allowed)
    into an equivalent first-order formula.

    Nominals become equalities with ``@``, set atoms become applications at
    ``@``, diamonds introduce fresh element variables, and the global diamond
    requantifies ``@`` itself.
    """
    formula = desugar(formula)
    if not in_fragment(formula, HBG):
        raise FragmentError("standard translation applies to HBG formulas")
    return _std(formula)


def _std(f):
    t = type(f)
    if t is Nominal:
        from .formulas import Eq
        return Eq(AT, f.sym)
    if t is SetAtom:
        return SetApp(f.sym, AT)
    if t is Not:
        return Not(_std(f.sub))
    if t is Or:
        return Or(_std(f.left), _std(f.right))
    if t is Diamond:
        mod = f.mod
        if mod.kind == "global":
            return ExistsElem(AT, _std(f.args[0]))
        translated = [_std(a) for a in f.args]
        avoid = set().union(*(all_symbols(g) for g in translated)) | {AT, mod.sym}
        xs = []
        for _ in range(mod.k):
            x = fresh_symbol("element", avoid)
            xs.append(x)
            avoid.add(x)
        if mod.kind == "rel":
            rel_args = (AT, *xs)
        else:
            rel_args = (*reversed(xs), AT)
        parts = [RelApp(mod.sym, rel_args)]
        parts.extend(substitute_point(g, x) for g, x in zip(translated, xs))
        body = desugar(and_list(parts))
        for x in reversed(xs):
            body = ExistsElem(x, body)
        return body
    raise FragmentError(f"unexpected node in HBG formula: {f!r}")


# ------------------------------------------------------------- placeholders


def placeholder_ini() -> Symbol:
    return set_symbol("$Y")


def placeholder_fwd(i: int) -> Symbol:
    return set_symbol(f"$Y{i}")


def placeholder_bwd(i: int, j: int) -> Symbol:
    return set_symbol(f"$X{i}_{j}")


def placeholder_bwd_ini(j: int) -> Symbol:
    return set_symbol(f"$X_{j}")


# ---------------------------------------------------------------------- kits


@dataclass(frozen=True)
class ForwardKit:
    """Formula tables that push sentences across an encoding, source to target."""

    name: str
    source_sig: frozenset[Symbol]
    target_sig: frozenset[Symbol]
    atoms: Mapping[Symbol, Formula]
    rels: Mapping[Modality, Formula]
    ini: Formula

    @property
    def has_backward(self) -> bool:
        return any(m.kind == "inv" for m in self.rels)

    @property
    def has_global(self) -> bool:
        return any(m.kind == "global" for m in self.rels)


@dataclass(frozen=True)
class BackwardKit:
    """Position-indexed formula tables that pull sentences back across an
    encoding, target to source."""

    name: str
    source_sig: frozenset[Symbol]
    target_sig: frozenset[Symbol]
    m: int
    n: int
    atoms: Mapping[tuple[Symbol, int], Formula]
    rels: Mapping[tuple[Modality, int], Formula]
    ini: Formula

    def __post_init__(self):
        if not 1 <= self.m <= self.n:
            raise ValueError("backward kits need 1 <= m <= n")

    @property
    def has_backward(self) -> bool:
        return any(m.kind == "inv" for m, _ in self.rels)

    @property
    def has_global(self) -> bool:
        return any(m.kind == "global" for m, _ in self.rels)


# ------------------------------------------------------------- prenex merging


def _is_kernel_shape(f) -> bool:
    return not has_set_quantifier(f)


def prenex_or(disjuncts, avoid=None) -> Formula:
    """Disjunction of prenex-classifiable formulas, merged back into prenex
    shape by pulling out (and freshening) quantifier blocks.

    Valid because distinct blocks quantify independent symbols; used where a
    translator introduces a disjunction over same-shaped sentences.
    """
    return _prenex_merge(list(disjuncts), set(avoid or ()), under_or=True)


def prenex_and(conjuncts, avoid=None) -> Formula:
    """Dual of :func:`prenex_or` for conjunctions."""
    return _prenex_merge(list(conjuncts), set(avoid or ()), under_or=False)


def _prenex_merge(items, avoid, under_or):
    items = [desugar(f) for f in items]
    for f in items:
        avoid |= all_symbols(f)
    if all(_is_kernel_shape(f) for f in items):
        return or_list(items) if under_or else desugar(and_list(items))
    prefix = []
    work = list(items)
    changed = True
    while changed:
        changed = False
        for idx, f in enumerate(work):
            if type(f) is ExistsSet:
                fresh = fresh_symbol("set", avoid)
                avoid.add(fresh)
                work[idx] = substitute_sets(f.body, {f.var: SetAtom(fresh)})
                prefix.append(fresh)
                changed = True
    # every remaining item is negation-headed or kernel
    inner = []
    for f in work:
        if type(f) is Not:
            inner.append(f.sub)
        else:
            if not _is_kernel_shape(f):
                raise FragmentError(
                    "prenex merging needs prenex-classifiable operands")
            inner.append(Not(f))
    body = Not(_prenex_merge(inner, avoid, not under_or))
    for v in reversed(prefix):
        body = ExistsSet(v, body)
    return body


# --------------------------------------------------------- forward translator


def forward_translate(kit: ForwardKit, formula: Formula) -> Formula:
    """Translate a prenex-classifiable sentence over the source signature into
    one over the target signature, set quantifiers passing through untouched.
    """
    formula = desugar(formula)
    reserved = {s for s in all_symbols(kit.ini)} | set(kit.atoms)
    for f in kit.rels.values():
        reserved |= all_symbols(f)

    def kernel(f):
        t = type(f)
        if t is Nominal:
            if f.sym == AT:
                return f
            if f.sym in kit.atoms:
                return kit.atoms[f.sym]
            if f.sym in kit.source_sig:
                raise IncompleteKitError(f"no atom clause for {f.sym!r}")
            raise FragmentError(f"unknown element symbol {f.sym!r} in kernel")
        if t is SetAtom:
            if f.sym in kit.atoms:
                return kit.atoms[f.sym]
            if f.sym in kit.source_sig:
                raise IncompleteKitError(f"no atom clause for {f.sym!r}")
            return f  # free set variable: passes through
        if t is Not:
            return Not(kernel(f.sub))
        if t is Or:
            return Or(kernel(f.left), kernel(f.right))
        if t is Diamond:
            key = f.mod
            if key not in kit.rels:
                raise IncompleteKitError(f"no modality clause for {key!r}")
            template = kit.rels[key]
            bindings = {placeholder_fwd(i + 1): kernel(arg)
                        for i, arg in enumerate(f.args)}
            return substitute_sets(template, bindings)
        raise FragmentError(f"node outside the hybrid kernel: {f!r}")

    def sentence(f):
        if not has_set_quantifier(f):
            return substitute_sets(kit.ini, {placeholder_ini(): kernel(f)})
        t = type(f)
        if t is Not:
            return Not(sentence(f.sub))
        if t is Or:
            return Or(sentence(f.left), sentence(f.right))
        if t is ExistsSet:
            var, body = f.var, f.body
            if var in kit.source_sig or var in kit.target_sig or var in reserved:
                fresh = fresh_symbol("set", all_symbols(f) | reserved
                                     | kit.source_sig | kit.target_sig)
                body = substitute_sets(body, {var: SetAtom(fresh)})
                var = fresh
            return ExistsSet(var, sentence(body))
        raise FragmentError(
            "sentence is not prenex-classifiable over the source kernel")

    return sentence(formula)


# -------------------------------------------------------- backward translator


def backward_translate(kit: BackwardKit, formula: Formula,
                       budget: int = 16) -> Formula:
    """Translate a prenex-classifiable sentence over the target signature into
    one over the source signature.

    Each set quantifier becomes a block of quantifiers over the copy-indexed
    variants of its variable, disjoined over the two-valued choices for the
    extra-element indices; the disjunction is merged back into prenex shape.
    ``budget`` caps ``(n - m) * (number of set quantifiers)``.
    """
    formula = desugar(formula)
    quants = _count_set_quantifiers(formula)
    if (kit.n - kit.m) * quants > budget:
        raise BudgetExceededError(
            f"(n-m)={kit.n - kit.m} with {quants} set quantifiers exceeds "
            f"budget {budget}")
    state = _BwdState(kit, formula)
    return state.sentence(formula)


def backward_translate_at(kit: BackwardKit, formula: Formula, h: int,
                          budget: int = 16) -> Formula:
    """Position-indexed translation that keeps the index through quantifiers.

    Unlike :func:`backward_translate` this never applies the kit's initial
    clause; the result speaks about the target structure from the fixed
    position ``h`` (a copy index when ``h <= m``, an extra element otherwise).
    """
    formula = desugar(formula)
    quants = _count_set_quantifiers(formula)
    if (kit.n - kit.m) * quants > budget:
        raise BudgetExceededError("quantifier blow-up budget exceeded")
    state = _BwdState(kit, formula)
    return state.merged(formula, h)


def _count_set_quantifiers(f):
    t = type(f)
    if t is ExistsSet:
        return 1 + _count_set_quantifiers(f.body)
    if t is Not:
        return _count_set_quantifiers(f.sub)
    if t is Or:
        return _count_set_quantifiers(f.left) + _count_set_quantifiers(f.right)
    if t is Diamond:
        return sum(_count_set_quantifiers(a) for a in f.args)
    return 0


class _BwdState:
    def __init__(self, kit, formula):
        self.kit = kit
        self.forbidden = {s.name for s in all_symbols(formula)}
        self.forbidden |= {s.name for s in kit.source_sig | kit.target_sig}
        for f in itertools.chain(kit.atoms.values(), kit.rels.values(),
                                 (kit.ini,)):
            self.forbidden |= {s.name for s in all_symbols(f)}
        self._copies = {}

    def copy_var(self, var: Symbol, j: int) -> Symbol:
        """The copy-indexed variant of a quantified set variable."""
        key = (var.name, j)
        if key not in self._copies:
            name = f"{var.name}_{j}"
            while name in self.forbidden:
                name = "_" + name
            self._copies[key] = set_symbol(name)
        return self._copies[key]

    def kernel(self, f, h):
        kit = self.kit
        t = type(f)
        if t is Nominal:
            if f.sym == AT:
                return f
            key = (f.sym, h)
            if key in kit.atoms:
                return kit.atoms[key]
            raise IncompleteKitError(f"no atom clause for {f.sym!r} at {h}")
        if t is SetAtom:
            key = (f.sym, h)
            if key in kit.atoms:
                return kit.atoms[key]
            if f.sym in kit.target_sig:
                raise IncompleteKitError(f"no atom clause for {f.sym!r} at {h}")
            return SetAtom(self.copy_var(f.sym, h))
        if t is Not:
            return Not(self.kernel(f.sub, h))
        if t is Or:
            return Or(self.kernel(f.left, h), self.kernel(f.right, h))
        if t is Diamond:
            key = (f.mod, h)
            if key not in kit.rels:
                raise IncompleteKitError(f"no modality clause for {f.mod!r} at {h}")
            template = kit.rels[key]
            needed = {s for s in free_symbols(template)}
            bindings = {}
            for i, arg in enumerate(f.args, start=1):
                for j in range(1, kit.n + 1):
                    ph = placeholder_bwd(i, j)
                    if ph in needed:
                        bindings[ph] = self.kernel(arg, j)
            return substitute_sets(template, bindings)
        raise FragmentError(f"node outside the hybrid kernel: {f!r}")

    def _quantifier(self, f, translate_body):
        kit = self.kit
        var, body = f.var, f.body
        inner = translate_body(body)
        extras = list(range(kit.m + 1, kit.n + 1))
        disjuncts = []
        for chosen in itertools.product((False, True), repeat=len(extras)):
            flags = {self.copy_var(var, j): (TOP if pick else BOT)
                     for j, pick in zip(extras, chosen)}
            disjuncts.append(substitute_sets(inner, flags) if flags else inner)
        merged = prenex_or(disjuncts)
        out = merged
        for j in range(kit.m, 0, -1):
            out = ExistsSet(self.copy_var(var, j), out)
        return out

    def sentence(self, f):
        kit = self.kit
        if not has_set_quantifier(f):
            family = {placeholder_bwd_ini(j): self.kernel(f, j)
                      for j in range(1, kit.n + 1)
                      if placeholder_bwd_ini(j) in free_symbols(kit.ini)}
            return substitute_sets(kit.ini, family)
        t = type(f)
        if t is Not:
            return Not(self.sentence(f.sub))
        if t is Or:
            return Or(self.sentence(f.left), self.sentence(f.right))
        if t is ExistsSet:
            return self._quantifier(f, self.sentence)
        raise FragmentError(
            "sentence is not prenex-classifiable over the target kernel")

    def merged(self, f, h):
        if not has_set_quantifier(f):
            return self.kernel(f, h)
        t = type(f)
        if t is Not:
            return Not(self.merged(f.sub, h))
        if t is Or:
            return Or(self.merged(f.left, h), self.merged(f.right, h))
        if t is ExistsSet:
            return self._quantifier(f, lambda body: self.merged(body, h))
        raise FragmentError(
            "sentence is not prenex-classifiable over the target kernel")


# ---------------------------------------------------------------- kit checks


@dataclass
class ClauseResult:
    clause: str
    checked: int = 0
    counterexample: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None


@dataclass
class KitReport:
    kit_name: str
    direction: str
    clauses: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)

    def render(self) -> str:
        lines = [f"{self.direction} kit {self.kit_name}:"]
        for c in self.clauses:
            status = "PASS" if c.passed else f"FAIL  {c.counterexample}"
            lines.append(f"  clause {c.clause}: {status}  [{c.checked} checks]")
        return "\n".join(lines)


def _subset_masks_of(count):
    return range(1 << count)


def _mask_to_tuples(mask, ids):
    return {(x,) for i, x in enumerate(ids) if mask >> i & 1}


def check_forward_kit(kit: ForwardKit, encoding, max_size: int,
                      full_b_limit: int = 8, samples=None,
                      cfg: EvalConfig = DEFAULT_CONFIG) -> KitReport:
    """Verify each defining clause of a forward kit as a bi-implication over
    every source structure up to ``max_size``.

    Target-side sets range over all subsets when the encoded domain has at
    most ``full_b_limit`` elements; beyond that, each source-side set is
    paired with its plain lift, the lift plus every non-copy-1 element, and
    two seeded random paddings, which exercises independence from the extra
    elements without the exponential sweep.
    """
    report = KitReport(kit.name, "forward")
    atoms = ClauseResult("a (atoms)")
    rel_clause = ClauseResult("b (relations)")
    inv_clause = ClauseResult("c (backward)")
    glob_clause = ClauseResult("d (global)")
    ini_clause = ClauseResult("e (initial)")
    rng = random.Random(20240229)

    for base in _iter_sources(encoding, max_size, samples, rng):
        enc = encoding.encode(base)
        target, table = enc.structure, enc.table
        src_ids = sorted(base.domain)
        tgt_ids = sorted(target.domain)
        tgt_ctx = _Context(target, cfg)
        lift = {a: table.copy_ids[(1, a)] for a in src_ids}

        def b_choices(src_mask):
            lifted = 0
            for i, a in enumerate(src_ids):
                if src_mask >> i & 1:
                    lifted |= 1 << tgt_ids.index(lift[a])
            if len(tgt_ids) <= full_b_limit:
                other_bits = [i for i, x in enumerate(tgt_ids)
                              if x not in lift.values()]
                for extra_mask in _subset_masks_of(len(other_bits)):
                    extra = 0
                    for i, bit in enumerate(other_bits):
                        if extra_mask >> i & 1:
                            extra |= 1 << bit
                    yield lifted | extra
            else:
                all_extra = sum(1 << i for i, x in enumerate(tgt_ids)
                                if x not in lift.values())
                yield lifted
                yield lifted | all_extra
                for _ in range(2):
                    pad = 0
                    for i, x in enumerate(tgt_ids):
                        if x not in lift.values() and rng.random() < 0.5:
                            pad |= 1 << i
                    yield lifted | pad

        # clause (a): atoms
        for sym, psi in kit.atoms.items():
            for a in src_ids:
                lhs = (base.elems[sym] == a if sym.is_element
                       else (a,) in base.rels[sym])
                rhs = _eval(psi, tgt_ctx, {AT: lift[a]}, {})
                atoms.checked += 1
                if lhs != rhs and atoms.counterexample is None:
                    atoms.counterexample = f"{sym!r} at {a} on {base!r}"

        # clauses (b)-(d): modalities
        for mod, psi in kit.rels.items():
            result = {"rel": rel_clause, "inv": inv_clause,
                      "global": glob_clause}[mod.kind]
            k = mod.k
            for a in src_ids:
                for src_masks in itertools.product(
                        _subset_masks_of(len(src_ids)), repeat=k):
                    src_sets = [{src_ids[i] for i in range(len(src_ids))
                                 if mask >> i & 1} for mask in src_masks]
                    lhs = _direct_diamond(base, mod, a, src_sets)
                    for b_masks in itertools.product(
                            *(b_choices(mask) for mask in src_masks)):
                        env = {placeholder_fwd(i + 1): bm
                               for i, bm in enumerate(b_masks)}
                        rhs = _eval(psi, tgt_ctx, {AT: lift[a]}, env)
                        result.checked += 1
                        if lhs != rhs and result.counterexample is None:
                            result.counterexample = (
                                f"{mod!r} at {a}, sets {src_sets} on {base!r}")

        # clause (e): initial
        pointed = AT in kit.source_sig
        for src_mask in _subset_masks_of(len(src_ids)):
            src_set = {src_ids[i] for i in range(len(src_ids))
                       if src_mask >> i & 1}
            if pointed:
                lhs = base.elems[AT] in src_set
            else:
                lhs = bool(src_set)
            for b_mask in b_choices(src_mask):
                rhs = _eval(kit.ini, tgt_ctx, {}, {placeholder_ini(): b_mask})
                ini_clause.checked += 1
                if lhs != rhs and ini_clause.counterexample is None:
                    ini_clause.counterexample = f"set {src_set} on {base!r}"

    report.clauses = [atoms, rel_clause, inv_clause, glob_clause, ini_clause]
    return report


def _direct_diamond(structure, mod, a, sets):
    """Truth of a diamond over marker sets, computed straight from the tuples."""
    if mod.kind == "global":
        return bool(sets[0])
    tuples = structure.rels[mod.sym]
    for t in tuples:
        if mod.kind == "rel":
            if t[0] != a:
                continue
            rest = t[1:]
        else:
            if t[-1] != a:
                continue
            rest = tuple(reversed(t[:-1]))
        if all(b in s for b, s in zip(rest, sets)):
            return True
    return False


def _diamond_true_mask(structure, mod, arg_masks, bit):
    """Bitmask of elements where the diamond over marker masks holds."""
    if mod.kind == "global":
        full = (1 << len(bit)) - 1
        return full if arg_masks[0] else 0
    out = 0
    for t in structure.rels[mod.sym]:
        if mod.kind == "rel":
            head, rest = t[0], t[1:]
        else:
            head, rest = t[-1], tuple(reversed(t[:-1]))
        if all(arg_masks[i] & bit[b] for i, b in enumerate(rest)):
            out |= bit[head]
    return out


def check_backward_kit(kit: BackwardKit, encoding, max_size: int,
                       samples=None,
                       cfg: EvalConfig = DEFAULT_CONFIG) -> KitReport:
    """Verify each defining clause of a backward kit over every source
    structure up to ``max_size`` and every required assignment: copy-indexed
    sets range over all subsets of the source domain, extra-element sets over
    empty and full only."""
    report = KitReport(kit.name, "backward")
    atoms = ClauseResult("a (atoms)")
    rel_clause = ClauseResult("b (relations)")
    inv_clause = ClauseResult("c (backward)")
    glob_clause = ClauseResult("d (global)")
    ini_clause = ClauseResult("e (initial)")
    rng = random.Random(20240301)
    m, n = kit.m, kit.n

    for base in _iter_sources(encoding, max_size, samples, rng):
        enc = encoding.encode(base)
        target, table = enc.structure, enc.table
        src_ids = sorted(base.domain)
        src_ctx = _Context(base, cfg)
        tgt_ids = sorted(target.domain)
        tgt_bit = {x: 1 << i for i, x in enumerate(tgt_ids)}

        def position(h, a):
            return (table.copy_ids[(h, a)] if h <= m
                    else table.extra_ids[h])

        def build_b(assignment):
            """Lift a (j -> source mask) family to a target mask."""
            out = 0
            for j in range(1, m + 1):
                mask = assignment[j]
                for i, a in enumerate(src_ids):
                    if mask >> i & 1:
                        out |= tgt_bit[table.copy_ids[(j, a)]]
            for j in range(m + 1, n + 1):
                if assignment[j]:
                    out |= tgt_bit[table.extra_ids[j]]
            return out

        def assignments():
            copy_space = itertools.product(
                _subset_masks_of(len(src_ids)), repeat=m)
            extra_space = itertools.product((0, (1 << len(src_ids)) - 1),
                                            repeat=n - m)
            for copies, extras in itertools.product(copy_space, extra_space):
                yield dict(enumerate(copies + extras, start=1))

        # clause (a)
        for (sym, h), phi in kit.atoms.items():
            for a in src_ids:
                b = position(h, a)
                if sym.is_element:
                    rhs = target.elems[sym] == b if sym != AT else True
                else:
                    rhs = (b,) in target.rels[sym]
                lhs = _eval(phi, src_ctx, {AT: a}, {})
                atoms.checked += 1
                if lhs != rhs and atoms.counterexample is None:
                    atoms.counterexample = f"{sym!r} at h={h}, {a} on {base!r}"

        # clauses (b)-(d): one pass per assignment, probing all (h, a) pairs
        modalities = sorted({mod for mod, _ in kit.rels},
                            key=lambda mo: (mo.kind, mo.sym.name if mo.sym else ""))
        full_src = (1 << len(src_ids)) - 1
        for mod in modalities:
            result = {"rel": rel_clause, "inv": inv_clause,
                      "global": glob_clause}[mod.kind]
            k = mod.k
            for assign_tuple in itertools.product(
                    *(assignments() for _ in range(k))):
                env = {}
                b_masks = []
                for i, assignment in enumerate(assign_tuple, start=1):
                    b_masks.append(build_b(assignment))
                    for j in range(1, n + 1):
                        mask = assignment[j]
                        if j > m:
                            mask = full_src if mask else 0
                        env[placeholder_bwd(i, j)] = mask
                rhs_mask = _diamond_true_mask(target, mod, b_masks, tgt_bit)
                for h in range(1, n + 1):
                    phi = kit.rels.get((mod, h))
                    if phi is None:
                        if result.counterexample is None:
                            result.counterexample = f"missing clause for {mod!r} at h={h}"
                        continue
                    for a in src_ids:
                        b = position(h, a)
                        rhs = bool(rhs_mask & tgt_bit[b])
                        lhs = _eval(phi, src_ctx, {AT: a}, env)
                        result.checked += 1
                        if lhs != rhs and result.counterexample is None:
                            result.counterexample = (
                                f"{mod!r} at h={h}, {a} on {base!r}")

        # clause (e)
        pointed_target = AT in kit.target_sig
        for assignment in assignments():
            b_mask = build_b(assignment)
            if pointed_target:
                rhs = bool(b_mask & tgt_bit[target.elems[AT]])
            else:
                rhs = bool(b_mask)
            env = {}
            for j in range(1, n + 1):
                mask = assignment[j]
                if j > m:
                    mask = (1 << len(src_ids)) - 1 if mask else 0
                env[placeholder_bwd_ini(j)] = mask
            lhs = _eval(kit.ini, src_ctx, {}, env)
            ini_clause.checked += 1
            if lhs != rhs and ini_clause.counterexample is None:
                ini_clause.counterexample = f"assignment on {base!r}"

    report.clauses = [atoms, rel_clause, inv_clause, glob_clause, ini_clause]
    return report


def _iter_sources(encoding, max_size, samples, rng):
    from .structures import enumerate_structures, random_structure

    yield from enumerate_structures(encoding.source_class, max_size)
    if samples:
        count, sizes = samples
        for size in sizes:
            for _ in range(count):
                yield random_structure(encoding.source_class, size, rng)


def check_kit(kit, encoding, max_size: int, **kwargs) -> KitReport:
    """Dispatch to the forward or backward clause checker."""
    if isinstance(kit, ForwardKit):
        return check_forward_kit(kit, encoding, max_size, **kwargs)
    if isinstance(kit, BackwardKit):
        return check_backward_kit(kit, encoding, max_size, **kwargs)
    raise TypeError(f"not a kit: {kit!r}")
