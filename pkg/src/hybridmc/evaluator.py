"""Brute-force model checking of the full formula language.

``satisfies`` implements the satisfaction relation row by row: atoms by
lookup, diamonds by scanning tuples, backward diamonds over reversed tuples,
the global diamond and element quantifiers over the domain, and set
quantifiers over all subsets of the domain.

A sentence whose free symbols are not all interpreted is unsatisfied by
stipulation; :func:`satisfies_with_note` reports that case distinguishably.

Set quantifiers support two strategies with identical verdicts:

* ``"enumerate"`` tries every subset, in increasing popcount and then
  lexicographic order, short-circuiting on the first witness;
* ``"auto"`` (default) runs a membership-bit branching search pruned by a
  three-valued evaluation of the body, which is dramatically faster when the
  body constrains the quantified sets locally.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import SizeLimitError
from .formulas import (Diamond, Eq, ExistsElem, ExistsSet, Formula, Nominal,
                       Not, Or, RelApp, SetApp, SetAtom, desugar, free_symbols,
                       has_set_quantifier)
from .structures import Structure, extend
from .symbols import AT, Symbol


@dataclass
class EvalStats:
    """Counters filled in by the evaluator when attached to a config."""

    kernel_evals: int = 0
    subset_trials: int = 0
    search_branches: int = 0


@dataclass
class EvalConfig:
    max_domain_for_set_quant: int = 16
    short_circuit: bool = True
    strategy: str = "auto"  # "auto" | "enumerate"
    stats: EvalStats | None = None

    def __post_init__(self):
        if self.max_domain_for_set_quant < 1:
            raise ValueError("set-quantifier cap must be positive")
        if self.strategy not in ("auto", "enumerate"):
            raise ValueError(f"unknown strategy {self.strategy!r}")


DEFAULT_CONFIG = EvalConfig()


class _Context:
    """Per-structure tables: bit indexing, tuple groupings, set masks."""

    __slots__ = ("structure", "ids", "bit", "full", "by_head", "by_tail",
                 "set_masks", "quant_memo", "cfg")

    def __init__(self, structure, cfg):
        self.structure = structure
        self.ids = sorted(structure.domain)
        self.bit = {x: 1 << i for i, x in enumerate(self.ids)}
        self.full = (1 << len(self.ids)) - 1
        self.by_head = {}
        self.by_tail = {}
        self.set_masks = {}
        self.quant_memo = {}
        self.cfg = cfg

    def heads(self, sym):
        try:
            return self.by_head[sym]
        except KeyError:
            groups = {}
            for t in self.structure.rels[sym]:
                groups.setdefault(t[0], []).append(t[1:])
            self.by_head[sym] = groups
            return groups

    def tails(self, sym):
        """Tuples grouped by last component, remaining parts reversed."""
        try:
            return self.by_tail[sym]
        except KeyError:
            groups = {}
            for t in self.structure.rels[sym]:
                rest = tuple(reversed(t[:-1]))
                groups.setdefault(t[-1], []).append(rest)
            self.by_tail[sym] = groups
            return groups

    def set_mask(self, sym):
        try:
            return self.set_masks[sym]
        except KeyError:
            mask = 0
            for (x,) in self.structure.rels[sym]:
                mask |= self.bit[x]
            self.set_masks[sym] = mask
            return mask

    def has_quant(self, node):
        key = id(node)
        try:
            return self.quant_memo[key]
        except KeyError:
            out = has_set_quantifier(node)
            self.quant_memo[key] = out
            return out


def satisfies(structure: Structure, formula: Formula,
              cfg: EvalConfig = DEFAULT_CONFIG) -> bool:
    """Does the structure satisfy the formula?

    The formula is desugared first.  When its free symbols are not all in
    the structure's signature, the verdict is the stipulated ``False``.
    """
    verdict, _ = satisfies_with_note(structure, formula, cfg)
    return verdict


def satisfies_with_note(structure: Structure, formula: Formula,
                        cfg: EvalConfig = DEFAULT_CONFIG):
    """Like :func:`satisfies` but flags a stipulated false distinguishably.

    Returns ``(verdict, stipulated)``; ``stipulated`` is True when the
    verdict is False only because a free symbol is uninterpreted.
    """
    formula = desugar(formula)
    if not free_symbols(formula) <= structure.sig():
        return False, True
    ctx = _Context(structure, cfg)
    return _eval(formula, ctx, {}, {}), False


def _value(sym, ctx, elem_env):
    try:
        return elem_env[sym]
    except KeyError:
        return ctx.structure.elems[sym]


def _set_mask(sym, ctx, set_env):
    try:
        return set_env[sym]
    except KeyError:
        return ctx.set_mask(sym)


def _eval(node, ctx, elem_env, set_env):
    t = type(node)
    if t is Nominal:
        return _value(AT, ctx, elem_env) == _value(node.sym, ctx, elem_env)
    if t is SetAtom:
        return bool(_set_mask(node.sym, ctx, set_env)
                    & ctx.bit[_value(AT, ctx, elem_env)])
    if t is Not:
        return not _eval(node.sub, ctx, elem_env, set_env)
    if t is Or:
        return (_eval(node.left, ctx, elem_env, set_env)
                or _eval(node.right, ctx, elem_env, set_env))
    if t is Diamond:
        mod = node.mod
        if mod.kind == "global":
            body = node.args[0]
            for a in ctx.ids:
                if _eval(body, ctx, {**elem_env, AT: a}, set_env):
                    return True
            return False
        cur = _value(AT, ctx, elem_env)
        groups = ctx.heads(mod.sym) if mod.kind == "rel" else ctx.tails(mod.sym)
        for rest in groups.get(cur, ()):
            if all(_eval(arg, ctx, {**elem_env, AT: b}, set_env)
                   for arg, b in zip(node.args, rest)):
                return True
        return False
    if t is Eq:
        return _value(node.left, ctx, elem_env) == _value(node.right, ctx, elem_env)
    if t is SetApp:
        return bool(_set_mask(node.sym, ctx, set_env)
                    & ctx.bit[_value(node.arg, ctx, elem_env)])
    if t is RelApp:
        vals = tuple(_value(a, ctx, elem_env) for a in node.args)
        return vals in ctx.structure.rels[node.sym]
    if t is ExistsElem:
        for a in ctx.ids:
            if _eval(node.body, ctx, {**elem_env, node.var: a}, set_env):
                return True
        return False
    if t is ExistsSet:
        if len(ctx.ids) > ctx.cfg.max_domain_for_set_quant:
            raise SizeLimitError(
                f"set quantifier over {len(ctx.ids)} elements exceeds the cap "
                f"of {ctx.cfg.max_domain_for_set_quant}")
        if ctx.cfg.strategy == "enumerate":
            return _enumerate_exists(node, ctx, elem_env, set_env)
        return _search_exists(node, ctx, elem_env, set_env)
    raise TypeError(f"not a core formula node: {node!r}")


# ------------------------------------------------- subset enumeration


def _subset_masks(ids):
    """All subset masks in increasing popcount, then lexicographic order."""
    n = len(ids)
    for r in range(n + 1):
        for combo in itertools.combinations(range(n), r):
            mask = 0
            for i in combo:
                mask |= 1 << i
            yield mask


def _enumerate_exists(node, ctx, elem_env, set_env):
    stats = ctx.cfg.stats
    count_kernel = stats is not None and not ctx.has_quant(node.body)
    found = False
    for mask in _subset_masks(ctx.ids):
        if stats is not None:
            stats.subset_trials += 1
            if count_kernel:
                stats.kernel_evals += 1
        if _eval(node.body, ctx, elem_env, {**set_env, node.var: mask}):
            if ctx.cfg.short_circuit:
                return True
            found = True
    return found


# ------------------------------------------------- pruned witness search


def _search_exists(node, ctx, elem_env, set_env):
    variables = []
    body = node
    while type(body) is ExistsSet:
        if body.var in variables:
            variables.remove(body.var)  # outer binding shadowed, vacuous
        variables.append(body.var)
        body = body.body
    pos_bit = ctx.bit[_value_or_zero(AT, ctx, elem_env)]
    partial = {v: (0, 0) for v in variables}  # var -> (in_mask, decided_mask)
    stats = ctx.cfg.stats
    full = ctx.full

    def search():
        if stats is not None:
            stats.search_branches += 1
        t_mask, f_mask = _eval3(body, ctx, elem_env, set_env, partial)
        if pos_bit & t_mask:
            return True
        if pos_bit & f_mask:
            return False
        for v in variables:
            in_mask, decided = partial[v]
            undecided = full & ~decided
            if undecided:
                bit = undecided & -undecided
                partial[v] = (in_mask, decided | bit)
                if search():
                    partial[v] = (in_mask, decided)
                    return True
                partial[v] = (in_mask | bit, decided | bit)
                if search():
                    partial[v] = (in_mask, decided)
                    return True
                partial[v] = (in_mask, decided)
                return False
        # fully decided but still unknown: nested quantifiers remain
        if stats is not None:
            stats.subset_trials += 1
        env = dict(set_env)
        for v in variables:
            env[v] = partial[v][0]
        return _eval(body, ctx, elem_env, env)

    return search()


def _value_or_zero(sym, ctx, elem_env):
    try:
        return _value(sym, ctx, elem_env)
    except KeyError:
        # no evaluation point: the formula is point-independent here,
        # so any position serves as the probe
        return ctx.ids[0]


def _eval3(node, ctx, elem_env, set_env, partial):
    """Three-valued evaluation: (certainly-true, certainly-false) masks.

    Positions missing from both masks are unknown under the current partial
    set assignment.  Nested set quantifiers are left unknown; the search
    resolves them exactly once all bits are decided.
    """
    t = type(node)
    full = ctx.full
    if t is SetAtom:
        sym = node.sym
        if sym in partial:
            in_mask, decided = partial[sym]
            return in_mask, decided & ~in_mask
        mask = _set_mask(sym, ctx, set_env)
        return mask, full & ~mask
    if t is Nominal:
        if node.sym == AT:
            return full, 0
        bit = ctx.bit[_value(node.sym, ctx, elem_env)]
        return bit, full & ~bit
    if t is Not:
        t1, f1 = _eval3(node.sub, ctx, elem_env, set_env, partial)
        return f1, t1
    if t is Or:
        t1, f1 = _eval3(node.left, ctx, elem_env, set_env, partial)
        t2, f2 = _eval3(node.right, ctx, elem_env, set_env, partial)
        return t1 | t2, f1 & f2
    if t is Diamond:
        mod = node.mod
        if mod.kind == "global":
            t1, f1 = _eval3(node.args[0], ctx, elem_env, set_env, partial)
            return (full if t1 else 0), (full if f1 == full else 0)
        parts = [_eval3(a, ctx, elem_env, set_env, partial) for a in node.args]
        groups = ctx.heads(mod.sym) if mod.kind == "rel" else ctx.tails(mod.sym)
        t_out = f_out = 0
        for x in ctx.ids:
            tuples = groups.get(x, ())
            sure = False
            refuted = True
            for rest in tuples:
                all_true = True
                some_false = False
                for (ti, fi), b in zip(parts, rest):
                    bbit = ctx.bit[b]
                    if not (ti & bbit):
                        all_true = False
                    if fi & bbit:
                        some_false = True
                if all_true:
                    sure = True
                    break
                if not some_false:
                    refuted = False
            xbit = ctx.bit[x]
            if sure:
                t_out |= xbit
            elif refuted:
                f_out |= xbit
        return t_out, f_out
    if t is Eq:
        left, right = node.left, node.right
        if left == AT and right == AT:
            return full, 0
        if left == AT or right == AT:
            other = right if left == AT else left
            bit = ctx.bit[_value(other, ctx, elem_env)]
            return bit, full & ~bit
        same = _value(left, ctx, elem_env) == _value(right, ctx, elem_env)
        return (full, 0) if same else (0, full)
    if t is SetApp:
        sym, arg = node.sym, node.arg
        if sym in partial:
            in_mask, decided = partial[sym]
            out_mask = decided & ~in_mask
        else:
            in_mask = _set_mask(sym, ctx, set_env)
            out_mask = full & ~in_mask
        if arg == AT:
            return in_mask, out_mask
        bit = ctx.bit[_value(arg, ctx, elem_env)]
        if in_mask & bit:
            return full, 0
        if out_mask & bit:
            return 0, full
        return 0, 0
    if t is RelApp:
        if AT in node.args:
            tuples = ctx.structure.rels[node.sym]
            t_out = 0
            for x in ctx.ids:
                vals = tuple(x if a == AT else _value(a, ctx, elem_env)
                             for a in node.args)
                if vals in tuples:
                    t_out |= ctx.bit[x]
            return t_out, full & ~t_out
        vals = tuple(_value(a, ctx, elem_env) for a in node.args)
        here = vals in ctx.structure.rels[node.sym]
        return (full, 0) if here else (0, full)
    if t is ExistsElem:
        t_out, f_out = 0, full
        for a in ctx.ids:
            ti, fi = _eval3(node.body, ctx, {**elem_env, node.var: a},
                            set_env, partial)
            t_out |= ti
            f_out &= fi
        return t_out, f_out
    if t is ExistsSet:
        return 0, 0  # resolved exactly at fully decided leaves
    raise TypeError(f"not a core formula node: {node!r}")


# ------------------------------------------------------------ derived ops


def satisfying_set(structure: Structure, formula: Formula,
                   cfg: EvalConfig = DEFAULT_CONFIG) -> frozenset[int]:
    """The ids at which the formula holds when the point is moved there."""
    formula = desugar(formula)
    missing = free_symbols(formula) - {AT} - structure.sig()
    if missing:
        raise ValueError(f"uninterpreted symbols: {sorted(s.name for s in missing)}")
    ctx = _Context(structure, cfg)
    return frozenset(a for a in ctx.ids if _eval(formula, ctx, {AT: a}, {}))


def defines(formula: Formula, cls, max_size: int,
            cfg: EvalConfig = DEFAULT_CONFIG, dedup: bool = False):
    """The structures of the class, up to ``max_size``, satisfying the formula."""
    from .structures import enumerate_structures

    formula = desugar(formula)
    return [s for s in enumerate_structures(cls, max_size, dedup=dedup)
            if satisfies(s, formula, cfg)]


def satisfies_by_extension(structure: Structure, formula: Formula,
                           cap: int = 12) -> bool:
    """Reference evaluator: literal semantics via persistent structure extension.

    Exponentially slower than :func:`satisfies`; exists as an independent
    oracle for cross-checking.
    """
    formula = desugar(formula)
    if not free_symbols(formula) <= structure.sig():
        return False
    return _eval_ext(formula, structure, cap)


def _eval_ext(node, structure, cap):
    t = type(node)
    if t is Nominal:
        return structure.elems[AT] == structure.elems[node.sym]
    if t is Eq:
        return structure.elems[node.left] == structure.elems[node.right]
    if t is SetAtom:
        return (structure.elems[AT],) in structure.rels[node.sym]
    if t is SetApp:
        return (structure.elems[node.arg],) in structure.rels[node.sym]
    if t is RelApp:
        return tuple(structure.elems[a] for a in node.args) in structure.rels[node.sym]
    if t is Not:
        return not _eval_ext(node.sub, structure, cap)
    if t is Or:
        return (_eval_ext(node.left, structure, cap)
                or _eval_ext(node.right, structure, cap))
    if t is Diamond:
        mod = node.mod
        if mod.kind == "global":
            return any(_eval_ext(node.args[0], extend(structure, AT, a), cap)
                       for a in structure.domain)
        cur = structure.elems[AT]
        k = mod.k
        for tup in structure.rels[mod.sym]:
            if mod.kind == "rel":
                if tup[0] != cur:
                    continue
                witnesses = tup[1:]
            else:
                if tup[-1] != cur:
                    continue
                witnesses = tuple(reversed(tup[:-1]))
            if all(_eval_ext(arg, extend(structure, AT, b), cap)
                   for arg, b in zip(node.args, witnesses)):
                return True
        return False
    if t is ExistsElem:
        return any(_eval_ext(node.body, extend(structure, node.var, a), cap)
                   for a in structure.domain)
    if t is ExistsSet:
        if len(structure.domain) > cap:
            raise SizeLimitError("reference evaluator subset cap exceeded")
        ids = sorted(structure.domain)
        for mask in _subset_masks(ids):
            subset = {(x,) for i, x in enumerate(ids) if mask >> i & 1}
            if _eval_ext(node.body, extend(structure, node.var, subset), cap):
                return True
        return False
    raise TypeError(f"not a core formula node: {node!r}")
