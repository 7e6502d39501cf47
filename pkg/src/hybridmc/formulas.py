"""Formula syntax trees, desugaring, free symbols and substitution.

The core node types mirror the semantics table exactly: nominals, equality,
set atoms and applications, relation applications, negation, disjunction,
polyadic diamonds (forward, backward, global), element quantifiers and set
quantifiers.  Everything else (truth constants, conjunction, implication,
boxes, universal quantifiers) is sugar that :func:`desugar` lowers onto the
core.

All nodes are immutable values; operations build new trees and share
unchanged subtrees.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnsupportedSubstitutionError
from .symbols import AT, GLOBAL, Modality, Symbol, fresh_symbol


class Formula:
    """Base class for all formula nodes."""

    __slots__ = ()


# ---------------------------------------------------------------- core nodes


@dataclass(frozen=True, slots=True)
class Nominal(Formula):
    """Atomic ``q``: the evaluation point equals the interpretation of ``q``."""

    sym: Symbol


@dataclass(frozen=True, slots=True)
class Eq(Formula):
    """First-order equality ``p = q`` between element symbols."""

    left: Symbol
    right: Symbol


@dataclass(frozen=True, slots=True)
class SetAtom(Formula):
    """Atomic ``P``: the evaluation point lies in the set ``P``."""

    sym: Symbol


@dataclass(frozen=True, slots=True)
class SetApp(Formula):
    """First-order membership ``P(q)``."""

    sym: Symbol
    arg: Symbol


@dataclass(frozen=True, slots=True)
class RelApp(Formula):
    """First-order relation application ``R(q0, ..., qk)``."""

    sym: Symbol
    args: tuple[Symbol, ...]

    def __post_init__(self):
        if len(self.args) != self.sym.arity:
            raise ValueError(
                f"{self.sym!r} applied to {len(self.args)} arguments"
            )


@dataclass(frozen=True, slots=True)
class Not(Formula):
    sub: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Diamond(Formula):
    """Polyadic diamond; the modality fixes direction and argument count."""

    mod: Modality
    args: tuple[Formula, ...]

    def __post_init__(self):
        if len(self.args) != self.mod.k:
            raise ValueError(
                f"modality {self.mod!r} takes {self.mod.k} arguments, "
                f"got {len(self.args)}"
            )


@dataclass(frozen=True, slots=True)
class ExistsElem(Formula):
    var: Symbol
    body: Formula


@dataclass(frozen=True, slots=True)
class ExistsSet(Formula):
    var: Symbol
    body: Formula


# --------------------------------------------------------------- sugar nodes


@dataclass(frozen=True, slots=True)
class Top(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Box(Formula):
    mod: Modality
    args: tuple[Formula, ...]


@dataclass(frozen=True, slots=True)
class ForallElem(Formula):
    var: Symbol
    body: Formula


@dataclass(frozen=True, slots=True)
class ForallSet(Formula):
    var: Symbol
    body: Formula


TOP = Top()
BOT = Bottom()

#: Desugared truth constants.
TRUE = Nominal(AT)
FALSE = Not(Nominal(AT))


# ----------------------------------------------------------------- builders


def diamond(mod: Modality, *args: Formula) -> Diamond:
    return Diamond(mod, tuple(args))


def box(mod: Modality, *args: Formula) -> Box:
    return Box(mod, tuple(args))


def gdiamond(arg: Formula) -> Diamond:
    return Diamond(GLOBAL, (arg,))


def gbox(arg: Formula) -> Box:
    return Box(GLOBAL, (arg,))


def and_list(formulas) -> Formula:
    """Left-folded conjunction; empty input yields the true constant."""
    formulas = list(formulas)
    if not formulas:
        return TOP
    out = formulas[0]
    for f in formulas[1:]:
        out = And(out, f)
    return out


def or_list(formulas) -> Formula:
    """Left-folded disjunction; empty input yields the false constant."""
    formulas = list(formulas)
    if not formulas:
        return BOT
    out = formulas[0]
    for f in formulas[1:]:
        out = Or(out, f)
    return out


def exists_set_block(vars_, body: Formula) -> Formula:
    out = body
    for v in reversed(list(vars_)):
        out = ExistsSet(v, out)
    return out


def forall_set_block(vars_, body: Formula) -> Formula:
    """``A X1 ... Xn. body`` desugared as one block: ``!EX X1...Xn. !body``.

    Building the block in one step avoids the double negations that nesting
    single universal quantifiers would introduce, which matters for
    alternation-level classification.
    """
    vars_ = list(vars_)
    if not vars_:
        return body
    return Not(exists_set_block(vars_, Not(body)))


# ---------------------------------------------------------------- desugaring


def desugar(formula: Formula) -> Formula:
    """Lower sugar onto core nodes; returns the same object when already core."""
    t = type(formula)
    if t is Top:
        return TRUE
    if t is Bottom:
        return FALSE
    if t is And:
        left, right = desugar(formula.left), desugar(formula.right)
        return Not(Or(Not(left), Not(right)))
    if t is Implies:
        return Or(Not(desugar(formula.left)), desugar(formula.right))
    if t is Iff:
        return desugar(And(Implies(formula.left, formula.right),
                           Implies(formula.right, formula.left)))
    if t is Box:
        return Not(Diamond(formula.mod,
                           tuple(Not(desugar(a)) for a in formula.args)))
    if t is ForallElem:
        return Not(ExistsElem(formula.var, Not(desugar(formula.body))))
    if t is ForallSet:
        return Not(ExistsSet(formula.var, Not(desugar(formula.body))))
    if t is Not:
        sub = desugar(formula.sub)
        return formula if sub is formula.sub else Not(sub)
    if t is Or:
        left, right = desugar(formula.left), desugar(formula.right)
        if left is formula.left and right is formula.right:
            return formula
        return Or(left, right)
    if t is Diamond:
        args = tuple(desugar(a) for a in formula.args)
        if all(a is b for a, b in zip(args, formula.args)):
            return formula
        return Diamond(formula.mod, args)
    if t is ExistsElem:
        body = desugar(formula.body)
        return formula if body is formula.body else ExistsElem(formula.var, body)
    if t is ExistsSet:
        body = desugar(formula.body)
        return formula if body is formula.body else ExistsSet(formula.var, body)
    return formula  # atomic core node


# ------------------------------------------------------------- free symbols


def free_symbols(formula: Formula) -> frozenset[Symbol]:
    """The free-symbol set, computed by the rows of the semantics table.

    Hybrid atoms and non-global diamonds add ``@``; the global diamond and
    binding of ``@`` by an element quantifier remove it.  Sugar nodes are
    handled consistently with their desugaring.
    """
    t = type(formula)
    if t is Nominal:
        return frozenset((AT, formula.sym))
    if t is Eq:
        return frozenset((formula.left, formula.right))
    if t is SetAtom:
        return frozenset((AT, formula.sym))
    if t is SetApp:
        return frozenset((formula.arg, formula.sym))
    if t is RelApp:
        return frozenset(formula.args) | {formula.sym}
    if t is Not:
        return free_symbols(formula.sub)
    if t is Or or t is And or t is Implies or t is Iff:
        return free_symbols(formula.left) | free_symbols(formula.right)
    if t is Diamond or t is Box:
        inner = frozenset()
        for a in formula.args:
            inner |= free_symbols(a)
        if formula.mod.kind == "global":
            return inner - {AT}
        return inner | {AT, formula.mod.sym}
    if t is ExistsElem or t is ForallElem:
        return free_symbols(formula.body) - {formula.var}
    if t is ExistsSet or t is ForallSet:
        return free_symbols(formula.body) - {formula.var}
    if t is Top or t is Bottom:
        return frozenset((AT,))
    raise TypeError(f"not a formula: {formula!r}")


def all_symbols(formula: Formula) -> frozenset[Symbol]:
    """All symbols occurring anywhere, bound or free (for freshness checks)."""
    t = type(formula)
    if t is Nominal or t is SetAtom:
        return frozenset((formula.sym,))
    if t is Eq:
        return frozenset((formula.left, formula.right))
    if t is SetApp:
        return frozenset((formula.sym, formula.arg))
    if t is RelApp:
        return frozenset(formula.args) | {formula.sym}
    if t is Not:
        return all_symbols(formula.sub)
    if t in (Or, And, Implies, Iff):
        return all_symbols(formula.left) | all_symbols(formula.right)
    if t in (Diamond, Box):
        out = frozenset() if formula.mod.kind == "global" else frozenset((formula.mod.sym,))
        for a in formula.args:
            out |= all_symbols(a)
        return out
    if t in (ExistsElem, ExistsSet, ForallElem, ForallSet):
        return all_symbols(formula.body) | {formula.var}
    if t is Top or t is Bottom:
        return frozenset()
    raise TypeError(f"not a formula: {formula!r}")


def has_set_quantifier(formula: Formula) -> bool:
    t = type(formula)
    if t is ExistsSet or t is ForallSet:
        return True
    if t is Not:
        return has_set_quantifier(formula.sub)
    if t in (Or, And, Implies, Iff):
        return has_set_quantifier(formula.left) or has_set_quantifier(formula.right)
    if t in (Diamond, Box):
        return any(has_set_quantifier(a) for a in formula.args)
    if t in (ExistsElem, ForallElem):
        return has_set_quantifier(formula.body)
    return False


# ------------------------------------------------------------- substitution


def substitute_sets(formula: Formula, bindings: dict) -> Formula:
    """Replace free hybrid occurrences of set symbols by formulas.

    ``bindings`` maps set symbols to replacement formulas.  Bound occurrences
    are left alone; binders whose variable occurs free in an active
    replacement are renamed first.  First-order applications ``P(q)`` of a
    substituted symbol are rejected: replacements are point formulas and have
    no meaning at a named element.
    """
    repl_free = {x: free_symbols(f) for x, f in bindings.items()}
    return _subst_sets(desugar(formula), dict(bindings), repl_free)


def _subst_sets(formula, bindings, repl_free):
    if not bindings:
        return formula
    t = type(formula)
    if t is SetAtom:
        return bindings.get(formula.sym, formula)
    if t is SetApp:
        if formula.sym in bindings:
            raise UnsupportedSubstitutionError(
                f"cannot substitute into first-order application of {formula.sym!r}"
            )
        return formula
    if t in (Nominal, Eq, RelApp):
        return formula
    if t is Not:
        return Not(_subst_sets(formula.sub, bindings, repl_free))
    if t is Or:
        return Or(_subst_sets(formula.left, bindings, repl_free),
                  _subst_sets(formula.right, bindings, repl_free))
    if t is Diamond:
        return Diamond(formula.mod,
                       tuple(_subst_sets(a, bindings, repl_free)
                             for a in formula.args))
    if t is ExistsElem or t is ExistsSet:
        var, body = formula.var, formula.body
        inner = dict(bindings)
        if var in inner:
            del inner[var]
        active = [x for x in inner if x in free_symbols(body)]
        if not active:
            return formula
        captured = any(var in repl_free[x] for x in active)
        if captured:
            kind = "set" if t is ExistsSet else "element"
            avoid = all_symbols(body) | set(inner) | {var}
            for x in active:
                avoid |= repl_free[x]
            new_var = fresh_symbol(kind, avoid)
            marker = SetAtom(new_var) if t is ExistsSet else None
            if t is ExistsSet:
                body = _subst_sets(body, {var: marker}, {var: frozenset((AT, new_var))})
            else:
                body = _subst_elems(body, {var: new_var})
            var = new_var
        return t(var, _subst_sets(body, inner, repl_free))
    raise TypeError(f"not a core formula: {formula!r}")


def _subst_elems(formula, mapping):
    """Rename free element-symbol occurrences (helper, capture-naive)."""
    t = type(formula)
    if t is Nominal:
        return Nominal(mapping.get(formula.sym, formula.sym))
    if t is Eq:
        return Eq(mapping.get(formula.left, formula.left),
                  mapping.get(formula.right, formula.right))
    if t is SetApp:
        return SetApp(formula.sym, mapping.get(formula.arg, formula.arg))
    if t is RelApp:
        return RelApp(formula.sym, tuple(mapping.get(a, a) for a in formula.args))
    if t is SetAtom:
        return formula
    if t is Not:
        return Not(_subst_elems(formula.sub, mapping))
    if t is Or:
        return Or(_subst_elems(formula.left, mapping),
                  _subst_elems(formula.right, mapping))
    if t is Diamond:
        return Diamond(formula.mod,
                       tuple(_subst_elems(a, mapping) for a in formula.args))
    if t is ExistsSet:
        return ExistsSet(formula.var, _subst_elems(formula.body, mapping))
    if t is ExistsElem:
        inner = {k: v for k, v in mapping.items() if k != formula.var}
        return ExistsElem(formula.var, _subst_elems(formula.body, inner))
    raise TypeError(f"not a core formula: {formula!r}")


def substitute_point(formula: Formula, target: Symbol) -> Formula:
    """Replace free occurrences of ``@`` in a first-order formula by ``target``.

    Renames inner element quantifiers that would capture ``target``.
    """
    return _subst_point(desugar(formula), target)


def _subst_point(formula, target):
    t = type(formula)
    if t is Eq:
        return Eq(target if formula.left == AT else formula.left,
                  target if formula.right == AT else formula.right)
    if t is SetApp:
        return SetApp(formula.sym, target if formula.arg == AT else formula.arg)
    if t is RelApp:
        return RelApp(formula.sym,
                      tuple(target if a == AT else a for a in formula.args))
    if t is Not:
        return Not(_subst_point(formula.sub, target))
    if t is Or:
        return Or(_subst_point(formula.left, target),
                  _subst_point(formula.right, target))
    if t is ExistsElem:
        if formula.var == AT:
            return formula  # @ rebound below; no free occurrences inside
        if formula.var == target:
            avoid = all_symbols(formula.body) | {target, AT}
            new_var = fresh_symbol("element", avoid)
            body = _subst_elems(formula.body, {formula.var: new_var})
            return ExistsElem(new_var, _subst_point(body, target))
        return ExistsElem(formula.var, _subst_point(formula.body, target))
    if t is ExistsSet:
        return ExistsSet(formula.var, _subst_point(formula.body, target))
    if t in (Nominal, SetAtom, Diamond):
        raise UnsupportedSubstitutionError(
            "point substitution only applies to first-order formulas"
        )
    raise TypeError(f"not a core formula: {formula!r}")


# ----------------------------------------------------------- counting schemas


def see1_body(mod: Modality, formula: Formula, var: Symbol) -> Formula:
    """Undesugared matrix of :func:`see1` with the quantified set named ``var``."""
    if mod.k != 1:
        raise ValueError("the counting schema applies to binary modalities only")
    return And(
        Diamond(mod, (formula,)),
        Implies(Diamond(mod, (And(formula, SetAtom(var)),)),
                Box(mod, (Implies(formula, SetAtom(var)),))),
    )


def see1(mod: Modality, formula: Formula) -> Formula:
    """There is exactly one ``mod``-successor of the point satisfying ``formula``.

    Returns the desugared schema with a fresh quantified set symbol, so
    nesting the schema inside itself never captures.
    """
    if mod.k != 1:
        raise ValueError("the counting schema applies to binary modalities only")
    formula = desugar(formula)
    var = fresh_symbol("set", all_symbols(formula))
    return desugar(Not(ExistsSet(var, Not(see1_body(mod, formula, var)))))


def tot1(formula: Formula) -> Formula:
    """There is exactly one element in the whole structure satisfying ``formula``."""
    return see1(GLOBAL, formula)
