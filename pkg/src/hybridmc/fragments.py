"""Language fragments and set-quantifier alternation levels.

The hybrid fragments are named by their extra operators: ``H`` is the base,
``B`` adds backward modalities, ``G`` the global modality, ``S`` set
quantifiers.  ``FO`` and ``MSO`` are the classical languages.

Alternation levels are computed against a quantifier-free kernel class.
Membership is taken modulo the standard double-negation witnessing: a kernel
formula counts as level 0 of both the existential and the universal side,
because kernels are closed under negation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidKernelError
from .formulas import (Diamond, Eq, ExistsElem, ExistsSet, Formula, Nominal,
                       Not, Or, RelApp, SetApp, SetAtom, desugar)
from .symbols import GLOBAL

_TAGS = ("H", "HB", "HG", "HBG", "HS", "HBS", "HGS", "HBGS", "FO", "MSO")


@dataclass(frozen=True, slots=True)
class Fragment:
    tag: str

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise ValueError(f"unknown fragment {self.tag!r}")

    @property
    def is_hybrid(self) -> bool:
        return self.tag not in ("FO", "MSO")

    @property
    def has_backward(self) -> bool:
        return "B" in self.tag

    @property
    def has_global(self) -> bool:
        return "G" in self.tag and self.tag != "MSO"

    @property
    def has_set_quantifiers(self) -> bool:
        return "S" in self.tag and self.is_hybrid or self.tag == "MSO"

    def __repr__(self):
        return self.tag


H = Fragment("H")
HB = Fragment("HB")
HG = Fragment("HG")
HBG = Fragment("HBG")
HS = Fragment("HS")
HBS = Fragment("HBS")
HGS = Fragment("HGS")
HBGS = Fragment("HBGS")
FO = Fragment("FO")
MSO = Fragment("MSO")

KERNEL_FRAGMENTS = (H, HB, HG, HBG, FO)


def fragment_leq(a: Fragment, b: Fragment) -> bool:
    """The letter-inclusion partial order (FO below MSO; hybrids by letters)."""
    if a.is_hybrid != b.is_hybrid:
        return False
    if not a.is_hybrid:
        return a == b or (a == FO and b == MSO)
    return set(a.tag) <= set(b.tag)


def in_fragment(formula: Formula, fragment: Fragment) -> bool:
    """Is the (desugared) formula generated by the fragment's grammar?"""
    return _gen(desugar(formula), fragment)


def _gen(f, frag):
    t = type(f)
    if t is Not:
        return _gen(f.sub, frag)
    if t is Or:
        return _gen(f.left, frag) and _gen(f.right, frag)
    if frag.is_hybrid:
        if t is Nominal or t is SetAtom:
            return True
        if t is Diamond:
            if f.mod.kind == "inv" and not frag.has_backward:
                return False
            if f.mod.kind == "global" and not frag.has_global:
                return False
            return all(_gen(a, frag) for a in f.args)
        if t is ExistsSet:
            return frag.has_set_quantifiers and _gen(f.body, frag)
        return False  # Eq, SetApp, RelApp, ExistsElem
    # classical fragments
    if t in (Eq, SetApp, RelApp):
        return True
    if t is ExistsElem:
        return _gen(f.body, frag)
    if t is ExistsSet:
        return frag == MSO and _gen(f.body, frag)
    return False  # hybrid atoms and diamonds


def _require_kernel(fragment: Fragment) -> Fragment:
    if fragment not in KERNEL_FRAGMENTS:
        raise InvalidKernelError(
            f"{fragment!r} is not quantifier-free; kernels are H, HB, HG, HBG, FO")
    return fragment


_INF = float("inf")


def _levels(formula, kernel, memo):
    """(least existential level, least universal level), inf when absent."""
    key = id(formula)
    if key in memo:
        return memo[key]
    if _gen(formula, kernel):
        out = (0, 0)
    else:
        t = type(formula)
        if t is ExistsSet:
            s1, _ = _levels(formula.body, kernel, memo)
            s = max(1, s1) if s1 != _INF else _INF
            out = (s, s + 1 if s != _INF else _INF)
        elif t is Not:
            s1, _ = _levels(formula.sub, kernel, memo)
            out = (s1 + 1 if s1 != _INF else _INF, s1)
        else:
            out = (_INF, _INF)
    memo[key] = out
    return out


def sigma_level(formula: Formula, kernel: Fragment):
    """Least l such that the formula sits on the existential side at level l.

    ``None`` when the formula is not in prenex shape over the kernel at any
    level (for instance, a set quantifier below a modality).
    """
    _require_kernel(kernel)
    s, _ = _levels(desugar(formula), kernel, {})
    return None if s == _INF else s


def pi_level(formula: Formula, kernel: Fragment):
    """Least l on the universal side; dual of :func:`sigma_level`."""
    _require_kernel(kernel)
    _, p = _levels(desugar(formula), kernel, {})
    return None if p == _INF else p


def bc_sigma_level(formula: Formula, kernel: Fragment):
    """Least l such that the formula is a Boolean combination of level-l pieces.

    Walks the negation/disjunction spine; every maximal quantifier-headed
    subtree must classify on one side at level l.
    """
    _require_kernel(kernel)
    memo = {}

    def walk(f):
        if _gen(f, kernel):
            return 0
        t = type(f)
        if t is Not:
            return walk(f.sub)
        if t is Or:
            a, b = walk(f.left), walk(f.right)
            return _INF if _INF in (a, b) else max(a, b)
        s, p = _levels(f, kernel, memo)
        return min(s, p)

    out = walk(desugar(formula))
    return None if out == _INF else out


def _strip_global_box(formula):
    """Match the desugared shape of a globally boxed sentence; return the body."""
    if (type(formula) is Not and type(formula.sub) is Diamond
            and formula.sub.mod == GLOBAL
            and type(formula.sub.args[0]) is Not):
        return formula.sub.args[0].sub
    return None


def boxed_sigma_level(formula: Formula, kernel: Fragment = H):
    """Level of the body under a leading global box, existential side."""
    body = _strip_global_box(desugar(formula))
    if body is None:
        return None
    return sigma_level(body, kernel)


def boxed_pi_level(formula: Formula, kernel: Fragment = H):
    """Level of the body under a leading global box, universal side."""
    body = _strip_global_box(desugar(formula))
    if body is None:
        return None
    return pi_level(body, kernel)
