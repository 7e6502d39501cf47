"""Symbols of the formula language and modality references.

There is one flat supply of symbols: element symbols (arity 0) and k-ary
relation symbols (arity k >= 1).  Unary relation symbols double as set
symbols.  The position symbol ``@`` is a distinguished element symbol.

Backward and global modalities are not symbols; they are represented by
:class:`Modality` values so that no structure can ever interpret them.
"""

from __future__ import annotations

from dataclasses import dataclass

#: Names in this namespace are reserved for kit placeholders and can never
#: appear in a structure signature.
RESERVED_PREFIX = "$"


@dataclass(frozen=True, slots=True)
class Symbol:
    """A named symbol; ``arity == 0`` means element symbol."""

    name: str
    arity: int = 0

    def __post_init__(self):
        if self.arity < 0:
            raise ValueError(f"negative arity for symbol {self.name!r}")

    @property
    def is_element(self) -> bool:
        return self.arity == 0

    @property
    def is_set(self) -> bool:
        return self.arity == 1

    @property
    def is_relation(self) -> bool:
        return self.arity >= 1

    def __repr__(self):
        return f"{self.name}/{self.arity}" if self.arity else self.name


#: The position symbol.
AT = Symbol("@", 0)


def elem_symbol(name: str) -> Symbol:
    return Symbol(name, 0)


def set_symbol(name: str) -> Symbol:
    return Symbol(name, 1)


def rel_symbol(name: str, arity: int = 2) -> Symbol:
    if arity < 1:
        raise ValueError("relation symbols have arity >= 1")
    return Symbol(name, arity)


_FRESH_BASES = {
    "set": ("X", "Y", "Z", "W"),
    "element": ("x", "y", "z", "w"),
}


def fresh_symbol(kind: str, avoid, arity: int | None = None) -> Symbol:
    """Return a symbol of ``kind`` (``'set'`` or ``'element'``) not in ``avoid``.

    Deterministic given ``avoid``: the candidate sequence is fixed, so two
    calls with the same arguments return the same symbol.  ``@`` is never
    produced.
    """
    if kind not in _FRESH_BASES:
        raise ValueError(f"unknown symbol kind {kind!r}")
    taken = {s.name for s in avoid} | {AT.name}
    want_arity = 1 if kind == "set" else 0
    if arity is not None:
        want_arity = arity
    for base in _FRESH_BASES[kind]:
        if base not in taken:
            return Symbol(base, want_arity)
    i = 1
    while True:
        for base in _FRESH_BASES[kind]:
            name = f"{base}{i}"
            if name not in taken:
                return Symbol(name, want_arity)
        i += 1


@dataclass(frozen=True, slots=True)
class Modality:
    """A diamond/box index: a relation, its inverse, or the global pseudo-relation."""

    kind: str  # 'rel' | 'inv' | 'global'
    sym: Symbol | None = None

    def __post_init__(self):
        if self.kind not in ("rel", "inv", "global"):
            raise ValueError(f"unknown modality kind {self.kind!r}")
        if self.kind == "global":
            if self.sym is not None:
                raise ValueError("the global modality carries no symbol")
        else:
            if self.sym is None or self.sym.arity < 2:
                raise ValueError("modal relation symbols need arity >= 2")

    @property
    def k(self) -> int:
        """Number of formula arguments the modality takes."""
        return 1 if self.kind == "global" else self.sym.arity - 1

    def __repr__(self):
        if self.kind == "global":
            return "<*>"
        mark = "~" if self.kind == "inv" else ""
        return f"<{mark}{self.sym.name}>"


def fwd(sym: Symbol) -> Modality:
    return Modality("rel", sym)


def inv(sym: Symbol) -> Modality:
    return Modality("inv", sym)


#: The global modality (quantifies over all elements of the structure).
GLOBAL = Modality("global")
