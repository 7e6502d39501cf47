"""Linear encodings between graph classes, with translation kits and image
formulas.

Each encoding maps a source structure to a target structure whose domain is
``m`` disjoint copies of the source domain plus ``n - m`` extra elements,
flattened to fresh integer ids with a recorded correspondence table:

* ``mu1(t, u)``  multi-relation elimination: one labeled "port" per element
  and relation, port-to-port edges carrying the original relations;
* ``mu2(t)``     label elimination: a chain gadget hanging off a global sink,
  labels becoming edges into the gadget;
* ``mu3()``      backward-modality elimination: a second relation that is the
  inverse of the first;
* ``mu4()``      direction elimination: outgoing/incoming ports attached to
  three labeled anchor elements, undirected;
* ``mu5()``      global-modality elimination: a pointed hub bidirectionally
  connected to every element, plus a sink that makes the hub recognizable;
  ``mu5prime()`` is the same minus the position marker.

``mu1``..``mu4`` carry an image formula: a one-block universal sentence that
holds in a target-class structure exactly when it is isomorphic to some
encoded structure.  The hub construction has no such formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .errors import FragmentError, NoImageError
from .formulas import (And, BOT, Box, Diamond, ExistsSet, Formula, Implies,
                       Nominal, Not, Or, SetAtom, TOP, and_list, desugar,
                       gbox, gdiamond, or_list, see1_body)
from .structures import (DIGRAPH, GRAPH, GraphClass, PDIGRAPH, Structure,
                         label_symbols, relation_symbols)
from .symbols import (AT, GLOBAL, Modality, Symbol, fwd, inv, set_symbol)
from .translate import (BackwardKit, ForwardKit, backward_translate_at,
                        forward_translate, placeholder_bwd, placeholder_bwd_ini,
                        placeholder_fwd, placeholder_ini, prenex_or)


@dataclass(frozen=True)
class CorrespondenceTable:
    """Flattened ids of the encoded structure: copies ``(j, base) -> id`` for
    ``j <= m`` and extras ``j -> id`` for ``m < j <= n``."""

    copy_ids: dict
    extra_ids: dict

    def regulars(self):
        return sorted(v for (j, _), v in self.copy_ids.items() if j == 1)

    def render(self) -> str:
        lines = []
        for (j, base), v in sorted(self.copy_ids.items(), key=lambda kv: kv[1]):
            lines.append(f"# copy {j} of {base} -> {v}")
        for j, v in sorted(self.extra_ids.items(), key=lambda kv: kv[1]):
            lines.append(f"# extra {j} -> {v}")
        return "\n".join(lines)


@dataclass(frozen=True)
class EncodedStructure:
    structure: Structure
    table: CorrespondenceTable


@dataclass(frozen=True)
class LinearEncoding:
    name: str
    source_class: GraphClass
    target_class: GraphClass
    m: int
    n: int
    encoder: Callable[[Structure], EncodedStructure]
    forward_kit: ForwardKit
    backward_kit: BackwardKit
    image: Optional[Formula] = None

    def encode(self, structure: Structure) -> EncodedStructure:
        return self.encoder(structure)


def _flatten(base_domain, m, n):
    """Deterministic id layout: copy j of the i-th smallest base element gets
    id (j-1)*D + i; extra j gets m*D + (j - m - 1)."""
    ids = sorted(base_domain)
    d = len(ids)
    copy_ids = {(j, a): (j - 1) * d + i
                for j in range(1, m + 1) for i, a in enumerate(ids)}
    extra_ids = {j: m * d + (j - m - 1) for j in range(m + 1, n + 1)}
    return CorrespondenceTable(copy_ids, extra_ids)


def _sym_edges(pairs):
    out = set()
    for a, b in pairs:
        out.add((a, b))
        out.add((b, a))
    return out


# --------------------------------------------------------------------- mu1


def mu1(t: int = 0, u: int = 2) -> LinearEncoding:
    """Collapse u edge relations into one by introducing labeled ports."""
    if t < 0 or u < 0:
        raise ValueError("label and relation counts are nonnegative")
    source = DIGRAPH(t, u)
    target = DIGRAPH(t + u, 1)
    m = n = u + 1
    src_labels = label_symbols(t)
    src_rels = relation_symbols(u)
    tgt_labels = label_symbols(t + u)
    (tgt_r,) = relation_symbols(1)

    def port(i):  # the label marking ports of the i-th relation
        return SetAtom(tgt_labels[t + i - 1])

    regular = Not(or_list([port(i) for i in range(1, u + 1)]))

    def encoder(base):
        table = _flatten(base.domain, m, n)
        cid = table.copy_ids
        rels = {}
        for i, sym in enumerate(src_labels):
            rels[tgt_labels[i]] = {(cid[(1, a)],) for (a,) in base.rels[sym]}
        for i in range(1, u + 1):
            rels[tgt_labels[t + i - 1]] = {(cid[(i + 1, a)],)
                                           for a in base.domain}
        edges = set()
        for a in base.domain:
            for i in range(1, u + 1):
                edges.add((cid[(1, a)], cid[(i + 1, a)]))
                edges.add((cid[(i + 1, a)], cid[(1, a)]))
        for i, sym in enumerate(src_rels, start=1):
            for a, b in base.rels[sym]:
                edges.add((cid[(i + 1, a)], cid[(i + 1, b)]))
        rels[tgt_r] = edges
        return EncodedStructure(Structure(range(m * len(base.domain)),
                                          {}, rels), table)

    y1 = SetAtom(placeholder_fwd(1))
    marked_regular = desugar(And(regular, y1))
    fwd_rels = {}
    for i, sym in enumerate(src_rels, start=1):
        # walk: regular -> own i-port -> peer i-port -> peer regular
        two_steps = Diamond(fwd(tgt_r), (Diamond(fwd(tgt_r),
                                                 (marked_regular,)),))
        back_steps = Diamond(inv(tgt_r), (Diamond(fwd(tgt_r),
                                                  (marked_regular,)),))
        fwd_rels[fwd(sym)] = Diamond(fwd(tgt_r),
                                     (desugar(And(port(i), two_steps)),))
        fwd_rels[inv(sym)] = Diamond(fwd(tgt_r),
                                     (desugar(And(port(i), back_steps)),))
    fwd_rels[GLOBAL] = gdiamond(marked_regular)
    forward_kit = ForwardKit(
        name=f"mu1[{t},{u}]",
        source_sig=frozenset(src_labels) | frozenset(src_rels),
        target_sig=frozenset(tgt_labels) | {tgt_r},
        atoms={sym: SetAtom(tgt_labels[i]) for i, sym in enumerate(src_labels)},
        rels=fwd_rels,
        ini=gdiamond(desugar(And(regular, SetAtom(placeholder_ini())))),
    )

    bwd_atoms = {}
    for i, tgt_label in enumerate(tgt_labels, start=1):
        for h in range(1, n + 1):
            if h == 1:
                phi = SetAtom(src_labels[i - 1]) if i <= t else BOT
            else:
                phi = TOP if i == t + (h - 1) else BOT
            bwd_atoms[(tgt_label, h)] = desugar(phi)
    bwd_rels = {}
    any_port = or_list([SetAtom(placeholder_bwd(1, j))
                        for j in range(2, n + 1)])
    for h in range(1, n + 1):
        if h == 1:
            phi_f = any_port
            phi_b = any_port
        else:
            i = h - 1
            phi_f = Or(SetAtom(placeholder_bwd(1, 1)),
                       Diamond(fwd(src_rels[i - 1]),
                               (SetAtom(placeholder_bwd(1, h)),)))
            phi_b = Or(SetAtom(placeholder_bwd(1, 1)),
                       Diamond(inv(src_rels[i - 1]),
                               (SetAtom(placeholder_bwd(1, h)),)))
        bwd_rels[(fwd(tgt_r), h)] = desugar(phi_f)
        bwd_rels[(inv(tgt_r), h)] = desugar(phi_b)
        bwd_rels[(GLOBAL, h)] = gdiamond(or_list(
            [SetAtom(placeholder_bwd(1, j)) for j in range(1, n + 1)]))
    backward_kit = BackwardKit(
        name=f"mu1[{t},{u}]",
        source_sig=forward_kit.source_sig,
        target_sig=forward_kit.target_sig,
        m=m, n=n,
        atoms=bwd_atoms,
        rels=bwd_rels,
        ini=gdiamond(or_list([SetAtom(placeholder_bwd_ini(j))
                              for j in range(1, n + 1)])),
    )

    x = set_symbol("X")
    types = [regular] + [port(i) for i in range(1, u + 1)]
    bullets = []
    for i in range(1, u + 1):
        others = [port(j) for j in range(1, u + 1) if j != i]
        wrong = or_list(others + [SetAtom(s) for s in tgt_labels[:t]])
        bullets.append(gbox(Implies(port(i), Not(wrong))))
    bullets.append(gbox(Implies(
        regular,
        and_list([Not(Diamond(fwd(tgt_r), (regular,)))]
                 + [see1_body(fwd(tgt_r), port(i), x)
                    for i in range(1, u + 1)]))))
    for i in range(1, u + 1):
        stray = or_list([Diamond(fwd(tgt_r), (port(j),))
                         for j in range(1, u + 1) if j != i])
        bullets.append(gbox(Implies(
            port(i), And(see1_body(fwd(tgt_r), regular, x), Not(stray)))))
    for ty in types:
        bullets.append(gbox(Implies(
            And(ty, SetAtom(x)),
            Box(fwd(tgt_r), (Implies(Not(ty),
                                     Diamond(fwd(tgt_r), (SetAtom(x),))),)))))
    image = Not(ExistsSet(x, Not(desugar(and_list(bullets)))))

    return LinearEncoding(f"mu1[{t},{u}]", source, target, m, n, encoder,
                          forward_kit, backward_kit, image)


# --------------------------------------------------------------------- mu2


def mu2(t: int = 2) -> LinearEncoding:
    """Replace labels by edges into a chain gadget behind the unique sink."""
    if t < 1:
        raise ValueError("label elimination needs at least one label")
    source = DIGRAPH(t, 1)
    target = DIGRAPH(0, 1)
    m, n = 1, t + 3
    src_labels = label_symbols(t)
    (src_r,) = relation_symbols(1)
    (tgt_r,) = relation_symbols(1)

    def encoder(base):
        table = _flatten(base.domain, m, n)
        cid, eid = table.copy_ids, table.extra_ids
        edges = {(cid[(1, a)], cid[(1, b)]) for a, b in base.rels[src_r]}
        for a in base.domain:
            edges.add((cid[(1, a)], eid[3]))
        for i, sym in enumerate(src_labels, start=1):
            for (a,) in base.rels[sym]:
                edges.add((cid[(1, a)], eid[i + 3]))
        for i in range(1, t + 1):
            edges.add((eid[i + 3], eid[i + 2]))
        for i in range(0, t + 1):
            edges.add((eid[i + 3], eid[2]))
        dom_size = len(base.domain) + (n - m)
        return EncodedStructure(Structure(range(dom_size), {}, {tgt_r: edges}),
                                table)

    # gadget recognizers, defined purely by outgoing-edge patterns
    psi = {2: desugar(Box(fwd(tgt_r), (BOT,)))}
    psi[3] = desugar(And(Diamond(fwd(tgt_r), (psi[2],)),
                         Box(fwd(tgt_r), (psi[2],))))
    for i in range(1, t + 1):
        psi[i + 3] = desugar(And(
            And(Diamond(fwd(tgt_r), (psi[2],)),
                Diamond(fwd(tgt_r), (psi[i + 2],))),
            Box(fwd(tgt_r), (Or(psi[2], psi[i + 2]),))))
    psi[1] = Not(or_list([psi[i] for i in range(2, n + 1)]))

    y1 = SetAtom(placeholder_fwd(1))
    forward_kit = ForwardKit(
        name=f"mu2[{t}]",
        source_sig=frozenset(src_labels) | {src_r},
        target_sig=frozenset({tgt_r}),
        atoms={sym: Diamond(fwd(tgt_r), (psi[i + 3],))
               for i, sym in enumerate(src_labels, start=1)},
        rels={
            fwd(src_r): Diamond(fwd(tgt_r), (desugar(And(psi[1], y1)),)),
            inv(src_r): Diamond(inv(tgt_r), (y1,)),
            GLOBAL: gdiamond(desugar(And(psi[1], y1))),
        },
        ini=gdiamond(desugar(And(psi[1], SetAtom(placeholder_ini())))),
    )

    def X(j):
        return SetAtom(placeholder_bwd(1, j))

    bwd_rels = {}
    for h in range(1, n + 1):
        if h == 1:
            phi_f = or_list(
                [Diamond(fwd(src_r), (X(1),)), X(3)]
                + [desugar(And(SetAtom(sym), X(i + 3)))
                   for i, sym in enumerate(src_labels, start=1)])
        elif h == 2:
            phi_f = BOT
        elif h == 3:
            phi_f = X(2)
        else:
            phi_f = Or(X(2), X(h - 1))
        bwd_rels[(fwd(tgt_r), h)] = desugar(phi_f)
        if h == 1:
            phi_b = Diamond(inv(src_r), (X(1),))
        elif h == 2:
            phi_b = or_list([X(i + 3) for i in range(0, t + 1)])
        elif h == 3:
            phi_b = Or(gdiamond(X(1)), X(4))
        elif h < n:
            phi_b = Or(gdiamond(desugar(And(SetAtom(src_labels[h - 4]), X(1)))),
                       X(h + 1))
        else:
            phi_b = gdiamond(desugar(And(SetAtom(src_labels[t - 1]), X(1))))
        bwd_rels[(inv(tgt_r), h)] = desugar(phi_b)
        bwd_rels[(GLOBAL, h)] = gdiamond(or_list([X(j)
                                                  for j in range(1, n + 1)]))
    backward_kit = BackwardKit(
        name=f"mu2[{t}]",
        source_sig=forward_kit.source_sig,
        target_sig=forward_kit.target_sig,
        m=m, n=n,
        atoms={},
        rels=bwd_rels,
        ini=gdiamond(or_list([SetAtom(placeholder_bwd_ini(j))
                              for j in range(1, n + 1)])),
    )

    x = set_symbol("X")
    bullets = [gdiamond(psi[1])]
    for i in range(2, n + 1):
        bullets.append(see1_body(GLOBAL, psi[i], x))
    bullets.append(gbox(Implies(
        psi[1], And(Diamond(fwd(tgt_r), (psi[3],)),
                    Not(Diamond(fwd(tgt_r), (psi[2],)))))))
    image = Not(ExistsSet(x, Not(desugar(and_list(bullets)))))

    return LinearEncoding(f"mu2[{t}]", source, target, m, n, encoder,
                          forward_kit, backward_kit, image)


# --------------------------------------------------------------------- mu3


def mu3() -> LinearEncoding:
    """Add the inverse relation explicitly so backward steps become forward."""
    source = DIGRAPH(0, 1)
    target = DIGRAPH(0, 2)
    (src_r,) = relation_symbols(1)
    r1, r2 = relation_symbols(2)

    def encoder(base):
        table = _flatten(base.domain, 1, 1)
        cid = table.copy_ids
        fwd_edges = {(cid[(1, a)], cid[(1, b)]) for a, b in base.rels[src_r]}
        rels = {r1: fwd_edges, r2: {(b, a) for a, b in fwd_edges}}
        return EncodedStructure(Structure(range(len(base.domain)), {}, rels),
                                table)

    y1 = SetAtom(placeholder_fwd(1))
    forward_kit = ForwardKit(
        name="mu3",
        source_sig=frozenset({src_r}),
        target_sig=frozenset({r1, r2}),
        atoms={},
        rels={
            fwd(src_r): Diamond(fwd(r1), (y1,)),
            inv(src_r): Diamond(fwd(r2), (y1,)),
            GLOBAL: gdiamond(y1),
        },
        ini=gdiamond(SetAtom(placeholder_ini())),
    )
    x1 = SetAtom(placeholder_bwd(1, 1))
    backward_kit = BackwardKit(
        name="mu3",
        source_sig=forward_kit.source_sig,
        target_sig=forward_kit.target_sig,
        m=1, n=1,
        atoms={},
        rels={
            (fwd(r1), 1): Diamond(fwd(src_r), (x1,)),
            (fwd(r2), 1): Diamond(inv(src_r), (x1,)),
            (GLOBAL, 1): gdiamond(x1),
        },
        ini=gdiamond(SetAtom(placeholder_bwd_ini(1))),
    )

    x = set_symbol("X")
    body = gbox(Implies(
        SetAtom(x),
        And(Box(fwd(r1), (Diamond(fwd(r2), (SetAtom(x),)),)),
            Box(fwd(r2), (Diamond(fwd(r1), (SetAtom(x),)),)))))
    image = Not(ExistsSet(x, Not(desugar(body))))

    return LinearEncoding("mu3", source, target, 1, 1, encoder,
                          forward_kit, backward_kit, image)


# --------------------------------------------------------------------- mu4


def mu4() -> LinearEncoding:
    """Simulate directed edges in an undirected graph via out/in ports."""
    source = DIGRAPH(0, 1)
    target = GRAPH(1, 1)
    m, n = 3, 6
    (src_r,) = relation_symbols(1)
    (p,) = label_symbols(1)
    (tgt_r,) = relation_symbols(1)

    def encoder(base):
        table = _flatten(base.domain, m, n)
        cid, eid = table.copy_ids, table.extra_ids
        undirected = set()
        for d in base.domain:
            undirected.add((cid[(1, d)], cid[(2, d)]))
            undirected.add((cid[(1, d)], cid[(3, d)]))
            undirected.add((cid[(2, d)], eid[4]))
            undirected.add((cid[(3, d)], eid[5]))
        for a, b in base.rels[src_r]:
            undirected.add((cid[(2, a)], cid[(3, b)]))
        undirected.add((eid[5], eid[6]))
        rels = {tgt_r: _sym_edges(undirected), p: {(eid[4],), (eid[5],), (eid[6],)}}
        dom_size = m * len(base.domain) + (n - m)
        return EncodedStructure(Structure(range(dom_size), {}, rels), table)

    P = SetAtom(p)
    dia = lambda f: Diamond(fwd(tgt_r), (f,))
    psi = {
        4: desugar(And(And(P, Not(dia(P))), dia(Not(P)))),
        5: desugar(And(And(P, dia(P)), dia(Not(P)))),
        6: desugar(And(And(P, dia(P)), Not(dia(Not(P))))),
    }
    psi[2] = dia(psi[4])
    psi[3] = desugar(And(Not(P), dia(psi[5])))
    psi[1] = Not(or_list([psi[i] for i in (2, 3, 4, 5, 6)]))

    y1 = SetAtom(placeholder_fwd(1))
    reach_regular = dia(dia(desugar(And(psi[1], y1))))
    forward_kit = ForwardKit(
        name="mu4",
        source_sig=frozenset({src_r}),
        target_sig=frozenset({p, tgt_r}),
        atoms={},
        rels={
            fwd(src_r): dia(desugar(And(psi[2], reach_regular))),
            inv(src_r): dia(desugar(And(psi[3], reach_regular))),
            GLOBAL: gdiamond(desugar(And(psi[1], y1))),
        },
        ini=gdiamond(desugar(And(psi[1], SetAtom(placeholder_ini())))),
    )

    def X(j):
        return SetAtom(placeholder_bwd(1, j))

    bwd_atoms = {}
    for h in range(1, 7):
        bwd_atoms[(p, h)] = desugar(BOT if h <= 3 else TOP)
    bwd_rels = {}
    table_r = {
        1: Or(X(2), X(3)),
        2: or_list([X(1), Diamond(fwd(src_r), (X(3),)), X(4)]),
        3: or_list([X(1), Diamond(inv(src_r), (X(2),)), X(5)]),
        4: gdiamond(X(2)),
        5: Or(gdiamond(X(3)), X(6)),
        6: X(5),
    }
    for h in range(1, 7):
        bwd_rels[(fwd(tgt_r), h)] = desugar(table_r[h])
        bwd_rels[(GLOBAL, h)] = gdiamond(or_list([X(j) for j in range(1, 7)]))
    backward_kit = BackwardKit(
        name="mu4",
        source_sig=forward_kit.source_sig,
        target_sig=forward_kit.target_sig,
        m=m, n=n,
        atoms=bwd_atoms,
        rels=bwd_rels,
        ini=gdiamond(or_list([SetAtom(placeholder_bwd_ini(j))
                              for j in range(1, 7)])),
    )

    x = set_symbol("X")
    bullets = [see1_body(GLOBAL, psi[i], x) for i in (4, 5, 6)]
    bullets.append(gbox(Implies(
        psi[2], And(see1_body(fwd(tgt_r), psi[1], x),
                    Box(fwd(tgt_r), (or_list([psi[1], psi[3], psi[4]]),))))))
    bullets.append(gbox(Implies(
        psi[3], And(see1_body(fwd(tgt_r), psi[1], x),
                    Box(fwd(tgt_r), (or_list([psi[1], psi[2], psi[5]]),))))))
    bullets.append(gbox(Implies(
        psi[1], and_list([see1_body(fwd(tgt_r), psi[2], x),
                          see1_body(fwd(tgt_r), psi[3], x),
                          Box(fwd(tgt_r), (Or(psi[2], psi[3]),))]))))
    image = Not(ExistsSet(x, Not(desugar(and_list(bullets)))))

    return LinearEncoding("mu4", source, target, m, n, encoder,
                          forward_kit, backward_kit, image)


# --------------------------------------------------------------------- mu5


def _mu5_encoding(pointed: bool) -> LinearEncoding:
    source = DIGRAPH(0, 1)
    target = PDIGRAPH() if pointed else DIGRAPH(0, 1)
    m, n = 1, 3
    (src_r,) = relation_symbols(1)
    (tgt_r,) = relation_symbols(1)

    def encoder(base):
        table = _flatten(base.domain, m, n)
        cid, eid = table.copy_ids, table.extra_ids
        hub, sink = eid[2], eid[3]
        edges = {(cid[(1, a)], cid[(1, b)]) for a, b in base.rels[src_r]}
        for a in base.domain:
            edges.add((cid[(1, a)], hub))
            edges.add((hub, cid[(1, a)]))
        edges.add((hub, sink))
        elems = {AT: hub} if pointed else {}
        dom_size = len(base.domain) + 2
        return EncodedStructure(
            Structure(range(dom_size), elems, {tgt_r: edges}), table)

    dia = lambda f: Diamond(fwd(tgt_r), (f,))
    sink = desugar(Box(fwd(tgt_r), (BOT,)))
    hub = dia(sink)          # can reach the sink in one step
    regular = dia(hub)       # can reach the sink in two steps

    # The kits are stated for the pointed variant; the unpointed encoding
    # reuses them verbatim, with the boxed constructions compensating for
    # the missing position marker.
    y1 = SetAtom(placeholder_fwd(1))
    forward_kit = ForwardKit(
        name="mu5",
        source_sig=frozenset({src_r}),
        target_sig=frozenset({tgt_r, AT}),
        atoms={},
        rels={
            fwd(src_r): dia(desugar(And(regular, y1))),
            GLOBAL: dia(desugar(And(hub, dia(desugar(And(regular, y1)))))),
        },
        ini=dia(desugar(And(regular, SetAtom(placeholder_ini())))),
    )

    def X(j):
        return SetAtom(placeholder_bwd(1, j))

    backward_kit = BackwardKit(
        name="mu5",
        source_sig=forward_kit.source_sig,
        target_sig=forward_kit.target_sig,
        m=m, n=n,
        atoms={(AT, h): desugar(TOP) for h in (1, 2, 3)},
        rels={
            (fwd(tgt_r), 1): Or(Diamond(fwd(src_r), (X(1),)), X(2)),
            (fwd(tgt_r), 2): Or(gdiamond(X(1)), X(3)),
            (fwd(tgt_r), 3): desugar(BOT),
        },
        ini=gdiamond(SetAtom(placeholder_bwd_ini(2))),
    )

    name = "mu5" if pointed else "mu5p"
    return LinearEncoding(name, source, target, m, n, encoder,
                          forward_kit, backward_kit, None)


def mu5() -> LinearEncoding:
    """Hub encoding into pointed digraphs; the point is the hub."""
    return _mu5_encoding(pointed=True)


def mu5prime() -> LinearEncoding:
    """Hub encoding into plain digraphs (no position marker)."""
    return _mu5_encoding(pointed=False)


def mu5_hub_formula() -> Formula:
    """Holds exactly at the hub of an encoded structure."""
    (tgt_r,) = relation_symbols(1)
    return Diamond(fwd(tgt_r), (desugar(Box(fwd(tgt_r), (BOT,))),))


# ----------------------------------------------------------------- registry


def encoding_by_name(name: str, t: int | None = None,
                     u: int | None = None) -> LinearEncoding:
    """The CLI-visible encodings: mu1, mu2, mu3, mu4, mu5, mu5p."""
    if name == "mu1":
        return mu1(0 if t is None else t, 2 if u is None else u)
    if name == "mu2":
        return mu2(2 if t is None else t)
    if name == "mu3":
        return mu3()
    if name == "mu4":
        return mu4()
    if name == "mu5":
        return mu5()
    if name == "mu5p":
        return mu5prime()
    raise ValueError(f"unknown encoding {name!r}")


ENCODING_NAMES = ("mu1", "mu2", "mu3", "mu4", "mu5", "mu5p")


def image_formula(encoding: LinearEncoding) -> Formula:
    """The one-block universal sentence characterizing the encoding's image
    within its target class; hub encodings have none."""
    if encoding.image is None:
        raise NoImageError(
            f"{encoding.name} has no image formula: the image is not "
            "definable in the set-quantifier language")
    return encoding.image


# --------------------------------------------------------- boxed constructions


def boxed_forward(formula: Formula) -> Formula:
    """Compile a prenex sentence about digraphs with global modalities into a
    globally boxed sentence without them, over the unpointed hub encoding.

    The source sentence holds in D exactly when the result holds in the
    encoding of D.  The box body is ``hub -> translated`` merged into prenex
    shape, so the result classifies as a boxed sentence of the same level.
    """
    kit = mu5().forward_kit
    translated = forward_translate(kit, formula)
    body = prenex_or([Not(mu5_hub_formula()), translated])
    return Not(Diamond(GLOBAL, (Not(body),)))


def boxed_backward(formula: Formula, budget: int = 16) -> Formula:
    """Pull a globally boxed sentence about hub encodings back to digraphs.

    The input must be a global box over a prenex-classifiable body.  One
    position-indexed translation is built per element role (regular, hub,
    sink) and the result is the global box of their conjunction: it holds in
    D exactly when the input holds in the encoding of D.
    """
    formula = desugar(formula)
    if not (type(formula) is Not and type(formula.sub) is Diamond
            and formula.sub.mod == GLOBAL
            and type(formula.sub.args[0]) is Not):
        raise FragmentError("expected a globally boxed sentence")
    body = formula.sub.args[0].sub
    kit = mu5().backward_kit
    parts = [backward_translate_at(kit, body, h, budget=budget)
             for h in (1, 2, 3)]
    return Not(Diamond(GLOBAL, (Not(desugar(and_list(parts))),)))
