"""Model checking and formula translation for hybrid modal logics with set
quantifiers, on finite graphs and grids."""

from .symbols import AT, GLOBAL, Modality, Symbol, elem_symbol, fresh_symbol, fwd, inv, rel_symbol, set_symbol
from .formulas import (And, Bottom, Box, Diamond, Eq, ExistsElem, ExistsSet,
                       ForallElem, ForallSet, Formula, Iff, Implies, Nominal,
                       Not, Or, RelApp, SetApp, SetAtom, Top, TOP, BOT,
                       and_list, box, desugar, diamond, exists_set_block,
                       forall_set_block, free_symbols, gbox, gdiamond,
                       or_list, see1, substitute_point, substitute_sets, tot1)
from .structures import (DIGRAPH, GRAPH, GRID, PDIGRAPH, GraphClass, Structure,
                         enumerate_structures, extend, grid_coordinates,
                         is_grid, isomorphic, label_symbols, make_grid,
                         random_structure, relation_symbols, validate)
from .fragments import (FO, H, HB, HBG, HBGS, HBS, HG, HGS, HS, MSO, Fragment,
                        bc_sigma_level, boxed_pi_level, boxed_sigma_level,
                        fragment_leq, in_fragment, pi_level, sigma_level)
from .evaluator import (DEFAULT_CONFIG, EvalConfig, EvalStats, defines,
                        satisfies, satisfies_by_extension, satisfies_with_note,
                        satisfying_set)
from . import errors

__all__ = [name for name in dir() if not name.startswith("_")]
