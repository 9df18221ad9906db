"""Connected graph epimorphisms, generic towers and acyclic simplicial complexes.

Artifacts are plain dicts in the same JSON shapes the command line reads and
writes: graphs, morphisms, squares, towers, complexes, maps and chains.
"""

import json

from . import _core
from ._core import ContractViolation, FraisseError, ResourceLimit, WitnessNotFound

__all__ = [
    "ContractViolation", "FraisseError", "ResourceLimit", "WitnessNotFound",
    "check_epi", "amalgamate", "is_exact", "is_structurally_exact",
    "mapping_cylinder", "cylinder_extension", "subdivide_edges", "collapse_map",
    "local_refinement", "to_dot", "build_tower", "extend_tower",
    "extension_witness", "back_and_forth", "triangle_persistence",
    "open_tower_map", "closure", "skeleton", "reduced_homology", "is_n_acyclic",
    "in_class_acyclic", "is_n_acyclic_map", "boundary", "solve_boundary",
    "simplicial_pullback", "amalgamate_acyclic", "run_cli",
]


def _d(x):
    return json.dumps(x)


def _l(s):
    return json.loads(s)


def check_epi(morphism):
    return _l(_core.check_epi(_d(morphism)))


def amalgamate(f, g):
    return _l(_core.amalgamate(_d(f), _d(g)))


def is_exact(square):
    return _core.is_exact(_d(square))


def is_structurally_exact(square, side="f", bound=10):
    return _core.is_structurally_exact(_d(square), side, bound)


def mapping_cylinder(alpha):
    return _l(_core.mapping_cylinder(_d(alpha)))


def cylinder_extension(g, beta, alpha):
    return _l(_core.cylinder_extension(_d(g), _d(beta), _d(alpha)))


def subdivide_edges(graph, n):
    return _l(_core.subdivide_edges(_d(graph), n))


def collapse_map(graph, n, gamma):
    return _l(_core.collapse_map(_d(graph), n, list(gamma)))


def local_refinement(f, i):
    return _l(_core.local_refinement(_d(f), _d(i)))


def to_dot(graph, name="G"):
    return _core.to_dot(_d(graph), name)


def build_tower(max_vertices=3, depth=6, seed=0, size_cap=0, refine_period=3,
                search_nodes=200000, max_obligations=20000):
    """size_cap 0 means FRAISSE_SIZE_CAP, or 60 when that is unset."""
    return _l(_core.build_tower(max_vertices, depth, seed, size_cap, refine_period,
                                search_nodes, max_obligations))


def extend_tower(tower, depth):
    return _l(_core.extend_tower(_d(tower), depth))


def extension_witness(tower, n, f, g):
    return _l(_core.extension_witness(_d(tower), n, _d(f), _d(g)))


def back_and_forth(t1, t2, rounds=2):
    return _l(_core.back_and_forth(_d(t1), _d(t2), rounds))


def triangle_persistence(tower, n, m):
    return _core.triangle_persistence(_d(tower), n, m)


def open_tower_map(tower, target):
    return _l(_core.open_tower_map(_d(tower), _d(target)))


def closure(complex_):
    return _l(_core.closure(_d(complex_)))


def skeleton(complex_, n):
    return _l(_core.skeleton(_d(complex_), n))


def reduced_homology(complex_, degree):
    return _l(_core.reduced_homology(_d(complex_), degree))


def is_n_acyclic(complex_, n):
    return _core.is_n_acyclic(_d(complex_), n)


def in_class_acyclic(complex_, n):
    return _core.in_class_acyclic(_d(complex_), n)


def is_n_acyclic_map(f, n):
    return _core.is_n_acyclic_map(_d(f), n)


def boundary(chain):
    return _l(_core.boundary(_d(chain)))


def solve_boundary(complex_, cycle):
    s = _core.solve_boundary(_d(complex_), _d(cycle))
    return None if s is None else _l(s)


def simplicial_pullback(f, g, max_dim=-2):
    return _l(_core.simplicial_pullback(_d(f), _d(g), max_dim))


def amalgamate_acyclic(f, g, n):
    return _l(_core.amalgamate_acyclic(_d(f), _d(g), n))


def run_cli(args):
    """Runs one command line; returns (exit_code, envelope dict or help text)."""
    code, text = _core.run_cli([str(a) for a in args])
    try:
        return code, _l(text)
    except ValueError:
        return code, text
