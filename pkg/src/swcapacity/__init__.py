"""Capacity of small-world networks: generators, exact min cuts, closed-form bounds."""

from .bounds import (
    BoundsReport,
    bounds_kleinberg,
    bounds_navigable_ring,
    bounds_rewiring,
    bounds_shortcuts,
    cw_kleinberg,
    cw_navigable_ring,
    cw_shortcuts,
    epsilon,
    lemma1_mincut,
)
from .generators import (
    gen_kleinberg,
    gen_navigable_ring,
    gen_rewired_smallworld,
    gen_ring_lattice,
    gen_shortcut_smallworld,
    generate,
)
from .graph import (
    CutResult,
    ParameterError,
    WeightedGraph,
    brute_force_min_cut,
    cut_value,
    global_min_cut,
    lattice_distance,
    ring_distance,
)
from .models import (
    KleinbergParams,
    NavigableRingParams,
    RewiringParams,
    RingLatticeParams,
    ShortcutParams,
)

__version__ = "0.1.0"
