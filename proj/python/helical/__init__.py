"""Lattice spin-system engine bindings."""

from ._core import (
    Grid,
    ModelParams,
    SpinField,
    branching,
    designed_vortex_count,
    discrete_curl,
    energy_direct,
    energy_reformulated,
    ferromagnet,
    gamma_table,
    helix,
    minimize,
    p_fn,
    q_fn,
    read_spinfield,
    renormalized_hn,
    scaling_s,
    vortex_competitor,
    vortex_count,
    vortex_list,
    write_spinfield,
)

__all__ = [
    "Grid",
    "ModelParams",
    "SpinField",
    "branching",
    "designed_vortex_count",
    "discrete_curl",
    "energy_direct",
    "energy_reformulated",
    "ferromagnet",
    "gamma_table",
    "helix",
    "minimize",
    "p_fn",
    "q_fn",
    "read_spinfield",
    "renormalized_hn",
    "scaling_s",
    "vortex_competitor",
    "vortex_count",
    "vortex_list",
    "write_spinfield",
]
