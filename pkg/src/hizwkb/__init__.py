"""Tau-expansion of the Harish-Chandra-Itzykson-Zuber integral for general beta."""
from .jack import character, dimension, jack_power_sum, verify_sum_rule
from .partitions import Partition, dominance_compare, enumerate_partitions
from .polyring import MPoly
from .taugraph import GRAPHS, TauGraph, canonicalize, enumerate_graphs, identity_basis, orbit_sum
from .wkb import (
    CoeffTable,
    GaugePolicy,
    asymptotic_f,
    duality_map,
    largek_leading,
    residual_coefficients,
    tau_coefficients_from_series,
    verify_residual_equations,
    zonal_series,
)

__all__ = [
    "CoeffTable", "GRAPHS", "GaugePolicy", "MPoly", "Partition", "TauGraph", "asymptotic_f",
    "canonicalize", "character", "dimension", "dominance_compare", "duality_map", "enumerate_graphs",
    "enumerate_partitions", "identity_basis", "jack_power_sum", "largek_leading", "orbit_sum",
    "residual_coefficients", "tau_coefficients_from_series", "verify_residual_equations",
    "verify_sum_rule", "zonal_series",
]
