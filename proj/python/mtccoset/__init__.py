"""Modular tensor category coset toolkit.

A thin wrapper over the compiled core: reference generators (affine su(2),
Virasoro minimal models, pointed cyclic categories), modular-data validation,
Verlinde fusion, categorical coset analysis (Kac-Wakimoto set, field
identification, dimension formulas, the KW sign condition) and the spectral
verification of the commuting module-fusion family.
"""

import json as _json

from ._mtccoset import (
    CosetSystem,
    InconsistencyError,
    ModularData,
    StructuralError,
    b_coeff,
    balancing_check,
    build_coset_system,
    deligne_product,
    dual_permutation,
    field_orbits,
    identify_induced,
    kw_set,
    load_coset_system,
    load_modular_data,
    minimal_model,
    mirror,
    monodromy_is_trivial,
    pointed_cyclic,
    quantum_dims,
    s_covariance_residual,
    save_coset_system,
    save_modular_data,
    solve_branching,
    su2_level,
    trivial_data,
    verlinde,
)
from ._mtccoset import analyze_json as _analyze_json
from ._mtccoset import spectral_verify_json as _spectral_verify_json
from ._mtccoset import validate_json as _validate_json


def validate(md):
    """Run every modular-data invariant; returns the report as a dict."""
    return _json.loads(_validate_json(md))


def analyze(system):
    """Full coset analysis of a CosetSystem; returns the report as a dict."""
    return _json.loads(_analyze_json(system))


def spectral_verify(system):
    """Module-category spectral verification; returns the report as a dict."""
    return _json.loads(_spectral_verify_json(system))


__all__ = [
    "CosetSystem",
    "InconsistencyError",
    "ModularData",
    "StructuralError",
    "analyze",
    "b_coeff",
    "balancing_check",
    "build_coset_system",
    "deligne_product",
    "dual_permutation",
    "field_orbits",
    "identify_induced",
    "kw_set",
    "load_coset_system",
    "load_modular_data",
    "minimal_model",
    "mirror",
    "monodromy_is_trivial",
    "pointed_cyclic",
    "quantum_dims",
    "s_covariance_residual",
    "save_coset_system",
    "save_modular_data",
    "solve_branching",
    "spectral_verify",
    "su2_level",
    "trivial_data",
    "validate",
    "verlinde",
]
