"""Finite-truncation biregularity diagnostics and projective tensor-norm
estimation.

The native core exposes:

- ``schatten_norm`` / ``operator_norm`` / ``schur_product``: matrix toolkit.
- ``run_scenario_grid``: the staircase grid scenarios with limit estimates
  and verdicts.
- ``estimate_limits``: tail-window iterated-limit detection on any grid.
- ``nuclear_oracle`` / ``projective_bounds``: projective tensor norms.
- ``run_json`` / ``list_scenarios_json``: full reports, as produced by the
  ``bireg`` command-line tool.
"""

from ._core import (
    InvalidInput,
    NumericalFailure,
    __version__,
    estimate_limits,
    list_scenarios_json,
    nuclear_oracle,
    operator_norm,
    projective_bounds,
    run_json,
    run_scenario_grid,
    schatten_norm,
    schur_product,
)

__all__ = [
    "InvalidInput",
    "NumericalFailure",
    "__version__",
    "estimate_limits",
    "list_scenarios_json",
    "nuclear_oracle",
    "operator_norm",
    "projective_bounds",
    "run_json",
    "run_scenario_grid",
    "schatten_norm",
    "schur_product",
]
