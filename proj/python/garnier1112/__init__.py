from ._core import (
    Expansion,
    GarnierError,
    Params,
    check_generic,
    closed_form_monodromy,
    convergence,
    expand,
    gamma,
    garnier_coords,
    group_identities,
    hyp1f1,
    hyp2f1,
    limit_equation,
    limit_loop,
    residual,
    rgamma,
    sample_params,
)

__all__ = [
    "Expansion",
    "GarnierError",
    "Params",
    "check_generic",
    "closed_form_monodromy",
    "convergence",
    "expand",
    "gamma",
    "garnier_coords",
    "group_identities",
    "hyp1f1",
    "hyp2f1",
    "limit_equation",
    "limit_loop",
    "residual",
    "rgamma",
    "sample_params",
]
