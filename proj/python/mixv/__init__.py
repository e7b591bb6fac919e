"""Exact equivalence checking for mixtures of product distributions and
desk-scale Ising reductions (partition function <- atomic marginals <- total
variation distance)."""

from mixv._core import (
    GadgetParams,
    GuardError,
    IsingModel,
    Mixture,
    Verdict,
    brute_force_equivalence,
    build_marginal_gadget,
    check_equivalence,
    eliminate_first_variable,
    equivalent_rewrite,
    gadget_error_bound,
    holds_at_ones,
    independent_subset,
    log_config_weight,
    log_marginal_lower_bound,
    marginal_brute,
    marginal_via_tv,
    mixture_prob,
    partition_brute,
    partition_via_marginals,
    perturbed_pair,
    random_ising,
    random_mixture,
    size_gadget_params,
    tv_brute,
    validate_mixture,
    verify_witness,
)
from mixv._core import __version__

__all__ = [
    "GadgetParams",
    "GuardError",
    "IsingModel",
    "Mixture",
    "Verdict",
    "brute_force_equivalence",
    "build_marginal_gadget",
    "check_equivalence",
    "eliminate_first_variable",
    "equivalent_rewrite",
    "gadget_error_bound",
    "holds_at_ones",
    "independent_subset",
    "log_config_weight",
    "log_marginal_lower_bound",
    "marginal_brute",
    "marginal_via_tv",
    "mixture_prob",
    "partition_brute",
    "partition_via_marginals",
    "perturbed_pair",
    "random_ising",
    "random_mixture",
    "size_gadget_params",
    "tv_brute",
    "validate_mixture",
    "verify_witness",
    "__version__",
]
