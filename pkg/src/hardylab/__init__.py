"""Numerical laboratory for Hardy/Bergman norms of Taylor partial sums.

The package measures how partial sums of one- and several-variable
Taylor series behave in Bergman norm (uniformly bounded, convergent)
versus Hardy norm (unbounded along a near-boundary schedule), on the
unit disc and on complete Reinhardt domains.
"""

from .errors import (AliasingError, CoefficientUnavailable, DomainModelError,
                     HardyLabError, NonConvergenceError, PoleError,
                     SingularKernelError)
from .experiments import (ExperimentRecord, ExperimentResult, RunConfig,
                          render_csv, render_json, run_a1_convergence,
                          run_all, run_blowup, run_density,
                          run_ic_asymptotics, run_reinhardt,
                          run_uniform_bound, write_result)
from .norms import (NormEstimate, bergman_norm_disc, bergman_norm_reinhardt,
                    hardy_norm_disc, hardy_norm_reinhardt,
                    monotonicity_check)
from .quadrature import (CircleRule, PolarDiscRule, RefinementReport,
                         TorusRule, angular_floor, integrate_circle,
                         integrate_disc, integrate_torus, refine_until)
from .registry import (FunctionRegistry, RegistryEntry, TaggedEvaluator,
                       default_registry, fa_entry, geometric_entry,
                       monomial_entry, polynomial_entry, product_entry)
from .reinhardt import (DensityRow, FrontierSample, ReinhardtDomain, ball,
                        contains, custom_domain, density_experiment,
                        dilate_truncate, domain_from_config,
                        frontier_max_radius, frontier_sample, polydisc,
                        power_egg, section_tops, simplex_directions)
from .series import (MultiIndexSeries, PartialSumReport, PowerSeries,
                     block_coefficients, block_coefficients_nd,
                     extract_coefficient, kernel_identity_check, partial_sum,
                     partial_sum_kernel, partial_sum_with_report,
                     series_from_json, series_to_json, square_partial_sum)
from .witnesses import (IcQuery, IcRatioRow, IcValue, T1T2Split,
                        T2BoundRatio, WitnessFa, blowup_lower_bound,
                        blowup_schedule, eval_fa, eval_ic, fa_series,
                        ic_asymptotic_ratio, ic_comparison,
                        t2_hardy_vs_bound)

__version__ = "0.1.0"

__all__ = [
    "AliasingError", "CoefficientUnavailable", "DomainModelError",
    "HardyLabError", "NonConvergenceError", "PoleError",
    "SingularKernelError",
    "ExperimentRecord", "ExperimentResult", "RunConfig", "render_csv",
    "render_json", "run_a1_convergence", "run_all", "run_blowup",
    "run_density", "run_ic_asymptotics", "run_reinhardt",
    "run_uniform_bound", "write_result",
    "NormEstimate", "bergman_norm_disc", "bergman_norm_reinhardt",
    "hardy_norm_disc", "hardy_norm_reinhardt", "monotonicity_check",
    "CircleRule", "PolarDiscRule", "RefinementReport", "TorusRule",
    "angular_floor", "integrate_circle", "integrate_disc",
    "integrate_torus", "refine_until",
    "FunctionRegistry", "RegistryEntry", "TaggedEvaluator",
    "default_registry", "fa_entry", "geometric_entry", "monomial_entry",
    "polynomial_entry", "product_entry",
    "DensityRow", "FrontierSample", "ReinhardtDomain", "ball", "contains",
    "custom_domain", "density_experiment", "dilate_truncate",
    "domain_from_config", "frontier_max_radius", "frontier_sample",
    "polydisc", "power_egg", "section_tops", "simplex_directions",
    "MultiIndexSeries", "PartialSumReport", "PowerSeries",
    "block_coefficients", "block_coefficients_nd", "extract_coefficient",
    "kernel_identity_check", "partial_sum", "partial_sum_kernel",
    "partial_sum_with_report", "series_from_json", "series_to_json",
    "square_partial_sum",
    "IcQuery", "IcRatioRow", "IcValue", "T1T2Split", "T2BoundRatio",
    "WitnessFa", "blowup_lower_bound", "blowup_schedule", "eval_fa",
    "eval_ic", "fa_series", "ic_asymptotic_ratio", "ic_comparison",
    "t2_hardy_vs_bound",
]
