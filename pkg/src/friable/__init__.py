"""Integers without large prime factors: rho, exact Psi(x, y) counts and estimates."""

from .chamayou import McHistogram, chamayou_histogram, chamayou_sample
from .constants import (EULER_GAMMA, STIELTJES_GAMMA1, QuadratureResult, golomb_dickman,
                        rho_mass)
from .counting import (FriableCountResult, Method, PrimeList, buchstab_check,
                       mean_log_largest_prime, psi_congruence, psi_lattice, psi_sieve,
                       sieve_primes)
from .dickman import (BoundKind, RhoTable, build_rho_table, classical_bound, debruijn_asymptotic,
                      export_table, log_rho, rho, rho_derivative)
from .errors import RangeRefusal
from .estimates import (EstimateReport, ZetaPartial, debruijn_expansion, dickman_estimate,
                        estimate_report, expansion_coefficients, pillai_estimate,
                        ramanujan_psi3, ramaswami_estimate, rankin_bound, rankin_optimize,
                        zeta_partial)
from .series import SeriesTerm, iterated_integral, rho_via_buchstab, rho_via_ramanujan

__version__ = "0.1.0"

__all__ = [
    "BoundKind", "EULER_GAMMA", "EstimateReport", "FriableCountResult", "McHistogram",
    "Method", "PrimeList", "QuadratureResult", "RangeRefusal", "RhoTable", "STIELTJES_GAMMA1",
    "SeriesTerm", "ZetaPartial", "buchstab_check", "build_rho_table", "chamayou_histogram",
    "chamayou_sample", "classical_bound", "debruijn_asymptotic", "debruijn_expansion",
    "dickman_estimate", "estimate_report", "expansion_coefficients", "export_table",
    "golomb_dickman", "iterated_integral", "log_rho", "mean_log_largest_prime",
    "pillai_estimate", "psi_congruence", "psi_lattice", "psi_sieve", "ramanujan_psi3",
    "ramaswami_estimate", "rankin_bound", "rankin_optimize", "rho", "rho_derivative",
    "rho_mass", "rho_via_buchstab", "rho_via_ramanujan", "sieve_primes", "zeta_partial",
]
