"""
计算引擎

权格与正性证书、完美匹配与 R-荷、覆盖窗口、理想枚举、二聚体对应、幂级数和一致性验证。
"""
from .snf import SNFResult, smith_normal_form
from .lp import InfeasibleError, UnboundedError, LinearProgram, LPSolution
from .lattice import (LatticeError, TorsionError, WeightLattice, PositivityCertificate,
                      weight_lattice, positivity_certificate)
from .matching import (perfect_matchings, matching_counts, is_non_degenerate, reference_matching,
                       r_charge, r_charge_residuals)
from .cover import (CoverError, WindowError, ZeroCycleError, MuTable, CanonicalMatching, CoverContext,
                    mu_table, build_cover, required_radius, class_children, class_predecessors,
                    class_weight, class_rdegree, canonical_matching, window_faces, dump_mu)
from .ideals import (ConsistencyError, ResourceLimitError, EnumerationLimits,
                     enumerate_ideals, ideal_series, brute_force_series, partition_function,
                     dt_partition_function, apply_dt_signs, dt_sign, require_certificate)
from .dimer import (DimerError, HeightError, RoundtripReport, MatchingRoute, matching_radius,
                    ideal_to_matching, height_field, matching_to_ideal, roundtrip_suite, z_via_matchings)
from .series import (series_arith, series_log, series_exp, adams, mobius, plethystic_exp, plethystic_log,
                     specialize, series_from_counts, log_specialized, expand_rational, detect_recurrence,
                     berlekamp_massey, parse_rational_function, compare_series, SeriesComparison,
                     poly_mul, poly_pow)
from .verify import (ConditionCResult, ResolutionCheck, check_condition_c, resolution_supports,
                     verify_resolution_character, consistency_report)

__all__ = [
    'SNFResult', 'smith_normal_form',
    'InfeasibleError', 'UnboundedError', 'LinearProgram', 'LPSolution',
    'LatticeError', 'TorsionError', 'WeightLattice', 'PositivityCertificate',
    'weight_lattice', 'positivity_certificate',
    'perfect_matchings', 'matching_counts', 'is_non_degenerate', 'reference_matching',
    'r_charge', 'r_charge_residuals',
    'CoverError', 'WindowError', 'ZeroCycleError', 'MuTable', 'CanonicalMatching', 'CoverContext',
    'mu_table', 'build_cover', 'required_radius', 'class_children', 'class_predecessors',
    'class_weight', 'class_rdegree', 'canonical_matching', 'window_faces', 'dump_mu',
    'ConsistencyError', 'ResourceLimitError', 'EnumerationLimits',
    'enumerate_ideals', 'ideal_series', 'brute_force_series', 'partition_function',
    'dt_partition_function', 'apply_dt_signs', 'dt_sign', 'require_certificate',
    'DimerError', 'HeightError', 'RoundtripReport', 'MatchingRoute', 'matching_radius',
    'ideal_to_matching', 'height_field', 'matching_to_ideal', 'roundtrip_suite', 'z_via_matchings',
    'series_arith', 'series_log', 'series_exp', 'adams', 'mobius', 'plethystic_exp', 'plethystic_log',
    'specialize', 'series_from_counts', 'log_specialized', 'expand_rational', 'detect_recurrence',
    'berlekamp_massey', 'parse_rational_function', 'compare_series', 'SeriesComparison',
    'poly_mul', 'poly_pow',
    'ConditionCResult', 'ResolutionCheck', 'check_condition_c', 'resolution_supports',
    'verify_resolution_character', 'consistency_report',
]
