"""Enumerative two-part codes versus NML for Bernoulli and multinomial models."""
from .bernoulli import BernoulliStat, CodeId, CodeLength, code_length
from .compositions import for_each_composition, for_each_partition_weighted, partition_count
from .experiments import (BudgetExceeded, DetectionThresholds, ExperimentResult,
                          bias_detection_prob, coin_classification, comp_ratio_table,
                          compressible_ratio, compression_rate_icdf, detection_thresholds,
                          expected_code_length, percent_compressible)
from .multinomial import MultinomialStat, code_length_m, nml_comp_exact_m

__all__ = [
    "BernoulliStat", "BudgetExceeded", "CodeId", "CodeLength", "DetectionThresholds",
    "ExperimentResult", "MultinomialStat", "bias_detection_prob", "code_length", "code_length_m",
    "coin_classification", "comp_ratio_table", "compressible_ratio", "compression_rate_icdf",
    "detection_thresholds", "expected_code_length", "for_each_composition",
    "for_each_partition_weighted", "nml_comp_exact_m", "partition_count", "percent_compressible",
]
