"""Security and cost arithmetic for the GRS-based scheme."""

from .complexity import (ComplexityReport, CostModel, comparison_table, complexity_report,
                         goppa_report, key_bits, rsa_report)
from .distinguisher import DistinguisherReport, distinguisher_experiment, star_product_dim
from .isd import WfReport, dap_lower_bound, isd_workfactor, wf_grid
from .probability import correctable_count, pe_correctable, success_lower_bound
from .subcode import SubcodeFinding, subcode_check

__all__ = [
    "ComplexityReport", "CostModel", "comparison_table", "complexity_report", "goppa_report",
    "key_bits", "rsa_report", "DistinguisherReport", "distinguisher_experiment",
    "star_product_dim", "WfReport", "dap_lower_bound", "isd_workfactor", "wf_grid",
    "correctable_count", "pe_correctable", "success_lower_bound", "SubcodeFinding",
    "subcode_check",
]
