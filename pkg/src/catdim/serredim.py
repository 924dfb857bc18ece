"""Serre-dimension engine namespace: Serre bimodule, powers, slopes,
inverse Serre functor, entropy and the duality and K0 cross-checks."""
from __future__ import annotations

from .serre import (DimensionReport, EntropyReport, NotSmooth, Pattern, SerreData,
                    TensorPowers, coxeter_class, coxeter_matrix, detect_pattern,
                    duality_check, e_pm, entropy, entropy_value, estimate_dims,
                    inverse_kernel, inverse_serre_bimodule, kill_left_radical, rhom,
                    serre_bimodule, serre_power_profile)

__all__ = ["DimensionReport", "EntropyReport", "NotSmooth", "Pattern", "SerreData",
           "TensorPowers", "coxeter_class", "coxeter_matrix", "detect_pattern", "duality_check",
           "e_pm", "entropy", "entropy_value", "estimate_dims", "inverse_kernel",
           "inverse_serre_bimodule", "kill_left_radical", "rhom", "serre_bimodule",
           "serre_power_profile"]
