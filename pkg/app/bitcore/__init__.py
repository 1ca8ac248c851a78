from app.bitcore.bitstring import Bit, BitString, EnsembleParams, concat
from app.bitcore.operators import (
    assemble,
    cyc_shift,
    interp_i1,
    interp_i1_inverse,
    partial_concat,
    quaternion_apply,
)
from app.bitcore.statistics import EnsembleStats, correlation, ensemble_stats


__all__ = [
    "Bit",
    "BitString",
    "EnsembleParams",
    "EnsembleStats",
    "assemble",
    "concat",
    "correlation",
    "cyc_shift",
    "ensemble_stats",
    "interp_i1",
    "interp_i1_inverse",
    "partial_concat",
    "quaternion_apply",
]
