from app.bitcore.bitstring import BitString
from app.bitcore.operators import cyc_shift, interp_i1
from app.states.skeleton import SkeletonPoint


def bloch_state(pt: SkeletonPoint) -> BitString:
    """B(theta, phi) = cyc_shift(interp_i1(1, m), n)."""
    return cyc_shift(interp_i1(BitString.unit(pt.params), pt.m), pt.n)
