from app.numtheory.angles import RationalAngle, RationalCosine, rational_sqrt
from app.numtheory.corollary import QuadrupleInstance, TriangleInstance, quadruple_verdict, triangle_verdict
from app.numtheory.niven import cosine_is_exception, exceptions_removed, niven_classify
from app.numtheory.reconstruct import rational_reconstruct


__all__ = [
    "QuadrupleInstance",
    "RationalAngle",
    "RationalCosine",
    "TriangleInstance",
    "cosine_is_exception",
    "exceptions_removed",
    "niven_classify",
    "quadruple_verdict",
    "rational_reconstruct",
    "rational_sqrt",
    "triangle_verdict",
]
