from app.dynamics.measurement import ClusterOutcome, measure_cluster
from app.dynamics.padic import PAdicDistance, PAdicLabel, padic_distance, padic_valuation, position_label
from app.dynamics.unitary import UnitaryProgram, enumerate_unitary_images, evolve, invert, is_unitary_image


__all__ = [
    "ClusterOutcome",
    "PAdicDistance",
    "PAdicLabel",
    "UnitaryProgram",
    "enumerate_unitary_images",
    "evolve",
    "invert",
    "is_unitary_image",
    "measure_cluster",
    "padic_distance",
    "padic_valuation",
    "position_label",
]
