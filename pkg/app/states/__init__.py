from app.states.bell import BellPair, bell_pair
from app.states.multiqubit import MultiQubitState, kqubit_build
from app.states.qubit import bloch_state
from app.states.sampling import EpsilonDisk, SettingConstraint, enumerate_candidates, sample_exact_setting
from app.states.skeleton import SkeletonPoint, exact_relative_cosine


__all__ = [
    "BellPair",
    "EpsilonDisk",
    "MultiQubitState",
    "SettingConstraint",
    "SkeletonPoint",
    "bell_pair",
    "bloch_state",
    "enumerate_candidates",
    "exact_relative_cosine",
    "kqubit_build",
    "sample_exact_setting",
]
