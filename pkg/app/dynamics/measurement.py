import hashlib
from typing import Dict

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from app.bitcore.bitstring import Bit, BitString


class ClusterOutcome(BaseModel):
    """A measured ensemble: the shuffled string, whose symbols label each position's cluster."""

    model_config = ConfigDict(frozen=True)

    disordered: BitString
    seed: int
    permutation_digest: str = Field(..., description="SHA-256 of the applied permutation")
    counts: Dict[str, int]

    @property
    def labels(self) -> np.ndarray:
        return self.disordered.symbols()

    def clustered(self) -> BitString:
        """The outcome grouped into clusters: +1 first, then nulls, then -1."""
        return BitString.from_symbols(
            np.sort(self.labels)[::-1].copy(), self.disordered.params
        )

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "permutation_digest": self.permutation_digest,
            "counts": dict(self.counts),
        }


def cluster_counts(s: BitString) -> Dict[str, int]:
    return {
        "plus": s.count(Bit.PLUS),
        "minus": s.count(Bit.MINUS),
        "null": s.count(Bit.NULL),
    }


def measure_cluster(s: BitString, seed: int) -> ClusterOutcome:
    """Measurement as disorder: a seeded uniform shuffle of positions."""
    rng = np.random.default_rng(seed)
    perm = rng.permutation(s.length)
    digest = hashlib.sha256(perm.astype("<i8").tobytes()).hexdigest()
    disordered = BitString.from_symbols(s.symbols()[perm], s.params)
    return ClusterOutcome(
        disordered=disordered,
        seed=seed,
        permutation_digest=digest,
        counts=cluster_counts(disordered),
    )
