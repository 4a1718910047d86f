"""Projective measurement of cubes: outcome statistics, the generalized
update rule, and seeded outcome sampling.

A measurement is a partition of the computational levels into blocks.  The
probability of a block is the sum of the diagonal elements it covers; on
observing a block, elements whose indices all lie inside it are renormalised
and every other element is destroyed.

Sampling uses numpy's PCG64 generator; callers may pass a seed or their own
``numpy.random.Generator`` so parallel sweeps can own independent streams.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .cube import (
    STATE_TOL,
    HermitianCube,
    ValidationError,
    pair_keys,
    triple_keys,
)


@dataclass(frozen=True)
class BasisPartition:
    """Disjoint, covering blocks of the levels 1..N."""

    levels: int
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        blocks = tuple(frozenset(int(i) for i in b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        seen: set[int] = set()
        for block in blocks:
            if not block:
                raise ValidationError("partition blocks must be nonempty")
            if block & seen:
                raise ValidationError(f"partition blocks overlap on {sorted(block & seen)}")
            seen |= block
        if seen != set(range(1, self.levels + 1)):
            raise ValidationError(
                f"partition covers {sorted(seen)}, expected 1..{self.levels}"
            )

    @classmethod
    def singletons(cls, levels: int) -> "BasisPartition":
        return cls(levels, tuple(frozenset({i}) for i in range(1, levels + 1)))

    @classmethod
    def from_string(cls, spec: str, levels: int) -> "BasisPartition":
        """Parse CLI syntax like "1|2,3" into blocks {1} and {2, 3}."""
        try:
            blocks = tuple(
                frozenset(int(tok) for tok in part.split(","))
                for part in spec.split("|")
            )
        except ValueError as exc:
            raise ValidationError(f"cannot parse partition {spec!r}") from exc
        return cls(levels, blocks)

    def to_string(self) -> str:
        return "|".join(",".join(str(i) for i in sorted(b)) for b in self.blocks)


@dataclass(frozen=True)
class MeasurementOutcome:
    """One sampled measurement branch; post_state is None when absorbed."""

    block_index: int
    probability: float
    post_state: HermitianCube | None


def outcome_probabilities(rho: HermitianCube, partition: BasisPartition) -> np.ndarray:
    """Block probabilities p_s = sum of diagonal elements inside each block."""
    if partition.levels != rho.levels:
        raise ValidationError(
            f"partition over {partition.levels} levels applied to a "
            f"{rho.levels}-level cube"
        )
    probs = rho.probabilities()
    return np.array([sum(probs[i - 1] for i in block) for block in partition.blocks])


def luders_update(
    rho: HermitianCube, block: Iterable[int], tol: float = STATE_TOL
) -> tuple[float, HermitianCube | None]:
    """Update on observing ``block``: keep elements fully inside it, rescale.

    Returns (p, post).  Elements with any index outside the block are
    destroyed; survivors are divided by p.  When p <= tol the branch is
    absorbed and post is None.
    """
    blk = frozenset(int(i) for i in block)
    if not blk:
        raise ValidationError("measurement block must be nonempty")
    if not blk <= set(range(1, rho.levels + 1)):
        raise ValidationError(f"block {sorted(blk)} outside 1..{rho.levels}")
    probs = rho.probabilities()
    p = float(sum(probs[i - 1] for i in blk))
    if p <= tol:
        return max(p, 0.0), None
    n = rho.levels
    diag = np.array([rho.diag[i - 1] / p if i in blk else 0.0 for i in range(1, n + 1)])
    keep_pair = np.array([set(key) <= blk for key in pair_keys(n)])
    keep_triple = np.array(
        [set(key) <= blk for key in triple_keys(n)], dtype=bool
    )
    pre = np.where(keep_pair, rho.pair_re / p, 0.0) if rho.pair_re.size else rho.pair_re
    pim = np.where(keep_pair, rho.pair_im / p, 0.0) if rho.pair_im.size else rho.pair_im
    tri = (
        np.where(keep_triple, rho.triple / p, 0.0 + 0.0j)
        if rho.triple.size
        else rho.triple
    )
    return p, HermitianCube(n, diag, pre, pim, tri)


def selective_measure(
    rho: HermitianCube,
    partition: BasisPartition,
    rng: np.random.Generator | int | None = None,
) -> MeasurementOutcome:
    """Sample a block with its outcome probability and apply the update rule.

    Deterministic given the seed (or generator state) passed in.
    """
    if not isinstance(rng, np.random.Generator):
        rng = np.random.Generator(np.random.PCG64(rng))
    probs = outcome_probabilities(rho, partition)
    total = probs.sum()
    if abs(total - 1.0) > STATE_TOL:
        raise ValidationError(f"outcome probabilities sum to {total!r}, expected 1")
    s = int(rng.choice(len(probs), p=probs / total))
    p, post = luders_update(rho, partition.blocks[s])
    return MeasurementOutcome(s, p, post)
