"""Synthetic multi-label data with an easy/hard instance structure.

Instances are drawn around ``g`` random centers, latent labels are a noisy linear map of
the features, and labels are the sign of a rank-k product. A ``hard_fraction`` of the
instances get each label flipped with probability ``noise_rate``.
"""

import logging
import math

import numpy as np

from src.core.errors import ConfigError

from .types import MultiLabelDataset, SyntheticTruth

logger = logging.getLogger(__name__)

CENTER_SCALE = 4.0
LATENT_NOISE = 0.01


def synthesize(
    d: int,
    n: int,
    l: int,
    k: int,
    g: int,
    noise_rate: float,
    hard_fraction: float,
    seed: int,
) -> tuple[MultiLabelDataset, SyntheticTruth]:
    """Generate a synthetic dataset and its ground truth.

    Args:
        d: Feature dimension.
        n: Instance count.
        l: Label count.
        k: Latent label dimension of the generator.
        g: Number of feature-space clusters.
        noise_rate: Per-label flip probability on hard instances.
        hard_fraction: Fraction of instances that are hard.
        seed: Random seed.

    Returns:
        The dataset (full mask) and a ``SyntheticTruth`` whose ``state`` is the generating
        ``ModelState`` (Laplacian factors are the unit-normalized rows of U*).

    Raises:
        ConfigError: If k > min(d, l), rates fall outside [0, 1], or g is not in 1..n.
    """
    from src.model.types import ModelState

    if min(d, n, l, k, g) < 1:
        raise ConfigError("d, n, l, k and g must all be positive", module="data")
    if k > min(d, l):
        raise ConfigError(f"k={k} exceeds min(d, l)={min(d, l)}", module="data")
    if g > n:
        raise ConfigError(f"g={g} exceeds n={n}", module="data")
    if not 0.0 <= noise_rate <= 1.0 or not 0.0 <= hard_fraction <= 1.0:
        raise ConfigError("noise_rate and hard_fraction must lie in [0, 1]", module="data")

    rng = np.random.default_rng(seed)
    centers = rng.normal(0.0, CENTER_SCALE, size=(d, g))
    clusters = rng.permutation(np.arange(n) % g)
    features = centers[:, clusters] + rng.normal(size=(d, n))

    w_true = rng.normal(size=(d, k)) / math.sqrt(d)
    v_true = w_true.T @ features + LATENT_NOISE * rng.normal(size=(k, n))
    u_true = rng.normal(size=(l, k))
    clean = np.where(u_true @ v_true >= 0, 1.0, -1.0)

    n_hard = int(math.floor(hard_fraction * n + 0.5))
    hard = np.sort(rng.permutation(n)[:n_hard])
    hard_mask = np.zeros(n, dtype=bool)
    hard_mask[hard] = True
    flipped = (rng.random((l, n)) < noise_rate) & hard_mask[None, :]
    labels = np.where(flipped, -clean, clean)

    z_true = u_true / np.linalg.norm(u_true, axis=1, keepdims=True)
    state = ModelState(U=u_true, V=v_true, W=w_true, Z=[z_true.copy() for _ in range(g)])

    logger.info(
        f"Synthesized d={d}, n={n}, l={l}, k={k}, g={g}: {n_hard} hard instances, "
        f"{int(flipped.sum())} flipped labels"
    )
    ds = MultiLabelDataset(features=features, labels=labels, mask=np.ones_like(labels))
    truth = SyntheticTruth(
        state=state, clean_labels=clean, hard_instances=hard, clusters=clusters, flipped=flipped
    )
    return ds, truth
