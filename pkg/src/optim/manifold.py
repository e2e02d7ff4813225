"""Oblique-manifold helpers for the unit-row Laplacian factors."""

import numpy as np


def project_unit_rows(Z: np.ndarray) -> np.ndarray:
    """Scale every row to unit Euclidean norm.

    Zero rows become the first basis row (1, 0, ..., 0).
    """
    Z = np.array(Z, dtype=float, copy=True)
    norms = np.linalg.norm(Z, axis=1)
    zero = norms == 0
    Z[~zero] /= norms[~zero, None]
    if np.any(zero):
        Z[zero] = 0.0
        Z[zero, 0] = 1.0
    return Z


def tangent_project(Z: np.ndarray, G: np.ndarray) -> np.ndarray:
    """Remove the radial component of each row of G at the unit rows of Z."""
    radial = np.sum(G * Z, axis=1, keepdims=True)
    return G - radial * Z
