"""Vectorized reductions over the subset lattice of a finite carrier

Arrays are indexed by subset bit pattern and have length 2^n. Bit i of the
index corresponds to axis 1 of the view ``arr.reshape(-1, 2, 1 << i)``.
"""

import numpy as np


def _bit_views(arr: np.ndarray, i: int) -> np.ndarray:
    return arr.reshape(-1, 2, 1 << i)


def subset_or(values: np.ndarray, n: int) -> np.ndarray:
    """out[g] = OR of values[s] over every s ⊆ g"""
    out = values.copy()
    for i in range(n):
        view = _bit_views(out, i)
        view[:, 1, :] |= view[:, 0, :]
    return out


def superset_or(values: np.ndarray, n: int) -> np.ndarray:
    """out[g] = OR of values[s] over every s ⊇ g"""
    out = values.copy()
    for i in range(n):
        view = _bit_views(out, i)
        view[:, 0, :] |= view[:, 1, :]
    return out


def superset_and(values: np.ndarray, n: int) -> np.ndarray:
    """out[g] = AND of values[s] over every s ⊇ g"""
    out = values.copy()
    for i in range(n):
        view = _bit_views(out, i)
        view[:, 0, :] &= view[:, 1, :]
    return out


def strict_superset_or(closed_up: np.ndarray, n: int) -> np.ndarray:
    """
    Reduce a superset-OR table to strict supersets

    Args:
        closed_up: Output of superset_or
        n: Carrier size

    Returns:
        out[g] = OR of the original values over every s ⊋ g (zero for the full set)
    """
    out = np.zeros_like(closed_up)
    for i in range(n):
        out_view = _bit_views(out, i)
        up_view = _bit_views(closed_up, i)
        out_view[:, 0, :] |= up_view[:, 1, :]
    return out


def strict_superset_and(closed_up: np.ndarray, n: int, identity: int) -> np.ndarray:
    """Like strict_superset_or for AND; the full set maps to identity"""
    out = np.full_like(closed_up, identity)
    for i in range(n):
        out_view = _bit_views(out, i)
        up_view = _bit_views(closed_up, i)
        out_view[:, 0, :] &= up_view[:, 1, :]
    return out


def subset_indices(n: int) -> np.ndarray:
    """Every subset bit pattern of an n-element carrier, ascending"""
    return np.arange(1 << n, dtype=np.int64)
