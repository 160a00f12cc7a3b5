"""
Successive-cancellation list decoding in the natural (y = u·F^{⊗n}) domain.

Min-sum f-function, hard-decision path metric (a path pays |α| whenever its
bit disagrees with the sign of the LLR). Paths are stored as rows; when a
leaf forks or prunes the list, the permutation is handed back up the
recursion and each frame re-indexes its own arrays lazily.
"""

from __future__ import annotations

from typing import NamedTuple, Tuple

import numpy as np

from .transform import polar_transform


class ListOutput(NamedTuple):
    """Surviving paths sorted by metric (best first)."""

    u: np.ndarray  # (paths, N) uint8
    metrics: np.ndarray  # (paths,)


def f_minsum(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.sign(a) * np.sign(b) * np.minimum(np.abs(a), np.abs(b))


def g_combine(a: np.ndarray, b: np.ndarray, left_bits: np.ndarray) -> np.ndarray:
    return np.where(left_bits, b - a, b + a)


class _ListDecoder:
    def __init__(self, frozen: np.ndarray, list_size: int):
        self.frozen = frozen
        self.list_size = list_size
        self.metrics = np.zeros(1)

    def run(self, alpha: np.ndarray, start: int) -> Tuple[np.ndarray, np.ndarray]:
        """Decode the node covering u[start:start+n]; returns (codeword bits, path permutation)."""
        paths, n = alpha.shape
        frozen = self.frozen[start : start + n]

        if frozen.all():
            self.metrics = self.metrics + np.sum(np.abs(alpha) * (alpha < 0), axis=1)
            return np.zeros((paths, n), dtype=np.uint8), np.arange(paths)

        if n == 1:
            return self._leaf(alpha[:, 0])

        half = n // 2
        a, b = alpha[:, :half], alpha[:, half:]
        left, perm_left = self.run(f_minsum(a, b), start)
        a, b = a[perm_left], b[perm_left]
        right, perm_right = self.run(g_combine(a, b, left.astype(bool)), start + half)
        left = left[perm_right]
        bits = np.concatenate([left ^ right, right], axis=1)
        return bits, perm_left[perm_right]

    def _leaf(self, alpha: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        magnitude = np.abs(alpha)
        candidates = np.concatenate(
            [self.metrics + magnitude * (alpha < 0), self.metrics + magnitude * (alpha > 0)]
        )
        keep = np.argsort(candidates, kind="stable")[: self.list_size]
        paths = alpha.size
        self.metrics = candidates[keep]
        bits = (keep >= paths).astype(np.uint8)[:, None]
        return bits, keep % paths


def scl_decode(llrs: np.ndarray, frozen: np.ndarray, list_size: int) -> ListOutput:
    """
    Run SCL on natural-order LLRs of y (positive means bit 0 more likely).

    frozen: boolean mask over u; frozen bits are zero.
    """
    llrs = np.asarray(llrs, dtype=np.float64)
    decoder = _ListDecoder(np.asarray(frozen, dtype=bool), list_size)
    codewords, _ = decoder.run(llrs[None, :], 0)
    order = np.argsort(decoder.metrics, kind="stable")
    return ListOutput(u=polar_transform(codewords[order]), metrics=decoder.metrics[order])


def sc_decode(llrs: np.ndarray, frozen: np.ndarray) -> np.ndarray:
    """Plain successive cancellation: one hard decision per bit, no list."""
    llrs = np.asarray(llrs, dtype=np.float64)
    frozen = np.asarray(frozen, dtype=bool)
    u = np.zeros(llrs.size, dtype=np.uint8)

    def node(alpha: np.ndarray, start: int) -> np.ndarray:
        if alpha.size == 1:
            bit = 0 if frozen[start] else int(alpha[0] < 0)
            u[start] = bit
            return np.array([bit], dtype=np.uint8)
        half = alpha.size // 2
        a, b = alpha[:half], alpha[half:]
        left = node(f_minsum(a, b), start)
        right = node(g_combine(a, b, left.astype(bool)), start + half)
        return np.concatenate([left ^ right, right])

    node(llrs, 0)
    return u
