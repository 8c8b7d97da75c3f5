"""Deterministic 64-bit generator for seeded test operators.

The stream is specified bit-exactly so a rerun in any language reproduces
the same operators:

* state update:  state = (state + 0x9E3779B97F4A7C15) mod 2^64
* output mix:    z = state
                 z = ((z XOR (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64
                 z = ((z XOR (z >> 27)) * 0x94D049BB133111EB) mod 2^64
                 out = z XOR (z >> 31)
* uniform in [0, 1):  (out >> 11) * 2^-53
* signed uniform in [-1, 1):  2u - 1

Complex arrays are filled in row-major entry order, drawing the real part
before the imaginary part of each entry.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """Splitmix-style stream seeded by a 64-bit integer."""

    def __init__(self, seed: int):
        self.state = int(seed) & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * 2.0 ** -53

    def signed(self) -> float:
        """Uniform double in [-1, 1)."""
        return 2.0 * self.uniform() - 1.0

    def complex_vector(self, dim: int) -> np.ndarray:
        v = np.empty(dim, dtype=complex)
        for i in range(dim):
            re = self.signed()
            im = self.signed()
            v[i] = complex(re, im)
        return v

    def complex_matrix(self, dim: int) -> np.ndarray:
        M = np.empty((dim, dim), dtype=complex)
        for i in range(dim):
            for j in range(dim):
                re = self.signed()
                im = self.signed()
                M[i, j] = complex(re, im)
        return M

    def hermitian_matrix(self, dim: int) -> np.ndarray:
        """Hermitian average of a drawn complex matrix."""
        M = self.complex_matrix(dim)
        return 0.5 * (M + M.conj().T)

    def real_symmetric_matrix(self, dim: int) -> np.ndarray:
        """Symmetric average of the real parts of a drawn matrix."""
        M = self.complex_matrix(dim).real
        return 0.5 * (M + M.T)
