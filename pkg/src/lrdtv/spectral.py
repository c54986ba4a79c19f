"""DFT transforms, frequency grids, and differential spectral weights.

Conventions, fixed once for the whole package:

* the forward transform is unnormalized; the inverse carries the full
  ``1 / prod(shape)`` factor, so ``inverse_dft(forward_dft(x)) == x`` and
  ``norm(x_hat)^2 == prod(shape) * norm(x)^2`` (Parseval);
* frequencies are in cycles per sample, ``k/I`` for ``k < I/2`` and
  ``(k - I)/I`` above (numpy ``fftfreq``), so derivative weights are
  ``2j*pi*xi`` with ``|xi| <= 1/2`` and differentiation is with respect to
  the sample index.

Regularization weights are therefore comparable across signal sizes but
tied to this convention; changing it only rescales the weights.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SpectralGrid",
    "forward_dft",
    "inverse_dft",
    "embed_filter",
    "filter_spectra",
    "derivative_weights",
    "integral_weights",
    "squared_derivative_grid",
    "squared_integral_grid",
]


def forward_dft(tensor: np.ndarray) -> np.ndarray:
    """Unnormalized N-dimensional DFT."""
    return np.fft.fftn(np.asarray(tensor))


def inverse_dft(spectrum: np.ndarray) -> np.ndarray:
    """Inverse DFT with the 1/prod(shape) factor; returns a complex array."""
    return np.fft.ifftn(np.asarray(spectrum))


@dataclass(frozen=True)
class SpectralGrid:
    """DFT sample frequencies (cycles per sample) for each dimension."""

    shape: tuple
    freqs: tuple

    @classmethod
    def for_shape(cls, shape) -> "SpectralGrid":
        shape = tuple(int(s) for s in shape)
        if any(s < 1 for s in shape):
            raise ValueError(f"extents must be positive, got {shape}")
        return cls(shape, tuple(np.fft.fftfreq(s) for s in shape))

    def axis_freq(self, dim: int) -> np.ndarray:
        """Frequencies of ``dim`` broadcast-shaped against the full grid."""
        if not 0 <= dim < len(self.shape):
            raise ValueError(f"dimension {dim} out of range for shape {self.shape}")
        expand = [1] * len(self.shape)
        expand[dim] = self.shape[dim]
        return self.freqs[dim].reshape(expand)


def derivative_weights(grid: SpectralGrid, dim: int) -> np.ndarray:
    """Full-shape spectral derivative weights ``2j*pi*xi_dim``.

    Multiplying a spectrum elementwise by these weights and inverting the
    DFT differentiates the signal along ``dim`` (w.r.t. the sample index).
    The weight is exactly 0 on the ``dim`` DC hyperplane.
    """
    w = 2j * np.pi * grid.axis_freq(dim)
    return np.broadcast_to(w, grid.shape).copy()


def integral_weights(grid: SpectralGrid, dim: int, dc_policy="zero") -> np.ndarray:
    """Full-shape spectral antiderivative weights ``1 / (2j*pi*xi_dim)``.

    The weight is undefined at ``xi_dim == 0``; ``dc_policy`` decides what
    goes there: ``"zero"`` (default, the integral term ignores the mean) or
    a positive float ``eps`` standing in for the vanishing frequency,
    giving ``1 / (2j*pi*eps)``.
    """
    xi = grid.axis_freq(dim)
    with np.errstate(divide="ignore"):
        w = np.where(xi == 0.0, 0.0, 1.0 / np.where(xi == 0.0, 1.0, 2j * np.pi * xi))
    if dc_policy == "zero":
        pass
    elif isinstance(dc_policy, (int, float)) and dc_policy > 0:
        w = np.where(xi == 0.0, 1.0 / (2j * np.pi * float(dc_policy)), w)
    else:
        raise ValueError(f"dc_policy must be 'zero' or a positive float, got {dc_policy!r}")
    return np.broadcast_to(w, grid.shape).copy()


def squared_derivative_grid(grid: SpectralGrid) -> np.ndarray:
    """Real grid of ``sum_d |2j*pi*xi_d|^2``, the squared-TV row weights."""
    out = np.zeros(grid.shape)
    for d in range(len(grid.shape)):
        out = out + (2.0 * np.pi * grid.axis_freq(d)) ** 2
    return out


def squared_integral_grid(grid: SpectralGrid, dc_policy="zero") -> np.ndarray:
    """Real grid of ``sum_d |integral weight_d|^2``, the integral row weights."""
    out = np.zeros(grid.shape)
    for d in range(len(grid.shape)):
        out = out + np.abs(integral_weights(grid, d, dc_policy)) ** 2
    return out


def embed_filter(filt: np.ndarray, shape) -> np.ndarray:
    """Spectrum of a small-support filter placed centered at the origin.

    The filter is zero-padded to ``shape`` with its center element (index
    ``L//2`` per axis) moved to index 0 and negative offsets wrapped to the
    far end, so applying the spectrum shifts nothing spatially.
    """
    filt = np.asarray(filt, dtype=float)
    shape = tuple(int(s) for s in shape)
    if filt.ndim != len(shape):
        raise ValueError(
            f"filter order {filt.ndim} does not match signal order {len(shape)}"
        )
    if any(l > s for l, s in zip(filt.shape, shape)):
        raise ValueError(
            f"filter support {filt.shape} exceeds signal shape {shape}"
        )
    emb = np.zeros(shape)
    emb[tuple(slice(0, l) for l in filt.shape)] = filt
    emb = np.roll(emb, shift=tuple(-(l // 2) for l in filt.shape), axis=range(len(shape)))
    return np.fft.fftn(emb)


def filter_spectra(filters: np.ndarray, shape) -> np.ndarray:
    """Stack of embedded filter spectra, shape ``(M, *shape)``."""
    filters = np.asarray(filters)
    return np.stack([embed_filter(f, shape) for f in filters])
