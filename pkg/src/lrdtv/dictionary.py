"""Convolutional filter banks: file-backed and analytic built-ins.

Filter learning is delegated to external tooling; this module only loads
banks from ``.nt`` files (stacked layout, first extent = number of
filters) or generates deterministic analytic banks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod

import numpy as np

from . import io
from .errors import FormatError

__all__ = ["Dictionary", "load_bank", "save_bank", "builtin_bank", "unit_energy"]


@dataclass(frozen=True)
class Dictionary:
    """A bank of M filters sharing one small support."""

    filters: np.ndarray  # (M, L_1, ..., L_N)
    name: str = "bank"
    source: str = "memory"

    def __post_init__(self):
        arr = np.asarray(self.filters, dtype=float)
        if arr.ndim < 2 or arr.shape[0] < 1:
            raise ValueError(f"need a stacked (M, L_1, .., L_N) bank, got {arr.shape}")
        m = _first_zero_filter(arr)
        if m is not None:
            raise ValueError(f"filter {m} is all-zero")
        object.__setattr__(self, "filters", arr)

    @property
    def count(self) -> int:
        return self.filters.shape[0]

    @property
    def support(self) -> tuple:
        return self.filters.shape[1:]


def _first_zero_filter(arr: np.ndarray):
    for m in range(arr.shape[0]):
        if not np.any(arr[m]):
            return m
    return None


def load_bank(path) -> Dictionary:
    """Read a stacked filter bank from an ``.nt`` file."""
    arr = io.load_tensor(path)
    if np.iscomplexobj(arr):
        raise FormatError(f"{path}: filter banks must be real")
    if arr.ndim < 2:
        raise FormatError(f"{path}: expected stacked (M, L_1, .., L_N) filters")
    m = _first_zero_filter(arr)
    if m is not None:
        raise FormatError(f"{path}: filter {m} is all-zero")
    return Dictionary(arr, name=str(path), source="file")


def save_bank(bank: Dictionary, path) -> None:
    """Write a bank in the stacked ``.nt`` layout (inverse of load_bank)."""
    io.save_tensor(path, bank.filters)


def _dct_atoms(support, count):
    """First `count` separable DCT-II atoms ordered by total frequency."""
    support = tuple(support)
    avail = prod(support)
    if count > avail:
        raise ValueError(f"dct bank over support {support} has {avail} atoms, asked {count}")
    waves = []
    for length in support:
        t = np.arange(length)
        waves.append([np.cos(np.pi * k * (2 * t + 1) / (2 * length)) for k in range(length)])
    order = sorted(itertools.product(*(range(l) for l in support)), key=lambda ks: (sum(ks), ks))
    atoms = []
    for ks in order[:count]:
        atom = np.ones(support)
        for d, k in enumerate(ks):
            shape = [1] * len(support)
            shape[d] = support[d]
            atom = atom * waves[d][k].reshape(shape)
        atoms.append(atom / np.linalg.norm(atom))
    return np.stack(atoms)


def _delta(support):
    atom = np.zeros(support)
    atom[tuple(l // 2 for l in support)] = 1.0
    return atom


def _gradient_atoms(support, count):
    support = tuple(support)
    ndim = len(support)
    if count > ndim + 1:
        raise ValueError(f"gradient bank in {ndim}-D has {ndim + 1} atoms, asked {count}")
    atoms = [_delta(support)]
    center = tuple(l // 2 for l in support)
    for d in range(ndim):
        if center[d] + 1 >= support[d]:
            raise ValueError(f"support {support} too small for a forward difference along {d}")
        atom = np.zeros(support)
        atom[center] = -1.0
        ahead = list(center)
        ahead[d] += 1
        atom[tuple(ahead)] = 1.0
        atoms.append(atom)
    return np.stack(atoms[:count])


def builtin_bank(kind: str, support, count: int) -> Dictionary:
    """Deterministic analytic bank: ``dct``, ``gradient``, or ``identity``.

    ``dct`` yields the first ``count`` unit-norm separable DCT-II atoms in
    total-frequency order (atom 0 is constant); ``gradient`` yields a delta
    plus one forward-difference filter per axis; ``identity`` is a single
    delta.
    """
    support = tuple(int(l) for l in support)
    if any(l < 1 for l in support):
        raise ValueError(f"bad support {support}")
    if count < 1:
        raise ValueError("count must be >= 1")
    if kind == "dct":
        filters = _dct_atoms(support, count)
    elif kind == "gradient":
        filters = _gradient_atoms(support, count)
    elif kind == "identity":
        if count != 1:
            raise ValueError("identity bank has exactly one atom")
        filters = _delta(support)[None]
    else:
        raise ValueError(f"unknown bank kind {kind!r} (want dct|gradient|identity)")
    label = f"{kind}-{'x'.join(map(str, support))}-m{count}"
    return Dictionary(filters, name=label, source=f"builtin:{kind}")


def unit_energy(bank: Dictionary) -> Dictionary:
    """Copy of ``bank`` with every filter scaled to unit l2 norm."""
    norms = np.sqrt((bank.filters**2).sum(axis=tuple(range(1, bank.filters.ndim))))
    filters = bank.filters / norms.reshape((-1,) + (1,) * (bank.filters.ndim - 1))
    return Dictionary(filters, name=bank.name, source=bank.source)
