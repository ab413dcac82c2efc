"""Plain l_p and mixed block-norm evaluation.

The mixed norm reads a vector as consecutive blocks, takes an inner norm on
each block and aggregates the block norms with an outer norm. With a single
block, or with inner = outer, it coincides with the plain norm.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .exponents import ExtendedExponent, ExponentLike


def norm_along_axis(values: np.ndarray, e: ExtendedExponent, axis: int = 0) -> np.ndarray:
    """l_e norm of a 2-D array along one axis, scaled before powering."""
    a = np.abs(np.asarray(values, dtype=float))
    if e.is_infinite:
        return a.max(axis=axis)
    ex = float(e)
    if ex == 1.0:
        return a.sum(axis=axis)
    peak = a.max(axis=axis)
    safe = np.where(peak > 0.0, peak, 1.0)
    scaled = a / np.expand_dims(safe, axis)
    return safe * (scaled**ex).sum(axis=axis) ** (1.0 / ex)


def _plain_norm(x: np.ndarray, e: ExtendedExponent) -> float:
    if x.size == 0:
        return 0.0
    return float(norm_along_axis(x.reshape(-1, 1), e, axis=0)[0])


@dataclass(frozen=True)
class MixedNormSpace:
    """Finitely many blocks with an inner norm, aggregated by an outer norm."""

    block_sizes: tuple[int, ...]
    inner: ExtendedExponent
    outer: ExtendedExponent

    def __post_init__(self) -> None:
        sizes = tuple(int(s) for s in self.block_sizes)
        if not sizes or any(s <= 0 for s in sizes):
            raise ValueError(f"block sizes must be positive, got {self.block_sizes}")
        object.__setattr__(self, "block_sizes", sizes)
        object.__setattr__(self, "inner", ExtendedExponent(self.inner))
        object.__setattr__(self, "outer", ExtendedExponent(self.outer))

    @property
    def dimension(self) -> int:
        return sum(self.block_sizes)

    @property
    def slices(self) -> tuple[slice, ...]:
        out = []
        start = 0
        for size in self.block_sizes:
            out.append(slice(start, start + size))
            start += size
        return tuple(out)

    def block_norms(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float).ravel()
        return np.array([_plain_norm(x[s], self.inner) for s in self.slices])

    def norm(self, x: np.ndarray) -> float:
        return _plain_norm(self.block_norms(x), self.outer)


NormShape = Union[ExtendedExponent, MixedNormSpace]


@dataclass(frozen=True)
class NormFunctional:
    """A plain exponent norm or a mixed-norm space behind one evaluator."""

    plain: ExtendedExponent | None = None
    mixed: MixedNormSpace | None = None

    def __post_init__(self) -> None:
        if (self.plain is None) == (self.mixed is None):
            raise ValueError("exactly one of plain/mixed must be given")

    @classmethod
    def of(cls, spec: "NormFunctional | NormShape | ExponentLike") -> "NormFunctional":
        if isinstance(spec, NormFunctional):
            return spec
        if isinstance(spec, MixedNormSpace):
            return cls(mixed=spec)
        return cls(plain=ExtendedExponent(spec))

    @property
    def dimension(self) -> int | None:
        """Required vector dimension; None when any dimension is accepted."""
        return None if self.mixed is None else self.mixed.dimension

    def __call__(self, x: np.ndarray) -> float:
        return vector_norm(x, self)

    def __str__(self) -> str:
        if self.plain is not None:
            return f"l_{self.plain}"
        m = self.mixed
        return f"(+){m.block_sizes}[inner l_{m.inner}]_outer l_{m.outer}"


def vector_norm(x: np.ndarray, f: "NormFunctional | NormShape | ExponentLike") -> float:
    """Evaluate ||x||_f for a plain exponent or a mixed-norm space."""
    f = NormFunctional.of(f)
    x = np.asarray(x, dtype=float).ravel()
    if f.mixed is not None:
        if x.size != f.mixed.dimension:
            raise ValueError(
                f"vector has dimension {x.size}, mixed norm expects {f.mixed.dimension}"
            )
        return f.mixed.norm(x)
    return _plain_norm(x, f.plain)


def _plain_norming(y: np.ndarray, e: ExtendedExponent) -> np.ndarray:
    """Dual witness g with <g, y> = ||y||_e and unit dual norm (zeros stay zero)."""
    a = np.abs(y)
    if not a.any():
        return np.zeros_like(y)
    if e.is_infinite:
        g = np.zeros_like(y)
        j = int(np.argmax(a))
        g[j] = -1.0 if y[j] < 0.0 else 1.0
        return g
    ex = float(e)
    if ex == 1.0:
        return np.sign(y)
    total = _plain_norm(y, e)
    return np.sign(y) * (a / total) ** (ex - 1.0)


def norming_functional(y: np.ndarray, f: "NormFunctional | NormShape | ExponentLike") -> np.ndarray:
    """A norming functional for y: <g, y> = ||y||_f, dual norm 1 (y nonzero)."""
    f = NormFunctional.of(f)
    y = np.asarray(y, dtype=float).ravel()
    if f.plain is not None:
        return _plain_norming(y, f.plain)
    space = f.mixed
    if y.size != space.dimension:
        raise ValueError(f"vector has dimension {y.size}, mixed norm expects {space.dimension}")
    norms = space.block_norms(y)
    g = np.zeros_like(y)
    if not norms.any():
        return g
    if space.outer.is_infinite:
        b = int(np.argmax(norms))
        s = space.slices[b]
        g[s] = _plain_norming(y[s], space.inner)
        return g
    r = float(space.outer)
    total = _plain_norm(norms, space.outer)
    for b, s in enumerate(space.slices):
        if norms[b] == 0.0:
            continue
        weight = 1.0 if r == 1.0 else (norms[b] / total) ** (r - 1.0)
        g[s] = weight * _plain_norming(y[s], space.inner)
    return g
