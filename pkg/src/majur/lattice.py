"""Majorization order, Lorenz curves, lattice join and the flatness process.

Vectors of different lengths are compared after zero-padding to a common
length. Partial sums that come out of a join need not have sorted
increments, which is why they are carried as :class:`CumulativeVector`
rather than :class:`WeightVector`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import EmptySet, NegativeComponent, NegativeIncrement, TotalMismatch

TOL = 1e-9
CLAMP_TOL = 1e-12


def _as_components(values) -> np.ndarray:
    x = np.array(values, dtype=float).ravel()
    if not np.all(np.isfinite(x)):
        raise NegativeComponent("components must be finite")
    if np.any(x < -CLAMP_TOL):
        raise NegativeComponent(f"component {x.min():.3g} is negative")
    return np.where(x < 0.0, 0.0, x)


class WeightVector:
    """Non-negative weights held in non-increasing order.

    Parameters
    ----------
    values : array-like
        Components in any order; they are sorted on construction. Entries
        in ``[-1e-12, 0)`` are clamped to zero, anything more negative is
        rejected.
    total : float, optional
        Declared total; must agree with the component sum within 1e-9.
    """

    __slots__ = ("_x", "_total")

    def __init__(self, values, total: float | None = None):
        x = -np.sort(-_as_components(values))
        s = float(x.sum())
        if total is None:
            total = s
        elif abs(s - total) > TOL:
            raise TotalMismatch(f"components sum to {s!r}, declared total is {total!r}")
        if total <= 0.0:
            raise TotalMismatch("a weight vector needs a positive total")
        x.setflags(write=False)
        self._x = x
        self._total = float(total)

    @classmethod
    def _from_clean(cls, values: list[float]) -> "WeightVector":
        # internal fast path: finite, non-negative, positive total
        values = sorted(values, reverse=True)
        total = math.fsum(values)
        if not total > 0.0:
            raise TotalMismatch("a weight vector needs a positive total")
        x = np.array(values)
        x.setflags(write=False)
        out = cls.__new__(cls)
        out._x = x
        out._total = total
        return out

    @property
    def components(self) -> np.ndarray:
        return self._x

    @property
    def total(self) -> float:
        return self._total

    def __len__(self) -> int:
        return len(self._x)

    def __iter__(self):
        return iter(self._x.tolist())

    def __getitem__(self, i):
        return self._x[i]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self._x, dtype=dtype)

    def __repr__(self) -> str:
        body = ", ".join(f"{v:.6g}" for v in self._x)
        return f"WeightVector([{body}])"

    def padded(self, n: int) -> np.ndarray:
        if n < len(self._x):
            raise ValueError("cannot pad to a shorter length")
        return np.concatenate([self._x, np.zeros(n - len(self._x))])

    def partial_sums(self) -> np.ndarray:
        return np.cumsum(self._x)

    def scaled(self, c: float) -> "WeightVector":
        return WeightVector(c * self._x)

    def allclose(self, other, atol: float = TOL) -> bool:
        other = as_weight_vector(other)
        n = max(len(self), len(other))
        return bool(np.allclose(self.padded(n), other.padded(n), atol=atol, rtol=0))


class CumulativeVector:
    """Non-decreasing partial sums ``Y_1 <= Y_2 <= ... <= Y_n``."""

    __slots__ = ("_y",)

    def __init__(self, partial_sums, total: float | None = None):
        y = np.array(partial_sums, dtype=float).ravel()
        if y.size == 0:
            raise EmptySet("empty cumulative vector")
        if y[0] < -CLAMP_TOL or np.any(np.diff(y) < -1e-12):
            raise NegativeIncrement("partial sums must start non-negative and never decrease")
        if total is not None and abs(y[-1] - total) > TOL:
            raise TotalMismatch(f"partial sums end at {y[-1]!r}, expected {total!r}")
        y.setflags(write=False)
        self._y = y

    @classmethod
    def from_increments(cls, increments) -> "CumulativeVector":
        return cls(np.cumsum(_as_components(increments)))

    @property
    def partial_sums(self) -> np.ndarray:
        return self._y

    @property
    def total(self) -> float:
        return float(self._y[-1])

    def increments(self) -> np.ndarray:
        return np.diff(self._y, prepend=0.0)

    def __len__(self) -> int:
        return len(self._y)

    def __repr__(self) -> str:
        return "CumulativeVector([" + ", ".join(f"{v:.6g}" for v in self._y) + "])"


@dataclass(frozen=True)
class LorenzCurve:
    """Polyline through ``(0, 0), (1, x_1), (2, x_1 + x_2), ...``."""

    points: tuple[tuple[int, float], ...]

    @property
    def heights(self) -> np.ndarray:
        return np.array([h for _, h in self.points])

    def height_at(self, k: float) -> float:
        """Linear interpolation; flat beyond the last point."""
        ks = [p[0] for p in self.points]
        return float(np.interp(k, ks, self.heights))

    def lies_below(self, other: "LorenzCurve", tol: float = TOL) -> bool:
        """True when this curve is pointwise <= ``other`` at every knot of either curve."""
        knots = sorted({p[0] for p in self.points} | {p[0] for p in other.points})
        return all(self.height_at(k) <= other.height_at(k) + tol for k in knots)


Majorizable = Union[WeightVector, CumulativeVector, Sequence[float], np.ndarray]


def as_weight_vector(x) -> WeightVector:
    if isinstance(x, WeightVector):
        return x
    if isinstance(x, CumulativeVector):
        return WeightVector(x.increments())
    return WeightVector(x)


def _partial_sums(x) -> np.ndarray:
    # a CumulativeVector keeps its own (possibly unsorted-increment) order
    if isinstance(x, CumulativeVector):
        return np.asarray(x.partial_sums)
    return np.cumsum(as_weight_vector(x).components)


def _pad_sums(s: np.ndarray, n: int) -> np.ndarray:
    if len(s) >= n:
        return s
    return np.concatenate([s, np.full(n - len(s), s[-1])])


def majorizes(x: Majorizable, y: Majorizable, tol: float = TOL) -> bool:
    """Return True iff ``x`` is majorized by ``y`` (``x ≺ y``).

    ``x`` is sorted before its prefix sums are taken. ``y`` is sorted too
    unless it is a :class:`CumulativeVector`, whose partial sums are used
    as given. The latter is a stronger test than ordinary majorization
    when the increments of ``y`` are not sorted.
    """
    sx, sy = _partial_sums(x), _partial_sums(y)
    if abs(sx[-1] - sy[-1]) > tol:
        raise TotalMismatch(f"totals differ: {sx[-1]!r} vs {sy[-1]!r}")
    n = max(len(sx), len(sy))
    return bool(np.all(_pad_sums(sx, n) <= _pad_sums(sy, n) + tol))


def lorenz_curve(x: Majorizable) -> LorenzCurve:
    sums = _partial_sums(x)
    pts = [(0, 0.0)] + [(k + 1, float(h)) for k, h in enumerate(sums)]
    return LorenzCurve(tuple(pts))


def join(vectors: Iterable[Majorizable]) -> CumulativeVector:
    """Coordinatewise maximum of partial sums over a finite family."""
    sums = [_partial_sums(v) for v in vectors]
    if not sums:
        raise EmptySet("join of an empty family")
    total = sums[0][-1]
    for s in sums[1:]:
        if abs(s[-1] - total) > TOL:
            raise TotalMismatch(f"totals differ: {total!r} vs {s[-1]!r}")
    n = max(len(s) for s in sums)
    stacked = np.vstack([_pad_sums(s, n) for s in sums])
    return CumulativeVector(stacked.max(axis=0))


def flatten(y) -> WeightVector:
    """Flatness process: average ascending runs until nothing ascends.

    Each step takes the first ascent ``y[j] > y[j-1]`` and the largest
    ``i < j`` whose left neighbour is at least the mean ``a`` of
    ``y[i..j]`` (position 0 always qualifies), then sets ``y[i..j] = a``.
    The fixed point is the increment sequence of the least concave
    majorant of the partial sums.

    Parameters
    ----------
    y : CumulativeVector or sequence of non-negative increments
    """
    if isinstance(y, CumulativeVector):
        inc = y.increments()
    elif isinstance(y, WeightVector):
        return y
    else:
        inc = np.asarray(y, dtype=float).ravel()
    raw = inc.tolist()
    if not raw:
        raise EmptySet("cannot flatten an empty vector")
    if not math.isfinite(sum(raw)):
        raise NegativeIncrement("increments must be finite")
    if min(raw) < -CLAMP_TOL:
        raise NegativeIncrement(f"increment {min(raw):.3g} is negative")
    v = [t if t > 0.0 else 0.0 for t in raw]
    n = len(v)
    eps = 1e-15 * max(v)
    j = 1
    while j < n:
        if v[j] <= v[j - 1] + eps:
            j += 1
            continue
        # grow the block leftwards while the left neighbour is below the mean
        block = v[j]
        i = j
        while True:
            block += v[i - 1]
            i -= 1
            a = block / (j - i + 1)
            if i == 0 or v[i - 1] >= a:
                break
        for k in range(i, j + 1):
            v[k] = a
        j += 1
    return WeightVector._from_clean(v)


def optimal_upper_bound(vectors: Iterable[Majorizable]) -> WeightVector:
    """Least upper bound in the majorization lattice: ``flatten(join(vectors))``."""
    return flatten(join(vectors))
