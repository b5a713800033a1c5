"""Finite point-mass return distributions and their n-period compounding."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

import numpy as np

from . import _kernels

MERGE_RTOL = 1e-12
DEFAULT_CAP = 100_000
# Raw product counts above SORT_FACTOR * cap skip the exact sort-merge and go
# straight to log-domain binning.
SORT_FACTOR = 8


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


@dataclass(frozen=True, eq=False)
class ReturnPmf:
    """Distribution of a single-period return ``X`` on finitely many atoms.

    ``x`` is strictly increasing with ``x[0] >= -1``; ``p`` is strictly
    positive and sums to one.
    """

    x: np.ndarray
    p: np.ndarray
    label: str = ""

    def __post_init__(self):
        x = np.ascontiguousarray(self.x, dtype=np.float64)
        p = np.ascontiguousarray(self.p, dtype=np.float64)
        if x.ndim != 1 or x.shape != p.shape or x.size == 0:
            raise ValueError("invalid distribution: x and p must be non-empty 1-D arrays of equal length")
        if not np.all(np.isfinite(x)):
            raise ValueError("invalid distribution: atoms must be finite")
        if x[0] < -1.0:
            raise ValueError(f"invalid distribution: atom {x[0]!r} below -1")
        if np.any(np.diff(x) <= 0):
            raise ValueError("invalid distribution: atoms must be strictly increasing")
        if np.any(p <= 0) or not np.all(np.isfinite(p)):
            raise ValueError("invalid distribution: probabilities must be positive")
        if abs(p.sum() - 1.0) > 1e-12:
            raise ValueError(f"invalid distribution: probabilities sum to {p.sum()!r}")
        x.flags.writeable = False
        p.flags.writeable = False
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "p", p)

    @classmethod
    def from_atoms(cls, atoms, label: str = "", normalize: bool = False) -> "ReturnPmf":
        """Build from an iterable of ``(x, p)`` pairs in any order."""
        pairs = sorted((float(a), float(b)) for a, b in atoms)
        x = np.array([a for a, _ in pairs])
        p = np.array([b for _, b in pairs])
        if normalize:
            p = p / p.sum()
        return cls(x, p, label)

    @property
    def atoms(self) -> list[tuple[float, float]]:
        return list(zip(self.x.tolist(), self.p.tolist()))

    @property
    def x_min(self) -> float:
        return float(self.x[0])

    @property
    def x_max(self) -> float:
        return float(self.x[-1])

    @property
    def mean(self) -> float:
        return float(np.dot(self.p, self.x))

    @property
    def straddles_zero(self) -> bool:
        return self.x[0] < 0.0 < self.x[-1]

    def __len__(self) -> int:
        return self.x.size

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("x,p\n")
        for a, b in zip(self.x, self.p):
            buf.write(f"{_fmt(a)},{_fmt(b)}\n")
        return buf.getvalue()

    def write_csv(self, path) -> None:
        Path(path).write_text(self.to_csv(), newline="\n")

    @classmethod
    def read_csv(cls, path, label: str | None = None) -> "ReturnPmf":
        with open(path, newline="") as fh:
            rows = [r for r in csv.reader(fh) if r and not r[0].lstrip().startswith("#")]
        if not rows or [c.strip() for c in rows[0]] != ["x", "p"]:
            raise ValueError(f"{path}: expected header 'x,p'")
        atoms = [(float(a), float(b)) for a, b in rows[1:]]
        return cls.from_atoms(atoms, label=label if label is not None else f"file({path})")


@dataclass(frozen=True, eq=False)
class TotalReturnPmf:
    """Distribution of the compounded return over ``n`` periods.

    ``merged`` is True once any lossy (log-domain) atom merging happened;
    exact merging of floating-point duplicates does not set it.
    """

    n: int
    x: np.ndarray
    p: np.ndarray
    merged: bool = False
    label: str = ""

    def __post_init__(self):
        x = np.ascontiguousarray(self.x, dtype=np.float64)
        p = np.ascontiguousarray(self.p, dtype=np.float64)
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if x.ndim != 1 or x.shape != p.shape or x.size == 0:
            raise ValueError("invalid distribution")
        if abs(p.sum() - 1.0) > 1e-9:
            raise ValueError(f"invalid distribution: probabilities sum to {p.sum()!r}")
        x.flags.writeable = False
        p.flags.writeable = False
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "p", p)

    @property
    def atoms(self) -> list[tuple[float, float]]:
        return list(zip(self.x.tolist(), self.p.tolist()))

    @property
    def mean(self) -> float:
        return float(np.dot(self.p, self.x))

    def __len__(self) -> int:
        return self.x.size


def bernoulli_pmf(p: float, gamma: float = 1.0) -> ReturnPmf:
    """Win ``+gamma`` with probability ``p``, otherwise lose ``gamma``."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0, 1), got {p!r}")
    if not 0.0 < gamma <= 1.0:
        raise ValueError(f"gamma must lie in (0, 1], got {gamma!r}")
    return ReturnPmf(
        np.array([-gamma, gamma]), np.array([1.0 - p, p]), f"bernoulli(p={p:g}, gamma={gamma:g})"
    )


def uniform_pmf(a: float, b: float, m: int = 256) -> ReturnPmf:
    """Midpoint discretisation of the uniform law on ``[a, b]`` with ``m`` atoms."""
    if not -1.0 < a < 0.0:
        raise ValueError(f"a must lie in (-1, 0), got {a!r}")
    if not b > 0.0:
        raise ValueError(f"b must be positive, got {b!r}")
    if m < 2:
        raise ValueError("m must be >= 2")
    h = (b - a) / m
    x = a + h * (np.arange(m) + 0.5)
    return ReturnPmf(x, np.full(m, 1.0 / m), f"uniform(a={a:g}, b={b:g}) discretized M={m}")


def _step(v, q, pz, f, pf, pz_base, cap):
    """One convolution step on the nonzero factors ``v`` (sorted) with the base.

    ``pz``/``pz_base`` are the masses sitting at total loss (factor 0), kept
    apart so they never enter the log domain.
    """
    pz_new = 1.0 - (1.0 - pz) * (1.0 - pz_base)
    if v.size == 0 or f.size == 0:
        return np.empty(0), np.empty(0), 1.0, False
    room = max(cap - (1 if pz_new > 0 else 0), 1)
    raw = v.size * f.size
    if raw <= SORT_FACTOR * cap:
        prod = np.multiply.outer(v, f).ravel()
        prob = np.multiply.outer(q, pf).ravel()
        order = np.argsort(prod, kind="stable")
        nv, nq = _kernels.merge_close(prod[order], prob[order], MERGE_RTOL)
        if nv.size <= room:
            return nv, nq, pz_new, False
        logv, pv = np.log(nv), nq
        logf, pff = np.zeros(1), np.ones(1)
    else:
        logv, pv = np.log(v), q
        logf, pff = np.log(f), pf
    lo = logv[0] + logf.min()
    hi = logv[-1] + logf.max()
    width = (hi - lo) / room
    if width <= 0.0:
        width = 1.0
    psum, lsum = _kernels.bin_log_products(logv, pv, logf, pff, lo, width, room)
    keep = psum > 0.0
    return np.exp(lsum[keep] / psum[keep]), psum[keep], pz_new, True


def iter_total_returns(base: ReturnPmf, n_max: int, cap: int = DEFAULT_CAP) -> Iterator[TotalReturnPmf]:
    """Yield the total-return distributions for ``n = 1, ..., n_max`` in turn.

    Each step convolves the previous (possibly merged) distribution with the
    base in the multiplicative domain, so a sweep costs one convolution per n.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if cap < len(base):
        raise ValueError("cap must be at least the number of base atoms")
    factors = 1.0 + base.x
    zero = factors <= 0.0
    pz_base = float(base.p[zero].sum())
    f, pf = factors[~zero], base.p[~zero]
    v, q, pz = f.copy(), pf.copy(), pz_base
    merged = False
    yield TotalReturnPmf(1, base.x, base.p, False, base.label)
    for n in range(2, n_max + 1):
        v, q, pz, lossy = _step(v, q, pz, f, pf, pz_base, cap)
        merged = merged or lossy
        x = v - 1.0
        p = q
        if pz > 0.0:
            x = np.concatenate(([-1.0], x))
            p = np.concatenate(([pz], p))
        keep = p > 0.0
        yield TotalReturnPmf(n, x[keep], p[keep], merged, base.label)


def total_return_pmf(base: ReturnPmf, n: int, cap: int = DEFAULT_CAP) -> TotalReturnPmf:
    """Distribution of ``prod_{k<n} (1 + X_k) - 1`` for i.i.d. ``X_k ~ base``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = None
    for out in iter_total_returns(base, n, cap):
        pass
    return out


def support_bounds(base: ReturnPmf, n: int) -> tuple[float, float]:
    """Bounds ``((1+x_min)^n - 1, (1+x_max)^n - 1)`` on the n-period total."""
    return math.pow(1.0 + base.x_min, n) - 1.0, math.pow(1.0 + base.x_max, n) - 1.0
