"""Finite discrete probability distributions.

A :class:`Pdf` is an immutable vector of nonnegative weights summing to one.
Construction through :func:`validate` enforces the contract and never
renormalizes silently; :func:`normalize` is the explicit opt-in for that.

Random generation is driven by numpy's PCG64 generator seeded through
``SeedSequence``, a named, documented, splittable 64-bit PRNG: the same seed
reproduces the same distributions on any platform, and independent child
streams can be derived per trial with ``SeedSequence(seed).spawn(n)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    IdenticalPdfs,
    LengthMismatch,
    NegativeWeight,
    ParamError,
    ShrinkError,
    SumError,
)
from .numerics import sum_compensated

__all__ = [
    "Pdf",
    "validate",
    "normalize",
    "tv_norm",
    "sym_diff",
    "pad",
    "sample_simplex",
    "sample_uniform",
    "sample_sparse",
    "sample_neighbor",
    "rng_for_seed",
]

DEFAULT_VALIDATION_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Pdf:
    """Immutable finite discrete distribution.

    The constructor only freezes the array; it does not check the simplex
    constraints.  Use :func:`validate` for untrusted input.
    """

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or w.size < 1:
            raise ParamError("weights must be a one-dimensional, nonempty sequence")
        w = w.copy()
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return int(self.weights.size)

    def __len__(self) -> int:
        return self.n

    def allclose(self, other: "Pdf", tol: float = 0.0) -> bool:
        return self.n == other.n and bool(
            np.all(np.abs(self.weights - other.weights) <= tol)
        )

    def to_json(self) -> dict:
        return {"weights": self.weights.tolist()}


def validate(weights: Sequence[float], tol: float = DEFAULT_VALIDATION_TOL) -> Pdf:
    """Check nonnegativity and unit sum, then freeze into a :class:`Pdf`.

    Raises :class:`NegativeWeight` (with the offending index) or
    :class:`SumError` (with the actual sum).  Never renormalizes.
    """
    if not tol > 0:
        raise ParamError("validation tolerance must be positive")
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or w.size < 1:
        raise ParamError("weights must be a one-dimensional, nonempty sequence")
    if not np.all(np.isfinite(w)):
        raise ParamError("weights must be finite")
    neg = np.nonzero(w < 0)[0]
    if neg.size:
        i = int(neg[0])
        raise NegativeWeight(i, float(w[i]))
    total = sum_compensated(w)
    if abs(total - 1.0) > tol:
        raise SumError(total, tol)
    return Pdf(w)


def normalize(weights: Sequence[float]) -> Pdf:
    """Explicitly rescale nonnegative weights to unit sum."""
    w = np.asarray(weights, dtype=float)
    neg = np.nonzero(w < 0)[0]
    if neg.size:
        i = int(neg[0])
        raise NegativeWeight(i, float(w[i]))
    total = sum_compensated(w)
    if not total > 0:
        raise ParamError("cannot normalize weights with zero total mass")
    return Pdf(w / total)


def _check_lengths(p: Pdf, q: Pdf):
    if p.n != q.n:
        raise LengthMismatch(f"lengths differ: {p.n} vs {q.n}; pad first")


def tv_norm(p: Pdf, q: Pdf) -> float:
    """Total variation norm ``sum_k |p_k - q_k|`` (between 0 and 2)."""
    _check_lengths(p, q)
    return sum_compensated(np.abs(p.weights - q.weights))


def sym_diff(p: Pdf, q: Pdf) -> Pdf:
    """Symmetric difference: the pdf with entries ``|p_k - q_k| / ||p-q||_1``.

    Every entry is at most 1/2 because positive and negative parts of
    ``p - q`` carry equal mass.  Mixing ``p`` toward ``q`` leaves the result
    unchanged.  Raises :class:`IdenticalPdfs` when ``p == q``.
    """
    _check_lengths(p, q)
    diff = np.abs(p.weights - q.weights)
    total = sum_compensated(diff)
    if total == 0.0:
        raise IdenticalPdfs("symmetric difference of identical pdfs is undefined")
    return Pdf(diff / total)


def pad(p: Pdf, n: int) -> Pdf:
    """Extend ``p`` with zero weights to length ``n >= len(p)``.

    Padding changes no functional in this package: zero-weight entries
    contribute nothing to entropies, distances or bounds.
    """
    if n < p.n:
        raise ShrinkError(f"cannot pad length {p.n} down to {n}")
    if n == p.n:
        return p
    return Pdf(np.concatenate([p.weights, np.zeros(n - p.n)]))


def rng_for_seed(seed: int) -> np.random.Generator:
    """PCG64 generator for a seed, via ``SeedSequence`` (documented contract)."""
    return np.random.default_rng(np.random.SeedSequence(seed))


def sample_uniform(n: int, rng: np.random.Generator) -> Pdf:
    """Draw from the flat Dirichlet measure on the n-simplex."""
    if n < 1:
        raise ParamError("n must be at least 1")
    if n == 1:
        return Pdf(np.array([1.0]))
    return Pdf(rng.dirichlet(np.ones(n)))


def sample_sparse(n: int, rng: np.random.Generator) -> Pdf:
    """Uniform draw with a random subset of coordinates zeroed out."""
    base = sample_uniform(n, rng).weights.copy()
    if n > 1:
        keep = max(1, int(rng.integers(1, n + 1)))
        zero_idx = rng.permutation(n)[keep:]
        base[zero_idx] = 0.0
        total = base.sum()
        if total <= 0:  # all surviving mass zeroed; keep a point mass
            base[:] = 0.0
            base[int(rng.integers(0, n))] = 1.0
        else:
            base /= total
    return Pdf(base)


def sample_neighbor(p: Pdf, eps: float, rng: np.random.Generator) -> Pdf:
    """A valid pdf within total-variation distance ``eps`` of ``p``.

    Perturbs along a random zero-sum direction, scaled so the result stays
    nonnegative and ``tv_norm(p, result) <= eps`` by construction.
    """
    if not eps > 0:
        raise ParamError("eps must be positive")
    n = p.n
    if n == 1:
        return p
    v = rng.standard_normal(n)
    v -= v.mean()
    abs_sum = np.abs(v).sum()
    if abs_sum == 0.0:
        return p
    lam = eps / abs_sum
    neg = v < 0
    if np.any(neg):
        with np.errstate(divide="ignore"):
            cap = np.min(p.weights[neg] / -v[neg])
        lam = min(lam, cap)
    return Pdf(np.maximum(p.weights + lam * v, 0.0))


def sample_simplex(n: int, seed: int, mode: str = "uniform", *, p: Pdf | None = None, eps: float | None = None) -> Pdf:
    """Seeded sampling front end: modes ``uniform``, ``sparse``, ``neighbor``.

    Deterministic given ``seed``.  ``neighbor`` requires the centre pdf ``p``
    and radius ``eps``.
    """
    rng = rng_for_seed(seed)
    if mode == "uniform":
        return sample_uniform(n, rng)
    if mode == "sparse":
        return sample_sparse(n, rng)
    if mode == "neighbor":
        if p is None or eps is None:
            raise ParamError("neighbor mode requires p and eps")
        return sample_neighbor(p, eps, rng)
    raise ParamError(f"unknown sampling mode {mode!r}")
