"""Distance functions, inequality checks and the stability scan.

Each ``check_*`` function evaluates one proven inequality on concrete
inputs and returns a :class:`BoundReport` with the two sides, their ratio
and a scale-aware pass flag.  The inequalities are theorems, so ``holds``
must come back true on every valid input; a violation beyond tolerance
indicates an implementation bug, which is exactly what
:func:`stability_scan` hunts for with randomized and hill-climbed inputs.

Tolerance policy (uniform across all checks): an inequality ``lhs <= rhs``
holds when ``lhs <= rhs + 1e-10 * (1 + |rhs|)``.

Bound identifiers
-----------------
- ``cont1``: |I(p) - I(q)| <= d(p, q), the entropy-difference metric bound.
- ``relent_I`` / ``relent_D``: |I(p|r) - I(q|r)| <= d + h_r and
  |D(p|r) - D(q|r)| <= d + e_r.
- ``improved``: the factorized bound (g(tv)/F(0)) * (F(0) + I(p sym q))
  valid for tv <= 1; coincides with ``cont1`` at tv = 1.
- ``lb``: the constant lower bound -F(0) - ln_phi(1/2) <= I(p sym q).
- ``cont2``: |I(p) - I(q)| <= tv * [F(0) + omega(N / tv)].
- ``lesche3`` (tsallis), ``lesche4`` / ``fannes`` (shannon): the classical
  stability estimates with the N-dependence made explicit through
  I_max(N) = omega(N).
- ``condition1_segment``: uniform continuity along the segment between two
  pdfs, with the constructive radius from :func:`condition1_delta`.
"""

from __future__ import annotations

import hashlib
import json
import math
import struct
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .distributions import (
    Pdf,
    sample_neighbor,
    sample_sparse,
    sample_uniform,
    sym_diff,
    tv_norm,
)
from .errors import (
    FamilyError,
    IdenticalPdfs,
    InfeasibleEpsilon,
    LengthMismatch,
    ParamError,
    RangeError,
    SupportError,
)
from .families import (
    LogFamily,
    big_f_drop,
    family_to_json,
    kappa_maxwell,
    kaniadakis,
    ln_phi,
    omega_phi,
    piecewise_linear,
    shannon,
    sqrt_log,
    tsallis,
)
from .functionals import entropy, entropy_max
from .numerics import bisect_monotone, sum_compensated

__all__ = [
    "TOL_SCALE",
    "BoundReport",
    "ScanConfig",
    "ScanReport",
    "metric_d",
    "metric_d_capped",
    "h_r",
    "e_r",
    "check_cont1",
    "check_relent",
    "check_improved",
    "check_lb",
    "check_cont2",
    "check_lesche3",
    "check_lesche4",
    "check_fannes",
    "condition1_delta",
    "check_condition1_segment",
    "entropy_min_half",
    "stability_scan",
    "default_family_grid",
]

TOL_SCALE = 1e-10

BOUND_IDS = (
    "cont1",
    "relent_I",
    "relent_D",
    "improved",
    "cont2",
    "lesche3",
    "lesche4",
    "fannes",
    "lb",
    "condition1_segment",
)


@dataclass(frozen=True)
class BoundReport:
    """One inequality evaluated on one input.

    ``ratio`` is lhs/rhs when rhs > 0, else None.  ``inputs_digest`` is a
    deterministic token over (bound id, family, inputs, parameters): equal
    inputs give equal digests, so scan witnesses can be replayed and matched.
    """

    bound_id: str
    lhs: float
    rhs: float
    ratio: Optional[float]
    holds: bool
    tol: float
    inputs_digest: str

    def to_json(self) -> dict:
        return {
            "bound_id": self.bound_id,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ratio": self.ratio,
            "holds": self.holds,
            "tol": self.tol,
            "inputs_digest": self.inputs_digest,
        }


def _family_key(fam: LogFamily) -> bytes:
    if fam.kind == "custom":
        return f"custom:s={fam.singularity_exponent!r}:f0={fam.f_zero!r}".encode()
    return json.dumps(family_to_json(fam), sort_keys=True).encode()


def _digest(bound_id: str, fam: LogFamily, p: Pdf, q: Pdf, r: Pdf | None = None, params: tuple = ()) -> str:
    h = hashlib.sha256()
    h.update(bound_id.encode())
    h.update(b"|")
    h.update(_family_key(fam))
    h.update(b"|")
    h.update(p.weights.tobytes())
    h.update(b"|")
    h.update(q.weights.tobytes())
    if r is not None:
        h.update(b"|")
        h.update(r.weights.tobytes())
    for v in params:
        h.update(struct.pack("<d", v))
    return h.hexdigest()[:16]


def _report(bound_id, lhs, rhs, digest) -> BoundReport:
    tol = TOL_SCALE * (1.0 + abs(rhs))
    ratio = lhs / rhs if rhs > 0 else None
    return BoundReport(
        bound_id=bound_id,
        lhs=float(lhs),
        rhs=float(rhs),
        ratio=None if ratio is None else float(ratio),
        holds=bool(lhs <= rhs + tol),
        tol=tol,
        inputs_digest=digest,
    )


def _lengths(p: Pdf, q: Pdf):
    if p.n != q.n:
        raise LengthMismatch(f"lengths differ: {p.n} vs {q.n}; pad first")


# ---------------------------------------------------------------------------
# distances


def metric_d(fam: LogFamily, p: Pdf, q: Pdf) -> float:
    """The entropy-continuity metric ``d(p,q) = sum_k [F(0) - F(|p_k - q_k|)]``.

    Symmetric, zero exactly at p = q, and satisfies the triangle inequality;
    finite for all finite-support inputs.
    """
    _lengths(p, q)
    return sum_compensated(np.asarray(big_f_drop(fam, np.abs(p.weights - q.weights))))


def metric_d_capped(fam: LogFamily, p: Pdf, q: Pdf, cap: float) -> float:
    """``min(d(p, q), cap)``; still a metric, same topology as ``d``."""
    if not cap > 0:
        raise ParamError("cap must be positive")
    return min(metric_d(fam, p, q), cap)


def _r_weighted(fam: LogFamily, p: Pdf, q: Pdf, r: Pdf, invert: bool) -> float:
    _lengths(p, q)
    _lengths(p, r)
    diff = np.abs(p.weights - q.weights)
    rw = r.weights
    active = diff > 0
    zero_r = active & (rw == 0)
    limit = fam.ln_sup if invert else fam.ln_at_zero
    if np.any(zero_r) and not math.isfinite(limit):
        raise SupportError("r has zero weight where p and q differ")
    pos = active & (rw > 0)
    vals = np.asarray(ln_phi(fam, 1.0 / rw[pos] if invert else rw[pos]))
    total = sum_compensated(diff[pos] * vals)
    if np.any(zero_r):
        total += limit * sum_compensated(diff[zero_r])
    return total if invert else -total


def h_r(fam: LogFamily, p: Pdf, q: Pdf, r: Pdf) -> float:
    """Reference-weighted distance ``sum_k |p_k - q_k| ln_phi(1 / r_k)``.

    Nonnegative since ``r_k <= 1``; a metric in (p, q) for fixed r.
    """
    return _r_weighted(fam, p, q, r, invert=True)


def e_r(fam: LogFamily, p: Pdf, q: Pdf, r: Pdf) -> float:
    """Companion distance ``-sum_k |p_k - q_k| ln_phi(r_k)``.

    Coincides with :func:`h_r` for the natural logarithm.
    """
    return _r_weighted(fam, p, q, r, invert=False)


# ---------------------------------------------------------------------------
# inequality checks


def check_cont1(fam: LogFamily, p: Pdf, q: Pdf) -> BoundReport:
    """|I(p) - I(q)| <= d(p, q)."""
    _lengths(p, q)
    lhs = abs(entropy(fam, p, "generic") - entropy(fam, q, "generic"))
    rhs = metric_d(fam, p, q)
    return _report("cont1", lhs, rhs, _digest("cont1", fam, p, q))


def check_relent(fam: LogFamily, p: Pdf, q: Pdf, r: Pdf) -> tuple[BoundReport, BoundReport]:
    """Both relative-entropy continuity bounds against the reference ``r``.

    |I(p|r) - I(q|r)| <= d(p,q) + h_r(p,q)   and
    |D(p|r) - D(q|r)| <= d(p,q) + e_r(p,q).

    The left sides are evaluated through the difference identities (the
    per-coordinate integral for I, and I(q) - I(p) - sum (p-q) ln_phi(r)
    for D) so they keep full precision when p and q are close.  Taking
    q = r turns the first bound into an upper bound for I(p|q) itself.
    """
    _lengths(p, q)
    _lengths(p, r)
    pw, qw, rw = p.weights, q.weights, r.weights
    d = metric_d(fam, p, q)

    changed = pw != qw
    bare = changed & (rw == 0)
    if np.any(bare) and not fam.omega_at_zero_finite:
        raise SupportError("r has zero weight where p and q differ")
    pos = rw > 0
    pp, qq, rr = pw[pos], qw[pos], rw[pos]
    gq = np.asarray(big_f_drop(fam, qq / rr))
    gp = np.asarray(big_f_drop(fam, pp / rr))
    terms_i = (pp - qq) * fam.f_zero + rr * (gq - gp)
    lhs_i = sum_compensated(terms_i)
    if np.any(bare):
        lhs_i += -fam.omega_at_zero * sum_compensated(pw[bare] - qw[bare])
    rep_i = _report("relent_I", abs(lhs_i), d + h_r(fam, p, q, r), _digest("relent_I", fam, p, q, r))

    if np.any(bare) and not math.isfinite(fam.ln_at_zero):
        raise SupportError("r has zero weight where p and q differ")
    cross = sum_compensated((pp - qq) * np.asarray(ln_phi(fam, rr)))
    if np.any(bare):
        cross += fam.ln_at_zero * sum_compensated(pw[bare] - qw[bare])
    lhs_d = entropy(fam, q, "generic") - entropy(fam, p, "generic") - cross
    rep_d = _report("relent_D", abs(lhs_d), d + e_r(fam, p, q, r), _digest("relent_D", fam, p, q, r))
    return rep_i, rep_d


def check_improved(fam: LogFamily, p: Pdf, q: Pdf) -> BoundReport:
    """The factorized entropy bound for ``tv <= 1``.

    |I(p) - I(q)| <= [(F(0) - F(tv)) / F(0)] * [F(0) + I(p sym q)],
    which reduces to ``cont1`` when tv = 1.
    """
    _lengths(p, q)
    tv = tv_norm(p, q)
    if tv == 0.0:
        raise IdenticalPdfs("improved bound requires p != q")
    if tv > 1.0 + 1e-15:
        raise RangeError(f"improved bound requires tv <= 1, got {tv}")
    lhs = abs(entropy(fam, p, "generic") - entropy(fam, q, "generic"))
    drop = float(np.asarray(big_f_drop(fam, min(tv, 1.0))))
    rhs = (drop / fam.f_zero) * (fam.f_zero + entropy(fam, sym_diff(p, q), "generic"))
    return _report("improved", lhs, rhs, _digest("improved", fam, p, q))


def check_lb(fam: LogFamily, p: Pdf, q: Pdf) -> BoundReport:
    """Constant lower bound on the symmetric-difference entropy.

    -F(0) - ln_phi(1/2) <= I(p sym q); the left side may well be negative.
    """
    _lengths(p, q)
    if tv_norm(p, q) == 0.0:
        raise IdenticalPdfs("lower bound requires p != q")
    lhs = -fam.f_zero - float(np.asarray(ln_phi(fam, 0.5)))
    rhs = entropy(fam, sym_diff(p, q), "generic")
    return _report("lb", lhs, rhs, _digest("lb", fam, p, q))


def check_cont2(fam: LogFamily, p: Pdf, q: Pdf) -> BoundReport:
    """|I(p) - I(q)| <= tv * [F(0) + omega(N / tv)] with N the common length.

    A relaxation of ``cont1`` (its right side dominates d(p, q)) whose merit
    is the explicit dependence on N.
    """
    _lengths(p, q)
    tv = tv_norm(p, q)
    if tv == 0.0:
        raise IdenticalPdfs("cont2 right side requires p != q")
    lhs = abs(entropy(fam, p, "generic") - entropy(fam, q, "generic"))
    rhs = tv * (fam.f_zero + float(np.asarray(omega_phi(fam, p.n / tv))))
    return _report("cont2", lhs, rhs, _digest("cont2", fam, p, q))


def check_lesche3(fam: LogFamily, p: Pdf, q: Pdf) -> BoundReport:
    """Power-law stability estimate (tsallis families only).

    |I(p) - I(q)| <= (1 + 1/kappa) tv + [I_max(N) - 1/kappa] tv^(1+kappa);
    an exact rewrite of ``cont2`` using the q-logarithm rescaling identity.
    """
    if fam.kind != "tsallis":
        raise FamilyError("lesche3 is the tsallis specialization")
    _lengths(p, q)
    k = fam.kappa
    tv = tv_norm(p, q)
    lhs = abs(entropy(fam, p, "generic") - entropy(fam, q, "generic"))
    rhs = (1.0 + 1.0 / k) * tv + (entropy_max(fam, p.n) - 1.0 / k) * tv ** (1.0 + k)
    return _report("lesche3", lhs, rhs, _digest("lesche3", fam, p, q))


def check_lesche4(fam: LogFamily, p: Pdf, q: Pdf) -> BoundReport:
    """Logarithmic stability estimate (shannon only).

    |I(p) - I(q)| <= (1 + I_max(N)) tv - tv ln(tv).
    """
    if fam.kind != "shannon":
        raise FamilyError("lesche4 is the shannon specialization")
    _lengths(p, q)
    tv = tv_norm(p, q)
    lhs = abs(entropy(fam, p, "generic") - entropy(fam, q, "generic"))
    rhs = (1.0 + entropy_max(fam, p.n)) * tv - (tv * math.log(tv) if tv > 0 else 0.0)
    return _report("lesche4", lhs, rhs, _digest("lesche4", fam, p, q))


def check_fannes(fam: LogFamily, p: Pdf, q: Pdf) -> BoundReport:
    """Sharpened shannon estimate, valid when tv <= 1/3.

    |I(p) - I(q)| <= I_max(N) tv - tv ln(tv); one tv weaker than lesche4's
    right side, hence always below it.
    """
    if fam.kind != "shannon":
        raise FamilyError("fannes is the shannon specialization")
    _lengths(p, q)
    tv = tv_norm(p, q)
    if tv > 1.0 / 3.0 + 1e-15:
        raise RangeError(f"fannes estimate requires tv <= 1/3, got {tv}")
    lhs = abs(entropy(fam, p, "generic") - entropy(fam, q, "generic"))
    rhs = entropy_max(fam, p.n) * tv - (tv * math.log(tv) if tv > 0 else 0.0)
    return _report("fannes", lhs, rhs, _digest("fannes", fam, p, q))


def entropy_min_half(fam: LogFamily) -> float:
    """Minimum entropy over pdfs with all entries <= 1/2: ``F(0) - 2 F(1/2)``.

    A concave functional is minimized at an extreme point of the polytope;
    here every extreme point is a permutation of (1/2, 1/2, 0, ..., 0).
    """
    return 2.0 * float(np.asarray(big_f_drop(fam, 0.5))) - fam.f_zero


@lru_cache(maxsize=4096)
def condition1_delta(fam: LogFamily, epsilon: float) -> float:
    """Constructive radius for the uniform-continuity condition.

    Returns ``delta`` such that every pair ``p != q`` with
    ``tv_norm(p, q) <= delta`` satisfies
    ``|I(p) - I(q)| <= epsilon * I(p sym q)``.

    From the factorized bound, the coefficient in front of ``I(p sym q)``
    is at most ``c(delta) = [g(delta)/F(0)] * [F(0) + I_min] / I_min`` where
    ``I_min = F(0) - 2 F(1/2)`` is the symmetric-difference entropy floor
    (see :func:`entropy_min_half`); ``c`` is increasing, so ``delta`` is
    found by monotone bisection, saturating at the hypothesis boundary 1.
    """
    if not epsilon > 0:
        raise ParamError("epsilon must be positive")
    f0 = fam.f_zero
    i_min = entropy_min_half(fam)
    if not (f0 > 0 and i_min > 0):
        raise InfeasibleEpsilon("family admits no positive entropy floor")
    amp = (f0 + i_min) / i_min

    def coeff(delta: float) -> float:
        return float(np.asarray(big_f_drop(fam, delta))) / f0 * amp

    if coeff(1.0) <= epsilon:
        return 1.0
    # coeff(0) = 0 < epsilon, so [0, 1] is a certified bracket; for families
    # whose logarithm is heavy at the origin the radius can be very small
    # (e.g. ~1e-14 for tsallis kappa = -0.9), which plain bisection handles.
    return bisect_monotone(coeff, epsilon, 0.0, 1.0, tol=1e-12)


def check_condition1_segment(
    fam: LogFamily, p: Pdf, q: Pdf, lam: float, mu: float, epsilon: float
) -> BoundReport:
    """Uniform continuity of entropy along the segment from ``q`` to ``p``.

    For mixtures with ``|lam - mu| * tv_norm(p, q)`` within the radius from
    :func:`condition1_delta`:
    |I(lam p + (1-lam) q) - I(mu p + (1-mu) q)| <= epsilon * I(p sym q).
    The endpoint case lam=1, mu=0 is the continuity condition itself.
    """
    _lengths(p, q)
    if not (0.0 <= lam <= 1.0 and 0.0 <= mu <= 1.0):
        raise ParamError("lam and mu must lie in [0, 1]")
    tv = tv_norm(p, q)
    if tv == 0.0:
        raise IdenticalPdfs("segment condition requires p != q")
    delta = condition1_delta(fam, epsilon)
    if abs(lam - mu) * tv > delta * (1.0 + 1e-12):
        raise RangeError(
            f"hypothesis violated: |lam-mu|*tv = {abs(lam - mu) * tv} > delta = {delta}"
        )
    mix_a = Pdf(lam * p.weights + (1.0 - lam) * q.weights)
    mix_b = Pdf(mu * p.weights + (1.0 - mu) * q.weights)
    lhs = abs(entropy(fam, mix_a, "generic") - entropy(fam, mix_b, "generic"))
    rhs = epsilon * entropy(fam, sym_diff(p, q), "generic")
    return _report(
        "condition1_segment",
        lhs,
        rhs,
        _digest("condition1_segment", fam, p, q, params=(lam, mu, epsilon)),
    )


# ---------------------------------------------------------------------------
# stability scan


def default_family_grid() -> tuple[LogFamily, ...]:
    """The family grid the acceptance suite sweeps."""
    return (
        shannon(),
        tsallis(0.1),
        tsallis(-0.1),
        tsallis(0.5),
        tsallis(-0.5),
        tsallis(0.9),
        tsallis(-0.9),
        kaniadakis(0.5),
        kaniadakis(-0.5),
        kappa_maxwell(0.5),
        kappa_maxwell(2.0),
        sqrt_log(),
        piecewise_linear(2.0),
    )


@dataclass(frozen=True)
class ScanConfig:
    """Configuration for :func:`stability_scan`; fully determines the run."""

    families: tuple[LogFamily, ...] = field(default_factory=default_family_grid)
    dims: tuple[int, ...] = (2, 4, 16, 64)
    trials: int = 1000
    seed: int = 271828
    modes: tuple[str, ...] = ("uniform", "sparse", "neighbor", "hillclimb")
    neighbor_scales: tuple[float, ...] = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
    epsilons: tuple[float, ...] = (0.1, 0.5, 1.0)
    hill_steps: int = 200

    def to_json(self) -> dict:
        return {
            "families": [family_to_json(f) for f in self.families],
            "dims": list(self.dims),
            "trials": self.trials,
            "seed": self.seed,
            "modes": list(self.modes),
            "neighbor_scales": list(self.neighbor_scales),
            "epsilons": list(self.epsilons),
            "hill_steps": self.hill_steps,
        }


@dataclass
class _BoundStats:
    trials: int = 0
    worst_ratio: Optional[float] = None
    witness: Optional[dict] = None

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "worst_ratio": self.worst_ratio,
            "witness": self.witness,
        }


@dataclass
class ScanReport:
    """Aggregate of a scan: totals, worst tightness ratio, witnesses.

    ``witness`` embeds the full inputs (family spec, weights, parameters)
    and the offending report, so any entry can be replayed through the
    corresponding ``check_*`` call or the ``bounds`` CLI command.
    """

    trials: int
    worst_ratio: Optional[float]
    witness: Optional[dict]
    per_bound: dict
    support_errors: int
    config: ScanConfig

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "worst_ratio": self.worst_ratio,
            "witness": self.witness,
            "per_bound": {k: v.to_json() for k, v in sorted(self.per_bound.items())},
            "support_errors": self.support_errors,
            "config": self.config.to_json(),
        }


def _witness(fam, p, q, r, params, report) -> dict:
    w = {
        "family": family_to_json(fam),
        "p": p.weights.tolist(),
        "q": q.weights.tolist(),
    }
    if r is not None:
        w["r"] = r.weights.tolist()
    if params:
        w["params"] = params
    w["report"] = report.to_json()
    return w


class _Aggregator:
    def __init__(self):
        self.per_bound: dict[str, _BoundStats] = {}
        self.worst: Optional[float] = None
        self.worst_witness: Optional[dict] = None
        self.support_errors = 0

    def add(self, fam, p, q, r, params, report: BoundReport):
        stats = self.per_bound.setdefault(report.bound_id, _BoundStats())
        stats.trials += 1
        ratio = report.ratio
        if ratio is not None:
            if stats.worst_ratio is None or ratio > stats.worst_ratio:
                stats.worst_ratio = ratio
                stats.witness = _witness(fam, p, q, r, params, report)
            if self.worst is None or ratio > self.worst:
                self.worst = ratio
                self.worst_witness = _witness(fam, p, q, r, params, report)
        return ratio


def _battery(fam, p, q, r, epsilon, rng, agg: _Aggregator) -> Optional[float]:
    """Run every applicable check; return the trial's max ratio (or None)."""
    tv = tv_norm(p, q)
    if tv == 0.0:
        return None
    best: Optional[float] = None

    def track(report, params=None, with_r=None):
        nonlocal best
        ratio = agg.add(fam, p, q, with_r, params, report)
        if ratio is not None and (best is None or ratio > best):
            best = ratio

    track(check_cont1(fam, p, q))
    track(check_lb(fam, p, q))
    track(check_cont2(fam, p, q))
    if tv <= 1.0:
        track(check_improved(fam, p, q))
    if fam.kind == "tsallis":
        track(check_lesche3(fam, p, q))
    elif fam.kind == "shannon":
        track(check_lesche4(fam, p, q))
        if tv <= 1.0 / 3.0:
            track(check_fannes(fam, p, q))
    if r is not None:
        try:
            rep_i, rep_d = check_relent(fam, p, q, r)
            track(rep_i, with_r=r)
            track(rep_d, with_r=r)
        except SupportError:
            agg.support_errors += 1
    delta = condition1_delta(fam, epsilon)
    lam, mu = rng.uniform(0.0, 1.0, size=2)
    if abs(lam - mu) * tv > delta:
        # Pull mu toward lam until the segment hypothesis holds; the hard
        # fallback mu = lam guards against absorption when delta/tv is far
        # below lam's magnitude.
        mu = min(1.0, max(0.0, lam - math.copysign(0.5 * delta / tv, lam - mu)))
        if abs(lam - mu) * tv > delta:
            mu = lam
    track(
        check_condition1_segment(fam, p, q, float(lam), float(mu), epsilon),
        params={"lam": float(lam), "mu": float(mu), "epsilon": epsilon},
    )
    return best


def _sample_pair(mode, dim, scale, rng):
    if mode == "uniform":
        p = sample_uniform(dim, rng)
        q = sample_uniform(dim, rng)
        r = sample_uniform(dim, rng)
    elif mode == "sparse":
        p = sample_sparse(dim, rng)
        q = sample_sparse(dim, rng)
        r = sample_sparse(dim, rng)
    else:  # neighbor
        p = sample_uniform(dim, rng)
        q = sample_neighbor(p, scale, rng)
        r = sample_uniform(dim, rng)
    return p, q, r


def _transfer(pdf: Pdf, i: int, j: int, amount: float) -> Pdf:
    w = pdf.weights.copy()
    amount = min(amount, w[i])
    w[i] -= amount
    w[j] += amount
    return Pdf(w)


def stability_scan(config: ScanConfig) -> ScanReport:
    """Adversarially probe every inequality over seeded random inputs.

    Modes: independent ``uniform`` and ``sparse`` pairs, ``neighbor`` pairs
    at total-variation scales down to 1e-6, and ``hillclimb`` restarts that
    greedily transfer mass between coordinate pairs (geometrically shrinking
    steps, accepting only ratio increases, at most ``hill_steps`` steps per
    restart).  Every evaluated input counts as one trial.  The trial-to-seed
    mapping is a deterministic split of the root seed, so the report is
    identical regardless of scheduling.
    """
    if config.trials < 1:
        raise ParamError("trials must be at least 1")
    for m in config.modes:
        if m not in ("uniform", "sparse", "neighbor", "hillclimb"):
            raise ParamError(f"unknown scan mode {m!r}")

    fams = config.families
    dims = config.dims
    modes = config.modes
    agg = _Aggregator()

    done = 0
    slot = 0
    while done < config.trials:
        # Slot-indexed seed split: slot s always gets the same stream, so a
        # parallel scheduler partitioning slots reproduces this report.
        rng = np.random.default_rng(np.random.SeedSequence(config.seed, spawn_key=(slot,)))
        fam = fams[slot % len(fams)]
        dim = dims[(slot // len(fams)) % len(dims)]
        mode = modes[(slot // (len(fams) * len(dims))) % len(modes)]
        scale = config.neighbor_scales[slot % len(config.neighbor_scales)]
        epsilon = config.epsilons[slot % len(config.epsilons)]
        slot += 1

        if mode == "hillclimb":
            budget = min(config.hill_steps, config.trials - done)
            p, q, r = _sample_pair("uniform", dim, scale, rng)
            best = _battery(fam, p, q, r, epsilon, rng, agg)
            done += 1
            step = 0.1
            used = 1
            while used < budget and step > 1e-9:
                target_p = bool(rng.integers(0, 2))
                i, j = rng.choice(dim, size=2, replace=False) if dim > 1 else (0, 0)
                cand_p, cand_q = (
                    (_transfer(p, int(i), int(j), step), q)
                    if target_p
                    else (p, _transfer(q, int(i), int(j), step))
                )
                ratio = _battery(fam, cand_p, cand_q, r, epsilon, rng, agg)
                used += 1
                done += 1
                if ratio is not None and (best is None or ratio > best):
                    best = ratio
                    p, q = cand_p, cand_q
                else:
                    step *= 0.5
        else:
            p, q, r = _sample_pair(mode, dim, scale, rng)
            _battery(fam, p, q, r, epsilon, rng, agg)
            done += 1

    return ScanReport(
        trials=done,
        worst_ratio=agg.worst,
        witness=agg.worst_witness,
        per_bound=agg.per_bound,
        support_errors=agg.support_errors,
        config=config,
    )
