"""Dynamical classification of weighted backward shifts and orbit experiments.

The dynamical class of a weighted backward shift on l^p is governed entirely
by the growth of the running weight product beta(n):

* chaotic                 iff  sum_n 1 / |beta(n)|^p  converges
* strongly mixing         iff  |beta(n)| -> infinity
* topologically transitive iff limsup |beta(n)| = infinity

``classify`` turns these three criteria into one of four mutually exclusive
labels: ``Chaotic``, ``MixingNotChaotic``, ``TransitiveNotMixing``, or
``NotTransitive``.  Generator families with a closed form for beta (constant,
power law, balanced blocks) are decided analytically; explicitly listed
weights can only ever be judged from a finite horizon, so their verdicts
carry ``NumericEvidence`` or ``Inconclusive`` confidence together with the
raw horizon scalars that produced them.  Limits are semi-decidable from
samples at best; the confidence field is the honest record of that.

Three example operators exercise every class boundary:

* T1:  positive weights with beta(n) = sqrt(n); strongly mixing (the
  products escape) but not chaotic (sum 1/n diverges).
* T2:  balanced blocks, amplifying block first (2, 1/2, 2, 2, 1/2, 1/2, ...);
  the products return to 1 at every pair boundary but the in-pair peaks
  2^k grow without bound: transitive, not mixing.
* T3:  the same blocks attenuating-first; peaks never exceed 1, so the
  operator is not transitive, yet single orbits can still dodge collapse:
  ``example3_point`` builds the start vector whose orbit norm stays >= 1
  for as many steps as the vector has nonzero entries (minus one).

``orbit_norms`` and ``escape_demo`` produce plot-ready norm traces for those
experiments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .seqspace import (
    BalancedBlocks,
    Constant,
    Explicit,
    FinSeqVector,
    PowerLawBeta,
    ShiftOperator,
    WeightSequence,
    _pair_index,
    apply_shift,
    lp_norm,
    weight_bound,
    weights_to_dict,
)

__all__ = [
    "DynamicsLabel",
    "Confidence",
    "HorizonEvidence",
    "DynamicsVerdict",
    "OrbitTrace",
    "DEFAULT_HORIZON",
    "MIN_HORIZON",
    "LOG_ESCAPE",
    "CHAOS_FLAT_TOL",
    "beta_profile",
    "horizon_evidence",
    "chaotic_evidence",
    "mixing_evidence",
    "transitive_evidence",
    "bounded_evidence",
    "classify",
    "make_example",
    "example3_point",
    "orbit_norms",
    "escape_demo",
]


class DynamicsLabel(str, Enum):
    CHAOTIC = "Chaotic"
    MIXING_NOT_CHAOTIC = "MixingNotChaotic"
    TRANSITIVE_NOT_MIXING = "TransitiveNotMixing"
    NOT_TRANSITIVE = "NotTransitive"


class Confidence(str, Enum):
    ANALYTIC = "Analytic"
    NUMERIC_EVIDENCE = "NumericEvidence"
    INCONCLUSIVE = "Inconclusive"


DEFAULT_HORIZON = 100_000
MIN_HORIZON = 100

# Escape threshold for the tail-window checks: one order of magnitude of
# product growth counts as evidence that |beta| is heading to infinity.
LOG_ESCAPE = math.log(10.0)

# A chaotic sum must look Cauchy at the horizon: the increment contributed
# by the last decade (from horizon/10 to horizon) has to be below this.
CHAOS_FLAT_TOL = 1e-6


def _json_float(v: float) -> object:
    if math.isfinite(v):
        return v
    return "inf" if v > 0 else ("-inf" if v < 0 else "nan")


@dataclass(frozen=True, slots=True)
class HorizonEvidence:
    """Scalar diagnostics of the beta profile over a finite horizon.

    ``partial_sum`` and ``last_decade_increment`` watch the chaos criterion
    sum(1/|beta(n)|^p); the window extrema watch escape.  Window length is
    isqrt(horizon): long enough that balanced-block oscillation shows up at
    large horizons, short enough to probe only the profile's tail.
    """

    horizon: int
    window: int
    partial_sum: float
    last_decade_increment: float
    head_log_max: float
    tail_log_min: float
    tail_log_max: float

    def to_dict(self) -> dict:
        return {
            "horizon": self.horizon,
            "window": self.window,
            "partial_sum": _json_float(self.partial_sum),
            "last_decade_increment": _json_float(self.last_decade_increment),
            "head_log_max": _json_float(self.head_log_max),
            "tail_log_min": _json_float(self.tail_log_min),
            "tail_log_max": _json_float(self.tail_log_max),
        }


@dataclass(frozen=True, slots=True)
class DynamicsVerdict:
    """A classification label plus how much to trust it.

    ``Analytic`` verdicts follow from a closed form for beta and are exact.
    ``NumericEvidence`` verdicts satisfied every scalar check for their
    label at the stated horizon; ``Inconclusive`` ones did not, and their
    label is only the default fallback (``NotTransitive``), carrying no
    evidential weight on its own.  The raw scalars are always attached.
    """

    label: DynamicsLabel
    confidence: Confidence
    horizon: int
    evidence: HorizonEvidence

    def to_dict(self) -> dict:
        return {
            "label": self.label.value,
            "confidence": self.confidence.value,
            "horizon": self.horizon,
            "evidence": self.evidence.to_dict(),
        }


# ---------------------------------------------------------------------------
# beta profiles


def beta_profile(w: WeightSequence, n: int) -> np.ndarray:
    """log |beta(k)| for k = 1..n as a float array, overflow-free by design.

    Closed forms are used wherever the family has one, so the profile is
    trustworthy far beyond where the raw products would leave float range.
    Monotone increasing exactly when every weight has modulus > 1.
    """
    if n < 1:
        raise ValueError(f"profile length must be >= 1, got {n}")
    if isinstance(w, Constant):
        return np.arange(1, n + 1, dtype=np.float64) * math.log(abs(w.value))
    if isinstance(w, PowerLawBeta):
        return w.alpha * np.log(np.arange(1, n + 1, dtype=np.float64))
    if isinstance(w, Explicit):
        if n > len(w.weights):
            raise IndexError(f"profile length {n} beyond explicit list of length {len(w.weights)}")
        return np.cumsum(np.log(np.abs(np.asarray(w.weights[:n], dtype=np.complex128))))
    if isinstance(w, BalancedBlocks):
        idx = np.arange(1, n + 1, dtype=np.int64)
        kmax = _pair_index(n)
        bounds = np.array([k * (k + 1) for k in range(1, kmax + 1)], dtype=np.int64)
        k = np.searchsorted(bounds, idx, side="left") + 1
        m = idx - k * (k - 1)
        full = k * (k - 1) // 2
        ca = full + np.minimum(m, k)
        cb = full + np.maximum(0, m - k)
        shared = np.minimum(ca, cb)
        la = math.log(abs(w.first))
        lb = math.log(abs(w.second))
        lab = math.log(abs(w.first) * abs(w.second))
        return shared * lab + (ca - shared) * la + (cb - shared) * lb
    raise TypeError(f"not a weight sequence: {w!r}")


def horizon_evidence(w: WeightSequence, p: float, horizon: int) -> HorizonEvidence:
    """Compute the scalar diagnostics of the profile of ``w`` up to ``horizon``."""
    profile = beta_profile(w, horizon)
    window = math.isqrt(horizon)
    with np.errstate(over="ignore", under="ignore"):
        terms = np.exp(-p * profile)
        partial = float(terms.sum())
        increment = float(terms[horizon // 10 :].sum())
    head = profile[:window]
    tail = profile[horizon - window :]
    return HorizonEvidence(
        horizon=horizon,
        window=window,
        partial_sum=partial,
        last_decade_increment=increment,
        head_log_max=float(head.max()),
        tail_log_min=float(tail.min()),
        tail_log_max=float(tail.max()),
    )


# ---------------------------------------------------------------------------
# the scalar checks behind each label


def chaotic_evidence(ev: HorizonEvidence) -> bool:
    """The chaos sum converged numerically: finite and Cauchy-flat at the end."""
    return math.isfinite(ev.partial_sum) and ev.last_decade_increment < CHAOS_FLAT_TOL


def mixing_evidence(ev: HorizonEvidence) -> bool:
    """The whole tail window sits an order of magnitude up and above the head."""
    return ev.tail_log_min >= LOG_ESCAPE and ev.tail_log_min > ev.head_log_max


def transitive_evidence(ev: HorizonEvidence) -> bool:
    """Tail-window peaks are an order of magnitude up and still making highs."""
    return ev.tail_log_max >= LOG_ESCAPE and ev.tail_log_max > ev.head_log_max


def bounded_evidence(ev: HorizonEvidence) -> bool:
    """No new highs: the tail window never beats the head window or log 1."""
    return ev.tail_log_max <= max(ev.head_log_max, 0.0)


# ---------------------------------------------------------------------------
# classification


def _analytic_label(w: WeightSequence, p: float) -> DynamicsLabel | None:
    """Closed-form label for the generator families that admit one."""
    if isinstance(w, Constant):
        m = abs(w.value)
        # beta(n) = value^n: the chaos sum is geometric, so |value| > 1
        # settles everything; otherwise the products never escape.
        return DynamicsLabel.CHAOTIC if m > 1.0 else DynamicsLabel.NOT_TRANSITIVE
    if isinstance(w, PowerLawBeta):
        a = w.alpha
        if a * p > 1.0:
            return DynamicsLabel.CHAOTIC  # sum n^(-alpha p) converges
        if a > 0.0:
            return DynamicsLabel.MIXING_NOT_CHAOTIC  # n^alpha -> inf, sum diverges
        return DynamicsLabel.NOT_TRANSITIVE  # bounded (a = 0) or decaying profile
    if isinstance(w, BalancedBlocks):
        m = abs(w.a) * abs(w.b)
        # Pair k multiplies |beta| by m^k overall, with an in-pair excursion
        # of factor |first|^k.  m decides escape; on the balanced ridge
        # m == 1 the excursions alone decide transitivity.
        if m > 1.0:
            return DynamicsLabel.CHAOTIC
        if m < 1.0:
            return DynamicsLabel.NOT_TRANSITIVE
        if abs(w.first) > 1.0:
            return DynamicsLabel.TRANSITIVE_NOT_MIXING
        return DynamicsLabel.NOT_TRANSITIVE
    return None


def classify(w: WeightSequence, p: float, horizon: int = DEFAULT_HORIZON) -> DynamicsVerdict:
    """Classify the weighted backward shift with weights ``w`` on l^p.

    Constant, power-law, and balanced-block generators are decided from the
    closed form of beta and come back with ``Analytic`` confidence (the
    horizon then only sizes the attached evidence scalars).  Explicit lists
    go through the numeric checks at ``min(horizon, len(weights))``; they
    earn ``NumericEvidence`` when every check behind a label agrees, and
    ``Inconclusive`` otherwise or when fewer than 100 weights are available.
    """
    if not math.isfinite(p) or p < 1.0:
        raise ValueError(f"exponent must satisfy 1 <= p < inf, got {p!r}")
    if horizon < MIN_HORIZON:
        raise ValueError(f"horizon must be >= {MIN_HORIZON}, got {horizon}")
    if not math.isfinite(weight_bound(w)):
        raise ValueError("weight sequence is unbounded")

    analytic = _analytic_label(w, p)
    if analytic is not None:
        ev = horizon_evidence(w, p, horizon)
        return DynamicsVerdict(analytic, Confidence.ANALYTIC, horizon, ev)

    # numeric path: explicit weight lists only
    effective = min(horizon, len(w.weights))
    ev = horizon_evidence(w, p, effective)
    is_chaotic = chaotic_evidence(ev)
    is_mixing = mixing_evidence(ev)
    is_transitive = transitive_evidence(ev)
    if is_chaotic and is_mixing:
        label, decided = DynamicsLabel.CHAOTIC, True
    elif is_mixing:
        label, decided = DynamicsLabel.MIXING_NOT_CHAOTIC, True
    elif is_transitive:
        label, decided = DynamicsLabel.TRANSITIVE_NOT_MIXING, True
    elif bounded_evidence(ev):
        label, decided = DynamicsLabel.NOT_TRANSITIVE, True
    else:
        label, decided = DynamicsLabel.NOT_TRANSITIVE, False
    confidence = Confidence.NUMERIC_EVIDENCE if decided and effective >= MIN_HORIZON else Confidence.INCONCLUSIVE
    return DynamicsVerdict(label, confidence, effective, ev)


# ---------------------------------------------------------------------------
# example operators and orbit experiments


def make_example(which: str) -> ShiftOperator:
    """The three example operators, all on l^2.

    T1 has weights sqrt(n/(n-1)) (first weight 1), T2 is the balanced block
    operator with the amplifying block first in every pair, T3 the same
    blocks with the attenuating block first.
    """
    name = which.strip().upper()
    if name == "T1":
        return ShiftOperator(PowerLawBeta(0.5), 2.0)
    if name == "T2":
        return ShiftOperator(BalancedBlocks(2.0, 0.5, a_first=True), 2.0)
    if name == "T3":
        return ShiftOperator(BalancedBlocks(0.5, 2.0, a_first=True), 2.0)
    raise ValueError(f"unknown example operator {which!r}; expected T1, T2, or T3")


def example3_point(k: int) -> FinSeqVector:
    """The l^2 vector with coordinate j(j+1) equal to 2**(1-j) for j = 1..k.

    This is the start point for the T3 orbit experiment.  Its orbit under
    T3 keeps norm >= 1 for exactly k-1 steps: step n is propped up by the
    entry at position (n+1)(n+2), whose in-pair weight product is 2**(n+1)
    at the right moment, and a vector with k nonzero entries has no such
    entry once n reaches k.
    """
    if k < 1:
        raise ValueError(f"need at least one nonzero entry, got {k}")
    coords = [0j] * (k * (k + 1))
    for j in range(1, k + 1):
        coords[j * (j + 1) - 1] = complex(2.0 ** (1 - j))
    return FinSeqVector(2.0, tuple(coords))


@dataclass(frozen=True, slots=True)
class OrbitTrace:
    """Norms along an orbit, plus where finite support makes them trivial.

    ``norms[n]`` is ||T^n x||_p for n = 0..N.  Once n reaches the support
    length every coordinate has been shifted away, so the recorded norms are
    exactly 0 from there on; ``valid_horizon`` = min(N, support length) marks
    the last step that still carries information about the operator.
    """

    norms: tuple[float, ...]
    valid_horizon: int
    operator: dict
    point: str

    def to_dict(self) -> dict:
        return {
            "norms": [_json_float(v) for v in self.norms],
            "valid_horizon": self.valid_horizon,
            "operator": self.operator,
            "point": self.point,
        }

    def csv_rows(self) -> list[tuple[str, str]]:
        rows = [("n", "norm")]
        rows.extend((str(i), repr(v)) for i, v in enumerate(self.norms))
        return rows


def _operator_descriptor(t: ShiftOperator) -> dict:
    return {"weights": weights_to_dict(t.weights), "p": t.p}


def orbit_norms(t: ShiftOperator, x: FinSeqVector, n: int, point: str = "") -> OrbitTrace:
    """The norm trace ||T^k x||_p for k = 0..n, by repeated application.

    The trace always has n+1 entries; entries past the support length are
    exactly zero and ``valid_horizon`` reports where that happens.
    """
    if n < 0:
        raise ValueError(f"orbit length must be >= 0, got {n}")
    norms = [lp_norm(x)]
    y = x
    for _ in range(n):
        y = apply_shift(t, y)
        norms.append(lp_norm(y))
    return OrbitTrace(
        norms=tuple(norms),
        valid_horizon=min(n, x.support_length),
        operator=_operator_descriptor(t),
        point=point or f"support:{x.support_length}",
    )


def escape_demo(lam: complex, p: float, n: int) -> OrbitTrace:
    """Norms ||(lam B)^(k-1) e_k||_p for k = 1..n, each by honest iteration.

    Entry k-1 of the trace is |lam|^(k-1): the k-th basis vector survives
    exactly k-1 shifts, picking up one weight factor per step.  The trace
    therefore demonstrates geometric escape (|lam| > 1), constancy
    (|lam| = 1), or decay to 0 (|lam| < 1) along a single family of unit
    vectors.  Every step is within each vector's support, so the whole
    trace is valid: ``valid_horizon`` = n - 1.
    """
    lam = complex(lam)
    if lam == 0:
        raise ValueError("shift weight must be nonzero")
    if n < 1:
        raise ValueError(f"need at least one trace entry, got {n}")
    t = ShiftOperator(Constant(lam), p)
    norms = []
    for k in range(1, n + 1):
        y = FinSeqVector(p, (0j,) * (k - 1) + (1 + 0j,))
        for _ in range(k - 1):
            y = apply_shift(t, y)
        norms.append(lp_norm(y))
    return OrbitTrace(
        norms=tuple(norms),
        valid_horizon=n - 1,
        operator=_operator_descriptor(t),
        point="escape:basis",
    )
