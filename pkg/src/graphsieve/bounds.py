"""Closed-form lower/upper bounds on diameter probabilities.

Each function evaluates one closed-form bound (a theorem form, its p = 1/2
specialization, or an asymptotic form) exactly as displayed in its
docstring, in overflow-safe floating point: powers such as (1-p^2)^n are
computed as exp(n*log1p(-p^2)), and an overflowing raw value becomes
+/-inf, which the [0,1] clamp then handles.  Raw and clamped values are
both reported, with flags marking the trivial regimes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import DomainError
from .graphs import FamilyKind, GraphFamily, PartitionShape

__all__ = [
    "BoundPair",
    "ThresholdSpec",
    "gnp_bounds",
    "gnp_half_lower",
    "gnp_asymptotic_bounds",
    "gnp_asymptotic_upper_alt",
    "kpartite_bounds",
    "kpartite_half_lower",
    "kpartite_asymptotic_bounds",
    "kpartite_turan_bounds",
    "kpartite_turan_half_lower",
    "kpartite_turan_asymptotic_bounds",
    "bipartite_bounds",
    "bipartite_half_bounds",
    "bipartite_turan_half_lower",
    "bipartite_asymptotic_bounds",
    "bipartite_turan_bounds",
    "bipartite_turan_asymptotic_bounds",
    "directed_adjust",
    "threshold_c",
    "turan_kpartite_threshold_c",
    "turan_bipartite_threshold_c",
    "solve_threshold_p",
    "applicable_bounds",
]


@dataclass(frozen=True)
class BoundPair:
    """A raw lower/upper bound pair plus its [0,1]-clamped projection.

    ``lower_term`` is the quantity T with ``lower_raw = 1 - T``; it is kept
    so the directed adjustment can double the subtracted term instead of
    reconstructing it from clamped values.  Raw bounds may cross or leave
    [0,1]; only the clamped values are individually meaningful.
    """

    lower_raw: float
    upper_raw: float
    lower: float
    upper: float
    source: str
    trivial_lower: bool
    trivial_upper: bool
    asymptotic: bool = False
    lower_term: float | None = None


def _pair(lower_term: float, upper_raw: float, source: str, asymptotic=False) -> BoundPair:
    lower_raw = 1.0 - lower_term
    return BoundPair(
        lower_raw=lower_raw,
        upper_raw=upper_raw,
        lower=max(lower_raw, 0.0),
        upper=min(upper_raw, 1.0),
        source=source,
        trivial_lower=lower_raw <= 0.0,
        trivial_upper=upper_raw >= 1.0,
        asymptotic=asymptotic,
        lower_term=lower_term,
    )


def _exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def _pow1p(x: float, e: float) -> float:
    """(1 + x)^e via exp(e*log1p(x)); accurate for x near 0, inf on overflow."""
    return _exp(e * math.log1p(x))


def _check_p(p: float) -> None:
    if not 0.0 < p < 1.0:
        raise DomainError(f"edge probability must lie in (0,1), got {p}")


# ----------------------------------------------------------------------
# All simple graphs, diameter <= 2
# ----------------------------------------------------------------------


def gnp_bounds(n: int, p: float) -> BoundPair:
    """Theorem bounds for G(n,p) having diameter <= 2.

    lower = 1 - n^2 (1-p^2)^(n-2) (1-p) / 2
    upper = 2 / ((n-1)^2 (1-p^2)^n (1-p)) + (8/n) (1 + p^3/(1-p)^2)^n
    """
    if n < 3:
        raise DomainError(f"need n >= 3, got {n}")
    _check_p(p)
    log_t = 2 * math.log(n) + (n - 2) * math.log1p(-p * p) + math.log1p(-p) - math.log(2)
    term = _exp(log_t)
    up1 = _exp(
        math.log(2) - 2 * math.log(n - 1) - n * math.log1p(-p * p) - math.log1p(-p)
    )
    up2 = (8.0 / n) * _pow1p(p**3 / (1 - p) ** 2, n)
    return _pair(term, up1 + up2, "gnp_theorem")


def gnp_half_lower(n: int) -> float:
    """p = 1/2 corollary: max(0, 1 - 4 n^2 (3/4)^n / 9)."""
    if n < 3:
        raise DomainError(f"need n >= 3, got {n}")
    return max(0.0, 1.0 - (4.0 * n * n / 9.0) * _pow1p(-0.25, n))


def gnp_asymptotic_bounds(n: int, p: float) -> BoundPair:
    """Asymptotic bounds with explicit correction factors.

    Valid for n >= 200 and p <= 1/2, where the corrections
    (1 + 4p^2) on the lower side and
    (1 + (4(log n)^2 + 2)/n + p + 3e^8 (2 log n)^(3/2) / sqrt(n))
    on the upper side make the limit statements concrete:

    lower = 1 - (1 + 4p^2) (n^2/2) e^(-n p^2)
    upper = (1 + eps) (2/n^2) e^(n p^2) (1 + 4 n e^(n p^2 (p^2 - 1)))
    """
    if n < 200 or p > 0.5:
        raise DomainError(
            f"explicit asymptotic constants require n >= 200 and p <= 1/2, "
            f"got n={n}, p={p}"
        )
    _check_p(p)
    np2 = n * p * p
    term = (1 + 4 * p * p) * (n * n / 2.0) * _exp(-np2)
    eps = (4 * math.log(n) ** 2 + 2) / n + p + 3 * math.e**8 * (2 * math.log(n)) ** 1.5 / math.sqrt(n)
    upper = (1 + eps) * (2.0 / (n * n)) * _exp(np2) * (1 + 4 * n * _exp(np2 * (p * p - 1)))
    return _pair(term, upper, "gnp_asymptotic", asymptotic=True)


def gnp_asymptotic_upper_alt(n: int, p: float) -> float:
    """Variant of the asymptotic upper with correction exponent n p^2 (p - 1).

    The default form uses exponent n p^2 (p^2 - 1); this variant's exponent
    is larger for p in (0,1), so the bound is weaker.  Both are kept for
    comparison; only the default feeds :func:`gnp_asymptotic_bounds`.
    """
    if n < 200 or p > 0.5:
        raise DomainError("requires n >= 200 and p <= 1/2")
    _check_p(p)
    np2 = n * p * p
    eps = (4 * math.log(n) ** 2 + 2) / n + p + 3 * math.e**8 * (2 * math.log(n)) ** 1.5 / math.sqrt(n)
    return (1 + eps) * (2.0 / (n * n)) * _exp(np2) * (1 + 4 * n * _exp(np2 * (p - 1)))


# ----------------------------------------------------------------------
# k-partite graphs (k >= 3), diameter <= 2
# ----------------------------------------------------------------------


def _kpartite_args(shape: PartitionShape, p: float) -> tuple[int, int, int, int, int]:
    if shape.k < 3:
        raise DomainError("k-partite bounds need k >= 3")
    if shape.sizes[-2] < 2:
        raise DomainError("k-partite bounds need second-largest part >= 2")
    n = shape.total()
    if n < shape.k + 2:
        raise DomainError("k-partite bounds need n >= k+2")
    _check_p(p)
    return n, shape.k, shape.sizes[-1], shape.sizes[-2], shape.sizes[-3]


def kpartite_bounds(shape: PartitionShape, p: float) -> BoundPair:
    """Theorem bounds for a k-partite family (largest parts nk >= nk1 >= nk2).

    lower = 1 - (nk^2 (1-p^2)^(n-nk) / 2)
            * (1 + 2 nk1 (1-p^2)^(-nk1) / nk
                 + 7 k^2 nk1^2 (1-p^2)^(nk-nk1-nk2) / (3 nk^2))
    upper = (2 / (nk (nk-1) (1-p^2)^(n-nk)))
            * (1 + 2 nk1 (1-p^2)^(-nk1) (1-p) / (nk-1))^(-1)
          + 3 k^3 (1 + p^3/(1-p))^(n-nk) (1-p^2)^(-2) / (nk1 - 1)
    """
    n, k, nk, nk1, nk2 = _kpartite_args(shape, p)
    q2 = -p * p
    term = (
        (nk * nk / 2.0)
        * _pow1p(q2, n - nk)
        * (
            1
            + 2 * nk1 * _pow1p(q2, -nk1) / nk
            + 7 * k * k * nk1 * nk1 * _pow1p(q2, nk - nk1 - nk2) / (3.0 * nk * nk)
        )
    )
    up1 = (
        2.0
        / (nk * (nk - 1) * _pow1p(q2, n - nk))
        / (1 + 2 * nk1 * _pow1p(q2, -nk1) * (1 - p) / (nk - 1))
    )
    up2 = 3 * k**3 * _pow1p(p**3 / (1 - p), n - nk) * _pow1p(q2, -2) / (nk1 - 1)
    return _pair(term, up1 + up2, "kpartite_theorem")


def kpartite_half_lower(shape: PartitionShape) -> float:
    """p = 1/2 corollary of the k-partite theorem lower bound."""
    n, k, nk, nk1, nk2 = _kpartite_args(shape, 0.5)
    term = (
        (nk * nk / 2.0)
        * 0.75 ** (n - nk)
        * (
            1
            + 2 * nk1 * 0.75 ** (-nk1) / nk
            + 7 * k * k * nk1 * nk1 * 0.75 ** (nk - nk1 - nk2) / (3.0 * nk * nk)
        )
    )
    return max(0.0, 1.0 - term)


def kpartite_asymptotic_bounds(shape: PartitionShape, p: float) -> BoundPair:
    """Asymptotic k-partite bounds (o(1) factors dropped, flagged as such).

    lower = 1 - (nk^2 e^(-p^2(n-nk)) / 2)
            * (1 + (2 nk1/nk) e^(p^2 nk1) (1 + 7 k^2 nk1 e^(-p^2(nk-nk2)) / (6 nk)))
    upper = (2 e^(p^2(n-nk)) / nk^2) (1 + (2 nk1/nk) e^(p^2 nk1))^(-1)
            * (1 + 3 k^3 nk^2 e^((p^3-p^2)(n-nk)) / (2(nk1-1))
                 + 3 k^3 nk nk1 e^((p^3-p^2)(n-nk) + p^2 nk1) / (nk1-1))
    """
    n, k, nk, nk1, nk2 = _kpartite_args(shape, p)
    p2 = p * p
    term = (
        (nk * nk / 2.0)
        * _exp(-p2 * (n - nk))
        * (
            1
            + (2 * nk1 / nk)
            * _exp(p2 * nk1)
            * (1 + 7 * k * k * nk1 * _exp(-p2 * (nk - nk2)) / (6.0 * nk))
        )
    )
    drift = (p**3 - p2) * (n - nk)
    upper = (
        (2.0 / (nk * nk))
        * _exp(p2 * (n - nk))
        / (1 + (2 * nk1 / nk) * _exp(p2 * nk1))
        * (
            1
            + 3 * k**3 * nk * nk * _exp(drift) / (2.0 * (nk1 - 1))
            + 3 * k**3 * nk * nk1 * _exp(drift + p2 * nk1) / (nk1 - 1)
        )
    )
    return _pair(term, upper, "kpartite_asymptotic", asymptotic=True)


def _turan_kpartite_args(n: int, k: int, p: float) -> None:
    if k < 3:
        raise DomainError("Turan k-partite bounds need k >= 3")
    if n <= 2 * k:
        raise DomainError(f"Turan k-partite bounds need n > 2k, got n={n}, k={k}")
    _check_p(p)


def kpartite_turan_bounds(n: int, k: int, p: float) -> BoundPair:
    """Theorem bounds for the balanced (Turan) k-partite family, n > 2k.

    Exponents use the real ratio n/k, not the rounded part sizes.

    lower = 1 - (n^2 (1-p^2)^(n(1-1/k)-1) / 2k)
            * (1 + (k-1)(1-p^2)^(-n/k-1)) (1 + k/n)
    upper = (2k / (n^2 (1-p^2)^(n(1-1/k)+1)))
            * (1 + (k-1)(1-p^2)^(1-n/k)(1-p))^(-1) (1 - 2k/n)^(-1)
          + (4 k^3 (1+p^3/(1-p))^(n(1-1/k)+1) (1-p^2)^(-2) / (n(k-1)))
            * (1 - 2k/n)^(-4)
    """
    _turan_kpartite_args(n, k, p)
    q2 = -p * p
    frac = n * (1 - 1.0 / k)
    term = (
        (n * n / (2.0 * k))
        * _pow1p(q2, frac - 1)
        * (1 + (k - 1) * _pow1p(q2, -n / k - 1))
        * (1 + k / n)
    )
    up1 = (
        (2.0 * k / (n * n))
        / _pow1p(q2, frac + 1)
        / (1 + (k - 1) * _pow1p(q2, 1 - n / k) * (1 - p))
        / (1 - 2.0 * k / n)
    )
    up2 = (
        4 * k**3
        * _pow1p(p**3 / (1 - p), frac + 1)
        * _pow1p(q2, -2)
        / (n * (k - 1))
        / (1 - 2.0 * k / n) ** 4
    )
    return _pair(term, up1 + up2, "kpartite_turan_theorem")


def kpartite_turan_half_lower(n: int, k: int) -> float:
    """p = 1/2 corollary of the Turan k-partite lower bound."""
    _turan_kpartite_args(n, k, 0.5)
    term = (
        (4.0 * n * n / (6.0 * k))
        * 0.75 ** (n * (1 - 1.0 / k))
        * (1 + (k - 1) * (4.0 / 3.0) ** (n / k + 1))
        * (1 + k / n)
    )
    return max(0.0, 1.0 - term)


def kpartite_turan_asymptotic_bounds(n: int, k: int, p: float) -> BoundPair:
    """Asymptotic Turan k-partite bounds (o(1) dropped, flagged).

    lower = 1 - (n^2 e^(-np^2(1-1/k)) / 2k) (1 + (k-1) e^(np^2/k))
    upper = (2k e^(np^2(1-1/k)) / n^2) (1 + (k-1) e^(np^2/k))^(-1)
            * (1 + 2 k^2 n e^((np^3-np^2)(1-1/k)) / (k-1)
                 + 2 k^2 n e^((np^3-np^2)(1-1/k) + np^2/k))
    """
    _turan_kpartite_args(n, k, p)
    np2 = n * p * p
    frac = 1 - 1.0 / k
    term = (n * n / (2.0 * k)) * _exp(-np2 * frac) * (1 + (k - 1) * _exp(np2 / k))
    drift = (n * p**3 - np2) * frac
    upper = (
        (2.0 * k / (n * n))
        * _exp(np2 * frac)
        / (1 + (k - 1) * _exp(np2 / k))
        * (
            1
            + 2 * k * k * n * _exp(drift) / (k - 1)
            + 2 * k * k * n * _exp(drift + np2 / k)
        )
    )
    return _pair(term, upper, "kpartite_turan_asymptotic", asymptotic=True)


# ----------------------------------------------------------------------
# Bipartite graphs, diameter <= 3
# ----------------------------------------------------------------------


def _bipartite_args(shape: PartitionShape, p: float) -> tuple[int, int]:
    if shape.k != 2:
        raise DomainError("bipartite bounds need exactly 2 parts")
    n1, n2 = shape.sizes
    if n1 < 2:
        raise DomainError("bipartite bounds need both parts of size >= 2")
    _check_p(p)
    return n1, n2


def bipartite_bounds(shape: PartitionShape, p: float) -> BoundPair:
    """Theorem bounds for a bipartite family (2 <= n1 <= n2), diameter <= 3.

    lower = 1 - (n2^2 (1-p^2)^n1 / 2) (1 + n1^2 (1-p^2)^(n2-n1) / n2^2)
    upper = (2 / (n2(n2-1)(1-p^2)^n1)
             + ((1+p^3/(1-p))^n1 / n2) (8 + 8/(1-p)))
            * (1 + n1(n1-1)(1-p^2)^(n2-n1) / (n2(n2-1)))^(-1)
    """
    n1, n2 = _bipartite_args(shape, p)
    q2 = -p * p
    term = (
        (n2 * n2 / 2.0)
        * _pow1p(q2, n1)
        * (1 + n1 * n1 * _pow1p(q2, n2 - n1) / (n2 * n2))
    )
    shared = 1 + n1 * (n1 - 1) * _pow1p(q2, n2 - n1) / (n2 * (n2 - 1))
    upper = (
        2.0 / (n2 * (n2 - 1) * _pow1p(q2, n1))
        + (_pow1p(p**3 / (1 - p), n1) / n2) * (8 + 8 / (1 - p))
    ) / shared
    return _pair(term, upper, "bipartite_theorem")


def bipartite_half_bounds(shape: PartitionShape) -> BoundPair:
    """p = 1/2 corollary of the bipartite theorem.

    lower = 1 - (n2^2 (3/4)^n1 / 2) (1 + n1^2 (3/4)^(n2-n1) / n2^2)
    upper = (2 (4/3)^n1 / (n2(n2-1)) + 24 (5/4)^n1 / n2)
            * (1 + n1(n1-1)(3/4)^(n2-n1) / (n2(n2-1)))^(-1)
    """
    n1, n2 = _bipartite_args(shape, 0.5)
    term = (n2 * n2 / 2.0) * 0.75**n1 * (1 + n1 * n1 * 0.75 ** (n2 - n1) / (n2 * n2))
    shared = 1 + n1 * (n1 - 1) * 0.75 ** (n2 - n1) / (n2 * (n2 - 1))
    upper = (
        2 * _pow1p(1 / 3, n1) / (n2 * (n2 - 1)) + 24 * _pow1p(0.25, n1) / n2
    ) / shared
    return _pair(term, upper, "bipartite_corollary_half")


def bipartite_asymptotic_bounds(shape: PartitionShape, p: float) -> BoundPair:
    """Asymptotic bipartite bounds (o(1) dropped, flagged).

    lower = 1 - (n2^2 e^(-n1 p^2) / 2) (1 + e^(2 log n1 - 2 log n2 - (n2-n1)p^2))
    upper = (2/n2^2) e^(n1 p^2)
            * (1 + e^(2 log n1 - 2 log n2 - (n2-n1)p^2))^(-1)
            * (1 + 8 n2 e^(n1 p^2 (p-1)))
    """
    n1, n2 = _bipartite_args(shape, p)
    p2 = p * p
    cross = _exp(2 * math.log(n1) - 2 * math.log(n2) - (n2 - n1) * p2)
    term = (n2 * n2 / 2.0) * _exp(-n1 * p2) * (1 + cross)
    upper = (
        (2.0 / (n2 * n2))
        * _exp(n1 * p2)
        / (1 + cross)
        * (1 + 8 * n2 * _exp(n1 * p2 * (p - 1)))
    )
    return _pair(term, upper, "bipartite_asymptotic", asymptotic=True)


def bipartite_turan_bounds(n: int, p: float) -> BoundPair:
    """Theorem bounds for the balanced (Turan) bipartite family, n >= 4.

    The exponents (n-1)/2 and n/2 apply to both parities unchanged; no
    even/odd correction is made.

    lower = 1 - (n+1)^2 (1-p^2)^((n-1)/2) / 8
    upper = (8 / (n(n-2)(1-p^2)^(n/2))
             + (2 (1+p^3/(1-p))^(n/2) / n) (8 + 8/(1-p)))
            * (1 + (n-3)(1-p^2) / (n+1))^(-1)
    """
    if n < 4:
        raise DomainError(f"need n >= 4, got {n}")
    _check_p(p)
    q2 = -p * p
    term = (n + 1) ** 2 * _pow1p(q2, (n - 1) / 2) / 8.0
    shared = 1 + (n - 3) * (1 - p * p) / (n + 1)
    upper = (
        8.0 / (n * (n - 2) * _pow1p(q2, n / 2))
        + (2 * _pow1p(p**3 / (1 - p), n / 2) / n) * (8 + 8 / (1 - p))
    ) / shared
    return _pair(term, upper, "bipartite_turan_theorem")


def bipartite_turan_half_lower(n: int) -> float:
    """p = 1/2 corollary: max(0, 1 - (n+1)^2 (3/4)^((n-1)/2) / 4).

    Deliberately weaker than the theorem at p = 1/2 (constant 1/4 vs 1/8).
    """
    if n < 4:
        raise DomainError(f"need n >= 4, got {n}")
    return max(0.0, 1.0 - (n + 1) ** 2 * _pow1p(-0.25, (n - 1) / 2) / 4.0)


def bipartite_turan_asymptotic_bounds(n: int, p: float) -> BoundPair:
    """Asymptotic Turan bipartite bounds (o(1) dropped, flagged).

    lower = 1 - n^2 e^(-np^2/2) / 4
    upper = (4/n^2) e^(np^2/2) (1 + 8 n e^((np^2/2)(p^2-1)))
    """
    if n < 4:
        raise DomainError(f"need n >= 4, got {n}")
    _check_p(p)
    half = n * p * p / 2.0
    term = (n * n / 4.0) * _exp(-half)
    upper = (4.0 / (n * n)) * _exp(half) * (1 + 8 * n * _exp(half * (p * p - 1)))
    return _pair(term, upper, "bipartite_turan_asymptotic", asymptotic=True)


# ----------------------------------------------------------------------
# Directed adjustment
# ----------------------------------------------------------------------


def directed_adjust(b: BoundPair) -> BoundPair:
    """Directed version of an undirected closed-form bound.

    The rule: double the subtracted term of the lower bound descriptor and
    halve the upper bound; thresholds gain log 2 (handled by the threshold
    functions, not here).  Applied to raw values, never to clamped ones.
    """
    if b.source.startswith("directed_"):
        raise DomainError(f"bound {b.source!r} is already directed-adjusted")
    if b.lower_term is None:
        raise DomainError(f"bound {b.source!r} does not expose its lower term")
    lower_raw = 1.0 - 2.0 * (1.0 - b.lower_raw)
    upper_raw = b.upper_raw / 2.0
    return BoundPair(
        lower_raw=lower_raw,
        upper_raw=upper_raw,
        lower=max(lower_raw, 0.0),
        upper=min(upper_raw, 1.0),
        source="directed_" + b.source,
        trivial_lower=lower_raw <= 0.0,
        trivial_upper=upper_raw >= 1.0,
        asymptotic=b.asymptotic,
        lower_term=2.0 * b.lower_term,
    )


# ----------------------------------------------------------------------
# Threshold constants
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ThresholdSpec:
    """Finite-n evaluation of the expression whose limit is the constant c.

    Negative c puts the model where the lower (simple-sieve) bound is
    informative; positive c favors the upper (Turan-sieve) bound.
    """

    family: str
    c: float
    n: int
    p: float
    c_observed: float


def _threshold_expr(family: GraphFamily, p: float) -> float:
    n = family.n
    p2 = p * p
    if family.kind in (FamilyKind.SIMPLE, FamilyKind.DIRECTED):
        value = 2 * math.log(n) - n * p2 - math.log(2)
    elif family.kind in (FamilyKind.KPARTITE, FamilyKind.DIRECTED_KPARTITE):
        nk, nk1 = family.shape.sizes[-1], family.shape.sizes[-2]
        value = (
            2 * math.log(nk)
            - p2 * (n - nk)
            - math.log(2)
            + math.log1p((2 * nk1 / nk) * _exp(p2 * nk1))
        )
    else:
        n1, n2 = family.shape.sizes
        value = 2 * math.log(n2) - n1 * p2 - math.log(2)
    if family.directed:
        value += math.log(2)
    return value


def threshold_c(family: GraphFamily, p: float) -> ThresholdSpec:
    """Evaluate the family's threshold expression at (n, p)."""
    _check_p(p)
    c_obs = _threshold_expr(family, p)
    return ThresholdSpec(family.describe(), c_obs, family.n, p, c_obs)


def turan_kpartite_threshold_c(n: int, k: int, p: float) -> ThresholdSpec:
    """2 log n - log k - np^2(1-1/k) - log 2 + log(1 + (k-1) e^(np^2/k))."""
    _turan_kpartite_args(n, k, p)
    np2 = n * p * p
    c_obs = (
        2 * math.log(n)
        - math.log(k)
        - np2 * (1 - 1.0 / k)
        - math.log(2)
        + math.log1p((k - 1) * _exp(np2 / k))
    )
    return ThresholdSpec(f"turan-kpartite(k={k})", c_obs, n, p, c_obs)


def turan_bipartite_threshold_c(n: int, p: float) -> ThresholdSpec:
    """2 log n - log 4 - np^2/2."""
    if n < 4:
        raise DomainError(f"need n >= 4, got {n}")
    _check_p(p)
    c_obs = 2 * math.log(n) - math.log(4) - n * p * p / 2.0
    return ThresholdSpec("turan-bipartite", c_obs, n, p, c_obs)


def solve_threshold_p(
    family: GraphFamily | None,
    c: float,
    *,
    n: int | None = None,
    k: int | None = None,
    turan: str | None = None,
) -> ThresholdSpec:
    """Find p with the threshold expression equal to c (bisection).

    Pass a family for the family-based expressions, or ``turan`` in
    {"kpartite", "bipartite"} with explicit n (and k) for the balanced
    variants.  All expressions are strictly decreasing in p, so a sign
    change over (0,1) pins the root.
    """
    if turan == "kpartite":
        expr = lambda q: turan_kpartite_threshold_c(n, k, q).c_observed
        desc = f"turan-kpartite(k={k})"
    elif turan == "bipartite":
        expr = lambda q: turan_bipartite_threshold_c(n, q).c_observed
        desc = "turan-bipartite"
    elif family is not None:
        expr = lambda q: _threshold_expr(family, q)
        n = family.n
        desc = family.describe()
    else:
        raise DomainError("need a family or a turan variant")
    lo, hi = 1e-12, 1.0 - 1e-12
    if expr(lo) < c:
        raise DomainError(f"threshold c={c} unattainable: expression tops out below it")
    if expr(hi) > c:
        raise DomainError(f"threshold c={c} unattainable: expression stays above it")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if expr(mid) > c:
            lo = mid
        else:
            hi = mid
    p = 0.5 * (lo + hi)
    return ThresholdSpec(desc, c, n, p, expr(p))


# ----------------------------------------------------------------------
# Dispatch: every bound applicable to a configuration
# ----------------------------------------------------------------------


def applicable_bounds(
    family: GraphFamily, p: float, turan_nk: tuple[int, int] | None = None
) -> list[BoundPair]:
    """All theorem/corollary/asymptotic bounds that apply to (family, p).

    Corollaries are included only at p = 1/2; asymptotic forms only where
    their preconditions hold.  ``turan_nk = (n, k)`` additionally evaluates
    the balanced-family variants.  Directed kinds report the adjusted
    versions of each undirected bound.
    """
    out: list[BoundPair] = []
    half = p == 0.5

    def lower_only(raw_term: float, source: str) -> BoundPair:
        pair = _pair(raw_term, math.inf, source)
        return replace(pair, upper=1.0, trivial_upper=True)

    if family.kind in (FamilyKind.SIMPLE, FamilyKind.DIRECTED):
        n = family.n
        out.append(gnp_bounds(n, p))
        if half:
            raw = (4.0 * n * n / 9.0) * _pow1p(-0.25, n)
            out.append(lower_only(raw, "gnp_corollary_half"))
        if n >= 200 and p <= 0.5:
            out.append(gnp_asymptotic_bounds(n, p))
    elif family.kind in (FamilyKind.KPARTITE, FamilyKind.DIRECTED_KPARTITE):
        shape = family.shape
        out.append(kpartite_bounds(shape, p))
        if half:
            # corollary = theorem lower at p = 1/2, restated with 3/4 powers
            out.append(lower_only(1.0 - kpartite_bounds(shape, 0.5).lower_raw, "kpartite_corollary_half"))
        out.append(kpartite_asymptotic_bounds(shape, p))
        if turan_nk is not None:
            n, k = turan_nk
            out.append(kpartite_turan_bounds(n, k, p))
            if half:
                raw = (
                    (4.0 * n * n / (6.0 * k))
                    * 0.75 ** (n * (1 - 1.0 / k))
                    * (1 + (k - 1) * (4.0 / 3.0) ** (n / k + 1))
                    * (1 + k / n)
                )
                out.append(lower_only(raw, "kpartite_turan_corollary_half"))
            out.append(kpartite_turan_asymptotic_bounds(n, k, p))
    else:
        shape = family.shape
        out.append(bipartite_bounds(shape, p))
        if half:
            out.append(bipartite_half_bounds(shape))
        out.append(bipartite_asymptotic_bounds(shape, p))
        if turan_nk is not None:
            n, _ = turan_nk
            out.append(bipartite_turan_bounds(n, p))
            if half:
                raw = (n + 1) ** 2 * _pow1p(-0.25, (n - 1) / 2) / 4.0
                out.append(lower_only(raw, "bipartite_turan_corollary_half"))
            out.append(bipartite_turan_asymptotic_bounds(n, p))
    if family.directed:
        out = [directed_adjust(b) for b in out]
    return out
