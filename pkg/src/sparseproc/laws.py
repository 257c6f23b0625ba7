"""Infinitely divisible noise laws.

Each law carries its log-characteristic function (the *exponent* ``f``),
an exact sampler for the n-th root of the law (the infinitely divisible
law with exponent ``f / n``), and closed-form first/second moments where
they exist. The exponent of the unit-rectangle observation fully
determines the white noise, so the exponent plus the root sampler is all
the rest of the package needs.

Exponent conventions
--------------------
Gaussian(mu, sigma)         f(x) = j*mu*x - sigma^2 x^2 / 2
Stable(alpha, beta, mu, c)  alpha != 1:
                            f(x) = j*mu*x - |c x|^alpha (1 - j beta sgn(x) tan(pi alpha/2))
                            alpha == 1:
                            f(x) = j*mu*x - c|x| (1 + j beta (2/pi) sgn(x) ln(c|x|))
Gamma(shape k, rate lam)    f(x) = -k log(1 - j x / lam)         (principal branch)
Laplace(mu, b)              f(x) = j*mu*x - log(1 + b^2 x^2)
CompoundPoisson(rate, nu)   f(x) = rate * (exp(f_nu(x)) - 1)

The alpha == 1 stable exponent couples the scale into the logarithm
(ln(c|x|) rather than ln|x|). Under this convention the n-th root of
Stable(1, beta, mu, c) is exactly Stable(1, beta, mu/n - (2/pi) c beta ln(n)/n, c/n),
i.e. the location correction absorbs the scale change of the log term,
and f_root == f / n holds identically (it is checked in the tests).

The symmetric stable case (beta = 0, mu = 0) reduces to f(x) = -|c x|^alpha.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParseError, QuadratureError

__all__ = [
    "LevyLaw",
    "Gaussian",
    "Stable",
    "Gamma",
    "Laplace",
    "CompoundPoisson",
    "RootLaw",
    "levy_exponent",
    "nth_root",
    "sample",
    "observation_char",
    "law_to_dict",
    "law_from_dict",
]


def _as_xi(xi):
    arr = np.asarray(xi, dtype=float)
    return arr, arr.ndim == 0


class LevyLaw:
    """Base class for infinitely divisible law families."""

    def exponent(self, xi):
        """Log-characteristic function f evaluated at ``xi`` (vectorized)."""
        raise NotImplementedError

    def sample_root(self, n: int, count: int, rng: np.random.Generator) -> np.ndarray:
        """``count`` i.i.d. draws from the law with exponent ``f / n``."""
        raise NotImplementedError

    def root_params(self, n: int):
        """In-family law of the n-th root, or None when the root leaves the family."""
        raise NotImplementedError

    def mean_variance(self) -> tuple[float | None, float]:
        """(mean, variance) of the unit-rectangle observation.

        ``variance`` is ``math.inf`` when infinite; ``mean`` is None when
        undefined.
        """
        raise NotImplementedError

    def to_dict(self) -> dict:
        return law_to_dict(self)


@dataclass(frozen=True)
class Gaussian(LevyLaw):
    mu: float
    sigma: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"Gaussian sigma must be > 0, got {self.sigma}")

    def exponent(self, xi):
        xi, scalar = _as_xi(xi)
        f = 1j * self.mu * xi - 0.5 * self.sigma**2 * xi**2
        return complex(f[()]) if scalar else f

    def root_params(self, n):
        return Gaussian(self.mu / n, self.sigma / math.sqrt(n))

    def sample_root(self, n, count, rng):
        return rng.normal(self.mu / n, self.sigma / math.sqrt(n), count)

    def mean_variance(self):
        return (self.mu, self.sigma**2)


@dataclass(frozen=True)
class Stable(LevyLaw):
    """Alpha-stable law; ``beta = 0, mu = 0`` gives the symmetric family."""

    alpha: float
    beta: float = 0.0
    mu: float = 0.0
    c: float = 1.0

    def __post_init__(self):
        if not 0 < self.alpha <= 2:
            raise ValueError(f"Stable alpha must be in (0, 2], got {self.alpha}")
        if not -1 <= self.beta <= 1:
            raise ValueError(f"Stable beta must be in [-1, 1], got {self.beta}")
        if not self.c > 0:
            raise ValueError(f"Stable c must be > 0, got {self.c}")

    def exponent(self, xi):
        xi, scalar = _as_xi(xi)
        ax = np.abs(self.c * xi)
        if self.alpha == 1:
            # ln(c|xi|) scale coupling; the xi == 0 limit is 0.
            with np.errstate(divide="ignore", invalid="ignore"):
                log_term = np.where(ax > 0, np.log(ax), 0.0)
            skew = 1 + 1j * self.beta * (2 / math.pi) * np.sign(xi) * log_term
            f = 1j * self.mu * xi - ax * skew
        else:
            skew = 1 - 1j * self.beta * np.sign(xi) * math.tan(math.pi * self.alpha / 2)
            f = 1j * self.mu * xi - ax**self.alpha * skew
        return complex(f[()]) if scalar else f

    def root_params(self, n):
        if self.alpha == 1:
            mu_n = self.mu / n - (2 / math.pi) * self.c * self.beta * math.log(n) / n
            return Stable(1.0, self.beta, mu_n, self.c / n)
        return Stable(self.alpha, self.beta, self.mu / n, self.c / n ** (1 / self.alpha))

    def sample_root(self, n, count, rng):
        p = self.root_params(n)
        x0 = _stable_standard(p.alpha, p.beta, count, rng)
        return p.c * x0 + p.mu

    def mean_variance(self):
        if self.alpha == 2:
            return (self.mu, 2 * self.c**2)
        mean = self.mu if self.alpha > 1 else None
        return (mean, math.inf)


@dataclass(frozen=True)
class Gamma(LevyLaw):
    """Gamma law in the (shape, rate) parametrization.

    The n-th root divides the shape: Gamma(shape/n, rate). This is the
    unique reading under which n i.i.d. root draws sum to the base law.
    """

    shape: float
    rate: float

    def __post_init__(self):
        if not self.shape > 0:
            raise ValueError(f"Gamma shape must be > 0, got {self.shape}")
        if not self.rate > 0:
            raise ValueError(f"Gamma rate must be > 0, got {self.rate}")

    def exponent(self, xi):
        xi, scalar = _as_xi(xi)
        f = -self.shape * np.log(1 - 1j * xi / self.rate)
        return complex(f[()]) if scalar else f

    def root_params(self, n):
        return Gamma(self.shape / n, self.rate)

    def sample_root(self, n, count, rng):
        return _gamma_sample(self.shape / n, self.rate, count, rng)

    def mean_variance(self):
        return (self.shape / self.rate, self.shape / self.rate**2)


@dataclass(frozen=True)
class Laplace(LevyLaw):
    mu: float
    b: float

    def __post_init__(self):
        if not self.b > 0:
            raise ValueError(f"Laplace b must be > 0, got {self.b}")

    def exponent(self, xi):
        xi, scalar = _as_xi(xi)
        f = 1j * self.mu * xi - np.log(1 + self.b**2 * xi**2)
        return complex(f[()]) if scalar else f

    def root_params(self, n):
        # The root leaves the Laplace family: it is mu/n + b*(G1 - G2)
        # with G1, G2 independent Gamma(1/n, 1).
        return None if n > 1 else Laplace(self.mu, self.b)

    def sample_root(self, n, count, rng):
        g1 = _gamma_sample(1.0 / n, 1.0, count, rng)
        g2 = _gamma_sample(1.0 / n, 1.0, count, rng)
        return self.mu / n + self.b * (g1 - g2)

    def mean_variance(self):
        return (self.mu, 2 * self.b**2)


@dataclass(frozen=True)
class CompoundPoisson(LevyLaw):
    """Compound-Poisson law: a Poisson(rate) number of i.i.d. jumps.

    The jump (amplitude) law ``nu`` is any other law in this module; its
    own characteristic function is exp(f_nu).
    """

    rate: float
    amplitude: LevyLaw

    def __post_init__(self):
        if not self.rate > 0:
            raise ValueError(f"CompoundPoisson rate must be > 0, got {self.rate}")
        if not isinstance(self.amplitude, LevyLaw):
            raise ValueError("CompoundPoisson amplitude must be a law instance")

    def exponent(self, xi):
        xi, scalar = _as_xi(xi)
        f = self.rate * (np.exp(self.amplitude.exponent(xi)) - 1)
        return complex(f[()]) if scalar else f

    def root_params(self, n):
        return CompoundPoisson(self.rate / n, self.amplitude)

    def sample_root(self, n, count, rng):
        counts = rng.poisson(self.rate / n, count)
        total = int(counts.sum())
        jumps = self.amplitude.sample_root(1, total, rng)
        out = np.zeros(count)
        np.add.at(out, np.repeat(np.arange(count), counts), jumps)
        return out

    def mean_variance(self):
        m, v = self.amplitude.mean_variance()
        if m is None or not math.isfinite(v):
            return (None if m is None else self.rate * m, math.inf)
        return (self.rate * m, self.rate * (v + m**2))


@dataclass(frozen=True)
class RootLaw:
    """The n-th root of ``base``: the law with exponent ``f_base / n``."""

    base: LevyLaw
    n: int

    def __post_init__(self):
        if self.n != int(self.n) or int(self.n) < 1:
            raise ValueError(f"root order n must be an integer >= 1, got {self.n}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def effective(self) -> LevyLaw | None:
        """Mapped in-family law, or None (Laplace roots leave the family)."""
        return self.base.root_params(self.n)

    def exponent(self, xi):
        return self.base.exponent(xi) / self.n

    def sample(self, count: int, rng: np.random.Generator) -> np.ndarray:
        return self.base.sample_root(self.n, count, rng)


# -- spec-level operation surface -------------------------------------------


def levy_exponent(law: LevyLaw, xi):
    """Exponent f of ``law`` at ``xi`` (scalar or array)."""
    return law.exponent(xi)


def nth_root(law: LevyLaw, n: int) -> RootLaw:
    """The infinitely divisible n-th root of ``law``; rejects n < 1."""
    return RootLaw(law, n)


def sample(root: RootLaw, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` i.i.d. draws from a root law, deterministic given ``rng``."""
    return root.sample(count, rng)


# -- samplers ----------------------------------------------------------------


def _gamma_sample(shape, rate, count, rng):
    """Gamma draws valid for arbitrarily small shape.

    For shape >= 1 numpy's generator is used directly. For shape < 1 the
    boosting identity G_a = G_{a+1} * U^{1/a} keeps the sampler exact as
    the shape approaches 0. For very small shapes U^{1/a} underflows to
    exactly 0.0: the true law concentrates below the smallest positive
    float, so the zeros are the correctly rounded draws.
    """
    if shape >= 1.0:
        g = rng.standard_gamma(shape, count)
    else:
        g = rng.standard_gamma(shape + 1.0, count)
        u = rng.random(count)
        with np.errstate(under="ignore"):
            g = g * u ** (1.0 / shape)
    return g / rate


def _stable_standard(alpha, beta, count, rng):
    """Standardized stable draws by the Chambers-Mallows-Stuck transform.

    alpha != 1: exponent -|x|^alpha (1 - j beta sgn(x) tan(pi alpha/2))
    alpha == 1: exponent -|x| (1 + j beta (2/pi) sgn(x) ln|x|)
    """
    u = rng.uniform(-math.pi / 2, math.pi / 2, count)
    w = rng.standard_exponential(count)
    if alpha == 1:
        bu = math.pi / 2 + beta * u
        return (2 / math.pi) * (
            bu * np.tan(u) - beta * np.log((math.pi / 2) * w * np.cos(u) / bu)
        )
    zeta = beta * math.tan(math.pi * alpha / 2)
    au = alpha * u
    a1u = (1 - alpha) * u
    cosu = np.cos(u)
    return (np.sin(au) + zeta * np.cos(au)) / cosu * (
        (np.cos(a1u) + zeta * np.sin(a1u)) / (w * cosu)
    ) ** ((1 - alpha) / alpha)


# -- observation characteristic function -------------------------------------


def observation_char(law: LevyLaw, kernel, xi, rel_tol: float = 1e-7):
    """Characteristic function of the observation of the noise through ``kernel``.

    Returns exp(integral of f(xi * kernel(r)) dr) over the kernel support,
    by composite Simpson quadrature with panel edges aligned to the kernel
    knots (about 2^10 panels total) and a Richardson error estimate from
    the half-resolution rule.

    Raises QuadratureError when the estimated relative error of the
    integral exceeds ``rel_tol``.
    """
    xi_arr, scalar = _as_xi(xi)
    xi_flat = np.atleast_1d(xi_arr).ravel()

    a, b = kernel.support
    knots = sorted({float(k) for k in kernel.knots} | {float(a), float(b)})
    knots = [k for k in knots if a <= k <= b]
    if len(knots) < 2:
        knots = [a, b]
    n_int = len(knots) - 1
    per = max(2, -(-1024 // n_int))  # even panel count per knot interval
    if per % 2:
        per += 1

    fine = _simpson_f_integral(law, kernel, xi_flat, knots, per)
    coarse = _simpson_f_integral(law, kernel, xi_flat, knots, per // 2)
    err = np.abs(fine - coarse) / 15.0
    scale = 1.0 + np.abs(fine)
    worst = float(np.max(err / scale)) if err.size else 0.0
    if worst > rel_tol:
        raise QuadratureError(
            f"observation quadrature error estimate {worst:.3e} exceeds {rel_tol:.1e}",
            achieved=worst,
        )
    out = np.exp(fine).reshape(np.atleast_1d(xi_arr).shape)
    return complex(out[0]) if scalar else out.reshape(xi_arr.shape)


def _simpson_f_integral(law, kernel, xi, knots, per):
    """Integral of f(xi * kernel(r)) dr, composite Simpson per knot interval."""
    total = np.zeros(len(xi), dtype=complex)
    for lo, hi in zip(knots[:-1], knots[1:]):
        nodes = np.linspace(lo, hi, per + 1)
        kv = kernel(nodes)
        weights = np.ones(per + 1)
        weights[1:-1:2] = 4.0
        weights[2:-1:2] = 2.0
        weights *= (hi - lo) / per / 3.0
        # f evaluated on the (xi x nodes) grid, chunked to bound memory
        for start in range(0, len(xi), 256):
            block = xi[start : start + 256, None] * kv[None, :]
            fv = law.exponent(block.ravel()).reshape(block.shape)
            total[start : start + 256] += fv @ weights
    return total


# -- moments and serialization ------------------------------------------------


_FAMILY_TAGS = {
    Gaussian: "gaussian",
    Stable: "stable",
    Gamma: "gamma",
    Laplace: "laplace",
    CompoundPoisson: "compound_poisson",
}


def law_to_dict(law: LevyLaw) -> dict:
    """Human-readable key-value descriptor of a law (see README schema)."""
    if isinstance(law, Gaussian):
        return {"family": "gaussian", "mu": law.mu, "sigma": law.sigma}
    if isinstance(law, Stable):
        return {"family": "stable", "alpha": law.alpha, "beta": law.beta,
                "mu": law.mu, "c": law.c}
    if isinstance(law, Gamma):
        return {"family": "gamma", "shape": law.shape, "rate": law.rate}
    if isinstance(law, Laplace):
        return {"family": "laplace", "mu": law.mu, "b": law.b}
    if isinstance(law, CompoundPoisson):
        return {"family": "compound_poisson", "rate": law.rate,
                "amplitude": law_to_dict(law.amplitude)}
    raise ParseError(f"unknown law type {type(law).__name__}")


def law_from_dict(doc: dict) -> LevyLaw:
    """Inverse of :func:`law_to_dict`; raises ParseError on malformed input."""
    if not isinstance(doc, dict) or "family" not in doc:
        raise ParseError("law descriptor must be a mapping with a 'family' key")
    family = doc["family"]
    try:
        if family == "gaussian":
            return Gaussian(float(doc["mu"]), float(doc["sigma"]))
        if family == "stable":
            return Stable(float(doc["alpha"]), float(doc.get("beta", 0.0)),
                          float(doc.get("mu", 0.0)), float(doc.get("c", 1.0)))
        if family == "gamma":
            return Gamma(float(doc["shape"]), float(doc["rate"]))
        if family == "laplace":
            return Laplace(float(doc["mu"]), float(doc["b"]))
        if family == "compound_poisson":
            return CompoundPoisson(float(doc["rate"]), law_from_dict(doc["amplitude"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad parameters for law family '{family}': {exc}") from exc
    raise ParseError(f"unknown law family '{family}'")
