"""Independent numerical oracles used only by the tests.

These deliberately avoid the package's own series/continued-fraction and
Gauss-Kronrod code paths: the exponential-integral oracle is adaptive
QUADPACK quadrature of the defining integral (after the exact shift
t = x + s so the integrand stays well scaled at large x), and the ASC oracle
integrates the product-form integrand the same way.
"""

import math

import numpy as np
from scipy.integrate import quad


def scaled_e1_oracle(x: float) -> float:
    """exp(x) E1(x) = int_0^inf exp(-s)/(x+s) ds by adaptive quadrature."""
    value, _ = quad(lambda s: math.exp(-s) / (x + s), 0.0, np.inf,
                    epsabs=0.0, epsrel=1e-13, limit=500)
    return value


def e1_oracle(x: float) -> float:
    """E1(x) by adaptive quadrature of its defining integral."""
    return math.exp(-x) * scaled_e1_oracle(x)


def asc_integral_oracle(f_eve, sf_bob) -> float:
    """(1/ln 2) int_0^inf F_E(x) [1-F_B(x)] / (1+x) dx via QUADPACK."""
    value, _ = quad(lambda x: f_eve(x) * sf_bob(x) / (1.0 + x), 0.0, np.inf,
                    epsabs=1e-12, epsrel=1e-12, limit=500)
    return value / math.log(2.0)


def ks_statistic(samples: np.ndarray, cdf) -> float:
    """Kolmogorov-Smirnov distance between an empirical sample and a CDF."""
    ordered = np.sort(np.asarray(samples, dtype=float))
    n = ordered.size
    theory = np.array([cdf(v) for v in ordered])
    upper = np.arange(1, n + 1) / n - theory
    lower = theory - np.arange(0, n) / n
    return float(max(upper.max(), lower.max()))
