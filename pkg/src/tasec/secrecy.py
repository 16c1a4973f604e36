"""Instantaneous and average secrecy capacity, by three routes.

For the sub-optimal schemes the average secrecy capacity (ASC) is available
in closed form through the scaled exponential-integral difference

    asc_btas = (1/ln 2) sum_{k=1..M} C(M,k) (-1)^(k+1)
               delta_e(k/gamma_b0, 1/gamma_e0 + k/gamma_b0)
    asc_etas = (1/ln 2) delta_e(1/gamma_b0, M/gamma_e0 + 1/gamma_b0)

and, independently, through numerical quadrature of

    asc = (1/ln 2) int_0^inf F_E(x) [1 - F_B(x)] / (1 + x) dx

with the per-scheme link CDFs. The optimal scheme couples the two links, so
it is evaluated by Monte Carlo only. MC runs are chunked onto derived
substreams so the estimate is a pure function of (scenario, scheme, trials,
seed, stream) no matter how many workers execute the chunks.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .channel import RngStream, Scenario, draw_gain_blocks
from .errors import UnsupportedSchemeError
from .expint import delta_e
from .quadrature import integrate_half_line
from .selection import TasScheme, select_indices

_LN2 = math.log(2.0)

# Trials per substream chunk; fixed so that results never depend on how the
# chunks are scheduled across workers.
MC_CHUNK_SIZE = 65_536

# Largest antenna count accepted by the alternating closed-form sum.
MAX_CLOSED_FORM_ANTENNAS = 64

# Fault-injection hook for the self-check suite: flipping this to -1.0
# negates every term of the alternating sum and must make verification fail.
_BTAS_TERM_SIGN = 1.0

QUAD_ABS_TOL = 1e-10
QUAD_MAX_INTERVALS = 2000


class Method(str, Enum):
    CLOSED = "closed"
    QUAD = "quad"
    MC = "mc"


@dataclass(frozen=True)
class AscEstimate:
    """An ASC value in bits/s/Hz; MC estimates also carry their trial count
    and standard error."""

    value: float
    method: Method
    trials: int | None = None
    std_error: float | None = None

    def __post_init__(self):
        if not (math.isfinite(self.value) and self.value >= 0.0):
            raise ValueError(f"ASC must be finite and >= 0, got {self.value!r}")
        if self.method is Method.MC:
            if self.trials is None or self.trials < 1:
                raise ValueError("MC estimates need trials >= 1")
            if self.std_error is None or not (self.std_error >= 0.0):
                raise ValueError("MC estimates need std_error >= 0")
        elif self.trials is not None or self.std_error is not None:
            raise ValueError(f"{self.method.value} estimates carry no trials/std_error")


def instantaneous_cs(gamma_b: float, gamma_e: float) -> float:
    """[log2(1+gamma_b) - log2(1+gamma_e)]^+ as one log of the SNR ratio."""
    for name, g in (("gamma_b", gamma_b), ("gamma_e", gamma_e)):
        if not (isinstance(g, (int, float)) and not isinstance(g, bool)) \
                or math.isnan(g) or math.isinf(g) or g < 0:
            raise ValueError(f"{name} must be finite and >= 0, got {g!r}")
    return max(0.0, math.log2((1.0 + gamma_b) / (1.0 + gamma_e)))


# ----------------------------------------------------------------------------
# Monte Carlo
# ----------------------------------------------------------------------------

def _chunk_layout(trials: int) -> list[tuple[int, int]]:
    """(chunk_index, chunk_size) pairs; full chunks plus a final partial one."""
    full, rest = divmod(trials, MC_CHUNK_SIZE)
    layout = [(i, MC_CHUNK_SIZE) for i in range(full)]
    if rest:
        layout.append((full, rest))
    return layout


def _chunk_moments(scenario: Scenario, scheme: TasScheme, rng: RngStream,
                   index: int, size: int) -> tuple[int, float, float]:
    """Secrecy-capacity sample moments (n, mean, sum of squared deviations)
    for one chunk, drawn from the substream derived for `index`."""
    stream = rng.substream(index)
    bob, eve = draw_gain_blocks(scenario, stream, size)
    idx = select_indices(scheme, scenario, bob, eve, rng=stream)
    rows = np.arange(size)
    gamma_b = scenario.gamma_b0 * bob[rows, idx]
    gamma_e = scenario.gamma_e0 * eve[rows, idx]
    cs = np.maximum(0.0, np.log2((1.0 + gamma_b) / (1.0 + gamma_e)))
    mean = float(cs.mean())
    m2 = float(np.sum((cs - mean) ** 2))
    return size, mean, m2


def _merge_moments(a: tuple[int, float, float],
                   b: tuple[int, float, float]) -> tuple[int, float, float]:
    """Chan's parallel update of (n, mean, m2); exact merge of two chunks."""
    na, mean_a, m2a = a
    nb, mean_b, m2b = b
    n = na + nb
    delta = mean_b - mean_a
    mean = mean_a + delta * nb / n
    m2 = m2a + m2b + delta * delta * na * nb / n
    return n, mean, m2


def mc_asc(scenario: Scenario, scheme: TasScheme, trials: int,
           rng: RngStream, threads: int = 1) -> AscEstimate:
    """Monte Carlo ASC: average the clamped secrecy capacity at the selected
    antenna over `trials` independent fading realizations.

    Chunks of MC_CHUNK_SIZE trials run on substreams derived from the chunk
    index, and their moments merge in chunk order, so the estimate does not
    depend on `threads`.
    """
    if not isinstance(trials, int) or isinstance(trials, bool) or trials < 2:
        raise ValueError(f"trials must be an integer >= 2, got {trials!r}")
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads!r}")
    scheme = TasScheme(scheme)

    layout = _chunk_layout(trials)

    def job(entry):
        index, size = entry
        return _chunk_moments(scenario, scheme, rng, index, size)

    if threads > 1 and len(layout) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(job, layout))
    else:
        results = [job(entry) for entry in layout]

    total = results[0]
    for chunk in results[1:]:
        total = _merge_moments(total, chunk)
    n, mean, m2 = total
    std_error = math.sqrt(m2 / (n - 1)) / math.sqrt(n)
    return AscEstimate(value=mean, method=Method.MC, trials=trials,
                       std_error=std_error)


def asc_otas_mc(scenario: Scenario, trials: int, rng: RngStream,
                threads: int = 1) -> AscEstimate:
    """ASC of the optimal scheme. Monte Carlo is the only evaluation path
    here: the selected antenna's two SNRs are dependent, which breaks both
    the product-form quadrature and the closed forms."""
    return mc_asc(scenario, TasScheme.OTAS, trials, rng, threads=threads)


# ----------------------------------------------------------------------------
# Quadrature of the general ASC integral
# ----------------------------------------------------------------------------

def _integrand_factories(scenario: Scenario, scheme: TasScheme):
    """Per-scheme (F_E, 1-F_B) callables, vectorized and cancellation-safe."""
    gb, ge = scenario.gamma_b0, scenario.gamma_e0
    m = scenario.num_antennas

    def cdf_exp(x, beta):
        return -np.expm1(-x / beta)

    def sf_exp(x, beta):
        return np.exp(-x / beta)

    def sf_max(x, beta):
        # 1 - (1 - exp(-x/beta))^m without cancellation in the deep tail.
        with np.errstate(divide="ignore"):
            return -np.expm1(m * np.log1p(-np.exp(-x / beta)))

    def cdf_min(x, beta):
        return -np.expm1(-(m / beta) * x)

    if scheme is TasScheme.BTAS:
        return (lambda x: cdf_exp(x, ge)), (lambda x: sf_max(x, gb))
    if scheme is TasScheme.ETAS:
        return (lambda x: cdf_min(x, ge)), (lambda x: sf_exp(x, gb))
    if scheme is TasScheme.RANDOM:
        return (lambda x: cdf_exp(x, ge)), (lambda x: sf_exp(x, gb))
    raise UnsupportedSchemeError(
        f"no product-form CDFs for scheme {scheme.value!r}: the selected "
        "antenna's SNRs are dependent")


def asc_quadrature(scenario: Scenario, scheme: TasScheme) -> AscEstimate:
    """ASC by adaptive quadrature of the product-form integral.

    Valid for the schemes whose selected-antenna SNRs stay independent
    (btas, etas, random); the optimal scheme raises UnsupportedSchemeError.
    """
    scheme = TasScheme(scheme)
    f_eve, sf_bob = _integrand_factories(scenario, scheme)

    def integrand(x):
        return f_eve(x) * sf_bob(x) / (1.0 + x)

    value = integrate_half_line(integrand, abs_tol=QUAD_ABS_TOL,
                                max_intervals=QUAD_MAX_INTERVALS) / _LN2
    return AscEstimate(value=max(0.0, value), method=Method.QUAD)


# ----------------------------------------------------------------------------
# Closed forms
# ----------------------------------------------------------------------------

def asc_btas_closed(scenario: Scenario) -> AscEstimate:
    """Closed-form ASC of legitimate-based selection (alternating binomial
    sum over delta_e terms).

    The sum is well conditioned at practical antenna counts; beyond
    MAX_CLOSED_FORM_ANTENNAS the alternating binomials would start to eat
    the mantissa, so that is rejected.
    """
    m = scenario.num_antennas
    if m > MAX_CLOSED_FORM_ANTENNAS:
        raise ValueError(
            f"closed form limited to M <= {MAX_CLOSED_FORM_ANTENNAS}, got {m}")
    inv_gb = 1.0 / scenario.gamma_b0
    inv_ge = 1.0 / scenario.gamma_e0
    binom = 1.0
    total = 0.0
    for k in range(1, m + 1):
        binom *= (m - k + 1) / k
        sign = _BTAS_TERM_SIGN if k % 2 == 1 else -_BTAS_TERM_SIGN
        total += binom * sign * delta_e(k * inv_gb, inv_ge + k * inv_gb)
    # Clamp: for near-degenerate SNRs the sum of correctly-rounded terms can
    # land an ulp below zero.
    return AscEstimate(value=max(0.0, total / _LN2), method=Method.CLOSED)


def asc_etas_closed(scenario: Scenario) -> AscEstimate:
    """Closed-form ASC of eavesdropper-based selection.

    Same shape as the single-antenna expression with the eavesdropper's
    average SNR cut by the antenna count M.
    """
    inv_gb = 1.0 / scenario.gamma_b0
    value = delta_e(inv_gb, scenario.num_antennas / scenario.gamma_e0 + inv_gb) / _LN2
    return AscEstimate(value=max(0.0, value), method=Method.CLOSED)
