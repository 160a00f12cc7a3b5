"""
Ergodic max-min-fair precoder design: sample average approximation (SAA) over
CSIT-error draws plus successive convex approximation (SCA).

Every per-user rate ln(1 + |a|²/b), with a = hᴴp_desired and b the interference
plus noise, is replaced around the current iterate (ā, b̄) by the concave minorant

    ln(1 + |ā|²/b̄) − |ā|²/b̄ + 2·Re(ā*·a)/b̄ − c·(|a|² + b),   c = |ā|² / (b̄·(b̄ + |ā|²))

which is tight at the iterate. Averaged over the draws this is a concave quadratic
in the precoders per user: const + 2·Re(vᴴp) − Σ_j p_jᴴ Q p_j with Q ⪰ 0, so each
subproblem is a second-order cone program in the real stacked variable
X = [Re P; Im P], kept in units of √P_total. Every iterate is a minorize-maximize
step, so the SAA objective cannot decrease up to solver accuracy; the best iterate
is kept regardless.
"""

from __future__ import annotations

import logging
from typing import List, NamedTuple, Optional, Tuple

import cvxpy as cp
import numpy as np
from scipy.linalg import eigh

from app.core.models.enums import Initialization, Strategy
from app.core.models.precoder import (
    AverageRateReport,
    OptimizationResult,
    OptimizerConfig,
    PrecoderSet,
)
from app.core.models.system import SystemConfig
from app.core.seeding import derive_seed
from app.core.sysmodel import split_common_rate

from .base import BasePrecoderDesigner, PrecoderError
from .rates import average_rates, default_error_variance, sample_channels

logger = logging.getLogger(__name__)

LN2 = np.log(2.0)
SOLVED = (cp.OPTIMAL, cp.OPTIMAL_INACCURATE)

# Seed keys below the caller's seed.
SAMPLE_KEY = 0
EVALUATION_KEY = 1
RANDOM_INIT_KEY = 2


class Surrogate(NamedTuple):
    """Per-user concave quadratic minorants (nats) of the average rates."""

    common_const: np.ndarray  # (K,)
    common_linear: np.ndarray  # (K, N_t)
    common_quadratic: np.ndarray  # (K, N_t, N_t)
    private_const: np.ndarray
    private_linear: np.ndarray
    private_quadratic: np.ndarray


def _stream_surrogate(
    channels: np.ndarray, desired: np.ndarray, interference: np.ndarray, noise_variance: float
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Average minorant of ln(1 + |desired|²/(interference + σ²)) per user."""
    power = np.abs(desired) ** 2
    b = interference + noise_variance
    ratio = power / b
    c = power / (b * (b + power))
    num_samples = channels.shape[0]
    const = (np.log1p(ratio) - ratio - c * noise_variance).mean(axis=0)
    linear = np.einsum("sk,snk->kn", desired / b, channels) / num_samples
    quadratic = np.einsum("sk,snk,smk->knm", c, channels, channels.conj()) / num_samples
    return const, linear, quadratic


def build_surrogate(
    channels: np.ndarray, precoder_matrix: np.ndarray, group_map: List[int], noise_variance: float
) -> Surrogate:
    amplitudes = np.einsum("snk,nj->skj", channels.conj(), precoder_matrix)
    gains = np.abs(amplitudes) ** 2
    private_total = gains[..., 1:].sum(axis=-1)
    own = np.asarray(group_map) + 1
    users = np.arange(len(group_map))
    own_amplitude = amplitudes[:, users, own]
    own_gain = gains[:, users, own]

    common = _stream_surrogate(channels, amplitudes[..., 0], private_total, noise_variance)
    private = _stream_surrogate(channels, own_amplitude, private_total - own_gain, noise_variance)
    return Surrogate(*common, *private)


def real_quadratic_factor(quadratic: np.ndarray) -> np.ndarray:
    """F with FᵀF = [[A, −B], [B, A]] for Q = A + jB ⪰ 0."""
    a, b = quadratic.real, quadratic.imag
    real_form = np.block([[a, -b], [b, a]])
    real_form = (real_form + real_form.T) / 2
    values, vectors = np.linalg.eigh(real_form)
    return (vectors * np.sqrt(np.clip(values, 0.0, None))).T


def real_vector(vector: np.ndarray) -> np.ndarray:
    return np.concatenate([vector.real, vector.imag])


def saa_objective(
    channels: np.ndarray, precoder_matrix: np.ndarray, config: SystemConfig
) -> Tuple[float, np.ndarray]:
    """
    Sample-average MMF value and its optimal common-rate split.

    Per-user rates are averaged over the draws; R_c = min_k of the averaged common
    rates and r_m = min over 𝒢_m of the averaged private rates.
    """
    amplitudes = np.einsum("snk,nj->skj", channels.conj(), precoder_matrix)
    gains = np.abs(amplitudes) ** 2
    private_total = gains[..., 1:].sum(axis=-1)
    own = np.asarray(config.group_map) + 1
    own_gain = gains[:, np.arange(config.num_users), own]
    sigma2 = config.noise_variance

    common = np.log2(1 + gains[..., 0] / (private_total + sigma2)).mean(axis=0)
    private = np.log2(1 + own_gain / (private_total - own_gain + sigma2)).mean(axis=0)
    group_private = np.array([private[g].min() for g in config.groups])
    common_rate = float(common.min()) if config.is_rsma else 0.0
    split = split_common_rate(common_rate, group_private)
    return float((split + group_private).min()), split


def scale_to_feasible(precoder_matrix: np.ndarray, config: SystemConfig) -> np.ndarray:
    """Scale P by the largest factor keeping every power constraint."""
    constraints = config.power_constraints
    antenna_power = np.sum(np.abs(precoder_matrix) ** 2, axis=1)
    used = constraints.shaping_diagonals @ antenna_power
    limits = np.asarray(constraints.limits)
    active = used > 0
    if not np.any(active):
        return precoder_matrix
    factor = np.sqrt(np.min(limits[active] / used[active]))
    return precoder_matrix * factor


def _dominant_direction(matrix: np.ndarray) -> np.ndarray:
    u, _, _ = np.linalg.svd(matrix, full_matrices=False)
    return u[:, 0]


def initial_precoders(
    estimate: np.ndarray, config: SystemConfig, initialization: Initialization, seed: int
) -> np.ndarray:
    """
    Starting point, scaled so the tightest constraint is met with equality.

    MRT_SVD: privates along each group's principal channel direction, p_c along
    the dominant left singular vector of Ĥ, power split 50/50 between them.
    """
    n_t, m = config.num_tx_antennas, config.num_groups
    if initialization == Initialization.RANDOM:
        rng = np.random.default_rng(seed)
        matrix = (rng.standard_normal((n_t, m + 1)) + 1j * rng.standard_normal((n_t, m + 1))) / np.sqrt(2)
    else:
        matrix = np.zeros((n_t, m + 1), dtype=np.complex128)
        matrix[:, 0] = _dominant_direction(estimate) * np.sqrt(0.5)
        for group, users in enumerate(config.groups):
            matrix[:, 1 + group] = _dominant_direction(estimate[:, users]) * np.sqrt(0.5 / m)
    if not config.is_rsma:
        matrix[:, 0] = 0
    return scale_to_feasible(matrix, config)


def leakage_precoders(estimate: np.ndarray, config: SystemConfig) -> np.ndarray:
    """
    Privates maximizing own-group gain over leakage to the other groups plus noise.

    p_m is the principal generalized eigenvector of (Ĥ_m Ĥ_mᴴ, Ĥ_{−m} Ĥ_{−m}ᴴ + σ²M/P·I);
    p_c and the power split follow the MRT_SVD start.
    """
    n_t, m = config.num_tx_antennas, config.num_groups
    loading = config.noise_variance * m / config.power_constraints.total_power
    matrix = np.zeros((n_t, m + 1), dtype=np.complex128)
    if config.is_rsma:
        matrix[:, 0] = _dominant_direction(estimate) * np.sqrt(0.5)
    for group, users in enumerate(config.groups):
        own = estimate[:, users]
        others = np.delete(estimate, users, axis=1)
        signal = own @ own.conj().T
        leakage = others @ others.conj().T + loading * np.eye(n_t)
        _, vectors = eigh(signal, leakage)
        direction = vectors[:, -1] / np.linalg.norm(vectors[:, -1])
        matrix[:, 1 + group] = direction * np.sqrt(0.5 / m)
    return scale_to_feasible(matrix, config)


class _SurrogateProgram:
    """
    The convex subproblem, compiled once and re-solved with new parameters.

    Precoders are scaled by 1/√P_total inside the program, so the variables stay
    O(1) at every operating point.
    """

    def __init__(self, config: SystemConfig, solver: str, fallback_solver: Optional[str] = None):
        n_t, k, m = config.num_tx_antennas, config.num_users, config.num_groups
        dim = 2 * n_t
        total_power = config.power_constraints.total_power
        self.scale = float(np.sqrt(total_power))
        self.solvers = [solver]
        if fallback_solver and fallback_solver != solver:
            self.solvers.append(fallback_solver)
        self.X = cp.Variable((dim, m + 1))
        self.split = cp.Variable(m, nonneg=True)
        self.t = cp.Variable()
        self.params = {
            name: [cp.Parameter(shape) for _ in range(k)]
            for name, shape in (
                ("common_const", ()),
                ("common_linear", dim),
                ("common_factor", (dim, dim)),
                ("private_const", ()),
                ("private_linear", dim),
                ("private_factor", (dim, dim)),
            )
        }
        p = self.params
        constraints = []
        for user in range(k):
            group = config.group_map[user]
            private_rate = (
                p["private_const"][user]
                + 2 * p["private_linear"][user] @ self.X[:, 1 + group]
                - cp.sum_squares(p["private_factor"][user] @ self.X[:, 1:])
            ) / LN2
            constraints.append(self.split[group] + private_rate >= self.t)
            if config.is_rsma:
                common_rate = (
                    p["common_const"][user]
                    + 2 * p["common_linear"][user] @ self.X[:, 0]
                    - cp.sum_squares(p["common_factor"][user] @ self.X)
                ) / LN2
                constraints.append(cp.sum(self.split) <= common_rate)
        if not config.is_rsma:
            constraints += [self.X[:, 0] == 0, self.split == 0]

        shaping = config.power_constraints.shaping_diagonals
        for diagonal, limit in zip(shaping, config.power_constraints.limits):
            weights = np.concatenate([diagonal, diagonal])[:, None]
            constraints.append(cp.sum(cp.multiply(weights, cp.square(self.X))) <= limit / total_power)

        self.problem = cp.Problem(cp.Maximize(self.t), constraints)

    def solve(self, surrogate: Surrogate) -> Tuple[Optional[np.ndarray], str]:
        p = self.params
        scale = self.scale
        for user in range(len(p["common_const"])):
            p["common_const"][user].value = float(surrogate.common_const[user])
            p["common_linear"][user].value = scale * real_vector(surrogate.common_linear[user])
            p["common_factor"][user].value = scale * real_quadratic_factor(surrogate.common_quadratic[user])
            p["private_const"][user].value = float(surrogate.private_const[user])
            p["private_linear"][user].value = scale * real_vector(surrogate.private_linear[user])
            p["private_factor"][user].value = scale * real_quadratic_factor(surrogate.private_quadratic[user])

        status = "not solved"
        for solver in self.solvers:
            try:
                self.problem.solve(solver=solver, warm_start=True)
            except cp.error.SolverError as exc:
                status = f"{solver}: {exc}"
                logger.debug("subproblem: %s", status)
                continue
            if self.problem.status in SOLVED and self.X.value is not None:
                n_t = self.X.shape[0] // 2
                solution = self.X.value[:n_t] + 1j * self.X.value[n_t:]
                return scale * solution, str(self.problem.status)
            status = f"{solver}: {self.problem.status}"
            logger.debug("subproblem: %s", status)
        return None, status


def finalize_precoders(
    matrix: np.ndarray,
    estimate: np.ndarray,
    config: SystemConfig,
    evaluation_samples: int,
    seed: int,
    error_variance: float,
) -> Tuple[PrecoderSet, AverageRateReport]:
    """
    PrecoderSet and average rates of a precoder matrix.

    For RSMA the common-rate split is set to the optimal split of the averaged rates.
    """
    precoders = PrecoderSet(
        common=matrix[:, 0],
        private=matrix[:, 1:],
        common_rate_split=np.zeros(config.num_groups),
        strategy=config.strategy,
    )
    eval_seed = derive_seed(seed, EVALUATION_KEY)
    rates = average_rates(precoders, estimate, config, evaluation_samples, eval_seed, error_variance)
    if config.is_rsma:
        split = split_common_rate(rates.common_rate, rates.private_rates)
        # Keep Σ C_m ≤ R̄_c under rounding.
        split *= min(1.0, rates.common_rate / max(split.sum(), np.finfo(float).tiny))
        precoders = precoders.with_split(split)
        rates = average_rates(precoders, estimate, config, evaluation_samples, eval_seed, error_variance)
    return precoders, rates


class SCAPrecoderDesigner(BasePrecoderDesigner):
    """Max-min-fair group-rate optimizer under imperfect CSIT."""

    def __init__(self, options: Optional[OptimizerConfig] = None):
        super().__init__("sca")
        self.options = options or OptimizerConfig()

    def design(
        self,
        estimate: np.ndarray,
        config: SystemConfig,
        seed: int,
        warm_start: Optional[PrecoderSet] = None,
        error_variance: Optional[float] = None,
    ) -> OptimizationResult:
        estimate = np.asarray(estimate, dtype=np.complex128)
        if estimate.shape != (config.num_tx_antennas, config.num_users):
            raise PrecoderError(
                f"estimate of shape {estimate.shape} does not match "
                f"N_t = {config.num_tx_antennas}, K = {config.num_users}"
            )
        if config.power_constraints.total_power <= 0 or min(config.power_constraints.limits) < 0:
            raise PrecoderError("power constraints leave no transmit power")

        variance = default_error_variance(config) if error_variance is None else error_variance
        opts = self.options
        channels = sample_channels(
            estimate, variance, opts.num_sample_channels, derive_seed(seed, SAMPLE_KEY)
        )
        program = _SurrogateProgram(config, opts.solver, opts.fallback_solver)

        starts = [
            initial_precoders(estimate, config, opts.initialization, derive_seed(seed, RANDOM_INIT_KEY))
        ]
        if opts.leakage_start:
            starts.append(leakage_precoders(estimate, config))
        if config.is_rsma and opts.sdma_warm_start:
            if warm_start is None:
                sdma = self.design(
                    estimate,
                    config.with_strategy(Strategy.SDMA),
                    seed,
                    error_variance=variance,
                )
                warm_start = sdma.precoders
            starts.extend(self._warm_starts(warm_start, estimate, config))

        best = None
        for start in starts:
            run = self._run(program, channels, start, config)
            if best is None or run[0] > best[0]:
                best = run
        value, matrix, trace, converged, status = best

        precoders, rates = finalize_precoders(
            matrix, estimate, config, opts.evaluation_samples, seed, variance
        )
        logger.info(
            "%s precoders: SAA objective %.4f, average-rate MMF %.4f bps/Hz after %d iterations",
            config.strategy,
            value,
            rates.mmf_value,
            len(trace) - 1,
        )
        return OptimizationResult(
            precoders=precoders,
            rates=rates,
            objective_trace=trace,
            converged=converged,
            solver_status=status,
        )

    def rescaled(
        self,
        precoders: PrecoderSet,
        estimate: np.ndarray,
        config: SystemConfig,
        seed: int,
        error_variance: Optional[float] = None,
    ) -> Optional[OptimizationResult]:
        if not self.options.grid_continuation:
            return None
        matrix = precoders.matrix.astype(np.complex128)
        if not config.is_rsma:
            matrix[:, 0] = 0
        if not np.any(matrix):
            return None
        variance = default_error_variance(config) if error_variance is None else error_variance
        precoders, rates = finalize_precoders(
            scale_to_feasible(matrix, config),
            np.asarray(estimate, dtype=np.complex128),
            config,
            self.options.evaluation_samples,
            seed,
            variance,
        )
        return OptimizationResult(
            precoders=precoders,
            rates=rates,
            objective_trace=[rates.mmf_value],
            converged=True,
            solver_status="rescaled",
        )

    def _warm_starts(
        self, sdma: PrecoderSet, estimate: np.ndarray, config: SystemConfig
    ) -> List[np.ndarray]:
        """The SDMA optimum as is, and with a weak common stream added so SCA can move p_c."""
        exact = sdma.matrix.astype(np.complex128)
        exact[:, 0] = 0
        perturbed = exact.copy()
        perturbed[:, 1:] *= np.sqrt(0.9)
        perturbed[:, 0] = _dominant_direction(estimate) * np.sqrt(0.1 * np.sum(np.abs(exact) ** 2))
        return [scale_to_feasible(exact, config), scale_to_feasible(perturbed, config)]

    def _run(
        self,
        program: _SurrogateProgram,
        channels: np.ndarray,
        start: np.ndarray,
        config: SystemConfig,
    ):
        opts = self.options
        current = start
        current_value, _ = saa_objective(channels, current, config)
        best_value, best_matrix = current_value, current
        trace = [current_value]
        status = "not solved"
        converged = False

        for iteration in range(1, opts.max_iterations + 1):
            surrogate = build_surrogate(channels, current, config.group_map, config.noise_variance)
            solution, status = program.solve(surrogate)
            if solution is None:
                logger.warning("SCA subproblem failed at iteration %d (%s)", iteration, status)
                break
            candidate = scale_to_feasible(solution, config)
            if not config.is_rsma:
                candidate[:, 0] = 0
            value, _ = saa_objective(channels, candidate, config)
            logger.debug("SCA iteration %d: objective %.6f", iteration, value)
            trace.append(value)
            if value > best_value:
                best_value, best_matrix = value, candidate
            improvement = value - current_value
            current, current_value = candidate, value
            if improvement < opts.convergence_epsilon:
                converged = True
                break
        else:
            logger.warning(
                "SCA did not converge within %d iterations (objective %.6f)",
                opts.max_iterations,
                best_value,
            )

        return best_value, best_matrix, trace, converged, status


def optimize_mmf(
    estimate: np.ndarray,
    config: SystemConfig,
    options: OptimizerConfig,
    seed: int,
    error_variance: Optional[float] = None,
    warm_start: Optional[PrecoderSet] = None,
) -> OptimizationResult:
    """Optimize precoders for config.strategy on the estimate Ĥ."""
    if options.strategy != config.strategy:
        config = config.with_strategy(options.strategy)
    return SCAPrecoderDesigner(options).design(
        estimate, config, seed, warm_start=warm_start, error_variance=error_variance
    )
