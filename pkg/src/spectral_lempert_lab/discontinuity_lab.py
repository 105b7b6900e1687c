# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.

"""Numerical certificates for the discontinuity of the Lempert function of Omega_n.

The perturbation B = A + delta X of a derogatory A is compared against cyclic approximants
A^j -> A: the spectral lower bound for l(A, B) stays of order delta^((m-r)k/m) while the
upper bounds for l(A^j, B) are of order delta^(m-r).
"""

import dataclasses
import logging
from dataclasses import dataclass
from typing import Any, Optional, Sequence

import numpy as np
import scipy.linalg

from spectral_lempert_lab.bounds import (
    BoundReport,
    bharali_lower,
    disc_search_upper,
    lift_upper_cyclic,
    safe_ball_radius,
    sandwich_report,
)
from spectral_lempert_lab.configuration import RunConfig
from spectral_lempert_lab.constants import MIN_CERTIFICATE_MARGIN, SHRINK_FACTOR, SHRINK_STEPS
from spectral_lempert_lab.errors import (
    AmbiguousClusteringError,
    CertificateFailedError,
    ChainInconclusiveError,
    InterpolationError,
    InvalidInputError,
    LiftVerificationError,
    NoFeasibleDiscError,
    NotCyclicError,
    OutsideBallError,
    SingularMatrixError,
)
from spectral_lempert_lab.gn_geometry import ball_upper_bound_from_origin
from spectral_lempert_lab.matrix_core import is_cyclic, sigma, spectral_data, spectral_radius
from spectral_lempert_lab.models import CMatrix, ClusterHint, SigmaPoint, as_cmatrix
from spectral_lempert_lab.payloads import DiscPayload, MatrixPayload, complex_payload
from spectral_lempert_lab.utilities import shrink_on_failure

logger = logging.getLogger(__name__)

_CUBE_ROOT_OF_UNITY = np.exp(2j * np.pi / 3)


@dataclass(frozen=True)
class PerturbationSpec:
    """Derogatory A = diag(A_0, A_1) and the direction X of its perturbation.

    A_0 is the m×m nilpotent Jordan matrix with ones at (j-1, j) for j in J.

    Attributes:
        n: Dimension.
        m: Size of the nilpotent block, 2 <= m <= n.
        J: 1-based superdiagonal positions of A_0 holding a 1, a subset of [2..m].
        delta: Size of the perturbation, non-negative.
        A1: Rows of the (n-m)×(n-m) block, invertible with spectral radius below 1.
        r: Rank of A_0.
        k: Multiplicity of 0 in the minimal polynomial of A_0.
    """

    n: int
    m: int
    J: tuple[int, ...]
    delta: float
    A1: tuple[tuple[complex, ...], ...] = ()

    def __post_init__(self) -> None:
        """Validate the perturbation data.

        Raises:
            InvalidInputError: If an invariant fails.
        """
        if not 2 <= self.m <= self.n:
            raise InvalidInputError(f"Need 2 <= m <= n, got m={self.m}, n={self.n}")
        if list(self.J) != sorted(set(self.J)) or any(not 2 <= j <= self.m for j in self.J):
            raise InvalidInputError(f"J must be a sorted subset of [2..{self.m}], got {self.J}")
        if self.r > self.m - 2:
            raise InvalidInputError(f"rank r={self.r} exceeds m - 2 = {self.m - 2}")
        if self.delta < 0:
            raise InvalidInputError(f"delta must be non-negative, got {self.delta}")
        block = self.a1
        if block.size:
            if abs(np.linalg.det(block)) < 1e-12:
                raise InvalidInputError("0 must not be an eigenvalue of A1")
            if spectral_radius(block) >= 1:
                raise InvalidInputError("A1 must lie in the spectral ball")

    @property
    def r(self) -> int:
        """Rank of A_0."""
        return len(self.J)

    @property
    def k(self) -> int:
        """Size of the largest Jordan block of A_0."""
        longest = run = 0
        for j in range(2, self.m + 1):
            run = run + 1 if j in self.J else 0
            longest = max(longest, run)
        return longest + 1

    @property
    def a1(self) -> CMatrix:
        """The A_1 block as a matrix."""
        size = self.n - self.m
        block = np.array(self.A1, dtype=np.complex128)
        if block.size != size * size:
            raise InvalidInputError(f"A1 must be {size}×{size}")
        return block.reshape(size, size)

    def hint(self) -> ClusterHint:
        """Return the exact cluster structure of A.

        Returns:
            0 with multiplicity m followed by the clusters of A_1.
        """
        clusters = [(0j, self.m)]
        if self.n > self.m:
            clusters += [(info.value, info.alg_mult) for info in spectral_data(self.a1).eigen]
        return clusters


@dataclass(frozen=True)
class DetIdentityCheck:
    """Comparison of sigma(B_0) with (0, ..., 0, ±delta^(m-r)).

    Attributes:
        residual: max of |sigma_j(B_0)| for j < m and ||sigma_m(B_0)| - delta^(m-r)|.
        observed_sign: Sign of sigma_m(B_0) / delta^(m-r), 0 when delta = 0.
    """

    residual: float
    observed_sign: int


@dataclass(frozen=True)
class CertifiedBound:
    """A bound with the method that produced it.

    Attributes:
        method: Name of the method.
        value: The bound.
    """

    method: str
    value: float


@dataclass(frozen=True)
class UpperWitness:
    """Upper bound for one member of the approximating family.

    Attributes:
        j: Index of the approximant, None for a single pair.
        method: Name of the method.
        value: The bound.
    """

    j: Optional[int]
    method: str
    value: float


@dataclass(frozen=True, eq=False)
class Certificate:
    """Strict inequality between a lower bound and a family of upper bounds.

    Attributes:
        A: First matrix of the pair.
        B: Second matrix of the pair.
        lower: The certified lower bound.
        upper_family: The upper bounds.
        conclusion: Whether lower exceeds every upper bound by the required margin.
        margin: lower minus the largest upper bound.
        parameter: The delta or epsilon the certificate was computed at.
    """

    A: CMatrix
    B: CMatrix
    lower: CertifiedBound
    upper_family: tuple[UpperWitness, ...]
    conclusion: bool
    margin: float
    parameter: float

    def to_dict(self) -> dict[str, Any]:
        """Return the JSON form.

        Returns:
            {pair, lower, uppers, conclusion, margin, parameter}.
        """
        return {
            "pair": {
                "A": MatrixPayload.from_matrix(self.A).dict(),
                "B": MatrixPayload.from_matrix(self.B).dict(),
            },
            "lower": dataclasses.asdict(self.lower),
            "uppers": [dataclasses.asdict(upper) for upper in self.upper_family],
            "conclusion": self.conclusion,
            "margin": self.margin,
            "parameter": self.parameter,
        }


def _conclude(  # pylint: disable=too-many-arguments, too-many-positional-arguments
    A: CMatrix,
    B: CMatrix,
    lower: CertifiedBound,
    uppers: Sequence[UpperWitness],
    required: float,
    parameter: float,
) -> Certificate:
    """Build the certificate and fail unless the gap reaches the required margin.

    Args:
        A: First matrix of the pair.
        B: Second matrix of the pair.
        lower: The certified lower bound.
        uppers: The upper bounds.
        required: Margin the gap must reach.
        parameter: The delta or epsilon used.

    Raises:
        CertificateFailedError: If the gap is below the required margin.

    Returns:
        The certificate.
    """
    margin = lower.value - max(upper.value for upper in uppers)
    certificate = Certificate(
        A, B, lower, tuple(uppers), margin >= required, margin, parameter
    )
    if not certificate.conclusion:
        raise CertificateFailedError(
            f"Gap {margin:.3e} below margin {required:.1e} at parameter {parameter}",
            certificate=certificate,
        )
    logger.info("Certificate holds at %s with margin %s", parameter, margin)
    return certificate


def _required_margin(cfg: RunConfig) -> float:
    """Return the margin a certificate must reach.

    Args:
        cfg: Run configuration.

    Returns:
        The larger of the configured and the minimum margin.
    """
    return max(cfg.margin, MIN_CERTIFICATE_MARGIN)


def build_perturbation(spec: PerturbationSpec) -> tuple[CMatrix, CMatrix, CMatrix]:
    """Build A = diag(A_0, A_1), the direction X and B = A + delta X.

    X has -1 at (j-1, j) for j in [2..m] outside J and 1 at (m, 1), all in the top-left block.

    Args:
        spec: The perturbation.

    Raises:
        OutsideBallError: If B leaves the spectral ball.

    Returns:
        A, X and B.
    """
    m = spec.m
    a0 = np.zeros((m, m), dtype=np.complex128)
    x0 = np.zeros((m, m), dtype=np.complex128)
    for j in range(2, m + 1):
        if j in spec.J:
            a0[j - 2, j - 1] = 1.0
        else:
            x0[j - 2, j - 1] = -1.0
    x0[m - 1, 0] = 1.0
    rest = np.zeros_like(spec.a1)
    A = scipy.linalg.block_diag(a0, spec.a1).astype(np.complex128)
    X = scipy.linalg.block_diag(x0, rest).astype(np.complex128)
    B = A + spec.delta * X
    if (radius := spectral_radius(B)) >= 1:
        raise OutsideBallError(f"B leaves the spectral ball, r(B) = {radius:.6f}")
    return A, X, B


def verify_det_identity(spec: PerturbationSpec) -> DetIdentityCheck:
    """Compare sigma(B_0) with (0, ..., 0, ±delta^(m-r)).

    det(tI - B_0) = t^m + (-1)^(m-r) delta^(m-r), so the expected sign of sigma_m(B_0) is
    (-1)^r; the sign is recorded rather than asserted.

    Args:
        spec: The perturbation.

    Returns:
        The residual and the observed sign.
    """
    _, _, B = build_perturbation(spec)
    m = spec.m
    coords = sigma(B[:m, :m]).array
    expected = spec.delta ** (m - spec.r)
    residual = max(
        float(np.max(np.abs(coords[:-1]), initial=0.0)), abs(abs(coords[-1]) - expected)
    )
    sign = int(np.sign(coords[-1].real)) if expected > 0 else 0
    logger.debug("Det identity m=%s r=%s: residual %s, sign %s", m, spec.r, residual, sign)
    return DetIdentityCheck(residual, sign)


def cyclic_approximants(spec: PerturbationSpec, j: int) -> CMatrix:
    """Return A^j = diag(A_0^j, A_1) with 1/j at every vacant superdiagonal slot of A_0.

    Args:
        spec: The perturbation.
        j: Index, at least 1.

    Raises:
        InvalidInputError: If j is below 1.

    Returns:
        The approximant.
    """
    if j < 1:
        raise InvalidInputError(f"j must be at least 1, got {j}")
    A, _, _ = build_perturbation(dataclasses.replace(spec, delta=0.0))
    for i in range(2, spec.m + 1):
        if i not in spec.J:
            A[i - 2, i - 1] = 1.0 / j
    return A


def lower_bound_exponent(spec: PerturbationSpec, deltas: Sequence[float]) -> float:
    """Fit the exponent of delta -> bharali_lower(A, A + delta X) on a log-log scale.

    The lower bound behaves like C delta^((m-r)k/m).

    Args:
        spec: The perturbation; its delta is ignored.
        deltas: At least two positive values of delta.

    Raises:
        InvalidInputError: If fewer than two positive deltas are given.

    Returns:
        The least-squares slope.
    """
    values = [float(delta) for delta in deltas if delta > 0]
    if len(values) < 2:
        raise InvalidInputError("Need at least two positive deltas")
    lowers = []
    for delta in values:
        A, _, B = build_perturbation(dataclasses.replace(spec, delta=delta))
        lowers.append(bharali_lower(A, B, declared_a=spec.hint()))
    return float(np.polyfit(np.log(values), np.log(lowers), 1)[0])


def _upper_for_approximant(  # pylint: disable=too-many-arguments, too-many-positional-arguments
    j: int,
    approximant: CMatrix,
    b0: CMatrix,
    ball: float,
    disc_result: Any,
    cfg: RunConfig,
) -> UpperWitness | None:
    """Bound l_{Omega_m}(A_0^j, B_0) by the ball or the lifted disc, whichever is smaller.

    Both endpoints are cyclic, so bounds for the sigma images bound the matrix pair.

    Args:
        j: Index of the approximant.
        approximant: A_0^j.
        b0: B_0.
        ball: Ball bound for l_{G_m}(0, sigma(B_0)), inf if unavailable.
        disc_result: (alpha, disc) from the disc search, or None.
        cfg: Run configuration.

    Returns:
        The witness, or None if neither bound applies.
    """
    try:
        cyclic = is_cyclic(approximant, tol=cfg.tol, seed=cfg.seed) and is_cyclic(
            b0, tol=cfg.tol, seed=cfg.seed
        )
    except AmbiguousClusteringError as exc:
        logger.warning("Cyclicity undecided for j=%s: %s", j, exc)
        return None
    if not cyclic:
        logger.warning("Approximant %s or B_0 is derogatory, no upper bound", j)
        return None
    options = [("ball", ball)]
    if disc_result is not None:
        alpha, disc = disc_result
        try:
            options.append(("lift", lift_upper_cyclic(approximant, b0, disc, alpha, cfg.tol)))
        except (
            NotCyclicError,
            InterpolationError,
            AmbiguousClusteringError,
            LiftVerificationError,
            SingularMatrixError,
        ) as exc:
            logger.warning("Lift bound skipped for j=%s: %s", j, exc)
    method, value = min(options, key=lambda option: option[1])
    if not np.isfinite(value):
        return None
    return UpperWitness(j, method, float(value))


def _certificate_at(
    delta: float, spec: PerturbationSpec, j_list: Sequence[int], cfg: RunConfig
) -> Certificate:
    """Compute the discontinuity certificate at one delta.

    Args:
        delta: The perturbation size.
        spec: The perturbation; its delta is replaced.
        j_list: Indices of the approximants.
        cfg: Run configuration.

    Raises:
        CertificateFailedError: If B leaves the ball, no upper bound applies, or the gap is
            too small.

    Returns:
        The certificate.
    """
    spec = dataclasses.replace(spec, delta=delta)
    try:
        A, _, B = build_perturbation(spec)
    except OutsideBallError as exc:
        raise CertificateFailedError(f"delta={delta} too large: {exc}") from exc
    lower = CertifiedBound(
        "bharali", bharali_lower(A, B, cfg.tol, declared_a=spec.hint(), seed=cfg.seed)
    )
    m = spec.m
    b0 = B[:m, :m]
    target = sigma(b0)
    try:
        ball = ball_upper_bound_from_origin(target, safe_ball_radius(m, cfg.directions, cfg.seed))
    except OutsideBallError as exc:
        logger.debug("Ball bound unavailable at delta=%s: %s", delta, exc)
        ball = float("inf")
    # sigma(A_0^j) = 0 for every j, so one search serves the whole family.
    try:
        disc_result = disc_search_upper(
            SigmaPoint.zero(m),
            target,
            cfg.disc_degree(m),
            cfg.restarts,
            cfg.seed,
            cfg.boundary_grid,
            cfg.tol,
            membership_margin=cfg.membership_margin,
        )
    except NoFeasibleDiscError as exc:
        logger.warning("Disc search failed at delta=%s: %s", delta, exc)
        disc_result = None
    uppers = []
    for j in j_list:
        approximant = cyclic_approximants(spec, j)[:m, :m]
        if (witness := _upper_for_approximant(j, approximant, b0, ball, disc_result, cfg)) is None:
            raise CertificateFailedError(f"No upper bound for approximant {j} at delta={delta}")
        uppers.append(witness)
    return _conclude(A, B, lower, uppers, _required_margin(cfg), delta)


def discontinuity_certificate(
    spec: PerturbationSpec,
    j_list: Sequence[int] = (10, 100),
    cfg: RunConfig | None = None,
    auto_shrink: bool = False,
) -> Certificate:
    """Certify l(A, B) > l(A^j, B) for the approximants A^j of a derogatory A.

    Args:
        spec: The perturbation.
        j_list: Indices of the approximants, each at least 1.
        cfg: Run configuration; defaults apply if omitted.
        auto_shrink: Halve delta on failure, up to 20 times.

    Raises:
        InvalidInputError: If j_list is empty or holds an index below 1.
        CertificateFailedError: If delta is zero or the certificate fails.

    Returns:
        The certificate.
    """
    cfg = cfg or RunConfig()
    if not j_list or min(j_list) < 1:
        raise InvalidInputError(f"Approximant indices must be at least 1, got {list(j_list)}")
    if spec.delta == 0:
        raise CertificateFailedError("delta = 0 makes B = A, nothing to certify")
    if auto_shrink:
        shrinking = shrink_on_failure(CertificateFailedError, SHRINK_STEPS, SHRINK_FACTOR)
        return shrinking(_certificate_at)(spec.delta, spec, j_list, cfg)
    return _certificate_at(spec.delta, spec, j_list, cfg)


def _example_5_1_at(eps: float, cfg: RunConfig) -> Certificate:
    """Compute the nilpotent-versus-diagonal certificate at one epsilon.

    Args:
        eps: Size of the diagonal entries.
        cfg: Run configuration.

    Returns:
        The certificate.
    """
    A = np.zeros((3, 3), dtype=np.complex128)
    A[1, 2] = 1.0
    values = eps * _CUBE_ROOT_OF_UNITY ** np.arange(3)
    B = np.diag(values)
    lower = CertifiedBound(
        "bharali",
        bharali_lower(
            A,
            B,
            cfg.tol,
            declared_a=[(0j, 3)],
            declared_b=[(value, 1) for value in values],
            seed=cfg.seed,
        ),
    )
    target = sigma(B)
    options = []
    try:
        radius = safe_ball_radius(3, cfg.directions, cfg.seed)
        options.append(("ball", ball_upper_bound_from_origin(target, radius)))
    except OutsideBallError as exc:
        logger.debug("Ball bound unavailable at eps=%s: %s", eps, exc)
    try:
        alpha, _ = disc_search_upper(
            SigmaPoint.zero(3),
            target,
            cfg.disc_degree(3),
            cfg.restarts,
            cfg.seed,
            cfg.boundary_grid,
            cfg.tol,
            membership_margin=cfg.membership_margin,
        )
        options.append(("disc_search", alpha))
    except NoFeasibleDiscError as exc:
        logger.warning("Disc search failed at eps=%s: %s", eps, exc)
    if not options:
        raise CertificateFailedError(f"No upper bound for l_G3 at eps={eps}")
    method, value = min(options, key=lambda option: option[1])
    return _conclude(
        A, B, lower, [UpperWitness(None, method, value)], _required_margin(cfg), eps
    )


def example_5_1(
    eps: float, cfg: RunConfig | None = None, auto_shrink: bool = False
) -> Certificate:
    """Certify l_{Omega_3}(A, B) >= eps^2 > l_{G_3}(sigma(A), sigma(B)).

    A is nilpotent with a single 1 at (2, 3) and B = diag(eps, j eps, j^2 eps), j a cube root
    of unity.

    Args:
        eps: Size of the diagonal entries, 0 < eps <= 0.2.
        cfg: Run configuration; defaults apply if omitted.
        auto_shrink: Halve eps on failure, up to 20 times.

    Raises:
        InvalidInputError: If eps is outside (0, 0.2].
        CertificateFailedError: If eps is zero or the certificate fails.

    Returns:
        The certificate.
    """
    cfg = cfg or RunConfig()
    if eps == 0:
        raise CertificateFailedError("eps = 0 makes sigma(B) = sigma(A), nothing to certify")
    if not 0 < eps <= 0.2:
        raise InvalidInputError(f"eps must lie in (0, 0.2], got {eps}")
    if auto_shrink:
        shrinking = shrink_on_failure(CertificateFailedError, SHRINK_STEPS, SHRINK_FACTOR)
        return shrinking(_example_5_1_at)(eps, cfg)
    return _example_5_1_at(eps, cfg)


def example_5_2(mu: complex, cfg: RunConfig | None = None) -> BoundReport:
    """Bound l_{Omega_3}(A, mu I + J_3) for the nilpotent A with a single 1 at (2, 3).

    The Carathéodory bound and the disc search both approach |mu|.

    Args:
        mu: Eigenvalue of B, |mu| < 1.
        cfg: Run configuration; defaults apply if omitted.

    Raises:
        InvalidInputError: If |mu| >= 1.

    Returns:
        The sandwich report.
    """
    if abs(mu) >= 1:
        raise InvalidInputError(f"|mu| must be below 1, got {abs(mu)}")
    A = np.zeros((3, 3), dtype=np.complex128)
    A[1, 2] = 1.0
    B = B_alpha(3, mu, 1.0)
    return sandwich_report(A, B, cfg, declared_a=[(0j, 3)], declared_b=[(complex(mu), 3)])


def B_alpha(n: int, mu: complex, alpha: complex) -> CMatrix:  # pylint: disable=invalid-name
    """Return mu I + alpha N with N the nilpotent shift.

    Args:
        n: Dimension.
        mu: Diagonal entry.
        alpha: Superdiagonal entry.

    Returns:
        The matrix.
    """
    return mu * np.eye(n, dtype=np.complex128) + alpha * np.eye(n, k=1, dtype=np.complex128)


def green_reduction(B: Any) -> CMatrix:
    """Return diag of the eigenvalues of B, repeated by multiplicity, sorted by real then imag.

    Eigenvalues are read off the complex Schur form, exact on triangular input.

    Args:
        B: Matrix of Omega_n.

    Raises:
        InvalidInputError: If B leaves the spectral ball.

    Returns:
        The diagonal matrix with the Green function of B.
    """
    triangular, _ = scipy.linalg.schur(as_cmatrix(B), output="complex")
    values = sorted(np.diag(triangular), key=lambda value: (value.real, value.imag))
    if max(abs(value) for value in values) >= 1:
        raise InvalidInputError("B must lie in the spectral ball")
    return np.diag(np.array(values, dtype=np.complex128))


def green_vs_lempert_chain(
    A: Any,
    mu: complex,
    alpha: complex,
    cfg: RunConfig | None = None,
    declared_a: ClusterHint | None = None,
) -> dict[str, Any]:
    """Certify l(A, mu I) > g(A, mu I) through l(A, B_alpha) >= g(A, B_alpha) = g(A, mu I).

    Args:
        A: Cyclic matrix with at least two distinct eigenvalues.
        mu: Eigenvalue of B_0 = mu I, |mu| < 1.
        alpha: Nonzero superdiagonal of B_alpha.
        cfg: Run configuration; defaults apply if omitted.
        declared_a: Optional exact cluster structure of A.

    Raises:
        InvalidInputError: If a precondition fails.
        NotCyclicError: If A is derogatory.
        ChainInconclusiveError: If the gap is below the margin.

    Returns:
        The chain report.
    """
    cfg = cfg or RunConfig()
    a = as_cmatrix(A)
    n = a.shape[0]
    if alpha == 0:
        raise InvalidInputError("alpha must be nonzero, B_0 is derogatory")
    if abs(mu) >= 1:
        raise InvalidInputError(f"|mu| must be below 1, got {abs(mu)}")
    if len(spectral_data(a, tol=cfg.tol, declared=declared_a, seed=cfg.seed).eigen) < 2:
        raise InvalidInputError("A needs at least two distinct eigenvalues")
    if not is_cyclic(a, tol=cfg.tol, seed=cfg.seed, declared=declared_a):
        raise NotCyclicError("A must be cyclic")
    hint_b = [(complex(mu), n)]
    b0 = B_alpha(n, mu, 0)
    b_alpha = B_alpha(n, mu, alpha)
    lower = bharali_lower(a, b0, cfg.tol, declared_a, hint_b, cfg.seed)
    disc_alpha, disc = disc_search_upper(
        sigma(a),
        sigma(b_alpha),
        cfg.disc_degree(n),
        cfg.restarts,
        cfg.seed,
        cfg.boundary_grid,
        cfg.tol,
        membership_margin=cfg.membership_margin,
    )
    upper = lift_upper_cyclic(a, b_alpha, disc, disc_alpha, cfg.tol, cfg.seed, declared_a, hint_b)
    green_residual = float(np.max(np.abs(green_reduction(b_alpha) - green_reduction(b0))))
    margin = lower - upper
    report = {
        "A": MatrixPayload.from_matrix(a).dict(),
        "mu": complex_payload(mu),
        "alpha": complex_payload(alpha),
        "lower_B0": {"method": "bharali", "value": lower},
        "upper_Balpha": {
            "method": "lift",
            "value": upper,
            "disc": DiscPayload.from_disc(disc).dict(),
        },
        "green_reduction_residual": green_residual,
        "margin": margin,
        "conclusion": margin >= _required_margin(cfg),
    }
    if not report["conclusion"]:
        raise ChainInconclusiveError(f"Chain gap {margin:.3e} below the margin", report)
    logger.info("l(A, B_0) > g(A, B_0) certified with margin %s", margin)
    return report
