# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.

"""Lower and upper bounds for the Lempert functions of Omega_n and G_n."""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional

import numpy as np
import numpy.typing as npt
from numpy.polynomial import polynomial as P
from scipy.optimize import linear_sum_assignment, minimize

from spectral_lempert_lab.configuration import RunConfig
from spectral_lempert_lab.constants import (
    DEFAULT_BOUNDARY_GRID,
    DEFAULT_RESTARTS,
    DEFAULT_SEED,
    DEFAULT_TOL,
    DISC_MEMBERSHIP_MARGIN,
    INTERPOLATION_TOL,
    LIFT_VERIFY_RADIUS,
    MEMBERSHIP_MARGIN,
    PENALTY_GROWTH,
    PENALTY_STAGES,
    SANDWICH_SLACK,
)
from spectral_lempert_lab.errors import (
    AmbiguousClusteringError,
    DegenerateDenominatorError,
    InconsistentSandwichError,
    InterpolationError,
    InvalidInputError,
    LiftVerificationError,
    NoFeasibleDiscError,
    NotCyclicError,
    OutsideBallError,
    SingularMatrixError,
)
from spectral_lempert_lab.gn_geometry import (
    ball_radius_in_Gn,
    ball_upper_bound_from_origin,
    caratheodory_lb_G3,
    certified_inscribed_radius,
    in_Gn,
    in_Gn_batch,
    pseudo_hyperbolic,
    roots_of_point,
    sigma_coefficient_table,
)
from spectral_lempert_lab.lifting import MatrixDisc, conjugated_disc, verify_matrix_disc
from spectral_lempert_lab.matrix_core import (
    companion,
    is_cyclic,
    max_root_moduli,
    sigma,
    sigma_of_roots,
    spectral_data,
)
from spectral_lempert_lab.models import (
    AnalyticDisc,
    CMatrix,
    ClusterHint,
    SigmaPoint,
    SpectralData,
    as_cmatrix,
)
from spectral_lempert_lab.payloads import DiscPayload, MatrixPayload, PointPayload

logger = logging.getLogger(__name__)

_ALPHA_FLOOR = 1e-12
_ALPHA_CEILING = 1 - 1e-9
# Boundary root moduli are pushed below 1 - _HINGE_MARGIN, inside the verified margin.
_HINGE_MARGIN = 5e-5
_INITIAL_WEIGHT = 100.0
_STAGE_EVALUATIONS = 400
_LINE_BISECTION_STEPS = 60
# Diagonal seeds start this fraction above the bottleneck value.
_SEED_SLACK = 1e-3
_PERTURBATION = 0.05
_ORIGIN_TOL = 1e-12


class BoundKind(str, Enum):
    """Direction of a bound.

    Attributes:
        LOWER: Lower bound.
        UPPER: Upper bound.
    """

    LOWER = "lower"
    UPPER = "upper"


class Space(str, Enum):
    """Domain whose Lempert function a bound refers to.

    Attributes:
        OMEGA: The spectral ball Omega_n.
        G: The symmetrized polydisc G_n.
    """

    OMEGA = "Omega"
    G = "G"


class Verdict(str, Enum):
    """Outcome of a sandwich report.

    Attributes:
        GAP: A lower bound on Omega_n exceeds an upper bound on G_n.
        CONSISTENT: No such gap was observed.
    """

    GAP = "gap"
    CONSISTENT = "consistent"


@dataclass(frozen=True)
class BoundEntry:
    """One named bound.

    Attributes:
        name: Name of the method.
        value: The bound.
        kind: Lower or upper.
        space: Omega_n or G_n.
        witness: Data backing an upper bound.
    """

    name: str
    value: float
    kind: BoundKind
    space: Space
    witness: Optional[dict[str, Any]] = None

    def to_dict(self) -> dict[str, Any]:
        """Return the JSON form.

        Returns:
            {name, value, kind, space, witness?}.
        """
        payload: dict[str, Any] = {
            "name": self.name,
            "value": self.value,
            "kind": self.kind.value,
            "space": self.space.value,
        }
        if self.witness is not None:
            payload["witness"] = self.witness
        return payload


@dataclass(frozen=True)
class BoundReport:
    """All bounds computed for one pair of matrices.

    Attributes:
        pair: Description of the pair.
        entries: The bounds.
        verdict: Gap or consistent.
        lower_bounds: Lower bounds by name.
        upper_bounds: Upper bounds by name.
    """

    pair: dict[str, Any]
    entries: tuple[BoundEntry, ...]
    verdict: Verdict

    @classmethod
    def assemble(cls, pair: dict[str, Any], entries: tuple[BoundEntry, ...]) -> "BoundReport":
        """Check the bounds against each other and build the report.

        Lower bounds on G_n are compared with every upper bound; lower bounds on Omega_n with
        upper bounds on Omega_n. An Omega_n lower bound above a G_n upper bound is a gap.

        Args:
            pair: Description of the pair.
            entries: The bounds.

        Raises:
            InconsistentSandwichError: If a comparable lower bound exceeds an upper bound.

        Returns:
            The report.
        """
        gap = False
        lowers = [entry for entry in entries if entry.kind is BoundKind.LOWER]
        uppers = [entry for entry in entries if entry.kind is BoundKind.UPPER]
        for lower in lowers:
            for upper in uppers:
                if lower.value <= upper.value + SANDWICH_SLACK:
                    continue
                if lower.space is Space.OMEGA and upper.space is Space.G:
                    gap = True
                    continue
                raise InconsistentSandwichError(
                    f"Lower bound {lower.name}={lower.value:.6e} exceeds upper bound "
                    f"{upper.name}={upper.value:.6e}",
                    lower=lower.name,
                    upper=upper.name,
                )
        return cls(pair, entries, Verdict.GAP if gap else Verdict.CONSISTENT)

    @property
    def lower_bounds(self) -> dict[str, float]:
        """Lower bounds by name."""
        return {e.name: e.value for e in self.entries if e.kind is BoundKind.LOWER}

    @property
    def upper_bounds(self) -> dict[str, float]:
        """Upper bounds by name."""
        return {e.name: e.value for e in self.entries if e.kind is BoundKind.UPPER}

    def to_dict(self) -> dict[str, Any]:
        """Return the JSON form.

        Returns:
            {pair, bounds, verdict}.
        """
        return {
            "pair": self.pair,
            "bounds": [entry.to_dict() for entry in self.entries],
            "verdict": self.verdict.value,
        }


def _check_in_omega(data: SpectralData, label: str) -> None:
    """Reject matrices outside the spectral ball.

    Args:
        data: Spectral data of the matrix.
        label: Name of the matrix for the message.

    Raises:
        InvalidInputError: If the spectral radius is at least 1.
    """
    if data.spectral_radius >= 1:
        raise InvalidInputError(f"{label} is outside Omega_n, r = {data.spectral_radius}")


def _bharali_branch(first: SpectralData, second: SpectralData) -> float:
    """Return max over mu in sp(second) of prod over lam in sp(first) of p(mu, lam)^m(lam).

    Args:
        first: Spectrum whose minimal-polynomial multiplicities are the exponents.
        second: Spectrum the maximum runs over.

    Returns:
        The branch value.
    """
    return max(
        math.prod(
            pseudo_hyperbolic(mu.value, lam.value) ** lam.min_mult for lam in first.eigen
        )
        for mu in second.eigen
    )


def bharali_lower(  # pylint: disable=too-many-arguments, too-many-positional-arguments
    A: Any,
    B: Any,
    tol: float = DEFAULT_TOL,
    declared_a: ClusterHint | None = None,
    declared_b: ClusterHint | None = None,
    seed: int = DEFAULT_SEED,
) -> float:
    """Evaluate the spectral lower bound for l_{Omega_n}(A, B).

    Args:
        A: Matrix of Omega_n.
        B: Matrix of Omega_n.
        tol: Clustering tolerance.
        declared_a: Optional exact cluster structure of A.
        declared_b: Optional exact cluster structure of B.
        seed: Seed for root finding.

    Raises:
        InvalidInputError: If the matrices differ in size or leave Omega_n.

    Returns:
        The larger of the two products, a lower bound for l_{Omega_n}(A, B).
    """
    a, b = as_cmatrix(A), as_cmatrix(B)
    if a.shape != b.shape:
        raise InvalidInputError(f"Shapes differ: {a.shape} and {b.shape}")
    data_a = spectral_data(a, tol=tol, declared=declared_a, seed=seed)
    data_b = spectral_data(b, tol=tol, declared=declared_b, seed=seed)
    _check_in_omega(data_a, "A")
    _check_in_omega(data_b, "B")
    return max(_bharali_branch(data_a, data_b), _bharali_branch(data_b, data_a))


def _bottleneck_matching(
    lam: npt.NDArray[np.complex128], mu: npt.NDArray[np.complex128]
) -> tuple[float, npt.NDArray[np.intp]]:
    """Match lam to mu minimising the largest pseudohyperbolic distance.

    Args:
        lam: Points of the unit disc.
        mu: Points of the unit disc, as many as lam.

    Returns:
        The bottleneck value and, for each lam_i, the index of its partner in mu.
    """
    costs = np.array([[pseudo_hyperbolic(a, b) for b in mu] for a in lam])
    levels = np.unique(costs)

    def matching(threshold: float) -> npt.NDArray[np.intp] | None:
        """Return a perfect matching within the threshold, if one exists.

        Args:
            threshold: Largest admissible distance.

        Returns:
            Partner indices, or None.
        """
        blocked = (costs > threshold).astype(np.float64)
        rows, columns = linear_sum_assignment(blocked)
        return columns[np.argsort(rows)] if blocked[rows, columns].sum() == 0 else None

    low, high = 0, len(levels) - 1
    while low < high:
        middle = (low + high) // 2
        if matching(levels[middle]) is None:
            low = middle + 1
        else:
            high = middle
    partners = matching(levels[low])
    assert partners is not None  # nosec B101
    return float(levels[low]), partners


def diagonal_upper(s: SigmaPoint, t: SigmaPoint, tol: float = DEFAULT_TOL) -> float:
    """Upper-bound l_{G_n}(s, t) with discs sigma(diag(m_1, ..., m_n)) of Möbius maps m_i.

    Args:
        s: Point of G_n.
        t: Point of G_n.
        tol: Root residual target.

    Raises:
        InvalidInputError: If a point is outside G_n or the dimensions differ.

    Returns:
        min over matchings of max_i pseudo_hyperbolic(lambda_i, mu_pi(i)).
    """
    if s.n != t.n:
        raise InvalidInputError(f"Dimensions differ: {s.n} and {t.n}")
    if not (in_Gn(s, margin=0.0, tol=tol) and in_Gn(t, margin=0.0, tol=tol)):
        raise InvalidInputError("Both points must lie in G_n")
    value, _ = _bottleneck_matching(
        np.array(roots_of_point(s, tol)), np.array(roots_of_point(t, tol))
    )
    return value


class _DiscProblem:
    """Penalised search for a polynomial disc through s at 0 and t at alpha.

    Parameters are alpha followed by the real and imaginary parts of the coefficients of
    order 1 to degree; the constant terms are pinned to s.
    """

    def __init__(self, s: SigmaPoint, t: SigmaPoint, degree: int, boundary_grid: int, tol: float):
        """Construct the problem.

        Args:
            s: Value at 0.
            t: Value at alpha.
            degree: Degree cap of the coordinates.
            boundary_grid: Number of unit-circle nodes checked for membership.
            tol: Root residual target of the membership check.
        """
        self.s = s.array
        self.t = t.array
        self.n = s.n
        self.degree = degree
        self.tol = tol
        self.nodes = np.exp(2j * np.pi * np.arange(boundary_grid) / boundary_grid)

    def unpack(self, x: npt.NDArray[np.float64]) -> tuple[float, npt.NDArray[np.complex128]]:
        """Split a parameter vector.

        Args:
            x: Parameters.

        Returns:
            alpha, clipped into (0, 1), and the coefficient table.
        """
        alpha = float(np.clip(x[0], _ALPHA_FLOOR, _ALPHA_CEILING))
        size = self.n * self.degree
        table = np.empty((self.n, self.degree + 1), dtype=np.complex128)
        table[:, 0] = self.s
        table[:, 1:] = (x[1 : 1 + size] + 1j * x[1 + size :]).reshape(self.n, self.degree)
        return alpha, table

    @staticmethod
    def pack(alpha: float, table: npt.NDArray[np.complex128]) -> npt.NDArray[np.float64]:
        """Flatten alpha and a coefficient table.

        Args:
            alpha: The node.
            table: Coefficient table.

        Returns:
            Parameters.
        """
        free = table[:, 1:].ravel()
        return np.concatenate(([alpha], free.real, free.imag))

    def project(self, alpha: float, table: npt.NDArray[np.complex128]) -> Any:
        """Solve phi(alpha) = t for the first-order coefficients.

        Args:
            alpha: The node.
            table: Coefficient table.

        Returns:
            The projected table.
        """
        projected = table.copy()
        higher = projected[:, 2:] @ alpha ** np.arange(2, self.degree + 1)
        projected[:, 1] = (self.t - self.s - higher) / alpha
        return projected

    def line(self, alpha: float) -> npt.NDArray[np.complex128]:
        """Return the straight-line disc s + (t - s) zeta / alpha.

        Args:
            alpha: The node.

        Returns:
            Coefficient table.
        """
        table = np.zeros((self.n, self.degree + 1), dtype=np.complex128)
        table[:, 0] = self.s
        table[:, 1] = (self.t - self.s) / alpha
        return table

    def boundary_moduli(self, table: npt.NDArray[np.complex128]) -> npt.NDArray[np.float64]:
        """Return the largest root modulus of the disc polynomial at each boundary node.

        Args:
            table: Coefficient table.

        Returns:
            One modulus per node.
        """
        values = np.asarray(P.polyval(self.nodes, table.T)).T
        return max_root_moduli(sigma_coefficient_table(values))

    def objective(self, x: npt.NDArray[np.float64], weight: float) -> float:
        """Return alpha plus the weighted interpolation and membership penalties.

        Args:
            x: Parameters.
            weight: Penalty weight of the current stage.

        Returns:
            The objective value.
        """
        alpha, table = self.unpack(x)
        residual = P.polyval(alpha, table.T) - self.t
        hinge = np.maximum(0.0, self.boundary_moduli(table) - (1 - _HINGE_MARGIN))
        penalty = np.sum(np.abs(residual) ** 2) + np.sum(hinge**2) + (x[0] - alpha) ** 2
        value = alpha + weight * float(penalty)
        return value if math.isfinite(value) else math.inf

    def is_feasible(self, alpha: float, table: npt.NDArray[np.complex128]) -> bool:
        """Re-check a disc independently of the penalties.

        Args:
            alpha: The node.
            table: Coefficient table.

        Returns:
            Whether both interpolation residuals are within tolerance and every boundary value
            lies in G_n with the disc margin.
        """
        if not 0 < alpha < 1 or not np.all(np.isfinite(table)):
            return False
        at_alpha = np.max(np.abs(P.polyval(alpha, table.T) - self.t))
        at_zero = np.max(np.abs(table[:, 0] - self.s))
        if max(at_alpha, at_zero) > INTERPOLATION_TOL:
            return False
        values = np.asarray(P.polyval(self.nodes, table.T)).T
        return bool(np.all(in_Gn_batch(values, margin=DISC_MEMBERSHIP_MARGIN, tol=self.tol)))


def _mobius_seed(
    problem: _DiscProblem, s: SigmaPoint, t: SigmaPoint, tol: float
) -> tuple[float, npt.NDArray[np.complex128]] | None:
    """Truncate sigma(diag(m_1, ..., m_n)) for the bottleneck matching of the roots.

    Args:
        problem: The search problem.
        s: Value at 0.
        t: Value at alpha.
        tol: Root residual target.

    Returns:
        alpha and a projected coefficient table, or None if alpha would reach 1.
    """
    lam = np.array(roots_of_point(s, tol))
    mu = np.array(roots_of_point(t, tol))
    bottleneck, partners = _bottleneck_matching(lam, mu)
    alpha = max(bottleneck, _ALPHA_FLOOR) / (1 - _SEED_SLACK)
    if alpha >= _ALPHA_CEILING:
        return None
    target = mu[partners]
    scale = (lam - target) / (1 - np.conj(lam) * target) / alpha
    samples = max(64, 4 * (problem.degree + 1))
    circle = np.exp(2j * np.pi * np.arange(samples) / samples)
    z = scale[None, :] * circle[:, None]
    diagonal = (lam[None, :] - z) / (1 - np.conj(lam)[None, :] * z)
    coefficients = np.fft.fft(sigma_of_roots(diagonal), axis=0) / samples
    table = coefficients[: problem.degree + 1].T.copy()
    table[:, 0] = s.array
    return alpha, problem.project(alpha, table)


def _line_seed(problem: _DiscProblem) -> tuple[float, npt.NDArray[np.complex128]] | None:
    """Return the straight-line disc with the smallest alpha keeping the boundary inside.

    Args:
        problem: The search problem.

    Returns:
        alpha and the coefficient table, or None if no alpha below 1 fits.
    """

    def fits(alpha: float) -> bool:
        """Check the boundary of the line disc.

        Args:
            alpha: The node.

        Returns:
            Whether every boundary root modulus is below the hinge level.
        """
        return bool(np.max(problem.boundary_moduli(problem.line(alpha))) <= 1 - _HINGE_MARGIN)

    if not fits(_ALPHA_CEILING):
        return None
    low, high = 0.0, _ALPHA_CEILING
    for _ in range(_LINE_BISECTION_STEPS):
        middle = (low + high) / 2
        if fits(middle):
            high = middle
        else:
            low = middle
    return high, problem.line(high)


def _descend(
    problem: _DiscProblem, start: npt.NDArray[np.float64]
) -> tuple[float, npt.NDArray[np.complex128]]:
    """Run the staged Nelder-Mead descent from one starting point.

    Args:
        problem: The search problem.
        start: Starting parameters.

    Returns:
        alpha and the projected coefficient table.
    """
    x, weight = start, _INITIAL_WEIGHT
    for _ in range(PENALTY_STAGES):
        result = minimize(
            problem.objective,
            x,
            args=(weight,),
            method="Nelder-Mead",
            options={
                "maxfev": _STAGE_EVALUATIONS,
                "xatol": 1e-12,
                "fatol": 1e-14,
                "adaptive": True,
            },
        )
        x, weight = result.x, weight * PENALTY_GROWTH
    alpha, table = problem.unpack(x)
    return alpha, problem.project(alpha, table)


# pylint: disable-next=too-many-arguments, too-many-positional-arguments, too-many-locals
def disc_search_upper(
    s: SigmaPoint,
    t: SigmaPoint,
    degree: int | None = None,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = DEFAULT_SEED,
    boundary_grid: int = DEFAULT_BOUNDARY_GRID,
    tol: float = DEFAULT_TOL,
    membership_margin: float = MEMBERSHIP_MARGIN,
) -> tuple[float, AnalyticDisc]:
    """Search polynomial discs phi in G_n with phi(0) = s and phi(alpha) = t, minimising alpha.

    Restarts begin at the structured seeds, then at seeded perturbations of the best seed. Each
    restart is independent and the reduction keeps the smallest verified alpha, earliest restart
    first on ties.

    Args:
        s: Point of G_n.
        t: Point of G_n.
        degree: Degree cap, at least n; defaults to 2n.
        restarts: Number of descents, at least 1.
        seed: Seed of the perturbations.
        boundary_grid: Number of unit-circle nodes checked for membership.
        tol: Root residual target.
        membership_margin: Margin s and t must keep from the boundary of G_n.

    Raises:
        InvalidInputError: If a precondition fails.
        NoFeasibleDiscError: If no candidate passes verification.

    Returns:
        The best alpha, an upper bound for l_{G_n}(s, t), and its disc.
    """
    if s.n != t.n:
        raise InvalidInputError(f"Dimensions differ: {s.n} and {t.n}")
    degree = 2 * s.n if degree is None else degree
    if degree < s.n or restarts < 1:
        raise InvalidInputError(f"Need degree >= n and restarts >= 1, got {degree}, {restarts}")
    for point in (s, t):
        if not in_Gn(point, margin=membership_margin, tol=tol):
            raise InvalidInputError(f"{point.coords} is not in G_{point.n}")
    if np.max(np.abs(s.array - t.array)) <= _ORIGIN_TOL:
        return 0.0, AnalyticDisc.constant(s, degree)

    problem = _DiscProblem(s, t, degree, boundary_grid, tol)
    seeds = [
        candidate
        for candidate in (_mobius_seed(problem, s, t, tol), _line_seed(problem))
        if candidate is not None
    ]
    if not seeds:
        seeds = [(0.9, problem.line(0.9))]
    seeds.sort(key=lambda pair: pair[0])
    candidates = [
        (alpha, order, table)
        for order, (alpha, table) in enumerate(seeds)
        if problem.is_feasible(alpha, table)
    ]
    base = problem.pack(*seeds[0])
    for index in range(restarts):
        if index < len(seeds):
            start = problem.pack(*seeds[index])
        else:
            rng = np.random.default_rng([seed, index])
            start = base.copy()
            start[0] = min(base[0] * (1 + rng.uniform(0, 0.5)), _ALPHA_CEILING)
            start[1:] += _PERTURBATION * rng.standard_normal(start.size - 1)
        alpha, table = _descend(problem, start)
        feasible = problem.is_feasible(alpha, table)
        logger.debug("Disc restart %s: alpha=%s feasible=%s", index, alpha, feasible)
        if feasible:
            candidates.append((alpha, len(seeds) + index, table))
    if not candidates:
        raise NoFeasibleDiscError(f"No feasible disc after {restarts} restarts")
    alpha, _, table = min(candidates, key=lambda candidate: (candidate[0], candidate[1]))
    return float(alpha), AnalyticDisc.from_coefficients(table, degree_cap=degree)


def cyclic_lift_witness(
    A: Any, B: Any, disc: AnalyticDisc, alpha: float, seed: int = DEFAULT_SEED
) -> MatrixDisc:
    """Return the matrix disc Q(zeta) companion(disc(zeta)) Q(zeta)^(-1) through A and B.

    Args:
        A: Cyclic matrix at 0.
        B: Cyclic matrix at alpha.
        disc: Disc with disc(0) = sigma(A) and disc(alpha) = sigma(B).
        alpha: Nonzero node.
        seed: Seed of the Krylov vectors.

    Returns:
        The matrix disc.
    """

    def family(zeta: complex) -> CMatrix:
        """Evaluate the companion family.

        Args:
            zeta: Point of the unit disc.

        Returns:
            companion(disc(zeta)).
        """
        return companion(disc.at(zeta))

    return conjugated_disc(family, A, B, alpha, seed=seed)


def lift_upper_cyclic(  # pylint: disable=too-many-arguments, too-many-positional-arguments
    A: Any,
    B: Any,
    disc: AnalyticDisc,
    alpha: float,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
    declared_a: ClusterHint | None = None,
    declared_b: ClusterHint | None = None,
) -> float:
    """Upper-bound l_{Omega_n}(A, B) for cyclic A, B by a disc between their sigma images.

    The witness Q(zeta) companion(disc(zeta)) Q(zeta)^(-1) is built and re-checked on the
    circle |zeta| = min(0.9, |alpha|) before alpha is returned.

    Args:
        A: Cyclic matrix.
        B: Cyclic matrix.
        disc: Disc with disc(0) = sigma(A) and disc(alpha) = sigma(B).
        alpha: The node.
        tol: Clustering tolerance.
        seed: Seed for root finding.
        declared_a: Optional exact cluster structure of A.
        declared_b: Optional exact cluster structure of B.

    Raises:
        NotCyclicError: If A or B is derogatory.
        InterpolationError: If the disc misses sigma(A) or sigma(B).
        LiftVerificationError: If the witness fails its numerical check.

    Returns:
        alpha.
    """
    a, b = as_cmatrix(A), as_cmatrix(B)
    for label, matrix, declared in (("A", a, declared_a), ("B", b, declared_b)):
        if not is_cyclic(matrix, tol=tol, seed=seed, declared=declared):
            raise NotCyclicError(f"{label} is not cyclic")
    if disc.residual(0, sigma(a)) > INTERPOLATION_TOL:
        raise InterpolationError("The disc misses sigma(A) at 0")
    if disc.residual(alpha, sigma(b)) > INTERPOLATION_TOL:
        raise InterpolationError("The disc misses sigma(B) at alpha")
    if alpha == 0:
        logger.debug("sigma(A) = sigma(B), the bound is the infimum 0 over conjugations")
        return 0.0
    witness = cyclic_lift_witness(a, b, disc, alpha, seed=seed)
    verify_matrix_disc(witness, disc, a, b, radius=min(LIFT_VERIFY_RADIUS, abs(alpha)))
    return float(alpha)


def safe_ball_radius(n: int, directions: int, seed: int) -> float:
    """Return the sampled inscribed radius of G_n capped by the certified one.

    Args:
        n: Dimension.
        directions: Number of sampled directions.
        seed: Seed of the sample.

    Returns:
        min(ball_radius_in_Gn, 1/sqrt(n)).
    """
    return min(ball_radius_in_Gn(n, directions, seed), certified_inscribed_radius(n))


def sandwich_report(  # pylint: disable=too-many-locals
    A: Any,
    B: Any,
    cfg: RunConfig | None = None,
    declared_a: ClusterHint | None = None,
    declared_b: ClusterHint | None = None,
) -> BoundReport:
    """Compute every applicable bound for the pair and check them against each other.

    Args:
        A: Matrix of Omega_n.
        B: Matrix of Omega_n.
        cfg: Run configuration; defaults apply if omitted.
        declared_a: Optional exact cluster structure of A.
        declared_b: Optional exact cluster structure of B.

    Returns:
        The report.
    """
    cfg = cfg or RunConfig()
    a, b = as_cmatrix(A), as_cmatrix(B)
    n = a.shape[0]
    entries = [
        BoundEntry(
            "bharali",
            bharali_lower(a, b, cfg.tol, declared_a, declared_b, cfg.seed),
            BoundKind.LOWER,
            Space.OMEGA,
        )
    ]
    s, t = sigma(a), sigma(b)
    if n == 3:
        try:
            value = caratheodory_lb_G3(s, t, cfg.grid)
            entries.append(BoundEntry("caratheodory3", value, BoundKind.LOWER, Space.G))
        except DegenerateDenominatorError:
            logger.warning("Carathéodory bound skipped, every f_lambda node is degenerate")
    entries.append(
        BoundEntry("diagonal", diagonal_upper(s, t, cfg.tol), BoundKind.UPPER, Space.G)
    )
    if s.norm() <= _ORIGIN_TOL:
        radius = safe_ball_radius(n, cfg.directions, cfg.seed)
        try:
            value = ball_upper_bound_from_origin(t, radius)
            entries.append(
                BoundEntry("ball", value, BoundKind.UPPER, Space.G, {"radius": radius})
            )
        except OutsideBallError as exc:
            logger.warning("Ball bound skipped: %s", exc)
    try:
        alpha, disc = disc_search_upper(
            s,
            t,
            cfg.disc_degree(n),
            cfg.restarts,
            cfg.seed,
            cfg.boundary_grid,
            cfg.tol,
            membership_margin=cfg.membership_margin,
        )
    except NoFeasibleDiscError as exc:
        logger.warning("Disc search bound skipped: %s", exc)
    else:
        witness = {"alpha": alpha, "disc": DiscPayload.from_disc(disc).dict()}
        entries.append(BoundEntry("disc_search", alpha, BoundKind.UPPER, Space.G, witness))
        try:
            value = lift_upper_cyclic(a, b, disc, alpha, cfg.tol, cfg.seed, declared_a, declared_b)
            entries.append(
                BoundEntry("lift", value, BoundKind.UPPER, Space.OMEGA, {"alpha": alpha})
            )
        except (
            NotCyclicError,
            AmbiguousClusteringError,
            LiftVerificationError,
            SingularMatrixError,
        ) as exc:
            logger.warning("Lift bound skipped: %s", exc)
    pair = {
        "A": MatrixPayload.from_matrix(a).dict(),
        "B": MatrixPayload.from_matrix(b).dict(),
        "sigma_A": PointPayload.from_point(s).dict(),
        "sigma_B": PointPayload.from_point(t).dict(),
    }
    report = BoundReport.assemble(pair, tuple(entries))
    logger.info("Sandwich report verdict: %s", report.verdict.value)
    return report
