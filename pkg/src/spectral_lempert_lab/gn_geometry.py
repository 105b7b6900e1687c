# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.

"""Geometry of the symmetrized polydisc G_n."""

import logging
import math
from typing import Any

import numpy as np
import numpy.typing as npt
from scipy.optimize import minimize_scalar
from scipy.special import comb

from spectral_lempert_lab.constants import (
    BALL_SAFETY_FACTOR,
    CARATHEODORY_DENOMINATOR_FLOOR,
    DEFAULT_DIRECTIONS,
    DEFAULT_GRID,
    DEFAULT_SEED,
    DEFAULT_TOL,
    MEMBERSHIP_MARGIN,
)
from spectral_lempert_lab.errors import (
    DegenerateDenominatorError,
    InvalidInputError,
    OutsideBallError,
)
from spectral_lempert_lab.matrix_core import poly_roots, poly_roots_batch, polynomial_from_sigma
from spectral_lempert_lab.models import SigmaPoint

logger = logging.getLogger(__name__)

_BISECTION_STEPS = 48


def sigma_coefficient_table(points: Any) -> npt.NDArray[np.complex128]:
    """Return the monic polynomials t^n - s_1 t^(n-1) + ... of a batch of points.

    Args:
        points: Shape (batch, n).

    Returns:
        Shape (batch, n + 1), constant term first.
    """
    table = np.atleast_2d(np.asarray(points, dtype=np.complex128))
    n = table.shape[1]
    signs = (-1.0) ** np.arange(1, n + 1)
    coeffs = np.empty((table.shape[0], n + 1), dtype=np.complex128)
    coeffs[:, :n] = (signs * table)[:, ::-1]
    coeffs[:, n] = 1.0
    return coeffs


def in_Gn_batch(
    points: Any, margin: float = MEMBERSHIP_MARGIN, tol: float = DEFAULT_TOL
) -> npt.NDArray[np.bool_]:
    """Decide membership in G_n for a batch of points.

    Args:
        points: Shape (batch, n).
        margin: Non-negative margin; roots must have modulus at most 1 - margin.
        tol: Root residual target.

    Raises:
        InvalidInputError: If the margin is negative.

    Returns:
        Boolean array of shape (batch,).
    """
    if margin < 0:
        raise InvalidInputError("The margin must be non-negative")
    roots = poly_roots_batch(sigma_coefficient_table(points), tol=tol)
    moduli = np.max(np.abs(roots), axis=1)
    return (moduli < 1) & (moduli <= 1 - margin)


def in_Gn(s: SigmaPoint, margin: float = MEMBERSHIP_MARGIN, tol: float = DEFAULT_TOL) -> bool:
    """Decide whether all roots of t^n - s_1 t^(n-1) + ... + (-1)^n s_n lie in |t| <= 1 - margin.

    Args:
        s: Point of C^n.
        margin: Non-negative margin.
        tol: Root residual target.

    Returns:
        Whether the point lies in G_n with the margin.
    """
    return bool(in_Gn_batch(s.array[None, :], margin=margin, tol=tol)[0])


def roots_of_point(s: SigmaPoint, tol: float = DEFAULT_TOL) -> tuple:
    """Return the eigenvalue multiset a point of G_n symmetrizes.

    Args:
        s: Point of C^n.
        tol: Root residual target.

    Returns:
        The roots, sorted by real then imaginary part.
    """
    return poly_roots(polynomial_from_sigma(s), tol=tol)


def shift_point(s: SigmaPoint, lam: complex) -> SigmaPoint:
    """Return sigma(M - lam I) given s = sigma(M).

    Args:
        s: Point of C^n.
        lam: The shift.

    Returns:
        The shifted point.
    """
    return SigmaPoint.from_array(shift_matrix(s.n, lam) @ np.concatenate(([1.0], s.array)))


def shift_matrix(n: int, lam: complex) -> npt.NDArray[np.complex128]:
    """Return the affine map (1, s_1, ..., s_n) -> sigma of the shift by -lam I.

    sigma_j(M - lam I) = sum_i (-1)^(j-i) C(n-i, j-i) lam^(j-i) s_i with s_0 = 1.

    Args:
        n: Dimension.
        lam: The shift.

    Returns:
        Matrix of shape (n, n + 1).
    """
    matrix = np.zeros((n, n + 1), dtype=np.complex128)
    for j in range(1, n + 1):
        for i in range(j + 1):
            matrix[j - 1, i] = (-1) ** (j - i) * comb(n - i, j - i, exact=True) * lam ** (j - i)
    return matrix


def pseudo_hyperbolic(a: complex, b: complex) -> float:
    """Return the pseudohyperbolic distance |a - b| / |1 - conj(b) a| on the unit disc.

    Args:
        a: Point of the unit disc.
        b: Point of the unit disc.

    Raises:
        InvalidInputError: If a point lies outside the open unit disc.

    Returns:
        The distance, in [0, 1).
    """
    if abs(a) >= 1 or abs(b) >= 1:
        raise InvalidInputError(f"Points must lie in the unit disc, got {a} and {b}")
    return float(abs(a - b) / abs(1 - np.conj(b) * a))


def _pseudo_hyperbolic_array(a: Any, b: Any) -> npt.NDArray[np.float64]:
    """Vectorised pseudohyperbolic distance without domain checks.

    Args:
        a: Points of the unit disc.
        b: Points of the unit disc.

    Returns:
        The distances.
    """
    return np.abs(a - b) / np.abs(1 - np.conj(b) * a)


def _check_g3(s: SigmaPoint) -> None:
    """Reject points that do not belong to G_3.

    Args:
        s: Candidate point.

    Raises:
        InvalidInputError: If the point is not a point of G_3.
    """
    if s.n != 3 or not in_Gn(s, margin=0.0):
        raise InvalidInputError(f"Expected a point of G_3, got {s.coords}")


def f_lambda(s: SigmaPoint, lam: complex) -> complex:
    """Evaluate (s1 + 2 s2 lam + 3 s3 lam^2) / (3 + 2 s1 lam + s2 lam^2).

    Args:
        s: Point of G_3.
        lam: Point of the closed unit disc.

    Raises:
        DegenerateDenominatorError: If the denominator is below the floor.

    Returns:
        The value, a point of the unit disc for points of G_3.
    """
    s1, s2, s3 = s.coords
    denominator = 3 + 2 * s1 * lam + s2 * lam**2
    if abs(denominator) < CARATHEODORY_DENOMINATOR_FLOOR:
        raise DegenerateDenominatorError(f"f_lambda denominator vanishes at lambda={lam}")
    return (s1 + 2 * s2 * lam + 3 * s3 * lam**2) / denominator


def _caratheodory_profile(s: SigmaPoint, t: SigmaPoint, angles: Any) -> Any:
    """Return pseudo_hyperbolic(f_lam(s), f_lam(t)) at lam = exp(i angle), nan where degenerate.

    Args:
        s: Point of G_3.
        t: Point of G_3.
        angles: Angles on the unit circle.

    Returns:
        The distances.
    """
    lam = np.exp(1j * np.asarray(angles, dtype=np.float64))
    values = []
    for point in (s, t):
        s1, s2, s3 = point.coords
        denominator = 3 + 2 * s1 * lam + s2 * lam**2
        numerator = s1 + 2 * s2 * lam + 3 * s3 * lam**2
        degenerate = np.abs(denominator) < CARATHEODORY_DENOMINATOR_FLOOR
        safe = np.where(degenerate, 1, denominator)
        values.append(np.where(degenerate, np.nan, numerator / safe))
    return _pseudo_hyperbolic_array(values[0], values[1])


def caratheodory_lb_G3(s: SigmaPoint, t: SigmaPoint, grid: int = DEFAULT_GRID) -> float:
    """Lower-bound the Lempert function of G_3 through the f_lambda family.

    Maximises the pseudohyperbolic distance of f_lambda(s), f_lambda(t) over a uniform grid of
    the unit circle, then refines once around the best node by golden-section search.

    Args:
        s: Point of G_3.
        t: Point of G_3.
        grid: Number of circle nodes, at least 64.

    Raises:
        InvalidInputError: If the points are not in G_3 or the grid is too coarse.
        DegenerateDenominatorError: If every grid node is degenerate.

    Returns:
        The lower bound.
    """
    if grid < 64:
        raise InvalidInputError(f"The Carathéodory grid needs at least 64 nodes, got {grid}")
    _check_g3(s)
    _check_g3(t)
    step = 2 * math.pi / grid
    angles = step * np.arange(grid)
    profile = _caratheodory_profile(s, t, angles)
    if (skipped := int(np.count_nonzero(np.isnan(profile)))) == grid:
        raise DegenerateDenominatorError("Every f_lambda grid node is degenerate")
    if skipped:
        logger.warning("Skipped %s degenerate f_lambda nodes", skipped)
    best = int(np.nanargmax(profile))
    value = float(profile[best])

    def objective(angle: float) -> float:
        """Negated profile for minimisation.

        Args:
            angle: Angle on the unit circle.

        Returns:
            Negated distance, zero where degenerate.
        """
        distance = float(_caratheodory_profile(s, t, [angle])[0])
        return -distance if math.isfinite(distance) else 0.0

    centre = angles[best]
    try:
        refined = minimize_scalar(
            objective, bracket=(centre - step, centre, centre + step), method="golden"
        )
        value = max(value, -float(refined.fun))
    except ValueError:
        # Flat profile around the best node: the grid value stands.
        logger.debug("Golden-section refinement skipped, no strict bracket at %s", centre)
    return value


def _random_directions(n: int, count: int, seed: int) -> npt.NDArray[np.complex128]:
    """Return seeded unit directions in C^n, one per row; longer runs extend shorter ones.

    Args:
        n: Dimension.
        count: Number of directions.
        seed: Seed.

    Returns:
        Shape (count, n).
    """
    rng = np.random.default_rng(seed)
    raw = np.array([rng.standard_normal(2 * n) for _ in range(count)])
    directions = raw[:, :n] + 1j * raw[:, n:]
    return directions / np.linalg.norm(directions, axis=1, keepdims=True)


def ball_radius_in_Gn(
    n: int, directions: int = DEFAULT_DIRECTIONS, seed: int = DEFAULT_SEED
) -> float:
    """Estimate a Euclidean ball radius R_safe with B(0, R_safe) inside G_n.

    Bisects the exit distance along seeded random directions and scales the smallest one by
    the safety factor. The sample always contains the direction (1, -1, 1, ...), along which
    the boundary sits at 1/sqrt(n), so the result is the safety factor times 1/sqrt(n).

    Args:
        n: Dimension, at least 1.
        directions: Number of sampled directions.
        seed: Seed of the direction sample.

    Raises:
        InvalidInputError: If n or directions is not positive.

    Returns:
        The safe radius.
    """
    if n < 1 or directions < 1:
        raise InvalidInputError("Dimension and direction count must be positive")
    if n == 1:
        return BALL_SAFETY_FACTOR
    alternating = np.array([(-1) ** j for j in range(n)], dtype=np.complex128) / math.sqrt(n)
    units = np.vstack((alternating, _random_directions(n, directions, seed)))
    # |s_j| <= C(n, j) on G_n, so radius 2^n is outside along every direction.
    lower = np.zeros(directions + 1)
    upper = np.full(directions + 1, float(2**n))
    for _ in range(_BISECTION_STEPS):
        middle = (lower + upper) / 2
        inside = in_Gn_batch(middle[:, None] * units, margin=MEMBERSHIP_MARGIN)
        lower = np.where(inside, middle, lower)
        upper = np.where(inside, upper, middle)
    radius = BALL_SAFETY_FACTOR * float(np.min(lower))
    logger.debug("R_safe(G_%s) = %s from %s directions", n, radius, directions)
    return radius


def certified_inscribed_radius(n: int) -> float:
    """Return 1/sqrt(n); the Euclidean ball of this radius lies in G_n.

    If ||s|| < 1/sqrt(n) then sum |s_j| < 1, so t^n dominates the other terms on |t| >= 1.

    Args:
        n: Dimension.

    Returns:
        The radius.
    """
    return 1 / math.sqrt(n)


def ball_upper_bound_from_origin(t: SigmaPoint, R: float) -> float:
    """Upper-bound l_{G_n}(0, t) by the Lempert function of the ball B(0, R).

    Args:
        t: Target point.
        R: Radius of a ball inside G_n.

    Raises:
        OutsideBallError: If ||t|| >= R.

    Returns:
        ||t|| / R.
    """
    norm = t.norm()
    if norm >= R:
        raise OutsideBallError(f"||t|| = {norm:.3e} is not below the ball radius {R:.3e}")
    return norm / R
