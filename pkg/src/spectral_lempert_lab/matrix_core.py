# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.

"""Dense complex matrix primitives for the spectral ball.

Characteristic polynomials, simultaneous root finding, spectral structure with
multiplicities, cyclicity, companion matrices and the Möbius automorphisms of the
spectral ball.
"""

import logging
from typing import Any

import numpy as np
import numpy.typing as npt
import scipy.linalg
from numpy.polynomial import polynomial as P
from scipy.cluster.hierarchy import fcluster, linkage

from spectral_lempert_lab.constants import DEFAULT_SEED, DEFAULT_TOL, ROOT_ITERATION_BUDGET
from spectral_lempert_lab.errors import (
    AmbiguousClusteringError,
    InvalidInputError,
    NonConvergenceError,
    SingularMatrixError,
)
from spectral_lempert_lab.models import (
    CMatrix,
    ClusterHint,
    EigenInfo,
    Polynomial,
    SigmaPoint,
    SpectralData,
    as_cmatrix,
)

logger = logging.getLogger(__name__)

# Relative step size below which an Aberth iterate is considered settled.
_STEP_FLOOR = 1e-14
_NEWTON_POLISH_STEPS = 8
# I - conj(lam) M is treated as singular beyond this condition number.
_SINGULAR_CONDITION = 1e12


def _sort_complex(values: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
    """Sort complex values by real part, then imaginary part.

    Args:
        values: 1-D array.

    Returns:
        The sorted array.
    """
    return values[np.lexsort((values.imag, values.real))]


def _elementary_symmetric(A: CMatrix) -> npt.NDArray[np.complex128]:
    """Compute e_0..e_n of the eigenvalues from traces of powers (Newton identities).

    Args:
        A: Square matrix.

    Returns:
        Array [1, e_1, ..., e_n].
    """
    n = A.shape[0]
    traces = np.empty(n + 1, dtype=np.complex128)
    power = np.eye(n, dtype=np.complex128)
    for k in range(1, n + 1):
        power = power @ A
        traces[k] = np.trace(power)
    elementary = np.zeros(n + 1, dtype=np.complex128)
    elementary[0] = 1.0
    for k in range(1, n + 1):
        signs = (-1.0) ** np.arange(k)
        elementary[k] = np.dot(signs * elementary[k - 1 :: -1][:k], traces[1 : k + 1]) / k
    return elementary


def characteristic_polynomial(A: Any) -> Polynomial:
    """Return det(tI - A) with coefficients from the trace-power recursion.

    Args:
        A: Square matrix.

    Returns:
        The monic characteristic polynomial.
    """
    matrix = as_cmatrix(A)
    n = matrix.shape[0]
    elementary = _elementary_symmetric(matrix)
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    for j in range(n + 1):
        coeffs[n - j] = (-1) ** j * elementary[j]
    return Polynomial.from_array(coeffs)


def sigma(A: Any) -> SigmaPoint:
    """Return (sigma_1(A), ..., sigma_n(A)).

    Args:
        A: Square matrix.

    Returns:
        The elementary symmetric functions of the eigenvalues.
    """
    return SigmaPoint.from_array(_elementary_symmetric(as_cmatrix(A))[1:])


def sigma_of_roots(roots: Any) -> npt.NDArray[np.complex128]:
    """Return the elementary symmetric functions of each row of roots.

    Args:
        roots: Shape (batch, n).

    Returns:
        Shape (batch, n): e_1, ..., e_n per row.
    """
    table = np.atleast_2d(np.asarray(roots, dtype=np.complex128))
    elementary = np.zeros((table.shape[0], table.shape[1] + 1), dtype=np.complex128)
    elementary[:, 0] = 1.0
    for column in table.T:
        elementary[:, 1:] = elementary[:, 1:] + column[:, None] * elementary[:, :-1]
    return elementary[:, 1:]


def polynomial_from_sigma(s: SigmaPoint) -> Polynomial:
    """Return t^n - s_1 t^(n-1) + ... + (-1)^n s_n.

    Args:
        s: Point of C^n.

    Returns:
        The monic polynomial whose roots the point symmetrizes.
    """
    n = s.n
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    coeffs[n] = 1.0
    for j, value in enumerate(s.coords, start=1):
        coeffs[n - j] = (-1) ** j * value
    return Polynomial.from_array(coeffs)


def _horner(coeffs: npt.NDArray[np.complex128], z: npt.NDArray[np.complex128]) -> Any:
    """Evaluate a batch of polynomials, one row each, at a batch of points.

    Args:
        coeffs: Shape (batch, d + 1), constant term first.
        z: Shape (batch, k).

    Returns:
        Values of shape (batch, k).
    """
    values = np.repeat(coeffs[:, -1:], z.shape[1], axis=1)
    for k in range(coeffs.shape[1] - 2, -1, -1):
        values = values * z + coeffs[:, k : k + 1]
    return values


def _aberth(
    monic: npt.NDArray[np.complex128], rng: np.random.Generator, max_iter: int
) -> npt.NDArray[np.complex128]:
    """Run Aberth-Ehrlich iterations on a batch of monic polynomials.

    Args:
        monic: Shape (batch, d + 1), leading coefficient 1 in the last column.
        rng: Source for the random rotation of the starting circle.
        max_iter: Iteration budget.

    Returns:
        Root approximations of shape (batch, d).
    """
    batch, degree = monic.shape[0], monic.shape[1] - 1
    derivative = monic[:, 1:] * np.arange(1, degree + 1)
    radius = 1.0 + np.max(np.abs(monic[:, :-1]), axis=1, keepdims=True)
    angles = 2 * np.pi * np.arange(degree) / degree + rng.uniform(0, 2 * np.pi, (batch, 1))
    z = radius * np.exp(1j * angles)
    active = np.ones(batch, dtype=bool)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for _ in range(max_iter):
            rows = np.flatnonzero(active)
            if rows.size == 0:
                break
            zr = z[rows]
            value = _horner(monic[rows], zr)
            slope = _horner(derivative[rows], zr)
            diff = zr[:, :, None] - zr[:, None, :]
            repulsion = np.where(diff != 0, 1.0 / diff, 0).sum(axis=2)
            newton = np.where(slope != 0, value / slope, value)
            step = newton / (1.0 - newton * repulsion)
            step = np.where(np.isfinite(step) & (value != 0), step, 0)
            z[rows] = zr - step
            settled = np.all(np.abs(step) <= _STEP_FLOOR * (1.0 + np.abs(zr)), axis=1)
            active[rows[settled]] = False
    return z


def _deflation_roots(monic: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
    """Find roots one at a time with Newton steps and synthetic division.

    Args:
        monic: Coefficients of one monic polynomial, constant term first.

    Returns:
        The roots, polished against the undeflated polynomial.
    """
    current = monic.copy()
    derivative = P.polyder(monic)
    roots = []
    for _ in range(monic.size - 1):
        guess = P.polyroots(current)[0] if current.size > 2 else -current[0] / current[1]
        local_derivative = P.polyder(current)
        for _ in range(_NEWTON_POLISH_STEPS):
            slope = P.polyval(guess, local_derivative)
            if slope == 0:
                break
            guess -= P.polyval(guess, current) / slope
        roots.append(guess)
        current, _ = P.polydiv(current, np.array([-guess, 1.0]))
    polished = np.array(roots, dtype=np.complex128)
    for _ in range(_NEWTON_POLISH_STEPS):
        slope = P.polyval(polished, derivative)
        safe = np.where(slope != 0, slope, 1)
        polished = polished - np.where(slope != 0, P.polyval(polished, monic) / safe, 0)
    return polished


def poly_roots_batch(
    coeff_table: Any, tol: float = DEFAULT_TOL, seed: int = DEFAULT_SEED
) -> npt.NDArray[np.complex128]:
    """Find all roots of a batch of polynomials of a common degree.

    Args:
        coeff_table: Shape (batch, d + 1), constant term first, nonzero leading coefficients.
        tol: Relative residual target.
        seed: Seed of the random starting rotation.

    Raises:
        InvalidInputError: If the degree is below one, a leading coefficient vanishes or the
            tolerance is not positive.
        NonConvergenceError: If a row misses its residual target after the fallback.

    Returns:
        Roots of shape (batch, d), each row sorted by real then imaginary part.
    """
    table = np.atleast_2d(np.asarray(coeff_table, dtype=np.complex128))
    if tol <= 0:
        raise InvalidInputError("The root tolerance must be positive")
    if table.shape[1] < 2:
        raise InvalidInputError("Root finding needs degree at least 1")
    if np.any(table[:, -1] == 0):
        raise InvalidInputError("Leading coefficients must be nonzero")
    monic = table / table[:, -1:]
    targets = tol * (1.0 + np.max(np.abs(monic), axis=1))
    roots = _aberth(monic, np.random.default_rng(seed), ROOT_ITERATION_BUDGET)
    residuals = np.max(np.abs(_horner(monic, roots)), axis=1)
    for row in np.flatnonzero(~(residuals <= targets)):
        logger.debug("Aberth missed residual %s on row %s, deflating", residuals[row], row)
        roots[row] = _deflation_roots(monic[row])
        residuals[row] = np.max(np.abs(P.polyval(roots[row], monic[row])))
        if not residuals[row] <= targets[row]:
            raise NonConvergenceError(
                f"Root residual {residuals[row]:.3e} above target {targets[row]:.3e}",
                residual=float(residuals[row]),
            )
    return np.stack([_sort_complex(row) for row in roots])


def poly_roots(p: Polynomial, tol: float = DEFAULT_TOL, seed: int = DEFAULT_SEED) -> tuple:
    """Return all roots of a polynomial with multiplicity.

    Args:
        p: Polynomial of degree at least 1.
        tol: Relative residual target, |p(root)| <= tol * (1 + max |coeff|) after making p monic.
        seed: Seed of the random starting rotation.

    Returns:
        Tuple of complex roots sorted by real then imaginary part.
    """
    return tuple(complex(z) for z in poly_roots_batch(p.array[None, :], tol=tol, seed=seed)[0])


def max_root_moduli(monic_table: Any) -> npt.NDArray[np.float64]:
    """Return the largest root modulus of each monic polynomial of a batch.

    Companion eigenvalues, for use inside optimisation loops.

    Args:
        monic_table: Shape (batch, d + 1), constant term first, leading coefficient 1.

    Returns:
        Array of shape (batch,).
    """
    table = np.atleast_2d(np.asarray(monic_table, dtype=np.complex128))
    degree = table.shape[1] - 1
    companions = np.zeros((table.shape[0], degree, degree), dtype=np.complex128)
    companions[:, np.arange(1, degree), np.arange(degree - 1)] = 1.0
    companions[:, :, -1] = -table[:, :-1]
    return np.max(np.abs(np.linalg.eigvals(companions)), axis=1)


def numerical_rank(M: Any, tol: float = DEFAULT_TOL) -> int:
    """Count singular values above tol times the largest one.

    Args:
        M: Matrix.
        tol: Relative threshold.

    Returns:
        The numerical rank.
    """
    singular_values = np.linalg.svd(np.asarray(M, dtype=np.complex128), compute_uv=False)
    if singular_values.size == 0 or singular_values[0] == 0:
        return 0
    return int(np.count_nonzero(singular_values > tol * singular_values[0]))


def _rank_profile(shifted: CMatrix, depth: int, tol: float) -> list[int]:
    """Return the ranks of N^0, ..., N^depth.

    N^j counts singular values above tol (1 + ||N||)^j, so exact and slightly perturbed
    Jordan structures give the same profile.

    Args:
        shifted: N = A - lam I.
        depth: Highest power.
        tol: Relative rank threshold.

    Returns:
        The rank profile, starting with n.
    """
    n = shifted.shape[0]
    scale = 1.0 + float(np.linalg.norm(shifted, 2))
    ranks = [n]
    power = np.eye(n, dtype=np.complex128)
    for j in range(1, depth + 1):
        power = power @ shifted
        singular_values = np.linalg.svd(power, compute_uv=False)
        ranks.append(int(np.count_nonzero(singular_values > tol * scale**j)))
    return ranks


def _multiplicities(matrix: CMatrix, value: complex, alg_mult: int, tol: float) -> EigenInfo:
    """Read the multiplicities of an eigenvalue off the rank profile of A - value I.

    Args:
        matrix: The matrix.
        value: The eigenvalue.
        alg_mult: Its algebraic multiplicity.
        tol: Rank threshold.

    Raises:
        AmbiguousClusteringError: If the profile contradicts a Jordan structure of size alg_mult.

    Returns:
        The eigenvalue with its multiplicities.
    """
    n = matrix.shape[0]
    ranks = _rank_profile(matrix - value * np.eye(n, dtype=np.complex128), alg_mult, tol)
    geo_mult = n - ranks[1]
    min_mult = next(j for j in range(1, alg_mult + 1) if ranks[j] == ranks[alg_mult])
    try:
        return EigenInfo(value, alg_mult, geo_mult, min_mult)
    except InvalidInputError as exc:
        raise AmbiguousClusteringError(f"Multiplicities at {value} inconsistent: {exc}") from exc


def _confirmed(
    matrix: CMatrix, roots: npt.NDArray[np.complex128], tol: float
) -> list[tuple[complex, int]]:
    """Accept a group of roots as one eigenvalue or split it until the ranks agree.

    A group of k roots around c is one eigenvalue when (A - cI)^k has rank n - k and A - cI
    is singular; otherwise it is cut in two along its largest single-linkage gap.

    Args:
        matrix: The matrix.
        roots: Roots of its characteristic polynomial forming one candidate group.
        tol: Rank threshold.

    Raises:
        AmbiguousClusteringError: If a single root is not an eigenvalue at this threshold.

    Returns:
        (centroid, size) pairs.
    """
    n, size = matrix.shape[0], roots.size
    center = complex(np.mean(roots))
    ranks = _rank_profile(matrix - center * np.eye(n, dtype=np.complex128), size, tol)
    if ranks[size] == n - size and ranks[1] < n:
        return [(center, size)]
    if size == 1:
        raise AmbiguousClusteringError(f"Root {center} is not an eigenvalue at tol={tol}")
    points = np.column_stack((roots.real, roots.imag))
    labels = fcluster(linkage(points, method="single"), t=2, criterion="maxclust")
    return [
        cluster
        for label in np.unique(labels)
        for cluster in _confirmed(matrix, roots[labels == label], tol)
    ]


def _cluster(
    matrix: CMatrix, roots: npt.NDArray[np.complex128], tol: float
) -> list[tuple[complex, int]]:
    """Group the roots of det(tI - A) into eigenvalues.

    A k-fold eigenvalue perturbed by tol spreads its roots over a radius tol^(1/k), so roots
    are first merged by single linkage at (1 + max |root|) tol^(1/n) and each group is then
    confirmed or split by rank tests.

    Args:
        matrix: The matrix.
        roots: Roots of its characteristic polynomial.
        tol: Rank threshold and separation floor.

    Raises:
        AmbiguousClusteringError: If two eigenvalues sit within ten times tol.

    Returns:
        (centroid, size) pairs.
    """
    if roots.size == 1:
        return [(complex(roots[0]), 1)]
    radius = (1.0 + float(np.max(np.abs(roots)))) * tol ** (1.0 / roots.size)
    points = np.column_stack((roots.real, roots.imag))
    labels = fcluster(linkage(points, method="single"), t=radius, criterion="distance")
    clusters = [
        cluster
        for label in np.unique(labels)
        for cluster in _confirmed(matrix, roots[labels == label], tol)
    ]
    centers = np.array([center for center, _ in clusters])
    gaps = np.abs(centers[:, None] - centers[None, :]) + np.diag(np.full(len(clusters), np.inf))
    if gaps.size > 1 and np.min(gaps) <= 10 * tol:
        raise AmbiguousClusteringError(
            f"Eigenvalue clusters {np.min(gaps):.3e} apart, within ten times tol={tol}"
        )
    return clusters


def spectral_data(
    A: Any,
    tol: float = DEFAULT_TOL,
    declared: ClusterHint | None = None,
    seed: int = DEFAULT_SEED,
) -> SpectralData:
    """Compute the spectrum of a matrix with algebraic, geometric and minimal multiplicities.

    Args:
        A: Square matrix.
        tol: Clustering tolerance and relative rank threshold.
        declared: Exact (value, algebraic multiplicity) pairs that replace root clustering.
        seed: Seed for root finding.

    Raises:
        InvalidInputError: If tol is not positive or the declared structure does not fit.
        AmbiguousClusteringError: If clusters or multiplicities are numerically unreliable.

    Returns:
        The spectral data, clusters sorted by real then imaginary part.
    """
    matrix = as_cmatrix(A)
    n = matrix.shape[0]
    if tol <= 0:
        raise InvalidInputError("The clustering tolerance must be positive")
    if declared is not None:
        clusters = [(complex(value), int(mult)) for value, mult in declared]
        if sum(mult for _, mult in clusters) != n or any(mult < 1 for _, mult in clusters):
            raise InvalidInputError(f"Declared multiplicities do not add up to n={n}")
    else:
        roots = np.array(poly_roots(characteristic_polynomial(matrix), tol=tol, seed=seed))
        clusters = _cluster(matrix, roots, tol)
    eigen = tuple(
        _multiplicities(matrix, value, alg_mult, tol)
        for value, alg_mult in sorted(clusters, key=lambda pair: (pair[0].real, pair[0].imag))
    )
    return SpectralData(eigen, tol)


def krylov_matrix(A: Any, v: Any, normalize: bool = False) -> CMatrix:
    """Return the Krylov matrix [v, Av, ..., A^(n-1) v].

    Args:
        A: Square matrix.
        v: Starting vector.
        normalize: Scale every column to unit norm (spans are unchanged).

    Returns:
        The n×n Krylov matrix.
    """
    matrix = as_cmatrix(A)
    column = np.asarray(v, dtype=np.complex128)
    columns = []
    for _ in range(matrix.shape[0]):
        if normalize and (norm := np.linalg.norm(column)) > 0:
            column = column / norm
        columns.append(column)
        column = matrix @ column
    return np.column_stack(columns)


def random_vector(n: int, seed: int) -> npt.NDArray[np.complex128]:
    """Return a seeded complex Gaussian vector.

    Args:
        n: Length.
        seed: Seed.

    Returns:
        The vector.
    """
    rng = np.random.default_rng(seed)
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def is_cyclic(
    A: Any,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
    declared: ClusterHint | None = None,
) -> bool:
    """Decide whether the matrix admits a cyclic vector.

    Args:
        A: Square matrix.
        tol: Clustering tolerance and rank threshold.
        seed: Seed of the random Krylov vector.
        declared: Optional exact cluster structure.

    Raises:
        AmbiguousClusteringError: If the multiplicity test and the Krylov test disagree.

    Returns:
        True if every eigenvalue has a one-dimensional eigenspace.
    """
    matrix = as_cmatrix(A)
    data = spectral_data(matrix, tol=tol, declared=declared, seed=seed)
    by_multiplicity = all(info.geo_mult == 1 for info in data.eigen)
    krylov = krylov_matrix(matrix, random_vector(matrix.shape[0], seed), normalize=True)
    by_krylov = numerical_rank(krylov, tol) == matrix.shape[0]
    if by_multiplicity != by_krylov:
        raise AmbiguousClusteringError(
            f"Cyclicity tests disagree: multiplicities say {by_multiplicity}, "
            f"Krylov rank says {by_krylov}"
        )
    return by_multiplicity


def cyclic_similarity(M: Any, T: Any, seed: int = DEFAULT_SEED) -> CMatrix:
    """Return S with S M S^(-1) = T for cyclic M, T sharing a characteristic polynomial.

    M K_M and T K_T act as the same companion matrix on unnormalised Krylov bases, so
    S = K_T K_M^(-1).

    Args:
        M: Cyclic matrix.
        T: Cyclic matrix with the characteristic polynomial of M.
        seed: Seed of the Krylov starting vector.

    Raises:
        SingularMatrixError: If a Krylov basis is numerically singular.

    Returns:
        The similarity.
    """
    source, target = as_cmatrix(M), as_cmatrix(T)
    v = random_vector(source.shape[0], seed)
    source_basis = krylov_matrix(source, v)
    target_basis = krylov_matrix(target, v)
    for basis in (source_basis, target_basis):
        if np.linalg.cond(basis) > _SINGULAR_CONDITION:
            raise SingularMatrixError("Krylov basis is numerically singular")
    return scipy.linalg.solve(source_basis.T, target_basis.T).T


def companion(s: SigmaPoint) -> CMatrix:
    """Return the companion matrix C_s with sigma(C_s) = s.

    Ones on the subdiagonal, negated characteristic coefficients in the last column.

    Args:
        s: Point of C^n.

    Returns:
        The companion matrix.
    """
    coeffs = polynomial_from_sigma(s).padded(s.n + 1)
    matrix = np.zeros((s.n, s.n), dtype=np.complex128)
    matrix[np.arange(1, s.n), np.arange(s.n - 1)] = 1.0
    matrix[:, -1] = -coeffs[:-1]
    return matrix


def mobius_matrix(lam: complex, M: Any) -> CMatrix:
    """Apply the automorphism M -> (lam I - M)(I - conj(lam) M)^(-1) of the spectral ball.

    Args:
        lam: Point of the unit disc.
        M: Square matrix.

    Raises:
        InvalidInputError: If |lam| >= 1.
        SingularMatrixError: If I - conj(lam) M is numerically singular.

    Returns:
        The transformed matrix.
    """
    matrix = as_cmatrix(M)
    if abs(lam) >= 1:
        raise InvalidInputError(f"The Möbius parameter must lie in the unit disc, got {lam}")
    identity = np.eye(matrix.shape[0], dtype=np.complex128)
    denominator = identity - np.conj(lam) * matrix
    if np.linalg.cond(denominator) > _SINGULAR_CONDITION:
        raise SingularMatrixError("I - conj(lam) M is numerically singular")
    numerator = lam * identity - matrix
    try:
        return scipy.linalg.solve(denominator.T, numerator.T).T
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover
        raise SingularMatrixError("I - conj(lam) M is singular") from exc


def spectral_radius(A: Any, tol: float = DEFAULT_TOL, seed: int = DEFAULT_SEED) -> float:
    """Return the largest eigenvalue modulus.

    Args:
        A: Square matrix.
        tol: Root residual target.
        seed: Seed for root finding.

    Returns:
        The spectral radius.
    """
    roots = poly_roots(characteristic_polynomial(A), tol=tol, seed=seed)
    return max(abs(root) for root in roots)


def in_spectral_ball(A: Any, margin: float = 0.0, tol: float = DEFAULT_TOL) -> bool:
    """Decide whether r(A) <= 1 - margin, with r(A) = 1 always rejected.

    Args:
        A: Square matrix.
        margin: Non-negative safety margin.
        tol: Root residual target.

    Raises:
        InvalidInputError: If the margin is negative.

    Returns:
        Whether the matrix lies in the spectral ball with the margin.
    """
    if margin < 0:
        raise InvalidInputError("The margin must be non-negative")
    radius = spectral_radius(A, tol=tol)
    return radius < 1 and radius <= 1 - margin
