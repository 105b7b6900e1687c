# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.

"""Lifting of analytic discs in G_n through a single-eigenvalue matrix.

A disc phi in G_n with phi(0) = sigma(B) lifts to a matrix disc through B exactly when the
vanishing conditions read off the Jordan form of B hold. The lift is built as a companion-like
matrix psi(zeta) with f_j in {1, zeta} on the superdiagonal and psi_n, ..., psi_1 on the last
row, then conjugated so that it takes the values B at 0 and A at zeta0.
"""

import dataclasses
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Iterable

import numpy as np
import numpy.typing as npt
import scipy.linalg

from spectral_lempert_lab.constants import (
    DEFAULT_SEED,
    DEFAULT_TOL,
    INTERPOLATION_TOL,
    LIFT_VERIFY_RADIUS,
    LIFT_VERIFY_SAMPLES,
    LIFT_VERIFY_TOL,
    THETA_TOL,
)
from spectral_lempert_lab.errors import (
    AmbiguousClusteringError,
    InterpolationError,
    InvalidInputError,
    LiftVerificationError,
    NotCyclicError,
    NotSingleEigenvalueError,
    SingularMatrixError,
    ThetaViolatedError,
)
from spectral_lempert_lab.gn_geometry import shift_matrix
from spectral_lempert_lab.matrix_core import (
    cyclic_similarity,
    is_cyclic,
    mobius_matrix,
    numerical_rank,
    sigma,
    spectral_data,
)
from spectral_lempert_lab.models import (
    AnalyticDisc,
    CMatrix,
    ClusterHint,
    Polynomial,
    SigmaPoint,
    as_cmatrix,
)

logger = logging.getLogger(__name__)

_SINGULAR_CONDITION = 1e12


class Reduction(str, Enum):
    """Reduction of a single-eigenvalue matrix to a nilpotent one.

    Attributes:
        MOBIUS: Apply the automorphism Phi_lambda of the spectral ball.
        SHIFT: Subtract lambda I.
    """

    MOBIUS = "mobius"
    SHIFT = "shift"


class Superdiagonal(str, Enum):
    """Superdiagonal entry f_j of a lift.

    Attributes:
        ONE: The constant 1.
        ZETA: The monomial zeta.
    """

    ONE = "1"
    ZETA = "zeta"

    def at(self, zeta: complex) -> complex:
        """Evaluate the entry.

        Args:
            zeta: Point of the unit disc.

        Returns:
            The value.
        """
        return complex(zeta) if self is Superdiagonal.ZETA else 1 + 0j


@dataclass(frozen=True)
class NilpotentJordanForm:
    """Jordan form of a nilpotent matrix described by its zero columns.

    Column j of the form is zero for j in F0; for j in F1 it holds a 1 at row j - 1.

    Attributes:
        n: Dimension.
        F0: Sorted 1-based zero-column indices b_1 = 1 < ... < b_(n-r).
        F1: The complement of F0 in [1..n].
        r: Rank, the size of F1.
        block_sizes: Jordan block sizes in basis order.
    """

    n: int
    F0: tuple[int, ...]

    def __post_init__(self) -> None:
        """Validate the form.

        Raises:
            InvalidInputError: If F0 misses column 1, leaves [1..n], or has decreasing gaps.
        """
        if not self.F0 or self.F0[0] != 1 or list(self.F0) != sorted(set(self.F0)):
            raise InvalidInputError(f"F0 must be sorted, unique and start at 1, got {self.F0}")
        if self.F0[-1] > self.n:
            raise InvalidInputError(f"F0 {self.F0} leaves [1..{self.n}]")
        sizes = self.block_sizes
        if any(later < earlier for earlier, later in zip(sizes, sizes[1:])):
            raise InvalidInputError(f"F0 {self.F0} breaks gap monotonicity")

    @classmethod
    def from_block_sizes(cls, sizes: Iterable[int]) -> "NilpotentJordanForm":
        """Build the form with the given Jordan blocks, smallest block first.

        Args:
            sizes: Positive block sizes in any order.

        Raises:
            InvalidInputError: If a size is not positive.

        Returns:
            The form.
        """
        ordered = sorted(sizes)
        if not ordered or ordered[0] < 1:
            raise InvalidInputError(f"Block sizes must be positive, got {ordered}")
        starts = np.cumsum([1] + ordered[:-1])
        return cls(sum(ordered), tuple(int(start) for start in starts))

    @property
    def F1(self) -> tuple[int, ...]:
        """The 1-based columns carrying a superdiagonal 1."""
        return tuple(j for j in range(1, self.n + 1) if j not in self.F0)

    @property
    def r(self) -> int:
        """The rank of the form."""
        return self.n - len(self.F0)

    @property
    def block_sizes(self) -> tuple[int, ...]:
        """Jordan block sizes in basis order."""
        bounds = list(self.F0) + [self.n + 1]
        return tuple(later - earlier for earlier, later in zip(bounds, bounds[1:]))

    def matrix(self) -> CMatrix:
        """Return the canonical form matrix.

        Returns:
            The n×n nilpotent matrix.
        """
        form = np.zeros((self.n, self.n), dtype=np.complex128)
        for j in self.F1:
            form[j - 2, j - 1] = 1.0
        return form


@dataclass(frozen=True)
class DegreeVector:
    """Vanishing orders d_1, ..., d_n a liftable disc must respect.

    Attributes:
        d: The orders, d_i = 1 + #(F0 ∩ [n-i+2..n]).
    """

    d: tuple[int, ...]

    def __post_init__(self) -> None:
        """Validate the orders.

        Raises:
            InvalidInputError: If some d_i lies outside [1..i] or d_1 is not 1.
        """
        if not self.d or self.d[0] != 1 or any(not 1 <= d <= i for i, d in enumerate(self.d, 1)):
            raise InvalidInputError(f"Invalid degree vector {self.d}")


@dataclass(frozen=True)
class LiftFunction:
    """Companion-like matrix function psi of a lift.

    Attributes:
        n: Dimension.
        f: Superdiagonal entries f_2, ..., f_n.
        psi: Last-row polynomials psi_1, ..., psi_n; psi_1 sits in the corner.
        d: Vanishing orders the disc was divided by, psi_j = ±phi_j / zeta^(d_j - 1).
        theta: Residuals of the vanishing conditions the disc passed.
    """

    n: int
    f: tuple[Superdiagonal, ...]
    psi: tuple[Polynomial, ...]
    d: tuple[int, ...] = ()
    theta: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        """Validate the shape.

        Raises:
            InvalidInputError: If f or psi do not match the dimension.
        """
        if len(self.f) != self.n - 1 or len(self.psi) != self.n:
            raise InvalidInputError(f"A lift of dimension {self.n} needs n-1 f and n psi")

    def matrix(self, zeta: complex) -> CMatrix:
        """Assemble psi(zeta).

        Args:
            zeta: Point of the unit disc.

        Returns:
            The n×n matrix.
        """
        assembled = np.zeros((self.n, self.n), dtype=np.complex128)
        for j, entry in enumerate(self.f, start=2):
            assembled[j - 2, j - 1] = entry.at(zeta)
        for k in range(self.n):
            assembled[self.n - 1, k] = self.psi[self.n - k - 1](zeta)
        return assembled

    def to_dict(self) -> dict[str, Any]:
        """Return the JSON form {f, psi, d, theta}.

        Returns:
            The f labels, the psi coefficient rows as {re, im} lists, the vanishing orders and
            the vanishing residuals.
        """
        return {
            "d": list(self.d),
            "theta": list(self.theta),
            "f": [entry.value for entry in self.f],
            "psi": [
                {"re": poly.array.real.tolist(), "im": poly.array.imag.tolist()}
                for poly in self.psi
            ],
        }


def _jordan_chains(N: CMatrix, tol: float) -> tuple[tuple[int, ...], CMatrix]:
    """Compute Jordan chains of a nilpotent matrix, smallest block first.

    Args:
        N: Nilpotent matrix.
        tol: Relative rank threshold.

    Raises:
        AmbiguousClusteringError: If N is not numerically nilpotent.
        SingularMatrixError: If the chains do not form a basis.

    Returns:
        The block sizes and the basis P with P^(-1) N P the Jordan form.
    """
    n = N.shape[0]
    powers = [np.eye(n, dtype=np.complex128)]
    for _ in range(n):
        powers.append(powers[-1] @ N)
    ranks = [n] + [numerical_rank(power, tol) for power in powers[1:]]
    if ranks[n] != 0:
        raise AmbiguousClusteringError("The reduced matrix is not numerically nilpotent")
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, n + 1)] + [0]
    tops: list[tuple[int, npt.NDArray[np.complex128]]] = []
    for size in range(n, 0, -1):
        if (count := at_least[size - 1] - at_least[size]) == 0:
            continue
        kernel = scipy.linalg.null_space(powers[size], rcond=tol)
        columns = [scipy.linalg.null_space(powers[size - 1], rcond=tol)] if size > 1 else []
        columns += [(powers[length - size] @ top)[:, None] for length, top in tops]
        residual = kernel
        if columns and (stacked := np.hstack(columns)).shape[1]:
            span = scipy.linalg.orth(stacked, rcond=tol)
            residual = kernel - span @ (span.conj().T @ kernel)
        left, _, _ = np.linalg.svd(residual)
        tops.extend((size, left[:, i]) for i in range(count))
    tops.sort(key=lambda pair: pair[0])
    basis = np.column_stack(
        [powers[length - 1 - k] @ top for length, top in tops for k in range(length)]
    )
    if np.linalg.cond(basis) > _SINGULAR_CONDITION:
        raise SingularMatrixError("Jordan chains do not form a basis")
    return tuple(length for length, _ in tops), basis


def nilpotent_normal_form(
    B: Any,
    tol: float = DEFAULT_TOL,
    reduction: Reduction = Reduction.MOBIUS,
    declared: ClusterHint | None = None,
    seed: int = DEFAULT_SEED,
) -> tuple[NilpotentJordanForm, CMatrix]:
    """Reduce a single-eigenvalue matrix to its nilpotent Jordan form.

    Args:
        B: Square matrix with one eigenvalue lambda.
        tol: Clustering tolerance and rank threshold.
        reduction: Map N of B to a nilpotent matrix, Phi_lambda(B) or B - lambda I.
        declared: Optional exact cluster structure of B.
        seed: Seed for root finding.

    Raises:
        NotSingleEigenvalueError: If B has two or more eigenvalue clusters.

    Returns:
        The form and P with P^(-1) N P equal to the form matrix.
    """
    matrix = as_cmatrix(B)
    data = spectral_data(matrix, tol=tol, declared=declared, seed=seed)
    if len(data.eigen) != 1:
        raise NotSingleEigenvalueError(f"Expected one eigenvalue, got {len(data.eigen)}")
    lam = data.eigen[0].value
    if reduction is Reduction.MOBIUS:
        reduced = mobius_matrix(lam, matrix)
    else:
        reduced = matrix - lam * np.eye(matrix.shape[0])
    sizes, basis = _jordan_chains(reduced, tol)
    form = NilpotentJordanForm.from_block_sizes(sizes)
    logger.debug("Jordan form of B: blocks %s, F0 %s", sizes, form.F0)
    return form, basis


def degree_vector(form: NilpotentJordanForm) -> DegreeVector:
    """Evaluate d_i = 1 + #(F0 ∩ [n-i+2..n]).

    Args:
        form: The Jordan form.

    Returns:
        The degree vector.
    """
    n = form.n
    return DegreeVector(
        tuple(1 + sum(1 for b in form.F0 if n - i + 2 <= b <= n) for i in range(1, n + 1))
    )


def theta_residuals(phi: AnalyticDisc, form: NilpotentJordanForm) -> tuple[float, ...]:
    """Return |phi_i^(k)(0)| for every i and 0 <= k <= d_i - 1.

    Args:
        phi: Disc with n coordinates.
        form: The Jordan form of B.

    Raises:
        InvalidInputError: If the disc and the form differ in dimension.

    Returns:
        The residuals, coordinate-major.
    """
    if phi.n != form.n:
        raise InvalidInputError(f"Disc has {phi.n} coordinates, form has dimension {form.n}")
    degrees = degree_vector(form).d
    return tuple(
        abs(coordinate.derivative_at_zero(k))
        for coordinate, d in zip(phi.coords, degrees)
        for k in range(d)
    )


def _strip(poly: Polynomial, count: int, sign: int = 1) -> Polynomial:
    """Return sign * poly / zeta^count, dropping the leading zero coefficients.

    Args:
        poly: Polynomial vanishing to order count at 0.
        count: Number of coefficients to drop.
        sign: Factor +1 or -1.

    Returns:
        The quotient.
    """
    remaining = sign * poly.array[count:]
    return Polynomial.from_array(remaining if remaining.size else [0])


def build_lift(phi: AnalyticDisc, form: NilpotentJordanForm) -> LiftFunction:
    """Build psi with f_j = 1 on F1, f_j = zeta on F0 and psi_j = (-1)^(j+1) phi_j / zeta^(d_j-1).

    Args:
        phi: Disc with phi(0) = 0 in the nilpotent picture.
        form: The Jordan form.

    Raises:
        ThetaViolatedError: If a vanishing condition fails.

    Returns:
        The lift function.
    """
    theta = theta_residuals(phi, form)
    if (worst := max(theta)) > THETA_TOL:
        raise ThetaViolatedError(f"Vanishing conditions fail, worst residual {worst:.3e}")
    degrees = degree_vector(form).d
    psi = tuple(
        _strip(coordinate, d - 1, (-1) ** (j + 1))
        for j, (coordinate, d) in enumerate(zip(phi.coords, degrees), start=1)
    )
    f = tuple(
        Superdiagonal.ZETA if j in form.F0 else Superdiagonal.ONE for j in range(2, form.n + 1)
    )
    return LiftFunction(form.n, f, psi, degrees, theta)


def build_lift_two_eigenvalue_n3(phi: AnalyticDisc, lam1: complex) -> LiftFunction:
    """Build the lift through diag(0, 0, lam1) for n = 3.

    The last row is (phi_3 / zeta^2, -phi_2 / zeta, phi_1) and both superdiagonal entries are
    zeta, so psi(0) has a two-dimensional kernel.

    Args:
        phi: Disc with phi(0) = (lam1, 0, 0).
        lam1: The simple eigenvalue, nonzero.

    Raises:
        InvalidInputError: If the disc is not three-dimensional or lam1 vanishes.
        ThetaViolatedError: If phi(0) or phi_3'(0) do not match.

    Returns:
        The lift function.
    """
    if phi.n != 3 or lam1 == 0:
        raise InvalidInputError("The two-eigenvalue lift needs n = 3 and a nonzero lam1")
    phi1, phi2, phi3 = phi.coords
    residuals = (
        abs(phi1.derivative_at_zero(0) - lam1),
        abs(phi2.derivative_at_zero(0)),
        abs(phi3.derivative_at_zero(0)),
        abs(phi3.derivative_at_zero(1)),
    )
    if max(residuals) > THETA_TOL:
        raise ThetaViolatedError(f"Vanishing conditions fail, worst residual {max(residuals):.3e}")
    return LiftFunction(
        3,
        (Superdiagonal.ZETA, Superdiagonal.ZETA),
        (phi1, _strip(phi2, 1, -1), _strip(phi3, 2)),
        (1, 2, 3),
        residuals,
    )


def sigma_of_lift(L: LiftFunction, zeta: complex) -> SigmaPoint:
    """Evaluate sigma_i(psi) = (-1)^(i+1) psi_i prod_{k=n-i+2}^{n} f_k without determinants.

    Args:
        L: The lift function.
        zeta: Point of the unit disc.

    Returns:
        sigma(psi(zeta)).
    """
    values = [entry.at(zeta) for entry in L.f]
    coords = []
    for i in range(1, L.n + 1):
        # f_k for k in [n-i+2..n] sits at offset k - 2 in values.
        product = math.prod(values[L.n - i :]) if i > 1 else 1
        coords.append((-1) ** (i + 1) * L.psi[i - 1](zeta) * product)
    return SigmaPoint(tuple(coords))


def shift_disc(phi: AnalyticDisc, lam: complex) -> AnalyticDisc:
    """Return the disc zeta -> sigma(M(zeta) - lam I) given phi = sigma(M).

    The shift is affine in the coordinates, so it acts on the coefficient table directly.

    Args:
        phi: The disc.
        lam: The shift.

    Returns:
        The shifted disc, with the same degree cap.
    """
    affine = shift_matrix(phi.n, lam)
    table = affine[:, 1:] @ phi.coefficients
    table[:, 0] += affine[:, 0]
    return AnalyticDisc.from_coefficients(table, degree_cap=phi.degree_cap)


def observed_vanishing_orders(
    form: NilpotentJordanForm, direction: Any, steps: Any
) -> tuple[float, ...]:
    """Return the log-log slopes of t -> |sigma_i(form + t M)|.

    Args:
        form: The Jordan form.
        direction: Perturbation direction M.
        steps: Positive values of t.

    Returns:
        One least-squares slope per coordinate.
    """
    base = form.matrix()
    perturbation = as_cmatrix(direction)
    ts = np.asarray(steps, dtype=np.float64)
    values = np.array([sigma(base + t * perturbation).array for t in ts])
    tiny = np.finfo(np.float64).tiny
    logs = np.log(np.maximum(np.abs(values), tiny))
    return tuple(float(np.polyfit(np.log(ts), logs[:, i], 1)[0]) for i in range(form.n))


@dataclass(frozen=True, eq=False)
class MatrixDisc:
    """Matrix disc zeta -> Q(zeta) F(zeta) Q(zeta)^(-1) with Q(zeta) = P0 expm((zeta/zeta_end) L).

    Q is holomorphic and invertible, so sigma of the disc equals sigma of the family F.

    Attributes:
        family: The holomorphic family F.
        left: P0, the conjugation at 0.
        log: L, a logarithm of P0^(-1) S where S is the conjugation at zeta_end.
        zeta_end: The second interpolation node.
        lift: The lift function F is built from, when there is one.
    """

    family: Callable[[complex], CMatrix]
    left: CMatrix
    log: CMatrix
    zeta_end: complex
    lift: LiftFunction | None = None

    def conjugator(self, zeta: complex) -> CMatrix:
        """Return Q(zeta).

        Args:
            zeta: Point of the unit disc.

        Returns:
            The conjugating matrix.
        """
        return self.left @ scipy.linalg.expm((zeta / self.zeta_end) * self.log)

    def __call__(self, zeta: complex) -> CMatrix:
        """Evaluate the disc.

        Args:
            zeta: Point of the unit disc.

        Returns:
            The matrix value.
        """
        conjugator = self.conjugator(zeta)
        product = conjugator @ self.family(zeta)
        return scipy.linalg.solve(conjugator.T, product.T).T


def conjugated_disc(
    family: Callable[[complex], CMatrix],
    start: Any,
    end: Any,
    zeta_end: complex,
    left: CMatrix | None = None,
    seed: int = DEFAULT_SEED,
) -> MatrixDisc:
    """Conjugate a holomorphic family so that it passes through start at 0 and end at zeta_end.

    Args:
        family: Holomorphic matrix family, cyclic at zeta_end.
        start: Value wanted at 0.
        end: Cyclic value wanted at zeta_end.
        zeta_end: Nonzero node.
        left: Conjugation taking family(0) to start; matched through Krylov bases if omitted.
        seed: Seed of the Krylov vectors.

    Raises:
        InvalidInputError: If zeta_end is zero.

    Returns:
        The matrix disc.
    """
    if zeta_end == 0:
        raise InvalidInputError("The second node must be nonzero")
    if left is None:
        left = cyclic_similarity(family(0), start, seed)
    right = cyclic_similarity(family(zeta_end), end, seed)
    log, error = scipy.linalg.logm(scipy.linalg.solve(left, right), disp=False)
    logger.debug("Endpoint conjugation logm error estimate %s", error)
    return MatrixDisc(family, left, np.asarray(log, dtype=np.complex128), zeta_end)


def verify_matrix_disc(  # pylint: disable=too-many-arguments, too-many-positional-arguments
    disc: MatrixDisc,
    phi: AnalyticDisc,
    start: Any,
    end: Any,
    samples: int = LIFT_VERIFY_SAMPLES,
    tol: float = LIFT_VERIFY_TOL,
    radius: float = LIFT_VERIFY_RADIUS,
) -> float:
    """Re-check a matrix disc: sigma of it equals phi on a circle and the endpoints match.

    Each residual is divided by the condition number of Q at its node, the accuracy a
    conjugation by Q can deliver in floating point.

    Args:
        disc: The matrix disc.
        phi: The disc in G_n it should lift.
        start: Expected value at 0.
        end: Expected value at the second node.
        samples: Number of sample points on |zeta| = radius.
        tol: Largest acceptable scaled residual.
        radius: Radius of the sample circle, in (0, 1).

    Raises:
        InvalidInputError: If the radius is outside (0, 1).
        LiftVerificationError: If a scaled residual exceeds tol.

    Returns:
        The worst scaled residual.
    """
    if not 0 < radius < 1:
        raise InvalidInputError(f"The sample radius must lie in (0, 1), got {radius}")

    def scaled(zeta: complex, residual: float) -> float:
        """Divide a residual by the conditioning of Q(zeta).

        Args:
            zeta: The node.
            residual: The raw residual.

        Returns:
            The scaled residual.
        """
        return residual / max(1.0, float(np.linalg.cond(disc.conjugator(zeta))))

    nodes = radius * np.exp(2j * np.pi * np.arange(samples) / samples)
    residuals = [
        scaled(zeta, float(np.max(np.abs(sigma(disc(zeta)).array - phi(zeta)))))
        for zeta in nodes
    ]
    residuals.append(scaled(0, float(np.max(np.abs(disc(0) - as_cmatrix(start))))))
    residuals.append(
        scaled(disc.zeta_end, float(np.max(np.abs(disc(disc.zeta_end) - as_cmatrix(end)))))
    )
    worst = max(residuals)
    if worst > tol:
        raise LiftVerificationError(f"Lift residual {worst:.3e} above {tol:.1e}")
    logger.debug("Lift verified, worst scaled residual %s", worst)
    return worst


def _eigenbasis(M: CMatrix, values: Iterable[complex], tol: float) -> CMatrix:
    """Stack eigenspace bases of a diagonalisable matrix.

    Args:
        M: The matrix.
        values: Its distinct eigenvalues.
        tol: Relative rank threshold.

    Raises:
        SingularMatrixError: If the eigenspaces do not span.

    Returns:
        The basis, eigenspaces in the given order.
    """
    identity = np.eye(M.shape[0])
    spaces = [scipy.linalg.null_space(M - value * identity, rcond=tol) for value in values]
    basis = np.hstack(spaces)
    if basis.shape[1] != M.shape[0] or np.linalg.cond(basis) > _SINGULAR_CONDITION:
        raise SingularMatrixError("Eigenspaces do not span")
    return basis


def lift_through(  # pylint: disable=too-many-arguments, too-many-positional-arguments
    B: Any,
    A: Any,
    phi: AnalyticDisc,
    zeta0: complex,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
    declared_b: ClusterHint | None = None,
) -> MatrixDisc:
    """Lift phi to a matrix disc through B at 0 and A at zeta0.

    B has one eigenvalue lambda, or for n = 3 two eigenvalues with a two-dimensional eigenspace.
    The whole picture is shifted by lambda, the lift is built in the nilpotent picture and the
    shift undone on the matrices.

    Args:
        B: Matrix at 0.
        A: Cyclic matrix at zeta0.
        phi: Disc with phi(0) = sigma(B) and phi(zeta0) = sigma(A).
        zeta0: Nonzero node.
        tol: Clustering tolerance and rank threshold.
        seed: Seed for root finding and Krylov vectors.
        declared_b: Optional exact cluster structure of B.

    Raises:
        InterpolationError: If phi misses sigma(B) or sigma(A).
        NotCyclicError: If A is derogatory.
        NotSingleEigenvalueError: If B has an unsupported spectrum.

    Returns:
        The verified matrix disc.
    """
    start, end = as_cmatrix(B), as_cmatrix(A)
    if phi.residual(0, sigma(start)) > INTERPOLATION_TOL:
        raise InterpolationError("phi(0) does not match sigma(B)")
    if phi.residual(zeta0, sigma(end)) > INTERPOLATION_TOL:
        raise InterpolationError("phi(zeta0) does not match sigma(A)")
    if not is_cyclic(end, tol=tol, seed=seed):
        raise NotCyclicError("A must be cyclic")
    data = spectral_data(start, tol=tol, declared=declared_b, seed=seed)
    n = start.shape[0]
    identity = np.eye(n, dtype=np.complex128)
    if len(data.eigen) == 1:
        lam = data.eigen[0].value
        form, left = nilpotent_normal_form(
            start, tol=tol, reduction=Reduction.SHIFT, declared=((lam, n),), seed=seed
        )
        lift = build_lift(shift_disc(phi, lam), form)
    elif n == 3 and len(data.eigen) == 2 and max(info.geo_mult for info in data.eigen) == 2:
        double, simple = sorted(data.eigen, key=lambda info: -info.geo_mult)
        lam = double.value
        lift = build_lift_two_eigenvalue_n3(shift_disc(phi, lam), simple.value - lam)
        values = (lam, simple.value)
        at_zero = lift.matrix(0) + lam * identity
        left = _eigenbasis(start, values, tol) @ np.linalg.inv(_eigenbasis(at_zero, values, tol))
    else:
        raise NotSingleEigenvalueError(
            f"Cannot lift through a spectrum with {len(data.eigen)} clusters"
        )

    def family(zeta: complex) -> CMatrix:
        """Evaluate psi(zeta) + lambda I.

        Args:
            zeta: Point of the unit disc.

        Returns:
            The matrix.
        """
        return lift.matrix(zeta) + lam * identity

    disc = dataclasses.replace(
        conjugated_disc(family, start, end, zeta0, left=left, seed=seed), lift=lift
    )
    verify_matrix_disc(disc, phi, start, end)
    logger.info("Lifted disc through B (F=%s) and A", [entry.value for entry in lift.f])
    return disc
