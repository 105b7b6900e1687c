# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.

"""Test the matrix_core module."""

import numpy as np
import pytest

from spectral_lempert_lab.errors import (
    AmbiguousClusteringError,
    InvalidInputError,
    SingularMatrixError,
)
from spectral_lempert_lab.matrix_core import (
    characteristic_polynomial,
    companion,
    cyclic_similarity,
    in_spectral_ball,
    is_cyclic,
    krylov_matrix,
    max_root_moduli,
    mobius_matrix,
    numerical_rank,
    poly_roots,
    poly_roots_batch,
    polynomial_from_sigma,
    sigma,
    sigma_of_roots,
    spectral_data,
    spectral_radius,
)
from spectral_lempert_lab.models import EigenInfo, Polynomial, SigmaPoint
from tests.unit.factories.lab_factory import SigmaPointFactory


def test_sigma_of_zero_matrix():
    """
    arrange: The 3×3 zero matrix.
    act: Compute sigma.
    assert: Every coordinate is zero.
    """
    assert np.all(sigma(np.zeros((3, 3))).array == 0)


def test_sigma_of_diagonal_matrix():
    """
    arrange: diag(0.5, -0.25, 0.1j).
    act: Compute sigma.
    assert: The coordinates are the elementary symmetric functions of the diagonal.
    """
    a, b, c = 0.5, -0.25, 0.1j

    coords = sigma(np.diag([a, b, c])).array

    np.testing.assert_allclose(coords, [a + b + c, a * b + a * c + b * c, a * b * c], atol=1e-15)


def test_characteristic_polynomial_is_monic():
    """
    arrange: A dense 2×2 matrix with trace 0.5 and determinant 0.05.
    act: Compute the characteristic polynomial.
    assert: It is t^2 - 0.5 t + 0.05.
    """
    matrix = np.array([[0.3, 0.2], [0.05, 0.2]])

    poly = characteristic_polynomial(matrix)

    np.testing.assert_allclose(poly.array, [0.05, -0.5, 1.0], atol=1e-15)


def test_polynomial_from_sigma_matches_characteristic_polynomial(rng: np.random.Generator):
    """
    arrange: A random 4×4 matrix.
    act: Rebuild the polynomial from sigma.
    assert: It equals the characteristic polynomial.
    """
    matrix = 0.2 * (rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))

    rebuilt = polynomial_from_sigma(sigma(matrix))

    np.testing.assert_allclose(rebuilt.array, characteristic_polynomial(matrix).array, atol=1e-14)


def test_sigma_of_roots_batch():
    """
    arrange: Two root pairs.
    act: Compute their elementary symmetric functions.
    assert: Each row holds the sum and the product.
    """
    table = sigma_of_roots([[1.0, 2.0], [0.5j, -0.5j]])

    np.testing.assert_allclose(table, [[3.0, 2.0], [0.0, 0.25]])


@pytest.mark.parametrize(
    "roots",
    [
        pytest.param((0.5, -0.25, 0.1j), id="distinct"),
        pytest.param((0.3, 0.3, -0.6), id="double root"),
        pytest.param((0.9j, -0.9j, 0.0, 0.2 + 0.2j), id="quartic"),
    ],
)
def test_poly_roots_recovers_roots(roots: tuple):
    """
    arrange: The monic polynomial with the given roots.
    act: Find its roots.
    assert: The roots match up to the accuracy multiplicity allows.
    """
    coeffs = np.poly(roots)[::-1]

    found = poly_roots(Polynomial.from_array(coeffs))

    expected = np.sort_complex(np.array(roots, dtype=np.complex128))
    np.testing.assert_allclose(np.sort_complex(np.array(found)), expected, atol=1e-6)


def test_poly_roots_batch_rows_are_sorted():
    """
    arrange: A batch of two cubics.
    act: Find the roots.
    assert: Each row is sorted by real then imaginary part.
    """
    table = np.array([np.poly([0.1, -0.3, 0.2])[::-1], np.poly([0.1 + 0.5j, -0.4, 0.0])[::-1]])

    roots = poly_roots_batch(table)

    np.testing.assert_allclose(roots[0], [-0.3, 0.1, 0.2], atol=1e-12)
    np.testing.assert_allclose(roots[1], [-0.4, 0.0, 0.1 + 0.5j], atol=1e-12)


@pytest.mark.parametrize(
    "coeffs",
    [
        pytest.param([1.0], id="constant"),
        pytest.param([[1.0, 0.0]], id="vanishing leading coefficient"),
    ],
)
def test_poly_roots_batch_rejects_invalid_input(coeffs: list):
    """
    arrange: A degenerate coefficient table.
    act: Find the roots.
    assert: InvalidInputError is raised.
    """
    with pytest.raises(InvalidInputError):
        poly_roots_batch(coeffs)


def test_max_root_moduli():
    """
    arrange: Monic polynomials with known roots.
    act: Compute the largest root moduli.
    assert: They match.
    """
    table = np.array([np.poly([0.1, -0.7])[::-1], np.poly([0.3j, 0.2])[::-1]])

    np.testing.assert_allclose(max_root_moduli(table), [0.7, 0.3], atol=1e-12)


def test_numerical_rank():
    """
    arrange: A rank-two 3×3 matrix and the zero matrix.
    act: Compute numerical ranks.
    assert: The ranks are 2 and 0.
    """
    assert numerical_rank(np.diag([1.0, 1e-3, 0.0])) == 2
    assert numerical_rank(np.zeros((3, 3))) == 0


def test_spectral_data_of_distinct_spectrum():
    """
    arrange: diag(0.5, -0.5, 0).
    act: Compute the spectral data.
    assert: Three simple clusters, sorted by real part.
    """
    data = spectral_data(np.diag([0.5, -0.5, 0.0]))

    assert [info.alg_mult for info in data.eigen] == [1, 1, 1]
    np.testing.assert_allclose([info.value for info in data.eigen], [-0.5, 0.0, 0.5], atol=1e-12)
    assert data.n == 3
    assert data.spectral_radius == pytest.approx(0.5)


@pytest.mark.parametrize(
    "superdiagonal, geo_mult, min_mult",
    [
        pytest.param([1.0, 1.0], 1, 3, id="single block"),
        pytest.param([0.0, 1.0], 2, 2, id="blocks 1 and 2"),
        pytest.param([0.0, 0.0], 3, 1, id="zero matrix"),
    ],
)
def test_spectral_data_of_nilpotent_matrix(superdiagonal: list, geo_mult: int, min_mult: int):
    """
    arrange: A nilpotent 3×3 matrix with the given superdiagonal and its declared spectrum.
    act: Compute the spectral data.
    assert: The geometric and minimal multiplicities follow the Jordan blocks.
    """
    matrix = np.diag(np.array(superdiagonal, dtype=np.complex128), k=1)

    data = spectral_data(matrix, declared=[(0j, 3)])

    (info,) = data.eigen
    assert (info.alg_mult, info.geo_mult, info.min_mult) == (3, geo_mult, min_mult)


def test_spectral_data_rejects_bad_declaration():
    """
    arrange: A declared structure that does not add up to n.
    act: Compute the spectral data.
    assert: InvalidInputError is raised.
    """
    with pytest.raises(InvalidInputError):
        spectral_data(np.zeros((3, 3)), declared=[(0j, 2)])


def test_spectral_data_flags_near_collisions():
    """
    arrange: Two eigenvalues closer than ten times the tolerance but farther than it.
    act: Compute the spectral data.
    assert: AmbiguousClusteringError is raised.
    """
    with pytest.raises(AmbiguousClusteringError):
        spectral_data(np.diag([0.1, 0.1 + 5e-7, 0.5]), tol=1e-7)


def test_is_cyclic_on_companion_matrix():
    """
    arrange: The companion matrix of a point of G_3.
    act: Test cyclicity.
    assert: The matrix is cyclic.
    """
    assert is_cyclic(companion(SigmaPointFactory()))


@pytest.mark.parametrize(
    "matrix, declared, expected",
    [
        pytest.param(np.zeros((3, 3)), [(0j, 3)], False, id="zero"),
        pytest.param(np.diag([1.0, 0.0], k=1), [(0j, 3)], False, id="rank one nilpotent"),
        pytest.param(np.diag([1.0, 1.0], k=1), [(0j, 3)], True, id="Jordan block"),
        pytest.param(
            0.2 * np.eye(3) + 0.1 * np.diag([1.0, 1.0], k=1), [(0.2, 3)], True, id="B_alpha"
        ),
        pytest.param(np.diag([0.5, -0.5, 0.0]), None, True, id="distinct diagonal"),
    ],
)
def test_is_cyclic(matrix: np.ndarray, declared: list | None, expected: bool):
    """
    arrange: A matrix with known cyclicity.
    act: Test cyclicity.
    assert: The answer matches.
    """
    assert is_cyclic(matrix, declared=declared) is expected


def test_krylov_matrix_columns():
    """
    arrange: The shift matrix and the first basis vector.
    act: Build the Krylov matrix.
    assert: The columns are the successive images.
    """
    shift = np.diag([1.0, 1.0], k=-1)

    krylov = krylov_matrix(shift, [1.0, 0.0, 0.0])

    np.testing.assert_allclose(krylov, np.eye(3))


def test_cyclic_similarity_conjugates_to_companion():
    """
    arrange: A diagonal cyclic matrix and its companion matrix.
    act: Compute the similarity.
    assert: S M S^(-1) equals the companion matrix.
    """
    matrix = np.diag([0.1, -0.2, 0.3j]).astype(np.complex128)
    target = companion(sigma(matrix))

    similarity = cyclic_similarity(matrix, target)

    np.testing.assert_allclose(similarity @ matrix, target @ similarity, atol=1e-10)


def test_cyclic_similarity_rejects_derogatory_matrix():
    """
    arrange: The zero matrix, whose Krylov bases are singular.
    act: Compute the similarity.
    assert: SingularMatrixError is raised.
    """
    with pytest.raises(SingularMatrixError):
        cyclic_similarity(np.zeros((3, 3)), np.zeros((3, 3)))


def test_companion_round_trip():
    """
    arrange: A point of C^4.
    act: Compute sigma of its companion matrix.
    assert: The point is recovered.
    """
    point = SigmaPoint((0.1, -0.2j, 0.05, 0.01 + 0.01j))

    np.testing.assert_allclose(sigma(companion(point)).array, point.array, atol=1e-14)


def test_mobius_matrix_is_an_involution(rng: np.random.Generator):
    """
    arrange: A small random matrix and a Möbius parameter.
    act: Apply the automorphism twice.
    assert: The matrix is recovered and lam I goes to zero.
    """
    matrix = 0.2 * (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
    lam = 0.3 - 0.2j

    twice = mobius_matrix(lam, mobius_matrix(lam, matrix))

    np.testing.assert_allclose(twice, matrix, atol=1e-12)
    np.testing.assert_allclose(mobius_matrix(lam, lam * np.eye(3)), np.zeros((3, 3)), atol=1e-15)


def test_mobius_matrix_rejects_boundary_parameter():
    """
    arrange: A parameter on the unit circle.
    act: Apply the automorphism.
    assert: InvalidInputError is raised.
    """
    with pytest.raises(InvalidInputError):
        mobius_matrix(1.0, np.zeros((2, 2)))


@pytest.mark.parametrize(
    "matrix, margin, expected",
    [
        pytest.param(np.diag([0.5, -0.9]), 0.0, True, id="inside"),
        pytest.param(np.diag([0.5, -0.9]), 0.2, False, id="inside without margin"),
        pytest.param(np.diag([1.0, 0.0]), 0.0, False, id="boundary"),
    ],
)
def test_in_spectral_ball(matrix: np.ndarray, margin: float, expected: bool):
    """
    arrange: A diagonal matrix and a margin.
    act: Test membership in the spectral ball.
    assert: The answer follows the spectral radius.
    """
    assert in_spectral_ball(matrix, margin=margin) is expected


def test_spectral_radius():
    """
    arrange: A triangular matrix.
    act: Compute the spectral radius.
    assert: It is the largest diagonal modulus.
    """
    assert spectral_radius(np.array([[0.2, 5.0], [0.0, -0.6j]])) == pytest.approx(0.6)


@pytest.mark.parametrize(
    "nilpotent_part, geo_mult, min_mult",
    [
        pytest.param(np.diag([0.0, 1.0], k=1), 2, 2, id="blocks 1 and 2"),
        pytest.param(np.diag([1.0, 1.0], k=1), 1, 3, id="single block"),
        pytest.param(np.zeros((3, 3)), 3, 1, id="scalar"),
    ],
)
def test_spectral_data_keeps_shifted_repeated_eigenvalue_together(
    nilpotent_part: np.ndarray, geo_mult: int, min_mult: int
):
    """
    arrange: 0.3 I plus a nilpotent part, with no declared spectrum.
    act: Compute the spectral data from the characteristic roots.
    assert: One eigenvalue 0.3 of algebraic multiplicity 3 with the Jordan multiplicities.
    """
    data = spectral_data(0.3 * np.eye(3) + nilpotent_part)

    (info,) = data.eigen
    assert info.value == pytest.approx(0.3, abs=1e-9)
    assert (info.alg_mult, info.geo_mult, info.min_mult) == (3, geo_mult, min_mult)


def test_spectral_data_separates_repeated_and_simple_eigenvalues():
    """
    arrange: A 2×2 Jordan block at -0.2 next to a simple eigenvalue 0.5.
    act: Compute the spectral data.
    assert: Two clusters with multiplicities (2, 1, 2) and (1, 1, 1).
    """
    matrix = np.array([[-0.2, 1.0, 0.0], [0.0, -0.2, 0.0], [0.0, 0.0, 0.5]])

    data = spectral_data(matrix)

    assert [(info.alg_mult, info.geo_mult, info.min_mult) for info in data.eigen] == [
        (2, 1, 2),
        (1, 1, 1),
    ]
    np.testing.assert_allclose([info.value for info in data.eigen], [-0.2, 0.5], atol=1e-9)


def test_sigma_is_invariant_under_conjugation(rng: np.random.Generator):
    """
    arrange: Random 4×4 matrices and well conditioned random similarities.
    act: Compute sigma before and after conjugation.
    assert: The points agree.
    """
    for _ in range(10):
        matrix = 0.5 * (rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
        similarity = np.eye(4) + 0.2 * rng.standard_normal((4, 4))

        conjugated = similarity @ matrix @ np.linalg.inv(similarity)

        np.testing.assert_allclose(sigma(conjugated).array, sigma(matrix).array, atol=1e-10)


def test_mobius_matrix_maps_the_spectrum(rng: np.random.Generator):
    """
    arrange: Random 3×3 matrices of spectral radius 0.8 and random Möbius parameters.
    act: Apply the automorphism.
    assert: The eigenvalues are the Möbius images (lam - z) / (1 - conj(lam) z) of the old ones.
    """
    for _ in range(10):
        matrix = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        matrix *= 0.8 / np.max(np.abs(np.linalg.eigvals(matrix)))
        lam = 0.6 * rng.uniform() * np.exp(2j * np.pi * rng.uniform())
        eigenvalues = np.linalg.eigvals(matrix)

        image = mobius_matrix(lam, matrix)

        expected = sigma_of_roots([(lam - eigenvalues) / (1 - np.conj(lam) * eigenvalues)])[0]
        np.testing.assert_allclose(sigma(image).array, expected, atol=1e-10)


@pytest.mark.parametrize(
    "alg_mult, geo_mult, min_mult",
    [
        pytest.param(3, 0, 3, id="no eigenvector"),
        pytest.param(2, 3, 1, id="geometric above algebraic"),
        pytest.param(3, 1, 4, id="minimal above algebraic"),
        pytest.param(3, 1, 2, id="one block shorter than alg"),
        pytest.param(3, 2, 3, id="two blocks one of full size"),
        pytest.param(4, 3, 3, id="blocks exceed alg"),
    ],
)
def test_eigen_info_rejects_inconsistent_multiplicities(
    alg_mult: int, geo_mult: int, min_mult: int
):
    """
    arrange: Multiplicities that no Jordan structure realises.
    act: Build the eigenvalue record.
    assert: InvalidInputError is raised.
    """
    with pytest.raises(InvalidInputError):
        EigenInfo(0.1, alg_mult, geo_mult, min_mult)


@pytest.mark.parametrize(
    "alg_mult, geo_mult, min_mult",
    [
        pytest.param(1, 1, 1, id="simple"),
        pytest.param(3, 1, 3, id="single block"),
        pytest.param(3, 3, 1, id="diagonal"),
        pytest.param(4, 2, 3, id="blocks 1 and 3"),
    ],
)
def test_eigen_info_accepts_jordan_multiplicities(alg_mult: int, geo_mult: int, min_mult: int):
    """
    arrange: Multiplicities of an actual Jordan structure.
    act: Build the eigenvalue record.
    assert: The fields are kept.
    """
    info = EigenInfo(0.1, alg_mult, geo_mult, min_mult)

    assert (info.alg_mult, info.geo_mult, info.min_mult) == (alg_mult, geo_mult, min_mult)
