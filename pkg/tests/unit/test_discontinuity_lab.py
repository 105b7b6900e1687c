# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.

"""Test the discontinuity_lab module."""

import numpy as np
import pytest

from spectral_lempert_lab.bounds import Verdict
from spectral_lempert_lab.configuration import RunConfig
from spectral_lempert_lab.discontinuity_lab import (
    B_alpha,
    PerturbationSpec,
    build_perturbation,
    cyclic_approximants,
    discontinuity_certificate,
    example_5_1,
    example_5_2,
    green_reduction,
    green_vs_lempert_chain,
    lower_bound_exponent,
    verify_det_identity,
)
from spectral_lempert_lab.errors import (
    CertificateFailedError,
    ChainInconclusiveError,
    InvalidInputError,
    NotCyclicError,
)
from spectral_lempert_lab.gn_geometry import certified_inscribed_radius
from spectral_lempert_lab.matrix_core import is_cyclic
from spectral_lempert_lab.payloads import MatrixPayload
from tests.unit.factories.lab_factory import PerturbationSpecFactory

ADMISSIBLE = [
    (2, ()),
    (3, ()),
    (3, (2,)),
    (3, (3,)),
    (4, (2, 3)),
    (4, (3,)),
    (5, (2, 4)),
    (5, (3, 4, 5)),
    (6, (2, 3, 4, 5)),
    (6, (4,)),
]


@pytest.mark.parametrize(
    "m, J, delta",
    [
        pytest.param(m, J, delta, id=f"m={m} J={list(J)} delta={delta}")
        for m, J in ADMISSIBLE
        for delta in (1e-3, 1e-2, 1e-1)
    ],
)
def test_verify_det_identity(m: int, J: tuple, delta: float):  # pylint: disable=invalid-name
    """
    arrange: An admissible perturbation of a nilpotent block.
    act: Compare sigma(B_0) with the determinant identity.
    assert: Only the last coordinate survives, its modulus is delta^(m-r) and its sign (-1)^r.
    """
    spec = PerturbationSpec(n=m, m=m, J=J, delta=delta)

    check = verify_det_identity(spec)

    assert check.residual <= 1e-12
    assert check.observed_sign == (-1) ** len(J)


@pytest.mark.parametrize(
    "kwargs",
    [
        pytest.param({"n": 3, "m": 1, "J": ()}, id="m below 2"),
        pytest.param({"n": 3, "m": 4, "J": ()}, id="m above n"),
        pytest.param({"n": 4, "m": 4, "J": (3, 2)}, id="unsorted J"),
        pytest.param({"n": 3, "m": 3, "J": (1,)}, id="J holds 1"),
        pytest.param({"n": 3, "m": 3, "J": (2, 3)}, id="rank above m - 2"),
        pytest.param({"n": 3, "m": 3, "J": (), "delta": -0.1}, id="negative delta"),
        pytest.param({"n": 4, "m": 3, "J": (), "A1": ((0.5, 0), (0, 0.5))}, id="A1 shape"),
        pytest.param({"n": 4, "m": 3, "J": (), "A1": ((0,),)}, id="A1 singular"),
        pytest.param({"n": 4, "m": 3, "J": (), "A1": ((1.5,),)}, id="A1 outside"),
    ],
)
def test_perturbation_spec_rejects_invalid_input(kwargs: dict):
    """
    arrange: An invalid perturbation.
    act: Build it.
    assert: InvalidInputError is raised.
    """
    with pytest.raises(InvalidInputError):
        PerturbationSpecFactory(**kwargs)


@pytest.mark.parametrize(
    "m, J, k",
    [
        pytest.param(3, (), 1, id="zero block"),
        pytest.param(4, (2, 3), 3, id="run of two"),
        pytest.param(4, (2, 4), 2, id="broken run"),
    ],
)
def test_perturbation_spec_largest_block(m: int, J: tuple, k: int):  # pylint: disable=invalid-name
    """
    arrange: Perturbations with various superdiagonal patterns.
    act: Read the largest Jordan block size.
    assert: It is one more than the longest run in J.
    """
    spec = PerturbationSpecFactory(n=m, m=m, J=J)

    assert (spec.k, spec.r) == (k, len(J))


def test_perturbation_spec_hint():
    """
    arrange: A perturbation with a 1×1 invertible block.
    act: Read its cluster structure.
    assert: 0 with multiplicity m comes first, then the eigenvalue of A_1.
    """
    spec = PerturbationSpecFactory(n=4, m=3, A1=((0.5,),))

    (zero, eigen) = spec.hint()

    assert zero == (0j, 3)
    assert eigen[0] == pytest.approx(0.5)
    assert eigen[1] == 1


def test_build_perturbation():
    """
    arrange: The factory perturbation with J = {2}.
    act: Build A, X and B.
    assert: A carries its 1 at (1, 2), X the entries -1 at (2, 3) and 1 at (3, 1).
    """
    spec = PerturbationSpecFactory()

    A, X, B = build_perturbation(spec)  # pylint: disable=invalid-name

    expected_a = np.zeros((3, 3))
    expected_a[0, 1] = 1.0
    expected_x = np.zeros((3, 3))
    expected_x[1, 2] = -1.0
    expected_x[2, 0] = 1.0
    np.testing.assert_array_equal(A, expected_a)
    np.testing.assert_array_equal(X, expected_x)
    np.testing.assert_allclose(B, expected_a + 0.1 * expected_x)


def test_cyclic_approximants():
    """
    arrange: The factory perturbation.
    act: Build the approximant of index 10.
    assert: The vacant superdiagonal slot holds 1/10 and index 0 is rejected.
    """
    spec = PerturbationSpecFactory()

    approximant = cyclic_approximants(spec, 10)

    assert approximant[0, 1] == 1.0
    assert approximant[1, 2] == pytest.approx(0.1)
    with pytest.raises(InvalidInputError):
        cyclic_approximants(spec, 0)


@pytest.mark.parametrize(
    "spec",
    [
        pytest.param(PerturbationSpec(3, 3, (2,), 0.1), id="n=3 J=[2]"),
        pytest.param(PerturbationSpec(4, 4, (3,), 0.1), id="n=4 J=[3]"),
    ],
)
def test_cyclic_approximants_are_cyclic_at_distance_one_over_j(spec: PerturbationSpec):
    """
    arrange: A derogatory A and its approximants A^j for j = 1, ..., 100.
    act: Test cyclicity and measure the distance to A.
    assert: Every approximant is cyclic and lies at spectral-norm distance 1/j from A.
    """
    A, _, _ = build_perturbation(  # pylint: disable=invalid-name
        PerturbationSpec(spec.n, spec.m, spec.J, 0.0)
    )

    for j in range(1, 101):
        approximant = cyclic_approximants(spec, j)

        assert is_cyclic(approximant)
        assert np.linalg.norm(approximant - A, 2) == pytest.approx(1 / j, rel=1e-12)


def test_lower_bound_exponent():
    """
    arrange: The factory perturbation, where (m - r) k / m = 4/3.
    act: Fit the exponent of the lower bound over three decades of delta.
    assert: The slope is 4/3.
    """
    slope = lower_bound_exponent(PerturbationSpecFactory(), [1e-3, 1e-2, 1e-1])

    assert slope == pytest.approx(4 / 3, abs=0.05)


def test_lower_bound_exponent_needs_two_deltas():
    """
    arrange: A single positive delta.
    act: Fit the exponent.
    assert: InvalidInputError is raised.
    """
    with pytest.raises(InvalidInputError):
        lower_bound_exponent(PerturbationSpecFactory(), [0.0, 1e-2])


def test_discontinuity_certificate(fast_config: RunConfig):
    """
    arrange: The factory perturbation at delta = 0.1.
    act: Certify the discontinuity against two approximants.
    assert: The conclusion holds with a positive margin and every approximant has a witness.
    """
    certificate = discontinuity_certificate(PerturbationSpecFactory(), (10, 100), fast_config)

    assert certificate.conclusion
    assert certificate.margin >= 1e-4
    assert certificate.lower.value == pytest.approx(0.1 ** (4 / 3), rel=1e-6)
    assert [upper.j for upper in certificate.upper_family] == [10, 100]
    assert max(upper.value for upper in certificate.upper_family) <= 0.01 + 1e-3
    assert set(certificate.to_dict()) == {
        "pair",
        "lower",
        "uppers",
        "conclusion",
        "margin",
        "parameter",
    }


def test_discontinuity_certificate_survives_shrinking_delta(fast_config: RunConfig):
    """
    arrange: The factory perturbation at delta = 0.1 and at delta ten times smaller.
    act: Certify at both.
    assert: Both conclude, and the ratio of the lower to the upper bound grows.
    """
    certificates = [
        discontinuity_certificate(PerturbationSpecFactory(delta=delta), (10,), fast_config)
        for delta in (0.1, 0.01)
    ]

    ratios = [
        certificate.lower.value / max(upper.value for upper in certificate.upper_family)
        for certificate in certificates
    ]
    assert all(certificate.conclusion for certificate in certificates)
    assert ratios[1] > ratios[0]


@pytest.mark.parametrize(
    "n, J, exponent",
    [
        pytest.param(2, (), 1.0, id="n=2 J=[]"),
        pytest.param(3, (2,), 4 / 3, id="n=3 J=[2]"),
        pytest.param(4, (3,), 1.5, id="n=4 J=[3]"),
    ],
)
def test_discontinuity_certificate_across_dimensions(
    n: int, J: tuple, exponent: float, fast_config: RunConfig  # pylint: disable=invalid-name
):
    """
    arrange: A nilpotent derogatory A of size n perturbed with delta = 0.1.
    act: Certify the discontinuity against the approximants 10 and 100.
    assert: The certificate holds and the lower bound is delta^((m - r) k / m).
    """
    certificate = discontinuity_certificate(
        PerturbationSpec(n, n, J, 0.1), (10, 100), fast_config
    )

    assert certificate.conclusion
    assert certificate.margin >= 1e-4
    assert certificate.lower.value == pytest.approx(0.1**exponent, rel=1e-6)


def test_discontinuity_certificate_auto_shrink(fast_config: RunConfig):
    """
    arrange: A delta so large that B leaves the spectral ball.
    act: Certify with automatic shrinking.
    assert: The certificate holds at a smaller delta.
    """
    spec = PerturbationSpecFactory(delta=2.0)

    certificate = discontinuity_certificate(spec, (10,), fast_config, auto_shrink=True)

    assert certificate.conclusion
    assert certificate.parameter < 1


def test_discontinuity_certificate_failure_keeps_certificate(fast_config: RunConfig):
    """
    arrange: A required margin no gap can reach.
    act: Certify.
    assert: CertificateFailedError carries the failed certificate.
    """
    cfg = fast_config.copy(update={"margin": 0.5})

    with pytest.raises(CertificateFailedError) as err:
        discontinuity_certificate(PerturbationSpecFactory(), (10,), cfg)

    assert err.value.certificate is not None
    assert not err.value.certificate.conclusion


@pytest.mark.parametrize(
    "delta, j_list, error",
    [
        pytest.param(0.0, (10,), CertificateFailedError, id="delta zero"),
        pytest.param(0.1, (), InvalidInputError, id="no approximants"),
        pytest.param(0.1, (0, 10), InvalidInputError, id="index zero"),
    ],
)
def test_discontinuity_certificate_rejects(delta: float, j_list: tuple, error: type):
    """
    arrange: A degenerate perturbation or approximant list.
    act: Certify.
    assert: The matching error is raised.
    """
    with pytest.raises(error):
        discontinuity_certificate(PerturbationSpecFactory(delta=delta), j_list)


def test_example_5_1(fast_config: RunConfig):
    """
    arrange: The nilpotent matrix and diag(eps, j eps, j^2 eps) at eps = 0.1.
    act: Certify the gap between the spectral ball and the symmetrized polydisc.
    assert: The lower bound is eps^2 and the upper bound at most eps^3 over the ball radius.
    """
    certificate = example_5_1(0.1, fast_config)

    assert certificate.conclusion
    assert certificate.lower.value == pytest.approx(0.01, abs=1e-12)
    (upper,) = certificate.upper_family
    assert upper.value <= 0.001 / (0.9 * certified_inscribed_radius(3)) + 1e-9
    assert certificate.parameter == 0.1


@pytest.mark.parametrize(
    "eps, error",
    [
        pytest.param(0.0, CertificateFailedError, id="zero"),
        pytest.param(0.3, InvalidInputError, id="too large"),
        pytest.param(-0.1, InvalidInputError, id="negative"),
    ],
)
def test_example_5_1_rejects(eps: float, error: type):
    """
    arrange: An epsilon outside (0, 0.2].
    act: Certify.
    assert: The matching error is raised.
    """
    with pytest.raises(error):
        example_5_1(eps)


def test_example_5_2(fast_config: RunConfig):
    """
    arrange: The nilpotent matrix and 0.1 I + J_3.
    act: Build the sandwich report.
    assert: The bounds are consistent, the spectral bound is mu^2 and no lift applies.
    """
    report = example_5_2(0.1, fast_config)

    assert report.verdict is Verdict.CONSISTENT
    assert report.lower_bounds["bharali"] == pytest.approx(0.01, abs=1e-9)
    assert report.lower_bounds["caratheodory3"] == pytest.approx(0.1, abs=1e-6)
    assert "ball" in report.upper_bounds
    assert "lift" not in report.upper_bounds


def test_example_5_2_skips_ball_far_from_origin(fast_config: RunConfig):
    """
    arrange: mu = 0.4i, whose sigma image lies outside the inscribed ball.
    act: Build the sandwich report.
    assert: The ball bound is absent.
    """
    report = example_5_2(0.4j, fast_config)

    assert "ball" not in report.upper_bounds
    assert report.upper_bounds["disc_search"] <= 0.4 + 5e-3


def test_example_5_2_rejects_mu_outside_disc():
    """
    arrange: |mu| = 1.
    act: Build the report.
    assert: InvalidInputError is raised.
    """
    with pytest.raises(InvalidInputError):
        example_5_2(1.0)


def test_B_alpha():  # pylint: disable=invalid-name
    """
    arrange: n = 3, mu = 0.2 and alpha = 0.5.
    act: Build B_alpha.
    assert: mu sits on the diagonal and alpha on the superdiagonal.
    """
    matrix = B_alpha(3, 0.2, 0.5)

    np.testing.assert_array_equal(matrix, 0.2 * np.eye(3) + 0.5 * np.eye(3, k=1))


def test_green_reduction_is_alpha_independent_and_idempotent():
    """
    arrange: B_alpha for two values of alpha.
    act: Reduce both.
    assert: The reductions agree with mu I and reducing twice changes nothing.
    """
    reduced = green_reduction(B_alpha(3, 0.2, 0.5))

    np.testing.assert_allclose(reduced, green_reduction(B_alpha(3, 0.2, 0)), atol=1e-14)
    np.testing.assert_allclose(reduced, 0.2 * np.eye(3), atol=1e-14)
    np.testing.assert_array_equal(green_reduction(reduced), reduced)


def test_green_reduction_rejects_matrix_outside_ball():
    """
    arrange: A matrix with an eigenvalue of modulus 1.
    act: Reduce it.
    assert: InvalidInputError is raised.
    """
    with pytest.raises(InvalidInputError):
        green_reduction(np.diag([1.0, 0.0]))


def test_green_vs_lempert_chain(golden, fast_config: RunConfig):
    """
    arrange: The frozen witness diag(0.5, -0.5, 0), mu = 0 and alpha = 0.1.
    act: Run the chain.
    assert: The lower bound is 0.5, the upper bound stays below the ceiling, Green agrees.
    """
    witness = golden("green_witness")
    matrix = MatrixPayload.parse_obj(witness["A"]).to_matrix()

    report = green_vs_lempert_chain(matrix, witness["mu"], witness["alpha"], fast_config)

    assert report["conclusion"]
    assert report["lower_B0"]["value"] == pytest.approx(witness["lower"], abs=1e-9)
    assert report["upper_Balpha"]["value"] < witness["upper_ceiling"]
    assert report["green_reduction_residual"] <= 1e-14
    assert report["margin"] >= 1e-4


@pytest.mark.parametrize(
    "matrix, mu, alpha, error",
    [
        pytest.param(np.diag([0.5, -0.5, 0.0]), 0.0, 0.0, InvalidInputError, id="alpha zero"),
        pytest.param(np.diag([0.5, -0.5, 0.0]), 1.2, 0.1, InvalidInputError, id="mu outside"),
        pytest.param(0.2 * np.eye(3), 0.0, 0.1, InvalidInputError, id="one eigenvalue"),
        pytest.param(np.diag([0.5, 0.5, -0.5]), 0.0, 0.1, NotCyclicError, id="derogatory"),
    ],
)
def test_green_vs_lempert_chain_rejects(
    matrix: np.ndarray, mu: complex, alpha: complex, error: type
):
    """
    arrange: A chain input violating a precondition.
    act: Run the chain.
    assert: The matching error is raised.
    """
    with pytest.raises(error):
        green_vs_lempert_chain(matrix, mu, alpha)


def test_green_vs_lempert_chain_inconclusive(golden, fast_config: RunConfig):
    """
    arrange: The frozen witness and a margin the chain cannot reach.
    act: Run the chain.
    assert: ChainInconclusiveError carries the report.
    """
    witness = golden("green_witness")
    matrix = MatrixPayload.parse_obj(witness["A"]).to_matrix()
    cfg = fast_config.copy(update={"margin": 0.5})

    with pytest.raises(ChainInconclusiveError) as err:
        green_vs_lempert_chain(matrix, witness["mu"], witness["alpha"], cfg)

    assert not err.value.report["conclusion"]
