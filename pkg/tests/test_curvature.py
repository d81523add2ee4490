"""Curvature tensors: symmetries, contractions, closed forms, wire format."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hsckit import (
    DimensionMismatch,
    Direction,
    EinsteinFramePoint,
    FrameConstraintViolated,
    KahlerCurvatureTensor,
    NotUnitary,
    RegimeViolation,
    TensorFormatError,
    assemble_einstein_surface,
    chern_weil,
    constant_hsc_tensor,
    hsc,
    hsc_surface_closed_form,
    max_hsc_surface,
    product_tensor,
    ricci,
    scalar,
    sufficient_negativity,
    tensor_from_dict,
    tensor_to_dict,
    transform_frame,
    validate,
)
from helpers import hsc_bruteforce, random_kahler_tensor, random_unitary

finite = st.floats(min_value=-10, max_value=10, allow_nan=False)


# --- validation and canonicalization ---------------------------------------


def test_validate_constant_tensor_ok():
    assert validate(constant_hsc_tensor(2, -1.0)).ok


def test_validate_assembled_tensor_ok():
    T = assemble_einstein_surface(EinsteinFramePoint(-1.0, 0.25, 0.0))
    assert validate(T).ok


def test_validate_reports_injected_defect():
    T = assemble_einstein_surface(EinsteinFramePoint(-1.0, 0.25, 0.1))
    R = T.array.copy()
    R[0, 1, 0, 1] += 1e-3
    report = validate(R, 1e-9)
    assert not report.ok
    assert any(v.indices == (0, 1, 0, 1) for v in report.violations)


def test_canonicalization_records_residual():
    R = np.zeros((2, 2, 2, 2), dtype=complex)
    R[0, 0, 0, 0] = 1.0
    R[0, 1, 0, 1] = 0.5  # conjugate image left unset: asymmetric input
    T = KahlerCurvatureTensor(R)
    assert T.asymmetry > 0.1
    assert validate(T).ok  # canonicalized result is symmetric


def test_tensor_is_readonly():
    T = constant_hsc_tensor(2, 1.0)
    with pytest.raises(ValueError):
        T.array[0, 0, 0, 0] = 5.0


def test_bad_shape_rejected():
    with pytest.raises(DimensionMismatch):
        KahlerCurvatureTensor(np.zeros((2, 2, 2)))
    with pytest.raises(DimensionMismatch):
        KahlerCurvatureTensor(np.zeros((2, 2, 2, 3)))


# --- hsc --------------------------------------------------------------------


@pytest.mark.parametrize("v", [[1, 0, 0], [0, 1j, 0], [1, 1, 1], [0.3, -2j, 1 + 1j]])
def test_constant_tensor_has_constant_hsc(v):
    T = constant_hsc_tensor(3, 0.7)
    assert hsc(T, v) == pytest.approx(0.7, abs=1e-12)


def test_hsc_assembled_surface_mixed_direction():
    T = assemble_einstein_surface(EinsteinFramePoint(-1.0, 0.25, 0.0))
    assert hsc(T, np.array([1.0, 1.0]) / np.sqrt(2)) == pytest.approx(-0.25, abs=1e-12)


def test_hsc_coordinate_direction_reads_diagonal_entry():
    T = random_kahler_tensor(3, seed=5)
    e1 = np.array([1.0, 0.0, 0.0])
    assert hsc(T, e1) == pytest.approx(float(T.array[0, 0, 0, 0].real), abs=1e-12)


@pytest.mark.parametrize("seed", range(4))
def test_hsc_matches_bruteforce_oracle(seed):
    T = random_kahler_tensor(3, seed=seed)
    rng = np.random.default_rng(100 + seed)
    for _ in range(5):
        v = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        assert hsc(T, v) == pytest.approx(hsc_bruteforce(T, v), abs=1e-10)


def test_hsc_scale_invariant():
    T = random_kahler_tensor(2, seed=9)
    v = np.array([0.3 + 1j, -0.7])
    base = hsc(T, v)
    for lam in (2.0, -3.5, 1j, 0.1 - 0.2j):
        assert hsc(T, lam * v) == pytest.approx(base, rel=1e-12)


def test_hsc_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        hsc(constant_hsc_tensor(2, 1.0), [1, 0, 0])


def test_direction_normalizes_and_rejects_zero():
    d = Direction([3.0, 4.0])
    assert np.linalg.norm(d.vector) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        Direction([0.0, 0.0])


# --- contractions -------------------------------------------------------------


@pytest.mark.parametrize("n,c", [(2, -1.0), (3, 2.0), (4, 0.5)])
def test_ricci_of_constant_tensor(n, c):
    T = constant_hsc_tensor(n, c)
    expected = 0.5 * c * (n + 1) * np.eye(n)
    assert np.allclose(ricci(T), expected, atol=1e-12)


def test_scalar_of_constant_surface_tensor():
    assert scalar(constant_hsc_tensor(2, 1.5)) == pytest.approx(4.5)


def test_zero_tensor_contractions():
    T = KahlerCurvatureTensor(np.zeros((3, 3, 3, 3)))
    assert np.allclose(ricci(T), 0.0)
    assert scalar(T) == 0.0


def test_ricci_is_hermitian():
    T = random_kahler_tensor(4, seed=3)
    ric = ricci(T)
    assert np.allclose(ric, ric.conj().T, atol=1e-12)


# --- frame changes ------------------------------------------------------------


def test_transform_identity_is_identity():
    T = random_kahler_tensor(3, seed=1)
    assert np.allclose(transform_frame(T, np.eye(3)).array, T.array, atol=1e-14)


def test_constant_tensor_unitarily_invariant():
    T = constant_hsc_tensor(2, 0.8)
    U = random_unitary(2, seed=2)
    assert np.allclose(transform_frame(T, U).array, T.array, atol=1e-12)


def test_transform_round_trip():
    T = random_kahler_tensor(3, seed=7)
    U = random_unitary(3, seed=8)
    back = transform_frame(transform_frame(T, U), U.conj().T)
    assert np.allclose(back.array, T.array, atol=1e-12)


def test_transform_consistent_with_direction_change():
    T = random_kahler_tensor(3, seed=11)
    U = random_unitary(3, seed=12)
    Tp = transform_frame(T, U)
    rng = np.random.default_rng(13)
    for _ in range(4):
        w = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        assert hsc(Tp, w) == pytest.approx(hsc(T, U @ w), abs=1e-10)


def test_unitary_invariance_of_spectral_data():
    T = random_kahler_tensor(3, seed=21)
    U = random_unitary(3, seed=22)
    Tp = transform_frame(T, U)
    assert np.allclose(
        np.linalg.eigvalsh(ricci(T)), np.linalg.eigvalsh(ricci(Tp)), atol=1e-8
    )
    assert scalar(T) == pytest.approx(scalar(Tp), abs=1e-8)


def test_not_unitary_rejected():
    with pytest.raises(NotUnitary):
        transform_frame(constant_hsc_tensor(2, 1.0), np.array([[1.0, 0.1], [0.0, 1.0]]))


# --- distinguished-frame closed forms ----------------------------------------


def test_assemble_constant_identification():
    assert np.allclose(
        assemble_einstein_surface(EinsteinFramePoint(-1.0, -0.5, 0.0)).array,
        constant_hsc_tensor(2, -1.0).array,
        atol=1e-14,
    )


def test_assemble_zero_point():
    T = assemble_einstein_surface(EinsteinFramePoint(0.0, 0.0, 0.0))
    assert np.allclose(T.array, 0.0)


def test_assemble_is_einstein():
    T = assemble_einstein_surface(EinsteinFramePoint(-1.3, 0.4, 0.2 + 0.1j))
    ric = ricci(T)
    lam = EinsteinFramePoint(-1.3, 0.4, 0.2 + 0.1j).einstein_constant
    assert np.allclose(ric, lam * np.eye(2), atol=1e-12)


def test_frame_constraint_enforced():
    with pytest.raises(FrameConstraintViolated):
        EinsteinFramePoint(-1.0, -0.8, 0.0)  # 2A = -1.6 < H + |B| = -1
    with pytest.raises(FrameConstraintViolated):
        EinsteinFramePoint(0.0, 0.0, 1.0)


def test_closed_form_examples():
    assert hsc_surface_closed_form(
        EinsteinFramePoint(-1.0, -0.5, 0.0), [0.6, 0.8j]
    ) == pytest.approx(-1.0, abs=1e-12)
    assert hsc_surface_closed_form(
        EinsteinFramePoint(-1.0, 0.25, 0.0), np.array([1, 1]) / np.sqrt(2)
    ) == pytest.approx(-0.25, abs=1e-12)
    assert hsc_surface_closed_form(
        EinsteinFramePoint(-2.0, 0.0, 1.0), np.array([1, 1j]) / np.sqrt(2)
    ) == pytest.approx(-1.5, abs=1e-12)


def test_closed_form_matches_tensor_contraction():
    rng = np.random.default_rng(31)
    for trial in range(25):
        H = -rng.uniform(0.2, 3.0)
        b = rng.uniform(0, 1.5) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        A = 0.5 * (H + abs(b)) + rng.uniform(0.0, 1.5)
        p = EinsteinFramePoint(H, A, b)
        T = assemble_einstein_surface(p)
        v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        assert hsc(T, v) == pytest.approx(hsc_surface_closed_form(p, v), abs=1e-10)


def test_max_hsc_surface_examples():
    assert max_hsc_surface(EinsteinFramePoint(-1.0, -0.5, 0.0)) == (-1.0, True)
    value, negative = max_hsc_surface(EinsteinFramePoint(-1.0, 0.25, 0.0))
    assert value == pytest.approx(-0.25) and negative
    value, negative = max_hsc_surface(EinsteinFramePoint(-2.0, 0.0, 1.0))
    assert value == pytest.approx(-0.5) and negative


def test_max_hsc_can_be_positive():
    value, negative = max_hsc_surface(EinsteinFramePoint(-1.0, 0.26, 0.9))
    assert value == pytest.approx(0.21, abs=1e-12)
    assert not negative


def test_chern_weil_examples():
    assert chern_weil(EinsteinFramePoint(-1.0, -0.5, 0.0)) == pytest.approx((-1.5, 0.75))
    assert chern_weil(EinsteinFramePoint(-2.0, 0.0, 1.0)) == pytest.approx((-2.0, 2.5))
    assert chern_weil(EinsteinFramePoint(0.0, 0.0, 0.0)) == (0.0, 0.0)


def test_ball_quotient_equality_constant_point():
    gamma1, gamma2 = chern_weil(EinsteinFramePoint(-1.0, -0.5, 0.0))
    assert abs(gamma1**2 - 3.0 * gamma2) < 1e-12


@given(
    H=finite,
    A=finite,
    b_re=finite,
    b_im=finite,
)
@settings(max_examples=200, deadline=None)
def test_gamma_identity(H, A, b_re, b_im):
    # 3 gamma2 - gamma1^2 = (H - 2A)^2 / 2 + 3 |B|^2 / 2, for any (H, A, B)
    B = complex(b_re, b_im)
    gamma1 = H + A
    gamma2 = 0.5 * (H**2 + 2 * A**2 + abs(B) ** 2)
    lhs = 3.0 * gamma2 - gamma1**2
    rhs = 0.5 * (H - 2 * A) ** 2 + 1.5 * abs(B) ** 2
    assert lhs == pytest.approx(rhs, abs=1e-9 * max(1.0, abs(lhs)))


def test_sufficiency_examples():
    assert sufficient_negativity(EinsteinFramePoint(-1.0, -0.5, 0.0)) is True
    assert sufficient_negativity(EinsteinFramePoint(-2.0, 0.0, 1.0)) is True
    assert sufficient_negativity(EinsteinFramePoint(-1.0, 0.26, 0.9)) is False


def test_sufficiency_outside_regime_raises():
    with pytest.raises(RegimeViolation):
        sufficient_negativity(EinsteinFramePoint(0.0, 0.0, 0.0))
    with pytest.raises(RegimeViolation):
        sufficient_negativity(EinsteinFramePoint(1.0, 1.0, 0.0))


# --- products -----------------------------------------------------------------


def test_product_of_unit_constants():
    T = product_tensor(constant_hsc_tensor(1, 1.0), constant_hsc_tensor(1, 1.0))
    assert hsc(T, np.array([1.0, 1.0]) / np.sqrt(2)) == pytest.approx(0.5, abs=1e-12)


def test_product_supported_directions_reads_factor():
    T1 = random_kahler_tensor(2, seed=41)
    T2 = random_kahler_tensor(2, seed=42)
    T = product_tensor(T1, T2)
    v = np.array([0.6, -0.8j])
    assert hsc(T, np.concatenate([v, np.zeros(2)])) == pytest.approx(hsc(T1, v), abs=1e-12)
    assert hsc(T, np.concatenate([np.zeros(2), v])) == pytest.approx(hsc(T2, v), abs=1e-12)


def test_product_mixed_blocks_vanish():
    T = product_tensor(constant_hsc_tensor(1, 1.0), constant_hsc_tensor(2, 2.0))
    assert T.array[0, 1, 1, 0] == 0.0
    assert T.array[0, 0, 1, 1] == 0.0


# --- Berger sphere average -----------------------------------------------------


@pytest.mark.parametrize("n", [2, 3])
def test_berger_average_small(n):
    from hsckit import sample_hsc

    T = random_kahler_tensor(n, seed=50 + n, shift=2.0)
    result = sample_hsc(T, 200_000, seed=n)
    predicted = 2.0 * scalar(T) / (n * (n + 1))
    assert result.mean == pytest.approx(predicted, rel=0.02)


# --- wire format ---------------------------------------------------------------


def test_tensor_json_round_trip():
    T = random_kahler_tensor(3, seed=61)
    back = tensor_from_dict(tensor_to_dict(T))
    assert np.allclose(back.array, T.array, atol=1e-14)
    assert back.asymmetry < 1e-14


def test_tensor_json_unlisted_orbits_default_zero():
    T = tensor_from_dict({"n": 2, "entries": [{"i": 0, "j": 0, "k": 0, "l": 0, "re": -1.0, "im": 0.0}]})
    assert T.array[0, 0, 0, 0] == -1.0
    assert T.array[1, 1, 1, 1] == 0.0


def test_tensor_json_generates_symmetry_images():
    T = tensor_from_dict(
        {"n": 2, "entries": [{"i": 0, "j": 1, "k": 0, "l": 1, "re": 0.25, "im": 0.5}]}
    )
    assert T.array[0, 1, 0, 1] == pytest.approx(0.25 + 0.5j)
    assert T.array[1, 0, 1, 0] == pytest.approx(0.25 - 0.5j)
    assert T.asymmetry < 1e-14


def test_tensor_json_duplicate_orbit_rejected():
    entries = [
        {"i": 0, "j": 0, "k": 1, "l": 1, "re": 1.0, "im": 0.0},
        {"i": 1, "j": 1, "k": 0, "l": 0, "re": 2.0, "im": 0.0},
    ]
    with pytest.raises(TensorFormatError):
        tensor_from_dict({"n": 2, "entries": entries})


def test_tensor_json_self_conjugate_orbit_imag_shows_in_asymmetry():
    T = tensor_from_dict(
        {"n": 2, "entries": [{"i": 0, "j": 0, "k": 1, "l": 1, "re": 1.0, "im": 0.4}]}
    )
    assert T.asymmetry == pytest.approx(0.4, abs=1e-12)
    assert T.array[0, 0, 1, 1] == pytest.approx(1.0)


@pytest.mark.parametrize(
    "payload",
    [
        {"entries": []},
        {"n": 0, "entries": []},
        {"n": 2, "entries": [{"i": 0, "j": 0, "k": 0, "l": 5, "re": 1.0}]},
        {"n": 2, "entries": [{"i": 0, "j": 0, "k": 0, "re": 1.0}]},
    ],
)
def test_tensor_json_malformed_rejected(payload):
    with pytest.raises(TensorFormatError):
        tensor_from_dict(payload)
