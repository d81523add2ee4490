"""Shared test fixtures: oracles and seeded random generators."""

from __future__ import annotations

import numpy as np

from hsckit import EinsteinFramePoint, KahlerCurvatureTensor


def hsc_bruteforce(tensor: KahlerCurvatureTensor, v) -> float:
    """Independent HSC oracle: explicit quadruple loop, no einsum."""
    vec = np.asarray(getattr(v, "vector", v), dtype=complex).reshape(-1)
    n = tensor.n
    assert vec.shape[0] == n
    R = tensor.array
    total = 0.0 + 0.0j
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    total += R[i, j, k, l] * vec[i] * np.conj(vec[j]) * vec[k] * np.conj(vec[l])
    norm_sq = float(np.vdot(vec, vec).real)
    total /= norm_sq * norm_sq
    assert abs(total.imag) < 1e-9 * max(1.0, abs(total))
    return float(total.real)


def random_kahler_tensor(n: int, seed: int, scale: float = 1.0, shift: float = 0.0) -> KahlerCurvatureTensor:
    """Random symmetric-validated tensor; optional constant-curvature shift."""
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal((n,) * 4) + 1j * rng.standard_normal((n,) * 4)
    eye = np.eye(n)
    const = 0.5 * shift * (np.einsum("ij,kl->ijkl", eye, eye) + np.einsum("il,kj->ijkl", eye, eye))
    return KahlerCurvatureTensor(scale * raw + const)


def random_unitary(n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(Z)
    # fix column phases so the factorization is unique
    return Q * (np.diagonal(R) / np.abs(np.diagonal(R)))


def random_frame_point(rng: np.random.Generator, margin: float = 0.05) -> EinsteinFramePoint:
    """Random valid distinguished-frame data with a strict validity margin.

    H is negative, |B| moderate, and A sits above the constraint line
    2A = H + |B| by at least ``margin``, so the HSC minimum at e_1 is
    isolated (up to phase) and the Einstein constant is typically negative.
    """
    H = -rng.uniform(0.2, 3.0)
    b_abs = rng.uniform(0.0, 1.5)
    phase = rng.uniform(0.0, 2.0 * np.pi)
    A = 0.5 * (H + b_abs) + rng.uniform(margin, 1.5)
    return EinsteinFramePoint(H=H, A=A, B=b_abs * np.exp(1j * phase))
