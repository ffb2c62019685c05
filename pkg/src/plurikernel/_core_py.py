"""Pure-numpy implementations of the hot kernels.

Same contracts as the compiled module `_corex`; see `_core` for the selection
logic.  Shapes: z is (B, n) complex128, a is (n,) float64, bump_pows is
(T, 2n) int64 (T may be 0).
"""

import numpy as np

BACKEND = "python"


def eval_r_grad(z, a, eps, bump_coefs, bump_pows):
    """Batched defining-function values and holomorphic gradients.

    Returns (r, g) with r (B,) float and g (B, n) complex, for
    r(z) = sum_j a_j |z_j|^2 - 1 + eps * bump(x, y).
    """
    z = np.ascontiguousarray(z, dtype=complex)
    a = np.asarray(a, dtype=float)
    r = (z.real**2 + z.imag**2) @ a - 1.0
    g = a * np.conj(z)
    if eps and bump_pows.shape[0]:
        b, n = z.shape
        xy = np.empty((b, 2 * n))
        xy[:, 0::2] = z.real
        xy[:, 1::2] = z.imag
        powers = xy[:, None, :] ** bump_pows[None, :, :]  # (B, T, 2n)
        r += eps * (np.prod(powers, axis=-1) @ bump_coefs)
        for ax in range(2 * n):
            p = bump_pows[:, ax]
            mask = p > 0
            if not mask.any():
                continue
            terms = powers[:, mask, :].copy()
            with np.errstate(divide="ignore", invalid="ignore"):
                terms[:, :, ax] = xy[:, None, ax] ** (p[mask] - 1)
            part = np.prod(terms, axis=-1) @ (bump_coefs[mask] * p[mask])
            j, im = divmod(ax, 2)
            g[:, j] += eps * 0.5 * (-1j if im else 1.0) * part
    return r, g


def eval_disc_batch(coeffs, zs):
    """Horner evaluation of an (n, K) truncated power series at points zs (B,).

    Returns (B, n) complex values.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    zs = np.asarray(zs, dtype=complex)
    acc = np.zeros((zs.shape[0], coeffs.shape[0]), dtype=complex)
    for k in range(coeffs.shape[1] - 1, -1, -1):
        acc *= zs[:, None]
        acc += coeffs[:, k]
    return acc
