"""Eigenvalues of small integer matrices via the exact characteristic polynomial.

The characteristic polynomial is built with the Faddeev-LeVerrier recursion in
Python integers, split into square-free parts (Yun's algorithm over the
rationals) so that repeated eigenvalues are handled exactly, and the simple
roots of each part are found with Aberth-Ehrlich simultaneous iteration.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

__all__ = [
    "EigenvalueConvergenceError",
    "characteristic_polynomial",
    "squarefree_decomposition",
    "polynomial_roots",
    "integer_eigenvalues",
]


class EigenvalueConvergenceError(RuntimeError):
    def __init__(self, iterations: int, residual: float):
        super().__init__(
            f"root iteration did not converge after {iterations} iterations "
            f"(last correction {residual:.3e})"
        )
        self.iterations = iterations
        self.residual = residual


def characteristic_polynomial(matrix) -> list[int]:
    """Coefficients of det(lambda I - A), highest degree first (leading 1)."""
    a = np.array(matrix, dtype=object)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    a = np.vectorize(int, otypes=[object])(a) if n else a
    eye = np.zeros((n, n), dtype=object)
    for i in range(n):
        eye[i, i] = 1
    coeffs = [1]
    m = np.zeros((n, n), dtype=object)
    for k in range(1, n + 1):
        m = a.dot(m) + coeffs[-1] * eye
        tr = sum(a.dot(m)[i, i] for i in range(n))
        c, rem = divmod(-tr, k)
        assert rem == 0, "Faddeev-LeVerrier division must be exact for integer input"
        coeffs.append(c)
    return [int(c) for c in coeffs]


# -- rational polynomial arithmetic, coefficients lowest degree first -------

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _deriv(p):
    return _trim([i * c for i, c in enumerate(p)][1:])


def _divmod(num, den):
    num = [Fraction(c) for c in num]
    den = _trim(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    for i in range(len(num) - len(den), -1, -1):
        coef = num[i + len(den) - 1] / den[-1]
        q[i] = coef
        for j, d in enumerate(den):
            num[i + j] -= coef * d
    return _trim(q), _trim(num[: len(den) - 1])


def _monic(p):
    p = _trim(p)
    return [Fraction(c) / p[-1] for c in p]


def _gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    return _monic(a)


def _sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def squarefree_decomposition(coeffs_high_first) -> list[tuple[list[Fraction], int]]:
    """Yun's algorithm: return ``[(factor, multiplicity), ...]``.

    Factors are monic, lowest-degree-first lists of Fractions; their product
    with multiplicities recovers the monic input.
    """
    f = _monic(list(reversed(coeffs_high_first)))
    if len(f) <= 1:
        return []
    df = _deriv(f)
    a = _gcd(f, df)
    b, _ = _divmod(f, a)
    c, _ = _divmod(df, a)
    d = _sub(c, _deriv(b))
    out = []
    i = 1
    while len(b) > 1:
        a = _gcd(b, d)
        if len(a) > 1:
            out.append((a, i))
        b, _ = _divmod(b, a)
        c, _ = _divmod(d, a)
        d = _sub(c, _deriv(b))
        i += 1
    return out


def polynomial_roots(coeffs_low_first, tol: float = 1e-15, max_iter: int = 500) -> np.ndarray:
    """Roots of a polynomial with simple roots (Aberth-Ehrlich iteration)."""
    p = np.array([complex(float(c)) for c in coeffs_low_first])[::-1]  # high first
    p = p / p[0]
    deg = len(p) - 1
    if deg == 0:
        return np.zeros(0, dtype=complex)
    if deg == 1:
        return np.array([-p[1]])
    dp = np.polyder(p)
    radius = 1.0 + np.max(np.abs(p[1:]))
    z = radius * np.exp(1j * (2 * np.pi * np.arange(deg) / deg + 0.4))
    step = np.inf
    for it in range(1, max_iter + 1):
        ratio = np.polyval(p, z) / np.polyval(dp, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        w = ratio / (1.0 - ratio * inv.sum(axis=1))
        z = z - w
        step = float(np.max(np.abs(w)))
        if step <= tol * max(1.0, float(np.max(np.abs(z)))):
            break
    else:
        raise EigenvalueConvergenceError(max_iter, step)
    # Newton polish on the square-free polynomial
    for _ in range(3):
        dz = np.polyval(dp, z)
        safe = dz != 0
        z[safe] = z[safe] - np.polyval(p, z[safe]) / dz[safe]
    return z


def _clean(z: complex, scale: float) -> complex:
    re, im = z.real, z.imag
    eps = 1e-12 * max(1.0, scale)
    if abs(im) < eps:
        im = 0.0
    if abs(re) < eps:
        re = 0.0
    return complex(re, im)


def integer_eigenvalues(matrix) -> list[complex]:
    """All eigenvalues (with multiplicity) of an integer matrix.

    Sorted by decreasing modulus, then by argument.
    """
    cp = characteristic_polynomial(matrix)
    roots: list[complex] = []
    for factor, mult in squarefree_decomposition(cp):
        for z in polynomial_roots(factor):
            roots.extend([complex(z)] * mult)
    scale = max((abs(z) for z in roots), default=1.0)
    roots = [_clean(z, scale) for z in roots]
    return sorted(roots, key=lambda z: (-round(abs(z), 9), round(float(np.angle(z)), 9)))
