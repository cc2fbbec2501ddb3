"""Independent reference computations used by the tests.

None of these share code paths with the package: polynomials go through
sympy, incidence through floating-point embeddings, residuals through plain
loops over the numeric incidence.
"""
from fractions import Fraction
from math import comb

import mpmath
import numpy as np
import sympy

X = sympy.Symbol("x")


def sympy_poly(element):
    return sum(sympy.Rational(c.numerator, c.denominator) * X**k for k, c in enumerate(element.coeffs))


def sympy_reduce(expr, m):
    """Coefficients (lowest degree first) of expr mod Phi_m."""
    phi = sympy.cyclotomic_poly(m, X)
    r = sympy.Poly(sympy.rem(sympy.expand(expr), phi, X), X)
    deg = sympy.degree(phi, X)
    coeffs = [Fraction(0)] * deg
    for (k,), c in r.terms():
        coeffs[k] = Fraction(int(c.p), int(c.q))
    return coeffs


def mp_eval(element, dps=100):
    with mpmath.workdps(dps):
        z = mpmath.exp(2j * mpmath.pi / element.order)
        return sum(mpmath.mpf(c.numerator) / c.denominator * z**k for k, c in enumerate(element.coeffs))


def numeric_lines(arr):
    return np.array([[complex(c) for c in ln.coords] for ln in arr.lines])


def _unit(v):
    return v / np.linalg.norm(v)


def numeric_incidence(arr, tol=1e-8):
    """Group pairwise intersections of the float-embedded lines.

    Returns a list of sorted line-index tuples, one per point.
    """
    L = numeric_lines(arr)
    pts, members = [], []
    n = len(L)
    for i in range(n):
        for j in range(i + 1, n):
            p = _unit(np.cross(L[i], L[j]))
            for idx, q in enumerate(pts):
                # projectively equal iff the complex cross product vanishes
                if np.linalg.norm(np.cross(p, q)) < tol:
                    members[idx].update((i, j))
                    break
            else:
                pts.append(p)
                members.append({i, j})
    return sorted(tuple(sorted(s)) for s in members)


def multiplicity_signature(groups):
    out = {}
    for g in groups:
        out[len(g)] = out.get(len(g), 0) + 1
    return dict(sorted(out.items()))


def pair_count(groups, n_lines):
    return sum(comb(len(g), 2) for g in groups) == comb(n_lines, 2)


def b_matrix_oracle(groups, n):
    b = [[0] * n for _ in range(n)]
    for g in groups:
        if len(g) == 2:
            i, j = g
            b[i][j] = b[j][i] = 1
    for j in range(n):
        b[j][j] = sum(1 for g in groups if len(g) >= 3 and j in g) - 1
    return b


def residual_oracle(groups, n, z):
    """sum_{heavy x} (alpha_x - 1)^2 - sum_j z_j^2 b_jj - 3/2 by direct loops."""
    z = [Fraction(v) for v in z]
    b = b_matrix_oracle(groups, n)
    total = Fraction(0)
    for g in groups:
        if len(g) >= 3:
            alpha = 1 - Fraction(1, 2) * sum(z[k] for k in g)
            total += (alpha - 1) ** 2
    for j in range(n):
        total -= z[j] ** 2 * b[j][j]
    return total - Fraction(3, 2)


def random_unitary(rng, n=2):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))
