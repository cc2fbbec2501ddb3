import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from oracles import b_matrix_oracle, numeric_incidence, residual_oracle
from ramcert.arrangement import incidence
from ramcert.catalog import CATALOG, build, ceva, generic_random, pencil, triangle
from ramcert.cyclofield import CycloElement
from ramcert.errors import LengthMismatch
from ramcert.metric import (
    InfeasibilityCertificate,
    MetricCertificate,
    alphas,
    aspherical_verdict,
    build_b_matrix,
    check_weights,
    cone_angles,
    constraint_rows,
    quadratic_residual,
    solve_weights,
    verify_certificate,
)

F = Fraction


def test_b_matrix_examples():
    b = build_b_matrix(incidence(triangle()))
    assert b == ((-1, 1, 1), (1, -1, 1), (1, 1, -1))
    b = build_b_matrix(incidence(ceva(3)))
    assert all(b[i][j] == (3 if i == j else 0) for i in range(9) for j in range(9))
    b = build_b_matrix(incidence(build("hesse")))
    assert all(b[j][j] == 2 for j in range(12))


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_b_matrix_matches_oracle(name):
    arr = build(name)
    b = build_b_matrix(incidence(arr))
    assert [list(r) for r in b] == b_matrix_oracle(numeric_incidence(arr), len(arr.lines))


def test_alpha_examples():
    inc = incidence(ceva(3))
    assert {a.alpha for a in alphas(inc, [F(1, 3)] * 9)} == {F(1, 2)}
    assert {a.alpha for a in alphas(inc, [0] * 9)} == {F(1)}
    assert all(a.fiber_length == 1 for a in alphas(inc, [F(1, 3)] * 9))
    with pytest.raises(LengthMismatch):
        alphas(inc, [0] * 8)


def test_check_weights_examples():
    for m in range(3, 9):
        assert check_weights(ceva(m), [F(1, m)] * (3 * m)).ok
    r = check_weights(triangle(), [1, 1, 1])
    assert r.group_ok("ii") and not r.group_ok("i")
    r = check_weights(ceva(3), [F(1, 2)] * 9)
    assert not r.group_ok("ii")
    assert all(c.value == F(1, 2) for c in r.failures() if c.ident.startswith("gb["))


def test_cone_angles():
    assert cone_angles([F(1, 3), F(1, 2)]) == (F(4, 3), F(1))


def test_rows_agree_with_checker():
    rng = random.Random(5)
    for name in ("ceva3", "hesse", "triangle", "extended_ceva2", "klein"):
        arr = build(name)
        inc = incidence(arr)
        z = [F(rng.randint(-5, 9), rng.randint(1, 9)) for _ in arr.lines]
        conds = {c.ident: c.value for c in check_weights(arr, z, inc).conditions}
        rows = constraint_rows(inc)
        assert {r.ident for r in rows} == set(conds)
        for r in rows:
            az = sum(a * v for a, v in zip(r.z, z))
            expected = az - r.rhs if r.kind == "eq" else r.rhs - az
            assert expected == conds[r.ident], r.ident


@pytest.mark.parametrize("m", range(3, 9))
def test_ceva_feasible(m):
    arr = ceva(m)
    cert = solve_weights(arr)
    assert isinstance(cert, MetricCertificate)
    assert cert.slack > 0
    assert verify_certificate(arr, cert)
    report = check_weights(arr, cert.z)
    assert report.ok and report.min_margin >= cert.slack


def test_tampered_certificate_fails():
    arr = ceva(3)
    cert = solve_weights(arr)
    z = list(cert.z)
    z[0] += F(1, 1000)
    bad = MetricCertificate(tuple(z), cert.alphas, cert.slack, cert.cone_angles)
    assert not verify_certificate(arr, bad)


def test_triangle_certificate():
    arr = triangle()
    cert = solve_weights(arr)
    assert isinstance(cert, InfeasibilityCertificate)
    assert verify_certificate(arr, cert)
    assert cert.bound <= 0
    assert cert.optimum == 0  # closed system has exactly z = (1, 1, 1)


def test_tampered_farkas_fails():
    arr = triangle()
    cert = solve_weights(arr)
    key = next(iter(cert.multipliers))
    mult = dict(cert.multipliers)
    mult[key] += 1
    assert not verify_certificate(arr, InfeasibilityCertificate(mult, cert.bound))


def _float_max_slack(arr):
    """Max slack of the closed system with HiGHS, as an independent check."""
    inc = numeric_incidence(arr)
    n = len(arr.lines)
    b = np.array(b_matrix_oracle(inc, n), dtype=float)
    # variables z_0..z_{n-1}, s ; maximise s
    A_eq = np.hstack([np.vstack([b, np.ones(n)]), np.zeros((n + 1, 1))])
    b_eq = np.concatenate([np.ones(n), [3.0]])
    A_ub, b_ub = [], []
    for k in range(n):
        row = np.zeros(n + 1)
        row[k], row[n] = -1, 1
        A_ub.append(row)
        b_ub.append(0)
        row = np.zeros(n + 1)
        row[k], row[n] = 1, 1
        A_ub.append(row)
        b_ub.append(1)
    for g in inc:
        if len(g) >= 3:
            row = np.zeros(n + 1)
            row[list(g)] = 0.5
            row[n] = 1
            A_ub.append(row)
            b_ub.append(1)
    c = np.zeros(n + 1)
    c[n] = -1
    res = linprog(c, A_ub=np.array(A_ub), b_ub=b_ub, A_eq=A_eq, b_eq=b_eq,
                  bounds=[(None, None)] * (n + 1), method="highs")
    return None if res.status == 2 else -res.fun


@pytest.mark.parametrize("name", ["triangle", "ceva3", "ceva5", "extended_ceva2", "extended_ceva3",
                                  "hesse", "icosahedral", "klein", "pencil4", "generic5_seed2"])
def test_solver_matches_float_oracle(name):
    arr = build(name)
    cert = solve_weights(arr)
    ref = _float_max_slack(arr)
    if cert.feasible:
        assert ref is not None and abs(ref - float(cert.slack)) < 1e-9
    elif cert.optimum is None:
        assert ref is None
    else:
        assert ref is not None and abs(ref - float(cert.optimum)) < 1e-9 and ref <= 1e-9


def test_scaling_invariance():
    arr = ceva(4)
    factors = [CycloElement.zeta(4, k) * (k + 2) for k in range(len(arr.lines))]
    scaled = arr.scaled(factors)
    assert build_b_matrix(incidence(scaled)) == build_b_matrix(incidence(arr))
    assert solve_weights(scaled) == solve_weights(arr)
    assert aspherical_verdict(scaled).label == aspherical_verdict(arr).label


def test_solver_deterministic():
    arr = build("hesse")
    assert solve_weights(arr) == solve_weights(arr)


def test_verdict_examples():
    assert aspherical_verdict(ceva(4)).label == "Aspherical(LP)"
    assert aspherical_verdict(triangle()).label == "Aspherical(TriangleSpecialCase)"
    assert aspherical_verdict(generic_random(4, seed=0)).label == "NoCertificate"
    assert aspherical_verdict(pencil(3)).label == "NoCertificate"


def test_quadratic_residual_examples():
    inc = incidence(triangle())
    assert quadratic_residual(inc, [1, 1, 1]) == F(3, 2)
    inc3 = incidence(ceva(3))
    assert quadratic_residual(inc3, [F(1, 3)] * 9) == F(-3, 2)
    assert quadratic_residual(inc3, [0] * 9) == F(-3, 2)


@pytest.mark.parametrize("name", ["ceva4", "hesse", "klein", "extended_ceva3", "icosahedral"])
def test_quadratic_residual_matches_oracle(name):
    arr = build(name)
    inc = incidence(arr)
    groups = numeric_incidence(arr)
    rng = random.Random(len(name))
    for _ in range(3):
        z = [F(rng.randint(0, 12), 12) for _ in arr.lines]
        assert quadratic_residual(inc, z) == residual_oracle(groups, len(arr.lines), z)
