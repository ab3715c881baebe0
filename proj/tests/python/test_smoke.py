import cmath
import json

import pytest

import ehf


def test_theta_quasiperiodicity():
    p, z = 0.35 + 0.05j, 0.8 + 0.3j
    lhs = ehf.theta(p * z, p)
    rhs = -ehf.theta(z, p) / z
    assert abs(lhs - rhs) / abs(rhs) < 1e-13


def test_qpoch_against_direct_product():
    t, q = 0.5, 0.3
    prod = 1.0
    tq = t
    for _ in range(200):
        prod *= 1 - tq
        tq *= q
    assert abs(ehf.qpoch_inf(t, q) - prod) < 1e-14


def test_egamma_reflection():
    p, q, z = 0.3, 0.5, 0.7 + 0.2j
    assert abs(ehf.egamma(z, p, q) * ehf.egamma(p * q / z, p, q) - 1) < 1e-12


def test_egamma_pole_raises():
    with pytest.raises(ehf.PoleError):
        ehf.egamma(1.0, 0.3, 0.5)


def test_frenkel_turaev_small():
    q, p = 0.5, 0.4
    t0, t1, t2, t3, N = 0.3, 0.2, 0.25, 0.35, 1
    t5 = q * t0 * t0 / (t1 * t2 * t3 * q ** -N)
    rep = ehf.frenkel_turaev(t0, t1, t2, t3, N, t5, q, p)
    assert rep["verdict"] == "pass"
    assert rep["rel_residual"] < 1e-12


def test_integrate_circle_callable():
    value, err, nodes, converged = ehf.integrate_circle(lambda z: 1.0 / (1.0 - 0.5 * z))
    assert converged
    assert abs(value - 1.0) < 1e-12


def test_elliptic_beta_symmetric_point():
    p = q = 0.5
    s = (p * q) ** (1.0 / 6.0)
    rep = ehf.elliptic_beta([s, s, s, s, s], p, q)
    assert rep["verdict"] == "pass"
    assert rep["rel_residual"] < 1e-9


def test_eval_R_initial_condition():
    t = [0.4, 0.5, 0.45, 0.6, 0.2]
    assert ehf.eval_R(0, cmath.exp(0.7j), t, 0.5, 0.22 + 0.1j) == 1.0


def test_multi_beta_rank1():
    p = q = 0.5
    s = (p * q) ** (1.0 / 6.0)
    rep = ehf.multi_beta("C_I", 1, [s] * 6, p=p, q=q)
    assert rep["verdict"] == "pass"


def test_report_json_is_deterministic():
    a = ehf.report_json(["quadrature"], seed=7)
    b = ehf.report_json(["quadrature"], seed=7)
    assert a == b
    doc = json.loads(a)
    assert doc["meta"]["seed"] == 7
    assert all(r["verdict"] != "fail" for r in doc["results"])
