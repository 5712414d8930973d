"""Structure tensors, the connection table, and the curvature oracle.

The Riemann oracle here rebuilds R(X,Y)Z from nothing but the coordinate
metric: 4th-order finite differences give Christoffel symbols and their
derivatives, assembled with the convention

    R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_{[X,Y]} Z.

The library's closed-form curvature at c = -3 is required to match this
oracle directly (no sign flip); that fixes the convention ambiguity.
"""

import numpy as np
import pytest

from contactcurves import model
from contactcurves.model import ModelPoint, SpaceFormParams


def random_point(rng, n):
    return ModelPoint(n, rng.uniform(-2.0, 2.0, size=2 * n + 1))


def metric_matrix(n, coords):
    """Coordinate components g_ab at a point, assembled from the definition."""
    dim = 2 * n + 1
    y = coords[n : 2 * n]
    eta_row = np.zeros(dim)
    eta_row[:n] = -0.5 * y
    eta_row[-1] = 0.5
    G = np.outer(eta_row, eta_row)
    G[: 2 * n, : 2 * n] += 0.25 * np.eye(2 * n)
    return G


def _fd4(f, coords, axis, h):
    """4th-order central difference of an array-valued function of coords."""
    e = np.zeros_like(coords)
    e[axis] = 1.0
    return (
        -f(coords + 2 * h * e)
        + 8 * f(coords + h * e)
        - 8 * f(coords - h * e)
        + f(coords - 2 * h * e)
    ) / (12 * h)


def christoffel(n, coords, h=1e-2):
    dim = 2 * n + 1
    G = metric_matrix(n, coords)
    Ginv = np.linalg.inv(G)
    dG = np.stack(
        [_fd4(lambda c: metric_matrix(n, c), coords, a, h) for a in range(dim)]
    )  # dG[a, i, j] = d_a g_ij
    # Gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij)
    M = dG + np.swapaxes(dG, 0, 1) - np.moveaxis(dG, 0, 2)
    return 0.5 * np.einsum("kl,ijl->kij", Ginv, M)


def riemann_operator(n, coords, h=1e-2):
    """R4[l,i,j,k] so that (R(X,Y)Z)^l = R4[l,i,j,k] X^i Y^j Z^k."""
    dim = 2 * n + 1
    Gamma = christoffel(n, coords, h)
    dGamma = np.stack(
        [_fd4(lambda c: christoffel(n, c, h), coords, a, h) for a in range(dim)]
    )  # dGamma[a, l, i, j] = d_a Gamma^l_ij
    term1 = np.einsum("iljk->lijk", dGamma)
    term2 = np.einsum("jlik->lijk", dGamma)
    term3 = np.einsum("lim,mjk->lijk", Gamma, Gamma)
    term4 = np.einsum("ljm,mik->lijk", Gamma, Gamma)
    return term1 - term2 + term3 - term4


def test_eta_examples():
    p = ModelPoint(2, [0.0, 0.0, 1.0, 0.0, 0.0])  # y1 = 1
    assert model.eta(p, model.xi(2)) == 1.0
    X1 = model.frame_field(p, 1)
    assert model.eta(p, X1) == 0.0
    u = np.array([2.0, 0.0, 0.0, 0.0, 0.0])  # 2 d/dx1
    assert model.eta(p, u) == -1.0


def test_eta_is_metric_against_xi():
    rng = np.random.default_rng(7)
    for _ in range(50):
        n = int(rng.integers(1, 4))
        p = random_point(rng, n)
        u = rng.normal(size=2 * n + 1)
        assert abs(model.eta(p, u) - model.metric(p, u, model.xi(n))) < 1e-12


def test_frame_orthonormal_and_phi_relations():
    rng = np.random.default_rng(11)
    for _ in range(20):
        n = int(rng.integers(1, 4))
        p = random_point(rng, n)
        F = model.frame_matrix(p)
        gram = np.array(
            [
                [model.metric(p, F[:, i], F[:, j]) for j in range(2 * n + 1)]
                for i in range(2 * n + 1)
            ]
        )
        assert np.max(np.abs(gram - np.eye(2 * n + 1))) < 1e-12
        # X_{n+i} = phi X_i and phi(xi) = 0
        for i in range(1, n + 1):
            assert np.allclose(
                model.phi(p, model.frame_field(p, i)), model.frame_field(p, n + i)
            )
        assert np.allclose(model.phi(p, model.xi(n)), 0.0)


def test_phi_square_and_metric_identity():
    rng = np.random.default_rng(13)
    for _ in range(200):
        n = int(rng.integers(1, 4))
        p = random_point(rng, n)
        u = rng.normal(size=2 * n + 1)
        v = rng.normal(size=2 * n + 1)
        lhs = model.phi(p, model.phi(p, u))
        rhs = -u + model.eta(p, u) * model.xi(n)
        assert np.max(np.abs(lhs - rhs)) < 1e-12
        gphi = model.metric(p, model.phi(p, u), model.phi(p, v))
        assert abs(gphi - (model.metric(p, u, v) - model.eta(p, u) * model.eta(p, v))) < 1e-12


def test_frame_coefficient_round_trip():
    rng = np.random.default_rng(17)
    for _ in range(50):
        n = int(rng.integers(1, 4))
        p = random_point(rng, n)
        u = rng.normal(size=2 * n + 1)
        coeffs = model.to_frame_coeffs(p, u)
        assert np.allclose(model.from_frame_coeffs(p, coeffs), u, atol=1e-12)
        # coefficients really are the metric pairings with the frame
        F = model.frame_matrix(p)
        pairings = np.array([model.metric(p, u, F[:, i]) for i in range(2 * n + 1)])
        assert np.allclose(coeffs, pairings, atol=1e-12)


def test_connection_table_entries():
    n = 2
    assert np.allclose(
        model.connection_frame_coeffs(n, 1, 1 + n), [0, 0, 0, 0, 1.0]
    )  # delta_11 xi
    assert np.allclose(model.connection_frame_coeffs(n, 1, 2), 0.0)
    # nabla_{X_{1+n}} xi = X_1
    got = model.connection_frame_coeffs(n, 1 + n, 2 * n + 1)
    expect = np.zeros(2 * n + 1)
    expect[0] = 1.0
    assert np.allclose(got, expect)
    # nabla_{X_i} xi = -X_{n+i} = -phi X_i, checked as vectors at a random point
    rng = np.random.default_rng(3)
    p = random_point(rng, n)
    for i in range(1, 2 * n + 1):
        table = model.connection_frame_coeffs(n, i, 2 * n + 1)
        expected = model.to_frame_coeffs(p, -model.phi(p, model.frame_field(p, i)))
        assert np.allclose(table, expected, atol=1e-12)


def test_gamma_frame_matches_table_contraction():
    rng = np.random.default_rng(29)
    for n in (1, 2, 3):
        dim = 2 * n + 1
        a = rng.normal(size=dim)
        b = rng.normal(size=dim)
        brute = np.zeros(dim)
        for i in range(1, dim + 1):
            for j in range(1, dim + 1):
                brute += a[i - 1] * b[j - 1] * model.connection_frame_coeffs(n, i, j)
        assert np.allclose(model.gamma_frame(n, a, b), brute, atol=1e-12)


def test_metric_compatibility_of_table():
    # d g(F_j, F_k) = 0 along frame directions, so the table must satisfy
    # g(nabla_i F_j, F_k) + g(F_j, nabla_i F_k) = 0; pairings in frame
    # coefficients are plain dot products.
    for n in (1, 2):
        dim = 2 * n + 1
        for i in range(1, dim + 1):
            for j in range(1, dim + 1):
                for k in range(1, dim + 1):
                    ej = np.zeros(dim)
                    ej[j - 1] = 1.0
                    ek = np.zeros(dim)
                    ek[k - 1] = 1.0
                    s = model.connection_frame_coeffs(n, i, j) @ ek
                    s += model.connection_frame_coeffs(n, i, k) @ ej
                    assert abs(s) < 1e-15


def test_curvature_constant_curvature_limit():
    # c=1: only the (c+3)/4 block survives with eta = 0 pairings
    pair = dict(
        g_YZ=1.0, g_XZ=0.0, g_X_phiZ=0.0, g_Y_phiZ=0.0, g_X_phiY=0.0,
        eta_X=0.0, eta_Y=0.0, eta_Z=0.0,
    )
    w = model.space_form_curvature_abstract(1.0, pair)
    assert w["X"] == 1.0
    assert all(w[k] == 0.0 for k in ("Y", "phiX", "phiY", "phiZ", "xi"))


def test_curvature_abstract_missing_pairing():
    with pytest.raises(ValueError, match="missing"):
        model.space_form_curvature_abstract(1.0, {"g_YZ": 1.0})


def test_curvature_frame_agrees_with_concrete():
    rng = np.random.default_rng(31)
    params = SpaceFormParams(-3.0)
    for _ in range(20):
        n = int(rng.integers(1, 4))
        p = random_point(rng, n)
        X, Y, Z = rng.normal(size=(3, 2 * n + 1))
        concrete = model.space_form_curvature(params, p, X, Y, Z)
        ff = model.space_form_curvature_frame(
            -3.0,
            model.to_frame_coeffs(p, X),
            model.to_frame_coeffs(p, Y),
            model.to_frame_coeffs(p, Z),
            n,
        )
        assert np.allclose(model.from_frame_coeffs(p, ff), concrete, atol=1e-10)


def test_curvature_against_fd_riemann_oracle():
    # binding sign-convention check at 20 random points, relative error < 1e-6
    rng = np.random.default_rng(42)
    params = SpaceFormParams(-3.0)
    n = 2
    for _ in range(20):
        p = random_point(rng, n)
        R4 = riemann_operator(n, p.coords)
        X, Y, Z = rng.normal(size=(3, 2 * n + 1))
        oracle = np.einsum("lijk,i,j,k->l", R4, X, Y, Z)
        closed = model.space_form_curvature(params, p, X, Y, Z)
        scale = max(1.0, np.max(np.abs(oracle)))
        assert np.max(np.abs(closed - oracle)) < 1e-6 * scale


def test_curvature_vanishing_fixture():
    # c=-3 with T, E2 horizontal and g(phi T, E2) = 0: every term drops
    p = ModelPoint(2, np.zeros(5))
    T = model.frame_field(p, 3)  # X_3 = 2 d/dx1 at y=0
    E2 = model.frame_field(p, 4)
    out = model.space_form_curvature(SpaceFormParams(-3.0), p, T, E2, T)
    assert np.allclose(out, 0.0, atol=1e-14)
