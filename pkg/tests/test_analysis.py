"""Variational analysis: dual-route residuals, classification, delta solving.

Expected numbers here come from three independent sources: hand-computed
frame data for the stock circle, the closed-form invariants of the
exponential families, and synthetic frame data built directly from the
scalar constants a case prescribes.  Nothing is copied from the code under
test.
"""

import numpy as np
import pytest

from contactcurves import analysis, curves, families


def grid(spec, m=128):
    return curves.sample_grid(spec, m)


def frenet_pair(spec, ts, **kw):
    fr = curves.frenet_apparatus(spec, ts, **kw)
    return fr, curves.frame_scalars(fr)


def synthetic_frenet(curvature_rows, frame_vectors, n=2, N=48):
    """FrenetData with prescribed frames and curvatures, no underlying curve.

    Entries of frame_vectors may be constant (dim,) vectors or full
    (dim, N) arrays.  Jets are left empty on purpose: the analysis layer
    must fall back to grid differencing, which is exact for constants.
    """
    ts = np.linspace(0.0, 1.0, N)
    dim = 2 * n + 1
    rows = []
    for v in frame_vectors:
        v = np.asarray(v, dtype=float)
        rows.append(np.repeat(v[:, None], N, axis=1) if v.ndim == 1 else v)
    ks = []
    for k in curvature_rows:
        k = np.asarray(k, dtype=float)
        ks.append(np.full(N, float(k)) if k.ndim == 0 else k)
    return curves.FrenetData(
        ts=ts,
        n=n,
        r=len(rows),
        frames=np.stack(rows),
        curvatures=np.stack(ks) if ks else np.zeros((0, N)),
        points=np.zeros((dim, N)),
        y=np.zeros((n, N)),
        tol=1e-7,
    )


# ---------------------------------------------------------------------------
# tension and bitension


def test_tension_example_is_scaled_normal(example_curve, example_grid):
    tau = analysis.tension(example_curve, example_grid)
    norms = np.linalg.norm(tau, axis=0)
    assert np.abs(norms - 2.0).max() < 1e-9
    # tau = k1 E2 with E2 = -sin(2t) X3 + cos(2t) X4 (hand computation)
    expected = np.zeros_like(tau)
    expected[2] = -2.0 * np.sin(2 * example_grid)
    expected[3] = 2.0 * np.cos(2 * example_grid)
    assert np.abs(tau - expected).max() < 1e-9


def test_tension_norm_matches_first_curvature():
    spec = families.orthogonal_helix(1.2, 1.6)
    ts = grid(spec)
    tau = analysis.tension(spec, ts)
    assert np.abs(np.linalg.norm(tau, axis=0) - 1.2).max() < 1e-9


def test_tension_geodesic_vanishes():
    spec = families.geodesic((0.3, -1.0, 0.2, 0.5))
    ts = np.linspace(0.0, 2.0, 64)
    tau = analysis.tension(spec, ts)
    assert np.abs(tau).max() < 1e-10


def test_bitension_example(example_curve, example_grid):
    tau2 = analysis.bitension(example_curve, example_grid)
    expected = np.zeros_like(tau2)
    expected[2] = 8.0 * np.sin(2 * example_grid)
    expected[3] = -8.0 * np.cos(2 * example_grid)
    assert np.abs(tau2 - expected).max() < 1e-9


def test_bitension_tangential_component_tracks_curvature_slope():
    # nonconstant k1 = 2/(1+t^2): the component along T must equal
    # -3 k1 k1' = 24 t / (1+t^2)^3, a formula derived by hand
    spec = families.rational_turn()
    ts = np.linspace(-1.5, 1.5, 161)
    rep = analysis.residual_direct(spec, ts, delta=(0.0, 1.0))
    expected = 24.0 * ts / (1.0 + ts**2) ** 3
    assert np.abs(rep.projections["E1"] - expected).max() < 1e-8


def test_curvature_derivatives_rational_turn():
    spec = families.rational_turn()
    ts = np.linspace(-1.5, 1.5, 161)
    fr = curves.frenet_apparatus(spec, ts)
    assert fr.r == 3
    k1, k1d, k1dd = fr.curvature_derivs(0, upto=2)
    assert np.abs(k1 - 2.0 / (1 + ts**2)).max() < 1e-10
    assert np.abs(k1d + 4.0 * ts / (1 + ts**2) ** 2).max() < 1e-10
    assert np.abs(k1dd - (12.0 * ts**2 - 4.0) / (1 + ts**2) ** 3).max() < 1e-9
    assert np.abs(fr.curvatures[1] - 1.0).max() < 1e-10


# ---------------------------------------------------------------------------
# residual: frozen values, algebraic structure, dual routes


def test_residual_example_critical_pair(example_curve, example_grid):
    rep = analysis.residual_direct(example_curve, example_grid, delta=(-8.0, 2.0))
    assert rep.max_norm < 1e-8


def test_residual_example_pure_bending(example_curve, example_grid):
    rep = analysis.residual_direct(example_curve, example_grid, delta=(0.0, 1.0))
    assert np.abs(rep.max_norm - 8.0) < 1e-6
    assert rep.r == 2 and rep.m == 2


def test_residual_is_linear_in_delta(example_curve):
    ts = grid(example_curve, 64)
    a = analysis.residual_direct(example_curve, ts, delta=(1.0, 0.0))
    b = analysis.residual_direct(example_curve, ts, delta=(0.0, 1.0))
    combo = analysis.residual_direct(example_curve, ts, delta=(-8.0, 2.0))
    assert np.abs(combo.vector - (-8.0 * a.vector + 2.0 * b.vector)).max() < 1e-10
    scaled = analysis.residual_direct(example_curve, ts, delta=(3.0, 0.0))
    assert np.abs(scaled.vector - 3.0 * a.vector).max() < 1e-10


def test_scaling_preserves_verdict(example_curve):
    ts = grid(example_curve, 64)
    fr, sc = frenet_pair(example_curve, ts)
    for base in [(-8.0, 2.0), (0.0, 1.0), (1.0, 1.0)]:
        verdicts = set()
        for lam in (0.5, 1.0, 3.0):
            delta = (lam * base[0], lam * base[1])
            verdicts.add(analysis.theorem31_check(fr, sc, delta=delta).passed)
        assert len(verdicts) == 1


def stock_specs():
    rng = np.random.default_rng(20260823)
    items = [
        (curves.CurveSpec(2, ["sin(2*t)", "-cos(2*t)", "0", "0", "1"]), None),
        (families.circle(1.3, phase1=0.4), None),
        (families.helix(2.0, phase=1.1), None),
        (families.helix(-1.7), None),
        (families.orthogonal_helix(0.9, 1.4), None),
        (families.r4_curve(1), None),
        (families.r4_curve(2, reverse=True), None),
        (families.geodesic((1.0, 0.5, -0.25, 0.0)), np.linspace(0.0, 1.5, 48)),
        (families.rational_turn(), np.linspace(-1.2, 1.2, 97)),
        (families.four_exponential(np.pi / 4, 2.0, 3.0), np.linspace(0.25, 1.0, 97)),
    ]
    for _ in range(3):
        spec, _info = families.random_legendre_curve(rng)
        items.append((spec, None))
    return items


def test_residual_routes_agree_across_families():
    delta = (0.7, 1.3)
    for spec, ts in stock_specs():
        if ts is None:
            ts = grid(spec, 96)
        direct = analysis.residual_direct(spec, ts, delta=delta)
        fr, sc = frenet_pair(spec, ts)
        closed = analysis.residual_closed_form(fr, sc, delta=delta)
        gap = np.abs(direct.vector - closed.vector).max()
        assert gap < 1e-6, f"route gap {gap:.3e} on {spec.coord_texts}"


def test_residual_xi_coefficient_vanishes():
    # eta(E2) = 0 on every actual Legendre curve, so the explicit xi term
    # of the expansion must be zero; note the raw <residual, xi> projection
    # may still be nonzero when some frame vector contains xi itself.
    for spec, ts in stock_specs()[:10]:
        if ts is None:
            ts = grid(spec, 96)
        fr, sc = frenet_pair(spec, ts)
        closed = analysis.residual_closed_form(fr, sc, delta=(0.7, 1.3))
        assert np.abs(closed.structural["xi"]).max() < 1e-9


# ---------------------------------------------------------------------------
# theorem check


def test_theorem_example(example_curve, example_grid):
    fr, sc = frenet_pair(example_curve, example_grid)
    chk = analysis.theorem31_check(fr, sc, delta=(-8.0, 2.0))
    assert chk.passed
    assert chk.m == 2
    assert len(chk.equations) == 2
    assert chk.condition1_mode == "orthogonal"
    bad = analysis.theorem31_check(fr, sc, delta=(0.0, 1.0))
    assert not bad.passed


def test_theorem_case3_helix():
    spec = families.helix(3.0)
    fr, sc = frenet_pair(spec, grid(spec))
    chk = analysis.theorem31_check(fr, sc, delta=(-13.0, 1.0))
    assert chk.passed
    # |f| = 1 here: phi T is E2 itself, so condition (1) holds via the span
    assert chk.condition1_mode == "span"
    assert chk.condition1_leakage < 1e-7


def test_theorem_c1_mode(example_curve, example_grid):
    fr, sc = frenet_pair(example_curve, example_grid)
    chk = analysis.theorem31_check(fr, sc, c=1.0, delta=(-3.0, 1.0))
    assert chk.passed
    assert chk.condition1_mode == "c=1"


def test_theorem_violated_on_nonconstant_curve():
    spec = families.four_exponential(np.pi / 4, 2.0, 3.0)
    ts = np.linspace(0.25, 1.0, 97)
    fr, sc = frenet_pair(spec, ts)
    chk = analysis.theorem31_check(fr, sc, delta=(-5.0, 1.0))
    assert chk.condition1_mode == "violated"
    assert chk.condition1_leakage > 1.0
    assert not chk.passed


def test_theorem_detects_curvature_perturbation():
    # at c = 1 a (k1, k2) helix is critical for delta = (rho, 1) with
    # rho = 1 - k1^2 - k2^2; bumping k1^2 by eps leaves a residual of
    # exactly eps * k1 * delta2 in the second equation
    k1, k2, eps = 1.2, 0.5, 0.1
    rho = 1.0 - k1**2 - k2**2
    e = np.eye(5)
    base = synthetic_frenet([k1, k2], [e[0], e[1], e[3]])
    sc = curves.frame_scalars(base)
    good = analysis.theorem31_check(base, sc, c=1.0, delta=(rho, 1.0))
    assert good.passed

    k1p = np.sqrt(k1**2 + eps)
    bumped = synthetic_frenet([k1p, k2], [e[0], e[1], e[3]])
    scp = curves.frame_scalars(bumped)
    bad = analysis.theorem31_check(bumped, scp, c=1.0, delta=(rho, 1.0))
    assert not bad.passed
    res = bad.equations[1].max_residual
    assert 0.9 * eps * k1 < res < 1.1 * eps * k1


# ---------------------------------------------------------------------------
# classification


def test_classify_stock_curves(example_curve, example_grid):
    fr, sc = frenet_pair(example_curve, example_grid)
    cls = analysis.classify(fr, sc)
    assert (cls.klass, cls.case) == ("circle", "II")

    hel = families.helix(3.0)
    fr, sc = frenet_pair(hel, grid(hel))
    cls = analysis.classify(fr, sc)
    assert (cls.klass, cls.case) == ("helix", "III")

    oh = families.orthogonal_helix(1.2, 1.6)
    fr, sc = frenet_pair(oh, grid(oh))
    cls = analysis.classify(fr, sc)
    assert (cls.klass, cls.case) == ("helix", "II")

    geo = families.geodesic((1.0, 0.0, 0.0, 0.2))
    fr, sc = frenet_pair(geo, np.linspace(0.0, 1.0, 48))
    assert analysis.classify(fr, sc).klass == "geodesic"

    rt = families.rational_turn()
    fr, sc = frenet_pair(rt, np.linspace(-1.2, 1.2, 97))
    cls = analysis.classify(fr, sc)
    assert (cls.klass, cls.case) == ("general", "III")


def test_classify_uses_c(example_curve, example_grid):
    fr, sc = frenet_pair(example_curve, example_grid)
    assert analysis.classify(fr, sc, c=1.0).case == "I"


def test_classify_case4_constants():
    a0 = np.pi / 4
    e = np.eye(5)
    fr = synthetic_frenet(
        [1.0, 1.5, 1.0],
        [
            e[0],
            np.cos(a0) * e[2] + np.sin(a0) * e[1],
            e[3],
            np.sin(a0) * e[2] - np.cos(a0) * e[1],
        ],
    )
    sc = curves.frame_scalars(fr)
    cls = analysis.classify(fr, sc)
    assert cls.case == "IV"
    assert abs(cls.alpha0 - a0) < 1e-12
    # w0 = k2^2 + 3 (c-1)/4 f^2 = 2.25 - 3 * 0.5 at c = -3
    assert abs(cls.w0 - 0.75) < 1e-12
    assert cls.w0_variance < 1e-20


def test_classify_flags_nonconstant_f():
    spec = families.four_exponential(np.pi / 4, 2.0, 3.0)
    ts = np.linspace(0.25, 1.0, 97)
    fr, sc = frenet_pair(spec, ts)
    cls = analysis.classify(fr, sc)
    assert cls.klass == "general"
    assert cls.alpha0 is None
    assert cls.diagnostics


# ---------------------------------------------------------------------------
# solving for the coupling pair


def test_solve_example(example_curve, example_grid):
    fr, sc = frenet_pair(example_curve, example_grid)
    sol = analysis.solve_delta(fr, sc)
    assert sol.case == "II"
    assert abs(sol.rho + 4.0) < 1e-9
    assert sol.delta == pytest.approx((-4.0, 1.0))
    assert sol.rho_spread < 1e-9
    assert sol.parallel_defect < 1e-9
    assert sol.feasible
    assert abs(sol.rho - np.mean(sol.rho_pointwise)) < 1e-9


def test_solve_case1():
    spec = families.orthogonal_helix(0.6, 0.5)
    fr, sc = frenet_pair(spec, grid(spec))
    sol = analysis.solve_delta(fr, sc, c=1.0)
    assert sol.case == "I"
    assert abs(sol.rho - (1.0 - 0.6**2 - 0.5**2)) < 1e-9
    assert sol.feasible
    chk = analysis.theorem31_check(fr, sc, c=1.0, delta=sol.delta)
    assert chk.passed


def test_solve_case2_order3():
    spec = families.orthogonal_helix(1.2, 1.6)
    fr, sc = frenet_pair(spec, grid(spec))
    sol = analysis.solve_delta(fr, sc)
    assert (sol.klass, sol.case) == ("helix", "II")
    assert abs(sol.rho + 4.0) < 1e-9
    assert sol.feasible
    assert abs(sol.rho - np.mean(sol.rho_pointwise)) < 1e-9
    assert analysis.theorem31_check(fr, sc, delta=sol.delta).passed


def test_solve_case3_helix():
    spec = families.helix(3.0)
    fr, sc = frenet_pair(spec, grid(spec))
    sol = analysis.solve_delta(fr, sc)
    assert sol.case == "III"
    assert abs(sol.rho + 13.0) < 1e-9
    assert sol.k2_deviation < 1e-9
    assert sol.feasible
    assert analysis.theorem31_check(fr, sc, delta=sol.delta).passed


def test_solve_case4_infeasible():
    spec = families.r4_curve(0)
    fr, sc = frenet_pair(spec, grid(spec))
    sol = analysis.solve_delta(fr, sc)
    assert sol.case == "IV"
    inv = families.two_exp_invariants(*families.R4_PARAMS[0])
    expected = -3.0 * inv.f**2 - inv.k1**2 - inv.k2**2
    assert abs(sol.rho - expected) < 1e-9
    assert not sol.feasible
    assert any("sign constraint" in note for note in sol.notes)
    # the fourth scalar equation genuinely fails: no pair works
    assert sol.parallel_defect > 1.0


def test_solve_geodesic_any_pair():
    spec = families.geodesic((0.3, -1.0, 0.2, 0.5))
    fr, sc = frenet_pair(spec, np.linspace(0.0, 2.0, 64))
    sol = analysis.solve_delta(fr, sc)
    assert sol.any_delta
    assert sol.rho is None


def test_solve_generic_nonconstant():
    fx = families.four_exponential(np.pi / 4, 2.0, 3.0)
    fr, sc = frenet_pair(fx, np.linspace(0.25, 1.0, 97))
    sol = analysis.solve_delta(fr, sc)
    assert sol.rho is None
    assert sol.rho_spread > 0.1
    assert not sol.feasible

    rt = families.rational_turn()
    fr, sc = frenet_pair(rt, np.linspace(-1.2, 1.2, 97))
    sol = analysis.solve_delta(fr, sc)
    assert sol.rho is None
    assert not sol.feasible


# ---------------------------------------------------------------------------
# independence of the derived frame


def test_independence_example(example_curve, example_grid):
    fr = curves.frenet_apparatus(example_curve, example_grid)
    rep = analysis.independence_check(example_curve, fr)
    assert rep.independent
    assert rep.set_size == 5
    # min eigenvalue of the Gram matrix is 3 - sqrt(5) (hand computation)
    assert abs(rep.min_singular_value - (3.0 - np.sqrt(5.0))) < 1e-9


def test_independence_orthogonal_helix():
    spec = families.orthogonal_helix(1.2, 1.6)
    fr = curves.frenet_apparatus(spec, grid(spec))
    rep = analysis.independence_check(spec, fr)
    assert rep.independent
    assert rep.set_size == 6
    assert rep.min_singular_value > 0.1


def test_independence_dimension_bound():
    # 6 vectors cannot fit in R^5: the report confirms the bound instead
    spec = families.helix(3.0)
    fr = curves.frenet_apparatus(spec, grid(spec))
    rep = analysis.independence_check(spec, fr)
    assert not rep.independent
    assert rep.implied_n_bound == 3
    assert "dimension" in rep.note


def test_independence_degenerate():
    # helix on the first complex axis of R^7: phi T equals E2, so the set
    # is dependent even though the ambient dimension is large enough
    spec = families.multi_exponential((1.0, 0.0, 0.0), (3.0, 0.0, 0.0))
    fr = curves.frenet_apparatus(spec, grid(spec))
    rep = analysis.independence_check(spec, fr)
    assert not rep.independent
    assert rep.min_singular_value < 1e-8


def test_independence_requires_low_order():
    spec = families.r4_curve(0)
    fr = curves.frenet_apparatus(spec, grid(spec))
    with pytest.raises(analysis.AnalysisError, match="osculating order 2 or 3"):
        analysis.independence_check(spec, fr)


# ---------------------------------------------------------------------------
# order-4 ODE system


def test_case4_ode_round_trip():
    # constants chosen so every equation closes at c = -3:
    # k2 k3 = 3 f g4 with f = g4 = cos(pi/4)
    a0 = np.pi / 4
    e = np.eye(5)
    fr = synthetic_frenet(
        [1.0, 1.5, 1.0],
        [
            e[0],
            np.cos(a0) * e[2] + np.sin(a0) * e[1],
            e[3],
            np.sin(a0) * e[2] - np.cos(a0) * e[1],
        ],
    )
    sc = curves.frame_scalars(fr)
    rho = -3.0 * np.cos(a0) ** 2 - 1.0 - 1.5**2
    rep = analysis.case4_ode_residuals(fr, sc, delta=(rho, 1.0))
    for name, value in rep.max_residuals.items():
        assert value < 1e-9, f"{name} residual {value:.3e}"
    assert abs(rep.w0 - 0.75) < 1e-12


def test_case4_frozen_product():
    # alpha0 = -pi/3 at c = 7: the product k2 k3 must equal
    # -3 (c-1)/8 * sin(2 alpha0) = 1.9485571585149869 (hand value),
    # and the sign constraint 3 (c-1) sin(2 alpha0) < 0 holds
    a0 = -np.pi / 3
    k2 = 1.5
    k3 = 1.9485571585149869 / k2
    e = np.eye(5)
    fr = synthetic_frenet(
        [1.0, k2, k3],
        [
            e[0],
            np.cos(a0) * e[2] + np.sin(a0) * e[1],
            e[3],
            np.sin(a0) * e[2] - np.cos(a0) * e[1],
        ],
    )
    sc = curves.frame_scalars(fr)
    rep = analysis.case4_ode_residuals(fr, sc, c=7.0)
    assert rep.max_residuals["k2k3_ode"] < 1e-9

    sol = analysis.solve_delta(fr, sc, c=7.0)
    assert sol.case == "IV"
    assert sol.feasible
    expected_rho = 10.0 / 4.0 + (18.0 / 4.0) * np.cos(a0) ** 2 - 1.0 - k2**2
    assert abs(sol.rho - expected_rho) < 1e-9
    chk = analysis.theorem31_check(fr, sc, c=7.0, delta=sol.delta)
    assert chk.passed
    assert chk.condition1_mode == "span"


def test_case4_w0_round_trip():
    # nonconstant f with k2^2 = w0 + 3 f^2 (the c = -3 first integral):
    # the fitted w0 must come back with negligible variance
    w0 = 0.8
    N = 64
    s = np.linspace(0.0, 1.0, N)
    f = 0.3 + 0.2 * np.sin(2 * np.pi * s)
    k2 = np.sqrt(w0 + 3.0 * f**2)
    g = np.sqrt(1.0 - f**2)
    dim5 = 5
    E1 = np.zeros((dim5, N))
    E1[0] = 1.0
    E2 = np.zeros((dim5, N))
    E2[2] = f
    E2[1] = g
    E3 = np.zeros((dim5, N))
    E3[3] = 1.0
    E4 = np.zeros((dim5, N))
    E4[2] = g
    E4[1] = -f
    fr = synthetic_frenet(
        [np.full(N, 1.0), k2, np.full(N, 0.7)], [E1, E2, E3, E4], N=N
    )
    sc = curves.frame_scalars(fr)
    rep = analysis.case4_ode_residuals(fr, sc)
    assert abs(rep.w0 - w0) < 1e-12
    assert rep.w0_variance < 1e-20


def test_case4_requires_order_four():
    spec = families.helix(3.0)
    fr, sc = frenet_pair(spec, grid(spec))
    with pytest.raises(analysis.AnalysisError):
        analysis.case4_ode_residuals(fr, sc)


# ---------------------------------------------------------------------------
# structure identities and the sign decision


def test_rotated_tangent_transport_identity(example_curve, example_grid):
    # nabla_T (phi T) = k1 phi E2 + xi; on the example curve that is
    # 4 sin(2t) d_y1 - 4 cos(2t) d_y2 + xi in coordinates
    ts = example_grid
    phiT = np.zeros((5, len(ts)))
    phiT[2] = -2.0 * np.cos(2 * ts)
    phiT[3] = -2.0 * np.sin(2 * ts)
    out = curves.covariant_derivative_along(example_curve, phiT, ts)
    expected = np.zeros_like(out)
    expected[2] = 4.0 * np.sin(2 * ts)
    expected[3] = -4.0 * np.cos(2 * ts)
    expected[4] = 2.0
    assert np.abs(out - expected).max() < 1e-6


def test_eq2_sign_matches_direct_route(example_curve):
    # the two published sign readings of the (c+3)/4 term differ by
    # 2 (c+3)/4 k1 delta2; only "+" reproduces the curvature-tensor route
    ts = grid(example_curve, 64)
    fr, sc = frenet_pair(example_curve, ts)
    direct = analysis.residual_direct(example_curve, ts, c=1.0, delta=(0.0, 1.0))
    plus = analysis.residual_closed_form(fr, sc, c=1.0, delta=(0.0, 1.0))
    minus = analysis.residual_closed_form(
        fr, sc, c=1.0, delta=(0.0, 1.0), eq2_sign="-"
    )
    e2_direct = direct.projections["E2"]
    e2_plus = plus.equation_residuals[1]
    e2_minus = minus.equation_residuals[1]
    assert np.abs(e2_plus - e2_direct).max() < 1e-9
    assert np.abs(e2_minus - e2_direct).min() > 1.0
    assert np.abs(np.abs(e2_plus - e2_minus) - 4.0).max() < 1e-9
