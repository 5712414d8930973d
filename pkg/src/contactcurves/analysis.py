"""Variational residuals of Legendre curves and their frame expansion.

For a unit-speed curve with velocity T the two base fields are

    tau  = nabla_T T                      (first variation of energy)
    tau2 = nabla_T^3 T - R(T, nabla_T T)T (first variation of bending)

and the object of interest is the weighted residual

    residual(d1, d2) = d2 * tau2 - d1 * tau.

A curve is critical for the mixed functional with weights (d1, d2) exactly
when this vanishes.  The residual is computed along two fully independent
routes: :func:`residual_direct` runs covariant calculus on jets, while
:func:`residual_closed_form` assembles the known frame expansion

    (-3 d2 k1 k1') E1
  + [d2 (k1'' - k1^3 - k1 k2^2 + ((c+3)/4) k1) - d1 k1] E2
  + d2 (2 k1' k2 + k1 k2') E3
  + d2 (k1 k2 k3) E4
  + 3 ((c-1)/4) d2 k1 f phiT
  - ((c-1)/4) d2 k1 eta(E2) xi

from curvatures and the frame scalars f = g(phi T, E2) etc.  The tests pin
the two routes against each other; neither is ever derived from the other.

Scalar projections of the residual onto E_1..E_m (m = min(r, 4)) give the
per-equation checks: the residual vanishes iff those m scalars vanish and
the phiT / xi correction terms stay inside span{E_1..E_m}.

The ambient connection is that of the concrete model; the parameter c only
enters through the space-form curvature formula, so values other than -3
describe the frame algebra of the general space form over the concrete
contact structure (which is all the classification needs).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .curves import (
    FrenetData,
    FrameScalars,
    _curve_frames,
    _metric_jet,
    _nabla_along,
    _phi_jet,
    frame_scalars,
    frenet_apparatus,
)
from .model import space_form_curvature_frame

__all__ = [
    "AnalysisError",
    "ResidualReport",
    "TheoremCheck",
    "EquationCheck",
    "CurveClass",
    "DeltaSolution",
    "IndependenceReport",
    "Case4Report",
    "tension",
    "bitension",
    "residual_direct",
    "residual_closed_form",
    "theorem31_check",
    "classify",
    "solve_delta",
    "independence_check",
    "case4_ode_residuals",
]

CONSTANCY_TOL = 1e-6


class AnalysisError(ValueError):
    """Raised when residual analysis is asked for structurally missing data."""


# ---------------------------------------------------------------------------
# direct route


def _direct_jets(spec, ts, jet_order=6, depth=3):
    """T and its iterated covariant derivatives nabla_T^k T, k = 1..depth."""
    cj, y, T = _curve_frames(spec, ts, order=jet_order)
    n = spec.n
    out = [T]
    for _ in range(depth):
        out.append(_nabla_along(n, T, out[-1]))
    return out


def tension(spec, ts):
    """nabla_T T along the curve, in frame components, shape (2n+1, N)."""
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    _, tau = _direct_jets(spec, ts, jet_order=3, depth=1)
    return tau.value


def bitension(spec, ts, c=-3.0):
    """nabla_T^3 T - R(T, nabla_T T)T in frame components, shape (2n+1, N)."""
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    T, tau, _, tau_3 = _direct_jets(spec, ts)
    curv = space_form_curvature_frame(c, T.value, tau.value, T.value, spec.n)
    return tau_3.value - curv


def _span_leakage(vec, frames_m):
    """Norm of the part of vec outside the span of the given frame vectors.

    vec has shape (dim, N); frames_m has shape (m, dim, N).  The frames are
    orthonormal, so projection is a plain sum of inner products.
    """
    rem = vec.copy()
    for e in frames_m:
        rem -= np.einsum("kN,kN->N", vec, e)[np.newaxis] * e
    return np.sqrt(np.maximum(np.einsum("kN,kN->N", rem, rem), 0.0))


@dataclass
class ResidualReport:
    """The weighted residual on a grid, with its frame decomposition.

    projections holds raw inner products of the residual with E1..E4 (zero
    rows past the osculating order), phi T, and xi; equation_residuals holds
    the m scalar equations (for the direct route these are the same inner
    products; for the closed-form route they are assembled from the
    expansion coefficients).  structural carries the six expansion
    coefficients and is None on the direct route.  offspan measures the
    part of the residual outside span{E1..E_m, phi T, xi}.
    """

    ts: np.ndarray
    c: float
    delta: tuple
    r: int
    m: int
    route: str
    vector: np.ndarray                 # (2n+1, N) frame components
    projections: dict
    equation_residuals: np.ndarray     # (m, N)
    offspan: np.ndarray                # (N,)
    structural: dict | None = None

    @property
    def norms(self):
        return np.sqrt(np.einsum("kN,kN->N", self.vector, self.vector))

    @property
    def max_norm(self):
        return float(np.max(self.norms)) if self.ts.size else 0.0

    @property
    def equations(self):
        """Max absolute residual of each of the m scalar equations."""
        return [float(np.max(np.abs(row))) for row in self.equation_residuals]

    @property
    def max_offspan(self):
        return float(np.max(self.offspan)) if self.ts.size else 0.0


def _build_report(vector, frenet, scalars, c, delta, route, equation_residuals,
                  structural=None):
    n = frenet.n
    N = frenet.ts.size
    projections = {}
    for i in range(4):
        if i < frenet.r:
            projections[f"E{i + 1}"] = np.einsum(
                "kN,kN->N", vector, frenet.frames[i]
            )
        else:
            projections[f"E{i + 1}"] = np.zeros(N)
    projections["phiT"] = np.einsum("kN,kN->N", vector, scalars.phiT)
    projections["xi"] = vector[2 * n].copy()

    # leakage outside the span of {E1..E_m, phiT, xi}: orthonormalize the
    # dictionary per sample and subtract; phiT and xi may sit inside the
    # frame span, which a least-squares projector handles without fuss
    m = frenet.m
    dim = 2 * n + 1
    cols = [frenet.frames[i] for i in range(m)] + [scalars.phiT]
    xi_col = np.zeros((dim, N))
    xi_col[2 * n] = 1.0
    cols.append(xi_col)
    A = np.stack(cols, axis=2)            # (dim, N, k) -> transpose below
    A = np.moveaxis(A, 1, 0)              # (N, dim, k)
    v = np.moveaxis(vector, 1, 0)[:, :, np.newaxis]
    coef = np.linalg.pinv(A) @ v          # min-norm least squares per sample
    rem = (v - A @ coef)[:, :, 0]
    offspan = np.sqrt(np.maximum(np.einsum("Nk,Nk->N", rem, rem), 0.0))

    return ResidualReport(
        ts=frenet.ts,
        c=float(c),
        delta=(float(delta[0]), float(delta[1])),
        r=frenet.r,
        m=m,
        route=route,
        vector=vector,
        projections=projections,
        equation_residuals=equation_residuals,
        offspan=offspan,
        structural=structural,
    )


def residual_direct(spec, ts, c=-3.0, delta=(0.0, 1.0)):
    """d2 * bitension - d1 * tension by covariant calculus, decomposed."""
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    d1, d2 = float(delta[0]), float(delta[1])
    T, tau, _, tau_3 = _direct_jets(spec, ts)
    curv = space_form_curvature_frame(c, T.value, tau.value, T.value, spec.n)
    vector = d2 * (tau_3.value - curv) - d1 * tau.value
    frenet = frenet_apparatus(spec, ts)
    scalars = frame_scalars(frenet)
    eqs = np.stack([
        np.einsum("kN,kN->N", vector, frenet.frames[i])
        for i in range(frenet.m)
    ])
    return _build_report(vector, frenet, scalars, c, (d1, d2), "direct", eqs)


# ---------------------------------------------------------------------------
# closed-form route


def _structural_coefficients(frenet, scalars, c, delta, eq2_sign="+"):
    d1, d2 = float(delta[0]), float(delta[1])
    N = frenet.ts.size
    if frenet.r < 2:
        zero = np.zeros(N)
        return {k: zero.copy() for k in
                ("E1", "E2", "E3", "E4", "phiT", "xi")}
    k1, k1p, k1pp = frenet.curvature_derivs(0, upto=2)
    if frenet.r >= 3:
        k2, k2p = frenet.curvature_derivs(1, upto=1)
    else:
        k2 = np.zeros(N)
        k2p = np.zeros(N)
    k3 = frenet.curvatures[2] if frenet.r >= 4 else np.zeros(N)
    if eq2_sign == "+":
        spring = (c + 3.0) / 4.0 * k1
    elif eq2_sign == "-":
        spring = -(c + 3.0) / 4.0 * k1
    else:
        raise AnalysisError(f"eq2_sign must be '+' or '-', got {eq2_sign!r}")
    q = (c - 1.0) / 4.0
    return {
        "E1": -3.0 * d2 * k1 * k1p,
        "E2": d2 * (k1pp - k1 ** 3 - k1 * k2 ** 2 + spring) - d1 * k1,
        "E3": d2 * (2.0 * k1p * k2 + k1 * k2p),
        "E4": d2 * k1 * k2 * k3,
        "phiT": 3.0 * q * d2 * k1 * scalars.f,
        "xi": -q * d2 * k1 * scalars.eta_E2,
    }


def residual_closed_form(frenet, scalars, c=-3.0, delta=(0.0, 1.0),
                         eq2_sign="+"):
    """The frame expansion of the residual, reassembled into a vector.

    eq2_sign selects the sign of the ((c+3)/4) k1 restoring term inside the
    E2 coefficient; "+" is the self-consistent choice and the default.
    """
    n = frenet.n
    N = frenet.ts.size
    if frenet.r >= 2 and frenet.frames.shape[0] < 2:
        raise AnalysisError("frame data for E2 missing from FrenetData")
    co = _structural_coefficients(frenet, scalars, c, delta, eq2_sign)
    dim = 2 * n + 1
    vector = np.zeros((dim, N))
    for i in range(4):
        if frenet.r > i:
            vector += co[f"E{i + 1}"][np.newaxis] * frenet.frames[i]
    vector += co["phiT"][np.newaxis] * scalars.phiT
    vector[2 * n] += co["xi"]

    # scalar equations: projections of the expansion onto E1..E_m
    eta = {2: scalars.eta_E2, 3: scalars.eta_E3, 4: scalars.eta_E4}
    gph = {2: scalars.f, 3: scalars.g_phiT_E3, 4: scalars.g_phiT_E4}
    eqs = []
    for i in range(1, frenet.m + 1):
        e = co[f"E{i}"].copy()
        if i >= 2:
            e += co["phiT"] * gph[i] + co["xi"] * eta[i]
        eqs.append(e)
    eqs = np.stack(eqs) if eqs else np.zeros((0, N))
    return _build_report(
        vector, frenet, scalars, c, delta, "closed-form", eqs, structural=co
    )


# ---------------------------------------------------------------------------
# theorem check


@dataclass
class EquationCheck:
    index: int
    max_residual: float
    passed: bool


@dataclass
class TheoremCheck:
    """Scalar criticality equations plus the span condition on phi T terms."""

    m: int
    equations: list
    condition1_mode: str       # "c=1" | "orthogonal" | "span" | "violated"
    condition1_leakage: float
    condition1_passed: bool

    @property
    def passed(self):
        return self.condition1_passed and all(e.passed for e in self.equations)


def theorem31_check(frenet, scalars, c=-3.0, delta=(0.0, 1.0), tol=1e-6,
                    eq2_sign="+"):
    """Evaluate the m scalar equations and the phiT/xi span condition.

    The criticality system holds iff the first m = min(r, 4) scalar
    equations vanish and the phi T and xi correction terms carry nothing
    outside span{E_1..E_m}.
    """
    report = residual_closed_form(frenet, scalars, c, delta, eq2_sign)
    checks = [
        EquationCheck(i + 1, float(np.max(np.abs(row))),
                      bool(np.max(np.abs(row)) <= tol))
        for i, row in enumerate(report.equation_residuals)
    ]

    n = frenet.n
    N = frenet.ts.size
    co = report.structural
    if abs(c - 1.0) < 1e-12:
        mode, leak = "c=1", 0.0
    else:
        extra = co["phiT"][np.newaxis] * scalars.phiT
        extra = extra.copy()
        extra[2 * n] += co["xi"]
        leak_arr = _span_leakage(extra, frenet.frames[:frenet.m])
        leak = float(np.max(leak_arr)) if N else 0.0
        if np.max(np.abs(scalars.f)) <= tol:
            mode = "orthogonal"
        elif leak <= tol:
            mode = "span"
        else:
            mode = "violated"
    passed = mode != "violated" and leak <= tol
    return TheoremCheck(
        m=frenet.m,
        equations=checks,
        condition1_mode=mode,
        condition1_leakage=leak,
        condition1_passed=passed,
    )


# ---------------------------------------------------------------------------
# classification


@dataclass
class CurveClass:
    """Coarse curve type plus the analysis case the curve falls into."""

    klass: str                 # geodesic | circle | helix | general
    case: str                  # "I" | "II" | "III" | "IV"
    alpha0: float | None = None
    w0: float | None = None
    w0_variance: float | None = None
    f_mean: float | None = None
    diagnostics: list = field(default_factory=list)


def _is_const(arr, tol):
    return float(np.ptp(arr)) <= tol if arr.size else True


def classify(frenet, scalars, c=-3.0, tol=CONSTANCY_TOL):
    """Assign geodesic/circle/helix/general and the case tag I..IV."""
    diagnostics = []
    if frenet.r == 1:
        klass = "geodesic"
    elif frenet.r == 2 and _is_const(frenet.curvatures[0], tol):
        klass = "circle"
    elif (frenet.r == 3 and _is_const(frenet.curvatures[0], tol)
          and _is_const(frenet.curvatures[1], tol)):
        klass = "helix"
    else:
        klass = "general"
        if frenet.r <= 3:
            diagnostics.append("curvatures not constant within tol")

    f = scalars.f
    alpha0 = None
    w0 = None
    w0_var = None
    f_mean = float(np.mean(f)) if f.size else 0.0
    if abs(c - 1.0) < 1e-12:
        case = "I"
    elif np.max(np.abs(f)) <= tol:
        case = "II"
    elif np.max(np.abs(np.abs(f) - 1.0)) <= tol:
        case = "III"
    else:
        case = "IV"
        if _is_const(f, tol):
            g4 = float(np.mean(scalars.g_phiT_E4))
            alpha0 = math.atan2(g4, f_mean)
            sin_check = abs(math.sin(alpha0) - g4)
            if sin_check > 10 * tol:
                diagnostics.append(
                    f"g(phi T, E4) deviates from sin(alpha0) by {sin_check:.2e}"
                )
            w_samples = (
                scalars.f ** 2 * (3.0 * (c - 1.0) / 4.0)
            )
            if frenet.r >= 3:
                w_samples = frenet.curvatures[1] ** 2 + w_samples
            w0 = float(np.mean(w_samples))
            w0_var = float(np.var(w_samples))
        else:
            klass = "general"
            diagnostics.append(
                "f = g(phi T, E2) is not constant; case-IV constants "
                "(alpha0, w0) are undefined and the ODE system applies"
            )
    return CurveClass(
        klass=klass,
        case=case,
        alpha0=alpha0,
        w0=w0,
        w0_variance=w0_var,
        f_mean=f_mean,
        diagnostics=diagnostics,
    )


# ---------------------------------------------------------------------------
# delta solver


@dataclass
class DeltaSolution:
    """Weight ratios rho = d1/d2 (with d2 = 1) that can kill the residual."""

    case: str
    klass: str
    rho: float | None
    rho_pointwise: np.ndarray | None
    rho_spread: float
    parallel_defect: float
    feasible: bool
    any_delta: bool = False
    k2_deviation: float | None = None
    alpha0: float | None = None
    notes: list = field(default_factory=list)

    @property
    def delta(self):
        if self.rho is None:
            return None
        return (self.rho, 1.0)


def solve_delta(frenet, scalars, c=-3.0, tol=CONSTANCY_TOL):
    """Solve d2 tau2 = d1 tau for the ratio rho = d1/d2, case by case.

    Normalization fixes d2 = 1.  Alongside the case formula the solver
    always evaluates the pointwise ratio rho(t) = <tau2, tau>/<tau, tau>
    and the parallelism defect |tau2 - rho(t) tau|; a spread in rho(t) or a
    nonzero defect means no constant pair works.
    """
    cls = classify(frenet, scalars, c, tol)
    if frenet.r == 1:
        return DeltaSolution(
            case=cls.case, klass="geodesic", rho=None, rho_pointwise=None,
            rho_spread=0.0, parallel_defect=0.0, feasible=True,
            any_delta=True, notes=["geodesic: residual vanishes for every "
                                   "(d1, d2)"],
        )

    k1 = frenet.curvatures[0]
    K1sq = float(np.mean(k1)) ** 2
    K2sq = float(np.mean(frenet.curvatures[1])) ** 2 if frenet.r >= 3 else 0.0
    S = K1sq + K2sq

    # pointwise ratio from the pure-bending residual (d = (0, 1))
    pure = residual_closed_form(frenet, scalars, c, (0.0, 1.0))
    rho_t = pure.equation_residuals[1] / k1
    tau_vec = k1[np.newaxis] * frenet.frames[1]
    defect_vec = pure.vector - rho_t[np.newaxis] * tau_vec
    parallel_defect = float(np.max(np.sqrt(np.maximum(
        np.einsum("kN,kN->N", defect_vec, defect_vec), 0.0))))
    rho_spread = float(np.ptp(rho_t))

    notes = []
    rho = None
    k2_dev = None
    feasible = parallel_defect <= max(tol, 1e-6 * float(np.max(np.abs(k1))))
    if rho_spread > tol:
        notes.append(
            f"pointwise ratio varies by {rho_spread:.3e}: no constant "
            f"(d1, d2) kills the residual"
        )
        feasible = False

    if cls.case == "I" and cls.klass in ("circle", "helix"):
        rho = 1.0 - S
        notes.append("1 - rho = k1^2 + k2^2 >= 0 holds by construction")
        if abs(rho) < 1e-12:
            notes.append("rho = 0: the curve is critical for bending alone")
    elif cls.case == "II" and cls.klass in ("circle", "helix"):
        rho = (c + 3.0) / 4.0 - S
        if c <= -3.0 and rho >= 0.0:
            notes.append("nonnegative rho with c <= -3 admits only geodesics")
            feasible = False
        elif c <= -3.0:
            notes.append("c <= -3 forces rho < 0 for non-geodesics")
    elif cls.case == "III" and cls.klass in ("circle", "helix"):
        rho = (c - 1.0) - K1sq
        k2_dev = (
            float(np.max(np.abs(frenet.curvatures[1] - 1.0)))
            if frenet.r >= 3 else 1.0
        )
        if k2_dev > tol:
            notes.append(
                f"second curvature deviates from 1 by {k2_dev:.3e}, in "
                f"tension with this case's constraint"
            )
        if c < 1.0 and rho >= 0.0:
            notes.append("nonnegative rho with c < 1 admits only geodesics")
            feasible = False
    elif cls.case == "IV" and cls.alpha0 is not None and all(
        _is_const(frenet.curvatures[i], tol) for i in range(min(frenet.r - 1, 3))
    ):
        ca = math.cos(cls.alpha0)
        rho = (c + 3.0) / 4.0 + 3.0 * (c - 1.0) / 4.0 * ca * ca - S
        if 3.0 * (c - 1.0) * math.sin(2.0 * cls.alpha0) >= 0.0:
            notes.append(
                "sign constraint 3(c-1) sin(2 alpha0) < 0 fails: no "
                "admissible pair"
            )
            feasible = False
    else:
        rho = None
        notes.append("no case formula applies; see the pointwise ratio")

    if rho is not None and rho_spread <= tol:
        gap = abs(rho - float(np.mean(rho_t)))
        if gap > 1e-5 * max(1.0, abs(rho)):
            notes.append(
                f"case formula and pointwise ratio disagree by {gap:.3e}"
            )
    return DeltaSolution(
        case=cls.case,
        klass=cls.klass,
        rho=rho,
        rho_pointwise=rho_t,
        rho_spread=rho_spread,
        parallel_defect=parallel_defect,
        feasible=feasible,
        k2_deviation=k2_dev,
        alpha0=cls.alpha0,
        notes=notes,
    )


# ---------------------------------------------------------------------------
# independence of the case-II frame set


@dataclass
class IndependenceReport:
    independent: bool
    min_singular_value: float
    set_size: int
    implied_n_bound: int
    note: str = ""


def independence_check(spec, frenet, ts=None, tol=1e-8):
    """Pointwise independence of {T, E2, (E3), phi T, nabla_T phi T, xi}.

    Defined for osculating order 2 or 3.  Returns the smallest eigenvalue
    of the Gram matrix of the set over the grid; a value bounded away from
    zero certifies independence and hence the dimension bound n >= 2
    (order 2) or n >= 3 (order 3).
    """
    if frenet.r not in (2, 3):
        raise AnalysisError(
            f"independence set is defined for osculating order 2 or 3, "
            f"got r={frenet.r}"
        )
    if ts is not None:
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        if ts.shape != frenet.ts.shape or not np.allclose(ts, frenet.ts):
            raise AnalysisError("grid must match the FrenetData grid")
    n = frenet.n
    dim = 2 * n + 1
    size = frenet.r + 3
    bound = (size + 1) // 2  # smallest n with 2n+1 >= size
    if dim < size:
        return IndependenceReport(
            independent=False,
            min_singular_value=0.0,
            set_size=size,
            implied_n_bound=bound,
            note=(f"ambient dimension {dim} cannot hold {size} independent "
                  f"vectors; the bound n >= {bound} is confirmed"),
        )
    if not frenet.frame_jets:
        raise AnalysisError(
            "independence_check needs jet-backed FrenetData from "
            "frenet_apparatus"
        )
    Tj = frenet.frame_jets[0]
    phiT_jet = _phi_jet(Tj, n)
    dphiT = _nabla_along(n, Tj.truncate(phiT_jet.order), phiT_jet).value
    N = frenet.ts.size
    xi_col = np.zeros((dim, N))
    xi_col[2 * n] = 1.0
    cols = [frenet.frames[0], frenet.frames[1]]
    if frenet.r == 3:
        cols.append(frenet.frames[2])
    phiT = np.concatenate(
        [-frenet.frames[0][n:2 * n], frenet.frames[0][:n],
         np.zeros((1, N))], axis=0
    )
    cols += [phiT, dphiT, xi_col]
    A = np.moveaxis(np.stack(cols, axis=2), 1, 0)   # (N, dim, k)
    G = np.einsum("Nik,Nil->Nkl", A, A)
    eigs = np.linalg.eigvalsh(G)
    min_sv = float(np.min(eigs))
    return IndependenceReport(
        independent=min_sv > tol,
        min_singular_value=min_sv,
        set_size=size,
        implied_n_bound=bound,
    )


# ---------------------------------------------------------------------------
# case-IV ODE system


@dataclass
class Case4Report:
    """Pointwise residuals of the case-IV ODE system and its first integral."""

    k1_prime: np.ndarray
    sum_rule: np.ndarray
    k2_ode: np.ndarray
    k2k3_ode: np.ndarray
    w0: float
    w0_variance: float
    alpha0: float | None

    @property
    def max_residuals(self):
        return {
            "k1_prime": float(np.max(np.abs(self.k1_prime))),
            "sum_rule": float(np.max(np.abs(self.sum_rule))),
            "k2_ode": float(np.max(np.abs(self.k2_ode))),
            "k2k3_ode": float(np.max(np.abs(self.k2k3_ode))),
        }


def case4_ode_residuals(frenet, scalars, c=-3.0, delta=(0.0, 1.0)):
    """Residuals of the four case-IV equations along the grid.

    The equations: k1 constant; the E2 scalar equation with weights
    (d1, d2); k2' = -3((c-1)/4) f g(phi T, E3); and
    k2 k3 = -3((c-1)/4) f g(phi T, E4).  Also fits the first integral
    k2^2 + 3((c-1)/4) f^2 = w0 and reports the fit variance.
    """
    if frenet.r < 4:
        raise AnalysisError(
            f"case-IV system needs osculating order >= 4, got r={frenet.r}"
        )
    d1, d2 = float(delta[0]), float(delta[1])
    k1, k1p, k1pp = frenet.curvature_derivs(0, upto=2)
    k2, k2p = frenet.curvature_derivs(1, upto=1)
    k3 = frenet.curvatures[2]
    q = (c - 1.0) / 4.0
    f = scalars.f
    sum_rule = (
        d2 * (k1pp - k1 ** 3 - k1 * k2 ** 2 + (c + 3.0) / 4.0 * k1
              + 3.0 * q * k1 * f ** 2)
        - d1 * k1
    )
    k2_ode = k2p + 3.0 * q * f * scalars.g_phiT_E3
    k2k3_ode = k2 * k3 + 3.0 * q * f * scalars.g_phiT_E4
    w_samples = k2 ** 2 + 3.0 * q * f ** 2
    alpha0 = None
    if float(np.ptp(f)) <= CONSTANCY_TOL:
        alpha0 = math.atan2(
            float(np.mean(scalars.g_phiT_E4)), float(np.mean(f))
        )
    return Case4Report(
        k1_prime=k1p,
        sum_rule=sum_rule,
        k2_ode=k2_ode,
        k2k3_ode=k2k3_ode,
        w0=float(np.mean(w_samples)),
        w0_variance=float(np.var(w_samples)),
        alpha0=alpha0,
    )
