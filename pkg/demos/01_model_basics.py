"""A tour of the ambient model: frames, contact tensors, connection, curvature.

Everything happens at a single point of the (2n+1)-dimensional model space.
The point matters: the orthonormal frame twists with the y coordinates, so
all identities below are checked at a random point rather than the origin.
"""

import numpy as np

from contactcurves import model
from contactcurves.model import ModelPoint, SpaceFormParams

rng = np.random.default_rng(1)
n = 2
dim = 2 * n + 1
p = ModelPoint(n, rng.uniform(-2.0, 2.0, size=dim))
print(f"model dimension 2n+1 = {dim}, point coords = {np.round(p.coords, 3)}")

# ---------------------------------------------------------------------------
# the frame is orthonormal even though the coordinate metric is not diagonal

F = model.frame_matrix(p)
gram = np.array([[model.metric(p, F[:, i], F[:, j]) for j in range(dim)]
                 for i in range(dim)])
print("frame Gram matrix deviation from identity:",
      f"{np.max(np.abs(gram - np.eye(dim))):.2e}")

# ---------------------------------------------------------------------------
# contact structure: eta kills the horizontal frame fields and feeds on xi

xi = model.xi(n)
print("eta(xi) =", model.eta(p, xi))
print("eta(X_1) =", model.eta(p, model.frame_field(p, 1)))

# phi rotates the horizontal distribution and annihilates xi
u = rng.normal(size=dim)
phi2 = model.phi(p, model.phi(p, u))
print("phi^2 u + u - eta(u) xi:",
      f"{np.max(np.abs(phi2 + u - model.eta(p, u) * xi)):.2e}")
print("phi(xi) =", model.phi(p, xi))

# ---------------------------------------------------------------------------
# the connection in frame coefficients: nabla_u xi = -phi u

uf = model.to_frame_coeffs(p, u)
xif = np.zeros(dim)
xif[2 * n] = 1.0
lhs = model.gamma_frame(n, uf, xif)
rhs = model.to_frame_coeffs(p, -model.phi(p, u))
print("nabla_u xi vs -phi u (frame coefficients):",
      f"{np.max(np.abs(lhs - rhs)):.2e}")

# ---------------------------------------------------------------------------
# curvature: at c = 1 the space form degenerates to the round-sphere shape

pair = dict(g_YZ=1.0, g_XZ=0.0, g_X_phiZ=0.0, g_Y_phiZ=0.0, g_X_phiY=0.0,
            eta_X=0.0, eta_Y=0.0, eta_Z=0.0)
w = model.space_form_curvature_abstract(1.0, pair)
print("c=1 abstract curvature weights:", w)

# at c = -3 only the eta/phi corrections survive; check against the
# concrete evaluation at our random point
X, Y, Z = rng.normal(size=(3, dim))
out = model.space_form_curvature(SpaceFormParams(-3.0), p, X, Y, Z)
ff = model.space_form_curvature_frame(
    -3.0,
    model.to_frame_coeffs(p, X),
    model.to_frame_coeffs(p, Y),
    model.to_frame_coeffs(p, Z),
    n,
)
print("concrete vs frame-coefficient curvature:",
      f"{np.max(np.abs(model.from_frame_coeffs(p, ff) - out)):.2e}")
