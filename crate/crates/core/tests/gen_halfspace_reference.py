"""Reference displacements of the two half-space test sources, computed with
cutde (triangular dislocation elements). The rectangle is split into two
triangles; the slip vector in cutde's triangle frame is chosen so that the
displacement jump across the patch equals the prescribed slip.

Usage: python gen_halfspace_reference.py > data/halfspace_reference.csv
"""
import numpy as np
import cutde.halfspace as hs

NU = 0.25  # lambda = mu
STRIKE, DIP = np.radians(15.0), np.radians(30.0)
L = 3 ** -0.5

e_strike = np.array([np.sin(STRIKE), np.cos(STRIKE), 0.0])
horiz = np.array([-np.cos(STRIKE), np.sin(STRIKE), 0.0])
e_dip = np.cos(DIP) * horiz + np.array([0.0, 0.0, np.sin(DIP)])
n_hw = np.cross(e_strike, e_dip)
ref = np.array([0.0, 0.0, -0.5])


def patch(aw):
    c = [ref + s * e_strike + w * e_dip for s, w in
         [(-L / 2, aw[0]), (L / 2, aw[0]), (L / 2, aw[1]), (-L / 2, aw[1])]]
    return np.array([[c[0], c[1], c[2]], [c[0], c[2], c[3]]])


def disp(obs, tris, slip_local):
    m = hs.disp_matrix(np.asarray(obs, dtype=float), tris, NU)
    return np.einsum("oitj,tj->oi", m, np.tile(slip_local, (len(tris), 1)))


def calibrated_slip(tris, b, centre):
    # jump (hanging wall minus footwall) for unit slip in each local component
    d = 1e-10
    pts = [centre + d * n_hw, centre - d * n_hw]
    jac = np.zeros((3, 3))
    for k in range(3):
        s = np.zeros(3)
        s[k] = 1.0
        u = disp(pts, tris, s)
        jac[:, k] = u[0] - u[1]
    return np.linalg.solve(jac, b)


CASES = {
    "II": ((-0.5, 0.5), 0.1),
    "III": ((-0.5, 1.0), -0.1),
}

rng = np.random.default_rng(2024)
print("case,x,y,z,ux,uy,uz")
for name, (aw, dip_slip) in CASES.items():
    tris = patch(aw)
    b = 0.2 * e_strike + dip_slip * e_dip
    centre = ref + 0.1 * e_strike + 0.1 * e_dip
    s = calibrated_slip(tris, b, centre)
    pts = []
    while len(pts) < 40:
        p = np.array([rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 0)])
        if len(pts) % 4 == 0:
            p[2] = 0.0
        # keep away from the patch plane
        if abs(np.dot(p - ref, n_hw)) < 0.05:
            continue
        pts.append(p)
    u = disp(pts, tris, s)
    for p, v in zip(pts, u):
        print(f"{name},{p[0]:.17g},{p[1]:.17g},{p[2]:.17g},{v[0]:.17g},{v[1]:.17g},{v[2]:.17g}")
