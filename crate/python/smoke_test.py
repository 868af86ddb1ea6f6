"""Smoke test for the manistat_py extension module.

Run python/build.sh first, then `python python/smoke_test.py` from the
repository root (or from this directory).
"""

import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import numpy as np

import manistat_py as ms


def check(name, ok, detail=""):
    status = "ok" if ok else "FAIL"
    print(f"  [{status}] {name}" + (f": {detail}" if detail else ""))
    if not ok:
        raise SystemExit(f"smoke test failed at {name}")


def main():
    print("sphere")
    sph = ms.Sphere(3)
    check("repr", repr(sph) == "Sphere(ambient_dim=3)", repr(sph))
    check("dims", sph.ambient_dim() == 3 and sph.dim() == 2)
    check("injectivity", sph.injectivity_radius() == math.pi)

    p = sph.project(np.array([1.0, 1.0, 0.0]))
    q = sph.project(np.array([0.0, 1.0, 1.0]))
    v = sph.log(p, q)
    rt = sph.exp(p, v)
    check("exp/log roundtrip", np.linalg.norm(rt - q) < 1e-12,
          f"err={np.linalg.norm(rt - q):.2e}")
    check("dist matches log norm",
          abs(sph.dist(p, q) - np.linalg.norm(v)) < 1e-12)
    mid = sph.geodesic(p, q, 0.5)
    check("geodesic midpoint",
          abs(sph.dist(p, mid) - 0.5 * sph.dist(p, q)) < 1e-12)
    w = sph.parallel_transport(p, q, v)
    check("transport isometry",
          abs(np.linalg.norm(w) - np.linalg.norm(v)) < 1e-12)
    basis = sph.tangent_basis(p)
    gram = basis @ basis.T
    check("tangent basis orthonormal",
          np.allclose(gram, np.eye(2), atol=1e-12))

    pts = sph.random_points(200, seed=7)
    check("random points on sphere",
          np.allclose(np.linalg.norm(pts, axis=1), 1.0, atol=1e-12))

    print("estimators")
    res = ms.frechet_mean(sph, pts)
    check("frechet mean converged", res["converged"],
          f"grad={res['grad_norm']:.2e} iters={res['iterations']}")
    check("mean on sphere",
          abs(np.linalg.norm(res["mean"]) - 1.0) < 1e-12)

    med = ms.geometric_median(sph, pts)
    check("median converged", med["converged"],
          f"iters={med['iterations']}")

    # Symmetric four-point configuration at polar angle a: the mean is the
    # pole and the envelope Hessian is (1 + a cot a)/2 times the identity.
    a = 0.8
    ring = np.array([
        [math.sin(a) * math.cos(t), math.sin(a) * math.sin(t), math.cos(a)]
        for t in np.linspace(0.0, 2.0 * math.pi, 4, endpoint=False)
    ])
    env = ms.frechet_envelope(sph, ring, radius=0.2)
    expected = 0.5 * (1.0 + a / math.tan(a))
    eig_err = np.max(np.abs(env["hessian_eigenvalues"] - expected))
    check("envelope curvature", eig_err < 2e-3, f"err={eig_err:.2e}")
    check("envelope convex bracket",
          env["alpha"] <= env["hessian_eigenvalues"].min() + 1e-12
          and env["hessian_eigenvalues"].max() <= env["beta"] + 1e-12)
    check("envelope gradient small", env["fitted_gradient_norm"] < 1e-9,
          f"|g|={env['fitted_gradient_norm']:.2e}")

    print("torus")
    torus = ms.FlatTorus([2.0 * math.pi, 1.7])
    check("periods", np.allclose(torus.periods, [2.0 * math.pi, 1.7]))
    x = torus.project(np.array([7.0, -0.3]))
    check("projection wraps", 0.0 <= x[0] < 2.0 * math.pi and 0.0 <= x[1] < 1.7)
    y = torus.project(np.array([0.1, 1.6]))
    d = torus.dist(x, y)
    check("torus distance finite", 0.0 < d < torus.injectivity_radius() * 2.0 + 1.0)

    lat = ms.golden_lattice(torus, 500)
    check("lattice shape", lat.shape == (500, 2))
    check("lattice in fundamental domain",
          (lat >= 0.0).all() and (lat[:, 0] < 2.0 * math.pi).all()
          and (lat[:, 1] < 1.7).all())

    fib = ms.fibonacci_sphere(1000)
    check("fibonacci on sphere",
          np.allclose(np.linalg.norm(fib, axis=1), 1.0, atol=1e-12))
    check("fibonacci centroid small",
          np.linalg.norm(fib.mean(axis=0)) < 1e-3)

    print("circular statistics")
    wn = ms.WrappedNormal(1.0, 0.4)
    angles = wn.sample(4000, seed=11)
    summary = ms.circular_summary(angles)
    check("summary mean near mu",
          abs(summary["mean_direction"] - 1.0) < 0.05,
          f"mean={summary['mean_direction']:.3f}")
    fit = ms.WrappedNormal.fit_moments(angles)
    check("moment fit recovers sigma", abs(fit.sigma - 0.4) < 0.05,
          f"sigma={fit.sigma:.3f}")
    total = np.trapezoid([wn.pdf(t) for t in np.linspace(0, 2 * math.pi, 2001)],
                         np.linspace(0, 2 * math.pi, 2001))
    check("pdf integrates to one", abs(total - 1.0) < 1e-6,
          f"integral={total:.8f}")

    print("error handling")
    try:
        ms.Sphere(1)
        check("bad sphere rejected", False)
    except ValueError:
        check("bad sphere rejected", True)
    try:
        sph.dist(p, np.array([1.0, 0.0]))
        check("dimension mismatch rejected", False)
    except ValueError:
        check("dimension mismatch rejected", True)
    try:
        ms.frechet_mean("not a manifold", pts)
        check("bad manifold rejected", False)
    except TypeError:
        check("bad manifold rejected", True)

    print("smoke test passed")


if __name__ == "__main__":
    main()
