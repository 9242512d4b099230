"""Brute-force reference computations, independent of the library's solvers.

Only the bare Van der Waals formula is shared; roots, areas, extrema and
derivatives are obtained here by dense scans, trapezoid sums, bisection and
finite differences.
"""
import numpy as np


def vdw_price(a, b, R, I, Q):
    return R * I / (Q - b) - a / Q**2


def bisect(f, lo, hi, tol=1e-15, max_iter=300):
    flo = f(lo)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi) or hi - lo <= tol * max(1.0, abs(mid)):
            break
        fm = f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def dense_roots(a, b, R, I, P, q_max=50.0, n=10**6):
    """Roots of P(I, Q) = P on (b, q_max] by sign-change scan and bisection."""
    Q = np.linspace(b, q_max, n + 1)[1:]
    g = vdw_price(a, b, R, I, Q) - P
    idx = np.nonzero(np.sign(g[:-1]) * np.sign(g[1:]) < 0)[0]
    return [bisect(lambda q: vdw_price(a, b, R, I, q) - P, Q[k], Q[k + 1]) for k in idx]


def dense_maxwell(a, b, R, I, n=10**6, p_tol=1e-10):
    """Equal-area pressure by 10^6-point trapezoid areas and bisection in P."""
    Q = np.linspace(b, 100.0, 4 * 10**5 + 1)[1:]
    P = vdw_price(a, b, R, I, Q)
    dP = np.diff(P)
    turn = np.nonzero(np.sign(dP[:-1]) != np.sign(dP[1:]))[0] + 1
    p_min, p_max = P[turn[0]], P[turn[1]]
    lo, hi = max(p_min, 1e-12), p_max

    def area(p):
        r = dense_roots(a, b, R, I, p, q_max=400.0, n=n)
        q = np.linspace(r[0], r[-1], n)
        y = vdw_price(a, b, R, I, q) - p
        return float(np.sum(0.5 * (y[1:] + y[:-1]) * np.diff(q))), r

    while hi - lo > p_tol:
        mid = 0.5 * (lo + hi)
        A, _ = area(mid)
        if A > 0:
            lo = mid
        else:
            hi = mid
    p = 0.5 * (lo + hi)
    _, r = area(p)
    return p, r[0], r[-1]


def critical_scan(a, b, R, step=1e-4):
    """Critical point by scanning Q on a 1e-4 grid along the dP/dQ = 0 locus.

    On that locus I(Q) = 2a(Q - b)^2 / (R Q^3); the curvature d2P/dQ2 changes
    sign at Q_c, which is then refined by bisection.
    """
    def I_on_locus(Q):
        return 2 * a * (Q - b) ** 2 / (R * Q**3)

    def curvature(Q):
        I = I_on_locus(Q)
        return 2 * R * I / (Q - b) ** 3 - 6 * a / Q**4

    Q = np.arange(b + step, 20 * b, step)
    c = curvature(Q)
    k = np.nonzero(np.sign(c[:-1]) != np.sign(c[1:]))[0][0]
    Qc = bisect(curvature, Q[k], Q[k + 1])
    Ic = I_on_locus(Qc)
    return Ic, vdw_price(a, b, R, Ic, Qc), Qc


def central_difference(f, x, h=1e-6):
    return (f(x + h) - f(x - h)) / (2 * h)


def second_difference(f, x, h=1e-4):
    return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h)
