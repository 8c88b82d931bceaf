#!/usr/bin/env python3
"""Generate data/zeros_100k.txt: ordinates of the first 100000 nontrivial
Riemann zeta zeros.

Method:
  1. Scan Z(t) (Riemann-Siegel main sum + leading correction term) on a fine
     grid and bracket sign changes.
  2. Refine each bracket by bisection on the Riemann-Siegel Z.
  3. Polish each root with a secant iteration on the Euler-Maclaurin
     evaluation Z(t) = 2 Re(exp(i theta(t)) zeta(1/2+it)), which is accurate
     to ~1e-12 at these heights.
  4. Verify: the k-th zero must satisfy |k - (theta(g_k)/pi + 1)| < 2.8
     (the argument function never exceeds this at desk heights), and a
     random sample is compared against mpmath.zetazero.

Run from the repository root:  python3 tools/gen_zeros.py
"""

import sys
import time
import numpy as np

TWO_PI = 2.0 * np.pi
N_ZEROS = 100000

# Bernoulli numbers B_2..B_20
BERN = [1/6, -1/30, 1/42, -1/30, 5/66, -691/2730, 7/6, -3617/510,
        43867/798, -174611/330]

# theta asymptotic coefficients theta_j = (1-2^(1-2j)) |B_2j| / (4j(2j-1))
THETA_C = [(1 - 2.0**(1 - 2*j)) * abs(BERN[j-1]) / (4*j*(2*j-1))
           for j in range(1, 5)]


def theta(t):
    """Riemann-Siegel theta, asymptotic series (error < 1e-13 for t > 10)."""
    t = np.asarray(t, dtype=np.float64)
    v = 0.5*t*np.log(t/TWO_PI) - 0.5*t - np.pi/8
    for j, c in enumerate(THETA_C, start=1):
        v = v + c * t**(1 - 2*j)
    return v


def rs_z(t):
    """Riemann-Siegel Z with the leading correction term, vectorized."""
    t = np.asarray(t, dtype=np.float64)
    a = np.sqrt(t / TWO_PI)
    nmax = np.floor(a).astype(np.int64)
    th = theta(t)
    z = np.zeros_like(t)
    # group by main-sum length
    for nv in np.unique(nmax):
        m = nmax == nv
        tt, tht = t[m], th[m]
        n = np.arange(1, nv + 1, dtype=np.float64)
        ph = tht[:, None] - tt[:, None] * np.log(n)[None, :]
        z[m] = 2.0 * (np.cos(ph) / np.sqrt(n)[None, :]).sum(axis=1)
    # leading correction
    p = a - nmax
    den = np.cos(TWO_PI * p)
    num = np.cos(TWO_PI * (p*p - p - 1.0/16.0))
    # the p = 1/4, 3/4 singularities are removable; nudge past them
    bad = np.abs(den) < 1e-8
    if np.any(bad):
        pb = p[bad] + 1e-6
        den = den.copy()
        num = num.copy()
        den[bad] = np.cos(TWO_PI * pb)
        num[bad] = np.cos(TWO_PI * (pb*pb - pb - 1.0/16.0))
    corr = (-1.0)**(nmax - 1) * (t/TWO_PI)**(-0.25) * num / den
    return z + corr


def zeta_em_half(t):
    """zeta(1/2 + i t) by Euler-Maclaurin, vectorized over t (same M)."""
    t = np.asarray(t, dtype=np.float64)
    M = int(max(20, np.ceil(0.7 * t.max()) + 20))
    s = 0.5 + 1j*t
    n = np.arange(1, M, dtype=np.float64)
    # sum_{n<M} n^-s  (chunk to bound memory)
    tot = np.zeros(t.shape, dtype=np.complex128)
    step = max(1, int(4e7 // max(1, t.size)))
    for i in range(0, n.size, step):
        nn = n[i:i+step]
        tot += (np.exp(np.outer(-s, np.log(nn)))).sum(axis=1)
    Mf = float(M)
    tot += Mf**(1-s) / (s-1) + 0.5 * Mf**(-s)
    poch = s.copy()
    fac = Mf**(-s-1)
    for k in range(1, 11):
        # B_2k/(2k)! * s(s+1)...(s+2k-2) * M^(-s-2k+1)
        from math import factorial
        tot += BERN[k-1] / factorial(2*k) * poch * fac
        if k < 10:
            poch = poch * (s + 2*k - 1) * (s + 2*k)
            fac = fac / (Mf * Mf)
    return tot


def z_em(t):
    # exp(i theta) zeta(1/2+it) is real; Re() just discards rounding noise
    return np.real(np.exp(1j*theta(t)) * zeta_em_half(t))


def main():
    t0 = time.time()
    lo, hi_guess = 14.0, 75010.0
    step = 0.008
    print("scanning Riemann-Siegel Z ...", flush=True)
    roots = []
    chunk = 400000
    grid_lo = lo
    prev_t = prev_z = None
    while grid_lo < hi_guess and len(roots) < N_ZEROS + 5:
        g = np.arange(grid_lo, min(grid_lo + chunk*step, hi_guess), step)
        z = rs_z(g)
        if prev_t is not None:
            g = np.concatenate([[prev_t], g])
            z = np.concatenate([[prev_z], z])
        sc = np.where(np.signbit(z[:-1]) != np.signbit(z[1:]))[0]
        a, b = g[sc], g[sc+1]
        za, zb = z[sc], z[sc+1]
        for _ in range(30):  # vectorized bisection on RS Z
            mid = 0.5*(a+b)
            zm = rs_z(mid)
            left = np.signbit(za) != np.signbit(zm)
            b = np.where(left, mid, b)
            zb = np.where(left, zm, zb)
            a = np.where(left, a, mid)
            za = np.where(left, za, zm)
        roots.extend(0.5*(a+b))
        prev_t, prev_z = g[-1], z[-1]
        grid_lo = g[-1] + step
        print(f"  t={grid_lo:9.1f}  zeros so far: {len(roots)}", flush=True)
    roots = np.array(sorted(roots))[:N_ZEROS]
    assert roots.size == N_ZEROS, f"only {roots.size} zeros found"
    print(f"scan+bisect done in {time.time()-t0:.0f}s", flush=True)

    print("Euler-Maclaurin polish ...", flush=True)
    d = 2e-3
    # secant on accurate Z, batched by height so M is shared
    polished = np.empty_like(roots)
    bs = 256
    for i in range(0, roots.size, bs):
        r = roots[i:i+bs]
        x0, x1 = r - d, r + d
        f0, f1 = z_em(x0), z_em(x1)
        for _ in range(8):
            with np.errstate(all='ignore'):
                dx = f1 * (x1 - x0) / (f1 - f0)
            # 0/0 once converged: stay put; clamp (don't discard) large
            # steps so a poor RS seed can still walk to the true zero
            dx = np.where(np.isfinite(dx), dx, 0.0)
            dx = np.clip(dx, -5e-3, 5e-3)
            x2 = x1 - dx
            f2 = z_em(x2)
            x0, f0, x1, f1 = x1, f1, x2, f2
        polished[i:i+bs] = x1
        if (i // bs) % 40 == 0:
            print(f"  polished {i}/{roots.size}", flush=True)
    # repair stragglers (drifted, non-finite, or order-violating) by
    # plain bisection on the accurate Z
    # at low heights the RS root can legitimately sit several 1e-3 from the
    # true zero, so only large drifts are suspicious
    bad = ~np.isfinite(polished) | (np.abs(polished - roots) > 8e-3)
    dd = np.diff(polished)
    viol = np.where(~(dd > 0))[0]
    for j in viol:
        bad[j] = bad[j+1] = True
    print(f"  repairing {int(bad.sum())} roots by bisection", flush=True)
    for j in np.where(bad)[0]:
        c = polished[j] if np.isfinite(polished[j]) else roots[j]
        w = d
        while True:
            a, b = c - w, c + w
            fa = z_em(np.array([a]))[0]
            fb = z_em(np.array([b]))[0]
            if np.signbit(fa) != np.signbit(fb):
                break
            w *= 2.0
            if w > 0.1:
                raise RuntimeError(f"no sign-change bracket for root #{j+1}")
        for _ in range(45):
            m = 0.5*(a+b)
            fm = z_em(np.array([m]))[0]
            if np.signbit(fa) != np.signbit(fm):
                b, fb = m, fm
            else:
                a, fa = m, fm
        polished[j] = 0.5*(a+b)
    roots = polished
    assert np.all(np.diff(roots) > 0), "ordering lost during polish"
    print(f"polish done at {time.time()-t0:.0f}s", flush=True)

    # verification 1: counting consistency (a missed zero shows up as a
    # persistent unit shift in S = k - theta/pi - 1)
    k = np.arange(1, N_ZEROS + 1, dtype=np.float64)
    s_at = k - theta(roots)/np.pi - 1.0
    print(f"S range at zeros: [{s_at.min():.3f}, {s_at.max():.3f}]")
    assert np.all(np.abs(s_at) < 2.8), "count inconsistency: missed zero?"

    # verification 2: spot checks against mpmath
    from mpmath import mp, zetazero
    mp.dps = 20
    idx = [1, 2, 3, 10, 29, 100, 649, 650, 1000, 5000, 20000, 60000, 99999, 100000]
    worst = 0.0
    for n in idx:
        ref = float(zetazero(n).imag)
        err = abs(roots[n-1] - ref)
        worst = max(worst, err)
        print(f"  zero #{n}: {roots[n-1]:.9f}  ref {ref:.9f}  err {err:.2e}")
    assert worst < 5e-9, "polish did not reach reference accuracy"

    with open("data/zeros_100k.txt", "w") as f:
        f.write("# Ordinates of the first 100000 nontrivial Riemann zeta zeros\n")
        f.write("# source: tools/gen_zeros.py (Riemann-Siegel scan, "
                "Euler-Maclaurin refinement)\n")
        f.write("# precision: 9\n")
        for r in roots:
            f.write(f"{r:.9f}\n")
    print(f"wrote data/zeros_100k.txt, H={roots[-1]:.9f}, "
          f"total {time.time()-t0:.0f}s")


if __name__ == "__main__":
    sys.exit(main())
