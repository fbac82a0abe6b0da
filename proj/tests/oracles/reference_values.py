#!/usr/bin/env python3
"""Arbitrary-precision reference values frozen into the C++ tests.

Run with mpmath installed; the output is pasted into tests/reference_values.hpp.
"""

import mpmath as mp

mp.mp.dps = 40


def C(delta):
    return mp.pi * mp.gamma(1 - delta) * mp.gamma(1 + delta)


def C_delta(delta):
    return (mp.pi * delta * mp.gamma(1 - delta)) ** (1 / (1 - delta)) / (delta / (1 - delta))


def theta(rate, bw, n, adaptive_sir=True):
    return mp.mpf(2) ** ((n if adaptive_sir else 1) * mp.mpf(rate) / bw) - 1


def euler_2f1(a, b, c, z):
    # u = v^3 removes the u^(b-1) endpoint singularity.
    f = lambda v: 3 * v**2 * (v**3) ** (b - 1) * (1 - v**3) ** (c - b - 1) * (1 - z * v**3) ** (-a)
    pts = mp.linspace(0, 1, 41)
    return mp.gamma(c) / (mp.gamma(b) * mp.gamma(c - b)) * mp.quad(f, pts)


def moment(lam, alpha, rate, bw, n, b):
    delta = mp.mpf(2) / alpha
    th = theta(rate, bw, n)
    return mp.exp(-b * lam * C(delta) * mp.hyp2f1(1 - b, 1 - delta, 2, mp.mpf(1) / n) * th**delta / n)


def md_single_band(lam, alpha, rate, bw, x):
    # N = 1: the Gauss sum gives M_b = exp(-b lam C theta^delta Gamma(delta + b) / (Gamma(1 + b) Gamma(1 + delta))).
    # P(P_s > x) = 1/2 + (1/pi) int_0^inf Im(x^(-jt) M_{jt}) / t dt.
    delta = mp.mpf(2) / alpha
    th = theta(rate, bw, 1)
    lam_c = lam * C(delta) * th**delta

    def m(t):
        b = 1j * t
        f = mp.gamma(1 + delta) ** -1 * mp.gamma(b + delta) / mp.gamma(1 + b)
        return mp.exp(-b * lam_c * f)

    y = -mp.log(x)
    integrand = lambda t: mp.im(mp.exp(1j * t * y) * m(t)) / t
    val = mp.quadosc(integrand, [0, mp.inf], omega=y)
    return mp.mpf(1) / 2 + val / mp.pi


def show(name, value):
    if isinstance(value, mp.mpc):
        print(f"{name} = ({mp.nstr(value.real, 20)}, {mp.nstr(value.imag, 20)})")
    else:
        print(f"{name} = {mp.nstr(value, 20)}")


if __name__ == "__main__":
    for x in ["0.5", "0.001", "3.7", "171.5", "100000"]:
        show(f"lgamma({x})", mp.loggamma(mp.mpf(x)))
    for z in [mp.mpc(0.5, 10), mp.mpc(2.5, -30), mp.mpc(0.01, 1000)]:
        show(f"lgamma({z})", mp.loggamma(z))
    for d in [mp.mpf(1) / 2, mp.mpf(2) / 3, mp.mpf(2) / 5]:
        show(f"C({mp.nstr(d, 6)})", C(d))
        show(f"C_delta({mp.nstr(d, 6)})", C_delta(d))

    for d in [mp.mpf(1) / 2, mp.mpf(2) / 3]:
        for n in [2, 8]:
            for a in [mp.mpc(1, -5), mp.mpc(1, -50), mp.mpc(1, -500), mp.mpc(-99, 0), mp.mpc(3, 0)]:
                ref = mp.hyp2f1(a, 1 - d, 2, mp.mpf(1) / n)
                chk = euler_2f1(a, 1 - d, 2, mp.mpf(1) / n)
                assert abs(ref - chk) <= 1e-25 * abs(ref), (a, d, n)
                show(f"2F1({a}, {mp.nstr(1 - d, 6)}; 2; 1/{n})", ref)
    for t in [60, 70, 2000]:
        for b, z in [(mp.mpf(1) / 2, mp.mpf(1) / 2), (mp.mpf(1) / 3, mp.mpf(1) / 4)]:
            show(f"2F1(1-{t}j, {mp.nstr(b, 6)}; 2; {mp.nstr(z, 6)})", mp.hyp2f1(mp.mpc(1, -t), b, 2, z))
    show("2F1(1-10j, 0.5; 2; 1)", mp.hyp2f1(mp.mpc(1, -10), 0.5, 2, 1))

    show("M_2(0.1,4,0.1,1,N=2)", moment(mp.mpf("0.1"), 4, mp.mpf("0.1"), 1, 2, 2))
    show("M_{1+10j}(1,3,0.25,1,N=4)", moment(1, 3, mp.mpf("0.25"), 1, 4, mp.mpc(1, 10)))
    show("M_{-1}(1,3,0.25,1,N=3)", moment(1, 3, mp.mpf("0.25"), 1, 3, -1))

    delta = mp.mpf(1) / 2
    eps = mp.mpf("0.01")
    th1 = theta(mp.mpf("0.1"), 1, 1)
    lam_star = eps**delta / (mp.pi * delta**delta * mp.gamma(1 - delta) * th1**delta)
    show("lambda_star(fig1)", lam_star)
    show("s_max(fig1)", lam_star * mp.exp(-(1 - delta)))

    show("MD(0.0584,4,0.1,1,N=1,x=0.99)", md_single_band(mp.mpf("0.0584"), 4, mp.mpf("0.1"), 1, mp.mpf("0.99")))
    show("MD(0.5,3,0.25,1,N=1,x=0.8)", md_single_band(mp.mpf("0.5"), 3, mp.mpf("0.25"), 1, mp.mpf("0.8")))

    def far_field(lam, alpha, th, n, r):
        f = lambda x: x * mp.log1p(-(mp.mpf(1) / n) / (1 + x**alpha / th))
        return 2 * mp.pi * lam * mp.quad(f, [r, 100, 1e4, mp.inf])

    show("far_field(0.1,4,N=1,r=10)", far_field(mp.mpf("0.1"), 4, theta(mp.mpf("0.1"), 1, 1), 1, 10))
    show("far_field(1,3,R=0.25,N=4,r=10)", far_field(1, 3, theta(mp.mpf("0.25"), 1, 4), 4, 10))
