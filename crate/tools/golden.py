#!/usr/bin/env python3
"""Regenerate the extended-precision golden fixtures used by the test suite.

All reference values are computed with mpmath at 40 significant digits and
written with 22 digits, far beyond f64 round-off. Theta functions are summed
directly from their defining q-series (64 terms) and cross-checked against
mpmath's jtheta before anything is written.

Usage: python3 tools/golden.py > crates/aybe/tests/fixtures/golden.txt
"""

import sys

from mpmath import mp, mpc, mpf, exp, sin, cos, pi, jtheta, nstr, fabs

mp.dps = 40
I = mpc(0, 1)
TWO_PI_I = 2 * pi * I
N_TERMS = 64


def q_of(tau):
    return exp(pi * I * tau)


def theta1(z, tau):
    """theta_1(z|tau) = 2 q^{1/4} sum (-1)^n q^{n(n+1)} sin((2n+1) pi z)."""
    q = q_of(tau)
    s = mpf(0)
    for n in range(N_TERMS):
        s += (-1) ** n * q ** (n * (n + 1)) * sin((2 * n + 1) * pi * z)
    val = 2 * q ** mpf("0.25") * s
    ref = jtheta(1, pi * z, q)
    assert fabs(val - ref) <= mpf("1e-30") * (1 + fabs(ref)), "theta1 series mismatch"
    return val


def theta3(z, tau):
    """theta_3(z|tau) = 1 + 2 sum q^{n^2} cos(2 pi n z)."""
    q = q_of(tau)
    s = mpf(1)
    for n in range(1, N_TERMS):
        s += 2 * q ** (n * n) * cos(2 * pi * n * z)
    ref = jtheta(3, pi * z, q)
    assert fabs(s - ref) <= mpf("1e-30") * (1 + fabs(ref)), "theta3 series mismatch"
    return s


def theta1_d0(tau):
    """d/dz theta_1(z|tau) at z = 0, by term-wise differentiation."""
    q = q_of(tau)
    s = mpf(0)
    for n in range(N_TERMS):
        s += (-1) ** n * q ** (n * (n + 1)) * (2 * n + 1) * pi
    val = 2 * q ** mpf("0.25") * s
    ref = pi * jtheta(1, 0, q, 1)
    assert fabs(val - ref) <= mpf("1e-30") * (1 + fabs(ref))
    return val


def sigma(u, z, tau):
    """Kronecker elliptic function, theta-ratio form."""
    return theta1_d0(tau) * theta1(u + z, tau) / (theta1(u, tau) * theta1(z, tau))


def theta_shifted(x, w, tau):
    return theta3(w + (1 + tau) / 2 - x, tau)


def phi_factor(x, w, tau):
    return -exp(-TWO_PI_I * (w + tau - x))


def theta3_deriv_half_period(tau):
    """theta_3'((1+tau)/2) via the shift identity relating theta_3 and theta_1."""
    return I * exp(-pi * I * tau / 4) * theta1_d0(tau)


# -- clock and shift matrices -------------------------------------------------

def eps_pow(n, d, t):
    return exp(TWO_PI_I * d * (t % n) / n)


def z_basis(n, d, k, l):
    """Z_(k,l) = Y^k X^{-l} with X = diag(eps^j), Y the upward cyclic shift."""
    m = [[mpf(0)] * n for _ in range(n)]
    for i in range(n):
        j = (i + k) % n
        m[i][j] = eps_pow(n, d, -l * j)
    return m


def z_dual(n, d, k, l):
    """Z^dual_(k,l) = (1/n) X^l Y^{-k}."""
    m = [[mpf(0)] * n for _ in range(n)]
    for i in range(n):
        j = (i - k) % n
        m[i][j] = eps_pow(n, d, l * i) / n
    return m


def f_basis(n, d, tau, v, x, k, l, w):
    """Quasi-periodic basis function of the section space."""
    return exp(-TWO_PI_I * d * k * w / n) * theta3(
        w + (1 + tau) / 2 + v - x - mpf(d) / n * (k * tau - l), tau)


def fmt(x):
    if isinstance(x, mpf):
        return nstr(x, 22, strip_zeros=False)
    if isinstance(x, float):
        return repr(x)
    return str(x)


def emit(name, *fields):
    print(name + " " + " ".join(fmt(f) for f in fields))


def emit_c(name, inputs, value):
    emit(name, *(list(inputs) + [value.real, value.imag]))


def main():
    print("# golden fixtures v1 -- generated by tools/golden.py (mpmath, 40 digits)")
    print("# record: name inputs... value_re value_im")

    tau_i = mpc(0, 1)
    tau_g = mpc("0.3", "0.9")
    tau_08 = mpc(0, "0.8")

    emit_c("nome", [0, 1], q_of(tau_i))
    emit_c("nome", [0.5, 2], q_of(mpc("0.5", 2)))

    emit_c("theta1", [0.3, 0, 0, 1], theta1(mpf("0.3"), tau_i))
    emit_c("theta1", [0.21, 0.13, 0.3, 0.9], theta1(mpc("0.21", "0.13"), tau_g))
    emit_c("theta3", [0, 0, 0, 1], theta3(mpf(0), tau_i))
    emit_c("theta3", [0.2, 0.1, 0, 0.8], theta3(mpc("0.2", "0.1"), tau_08))
    emit_c("theta1_d0", [0, 1], theta1_d0(tau_i))
    emit_c("theta1_d0", [0.3, 0.9], theta1_d0(tau_g))
    emit_c("theta1_d0", [0, 2], theta1_d0(mpc(0, 2)))
    emit_c("theta_shifted", [0.1, 0, 0.4, 0, 0, 0.8],
           theta_shifted(mpf("0.1"), mpf("0.4"), tau_08))

    emit_c("sigma", [0.2, 0.1, 0.35, 0, 0, 1],
           sigma(mpc("0.2", "0.1"), mpf("0.35"), tau_i))
    emit_c("sigma", [0.13, 0.07, 0.22, 0, 0, 0.8],
           sigma(mpc("0.13", "0.07"), mpf("0.22"), tau_08))

    emit_c("phi_factor", [0, 0, 0, 0, 0, 1], phi_factor(mpf(0), mpf(0), tau_i))

    # theta1 quasi-periodicity multiplier for z = z0 + m + k*tau:
    # theta1(z) = (-1)^(m+k) q^(-k^2) exp(-2 pi i k z0) theta1(z0);
    # frozen here for z = 0.1 + i, tau = i (z0 = 0.1, m = 0, k = 1).
    z0, k = mpf("0.1"), 1
    mult = (-1) ** (0 + k) * q_of(tau_i) ** (-k * k) * exp(-TWO_PI_I * k * z0)
    emit_c("theta1_reduce_mult", [0.1, 1, 0, 1], mult)

    # closed-form r tensor, entries indexed [a b c d] = coeff of E_ab (x) E_cd
    n, d = 2, 1
    v, x1, x2 = mpc("0.13", "0.07"), mpf("0.1"), mpf("0.32")
    x = x2 - x1
    ten = [[[[mpf(0) for _ in range(n)] for _ in range(n)]
            for _ in range(n)] for _ in range(n)]
    for k_ in range(1, n + 1):
        for l_ in range(1, n + 1):
            c = exp(TWO_PI_I * d * k_ * x / n) * sigma(
                v + mpf(d) / n * (k_ * tau_08 + l_), x, tau_08)
            zd, zb = z_dual(n, d, k_, l_), z_basis(n, d, k_, l_)
            for a in range(n):
                for b in range(n):
                    for cc in range(n):
                        for dd in range(n):
                            ten[a][b][cc][dd] += c * zd[a][b] * zb[cc][dd]
    base = [n, d, 0, 0.8, 0.13, 0.07, 0.1, 0, 0.32, 0]
    for a in range(n):
        for b in range(n):
            for cc in range(n):
                for dd in range(n):
                    emit_c("r_elliptic", base + [a, b, cc, dd], ten[a][b][cc][dd])

    # residue map: unit coefficient on slot (1,1), F(x)/theta_3'((1+tau)/2)
    v_c, x_c, y_c = mpc("0.1", "0.05"), mpf("0.2"), mpf("0.45")
    s = f_basis(2, 1, tau_i, v_c, x_c, 1, 1, x_c) / theta3_deriv_half_period(tau_i)
    zb = z_basis(2, 1, 1, 1)
    for r in range(2):
        for c in range(2):
            emit_c("res_map", [2, 1, 0, 1, 0.1, 0.05, 0.2, 0, 1, 1, r, c], s * zb[r][c])

    # evaluation map: unit coefficient on slot (1,2), F(y)/theta_3(y-x+(1+tau)/2)
    s = f_basis(2, 1, tau_i, v_c, x_c, 1, 2, y_c) / theta3(y_c - x_c + (1 + tau_i) / 2, tau_i)
    zb = z_basis(2, 1, 1, 2)
    for r in range(2):
        for c in range(2):
            emit_c("ev_map", [2, 1, 0, 1, 0.1, 0.05, 0.2, 0, 0.45, 0, 1, 2, r, c],
                   s * zb[r][c])

    # alpha endomorphism matrix on column-major vectorization:
    # M[d*n+c, a*n+b] = sum_(k,l) rho_(k,l) Zdual[a,b] Z[c,d]
    n = 2
    M = [[mpf(0)] * (n * n) for _ in range(n * n)]
    for k_ in range(1, n + 1):
        for l_ in range(1, n + 1):
            rho = (theta3_deriv_half_period(tau_i)
                   * f_basis(n, 1, tau_i, v_c, x_c, k_, l_, y_c)
                   / (f_basis(n, 1, tau_i, v_c, x_c, k_, l_, x_c)
                      * theta3(y_c - x_c + (1 + tau_i) / 2, tau_i)))
            zd, zb = z_dual(n, 1, k_, l_), z_basis(n, 1, k_, l_)
            for a in range(n):
                for b in range(n):
                    for cc in range(n):
                        for dd in range(n):
                            M[dd * n + cc][a * n + b] += rho * zd[a][b] * zb[cc][dd]
    base = [2, 1, 0, 1, 0.1, 0.05, 0.2, 0, 0.45, 0]
    for r in range(n * n):
        for c in range(n * n):
            emit_c("alpha_endo", base + [r, c], M[r][c])


if __name__ == "__main__":
    sys.exit(main())
