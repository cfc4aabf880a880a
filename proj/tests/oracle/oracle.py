#!/usr/bin/env python3
"""Independent high-precision oracle for the frozen test values.

Everything here is computed with mpmath at 50 significant digits and
shares no code with the C++ library.  Run it to regenerate
tests/oracle_values.hpp:

    python3 tests/oracle/oracle.py > tests/oracle_values.hpp
"""
from mpmath import mp, mpf, mpc, sqrt, log, exp, nstr

mp.dps = 50


def lambdas(count):
    out = [mpf(0)]
    for _ in range(count):
        x = out[-1]
        out.append((x + sqrt(x * x + 4)) / 2)
    return out


def psi_n(w, n):
    for _ in range(n):
        w = w - 1 / w
    return w


def lagrange_log_seed(lam, n, z, order, offset):
    # Lagrange basis on direct logarithms; the library uses Newton
    # differences of log1p increments instead.
    nodes = list(range(offset, offset + order))
    logs = [log(lam[n + j]) for j in nodes]
    total = mpf(0)
    for i, xi in enumerate(nodes):
        w = mpf(1)
        for j, xj in enumerate(nodes):
            if j != i:
                w *= (z - xj) / mpf(xi - xj)
        total += w * logs[i]
    return exp(total)


def f_oracle(lam, z, n=4096, order=14):
    b = psi_n(lagrange_log_seed(lam, n, z, order, 0), n)
    a = psi_n(lagrange_log_seed(lam, n, z, order, -1), n)
    assert abs(a - b) < mpf(10) ** -35, (z, abs(a - b))
    return b


def emit(name, value, digits=40):
    print(f"inline constexpr double {name} = {nstr(value, digits)};")


def emit_str(name, value, digits=45):
    print(f'inline constexpr const char* {name} = "{nstr(value, digits)}";')


def main():
    lam = lambdas(4200)
    print("// Generated by tests/oracle/oracle.py (mpmath, 50 digits). Do not edit.")
    print("#pragma once")
    print("namespace oracle {")

    s5 = sqrt(5)
    emit("lambda2_closed", (1 + s5) / 2)
    emit("lambda3_closed", (sqrt(22 + 2 * s5) + s5 + 1) / 4)
    emit("m1_closed", (-1 + s5) / 2)
    emit("m2_closed", (sqrt(22 + 2 * s5) - s5 - 1) / 4)
    assert abs(lam[3] - (sqrt(22 + 2 * s5) + s5 + 1) / 4) < mpf(10) ** -45
    emit("lambda4", lam[4])
    emit("m3", 1 / lam[4])
    emit("log_lambda2", log((1 + s5) / 2))

    # psi applied three times to 2i stays on the imaginary axis.
    w = mpc(0, 2)
    for _ in range(3):
        w = w - 1 / w
    emit("psi3_of_2i_imag", w.imag)

    # f(1/2): high-order stencil, checked against the certified bracket of
    # the two classical seeds at n = 10^5.
    half = mpf(1) / 2
    f_half = f_oracle(lam, half)
    emit("f_half", f_half)
    emit_str("f_half_digits", f_half)
    big = lambdas(100001)
    n = 100000
    lo = psi_n(big[n] * (big[n + 1] / big[n]) ** half, n)
    hi = psi_n(big[n] * (big[n] / big[n - 1]) ** half, n)
    assert lo <= f_half <= hi
    emit("f_half_bracket_lo_1e5", lo)
    emit("f_half_bracket_hi_1e5", hi)

    points = {
        "f_3p3i": mpc(3, 3),
        "f_m0p5p3i": mpc(-0.5, 3),
        "f_4m3i": mpc(4, -3),
        "f_0p3p2i": mpc("0.3", 2),
        "f_1p5": mpc("1.5", 0),
        "f_0p7": mpc("0.7", 0),
        "f_5p5": mpc("5.5", 0),
        "f_m0p5": mpc("-0.5", 0),
    }
    for name, z in points.items():
        v = f_oracle(lam, z)
        emit(name + "_re", v.real)
        emit(name + "_im", v.imag)

    # Iterating T fifty times from the all-ones prefix of length 12.
    seq = [mpf(1)] * 12
    for _ in range(50):
        acc = mpf(0)
        nxt = []
        for a in seq:
            acc += a
            nxt.append(1 / acc)
        seq = nxt
    sup = max(abs(seq[k] - 1 / lam[k + 1]) for k in range(12))
    emit("iterate_T_ones12_k50_sup", sup)

    # Growth of lambda at n = 10^6.
    mp.dps = 30
    x = mpf(0)
    N = 10 ** 6
    for _ in range(N):
        x = (x + sqrt(x * x + 4)) / 2
    xn = x
    xn1 = (x + sqrt(x * x + 4)) / 2
    emit("lambda_sq_ratio_dev_1e6", xn * xn / N - 2)
    emit("lambda_sq_step_dev_1e6", xn1 * xn1 - xn * xn - 2)
    emit("lambda_1e6", xn)
    emit("log_step_1e6", log(xn1 / xn))
    print("}  // namespace oracle")


if __name__ == "__main__":
    main()
