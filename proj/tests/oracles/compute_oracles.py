"""Independent reference values frozen into the C++ tests.

Uses scipy (HiGHS) for LP optima, fractions for exact identities and mpmath
for transcendental closed forms. Run: python3 tests/oracles/compute_oracles.py
"""
from fractions import Fraction
import math

import mpmath
import numpy as np
from scipy.optimize import linprog

mpmath.mp.dps = 40


def vbp_lp(d, pruned=False):
    xs = [(i, j) for i in range(1, d + 1) for j in range(1, i + 1)]
    idx = {v: n + 1 for n, v in enumerate(xs)}
    nv = len(xs) + 1
    A, b = [], []
    for j in range(1, d + 1):
        for k in range(1 if pruned else j, d + 1):
            row = np.zeros(nv)
            if k >= j:
                row[idx[(k, j)]] += k
                for r in range(k + 1, d + 1):
                    row[idx[(r, j)]] += 1
            else:
                for r in range(j, d + 1):
                    row[idx[(r, j)]] += 1
            row[0] = -1
            A.append(row)
            b.append(0)
    Aeq, beq = [], []
    for i in range(1, d + 1):
        row = np.zeros(nv)
        for r in range(1, i + 1):
            row[idx[(i, r)]] = 1
        Aeq.append(row)
        beq.append(1)
    c = np.zeros(nv)
    c[0] = 1
    res = linprog(c, A_ub=A, b_ub=b, A_eq=Aeq, b_eq=beq, bounds=(0, None), method="highs")
    return res.fun


def vbp_cert_optimal(d):
    e = mpmath.e
    num = sum(mpmath.mpf(1) / i for i in range(1, d + 1))
    den = mpmath.mpf(0)
    for j in range(1, d + 1):
        cut = int(mpmath.floor(e * j))
        for k in range(j, min(d, cut) + 1):
            den += (1 - mpmath.log(mpmath.mpf(k) / j)) / k**2
    return num / den


def vbp_analytic(d):
    h = sum(mpmath.mpf(1) / i for i in range(1, d + 1))
    s = sum(mpmath.mpf(1) / i**2 for i in range(1, d + 1))
    return h / (h / mpmath.e + s)


def capital_lp(n):
    nv = 1 + 2 * n * n
    x = lambda k, i: 1 + (k - 1) * n + (i - 1)
    q = lambda k, i: 1 + n * n + (k - 1) * n + (i - 1)
    A, b = [], []
    for k in range(1, n + 1):
        for i in range(1, n + 1):
            row = np.zeros(nv)
            for r in range(1, k + 1):
                row[x(r, i)] -= 1
            row[q(k, i)] += 1
            A.append(row)
            b.append(0)
    for k in range(1, n + 1):
        row = np.zeros(nv)
        for r in range(1, k + 1):
            for i in range(1, n + 1):
                row[x(r, i)] += i + 1
        for i in range(1, n + 1):
            row[q(k, i)] += 2.0 ** (k * k - i * i)
        row[0] = -(k + 2)
        A.append(row)
        b.append(0)
    Aeq, beq = [], []
    for k in range(1, n + 1):
        row = np.zeros(nv)
        for i in range(1, n + 1):
            row[q(k, i)] = 1
        Aeq.append(row)
        beq.append(1)
    c = np.zeros(nv)
    c[0] = 1
    res = linprog(c, A_ub=A, b_ub=b, A_eq=Aeq, b_eq=beq, bounds=(0, None), method="highs")
    return res.fun


def capital_bound(n, eps):
    m = math.floor(Fraction(n) * eps)
    num = sum(mpmath.e * (1 - mpmath.mpf(eps.numerator) / eps.denominator) * mpmath.log(mpmath.mpf(k + 1) / k)
              for k in range(1, m + 1))
    den = sum(mpmath.mpf(k + 2) / (k * (k + 1)) for k in range(1, n + 1))
    return num / den


def capital_closed(n, eps):
    m = (n * eps.numerator) // eps.denominator
    h = mpmath.harmonic(n)
    return mpmath.e * (1 - mpmath.mpf(eps.numerator) / eps.denominator) * mpmath.log(m + 1) / (h + 1 - mpmath.mpf(1) / (n + 1))


def ad_ratio(d):
    return 1 - Fraction(d - 1, d) ** d


if __name__ == "__main__":
    print("vbp LP optima:", [round(vbp_lp(d), 12) for d in range(1, 9)])
    print("vbp LP optima with pruned rows:", [round(vbp_lp(d, True), 12) for d in range(1, 7)])
    for d in (1, 2, 3, 5, 10, 50, 100):
        print(f"vbp optimal certificate ratio d={d}:", mpmath.nstr(vbp_cert_optimal(d), 20))
    for d in (1, 10, 1000, 10**6):
        print(f"vbp analytic d={d}:", mpmath.nstr(vbp_analytic(d), 20))
    print("capital LP optima:", [round(capital_lp(n), 12) for n in range(1, 6)])
    for n, eps in ((4, Fraction(1, 2)), (5, Fraction(1, 5)), (10, Fraction(3, 10)), (100, Fraction(1, 10)),
                   (10000, Fraction(1, 100))):
        print(f"capital bound n={n} eps={eps}:", mpmath.nstr(capital_bound(n, eps), 20))
    print("capital closed form n=1e40 eps=1/100:", mpmath.nstr(capital_closed(10**40, Fraction(1, 100)), 20))
    print("ad ratios:", [str(ad_ratio(d)) for d in range(2, 6)], float(ad_ratio(50)))
