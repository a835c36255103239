"""Reference zeros and K0 values for test_zeros.cpp, computed with mpmath."""
from fractions import Fraction

from mpmath import mp, mpf, findroot

mp.dps = 80


def qp(a, q, k):
    p = mpf(1)
    for j in range(k):
        p *= 1 - a * q ** j
    return p


def aq_alpha(alpha, a, q, z, terms=120):
    return sum(qp(a, q, k) * q ** (alpha * k * k) * z ** k / qp(q, q, k) for k in range(terms))


def g_n(n, x, y, q):
    def gauss(n, k):
        return qp(q, q, n) / (qp(q, q, k) * qp(q, q, n - k))
    return sum(gauss(n, k) * q ** (k * (k - n)) * x ** k * y ** (n - k) for k in range(n + 1))


def sw_series(alpha, x, y, q, z, terms=120):
    return sum(g_n(n, x, y, q) * q ** (alpha * n * n) / qp(q, q, n) * z ** n for n in range(terms))


def k0(a, b, q2alpha_inv):
    # q^{-2 alpha} supplied exactly as a Fraction
    def bound(K):
        v = q2alpha_inv
        for ai in a:
            v *= 1 - 1 / (ai + K - 1)
        return v

    def ratio(k):
        v = q2alpha_inv
        for ai in a:
            v *= (ai + k - 2) / (ai + k - 1)
        for bj in b:
            v *= (bj + k - 1) / (bj + k - 2)
        return v

    covered = 2
    while not bound(covered) > 4:
        covered += 1
    K = covered
    while K > 2 and ratio(K - 1) > 4:
        K -= 1
    return K, covered


q = mpf("0.5")
print("aq(1, 0.25, 0.5) first negative zero:", findroot(lambda z: aq_alpha(1, mpf("0.25"), q, z), -1.7))
print("sw(0.5, -0.3, -0.4, 0.5) first positive zero:",
      findroot(lambda z: sw_series(mpf("0.5"), mpf("-0.3"), mpf("-0.4"), q, z), 2))
print("K0 a=[0.01] b=[5] q=0.45:", k0([Fraction(1, 100)], [Fraction(5)], 1 / Fraction(45, 100) ** 2))
print("K0 a=[2.5] b=[1.5] q=0.4:", k0([Fraction(5, 2)], [Fraction(3, 2)], 1 / Fraction(4, 10) ** 2))
