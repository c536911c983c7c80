#!/usr/bin/env python3
"""Independent high-precision reference values used by the C++ test suites.

Everything here goes through mpmath (Hurwitz-zeta based Dirichlet L-functions,
Cauchy integrals on a circle for derivatives at s = 1) and shares no code path
with the Euler-Maclaurin evaluator in src/dirichlet.cpp.  The printed values
are frozen into tests/*.cpp; rerun this script to regenerate them.
"""
import mpmath as mp

mp.mp.dps = 60


def kronecker_table(D):
    def jacobi_symbol(a, n):
        a %= n
        result = 1
        while a:
            while a % 2 == 0:
                a //= 2
                if n % 8 in (3, 5):
                    result = -result
            a, n = n, a
            if a % 4 == 3 and n % 4 == 3:
                result = -result
            a %= n
        return result if n == 1 else 0

    def kron(D, n):
        # Kronecker symbol (D/n) for n > 0, straightforward definition.
        res = 1
        if n == 0:
            return 1 if abs(D) == 1 else 0
        while n % 2 == 0:
            n //= 2
            if D % 2 == 0:
                return 0
            res *= 1 if D % 8 in (1, 7) else -1
        if n == 1:
            return res
        return res * jacobi_symbol(D, n)

    return [kron(D, a) for a in range(abs(D))]


def L_derivative_at_1(chi, k, r=mp.mpf("0.5"), points=96):
    """k-th derivative of L(s, chi) at s = 1 via the trapezoidal Cauchy integral."""
    total = mp.mpc(0)
    for j in range(points):
        theta = 2 * mp.pi * j / points
        s = 1 + r * mp.expj(theta)
        total += mp.dirichlet(s, chi) * mp.expj(-k * theta)
    return (mp.factorial(k) * total / (points * r**k)).real


def main():
    print("gamma   ", mp.euler)
    print("gamma1  ", mp.stieltjes(1))
    print("zeta2   ", mp.zeta(2))
    print("dzeta2  ", mp.zeta(2, derivative=1))
    print("zeta3   ", mp.zeta(3))
    for D in (-4, -3, 5, -20, 8):
        chi = kronecker_table(D)
        vals = [L_derivative_at_1(chi, k) for k in range(3)]
        print(f"D={D} L(1) ", vals[0])
        print(f"D={D} L'(1)", vals[1])
        print(f"D={D} L''(1)", vals[2])
        lm1 = vals[0]
        l0 = mp.euler * vals[0] + vals[1]
        l1 = -mp.stieltjes(1) * vals[0] + mp.euler * vals[1] + vals[2] / 2
        print(f"D={D} lambda_-1", lm1)
        print(f"D={D} lambda_0 ", l0)
        print(f"D={D} lambda_1 ", l1)
        print(f"D={D} L(2)  ", mp.dirichlet(2, chi))
        print(f"D={D} L'(2) ", mp.dirichlet(2, chi, 1))
        print(f"D={D} L(3)  ", mp.dirichlet(3, chi))
    print("L'(1,chi_-4) closed form",
          mp.pi / 4 * (mp.euler + 2 * mp.log(2) + 3 * mp.log(mp.pi) - 4 * mp.log(mp.gamma(0.25))))
    print("log golden ratio", mp.log((1 + mp.sqrt(5)) / 2))
    root = mp.findroot(lambda x: x**3 - x - 1, 1.3)
    print("regulator x^3-x-1", mp.log(root))
    # sum over Z^2 \ 0 of |X|^-4 = 4 zeta(2) beta(2)
    print("Z2 lattice sum t=2", 4 * mp.zeta(2) * mp.catalan)


if __name__ == "__main__":
    main()
