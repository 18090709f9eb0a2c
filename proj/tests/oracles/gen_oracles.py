"""Regenerates the frozen reference values used by the C++ tests.

Every number comes from mpmath (or sympy for prime counts), independently of
the library under test. Run: python3 tests/oracles/gen_oracles.py
"""
import mpmath as mp
import sympy

mp.mp.dps = 30


def hl(T):
    # int_0^T Z(t)^2 dt, split at unit steps so the oscillation stays resolved.
    pts = [mp.mpf(k) for k in range(0, int(T) + 1)]
    if pts[-1] != T:
        pts.append(mp.mpf(T))
    return mp.quad(lambda t: mp.siegelz(t) ** 2, pts)


def phi1(A, c0=0):
    f = lambda v: v * mp.log(v) + (mp.euler - mp.log(2 * mp.pi)) * v + c0 - A
    return mp.findroot(f, A / mp.log(A))


def main():
    print("# Z(t)")
    for t in [20, 100, 500, 1000, 5000, 12345.678, 99999.5]:
        print(f"{{{t!r}, {mp.nstr(mp.siegelz(t), 17)}}},")
    print("# theta(t)")
    for t in [1, 10, 50, 1000, 1e5]:
        print(f"{{{t!r}, {mp.nstr(mp.siegeltheta(t), 17)}}},")
    print("# zeros")
    for k in [1, 2, 10, 100, 649]:
        print(f"{{{k}, {mp.nstr(mp.im(mp.zetazero(k)), 17)}}},")
    print("# N(t)")
    for t in [100, 1000, 5000]:
        print(t, mp.nzeros(t))
    print("# S(t)")
    for t in [100.5, 1000.3, 5000.1]:
        s = mp.nzeros(t) - mp.siegeltheta(t) / mp.pi - 1
        print(f"{{{t!r}, {mp.nstr(s, 17)}}},")
    print("# A(T), phi1(T) with c0 = 0")
    for T in [100, 1000]:
        A = hl(T)
        print(f"{{{T}, {mp.nstr(A, 17)}, {mp.nstr(phi1(A), 17)}}},")
    print("# partitions")
    for n in [6, 30, 100, 200, 1000]:
        print(n, sympy.partition(n))
    print("# prime_pi")
    for x in [100, 10**4, 10**6]:
        print(x, sympy.primepi(x))


if __name__ == "__main__":
    main()
