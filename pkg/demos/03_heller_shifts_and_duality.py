"""How syzygies and duals move the bundles around.

The Heller shift Omega M (kernel of a minimal projective cover) twists
the bundle functors in a precise way:

    F_i(M)(-p+i) = F_{p-i}(Omega M),      so in particular
    F_i(Omega^2 M) = F_i(M)(-p)   and   F_1(Omega^{2n} k) = O(-np).

The k-linear dual reflects them: F_i(M^*) = F_i(M)^dual(-i+1).
All of this is visible in exact Hilbert-polynomial arithmetic.
"""

from cjt import builtin, dual, hilbert, omega
from cjt.polyd import as_str, binomial_poly, shift_var

p, r = 3, 2
k = builtin("trivial", p, r)

print("dimensions of the minimal syzygy modules of k (p = 3, r = 2):")
for j in range(5):
    print(f"  Omega^{j} k: {omega(k, j).n}")

print("\nthe shift law at work on M = radq2:")
M = builtin("rad_quotient", p, r, m=2)
OM = omega(M, 1)
for i in (1, 2):
    f_m = hilbert(M, i).fitted
    f_o = hilbert(OM, p - i).fitted
    shifted = shift_var(f_m, i - p)
    mark = "ok" if f_o == shifted else "MISMATCH"
    print(
        f"  F_{p - i}(Omega M) fits {as_str(f_o)}; "
        f"F_{i}(M) shifted by {i - p} gives {as_str(shifted)}  [{mark}]"
    )

print("\neven shifts of k give O(-np):")
for n in (1, 2):
    fitted = hilbert(omega(k, 2 * n), 1).fitted
    print(
        f"  F_1(Omega^{2 * n} k) fits {as_str(fitted)} "
        f"(expected {as_str(binomial_poly(-3 * n, r))})"
    )

print("\nnegative shifts (injective hulls) walk the other way:")
for n in (1, 2):
    fitted = hilbert(omega(k, -2 * n), 1).fitted
    print(f"  F_1(Omega^{-2 * n} k) fits {as_str(fitted)}")

print("\nduality flips the zig-zag line bundles:")
Z = builtin("zigzag", p, r, n=2)
print(f"  F_1(M_2) fits {as_str(hilbert(Z, 1).fitted)}   -> O(-2)")
print(f"  F_1(M_2^*) fits {as_str(hilbert(dual(Z), 1).fitted)}   -> O(2)")
