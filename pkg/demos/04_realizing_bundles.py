"""Any bundle on P^{r-1} arises as F_1 of a module (up to Frobenius).

Feed in a resolution of the bundle by sums of twists of O.  Each matrix
entry, a homogeneous polynomial in Y_1..Y_r, is converted into a map
between Heller shifts of the trivial module by composing lifted
cocycles; mapping cones then assemble a module M of stable constant
Jordan type [1]^s with

    F_1(M) = F          (p = 2),
    F_1(M) = F*(F)      (p odd, F* the Frobenius pullback).

The Frobenius twist is unavoidable for odd p: Chern numbers c_1..c_{p-2}
of F_1 are always divisible by p (see demo 05).
"""

from cjt import (
    builtin,
    chern_from_hilbert,
    euler_spec,
    hilbert,
    line_bundle_spec,
    omega,
    realize_bundle,
)
from cjt.chowring import chern_from_resolution, frobenius_pullback
from cjt.polyd import as_str

print("== a line bundle on P^1 at p = 3 ==")
M, report = realize_bundle(line_bundle_spec(3, 2, -1))
print(report)
print(f"dim matches Omega^2 k = {omega(builtin('trivial', 3, 2), 2).n}")
hd = hilbert(M, 1)
print(f"F_1 fits {as_str(hd.fitted)}: O(-3) = Frobenius pullback of O(-1)\n")

print("== the twisted tangent bundle on P^2 at p = 2 ==")
M, report = realize_bundle(euler_spec(2, 3))
print(report)
rk, c = chern_from_hilbert(hilbert(M, 1))
rk0, c0 = chern_from_resolution(3, [[0, 0, 0], [-1]])
print(f"F_1: rank {rk}, c = {c} (resolution predicts c = {c0})\n")

print("== the same bundle at p = 3: the Frobenius pullback appears ==")
M, report = realize_bundle(euler_spec(3, 3))
print(f"final dimension {M.n}, verdict: {report.verdict.type}")
rk, c = chern_from_hilbert(hilbert(M, 1))
print(f"F_1: rank {rk}, c = {c}")
print(f"Frobenius pullback of {c0} is {frobenius_pullback(c0, 3)}")
