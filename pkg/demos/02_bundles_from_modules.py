"""From a module of constant Jordan type to a vector bundle on P^{r-1}.

Tensoring with the polynomial ring S = k[Y_1..Y_r] turns the finite
family of operators X_alpha into a single degree-raising operator
theta(m (x) f) = sum X_i m (x) Y_i f.  The subquotient

    (Ker theta n Im theta^{i-1}) / (Ker theta n Im theta^i)

is a graded module whose sheaf is a vector bundle of rank a_i when the
Jordan type (.., [i]^{a_i}, ..) is constant.  Its graded dimensions
eventually follow a polynomial: the Hilbert polynomial of the bundle.
"""

from cjt import builtin, fiber, graded_dim, hilbert
from cjt.kemod import projective_points
from cjt.polyd import as_str

p, r = 2, 3
M = builtin("rad_quotient", p, r, m=2)
print(f"module of dimension {M.n}: constant Jordan type [2][1]^2")

print("\nfibers at a few points (they match the Jordan multiplicities):")
for pt in projective_points(p, r)[:3]:
    print(f"  {pt.coords}: {fiber(M, pt).dims}")

print("\ngraded dimensions of the first subquotient:")
for d in range(6):
    print(f"  degree {d}: {graded_dim(M, 1, 0, d)}")

hd1 = hilbert(M, 1)
hd2 = hilbert(M, 2)
print(f"\nfitted Hilbert polynomial of F_1: {as_str(hd1.fitted)}")
print(f"  (the tangent bundle of P^2 twisted by -1: rank {hd1.rank()})")
print(f"fitted Hilbert polynomial of F_2: {as_str(hd2.fitted)}")
print(f"  (the line bundle O(-1): rank {hd2.rank()})")

print("\nzig-zag modules sweep out all the line bundles on P^1:")
for n in range(4):
    Z = builtin("zigzag", 3, 2, n=n)
    print(f"  dimension {Z.n}: F_1 fits {as_str(hilbert(Z, 1).fitted)}  -> O({-n})")
