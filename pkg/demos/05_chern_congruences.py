"""Why the odd-p realization theorem cannot drop the Frobenius twist.

In the Chow ring Z[h]/(h^r) of P^{r-1}, the product of the total Chern
classes of F, F(1), ..., F(p-1) collapses modulo p:

    c(F) c(F(1)) ... c(F(p-1))  =  1 - s h^{p-1}   (mod p, h^p)

for any rank-s bundle.  For a module of stable constant Jordan type
[1]^s the trivial bundle M (x) O filters into F_1 and twists of the free
part, so Whitney's formula forces p | c_m(F_1) for 1 <= m <= p-2.
Concrete consequence: no module has F_1 isomorphic to any twist of the
rank-2 bundle on P^4 with c_1 = 2i+5, c_2 = i^2+5i+10 when p >= 7.
"""

import random

from cjt import divisibility_check, product_twists
from cjt.chowring import ChowClass, fermat_product_identity_holds

print("the polynomial identity behind the collapse, checked exactly:")
for p in (2, 3, 5, 7):
    ok = fermat_product_identity_holds(p)
    print(f"  x(x+y)...(x+(p-1)y) = x^p - x y^{p - 1}  mod {p}: {ok}")

print("\nthe congruence on random integral Chern classes:")
rng = random.Random(2024)
for p in (2, 3, 5, 7):
    worst = True
    for _ in range(25):
        r = rng.randint(2, 8)
        s = rng.randint(1, 10)
        coeffs = [1] + [rng.randint(-9, 9) for _ in range(r - 1)]
        _, rep = product_twists(ChowClass(r, tuple(coeffs), s), s, p)
        worst = worst and rep.ok
    print(f"  p = {p}: 25 random classes, congruence holds: {worst}")

print("\none spelled-out case (rank 1 trivial bundle, p = 3, P^3):")
prod, rep = product_twists(ChowClass(4, (1, 0, 0, 0), 1), 1, 3)
print(f"  c(O) c(O(1)) c(O(2)) = {prod}")
print(f"  {rep}")

print("\nthe divisibility obstruction for a would-be F_1 with c = 1 + 2h + ...:")
bad = ChowClass(4, (1, 2, 0, 0), 2)
print(f"  {divisibility_check(bad, 3)}")

print("\ntwists of the rank-2 bundle on P^4 with c_1 = 2i+5, c_2 = i^2+5i+10:")
for i in range(7):
    c1, c2 = (2 * i + 5) % 7, (i * i + 5 * i + 10) % 7
    print(f"  i = {i}: c_1 = {c1}, c_2 = {c2} (mod 7)")
print("no twist has both divisible by 7, so none arises as F_1 at p = 7.")
