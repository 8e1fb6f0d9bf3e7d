"""Modules over k[E] for an elementary abelian p-group E of rank r.

A module is r commuting p-nilpotent square matrices over GF(p): the
actions of X_i = g_i - 1.  The group algebra itself is the truncated
polynomial algebra k[X_1..X_r]/(X_i^p); it is local and self-injective,
with one-dimensional socle spanned by z = prod X_i^(p-1).

Heller shifts use minimal projective covers (kernels) and minimal
injective hulls (cokernels).  Hulls, cover sections and free-summand
retractions are built through the nondegenerate trace pairing
<u, v> = coefficient of z in u*v, which identifies Hom(M, kE) with the
linear dual of M; no linear-system solving is needed for them.
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
import random

import numpy as np

from . import gfalg
from .gfalg import FFMatrix, FieldCtx, build_field, matmul_p, matpow_p

DEFAULT_SEED = 0xC0FFEE


class ModuleError(ValueError):
    pass


class NonCommutingError(ModuleError):
    def __init__(self, i, j):
        self.indices = (i, j)
        super().__init__(f"actions X_{i + 1} and X_{j + 1} do not commute")


class NotPNilpotentError(ModuleError):
    def __init__(self, i):
        self.index = i
        super().__init__(f"action X_{i + 1} does not satisfy X^p = 0")


# ---------------------------------------------------------------------------
# the group algebra kE, cached per (p, r)


class GroupAlgebra:
    """Monomial data for kE = k[X_1..X_r]/(X_i^p).

    Basis monomials are exponent tuples in lexicographic order; the
    socle generator z = (p-1, ..., p-1) is the last one.
    """

    def __init__(self, p, r):
        self.p = p
        self.r = r
        self.q = p**r
        self.monomials = sorted(itertools.product(range(p), repeat=r))
        self.index = {m: i for i, m in enumerate(self.monomials)}
        self.z = (p - 1,) * r
        X = []
        for i in range(r):
            A = np.zeros((self.q, self.q), dtype=np.uint8)
            for m, col in self.index.items():
                if m[i] + 1 < p:
                    tgt = m[:i] + (m[i] + 1,) + m[i + 1 :]
                    A[self.index[tgt], col] = 1
            X.append(A)
        self.X = tuple(X)

    def complement(self, m):
        return tuple(z - a for z, a in zip(self.z, m))


@functools.lru_cache(maxsize=None)
def group_algebra(p, r) -> GroupAlgebra:
    return GroupAlgebra(p, r)


# ---------------------------------------------------------------------------
# domain types


@dataclasses.dataclass(frozen=True)
class JordanType:
    """Multiplicities a_1..a_p: blocks of length i occur a[i-1] times."""

    p: int
    a: tuple

    def __post_init__(self):
        assert len(self.a) == self.p and all(m >= 0 for m in self.a)

    @property
    def dim(self) -> int:
        return sum((i + 1) * m for i, m in enumerate(self.a))

    def stable(self) -> tuple:
        """a_1..a_{p-1}; blocks of length p dropped."""
        return self.a[:-1]

    def multiplicity(self, i: int) -> int:
        return self.a[i - 1]

    def __add__(self, other):
        assert self.p == other.p
        return JordanType(self.p, tuple(x + y for x, y in zip(self.a, other.a)))

    def __str__(self):
        parts = [
            f"[{i + 1}]" + (f"^{m}" if m > 1 else "")
            for i, m in reversed(list(enumerate(self.a)))
            if m
        ]
        return "".join(parts) if parts else "[]"


class KEModule:
    """r commuting p-nilpotent n x n matrices over GF(p)."""

    def __init__(self, p, r, X, *, validate=True, constant_by_construction=False):
        X = tuple(np.ascontiguousarray(np.asarray(A) % p, dtype=np.uint8) for A in X)
        if len(X) != r:
            raise ModuleError(f"expected {r} action matrices, got {len(X)}")
        n = X[0].shape[0] if X else 0
        for A in X:
            if A.ndim != 2 or A.shape != (n, n):
                raise ModuleError("action matrices must be square and equal-sized")
        if validate:
            for i in range(r):
                for j in range(i + 1, r):
                    if not np.array_equal(
                        matmul_p(X[i], X[j], p), matmul_p(X[j], X[i], p)
                    ):
                        raise NonCommutingError(i, j)
            for i in range(r):
                if np.any(matpow_p(X[i], p, p)):
                    raise NotPNilpotentError(i)
        for A in X:
            A.setflags(write=False)
        self.p = p
        self.r = r
        self.n = n
        self.X = X
        self.constant_by_construction = constant_by_construction
        self._cache = {}

    def __repr__(self):
        return f"<KEModule p={self.p} r={self.r} dim={self.n}>"


def new_module(p, r, X, *, constant_by_construction=False) -> KEModule:
    """Validated module from explicit action matrices."""
    if p not in gfalg.SUPPORTED_PRIMES:
        raise ModuleError(f"unsupported characteristic p = {p}")
    if r < 1:
        raise ModuleError("rank r must be >= 1")
    return KEModule(p, r, X, constant_by_construction=constant_by_construction)


@dataclasses.dataclass(frozen=True)
class Point:
    """Nonzero point of A^r over GF(p^e), coordinates encoded."""

    ctx: FieldCtx
    coords: tuple

    def __post_init__(self):
        if all(c == 0 for c in self.coords):
            raise ValueError("point must be nonzero")

    @property
    def r(self):
        return len(self.coords)

    def normalized(self) -> "Point":
        """First nonzero coordinate scaled to 1 (projective representative)."""
        for c in self.coords:
            if c:
                s = self.ctx.inv(c)
                return Point(
                    self.ctx, tuple(self.ctx.mul(s, x) for x in self.coords)
                )
        raise AssertionError

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + f") over {self.ctx}"


@dataclasses.dataclass(frozen=True)
class ConstantSoFar:
    type: JordanType
    points_checked: int
    fields_used: tuple


@dataclasses.dataclass(frozen=True)
class Falsified:
    witness: Point
    type_at_witness: JordanType
    reference_type: JordanType

    def __post_init__(self):
        assert self.type_at_witness != self.reference_type


ConstancyVerdict = ConstantSoFar | Falsified


@dataclasses.dataclass(frozen=True)
class SamplingPlan:
    extra: int = 200
    max_ext_degree: int = 4
    seed: int = DEFAULT_SEED
    quadratic_cap: int = 10_000


class ModuleHom:
    """Map of kE-modules: a matrix commuting with every X_i action."""

    def __init__(self, source: KEModule, target: KEModule, matrix, *, validate=True):
        if source.p != target.p or source.r != target.r:
            raise ModuleError("source and target live over different algebras")
        M = np.ascontiguousarray(np.asarray(matrix) % source.p, dtype=np.uint8)
        if M.shape != (target.n, source.n):
            raise ModuleError(
                f"hom matrix must be {target.n} x {source.n}, got {M.shape}"
            )
        if validate and not hom_commutes(source, target, M):
            raise ModuleError("matrix does not commute with the actions")
        M.setflags(write=False)
        self.source = source
        self.target = target
        self.matrix = M

    def __matmul__(self, other: "ModuleHom") -> "ModuleHom":
        assert other.target is self.source or other.target.n == self.source.n
        return ModuleHom(
            other.source,
            self.target,
            matmul_p(self.matrix, other.matrix, self.source.p),
            validate=False,
        )

    def is_zero(self):
        return not np.any(self.matrix)

    def __repr__(self):
        return f"<ModuleHom {self.source.n} -> {self.target.n}>"


def hom_commutes(source, target, M) -> bool:
    p = source.p
    for Xs, Xt in zip(source.X, target.X):
        if not np.array_equal(matmul_p(M, Xs, p), matmul_p(Xt, M, p)):
            return False
    return True


# ---------------------------------------------------------------------------
# constructors


def builtin(kind: str, p: int, r: int, **params) -> KEModule:
    """Named module: trivial, regular, rad_quotient(m), perm(i), zigzag(n)."""
    if kind == "trivial":
        return KEModule(
            p, r, [np.zeros((1, 1))] * r, validate=False, constant_by_construction=True
        )
    if kind == "regular":
        kE = group_algebra(p, r)
        return KEModule(p, r, kE.X, validate=False, constant_by_construction=True)
    if kind == "rad_quotient":
        m = params["m"]
        if not 1 <= m <= r * (p - 1) + 1:
            raise ModuleError(f"rad_quotient needs 1 <= m <= r(p-1)+1, got {m}")
        kE = group_algebra(p, r)
        basis = [mon for mon in kE.monomials if sum(mon) < m]
        index = {mon: i for i, mon in enumerate(basis)}
        X = []
        for i in range(r):
            A = np.zeros((len(basis), len(basis)), dtype=np.uint8)
            for mon, col in index.items():
                if mon[i] + 1 < p and sum(mon) + 1 < m:
                    A[index[mon[:i] + (mon[i] + 1,) + mon[i + 1 :]], col] = 1
            X.append(A)
        return KEModule(p, r, X, validate=False, constant_by_construction=True)
    if kind == "perm":
        i = params["i"]
        if not 1 <= i <= r:
            raise ModuleError(f"perm needs 1 <= i <= r, got {i}")
        X = [np.zeros((p, p), dtype=np.uint8) for _ in range(r)]
        J = np.zeros((p, p), dtype=np.uint8)
        for l in range(p - 1):
            J[l + 1, l] = 1
        X[i - 1] = J
        return KEModule(p, r, X, validate=False)
    if kind == "zigzag":
        n = params["n"]
        if r != 2:
            raise ModuleError("zigzag modules need r = 2")
        if n < 0:
            raise ModuleError("zigzag needs n >= 0")
        # basis v_0..v_n, w_1..w_n; X_1 v_j = w_{j+1}, X_2 v_j = w_j.
        # the generators are the v's; the opposite orientation (w's
        # generating) is the dual module and twists the other way
        dim = 2 * n + 1
        X1 = np.zeros((dim, dim), dtype=np.uint8)
        X2 = np.zeros((dim, dim), dtype=np.uint8)
        for j in range(n):
            X1[n + j + 1, j] = 1
        for j in range(1, n + 1):
            X2[n + j, j] = 1
        return KEModule(p, 2, [X1, X2], validate=False, constant_by_construction=True)
    raise ModuleError(f"unknown builtin kind {kind!r}")


def direct_sum(M: KEModule, N: KEModule) -> KEModule:
    if (M.p, M.r) != (N.p, N.r):
        raise ModuleError("direct_sum needs matching p and r")
    X = []
    for A, B in zip(M.X, N.X):
        C = np.zeros((M.n + N.n, M.n + N.n), dtype=np.uint8)
        C[: M.n, : M.n] = A
        C[M.n :, M.n :] = B
        X.append(C)
    return KEModule(
        M.p,
        M.r,
        X,
        validate=False,
        constant_by_construction=M.constant_by_construction
        and N.constant_by_construction,
    )


def tensor(M: KEModule, N: KEModule) -> KEModule:
    """Tensor product with the diagonal action: X acts as X(x)1 + 1(x)X + X(x)X."""
    if (M.p, M.r) != (N.p, N.r):
        raise ModuleError("tensor needs matching p and r")
    p = M.p
    X = []
    for A, B in zip(M.X, N.X):
        A64 = A.astype(np.int64)
        B64 = B.astype(np.int64)
        C = (
            np.kron(A64, np.eye(N.n, dtype=np.int64))
            + np.kron(np.eye(M.n, dtype=np.int64), B64)
            + np.kron(A64, B64)
        ) % p
        X.append(C)
    return KEModule(p, M.r, X, validate=False)


def dual(M: KEModule) -> KEModule:
    """k-linear dual: g acts as the transpose of the inverse of g's matrix.

    Concretely X acts on M^* by ((1+X)^{-1} - 1)^T = (-X + X^2 - ...)^T.
    """
    p = M.p
    X = []
    for A in M.X:
        acc = np.zeros((M.n, M.n), dtype=np.int64)
        term = np.eye(M.n, dtype=np.uint8)
        for j in range(1, p):
            term = matmul_p(term, A, p)
            acc = (acc - term) % p if j % 2 else (acc + term) % p
        X.append(acc.T)
    return KEModule(
        p,
        M.r,
        X,
        validate=False,
        constant_by_construction=M.constant_by_construction,
    )


# ---------------------------------------------------------------------------
# points and Jordan types


def x_alpha(M: KEModule, alpha: Point) -> FFMatrix:
    """Matrix of X_alpha = sum lambda_i X_i over the point's field."""
    if alpha.r != M.r:
        raise ModuleError("point rank does not match the module")
    ctx = alpha.ctx
    acc = np.zeros((M.n, M.n), dtype=np.int64)
    for lam, A in zip(alpha.coords, M.X):
        if lam:
            acc = ctx.arr_add(acc, ctx.arr_scale(lam, A.astype(np.int64)))
    return FFMatrix(ctx, acc)


def _blocked_x_alpha(M: KEModule, alpha: Point):
    """X_alpha as an (n*e) x (n*e) matrix over GF(p), via companion blocks."""
    ctx = alpha.ctx
    e = ctx.e
    if e == 1:
        acc = np.zeros((M.n, M.n), dtype=np.int64)
        for lam, A in zip(alpha.coords, M.X):
            if lam:
                acc += int(lam) * A.astype(np.int64)
        return (acc % ctx.p).astype(np.uint8)
    acc = np.zeros((M.n * e, M.n * e), dtype=np.int64)
    for lam, A in zip(alpha.coords, M.X):
        if lam:
            acc += np.kron(A.astype(np.int64), ctx.element_matrix(lam).astype(np.int64))
    return (acc % ctx.p).astype(np.uint8)


def jordan_type_at(M: KEModule, alpha: Point) -> JordanType:
    """Jordan type of X_alpha acting on M (x) K."""
    p = M.p
    e = alpha.ctx.e
    B = _blocked_x_alpha(M, alpha)
    ranks = [M.n]  # rank of X^0 in GF(p^e) units
    Bk = B
    for j in range(1, p + 1):
        if j > 1:
            Bk = matmul_p(Bk, B, p)
        rk = gfalg.rank_p(Bk, p)
        assert rk % e == 0
        ranks.append(rk // e)
    ranks.append(0)  # X^{p+1}
    a = tuple(ranks[i - 1] - 2 * ranks[i] + ranks[i + 1] for i in range(1, p + 1))
    return JordanType(p, a)


def projective_points(p, r, e=1):
    """Normalized points of P^{r-1}(GF(p^e)).

    Deterministic order: affine charts by leading coordinate, tails in
    lexicographic order, so the first point is always (1, 0, ..., 0).
    """
    ctx = build_field(p, e)
    pts = []
    for lead in range(r):
        for tail in itertools.product(range(ctx.q), repeat=r - lead - 1):
            coords = (0,) * lead + (1,) + tail
            pts.append(Point(ctx, coords))
    return pts


def check_constant(M: KEModule, plan: SamplingPlan | None = None) -> ConstancyVerdict:
    """Sampling-based constancy check; a falsifier, never a certificate.

    Evaluates the Jordan type at every GF(p)-point of P^{r-1}, every
    GF(p^2)-point when there are at most plan.quadratic_cap of them, and
    plan.extra seeded-random points over GF(p^e) with e <= plan.max_ext_degree.
    """
    plan = plan or SamplingPlan()
    cached = M._cache.get(("constancy", plan))
    if cached is not None:
        return cached
    p, r = M.p, M.r

    fields_used = [f"GF({p})"]
    points = projective_points(p, r, 1)
    reference_point = points[0]
    reference = jordan_type_at(M, reference_point)

    count_quadratic = (p ** (2 * r) - 1) // (p**2 - 1)
    if count_quadratic <= plan.quadratic_cap:
        points += projective_points(p, r, 2)
        fields_used.append(f"GF({p}^2)")

    rng = random.Random(plan.seed)
    ext_degrees = sorted({min(e, plan.max_ext_degree) for e in (2, 3, 4)})
    extra_fields = set()
    extras = []
    for k in range(plan.extra):
        e = ext_degrees[k % len(ext_degrees)]
        ctx = build_field(p, e)
        coords = tuple(rng.randrange(ctx.q) for _ in range(r))
        if all(c == 0 for c in coords):
            coords = (1,) + coords[1:]
        extras.append(Point(ctx, coords))
        extra_fields.add(f"GF({p}^{e})" if e > 1 else f"GF({p})")
    fields_used += sorted(extra_fields - set(fields_used))

    checked = 0
    for pt in points + extras:
        t = jordan_type_at(M, pt)
        checked += 1
        if t != reference:
            verdict = Falsified(pt, t, reference)
            M._cache[("constancy", plan)] = verdict
            return verdict
    verdict = ConstantSoFar(reference, checked, tuple(fields_used))
    M._cache[("constancy", plan)] = verdict
    return verdict


def reference_jordan_type(M: KEModule) -> JordanType:
    """Jordan type at the first enumerated GF(p)-point, (1, 0, ..., 0)."""
    return jordan_type_at(M, projective_points(M.p, M.r, 1)[0])


# ---------------------------------------------------------------------------
# socle, radical, monomial actions


def monomial_actions(M: KEModule):
    """Matrices of all p^r monomials X^a acting on M, indexed like kE.monomials."""
    key = "monomial_actions"
    if key in M._cache:
        return M._cache[key]
    kE = group_algebra(M.p, M.r)
    acts = [None] * kE.q
    acts[kE.index[(0,) * M.r]] = np.eye(M.n, dtype=np.uint8)
    for mon in kE.monomials:
        col = kE.index[mon]
        if acts[col] is not None:
            continue
        i = next(i for i, a in enumerate(mon) if a > 0)
        prev = mon[:i] + (mon[i] - 1,) + mon[i + 1 :]
        acts[col] = matmul_p(M.X[i], acts[kE.index[prev]], M.p)
    M._cache[key] = acts
    return acts


def socle_basis(M: KEModule):
    """Columns spanning soc(M) = intersection of ker X_i."""
    if M.n == 0:
        return np.zeros((0, 0), dtype=np.uint8)
    stacked = np.vstack(M.X) if M.r else np.zeros((0, M.n), dtype=np.uint8)
    return gfalg.kernel_p(stacked, M.p)


def radical_basis(M: KEModule):
    """Columns spanning J*M = sum of the images of the X_i."""
    cat = np.hstack(M.X)
    R, pivots = gfalg.rref_p(cat.T, M.p)
    return R[: len(pivots)].T.copy()


def _column_complement(U, n, p):
    """Pivot rows and a projection onto the coordinate complement of col span U.

    Returns (pivot_rows, complement_rows, proj) with proj a |C| x n matrix
    such that proj restricted to span(U) is zero and proj[e_C] = identity.
    """
    if U.size == 0:
        C = list(range(n))
        return [], C, np.eye(n, dtype=np.uint8)
    R, pivots = gfalg.rref_p(U.T, p)  # rows of R span the same row space
    R = R[: len(pivots)]
    P = list(pivots)
    C = [c for c in range(n) if c not in set(pivots)]
    proj = np.zeros((len(C), n), dtype=np.uint8)
    for k, c in enumerate(C):
        proj[k, c] = 1
        for t, pr in enumerate(P):
            proj[k, pr] = (-int(R[t, c])) % p
    return P, C, proj


# ---------------------------------------------------------------------------
# trace-pairing homs into free modules


def hom_to_free(M: KEModule, functionals):
    """The kE-map M -> kE^s attached to s linear functionals via the trace pairing.

    Row block j of the result, evaluated at m, is the element of kE whose
    coefficient at the monomial v equals f_j(X^(z-v) m).
    """
    kE = group_algebra(M.p, M.r)
    acts = monomial_actions(M)
    F = np.asarray(functionals, dtype=np.uint8)
    if F.ndim == 1:
        F = F[None, :]
    s = F.shape[0]
    out = np.zeros((s * kE.q, M.n), dtype=np.uint8)
    for v, mon in enumerate(kE.monomials):
        W = acts[kE.index[kE.complement(mon)]]
        # coordinate (copy j, monomial v) sits at j*q + v
        out[v :: kE.q] = matmul_p(F, W, M.p)
    return out


def free_module(p, r, copies) -> KEModule:
    """kE^copies with coordinate layout (copy, monomial)."""
    kE = group_algebra(p, r)
    eye = np.eye(copies, dtype=np.uint8)
    X = [np.kron(eye, A).astype(np.uint8) for A in kE.X]
    return KEModule(p, r, X, validate=False)


# ---------------------------------------------------------------------------
# covers, hulls, Heller shifts


@dataclasses.dataclass(frozen=True)
class CoverData:
    """Minimal projective cover kE^b ->> M and its kernel."""

    free: KEModule
    cover: ModuleHom  # kE^b -> M, surjective
    kernel: KEModule  # Omega M
    inclusion: ModuleHom  # Omega M -> kE^b
    generators: tuple  # coordinate indices of M whose classes generate M/JM


@dataclasses.dataclass(frozen=True)
class HullData:
    """Minimal injective hull M >-> kE^s and its cokernel."""

    free: KEModule
    hull: ModuleHom  # M -> kE^s, injective
    cokernel: KEModule  # Omega^{-1} M
    projection: ModuleHom  # kE^s -> Omega^{-1} M


def submodule(M: KEModule, columns) -> tuple[KEModule, ModuleHom]:
    """The submodule spanned by the given column basis, with its inclusion."""
    K = np.asarray(columns, dtype=np.uint8)
    p = M.p
    sub_X = []
    for A in M.X:
        img = matmul_p(A, K, p)
        coeff = gfalg.solve_p(K, img, p)
        assert coeff is not None, "columns do not span a submodule"
        sub_X.append(coeff)
    S = KEModule(p, M.r, sub_X, validate=False)
    return S, ModuleHom(S, M, K, validate=False)


def quotient_module(
    M: KEModule, columns, with_section=False
) -> tuple[KEModule, ModuleHom] | tuple[KEModule, ModuleHom, np.ndarray]:
    """The quotient of M by the column span, with its projection.

    with_section also returns the coordinate section (a right inverse of
    the projection matrix, not a module map).
    """
    U = np.asarray(columns, dtype=np.uint8)
    p = M.p
    _, C, proj = _column_complement(U, M.n, p)
    sec = np.zeros((M.n, len(C)), dtype=np.uint8)
    for k, c in enumerate(C):
        sec[c, k] = 1
    Q_X = [matmul_p(proj, matmul_p(A, sec, p), p) for A in M.X]
    Q = KEModule(p, M.r, Q_X, validate=False)
    proj_hom = ModuleHom(M, Q, proj, validate=False)
    if with_section:
        return Q, proj_hom, sec
    return Q, proj_hom


def projective_cover(M: KEModule) -> CoverData:
    key = "cover"
    if key in M._cache:
        return M._cache[key]
    p = M.p
    rad = radical_basis(M)
    _, gens, _ = _column_complement(rad, M.n, p)
    b = len(gens)
    P = free_module(p, M.r, b)
    acts = monomial_actions(M)
    kE = group_algebra(p, M.r)
    cover = np.zeros((M.n, b * kE.q), dtype=np.uint8)
    for t, g in enumerate(gens):
        for v in range(kE.q):
            cover[:, t * kE.q + v] = acts[v][:, g]
    cov = ModuleHom(P, M, cover, validate=False)
    K = gfalg.kernel_p(cover, p)
    OmegaM, incl = submodule(P, K)
    OmegaM.constant_by_construction = M.constant_by_construction
    data = CoverData(P, cov, OmegaM, incl, tuple(gens))
    M._cache[key] = data
    return data


def injective_hull(M: KEModule) -> HullData:
    key = "hull"
    if key in M._cache:
        return M._cache[key]
    p = M.p
    soc = socle_basis(M)
    s = soc.shape[1]
    I = free_module(p, M.r, s)
    if s == 0:
        hull = ModuleHom(M, I, np.zeros((0, M.n)), validate=False)
        Q, proj = quotient_module(I, np.zeros((0, 0)))
        data = HullData(I, hull, Q, proj)
        M._cache[key] = data
        return data
    # functionals f_j with f_j(t_l) = delta_jl, via a deterministic left inverse
    F = gfalg.solve_p(soc.T, np.eye(s, dtype=np.uint8), p)
    assert F is not None
    hull_mat = hom_to_free(M, F.T)
    hull = ModuleHom(M, I, hull_mat, validate=False)
    Q, proj = quotient_module(I, hull_mat)
    Q.constant_by_construction = M.constant_by_construction
    data = HullData(I, hull, Q, proj)
    M._cache[key] = data
    return data


def omega(M: KEModule, n: int) -> KEModule:
    """Heller shift: iterated minimal-cover kernels (n>0) or hull cokernels (n<0)."""
    out = M
    if n > 0:
        for _ in range(n):
            out = projective_cover(out).kernel
    elif n < 0:
        for _ in range(-n):
            out = injective_hull(out).cokernel
    return out


# ---------------------------------------------------------------------------
# free summands


def strip_free(M: KEModule) -> tuple[KEModule, int]:
    """Split off all free direct summands: M = kE^a + M' with z M' = 0.

    a is the rank of the socle generator z acting on M.  The retraction
    M -> kE^a is built from functionals vanishing on a complement of the
    free part, again through the trace pairing.
    """
    Mprime, a, _ = strip_free_with_inclusion(M)
    return Mprime, a


def strip_free_with_inclusion(M: KEModule) -> tuple[KEModule, int, ModuleHom]:
    """strip_free plus the inclusion of the stripped summand back into M."""
    p, r = M.p, M.r
    kE = group_algebra(p, r)
    acts = monomial_actions(M)
    Z = acts[kE.index[kE.z]]
    if not np.any(Z):
        return M, 0, ModuleHom(M, M, np.eye(M.n, dtype=np.uint8), validate=False)
    _, pivcols = gfalg.rref_p(Z, p)
    # the pivot columns c of Z have independent images z*e_c, so the
    # submodule generated by those e_c is free of rank a
    a = len(pivcols)
    emb = np.zeros((M.n, a * kE.q), dtype=np.uint8)
    for t, c in enumerate(pivcols):
        for v in range(kE.q):
            emb[:, t * kE.q + v] = acts[v][:, c]
    # functionals: f_j(X^w u_t) = delta_jt [w == z], zero on a complement
    pivrows, comp, _ = _column_complement(emb, M.n, p)
    assert len(pivrows) == a * kE.q, "free embedding lost rank"
    basis = np.hstack([emb] + ([np.eye(M.n, dtype=np.uint8)[:, comp]] if comp else []))
    prescribed = np.zeros((a, basis.shape[1]), dtype=np.uint8)
    zpos = kE.index[kE.z]
    for j in range(a):
        prescribed[j, j * kE.q + zpos] = 1
    # f_j row satisfies f_j @ basis = prescribed[j]
    F = gfalg.solve_p(basis.T, prescribed.T, p)
    assert F is not None
    funcs = F.T  # a x n
    psi = hom_to_free(M, funcs)  # M -> kE^a
    K = gfalg.kernel_p(psi, p)
    Mprime, incl = submodule(M, K)
    Mprime.constant_by_construction = M.constant_by_construction
    assert a * kE.q + Mprime.n == M.n
    return Mprime, a, incl
