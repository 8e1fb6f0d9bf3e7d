"""Building modules whose first bundle functor realizes a prescribed bundle.

The input is a resolution of the target bundle by sums of twists of the
structure sheaf, with matrices of homogeneous polynomials in Y_1..Y_r.
Each variable Y_i corresponds to a distinguished cohomology class of E:
a degree-one class for p = 2 and its degree-two Bockstein for odd p.
Monomials become maps between Heller shifts of the trivial module by
composing lifted representing cocycles, the resolution matrices become
maps between sums of shifts, and mapping cones (computed in the stable
category as cokernels into injective hulls) assemble the final module,
top level first, with free summands stripped after every cone.

For p = 2 the first bundle functor of the result is the resolved bundle
itself; for odd p it is the Frobenius pullback (the variables arrive as
p-th powers on the polynomial side).
"""

from __future__ import annotations

import dataclasses
import functools
import itertools

import numpy as np

from . import gfalg
from .gfalg import matmul_p
from .kemod import (
    ConstantSoFar,
    Falsified,
    KEModule,
    ModuleHom,
    SamplingPlan,
    builtin,
    check_constant,
    direct_sum,
    group_algebra,
    injective_hull,
    monomial_actions,
    projective_cover,
    quotient_module,
    strip_free_with_inclusion,
)

DEFAULT_MAX_DIM = 5000
DEFAULT_MAX_LENGTH = 6


class SpecInvalidError(ValueError):
    pass


class ResourceCapError(RuntimeError):
    pass


class NoSolutionError(RuntimeError):
    """A chain-map solve failed; inputs are not genuine cocycle data."""


# ---------------------------------------------------------------------------
# resolution specifications


@dataclasses.dataclass(frozen=True)
class ResolutionSpec:
    """Twist lists per level and polynomial matrices between them.

    levels[i] is the tuple of twists a_{i,j} at homological level i;
    level 0 surjects onto the bundle.  maps[i] sends level i+1 to level
    i: maps[i][row][col] is a polynomial, a tuple of (coeff, exponents)
    monomials, homogeneous of degree levels[i][row] - levels[i+1][col].
    """

    p: int
    r: int
    levels: tuple
    maps: tuple

    @property
    def length(self) -> int:
        return len(self.levels) - 1

    def rank(self) -> int:
        return sum((-1) ** i * len(tw) for i, tw in enumerate(self.levels))

    def validate(self):
        if len(self.maps) != self.length:
            raise SpecInvalidError(
                f"{self.length + 1} levels need {self.length} maps, "
                f"got {len(self.maps)}"
            )
        if any(len(tw) == 0 for tw in self.levels):
            raise SpecInvalidError("every level needs at least one twist")
        for i, mat in enumerate(self.maps):
            tgt, src = self.levels[i], self.levels[i + 1]
            if len(mat) != len(tgt) or any(len(row) != len(src) for row in mat):
                raise SpecInvalidError(
                    f"map {i + 1} must be {len(tgt)} x {len(src)}"
                )
            for t, row in enumerate(mat):
                for s, poly in enumerate(row):
                    deg = tgt[t] - src[s]
                    for coeff, exps in poly:
                        if len(exps) != self.r:
                            raise SpecInvalidError(
                                f"map {i + 1} entry ({t + 1},{s + 1}): "
                                f"exponent tuple needs {self.r} entries"
                            )
                        if coeff % self.p == 0:
                            continue
                        if sum(exps) != deg or deg < 0:
                            raise SpecInvalidError(
                                f"map {i + 1} entry ({t + 1},{s + 1}) must be "
                                f"homogeneous of degree {deg}"
                            )
        for i in range(self.length - 1):
            if not _poly_matrix_product_is_zero(
                self.maps[i], self.maps[i + 1], self.p
            ):
                raise SpecInvalidError(
                    f"maps {i + 2} then {i + 1} do not compose to zero"
                )


def _poly_add(f, g, p):
    acc = {}
    for coeff, exps in itertools.chain(f, g):
        acc[exps] = (acc.get(exps, 0) + coeff) % p
    return tuple((c, e) for e, c in sorted(acc.items()) if c)


def _poly_mul(f, g, p):
    acc = {}
    for c1, e1 in f:
        for c2, e2 in g:
            e = tuple(a + b for a, b in zip(e1, e2))
            acc[e] = (acc.get(e, 0) + c1 * c2) % p
    return tuple((c, e) for e, c in sorted(acc.items()) if c)


def _poly_matrix_product_is_zero(A, B, p):
    rows, mid, cols = len(A), len(B), len(B[0])
    for t in range(rows):
        for s in range(cols):
            acc = ()
            for m in range(mid):
                acc = _poly_add(acc, _poly_mul(A[t][m], B[m][s], p), p)
            if acc:
                return False
    return True


def line_bundle_spec(p: int, r: int, a: int) -> ResolutionSpec:
    """The trivial resolution of O(a): one level, no maps."""
    return ResolutionSpec(p, r, ((a,),), ())


def euler_spec(p: int, r: int) -> ResolutionSpec:
    """0 -> O(-1) -> O^r -> T(-1) -> 0 on P^{r-1}."""
    col = tuple(
        ((1, tuple(1 if t == i else 0 for t in range(r))),) for i in range(r)
    )
    return ResolutionSpec(p, r, ((0,) * r, (-1,)), (tuple((m,) for m in col),))


def koszul_tail_spec(p: int, r: int) -> ResolutionSpec:
    """The last three Koszul terms on P^{r-1}; the cokernel sheaf is O.

    Only r = 2 stays desk-sized: levels O(-2) -> O(-1)^2 -> O.
    """
    if r != 2:
        raise SpecInvalidError("koszul tail spec is provided for r = 2 only")
    y1 = ((1, (1, 0)),)
    y2 = ((1, (0, 1)),)
    neg_y2 = ((p - 1, (0, 1)),)
    return ResolutionSpec(
        p,
        2,
        ((0,), (-1, -1), (-2,)),
        (
            ((y1, y2),),          # O(-1)^2 -> O via (Y1, Y2)
            ((neg_y2,), (y1,)),   # O(-2) -> O(-1)^2 via (-Y2, Y1)
        ),
    )


# ---------------------------------------------------------------------------
# the canonical chain of Heller shifts of k


@dataclasses.dataclass(frozen=True)
class ShiftPair:
    """Exact sequence 0 -> model(j) -> free -> model(j-1) -> 0.

    The middle is free, hence both a projective cover of model(j-1) and
    an injective hull of model(j): one sequence serves lifting in both
    directions.
    """

    free: KEModule
    incl: ModuleHom  # model(j) -> free
    proj: ModuleHom  # free -> model(j-1)


class StableModels:
    """Explicit models of the Heller shifts of k, doubly linked."""

    def __init__(self, p, r, max_dim=DEFAULT_MAX_DIM):
        self.p = p
        self.r = r
        self.max_dim = max_dim
        k = builtin("trivial", p, r)
        self.models = {0: k}
        self.pairs = {}  # j -> ShiftPair linking model(j) to model(j-1)
        self._gen_cocycles = {}
        self._monomials = {}

    def model(self, j: int) -> KEModule:
        if j not in self.models:
            if j > 0:
                self.pair(j)
            else:
                self.pair(j + 1)
        return self.models[j]

    def pair(self, j: int) -> ShiftPair:
        """The linking sequence between model(j) and model(j-1)."""
        if j in self.pairs:
            return self.pairs[j]
        if j >= 1:
            below = self.model(j - 1)
            data = projective_cover(below)
            self._cap(data.kernel)
            self.models.setdefault(j, data.kernel)
            pair = ShiftPair(data.free, data.inclusion, data.cover)
        else:
            above = self.model(j)
            data = injective_hull(above)
            self._cap(data.cokernel)
            self.models.setdefault(j - 1, data.cokernel)
            pair = ShiftPair(data.free, data.hull, data.projection)
        self.pairs[j] = pair
        return pair

    def _cap(self, M):
        if M.n > self.max_dim:
            raise ResourceCapError(
                f"Heller shift model of dimension {M.n} exceeds the cap "
                f"{self.max_dim}"
            )

    # -- chain maps

    def lift_up(self, f: ModuleHom, src: int, tgt: int) -> ModuleHom:
        """model(src+1) -> model(tgt+1) lifting f: model(src) -> model(tgt)."""
        pair_s, pair_t = self.pair(src + 1), self.pair(tgt + 1)
        q = group_algebra(self.p, self.r).q
        b = pair_s.free.n // q
        gen_cols = pair_s.proj.matrix[:, [t * q for t in range(b)]]
        rhs = matmul_p(f.matrix, gen_cols, self.p)
        V = gfalg.solve_p(pair_t.proj.matrix, rhs, self.p)
        if V is None:
            raise NoSolutionError("projective lift failed")
        F = _free_source_hom(pair_s.free, pair_t.free, V)
        restricted = matmul_p(F, pair_s.incl.matrix, self.p)
        Z = gfalg.solve_p(pair_t.incl.matrix, restricted, self.p)
        if Z is None:
            raise NoSolutionError("lift does not preserve kernels")
        return ModuleHom(self.model(src + 1), self.model(tgt + 1), Z, validate=False)

    def lift_down(self, f: ModuleHom, src: int, tgt: int) -> ModuleHom:
        """model(src-1) -> model(tgt-1) induced on hull cokernels."""
        pair_s, pair_t = self.pair(src), self.pair(tgt)
        rhs = matmul_p(pair_t.incl.matrix, f.matrix, self.p)  # A_src -> F_tgt
        G = _solve_free_source(pair_s.free, f.source, pair_s.incl.matrix, pair_t.free, rhs)
        if G is None:
            raise NoSolutionError("injective co-lift failed")
        # induced map on cokernels: h proj_s = proj_t G
        lhs = matmul_p(pair_t.proj.matrix, G, self.p)
        H = gfalg.solve_p(
            pair_s.proj.matrix.T.copy(), lhs.T.copy(), self.p
        )
        if H is None:
            raise NoSolutionError("cokernel descent failed")
        return ModuleHom(
            self.model(src - 1), self.model(tgt - 1), H.T, validate=False
        )

    # -- cocycles

    def generator_cocycle(self, i: int) -> "CocycleMap":
        """The map of shift models representing the i-th polynomial generator.

        p = 2: the degree-one class, as model(1) -> model(0) reading off
        the i-th linear coordinate of the augmentation ideal.  p odd: its
        Bockstein, as model(2) -> model(0) reading off the top power of
        the i-th variable in the corresponding syzygy coordinate.
        """
        if not 1 <= i <= self.r:
            raise ValueError(f"generator index must be in 1..r, got {i}")
        if i in self._gen_cocycles:
            return self._gen_cocycles[i]
        p, r = self.p, self.r
        kE = group_algebra(p, r)
        eps = 1 if p == 2 else 2
        if p == 2:
            # Omega k sits inside kE; take the coefficient of the monomial X_i
            pair = self.pair(1)
            mono = tuple(1 if t == i - 1 else 0 for t in range(r))
            row = np.zeros((1, kE.q), dtype=np.uint8)
            row[0, kE.index[mono]] = 1
            mat = matmul_p(row, pair.incl.matrix, p)
        else:
            # Omega^2 k is the syzygy module of the minimal generators of
            # the augmentation ideal; read the X_i^{p-1} coefficient in
            # the coordinate of the generator that maps to X_i
            pair1 = self.pair(1)
            omega1 = self.model(1)
            data1 = projective_cover(omega1)
            # find which generator of the cover of Omega k is the monomial X_i:
            # generators are coordinate indices into the Omega k model, whose
            # basis is kernel_basis of the augmentation cover
            target = None
            incl1 = pair1.incl.matrix  # Omega k -> kE coordinates
            mono_i = kE.index[tuple(1 if t == i - 1 else 0 for t in range(r))]
            for t, g in enumerate(data1.generators):
                col = incl1[:, g]
                if col[mono_i] and np.count_nonzero(col) == 1:
                    target = t
                    break
            if target is None:
                raise AssertionError("cover generators do not include X_i")
            top = tuple(p - 1 if t == i - 1 else 0 for t in range(r))
            row = np.zeros((1, data1.free.n), dtype=np.uint8)
            row[0, target * kE.q + kE.index[top]] = 1
            mat = matmul_p(row, self.pair(2).incl.matrix, p)
        hom = ModuleHom(self.model(eps), self.model(0), mat, validate=True)
        cocycle = CocycleMap(hom, source_shift=eps, target_shift=0, eps=eps)
        if not self.is_stably_nonzero(hom):
            raise AssertionError("generator cocycle is stably trivial")
        self._gen_cocycles[i] = cocycle
        return cocycle

    def is_stably_nonzero(self, f: ModuleHom) -> bool:
        """True unless f factors through the injective hull of its source."""
        hull = injective_hull(f.source)
        return _solve_through_injective(hull, f.source, f.matrix, f.target) is None

    def monomial_cocycle(self, exponents, shift_j: int = 0) -> "CocycleMap":
        """Composite cocycle for the monomial with the given exponents.

        Represents the product of the polynomial generators, as a map
        model(eps*(n + j)) -> model(eps*j) with n the total degree.
        """
        exponents = tuple(int(e) for e in exponents)
        if len(exponents) != self.r or any(e < 0 for e in exponents):
            raise ValueError("exponents must be r nonnegative integers")
        n = sum(exponents)
        if n == 0:
            raise ValueError("monomial must have positive degree")
        key = (exponents, shift_j)
        if key in self._monomials:
            return self._monomials[key]
        eps = 1 if self.p == 2 else 2
        sequence = [
            i + 1 for i, e in enumerate(exponents) for _ in range(e)
        ]
        f = self.generator_cocycle(sequence[0]).hom
        src, tgt = eps, 0
        for t, i in enumerate(sequence[1:], start=1):
            g = self._lifted_generator(i, eps * t)
            f = _compose(f, g)
            src = eps * (t + 1)
        f = self._shift_hom(f, src, tgt, shift_j * eps)
        out = CocycleMap(
            f,
            source_shift=eps * (n + shift_j),
            target_shift=eps * shift_j,
            eps=eps,
        )
        self._monomials[key] = out
        return out

    def _lifted_generator(self, i: int, amount: int) -> ModuleHom:
        key = ("lifted", i, amount)
        if key in self._monomials:
            return self._monomials[key]
        eps = 1 if self.p == 2 else 2
        f = self.generator_cocycle(i).hom
        src, tgt = eps, 0
        for _ in range(amount):
            f = self.lift_up(f, src, tgt)
            src += 1
            tgt += 1
        self._monomials[key] = f
        return f

    def _shift_hom(self, f: ModuleHom, src: int, tgt: int, steps: int) -> ModuleHom:
        while steps > 0:
            f = self.lift_up(f, src, tgt)
            src += 1
            tgt += 1
            steps -= 1
        while steps < 0:
            f = self.lift_down(f, src, tgt)
            src -= 1
            tgt -= 1
            steps += 1
        return f


def _compose(f: ModuleHom, g: ModuleHom) -> ModuleHom:
    assert g.target.n == f.source.n
    return ModuleHom(
        g.source, f.target, matmul_p(f.matrix, g.matrix, f.source.p), validate=False
    )


def _free_source_hom(free: KEModule, target: KEModule, gen_images):
    """Matrix of the hom kE^b -> target sending generator t to column t."""
    q = group_algebra(free.p, free.r).q
    b = free.n // q
    acts = monomial_actions(target)
    out = np.zeros((target.n, free.n), dtype=np.uint8)
    for t in range(b):
        for w in range(q):
            out[:, t * q + w] = matmul_p(
                acts[w], gen_images[:, t : t + 1], free.p
            )[:, 0]
    return out


def _min_generator_columns(M: KEModule):
    """Column indices of a minimal generating set (complement of J M)."""
    return projective_cover(M).generators


def _solve_free_source(free_src, A, incl_matrix, target, rhs_matrix):
    """Solve t: free_src -> target with t o incl = rhs, t a module hom.

    free_src = kE^s, incl: A -> free_src, rhs: A -> target.  Since t is
    determined by its s generator images and all maps are module homs,
    the constraint is imposed only at a minimal generating set of A.
    Returns the full matrix of t, or None if the system is inconsistent.
    """
    p, r = free_src.p, free_src.r
    kE = group_algebra(p, r)
    q = kE.q
    s = free_src.n // q
    n_t = target.n
    gens = _min_generator_columns(A)
    if s == 0 or n_t == 0:
        if np.any(rhs_matrix[:, list(gens)] if n_t else 0):
            return None
        return np.zeros((n_t, free_src.n), dtype=np.uint8)
    acts_t = monomial_actions(target)
    # unknowns u[(j, tau)] = coordinate tau of the image of generator j
    sys = np.zeros((len(gens) * n_t, s * n_t), dtype=np.int64)
    for j in range(s):
        Hj = incl_matrix[j * q : (j + 1) * q, list(gens)]  # q x gens
        for w in range(q):
            coeffs = Hj[w]
            if not np.any(coeffs):
                continue
            W = acts_t[w].astype(np.int64)  # n_t x n_t
            for gidx, c in enumerate(coeffs):
                if c:
                    blk = sys[
                        gidx * n_t : (gidx + 1) * n_t, j * n_t : (j + 1) * n_t
                    ]
                    blk += int(c) * W
    sys %= p
    rhs = rhs_matrix[:, list(gens)].T.reshape(-1, 1)  # (gens * n_t) x 1
    sol = gfalg.solve_p(sys.astype(np.uint8), rhs.astype(np.uint8), p)
    if sol is None:
        return None
    gen_images = sol.reshape(s, n_t).T  # n_t x s
    return _free_source_hom(free_src, target, gen_images)


def _solve_through_injective(hull_data, A, f_matrix, target):
    """t: I(A) -> target with t o hull = f, or None (f is stably nonzero)."""
    return _solve_free_source(
        hull_data.free, A, hull_data.hull.matrix, target, f_matrix
    )


# ---------------------------------------------------------------------------
# cocycles and cones


@dataclasses.dataclass(frozen=True)
class CocycleMap:
    """A map between Heller-shift models representing a cohomology class."""

    hom: ModuleHom
    source_shift: int
    target_shift: int
    eps: int


def lift(models: StableModels, f: CocycleMap, times: int) -> CocycleMap:
    """Shift a cocycle map: positive times toward deeper shifts."""
    hom = models._shift_hom(f.hom, f.source_shift, f.target_shift, times)
    return CocycleMap(
        hom, f.source_shift + times, f.target_shift + times, f.eps
    )


@dataclasses.dataclass(frozen=True)
class ConeResult:
    module: KEModule
    into: ModuleHom  # B -> cone
    out: ModuleHom  # cone -> hull cokernel of A
    section: np.ndarray  # coordinate section of the quotient projection
    hull: object  # HullData of A


def cone(f: ModuleHom) -> ConeResult:
    """Complete f: A -> B to a triangle: the cokernel of (f, hull) in B + I(A).

    The associated short exact sequence 0 -> A -> B + I(A) -> C -> 0 is
    locally split whenever A and B have constant Jordan type, so Jordan
    types add and the bundle functors are exact on it.
    """
    A, B = f.source, f.target
    p = A.p
    hull = injective_hull(A)
    D = direct_sum(B, hull.free)
    G = np.vstack([f.matrix, hull.hull.matrix])
    C, proj, sec = quotient_module(D, G, with_section=True)
    C.constant_by_construction = (
        A.constant_by_construction and B.constant_by_construction
    )
    into = ModuleHom(B, C, proj.matrix[:, : B.n], validate=False)
    out_mat = matmul_p(hull.projection.matrix, sec[B.n :, :], p)
    out = ModuleHom(C, hull.cokernel, out_mat, validate=False)
    return ConeResult(C, into, out, sec, hull)


def descend(cone_res: ConeResult, f: ModuleHom, g: ModuleHom) -> ModuleHom:
    """The map cone(f) -> T with h o (B -> cone) = g, for g o f stably zero.

    Solves t: I(A) -> T with t o hull = g o f, then reads h off on
    quotient representatives as (g, -t).
    """
    A, B, T = f.source, f.target, g.target
    p = A.p
    rhs = matmul_p(g.matrix, f.matrix, p)
    t = _solve_through_injective(cone_res.hull, A, rhs, T)
    if t is None:
        raise NoSolutionError(
            "map does not descend to the cone; composite is not stably zero"
        )
    stacked = np.hstack([g.matrix, (-t.astype(np.int64)) % p])
    h = matmul_p(stacked.astype(np.uint8), cone_res.section, p)
    return ModuleHom(cone_res.module, T, h, validate=False)


# ---------------------------------------------------------------------------
# the main construction


@dataclasses.dataclass
class RealizeReport:
    eps: int
    expected_rank: int
    level_dims: list
    cone_dims: list
    stripped: list
    final_dim: int = 0
    verdict: object = None
    triangles: list = dataclasses.field(default_factory=list)
    # (A, B, stripped cone) per level: each is a locally split triangle

    def __str__(self):
        lines = [
            f"variable replacement exponent eps = {self.eps}",
            f"expected stable rank s = {self.expected_rank}",
            f"level module dimensions: {self.level_dims}",
            f"cone dimensions: {self.cone_dims}",
            f"free summands stripped per cone: {self.stripped}",
            f"final dimension: {self.final_dim}",
        ]
        if isinstance(self.verdict, ConstantSoFar):
            lines.append(
                f"constant so far: type {self.verdict.type} at "
                f"{self.verdict.points_checked} points over "
                f"{', '.join(self.verdict.fields_used)}"
            )
        elif isinstance(self.verdict, Falsified):
            lines.append(f"NOT CONSTANT: witness {self.verdict.witness}")
        return "\n".join(lines)


@functools.lru_cache(maxsize=None)
def stable_models(p: int, r: int, max_dim: int = DEFAULT_MAX_DIM) -> StableModels:
    return StableModels(p, r, max_dim)


def resolution_of_k(p: int, r: int, length: int, max_dim: int = DEFAULT_MAX_DIM):
    """Minimal-resolution data of the trivial module, levels 0..length.

    Returns a list of (shift model, linking pair) with pair j the exact
    sequence 0 -> model(j) -> free -> model(j-1) -> 0.
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    models = stable_models(p, r, max_dim)
    return [(models.model(j), models.pair(j)) for j in range(1, length + 1)]


def _sum_of_shifts(models: StableModels, shifts):
    """Direct sum of shift models with per-summand coordinate offsets."""
    parts = [models.model(j) for j in shifts]
    total = parts[0]
    offsets = [0]
    for part in parts[1:]:
        offsets.append(total.n)
        total = direct_sum(total, part)
    total.constant_by_construction = True
    return total, parts, offsets


def _block_hom(models, src_sum, tgt_sum, blocks):
    """Assemble a hom out of per-(row, col) ModuleHoms between summands."""
    src, src_parts, src_off = src_sum
    tgt, tgt_parts, tgt_off = tgt_sum
    p = src.p
    mat = np.zeros((tgt.n, src.n), dtype=np.uint8)
    for (t, s), hom in blocks.items():
        mat[
            tgt_off[t] : tgt_off[t] + tgt_parts[t].n,
            src_off[s] : src_off[s] + src_parts[s].n,
        ] = hom.matrix
    return ModuleHom(src, tgt, mat, validate=False)


def realize_bundle(
    spec: ResolutionSpec,
    *,
    max_dim: int = DEFAULT_MAX_DIM,
    max_length: int = DEFAULT_MAX_LENGTH,
    plan: SamplingPlan | None = None,
) -> tuple[KEModule, RealizeReport]:
    """The module whose first bundle functor realizes the resolved bundle.

    For p = 2 that functor value is the bundle itself; for odd p it is
    the Frobenius pullback.  Free summands are stripped after every cone
    (all statements are stable, and dimensions would otherwise multiply).
    """
    spec.validate()
    if spec.length > max_length:
        raise ResourceCapError(
            f"resolution length {spec.length} exceeds the cap {max_length}"
        )
    p, r = spec.p, spec.r
    eps = 1 if p == 2 else 2
    models = stable_models(p, r, max_dim)
    report = RealizeReport(eps=eps, expected_rank=spec.rank(), level_dims=[],
                           cone_dims=[], stripped=[])

    sums = []
    for twists in spec.levels:
        sums.append(_sum_of_shifts(models, [-eps * a for a in twists]))
        report.level_dims.append(sums[-1][0].n)

    def differential(i):
        # maps[i]: level i+1 -> level i
        blocks = {}
        tgt_twists, src_twists = spec.levels[i], spec.levels[i + 1]
        for t in range(len(tgt_twists)):
            for s in range(len(src_twists)):
                poly = spec.maps[i][t][s]
                acc = None
                for coeff, exps in poly:
                    if coeff % p == 0:
                        continue
                    cmap = models.monomial_cocycle(exps, shift_j=-tgt_twists[t])
                    term = (coeff * cmap.hom.matrix.astype(np.int64)) % p
                    acc = term if acc is None else (acc + term) % p
                if acc is not None:
                    blocks[(t, s)] = ModuleHom(
                        sums[i + 1][1][s],
                        sums[i][1][t],
                        acc,
                        validate=False,
                    )
        return _block_hom(models, sums[i + 1], sums[i], blocks)

    L = spec.length
    if L == 0:
        current, _, _ = sums[0]
        current, a, _ = strip_free_with_inclusion(current)
        report.stripped.append(a)
    else:
        current = sums[L][0]
        f_cur = differential(L - 1)  # current -> level L-1 module
        for i in range(L - 1, -1, -1):
            cres = cone(f_cur)
            report.cone_dims.append(cres.module.n)
            if cres.module.n > max_dim:
                raise ResourceCapError(
                    f"cone dimension {cres.module.n} exceeds the cap {max_dim}"
                )
            stripped, a, incl = strip_free_with_inclusion(cres.module)
            report.stripped.append(a)
            report.triangles.append((f_cur.source, f_cur.target, stripped))
            if i > 0:
                g = differential(i - 1)
                h = descend(cres, f_cur, g)
                f_cur = _compose(h, incl)
                current = stripped
            else:
                current = stripped
    report.final_dim = current.n
    current.constant_by_construction = True
    report.verdict = check_constant(current, plan or SamplingPlan())
    if isinstance(report.verdict, Falsified):
        current.constant_by_construction = False
    return current, report
