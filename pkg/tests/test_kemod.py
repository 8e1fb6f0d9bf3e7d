import numpy as np
import pytest

from cjt.gfalg import build_field
from cjt.kemod import (
    ConstantSoFar,
    Falsified,
    JordanType,
    ModuleHom,
    NonCommutingError,
    NotPNilpotentError,
    Point,
    SamplingPlan,
    builtin,
    check_constant,
    direct_sum,
    dual,
    injective_hull,
    jordan_type_at,
    new_module,
    omega,
    projective_cover,
    projective_points,
    reference_jordan_type,
    strip_free,
    tensor,
    x_alpha,
)


def axis_point(p, r, i, e=1):
    coords = [0] * r
    coords[i] = 1
    return Point(build_field(p, e), tuple(coords))


class TestNewModule:
    def test_trivial(self):
        M = new_module(2, 2, [np.zeros((1, 1))] * 2)
        assert M.n == 1

    def test_regular_rep_explicit(self):
        # multiplication matrices of X_1, X_2 on the basis 1, X_1, X_2, X_1X_2
        X1 = np.zeros((4, 4))
        X2 = np.zeros((4, 4))
        X1[1, 0] = X1[3, 2] = 1
        X2[2, 0] = X2[3, 1] = 1
        M = new_module(2, 2, [X1, X2])
        assert M.n == 4
        R = builtin("regular", 2, 2)
        # same module up to basis ordering: compare Jordan data everywhere
        for pt in projective_points(2, 2):
            assert jordan_type_at(M, pt) == jordan_type_at(R, pt)

    def test_non_commuting_rejected(self):
        A = np.array([[0, 1], [0, 0]])
        B = np.array([[0, 0], [1, 0]])
        with pytest.raises(NonCommutingError):
            new_module(2, 2, [A, B])

    def test_not_p_nilpotent_rejected(self):
        J3 = np.zeros((3, 3))
        J3[0, 1] = J3[1, 2] = 1
        with pytest.raises(NotPNilpotentError):
            new_module(2, 2, [J3, np.zeros((3, 3))])


class TestBuiltins:
    @pytest.mark.parametrize("p,r", [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2)])
    def test_rad_quotient_2(self, p, r):
        M = builtin("rad_quotient", p, r, m=2)
        assert M.n == r + 1
        expected = JordanType(p, (r - 1,) + (0,) * (p - 2) + (0,)) if p == 2 else None
        t = reference_jordan_type(M)
        # constant Jordan type [2][1]^{r-1}
        want = [0] * p
        want[0] = r - 1
        want[1] = 1
        assert t == JordanType(p, tuple(want))

    @pytest.mark.parametrize("p,r,i", [(3, 2, 1), (2, 3, 2), (5, 2, 2)])
    def test_perm_module(self, p, r, i):
        M = builtin("perm", p, r, i=i)
        assert M.n == p
        # X_i is one length-p Jordan block, the rest are zero
        for j, A in enumerate(M.X):
            if j == i - 1:
                assert np.sum(A) == p - 1
            else:
                assert not np.any(A)
        t = jordan_type_at(M, axis_point(p, r, i - 1))
        want = [0] * p
        want[p - 1] = 1
        assert t == JordanType(p, tuple(want))

    def test_zigzag_type(self):
        # dim 2n+1, constant type [2]^n [1]
        for n in (1, 2, 3):
            M = builtin("zigzag", 3, 2, n=n)
            assert M.n == 2 * n + 1
            v = check_constant(M, SamplingPlan(extra=30))
            assert isinstance(v, ConstantSoFar)
            assert v.type == JordanType(3, (1, n, 0))

    def test_regular_is_free_of_rank_one(self):
        M = builtin("regular", 3, 2)
        assert M.n == 9
        t = reference_jordan_type(M)
        assert t == JordanType(3, (0, 0, 3))


class TestXAlpha:
    def test_axis_point_regular(self):
        M = builtin("regular", 2, 2)
        pt = axis_point(2, 2, 0)
        assert np.array_equal(x_alpha(M, pt).array, M.X[0].astype(np.int64))

    def test_rad_quotient_rank_one(self):
        for pt in projective_points(3, 3):
            M = builtin("rad_quotient", 3, 3, m=2)
            from cjt.gfalg import rank

            assert rank(x_alpha(M, pt)) == 1

    def test_perm_ignores_other_coordinates(self):
        M = builtin("perm", 3, 2, i=1)
        pt = Point(build_field(3), (1, 1))
        A = x_alpha(M, pt).array
        assert np.array_equal(A, M.X[0].astype(np.int64))

    def test_zero_point_rejected(self):
        with pytest.raises(ValueError):
            Point(build_field(2), (0, 0))


class TestJordanType:
    def test_regular_kE_p2r2(self):
        # kE free of rank p^{r-1} = 2 over k[X_a]/(X_a^2)
        M = builtin("regular", 2, 2)
        for pt in projective_points(2, 2):
            assert jordan_type_at(M, pt) == JordanType(2, (0, 2))

    def test_trivial(self):
        M = builtin("trivial", 5, 2)
        assert reference_jordan_type(M) == JordanType(5, (1, 0, 0, 0, 0))

    def test_dim_identity_at_extension_points(self):
        M = builtin("rad_quotient", 3, 2, m=3)
        for e in (1, 2, 3):
            ctx = build_field(3, e)
            pt = Point(ctx, (1, ctx.q - 1))
            t = jordan_type_at(M, pt)
            assert t.dim == M.n

    def test_scaling_invariance(self):
        M = builtin("zigzag", 3, 2, n=2)
        ctx = build_field(3, 2)
        base = Point(ctx, (2, 7))
        t0 = jordan_type_at(M, base)
        for s in range(1, ctx.q):
            scaled = Point(ctx, tuple(ctx.mul(s, c) for c in base.coords))
            assert jordan_type_at(M, scaled) == t0

    def test_formatting(self):
        assert str(JordanType(2, (2, 1))) == "[2][1]^2"
        assert str(JordanType(3, (1, 0, 2))) == "[3]^2[1]"


class TestCheckConstant:
    def test_rad_quotient_constant(self):
        M = builtin("rad_quotient", 2, 3, m=2)
        v = check_constant(M, SamplingPlan(extra=50))
        assert isinstance(v, ConstantSoFar)
        assert v.type == JordanType(2, (2, 1))
        assert v.points_checked > 7

    def test_falsified_with_witness(self):
        # X_1 = J_2 + J_1 (3x3), X_2 = 0: constant fails at alpha = (0, 1)
        X1 = np.zeros((3, 3))
        X1[0, 1] = 1
        M = new_module(2, 2, [X1, np.zeros((3, 3))])
        v = check_constant(M)
        assert isinstance(v, Falsified)
        assert v.witness.normalized().coords == (0, 1)
        assert v.type_at_witness == JordanType(2, (3, 0))
        assert v.reference_type == JordanType(2, (1, 1))

    def test_trivial_constant(self):
        v = check_constant(builtin("trivial", 3, 2), SamplingPlan(extra=10))
        assert isinstance(v, ConstantSoFar)
        assert v.type == JordanType(3, (1, 0, 0))


class TestSumTensorDual:
    def test_sum_types_add(self):
        A = builtin("rad_quotient", 3, 2, m=2)
        B = builtin("zigzag", 3, 2, n=2)
        S = direct_sum(A, B)
        for pt in projective_points(3, 2) + projective_points(3, 2, 2):
            assert (
                jordan_type_at(S, pt)
                == jordan_type_at(A, pt) + jordan_type_at(B, pt)
            )

    def test_tensor_with_trivial_is_identity_on_jordan_data(self):
        M = builtin("perm", 3, 2, i=1)
        T = tensor(M, builtin("trivial", 3, 2))
        assert T.n == M.n
        for pt in projective_points(3, 2):
            assert jordan_type_at(T, pt) == jordan_type_at(M, pt)

    def test_tensor_dim_bookkeeping_at_axis(self):
        M = tensor(builtin("trivial", 3, 2), builtin("perm", 3, 2, i=1))
        t = jordan_type_at(M, axis_point(3, 2, 0))
        assert t == JordanType(3, (0, 0, 1))

    def test_dual_of_trivial(self):
        D = dual(builtin("trivial", 2, 2))
        assert D.n == 1 and not any(np.any(A) for A in D.X)

    def test_double_dual_jordan_data(self):
        for M in (
            builtin("zigzag", 3, 2, n=2),
            builtin("rad_quotient", 2, 3, m=2),
            builtin("regular", 2, 2),
        ):
            DD = dual(dual(M))
            assert DD.n == M.n
            for pt in projective_points(M.p, M.r):
                assert jordan_type_at(DD, pt) == jordan_type_at(M, pt)

    def test_dual_is_module(self):
        M = builtin("rad_quotient", 5, 2, m=3)
        D = dual(M)
        new_module(5, 2, D.X)  # revalidates commuting + nilpotency

    def test_mismatched_rejected(self):
        with pytest.raises(Exception):
            direct_sum(builtin("trivial", 2, 2), builtin("trivial", 3, 2))


class TestOmega:
    def test_omega_k_p2r2_dim3(self):
        Om = omega(builtin("trivial", 2, 2), 1)
        assert Om.n == 3  # dim kE - dim k

    def test_omega_inverse_roundtrip(self):
        k = builtin("trivial", 2, 2)
        M = omega(omega(k, 1), -1)
        assert M.n == 1
        assert reference_jordan_type(M) == JordanType(2, (1, 0))

    def test_omega_of_free_is_zero(self):
        M = omega(builtin("regular", 2, 2), 1)
        assert M.n == 0

    @pytest.mark.parametrize("p,r", [(2, 2), (3, 2), (2, 3)])
    def test_omega_negative_then_positive(self, p, r):
        k = builtin("trivial", p, r)
        M = omega(omega(k, -1), 1)
        assert M.n == 1

    def test_omega_dims_p3r2(self):
        k = builtin("trivial", 3, 2)
        assert omega(k, 1).n == 8
        assert omega(k, 2).n == 10

    def test_roundtrip_equals_strip(self):
        # omega then omega^{-1} agrees with strip_free in dimension and type
        M = direct_sum(builtin("regular", 2, 2), builtin("rad_quotient", 2, 2, m=2))
        R = omega(omega(M, 1), -1)
        S, a = strip_free(M)
        assert a == 1
        assert R.n == S.n
        for pt in projective_points(2, 2):
            assert jordan_type_at(R, pt) == jordan_type_at(S, pt)


class TestStripFree:
    def test_regular_strips_to_zero(self):
        Z, a = strip_free(builtin("regular", 2, 2))
        assert (Z.n, a) == (0, 1)

    def test_trivial_untouched(self):
        M, a = strip_free(builtin("trivial", 3, 2))
        assert (M.n, a) == (1, 0)

    def test_mixed_sum(self):
        M = direct_sum(builtin("regular", 2, 2), builtin("rad_quotient", 2, 2, m=2))
        S, a = strip_free(M)
        assert a == 1
        assert S.n == 3
        assert reference_jordan_type(S) == JordanType(2, (1, 1))
        # z kills the stripped module
        from cjt.kemod import group_algebra, monomial_actions

        kE = group_algebra(2, 2)
        assert not np.any(monomial_actions(S)[kE.index[kE.z]])

    def test_dim_bookkeeping(self):
        M = direct_sum(builtin("regular", 3, 2), builtin("zigzag", 3, 2, n=1))
        S, a = strip_free(M)
        assert a * 9 + S.n == M.n


class TestCoverHull:
    def test_cover_is_surjective_hom(self):
        M = builtin("rad_quotient", 3, 2, m=2)
        data = projective_cover(M)
        from cjt.gfalg import rank_p

        assert rank_p(data.cover.matrix, 3) == M.n
        assert data.free.n == 9  # one generator

    def test_hull_is_injective_hom(self):
        M = builtin("zigzag", 2, 2, n=2)
        data = injective_hull(M)
        from cjt.gfalg import rank_p

        assert rank_p(data.hull.matrix, 2) == M.n
        # socle of zigzag(2) is spanned by w_1, w_2
        assert data.free.n == 2 * 4

    def test_hull_commutes(self):
        M = builtin("rad_quotient", 3, 2, m=3)
        data = injective_hull(M)
        ModuleHom(M, data.free, data.hull.matrix)  # validates


class TestModuleHom:
    def test_rejects_non_equivariant(self):
        M = builtin("perm", 2, 2, i=1)
        N = builtin("trivial", 2, 2)
        bad = np.ones((1, 2))
        with pytest.raises(Exception):
            ModuleHom(M, N, bad)

    def test_composition(self):
        M = builtin("rad_quotient", 2, 2, m=2)
        data = projective_cover(M)
        comp = data.cover @ ModuleHom(
            data.kernel, data.free, data.inclusion.matrix, validate=False
        )
        assert comp.is_zero()
