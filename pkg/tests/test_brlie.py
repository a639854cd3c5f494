import itertools
import random

import pytest

from conftest import c3_module, grassmann_line, odd_line, trivial_module
from ydlie.braid import BraidWord, all_permutations, descending
from ydlie.brlie import (GradedAlgebra, TableBracket, bracket, check_antisymmetry,
                         check_jacobi1, check_jacobi2, check_lie_axioms, contract_at,
                         inner_then_outer, is_lie_subalgebra, lie_from_algebra,
                         lift_identity_holds, minus_one, naturality_holds, nested_bracket_at,
                         outer_after_left)
from ydlie.cyclo import RootOfUnity
from ydlie.linalg import add_into
from ydlie.models import graded_end, scalar_algebra, truncated_polynomial
from ydlie.report import InvariantViolation
from ydlie.symzeta import Subspace, minus_one_zeta_subspace, symmetrize_graded
from ydlie.ydspace import Bicharacter, FiniteAbelianGroup, GradedModule, apply_word_raw

from test_ydspace import reduced_words, tau_oracle


def bracket_oracle(A, n, zeta, coeffs):
    """sum over S_n of nabla^n applied to zeta^-l(s) times a reduced lift of s, from scratch."""
    M = A.carrier
    fld = M.field
    out = {}
    for s in all_permutations(n):
        word = reduced_words(s)[-1]           # deliberately not the minimal lift
        v = dict(coeffs)
        for i, _ in reversed(word):
            v = tau_oracle(M, i, v)
        scale = fld.root(-len(word) * zeta.k)
        for t, c in v.items():
            prod = {(t[0],): fld.one}
            for a in t[1:]:
                prod = A.mul(prod, {(a,): fld.one})
            add_into(out, prod, c * scale)
    return out


def elem(A, **entries):
    fld = A.field
    return {(A.carrier.index(k),): fld(v) for k, v in entries.items()}


# bracket values ---------------------------------------------------------------------

def test_commutator_in_gl2(gl2):
    i, j = gl2.carrier.index("E0_1"), gl2.carrier.index("E1_0")
    val = bracket(gl2, 2, RootOfUnity(2, 1), {(i, j): gl2.field.one})
    assert val.coeffs == elem(gl2, E0_0=1, E1_1=-1)


def test_cubic_bracket_of_cyclic_shift(c3_end):
    """f = E1_0 + E2_1 + E0_2 has degree 1 and f^3 = 1, so [f (x) f (x) f] = 6."""
    A = c3_end
    f = [A.carrier.index(x) for x in ("E1_0", "E2_1", "E0_2")]
    z = {t: A.field.one for t in itertools.product(f, repeat=3)}
    val = bracket(A, 3, RootOfUnity(6, 2), z)
    assert val.coeffs == elem(A, E0_0=6, E1_1=6, E2_2=6)
    assert val.coeffs == bracket_oracle(A, 3, RootOfUnity(6, 2), z)


def test_single_matrix_unit_cubes_to_zero(c3_end):
    A = c3_end
    e = A.carrier.index("E1_0")
    assert not bracket(A, 3, RootOfUnity(6, 2), {(e, e, e): A.field.one}).coeffs


def test_arity_one_is_identity(c3_end):
    Lb = lie_from_algebra(c3_end, 2)
    v = {(3,): c3_end.field(5)}
    assert Lb.apply(1, RootOfUnity(6, 0), v) == v


def test_scalar_algebra_square():
    """In k the transposition acts by -tau = -1 at zeta = -1, so [x, x] = x*x - x*x = 0."""
    chi = Bicharacter.trivial(FiniteAbelianGroup((1,)), 2)
    k = scalar_algebra(chi)
    assert bracket(k, 2, RootOfUnity(2, 1), {(0, 0): k.field.one}).coeffs == {}
    assert bracket_oracle(k, 2, RootOfUnity(2, 1), {(0, 0): k.field.one}) == {}


def test_grassmann_square_vanishes():
    G = grassmann_line()
    assert not bracket(G, 2, RootOfUnity(2, 1), {(1, 1): G.field.one}).coeffs


@pytest.mark.parametrize("n,k", [(2, 3), (3, 2), (3, 4)])
def test_bracket_matches_oracle_on_every_basis_element(c3_end, n, k):
    zeta = RootOfUnity(6, k)
    for row in symmetrize_graded(c3_end.carrier, n, zeta).basis:
        assert bracket(c3_end, n, zeta, row).coeffs == bracket_oracle(c3_end, n, zeta, row)


def test_bracket_rejects_outside_domain(c3_end):
    e = c3_end.carrier.index("E1_0")
    with pytest.raises(ValueError, match="domain"):
        bracket(c3_end, 2, RootOfUnity(6, 3), {(e, e): c3_end.field.one})
    with pytest.raises(ValueError, match="primitive"):
        bracket(c3_end, 3, RootOfUnity(6, 1), {(e, e, e): c3_end.field.one})


def test_missing_root_is_reported():
    chi = Bicharacter.trivial(FiniteAbelianGroup((1,)), 3)
    A = graded_end(GradedModule(chi, [(0,)]))
    with pytest.raises(ValueError, match="n=2"):
        lie_from_algebra(A, 2)


def test_unit_and_associativity_validation():
    M = odd_line()
    with pytest.raises(ValueError):
        GradedAlgebra(GradedModule(M.chi, [(0,), (1,)], ["1", "x"]),
                      {(0, 0): {0: 1}, (0, 1): {1: 2}, (1, 0): {1: 1}}, {0: 1})


# composite operators ------------------------------------------------------------------

def test_classical_nested_commutator(gl2):
    Lb = lie_from_algebra(gl2, 2)
    idx = gl2.carrier.index
    x, y, w = idx("E0_1"), idx("E1_0"), idx("E0_0")
    one = gl2.field.one
    z = {(x, y, w): one}
    # [x,[y,w]] with x = E01, y = E10, w = E00: [E10, E00] = E10, [E01, E10] = E00 - E11
    assert inner_then_outer(Lb, 2, minus_one(2), z) == elem(gl2, E0_0=1, E1_1=-1)
    assert outer_after_left(Lb, 2, minus_one(2), z) == {}
    # [[x, y], x] = [E00 - E11, E01] = 2 E01
    assert outer_after_left(Lb, 2, minus_one(2), {(x, y, x): one}) == elem(gl2, E0_1=2)
    assert inner_then_outer(Lb, 2, minus_one(2), {}) == {}


def test_nested_bracket_classical_slot(gl2):
    Lb = lie_from_algebra(gl2, 2)
    idx = gl2.carrier.index
    x, y1, y2 = idx("E0_1"), idx("E1_0"), idx("E1_1")
    z = {(x, y1, y2): gl2.field.one}
    # i = 1: [[x, y1], y2] = [E00 - E11, E11] = 0; i = 2: [y1, [x, y2]] = [E10, E01] = E11 - E00
    assert nested_bracket_at(Lb, 2, minus_one(2), 1, z) == {}
    assert nested_bracket_at(Lb, 2, minus_one(2), 2, z) == elem(gl2, E0_0=-1, E1_1=1)
    assert nested_bracket_at(Lb, 2, minus_one(2), 1, {}) == {}


def test_nested_bracket_on_c3_mixed_space(c3_end):
    Lb = lie_from_algebra(c3_end, 3)
    zeta = RootOfUnity(6, 2)
    idx = c3_end.carrier.index
    f = [idx(x) for x in ("E1_0", "E2_1", "E0_2")]
    e = idx("E0_0")
    z = {(e,) + t: c3_end.field.one for t in itertools.product(f, repeat=3)}
    assert Lb.mixed_space(3, zeta).contains(z)
    total = {}
    for i in (1, 2, 3):
        add_into(total, nested_bracket_at(Lb, 3, zeta, i, z))
    # [E00, [f,f,f]] = [E00, 6] = 0, so the slot terms must cancel
    assert contract_at(Lb, 3, zeta, z, 2) == {(e, idx(x)): c3_end.field(6)
                                              for x in ("E0_0", "E1_1", "E2_2")}
    assert total == {}


def test_inner_then_outer_matches_symbolic_expansion(gl2):
    """Trivial braiding, zeta = -1: [x,[y,w]] against xyw - xwy - ywx + wyx."""
    Lb = lie_from_algebra(gl2, 2)
    rng = random.Random(3)
    fld = gl2.field
    for _ in range(10):
        x, y, w = (rng.randrange(4) for _ in range(3))
        z = {(x, y, w): fld.one}
        expect = {}
        for order, s in (((x, y, w), 1), ((x, w, y), -1), ((y, w, x), -1), ((w, y, x), 1)):
            add_into(expect, gl2.nabla_tuple(order), fld(s))
        assert inner_then_outer(Lb, 2, minus_one(2), z) == expect


def test_sextic_bracket_on_c3_vanishes(c3_end):
    """A^6(-w) is a nonzero domain, but the bracket there is s_6 on 3x3 matrices, hence 0."""
    Lb = lie_from_algebra(c3_end, 6)
    zeta = RootOfUnity(6, 5)
    S = Lb.space(6, zeta)
    assert S.dim == 2 * 3 ** 6
    assert all(Lb.value(6, zeta, p) == {} for p in S.pivots())


# axioms -----------------------------------------------------------------------------

def c2xc2_matrix_algebra():
    g = FiniteAbelianGroup((2, 2))
    chi = Bicharacter(g, 4, {(0, 0): 2, (0, 1): 2, (1, 0): 0, (1, 1): 0})
    return graded_end(GradedModule(chi, [(0, 0), (1, 0), (0, 1)]))


def c4_matrix_algebra():
    g = FiniteAbelianGroup((4,))
    chi = Bicharacter(g, 4, {(0, 0): 1})
    return graded_end(GradedModule(chi, [(0,), (1,), (3,)]))


ALGEBRAS = {
    "gl2": (lambda: graded_end(trivial_module(2)), 3),
    "c3": (lambda: graded_end(c3_module(L=12)), 4),
    "grassmann": (grassmann_line, 4),
    "c2xc2": (c2xc2_matrix_algebra, 3),
    "c4": (c4_matrix_algebra, 4),
    "trunc-poly": (lambda: truncated_polynomial(Bicharacter(FiniteAbelianGroup((4,)), 4,
                                                            {(0, 0): 1}), (1,), 4), 4),
}


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_lie_axioms(name):
    make, top = ALGEBRAS[name]
    rep = check_lie_axioms(lie_from_algebra(make(), top))
    assert rep.ok, rep.failures[:1]
    assert rep.count("PASS") > 0


def test_super_jacobi_on_odd_matrices():
    """gl(1|1): C2 grading with chi(1,1) = -1."""
    chi = Bicharacter(FiniteAbelianGroup((2,)), 2, {(0, 0): 1})
    A = graded_end(GradedModule(chi, [(0,), (1,)]))
    Lb = lie_from_algebra(A, 2)
    assert check_jacobi1(Lb, 2, minus_one(2)).ok
    assert check_jacobi2(Lb, 2, minus_one(2)).ok
    # odd-odd bracket is the anticommutator
    idx = A.carrier.index
    val = Lb.apply(2, minus_one(2), {(idx("E0_1"), idx("E1_0")): A.field.one})
    assert val == elem(A, E0_0=1, E1_1=1)


def test_corrupted_table_fails_with_witness(gl2):
    Lb = lie_from_algebra(gl2, 2).materialize()
    m1 = minus_one(2)
    pivot = Lb.space(2, m1).pivots()[1]
    bad = Lb.with_value(2, m1, pivot, {(0,): gl2.field(7)})
    rep = check_antisymmetry(bad, 2, m1)
    assert not rep.ok
    assert "sigma" in rep.failures[0].witness
    assert not check_jacobi1(bad, 2, m1).ok


def test_materialized_table_agrees(c3_end):
    Lb = lie_from_algebra(c3_end, 3)
    T = Lb.materialize()
    for n, zeta in Lb.keys():
        for row in Lb.space(n, zeta).basis:
            assert T.apply(n, zeta, row) == Lb.apply(n, zeta, row)


def test_table_validation(c3_end):
    M = c3_end.carrier
    e10, e00 = M.index("E1_0"), M.index("E0_0")
    with pytest.raises(ValueError, match="pivot"):
        TableBracket(M, 2, {(2, 3): {(e10, e10): {(e00,): 1}}})
    with pytest.raises(ValueError, match="degree"):
        TableBracket(M, 2, {(2, 3): {(e00, e00): {(e10,): 1}}})


# operator identities ------------------------------------------------------------------

@pytest.mark.parametrize("n,k", [(2, 6), (3, 4), (3, 8)])
def test_lift_identity(n, k):
    M = c3_module((1, 1, 2), L=12)
    zeta = RootOfUnity(12, k)
    S = minus_one_zeta_subspace(M, n, zeta)
    rng = random.Random(n * 100 + k)
    for _ in range(30):
        letters = tuple((rng.randrange(1, n), rng.choice((1, -1))) for _ in range(rng.randrange(6)))
        phi = BraidWord(n, letters)
        i = rng.randrange(1, n + 1)
        for row in S.basis:
            assert lift_identity_holds(M, n, zeta, phi, i, row)


@pytest.mark.parametrize("n,k", [(2, 3), (3, 2)])
def test_naturality(c3_end, n, k):
    Lb = lie_from_algebra(c3_end, 3)
    zeta = RootOfUnity(6, k)
    for row in Lb.space(n + 1, zeta).basis:
        assert naturality_holds(Lb, n, zeta, row)


@pytest.mark.parametrize("n,k", [(2, 6), (3, 4)])
def test_slot_contraction_by_any_morphism_stays_symmetric(n, k):
    """Contracting x (x) y_i by a random degree-preserving P (x) P -> P lands in P^n(zeta)."""
    M = c3_module((1, 2, 1), L=12)
    zeta = RootOfUnity(12, k)
    fld = M.field
    rng = random.Random(n + k)
    f = {}
    for a in range(M.dim):
        for b in range(M.dim):
            g = M.group.add(M.degree(a), M.degree(b))
            f[(a, b)] = {(c,): fld(rng.randint(-3, 3)) for c in M.component(g)}
    S = minus_one_zeta_subspace(M, n, zeta)
    target = symmetrize_graded(M, n, zeta)
    for i in range(1, n + 1):
        for row in S.basis:
            moved = apply_word_raw(M, descending(i - 1, 1, n + 1).letters, row)
            out = {}
            for t, c in moved.items():
                for (m,), x in f[(t[i - 1], t[i])].items():
                    add_into(out, {t[:i - 1] + (m,) + t[i + 1:]: c * x})
            assert target.contains(out)


def test_invariant_violation_on_bad_slice(c3_end):
    Lb = lie_from_algebra(c3_end, 2)
    e = c3_end.carrier.index("E1_0")
    with pytest.raises(InvariantViolation, match="slots 1..2"):
        contract_at(Lb, 2, minus_one(6), {(e, e, e): c3_end.field.one}, 1)


# subalgebras ------------------------------------------------------------------------

def test_subalgebras_of_gl2(gl2):
    Lb = lie_from_algebra(gl2, 2)
    M = gl2.carrier
    one = gl2.field.one
    idx = M.index
    whole = Subspace(M, 1, [{(i,): one} for i in range(M.dim)])
    center = Subspace(M, 1, [{(idx("E0_0"),): one, (idx("E1_1"),): one}])
    upper = Subspace(M, 1, [{(idx("E0_1"),): one}])
    pair = Subspace(M, 1, [{(idx("E0_1"),): one}, {(idx("E1_0"),): one}])
    assert is_lie_subalgebra(Lb, whole)
    assert is_lie_subalgebra(Lb, center)
    assert is_lie_subalgebra(Lb, upper)
    assert not is_lie_subalgebra(Lb, pair)
