import itertools

import pytest

from conftest import c3_module, grassmann_line, odd_line, trivial_module
from ydlie.brlie import BracketStructure, bracket, lie_from_algebra
from ydlie.cyclo import RootOfUnity, primitive_roots
from ydlie.hopf import (TruncatedHopf, c_expansion, check_antipode, check_primitives_lie,
                        enveloping_truncated, p_map, p_power, primitives, respects_relations,
                        tensor_square, tensor_square_multiply, verify_main_theorem)
from ydlie.linalg import add_into
from ydlie.models import graded_end, truncated_polynomial
from ydlie.symzeta import symmetrize_graded
from ydlie.ydspace import Bicharacter, FiniteAbelianGroup, GradedModule


def c4_line_algebra():
    """k[x]/(x^6) with x of degree 1 in C4 and chi(1, 1) = i."""
    chi = Bicharacter(FiniteAbelianGroup((4,)), 4, {(0, 0): 1})
    return truncated_polynomial(chi, (1,), 6)


# A (x) A and p --------------------------------------------------------------------

def test_tensor_square_multiply_examples(gl2, c3_end):
    A = gl2
    one = A.field.one
    x, y = A.carrier.index("E0_1"), A.carrier.index("E1_0")
    # (x (x) 1)(1 (x) y) = x (x) y
    left = {(x, b): c for (b,), c in A.unit.items()}
    right = {(a, y): c for (a,), c in A.unit.items()}
    assert tensor_square_multiply(A, left, right) == {(x, y): one}
    # trivial braiding: (1 (x) x)(y (x) 1) = y (x) x
    left = {(a, x): c for (a,), c in A.unit.items()}
    right = {(y, b): c for (b,), c in A.unit.items()}
    assert tensor_square_multiply(A, left, right) == {(y, x): one}

    # C3: f, g of degree 1, (1 (x) f)(g (x) 1) = w (g (x) f)
    E = c3_end
    f, g = E.carrier.index("E1_0"), E.carrier.index("E2_1")
    assert E.carrier.degree(f) == E.carrier.degree(g) == (1,)
    left = {(a, f): c for (a,), c in E.unit.items()}
    right = {(g, b): c for (b,), c in E.unit.items()}
    assert tensor_square_multiply(E, left, right) == {(g, f): E.field.root(2)}


def test_p_map_examples(c3_end):
    A = c3_end
    fld = A.field
    assert p_map(A, {}) == {}
    one = A.unit
    p1 = p_map(A, one)
    expect = {}
    for (a,), c in one.items():
        for (b,), d in one.items():
            add_into(expect, {(a, b): 2 * c * d})
    assert p1 == expect
    # p(x) p(y) - p(xy) = x (x) y + tau(x (x) y)
    x, y = A.carrier.index("E1_0"), A.carrier.index("E2_1")
    lhs = tensor_square_multiply(A, p_map(A, {(x,): fld.one}), p_map(A, {(y,): fld.one}))
    xy = A.mul({(x,): fld.one}, {(y,): fld.one})
    add_into(lhs, p_map(A, xy), fld(-1))
    tau = fld.root(A.carrier.chi_exp(x, y))
    assert lhs == {(x, y): fld.one, (y, x): tau}


@pytest.mark.parametrize("make", [lambda: grassmann_line(), lambda: graded_end(c3_module((1, 1, 0)))])
def test_tensor_square_is_an_algebra(make):
    A = make()
    T = tensor_square(A)
    assert not T.problems()


def test_p_is_not_multiplicative(gl2):
    A = gl2
    fld = A.field
    x = {(A.carrier.index("E0_1"),): fld.one}
    prod = tensor_square_multiply(A, p_map(A, x), p_map(A, x))
    assert prod != p_map(A, A.mul(x, x))


# main theorem ----------------------------------------------------------------------

MAIN_CASES = [
    ("gl2", 2), ("c3-end", 2), ("c3-end", 3), ("grassmann", 2),
    ("c4-line", 2), ("c4-line", 4),
]


def algebra(name, gl2, c3_end):
    return {"gl2": gl2, "c3-end": c3_end, "grassmann": grassmann_line(),
            "c4-line": c4_line_algebra()}[name]


@pytest.mark.parametrize("name,n", MAIN_CASES)
def test_main_theorem(name, n, gl2, c3_end):
    A = algebra(name, gl2, c3_end)
    T = tensor_square(A)
    ran = False
    for zeta in primitive_roots(A.carrier.L, n):
        rep = verify_main_theorem(A, n, zeta, T)
        assert rep.ok, rep.render_text()
        ran = ran or rep.count("PASS") > 0
    assert ran


def test_main_theorem_on_c4_line_is_nontrivial():
    A = c4_line_algebra()
    i = RootOfUnity(4, 1)
    assert symmetrize_graded(A.carrier, 4, i).dim > 0


@pytest.mark.parametrize("name,n", MAIN_CASES)
def test_only_outer_c_terms_survive(name, n, gl2, c3_end):
    A = algebra(name, gl2, c3_end)
    T = tensor_square(A)
    m = A.dim
    for zeta in primitive_roots(A.carrier.L, n):
        for row in symmetrize_graded(A.carrier, n, zeta).basis:
            parts = c_expansion(A, n, zeta, row)
            assert all(not parts[i] for i in range(1, n))
            # the two surviving terms rebuild [p^n z]
            total = dict(parts[0])
            add_into(total, parts[n])
            flat = {(a * m + b,): c for (a, b), c in total.items()}
            assert bracket(T, n, zeta, p_power(A, T, row)).coeffs == flat


# truncated U(P) ----------------------------------------------------------------------

def zero_lie(M, max_n=2):
    return BracketStructure.zero(M, max_n)


@pytest.mark.parametrize("cap", [1, 2, 3, 4])
def test_polynomial_dims_match_pbw(cap):
    H = enveloping_truncated(zero_lie(trivial_module(2)), cap)
    assert H.dims() == [k + 1 for k in range(cap + 1)]


def test_polynomial_cap_two_total():
    H = enveloping_truncated(zero_lie(trivial_module(2)), 2)
    assert H.dims() == [1, 2, 3] and H.dim == 6


@pytest.mark.parametrize("cap", [1, 2, 3, 4, 5])
def test_grassmann_line_total_dim(cap):
    H = enveloping_truncated(zero_lie(odd_line()), cap)
    assert H.dim == 2


def test_zero_module_gives_ground_field():
    M = GradedModule(Bicharacter.trivial(FiniteAbelianGroup((1,)), 2), [])
    H = enveloping_truncated(zero_lie(M), 3)
    assert H.dim == 1


def test_gl2_dims_pbw(gl2):
    H = enveloping_truncated(lie_from_algebra(gl2, 2), 3)
    # PBW for a 4-dim Lie algebra: binomial(k + 3, 3)
    assert H.dims() == [1, 4, 10, 20]


@pytest.fixture(scope="module")
def all_hopfs():
    gl2 = graded_end(trivial_module(2))
    return {
        "poly": enveloping_truncated(zero_lie(trivial_module(2)), 4),
        "grassmann": enveloping_truncated(zero_lie(odd_line()), 4),
        "gl2": enveloping_truncated(lie_from_algebra(gl2, 2), 3),
        "c3-gens": enveloping_truncated(lie_from_algebra(graded_end(c3_module((1, 1, 0))), 3), 3),
    }


def test_antipode_low_degrees(all_hopfs):
    for H in all_hopfs.values():
        fld = H.field
        e = H.index[()]
        assert H.antipode_of(e) == {(e,): fld.one}
        for k in range(H.gens.dim):
            g = H.generator(k)
            assert H.antipode(g) == {key: -c for key, c in g.items()}


@pytest.mark.parametrize("name", ["poly", "grassmann", "gl2", "c3-gens"])
def test_antipode_axioms(name, all_hopfs):
    rep = check_antipode(all_hopfs[name])
    assert rep.ok, rep.render_text()
    assert rep.count("PASS") > 0


def test_antipode_products_never_leave_the_cap():
    H = enveloping_truncated(zero_lie(trivial_module(1)), 2)
    rep = check_antipode(H)
    assert rep.ok and rep.count("PASS") == 2 * H.dim


def test_polynomial_antipode_degree_two():
    H = enveloping_truncated(zero_lie(trivial_module(2)), 2)
    fld = H.field
    xy = H.normal_form({(0, 1): fld.one})
    yx = H.normal_form({(1, 0): fld.one})
    assert xy == yx
    assert H.antipode(xy) == yx


def test_grassmann_antipode_respects_square_zero():
    H = enveloping_truncated(zero_lie(odd_line()), 4)
    fld = H.field
    assert H.normal_form({(0, 0): fld.one}) == {}
    assert H.antipode(H.generator(0)) == {(H.index[(0,)],): fld(-1)}


@pytest.mark.parametrize("name", ["poly", "grassmann", "gl2", "c3-gens"])
def test_coassociativity_and_counit(name, all_hopfs):
    H = all_hopfs[name]
    fld = H.field
    for i in range(H.dim):
        d = H.coproduct(i)
        left, right = {}, {}
        for (a, b), c in d.items():
            for (p, q), x in H.coproduct(a).items():
                add_into(left, {(p, q, b): c * x})
            for (p, q), x in H.coproduct(b).items():
                add_into(right, {(a, p, q): c * x})
        assert left == right
        # (eps (x) 1) Delta = id = (1 (x) eps) Delta
        l1, r1 = {}, {}
        for (a, b), c in d.items():
            add_into(l1, {(b,): c * H.counit(a)})
            add_into(r1, {(a,): c * H.counit(b)})
        assert l1 == {(i,): fld.one} == r1


@pytest.mark.parametrize("name", ["poly", "grassmann", "gl2", "c3-gens"])
def test_coproduct_is_multiplicative_within_cap(name, all_hopfs):
    H = all_hopfs[name]
    for i, j in itertools.product(range(H.dim), repeat=2):
        prod = H.mult(i, j)
        if prod is None:
            continue
        lhs = H.delta(prod)
        rhs = H.tensor_mul(H.coproduct(i), H.coproduct(j))
        assert rhs is not None
        assert lhs == rhs


@pytest.mark.parametrize("name", ["poly", "grassmann", "gl2", "c3-gens"])
def test_antipode_is_braided_antimultiplicative(name, all_hopfs):
    H = all_hopfs[name]
    C = H.carrier
    for i, j in itertools.product(range(H.dim), repeat=2):
        prod = H.mult(i, j)
        if prod is None:
            continue
        rhs = H.mul(H.antipode_of(j), H.antipode_of(i))
        rhs = {k: c.mul_root(C.chi_exp(i, j)) for k, c in rhs.items()}
        assert H.antipode(prod) == rhs


def word_antipode(H, vec):
    """S on raw words: (-1)^k prod_{p<q} chi(x_p, x_q) times the reversed word."""
    M = H.gens
    out = {}
    for w, c in vec.items():
        e = sum(M.chi_exp(w[p], w[q]) for p in range(len(w)) for q in range(p + 1, len(w)))
        add_into(out, {tuple(reversed(w)): c.mul_root(e) * (-1) ** len(w)})
    return out


@pytest.mark.parametrize("name", ["poly", "grassmann", "gl2", "c3-gens"])
def test_antipode_preserves_the_ideal(name, all_hopfs):
    H = all_hopfs[name]
    for r in H.relations:
        if max(len(w) for w in r) > H.cap:
            continue
        assert H.normal_form(r) == {}
        assert H.normal_form(word_antipode(H, r)) == {}


def test_primitives_of_one_variable():
    H = enveloping_truncated(zero_lie(trivial_module(1)), 3)
    P = primitives(H)
    assert P.dim == 1
    assert H.generator(0) in P


@pytest.mark.parametrize("name", ["poly", "grassmann", "gl2", "c3-gens"])
def test_primitives_form_a_lie_subalgebra(name, all_hopfs):
    H = all_hopfs[name]
    P = primitives(H)
    for k in range(H.gens.dim):
        assert H.generator(k) in P
    rep = check_primitives_lie(H, 2)
    assert rep.ok, rep.render_text()


def test_grassmann_primitives_include_nothing_else():
    H = enveloping_truncated(zero_lie(odd_line()), 4)
    assert primitives(H).dim == 1


def test_corrupted_coproduct_fails():
    H = enveloping_truncated(zero_lie(trivial_module(1)), 3)
    x = H.index[(0,)]
    fld = H.field
    # pretend x is grouplike
    bad = H.with_coproduct(x, {(x, x): fld.one})
    assert not bad.is_primitive(bad.generator(0))
    rep = check_primitives_lie(bad, 2)
    assert not rep.ok
    assert rep.failures[0].check == "generator-primitive"
    rep = check_antipode(bad)
    assert not rep.ok
    assert "x" in rep.failures[0].witness


def test_grouplike_is_never_primitive():
    H = enveloping_truncated(zero_lie(trivial_module(1)), 3)
    fld = H.field
    e = H.index[()]
    bad = H.with_coproduct(e, {(e, e): fld.one})
    assert not bad.is_primitive({(e,): fld.one})


@pytest.mark.parametrize("name", ["poly", "grassmann", "gl2", "c3-gens"])
def test_dump_round_trip(name, all_hopfs):
    H = all_hopfs[name]
    text = H.dump()
    K = TruncatedHopf.load(text)
    assert K.dump() == text
    assert K.dims() == H.dims()
    assert check_antipode(K).ok
    with pytest.raises(ValueError):
        K.normal_form({(): K.field.one})


def test_universal_map_to_the_algebra(gl2):
    H = enveloping_truncated(lie_from_algebra(gl2, 2), 3)
    fld = gl2.field
    images = [{(k,): fld.one} for k in range(gl2.dim)]
    assert respects_relations(H, gl2, images)
    swapped = [images[gl2.carrier.index("E0_1")] if k == gl2.carrier.index("E1_0") else
               images[gl2.carrier.index("E1_0")] if k == gl2.carrier.index("E0_1") else v
               for k, v in enumerate(images)]
    assert not respects_relations(H, gl2, swapped)


def test_universal_map_graded():
    A = graded_end(c3_module((1, 1, 0)))
    H = enveloping_truncated(lie_from_algebra(A, 3), 3)
    images = [{(k,): A.field.one} for k in range(A.dim)]
    assert H.relations
    assert respects_relations(H, A, images)


def test_cap_must_be_positive():
    with pytest.raises(ValueError):
        enveloping_truncated(zero_lie(trivial_module(1)), 0)
