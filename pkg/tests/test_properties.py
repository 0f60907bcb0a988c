"""Property-based tests of the algebraic invariants."""

from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from spindual.gradings import ImGrading, central_char, cross_grading, dual_bigrading
from spindual.mlattice import F2Space
from spindual.params import (
    canonical_rep,
    cayley_down,
    cayley_up,
    cross_param,
    enumerate_params,
    ext_cross_param,
    psi,
    weyl_cross,
)
from spindual.weylb import (
    IMAGINARY,
    REAL,
    SignedPerm,
    act_on_vector,
    compose,
    conjugacy_invariants,
    conjugate,
    dualize_involution,
    integral_roots,
    inverse,
    is_long,
    list_involutions,
    parse_diagram,
    positive_roots,
    reduced_word,
    reflection,
    render_diagram,
    root_type,
    simple_roots,
    stats,
)

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ranks = st.integers(min_value=1, max_value=5)


@st.composite
def signed_perms(draw, n=None):
    n = n or draw(ranks)
    perm = draw(st.permutations(range(n)))
    bits = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    return SignedPerm(tuple(bits), tuple(perm))


@st.composite
def perm_triples(draw):
    n = draw(ranks)
    return tuple(draw(signed_perms(n)) for _ in range(3))


@st.composite
def involutions(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    return draw(st.sampled_from(list_involutions(n)))


@given(perm_triples())
def test_compose_associative(ws):
    a, b, c = ws
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


@given(perm_triples())
def test_compose_is_action(ws):
    a, b, _ = ws
    v = tuple(range(1, a.n + 1))
    assert act_on_vector(compose(a, b), v) == act_on_vector(a, act_on_vector(b, v))
    assert compose(a, inverse(a)) == compose(inverse(a), a)


@given(involutions(max_n=6))
def test_diagram_roundtrip(th):
    assert parse_diagram(render_diagram(th)) == th


@given(involutions(max_n=6))
def test_dual_length(th):
    n = th.n
    assert stats(dualize_involution(th)).length == n * (n + 1) // 2 - stats(th).length
    assert stats(th).length >= 0


@given(signed_perms())
def test_conjugation_preserves_class(w):
    for th in list_involutions(w.n)[:8]:
        assert conjugacy_invariants(conjugate(w, th)) == conjugacy_invariants(th)


@given(signed_perms())
def test_reduced_word(w):
    word = reduced_word(w)
    ow = tuple(((-1) ** w.bits[w.perm[i]], w.perm[i]) for i in range(w.n))
    assert len(word) == O.coxeter_length(ow)
    prod = SignedPerm((0,) * w.n, tuple(range(w.n)))
    for a in word:
        prod = compose(prod, reflection(a))
    assert prod == w


vec4 = st.lists(st.integers(0, 1), min_size=4, max_size=4).map(tuple)


@given(st.lists(vec4, max_size=4), st.lists(vec4, max_size=4))
def test_f2_intersection(us, vs):
    u, v = F2Space(4, us), F2Space(4, vs)
    assert set(u.intersect(v).elements()) == set(u.elements()) & set(v.elements())
    assert all(x in u for x in us)


@given(involutions(max_n=4), st.data())
def test_cross_grading_composes(th, data):
    imag = th.imaginary_coords
    nc = data.draw(st.sets(st.sampled_from(imag)) if imag else st.just(set()))
    eps = ImGrading(th, frozenset(nc))
    a = data.draw(signed_perms(th.n))
    b = data.draw(signed_perms(th.n))
    assert cross_grading(compose(a, b), eps) == cross_grading(a, cross_grading(b, eps))


# parameters at even rank

PATTERNS = [(a, b, c, d) for a in (0, 1) for b in (0, 1) for c in (0, 1) for d in (0, 1)]


@st.composite
def params4(draw):
    lam = canonical_rep(draw(st.sampled_from(PATTERNS)))
    p = draw(st.sampled_from([5, 6, 7, 8]))
    ps = enumerate_params(p, 9 - p, lam)
    if not ps:
        ps = enumerate_params(5, 4, canonical_rep((1, 0, 1, 0)))
    return draw(st.sampled_from(ps))


@settings(max_examples=40, deadline=None)
@given(params4(), st.data())
def test_cross_action_is_group_action(g, data):
    simples = simple_roots(4)
    word = data.draw(st.lists(st.sampled_from(simples), max_size=6))
    assert weyl_cross(list(word) + list(reversed(word)), g) == g
    ints = integral_roots(g.kappa)
    if ints:
        a = data.draw(st.sampled_from(ints))
        h = cross_param(a, g)
        assert cross_param(a, h) == g
        assert h.chi == g.chi


@settings(max_examples=40, deadline=None)
@given(params4())
def test_psi_properties(g):
    d = psi(g)
    assert psi(d) == g
    assert d.length == 10 - g.length
    assert d.bigrading == dual_bigrading(g.bigrading)
    if g.theta.imaginary_coords:
        assert central_char(g.theta, g.eps, g.kappa) == g.chi


@settings(max_examples=40, deadline=None)
@given(params4())
def test_psi_intertwines(g):
    for a in integral_roots(g.kappa):
        assert psi(cross_param(a, g)) == cross_param(a, psi(g))
    for a in positive_roots(4):
        if is_long(a) and a not in integral_roots(g.kappa):
            assert psi(ext_cross_param(a, g)) == ext_cross_param(a, psi(g))
        kind = root_type(g.theta, a)
        if kind == IMAGINARY and g.eps(a) == 1:
            assert {psi(h) for h in cayley_up(g, a)} == set(cayley_down(psi(g), a))
            for h in cayley_up(g, a):
                assert g in cayley_down(h, a)
        elif kind == REAL:
            for h in cayley_down(g, a):
                assert g in cayley_up(h, a)
