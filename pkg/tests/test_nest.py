import itertools

import pytest
from hypothesis import assume, given, settings, strategies as st

from nestgraphs import graph as gr
from nestgraphs import nest
from nestgraphs.aut import are_isomorphic, canonical_form
from nestgraphs.perm import bsgs_build


@st.composite
def params(draw, max_n=14):
    n = draw(st.integers(4, max_n))
    a, b, c = draw(st.lists(st.integers(1, n - 1), min_size=3, max_size=3, unique=True))
    k = draw(st.integers(1, n - 1))
    assume(not (n % 2 == 0 and k == n // 2))
    return nest.validate(n, a, b, c, k)


# -- validate ---------------------------------------------------------------------

def test_valid():
    p = nest.validate(5, 1, 2, 3, 2)
    assert p.as_tuple() == (5, 1, 2, 3, 2)
    assert str(p) == "5,1,2,3,2"


@pytest.mark.parametrize("raw, err", [
    ((8, 1, 2, 4, 4), nest.HalfHubError),
    ((6, 2, 2, 3, 1), nest.NotDistinctError),
    ((6, 2, 8, 3, 1), nest.NotDistinctError),
    ((6, 0, 2, 3, 1), nest.NonZeroError),
    ((6, 1, 2, 3, 6), nest.NonZeroError),
    ((3, 1, 2, 0, 1), nest.ModulusError),
])
def test_invalid(raw, err):
    with pytest.raises(err):
        nest.validate(*raw)


def test_validate_reduces():
    assert nest.validate(7, 8, -1, 3, 9).as_tuple() == (7, 1, 6, 3, 2)


def test_parse_params():
    assert nest.parse_params("12,2,4,8,5") == nest.validate(12, 2, 4, 8, 5)
    with pytest.raises(nest.NestParamError):
        nest.parse_params("12,2,4")


# -- build ------------------------------------------------------------------------

def test_build_5():
    g = nest.build((5, 1, 2, 3, 2))
    assert (g.vertex_count, g.edge_count) == (10, 30)
    assert g.is_regular() and gr.is_connected(g)


def test_build_12_neighbourhoods():
    g = nest.build((12, 2, 4, 8, 5))
    u = lambda i: i % 12
    v = lambda i: 12 + i % 12
    assert set(g.adj[u(0)]) == {u(1), u(11), v(0), v(2), v(4), v(8)}
    assert set(g.adj[v(0)]) == {v(5), v(7), u(0), u(10), u(8), u(4)}


def test_edges_by_type():
    p = nest.validate(7, 1, 2, 4, 3)
    e = nest.edges(p)
    assert len(e) == 42
    assert gr.build(14, e) == nest.build(p)


@settings(max_examples=100, deadline=None)
@given(params(max_n=30))
def test_build_invariants(p):
    g = nest.build(p)
    assert g.is_regular() and g.degree(0) == 6
    assert g.edge_count == 6 * p.n
    assert g.is_automorphism(nest.rho(p))
    rim = g.induced_subgraph(range(p.n))
    assert rim == gr.cycle(p.n)
    masks = nest.adjacency_masks(p)
    assert tuple(masks) == g.masks


# -- rho / phi / eta ---------------------------------------------------------------

def test_rho_order():
    p = nest.validate(5, 1, 2, 3, 2)
    r = nest.rho(p)
    assert r.order() == 5
    assert nest.build(p).is_automorphism(r)


def test_eta_3():
    e = nest.eta(3)
    assert all(e[i] == i for i in range(6))
    assert all(e[6 + i] == 6 + (i + 3) % 6 for i in range(6))


def test_phi_3():
    assert nest.phi(3)[1] == 6  # u_1 -> v_0


@pytest.mark.parametrize("m", [3, 5, 7, 9, 11, 13])
def test_family_involutions(m):
    p = nest.family_params(m)
    g = nest.build(p)
    phi, eta, rho = nest.phi(m), nest.eta(m), nest.rho(p)
    assert g.is_automorphism(phi) and g.is_automorphism(eta)
    assert (phi * phi).is_identity() and (eta * eta).is_identity()
    grp = bsgs_build([rho, phi, eta])
    assert grp.order() == 48 * m
    stab = grp.point_stabilizer(0)
    assert stab.order() == 12
    # dihedral of order 12: generated by involutions whose product has order 6
    assert stab.orbit(0) == [0]


def test_family_stabilizer_is_dihedral_12():
    m = 5
    p = nest.family_params(m)
    stab = bsgs_build([nest.rho(p), nest.phi(m), nest.eta(m)]).point_stabilizer(0)
    elems = list(stab.elements())
    invols = [x for x in elems if not x.is_identity() and (x * x).is_identity()]
    assert any(bsgs_build([s, t]).order() == 12 and (s * t).order() == 6
               for s, t in itertools.combinations(invols, 2))
    assert sorted(x.order() for x in elems).count(6) == 2


@pytest.mark.parametrize("m", [2, 4, 1])
def test_family_mismatch(m):
    with pytest.raises(nest.NestParamError):
        nest.phi(m)
    with pytest.raises(nest.NestParamError):
        nest.eta(m)


def test_eta_outside_family():
    # any Nest(2m; a, m, a+m; k) admits eta
    for m, a, k in ((4, 1, 1), (6, 1, 5), (5, 3, 2)):
        p = nest.validate(2 * m, a, m, a + m, k)
        assert nest.build(p).is_automorphism(nest.eta(m, check_family=False))


# -- symmetric variants ------------------------------------------------------------

def test_variants_5():
    closure = nest.symmetric_variants((5, 1, 2, 3, 2))
    assert nest.validate(5, 4, 3, 2, 2) in closure
    assert nest.validate(5, 4, 1, 2, 2) in closure


@settings(max_examples=25, deadline=None)
@given(params(max_n=12))
def test_variants_closed_and_isomorphic(p):
    closure = nest.symmetric_variants(p)
    for q in closure:
        for raw in nest._maps(q):
            assert nest.validate(*raw) in closure
    cert = canonical_form(nest.build(p)).data
    for q in sorted(closure)[:12]:
        assert canonical_form(nest.build(q)).data == cert


@settings(max_examples=100, deadline=None)
@given(params(max_n=20))
def test_normalize_is_least_sorted_member(p):
    closure = nest.symmetric_variants(p)
    sorted_members = [q for q in closure if q.a < q.b < q.c and 2 * q.k <= q.n - 1]
    assert nest.normalize(p) == min(sorted_members)


# -- quotient_params ---------------------------------------------------------------

def test_quotient_params_examples():
    assert nest.quotient_params((16, 1, 3, 5, 7), 2) == nest.validate(8, 1, 3, 5, 7)
    assert nest.quotient_params((12, 2, 4, 8, 5), 2) is None
    assert nest.quotient_params((12, 2, 4, 8, 5), 3) is None


def test_quotient_params_errors():
    with pytest.raises(ValueError):
        nest.quotient_params((12, 2, 4, 8, 5), 5)
    with pytest.raises(ValueError):
        nest.quotient_params((12, 2, 4, 8, 5), 12)


def test_quotient_params_matches_graph_quotient():
    # orbits of C_2 on Nest(16;1,3,5;7) give the cover of Nest(8;1,3,5;7)
    from nestgraphs.symmetry import orbit_system
    p = nest.validate(16, 1, 3, 5, 7)
    part = orbit_system(p, 2)
    g = nest.build(p)
    assert gr.cover_index(g, part) == 1
    assert are_isomorphic(gr.quotient(g, part), nest.build(nest.quotient_params(p, 2))) is not None
