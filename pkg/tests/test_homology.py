import pytest
from hypothesis import given

from oracles import betti_q, boundary_dense, closure_of, torsion_prime_counts
from strategies import complexes, simplex_lists
from tdlc.complex import SimplicialComplex, chain_complex, cone, freudenthal_torus
from tdlc.errors import InputError
from tdlc.homology import homology, induced_map, map_is_trivial, simplicial_homology

C4 = SimplicialComplex.from_simplices([[0, 1], [1, 2], [2, 3], [0, 3]])
RP2 = SimplicialComplex.from_simplices([
    [0, 1, 3], [1, 2, 3], [0, 2, 4], [2, 3, 4], [0, 3, 5], [3, 4, 5], [1, 4, 5], [0, 1, 4], [1, 2, 5], [0, 2, 5],
])
INNER = SimplicialComplex.from_simplices([[0, 1], [1, 2], [0, 2]])
ANNULUS = SimplicialComplex.from_simplices([[0, 1, 3], [1, 3, 4], [1, 2, 4], [2, 4, 5], [0, 2, 5], [0, 3, 5]])


def test_examples():
    assert str(simplicial_homology(C4, "Z")) == "H0=Z, H1=Z"
    H = simplicial_homology(RP2, "Z")
    assert H.betti == (1, 0, 0) and H.torsion == ((), (2,), ())
    assert str(H) == "H0=Z, H1=Z/2, H2=0"
    pt = SimplicialComplex.from_simplices([[0]])
    assert simplicial_homology(pt, "Z", reduced=True).betti == (0,)


def test_rp2_over_q_has_no_torsion():
    H = simplicial_homology(RP2, "Q")
    assert H.betti == (1, 0, 0) and all(t == () for t in H.torsion)


def _prime_profile(K):
    """Per degree, how many torsion summands each small prime divides (mod-p ranks)."""
    tops = [s for p in range(K.dim + 1) for s in K.simplices(p)]
    allsimp = closure_of(tops)
    layers = [sorted(s for s in allsimp if len(s) == p + 1) for p in range(K.dim + 1)]
    out = []
    for p in range(K.dim + 1):
        if p + 1 <= K.dim:
            out.append(torsion_prime_counts(boundary_dense(layers[p], layers[p + 1])))
        else:
            out.append({q: 0 for q in (2, 3, 5, 7)})
    return out


def _profile_of(torsion):
    return [{q: sum(1 for t in ts if t % q == 0) for q in (2, 3, 5, 7)} for ts in torsion]


def test_rp2_torsion_matches_oracle():
    assert _profile_of(simplicial_homology(RP2, "Z").torsion) == _prime_profile(RP2)


@given(complexes(n_vertices=6))
def test_torsion_matches_mod_p_ranks(K):
    assert _profile_of(simplicial_homology(K, "Z").torsion) == _prime_profile(K)


def test_torus():
    T = freudenthal_torus(2)
    assert simplicial_homology(T, "Z").betti == (1, 2, 1)
    assert simplicial_homology(T, "Z").torsion == ((), (), ())


@given(simplex_lists())
def test_betti_matches_oracle(tops):
    K = SimplicialComplex.from_simplices(tops)
    assert list(simplicial_homology(K, "Q").betti) == betti_q(tops)
    assert list(simplicial_homology(K, "Q", reduced=True).betti) == betti_q(tops, reduced=True)


@given(complexes())
def test_reduced_vs_unreduced(K):
    for ring in ("Z", "Q"):
        H = simplicial_homology(K, ring)
        R = simplicial_homology(K, ring, reduced=True)
        assert H.betti[0] == R.betti[0] + 1
        assert H.betti[1:] == R.betti[1:]
        assert H.torsion == R.torsion


@given(complexes())
def test_q_betti_equals_z_betti(K):
    assert simplicial_homology(K, "Q").betti == simplicial_homology(K, "Z").betti
    assert all(t == () for t in simplicial_homology(K, "Q").torsion)


def test_induced_map_examples():
    m = induced_map(C4, cone(C4), 1)
    assert m.trivial and m.source_betti == 1 and m.target_betti == 0
    m = induced_map(C4, C4, 1)
    assert not m.trivial and m.matrix == ((1,),)
    assert not induced_map(INNER, ANNULUS, 1).trivial
    assert not induced_map(INNER, ANNULUS, 1, ring="Z").trivial
    with pytest.raises(InputError):
        induced_map(cone(C4), C4, 1)


def test_annulus_boundary_brute_force():
    # the inner circle is a cycle that is not in the column span of d2
    from oracles import rank_fraction

    edges = ANNULUS.simplices(1)
    D2 = boundary_dense(edges, ANNULUS.simplices(2))
    z = [0] * len(edges)
    for (a, b), s in (((0, 1), 1), ((1, 2), 1), ((0, 2), -1)):
        z[edges.index((a, b))] = s
    aug = [row + [z[i]] for i, row in enumerate(D2)]
    assert rank_fraction(aug) == rank_fraction(D2) + 1


def test_torsion_class_over_z():
    # the RP^1 loop is nontrivial over Z (order 2) but a Q-boundary
    loop = RP2.skeleton(1)
    n, q_triv = map_is_trivial(loop, RP2, 1, "Q")
    _, z_triv = map_is_trivial(loop, RP2, 1, "Z")
    assert n == simplicial_homology(loop, "Q").betti[1] > 0
    assert q_triv and not z_triv


@given(complexes())
def test_identity_map_nontrivial_iff_homology(K):
    for p in range(K.dim + 1):
        b = simplicial_homology(K, "Q").betti[p]
        n, triv = map_is_trivial(K, K, p, "Q")
        assert n == b and triv == (b == 0)


@given(complexes())
def test_triviality_composes(K):
    L = cone(K)
    M = cone(L)
    for p in range(1, K.dim + 1):
        _, kl = map_is_trivial(K, L, p)
        _, km = map_is_trivial(K, M, p)
        assert kl and km


def test_homology_of_chain_complex_directly():
    C = chain_complex(C4, "Z", augmented=True)
    H = homology(C)
    assert H.reduced and H.betti == (0, 1)
