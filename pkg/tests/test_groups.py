import pytest
from hypothesis import given, strategies as st

from tdlc.errors import InputError
from tdlc.groups import (
    PermGroup,
    all_perms,
    alternating,
    brute_force_group,
    catalogue,
    cyclic,
    dihedral,
    group_from_json,
    inv,
    mul,
    symmetric,
)

EXPECTED_ORDERS = {
    "C1": 1, "C2": 2, "C3": 3, "C4": 4, "C5": 5, "C6": 6, "C7": 7, "C8": 8, "V4": 4, "S3": 6, "C4xC2": 8,
    "C2^3": 8, "D4": 8, "Q8": 8, "C3xC3": 9, "D5": 10, "A4": 12, "D6": 12, "Dic3": 12, "C2xC6": 12,
    "S4": 24, "SL(2,3)": 24, "S3xC4": 24,
}


def test_catalogue_orders_against_brute_force():
    cat = catalogue()
    assert {n: G.order for n, G in cat.items()} == EXPECTED_ORDERS
    for G in cat.values():
        assert G.element_set == brute_force_group(G.degree, G.generators)


def _abelian(G):
    return all(mul(a, b) == mul(b, a) for a in G.generators for b in G.generators)


def test_catalogue_isomorphism_types_distinct():
    # element-order statistics separate the listed groups of equal order
    def order_of(g, G):
        k, x = 1, g
        while x != G.identity:
            x = mul(x, g)
            k += 1
        return k

    sigs = {}
    for name, G in catalogue().items():
        sig = (G.order, _abelian(G), tuple(sorted(order_of(g, G) for g in G.elements)))
        assert sig not in sigs.values(), name
        sigs[name] = sig


def test_subgroup_counts():
    assert len(symmetric(3).all_subgroups()) == 6
    assert len(symmetric(4).all_subgroups()) == 30
    assert len(alternating(4).all_subgroups()) == 10
    assert len(dihedral(4).all_subgroups()) == 10


def test_all_subgroups_are_subgroups_and_lagrange():
    G = symmetric(4)
    for S in G.all_subgroups():
        assert G.is_subgroup(S)
        assert G.order % len(S) == 0


@given(st.sampled_from(all_perms(4)), st.sampled_from(all_perms(4)), st.sampled_from(all_perms(4)))
def test_product_is_associative_and_left_to_right(a, b, c):
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    # a first, then b
    assert all(mul(a, b)[i] == b[a[i]] for i in range(4))
    assert mul(a, inv(a)) == tuple(range(4))


def test_cosets():
    G = symmetric(3)
    U = G.subgroup([(1, 0, 2)])
    reps = G.left_coset_reps(U)
    assert len(reps) == 3
    for x in G.elements:
        r = G.left_coset_rep(x, U)
        assert r in reps and r == min(mul(x, u) for u in U)


def test_normality():
    G = symmetric(3)
    assert G.is_normal(G.subgroup([(1, 2, 0)]))
    assert not G.is_normal(G.subgroup([(1, 0, 2)]))


def test_group_json_errors():
    with pytest.raises(InputError):
        group_from_json({"degree": 3})
    with pytest.raises(InputError):
        group_from_json({"degree": 3, "generators": [[0, 0, 1]]})
    with pytest.raises(InputError):
        group_from_json({"degree": 0, "generators": []})
    assert group_from_json({"degree": 2, "generators": []}).order == 1


def test_element_check():
    with pytest.raises(InputError):
        cyclic(3).element((1, 0, 2))
    assert PermGroup(3, [(1, 2, 0)]).order == 3
