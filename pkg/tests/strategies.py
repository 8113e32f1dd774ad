"""Shared hypothesis strategies."""

import random

from hypothesis import strategies as st

from tdlc.complex import SimplicialComplex


def simplex_lists(n_vertices=7, max_size=4, max_count=12):
    simplex = st.sets(st.integers(0, n_vertices - 1), min_size=1, max_size=max_size).map(sorted)
    return st.lists(simplex, min_size=1, max_size=max_count)


def complexes(**kw):
    return simplex_lists(**kw).map(SimplicialComplex.from_simplices)


def random_complex(seed, n_vertices=8, max_size=4, count=10):
    """Seeded random complex for exhaustive (non-hypothesis) sweeps."""
    rng = random.Random(seed)
    tops = []
    for _ in range(rng.randint(1, count)):
        k = rng.randint(1, max_size)
        tops.append(sorted(rng.sample(range(n_vertices), k)))
    return SimplicialComplex.from_simplices(tops)
