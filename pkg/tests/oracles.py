"""Independent slow oracles used to cross-check the library.

Nothing here imports the elimination code under test: ranks use plain
Fraction row reduction, torsion uses determinantal divisors or mod-p ranks and
homology uses dense boundary matrices built from scratch.  Large windows
use a separate sparse column reduction over a big prime field.
"""

from fractions import Fraction
from itertools import combinations, permutations
from math import gcd


def rank_fraction(rows):
    """Rank of a dense matrix by textbook Gaussian elimination over Q."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def det_fraction(rows):
    n = len(rows)
    if n == 0:
        return 1
    # Leibniz formula: fine for the tiny minors used here
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = 1
        for i in range(n):
            prod *= rows[i][perm[i]]
            if not prod:
                break
        total += sign * prod
    return total


def determinantal_invariants(rows):
    """Invariant factors d_k = D_k / D_{k-1}, with D_k the gcd of k x k minors."""
    if not rows or not rows[0]:
        return ()
    nr, nc = len(rows), len(rows[0])
    D = [1]
    for k in range(1, min(nr, nc) + 1):
        g = 0
        for ri in combinations(range(nr), k):
            for ci in combinations(range(nc), k):
                g = gcd(g, det_fraction([[rows[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        D.append(abs(g))
    return tuple(D[k] // D[k - 1] for k in range(1, len(D)))


def closure_of(simplices):
    out = set()
    for s in simplices:
        s = tuple(sorted(s))
        for k in range(1, len(s) + 1):
            out.update(combinations(s, k))
    return out


def boundary_dense(faces, cells):
    """Dense boundary matrix with alternating signs, built directly."""
    pos = {f: i for i, f in enumerate(faces)}
    M = [[0] * len(cells) for _ in faces]
    for j, s in enumerate(cells):
        for i in range(len(s)):
            M[pos[s[:i] + s[i + 1:]]][j] += (-1) ** i
    return M


def betti_q(simplices, reduced=False):
    """Rational Betti numbers of the closure of ``simplices``."""
    allsimp = closure_of(simplices)
    if not allsimp:
        return []
    top = max(len(s) for s in allsimp) - 1
    layers = [sorted(s for s in allsimp if len(s) == p + 1) for p in range(top + 1)]
    ranks = [0] * (top + 2)
    for p in range(1, top + 1):
        ranks[p] = rank_fraction(boundary_dense(layers[p - 1], layers[p]))
    if reduced:
        ranks[0] = 1 if layers[0] else 0
    return [len(layers[p]) - ranks[p] - ranks[p + 1] for p in range(top + 1)]


def graph_distances(adj):
    """All-pairs BFS distances of an adjacency list (dicts, missing = unreachable)."""
    dist = []
    for s in range(len(adj)):
        dd = {s: 0}
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if w not in dd:
                        dd[w] = dd[u] + 1
                        nxt.append(w)
            frontier = nxt
        dist.append(dd)
    return dist


def rips_brute(adj, d, max_dim):
    """All vertex sets of size <= max_dim + 1 with pairwise distance <= d.

    Every candidate set is tested pair by pair; the only pruning is that the
    other vertices must lie within d of the smallest one.
    """
    n = len(adj)
    dist = graph_distances(adj)
    out = set()
    for v in range(n):
        out.add((v,))
        near = sorted(w for w, k in dist[v].items() if w > v and k <= d)
        for k in range(1, max_dim + 1):
            for c in combinations(near, k):
                if all(dist[a].get(b, n + 1) <= d for a, b in combinations(c, 2)):
                    out.add((v,) + c)
    return out


def ball_brute(germ, r):
    """Vertices within r of the germ's root and the induced adjacency, by plain BFS."""
    seen = {germ.root: 0}
    order = [germ.root]
    for v in order:
        if seen[v] < r:
            for w in germ.neighbors(v):
                if w not in seen:
                    seen[w] = seen[v] + 1
                    order.append(w)
    pos = {v: i for i, v in enumerate(order)}
    adj = [sorted({pos[w] for w in germ.neighbors(v) if w in pos} - {i}) for i, v in enumerate(order)]
    return adj, [seen[v] for v in order]


def rank_mod_p(rows, p):
    """Rank over the field with p elements."""
    m = [[x % p for x in r] for r in rows]
    if not m:
        return 0
    rank = 0
    for c in range(len(m[0])):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        m[rank] = [(x * inv) % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def torsion_prime_counts(rows, primes=(2, 3, 5, 7)):
    """For each prime, how many invariant factors of ``rows`` it divides."""
    r = rank_fraction(rows)
    return {p: r - rank_mod_p(rows, p) for p in primes}


BIG_PRIME = 2_147_483_647


def sparse_rank_mod_p(columns, p=BIG_PRIME):
    """Rank over F_p of a matrix given as a list of {row: value} columns.

    Column reduction with a pivot table keyed by each column's lowest row.
    """
    pivots = {}
    rank = 0
    for col in columns:
        c = {i: v % p for i, v in col.items() if v % p}
        while c:
            low = max(c)
            if low not in pivots:
                pivots[low] = c
                rank += 1
                break
            other = pivots[low]
            f = c[low] * pow(other[low], p - 2, p) % p
            for i, v in other.items():
                x = (c.get(i, 0) - f * v) % p
                if x:
                    c[i] = x
                else:
                    c.pop(i, None)
    return rank


def boundary_columns(faces, cells):
    """Boundary of each cell as a sparse column over the face index."""
    pos = {f: i for i, f in enumerate(faces)}
    cols = []
    for s in cells:
        col = {}
        for i in range(len(s)):
            j = pos[s[:i] + s[i + 1:]]
            col[j] = col.get(j, 0) + (-1) ** i
        cols.append(col)
    return cols


def reduced_betti_mod_p(simplices, top, p=BIG_PRIME):
    """Reduced Betti numbers over F_p in degrees 0..top of a closed simplex set.

    Over a field the F_p Betti number bounds the Q Betti number from above,
    so zeros here certify rational acyclicity.
    """
    layers = [sorted(s for s in simplices if len(s) == k + 1) for k in range(top + 2)]
    ranks = [0] * (top + 3)
    ranks[0] = 1 if layers[0] else 0  # augmentation
    for k in range(1, top + 2):
        if layers[k]:
            ranks[k] = sparse_rank_mod_p(boundary_columns(layers[k - 1], layers[k]), p)
    return [len(layers[k]) - ranks[k] - ranks[k + 1] for k in range(top + 1)]


def fundamental_cycles(vertices, edges):
    """A basis of the cycle space of a graph: one cycle per non-tree edge of a BFS forest.

    Cycles are returned as {edge: coefficient} with edges as sorted pairs.
    """
    adj = {v: [] for v in vertices}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    parent, depth = {}, {}
    tree = set()
    for s in sorted(vertices):
        if s in parent:
            continue
        parent[s], depth[s] = None, 0
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for w in sorted(adj[u]):
                    if w not in parent:
                        parent[w], depth[w] = u, depth[u] + 1
                        tree.add((min(u, w), max(u, w)))
                        nxt.append(w)
            frontier = nxt

    cycles = []
    for a, b in sorted(edges):
        if (a, b) in tree:
            continue
        # cycle: a -> b along the edge, then b back to a through the tree
        z = {(a, b): 1}
        u, w = b, a
        back = {}
        while u != w:
            if depth[u] >= depth[w]:
                pu = parent[u]
                e = (min(u, pu), max(u, pu))
                z[e] = z.get(e, 0) + (1 if u < pu else -1)
                u = pu
            else:
                pw = parent[w]
                e = (min(w, pw), max(w, pw))
                back[e] = back.get(e, 0) + (1 if pw < w else -1)
                w = pw
        for e, c in back.items():
            z[e] = z.get(e, 0) + c
        cycles.append({e: c for e, c in z.items() if c})
    return cycles


def window_image_rank(germ, r, d, r2, d2, inner_radius, p=BIG_PRIME):
    """Rank over F_p of H_1(inner) -> H_1(Rips_d2(ball r2)), from scratch.

    The inner complex is the full subcomplex of Rips_d(ball r) on vertices of
    depth <= inner_radius; its 1-cycles are the fundamental cycles of its
    1-skeleton.  Image rank = rank[B | Z] - rank[B] with B the triangle
    boundaries of the target window.
    """
    adj, depth = ball_brute(germ, r)
    dist = graph_distances(adj)
    keep = [v for v in range(len(adj)) if depth[v] <= inner_radius]
    inner_edges = [(a, b) for a in keep for b in keep if a < b and dist[a].get(b, d + 1) <= d]
    Z = fundamental_cycles(keep, inner_edges)
    adj2, _ = ball_brute(germ, r2)
    # ball r is a BFS prefix of ball r2, so vertex ids agree
    target = rips_brute(adj2, d2, 2)
    edges2 = sorted(s for s in target if len(s) == 2)
    tris = sorted(s for s in target if len(s) == 3)
    B = boundary_columns(edges2, tris)
    pos = {e: i for i, e in enumerate(edges2)}
    Zc = [{pos[e]: c for e, c in z.items()} for z in Z]
    return len(Z), sparse_rank_mod_p(B + Zc, p) - sparse_rank_mod_p(B, p)
