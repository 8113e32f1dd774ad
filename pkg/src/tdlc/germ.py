"""Graph germs: deterministic, lazily expandable locally finite graphs.

A germ knows its root and how to list the neighbours of any vertex address.
Addresses are canonical hashable tuples, so equality of addresses is equality
of vertices.  :func:`ball` extracts a finite window with BFS-ordered IDs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import InputError, ResourceLimitError

MODULE = "germ"

DEFAULT_VERTEX_CAP = 200_000


class GraphGerm:
    """Base class.  Subclasses define ``root``, ``neighbors`` and ``degree_bound``."""

    kind = "abstract"

    def neighbors(self, v):
        raise NotImplementedError

    @property
    def root(self):
        raise NotImplementedError

    @property
    def degree_bound(self):
        raise NotImplementedError

    def spec(self):
        return self.kind

    def __repr__(self):
        return f"{type(self).__name__}({self.spec()})"


def _need_int(name, v, lo):
    if not isinstance(v, int) or isinstance(v, bool) or v < lo:
        raise InputError(MODULE, f"{name} must be an integer >= {lo}, got {v!r}")


class RegularTree(GraphGerm):
    """The d-regular tree as the Cayley graph of a free product of d copies of C2.

    Vertices are reduced words over the involutions ``0..d-1`` (no letter twice
    in a row).
    """

    kind = "tree"

    def __init__(self, d):
        _need_int("d", d, 2)
        self.d = d

    @property
    def root(self):
        return ()

    @property
    def degree_bound(self):
        return self.d

    def neighbors(self, w):
        out = []
        for a in range(self.d):
            out.append(w[:-1] if w and w[-1] == a else w + (a,))
        return sorted(out)

    def spec(self):
        return f"tree:{self.d}"


class BiregularTree(GraphGerm):
    """The (d1, d2)-biregular tree.  The root has degree d1.

    A vertex is the word of child indices leading to it from the root; at
    even depth it has degree d1, at odd depth d2.
    """

    kind = "bitree"

    def __init__(self, d1, d2):
        _need_int("d1", d1, 2)
        _need_int("d2", d2, 2)
        self.d1, self.d2 = d1, d2

    @property
    def root(self):
        return ()

    @property
    def degree_bound(self):
        return max(self.d1, self.d2)

    def neighbors(self, w):
        deg = self.d1 if len(w) % 2 == 0 else self.d2
        nchild = deg if not w else deg - 1
        out = [w + (c,) for c in range(nchild)]
        if w:
            out.append(w[:-1])
        return sorted(out)

    def spec(self):
        return f"bitree:{self.d1},{self.d2}"


class Grid(GraphGerm):
    """The standard Cayley graph of Z^m."""

    kind = "grid"

    def __init__(self, m):
        _need_int("m", m, 1)
        self.m = m

    @property
    def root(self):
        return (0,) * self.m

    @property
    def degree_bound(self):
        return 2 * self.m

    def neighbors(self, v):
        out = []
        for i in range(self.m):
            for s in (-1, 1):
                w = list(v)
                w[i] += s
                out.append(tuple(w))
        return sorted(out)

    def spec(self):
        return f"grid:{self.m}"


class FreeGroup(GraphGerm):
    """Cayley graph of the free group on ``rank`` letters; letters are +-(i+1)."""

    kind = "free"

    def __init__(self, rank):
        _need_int("rank", rank, 1)
        self.rank = rank

    @property
    def root(self):
        return ()

    @property
    def degree_bound(self):
        return 2 * self.rank

    def neighbors(self, w):
        out = []
        for i in range(1, self.rank + 1):
            for x in (i, -i):
                out.append(w[:-1] if w and w[-1] == -x else w + (x,))
        return sorted(out)

    def spec(self):
        return f"free:{self.rank}"


def _horo_parent(v):
    h, ds = v
    return (h + 1, ds[:-1]) if ds else (h + 1, ())


def _horo_children(v, q):
    h, ds = v
    out = []
    for c in range(q):
        if not ds and c == 0:
            out.append((h - 1, ()))
        else:
            out.append((h - 1, ds + (c,)))
    return out


class DiestelLeader(GraphGerm):
    """Horocyclic product of the (p+1)- and (q+1)-regular trees.

    Each tree is drawn with a fixed end; a tree vertex is ``(height, digits)``
    where ``(height, ())`` runs along a fixed bi-infinite spine and ``digits``
    (first digit non-zero) is the path down from the spine.  A vertex of the
    product is ``(h, a, b)``: the first tree vertex ``(h, a)`` and the second
    ``(-h, b)``.  An edge moves up in one tree and down in the other.
    DL(2, 2) is the Cayley graph of the lamplighter group C2 wr Z.
    """

    kind = "dl"

    def __init__(self, p, q):
        _need_int("p", p, 2)
        _need_int("q", q, 2)
        self.p, self.q = p, q

    @property
    def root(self):
        return (0, (), ())

    @property
    def degree_bound(self):
        return self.p + self.q

    def neighbors(self, v):
        h, a, b = v
        out = []
        # first tree up, second tree down (q choices)
        up1 = _horo_parent((h, a))
        for y in _horo_children((-h, b), self.q):
            out.append((up1[0], up1[1], y[1]))
        # first tree down (p choices), second tree up
        up2 = _horo_parent((-h, b))
        for x in _horo_children((h, a), self.p):
            out.append((x[0], x[1], up2[1]))
        return sorted(out)

    def spec(self):
        return f"dl:{self.p},{self.q}"


class FiniteGraph(GraphGerm):
    """An explicit connected graph on vertices ``0..n-1``; root is 0."""

    kind = "file"

    def __init__(self, n, edges, source=None):
        _need_int("vertex count", n, 1)
        adj = [set() for _ in range(n)]
        for e in edges:
            if len(e) != 2:
                raise InputError(MODULE, f"edge {e!r} must have two endpoints")
            i, j = e
            for x in (i, j):
                if not isinstance(x, int) or not 0 <= x < n:
                    raise InputError(MODULE, f"edge endpoint {x!r} out of range 0..{n - 1}")
            if i != j:
                adj[i].add(j)
                adj[j].add(i)
        self.n = n
        self.adj = [sorted(s) for s in adj]
        self.source = source
        seen = {0}
        todo = [0]
        while todo:
            v = todo.pop()
            for w in self.adj[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        if len(seen) != n:
            raise InputError(MODULE, "finite graph is not connected")

    @classmethod
    def from_json(cls, data, source=None):
        try:
            return cls(data["vertices"], data["edges"], source=source)
        except (KeyError, TypeError) as exc:
            raise InputError(MODULE, f"bad graph JSON: {exc}") from None

    @classmethod
    def load(cls, path):
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, ValueError) as exc:
            raise InputError(MODULE, f"cannot read graph file {path}: {exc}") from None
        return cls.from_json(data, source=str(path))

    @property
    def root(self):
        return 0

    @property
    def degree_bound(self):
        return max((len(a) for a in self.adj), default=0)

    def neighbors(self, v):
        return list(self.adj[v])

    def spec(self):
        return f"file:{self.source}" if self.source else f"finite:{self.n}"


class Product(GraphGerm):
    """Cartesian product of two germs."""

    kind = "product"

    def __init__(self, left, right):
        self.left, self.right = left, right

    @property
    def root(self):
        return (self.left.root, self.right.root)

    @property
    def degree_bound(self):
        return self.left.degree_bound + self.right.degree_bound

    def neighbors(self, v):
        a, b = v
        out = [(x, b) for x in self.left.neighbors(a)]
        out += [(a, y) for y in self.right.neighbors(b)]
        return sorted(out)

    def spec(self):
        return f"({self.left.spec()})x({self.right.spec()})"


@dataclass(frozen=True)
class Ball:
    """A finite window: vertices in BFS order, symmetric adjacency, depths."""

    vertices: tuple
    adjacency: tuple  # sorted neighbour-ID tuples
    depth: tuple
    r: int
    index: dict = field(repr=False, compare=False, default=None)

    def __post_init__(self):
        if self.index is None:
            object.__setattr__(self, "index", {v: i for i, v in enumerate(self.vertices)})

    @property
    def n(self):
        return len(self.vertices)

    @property
    def edges(self):
        return [(i, j) for i, nb in enumerate(self.adjacency) for j in nb if i < j]

    def id_of(self, address):
        try:
            return self.index[address]
        except KeyError:
            raise InputError(MODULE, f"address {address!r} not in ball") from None

    def distances_from(self, u, limit=None):
        """BFS distances inside the ball from vertex u, optionally truncated."""
        if not 0 <= u < self.n:
            raise InputError(MODULE, f"unknown vertex ID {u}")
        dist = {u: 0}
        frontier = [u]
        k = 0
        while frontier and (limit is None or k < limit):
            k += 1
            nxt = []
            for v in frontier:
                for w in self.adjacency[v]:
                    if w not in dist:
                        dist[w] = k
                        nxt.append(w)
            frontier = nxt
        return dist

    @classmethod
    def from_graph(cls, labels, adjacency, root=0):
        """Renumber an explicit connected graph by BFS from ``root``."""
        order = [root]
        seen = {root: 0}
        depth = [0]
        for v in order:
            for w in sorted(adjacency[v], key=lambda x: labels[x]):
                if w not in seen:
                    seen[w] = len(order)
                    order.append(w)
                    depth.append(depth[seen[v]] + 1)
        if len(order) != len(labels):
            raise InputError(MODULE, "graph is not connected")
        adj = tuple(tuple(sorted(seen[w] for w in adjacency[v] if w != v)) for v in order)
        return cls(tuple(labels[v] for v in order), adj, tuple(depth), max(depth))


def ball(germ, r, cap=DEFAULT_VERTEX_CAP):
    """Radius-r ball around the germ's root, IDs assigned in BFS order."""
    if not isinstance(r, int) or r < 0:
        raise InputError(MODULE, f"radius must be a non-negative integer, got {r!r}")
    root = germ.root
    index = {root: 0}
    vertices = [root]
    depth = [0]
    nbrs = []
    head = 0
    while head < len(vertices):
        v = vertices[head]
        dv = depth[head]
        ns = germ.neighbors(v)
        nbrs.append(ns)
        if dv < r:
            for w in ns:
                if w not in index:
                    if len(vertices) >= cap:
                        raise ResourceLimitError(MODULE, f"ball exceeds vertex cap {cap}")
                    index[w] = len(vertices)
                    vertices.append(w)
                    depth.append(dv + 1)
        head += 1
    adjacency = []
    for i, ns in enumerate(nbrs):
        ids = sorted({index[w] for w in ns if w in index} - {i})
        adjacency.append(tuple(ids))
    if isinstance(germ, FiniteGraph):
        r = min(r, max(depth))
    return Ball(tuple(vertices), tuple(adjacency), tuple(depth), r, index)


def distance(b, u, v):
    """Graph distance inside the ball (may exceed the germ distance near the rim)."""
    for x in (u, v):
        if not isinstance(x, int) or not 0 <= x < b.n:
            raise InputError(MODULE, f"unknown vertex ID {x!r}")
    d = b.distances_from(u).get(v)
    if d is None:
        raise InputError(MODULE, f"vertices {u} and {v} are not connected in the ball")
    return d


def parse_germ(text):
    """Parse ``tree:3``, ``bitree:3,4``, ``grid:2``, ``free:2``, ``dl:2,2`` or ``file:PATH``."""
    if not isinstance(text, str) or ":" not in text:
        raise InputError(MODULE, f"cannot parse germ spec {text!r}")
    kind, _, arg = text.partition(":")
    if kind == "file":
        return FiniteGraph.load(arg)
    try:
        nums = [int(x) for x in arg.split(",")]
    except ValueError:
        raise InputError(MODULE, f"cannot parse germ parameters in {text!r}") from None
    table = {"tree": (RegularTree, 1), "bitree": (BiregularTree, 2), "grid": (Grid, 1),
             "free": (FreeGroup, 1), "dl": (DiestelLeader, 2)}
    if kind not in table:
        raise InputError(MODULE, f"unknown germ kind {kind!r}")
    cls, arity = table[kind]
    if len(nums) != arity:
        raise InputError(MODULE, f"germ kind {kind!r} takes {arity} parameter(s)")
    return cls(*nums)


@dataclass
class WreathSpec:
    """Finite data for the wreath product of B by H over the H-set X.

    ``B`` and ``H`` are :class:`~tdlc.groups.PermGroup` instances, ``A`` is a
    list of generators of a subgroup of B and ``action[k]`` is the
    permutation of X (as indices) induced by the k-th generator of H.
    """

    B: object
    A: list
    H: object
    X: list
    action: list

    def __post_init__(self):
        from .groups import check_perm

        for a in self.A:
            if tuple(a) not in self.B:
                raise InputError(MODULE, f"A-generator {list(a)} is not in B")
        if len(self.action) != len(self.H.generators):
            raise InputError(MODULE, "action table needs one permutation of X per H-generator")
        self.action = [check_perm(p, len(self.X)) for p in self.action]
        self.x_image = _validate_action(self.H, self.action, len(self.X))


def _validate_action(H, action, nx):
    """Map every element of H to its permutation of X; fails if the table
    does not extend to a homomorphism."""
    from .groups import mul

    e = H.identity
    image = {e: tuple(range(nx))}
    frontier = [e]
    while frontier:
        nxt = []
        for h in frontier:
            for g, px in zip(H.generators, action):
                k = mul(g, h)
                img = mul(px, image[h])
                old = image.get(k)
                if old is None:
                    image[k] = img
                    nxt.append(k)
                elif old != img:
                    raise InputError(MODULE, "action table is not a group action of H on X")
        frontier = nxt
    return image


def wreath_from_json(data):
    from .groups import group_from_json

    try:
        B = group_from_json(data["B"])
        H = group_from_json(data["H"])
        X = list(data["X"]["points"])
        action = data["X"]["action"]
        A = data.get("A", [])
        U = data.get("U", [])
    except (KeyError, TypeError) as exc:
        raise InputError(MODULE, f"bad wreath JSON: missing {exc}") from None
    return WreathSpec(B, A, H, X, action), U


def wreath_cayley_abels(spec, U_gens=()):
    """Cayley-Abels graph of G = B^X semidirect H on the cosets of K = A^X semidirect U.

    G acts faithfully on the points ``(x, w)`` of X x Omega_B (numbered
    ``x * deg_B + w``) followed by the points of Omega_H, via
    ``(f, h).(x, w) = (h x, f(h x) w)``.  Vertex gK is joined to g k s K
    for k in K and s a generator or inverse generator, so G acts on the
    graph by left multiplication with stabilisers conjugate to K.
    """
    from .groups import closure, inv, mul

    B, H = spec.B, spec.H
    nx, nb, nh = len(spec.X), B.degree, H.degree
    deg = nx * nb + nh
    for u in U_gens:
        if tuple(u) not in H:
            raise InputError(MODULE, f"U-generator {list(u)} is not in H")

    def embed(f, h):
        xp = spec.x_image[h]
        p = [0] * deg
        for x in range(nx):
            hx = xp[x]
            for w in range(nb):
                p[x * nb + w] = hx * nb + f[hx][w]
        for o in range(nh):
            p[nx * nb + o] = nx * nb + h[o]
        return tuple(p)

    eB, eH = B.identity, H.identity

    def coord(x, b):
        return [b if y == x else eB for y in range(nx)]

    # one copy of each B-generator per H-orbit of X
    orbit_reps, seen = [], set()
    for x in range(nx):
        if x not in seen:
            orbit_reps.append(x)
            seen |= {img[x] for img in spec.x_image.values()}
    gens = [embed(coord(x, b), eH) for x in orbit_reps for b in B.generators]
    gens += [embed([eB] * nx, h) for h in H.generators]
    gens = [g for g in gens if g != tuple(range(deg))]

    k_gens = [embed(coord(x, tuple(a)), eH) for x in range(nx) for a in spec.A]
    k_gens += [embed([eB] * nx, tuple(u)) for u in U_gens]
    K = closure(k_gens, deg)
    A_order = len(closure([tuple(a) for a in spec.A], nb))
    U_order = len(closure([tuple(u) for u in U_gens], nh))
    if len(K) != A_order ** nx * U_order:
        raise InputError(MODULE, "A^X semidirect U is not a subgroup of the expected order")

    K_sorted = sorted(K)
    steps = sorted(set(gens) | {inv(g) for g in gens})

    def key(g):
        return min(mul(g, k) for k in K_sorted)

    e = tuple(range(deg))
    root = key(e)
    labels = [root]
    index = {root: 0}
    adjacency = [set()]
    head = 0
    while head < len(labels):
        g = labels[head]
        for k in K_sorted:
            gk = mul(g, k)
            for s in steps:
                c = key(mul(gk, s))
                if c not in index:
                    index[c] = len(labels)
                    labels.append(c)
                    adjacency.append(set())
                j = index[c]
                if j != head:
                    adjacency[head].add(j)
                    adjacency[j].add(head)
        head += 1
    return Ball.from_graph(labels, adjacency, root=0)
