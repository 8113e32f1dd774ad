"""Exact sparse linear algebra over the integers and the rationals.

Everything here uses Python integers (arbitrary precision) and
``fractions.Fraction``; there is no floating point and no modular shortcut.

Two elimination engines live in this module:

* :func:`smith` computes a full Smith normal form ``U @ A @ V = diag(D)`` with
  the unimodular transforms and their inverses.  It is meant for small and
  medium matrices (a few hundred rows/columns).
* :func:`invariant_factors` computes only the invariant factors.  It first
  eliminates every available +-1 pivot (Markowitz order on the sparse
  pattern), which is exact over Z, and runs the dense Smith reduction on the
  small residual.  Boundary matrices of simplicial complexes are almost
  entirely reduced by the first phase.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import InputError, ResourceLimitError

MODULE = "exact-linalg"

DEFAULT_FILL_CAP = 20_000_000


def _as_int(v):
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    raise InputError(MODULE, f"expected an integer entry, got {v!r}")


class SparseMatrix:
    """A rows x cols matrix stored as ``{(row, col): value}`` without zeros."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise InputError(MODULE, "matrix dimensions must be non-negative")
        self.rows = rows
        self.cols = cols
        clean = {}
        if entries:
            if isinstance(entries, dict):
                items = [(i, j, v) for (i, j), v in entries.items()]
            else:
                items = entries
            for i, j, v in items:
                if not (0 <= i < rows and 0 <= j < cols):
                    raise InputError(MODULE, f"index ({i}, {j}) out of range for {rows}x{cols}")
                if (i, j) in clean:
                    raise InputError(MODULE, f"duplicate entry at ({i}, {j})")
                if v:
                    clean[(i, j)] = v
        self.entries = clean

    @classmethod
    def from_dense(cls, dense, cols=None):
        dense = [list(r) for r in dense]
        n = cols if cols is not None else (len(dense[0]) if dense else 0)
        return cls(len(dense), n, {(i, j): v for i, r in enumerate(dense) for j, v in enumerate(r) if v})

    @classmethod
    def from_columns(cls, rows, columns):
        m = cls(rows, len(columns))
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    if not 0 <= i < rows:
                        raise InputError(MODULE, f"row index {i} out of range")
                    m.entries[(i, j)] = v
        return m

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def nnz(self):
        return len(self.entries)

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def columns(self):
        cols = [dict() for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            cols[j][i] = v
        return cols

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def transpose(self):
        return SparseMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def hstack(self, other):
        if other.rows != self.rows:
            raise InputError(MODULE, "hstack needs equal row counts")
        ent = dict(self.entries)
        ent.update({(i, j + self.cols): v for (i, j), v in other.entries.items()})
        return SparseMatrix(self.rows, self.cols + other.cols, ent)

    def matvec(self, x):
        if len(x) != self.cols:
            raise InputError(MODULE, f"vector of length {len(x)} for {self.rows}x{self.cols} matrix")
        out = [0] * self.rows
        for (i, j), v in self.entries.items():
            if x[j]:
                out[i] += v * x[j]
        return out

    def __matmul__(self, other):
        if isinstance(other, SparseMatrix):
            if self.cols != other.rows:
                raise InputError(MODULE, f"cannot multiply {self.shape} by {other.shape}")
            right_rows = other.row_dicts()
            acc = {}
            for (i, k), v in self.entries.items():
                for j, w in right_rows[k].items():
                    acc[(i, j)] = acc.get((i, j), 0) + v * w
            return SparseMatrix(self.rows, other.cols, acc)
        return self.matvec(list(other))

    def __eq__(self, other):
        return (
            isinstance(other, SparseMatrix)
            and self.shape == other.shape
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == diag(invariants)`` padded with zeros to ``A.shape``."""

    invariants: tuple
    U: SparseMatrix
    V: SparseMatrix
    U_inv: SparseMatrix | None = None
    V_inv: SparseMatrix | None = None

    @property
    def rank(self):
        return len(self.invariants)

    def diagonal_matrix(self):
        return SparseMatrix(self.U.rows, self.V.cols, {(t, t): d for t, d in enumerate(self.invariants)})


def _axpy(dst, src, c):
    """dst += c * src for dict vectors, keeping dst free of zeros."""
    for k, v in src.items():
        nv = dst.get(k, 0) + c * v
        if nv:
            dst[k] = nv
        else:
            dst.pop(k, None)


def _lin2(vecs, s, t, a, b, c, d):
    """Replace (v_s, v_t) by (a v_s + b v_t, c v_s + d v_t)."""
    vs, vt = vecs[s], vecs[t]
    if isinstance(vs, list):
        vecs[s] = [a * x + b * y for x, y in zip(vs, vt)]
        vecs[t] = [c * x + d * y for x, y in zip(vs, vt)]
        return
    new_s, new_t = {}, {}
    for k in vs.keys() | vt.keys():
        x, y = vs.get(k, 0), vt.get(k, 0)
        p, q = a * x + b * y, c * x + d * y
        if p:
            new_s[k] = p
        if q:
            new_t[k] = q
    vecs[s], vecs[t] = new_s, new_t


class _Reducer:
    """Row/column elimination on a sparse integer matrix, optionally tracking
    the unimodular transforms and their inverses."""

    def __init__(self, rows, cols, row_dicts, track, inverses=False):
        self.m, self.n = rows, cols
        self.rows = row_dicts
        self.cols = [set() for _ in range(cols)]
        for i, r in enumerate(row_dicts):
            for j in r:
                self.cols[j].add(i)
        self.track = track
        self.inverses = track and inverses
        if track:
            self.U = [{i: 1} for i in range(rows)]  # rows of U
            self.V = [{j: 1} for j in range(cols)]  # columns of V
        if self.inverses:
            self.Ui = [{i: 1} for i in range(rows)]  # columns of U^-1
            self.Vi = [{j: 1} for j in range(cols)]  # rows of V^-1

    def row_add(self, a, b, c):
        """row_a += c * row_b"""
        ra = self.rows[a]
        for j, v in self.rows[b].items():
            nv = ra.get(j, 0) + c * v
            if nv:
                if j not in ra:
                    self.cols[j].add(a)
                ra[j] = nv
            elif j in ra:
                del ra[j]
                self.cols[j].discard(a)
        if self.track:
            _axpy(self.U[a], self.U[b], c)
        if self.inverses:
            _axpy(self.Ui[b], self.Ui[a], -c)

    def col_add(self, a, b, c):
        """col_a += c * col_b"""
        for i in list(self.cols[b]):
            r = self.rows[i]
            nv = r.get(a, 0) + c * r[b]
            if nv:
                if a not in r:
                    self.cols[a].add(i)
                r[a] = nv
            elif a in r:
                del r[a]
                self.cols[a].discard(i)
        if self.track:
            _axpy(self.V[a], self.V[b], c)
        if self.inverses:
            _axpy(self.Vi[b], self.Vi[a], -c)

    def value(self, i, j):
        return self.rows[i][j]

    def row_negate(self, a):
        r = self.rows[a]
        for j in r:
            r[j] = -r[j]
        if self.track:
            self.U[a] = {k: -v for k, v in self.U[a].items()}
        if self.inverses:
            self.Ui[a] = {k: -v for k, v in self.Ui[a].items()}

    def _pick(self, active_rows):
        best = None
        # smallest |value| first, then Markowitz fill-in estimate
        for i in active_rows:
            r = self.rows[i]
            if not r:
                continue
            lr = len(r) - 1
            for j, v in r.items():
                key = (abs(v), lr * (len(self.cols[j]) - 1), i, j)
                if best is None or key < best:
                    best = key
        return None if best is None else (best[2], best[3])

    def diagonalize(self):
        active = set(range(self.m))
        pivots = []
        while True:
            found = self._pick(active)
            if found is None:
                break
            i, j = found
            while True:
                p = self.rows[i][j]
                for i2 in sorted(self.cols[j] - {i}):
                    q = self.rows[i2][j] // p
                    if q:
                        self.row_add(i2, i, -q)
                rest = self.cols[j] - {i}
                if rest:
                    i = min(rest, key=lambda r: (abs(self.rows[r][j]), len(self.rows[r]), r))
                    continue
                for j2 in sorted(set(self.rows[i]) - {j}):
                    q = self.rows[i][j2] // p
                    if q:
                        self.col_add(j2, j, -q)
                rest = set(self.rows[i]) - {j}
                if rest:
                    j = min(rest, key=lambda c: (abs(self.rows[i][c]), len(self.cols[c]), c))
                    continue
                break
            pivots.append((i, j))
            active.discard(i)
        return pivots


def _divisibility_fix(diag, red, pivots):
    """Turn a diagonal into a divisibility chain with determinant-one 2x2 moves."""
    k = len(diag)
    for s in range(k):
        for t in range(s + 1, k):
            a, b = diag[s], diag[t]
            if b % a == 0:
                continue
            g, x, y = _xgcd(a, b)
            diag[s], diag[t] = g, a // g * b
            if red is not None:
                (rs, cs), (rt, ct) = pivots[s], pivots[t]
                # rows: [[x, y], [-b/g, a/g]]
                L = (x, y, -b // g, a // g)
                _lin2(red.U, rs, rt, *L)
                # cols: R = [[1, -y b/g], [1, x a/g]]
                R = (1, -y * b // g, 1, x * a // g)
                _lin2(red.V, cs, ct, R[0], R[2], R[1], R[3])
                if red.inverses:
                    # U^-1 columns multiply by L^-1, V^-1 rows by R^-1
                    _lin2(red.Ui, rs, rt, L[3], -L[2], -L[1], L[0])
                    _lin2(red.Vi, cs, ct, R[3], -R[1], -R[2], R[0])
    return diag


def _xgcd(a, b):
    """Return (g, x, y) with x*a + y*b = g = gcd(a, b) > 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


class _DenseReducer:
    """List-of-lists counterpart of :class:`_Reducer` for small or dense input.

    Row operations become list comprehensions, which is several times faster
    than dict arithmetic once fill-in has made the matrix dense.
    """

    def __init__(self, dense, rows, cols, track, inverses=False):
        self.m, self.n = rows, cols
        self.A = dense
        self.track = track
        self.inverses = track and inverses
        if track:
            self.U = [[int(i == k) for k in range(rows)] for i in range(rows)]  # rows of U
            self.V = [[int(j == k) for k in range(cols)] for j in range(cols)]  # columns of V
        if self.inverses:
            self.Ui = [[int(i == k) for k in range(rows)] for i in range(rows)]  # columns of U^-1
            self.Vi = [[int(j == k) for k in range(cols)] for j in range(cols)]  # rows of V^-1

    def row_add(self, a, b, c):
        A = self.A
        A[a] = [x + c * y for x, y in zip(A[a], A[b])]
        if self.track:
            self.U[a] = [x + c * y for x, y in zip(self.U[a], self.U[b])]
        if self.inverses:
            self.Ui[b] = [x - c * y for x, y in zip(self.Ui[b], self.Ui[a])]

    def col_add(self, a, b, c):
        for row in self.A:
            if row[b]:
                row[a] += c * row[b]
        if self.track:
            self.V[a] = [x + c * y for x, y in zip(self.V[a], self.V[b])]
        if self.inverses:
            self.Vi[b] = [x - c * y for x, y in zip(self.Vi[b], self.Vi[a])]

    def row_negate(self, a):
        self.A[a] = [-x for x in self.A[a]]
        if self.track:
            self.U[a] = [-x for x in self.U[a]]
        if self.inverses:
            self.Ui[a] = [-x for x in self.Ui[a]]

    def _pick(self, act_r, act_c):
        A = self.A
        colcount = {j: 0 for j in act_c}
        nz_rows = []
        for i in act_r:
            row = A[i]
            nz = [j for j in act_c if row[j]]
            if nz:
                nz_rows.append((i, nz))
                for j in nz:
                    colcount[j] += 1
        best = None
        for i, nz in nz_rows:
            row, lr = A[i], len(nz) - 1
            for j in nz:
                key = (abs(row[j]), lr * (colcount[j] - 1), i, j)
                if best is None or key < best:
                    best = key
        return None if best is None else (best[2], best[3])

    def diagonalize(self):
        A = self.A
        act_r = list(range(self.m))
        act_c = list(range(self.n))
        pivots = []
        while True:
            found = self._pick(act_r, act_c)
            if found is None:
                break
            i, j = found
            while True:
                p = A[i][j]
                for i2 in act_r:
                    if i2 != i and A[i2][j]:
                        q = A[i2][j] // p
                        if q:
                            self.row_add(i2, i, -q)
                rest = [r for r in act_r if r != i and A[r][j]]
                if rest:
                    i = min(rest, key=lambda r: (abs(A[r][j]), r))
                    continue
                row = A[i]
                for j2 in act_c:
                    if j2 != j and row[j2]:
                        q = row[j2] // p
                        if q:
                            self.col_add(j2, j, -q)
                rest = [c for c in act_c if c != j and A[i][c]]
                if rest:
                    j = min(rest, key=lambda c: (abs(A[i][c]), c))
                    continue
                break
            pivots.append((i, j))
            act_r.remove(i)
            act_c.remove(j)
        return pivots

    def value(self, i, j):
        return self.A[i][j]


def _use_dense(A):
    size = A.rows * A.cols
    return size <= 12_000 or (size <= 1_000_000 and 10 * A.nnz >= size)


def smith(A, inverses=False):
    """Smith normal form with unimodular transforms.

    Deterministic for a fixed input.  The returned ``U`` and ``V`` satisfy
    ``U @ A @ V == diag(invariants)``.  With ``inverses=True`` the exact
    integer inverses ``U_inv``/``V_inv`` are tracked as well (roughly doubles
    the cost); otherwise those fields are ``None``.
    """
    if _use_dense(A):
        dense = [[0] * A.cols for _ in range(A.rows)]
        for (i, j), v in A.entries.items():
            dense[i][j] = _as_int(v)
        red = _DenseReducer(dense, A.rows, A.cols, track=True, inverses=inverses)

        def as_dict(vec):
            return {k: x for k, x in enumerate(vec) if x}
    else:
        rows = [dict() for _ in range(A.rows)]
        for (i, j), v in A.entries.items():
            rows[i][j] = _as_int(v)
        red = _Reducer(A.rows, A.cols, rows, track=True, inverses=inverses)

        def as_dict(vec):
            return vec
    pivots = red.diagonalize()
    diag = []
    for i, j in pivots:
        if red.value(i, j) < 0:
            red.row_negate(i)
        diag.append(red.value(i, j))
    _divisibility_fix(diag, red, pivots)

    prow = [i for i, _ in pivots]
    pcol = [j for _, j in pivots]
    used_r, used_c = set(prow), set(pcol)
    row_order = prow + [i for i in range(A.rows) if i not in used_r]
    col_order = pcol + [j for j in range(A.cols) if j not in used_c]

    def build(n, vecs, order, by_row):
        ent = {}
        for t, src in enumerate(order):
            for k, v in as_dict(vecs[src]).items():
                ent[(t, k) if by_row else (k, t)] = v
        return SparseMatrix(n, n, ent)

    U = build(A.rows, red.U, row_order, True)
    V = build(A.cols, red.V, col_order, False)
    U_inv = V_inv = None
    if inverses:
        U_inv = build(A.rows, red.Ui, row_order, False)
        V_inv = build(A.cols, red.Vi, col_order, True)
    return SmithDecomposition(tuple(diag), U, V, U_inv, V_inv)


def determinant(M):
    """Exact determinant by Bareiss fraction-free elimination."""
    if M.rows != M.cols:
        raise InputError(MODULE, "determinant of a non-square matrix")
    n = M.rows
    a = M.to_dense()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk, rowk = a[k][k], a[k]
        for i in range(k + 1, n):
            aik, rowi = a[i][k], a[i]
            a[i] = rowi[: k + 1] + [(akk * x - aik * y) // prev for x, y in zip(rowi[k + 1:], rowk[k + 1:])]
        prev = akk
    return sign * a[n - 1][n - 1] if n else 1


def is_unimodular(M):
    """det(M) = +-1."""
    return M.rows == M.cols and abs(determinant(M)) == 1


def _dense_invariants(columns):
    """Invariant factors of a matrix given as a list of column dicts."""
    row_ids = sorted({i for c in columns for i in c})
    remap = {r: k for k, r in enumerate(row_ids)}
    rows = [dict() for _ in row_ids]
    for j, c in enumerate(columns):
        for i, v in c.items():
            rows[remap[i]][j] = v
    red = _Reducer(len(row_ids), len(columns), rows, track=False)
    pivots = red.diagonalize()
    diag = [abs(red.rows[i][j]) for i, j in pivots]
    return _divisibility_fix(diag, None, pivots)


def _unit_eliminate(columns, fill_cap=DEFAULT_FILL_CAP):
    """Eliminate +-1 pivots in place.  Returns (number of pivots, residual columns)."""
    cols = {j: c for j, c in enumerate(columns) if c}
    rows = {}
    for j, c in cols.items():
        for i in c:
            rows.setdefault(i, set()).add(j)
    heap = [(len(c), j) for j, c in cols.items()]
    heapq.heapify(heap)
    units = 0
    work = 0
    while heap:
        size, j = heapq.heappop(heap)
        col = cols.get(j)
        if col is None or len(col) != size:
            continue
        cand = [i for i, v in col.items() if v == 1 or v == -1]
        if not cand:
            continue
        i = min(cand, key=lambda r: (len(rows[r]), r))
        a = col[i]
        for j2 in sorted(rows[i] - {j}):
            c2 = cols[j2]
            f = c2[i] * a
            for r, v in col.items():
                nv = c2.get(r, 0) - f * v
                if nv:
                    if r not in c2:
                        rows[r].add(j2)
                    c2[r] = nv
                else:
                    c2.pop(r, None)
                    rows[r].discard(j2)
            work += len(col)
            if c2:
                heapq.heappush(heap, (len(c2), j2))
            else:
                del cols[j2]
        if work > fill_cap:
            raise ResourceLimitError(MODULE, f"elimination work exceeded cap {fill_cap}")
        for r in col:
            rows[r].discard(j)
        del cols[j]
        del rows[i]
        units += 1
    return units, [c for _, c in sorted(cols.items()) if c]


def invariant_factors(A):
    """Invariant factors d1 | d2 | ... of an integer matrix (no transforms)."""
    columns = [{i: _as_int(v) for i, v in c.items()} for c in A.columns()]
    units, residual = _unit_eliminate(columns)
    if residual:
        tail = _dense_invariants(residual)
    else:
        tail = []
    return tuple([1] * units + tail)


def _integer_columns(A):
    """Columns of a rational matrix, each scaled to integers (rank-preserving)."""
    out = []
    for c in A.columns():
        den = 1
        for v in c.values():
            if isinstance(v, Fraction):
                den = den * v.denominator // gcd(den, v.denominator)
        out.append({i: int(v * den) for i, v in c.items()})
    return out


def rank_q(A):
    """Rank over Q by exact fraction-free elimination."""
    units, residual = _unit_eliminate(_integer_columns(A))
    if not residual:
        return units
    return units + len(_echelon(residual)[0])


def _content(*vecs):
    g = 0
    for vec in vecs:
        for v in vec.values():
            g = gcd(g, v)
            if g == 1:
                return 1
    return g


def _echelon(columns, track=False):
    """Fraction-free column echelon form keyed by the lowest nonzero row.

    Returns ``(pivots, reduced, transforms)`` where ``pivots`` maps a row to
    the column whose lowest entry sits there, ``reduced[j]`` is the reduced
    column ``A v_j`` and ``transforms[j]`` is ``v_j``.  Zero reduced columns
    give kernel vectors.
    """
    pivots = {}
    reduced = []
    transforms = []
    for j, col in enumerate(columns):
        col = dict(col)
        vj = {j: 1} if track else None
        while col:
            low = max(col)
            p = pivots.get(low)
            if p is None:
                break
            pc = reduced[p]
            a, b = pc[low], col[low]
            g = gcd(a, b)
            a, b = a // g, b // g
            # col <- a*col - b*pc kills the low entry
            col = {k: a * v for k, v in col.items()}
            _axpy(col, pc, -b)
            if track:
                vj = {k: a * v for k, v in vj.items()}
                _axpy(vj, transforms[p], -b)
            g = _content(col, vj) if track else _content(col)
            if g > 1:
                col = {k: v // g for k, v in col.items()}
                if track:
                    vj = {k: v // g for k, v in vj.items()}
        if col:
            pivots[max(col)] = j
        reduced.append(col)
        transforms.append(vj)
    return pivots, reduced, transforms


def kernel_basis_q(A):
    """A basis (integer vectors, as lists) of the right kernel of A over Q."""
    _, reduced, transforms = _echelon(_integer_columns(A), track=True)
    basis = []
    for col, v in zip(reduced, transforms):
        if not col:
            vec = [0] * A.cols
            for k, x in v.items():
                vec[k] = x
            basis.append(vec)
    return basis


INCONSISTENT = "inconsistent"


def solve_q(A, b):
    """Some x with ``A x = b`` as a list of Fractions, or ``INCONSISTENT``."""
    if len(b) != A.rows:
        raise InputError(MODULE, f"right-hand side of length {len(b)} for {A.rows} rows")
    den = 1
    for v in b:
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    cols = A.columns()
    scales = []
    int_cols = []
    for c in cols:
        s = 1
        for v in c.values():
            if isinstance(v, Fraction):
                s = s * v.denominator // gcd(s, v.denominator)
        scales.append(s)
        int_cols.append({i: int(v * s) for i, v in c.items()})
    rhs = {i: int(v * den) for i, v in enumerate(b) if v}
    n = A.cols
    pivots, reduced, transforms = _echelon(int_cols + [rhs], track=True)
    last = reduced[n]
    if last:
        return INCONSISTENT
    # 0 = A_int * t where t is the transform of the rhs column: t[n]*rhs + A_int t[:n] = 0
    t = transforms[n]
    alpha = t.get(n, 0)
    x = [Fraction(0)] * n
    for k, v in t.items():
        if k < n:
            # column k of A_int equals scales[k] * column k of A
            x[k] = Fraction(-v * scales[k], alpha * den)
    return x


def lattice_contains(B, vectors):
    """True iff every integer vector lies in the Z-span of the columns of B.

    Uses the fact that for lattices L1 <= L2 of equal rank, L1 == L2 exactly
    when the products of their invariant factors agree.
    """
    if not vectors:
        return True
    extra = SparseMatrix.from_columns(B.rows, [{i: v for i, v in enumerate(vec) if v} for vec in vectors])
    d1 = invariant_factors(B)
    d2 = invariant_factors(B.hstack(extra))
    if len(d1) != len(d2):
        return False
    p1 = p2 = 1
    for d in d1:
        p1 *= d
    for d in d2:
        p2 *= d
    return p1 == p2
