"""Exact integer linear algebra: Hermite and Smith forms, kernels, solving.

Dense matrices are lists of row lists of Python ints. The fast paths
(``invariant_factors``, ``kernel_basis``, ``solve``) first eliminate unit
pivots on a sparse copy and only fall back to the dense Smith form for the
remaining block; on the chain complexes used here that block is tiny.
"""
from __future__ import annotations


class Cancelled(RuntimeError):
    pass


class CancelToken:
    """Cooperative cancellation flag checked inside long eliminations."""

    def __init__(self):
        self.cancelled = False

    def cancel(self):
        self.cancelled = True

    def check(self):
        if self.cancelled:
            raise Cancelled("computation cancelled")


def _check(cancel):
    if cancel is not None:
        cancel.check()


def xgcd(a, b):
    x, nx, y, ny = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
    if a < 0:
        a, x, y = -a, -x, -y
    return a, x, y


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * ncols
        for k in range(inner):
            a = row[k]
            if a:
                for j, b in enumerate(B[k]):
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(c) for c in zip(*A)]


def shape(A, ncols=None):
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    return m, n


def det(A):
    """Determinant via the Smith form (exact)."""
    n = len(A)
    if n == 0:
        return 1
    D, U, V = snf(A)
    d = 1
    for i in range(n):
        d *= D[i][i]
    return d * _det_unimodular(U) * _det_unimodular(V)


def _det_unimodular(M):
    # Bareiss fraction-free elimination
    n = len(M)
    A = [row[:] for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


# ---------------------------------------------------------------------------
# dense normal forms


def hnf(A, ncols=None):
    """Row Hermite normal form: returns (H, U) with U unimodular and U A = H.

    H is in row echelon form with positive pivots and entries above each pivot
    reduced into [0, pivot).
    """
    m, n = shape(A, ncols)
    H = [list(r) for r in A]
    U = identity(m)
    r = 0
    for j in range(n):
        if r >= m:
            break
        rows = [i for i in range(r, m) if H[i][j]]
        if not rows:
            continue
        while True:
            rows = [i for i in range(r, m) if H[i][j]]
            p = min(rows, key=lambda i: abs(H[i][j]))
            if p != r:
                H[p], H[r] = H[r], H[p]
                U[p], U[r] = U[r], U[p]
            done = True
            for i in range(r + 1, m):
                if H[i][j]:
                    q = H[i][j] // H[r][j]
                    _axpy(H[i], H[r], -q)
                    _axpy(U[i], U[r], -q)
                    if H[i][j]:
                        done = False
            if done:
                break
        if H[r][j] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        piv = H[r][j]
        for i in range(r):
            q = H[i][j] // piv
            if q:
                _axpy(H[i], H[r], -q)
                _axpy(U[i], U[r], -q)
        r += 1
    return H, U


def _axpy(y, x, a):
    for k, v in enumerate(x):
        if v:
            y[k] += a * v


def snf(A, ncols=None, cancel=None):
    """Smith normal form: returns (D, U, V) with U A V = D, U and V unimodular.

    The diagonal of D is non-negative and each entry divides the next.
    """
    m, n = shape(A, ncols)
    D = [list(r) for r in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_col(dst, src, a):
        for row in D:
            if row[src]:
                row[dst] += a * row[src]
        for row in V:
            if row[src]:
                row[dst] += a * row[src]

    for k in range(min(m, n)):
        _check(cancel)
        best = None
        for i in range(k, m):
            row = D[i]
            for j in range(k, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(k, i)
        swap_cols(k, j)
        while True:
            dirty = False
            piv = D[k][k]
            for i in range(k + 1, m):
                if D[i][k]:
                    q = D[i][k] // piv
                    _axpy(D[i], D[k], -q)
                    _axpy(U[i], U[k], -q)
                    if D[i][k]:
                        dirty = True
            for j in range(k + 1, n):
                if D[k][j]:
                    q = D[k][j] // piv
                    add_col(j, k, -q)
                    if D[k][j]:
                        dirty = True
            if dirty:
                # move the smallest remaining entry of row/col k onto the pivot
                cand = [(abs(D[i][k]), i, k) for i in range(k + 1, m) if D[i][k]]
                cand += [(abs(D[k][j]), k, j) for j in range(k + 1, n) if D[k][j]]
                _, i, j = min(cand)
                if j == k:
                    swap_rows(k, i)
                else:
                    swap_cols(k, j)
                continue
            bad = None
            for i in range(k + 1, m):
                for j in range(k + 1, n):
                    if D[i][j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            _axpy(D[k], D[bad], 1)
            _axpy(U[k], U[bad], 1)
        if D[k][k] < 0:
            D[k] = [-x for x in D[k]]
            U[k] = [-x for x in U[k]]
    return D, U, V


def snf_diagonal(A, ncols=None, cancel=None):
    """Nonzero invariant factors of a dense matrix (no transforms)."""
    m, n = shape(A, ncols)
    D = [list(r) for r in A]
    diag = []
    k = 0
    rows = list(range(m))
    cols = list(range(n))
    while rows and cols:
        _check(cancel)
        best = None
        for i in rows:
            row = D[i]
            for j in cols:
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        while True:
            piv = D[pi][pj]
            dirty = False
            for i in rows:
                if i != pi and D[i][pj]:
                    q = D[i][pj] // piv
                    row, prow = D[i], D[pi]
                    for j in cols:
                        if prow[j]:
                            row[j] -= q * prow[j]
                    if D[i][pj]:
                        dirty = True
            for j in cols:
                if j != pj and D[pi][pj] and D[pi][j]:
                    q = D[pi][j] // piv
                    for i in rows:
                        if D[i][pj]:
                            D[i][j] -= q * D[i][pj]
                    if D[pi][j]:
                        dirty = True
            if not dirty:
                break
            cand = [(abs(D[i][pj]), i, pj) for i in rows if i != pi and D[i][pj]]
            cand += [(abs(D[pi][j]), pi, j) for j in cols if j != pj and D[pi][j]]
            _, pi, pj = min(cand)
        diag.append(abs(D[pi][pj]))
        rows.remove(pi)
        cols.remove(pj)
        k += 1
    return _divisibility_chain(diag)


def _divisibility_chain(diag):
    from math import gcd
    d = sorted(diag)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                a, b = d[i], d[j]
                if b % a:
                    g = gcd(a, b)
                    d[i], d[j] = g, a * b // g
                    changed = True
        d.sort()
    return d


# ---------------------------------------------------------------------------
# sparse elimination


class SparseMatrix:
    """Row-sparse integer matrix: ``rows[i]`` maps column index to value."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows, ncols, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else [dict() for _ in range(nrows)]

    @classmethod
    def from_dense(cls, A, ncols=None):
        m, n = shape(A, ncols)
        return cls(m, n, [{j: v for j, v in enumerate(r) if v} for r in A])

    def to_dense(self):
        out = []
        for r in self.rows:
            row = [0] * self.ncols
            for j, v in r.items():
                row[j] = v
            out.append(row)
        return out

    def add(self, i, j, v):
        if v:
            r = self.rows[i]
            nv = r.get(j, 0) + v
            if nv:
                r[j] = nv
            else:
                r.pop(j, None)

    def copy(self):
        return SparseMatrix(self.nrows, self.ncols, [dict(r) for r in self.rows])

    def transpose(self):
        out = SparseMatrix(self.ncols, self.nrows)
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out.rows[j][i] = v
        return out

    def apply(self, x):
        """Matrix-vector product with a dense vector."""
        return [sum(v * x[j] for j, v in r.items()) for r in self.rows]

    def matmul(self, other):
        out = SparseMatrix(self.nrows, other.ncols)
        orows = other.rows
        for i, r in enumerate(self.rows):
            acc = {}
            for k, a in r.items():
                for j, b in orows[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            out.rows[i] = {j: v for j, v in acc.items() if v}
        return out

    def is_zero(self):
        return not any(self.rows)

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix) and self.nrows == other.nrows
                and self.ncols == other.ncols and self.rows == other.rows)

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={sum(map(len, self.rows))})"


def as_sparse(A, ncols=None) -> SparseMatrix:
    if isinstance(A, SparseMatrix):
        return A
    return SparseMatrix.from_dense(A, ncols)


class _Elimination:
    """Unit-pivot elimination of the system A x = B, recorded for back substitution."""

    def __init__(self, A: SparseMatrix, rhs=None, cancel=None):
        self.ncols = A.ncols
        self.rows = [dict(r) for r in A.rows]
        self.rhs = [dict(r) for r in rhs] if rhs is not None else None
        colidx = {}
        for i, r in enumerate(self.rows):
            for j in r:
                colidx.setdefault(j, set()).add(i)
        self.colidx = colidx
        self.alive = set(range(len(self.rows)))
        self.pivots = []  # (row dict, col, unit, rhs dict)
        self._run(cancel)

    def _choose(self):
        rows, best = self.rows, None
        for j, idx in self.colidx.items():
            if not idx:
                continue
            for i in idx:
                v = rows[i][j]
                if v == 1 or v == -1:
                    cost = (len(idx) - 1) * (len(rows[i]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, i, j)
                        if cost == 0:
                            return best
        return best

    def _run(self, cancel):
        rows, colidx, rhs = self.rows, self.colidx, self.rhs
        while True:
            _check(cancel)
            best = self._choose()
            if best is None:
                break
            _, p, c = best
            prow = rows[p]
            u = prow[c]
            for i in list(colidx[c]):
                if i == p:
                    continue
                f = rows[i][c] * u
                r = rows[i]
                for j, v in prow.items():
                    nv = r.get(j, 0) - f * v
                    if nv:
                        if j not in r:
                            colidx.setdefault(j, set()).add(i)
                        r[j] = nv
                    elif j in r:
                        del r[j]
                        colidx[j].discard(i)
                if rhs is not None and rhs[p]:
                    rr = rhs[i]
                    for k, v in rhs[p].items():
                        nv = rr.get(k, 0) - f * v
                        if nv:
                            rr[k] = nv
                        else:
                            rr.pop(k, None)
            for j in prow:
                colidx[j].discard(p)
            del colidx[c]
            self.alive.discard(p)
            self.pivots.append((prow, c, u, rhs[p] if rhs is not None else None))
        self.pivot_cols = {c for _, c, _, _ in self.pivots}
        self.free_cols = [j for j in range(self.ncols) if j not in self.pivot_cols]
        self.rest_rows = sorted(i for i in self.alive if rows[i])
        self.zero_rows = sorted(i for i in self.alive if not rows[i])

    def remainder(self):
        pos = {j: k for k, j in enumerate(self.free_cols)}
        dense = []
        for i in self.rest_rows:
            row = [0] * len(self.free_cols)
            for j, v in self.rows[i].items():
                row[pos[j]] = v
            dense.append(row)
        return dense

    def back_substitute(self, x):
        """Fill pivot coordinates of ``x`` (dict col->value) given the free ones."""
        for prow, c, u, rhsp in reversed(self.pivots):
            s = rhsp.get(self._k, 0) if rhsp else 0
            for j, v in prow.items():
                if j != c:
                    s -= v * x.get(j, 0)
            val = u * s
            if val:
                x[c] = val
        return x


def invariant_factors(A, ncols=None, cancel=None):
    """Nonzero invariant factors (ascending, each dividing the next)."""
    A = as_sparse(A, ncols)
    if A.nrows == 0 or A.ncols == 0:
        return []
    E = _Elimination(A, cancel=cancel)
    rest = snf_diagonal(E.remainder(), len(E.free_cols), cancel) if E.rest_rows else []
    return [1] * len(E.pivots) + rest


def rank(A, ncols=None, cancel=None):
    return len(invariant_factors(A, ncols, cancel))


def kernel_basis(A, ncols=None, cancel=None):
    """A Z-basis of {x : A x = 0} as a list of dense vectors."""
    A = as_sparse(A, ncols)
    n = A.ncols
    if A.nrows == 0:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    E = _Elimination(A, cancel=cancel)
    E._k = None
    R = E.remainder()
    nf = len(E.free_cols)
    if R:
        D, U, V = snf(R, nf, cancel)
        r = sum(1 for i in range(min(len(D), nf)) if D[i][i])
        kern = [[V[i][j] for i in range(nf)] for j in range(r, nf)]
    else:
        kern = [[int(i == j) for j in range(nf)] for i in range(nf)]
    out = []
    for kv in kern:
        x = {E.free_cols[k]: v for k, v in enumerate(kv) if v}
        E.back_substitute(x)
        vec = [0] * n
        for j, v in x.items():
            vec[j] = v
        out.append(vec)
    return out


def solve(A, B, ncols=None, cancel=None):
    """Integer solution X of A X = B, or None if none exists.

    ``B`` is a dense m x k matrix; the result is a dense n x k matrix.
    """
    A = as_sparse(A, ncols)
    n = A.ncols
    k = len(B[0]) if B else 0
    rhs = [{c: v for c, v in enumerate(row) if v} for row in B]
    E = _Elimination(A, rhs, cancel)
    for i in E.zero_rows:
        if E.rhs[i]:
            return None
    R = E.remainder()
    nf = len(E.free_cols)
    X = [[0] * k for _ in range(n)]
    if R:
        D, U, V = snf(R, nf, cancel)
        rest = [[E.rhs[i].get(c, 0) for c in range(k)] for i in E.rest_rows]
        UB = matmul(U, rest)
        y = zeros(nf, k)
        for i, row in enumerate(UB):
            d = D[i][i] if i < nf else 0
            for c, v in enumerate(row):
                if d == 0:
                    if v:
                        return None
                elif v % d:
                    return None
                else:
                    y[i][c] = v // d
        free = matmul(V, y)
    else:
        free = zeros(nf, k)
    for c in range(k):
        x = {E.free_cols[t]: free[t][c] for t in range(nf) if free[t][c]}
        E._k = c
        E.back_substitute(x)
        for j, v in x.items():
            X[j][c] = v
    return X


# ---------------------------------------------------------------------------
# lattices


class Lattice:
    """Incrementally grown sublattice of Z^n kept in echelon form (sparse rows)."""

    def __init__(self, n):
        self.n = n
        self.rows = {}  # pivot column -> row dict

    @property
    def rank(self):
        return len(self.rows)

    def _reduce(self, v, mutate):
        """Reduce v against the echelon rows; return (residual, grew)."""
        v = {j: x for j, x in v.items() if x}
        grew = False
        while v:
            j = min(v)
            b = v[j]
            r = self.rows.get(j)
            if r is None:
                if not mutate:
                    return v, grew
                if b < 0:
                    v = {t: -x for t, x in v.items()}
                self.rows[j] = v
                return None, True
            a = r[j]
            if b % a == 0:
                q = b // a
                for t, x in r.items():
                    nv = v.get(t, 0) - q * x
                    if nv:
                        v[t] = nv
                    else:
                        v.pop(t, None)
                continue
            if not mutate:
                return v, grew
            g, s, t_ = xgcd(a, b)
            newr, newv = {}, {}
            for t in set(r) | set(v):
                x, y = r.get(t, 0), v.get(t, 0)
                w = s * x + t_ * y
                if w:
                    newr[t] = w
                z = (a // g) * y - (b // g) * x
                if z:
                    newv[t] = z
            self.rows[j] = newr
            grew = True
            v = newv
        return None, grew

    def add(self, vec):
        """Add a vector; return True if the lattice grew."""
        v = vec if isinstance(vec, dict) else {j: x for j, x in enumerate(vec) if x}
        return self._reduce(v, mutate=True)[1]

    def __contains__(self, vec):
        v = vec if isinstance(vec, dict) else {j: x for j, x in enumerate(vec) if x}
        return self._reduce(v, mutate=False)[0] is None

    def basis(self):
        out = []
        for j in sorted(self.rows):
            row = [0] * self.n
            for t, x in self.rows[j].items():
                row[t] = x
            out.append(row)
        return out

    def is_saturated(self):
        if not self.rows:
            return True
        rows = [self.rows[j] for j in sorted(self.rows)]
        return all(d == 1 for d in invariant_factors(SparseMatrix(len(rows), self.n, [dict(r) for r in rows])))
