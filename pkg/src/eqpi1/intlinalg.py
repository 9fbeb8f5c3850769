"""Exact linear algebra over the integers.

Everything here runs on arbitrary-precision Python ints: Smith normal form
with unimodular transformation certificates, integer kernels and exact
solving, finitely generated abelian group invariants, and chain-complex
homology with generator provenance.  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass


class NotAChainComplex(ValueError):
    """Boundary matrices fail d_i . d_{i+1} = 0 (or dimensions mismatch)."""

    def __init__(self, degree: int, detail: str):
        self.degree = degree
        self.detail = detail
        super().__init__(f"not a chain complex at degree {degree}: {detail}")


class IntMatrix:
    """Dense integer matrix; entries are plain Python ints."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data=None):
        self.rows = rows
        self.cols = cols
        if data is None:
            self.data = [[0] * cols for _ in range(rows)]
        else:
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ValueError("matrix data shape mismatch")
            self.data = [list(r) for r in data]

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        m = IntMatrix(n, n)
        for i in range(n):
            m.data[i][i] = 1
        return m

    @staticmethod
    def from_rows(rows) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            return IntMatrix(0, 0)
        return IntMatrix(len(rows), len(rows[0]), rows)

    @staticmethod
    def from_columns(cols, nrows=None) -> "IntMatrix":
        cols = [list(c) for c in cols]
        if not cols:
            return IntMatrix(nrows or 0, 0)
        n = len(cols[0])
        m = IntMatrix(n, len(cols))
        for j, c in enumerate(cols):
            for i in range(n):
                m.data[i][j] = c[i]
        return m

    def copy(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, self.data)

    def column(self, j: int) -> list:
        return [self.data[i][j] for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        t = IntMatrix(self.cols, self.rows)
        for i in range(self.rows):
            for j in range(self.cols):
                t.data[j][i] = self.data[i][j]
        return t

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        out = IntMatrix(self.rows, other.cols)
        for i in range(self.rows):
            row = self.data[i]
            orow = out.data[i]
            for k, a in enumerate(row):
                if a:
                    brow = other.data[k]
                    for j in range(other.cols):
                        orow[j] += a * brow[j]
        return out

    def __mul__(self, other):
        return self.mul(other)

    def mul_vector(self, vec) -> list:
        if self.cols != len(vec):
            raise ValueError("dimension mismatch in matrix-vector product")
        return [sum(a * x for a, x in zip(row, vec)) for row in self.data]

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return IntMatrix(
            self.rows,
            self.cols + other.cols,
            [self.data[i] + other.data[i] for i in range(self.rows)],
        )

    def is_zero(self) -> bool:
        return all(a == 0 for row in self.data for a in row)

    def det(self) -> int:
        """Fraction-free Bareiss elimination; exact for any size."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [row[:] for row in self.data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and self.det() in (1, -1)

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, {self.data!r})"


@dataclass
class SmithForm:
    """U * A * V = D with U, V unimodular and D diagonal, d_i | d_{i+1}.

    uinv and vinv are the exact inverses, maintained during elimination; they
    are what lets homology generators be lifted back to chains.
    """

    d: IntMatrix
    u: IntMatrix
    uinv: IntMatrix
    v: IntMatrix
    vinv: IntMatrix
    diagonal: list
    rank: int


def smith_normal_form(a: IntMatrix) -> SmithForm:
    """Diagonalize over Z.  Pivot choice: smallest nonzero absolute value,
    ties broken by (row, col); deterministic for reproducible bases.
    The factorization is re-verified on every call before returning."""
    m, n = a.rows, a.cols
    d = [row[:] for row in a.data]
    u = IntMatrix.identity(m)
    uinv = IntMatrix.identity(m)
    v = IntMatrix.identity(n)
    vinv = IntMatrix.identity(n)

    def row_swap(i, j):
        d[i], d[j] = d[j], d[i]
        u.data[i], u.data[j] = u.data[j], u.data[i]
        for r in uinv.data:
            r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v.data:
            r[i], r[j] = r[j], r[i]
        vinv.data[i], vinv.data[j] = vinv.data[j], vinv.data[i]

    def row_add(i, j, c):
        # row i += c * row j ; uinv column j -= c * column i
        if c == 0:
            return
        d[i] = [x + c * y for x, y in zip(d[i], d[j])]
        u.data[i] = [x + c * y for x, y in zip(u.data[i], u.data[j])]
        for r in uinv.data:
            r[j] -= c * r[i]

    def col_add(i, j, c):
        # col i += c * col j ; vinv row j -= c * row i
        if c == 0:
            return
        for r in d:
            r[i] += c * r[j]
        for r in v.data:
            r[i] += c * r[j]
        vinv.data[j] = [x - c * y for x, y in zip(vinv.data[j], vinv.data[i])]

    def row_negate(i):
        d[i] = [-x for x in d[i]]
        u.data[i] = [-x for x in u.data[i]]
        for r in uinv.data:
            r[i] = -r[i]

    def find_pivot(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = d[i][j]
                if x != 0:
                    key = (abs(x), i, j)
                    if best is None or key < best[0]:
                        best = (key, i, j)
        return None if best is None else (best[1], best[2])

    t = 0
    limit = min(m, n)
    while t < limit:
        loc = find_pivot(t)
        if loc is None:
            break
        pi, pj = loc
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        # clear column and row below/right of the pivot; repeat while
        # remainders reintroduce entries
        while True:
            p = d[t][t]
            dirty = False
            for i in range(t + 1, m):
                if d[i][t] != 0:
                    q = d[i][t] // p
                    row_add(i, t, -q)
                    if d[i][t] != 0:
                        row_swap(t, i)
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(t + 1, n):
                if d[t][j] != 0:
                    q = d[t][j] // p
                    col_add(j, t, -q)
                    if d[t][j] != 0:
                        col_swap(t, j)
                        dirty = True
                        break
            if not dirty:
                break
        if d[t][t] < 0:
            row_negate(t)
        t += 1

    # enforce the divisibility chain d_i | d_{i+1}
    changed = True
    while changed:
        changed = False
        for i in range(limit - 1):
            a_i, a_j = d[i][i], d[i + 1][i + 1]
            if a_i != 0 and a_j % a_i != 0:
                # fold d_{i+1} into row i, then gcd-clean the 2x2 block
                row_add(i, i + 1, 1)
                while d[i][i + 1] != 0 or d[i + 1][i] != 0:
                    while d[i][i + 1] != 0:
                        p, q = d[i][i], d[i][i + 1]
                        if p == 0 or abs(q) < abs(p):
                            col_swap(i, i + 1)
                        else:
                            col_add(i + 1, i, -(q // p))
                    while d[i + 1][i] != 0:
                        p, q = d[i][i], d[i + 1][i]
                        if p == 0 or abs(q) < abs(p):
                            row_swap(i, i + 1)
                        else:
                            row_add(i + 1, i, -(q // p))
                if d[i][i] < 0:
                    row_negate(i)
                if d[i + 1][i + 1] < 0:
                    row_negate(i + 1)
                changed = True

    diag = [d[i][i] for i in range(limit)]
    rank = sum(1 for x in diag if x != 0)
    dm = IntMatrix(m, n, d)

    result = SmithForm(dm, u, uinv, v, vinv, diag, rank)
    _verify_smith(a, result)
    return result


def _verify_smith(a: IntMatrix, s: SmithForm):
    if s.u.mul(a).mul(s.v) != s.d:
        raise AssertionError("smith normal form reconstruction failed")
    if s.u.mul(s.uinv) != IntMatrix.identity(a.rows):
        raise AssertionError("U inverse certificate failed")
    if s.v.mul(s.vinv) != IntMatrix.identity(a.cols):
        raise AssertionError("V inverse certificate failed")
    for i in range(s.rank - 1):
        if s.diagonal[i + 1] % s.diagonal[i] != 0:
            raise AssertionError("divisibility chain violated")
    for i, x in enumerate(s.diagonal):
        if (x != 0) != (i < s.rank):
            raise AssertionError("nonzero invariant factors must come first")
        if x < 0:
            raise AssertionError("invariant factors must be nonnegative")
    for i in range(a.rows):
        for j in range(a.cols):
            if i != j and s.d.data[i][j] != 0:
                raise AssertionError("smith form is not diagonal")


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Columns form a basis of ker(a) over Z (a primitive sublattice)."""
    s = smith_normal_form(a)
    cols = [s.v.column(j) for j in range(s.rank, a.cols)]
    return IntMatrix.from_columns(cols, nrows=a.cols)


def solve_columns(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Solve a * Y = b exactly over Z; raises ValueError if unsolvable."""
    s = smith_normal_form(a)
    ub = s.u.mul(b)
    y0 = IntMatrix(a.cols, b.cols)
    for j in range(b.cols):
        for i in range(a.rows):
            x = ub.data[i][j]
            if i < s.rank:
                q, r = divmod(x, s.diagonal[i])
                if r != 0:
                    raise ValueError("no integer solution")
                y0.data[i][j] = q
            elif x != 0:
                raise ValueError("no integer solution")
    return s.v.mul(y0)


def in_column_span(a: IntMatrix, vec) -> bool:
    try:
        solve_columns(a, IntMatrix.from_columns([list(vec)]))
        return True
    except ValueError:
        return False


@dataclass(frozen=True)
class AbelianGroup:
    """Invariant-factor form: Z^rank + sum of Z/d with d_i | d_{i+1}, d_i > 1."""

    rank: int
    torsion: tuple = ()

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    @property
    def is_trivial(self):
        return self.rank == 0 and not self.torsion


def quotient_invariants(relators: IntMatrix) -> AbelianGroup:
    """Invariants of Z^n / column-span(relators); rows index the generators."""
    s = smith_normal_form(relators)
    torsion = tuple(d for d in s.diagonal if d > 1)
    return AbelianGroup(relators.rows - s.rank, torsion)


def free_quotient_data(relators: IntMatrix):
    """Coordinates for the free part of Z^n / im(relators).

    Returns (smith, free_rows): the class of x has free coordinates
    (U x)[i] for i in free_rows, in that order.
    """
    s = smith_normal_form(relators)
    free_rows = list(range(s.rank, relators.rows))
    return s, free_rows


def induced_free_matrix(r_src: IntMatrix, r_tgt: IntMatrix, f: IntMatrix) -> IntMatrix:
    """Matrix of the map induced by f on free parts of the two quotients.

    f maps generator exponent vectors of the source presentation to the
    target's (columns = source generators).  Requires that f send relators
    into the target relator lattice; the free-part block is then well
    defined and independent of representatives.
    """
    s_src, free_src = free_quotient_data(r_src)
    s_tgt, free_tgt = free_quotient_data(r_tgt)
    full = s_tgt.u.mul(f).mul(s_src.uinv)
    # torsion source coordinates must die in the free target coordinates
    for j in range(s_src.rank):
        if s_src.diagonal[j] > 1:
            for i in free_tgt:
                if full.data[i][j] != 0:
                    raise ValueError("map does not respect relator lattices")
    out = IntMatrix(len(free_tgt), len(free_src))
    for oi, i in enumerate(free_tgt):
        for oj, j in enumerate(free_src):
            out.data[oi][oj] = full.data[i][j]
    return out


def abelian_map_surjective(f: IntMatrix, r_tgt: IntMatrix) -> bool:
    """Whether f induces a surjection Z^n/im(r_src) -> Z^m/im(r_tgt):
    the columns of f together with the target relators must span Z^m."""
    stacked = f.hstack(r_tgt)
    s = smith_normal_form(stacked)
    return s.rank == f.rows and all(d == 1 for d in s.diagonal[: s.rank])


@dataclass
class HomologyGroup:
    group: AbelianGroup
    free_generators: list
    torsion_generators: list  # (chain vector, order)

    def __str__(self):
        return str(self.group)


def homology(boundaries: list) -> list:
    """Homology of a chain complex from its boundary matrices.

    boundaries[i] is the matrix of d_{i+1}: C_{i+1} -> C_i (rows = C_i).
    Returns HomologyGroup for degrees 0 .. len(boundaries), including chain
    representatives for free and torsion generators.
    """
    n = len(boundaries)
    for i in range(n - 1):
        if boundaries[i].cols != boundaries[i + 1].rows:
            raise NotAChainComplex(i + 1, "boundary matrix dimensions mismatch")
        if not boundaries[i].mul(boundaries[i + 1]).is_zero():
            raise NotAChainComplex(i + 1, "d.d != 0")

    dims = [boundaries[0].rows] + [b.cols for b in boundaries] if n else []
    out = []
    for i in range(n + 1):
        dim_i = dims[i] if dims else 0
        if i == 0:
            kernel = IntMatrix.identity(dim_i)
        else:
            kernel = kernel_basis(boundaries[i - 1])
        img = boundaries[i] if i < n else IntMatrix(dim_i, 0)
        k = kernel.cols
        if k == 0:
            out.append(HomologyGroup(AbelianGroup(0), [], []))
            continue
        # cycles contain boundaries, so this solve is exact
        y = solve_columns(kernel, img)
        s = smith_normal_form(y)
        torsion = []
        free = []
        for j in range(k):
            d = s.diagonal[j] if j < len(s.diagonal) else 0
            coords = s.uinv.column(j)
            chain = kernel.mul_vector(coords)
            if d == 0 or j >= s.rank:
                free.append(chain)
            elif d > 1:
                torsion.append((chain, d))
        grp = AbelianGroup(len(free), tuple(d for _, d in torsion))
        out.append(HomologyGroup(grp, free, torsion))
    return out


def cohomology_ranks(homology_groups: list) -> list:
    """Universal coefficients over Z: rank H^n = rank H_n, torsion H^n =
    torsion H_{n-1}.  Input and output are ordered by degree."""
    out = []
    for i, h in enumerate(homology_groups):
        grp = h.group if isinstance(h, HomologyGroup) else h
        prev = homology_groups[i - 1] if i > 0 else None
        prev_t = ()
        if prev is not None:
            prev_t = (prev.group if isinstance(prev, HomologyGroup) else prev).torsion
        out.append(AbelianGroup(grp.rank, tuple(prev_t)))
    return out
