"""Exact integer linear algebra.

Smith normal form with unimodular transforms, integral solves, kernels and
images of integer matrices, and finitely generated abelian groups presented as
cokernels.  Everything works on Python ints, so there is no overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, Optional, Sequence

from .errors import DimensionError, InputError

Vector = tuple[int, ...]


@dataclass(frozen=True)
class IntegerMatrix:
    """Immutable integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> IntegerMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: Optional[int] = None) -> IntegerMatrix:
        return cls.from_rows(columns, cols=rows).transpose()

    @classmethod
    def identity(cls, n: int) -> IntegerMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntegerMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_lists(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> IntegerMatrix:
        return IntegerMatrix(
            self.cols, self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.column(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum(a * b for a, b in zip(r, c)) for c in cols)
        return IntegerMatrix(self.rows, other.cols, tuple(out))

    def apply(self, v: Sequence[int]) -> Vector:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for matrix with {self.cols} columns")
        return tuple(sum(a * b for a, b in zip(self.row(i), v)) for i in range(self.rows))

    def hstack(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.rows != other.rows:
            raise DimensionError("hstack needs equal row counts")
        return IntegerMatrix.from_rows(
            [self.row(i) + other.row(i) for i in range(self.rows)], cols=self.cols + other.cols
        )

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)


def as_matrix(a) -> IntegerMatrix:
    if isinstance(a, IntegerMatrix):
        return a
    return IntegerMatrix.from_rows(a)


def determinant(a: IntegerMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if a.rows != a.cols:
        raise DimensionError("determinant of a non-square matrix")
    n = a.rows
    m = a.to_lists()
    sign, prev = 1, 1
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
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


# --------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """``u @ a @ v == diag(d)`` with ``u``, ``v`` unimodular.

    ``u_inv`` is the exact inverse of ``u``; it is needed to lift cokernel
    elements and to read off image bases.
    """

    d: tuple[int, ...]
    u: IntegerMatrix
    v: IntegerMatrix
    u_inv: IntegerMatrix
    original_shape: tuple[int, int]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.d if x != 0)

    def diagonal_matrix(self) -> IntegerMatrix:
        m, n = self.original_shape
        return IntegerMatrix(
            m, n,
            tuple(self.d[i] if i == j else 0 for i in range(m) for j in range(n)),
        )


def smith_normal_form(a) -> SmithDecomposition:
    """Smith normal form with transforms.

    The pivot is always the nonzero entry of smallest absolute value in the
    active block, ties broken by row index and then column index, so the
    transforms are a deterministic function of the input.
    """
    a = as_matrix(a)
    m, n = a.shape
    D = a.to_lists()
    U = IntegerMatrix.identity(m).to_lists()
    Uinv = IntegerMatrix.identity(m).to_lists()
    V = IntegerMatrix.identity(n).to_lists()

    def swap_rows(i, j):
        if i == j:
            return
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for r in Uinv:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        if c == 0:
            return
        Dd, Ds = D[dst], D[src]
        for k in range(n):
            Dd[k] += c * Ds[k]
        Ud, Us = U[dst], U[src]
        for k in range(m):
            Ud[k] += c * Us[k]
        for r in Uinv:
            r[src] -= c * r[dst]

    def negate_row(i):
        D[i] = [-x for x in D[i]]
        U[i] = [-x for x in U[i]]
        for r in Uinv:
            r[i] = -r[i]

    def swap_cols(i, j):
        if i == j:
            return
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_col(dst, src, c):
        if c == 0:
            return
        for r in D:
            r[dst] += c * r[src]
        for r in V:
            r[dst] += c * r[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                Di = D[i]
                for j in range(t, n):
                    x = Di[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, i0, j0 = best
            swap_rows(t, i0)
            swap_cols(t, j0)
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    dirty = dirty or D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    dirty = dirty or D[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) if any(D[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            negate_row(t)
        if D[t][t] == 0:
            break

    d = tuple(D[i][i] for i in range(min(m, n)))
    return SmithDecomposition(
        d=d,
        u=IntegerMatrix.from_rows(U, cols=m),
        v=IntegerMatrix.from_rows(V, cols=n),
        u_inv=IntegerMatrix.from_rows(Uinv, cols=m),
        original_shape=(m, n),
    )


def kernel_basis(a) -> list[Vector]:
    """A basis of the integer kernel ``{x : a x = 0}``."""
    a = as_matrix(a)
    snf = smith_normal_form(a)
    return [snf.v.column(j) for j in range(snf.rank, a.cols)]


def image_basis(a) -> list[Vector]:
    """A basis of the lattice spanned by the columns of ``a``."""
    a = as_matrix(a)
    snf = smith_normal_form(a)
    return [tuple(snf.d[j] * x for x in snf.u_inv.column(j)) for j in range(snf.rank)]


def solve_integral(a, b: Sequence[int]) -> Optional[Vector]:
    """Some integer ``x`` with ``a x = b``, or ``None`` if there is none."""
    a = as_matrix(a)
    if len(b) != a.rows:
        raise DimensionError(f"right-hand side has length {len(b)}, matrix has {a.rows} rows")
    snf = smith_normal_form(a)
    c = snf.u.apply(b)
    y = [0] * a.cols
    for i, ci in enumerate(c):
        di = snf.d[i] if i < len(snf.d) else 0
        if di == 0:
            if ci != 0:
                return None
        else:
            q, r = divmod(ci, di)
            if r:
                return None
            y[i] = q
    return snf.v.apply(y)


def _row_hermite(rows: list[list[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Row Hermite normal form ``H = Q R`` of a full-row-rank matrix.

    Returns ``(H, Q, Q^{-1})``.
    """
    r = len(rows)
    width = len(rows[0]) if rows else 0
    H = [list(x) for x in rows]
    Q = [[int(i == j) for j in range(r)] for i in range(r)]
    Qi = [[int(i == j) for j in range(r)] for i in range(r)]

    def add_row(dst, src, c):
        if c == 0:
            return
        H[dst] = [x + c * y for x, y in zip(H[dst], H[src])]
        Q[dst] = [x + c * y for x, y in zip(Q[dst], Q[src])]
        for row in Qi:
            row[src] -= c * row[dst]

    def swap(i, j):
        H[i], H[j] = H[j], H[i]
        Q[i], Q[j] = Q[j], Q[i]
        for row in Qi:
            row[i], row[j] = row[j], row[i]

    def negate(i):
        H[i] = [-x for x in H[i]]
        Q[i] = [-x for x in Q[i]]
        for row in Qi:
            row[i] = -row[i]

    pr = 0
    for col in range(width):
        if pr == r:
            break
        while True:
            nz = [i for i in range(pr, r) if H[i][col]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(H[i][col]), i))
            swap(pr, i0)
            for i in range(pr + 1, r):
                if H[i][col]:
                    add_row(i, pr, -(H[i][col] // H[pr][col]))
            if all(H[i][col] == 0 for i in range(pr + 1, r)):
                break
        if H[pr][col] == 0:
            continue
        if H[pr][col] < 0:
            negate(pr)
        for i in range(pr):
            add_row(i, pr, -(H[i][col] // H[pr][col]))
        pr += 1
    return H, Q, Qi


# --------------------------------------------------------------------------
# Finitely generated abelian groups


@dataclass(frozen=True)
class FgAbelianGroup:
    """``Z^rank + Z/t_1 + ... + Z/t_k`` with ``t_1 | ... | t_k`` and ``t_j >= 2``.

    The group is a quotient of an ambient lattice ``Z^ambient_dim``.
    ``projection`` maps ambient vectors to normal-form coordinates (free
    coordinates first, then torsion coordinates, the latter read modulo
    ``t_j``); ``section`` maps normal-form coordinates back to ambient vectors.
    """

    rank: int
    torsion: tuple[int, ...]
    projection: IntegerMatrix
    section: IntegerMatrix

    @property
    def ambient_dim(self) -> int:
        return self.projection.cols

    @property
    def ngens(self) -> int:
        return self.rank + len(self.torsion)

    @property
    def invariants(self) -> tuple[int, tuple[int, ...]]:
        return (self.rank, self.torsion)

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def is_torsion_free(self) -> bool:
        return not self.torsion

    def order(self) -> Optional[int]:
        """Group order, or ``None`` when the group is infinite."""
        if self.rank:
            return None
        return reduce(lambda x, y: x * y, self.torsion, 1)

    def isomorphic(self, other: FgAbelianGroup) -> bool:
        return self.invariants == other.invariants

    @classmethod
    def from_invariants(cls, factors: Iterable[int] = (), rank: int = 0) -> FgAbelianGroup:
        """``Z/f_1 + ... + Z/f_k + Z^rank``; factors need not form a chain.

        The ambient coordinates are the given factors followed by the free
        ones, so elements can be entered in the presentation the caller used.
        """
        factors = [int(f) for f in factors]
        if any(f < 0 for f in factors):
            raise InputError("invariant factors must be nonnegative")
        k = len(factors)
        rows = [[factors[i] if i == j else 0 for j in range(k)] for i in range(k)]
        rows += [[0] * k for _ in range(rank)]
        return cokernel(IntegerMatrix.from_rows(rows, cols=k))

    def zero(self) -> GroupElement:
        return GroupElement(self, (0,) * self.rank, (0,) * len(self.torsion))

    def element(self, free: Sequence[int] = (), torsion: Sequence[int] = ()) -> GroupElement:
        """Element given by normal-form coordinates."""
        if len(free) != self.rank or len(torsion) != len(self.torsion):
            raise DimensionError(
                f"group {self} needs {self.rank} free and {len(self.torsion)} torsion coordinates"
            )
        return GroupElement(
            self, tuple(int(x) for x in free),
            tuple(int(x) % t for x, t in zip(torsion, self.torsion)),
        )

    def generators(self) -> list[GroupElement]:
        gens = []
        for i in range(self.ngens):
            c = [int(i == j) for j in range(self.ngens)]
            gens.append(self.element(c[:self.rank], c[self.rank:]))
        return gens

    def lift(self, x: GroupElement) -> Vector:
        """An ambient vector whose class is ``x``."""
        return self.section.apply(x.free_part + x.torsion_part)

    def __str__(self) -> str:
        parts = [f"Z/{t}" for t in self.torsion]
        if self.rank:
            parts.insert(0, "Z" if self.rank == 1 else f"Z^{self.rank}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GroupElement:
    group: FgAbelianGroup
    free_part: tuple[int, ...]
    torsion_part: tuple[int, ...]

    def _check(self, other: GroupElement):
        if self.group is not other.group and self.group != other.group:
            raise DimensionError("elements of different groups")

    def __add__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        return self.group.element(
            [a + b for a, b in zip(self.free_part, other.free_part)],
            [a + b for a, b in zip(self.torsion_part, other.torsion_part)],
        )

    def __neg__(self) -> GroupElement:
        return self.group.element([-a for a in self.free_part], [-a for a in self.torsion_part])

    def __sub__(self, other: GroupElement) -> GroupElement:
        return self + (-other)

    def __mul__(self, k: int) -> GroupElement:
        return self.group.element([k * a for a in self.free_part], [k * a for a in self.torsion_part])

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.free_part) and not any(self.torsion_part)

    @property
    def coordinates(self) -> tuple[int, ...]:
        return self.free_part + self.torsion_part

    def as_dict(self) -> dict:
        return {"free": list(self.free_part), "torsion": list(self.torsion_part)}

    def __repr__(self) -> str:
        return f"GroupElement(free={list(self.free_part)}, torsion={list(self.torsion_part)})"


def cokernel(a) -> FgAbelianGroup:
    """``Z^rows / image(a)`` in invariant-factor normal form.

    Free coordinates are put in row Hermite normal form, which makes them
    independent of the elimination order (the torsion coordinates are only
    deterministic, automorphisms of the torsion part being unavoidable).
    """
    a = as_matrix(a)
    m = a.rows
    snf = smith_normal_form(a)
    free_idx, tors_idx, torsion = [], [], []
    for i in range(m):
        di = snf.d[i] if i < len(snf.d) else 0
        if di == 0:
            free_idx.append(i)
        elif di != 1:
            tors_idx.append(i)
            torsion.append(di)

    free_rows = [list(snf.u.row(i)) for i in free_idx]
    free_sec = [list(snf.u_inv.column(i)) for i in free_idx]
    if free_rows:
        free_rows, _, qinv = _row_hermite(free_rows)
        # new section columns = old section columns times Q^{-1}
        r = len(free_idx)
        free_sec = [
            [sum(free_sec[k][x] * qinv[k][j] for k in range(r)) for x in range(m)]
            for j in range(r)
        ]
    proj_rows = free_rows + [list(snf.u.row(i)) for i in tors_idx]
    sec_cols = free_sec + [list(snf.u_inv.column(i)) for i in tors_idx]
    projection = IntegerMatrix.from_rows(proj_rows, cols=m)
    section = IntegerMatrix.from_columns(sec_cols, rows=m) if sec_cols else IntegerMatrix.zeros(m, 0)
    return FgAbelianGroup(len(free_idx), tuple(torsion), projection, section)


def element_of(group: FgAbelianGroup, ambient: Sequence[int]) -> GroupElement:
    """Class of an ambient vector."""
    if len(ambient) != group.ambient_dim:
        raise DimensionError(
            f"ambient vector of length {len(ambient)}, group presented on Z^{group.ambient_dim}"
        )
    y = group.projection.apply(ambient)
    return group.element(y[:group.rank], y[group.rank:])


def _relation_matrix(group: FgAbelianGroup, gens: Sequence[GroupElement]) -> IntegerMatrix:
    """``[g_1 ... g_s | diag(torsion)]`` in normal-form coordinates."""
    for g in gens:
        if g.group is not group and g.group != group:
            raise DimensionError("generator does not belong to the group")
    k = len(group.torsion)
    rows = []
    for i in range(group.ngens):
        row = [g.coordinates[i] for g in gens]
        row += [group.torsion[i - group.rank] if i - group.rank == j else 0 for j in range(k)]
        rows.append(row)
    return IntegerMatrix.from_rows(rows, cols=len(gens) + k)


def hom_kernel(group: FgAbelianGroup, images: Sequence[GroupElement]) -> list[Vector]:
    """Basis of the kernel of ``Z^s -> group``, ``e_i -> images[i]``.

    The basis is returned in row Hermite normal form, so it does not depend on
    how the kernel was found.
    """
    s = len(images)
    rel = _relation_matrix(group, images)
    gens = [v[:s] for v in kernel_basis(rel)]
    if not gens:
        return []
    basis = image_basis(IntegerMatrix.from_columns(gens, rows=s))
    return [tuple(r) for r in _row_hermite([list(b) for b in basis])[0]]


def quotient_group(group: FgAbelianGroup, gens: Sequence[GroupElement]) -> FgAbelianGroup:
    """``group / <gens>``, presented on the normal-form coordinates of ``group``."""
    return cokernel(_relation_matrix(group, gens))


def subgroup_generated(group: FgAbelianGroup, gens: Sequence[GroupElement]) -> FgAbelianGroup:
    """The subgroup ``<gens>`` in normal form, presented on ``Z^len(gens)``."""
    s = len(gens)
    ker = hom_kernel(group, gens)
    rel = IntegerMatrix.from_columns(ker, rows=s) if ker else IntegerMatrix.zeros(s, 0)
    return cokernel(rel)


def generates_whole_group(group: FgAbelianGroup, gens: Sequence[GroupElement]) -> bool:
    return quotient_group(group, gens).is_trivial


def vector_gcd(v: Iterable[int]) -> int:
    return reduce(gcd, v, 0)
