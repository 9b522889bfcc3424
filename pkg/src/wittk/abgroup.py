"""Finitely generated abelian groups as cokernels of integer matrices.

Matrices are lists of rows of Python ints. A presentation of rank r is
Z^r modulo the lattice spanned by its relator columns; maps between
presentations are integer matrices on the ambient lattices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from math import prod
from typing import Sequence

from .errors import NotWellDefinedError, UsageError

Matrix = list[list[int]]


# -- dense integer matrix helpers ------------------------------------------------

def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def transpose(M: Sequence[Sequence[int]], nrows: int | None = None) -> Matrix:
    if not M:
        return [[] for _ in range(nrows or 0)]
    return [list(col) for col in zip(*M)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], inner: int | None = None) -> Matrix:
    if inner is None:
        inner = len(B)
    ncols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * ncols
        for k, a in enumerate(row):
            if a:
                Bk = B[k]
                for j in range(ncols):
                    b = Bk[j]
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(a * x for a, x in zip(row, v) if a and x) for row in A]


def columns(M: Sequence[Sequence[int]]) -> list[list[int]]:
    return [list(c) for c in zip(*M)] if M and M[0] else []


def from_columns(cols: Sequence[Sequence[int]], nrows: int) -> Matrix:
    if not cols:
        return [[] for _ in range(nrows)]
    return [list(r) for r in zip(*cols)]


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    A = [list(r) for r in M]
    n = len(A)
    if n == 0:
        return 1
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
    return sign * A[n - 1][n - 1]


# -- Smith normal form -----------------------------------------------------------

@dataclass(frozen=True)
class SmithForm:
    U: Matrix
    D: Matrix
    V: Matrix

    @cached_property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @cached_property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    def __iter__(self):
        return iter((self.U, self.D, self.V))


def snf(M: Sequence[Sequence[int]], ncols: int | None = None) -> SmithForm:
    """Smith normal form with transforms: U * M * V = D.

    Pivots on the entry of least absolute value; D has nonnegative diagonal
    d_1 | d_2 | ... and U, V are unimodular.
    """
    A = [list(map(int, r)) for r in M]
    m = len(A)
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        Ad, As = A[dst], A[src]
        for k in range(n):
            if As[k]:
                Ad[k] -= q * As[k]
        Ud, Us = U[dst], U[src]
        for k in range(m):
            if Us[k]:
                Ud[k] -= q * Us[k]

    def add_col(dst, src, q):  # col dst -= q * col src
        for row in A:
            if row[src]:
                row[dst] -= q * row[src]
        for row in V:
            if row[src]:
                row[dst] -= q * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                a = row[j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            piv = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, A[i][t] // piv)
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, A[t][j] // piv)
                    dirty = dirty or A[t][j] != 0
            if dirty:
                # a remainder smaller than the pivot survived; move it to the pivot slot
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cand)
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return SmithForm(U, A, V)


def integer_kernel(M: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """A basis (list of vectors) of {x in Z^ncols : M x = 0}; saturated."""
    if not M:
        return [list(r) for r in identity(ncols)]
    sf = snf(M, ncols)
    V = sf.V
    return [[V[i][j] for i in range(ncols)] for j in range(sf.rank, ncols)]


class LatticeSolver:
    """Solve B y = v over the integers for many right-hand sides."""

    def __init__(self, B: Sequence[Sequence[int]], nrows: int, ncols: int):
        self.nrows, self.ncols = nrows, ncols
        self.sf = snf(B, ncols) if nrows and ncols else None

    def solve(self, v: Sequence[int]) -> list[int] | None:
        if self.sf is None:
            return [0] * self.ncols if not any(v) else None
        U, D, V = self.sf
        r = self.sf.rank
        w = matvec(U, v)
        z = [0] * self.ncols
        for i, x in enumerate(w):
            if i < r:
                q, rem = divmod(x, D[i][i])
                if rem:
                    return None
                z[i] = q
            elif x:
                return None
        return matvec(V, z)


# -- Hermite normal form and lattice membership ----------------------------------

def hnf_basis(vectors: Sequence[Sequence[int]], dim: int) -> list[list[int]]:
    """Echelon basis of the lattice spanned by ``vectors`` in Z^dim.

    Basis vectors have strictly increasing pivot rows, zeros above the pivot,
    a positive pivot, and entries in later pivot rows reduced modulo that
    pivot (column-style Hermite normal form).
    """
    vecs = [list(v) for v in vectors if any(v)]
    basis: list[list[int]] = []
    pivots: list[int] = []
    for r in range(dim):
        active = [v for v in vecs if v[r]]
        rest = [v for v in vecs if not v[r]]
        while len(active) > 1:
            active.sort(key=lambda v: abs(v[r]))
            piv = active[0]
            nxt = [piv]
            for v in active[1:]:
                q = v[r] // piv[r]
                w = [a - q * b for a, b in zip(v, piv)]
                (nxt if w[r] else rest).append(w)
            active = nxt
        if active:
            piv = active[0]
            if piv[r] < 0:
                piv = [-a for a in piv]
            for b in basis:
                q = b[r] // piv[r]
                if q:
                    for k in range(r, dim):
                        b[k] -= q * piv[k]
            basis.append(piv)
            pivots.append(r)
        vecs = [v for v in rest if any(v)]
    return basis


def hnf_reduce(v: Sequence[int], basis: Sequence[Sequence[int]]) -> list[int]:
    """Reduce v by an echelon basis; zero result iff v lies in the lattice."""
    w = list(v)
    for b in basis:
        r = next(i for i, x in enumerate(b) if x)
        q, rem = divmod(w[r], b[r])
        if rem:
            return w
        if q:
            for k in range(r, len(w)):
                w[k] -= q * b[k]
    return w


def in_lattice(v: Sequence[int], basis: Sequence[Sequence[int]]) -> bool:
    return not any(hnf_reduce(v, basis))


# -- presentations ---------------------------------------------------------------

@dataclass(frozen=True)
class AbGroupPresentation:
    """Z^rank modulo the span of ``relators`` (each a vector of length rank)."""

    rank: int
    relators: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        rels = tuple(tuple(int(x) for x in c) for c in self.relators)
        if any(len(c) != self.rank for c in rels):
            raise UsageError(f"relators must have length {self.rank}")
        object.__setattr__(self, "relators", rels)

    @classmethod
    def cyclic_sum(cls, orders: Sequence[int]) -> "AbGroupPresentation":
        """Z/d_1 + ... + Z/d_r on the standard basis (d = 0 gives Z)."""
        r = len(orders)
        rels = [tuple(d if i == j else 0 for i in range(r)) for j, d in enumerate(orders) if d != 0]
        return cls(r, tuple(rels))

    @classmethod
    def from_matrix(cls, M: Sequence[Sequence[int]], rank: int | None = None) -> "AbGroupPresentation":
        rank = len(M) if rank is None else rank
        return cls(rank, tuple(tuple(c) for c in columns(M)))

    @property
    def relation_matrix(self) -> Matrix:
        return from_columns(self.relators, self.rank)

    @cached_property
    def smith(self) -> SmithForm:
        return snf(self.relation_matrix, len(self.relators))

    @cached_property
    def _factors(self) -> tuple[tuple[int, ...], int]:
        diag = [d for d in self.smith.diagonal if d]
        free = self.rank - len(diag)
        return tuple(d for d in diag if d > 1), free

    @property
    def invariant_factors(self) -> list[int]:
        """Nontrivial invariant factors d_1 | d_2 | ..., ascending."""
        return list(self._factors[0])

    @property
    def free_rank(self) -> int:
        return self._factors[1]

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        """Group order, or None when infinite."""
        return prod(self.invariant_factors) if self.is_finite else None

    @property
    def is_trivial(self) -> bool:
        return self.is_finite and not self.invariant_factors

    @cached_property
    def lattice(self) -> list[list[int]]:
        return hnf_basis(self.relators, self.rank)

    def contains_relation(self, v: Sequence[int]) -> bool:
        """Whether ambient vector v is zero in the group."""
        return in_lattice(v, self.lattice)

    def isomorphic(self, other: "AbGroupPresentation") -> bool:
        return self._factors == other._factors

    def to_dict(self) -> dict:
        o = self.order
        return {
            "free_rank": self.free_rank,
            "invariant_factors": self.invariant_factors,
            "order": "infinite" if o is None else str(o),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def __str__(self):
        return format_group(self.invariant_factors, self.free_rank)


def format_group(factors: Sequence[int], free_rank: int = 0) -> str:
    parts = ["Z"] * free_rank + [f"Z/{d}" for d in sorted(factors, reverse=True)]
    return " ⊕ ".join(parts) if parts else "0"


def invariant_factors(G: AbGroupPresentation) -> tuple[list[int], int]:
    """(nontrivial invariant factors ascending, free rank)."""
    return G.invariant_factors, G.free_rank


def trivial_group() -> AbGroupPresentation:
    return AbGroupPresentation(0, ())


def quotient_by(G: AbGroupPresentation, gens: Sequence[Sequence[int]]) -> AbGroupPresentation:
    """G modulo the subgroup generated by the columns of ``gens`` (G.rank rows)."""
    gens = [list(r) for r in gens]
    if gens and len(gens) != G.rank:
        raise UsageError(f"generator matrix has {len(gens)} rows, group rank is {G.rank}")
    return quotient_by_columns(G, columns(gens) if gens else [])


def quotient_by_columns(G: AbGroupPresentation, cols: Sequence[Sequence[int]]) -> AbGroupPresentation:
    cols = [tuple(c) for c in cols]
    if any(len(c) != G.rank for c in cols):
        raise UsageError(f"generators must have length {G.rank}")
    return AbGroupPresentation(G.rank, G.relators + tuple(c for c in cols if any(c)))


# -- maps ------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GroupMap:
    """Homomorphism source -> target given by a target.rank x source.rank matrix.

    Construct through :func:`induced_map`, which certifies well-definedness.
    """

    source: AbGroupPresentation
    target: AbGroupPresentation
    matrix: Matrix = field(repr=False)

    def __call__(self, v: Sequence[int]) -> list[int]:
        return matvec(self.matrix, v)

    @property
    def image_columns(self) -> list[list[int]]:
        if not self.target.rank:
            return [[] for _ in range(self.source.rank)]
        return columns(self.matrix) if self.source.rank else []

    @cached_property
    def kernel_lattice(self) -> list[list[int]]:
        """Generators of {x in Z^source.rank : matrix x is zero in target}."""
        rs = self.source.rank
        if rs == 0:
            return []
        rt = self.target.rank
        if rt == 0:
            return [list(r) for r in identity(rs)]
        rels = self.target.relators
        aug = [list(self.matrix[i]) + [-c[i] for c in rels] for i in range(rt)]
        return [v[:rs] for v in integer_kernel(aug, rs + len(rels))]

    @property
    def is_injective(self) -> bool:
        return all(self.source.contains_relation(v) for v in self.kernel_lattice)

    @property
    def is_surjective(self) -> bool:
        return self.cokernel().is_trivial

    @property
    def is_zero(self) -> bool:
        return all(self.target.contains_relation(c) for c in self.image_columns)

    def image(self) -> AbGroupPresentation:
        """The image, presented as Z^source.rank / kernel lattice."""
        return AbGroupPresentation(self.source.rank, tuple(tuple(v) for v in self.kernel_lattice))

    @property
    def image_order(self) -> int | None:
        return self.image().order

    def kernel(self) -> "AbGroupPresentation":
        """ker = (kernel lattice) / (source relations), in coordinates of a lattice basis."""
        K = hnf_basis(self.kernel_lattice, self.source.rank)
        if not K:
            return trivial_group()
        solver = LatticeSolver(from_columns(K, self.source.rank), self.source.rank, len(K))
        rels = []
        for c in self.source.relators:
            y = solver.solve(c)
            assert y is not None, "source relation outside kernel lattice"
            rels.append(tuple(y))
        return AbGroupPresentation(len(K), tuple(rels))

    def cokernel(self) -> AbGroupPresentation:
        return quotient_by_columns(self.target, self.image_columns)

    def then(self, other: "GroupMap") -> "GroupMap":
        """Composite other o self."""
        if self.target != other.source:
            raise UsageError("maps are not composable")
        if self.source.rank and self.target.rank:
            M = matmul(other.matrix, self.matrix)
        else:
            M = zeros(other.target.rank, self.source.rank)
        return GroupMap(self.source, other.target, M)

    def equals(self, other: "GroupMap") -> bool:
        """Equality as homomorphisms (matrices may differ by target relations)."""
        if self.source != other.source or self.target != other.target:
            return False
        for a, b in zip(self.image_columns, other.image_columns):
            if not self.target.contains_relation([x - y for x, y in zip(a, b)]):
                return False
        return True


def induced_map(f: Sequence[Sequence[int]], G1: AbGroupPresentation, G2: AbGroupPresentation) -> GroupMap:
    """Certify that f : Z^r1 -> Z^r2 descends to G1 -> G2 and wrap it.

    Raises NotWellDefinedError with a witness relator otherwise.
    """
    M = [list(map(int, r)) for r in f]
    if len(M) != G2.rank or any(len(r) != G1.rank for r in M):
        raise UsageError(f"matrix shape does not match {G2.rank} x {G1.rank}")
    for idx, c in enumerate(G1.relators):
        img = matvec(M, c)
        if not G2.contains_relation(img):
            raise NotWellDefinedError(
                f"relator {idx} of the source maps to {img}, which is nonzero in the target",
                column=idx,
                image=img,
            )
    return GroupMap(G1, G2, M)


def zero_map(G1: AbGroupPresentation, G2: AbGroupPresentation) -> GroupMap:
    return GroupMap(G1, G2, zeros(G2.rank, G1.rank))


def identity_map(G: AbGroupPresentation) -> GroupMap:
    return GroupMap(G, G, identity(G.rank))


@dataclass(frozen=True)
class SESReport:
    left_injective: bool
    composite_zero: bool
    exact_middle: bool
    right_surjective: bool

    @property
    def exact(self) -> bool:
        return self.left_injective and self.composite_zero and self.exact_middle and self.right_surjective

    def failures(self) -> list[str]:
        return [k for k, v in self.__dict__.items() if not v]


def ses_check(f: GroupMap, g: GroupMap) -> SESReport:
    """Check 0 -> A -f-> B -g-> C -> 0 for exactness, clause by clause."""
    if f.target != g.source:
        raise UsageError("maps are not composable")
    B = f.target
    composite_zero = f.then(g).is_zero
    im_f = hnf_basis(list(B.relators) + f.image_columns, B.rank)
    exact_middle = composite_zero and all(in_lattice(v, im_f) for v in g.kernel_lattice)
    return SESReport(
        left_injective=f.is_injective,
        composite_zero=composite_zero,
        exact_middle=exact_middle,
        right_surjective=g.is_surjective,
    )
