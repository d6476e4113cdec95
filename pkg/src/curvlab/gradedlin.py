"""Exact graded linear algebra: spaces, maps, complexes, cohomology, solving.

Vectors are sparse dicts {basis_index: coefficient}; matrices are lists of
sparse rows.  Row reduction uses deterministic lexicographic pivoting (basis
order = label order as given), so every output is reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .fields import FieldSpec


# ---------------------------------------------------------------------------
# spaces


@dataclass(frozen=True)
class GradedSpace:
    """Finite graded vector space with an ordered labelled basis."""

    basis: Tuple[Tuple[str, int], ...]  # (label, cohomological degree)
    field: FieldSpec

    def __post_init__(self):
        labels = [l for l, _ in self.basis]
        if len(set(labels)) != len(labels):
            raise ValueError("basis labels must be unique")

    @staticmethod
    def make(basis, field: FieldSpec) -> "GradedSpace":
        return GradedSpace(tuple((str(l), int(d)) for l, d in basis), field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def labels(self) -> List[str]:
        return [l for l, _ in self.basis]

    def degree(self, i: int) -> int:
        return self.basis[i][1]

    def index(self, label: str) -> int:
        for i, (l, _) in enumerate(self.basis):
            if l == label:
                return i
        raise KeyError(label)

    def degrees_present(self) -> List[int]:
        return sorted({d for _, d in self.basis})

    def indices_of_degree(self, n: int) -> List[int]:
        return [i for i, (_, d) in enumerate(self.basis) if d == n]

    def dim_in_degree(self, n: int) -> int:
        return len(self.indices_of_degree(n))

    def zero_vector(self) -> Dict[int, object]:
        return {}

    def basis_vector(self, i: int) -> Dict[int, object]:
        return {i: self.field.one()}

    def element_degree(self, v: Dict[int, object]) -> Optional[int]:
        """Degree of a homogeneous element, None for 0; raises if mixed."""
        degs = {self.degree(i) for i, c in v.items() if not self.field.is_zero(c)}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"element is not homogeneous: degrees {sorted(degs)}")
        return degs.pop()


def shift(space: GradedSpace, k: int) -> GradedSpace:
    """Shift [k]: degrees drop by k, per the convention A[1]^i = A^{1+i}."""
    return GradedSpace(tuple((l, d - k) for l, d in space.basis), space.field)


# ---------------------------------------------------------------------------
# sparse vector helpers (module-level: used throughout curvlab)


def vec_add(F: FieldSpec, u: dict, v: dict) -> dict:
    out = dict(u)
    for i, c in v.items():
        s = F.add(out.get(i, F.zero()), c)
        if F.is_zero(s):
            out.pop(i, None)
        else:
            out[i] = s
    return out


def vec_sub(F: FieldSpec, u: dict, v: dict) -> dict:
    return vec_add(F, u, vec_scale(F, F.neg(F.one()), v))


def vec_scale(F: FieldSpec, c, v: dict) -> dict:
    if F.is_zero(c):
        return {}
    return {i: F.mul(c, x) for i, x in v.items() if not F.is_zero(F.mul(c, x))}


def vec_is_zero(F: FieldSpec, v: dict) -> bool:
    return all(F.is_zero(c) for c in v.values())


def vec_eq(F: FieldSpec, u: dict, v: dict) -> bool:
    return vec_is_zero(F, vec_sub(F, u, v))


def vec_key(v: dict, dim: int) -> tuple:
    """Deterministic sort key for a coefficient vector."""
    return tuple(str(v.get(i, 0)) for i in range(dim))


# ---------------------------------------------------------------------------
# row reduction


def rref(F: FieldSpec, rows: List[dict], ncols: int) -> Tuple[List[dict], List[int]]:
    """Reduced row echelon form; pivots chosen left to right (lexicographic).

    Returns (reduced nonzero rows, pivot column list).
    """
    rows = [dict(r) for r in rows if not vec_is_zero(F, r)]
    out: List[dict] = []
    pivots: List[int] = []
    for col in range(ncols):
        pr = None
        for r in rows:
            if not F.is_zero(r.get(col, F.zero())):
                pr = r
                break
        if pr is None:
            continue
        rows.remove(pr)
        pr = vec_scale(F, F.inv(pr[col]), pr)
        for r in rows + out:
            c = r.get(col, F.zero())
            if not F.is_zero(c):
                upd = vec_sub(F, r, vec_scale(F, c, pr))
                r.clear()
                r.update(upd)
        rows = [r for r in rows if not vec_is_zero(F, r)]
        out.append(pr)
        pivots.append(col)
    return out, pivots


def span_rank(F: FieldSpec, rows: List[dict], ncols: int) -> int:
    return len(rref(F, rows, ncols)[0])


def in_span(F: FieldSpec, rows: List[dict], v: dict, ncols: int) -> bool:
    r = span_rank(F, rows, ncols)
    return span_rank(F, rows + [v], ncols) == r


def solve(F: FieldSpec, rows: List[dict], rhs: List, ncols: int):
    """Solve the linear system rows*x = rhs exactly.

    Returns (particular solution dict, kernel basis list) or None when
    inconsistent.  Particular solution: free variables set to zero, pivot
    order lexicographic.
    """
    aug = []
    for r, b in zip(rows, rhs):
        row = dict(r)
        if not F.is_zero(b):
            row[ncols] = b
        aug.append(row)
    red, pivots = rref(F, aug, ncols + 1)
    if ncols in pivots:
        return None
    sol: Dict[int, object] = {}
    for r, p in zip(red, pivots):
        b = r.get(ncols, F.zero())
        if not F.is_zero(b):
            sol[p] = b
    kernel: List[dict] = []
    pivset = set(pivots)
    for free in range(ncols):
        if free in pivset:
            continue
        k = {free: F.one()}
        for r, p in zip(red, pivots):
            c = r.get(free, F.zero())
            if not F.is_zero(c):
                k[p] = F.neg(c)
        kernel.append(k)
    return sol, kernel


def kernel_basis(F: FieldSpec, rows: List[dict], ncols: int) -> List[dict]:
    res = solve(F, rows, [F.zero()] * len(rows), ncols)
    assert res is not None
    return res[1]


def enumerate_affine(F: FieldSpec, particular: dict, kernel: List[dict], budget: int):
    """All points of an affine subspace over F_p, deterministically ordered."""
    if not F.is_prime_field:
        raise ValueError("affine enumeration needs a finite field")
    p = F.characteristic
    total = p ** len(kernel)
    if total > budget:
        raise BudgetExceeded(total, budget)
    pts = []
    coeffs = [0] * len(kernel)
    for n in range(total):
        m = n
        for i in range(len(kernel)):
            coeffs[i] = m % p
            m //= p
        v = dict(particular)
        for c, k in zip(coeffs, kernel):
            if c:
                v = vec_add(F, v, vec_scale(F, c, k))
        pts.append(v)
    return pts


class BudgetExceeded(Exception):
    """Raised when an enumeration would exceed its configured budget."""

    def __init__(self, required: int, budget: int):
        super().__init__(
            f"enumeration requires {required} states, budget is {budget}; "
            f"raise the budget (CURVLAB_MAX_ENUM or --max-enum) to proceed"
        )
        self.required = required
        self.budget = budget


# ---------------------------------------------------------------------------
# graded maps and complexes


@dataclass
class GradedMap:
    """Homogeneous linear map between graded spaces, sparse entry table.

    entries[j] = column j as {target_index: coeff}: the image of source
    basis vector j.
    """

    source: GradedSpace
    target: GradedSpace
    degree: int
    entries: Dict[int, dict] = field(default_factory=dict)

    def __post_init__(self):
        F = self.source.field
        for j, col in self.entries.items():
            sd = self.source.degree(j)
            for i, c in col.items():
                if F.is_zero(c):
                    continue
                if self.target.degree(i) != sd + self.degree:
                    raise ValueError(
                        f"entry {self.source.basis[j][0]} -> {self.target.basis[i][0]} "
                        f"violates degree {self.degree}"
                    )

    @property
    def field(self) -> FieldSpec:
        return self.source.field

    def apply(self, v: dict) -> dict:
        F = self.field
        out: dict = {}
        for j, c in v.items():
            col = self.entries.get(j)
            if not col or F.is_zero(c):
                continue
            out = vec_add(F, out, vec_scale(F, c, col))
        return out

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self after other."""
        F = self.field
        entries = {}
        for j in range(other.source.dim):
            col = self.apply(other.entries.get(j, {}))
            if col:
                entries[j] = col
        return GradedMap(other.source, self.target, self.degree + other.degree, entries)

    def matrix_rows(self) -> List[dict]:
        """Rows indexed by source basis (row j = image of e_j), for rank work."""
        return [dict(self.entries.get(j, {})) for j in range(self.source.dim)]

    def is_zero(self) -> bool:
        F = self.field
        return all(vec_is_zero(F, col) for col in self.entries.values())


def graded_map_from_function(source, target, degree, fn) -> GradedMap:
    entries = {}
    for j in range(source.dim):
        col = fn(j)
        if col:
            entries[j] = col
    return GradedMap(source, target, degree, entries)


@dataclass
class Complex:
    """Graded space with a degree +1 differential squaring to zero."""

    space: GradedSpace
    d: GradedMap

    def __post_init__(self):
        if self.d.degree != 1:
            raise ValueError("differential must have degree +1")
        dd = self.d.compose(self.d)
        if not dd.is_zero():
            bad = next(j for j, col in dd.entries.items() if col)
            raise ValueError(
                f"d^2 != 0 (witness basis element {self.space.basis[bad][0]!r})"
            )


def cohomology(c: Complex, lo: int, hi: int) -> Dict[int, dict]:
    """Per-degree cohomology over a window [lo, hi].

    Returns {degree: {"dim": k, "representatives": [vector, ...]}} with
    representative cocycles (coefficients over the full basis).
    Degrees without basis support report dimension 0.
    """
    F = c.space.field
    out = {}
    for n in range(lo, hi + 1):
        idx = c.space.indices_of_degree(n)
        if not idx:
            out[n] = {"dim": 0, "representatives": []}
            continue
        pos = {g: k for k, g in enumerate(idx)}
        # kernel of d restricted to degree n
        rows = []
        for j in idx:
            rows.append(dict(c.d.entries.get(j, {})))
        # treat as map: rows indexed by source-degree-n basis; transpose to solve
        ncols_t = c.space.dim
        # build matrix with columns = degree-n basis, rows = all target coords
        cols = {j: c.d.entries.get(j, {}) for j in idx}
        target_rows: Dict[int, dict] = {}
        for k, j in enumerate(idx):
            for i, coeff in cols[j].items():
                target_rows.setdefault(i, {})[k] = coeff
        kern = kernel_basis(F, list(target_rows.values()), len(idx))
        # image of d from degree n-1
        prev = c.space.indices_of_degree(n - 1)
        img_rows = []
        for j in prev:
            col = c.d.entries.get(j, {})
            img_rows.append({pos[i]: coeff for i, coeff in col.items() if i in pos})
        img_red, _ = rref(F, img_rows, len(idx))
        reps = []
        span = [dict(r) for r in img_red]
        for k in kern:
            if not in_span(F, span, k, len(idx)):
                reps.append(k)
                span.append(k)
        dim = len(kern) - len(img_red)
        out[n] = {
            "dim": dim,
            "representatives": [
                {idx[k]: coeff for k, coeff in rep.items()} for rep in reps
            ],
        }
        assert len(reps) == dim
    return out


def solve_linear(A: GradedMap, b: dict):
    """Solve A x = b exactly.

    Returns (particular, kernel_basis) with deterministic particular solution,
    or None if no solution exists.
    """
    F = A.field
    rows_by_target: Dict[int, dict] = {}
    for j in range(A.source.dim):
        for i, c in A.entries.get(j, {}).items():
            rows_by_target.setdefault(i, {})[j] = c
    targets = sorted(set(rows_by_target) | set(i for i in b))
    rows = [rows_by_target.get(i, {}) for i in targets]
    rhs = [b.get(i, F.zero()) for i in targets]
    return solve(F, rows, rhs, A.source.dim)
