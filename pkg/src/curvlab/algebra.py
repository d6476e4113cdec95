"""Curved algebras by structure constants: validation, morphisms, twists, MC.

Conventions (fixed globally, see README):
  - graded commutator [x,a] = xa - (-1)^{|x||a|} ax
  - Leibniz d(ab) = d(a)b + (-1)^{|a|} a d(b)
  - MC equation h + dx + x^2 = 0; twisted differential d^x = d + [x,-]
  - Koszul tensor signs (a@b)(a'@b') = (-1)^{|b||a'|} aa' @ bb'
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .budget import default_budget
from .fields import FieldSpec
from .gradedlin import (
    BudgetExceeded,
    Complex,
    GradedMap,
    GradedSpace,
    enumerate_affine,
    vec_add,
    vec_eq,
    vec_is_zero,
    vec_key,
    vec_scale,
    vec_sub,
)


@dataclass
class CurvedAlgebra:
    """Finite-dimensional curved algebra given by structure constants.

    mult[(i,j)] = sparse vector for e_i * e_j.  unit is an element (not
    necessarily a basis vector).  h is the curvature element (degree 2).
    """

    space: GradedSpace
    unit: dict
    mult: Dict[Tuple[int, int], dict]
    d: GradedMap
    h: dict

    # cached single-term product tables for the fast validator path
    _prod_cache: Optional[dict] = field(default=None, repr=False, compare=False)

    @property
    def field(self) -> FieldSpec:
        return self.space.field

    @property
    def dim(self) -> int:
        return self.space.dim

    def label(self, i: int) -> str:
        return self.space.basis[i][0]

    def degree(self, i: int) -> int:
        return self.space.degree(i)

    # -- arithmetic on elements ---------------------------------------------

    def basis_product(self, i: int, j: int) -> dict:
        return self.mult.get((i, j), {})

    def product(self, u: dict, v: dict) -> dict:
        F = self.field
        out: dict = {}
        for i, a in u.items():
            if F.is_zero(a):
                continue
            for j, b in v.items():
                c = F.mul(a, b)
                if F.is_zero(c):
                    continue
                out = vec_add(F, out, vec_scale(F, c, self.basis_product(i, j)))
        return out

    def commutator(self, u: dict, v: dict) -> dict:
        """[u, v] with u, v homogeneous."""
        F = self.field
        du = self.space.element_degree(u)
        dv = self.space.element_degree(v)
        if du is None or dv is None:
            return {}
        sign = F.neg(F.one()) if (du * dv) % 2 else F.one()
        return vec_sub(self.field, self.product(u, v), vec_scale(F, sign, self.product(v, u)))

    def scalar(self, c) -> dict:
        return vec_scale(self.field, c, self.unit)

    def apply_d(self, v: dict) -> dict:
        return self.d.apply(v)

    def element_from_labels(self, coeffs: Dict[str, object]) -> dict:
        return {
            self.space.index(l): self.field.coerce(c)
            for l, c in coeffs.items()
            if not self.field.is_zero(self.field.coerce(c))
        }

    # -- validation ----------------------------------------------------------

    def _single_term_tables(self):
        """(idx, coef) tables when every basis product has at most one term."""
        if self._prod_cache is not None:
            return self._prod_cache
        n = self.dim
        idx = [[-1] * n for _ in range(n)]
        coef = [[None] * n for _ in range(n)]
        ok = True
        for (i, j), col in self.mult.items():
            nz = [(k, c) for k, c in col.items() if not self.field.is_zero(c)]
            if len(nz) > 1:
                ok = False
                break
            if nz:
                idx[i][j], coef[i][j] = nz[0]
        object.__setattr__(self, "_prod_cache", (ok, idx, coef))
        return self._prod_cache

    def validate(self, max_violations: int = 8) -> List[str]:
        """Exact axiom check; returns a list of violation descriptions."""
        F = self.field
        out: List[str] = []

        def report(msg):
            if len(out) < max_violations:
                out.append(msg)

        n = self.dim
        # degree homogeneity of products
        for (i, j), col in self.mult.items():
            want = self.degree(i) + self.degree(j)
            for k, c in col.items():
                if not F.is_zero(c) and self.degree(k) != want:
                    report(
                        f"product {self.label(i)}*{self.label(j)} has term "
                        f"{self.label(k)} of wrong degree"
                    )
        # unit degree 0
        try:
            du = self.space.element_degree(self.unit)
            if du not in (None, 0):
                report("unit is not of degree 0")
        except ValueError:
            report("unit is not homogeneous")
        # h degree 2
        try:
            dh = self.space.element_degree(self.h)
            if dh not in (None, 2):
                report("curvature h is not of degree 2")
        except ValueError:
            report("curvature h is not homogeneous")
        # unitality
        for i in range(n):
            e = self.space.basis_vector(i)
            if not vec_eq(F, self.product(self.unit, e), e):
                report(f"1*{self.label(i)} != {self.label(i)}")
            if not vec_eq(F, self.product(e, self.unit), e):
                report(f"{self.label(i)}*1 != {self.label(i)}")
        # associativity
        ok_fast, pidx, pcoef = self._single_term_tables()
        if ok_fast and F.is_prime_field and n >= 24:
            bad = _assoc_check_numpy(self, pidx, pcoef)
            if bad is not None:
                i, j, k = bad
                report(
                    f"associativity fails on "
                    f"({self.label(i)},{self.label(j)},{self.label(k)})"
                )
        elif ok_fast:
            for i in range(n):
                row_i = pidx[i]
                for j in range(n):
                    ij = row_i[j]
                    cij = pcoef[i][j]
                    for k in range(n):
                        jk = pidx[j][k]
                        left_idx = pidx[ij][k] if ij >= 0 else -1
                        right_idx = pidx[i][jk] if jk >= 0 else -1
                        lc = (
                            F.mul(cij, pcoef[ij][k])
                            if ij >= 0 and pidx[ij][k] >= 0
                            else None
                        )
                        rc = (
                            F.mul(pcoef[j][k], pcoef[i][jk])
                            if jk >= 0 and pidx[i][jk] >= 0
                            else None
                        )
                        lz = lc is None or F.is_zero(lc)
                        rz = rc is None or F.is_zero(rc)
                        if lz and rz:
                            continue
                        if lz != rz or left_idx != right_idx or not F.is_zero(F.sub(lc, rc)):
                            report(
                                f"associativity fails on "
                                f"({self.label(i)},{self.label(j)},{self.label(k)})"
                            )
                            if len(out) >= max_violations:
                                return out
        else:
            for i in range(n):
                ei = self.space.basis_vector(i)
                for j in range(n):
                    ej = self.space.basis_vector(j)
                    pij = self.product(ei, ej)
                    for k in range(n):
                        ek = self.space.basis_vector(k)
                        lhs = self.product(pij, ek)
                        rhs = self.product(ei, self.product(ej, ek))
                        if not vec_eq(F, lhs, rhs):
                            report(
                                f"associativity fails on "
                                f"({self.label(i)},{self.label(j)},{self.label(k)})"
                            )
                            if len(out) >= max_violations:
                                return out
        # d degree 1 is enforced by GradedMap; Leibniz
        if ok_fast:
            dcols = [self.d.entries.get(i, {}) for i in range(n)]
            for i in range(n):
                di = dcols[i]
                si = F.one() if self.degree(i) % 2 == 0 else F.neg(F.one())
                row_i = pidx[i]
                cf_i = pcoef[i]
                for j in range(n):
                    m = row_i[j]
                    diff: dict = {}
                    if m >= 0:
                        cij = cf_i[j]
                        for r, dv in dcols[m].items():
                            diff[r] = F.mul(cij, dv)
                    for a, va in di.items():
                        q = pidx[a][j]
                        if q >= 0:
                            c = F.mul(va, pcoef[a][j])
                            s = F.sub(diff.get(q, F.zero()), c)
                            if F.is_zero(s):
                                diff.pop(q, None)
                            else:
                                diff[q] = s
                    for b, vb in dcols[j].items():
                        q = row_i[b]
                        if q >= 0:
                            c = F.mul(si, F.mul(vb, cf_i[b]))
                            s = F.sub(diff.get(q, F.zero()), c)
                            if F.is_zero(s):
                                diff.pop(q, None)
                            else:
                                diff[q] = s
                    if diff:
                        report(f"Leibniz fails on ({self.label(i)},{self.label(j)})")
                        if len(out) >= max_violations:
                            return out
        else:
            for i in range(n):
                ei = self.space.basis_vector(i)
                di = self.d.apply(ei)
                si = F.one() if self.degree(i) % 2 == 0 else F.neg(F.one())
                for j in range(n):
                    ej = self.space.basis_vector(j)
                    lhs = self.d.apply(self.product(ei, ej))
                    rhs = vec_add(
                        F,
                        self.product(di, ej),
                        vec_scale(F, si, self.product(ei, self.d.apply(ej))),
                    )
                    if not vec_eq(F, lhs, rhs):
                        report(f"Leibniz fails on ({self.label(i)},{self.label(j)})")
                        if len(out) >= max_violations:
                            return out
        # d(h) = 0
        if not vec_is_zero(F, self.d.apply(self.h)):
            report("d(h) != 0")
        # d^2 = [h, -]
        for i in range(n):
            ei = self.space.basis_vector(i)
            dd = self.d.apply(self.d.apply(ei))
            ha = self.product(self.h, ei)
            ah = self.product(ei, self.h)
            if not vec_eq(F, dd, vec_sub(F, ha, ah)):
                report(f"d^2 != [h,-] on {self.label(i)}")
                if len(out) >= max_violations:
                    return out
        return out

    def assert_valid(self):
        bad = self.validate()
        if bad:
            raise ValueError("invalid curved algebra: " + "; ".join(bad))

    @property
    def is_dg(self) -> bool:
        return vec_is_zero(self.field, self.h)

    # -- MC machinery ---------------------------------------------------------

    def mc_residual(self, x: dict) -> dict:
        """h + dx + x^2 (zero iff x is Maurer-Cartan)."""
        F = self.field
        return vec_add(F, vec_add(F, self.h, self.d.apply(x)), self.product(x, x))

    def is_mc(self, x: dict) -> bool:
        return vec_is_zero(self.field, self.mc_residual(x))

    def degree_indices(self, n: int) -> List[int]:
        return self.space.indices_of_degree(n)


def _assoc_check_numpy(A: "CurvedAlgebra", pidx, pcoef):
    """Vectorized associativity for prime-field single-term products.

    Returns a violating triple or None.  Products are encoded as index and
    coefficient tables with -1 / 0 denoting zero products.
    """
    import numpy as np

    F = A.field
    p = F.characteristic
    n = A.dim
    IDX = np.full((n + 1, n + 1), -1, dtype=np.int64)
    CF = np.zeros((n + 1, n + 1), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            if pidx[i][j] >= 0:
                IDX[i, j] = pidx[i][j]
                CF[i, j] = int(pcoef[i][j]) % p
    rows = np.arange(n)
    for k in range(n):
        # left: (e_i e_j) e_k; right: e_i (e_j e_k)
        IJ = IDX[:n, :n]  # (i, j) -> index of e_i e_j
        IJ_safe = np.where(IJ < 0, n, IJ)
        left_idx = IDX[IJ_safe, k]
        left_cf = (CF[:n, :n] * CF[IJ_safe, k]) % p
        JK = IDX[:n, k]  # j -> index of e_j e_k
        JK_safe = np.where(JK < 0, n, JK)
        right_idx = IDX[rows[:, None], JK_safe[None, :]]
        right_cf = (CF[rows[:, None], JK_safe[None, :]] * CF[:n, k][None, :]) % p
        lz = left_cf == 0
        rz = right_cf == 0
        mismatch = (lz != rz) | (~lz & ((left_idx != right_idx) | (left_cf != right_cf)))
        if mismatch.any():
            i, j = np.argwhere(mismatch)[0]
            return int(i), int(j), k
    return None


@dataclass
class MCElement:
    algebra: CurvedAlgebra
    x: dict

    def __post_init__(self):
        deg = self.algebra.space.element_degree(self.x)
        if deg not in (None, 1):
            raise ValueError("MC element must have degree 1")
        if not self.algebra.is_mc(self.x):
            raise ValueError("element does not satisfy h + dx + x^2 = 0")


def mc_enumerate(A: CurvedAlgebra, budget: Optional[int] = None) -> List[dict]:
    """All MC elements of A over a prime field, sorted by coefficient vector.

    Over the rationals, raises; use mc_polynomial_system instead.
    """
    F = A.field
    if not F.is_prime_field:
        raise ValueError("mc_enumerate requires a prime field; over Q use mc_polynomial_system")
    budget = default_budget() if budget is None else budget
    idx = A.degree_indices(1)
    total = F.characteristic ** len(idx)
    if total > budget:
        raise BudgetExceeded(total, budget)
    sols = []
    p = F.characteristic
    for n in range(total):
        m = n
        x = {}
        for i in idx:
            c = m % p
            m //= p
            if c:
                x[i] = c
        if A.is_mc(x):
            sols.append(x)
    sols.sort(key=lambda v: vec_key(v, A.dim))
    return sols


def mc_polynomial_system(A: CurvedAlgebra) -> List[str]:
    """The MC equations h + dx + x^2 = 0 as polynomial strings over Q."""
    idx = A.degree_indices(1)
    names = {i: f"x_{A.label(i)}" for i in idx}
    F = A.field
    terms_by_target: Dict[int, List[str]] = {}

    def add_term(k, s):
        terms_by_target.setdefault(k, []).append(s)

    for k, c in A.h.items():
        if not F.is_zero(c):
            add_term(k, f"({F.format_coeff(c)})")
    for i in idx:
        for k, c in A.d.entries.get(i, {}).items():
            if not F.is_zero(c):
                add_term(k, f"({F.format_coeff(c)})*{names[i]}")
    for i in idx:
        for j in idx:
            for k, c in A.basis_product(i, j).items():
                if not F.is_zero(c):
                    add_term(k, f"({F.format_coeff(c)})*{names[i]}*{names[j]}")
    return [
        " + ".join(terms_by_target[k]) + " = 0  [component " + A.label(k) + "]"
        for k in sorted(terms_by_target)
    ]


# ---------------------------------------------------------------------------
# morphisms


@dataclass
class CurvedMorphism:
    """Morphism (f, b): pair of a graded algebra map and a degree 1 element b
    of the target, satisfying f(da) = d(fa) + [b, fa] and
    f(h_A) = h_B + db + b^2.
    """

    source: CurvedAlgebra
    target: CurvedAlgebra
    f: GradedMap
    b: dict
    unital: bool = True

    def validate(self, max_violations: int = 8) -> List[str]:
        F = self.source.field
        out: List[str] = []

        def report(msg):
            if len(out) < max_violations:
                out.append(msg)

        A, B = self.source, self.target
        if self.f.degree != 0:
            report("f must have degree 0")
        bdeg = B.space.element_degree(self.b)
        if bdeg not in (None, 1):
            report("b must have degree 1")
        if self.unital and not vec_eq(F, self.f.apply(A.unit), B.unit):
            report("f(1) != 1")
        for i in range(A.dim):
            ei = A.space.basis_vector(i)
            fi = self.f.apply(ei)
            for j in range(A.dim):
                ej = A.space.basis_vector(j)
                lhs = self.f.apply(A.product(ei, ej))
                rhs = B.product(fi, self.f.apply(ej))
                if not vec_eq(F, lhs, rhs):
                    report(f"f not multiplicative on ({A.label(i)},{A.label(j)})")
                    if len(out) >= max_violations:
                        return out
        for i in range(A.dim):
            ei = A.space.basis_vector(i)
            fa = self.f.apply(ei)
            lhs = self.f.apply(A.d.apply(ei))
            rhs = vec_add(F, B.d.apply(fa), _bracket(B, self.b, fa, 1, A.degree(i)))
            if not vec_eq(F, lhs, rhs):
                report(f"f(da) != d(fa) + [b, fa] on {A.label(i)}")
                if len(out) >= max_violations:
                    return out
        lhs = self.f.apply(A.h)
        rhs = vec_add(
            F,
            vec_add(F, B.h, B.d.apply(self.b)),
            B.product(self.b, self.b),
        )
        if not vec_eq(F, lhs, rhs):
            report("f(h_A) != h_B + db + b^2")
        return out

    def assert_valid(self):
        bad = self.validate()
        if bad:
            raise ValueError("invalid curved morphism: " + "; ".join(bad))

    def apply(self, v: dict) -> dict:
        return self.f.apply(v)

    def push_mc(self, x: dict) -> dict:
        """Image of an MC element: f(x) + b."""
        return vec_add(self.target.field, self.f.apply(x), self.b)


def _bracket(B: CurvedAlgebra, x: dict, a: dict, degx: int, dega: int) -> dict:
    F = B.field
    sign = F.neg(F.one()) if (degx * dega) % 2 else F.one()
    return vec_sub(F, B.product(x, a), vec_scale(F, sign, B.product(a, x)))


def identity_morphism(A: CurvedAlgebra) -> CurvedMorphism:
    f = GradedMap(A.space, A.space, 0, {i: A.space.basis_vector(i) for i in range(A.dim)})
    return CurvedMorphism(A, A, f, {})


def compose_morphisms(g: CurvedMorphism, f: CurvedMorphism) -> CurvedMorphism:
    """(g, b)(f, a) = (g f, b + g(a))."""
    if f.target is not g.source and f.target.space.basis != g.source.space.basis:
        raise ValueError("composition mismatch: target of f is not source of g")
    F = g.target.field
    return CurvedMorphism(
        f.source,
        g.target,
        g.f.compose(f.f),
        vec_add(F, g.b, g.f.apply(f.b)),
        unital=f.unital and g.unital,
    )


def morphism_from_labels(A, B, images: Dict[str, Dict[str, object]], b=None, unital=True):
    entries = {}
    for lbl, img in images.items():
        entries[A.space.index(lbl)] = B.element_from_labels(img)
    f = GradedMap(A.space, B.space, 0, entries)
    return CurvedMorphism(A, B, f, B.element_from_labels(b or {}), unital=unital)


# ---------------------------------------------------------------------------
# twists


def twist_algebra(A: CurvedAlgebra, x: dict) -> Tuple[CurvedAlgebra, CurvedMorphism]:
    """Twist by an MC element: (A, d + [x,-], h = 0) and the iso (id, x): A^x -> A."""
    if not A.is_mc(x):
        raise ValueError("twist requires a Maurer-Cartan element")
    F = A.field
    entries = {}
    for i in range(A.dim):
        ei = A.space.basis_vector(i)
        col = vec_add(F, A.d.apply(ei), _bracket(A, x, ei, 1, A.degree(i)))
        if col:
            entries[i] = col
    dx = GradedMap(A.space, A.space, 1, entries)
    Ax = CurvedAlgebra(A.space, dict(A.unit), A.mult, dx, {})
    iso = CurvedMorphism(
        Ax,
        A,
        GradedMap(A.space, A.space, 0, {i: A.space.basis_vector(i) for i in range(A.dim)}),
        dict(x),
    )
    return Ax, iso


# ---------------------------------------------------------------------------
# tensor products


def tensor_algebras(A: CurvedAlgebra, B: CurvedAlgebra, sep: str = "@") -> CurvedAlgebra:
    """Koszul-signed tensor product of curved algebras."""
    if A.field != B.field:
        raise ValueError("tensor factors must share the field")
    F = A.field
    basis = []
    for i in range(A.dim):
        for j in range(B.dim):
            basis.append((f"{A.label(i)}{sep}{B.label(j)}", A.degree(i) + B.degree(j)))
    space = GradedSpace.make(basis, F)
    nB = B.dim

    def pair(i, j):
        return i * nB + j

    mult: Dict[Tuple[int, int], dict] = {}
    for i1 in range(A.dim):
        for j1 in range(B.dim):
            for i2 in range(A.dim):
                # Koszul sign (-1)^{|b1||a2|}
                for j2 in range(B.dim):
                    pa = A.basis_product(i1, i2)
                    if not pa:
                        continue
                    pb = B.basis_product(j1, j2)
                    if not pb:
                        continue
                    sgn = (
                        F.neg(F.one())
                        if (B.degree(j1) * A.degree(i2)) % 2
                        else F.one()
                    )
                    col: dict = {}
                    for ka, ca in pa.items():
                        for kb, cb in pb.items():
                            c = F.mul(sgn, F.mul(ca, cb))
                            if not F.is_zero(c):
                                k = pair(ka, kb)
                                col[k] = F.add(col.get(k, F.zero()), c)
                    col = {k: c for k, c in col.items() if not F.is_zero(c)}
                    if col:
                        mult[(pair(i1, j1), pair(i2, j2))] = col
    entries: Dict[int, dict] = {}
    for i in range(A.dim):
        for j in range(B.dim):
            col: dict = {}
            for k, c in A.d.entries.get(i, {}).items():
                col[pair(k, j)] = c
            sgn = F.neg(F.one()) if A.degree(i) % 2 else F.one()
            for k, c in B.d.entries.get(j, {}).items():
                kk = pair(i, k)
                col[kk] = F.add(col.get(kk, F.zero()), F.mul(sgn, c))
            col = {k: c for k, c in col.items() if not F.is_zero(c)}
            if col:
                entries[pair(i, j)] = col
    d = GradedMap(space, space, 1, entries)
    unit: dict = {}
    for i, a in A.unit.items():
        for j, b in B.unit.items():
            c = F.mul(a, b)
            if not F.is_zero(c):
                unit[pair(i, j)] = c
    h: dict = {}
    for i, c in A.h.items():
        for j, u in B.unit.items():
            cc = F.mul(c, u)
            if not F.is_zero(cc):
                k = pair(i, j)
                h[k] = F.add(h.get(k, F.zero()), cc)
    for j, c in B.h.items():
        for i, u in A.unit.items():
            cc = F.mul(u, c)
            if not F.is_zero(cc):
                k = pair(i, j)
                h[k] = F.add(h.get(k, F.zero()), cc)
    h = {k: c for k, c in h.items() if not F.is_zero(c)}
    return CurvedAlgebra(space, unit, mult, d, h)


def tensor_factor_inclusion_data(A, B, T, side: str):
    """Index map i -> index of (a_i @ 1) resp. (1 @ b_i) in T = A tensor B."""
    F = T.field
    out = {}
    nB = B.dim
    if side == "left":
        for i in range(A.dim):
            col = {}
            for j, c in B.unit.items():
                col[i * nB + j] = c
            out[i] = col
    else:
        for j in range(B.dim):
            col = {}
            for i, c in A.unit.items():
                col[i * nB + j] = c
            out[j] = col
    return out


# ---------------------------------------------------------------------------
# ground field as an algebra, square-zero extensions of k, End(V)


def ground_algebra(F: FieldSpec) -> CurvedAlgebra:
    space = GradedSpace.make([("1", 0)], F)
    return CurvedAlgebra(
        space,
        {0: F.one()},
        {(0, 0): {0: F.one()}},
        GradedMap(space, space, 1, {}),
        {},
    )


def square_zero_algebra(V: GradedSpace, dV: GradedMap) -> CurvedAlgebra:
    """k + V with V^2 = 0 and the given differential on V."""
    F = V.field
    basis = [("1", 0)] + list(V.basis)
    space = GradedSpace.make(basis, F)
    mult: Dict[Tuple[int, int], dict] = {(0, 0): {0: F.one()}}
    for i in range(V.dim):
        mult[(0, i + 1)] = {i + 1: F.one()}
        mult[(i + 1, 0)] = {i + 1: F.one()}
    entries = {}
    for j in range(V.dim):
        col = dV.entries.get(j, {})
        if col:
            entries[j + 1] = {i + 1: c for i, c in col.items()}
    d = GradedMap(space, space, 1, entries)
    return CurvedAlgebra(space, {0: F.one()}, mult, d, {})


def endomorphism_algebra(V: GradedSpace) -> CurvedAlgebra:
    """End(V) with zero differential; basis E_{i,j}: v_j -> v_i, degree |v_i|-|v_j|."""
    F = V.field
    n = V.dim
    basis = []
    for i in range(n):
        for j in range(n):
            basis.append((f"E[{V.basis[i][0]},{V.basis[j][0]}]", V.degree(i) - V.degree(j)))
    space = GradedSpace.make(basis, F)

    def idx(i, j):
        return i * n + j

    mult = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    # E_{ij} E_{kl} = delta_{jk} E_{il}
                    if j == k:
                        mult[(idx(i, j), idx(k, l))] = {idx(i, l): F.one()}
    unit = {idx(i, i): F.one() for i in range(n)}
    return CurvedAlgebra(space, unit, mult, GradedMap(space, space, 1, {}), {})


def direct_product(A: CurvedAlgebra, B: CurvedAlgebra, tagA="L", tagB="R") -> CurvedAlgebra:
    """Product algebra A x B."""
    F = A.field
    basis = [(f"{tagA}.{l}", d) for l, d in A.space.basis] + [
        (f"{tagB}.{l}", d) for l, d in B.space.basis
    ]
    space = GradedSpace.make(basis, F)
    off = A.dim
    mult = {}
    for (i, j), col in A.mult.items():
        mult[(i, j)] = dict(col)
    for (i, j), col in B.mult.items():
        mult[(i + off, j + off)] = {k + off: c for k, c in col.items()}
    entries = {}
    for j, col in A.d.entries.items():
        entries[j] = dict(col)
    for j, col in B.d.entries.items():
        entries[j + off] = {k + off: c for k, c in col.items()}
    d = GradedMap(space, space, 1, entries)
    unit = dict(A.unit)
    unit.update({k + off: c for k, c in B.unit.items()})
    h = dict(A.h)
    h.update({k + off: c for k, c in B.h.items()})
    return CurvedAlgebra(space, unit, mult, d, h)


def uncurve_morita(A: CurvedAlgebra):
    """Uncurving route: twist A @ End(k + k[1]) by the square-matrix MC element.

    Returns (B, x, route) where B is a dg algebra, x the MC element of
    A @ End(V), and route = (inclusion A -> A@End(V), iso twist).
    """
    F = A.field
    V = GradedSpace.make([("v0", 0), ("v1", -1)], F)
    E = endomorphism_algebra(V)
    T = tensor_algebras(A, E, sep="#")
    nE = E.dim  # 4
    # E indices: E[v0,v0]=0, E[v0,v1]=1, E[v1,v0]=2, E[v1,v1]=3
    x: dict = {}
    for i, c in A.unit.items():
        x[i * nE + 1] = c
    for i, c in A.h.items():
        k = i * nE + 2
        x[k] = F.add(x.get(k, F.zero()), F.neg(c))
    x = {k: c for k, c in x.items() if not F.is_zero(c)}
    if not T.is_mc(x):
        raise AssertionError("morita matrix element failed the MC equation")
    B, iso = twist_algebra(T, x)
    incl_entries = tensor_factor_inclusion_data(A, E, T, "left")
    incl = CurvedMorphism(A, T, GradedMap(A.space, T.space, 0, incl_entries), {})
    return B, x, (incl, iso)
