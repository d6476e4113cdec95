"""MC dg categories at desk scale: hom complexes as two-sided twists, gauge
and homotopy-gauge equivalence, moduli sets, n-homotopies of MC elements and
of (co)algebra maps, and the three-homotopy functor data.

Hom-complex convention: the morphism complex from x to y is A with
differential D_{x->y}(a) = da + ya - (-1)^{|a|} a x; degree-0 cocycles are
the chain maps, and x ~ y (one class in the moduli set) iff some quadruple
(f, g, h1, h2) witnesses mutual inversion in H^0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .algebra import CurvedAlgebra, CurvedMorphism, mc_enumerate, tensor_algebras
from .budget import default_budget
from .coalgebra import CurvedCoalgebra
from .fields import FieldSpec
from .gradedlin import (
    BudgetExceeded,
    Complex,
    GradedMap,
    cohomology,
    enumerate_affine,
    in_span,
    kernel_basis,
    rref,
    solve,
    vec_add,
    vec_eq,
    vec_is_zero,
    vec_key,
    vec_scale,
    vec_sub,
)
from .interval import make_interval


# ---------------------------------------------------------------------------
# hom complexes


def hom_complex(A: CurvedAlgebra, x: dict, y: dict) -> Complex:
    """Morphism complex x -> y: underlying space of A, D(a) = da + ya - ~a x."""
    if not A.is_mc(x) or not A.is_mc(y):
        raise ValueError("hom_complex requires Maurer-Cartan endpoints")
    F = A.field
    entries = {}
    for i in range(A.dim):
        ei = A.space.basis_vector(i)
        col = vec_add(F, A.d.apply(ei), A.product(y, ei))
        sgn = F.one() if A.degree(i) % 2 == 0 else F.neg(F.one())
        col = vec_sub(F, col, vec_scale(F, sgn, A.product(ei, x)))
        if col:
            entries[i] = col
    d = GradedMap(A.space, A.space, 1, entries)
    return Complex(A.space, d)


def h0_hom(A: CurvedAlgebra, x: dict, y: dict):
    c = hom_complex(A, x, y)
    return cohomology(c, 0, 0)[0]


def twisted_differential(A: CurvedAlgebra, x: dict) -> GradedMap:
    """d^x = d + [x, -] (the two-sided twist differential)."""
    F = A.field
    entries = {}
    for i in range(A.dim):
        ei = A.space.basis_vector(i)
        br = vec_sub(
            F,
            A.product(x, ei),
            vec_scale(F, F.one() if A.degree(i) % 2 == 0 else F.neg(F.one()), A.product(ei, x)),
        )
        col = vec_add(F, A.d.apply(ei), br)
        if col:
            entries[i] = col
    return GradedMap(A.space, A.space, 1, entries)


# ---------------------------------------------------------------------------
# gauge quadruples and the moduli set


@dataclass
class GaugeQuadruple:
    """Witness that x and y are isomorphic in H^0 of the MC dg category.

    f: degree 0 chain map x -> y (f x = df + y f),
    g: degree 0 chain map y -> x (g y = dg + x g),
    h1, h2: degree -1 with d^x h1 = g f - 1 and d^y h2 = f g - 1.
    """

    A: CurvedAlgebra
    x: dict
    y: dict
    f: dict
    g: dict
    h1: dict
    h2: dict

    def validate(self) -> List[str]:
        A, F = self.A, self.A.field
        out = []
        Dxy = hom_complex(A, self.x, self.y).d
        Dyx = hom_complex(A, self.y, self.x).d
        if not vec_is_zero(F, Dxy.apply(self.f)):
            out.append("f is not a chain map x -> y")
        if not vec_is_zero(F, Dyx.apply(self.g)):
            out.append("g is not a chain map y -> x")
        dx = twisted_differential(A, self.x)
        dy = twisted_differential(A, self.y)
        gf1 = vec_sub(F, A.product(self.g, self.f), A.unit)
        if not vec_eq(F, dx.apply(self.h1), gf1):
            out.append("d^x h1 != gf - 1")
        fg1 = vec_sub(F, A.product(self.f, self.g), A.unit)
        if not vec_eq(F, dy.apply(self.h2), fg1):
            out.append("d^y h2 != fg - 1")
        return out


def _chain_map_space(A: CurvedAlgebra, x: dict, y: dict):
    """Affine data of degree-0 cocycles of the x -> y hom complex."""
    F = A.field
    D = hom_complex(A, x, y).d
    idx0 = A.degree_indices(0)
    rows: Dict[int, dict] = {}
    for a, j in enumerate(idx0):
        for i, c in D.entries.get(j, {}).items():
            rows.setdefault(i, {})[a] = c
    ker = kernel_basis(F, list(rows.values()), len(idx0))
    return idx0, ker


def _coboundary_membership(A, x, target: dict) -> bool:
    """Is target in the image of d^x on degree -1?"""
    F = A.field
    dx = twisted_differential(A, x)
    idxm1 = A.degree_indices(-1)
    rows: Dict[int, dict] = {}
    for a, j in enumerate(idxm1):
        for i, c in dx.entries.get(j, {}).items():
            rows.setdefault(i, {})[a] = c
    keys = sorted(set(rows) | set(target))
    return (
        solve(F, [rows.get(k, {}) for k in keys], [target.get(k, F.zero()) for k in keys], len(idxm1))
        is not None
    )


def find_gauge_quadruple(
    A: CurvedAlgebra, x: dict, y: dict, budget: Optional[int] = None
) -> Optional[GaugeQuadruple]:
    """Exhaustive search (over F_p) for a homotopy gauge equivalence x ~ y."""
    F = A.field
    if not F.is_prime_field:
        raise ValueError("gauge search requires a prime field")
    budget = default_budget() if budget is None else budget
    idx0f, kerf = _chain_map_space(A, x, y)
    idx0g, kerg = _chain_map_space(A, y, x)
    total = F.characteristic ** (len(kerf) + len(kerg))
    if total > budget:
        raise BudgetExceeded(total, budget)
    fs = enumerate_affine(F, {}, kerf, budget)
    gs = enumerate_affine(F, {}, kerg, budget)
    dx = twisted_differential(A, x)
    dy = twisted_differential(A, y)
    idxm1 = A.degree_indices(-1)

    def solve_homotopy(d_tw, target):
        rows: Dict[int, dict] = {}
        for a, j in enumerate(idxm1):
            for i, c in d_tw.entries.get(j, {}).items():
                rows.setdefault(i, {})[a] = c
        keys = sorted(set(rows) | set(target))
        sol = solve(
            F,
            [rows.get(k, {}) for k in keys],
            [target.get(k, F.zero()) for k in keys],
            len(idxm1),
        )
        if sol is None:
            return None
        return {idxm1[a]: c for a, c in sol[0].items()}

    for fc in fs:
        f = {idx0f[a]: c for a, c in fc.items()}
        for gc in gs:
            g = {idx0g[a]: c for a, c in gc.items()}
            gf1 = vec_sub(F, A.product(g, f), A.unit)
            h1 = solve_homotopy(dx, gf1)
            if h1 is None:
                continue
            fg1 = vec_sub(F, A.product(f, g), A.unit)
            h2 = solve_homotopy(dy, fg1)
            if h2 is None:
                continue
            quad = GaugeQuadruple(A, x, y, f, g, h1, h2)
            assert quad.validate() == []
            return quad
    return None


def moduli_set(
    A: CurvedAlgebra, budget: Optional[int] = None, mc: Optional[List[dict]] = None
) -> List[List[dict]]:
    """Partition of MC(A) into isomorphism classes of H^0(MC_dg(A)).

    Classes and their members are deterministically ordered.
    """
    F = A.field
    elems = mc_enumerate(A, budget=budget) if mc is None else mc
    classes: List[List[dict]] = []
    for x in elems:
        placed = False
        for cls in classes:
            if find_gauge_quadruple(A, cls[0], x, budget=budget) is not None:
                cls.append(x)
                placed = True
                break
        if not placed:
            classes.append([x])
    return classes


# ---------------------------------------------------------------------------
# n-homotopies of MC elements


def interval_tensor(A: CurvedAlgebra, n: int) -> CurvedAlgebra:
    return tensor_algebras(A, make_interval(A.field, n).algebra, sep="%")


def interval_component_indices(A: CurvedAlgebra, n: int):
    """Index maps for A @ I^n: component(word) -> {A index -> tensor index}."""
    I = make_interval(A.field, n).algebra
    nI = I.dim
    comp = {}
    for w in range(nI):
        lbl = I.space.basis[w][0]
        comp[lbl] = {i: i * nI + w for i in range(A.dim)}
    return comp, I


def endpoint_evaluation(A: CurvedAlgebra, n: int, X: dict, which: int) -> dict:
    """(1 @ ev_i)(X): the e_e (i=0) or e_f (i=1) component."""
    comp, I = interval_component_indices(A, n)
    lbl = "e_e" if which == 0 else "e_f"
    nI = I.dim
    w = I.space.index(lbl)
    out = {}
    for k, c in X.items():
        i, ww = divmod(k, nI)
        if ww == w:
            out[i] = c
    return out


@dataclass
class NHomotopy:
    A: CurvedAlgebra
    n: int
    X: dict  # MC element of A @ I^n

    def endpoints(self) -> Tuple[dict, dict]:
        return (
            endpoint_evaluation(self.A, self.n, self.X, 0),
            endpoint_evaluation(self.A, self.n, self.X, 1),
        )


def constant_homotopy(A: CurvedAlgebra, x: dict, n: int) -> NHomotopy:
    """x @ 1 (components x at e and f, zero higher terms)."""
    comp, I = interval_component_indices(A, n)
    F = A.field
    X: dict = {}
    for lbl in ("e_e", "e_f"):
        for i, c in x.items():
            X[comp[lbl][i]] = c
    T = interval_tensor(A, n)
    if not T.is_mc(X):
        raise AssertionError("constant homotopy failed the MC equation")
    return NHomotopy(A, n, X)


def square_zero_three_homotopy(A: CurvedAlgebra, x: dict, xp: dict) -> Optional[NHomotopy]:
    """Constructive 3-homotopy for cohomologous MC elements: components
    y = -h at s and +h at t where dh = x - x', zero higher terms.
    Works over any field; returns None when x - x' is not a coboundary.
    """
    F = A.field
    target = vec_sub(F, x, xp)
    from .gradedlin import solve_linear

    sol = solve_linear(A.d, target)
    if sol is None:
        return None
    h = sol[0]
    comp, I = interval_component_indices(A, 3)
    T = interval_tensor(A, 3)
    for sign_s in (F.neg(F.one()), F.one()):
        X: dict = {}
        for i, c in x.items():
            X[comp["e_e"][i]] = c
        for i, c in xp.items():
            X[comp["e_f"][i]] = c
        for i, c in h.items():
            cs = F.mul(sign_s, c)
            if not F.is_zero(cs):
                X[comp["s"][i]] = cs
            cn = F.neg(cs)
            if not F.is_zero(cn):
                X[comp["t"][i]] = cn
        if T.is_mc(X):
            return NHomotopy(A, 3, X)
    return None


def n_homotopy_search(
    A: CurvedAlgebra, x: dict, xp: dict, n: int, budget: Optional[int] = None
) -> Optional[NHomotopy]:
    """Find an n-homotopy between MC elements x, x' (exhaustive over F_p,
    with the constructive square-zero shortcut tried first for n = 3)."""
    F = A.field
    if not A.is_mc(x) or not A.is_mc(xp):
        raise ValueError("endpoints must be MC elements")
    if vec_eq(F, x, xp):
        return constant_homotopy(A, x, n)
    if n == 3:
        cand = square_zero_three_homotopy(A, x, xp)
        if cand is not None:
            return cand
    if not F.is_prime_field:
        return None
    budget = default_budget() if budget is None else budget
    comp, I = interval_component_indices(A, n)
    T = interval_tensor(A, n)
    # free coordinates: degree-1 entries of T away from the e/f components
    nI = I.dim
    fixed: dict = {}
    for i, c in x.items():
        fixed[comp["e_e"][i]] = c
    for i, c in xp.items():
        fixed[comp["e_f"][i]] = c
    free = [
        k
        for k in T.degree_indices(1)
        if divmod(k, nI)[1] not in (I.space.index("e_e"), I.space.index("e_f"))
    ]
    total = F.characteristic ** len(free)
    if total > budget:
        raise BudgetExceeded(total, budget)
    p = F.characteristic
    for m in range(total):
        mm = m
        X = dict(fixed)
        for k in free:
            c = mm % p
            mm //= p
            if c:
                X[k] = c
        if T.is_mc(X):
            return NHomotopy(A, n, X)
    return None


def verify_n_homotopy(A: CurvedAlgebra, x: dict, xp: dict, n: int, X: dict) -> bool:
    T = interval_tensor(A, n)
    if not T.is_mc(X):
        return False
    F = A.field
    e0 = endpoint_evaluation(A, n, X, 0)
    e1 = endpoint_evaluation(A, n, X, 1)
    return vec_eq(F, e0, x) and vec_eq(F, e1, xp)


def gauge_to_three_homotopy(
    quad: GaugeQuadruple, budget: Optional[int] = None
) -> Optional[NHomotopy]:
    """Build a 3-homotopy from a gauge quadruple: components
    H_e = x, H_f = y, H_s = f - 1, H_t = g - 1, H_st = -h2, H_ts = -h1,
    then solve the remaining sts-component linearly.
    """
    A, F = quad.A, quad.A.field
    comp, I = interval_component_indices(A, 3)
    T = interval_tensor(A, 3)
    X: dict = {}
    for i, c in quad.x.items():
        X[comp["e_e"][i]] = c
    for i, c in quad.y.items():
        X[comp["e_f"][i]] = c
    fm1 = vec_sub(F, quad.f, A.unit)
    gm1 = vec_sub(F, quad.g, A.unit)
    for i, c in fm1.items():
        X[comp["s"][i]] = c
    for i, c in gm1.items():
        X[comp["t"][i]] = c
    for i, c in quad.h2.items():
        cc = F.neg(c)
        if not F.is_zero(cc):
            X[comp["st"][i]] = cc
    for i, c in quad.h1.items():
        cc = F.neg(c)
        if not F.is_zero(cc):
            X[comp["ts"][i]] = cc
    # solve the sts-component: affine-linear in the sts coordinates
    sts_targets = [comp["sts"][i] for i in A.degree_indices(-2)]
    res = T.mc_residual(X)
    if not sts_targets:
        if vec_is_zero(F, res):
            return NHomotopy(A, 3, X)
        return None
    rows: Dict[int, dict] = {}
    for a, k in enumerate(sts_targets):
        probe = dict(X)
        probe[k] = F.add(probe.get(k, F.zero()), F.one())
        diff = vec_sub(F, T.mc_residual(probe), res)
        for kk, c in diff.items():
            rows.setdefault(kk, {})[a] = c
    keys = sorted(set(rows) | set(res))
    sol = solve(
        F,
        [rows.get(k, {}) for k in keys],
        [F.neg(res.get(k, F.zero())) for k in keys],
        len(sts_targets),
    )
    if sol is None:
        return None
    for a, c in sol[0].items():
        k = sts_targets[a]
        X[k] = F.add(X.get(k, F.zero()), c)
    X = {k: c for k, c in X.items() if not F.is_zero(c)}
    if not T.is_mc(X):
        return None
    return NHomotopy(A, 3, X)


# ---------------------------------------------------------------------------
# three-homotopy functor data (the seven components of an MC element of
# B @ End(V) @ I^3)


@dataclass
class ThreeHomotopyData:
    B: CurvedAlgebra  # B @ End(V) (or any curved algebra)
    H: dict  # MC element of B @ I^3
    components: Dict[str, dict]

    def identities(self) -> Dict[str, bool]:
        """The six functor-data identities, exact over any field:
        (1) H_e MC, (2) H_f MC,
        (3) phi_s := 1 + H_s is a chain map H_f -> H_e,
        (4) phi_t := 1 + H_t is a chain map H_e -> H_f,
        (5) d^{H_e}(-H_st) = phi_s phi_t - 1,
        (6) d^{H_f}(-H_ts) = phi_t phi_s - 1.
        """
        A, F = self.B, self.B.field
        c = self.components
        x, y = c["e_e"], c["e_f"]
        out = {}
        out["endpoint_e_mc"] = A.is_mc(x)
        out["endpoint_f_mc"] = A.is_mc(y)
        phi_s = vec_add(F, A.unit, c["s"])
        phi_t = vec_add(F, A.unit, c["t"])
        Dfe = hom_complex(A, y, x).d if out["endpoint_e_mc"] and out["endpoint_f_mc"] else None
        if Dfe is None:
            out["s_chain_map"] = out["t_chain_map"] = False
            out["st_homotopy"] = out["ts_homotopy"] = False
            return out
        Def = hom_complex(A, x, y).d
        out["s_chain_map"] = vec_is_zero(F, Dfe.apply(phi_s))
        out["t_chain_map"] = vec_is_zero(F, Def.apply(phi_t))
        dX = twisted_differential(A, x)
        dY = twisted_differential(A, y)
        m1 = F.neg(F.one())
        lhs5 = dX.apply(vec_scale(F, m1, c["st"]))
        rhs5 = vec_sub(F, A.product(phi_s, phi_t), A.unit)
        out["st_homotopy"] = vec_eq(F, lhs5, rhs5)
        lhs6 = dY.apply(vec_scale(F, m1, c["ts"]))
        rhs6 = vec_sub(F, A.product(phi_t, phi_s), A.unit)
        out["ts_homotopy"] = vec_eq(F, lhs6, rhs6)
        return out


def three_homotopy_unpack(B: CurvedAlgebra, H: dict) -> ThreeHomotopyData:
    """Split an MC element of B @ I^3 into its seven word components."""
    T = interval_tensor(B, 3)
    if not T.is_mc(H):
        raise ValueError("H is not a Maurer-Cartan element of B @ I^3")
    comp, I = interval_component_indices(B, 3)
    nI = I.dim
    parts: Dict[str, dict] = {lbl: {} for lbl, _ in I.space.basis}
    for k, c in H.items():
        i, w = divmod(k, nI)
        parts[I.space.basis[w][0]][i] = c
    return ThreeHomotopyData(B, H, parts)


# ---------------------------------------------------------------------------
# homotopies of algebra maps


def tensor_with_interval_morphism(
    B: CurvedAlgebra, n: int, which: int
) -> CurvedMorphism:
    """(B @ ev_i): B @ I^n -> B."""
    T = interval_tensor(B, n)
    I = make_interval(B.field, n).algebra
    nI = I.dim
    keep = I.space.index("e_e" if which == 0 else "e_f")
    F = B.field
    entries = {}
    for i in range(B.dim):
        entries[i * nI + keep] = {i: F.one()}
    return CurvedMorphism(T, B, GradedMap(T.space, B.space, 0, entries), {})


def map_homotopy_check(
    f: CurvedMorphism, g: CurvedMorphism, n: int, h: CurvedMorphism
) -> dict:
    """Verdict for an elementary n-homotopy h: A -> B @ I^n between f and g."""
    A, B = f.source, f.target
    F = B.field
    ev0 = tensor_with_interval_morphism(B, n, 0)
    ev1 = tensor_with_interval_morphism(B, n, 1)
    from .algebra import compose_morphisms

    h0 = compose_morphisms(ev0, h)
    h1 = compose_morphisms(ev1, h)
    witness = None
    ok0 = ok1 = True
    for i in range(A.dim):
        v = A.space.basis_vector(i)
        if not vec_eq(F, h0.f.apply(v), f.f.apply(v)):
            ok0, witness = False, A.label(i)
            break
    if ok0 and not vec_eq(F, h0.b, f.b):
        ok0, witness = False, "(b-component)"
    for i in range(A.dim):
        v = A.space.basis_vector(i)
        if not vec_eq(F, h1.f.apply(v), g.f.apply(v)):
            ok1, witness = False, A.label(i)
            break
    if ok1 and not vec_eq(F, h1.b, g.b):
        ok1, witness = False, "(b-component)"
    return {"verdict": ok0 and ok1, "witness": witness}


def constant_map_homotopy(f: CurvedMorphism, n: int) -> CurvedMorphism:
    """(1 @ unit) f: the constant homotopy from f to itself."""
    B = f.target
    T = interval_tensor(B, n)
    I = make_interval(B.field, n).algebra
    nI = I.dim
    F = B.field
    unit_idx = [(w, c) for w, c in I.unit.items()]
    entries = {}
    for j in range(f.source.dim):
        col = {}
        for i, c in f.f.entries.get(j, {}).items():
            for w, u in unit_idx:
                col[i * nI + w] = F.mul(c, u)
        if col:
            entries[j] = col
    bb = {}
    for i, c in f.b.items():
        for w, u in unit_idx:
            bb[i * nI + w] = F.mul(c, u)
    return CurvedMorphism(f.source, T, GradedMap(f.source.space, T.space, 0, entries), bb)


def map_homotopy_check_coalgebra(
    fdual: CurvedMorphism, gdual: CurvedMorphism, n: int, hdual: CurvedMorphism
) -> dict:
    """Homotopy verdict for coalgebra maps f, g: C -> C', given through their
    dual algebra morphisms.  An elementary homotopy C @ I_n -> C' dualizes to
    an algebra morphism C'* -> C* @ I^n, which is checked against the
    endpoint evaluations exactly as in the algebra case.
    """
    B = fdual.target  # C*
    F = B.field
    ev0 = tensor_with_interval_morphism(B, n, 0)
    ev1 = tensor_with_interval_morphism(B, n, 1)
    from .algebra import compose_morphisms

    h0 = compose_morphisms(ev0, hdual)
    h1 = compose_morphisms(ev1, hdual)
    witness = None
    ok = True
    for i in range(fdual.source.dim):
        v = fdual.source.space.basis_vector(i)
        if not vec_eq(F, h0.f.apply(v), fdual.f.apply(v)):
            ok, witness = False, fdual.source.label(i)
            break
        if not vec_eq(F, h1.f.apply(v), gdual.f.apply(v)):
            ok, witness = False, fdual.source.label(i)
            break
    return {"verdict": ok, "witness": witness}


def one_homotopy_middle_component(h: CurvedMorphism) -> Dict[int, dict]:
    """The s-component h~ of a 1-homotopy h: A -> B @ I^1."""
    B_T = h.target
    # target is B @ I^1 with I^1 basis e_e, e_f, s (nI = 3)
    nI = 3
    out = {}
    for j in range(h.source.dim):
        col = {}
        for k, c in h.f.entries.get(j, {}).items():
            i, w = divmod(k, nI)
            if w == 2:  # index of "s"
                col[i] = c
        if col:
            out[j] = col
    return out
