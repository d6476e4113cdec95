"""Witness-level checks of the model-theoretic characterizations: the
categorical cobar Omega_cat of a pointed curved coalgebra with split
coradical, the reduced MC algebra Alg_MC of a free dg category, fibration
tests for MC dg categories, rectification of homotopy-commutative triangles,
and a lifting solver - all against finite batteries, over prime fields.

Omega_cat recipe (pinned by d^2 = 0 on the materialized windows and by the
worked interval example): pass to the dual algebra A = C* with vertex
idempotents u_i dual to the split coradical; the connection
zeta = sum_{j != k} u_j d(u_j) u_k makes dt = d + [zeta, -] kill the
idempotents and preserve the vertex bigrading; generators are the
desuspended duals of the radical basis, with differential

  d(c~) = -<c, h_A + zeta^2> id - (dt-transpose c)~
          - sum (-1)^{|c1|} c1~ c2~   (over the reduced comultiplication).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .algebra import CurvedAlgebra, CurvedMorphism, ground_algebra, tensor_algebras
from .budget import default_budget
from .coalgebra import CurvedCoalgebra, dualize_algebra, dualize_coalgebra
from .convolution import convolution_algebra, induced_convolution_morphism
from .fields import FieldSpec
from .gradedlin import (
    BudgetExceeded,
    GradedMap,
    GradedSpace,
    rref,
    span_rank,
    vec_add,
    vec_eq,
    vec_is_zero,
    vec_key,
    vec_scale,
    vec_sub,
)
from .barcobar import mc_hom_enumerate
from .mc import find_gauge_quadruple
from .presented import Arrow, PresentedCurvedAlgebra


# ---------------------------------------------------------------------------
# Omega_cat


@dataclass
class FreeDgCategory:
    """Free dg category presented as a graded quiver with differential on
    generators (word combinations, possibly with identity terms)."""

    presentation: PresentedCurvedAlgebra

    @property
    def objects(self) -> Tuple[str, ...]:
        return self.presentation.vertices

    @property
    def arrows(self):
        return self.presentation.arrows

    def d_of(self, label: str) -> dict:
        return self.presentation.d_on_arrows.get(label, {})


def omega_cat(C: CurvedCoalgebra, budget: Optional[int] = None) -> FreeDgCategory:
    F = C.field
    A = dualize_coalgebra(C)
    grouplikes = C.grouplike_basis_indices()
    if not grouplikes:
        raise ValueError("omega_cat needs a split coradical of grouplike basis vectors")
    from .semisimple import graded_radical
    from .gradedlin import in_span

    rad = graded_radical(A, budget=budget)
    others = [i for i in range(C.dim) if i not in grouplikes]
    for i in others:
        if not in_span(F, rad, A.space.basis_vector(i), A.dim):
            raise ValueError(
                f"basis vector {C.label(i)} is not in the dual radical: "
                "coradical is not split along the basis"
            )
    if span_rank(F, rad, A.dim) != len(others):
        raise ValueError("coradical is larger than the grouplike span (not k^m)")
    # idempotents u_v (duals of grouplikes); bigrade assignment of radical basis
    uof = {v: A.space.basis_vector(v) for v in grouplikes}

    def block_of(j: int) -> Tuple[int, int]:
        src = tgt = None
        ej = A.space.basis_vector(j)
        for v in grouplikes:
            lv = A.product(uof[v], ej)
            rv = A.product(ej, uof[v])
            if vec_eq(F, lv, ej):
                src = v
            if vec_eq(F, rv, ej):
                tgt = v
        if src is None or tgt is None:
            raise ValueError(
                f"radical basis vector {A.label(j)} is not bigrade-homogeneous"
            )
        return src, tgt

    blocks = {j: block_of(j) for j in others}
    # connection and twisted differential
    zeta: dict = {}
    for v in grouplikes:
        dv = A.d.apply(uof[v])
        for w in grouplikes:
            if w == v:
                continue
            piece = A.product(A.product(uof[v], dv), uof[w])
            zeta = vec_add(F, zeta, piece)
    zeta2 = A.product(zeta, zeta)
    from .algebra import _bracket

    def dt(vvec: dict, deg: int) -> dict:
        return vec_add(F, A.d.apply(vvec), _bracket(A, zeta, vvec, 1, deg))

    for v in grouplikes:
        if not vec_is_zero(F, dt(uof[v], 0)):
            raise ValueError("connection fails to kill an idempotent differential")
    # generators
    arrows = []
    arrow_label = {}
    for j in others:
        src, tgt = blocks[j]
        lbl = C.label(j)
        arrow_label[j] = lbl
        arrows.append(Arrow(lbl, C.label(src), C.label(tgt), C.space.degree(j) + 1))
    # differentials
    m1 = F.neg(F.one())
    d_on_arrows: Dict[str, dict] = {}
    # transpose of dt restricted to the radical span
    dt_cols = {j: dt(A.space.basis_vector(j), A.degree(j)) for j in others}
    for j in others:
        combo: dict = {}
        src, tgt = blocks[j]
        # constant: -<c_j, h_A + zeta^2> id_src (only for endo blocks)
        const = F.neg(
            F.add(A.h.get(j, F.zero()), zeta2.get(j, F.zero()))
        )
        if not F.is_zero(const):
            if src != tgt:
                raise ValueError("curvature constant on a non-endomorphism generator")
            combo[("v", C.label(src))] = const
        # linear: -(transpose of dt) c_j
        for k in others:
            coeff = dt_cols[k].get(j, F.zero())
            if not F.is_zero(coeff):
                key = (arrow_label[k],)
                combo[key] = F.add(combo.get(key, F.zero()), F.neg(coeff))
        # quadratic: -(-1)^{|c1|} c1~ c2~ over pairs with product hitting j
        for a in others:
            for b in others:
                coeff = A.basis_product(a, b).get(j, F.zero())
                if F.is_zero(coeff):
                    continue
                sgn = m1 if C.space.degree(a) % 2 else F.one()
                key = (arrow_label[a], arrow_label[b])
                combo[key] = F.add(
                    combo.get(key, F.zero()), F.mul(F.neg(sgn), coeff)
                )
        combo = {k: c for k, c in combo.items() if not F.is_zero(c)}
        if combo:
            d_on_arrows[arrow_label[j]] = combo
    pres = PresentedCurvedAlgebra(
        field=F,
        vertices=tuple(C.label(v) for v in grouplikes),
        arrows=tuple(arrows),
        killed_monomials=(),
        truncation=8,
        d_on_arrows=d_on_arrows,
    )
    return FreeDgCategory(pres)


def _hom_words(pres: PresentedCurvedAlgebra, x: str, y: str, max_len: int):
    """Composable words x -> y of length <= max_len (plus the identity when
    x == y), with no degree restriction."""
    words: List = []
    if x == y:
        words.append(("v", x))
    frontier = [(a.label,) for a in pres.arrows if a.source == x]
    length = 1
    while frontier and length <= max_len:
        for w in frontier:
            if pres.word_target(w) == y:
                words.append(w)
        nxt = []
        for w in frontier:
            tgt = pres.word_target(w)
            for a in pres.arrows:
                if a.source == tgt:
                    nxt.append(w + (a.label,))
        frontier = nxt
        length += 1
    return words


def hom_window_cohomology(D: FreeDgCategory, x, y, lo, hi, word_bound=8):
    """Cohomology of the hom complex D(x, y) in the degree window, computed
    as the honest subquotient (cocycles of word length <= K) / (boundaries of
    sources of word length <= K+1), K = word_bound - 2, with the differential
    evaluated exactly - no truncation clipping.  A nonzero value can only
    overestimate the true cohomology (a class may die via a longer potential);
    zeros and the degree-0 count are exact certificates at this length scale.
    """
    pres = D.presentation
    F = pres.field
    K = word_bound - 2
    words = _hom_words(pres, x, y, K + 2)
    pos = {w: i for i, w in enumerate(words)}

    def wlen(w):
        return 0 if w[0] == "v" and len(w) == 2 and w[1] in pres.vertices else len(w)

    def wdeg(w):
        return 0 if wlen(w) == 0 else pres.word_degree(w)

    d_cols: Dict[int, dict] = {}
    for i, w in enumerate(words):
        if wlen(w) > K + 1:
            continue
        key = ("v", x) if wlen(w) == 0 else w
        dv = pres.d_of_key(key)
        col = {}
        for kk, c in dv.items():
            if kk not in pos:
                raise AssertionError("differential escaped the word enumeration")
            col[pos[kk]] = c
        d_cols[i] = col

    from .gradedlin import kernel_basis

    out = {}
    for n in range(lo, hi + 1):
        short_idx = [i for i, w in enumerate(words) if wdeg(w) == n and wlen(w) <= K]
        posn = {g: a for a, g in enumerate(short_idx)}
        # cocycles among short words (exact d)
        target_rows: Dict[int, dict] = {}
        for a, j in enumerate(short_idx):
            for i, c in d_cols.get(j, {}).items():
                target_rows.setdefault(i, {})[a] = c
        kern = kernel_basis(F, list(target_rows.values()), len(short_idx))
        # boundaries: the subspace {d(v) : v in span(sources of degree n-1,
        # length <= K+1), d(v) supported on short words}
        srcs = [i for i, w in enumerate(words) if wdeg(w) == n - 1 and wlen(w) <= K + 1]
        long_rows: Dict[int, dict] = {}
        for a, j in enumerate(srcs):
            for i, c in d_cols.get(j, {}).items():
                if wlen(words[i]) > K:
                    long_rows.setdefault(i, {})[a] = c
        ker_src = kernel_basis(F, list(long_rows.values()), len(srcs))
        bnd_rows = []
        for kv in ker_src:
            img: dict = {}
            for a, c in kv.items():
                for i, cc in d_cols.get(srcs[a], {}).items():
                    s = F.add(img.get(i, F.zero()), F.mul(c, cc))
                    if F.is_zero(s):
                        img.pop(i, None)
                    else:
                        img[i] = s
            if img:
                bnd_rows.append({posn[i]: c for i, c in img.items()})
        bnd_red, _ = rref(F, bnd_rows, len(short_idx))
        out[n] = len(kern) - len(bnd_red)
    return out, False


# ---------------------------------------------------------------------------
# Alg_MC


def alg_mc(D: FreeDgCategory, basepoint: str, truncation: int = 4) -> PresentedCurvedAlgebra:
    """Reduced MC algebra of a free dg category: one generator xbar per
    non-basepoint object (degree 1, d(xbar) = -xbar^2) and one generator per
    arrow with d(gbar) = (d g)bar - xbar_tgt gbar + (-1)^{|g|} gbar xbar_src.
    """
    pres = D.presentation
    F = pres.field
    if basepoint not in pres.vertices:
        raise ValueError("basepoint must be an object")
    gens: List[Tuple[str, int]] = []
    xbar = {}
    for v in pres.vertices:
        if v == basepoint:
            continue
        lbl = f"x[{v}]"
        xbar[v] = lbl
        gens.append((lbl, 1))
    for a in pres.arrows:
        gens.append((a.label, a.degree))
    m1 = F.neg(F.one())
    d_gens: Dict[str, dict] = {}
    for v, lbl in xbar.items():
        d_gens[lbl] = {(lbl, lbl): m1}
    for a in pres.arrows:
        combo: dict = {}
        # (d g)bar: words map letterwise; vertex terms map to the unit times
        # the coefficient (identities become 1)
        for key, c in pres.d_on_arrows.get(a.label, {}).items():
            if isinstance(key, tuple) and len(key) == 2 and key[0] == "v" and key[1] in pres.vertices:
                combo[("v", "*")] = F.add(combo.get(("v", "*"), F.zero()), F.coerce(c))
            else:
                combo[tuple(key)] = F.add(combo.get(tuple(key), F.zero()), F.coerce(c))
        # - xbar_tgt gbar
        if a.target != basepoint:
            key = (xbar[a.target], a.label)
            combo[key] = F.add(combo.get(key, F.zero()), m1)
        # + (-1)^{|g|} gbar xbar_src
        if a.source != basepoint:
            sgn = m1 if a.degree % 2 else F.one()
            key = (a.label, xbar[a.source])
            combo[key] = F.add(combo.get(key, F.zero()), sgn)
        combo = {k: c for k, c in combo.items() if not F.is_zero(c)}
        if combo:
            d_gens[a.label] = combo
    from .presented import free_algebra_presentation

    return free_algebra_presentation(
        F,
        gens,
        d_gens,
        truncation=truncation,
    )


def alg_mc_basepoint_substitution(
    D: FreeDgCategory, bp_x: str, bp_y: str, truncation: int = 3
) -> bool:
    """Verify the basepoint-change substitution zbar -> zbar + ybar gives a
    dg isomorphism Alg^y -> twist of Alg^x by ybar, at the truncation."""
    from .randgen import curved_twist_by_any

    pres = D.presentation
    F = pres.field
    Ax = alg_mc(D, bp_x, truncation).materialize().algebra
    Ay = alg_mc(D, bp_y, truncation).materialize().algebra
    ybar_label = f"x[{bp_y}]"
    y_idx = Ax.space.index(ybar_label)
    Bxy = curved_twist_by_any(Ax, {y_idx: F.one()})

    # generator images in Bxy (same underlying basis as Ax)
    def gen_image(lbl: str) -> dict:
        if lbl.startswith("x["):
            v = lbl[2:-1]
            if v == bp_x:
                return {y_idx: F.one()}
            return vec_add(
                F, {Ax.space.index(lbl): F.one()}, {y_idx: F.one()}
            )
        return {Ax.space.index(lbl): F.one()}

    # extend to words multiplicatively, check d-compatibility and bijectivity
    labels = sorted((a.label for a in D.presentation.arrows), key=len, reverse=True)
    labels = [f"x[{v}]" for v in pres.vertices] + labels
    entries: Dict[int, dict] = {}
    for i, (lbl, deg) in enumerate(Ay.space.basis):
        if lbl == "e_*":
            entries[i] = dict(Bxy.unit)
            continue
        img = None
        for letter in _split_word(lbl, labels):
            g = gen_image(letter)
            img = g if img is None else Bxy.product(img, g)
        entries[i] = img
    f = GradedMap(Ay.space, Bxy.space, 0, entries)
    mor = CurvedMorphism(Ay, Bxy, f, {})
    if mor.validate() != []:
        return False
    rows = [dict(entries.get(i, {})) for i in range(Ay.dim)]
    return span_rank(F, rows, Bxy.dim) == Bxy.dim


def _split_word(lbl: str, labels: List[str]) -> List[str]:
    """Split a materialized word label into generator letters (longest match)."""
    ordered = sorted(labels, key=len, reverse=True)
    out = []
    i = 0
    while i < len(lbl):
        match = None
        for a in ordered:
            if lbl.startswith(a, i):
                match = a
                break
        if match is None:
            raise ValueError(f"cannot split label {lbl!r} at {i}")
        out.append(match)
        i += len(match)
    return out


# ---------------------------------------------------------------------------
# fibration / rectification / lifting


def standard_coalgebra_battery(F: FieldSpec) -> List[Tuple[str, CurvedCoalgebra]]:
    from .algebra import square_zero_algebra
    from .interval import make_interval

    V1 = GradedSpace.make([("v", 1)], F)
    sq1 = square_zero_algebra(V1, GradedMap(V1, V1, 1, {}))
    V2 = GradedSpace.make([("a", 0), ("b", 1)], F)
    sq2 = square_zero_algebra(V2, GradedMap(V2, V2, 1, {0: {1: F.one()}}))
    return [
        ("k", dualize_algebra(ground_algebra(F))),
        ("I_1", dualize_algebra(make_interval(F, 1).algebra)),
        ("I_3", dualize_algebra(make_interval(F, 3).algebra)),
        ("dual(k+V)", dualize_algebra(sq1)),
        ("dual(k+acyclic)", dualize_algebra(sq2)),
    ]


def restriction_data(idual: CurvedMorphism):
    """From the dual presentation C'* -> C* of an injection i: C -> C',
    the coefficients <i(c), c'-dual> = <c-dual coefficient in idual(c'-dual)>."""
    return idual.f.entries


def restrict_element(conv_big, conv_small, idual: CurvedMorphism, x: dict) -> dict:
    """i^*: Hom(C', A) -> Hom(C, A) on convolution coordinates."""
    F = conv_big.A.field
    nA = conv_big.A.dim
    out: dict = {}
    for k, coeff in x.items():
        cpi, ai = divmod(k, nA)
        for ci, cc in idual.f.entries.get(cpi, {}).items():
            kk = ci * nA + ai
            s = F.add(out.get(kk, F.zero()), F.mul(cc, coeff))
            if F.is_zero(s):
                out.pop(kk, None)
            else:
                out[kk] = s
    return out


def is_fibration_mcdg(
    C: CurvedCoalgebra,
    g: CurvedMorphism,
    budget: Optional[int] = None,
) -> dict:
    """Witness-level strong-fibration test of g: A -> A' against C:
    (a) Hom(C, A) -> Hom(C, A') surjective (rank check);
    (b) H^0-isomorphism lifting: for every x in MC Hom(C,A) and y' in
        MC Hom(C,A') with y' isomorphic to g(x), some xt with g(xt) = y'
        and xt isomorphic to x exists.
    """
    A, Ap = g.source, g.target
    F = A.field
    convA = convolution_algebra(C, A)
    convAp = convolution_algebra(C, Ap)
    gstar = induced_convolution_morphism(convA, convAp, amap=g)
    # (a) surjectivity of the underlying map
    rows = [dict(gstar.f.entries.get(j, {})) for j in range(convA.algebra.dim)]
    surj = span_rank(F, rows, convAp.algebra.dim) == convAp.algebra.dim
    report = {"hom_surjective": surj}
    if not surj:
        report["verdict"] = False
        report["witness"] = "hom-complex surjectivity fails"
        return report
    X = mc_hom_enumerate(C, A, budget=budget)
    Y = mc_hom_enumerate(C, Ap, budget=budget)
    EA, EAp = convA.algebra, convAp.algebra
    images = {vec_key(x, EA.dim): gstar.push_mc(x) for x in X}
    checked = 0
    for x in X:
        gx = images[vec_key(x, EA.dim)]
        for yp in Y:
            quad = find_gauge_quadruple(EAp, gx, yp, budget=budget)
            if quad is None:
                continue
            # find a lift
            found = False
            for xt in X:
                if not vec_eq(F, gstar.push_mc(xt), yp):
                    continue
                if find_gauge_quadruple(EA, x, xt, budget=budget) is not None:
                    found = True
                    break
            checked += 1
            if not found:
                report["verdict"] = False
                report["witness"] = {
                    "x": {EA.space.basis[k][0]: F.format_coeff(c) for k, c in x.items()},
                    "y_prime": {
                        EAp.space.basis[k][0]: F.format_coeff(c) for k, c in yp.items()
                    },
                }
                return report
    report["verdict"] = True
    report["pairs_checked"] = checked
    report["mc_counts"] = [len(X), len(Y)]
    return report


def endpoint_projection(A: CurvedAlgebra, n: int = 3) -> CurvedMorphism:
    """pi_0 x pi_1: A @ I^n -> A x A."""
    from .algebra import direct_product
    from .interval import make_interval
    from .mc import interval_tensor

    F = A.field
    T = interval_tensor(A, n)
    P = direct_product(A, A, tagA="ev0", tagB="ev1")
    I = make_interval(F, n).algebra
    nI = I.dim
    ie, if_ = I.space.index("e_e"), I.space.index("e_f")
    entries = {}
    for i in range(A.dim):
        entries[i * nI + ie] = {i: F.one()}
        entries[i * nI + if_] = {A.dim + i: F.one()}
    return CurvedMorphism(T, P, GradedMap(T.space, P.space, 0, entries), {})


def rectify_cofibration(
    C: CurvedCoalgebra,
    Cp: CurvedCoalgebra,
    idual: CurvedMorphism,
    A: CurvedAlgebra,
    X: dict,
    g0: dict,
    budget: Optional[int] = None,
) -> dict:
    """Rectify a homotopy-commutative triangle: given X in MC Hom(C', A)
    whose restriction is gauge-equivalent to g0 in Hom(C, A), find Xt with
    restriction exactly g0 and Xt gauge-equivalent to X."""
    F = A.field
    convb = convolution_algebra(Cp, A)
    convs = convolution_algebra(C, A)
    # injectivity of i = surjectivity of idual
    rows = [dict(idual.f.entries.get(j, {})) for j in range(Cp.dim)]
    if span_rank(F, rows, C.dim) != C.dim:
        return {
            "verdict": False,
            "witness": "input map is not injective (dual not surjective)",
        }
    rX = restrict_element(convb, convs, idual, X)
    q = find_gauge_quadruple(convs.algebra, rX, g0, budget=budget)
    if q is None:
        return {
            "verdict": False,
            "witness": "triangle is not homotopy commutative (no gauge r(X) ~ g0)",
        }
    cands = mc_hom_enumerate(Cp, A, budget=budget)
    for xt in cands:
        if not vec_eq(F, restrict_element(convb, convs, idual, xt), g0):
            continue
        if find_gauge_quadruple(convb.algebra, X, xt, budget=budget) is not None:
            return {"verdict": True, "lift": xt, "search_complete": True}
    return {"verdict": False, "search_complete": True, "witness": "exhausted"}


def lifting_solver(
    C: CurvedCoalgebra,
    Cp: CurvedCoalgebra,
    idual: CurvedMorphism,
    g: CurvedMorphism,
    u: dict,
    up: dict,
    budget: Optional[int] = None,
) -> dict:
    """Solve the lifting square: find L in MC Hom(C', A) with i^* L = u and
    g_* L = u'.  Exhaustive over the enumerated MC set; the report flags
    completeness."""
    A, Ap = g.source, g.target
    F = A.field
    convCA = convolution_algebra(C, A)
    convCpA = convolution_algebra(Cp, A)
    convCpAp = convolution_algebra(Cp, Ap)
    convCAp = convolution_algebra(C, Ap)
    gstar_big = induced_convolution_morphism(convCpA, convCpAp, amap=g)
    gstar_small = induced_convolution_morphism(convCA, convCAp, amap=g)
    # square consistency: g_*(u) = i^*(u')
    lhs = gstar_small.push_mc(u)
    rhs = restrict_element(convCpAp, convCAp, idual, up)
    if not vec_eq(F, lhs, rhs):
        return {"verdict": False, "witness": "square does not commute"}
    try:
        cands = mc_hom_enumerate(Cp, A, budget=budget)
        complete = True
    except BudgetExceeded:
        return {"verdict": False, "witness": "budget exhausted", "search_complete": False}
    for L in cands:
        if not vec_eq(F, restrict_element(convCpA, convCA, idual, L), u):
            continue
        if vec_eq(F, gstar_big.push_mc(L), up):
            return {"verdict": True, "lift": L, "search_complete": complete}
    return {"verdict": False, "search_complete": complete, "witness": "exhausted"}


def inclusion_dual_for_subcoalgebra(
    Cp: CurvedCoalgebra, C: CurvedCoalgebra, label_map: Dict[str, str]
) -> CurvedMorphism:
    """Dual presentation of an inclusion C -> C' given by basis labels
    (C basis label -> C' basis label): the dual C'* -> C* kills the other
    dual basis vectors."""
    F = C.field
    Astar_big = dualize_coalgebra(Cp)
    Astar_small = dualize_coalgebra(C)
    inv = {v: k for k, v in label_map.items()}
    entries = {}
    for j in range(Cp.dim):
        lbl = Cp.label(j)
        if lbl in inv:
            entries[j] = {C.space.index(inv[lbl]): F.one()}
    f = GradedMap(Astar_big.space, Astar_small.space, 0, entries)
    return CurvedMorphism(Astar_big, Astar_small, f, {})
