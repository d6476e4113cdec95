"""curvlab command line: load (co)algebra documents, dispatch operations,
emit deterministic JSON reports.

Exit codes: 0 success / true verdict; 1 false verdict (with witnesses);
2 input error; 3 budget refusal.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, Optional

from .algebra import (
    CurvedAlgebra,
    CurvedMorphism,
    mc_enumerate,
    mc_polynomial_system,
    tensor_algebras,
    twist_algebra,
    uncurve_morita,
)
from .barcobar import adjunction_count_check, bar_dual, cobar, morphisms_via_mc
from .budget import default_budget
from .coalgebra import CurvedCoalgebra, dualize_algebra, dualize_coalgebra
from .convolution import convolution_algebra
from .documents import (
    DocumentError,
    dump_algebra,
    dump_coalgebra,
    load_document,
    load_path,
)
from .fields import GF, QQ, FieldSpec
from .gradedlin import BudgetExceeded, GradedMap, GradedSpace, vec_is_zero
from .interval import make_interval
from .mc import (
    find_gauge_quadruple,
    interval_tensor,
    moduli_set,
    n_homotopy_search,
    three_homotopy_unpack,
    verify_n_homotopy,
)
from .modelcheck import (
    alg_mc,
    hom_window_cohomology,
    inclusion_dual_for_subcoalgebra,
    is_fibration_mcdg,
    lifting_solver,
    omega_cat,
    rectify_cofibration,
)
from .obstruction import (
    extension_from_total,
    lift_along_gauge,
    obstruction_class,
    try_lift,
)
from .presented import PresentedCurvedAlgebra
from .semisimple import (
    css_decompose,
    css_quotient,
    css_section,
    graded_radical,
    internal_curved_radical,
    nilpotent_tower,
)
from .twisted import induce, make_twisted, module_hom_complex


def emit(report: dict, code: int = 0) -> int:
    print(json.dumps(report, indent=2))
    return code


def fail_input(msg: str) -> int:
    print(json.dumps({"error": msg}, indent=2))
    return 2


def fail_budget(e: BudgetExceeded) -> int:
    print(json.dumps({"refusal": str(e), "budget": e.budget, "required": e.required}, indent=2))
    return 3


def base_report(check: str) -> dict:
    return {"check": check, "budget": default_budget()}


def _field(args) -> FieldSpec:
    if args.field in ("Q", "rationals", "0"):
        return QQ
    return GF(int(args.field))


def _load_algebra(path: str) -> CurvedAlgebra:
    obj, _ = load_path(path)
    if isinstance(obj, PresentedCurvedAlgebra):
        return obj.materialize().algebra
    if isinstance(obj, CurvedCoalgebra):
        raise DocumentError(f"{path} holds a coalgebra where an algebra is required")
    return obj


def _load_coalgebra(path: str) -> CurvedCoalgebra:
    obj, ann = load_path(path)
    if isinstance(obj, CurvedCoalgebra):
        return obj
    if isinstance(obj, PresentedCurvedAlgebra):
        obj = obj.materialize().algebra
    return dualize_algebra(obj)


def _element(A: CurvedAlgebra, text: str) -> dict:
    data = json.loads(text)
    return A.element_from_labels(data)


def _pretty(A: CurvedAlgebra, v: dict) -> dict:
    F = A.field
    return {A.label(i): F.format_coeff(c) for i, c in sorted(v.items())}


def _load_morphism(path: str) -> CurvedMorphism:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    Asrc, _ = load_document(doc["source"])
    Atgt, _ = load_document(doc["target"])
    if isinstance(Asrc, PresentedCurvedAlgebra):
        Asrc = Asrc.materialize().algebra
    if isinstance(Atgt, PresentedCurvedAlgebra):
        Atgt = Atgt.materialize().algebra
    F = Asrc.field
    entries: Dict[int, dict] = {}
    for src_l, img in doc["map"].items():
        entries[Asrc.space.index(src_l)] = Atgt.element_from_labels(img)
    b = Atgt.element_from_labels(doc.get("b", {}))
    return CurvedMorphism(
        Asrc,
        Atgt,
        GradedMap(Asrc.space, Atgt.space, 0, entries),
        b,
        unital=doc.get("unital", True),
    )


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args) -> int:
    obj, _ = load_path(args.file)
    rep = base_report("curved (co)algebra axioms: d(h)=0 and d^2=[h,-] exact")
    if isinstance(obj, PresentedCurvedAlgebra):
        obj = obj.materialize().algebra
    bad = obj.validate()
    rep["valid"] = not bad
    rep["violations"] = bad
    return emit(rep, 0 if not bad else 1)


def cmd_interval(args) -> int:
    F = _field(args)
    n = None if args.n == "inf" else int(args.n)
    I = make_interval(F, n, truncation=args.truncate)
    rep = base_report("interval algebra: dim 2n+1, dims (2,...,2,1) per degree")
    rep["n"] = args.n
    rep["dimension"] = I.algebra.dim
    rep["basis"] = [[l, d] for l, d in I.algebra.space.basis]
    rep["valid"] = I.algebra.validate() == []
    if args.export:
        with open(args.export, "w", encoding="utf-8") as fh:
            json.dump(dump_algebra(I.algebra), fh, indent=2)
        rep["exported"] = args.export
    return emit(rep, 0 if rep["valid"] else 1)


def cmd_mc_enum(args) -> int:
    A = _load_algebra(args.file)
    rep = base_report("Maurer-Cartan solutions of h + dx + x^2 = 0")
    if not A.field.is_prime_field:
        rep["polynomial_system"] = mc_polynomial_system(A)
        return emit(rep, 0)
    sols = mc_enumerate(A, budget=args.max_enum or None)
    rep["count"] = len(sols)
    rep["elements"] = [_pretty(A, x) for x in sols]
    return emit(rep, 0)


def cmd_moduli(args) -> int:
    A = _load_algebra(args.file)
    rep = base_report("MC moduli: isomorphism classes in H^0 of the MC dg category")
    classes = moduli_set(A, budget=args.max_enum or None)
    rep["classes"] = len(classes)
    rep["members"] = [[_pretty(A, x) for x in cls] for cls in classes]
    return emit(rep, 0)


def cmd_homotopy(args) -> int:
    A = _load_algebra(args.file)
    x = _element(A, args.x)
    y = _element(A, args.y)
    rep = base_report(f"{args.n}-homotopy of MC elements through the interval algebra")
    H = n_homotopy_search(A, x, y, args.n, budget=args.max_enum or None)
    if H is None:
        rep["found"] = False
        return emit(rep, 1)
    T = interval_tensor(A, args.n)
    rep["found"] = True
    rep["homotopy"] = _pretty(T, H.X)
    return emit(rep, 0)


def cmd_twist(args) -> int:
    A = _load_algebra(args.file)
    x = _element(A, args.x)
    rep = base_report("twist by an MC element: d^x = d + [x,-], curvature 0")
    try:
        Ax, iso = twist_algebra(A, x)
    except ValueError as e:
        rep["valid"] = False
        rep["witness"] = str(e)
        return emit(rep, 1)
    rep["valid"] = Ax.validate() == [] and iso.validate() == []
    if args.export:
        with open(args.export, "w", encoding="utf-8") as fh:
            json.dump(dump_algebra(Ax), fh, indent=2)
        rep["exported"] = args.export
    return emit(rep, 0 if rep["valid"] else 1)


def cmd_tensor(args) -> int:
    A = _load_algebra(args.file)
    B = _load_algebra(args.file2)
    T = tensor_algebras(A, B)
    rep = base_report("tensor product with Koszul signs and curvature h@1 + 1@h")
    rep["dimension"] = T.dim
    rep["valid"] = T.validate() == []
    if args.export:
        with open(args.export, "w", encoding="utf-8") as fh:
            json.dump(dump_algebra(T), fh, indent=2)
        rep["exported"] = args.export
    return emit(rep, 0 if rep["valid"] else 1)


def cmd_convolve(args) -> int:
    C = _load_coalgebra(args.coalgebra)
    A = _load_algebra(args.algebra)
    conv = convolution_algebra(C, A)
    rep = base_report("convolution algebra Hom(C,A): fg = m(f@g)Delta")
    rep["dimension"] = conv.algebra.dim
    rep["valid"] = conv.algebra.validate() == []
    from .convolution import convolution_tensor_comparison

    rep["matches_dual_tensor"] = convolution_tensor_comparison(conv)
    return emit(rep, 0 if rep["valid"] and rep["matches_dual_tensor"] else 1)


def cmd_cobar(args) -> int:
    C = _load_coalgebra(args.coalgebra)
    w = C.space.index(args.coaugmentation) if args.coaugmentation else 0
    rep = base_report("truncated cobar construction on the coaugmentation coideal")
    om = cobar(C, w, args.truncate)
    rep["dimensions_per_degree"] = {
        str(d): c for d, c in sorted(om.presentation.word_counts_by_degree().items())
    }
    rep["valid"] = om.algebra.validate() == []
    rep["curvature_zero"] = vec_is_zero(C.field, om.algebra.h)
    return emit(rep, 0 if rep["valid"] else 1)


def cmd_bar_dual(args) -> int:
    A = _load_algebra(args.algebra)
    rep = base_report("truncated dual bar construction (tensor algebra on the shifted dual)")
    w = A.space.index(args.splitting) if args.splitting else None
    bd = bar_dual(A, args.truncate, w_index=w)
    rep["dimensions_per_degree"] = {
        str(d): c
        for d, c in sorted(bd.cobar.presentation.word_counts_by_degree().items())
    }
    rep["valid"] = bd.cobar.algebra.validate() == []
    return emit(rep, 0 if rep["valid"] else 1)


def cmd_adjunction_check(args) -> int:
    C = _load_coalgebra(args.coalgebra)
    A = _load_algebra(args.algebra)
    w = C.space.index(args.coaugmentation) if args.coaugmentation else 0
    rep = base_report("bar-cobar morphism counts through MC sets of Hom(C,A)")
    try:
        rep.update(
            adjunction_count_check(
                C, A, w, N_max=args.truncate, budget=args.max_enum or None
            )
        )
    except BudgetExceeded as e:
        return fail_budget(e)
    return emit(rep, 0 if rep.get("conclusive") else 1)


def cmd_twisted(args) -> int:
    A = _load_algebra(args.algebra)
    rep = base_report("twisted modules: differentials are MC elements of A@End(V)")
    V = GradedSpace.make(json.loads(args.module), A.field)
    amb_needed = json.loads(args.xi)
    from .twisted import ambient_algebra

    amb = ambient_algebra(A, V)
    xi = amb.element_from_labels(amb_needed)
    if args.action == "make":
        try:
            M = make_twisted(A, V, xi)
        except ValueError as e:
            rep["valid"] = False
            rep["witness"] = str(e)
            return emit(rep, 1)
        rep["valid"] = True
        return emit(rep, 0)
    if args.action == "hom":
        M = make_twisted(A, V, xi)
        c = module_hom_complex(M, M)
        from .gradedlin import cohomology

        H = cohomology(c, args.lo, args.hi)
        rep["cohomology"] = {str(n): H[n]["dim"] for n in sorted(H)}
        return emit(rep, 0)
    if args.action == "induce":
        if not args.morphism:
            return fail_input("twisted induce requires --morphism")
        phi = _load_morphism(args.morphism)
        M = make_twisted(A, V, xi)
        N = induce(phi, M)
        rep["induced_xi"] = _pretty(N.ambient, N.xi)
        rep["valid"] = True
        return emit(rep, 0)
    return fail_input(f"unknown twisted action {args.action!r}")


def cmd_obstruction(args) -> int:
    with open(args.extension, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    A, _ = load_document(doc["total"])
    if isinstance(A, PresentedCurvedAlgebra):
        A = A.materialize().algebra
    ideal = [A.space.index(l) for l in doc["ideal"]]
    ext = extension_from_total(A, ideal)
    x = ext.B.element_from_labels(json.loads(args.x))
    if args.action == "class":
        rep = base_report("obstruction cocycle nu(x) = del(x) + xi(x,x)")
        nu, cert = obstruction_class(ext, x)
        rep["nu"] = {ext.L.space.basis[i][0]: ext.field.format_coeff(c) for i, c in sorted(nu.items())}
        rep["cocycle_certificate"] = cert
        return emit(rep, 0 if cert else 1)
    if args.action == "lift":
        rep = base_report("MC lifting along a square-zero extension")
        verdict = try_lift(ext, x)
        rep["verdict"] = verdict[0]
        if verdict[0] == "lift":
            rep["lift"] = _pretty(
                _total_cache(ext), verdict[1]
            )
            return emit(rep, 0)
        rep["obstruction_class"] = {
            ext.L.space.basis[i][0]: ext.field.format_coeff(c)
            for i, c in sorted(verdict[1].items())
        }
        return emit(rep, 1)
    if args.action == "gauge-lift":
        rep = base_report("semisplit gauge transport l' = f l g - del(f) g + del(y) h2")
        y = ext.B.element_from_labels(json.loads(args.y))
        quad = find_gauge_quadruple(ext.B, x, y, budget=args.max_enum or None)
        if quad is None:
            rep["verdict"] = False
            rep["witness"] = "no homotopy gauge equivalence found"
            return emit(rep, 1)
        verdict = try_lift(ext, x)
        if verdict[0] != "lift":
            rep["verdict"] = False
            rep["witness"] = "x does not lift"
            return emit(rep, 1)
        yl = lift_along_gauge(ext, verdict[2], y, quad)
        rep["verdict"] = True
        rep["lift_of_y"] = _pretty(_total_cache(ext), yl)
        return emit(rep, 0)
    return fail_input(f"unknown obstruction action {args.action!r}")


def _total_cache(ext):
    from .obstruction import build_total

    A, _ = build_total(ext)
    return A


def cmd_radical(args) -> int:
    A = _load_algebra(args.file)
    rep = base_report("graded radical and internal curved radical J_- = {x in J : dx in J}")
    try:
        J = graded_radical(A, budget=args.max_enum or None)
        Jm = internal_curved_radical(A, budget=args.max_enum or None, radical=J)
    except BudgetExceeded as e:
        return fail_budget(e)
    rep["radical"] = [_pretty(A, r) for r in J]
    rep["internal_curved_radical"] = [_pretty(A, r) for r in Jm]
    return emit(rep, 0)


def cmd_css_decompose(args) -> int:
    A = _load_algebra(args.file)
    rep = base_report("curved semisimple decomposition into type-1/type-2 factors")
    try:
        B, pi, Jm = css_quotient(A, budget=args.max_enum or None)
        dec = css_decompose(B, budget=args.max_enum or None)
    except BudgetExceeded as e:
        return fail_budget(e)
    except ValueError as e:
        rep["verdict"] = False
        rep["witness"] = str(e)
        return emit(rep, 1)
    rep["css_dimension"] = B.dim
    rep["factors"] = [
        {"kind": f.kind, "dimension": f.algebra.dim} for f in dec.factors
    ]
    from .semisimple import reassemble_check

    rep["reassembles"] = reassemble_check(dec)
    return emit(rep, 0 if rep["reassembles"] else 1)


def cmd_css_section(args) -> int:
    pi = _load_morphism(args.morphism)
    rep = base_report("section of a surjection of curved semisimple algebras")
    try:
        sec = css_section(pi, budget=args.max_enum or None)
    except (ValueError, AssertionError) as e:
        rep["verdict"] = False
        rep["witness"] = str(e)
        return emit(rep, 1)
    rep["verdict"] = True
    rep["section"] = {
        pi.target.label(j): _pretty(pi.source, sec.f.entries.get(j, {}))
        for j in range(pi.target.dim)
    }
    return emit(rep, 0)


def cmd_tower(args) -> int:
    pi = _load_morphism(args.morphism)
    rep = base_report("nilpotent kernel factored through square-zero steps")
    try:
        steps = nilpotent_tower(pi)
    except ValueError as e:
        rep["verdict"] = False
        rep["witness"] = str(e)
        return emit(rep, 1)
    rep["steps"] = len(steps)
    rep["stage_dimensions"] = [s.source.dim for s in steps] + (
        [steps[-1].target.dim] if steps else [pi.target.dim]
    )
    return emit(rep, 0)


def cmd_omega_cat(args) -> int:
    C = _load_coalgebra(args.coalgebra)
    rep = base_report("categorical cobar of a pointed coalgebra with split coradical")
    try:
        D = omega_cat(C, budget=args.max_enum or None)
    except ValueError as e:
        rep["verdict"] = False
        rep["witness"] = str(e)
        return emit(rep, 1)
    rep["objects"] = list(D.objects)
    rep["arrows"] = [
        {"label": a.label, "source": a.source, "target": a.target, "degree": a.degree}
        for a in D.arrows
    ]
    rep["differentials"] = {
        a.label: {
            ("*".join(k) if k[0] != "v" else f"id[{k[1]}]"): C.field.format_coeff(c)
            for k, c in sorted(D.d_of(a.label).items(), key=str)
        }
        for a in D.arrows
        if D.d_of(a.label)
    }
    if args.window:
        lo, hi = (int(t) for t in args.window.split(","))
        rep["hom_cohomology"] = {}
        for x in D.objects:
            for y in D.objects:
                H, _ = hom_window_cohomology(D, x, y, lo, hi, word_bound=args.words)
                rep["hom_cohomology"][f"{x}->{y}"] = {str(n): H[n] for n in sorted(H)}
    return emit(rep, 0)


def cmd_alg_mc(args) -> int:
    C = _load_coalgebra(args.coalgebra)
    rep = base_report("reduced MC algebra of the categorical cobar")
    D = omega_cat(C, budget=args.max_enum or None)
    P = alg_mc(D, args.basepoint, truncation=args.truncate)
    rep["generators"] = [[a.label, a.degree] for a in P.arrows]
    rep["dimensions_per_degree"] = {
        str(d): c for d, c in sorted(P.word_counts_by_degree().items())
    }
    return emit(rep, 0)


def cmd_fib_check(args) -> int:
    C = _load_coalgebra(args.coalgebra)
    g = _load_morphism(args.morphism)
    rep = base_report("strong-fibration witness: hom surjectivity + H^0 iso lifting")
    try:
        rep.update(is_fibration_mcdg(C, g, budget=args.max_enum or None))
    except BudgetExceeded as e:
        return fail_budget(e)
    return emit(rep, 0 if rep.get("verdict") else 1)


def cmd_rectify(args) -> int:
    Cp = _load_coalgebra(args.big)
    Csub = _load_coalgebra(args.small)
    A = _load_algebra(args.algebra)
    label_map = json.loads(args.labels)
    idual = inclusion_dual_for_subcoalgebra(Cp, Csub, label_map)
    from .convolution import convolution_algebra as _conv

    convb = _conv(Cp, A)
    convs = _conv(Csub, A)
    X = convb.algebra.element_from_labels(json.loads(args.x))
    g0 = convs.algebra.element_from_labels(json.loads(args.g0))
    rep = base_report("rectification of a homotopy-commutative triangle")
    try:
        res = rectify_cofibration(Csub, Cp, idual, A, X, g0, budget=args.max_enum or None)
    except BudgetExceeded as e:
        return fail_budget(e)
    rep.update(
        {k: (_pretty(convb.algebra, v) if k == "lift" else v) for k, v in res.items()}
    )
    return emit(rep, 0 if res.get("verdict") else 1)


def cmd_lift(args) -> int:
    Cp = _load_coalgebra(args.big)
    Csub = _load_coalgebra(args.small)
    g = _load_morphism(args.morphism)
    label_map = json.loads(args.labels)
    idual = inclusion_dual_for_subcoalgebra(Cp, Csub, label_map)
    from .convolution import convolution_algebra as _conv

    convCA = _conv(Csub, g.source)
    convCpAp = _conv(Cp, g.target)
    u = convCA.algebra.element_from_labels(json.loads(args.u))
    up = convCpAp.algebra.element_from_labels(json.loads(args.uprime))
    rep = base_report("lifting solver for an injection against a fibration")
    try:
        res = lifting_solver(Csub, Cp, idual, g, u, up, budget=args.max_enum or None)
    except BudgetExceeded as e:
        return fail_budget(e)
    big = _conv(Cp, g.source).algebra
    rep.update({k: (_pretty(big, v) if k == "lift" else v) for k, v in res.items()})
    return emit(rep, 0 if res.get("verdict") else 1)


def cmd_uncurve(args) -> int:
    A = _load_algebra(args.file)
    rep = base_report("uncurving route through A @ End(k + k[1]) and the matrix twist")
    B, x, (incl, iso) = uncurve_morita(A)
    rep["dimension"] = B.dim
    rep["valid"] = B.validate() == [] and vec_is_zero(B.field, B.h)
    return emit(rep, 0 if rep["valid"] else 1)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="curvlab",
        description="exact computations with curved algebras and coalgebras",
    )
    p.add_argument("--max-enum", type=int, default=0, help="enumeration budget override")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, **kw)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("validate", cmd_validate)
    sp.add_argument("file")
    sp = add("interval", cmd_interval)
    sp.add_argument("n")
    sp.add_argument("--field", default="Q")
    sp.add_argument("--truncate", type=int, default=None)
    sp.add_argument("--export")
    sp = add("mc-enum", cmd_mc_enum)
    sp.add_argument("file")
    sp = add("moduli", cmd_moduli)
    sp.add_argument("file")
    sp = add("homotopy", cmd_homotopy)
    sp.add_argument("file")
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)
    sp.add_argument("--n", type=int, default=3)
    sp = add("twist", cmd_twist)
    sp.add_argument("file")
    sp.add_argument("--x", required=True)
    sp.add_argument("--export")
    sp = add("tensor", cmd_tensor)
    sp.add_argument("file")
    sp.add_argument("file2")
    sp.add_argument("--export")
    sp = add("convolve", cmd_convolve)
    sp.add_argument("coalgebra")
    sp.add_argument("algebra")
    sp = add("cobar", cmd_cobar)
    sp.add_argument("coalgebra")
    sp.add_argument("--coaugmentation")
    sp.add_argument("--truncate", type=int, default=3)
    sp = add("bar-dual", cmd_bar_dual)
    sp.add_argument("algebra")
    sp.add_argument("--splitting")
    sp.add_argument("--truncate", type=int, default=3)
    sp = add("adjunction-check", cmd_adjunction_check)
    sp.add_argument("coalgebra")
    sp.add_argument("algebra")
    sp.add_argument("--coaugmentation")
    sp.add_argument("--truncate", type=int, default=3)
    sp = add("twisted", cmd_twisted)
    sp.add_argument("action", choices=["make", "hom", "induce"])
    sp.add_argument("algebra")
    sp.add_argument("--module", required=True, help='JSON basis [["m",0],...]')
    sp.add_argument("--xi", default="{}")
    sp.add_argument("--morphism", help="morphism document for induce")
    sp.add_argument("--lo", type=int, default=-2)
    sp.add_argument("--hi", type=int, default=2)
    sp = add("obstruction", cmd_obstruction)
    sp.add_argument("action", choices=["class", "lift", "gauge-lift"])
    sp.add_argument("extension")
    sp.add_argument("--x", required=True)
    sp.add_argument("--y")
    sp = add("radical", cmd_radical)
    sp.add_argument("file")
    sp = add("css-decompose", cmd_css_decompose)
    sp.add_argument("file")
    sp = add("css-section", cmd_css_section)
    sp.add_argument("morphism")
    sp = add("tower", cmd_tower)
    sp.add_argument("morphism")
    sp = add("omega-cat", cmd_omega_cat)
    sp.add_argument("coalgebra")
    sp.add_argument("--window")
    sp.add_argument("--words", type=int, default=8)
    sp = add("alg-mc", cmd_alg_mc)
    sp.add_argument("coalgebra")
    sp.add_argument("--basepoint", required=True)
    sp.add_argument("--truncate", type=int, default=4)
    sp = add("fib-check", cmd_fib_check)
    sp.add_argument("coalgebra")
    sp.add_argument("morphism")
    sp = add("rectify", cmd_rectify)
    sp.add_argument("small")
    sp.add_argument("big")
    sp.add_argument("algebra")
    sp.add_argument("--labels", required=True, help="JSON {small label: big label}")
    sp.add_argument("--x", required=True)
    sp.add_argument("--g0", required=True)
    sp = add("lift", cmd_lift)
    sp.add_argument("small")
    sp.add_argument("big")
    sp.add_argument("morphism")
    sp.add_argument("--labels", required=True)
    sp.add_argument("--u", required=True)
    sp.add_argument("--uprime", required=True)
    sp = add("uncurve", cmd_uncurve)
    sp.add_argument("file")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    import os

    if args.max_enum:
        os.environ["CURVLAB_MAX_ENUM"] = str(args.max_enum)
    try:
        return args.fn(args)
    except DocumentError as e:
        return fail_input(str(e))
    except FileNotFoundError as e:
        return fail_input(str(e))
    except json.JSONDecodeError as e:
        return fail_input(f"invalid JSON: {e}")
    except BudgetExceeded as e:
        return fail_budget(e)
    except KeyError as e:
        return fail_input(f"missing key or label: {e}")


if __name__ == "__main__":
    sys.exit(main())
