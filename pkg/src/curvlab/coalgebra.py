"""Finite-dimensional curved coalgebras via duality with curved algebras.

All coalgebra data is stored directly (comultiplication triples, counit,
coderivation, curvature functional), but every algorithm routes through the
dual algebra: dualize is an involution with unsigned transposes, under which
the two axiom sets exchange.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .algebra import CurvedAlgebra, tensor_algebras
from .fields import FieldSpec
from .gradedlin import GradedMap, GradedSpace, rref, vec_is_zero


@dataclass
class CurvedCoalgebra:
    """Curved coalgebra: comult as triples, counit/curvature as functionals.

    comult[i] = {(j, k): c}: Delta(e_i) = sum c * e_j @ e_k.
    counit[i], h[i]: values of the functionals on basis vectors.
    d: coderivation of degree +1.
    """

    space: GradedSpace
    comult: Dict[int, Dict[Tuple[int, int], object]]
    counit: Dict[int, object]
    d: GradedMap
    h: Dict[int, object]

    @property
    def field(self) -> FieldSpec:
        return self.space.field

    @property
    def dim(self) -> int:
        return self.space.dim

    def label(self, i: int) -> str:
        return self.space.basis[i][0]

    def comultiply(self, v: dict) -> Dict[Tuple[int, int], object]:
        F = self.field
        out: Dict[Tuple[int, int], object] = {}
        for i, c in v.items():
            for jk, x in self.comult.get(i, {}).items():
                s = F.add(out.get(jk, F.zero()), F.mul(c, x))
                if F.is_zero(s):
                    out.pop(jk, None)
                else:
                    out[jk] = s
        return out

    def counit_value(self, v: dict):
        F = self.field
        out = F.zero()
        for i, c in v.items():
            out = F.add(out, F.mul(c, self.counit.get(i, F.zero())))
        return out

    def h_value(self, v: dict):
        F = self.field
        out = F.zero()
        for i, c in v.items():
            out = F.add(out, F.mul(c, self.h.get(i, F.zero())))
        return out

    def validate(self, max_violations: int = 8) -> List[str]:
        """Axioms are checked on the dual algebra (the definitions agree)."""
        A = dualize_coalgebra(self)
        out = A.validate(max_violations)
        return [f"(dual) {m}" for m in out]

    def assert_valid(self):
        bad = self.validate()
        if bad:
            raise ValueError("invalid curved coalgebra: " + "; ".join(bad))

    def grouplike_basis_indices(self) -> List[int]:
        """Indices of basis vectors g with Delta(g) = g@g, eps(g) = 1."""
        F = self.field
        out = []
        for i in range(self.dim):
            if F.is_zero(F.sub(self.counit.get(i, F.zero()), F.one())):
                cm = self.comult.get(i, {})
                if set(cm) == {(i, i)} and F.is_zero(F.sub(cm[(i, i)], F.one())):
                    out.append(i)
        return out


# ---------------------------------------------------------------------------
# duality (unsigned transposes; an involution)


def _dual_label(lbl: str) -> str:
    return lbl[:-1] if lbl.endswith("'") else lbl + "'"


def dualize_algebra(A: CurvedAlgebra) -> CurvedCoalgebra:
    """A* with basis a' of degree -|a|; Delta(c') pairs products, eps = unit."""
    F = A.field
    space = GradedSpace.make(
        [(_dual_label(l), -d) for l, d in A.space.basis], F
    )
    comult: Dict[int, Dict[Tuple[int, int], object]] = {}
    for (i, j), col in A.mult.items():
        for k, c in col.items():
            if F.is_zero(c):
                continue
            comult.setdefault(k, {})
            comult[k][(i, j)] = F.add(comult[k].get((i, j), F.zero()), c)
    counit = {i: c for i, c in A.unit.items()}
    entries: Dict[int, dict] = {}
    for j in range(A.dim):
        for i, c in A.d.entries.get(j, {}).items():
            entries.setdefault(i, {})[j] = c
    d = GradedMap(space, space, 1, entries)
    h = {i: c for i, c in A.h.items()}
    return CurvedCoalgebra(space, comult, counit, d, h)


def dualize_coalgebra(C: CurvedCoalgebra) -> CurvedAlgebra:
    F = C.field
    space = GradedSpace.make(
        [(_dual_label(l), -d) for l, d in C.space.basis], F
    )
    mult: Dict[Tuple[int, int], dict] = {}
    for k, terms in C.comult.items():
        for (i, j), c in terms.items():
            if F.is_zero(c):
                continue
            mult.setdefault((i, j), {})
            mult[(i, j)][k] = F.add(mult[(i, j)].get(k, F.zero()), c)
    unit = {i: c for i, c in C.counit.items() if not F.is_zero(c)}
    entries: Dict[int, dict] = {}
    for j in range(C.dim):
        for i, c in C.d.entries.get(j, {}).items():
            entries.setdefault(i, {})[j] = c
    d = GradedMap(space, space, 1, entries)
    h = {i: c for i, c in C.h.items() if not F.is_zero(c)}
    return CurvedAlgebra(space, unit, mult, d, h)


def tensor_coalgebras(C: CurvedCoalgebra, D: CurvedCoalgebra) -> CurvedCoalgebra:
    """Tensor product, computed through the dual algebras."""
    return dualize_algebra(tensor_algebras(dualize_coalgebra(C), dualize_coalgebra(D)))


# ---------------------------------------------------------------------------
# coradical / curved coradical and towers (through the dual algebra)


def subspace_to_annihilator_basis(F, rows: List[dict], dim: int) -> List[dict]:
    """Basis of {x : <x, r> = 0 for all r in rows} (coordinates in the dual)."""
    from .gradedlin import kernel_basis

    return kernel_basis(F, rows, dim)


def coradical(C: CurvedCoalgebra, budget: Optional[int] = None):
    """Maximal cosemisimple subcoalgebra = annihilator of rad(C*).

    Returns (indices-description) as a list of coefficient vectors spanning
    the coradical inside C.
    """
    from .semisimple import graded_radical

    A = dualize_coalgebra(C)
    J = graded_radical(A, budget=budget)
    return subspace_to_annihilator_basis(C.field, [dict(r) for r in J], C.dim)


def curved_coradical(C: CurvedCoalgebra, budget: Optional[int] = None):
    """Annihilator of the internal curved radical of C*."""
    from .semisimple import internal_curved_radical

    A = dualize_coalgebra(C)
    Jm = internal_curved_radical(A, budget=budget)
    return subspace_to_annihilator_basis(C.field, [dict(r) for r in Jm], C.dim)


def cosquare_zero_tower(C: CurvedCoalgebra, sub_basis: List[dict], budget=None):
    """Factor a conilpotent extension span(sub_basis) -> C through cosquare-zero steps.

    Dualizes to the kernel-power tower of C* ->> (sub)*; returns the list of
    intermediate subspace bases, smallest first, ending with all of C.
    Raises with a witness when the dual kernel is not nilpotent.
    """
    from .gradedlin import in_span, span_rank

    F = C.field
    A = dualize_coalgebra(C)
    # dual kernel: annihilator of the subcoalgebra
    ann = _annihilator_of_subspace(F, sub_basis, C.dim)
    # check it is an ideal and nilpotent
    powers = [ann]
    cur = ann
    while cur:
        nxt_rows = []
        for u in cur:
            for v in ann:
                p = A.product(u, v)
                if p:
                    nxt_rows.append(p)
        red, _ = rref(F, nxt_rows, A.dim)
        if red and span_rank(F, cur, A.dim) == span_rank(F, red, A.dim):
            raise ValueError(
                "quotient is not conilpotent: dual kernel power stabilized at a "
                f"nonzero ideal (witness {A.space.basis[sorted(red[0])[0]][0]})"
            )
        if not red:
            break
        powers.append(red)
        cur = red
    return _tower_chain(F, sub_basis, powers, C)


def _tower_chain(F, sub_basis, powers, C):
    chain = [sub_basis]
    for P in powers[1:]:
        chain.append(subspace_to_annihilator_basis(F, [dict(r) for r in P], C.dim))
    chain.append([C.space.basis_vector(i) for i in range(C.dim)])
    # deduplicate consecutive equal-rank steps
    from .gradedlin import span_rank

    out = [chain[0]]
    for step in chain[1:]:
        if span_rank(F, step, C.dim) != span_rank(F, out[-1], C.dim):
            out.append(step)
    return out


def _annihilator_of_subspace(F, vectors: List[dict], dim: int) -> List[dict]:
    from .gradedlin import kernel_basis

    return kernel_basis(F, [dict(v) for v in vectors], dim)
