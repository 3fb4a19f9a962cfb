"""Decision procedures for the interval algebra and the face lattice.

Interval equality is decided by evaluating under every valuation into the
four-element De Morgan algebra {0, a, b, 1} (a, b incomparable fixed points
of the involution), which generates the variety.  Faces are canonicalized
to an antichain disjunctive normal form; two faces are lattice-equal iff
their canonical forms coincide.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from .errors import IllTyped
from .syntax import (F0, F1, FAnd, FBot, FEq, FOr, FTop, FaceFormula, I0, I1,
                     IJoin, IMeet, IName, INeg, IOne, IntervalExpr, IZero,
                     face_names, iv_names)

# The four DM4 elements encoded as bit pairs: meet/join act componentwise
# and the involution swaps the (negated) components.
DM_BOT = (0, 0)
DM_A = (0, 1)
DM_B = (1, 0)
DM_TOP = (1, 1)
DM4 = (DM_BOT, DM_A, DM_B, DM_TOP)


def iv_eval(r: IntervalExpr, env: dict[str, tuple[int, int]]) -> tuple[int, int]:
    match r:
        case IZero():
            return DM_BOT
        case IOne():
            return DM_TOP
        case IName(n):
            return env[n]
        case INeg(a):
            p, q = iv_eval(a, env)
            return (1 - q, 1 - p)
        case IMeet(a, b):
            p1, q1 = iv_eval(a, env)
            p2, q2 = iv_eval(b, env)
            return (p1 & p2, q1 & q2)
        case IJoin(a, b):
            p1, q1 = iv_eval(a, env)
            p2, q2 = iv_eval(b, env)
            return (p1 | p2, q1 | q2)
    raise IllTyped(f"not an interval expression: {r!r}")


def iv_equal(r: IntervalExpr, s: IntervalExpr) -> bool:
    """Equality in the free De Morgan algebra on the names of r and s."""
    names = sorted(iv_names(r) | iv_names(s))
    for values in itertools.product(DM4, repeat=len(names)):
        env = dict(zip(names, values))
        if iv_eval(r, env) != iv_eval(s, env):
            return False
    return True


def iv_is_zero(r: IntervalExpr) -> bool:
    return iv_equal(r, I0)


def iv_is_one(r: IntervalExpr) -> bool:
    return iv_equal(r, I1)


# ---------------------------------------------------------------------------
# Face canonical form.

Conj = frozenset[tuple[str, int]]  # a conjunction of atoms (name, value)


@dataclass(frozen=True)
class FaceDNF:
    """Antichain of conjunctions.  Empty set is the bottom face; the
    singleton empty conjunction is the top face."""

    conjs: frozenset[Conj]

    def is_bottom(self) -> bool:
        return not self.conjs

    def is_top(self) -> bool:
        return self.conjs == frozenset((frozenset(),))

    def names(self) -> frozenset[str]:
        out: set[str] = set()
        for c in self.conjs:
            out.update(n for n, _ in c)
        return frozenset(out)

    def __le__(self, other: "FaceDNF") -> bool:
        # every branch of self lies under some branch of other
        return all(any(o <= c for o in other.conjs) for c in self.conjs)

    def meet(self, other: "FaceDNF") -> "FaceDNF":
        out = set()
        for c1 in self.conjs:
            for c2 in other.conjs:
                merged = _merge_conj(c1, c2)
                if merged is not None:
                    out.add(merged)
        return _antichain(out)

    def join(self, other: "FaceDNF") -> "FaceDNF":
        return _antichain(set(self.conjs) | set(other.conjs))

    def to_formula(self) -> FaceFormula:
        """Render back to a face formula with a deterministic shape."""
        if self.is_bottom():
            return F0
        if self.is_top():
            return F1
        disj: FaceFormula | None = None
        for c in sorted(self.conjs, key=lambda c: sorted(c)):
            conj: FaceFormula | None = None
            for n, v in sorted(c):
                atom = FEq(n, v)
                conj = atom if conj is None else FAnd(conj, atom)
            assert conj is not None
            disj = conj if disj is None else FOr(disj, conj)
        assert disj is not None
        return disj


def _merge_conj(c1: Conj, c2: Conj) -> Conj | None:
    merged = dict(c1)
    for n, v in c2:
        if merged.get(n, v) != v:
            return None  # (i=0) and (i=1) collapse to the bottom face
        merged[n] = v
    return frozenset(merged.items())


def _antichain(conjs: set[Conj]) -> FaceDNF:
    keep = {c for c in conjs if not any(o < c for o in conjs)}
    return FaceDNF(frozenset(keep))


DNF_TOP = FaceDNF(frozenset((frozenset(),)))
DNF_BOT = FaceDNF(frozenset())


def face_dnf(phi: FaceFormula) -> FaceDNF:
    match phi:
        case FBot():
            return DNF_BOT
        case FTop():
            return DNF_TOP
        case FEq(n, v):
            return FaceDNF(frozenset((frozenset(((n, v),)),)))
        case FAnd(a, b):
            return face_dnf(a).meet(face_dnf(b))
        case FOr(a, b):
            return face_dnf(a).join(face_dnf(b))
    raise IllTyped(f"not a face formula: {phi!r}")


def face_equal(restriction: FaceFormula, psi1: FaceFormula, psi2: FaceFormula) -> bool:
    """Lattice equality of psi1 and psi2 under the given restriction."""
    rho = face_dnf(restriction)
    return rho.meet(face_dnf(psi1)) == rho.meet(face_dnf(psi2))


def face_entails(restriction: FaceFormula, psi: FaceFormula) -> bool:
    """True iff psi equals the top face under the restriction."""
    return face_equal(restriction, psi, F1)


def face_of_interval(r: IntervalExpr) -> FaceFormula:
    """The face `r = 1`, via the lattice homomorphism from the interval."""
    match r:
        case IZero():
            return F0
        case IOne():
            return F1
        case IName(n):
            return FEq(n, 1)
        case INeg(a):
            return _face_of_neg(a)
        case IMeet(a, b):
            return FAnd(face_of_interval(a), face_of_interval(b))
        case IJoin(a, b):
            return FOr(face_of_interval(a), face_of_interval(b))
    raise IllTyped(f"not an interval expression: {r!r}")


def _face_of_neg(r: IntervalExpr) -> FaceFormula:
    # the face `r = 0`, pushing the involution through De Morgan duality
    match r:
        case IZero():
            return F1
        case IOne():
            return F0
        case IName(n):
            return FEq(n, 0)
        case INeg(a):
            return face_of_interval(a)
        case IMeet(a, b):
            return FOr(_face_of_neg(a), _face_of_neg(b))
        case IJoin(a, b):
            return FAnd(_face_of_neg(a), _face_of_neg(b))
    raise IllTyped(f"not an interval expression: {r!r}")


def face_subst_via(phi: FaceFormula, i: str, r: IntervalExpr,
                   hom: Callable[[IntervalExpr], FaceFormula]) -> FaceFormula:
    """Substitute r for the name i in a face: atoms over i are rewritten to
    the face image of r (for value 1) or of its involution (for value 0)."""
    match phi:
        case FBot() | FTop():
            return phi
        case FEq(n, v):
            if n != i:
                return phi
            return hom(r) if v == 1 else hom(INeg(r))
        case FAnd(a, b):
            return FAnd(face_subst_via(a, i, r, hom), face_subst_via(b, i, r, hom))
        case FOr(a, b):
            return FOr(face_subst_via(a, i, r, hom), face_subst_via(b, i, r, hom))
    raise IllTyped(f"not a face formula: {phi!r}")


def forall_name(i: str, phi: FaceFormula) -> FaceFormula:
    """The largest face below phi that does not mention the name i
    (right adjoint to extending a face with a fresh unconstrained name)."""
    dnf = face_dnf(phi)
    kept = {c for c in dnf.conjs if all(n != i for n, _ in c)}
    return _antichain(kept).to_formula()


# ---------------------------------------------------------------------------
# Equality under a restriction, branch by branch.

def restriction_branches(restriction: FaceFormula) -> tuple[Conj, ...]:
    """The canonical case split of a restriction: one partial assignment of
    names to endpoints per branch.  Empty tuple means the restriction is
    inconsistent and every judgement holds."""
    return tuple(sorted(face_dnf(restriction).conjs, key=lambda c: sorted(c)))


def conj_to_face(c: Conj) -> FaceFormula:
    out: FaceFormula = F1
    for n, v in sorted(c):
        atom = FEq(n, v)
        out = atom if isinstance(out, FTop) else FAnd(out, atom)
    return out


def iv_subst_conj(r: IntervalExpr, c: Conj) -> IntervalExpr:
    from .syntax import iv_subst

    for n, v in c:
        r = iv_subst(r, n, I1 if v == 1 else I0)
    return r


def iv_equal_under(restriction: FaceFormula, r: IntervalExpr, s: IntervalExpr) -> bool:
    """Interval equality under a face restriction: on each branch of the
    restriction the assigned names are substituted and plain equality is
    required.  An inconsistent restriction validates everything."""
    for c in restriction_branches(restriction):
        if not iv_equal(iv_subst_conj(r, c), iv_subst_conj(s, c)):
            return False
    return True
