"""Bidirectional type checking and judgemental equality.

Inference handles eliminators, variables, and annotated heads; checking
handles introductions.  Conversion weak-head normalizes both sides and
compares structurally with eta at functions, pairs, and paths; interval
and face positions defer to the solver; later/next nodes are compared
through a canonical form of their delayed substitutions.

Judgements under a face restriction are decided branch by branch: the
restriction's canonical case split assigns endpoints to names, each branch
is substituted through, and all branches must agree.  An inconsistent
restriction validates every judgement.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Callable, Optional

from . import errors as E
from .cofib import (conj_to_face, face_dnf, face_entails, face_equal,
                    iv_equal_under, restriction_branches)
from .errors import IllTyped, TypeCheckError
from .evaluator import dsubst_context, normalize, type_of, whnf
from .syntax import (App, Comp, Context, DFix, DSubst, F0, F1, FaceFormula,
                     FAnd, FOr, Fst, I0, I1, IName, IntervalExpr, Lam, Later,
                     Nat, NatRec, Next, Pair, PApp, PathT, Pi, PLam, Sigma,
                     Snd, Suc, System, Term, Univ, Var, Zero, alpha_eq,
                     face_names, free_names, fresh, iv_names, subst_interval,
                     subst_term)

sys.setrecursionlimit(max(sys.getrecursionlimit(), 100_000))


@dataclass(frozen=True)
class Judgement:
    """A record of one judgement, for tracing and test harvesting."""

    kind: str  # check | infer | convert-type | convert-term | face-eq | interval-eq
    context: Context
    subjects: tuple


TRACE_CONVERSION: Optional[Callable[[Judgement], None]] = None
SAMPLE_HOOK: Optional[Callable[[Context, Term, Term], None]] = None


def _err(code: str, message: str, **kw) -> TypeCheckError:
    return TypeCheckError(code, message, **kw)


# ---------------------------------------------------------------------------
# Conversion.

def convert(ctx: Context, t: Term, u: Term, ty: Term | None = None) -> bool:
    """Judgemental equality of t and u (at type `ty` when supplied)."""
    if TRACE_CONVERSION is not None:
        TRACE_CONVERSION(Judgement("convert-term", ctx, (t, u, ty)))
    branches = restriction_branches(ctx.restriction)
    if not branches:
        return True  # inconsistent restriction: every equation holds
    if len(branches) == 1 and not branches[0]:
        return _conv(ctx, t, u)
    for conj in branches:
        bctx, bt, bu = ctx, t, u
        for name, val in sorted(conj):
            r = I1 if val == 1 else I0
            bctx = bctx.subst_interval(name, r)
            bt = subst_interval(bt, name, r)
            bu = subst_interval(bu, name, r)
        if not _conv(bctx, bt, bu):
            return False
    return True


def _conv(ctx: Context, t: Term, u: Term) -> bool:
    if alpha_eq(t, u):
        return True
    t = whnf(ctx, t)
    u = whnf(ctx, u)
    if alpha_eq(t, u):
        return True
    rho = ctx.restriction
    match t, u:
        case Pi(x1, d1, c1), Pi(x2, d2, c2):
            if not _conv(ctx, d1, d2):
                return False
            z = fresh(x1)
            return _conv(ctx.bind(z, d1),
                         subst_term(c1, x1, Var(z)), subst_term(c2, x2, Var(z)))
        case Sigma(x1, d1, c1), Sigma(x2, d2, c2):
            if not _conv(ctx, d1, d2):
                return False
            z = fresh(x1)
            return _conv(ctx.bind(z, d1),
                         subst_term(c1, x1, Var(z)), subst_term(c2, x2, Var(z)))
        case PathT(a1, l1, r1), PathT(a2, l2, r2):
            return (_conv(ctx, a1, a2) and _conv(ctx, l1, l2)
                    and _conv(ctx, r1, r2))
        case Later(_, _), Later(_, _):
            return _conv_dsubst(ctx, t, u)
        case Next(_, _), Next(_, _):
            return _conv_dsubst(ctx, t, u)
        case Lam(x1, d1, b1), Lam(x2, d2, b2):
            dom = d1 if d1 is not None else d2
            if dom is None:
                raise IllTyped("conversion of unannotated lambdas")
            z = fresh(x1)
            return _conv(ctx.bind(z, dom),
                         subst_term(b1, x1, Var(z)), subst_term(b2, x2, Var(z)))
        case Lam(x, dom, b), _:
            return _conv_eta_fun(ctx, x, dom, b, u)
        case _, Lam(x, dom, b):
            return _conv_eta_fun(ctx, x, dom, b, t)
        case PLam(i1, b1), PLam(i2, b2):
            k = fresh(i1)
            return _conv(ctx.bind_name(k),
                         subst_interval(b1, i1, IName(k)),
                         subst_interval(b2, i2, IName(k)))
        case PLam(i, b), _:
            k = fresh(i)
            return _conv(ctx.bind_name(k),
                         subst_interval(b, i, IName(k)), PApp(u, IName(k)))
        case _, PLam(i, b):
            k = fresh(i)
            return _conv(ctx.bind_name(k),
                         PApp(t, IName(k)), subst_interval(b, i, IName(k)))
        case Pair(a1, b1), Pair(a2, b2):
            return _conv(ctx, a1, a2) and _conv(ctx, b1, b2)
        case Pair(a, b), _:
            return _conv(ctx, a, Fst(u)) and _conv(ctx, b, Snd(u))
        case _, Pair(a, b):
            return _conv(ctx, Fst(t), a) and _conv(ctx, Snd(t), b)
        case Suc(a), Suc(b):
            return _conv(ctx, a, b)
        case DFix(r1, x1, ty1, b1), DFix(r2, x2, ty2, b2):
            if not iv_equal_under(rho, r1, r2):
                return False
            if not _conv(ctx, ty1, ty2):
                return False
            z = fresh(x1)
            inner = ctx.bind(z, Later(DSubst(), ty1))
            return _conv(inner, subst_term(b1, x1, Var(z)),
                         subst_term(b2, x2, Var(z)))
        case Var(a), Var(b):
            return a == b
        case App(f1, a1), App(f2, a2):
            return _conv(ctx, f1, f2) and _conv(ctx, a1, a2)
        case Fst(p1), Fst(p2):
            return _conv(ctx, p1, p2)
        case Snd(p1), Snd(p2):
            return _conv(ctx, p1, p2)
        case PApp(f1, r1), PApp(f2, r2):
            return _conv(ctx, f1, f2) and iv_equal_under(rho, r1, r2)
        case NatRec(m1, z1, s1), NatRec(m2, z2, s2):
            return (_conv(ctx, m1, m2) and _conv(ctx, z1, z2)
                    and _conv(ctx, s1, s2))
        case Comp(i1, ty1, sys1, b1), Comp(i2, ty2, sys2, b2):
            k = fresh(i1)
            kctx = ctx.bind_name(k)
            ty1k = subst_interval(ty1, i1, IName(k))
            ty2k = subst_interval(ty2, i2, IName(k))
            if not _conv(kctx, ty1k, ty2k):
                return False
            if not _conv(ctx, b1, b2):
                return False
            return _conv_system(
                ctx, tuple((phi, subst_interval(v, i1, IName(k))) for phi, v in sys1),
                tuple((phi, subst_interval(v, i2, IName(k))) for phi, v in sys2),
                extra_name=k)
        case System(br1), System(br2):
            return _conv_system(ctx, br1, br2)
    return False


def _conv_eta_fun(ctx: Context, x: str, dom: Term | None, body: Term, other: Term) -> bool:
    if dom is None:
        fty = whnf(ctx, type_of(ctx, other))
        if not isinstance(fty, Pi):
            return False
        dom = fty.dom
    z = fresh(x)
    return _conv(ctx.bind(z, dom),
                 subst_term(body, x, Var(z)), App(other, Var(z)))


def _face_sort_key(phi: FaceFormula):
    return tuple(sorted(tuple(sorted(c)) for c in face_dnf(phi).conjs))


def _conv_system(ctx: Context, sys1, sys2, extra_name: str | None = None) -> bool:
    rho = ctx.restriction
    sys1 = sorted(sys1, key=lambda b: _face_sort_key(b[0]))
    sys2 = sorted(sys2, key=lambda b: _face_sort_key(b[0]))
    if len(sys1) != len(sys2):
        return False
    for (p1, u1), (p2, u2) in zip(sys1, sys2):
        if not face_equal(rho, p1, p2):
            return False
        bctx = ctx.restrict(p1)
        if extra_name is not None:
            bctx = bctx.bind_name(extra_name)
        if not convert(bctx, u1, u2):
            return False
    return True


# ---------------------------------------------------------------------------
# Delayed substitutions: canonical form and conversion.

def normalize_dsubst(ctx: Context, ds: DSubst, body: Term,
                     ) -> tuple[DSubst, Term]:
    """Canonical form of a delayed substitution against its body.

    Bindings unused by the body and by the types of later bindings are
    dropped (weakening); a binding whose term reduces to a next-cell over
    the remaining bindings is contracted into the body; the survivors are
    sorted by first use in the body, without reordering bindings whose
    types depend on one another (exchange).
    """
    binds = list(ds.binds)
    while True:
        inner = dsubst_context(ctx, DSubst(tuple(binds)))
        body = whnf(inner, body)
        used = free_names(body)
        tys = [inner.lookup(x) for x, _ in binds]
        changed = False
        for k, (x, _) in enumerate(binds):
            if x in used:
                continue
            if any(x in free_names(tys[j]) for j in range(k + 1, len(binds))):
                continue  # a later binding's type still needs x
            del binds[k]
            changed = True
            break
        if changed:
            continue
        for k, (x, t) in enumerate(binds):
            wt = whnf(ctx, t)
            if isinstance(wt, Next) and not any(
                    x in free_names(tys[j]) for j in range(len(binds)) if j != k):
                rest = binds[:k] + binds[k + 1:]
                mapping = _match_bindings(ctx, wt.dsubst, rest)
                if mapping is not None:
                    inner_body = _rename_binders(wt.body, mapping)
                    body = subst_term(body, x, inner_body)
                    binds = rest
                    changed = True
                    break
            if not alpha_eq(wt, t):
                binds[k] = (x, wt)
                changed = True
                break
        if not changed:
            break
    binds = _sort_independent(binds, tys, body)
    return DSubst(tuple(binds)), body


def _sort_independent(binds, tys, body: Term):
    """Stable order by first use in the body, never moving a binding before
    one that its type depends on."""
    if len(binds) <= 1:
        return binds
    order: dict[str, int] = {}
    _first_uses(body, order, counter=[0])
    n = len(binds)
    deps = [set() for _ in range(n)]
    for j in range(n):
        fv = free_names(tys[j]) if tys[j] is not None else frozenset()
        for k in range(j):
            if binds[k][0] in fv:
                deps[j].add(k)
    out: list = []
    placed: set[int] = set()
    while len(out) < n:
        ready = [k for k in range(n)
                 if k not in placed and deps[k] <= placed]
        k = min(ready, key=lambda k: (order.get(binds[k][0], n + len(order)), k))
        out.append(binds[k])
        placed.add(k)
    return out


def _first_uses(t: Term, order: dict[str, int], counter: list[int]) -> None:
    if isinstance(t, Var):
        if t.name not in order:
            order[t.name] = counter[0]
            counter[0] += 1
        return
    match t:
        case Pi(_, d, c) | Sigma(_, d, c):
            _first_uses(d, order, counter)
            _first_uses(c, order, counter)
        case Lam(_, d, b):
            if d is not None:
                _first_uses(d, order, counter)
            _first_uses(b, order, counter)
        case App(f, a):
            _first_uses(f, order, counter)
            _first_uses(a, order, counter)
        case Pair(a, b):
            _first_uses(a, order, counter)
            _first_uses(b, order, counter)
        case Fst(p) | Snd(p) | Suc(p):
            _first_uses(p, order, counter)
        case NatRec(m, z, s):
            for part in (m, z, s):
                _first_uses(part, order, counter)
        case PathT(a, l, r):
            for part in (a, l, r):
                _first_uses(part, order, counter)
        case PLam(_, b):
            _first_uses(b, order, counter)
        case PApp(f, _):
            _first_uses(f, order, counter)
        case Comp(_, ty, system, base):
            _first_uses(ty, order, counter)
            for _, v in system:
                _first_uses(v, order, counter)
            _first_uses(base, order, counter)
        case System(branches):
            for _, v in branches:
                _first_uses(v, order, counter)
        case Later(ds, b) | Next(ds, b):
            for _, v in ds:
                _first_uses(v, order, counter)
            _first_uses(b, order, counter)
        case DFix(_, _, ty, b):
            _first_uses(ty, order, counter)
            _first_uses(b, order, counter)


def _match_bindings(ctx: Context, inner: DSubst, rest) -> list[tuple[str, str]] | None:
    """Match every binding of `inner` to a distinct binding of `rest` with a
    convertible term; returns the binder renaming, or None if some binding
    has no counterpart."""
    taken: set[int] = set()
    out: list[tuple[str, str]] = []
    for y, s in inner:
        hit = None
        for idx, (px, pt) in enumerate(rest):
            if idx in taken:
                continue
            if _conv(ctx, s, pt):
                hit = (idx, px)
                break
        if hit is None:
            return None
        taken.add(hit[0])
        out.append((y, hit[1]))
    return out


def _rename_binders(body: Term, mapping: list[tuple[str, str]]) -> Term:
    # two passes through fresh intermediates so swaps do not collide
    temps = [(old, fresh(old)) for old, _ in mapping]
    for old, tmp in temps:
        body = subst_term(body, old, Var(tmp))
    for (old, new), (_, tmp) in zip(mapping, temps):
        body = subst_term(body, tmp, Var(new))
    return body


def _conv_dsubst(ctx: Context, t, u) -> bool:
    is_next = isinstance(t, Next)
    ds1, b1 = normalize_dsubst(ctx, t.dsubst, t.body)
    ds2, b2 = normalize_dsubst(ctx, u.dsubst, u.body)
    if is_next:
        e1 = _eta_view(ctx, ds1, b1)
        e2 = _eta_view(ctx, ds2, b2)
        if e1 is not None or e2 is not None:
            t2 = e1 if e1 is not None else Next(ds1, b1)
            u2 = e2 if e2 is not None else Next(ds2, b2)
            return _conv(ctx, t2, u2)
    if len(ds1) != len(ds2):
        return False
    mapping = _match_bindings(ctx, ds2, list(ds1.binds))
    if mapping is None:
        return False
    b2r = _rename_binders(b2, mapping)
    inner = dsubst_context(ctx, ds1)
    return _conv(inner, b1, b2r)


def _eta_view(ctx: Context, ds: DSubst, body: Term) -> Term | None:
    """next [.., y <- s, ..] y  is  s, provided every binding after y has a
    type that does not depend on y (so y exchanges to the last position)."""
    if not isinstance(body, Var) or body.name not in ds.binders:
        return None
    k = ds.binders.index(body.name)
    inner = dsubst_context(ctx, ds)
    for j in range(k + 1, len(ds)):
        ty = inner.lookup(ds.binders[j])
        if ty is not None and body.name in free_names(ty):
            return None
    return ds.binds[k][1]


# ---------------------------------------------------------------------------
# Well-scopedness of interval and face arguments.

def validate_interval(ctx: Context, r: IntervalExpr) -> None:
    for n in iv_names(r):
        if not ctx.has_interval(n):
            raise _err(E.UNBOUND_VARIABLE, f"interval name {n} is not in scope")


def validate_face(ctx: Context, phi: FaceFormula) -> None:
    for n in face_names(phi):
        if not ctx.has_interval(n):
            raise _err(E.UNBOUND_VARIABLE, f"interval name {n} is not in scope")


# ---------------------------------------------------------------------------
# Bidirectional rules.

def infer(ctx: Context, t: Term) -> tuple[Term, Term]:
    """Infer the principal type; returns (type, elaborated term)."""
    match t:
        case Var(x):
            ty = ctx.lookup(x)
            if ty is None:
                raise _err(E.UNBOUND_VARIABLE, f"variable {x} is not in scope")
            result = (ty, t)
        case Univ():
            raise _err(E.UNIVERSE_EXPECTED, "the universe is not an element of itself")
        case Nat():
            result = (Univ(), t)
        case Zero():
            result = (Nat(), t)
        case Suc(m):
            result = (Nat(), Suc(check(ctx, m, Nat())))
        case NatRec(motive, zcase, scase):
            n = fresh("n")
            motive2 = check(ctx, motive, Pi(n, Nat(), Univ()))
            zcase2 = check(ctx, zcase, App(motive2, Zero()))
            k = fresh("k")
            sty = Pi(k, Nat(),
                     Pi(fresh("h"), App(motive2, Var(k)),
                        App(motive2, Suc(Var(k)))))
            scase2 = check(ctx, scase, sty)
            result = (Pi(n, Nat(), App(motive2, Var(n))),
                      NatRec(motive2, zcase2, scase2))
        case Pi(x, dom, cod):
            dom2 = check(ctx, dom, Univ())
            cod2 = check(ctx.bind(x, dom2), cod, Univ())
            result = (Univ(), Pi(x, dom2, cod2))
        case Sigma(x, dom, cod):
            dom2 = check(ctx, dom, Univ())
            cod2 = check(ctx.bind(x, dom2), cod, Univ())
            result = (Univ(), Sigma(x, dom2, cod2))
        case PathT(a, l, r):
            a2 = check(ctx, a, Univ())
            l2 = check(ctx, l, a2)
            r2 = check(ctx, r, a2)
            result = (Univ(), PathT(a2, l2, r2))
        case Lam(x, dom, body):
            if dom is None:
                raise _err(E.CANNOT_INFER,
                           "cannot infer the type of an unannotated lambda")
            dom2 = check_type(ctx, dom)
            bty, body2 = infer(ctx.bind(x, dom2), body)
            result = (Pi(x, dom2, bty), Lam(x, dom2, body2))
        case App(f, a):
            fty, f2 = infer(ctx, f)
            wfty = whnf(ctx, fty)
            if not isinstance(wfty, Pi):
                raise _err(E.NOT_A_FUNCTION,
                           "application head is not a function",
                           actual=repr(wfty))
            a2 = check(ctx, a, wfty.dom)
            result = (subst_term(wfty.cod, wfty.binder, a2), App(f2, a2))
        case Pair(_, _):
            raise _err(E.CANNOT_INFER,
                       "pairs are checked against a pair type, not inferred")
        case Fst(p):
            pty, p2 = infer(ctx, p)
            wpty = whnf(ctx, pty)
            if not isinstance(wpty, Sigma):
                raise _err(E.NOT_A_PAIR, "projection from a non-pair",
                           actual=repr(wpty))
            result = (wpty.dom, Fst(p2))
        case Snd(p):
            pty, p2 = infer(ctx, p)
            wpty = whnf(ctx, pty)
            if not isinstance(wpty, Sigma):
                raise _err(E.NOT_A_PAIR, "projection from a non-pair",
                           actual=repr(wpty))
            result = (subst_term(wpty.cod, wpty.binder, Fst(p2)), Snd(p2))
        case PLam(i, body):
            bty, body2 = infer(ctx.bind_name(i), body)
            if i in free_names(bty):
                raise _err(E.NOT_A_PATH,
                           "the type of a path abstraction body may not "
                           f"depend on the bound name {i}")
            result = (PathT(bty, subst_interval(body2, i, I0),
                            subst_interval(body2, i, I1)),
                      PLam(i, body2))
        case PApp(f, r):
            validate_interval(ctx, r)
            fty, f2 = infer(ctx, f)
            wfty = whnf(ctx, fty)
            if not isinstance(wfty, PathT):
                raise _err(E.NOT_A_PATH, "path application head is not a path",
                           actual=repr(wfty))
            result = (wfty.ty, PApp(f2, r))
        case Comp(i, ty, system, base):
            result = _infer_comp(ctx, i, ty, system, base)
        case System(_):
            raise _err(E.CANNOT_INFER,
                       "a bare system is checked against a type, not inferred")
        case Later(ds, body):
            ds2, inner = check_dsubst(ctx, ds)
            body2 = check(inner, body, Univ())
            result = (Univ(), Later(ds2, body2))
        case Next(ds, body):
            ds2, inner = check_dsubst(ctx, ds)
            bty, body2 = infer(inner, body)
            result = (Later(ds2, bty), Next(ds2, body2))
        case DFix(r, x, ty, body):
            validate_interval(ctx, r)
            ty2 = check_type(ctx, ty)
            body2 = check(ctx.bind(x, Later(DSubst(), ty2)), body, ty2)
            result = (Later(DSubst(), ty2), DFix(r, x, ty2, body2))
        case _:
            raise IllTyped(f"not a term: {t!r}")
    if SAMPLE_HOOK is not None:
        SAMPLE_HOOK(ctx, result[1], result[0])
    return result


def _infer_comp(ctx: Context, i: str, ty: Term, system, base: Term):
    for phi, _ in system:
        validate_face(ctx, phi)
    ictx = ctx.bind_name(i)
    ty2 = check_type(ictx, ty)
    branches = []
    for phi, u in system:
        u2 = check(ctx.restrict(phi).bind_name(i), u, ty2)
        branches.append((phi, u2))
    for a in range(len(branches)):
        for b in range(a + 1, len(branches)):
            pa, ua = branches[a]
            pb, ub = branches[b]
            octx = ctx.restrict(FAnd(pa, pb)).bind_name(i)
            if not convert(octx, ua, ub, ty2):
                raise _err(E.SYSTEM_INCOMPATIBLE,
                           "system components disagree where faces overlap",
                           expected=repr(ua), actual=repr(ub))
    ty0 = subst_interval(ty2, i, I0)
    base2 = check(ctx, base, ty0)
    for phi, u in branches:
        bctx = ctx.restrict(phi)
        if not convert(bctx, base2, subst_interval(u, i, I0), ty0):
            raise _err(E.CONVERSION_FAILURE,
                       "composition base disagrees with a system component "
                       "at the start of the direction",
                       expected=repr(subst_interval(u, i, I0)),
                       actual=repr(base2))
    branches_sorted = tuple(sorted(branches, key=lambda b: _face_sort_key(b[0])))
    return (subst_interval(ty2, i, I1), Comp(i, ty2, branches_sorted, base2))


def check_system(ctx: Context, ty: Term, branches) -> Term:
    """Check a bare system against a type: coverage under the ambient
    restriction, each component under its face, and pairwise agreement."""
    join: FaceFormula = F0
    for phi, _ in branches:
        validate_face(ctx, phi)
        join = phi if join == F0 else FOr(join, phi)
    if not face_equal(ctx.restriction, join, F1):
        raise _err(E.FACE_NOT_COVERED,
                   "system faces do not cover the current restriction",
                   actual=repr(join))
    checked = []
    for phi, u in branches:
        checked.append((phi, check(ctx.restrict(phi), u, ty)))
    for a in range(len(checked)):
        for b in range(a + 1, len(checked)):
            pa, ua = checked[a]
            pb, ub = checked[b]
            if not convert(ctx.restrict(FAnd(pa, pb)), ua, ub, ty):
                raise _err(E.SYSTEM_INCOMPATIBLE,
                           "system components disagree where faces overlap",
                           expected=repr(ua), actual=repr(ub))
    return System(tuple(sorted(checked, key=lambda b: _face_sort_key(b[0]))))


def check_dsubst(ctx: Context, ds: DSubst) -> tuple[DSubst, Context]:
    """Verify a delayed substitution binding by binding.

    Each term must have a later-type whose own delayed substitution embeds
    into the bindings already passed, up to conversion of the bound terms;
    the body type is renamed onto the established binders.
    """
    inner = ctx
    prefix: list[tuple[str, Term]] = []
    out: list[tuple[str, Term]] = []
    for x, t in ds:
        tty, t2 = infer(ctx, t)
        wtty = whnf(ctx, tty)
        if not isinstance(wtty, Later):
            raise _err(E.DELAYED_SUBST_MISMATCH,
                       f"delayed-substitution binding {x} needs a later-typed "
                       "term", actual=repr(wtty))
        nds, nbody = normalize_dsubst(ctx, wtty.dsubst, wtty.body)
        mapping = _match_bindings(ctx, nds, prefix)
        if mapping is None:
            raise _err(E.DELAYED_SUBST_MISMATCH,
                       f"the delayed substitution of the type of binding {x} "
                       "does not embed into the preceding bindings",
                       actual=repr(nds))
        body_ty = _rename_binders(nbody, mapping)
        inner = inner.bind(x, body_ty)
        prefix.append((x, t2))
        out.append((x, t2))
    return DSubst(tuple(out)), inner


def check(ctx: Context, t: Term, ty: Term) -> Term:
    """Check t against ty; returns the elaborated term."""
    wty = whnf(ctx, ty)
    match t:
        case Lam(x, dom, body):
            if not isinstance(wty, Pi):
                raise _err(E.NOT_A_FUNCTION,
                           "lambda checked against a non-function type",
                           expected=repr(wty))
            if dom is not None:
                dom2 = check_type(ctx, dom)
                if not convert(ctx, dom2, wty.dom):
                    raise _err(E.CONVERSION_FAILURE,
                               "lambda annotation disagrees with the expected "
                               "domain", expected=repr(wty.dom), actual=repr(dom2))
            else:
                dom2 = wty.dom
            body2 = check(ctx.bind(x, dom2), body,
                          subst_term(wty.cod, wty.binder, Var(x)))
            return Lam(x, dom2, body2)
        case Pair(a, b):
            if not isinstance(wty, Sigma):
                raise _err(E.NOT_A_PAIR,
                           "pair checked against a non-pair type",
                           expected=repr(wty))
            a2 = check(ctx, a, wty.dom)
            b2 = check(ctx, b, subst_term(wty.cod, wty.binder, a2))
            return Pair(a2, b2)
        case PLam(i, body):
            if not isinstance(wty, PathT):
                raise _err(E.NOT_A_PATH,
                           "path abstraction checked against a non-path type",
                           expected=repr(wty))
            body2 = check(ctx.bind_name(i), body, wty.ty)
            at0 = subst_interval(body2, i, I0)
            if not convert(ctx, at0, wty.left, wty.ty):
                raise _err(E.ENDPOINT_MISMATCH,
                           "path abstraction has the wrong start point",
                           expected=repr(wty.left), actual=repr(whnf(ctx, at0)))
            at1 = subst_interval(body2, i, I1)
            if not convert(ctx, at1, wty.right, wty.ty):
                raise _err(E.ENDPOINT_MISMATCH,
                           "path abstraction has the wrong end point",
                           expected=repr(wty.right), actual=repr(whnf(ctx, at1)))
            return PLam(i, body2)
        case System(branches):
            return check_system(ctx, wty, branches)
        case _:
            ity, t2 = infer(ctx, t)
            if not convert(ctx, ity, wty):
                raise _err(E.CONVERSION_FAILURE,
                           "inferred type does not convert with the expected "
                           "type",
                           expected=repr(whnf(ctx, wty)),
                           actual=repr(whnf(ctx, ity)),
                           context=repr(ctx))
            return t2


def check_type(ctx: Context, t: Term) -> Term:
    """The is-a-type judgement: the universe and its closure under the type
    formers, plus every element of the universe."""
    match t:
        case Univ() | Nat():
            return t
        case Pi(x, dom, cod):
            dom2 = check_type(ctx, dom)
            return Pi(x, dom2, check_type(ctx.bind(x, dom2), cod))
        case Sigma(x, dom, cod):
            dom2 = check_type(ctx, dom)
            return Sigma(x, dom2, check_type(ctx.bind(x, dom2), cod))
        case PathT(a, l, r):
            a2 = check_type(ctx, a)
            return PathT(a2, check(ctx, l, a2), check(ctx, r, a2))
        case Later(ds, body):
            ds2, inner = check_dsubst(ctx, ds)
            return Later(ds2, check_type(inner, body))
        case _:
            return check(ctx, t, Univ())


# ---------------------------------------------------------------------------
# Declarations.

@dataclass
class CheckedDef:
    name: str
    ty: Term
    body: Term


class Definitions:
    """Append-only environment of checked top-level declarations.  Bodies
    are closed, so resolution is plain substitution."""

    def __init__(self) -> None:
        self.defs: dict[str, CheckedDef] = {}
        self.order: list[str] = []

    def resolve(self, t: Term) -> Term:
        for name in sorted(free_names(t) & self.defs.keys()):
            t = subst_term(t, name, self.defs[name].body)
        return t

    def resolve_type(self, t: Term) -> Term:
        return self.resolve(t)

    def add(self, name: str, ty: Term, body: Term) -> None:
        if name in self.defs:
            raise _err(E.CONVERSION_FAILURE, f"duplicate declaration {name}")
        self.defs[name] = CheckedDef(name, ty, body)
        self.order.append(name)

    def __contains__(self, name: str) -> bool:
        return name in self.defs

    def __getitem__(self, name: str) -> CheckedDef:
        return self.defs[name]


def check_declaration(defs: Definitions, name: str, ty: Term, body: Term) -> CheckedDef:
    ctx = Context()
    rty = defs.resolve(ty)
    rbody = defs.resolve(body)
    ty2 = check_type(ctx, rty)
    body2 = check(ctx, rbody, ty2)
    defs.add(name, ty2, body2)
    return defs[name]
