"""Weak-head normalization.

`whnf` reduces until the head is canonical or a stuck neutral: beta rules
for every eliminator, typed endpoint laws for paths, branch selection for
systems, composition computed per type former, and unfolding of delayed
fixed points when the ambient restriction forces the annotation to 1.

A value is a term in weak-head normal form; no separate data type is
introduced since the constructors coincide.
"""
from __future__ import annotations

from .cofib import (face_entails, face_equal, iv_equal_under)
from .errors import IllTyped
from .syntax import (Context, DFix, DSubst, F0, FEq, FaceFormula, Fst, I0, I1,
                     IJoin, IMeet, IName, INeg, IntervalExpr, App, Comp, Lam,
                     Later, Nat, NatRec, Next, Pair, PApp, PathT, Pi, PLam,
                     Sigma, Snd, Suc, System, Term, Univ, Var, Zero, fresh,
                     free_names, subst_interval, subst_term)

Value = Term  # weak-head normal form; see module docstring


# ---------------------------------------------------------------------------
# Type synthesis for terms already known well-typed (no re-verification).
# Used to recover path endpoints for neutral heads and the types bound by
# delayed substitutions.

def type_of(ctx: Context, t: Term) -> Term:
    match t:
        case Var(x):
            ty = ctx.lookup(x)
            if ty is None:
                raise IllTyped(f"variable {x} has no type in scope")
            return ty
        case App(f, a):
            fty = whnf(ctx, type_of(ctx, f))
            if not isinstance(fty, Pi):
                raise IllTyped(f"application head is not a function: {fty!r}")
            return subst_term(fty.cod, fty.binder, a)
        case Fst(p):
            pty = whnf(ctx, type_of(ctx, p))
            if not isinstance(pty, Sigma):
                raise IllTyped(f"projection from a non-pair type: {pty!r}")
            return pty.dom
        case Snd(p):
            pty = whnf(ctx, type_of(ctx, p))
            if not isinstance(pty, Sigma):
                raise IllTyped(f"projection from a non-pair type: {pty!r}")
            return subst_term(pty.cod, pty.binder, Fst(p))
        case PApp(f, _):
            fty = whnf(ctx, type_of(ctx, f))
            if not isinstance(fty, PathT):
                raise IllTyped(f"path application head is not a path: {fty!r}")
            return fty.ty
        case Comp(i, ty, _, _):
            return subst_interval(ty, i, I1)
        case DFix(_, _, ty, _):
            return Later(DSubst(), ty)
        case Next(ds, body):
            inner = dsubst_context(ctx, ds)
            return Later(ds, type_of(inner, body))
        case Lam(x, dom, body):
            if dom is None:
                raise IllTyped("cannot synthesize the type of an unannotated lambda")
            return Pi(x, dom, type_of(ctx.bind(x, dom), body))
        case PLam(i, body):
            bty = type_of(ctx.bind_name(i), body)
            return PathT(bty, subst_interval(body, i, I0), subst_interval(body, i, I1))
        case NatRec(motive, _, _):
            n = fresh("n")
            return Pi(n, Nat(), App(motive, Var(n)))
        case Zero() | Suc(_):
            return Nat()
        case Nat() | Pi(_, _, _) | Sigma(_, _, _) | PathT(_, _, _) | Later(_, _):
            return Univ()
    raise IllTyped(f"cannot synthesize a type for {t!r}")


def dsubst_context(ctx: Context, ds: DSubst) -> Context:
    """Extend a context with the variables bound by a delayed substitution.

    Each binding term has a later-type whose own delayed substitution must
    match the preceding bindings; its binders are renamed onto theirs so the
    body type lands in the extended scope.
    """
    from .syntax import alpha_eq

    inner = ctx
    prefix: list[tuple[str, Term]] = []
    for x, t in ds:
        tty = whnf(ctx, type_of(ctx, t))
        if not isinstance(tty, Later):
            raise IllTyped(f"delayed-substitution binding {x} has non-later type {tty!r}")
        body_ty = tty.body
        taken: set[int] = set()
        for y, s in tty.dsubst:
            hit = None
            for k, (px, pt) in enumerate(prefix):
                if k in taken:
                    continue
                if alpha_eq(pt, s):
                    hit = (k, px)
                    break
            if hit is None:
                # unmatched binder: keep it fresh; precise matching (up to
                # conversion) is re-done by the checker
                body_ty = subst_term(body_ty, y, Var(fresh(y)))
            else:
                taken.add(hit[0])
                if hit[1] != y:
                    body_ty = subst_term(body_ty, y, Var(hit[1]))
        inner = inner.bind(x, body_ty)
        prefix.append((x, t))
    return inner


# ---------------------------------------------------------------------------
# Weak-head normalization.

def whnf(ctx: Context, t: Term) -> Value:
    while True:
        match t:
            case App(f, a):
                wf = whnf(ctx, f)
                match wf:
                    case Lam(x, _, body):
                        t = subst_term(body, x, a)
                        continue
                    case NatRec(_, zcase, scase):
                        wa = whnf(ctx, a)
                        match wa:
                            case Zero():
                                t = zcase
                                continue
                            case Suc(m):
                                t = App(App(scase, m), App(wf, m))
                                continue
                        return App(wf, wa)
                return App(wf, a)
            case Fst(p):
                wp = whnf(ctx, p)
                if isinstance(wp, Pair):
                    t = wp.fst
                    continue
                return Fst(wp)
            case Snd(p):
                wp = whnf(ctx, p)
                if isinstance(wp, Pair):
                    t = wp.snd
                    continue
                return Snd(wp)
            case PApp(f, r):
                wf = whnf(ctx, f)
                if isinstance(wf, PLam):
                    t = subst_interval(wf.body, wf.binder, r)
                    continue
                rho = ctx.restriction
                endpoint = None
                if iv_equal_under(rho, r, I0):
                    endpoint = 0
                elif iv_equal_under(rho, r, I1):
                    endpoint = 1
                if endpoint is not None:
                    fty = whnf(ctx, type_of(ctx, wf))
                    if not isinstance(fty, PathT):
                        raise IllTyped(f"endpoint law on non-path {wf!r} : {fty!r}")
                    t = fty.left if endpoint == 0 else fty.right
                    continue
                return PApp(wf, r)
            case Comp(i, ty, system, base):
                return eval_comp(ctx, i, ty, system, base)
            case System(branches):
                sel = select_system(ctx, branches)
                if sel is not None:
                    t = sel
                    continue
                pruned = _prune_system(ctx, branches)
                return System(pruned)
            case DFix(r, x, ty, body):
                if iv_equal_under(ctx.restriction, r, I1):
                    t = Next(DSubst(), subst_term(body, x, DFix(I0, x, ty, body)))
                    continue
                return t
            case Next(ds, body):
                # eta: a single binding returned unchanged is the term itself.
                # General weakening is type-dependent and left to conversion.
                if len(ds) == 1 and body == Var(ds.binds[0][0]):
                    t = ds.binds[0][1]
                    continue
                return t
            case _:
                return t


def select_system(ctx: Context, branches) -> Term | None:
    """The first branch whose face the ambient restriction entails."""
    rho = ctx.restriction
    for phi, u in branches:
        if face_entails(rho, phi):
            return u
    return None


def _prune_system(ctx: Context, branches):
    rho = ctx.restriction
    return tuple((phi, u) for phi, u in branches if not face_equal(rho, phi, F0))


# ---------------------------------------------------------------------------
# Composition.

def fill(i: str, ty: Term, system, base: Term) -> Term:
    """The filler of a composition: a line in `i` from `base` at 0 to the
    composite at 1, agreeing with the system throughout."""
    j = fresh("j")
    shrink = IMeet(IName(i), IName(j))
    branches = tuple((phi, subst_interval(u, i, shrink)) for phi, u in system)
    branches += ((FEq(i, 0), base),)
    return Comp(j, subst_interval(ty, i, shrink), branches, base)


def transfill_neg(i: str, ty: Term, goal: Term) -> Term:
    """A line `w` in `i` with w at 1 judgementally `goal` and w at 0 the
    backward transport of `goal` along `ty`."""
    j = fresh("j")
    widen = IJoin(IName(i), INeg(IName(j)))
    return Comp(j, subst_interval(ty, i, widen), ((FEq(i, 1), goal),), goal)


def eval_comp(ctx: Context, i: str, ty: Term, system, base: Term) -> Value:
    rho = ctx.restriction
    system = tuple((phi, u) for phi, u in system if not face_equal(rho, phi, F0))
    for phi, u in system:
        if face_entails(rho, phi):
            return whnf(ctx, subst_interval(u, i, I1))

    wty = whnf(ctx.bind_name(i), ty)
    match wty:
        case Pi(x, dom, cod):
            y = fresh("y")
            w = transfill_neg(i, dom, Var(y))
            w0 = subst_interval(w, i, I0)
            inner_sys = tuple((phi, App(u, w)) for phi, u in system)
            inner = Comp(i, subst_term(cod, x, w), inner_sys, App(base, w0))
            return Lam(y, subst_interval(dom, i, I1), inner)
        case Sigma(x, dom, cod):
            fst_sys = tuple((phi, Fst(u)) for phi, u in system)
            snd_sys = tuple((phi, Snd(u)) for phi, u in system)
            c1 = Comp(i, dom, fst_sys, Fst(base))
            line = fill(i, dom, fst_sys, Fst(base))
            c2 = Comp(i, subst_term(cod, x, line), snd_sys, Snd(base))
            return Pair(c1, c2)
        case PathT(pty, left, right):
            j = fresh("j")
            ext = tuple((phi, PApp(u, IName(j))) for phi, u in system)
            ext += ((FEq(j, 0), left), (FEq(j, 1), right))
            return PLam(j, Comp(i, pty, ext, PApp(base, IName(j))))
        case Nat():
            return _comp_nat(ctx, i, system, base)
        case _:
            # the universe, later-types, and neutral types have no
            # composition equations: the term is a stuck neutral
            return Comp(i, wty, system, base)


def _comp_nat(ctx: Context, i: str, system, base: Term) -> Value:
    wbase = whnf(ctx, base)
    match wbase:
        case Zero():
            for phi, u in system:
                wu = whnf(ctx.restrict(phi).bind_name(i), u)
                if not isinstance(wu, Zero):
                    return Comp(i, Nat(), system, wbase)
            return Zero()
        case Suc(m):
            preds = []
            for phi, u in system:
                wu = whnf(ctx.restrict(phi).bind_name(i), u)
                if not isinstance(wu, Suc):
                    return Comp(i, Nat(), system, wbase)
                preds.append((phi, wu.arg))
            return Suc(Comp(i, Nat(), tuple(preds), m))
        case _:
            return Comp(i, Nat(), system, wbase)


# ---------------------------------------------------------------------------
# The canonical unfold path and deep normalization.

def unfold_path(x: str, ty: Term, body: Term) -> Term:
    """The path from a fixed point to its one-step unfolding: a fresh name
    is placed in the unfolding-control position of every delayed fixed
    point substituted for `x`."""
    i = fresh("i")
    return PLam(i, subst_term(body, x, DFix(IName(i), x, ty, body)))


def normalize(ctx: Context, t: Term) -> Term:
    """Deep readback: weak-head normalize, then recurse into subterms."""
    t = whnf(ctx, t)
    match t:
        case Var(_) | Nat() | Zero() | Univ():
            return t
        case Pi(x, dom, cod):
            return Pi(x, normalize(ctx, dom), normalize(ctx.bind(x, dom), cod))
        case Sigma(x, dom, cod):
            return Sigma(x, normalize(ctx, dom), normalize(ctx.bind(x, dom), cod))
        case Lam(x, dom, body):
            if dom is None:
                raise IllTyped("normalize met an unannotated lambda")
            return Lam(x, normalize(ctx, dom), normalize(ctx.bind(x, dom), body))
        case App(f, a):
            return App(normalize(ctx, f), normalize(ctx, a))
        case Pair(a, b):
            return Pair(normalize(ctx, a), normalize(ctx, b))
        case Fst(p):
            return Fst(normalize(ctx, p))
        case Snd(p):
            return Snd(normalize(ctx, p))
        case Suc(m):
            return Suc(normalize(ctx, m))
        case NatRec(m, z, s):
            return NatRec(normalize(ctx, m), normalize(ctx, z), normalize(ctx, s))
        case PathT(ty, l, r):
            return PathT(normalize(ctx, ty), normalize(ctx, l), normalize(ctx, r))
        case PLam(i, body):
            return PLam(i, normalize(ctx.bind_name(i), body))
        case PApp(f, r):
            return PApp(normalize(ctx, f), r)
        case Comp(i, ty, system, base):
            ictx = ctx.bind_name(i)
            sys = tuple((phi, normalize(ictx.restrict(phi), u)) for phi, u in system)
            return Comp(i, normalize(ictx, ty), sys, normalize(ctx, base))
        case System(branches):
            sys = tuple((phi, normalize(ctx.restrict(phi), u)) for phi, u in branches)
            return System(sys)
        case Later(ds, body):
            inner = dsubst_context(ctx, ds)
            binds = tuple((x, normalize(ctx, u)) for x, u in ds)
            return Later(DSubst(binds), normalize(inner, body))
        case Next(ds, body):
            inner = dsubst_context(ctx, ds)
            binds = tuple((x, normalize(ctx, u)) for x, u in ds)
            return Next(DSubst(binds), normalize(inner, body))
        case DFix(r, x, ty, body):
            nty = normalize(ctx, ty)
            inner = ctx.bind(x, Later(DSubst(), ty))
            return DFix(r, x, nty, normalize(inner, body))
    raise IllTyped(f"not a term: {t!r}")
