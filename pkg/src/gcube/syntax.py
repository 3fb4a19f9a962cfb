"""Abstract syntax: terms, interval elements, face formulas, contexts.

Terms are immutable trees with named binders.  Alpha-equivalence is decided
explicitly (`alpha_eq`); substitution freshens binders on demand, so terms
never capture.  Interval names and term variables share one identifier
space but occur in disjoint syntactic positions.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import IllTyped

_fresh_counter = itertools.count(1)


def fresh(base: str = "x") -> str:
    """A globally fresh identifier.  `base` is kept for readable printing."""
    return f"{base.split('!')[0]}!{next(_fresh_counter)}"


def base_name(x: str) -> str:
    return x.split("!")[0]


# ---------------------------------------------------------------------------
# Interval elements: the free De Morgan algebra on names.

class IntervalExpr:
    __slots__ = ()


@dataclass(frozen=True)
class IZero(IntervalExpr):
    def __repr__(self) -> str:
        return "0"


@dataclass(frozen=True)
class IOne(IntervalExpr):
    def __repr__(self) -> str:
        return "1"


@dataclass(frozen=True)
class IName(IntervalExpr):
    name: str

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True)
class INeg(IntervalExpr):
    arg: IntervalExpr

    def __repr__(self) -> str:
        return f"-{self.arg!r}"


@dataclass(frozen=True)
class IMeet(IntervalExpr):
    left: IntervalExpr
    right: IntervalExpr

    def __repr__(self) -> str:
        return f"({self.left!r} /\\ {self.right!r})"


@dataclass(frozen=True)
class IJoin(IntervalExpr):
    left: IntervalExpr
    right: IntervalExpr

    def __repr__(self) -> str:
        return f"({self.left!r} \\/ {self.right!r})"


I0 = IZero()
I1 = IOne()


def iv_names(r: IntervalExpr) -> frozenset[str]:
    match r:
        case IZero() | IOne():
            return frozenset()
        case IName(n):
            return frozenset((n,))
        case INeg(a):
            return iv_names(a)
        case IMeet(a, b) | IJoin(a, b):
            return iv_names(a) | iv_names(b)
    raise IllTyped(f"not an interval expression: {r!r}")


def iv_subst(r: IntervalExpr, i: str, s: IntervalExpr) -> IntervalExpr:
    """Replace the name `i` by the interval element `s` inside `r`."""
    match r:
        case IZero() | IOne():
            return r
        case IName(n):
            return s if n == i else r
        case INeg(a):
            return INeg(iv_subst(a, i, s))
        case IMeet(a, b):
            return IMeet(iv_subst(a, i, s), iv_subst(b, i, s))
        case IJoin(a, b):
            return IJoin(iv_subst(a, i, s), iv_subst(b, i, s))
    raise IllTyped(f"not an interval expression: {r!r}")


# ---------------------------------------------------------------------------
# Face formulas: the free distributive lattice on (i=0), (i=1) atoms,
# quotiented so (i=0) /\ (i=1) collapses to the bottom face.

class FaceFormula:
    __slots__ = ()


@dataclass(frozen=True)
class FBot(FaceFormula):
    def __repr__(self) -> str:
        return "0F"


@dataclass(frozen=True)
class FTop(FaceFormula):
    def __repr__(self) -> str:
        return "1F"


@dataclass(frozen=True)
class FEq(FaceFormula):
    name: str
    value: int  # 0 or 1

    def __repr__(self) -> str:
        return f"({self.name}={self.value})"


@dataclass(frozen=True)
class FAnd(FaceFormula):
    left: FaceFormula
    right: FaceFormula

    def __repr__(self) -> str:
        return f"({self.left!r} /\\ {self.right!r})"


@dataclass(frozen=True)
class FOr(FaceFormula):
    left: FaceFormula
    right: FaceFormula

    def __repr__(self) -> str:
        return f"({self.left!r} \\/ {self.right!r})"


F0 = FBot()
F1 = FTop()


def face_names(phi: FaceFormula) -> frozenset[str]:
    match phi:
        case FBot() | FTop():
            return frozenset()
        case FEq(n, _):
            return frozenset((n,))
        case FAnd(a, b) | FOr(a, b):
            return face_names(a) | face_names(b)
    raise IllTyped(f"not a face formula: {phi!r}")


# ---------------------------------------------------------------------------
# Terms.

class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    name: str

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Pi(Term):
    binder: str
    dom: Term
    cod: Term

    def __repr__(self) -> str:
        return f"(({self.binder} : {self.dom!r}) -> {self.cod!r})"


@dataclass(frozen=True)
class Lam(Term):
    binder: str
    dom: Term | None  # optional annotation; filled in by elaboration
    body: Term

    def __repr__(self) -> str:
        ann = f" : {self.dom!r}" if self.dom is not None else ""
        return f"(\\{self.binder}{ann} -> {self.body!r})"


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term

    def __repr__(self) -> str:
        return f"({self.fn!r} {self.arg!r})"


@dataclass(frozen=True)
class Sigma(Term):
    binder: str
    dom: Term
    cod: Term

    def __repr__(self) -> str:
        return f"(({self.binder} : {self.dom!r}) * {self.cod!r})"


@dataclass(frozen=True)
class Pair(Term):
    fst: Term
    snd: Term

    def __repr__(self) -> str:
        return f"({self.fst!r}, {self.snd!r})"


@dataclass(frozen=True)
class Fst(Term):
    pair: Term

    def __repr__(self) -> str:
        return f"{self.pair!r}.1"


@dataclass(frozen=True)
class Snd(Term):
    pair: Term

    def __repr__(self) -> str:
        return f"{self.pair!r}.2"


@dataclass(frozen=True)
class Nat(Term):
    def __repr__(self) -> str:
        return "N"


@dataclass(frozen=True)
class Zero(Term):
    def __repr__(self) -> str:
        return "zero"


@dataclass(frozen=True)
class Suc(Term):
    arg: Term

    def __repr__(self) -> str:
        return f"(suc {self.arg!r})"


@dataclass(frozen=True)
class NatRec(Term):
    """Dependent eliminator head: applying it to a numeral iota-reduces."""

    motive: Term
    zcase: Term
    scase: Term

    def __repr__(self) -> str:
        return f"(natrec {self.motive!r} {self.zcase!r} {self.scase!r})"


@dataclass(frozen=True)
class Univ(Term):
    def __repr__(self) -> str:
        return "U"


@dataclass(frozen=True)
class PathT(Term):
    ty: Term
    left: Term
    right: Term

    def __repr__(self) -> str:
        return f"(Path {self.ty!r} {self.left!r} {self.right!r})"


@dataclass(frozen=True)
class PLam(Term):
    binder: str  # interval name
    body: Term

    def __repr__(self) -> str:
        return f"(<{self.binder}> {self.body!r})"


@dataclass(frozen=True)
class PApp(Term):
    fn: Term
    arg: IntervalExpr

    def __repr__(self) -> str:
        return f"({self.fn!r} @ {self.arg!r})"


@dataclass(frozen=True)
class Comp(Term):
    """comp^i A [phi_1 -> u_1, ...] a0; `binder` scopes over `ty` and the
    system branches but not over `base`."""

    binder: str
    ty: Term
    system: tuple[tuple[FaceFormula, Term], ...]
    base: Term

    def __repr__(self) -> str:
        sys = ", ".join(f"{phi!r} -> {u!r}" for phi, u in self.system)
        return f"(comp^{self.binder} {self.ty!r} [{sys}] {self.base!r})"


@dataclass(frozen=True)
class System(Term):
    branches: tuple[tuple[FaceFormula, Term], ...]

    def __repr__(self) -> str:
        inner = ", ".join(f"{phi!r} -> {u!r}" for phi, u in self.branches)
        return f"[{inner}]"


@dataclass(frozen=True)
class DSubst:
    """Ordered delayed-substitution bindings [x1 <- t1, ..., xn <- tn].

    Binding terms live in the ambient context; the bound variables scope
    only over the body of the enclosing later/next node.
    """

    binds: tuple[tuple[str, Term], ...] = ()

    def __post_init__(self) -> None:
        names = [x for x, _ in self.binds]
        if len(set(names)) != len(names):
            raise IllTyped(f"duplicate delayed-substitution binders {names}")

    def __iter__(self):
        return iter(self.binds)

    def __len__(self) -> int:
        return len(self.binds)

    def __repr__(self) -> str:
        return "[" + ", ".join(f"{x} <- {t!r}" for x, t in self.binds) + "]"

    @property
    def binders(self) -> tuple[str, ...]:
        return tuple(x for x, _ in self.binds)


@dataclass(frozen=True)
class Later(Term):
    dsubst: DSubst
    body: Term

    def __repr__(self) -> str:
        return f"(|>{self.dsubst!r} {self.body!r})"


@dataclass(frozen=True)
class Next(Term):
    dsubst: DSubst
    body: Term

    def __repr__(self) -> str:
        return f"(next{self.dsubst!r} {self.body!r})"


@dataclass(frozen=True)
class DFix(Term):
    """dfix^r (x : ty) . body — the delayed fixed point; `ty` is the type of
    the body, so the node infers to a later-type without unification."""

    dir: IntervalExpr
    binder: str
    ty: Term
    body: Term

    def __repr__(self) -> str:
        return f"(dfix^{self.dir!r} ({self.binder} : |> {self.ty!r}) . {self.body!r})"


def numeral(n: int) -> Term:
    t: Term = Zero()
    for _ in range(n):
        t = Suc(t)
    return t


def numeral_value(t: Term) -> int | None:
    n = 0
    while isinstance(t, Suc):
        t = t.arg
        n += 1
    return n if isinstance(t, Zero) else None


# ---------------------------------------------------------------------------
# Free names.

def free_names(t: Term) -> frozenset[str]:
    """Free term variables and interval names of `t`, as one set.

    Cached on the node: terms are immutable and heavily shared, and the
    substitution fast path (skip subtrees without the name) relies on
    this being cheap.
    """
    cached = t.__dict__.get("_free")
    if cached is not None:
        return cached
    result = _free_names(t)
    object.__setattr__(t, "_free", result)
    return result


def _free_names(t: Term) -> frozenset[str]:
    match t:
        case Var(x):
            return frozenset((x,))
        case Pi(x, dom, cod) | Sigma(x, dom, cod):
            return free_names(dom) | (free_names(cod) - {x})
        case Lam(x, dom, body):
            s = free_names(body) - {x}
            return s | (free_names(dom) if dom is not None else frozenset())
        case App(f, a):
            return free_names(f) | free_names(a)
        case Pair(a, b):
            return free_names(a) | free_names(b)
        case Fst(p) | Snd(p) | Suc(p):
            return free_names(p)
        case NatRec(m, z, s):
            return free_names(m) | free_names(z) | free_names(s)
        case Nat() | Zero() | Univ():
            return frozenset()
        case PathT(ty, l, r):
            return free_names(ty) | free_names(l) | free_names(r)
        case PLam(i, body):
            return free_names(body) - {i}
        case PApp(f, r):
            return free_names(f) | iv_names(r)
        case Comp(i, ty, system, base):
            s = free_names(ty) - {i}
            for phi, u in system:
                s |= face_names(phi) | (free_names(u) - {i})
            return s | free_names(base)
        case System(branches):
            s: frozenset[str] = frozenset()
            for phi, u in branches:
                s |= face_names(phi) | free_names(u)
            return s
        case Later(ds, body) | Next(ds, body):
            s = free_names(body) - set(ds.binders)
            for _, u in ds:
                s |= free_names(u)
            return s
        case DFix(r, x, ty, body):
            return iv_names(r) | free_names(ty) | (free_names(body) - {x})
    raise IllTyped(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# Substitution.

def _rename_binder(x: str, body: Term, avoid: frozenset[str]) -> tuple[str, Term]:
    if x in avoid:
        y = fresh(x)
        return y, subst_term(body, x, Var(y))
    return x, body


def _rename_name_binder(i: str, body: Term, avoid: frozenset[str]) -> tuple[str, Term]:
    # interval binders occur as names, not variables, so renaming goes
    # through interval substitution
    if i in avoid:
        j = fresh(i)
        return j, subst_interval(body, i, IName(j))
    return i, body


def subst_term(t: Term, x: str, s: Term) -> Term:
    """Capture-avoiding substitution of the term `s` for the variable `x`."""
    fv = free_names(s)

    def go(t: Term) -> Term:
        if x not in free_names(t):
            return t
        match t:
            case Var(y):
                return s if y == x else t
            case Pi(y, dom, cod):
                dom2 = go(dom)
                if y == x:
                    return Pi(y, dom2, cod)
                y2, cod = _rename_binder(y, cod, fv)
                return Pi(y2, dom2, go(cod))
            case Sigma(y, dom, cod):
                dom2 = go(dom)
                if y == x:
                    return Sigma(y, dom2, cod)
                y2, cod = _rename_binder(y, cod, fv)
                return Sigma(y2, dom2, go(cod))
            case Lam(y, dom, body):
                dom2 = go(dom) if dom is not None else None
                if y == x:
                    return Lam(y, dom2, body)
                y2, body = _rename_binder(y, body, fv)
                return Lam(y2, dom2, go(body))
            case App(f, a):
                return App(go(f), go(a))
            case Pair(a, b):
                return Pair(go(a), go(b))
            case Fst(p):
                return Fst(go(p))
            case Snd(p):
                return Snd(go(p))
            case Suc(p):
                return Suc(go(p))
            case NatRec(m, z, sc):
                return NatRec(go(m), go(z), go(sc))
            case Nat() | Zero() | Univ():
                return t
            case PathT(ty, l, r):
                return PathT(go(ty), go(l), go(r))
            case PLam(i, body):
                i2, body = _rename_name_binder(i, body, fv)
                return PLam(i2, go(body))
            case PApp(f, r):
                return PApp(go(f), r)
            case Comp(i, ty, system, base):
                base2 = go(base)
                i2, ty2 = _rename_name_binder(i, ty, fv)
                sys2 = []
                for phi, u in system:
                    if i2 != i:
                        u = subst_interval(u, i, IName(i2))
                    sys2.append((phi, go(u)))
                return Comp(i2, go(ty2), tuple(sys2), base2)
            case System(branches):
                return System(tuple((phi, go(u)) for phi, u in branches))
            case Later(ds, body) | Next(ds, body):
                cls = Later if isinstance(t, Later) else Next
                binds2 = tuple((y, go(u)) for y, u in ds)
                if x in ds.binders:
                    return cls(DSubst(binds2), body)
                # freshen any binder that would capture
                for k, (y, u) in enumerate(binds2):
                    if y in fv:
                        y2 = fresh(y)
                        body = subst_term(body, y, Var(y2))
                        binds2 = binds2[:k] + ((y2, u),) + binds2[k + 1:]
                return cls(DSubst(binds2), go(body))
            case DFix(r, y, ty, body):
                ty2 = go(ty)
                if y == x:
                    return DFix(r, y, ty2, body)
                y2, body = _rename_binder(y, body, fv)
                return DFix(r, y2, ty2, go(body))
        raise IllTyped(f"not a term: {t!r}")

    return go(t)


def subst_interval(t: Term, i: str, r: IntervalExpr) -> Term:
    """Substitute the interval element `r` for the name `i` throughout `t`.

    Face atoms rewrite through the lattice homomorphism of `face_of_interval`:
    (i=1) becomes the face of r and (i=0) the face of its involution.
    """
    from .cofib import face_of_interval, face_subst_via  # local: avoids cycle

    fv = iv_names(r)

    def goface(phi: FaceFormula) -> FaceFormula:
        return face_subst_via(phi, i, r, face_of_interval)

    def go(t: Term) -> Term:
        if i not in free_names(t):
            return t
        match t:
            case Var(_) | Nat() | Zero() | Univ():
                return t
            case Pi(y, dom, cod):
                return Pi(y, go(dom), go(cod))
            case Sigma(y, dom, cod):
                return Sigma(y, go(dom), go(cod))
            case Lam(y, dom, body):
                return Lam(y, go(dom) if dom is not None else None, go(body))
            case App(f, a):
                return App(go(f), go(a))
            case Pair(a, b):
                return Pair(go(a), go(b))
            case Fst(p):
                return Fst(go(p))
            case Snd(p):
                return Snd(go(p))
            case Suc(p):
                return Suc(go(p))
            case NatRec(m, z, sc):
                return NatRec(go(m), go(z), go(sc))
            case PathT(ty, l, rr):
                return PathT(go(ty), go(l), go(rr))
            case PLam(j, body):
                if j == i:
                    return t
                j2, body = _iv_rename(j, body, fv)
                return PLam(j2, go(body))
            case PApp(f, s):
                return PApp(go(f), iv_subst(s, i, r))
            case Comp(j, ty, system, base):
                base2 = go(base)
                sysfaces = tuple(goface(phi) for phi, _ in system)
                if j == i:
                    return Comp(j, ty, tuple(zip(sysfaces, (u for _, u in system))), base2)
                j2, ty2 = _iv_rename(j, ty, fv)
                branches = []
                for (phi, u), phi2 in zip(system, sysfaces):
                    if j2 != j:
                        u = subst_interval(u, j, IName(j2))
                    branches.append((phi2, go(u)))
                return Comp(j2, go(ty2), tuple(branches), base2)
            case System(branches):
                return System(tuple((goface(phi), go(u)) for phi, u in branches))
            case Later(ds, body):
                return Later(DSubst(tuple((y, go(u)) for y, u in ds)), go(body))
            case Next(ds, body):
                return Next(DSubst(tuple((y, go(u)) for y, u in ds)), go(body))
            case DFix(s, y, ty, body):
                return DFix(iv_subst(s, i, r), y, go(ty), go(body))
        raise IllTyped(f"not a term: {t!r}")

    return go(t)


def _iv_rename(j: str, body: Term, avoid: frozenset[str]) -> tuple[str, Term]:
    if j in avoid:
        j2 = fresh(j)
        return j2, subst_interval(body, j, IName(j2))
    return j, body


# ---------------------------------------------------------------------------
# Alpha equivalence.

def alpha_eq(t: Term, u: Term) -> bool:
    return _alpha(t, u, {}, {})


def _iv_alpha(r: IntervalExpr, s: IntervalExpr, env: dict, renv: dict) -> bool:
    match r, s:
        case IZero(), IZero():
            return True
        case IOne(), IOne():
            return True
        case IName(a), IName(b):
            return env.get(a, a) == b and renv.get(b, b) == a
        case INeg(a), INeg(b):
            return _iv_alpha(a, b, env, renv)
        case IMeet(a1, b1), IMeet(a2, b2):
            return _iv_alpha(a1, a2, env, renv) and _iv_alpha(b1, b2, env, renv)
        case IJoin(a1, b1), IJoin(a2, b2):
            return _iv_alpha(a1, a2, env, renv) and _iv_alpha(b1, b2, env, renv)
    return False


def _face_alpha(p: FaceFormula, q: FaceFormula, env: dict, renv: dict) -> bool:
    match p, q:
        case FBot(), FBot():
            return True
        case FTop(), FTop():
            return True
        case FEq(a, v1), FEq(b, v2):
            return v1 == v2 and env.get(a, a) == b and renv.get(b, b) == a
        case FAnd(a1, b1), FAnd(a2, b2):
            return _face_alpha(a1, a2, env, renv) and _face_alpha(b1, b2, env, renv)
        case FOr(a1, b1), FOr(a2, b2):
            return _face_alpha(a1, a2, env, renv) and _face_alpha(b1, b2, env, renv)
    return False


def _bind(env: dict, renv: dict, x: str, y: str) -> tuple[dict, dict]:
    env2 = dict(env)
    renv2 = dict(renv)
    env2[x] = y
    renv2[y] = x
    return env2, renv2


def _alpha(t: Term, u: Term, env: dict, renv: dict) -> bool:
    if t is u and not env and not renv:
        return True
    match t, u:
        case Var(x), Var(y):
            return env.get(x, x) == y and renv.get(y, y) == x
        case Pi(x, d1, c1), Pi(y, d2, c2):
            if not _alpha(d1, d2, env, renv):
                return False
            e, r = _bind(env, renv, x, y)
            return _alpha(c1, c2, e, r)
        case Sigma(x, d1, c1), Sigma(y, d2, c2):
            if not _alpha(d1, d2, env, renv):
                return False
            e, r = _bind(env, renv, x, y)
            return _alpha(c1, c2, e, r)
        case Lam(x, d1, b1), Lam(y, d2, b2):
            if (d1 is None) != (d2 is None):
                ann_ok = True  # annotations are elaboration detail
            else:
                ann_ok = d1 is None or _alpha(d1, d2, env, renv)
            if not ann_ok:
                return False
            e, r = _bind(env, renv, x, y)
            return _alpha(b1, b2, e, r)
        case App(f1, a1), App(f2, a2):
            return _alpha(f1, f2, env, renv) and _alpha(a1, a2, env, renv)
        case Pair(a1, b1), Pair(a2, b2):
            return _alpha(a1, a2, env, renv) and _alpha(b1, b2, env, renv)
        case Fst(p1), Fst(p2):
            return _alpha(p1, p2, env, renv)
        case Snd(p1), Snd(p2):
            return _alpha(p1, p2, env, renv)
        case Suc(p1), Suc(p2):
            return _alpha(p1, p2, env, renv)
        case NatRec(m1, z1, s1), NatRec(m2, z2, s2):
            return (_alpha(m1, m2, env, renv) and _alpha(z1, z2, env, renv)
                    and _alpha(s1, s2, env, renv))
        case Nat(), Nat():
            return True
        case Zero(), Zero():
            return True
        case Univ(), Univ():
            return True
        case PathT(ty1, l1, r1), PathT(ty2, l2, r2):
            return (_alpha(ty1, ty2, env, renv) and _alpha(l1, l2, env, renv)
                    and _alpha(r1, r2, env, renv))
        case PLam(i, b1), PLam(j, b2):
            e, r = _bind(env, renv, i, j)
            return _alpha(b1, b2, e, r)
        case PApp(f1, r1), PApp(f2, r2):
            return _alpha(f1, f2, env, renv) and _iv_alpha(r1, r2, env, renv)
        case Comp(i, ty1, sys1, b1), Comp(j, ty2, sys2, b2):
            if len(sys1) != len(sys2) or not _alpha(b1, b2, env, renv):
                return False
            e, r = _bind(env, renv, i, j)
            if not _alpha(ty1, ty2, e, r):
                return False
            for (p1, u1), (p2, u2) in zip(sys1, sys2):
                if not _face_alpha(p1, p2, env, renv) or not _alpha(u1, u2, e, r):
                    return False
            return True
        case System(br1), System(br2):
            if len(br1) != len(br2):
                return False
            return all(
                _face_alpha(p1, p2, env, renv) and _alpha(u1, u2, env, renv)
                for (p1, u1), (p2, u2) in zip(br1, br2))
        case (Later(ds1, b1), Later(ds2, b2)) | (Next(ds1, b1), Next(ds2, b2)):
            if type(t) is not type(u) or len(ds1) != len(ds2):
                return False
            e, r = env, renv
            for (x, t1), (y, t2) in zip(ds1, ds2):
                if not _alpha(t1, t2, env, renv):
                    return False
                e, r = _bind(e, r, x, y)
            return _alpha(b1, b2, e, r)
        case DFix(r1, x, ty1, b1), DFix(r2, y, ty2, b2):
            if not _iv_alpha(r1, r2, env, renv) or not _alpha(ty1, ty2, env, renv):
                return False
            e, r = _bind(env, renv, x, y)
            return _alpha(b1, b2, e, r)
    return False


# ---------------------------------------------------------------------------
# Contexts.

@dataclass(frozen=True)
class TermVar:
    name: str
    ty: Term


@dataclass(frozen=True)
class IntervalName:
    name: str


@dataclass(frozen=True)
class Restriction:
    face: FaceFormula


Entry = TermVar | IntervalName | Restriction


class Context:
    """Telescope of term variables, interval names, and face restrictions.

    Immutable: extension returns a new context sharing the prefix.
    """

    __slots__ = ("entries", "_types", "_names", "_inames", "_restriction")

    def __init__(self, entries: tuple[Entry, ...] = ()):
        self.entries = entries
        types: dict[str, Term] = {}
        names: set[str] = set()
        inames: set[str] = set()
        restriction: FaceFormula = F1
        for e in entries:
            match e:
                case TermVar(x, ty):
                    types[x] = ty
                    names.add(x)
                case IntervalName(i):
                    names.add(i)
                    inames.add(i)
                case Restriction(phi):
                    restriction = phi if isinstance(restriction, FTop) else FAnd(restriction, phi)
        self._types = types
        self._names = frozenset(names)
        self._inames = frozenset(inames)
        self._restriction = restriction

    def bind(self, x: str, ty: Term) -> "Context":
        return Context(self.entries + (TermVar(x, ty),))

    def bind_name(self, i: str) -> "Context":
        return Context(self.entries + (IntervalName(i),))

    def restrict(self, phi: FaceFormula) -> "Context":
        return Context(self.entries + (Restriction(phi),))

    def lookup(self, x: str) -> Term | None:
        return self._types.get(x)

    def has_name(self, i: str) -> bool:
        return i in self._names

    def has_interval(self, i: str) -> bool:
        return i in self._inames

    @property
    def names(self) -> frozenset[str]:
        return self._names

    @property
    def restriction(self) -> FaceFormula:
        return self._restriction

    def subst_interval(self, i: str, r: IntervalExpr) -> "Context":
        """Apply an interval substitution to every entry (types and faces)."""
        from .cofib import face_of_interval, face_subst_via

        out: list[Entry] = []
        for e in self.entries:
            match e:
                case TermVar(x, ty):
                    out.append(TermVar(x, subst_interval(ty, i, r)))
                case IntervalName(j):
                    if j != i:
                        out.append(IntervalName(j))
                case Restriction(phi):
                    out.append(Restriction(face_subst_via(phi, i, r, face_of_interval)))
        return Context(tuple(out))

    def __repr__(self) -> str:
        parts = []
        for e in self.entries:
            match e:
                case TermVar(x, ty):
                    parts.append(f"{x} : {ty!r}")
                case IntervalName(i):
                    parts.append(f"{i} : I")
                case Restriction(phi):
                    parts.append(repr(phi))
        return "[" + ", ".join(parts) + "]"
