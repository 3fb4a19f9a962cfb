"""Rendering kernel terms back to surface syntax.

Binders are renamed to short stable names derived from their base, so the
output is deterministic across runs regardless of internal fresh-name
counters, and always re-parses to an alpha-equivalent term.
"""
from __future__ import annotations

from .syntax import (App, Comp, DFix, FAnd, FBot, FEq, FOr, FTop, FaceFormula,
                     Fst, IJoin, IMeet, IName, INeg, IOne, IntervalExpr,
                     IZero, Lam, Later, Nat, NatRec, Next, Pair, PApp, PathT,
                     Pi, PLam, Sigma, Snd, Suc, System, Term, Univ, Var, Zero,
                     base_name, free_names, numeral_value)

# precedence of each construct, loosest first; a term is parenthesized when
# its precedence is below what the surrounding position demands
LAM, ARROW, TIMES, PAPPL, APPL, ATOM = range(6)


def pretty(t: Term) -> str:
    used = {base_name(x) for x in free_names(t)}
    return _term(t, {}, used, LAM)


def pretty_iv(r: IntervalExpr) -> str:
    return _iv(r, {}, 0)


def pretty_face(phi: FaceFormula) -> str:
    return _face(phi, {}, 0)


def _pick(x: str, used: set[str]) -> str:
    base = base_name(x) or "x"
    if base not in used:
        return base
    k = 1
    while f"{base}{k}" in used:
        k += 1
    return f"{base}{k}"


def _wrap(s: str, have: int, want: int) -> str:
    return f"({s})" if have < want else s


def _term(t: Term, env: dict[str, str], used: set[str], want: int) -> str:
    match t:
        case Var(x):
            return env.get(x, x)
        case Univ():
            return "U"
        case Nat():
            return "N"
        case Zero():
            return "0"
        case Suc(arg):
            n = numeral_value(t)
            if n is not None:
                return str(n)
            return _wrap(f"suc {_term(arg, env, used, ATOM)}", APPL, want)
        case NatRec(m, z, s):
            parts = " ".join(_term(p, env, used, ATOM) for p in (m, z, s))
            return _wrap(f"natrec {parts}", APPL, want)
        case Pi(x, dom, cod):
            if x in free_names(cod):
                y = _pick(x, used)
                cs = _term(cod, {**env, x: y}, used | {y}, ARROW)
                s = f"({y} : {_term(dom, env, used, LAM)}) -> {cs}"
            else:
                s = (f"{_term(dom, env, used, TIMES)} -> "
                     f"{_term(cod, env, used, ARROW)}")
            return _wrap(s, ARROW, want)
        case Sigma(x, dom, cod):
            if x in free_names(cod):
                y = _pick(x, used)
                cs = _term(cod, {**env, x: y}, used | {y}, TIMES)
                s = f"({y} : {_term(dom, env, used, LAM)}) * {cs}"
            else:
                s = (f"{_term(dom, env, used, PAPPL)} * "
                     f"{_term(cod, env, used, TIMES)}")
            return _wrap(s, TIMES, want)
        case Lam(x, dom, body):
            y = _pick(x, used)
            bs = _term(body, {**env, x: y}, used | {y}, LAM)
            if dom is None:
                s = f"\\{y} -> {bs}"
            else:
                s = f"\\({y} : {_term(dom, env, used, LAM)}) -> {bs}"
            return _wrap(s, LAM, want)
        case App(f, a):
            s = f"{_term(f, env, used, APPL)} {_term(a, env, used, ATOM)}"
            return _wrap(s, APPL, want)
        case Pair(a, b):
            return f"({_term(a, env, used, LAM)}, {_term(b, env, used, LAM)})"
        case Fst(p):
            return f"{_term(p, env, used, ATOM)}.1"
        case Snd(p):
            return f"{_term(p, env, used, ATOM)}.2"
        case PathT(ty, l, r):
            parts = " ".join(_term(p, env, used, ATOM) for p in (ty, l, r))
            return _wrap(f"Path {parts}", APPL, want)
        case PLam(i, body):
            y = _pick(i, used)
            bs = _term(body, {**env, i: y}, used | {y}, LAM)
            return _wrap(f"<{y}> {bs}", LAM, want)
        case PApp(f, r):
            s = f"{_term(f, env, used, PAPPL)} @ {_iv(r, env, 0)}"
            return _wrap(s, PAPPL, want)
        case Comp(i, ty, system, base):
            y = _pick(i, used)
            env2 = {**env, i: y}
            used2 = used | {y}
            tys = _term(ty, env2, used2, ATOM)
            bs = _term(base, env, used, ATOM)
            if not system:
                return _wrap(f"transp^{y} {tys} {bs}", APPL, want)
            sys = ", ".join(
                f"{_face(phi, env, 0)} -> {_term(u, env2, used2, LAM)}"
                for phi, u in system)
            return _wrap(f"comp^{y} {tys} [{sys}] {bs}", APPL, want)
        case System(branches):
            sys = ", ".join(
                f"{_face(phi, env, 0)} -> {_term(u, env, used, LAM)}"
                for phi, u in branches)
            return f"[{sys}]"
        case Later(ds, body) | Next(ds, body):
            head = "|>" if isinstance(t, Later) else "next"
            env2 = dict(env)
            used2 = set(used)
            parts = []
            for x, u in ds:
                y = _pick(x, used2)
                parts.append(f"{y} <- {_term(u, env, used, LAM)}")
                env2[x] = y
                used2.add(y)
            binds = f" [{', '.join(parts)}]" if parts else ""
            s = f"{head}{binds} {_term(body, env2, used2, APPL)}"
            return _wrap(s, APPL, want)
        case DFix(r, x, ty, body):
            y = _pick(x, used)
            tys = _term(ty, env, used, APPL)
            bs = _term(body, {**env, x: y}, used | {y}, LAM)
            rv = _iv(r, env, 2)
            dir_part = "" if rv == "0" else f"^{rv}"
            s = f"dfix{dir_part} ({y} : |> {tys}) . {bs}"
            return _wrap(s, LAM, want)
    raise AssertionError(f"unrenderable term {t!r}")


# interval/face precedence: 0 join, 1 meet, 2 atom
def _iv(r: IntervalExpr, env: dict[str, str], want: int) -> str:
    match r:
        case IZero():
            return "0"
        case IOne():
            return "1"
        case IName(n):
            return env.get(n, n)
        case INeg(a):
            return f"-{_iv(a, env, 2)}"
        case IMeet(a, b):
            return _wrap(f"{_iv(a, env, 2)} /\\ {_iv(b, env, 1)}", 1, want)
        case IJoin(a, b):
            return _wrap(f"{_iv(a, env, 1)} \\/ {_iv(b, env, 0)}", 0, want)
    raise AssertionError(f"unrenderable interval {r!r}")


def _face(phi: FaceFormula, env: dict[str, str], want: int) -> str:
    match phi:
        case FBot():
            return "0"
        case FTop():
            return "1"
        case FEq(n, v):
            return f"({env.get(n, n)} = {v})"
        case FAnd(a, b):
            return _wrap(f"{_face(a, env, 2)} /\\ {_face(b, env, 1)}", 1, want)
        case FOr(a, b):
            return _wrap(f"{_face(a, env, 1)} \\/ {_face(b, env, 0)}", 0, want)
    raise AssertionError(f"unrenderable face {phi!r}")
