"""Lexer and parser for the surface syntax (see docs/grammar.md).

The parser elaborates straight to kernel terms: declaration parameter
telescopes become annotated lambdas, `fix` unfolds to its delayed-fixed-
point substitution, `transp` is a composition with an empty system, and
numeric literals become numerals.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError
from .syntax import (App, Comp, DFix, DSubst, F0, F1, FAnd, FEq, FOr,
                     FaceFormula, Fst, I0, I1, IJoin, IMeet, IName, INeg,
                     IntervalExpr, Lam, Later, Nat, NatRec, Next, Pair, PApp,
                     PathT, Pi, PLam, Sigma, Snd, Suc, System, Term, Univ,
                     Var, Zero, numeral, subst_term)

KEYWORDS = {
    "module", "where", "import", "data", "U", "N", "Path", "zero", "suc",
    "natrec", "comp", "transp", "fix", "dfix", "next", "undefined",
}

SYMBOLS = [
    "->", "<-", "|>", "/\\", "\\/", ".1", ".2",
    "(", ")", "[", "]", "<", ">", ",", ":", "=", "@", "^", "*", "\\",
    "-", ".", "|",
]


@dataclass(frozen=True)
class Token:
    kind: str  # ident | keyword | number | symbol | eof
    text: str
    line: int
    col: int

    @property
    def pos(self) -> tuple[int, int]:
        return (self.line, self.col)

    @property
    def end(self) -> tuple[int, int]:
        return (self.line, self.col + max(len(self.text), 1))


def tokenize(source: str) -> list[Token]:
    toks: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if source.startswith("--", i):
            while i < n and source[i] != "\n":
                i += 1
            continue
        matched = None
        for sym in SYMBOLS:
            if source.startswith(sym, i):
                matched = sym
                break
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            toks.append(Token("number", source[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] in "_'"):
                j += 1
            text = source[i:j]
            kind = "keyword" if text in KEYWORDS else "ident"
            toks.append(Token(kind, text, line, col))
            col += j - i
            i = j
            continue
        if matched is not None:
            toks.append(Token("symbol", matched, line, col))
            i += len(matched)
            col += len(matched)
            continue
        raise ParseError(f"unexpected character {ch!r}", ((line, col), (line, col + 1)))
    toks.append(Token("eof", "", line, col))
    return toks


@dataclass
class Declaration:
    name: str
    ty: Term
    body: Term
    span: tuple[tuple[int, int], tuple[int, int]]
    reconstructed: bool = False


@dataclass
class SourceModule:
    name: str
    imports: list[str]
    declarations: list[Declaration]


class Parser:
    def __init__(self, source: str):
        self.toks = tokenize(source)
        self.pos = 0

    # -- token plumbing -----------------------------------------------------
    def peek(self, ahead: int = 0) -> Token:
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at(self, kind: str, text: str | None = None, ahead: int = 0) -> bool:
        tok = self.peek(ahead)
        return tok.kind == kind and (text is None or tok.text == text)

    def expect(self, kind: str, text: str | None = None) -> Token:
        tok = self.peek()
        if not self.at(kind, text):
            want = text or kind
            got = tok.text or "end of input"
            raise ParseError(f"expected {want!r}, found {got!r}",
                             (tok.pos, tok.end))
        return self.next()

    def fail(self, message: str):
        tok = self.peek()
        raise ParseError(message, (tok.pos, tok.end))

    def _cont(self) -> bool:
        # layout rule: a token in column 1 starts a new declaration and
        # never continues the expression on the previous lines
        return self.peek().col > 1

    # -- module structure ---------------------------------------------------
    def parse_module(self) -> SourceModule:
        self.expect("keyword", "module")
        name = self.expect("ident").text
        self.expect("keyword", "where")
        imports: list[str] = []
        while self.at("keyword", "import"):
            self.next()
            imports.append(self.expect("ident").text)
        decls: list[Declaration] = []
        seen: set[str] = set()
        while not self.at("eof"):
            for d in self.parse_declaration():
                if d.name in seen:
                    raise ParseError(f"duplicate declaration {d.name}", d.span)
                seen.add(d.name)
                decls.append(d)
        return SourceModule(name, imports, decls)

    def parse_declaration(self) -> list[Declaration]:
        if self.at("keyword", "data"):
            return self._parse_data()
        start = self.peek()
        name = self.expect("ident").text
        params: list[tuple[str, Term]] = []
        while self.at("symbol", "("):
            params.extend(self._parse_param_group())
        self.expect("symbol", ":")
        ty = self.parse_expr()
        self.expect("symbol", "=")
        body = self.parse_expr()
        end = self.toks[self.pos - 1]
        for x, dom in reversed(params):
            ty = Pi(x, dom, ty)
            body = Lam(x, dom, body)
        return [Declaration(name, ty, body, (start.pos, end.end))]

    def _parse_data(self) -> list[Declaration]:
        # non-normative sugar: a finite enumeration becomes the naturals
        # with one numeral per constructor
        start = self.expect("keyword", "data")
        name = self.expect("ident").text
        self.expect("symbol", "=")
        ctors = [self.expect("ident").text]
        while self.at("symbol", "|"):
            self.next()
            ctors.append(self.expect("ident").text)
        end = self.toks[self.pos - 1]
        span = (start.pos, end.end)
        decls = [Declaration(name, Univ(), Nat(), span)]
        for k, c in enumerate(ctors):
            decls.append(Declaration(c, Var(name), numeral(k), span))
        return decls

    def _parse_param_group(self) -> list[tuple[str, Term]]:
        self.expect("symbol", "(")
        names = [self.expect("ident").text]
        while self.at("ident"):
            names.append(self.next().text)
        self.expect("symbol", ":")
        ty = self.parse_expr()
        self.expect("symbol", ")")
        return [(x, ty) for x in names]

    # -- expressions ----------------------------------------------------
    def parse_expr(self) -> Term:
        if self.at("symbol", "\\"):
            return self._parse_lambda()
        if self.at("symbol", "<"):
            return self._parse_path_lambda()
        if self.at("keyword", "fix") or self.at("keyword", "dfix"):
            return self._parse_fix()
        return self._parse_arrow()

    def _parse_lambda(self) -> Term:
        self.expect("symbol", "\\")
        binders: list[tuple[str, Term | None]] = []
        while True:
            if self.at("ident"):
                binders.append((self.next().text, None))
            elif self.at("symbol", "("):
                binders.extend(self._parse_param_group())
            else:
                break
        if not binders:
            self.fail("a lambda needs at least one binder")
        self.expect("symbol", "->")
        body = self.parse_expr()
        for x, dom in reversed(binders):
            body = Lam(x, dom, body)
        return body

    def _parse_path_lambda(self) -> Term:
        self.expect("symbol", "<")
        names = [self.expect("ident").text]
        while self.at("ident"):
            names.append(self.next().text)
        self.expect("symbol", ">")
        body = self.parse_expr()
        for i in reversed(names):
            body = PLam(i, body)
        return body

    def _parse_fix(self) -> Term:
        kw = self.next().text  # fix | dfix
        direction: IntervalExpr = I0
        if self.at("symbol", "^"):
            self.next()
            direction = self._parse_interval_atom()
        self.expect("symbol", "(")
        x = self.expect("ident").text
        self.expect("symbol", ":")
        ann = self.parse_expr()
        self.expect("symbol", ")")
        if not (isinstance(ann, Later) and len(ann.dsubst) == 0):
            self.fail(f"the binder of {kw} has a later type, written |> A")
        self.expect("symbol", ".")
        body = self.parse_expr()
        node = DFix(direction, x, ann.body, body)
        if kw == "dfix":
            return node
        return subst_term(body, x, node)

    def _parse_arrow(self) -> Term:
        if self._at_dependent_binder():
            groups = []
            while self._at_dependent_binder():
                groups.append(self._parse_param_group())
            if self.at("symbol", "->"):
                self.next()
                cod = self.parse_expr()
                for group in reversed(groups):
                    for x, dom in reversed(group):
                        cod = Pi(x, dom, cod)
                return cod
            if self.at("symbol", "*") and len(groups) == 1:
                self.next()
                cod = self._parse_times()
                for x, dom in reversed(groups[0]):
                    cod = Sigma(x, dom, cod)
                return cod
            self.fail("expected '->' or '*' after a dependent binder")
        lhs = self._parse_times()
        if self.at("symbol", "->") and self._cont():
            self.next()
            return Pi("_", lhs, self.parse_expr())
        return lhs

    def _at_dependent_binder(self) -> bool:
        # '(' ident+ ':'  begins a dependent binder group
        if not self.at("symbol", "("):
            return False
        k = 1
        if not self.at("ident", ahead=k):
            return False
        while self.at("ident", ahead=k):
            k += 1
        return self.at("symbol", ":", ahead=k)

    def _parse_times(self) -> Term:
        lhs = self._parse_papp()
        if self.at("symbol", "*") and self._cont():
            self.next()
            return Sigma("_", lhs, self._parse_times())
        return lhs

    def _parse_papp(self) -> Term:
        t = self._parse_app()
        while self.at("symbol", "@") and self._cont():
            self.next()
            t = PApp(t, self._parse_interval())
        return t

    def _parse_app(self) -> Term:
        t = self._parse_head()
        while self._cont():
            if self._at_atom_start():
                t = App(t, self._parse_atom())
            elif self.at("symbol", ".1"):
                self.next()
                t = Fst(t)
            elif self.at("symbol", ".2"):
                self.next()
                t = Snd(t)
            else:
                break
        return t

    def _at_atom_start(self) -> bool:
        if self.at("ident") or self.at("number"):
            return True
        if self.at("symbol", "("):
            return True
        if self.at("keyword"):
            return self.peek().text in {"U", "N", "zero", "undefined"}
        return False

    def _parse_head(self) -> Term:
        tok = self.peek()
        if tok.kind == "keyword":
            if tok.text == "suc":
                self.next()
                return Suc(self._parse_atom())
            if tok.text == "natrec":
                self.next()
                motive = self._parse_atom()
                zcase = self._parse_atom()
                scase = self._parse_atom()
                return NatRec(motive, zcase, scase)
            if tok.text == "Path":
                self.next()
                ty = self._parse_atom()
                left = self._parse_atom()
                right = self._parse_atom()
                return PathT(ty, left, right)
            if tok.text in ("comp", "transp"):
                return self._parse_comp(tok.text)
            if tok.text == "next":
                self.next()
                binds = self._parse_dsubst() if self.at("symbol", "[") else DSubst()
                return Next(binds, self._parse_app())
        if self.at("symbol", "|>"):
            self.next()
            binds = self._parse_dsubst() if self.at("symbol", "[") else DSubst()
            return Later(binds, self._parse_app())
        if self.at("symbol", "["):
            return self._parse_system()
        return self._parse_atom()

    def _parse_comp(self, kw: str) -> Term:
        self.next()
        self.expect("symbol", "^")
        name = self.expect("ident").text
        ty = self._parse_atom()
        if kw == "transp":
            base = self._parse_atom()
            return Comp(name, ty, (), base)
        system = self._parse_system_branches()
        base = self._parse_atom()
        return Comp(name, ty, system, base)

    def _parse_system(self) -> Term:
        return System(self._parse_system_branches())

    def _parse_system_branches(self):
        self.expect("symbol", "[")
        branches: list[tuple[FaceFormula, Term]] = []
        if not self.at("symbol", "]"):
            while True:
                phi = self._parse_face()
                self.expect("symbol", "->")
                branches.append((phi, self.parse_expr()))
                if self.at("symbol", ","):
                    self.next()
                    continue
                break
        self.expect("symbol", "]")
        return tuple(branches)

    def _parse_dsubst(self) -> DSubst:
        self.expect("symbol", "[")
        binds: list[tuple[str, Term]] = []
        if not self.at("symbol", "]"):
            while True:
                x = self.expect("ident").text
                self.expect("symbol", "<-")
                binds.append((x, self.parse_expr()))
                if self.at("symbol", ","):
                    self.next()
                    continue
                break
        self.expect("symbol", "]")
        if len({x for x, _ in binds}) != len(binds):
            self.fail("duplicate binder in a delayed substitution")
        return DSubst(tuple(binds))

    def _parse_atom(self) -> Term:
        tok = self.peek()
        if tok.kind == "ident":
            self.next()
            return Var(tok.text)
        if tok.kind == "number":
            self.next()
            return numeral(int(tok.text))
        if tok.kind == "keyword":
            if tok.text == "U":
                self.next()
                return Univ()
            if tok.text == "N":
                self.next()
                return Nat()
            if tok.text == "zero":
                self.next()
                return Zero()
            self.fail(f"the keyword {tok.text!r} cannot appear here")
        if self.at("symbol", "("):
            self.next()
            t = self.parse_expr()
            if self.at("symbol", ","):
                self.next()
                u = self.parse_expr()
                self.expect("symbol", ")")
                return Pair(t, u)
            self.expect("symbol", ")")
            return t
        self.fail("expected a term")

    # -- intervals and faces ----------------------------------------------
    def _parse_interval(self) -> IntervalExpr:
        return self._parse_interval_join()

    def _parse_interval_join(self) -> IntervalExpr:
        t = self._parse_interval_meet()
        while self.at("symbol", "\\/"):
            self.next()
            t = IJoin(t, self._parse_interval_meet())
        return t

    def _parse_interval_meet(self) -> IntervalExpr:
        t = self._parse_interval_atom()
        while self.at("symbol", "/\\"):
            self.next()
            t = IMeet(t, self._parse_interval_atom())
        return t

    def _parse_interval_atom(self) -> IntervalExpr:
        tok = self.peek()
        if tok.kind == "number" and tok.text in ("0", "1"):
            self.next()
            return I0 if tok.text == "0" else I1
        if tok.kind == "ident":
            self.next()
            return IName(tok.text)
        if self.at("symbol", "-"):
            self.next()
            return INeg(self._parse_interval_atom())
        if self.at("symbol", "("):
            self.next()
            t = self._parse_interval()
            self.expect("symbol", ")")
            return t
        self.fail("expected an interval element")

    def _parse_face(self) -> FaceFormula:
        return self._parse_face_or()

    def _parse_face_or(self) -> FaceFormula:
        t = self._parse_face_and()
        while self.at("symbol", "\\/"):
            self.next()
            t = FOr(t, self._parse_face_and())
        return t

    def _parse_face_and(self) -> FaceFormula:
        t = self._parse_face_atom()
        while self.at("symbol", "/\\"):
            self.next()
            t = FAnd(t, self._parse_face_atom())
        return t

    def _parse_face_atom(self) -> FaceFormula:
        tok = self.peek()
        if tok.kind == "number" and tok.text in ("0", "1"):
            self.next()
            return F0 if tok.text == "0" else F1
        if self.at("symbol", "("):
            # either a parenthesized face or an atom (name = endpoint)
            if self.at("ident", ahead=1) and self.at("symbol", "=", ahead=2):
                self.next()
                name = self.expect("ident").text
                self.expect("symbol", "=")
                v = self.expect("number")
                if v.text not in ("0", "1"):
                    raise ParseError("a face atom compares a name with 0 or 1",
                                     (v.pos, v.end))
                self.expect("symbol", ")")
                return FEq(name, int(v.text))
            self.next()
            t = self._parse_face()
            self.expect("symbol", ")")
            return t
        self.fail("expected a face formula")


def parse_module(source: str) -> SourceModule:
    """Parse one module; raises ParseError with a source span on failure."""
    return Parser(source).parse_module()


def parse_expression(source: str) -> Term:
    p = Parser(source)
    t = p.parse_expr()
    if not p.at("eof"):
        p.fail("trailing input after the expression")
    return t
