"""Script DSL, command dispatcher and report emitters.

A script is a sequence of statements separated by newlines or ``;``::

    field Q
    ring R = poly(x, y)
    scheme X = V(<x^2*y^3>)
    fatpoint v = <xi^3>
    arc X v
    dim X v

Run with ``fatarc run script.fa`` or ``fatarc eval 'statements'``.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any, Sequence

import sympy

from . import __version__
from .arcs import arc_dim, arc_scheme, image_closure
from .classes import LValue, fp_fingerprint, point_count_fat, point_count_scheme
from .config import limits
from .errors import FatArcError, ParseError
from .fatpoints import FatPoint, Germ, jet
from .frobchar import frobenius_adjunction_counts, frobenius_transform, relative_frobenius_map
from .ideals import Ideal, standard_monomials
from .motifs import ConstructibleMotif, closed, cone, whole
from .motint import char_function, integrate, step_combine
from .polycore import GF, QQ, PolyRing, Polynomial, _is_prime, order_from_name
from .series import auto_igusa, hilbert_kunz_series, hilbert_series, igusa_series, milnor_series

__all__ = ["Statement", "Script", "Report", "parse_script", "run", "emit", "main"]

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_~]*")
_INT = re.compile(r"-?\d+")

DECL_KINDS = ("field", "ring", "ideal", "scheme", "fatpoint", "germ", "motif")
COMMANDS = ("arc", "dim", "length", "basis", "fingerprint", "count", "closure", "frobenius",
            "frobmap", "frobcount", "igusa", "autoigusa", "hilbert", "hk", "milnor", "integrate")


# ------------------------------------------------------------------ syntax

@dataclass
class Statement:
    kind: str
    args: dict
    line: int
    column: int
    text: str


@dataclass
class Script:
    statements: list

    def __len__(self):
        return len(self.statements)


class _Scanner:
    def __init__(self, text: str, line: int, column: int):
        self.text = text
        self.pos = 0
        self.line = line
        self.column = column

    def error(self, msg: str, pos: int | None = None):
        p = self.pos if pos is None else pos
        return ParseError(f"line {self.line}, column {self.column + p}: {msg}")

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self.ws()
        return self.pos >= len(self.text)

    def peek_word(self) -> str | None:
        self.ws()
        m = _NAME.match(self.text, self.pos)
        return m.group(0) if m else None

    def word(self, expected: str | None = None) -> str:
        self.ws()
        m = _NAME.match(self.text, self.pos)
        if not m or (expected and m.group(0) != expected):
            raise self.error(f"expected {expected or 'a name'}")
        self.pos = m.end()
        return m.group(0)

    def maybe_word(self, w: str) -> bool:
        if self.peek_word() == w:
            self.word()
            return True
        return False

    def integer(self) -> int:
        self.ws()
        m = _INT.match(self.text, self.pos)
        if not m:
            raise self.error("expected an integer")
        self.pos = m.end()
        return int(m.group(0))

    def peek(self, s: str) -> bool:
        self.ws()
        return self.text.startswith(s, self.pos)

    def expect(self, s: str):
        if not self.peek(s):
            raise self.error(f"expected {s!r}")
        self.pos += len(s)

    def angle(self) -> tuple[str, int]:
        """Raw text between < and >, with its column."""
        self.expect("<")
        start = self.pos
        end = self.text.find(">", start)
        if end < 0:
            raise self.error("unterminated '<'")
        self.pos = end + 1
        return self.text[start:end], self.column + start

    def group(self) -> list[tuple[str, int]]:
        """A parenthesised, comma-separated list of raw items."""
        self.expect("(")
        items, depth, start = [], 0, self.pos
        while True:
            if self.pos >= len(self.text):
                raise self.error("unterminated '('")
            ch = self.text[self.pos]
            if ch == "(":
                depth += 1
            elif ch == ")":
                if depth == 0:
                    piece = self.text[start:self.pos]
                    if piece.strip() or items:
                        items.append((piece, self.column + start))
                    self.pos += 1
                    return [(t.strip(), c + len(t) - len(t.lstrip())) for t, c in items]
                depth -= 1
            elif ch == "," and depth == 0:
                items.append((self.text[start:self.pos], self.column + start))
                start = self.pos + 1
            self.pos += 1

    def rest(self) -> tuple[str, int]:
        self.ws()
        s = self.text[self.pos:]
        c = self.column + self.pos
        self.pos = len(self.text)
        return s.strip(), c


def _split_statements(text: str):
    """Yield (statement text, line, column) for every nonempty statement."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        col = 0
        for piece in line.split(";"):
            if piece.strip():
                lead = len(piece) - len(piece.lstrip())
                yield piece.strip(), lineno, col + lead + 1
            col += len(piece) + 1


def _split_items(text: str) -> list[str]:
    out, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            out.append(text[start:i].strip())
            start = i + 1
    if text[start:].strip():
        out.append(text[start:].strip())
    return out


def _parse_germ_ref(sc: _Scanner, names: dict) -> dict:
    """germ(A1, origin) | germ(X, (0,0)) | G."""
    if sc.peek_word() == "germ":
        sc.word()
        items = sc.group()
        if not items:
            raise sc.error("germ(...) needs arguments")
        base = items[0][0]
        point = None
        if len(items) > 1:
            ptxt = ",".join(t for t, _ in items[1:]).strip()
            if ptxt != "origin":
                point = ptxt
        if base not in ("A1", "A2", "A3"):
            _need(sc, names, base, ("scheme", "ideal"), items[0][1])
        return {"base": base, "point": point}
    name = sc.word()
    _need(sc, names, name, ("germ",))
    return {"ref": name}


def _need(sc: _Scanner, names: dict, name: str, kinds: tuple, col: int | None = None):
    if name not in names:
        raise ParseError(f"line {sc.line}, column {col or sc.column + sc.pos}: undeclared name {name!r}")
    if names[name] not in kinds:
        raise ParseError(f"line {sc.line}, column {col or sc.column + sc.pos}: "
                         f"{name!r} is a {names[name]}, expected {' or '.join(kinds)}")


def _parse_motif_expr(sc: _Scanner, names: dict):
    """or/and/not expression over Closed(...), Cone(...), all and motif names."""

    def expr():
        node = term()
        while sc.maybe_word("or"):
            node = ("or", node, term())
        return node

    def term():
        node = factor()
        while sc.maybe_word("and"):
            node = ("and", node, factor())
        return node

    def factor():
        if sc.peek("("):
            sc.expect("(")
            node = expr()
            sc.expect(")")
            return node
        w = sc.word()
        if w == "not":
            return ("not", factor())
        if w in ("Closed", "Cone"):
            items = sc.group()
            return (w.lower(), items)
        if w == "all":
            return ("all",)
        _need(sc, names, w, ("motif",))
        return ("ref", w)

    return expr()


def _ring_vars(sc: _Scanner, state: dict) -> list:
    if "ring_vars" not in state:
        raise sc.error("no ring declared")
    return state["ring_vars"]


def _parse_statement(text: str, line: int, column: int, names: dict, state: dict) -> Statement:
    sc = _Scanner(text, line, column)
    kw = sc.word()
    args: dict[str, Any] = {}
    if kw == "field":
        if state.get("field_declared"):
            raise sc.error("field redeclared (one coefficient field per script)", 0)
        w = sc.word()
        if w == "Q":
            args["p"] = 0
        elif w == "Fp":
            pos = sc.pos
            p = sc.integer()
            if not _is_prime(p):
                raise sc.error(f"{p} is not prime", pos)
            args["p"] = p
        else:
            raise sc.error("expected Q or Fp <prime>")
        state["field_declared"] = True
    elif kw in DECL_KINDS:
        name = sc.word()
        sc.expect("=")
        args["name"] = name
        if kw == "ring":
            sc.word("poly")
            args["vars"] = [t for t, _ in sc.group()]
            state["ring_vars"] = args["vars"]
            for v in args["vars"]:
                if not _NAME.fullmatch(v):
                    raise sc.error(f"bad variable name {v!r}")
        elif kw == "ideal":
            args["gens"] = sc.angle()
            _check_polys(sc, args["gens"], _ring_vars(sc, state))
        elif kw == "scheme":
            sc.word("V")
            sc.expect("(")
            if sc.peek("<"):
                args["gens"] = sc.angle()
                _check_polys(sc, args["gens"], _ring_vars(sc, state))
            else:
                ref = sc.word()
                _need(sc, names, ref, ("ideal", "scheme"))
                args["ref"] = ref
            sc.expect(")")
        elif kw == "fatpoint":
            if sc.peek_word() == "jet":
                sc.word()
                items = sc.group()
                if len(items) < 2:
                    raise sc.error("jet needs a germ and an order")
                args["jet_n"] = int(items[-1][0])
                base = items[0][0]
                if base not in ("A1", "A2", "A3"):
                    _need(sc, names, base, ("scheme", "ideal", "germ"), items[0][1])
                pt = ",".join(t for t, _ in items[1:-1]).strip() or None
                args["germ"] = {"base": base, "point": None if pt in (None, "origin") else pt}
            else:
                args["gens"] = sc.angle()
                while not sc.at_end():
                    opt = sc.word()
                    if opt not in ("vars", "order", "basis"):
                        raise sc.error(f"unknown fatpoint option {opt!r}")
                    args[opt] = [t for t, _ in sc.group()]
        elif kw == "germ":
            args["germ"] = _parse_germ_ref(sc, names)
        elif kw == "motif":
            args["expr"] = _parse_motif_expr(sc, names)
            if sc.maybe_word("on"):
                on = sc.word()
                _need(sc, names, on, ("scheme",))
                args["on"] = on
        names[name] = kw
    elif kw in COMMANDS:
        if kw in ("arc", "dim"):
            args["X"] = sc.word()
            _need(sc, names, args["X"], ("scheme",))
            args["v"] = sc.word()
            _need(sc, names, args["v"], ("fatpoint",))
        elif kw in ("length", "basis", "fingerprint"):
            args["v"] = sc.word()
            _need(sc, names, args["v"], ("fatpoint",))
        elif kw == "count":
            args["X"] = sc.word()
            _need(sc, names, args["X"], ("scheme", "motif"))
            sc.word("over")
            args["q"] = sc.integer()
            if sc.maybe_word("via"):
                args["v"] = sc.word()
                _need(sc, names, args["v"], ("fatpoint",))
        elif kw == "closure":
            args["X"] = sc.word()
            _need(sc, names, args["X"], ("scheme",))
            sc.word("to")
            args["targets"] = [t for t, _ in sc.group()]
            sc.word("by")
            args["images"] = [t for t, _ in sc.group()]
            if len(args["targets"]) != len(args["images"]):
                raise sc.error("closure needs as many images as target variables")
        elif kw == "frobenius":
            args["Y"] = sc.word()
            _need(sc, names, args["Y"], ("scheme",))
            sc.word("in")
            args["X"] = sc.word()
            _need(sc, names, args["X"], ("scheme",))
            args["n"] = sc.integer() if sc.maybe_word("power") else 1
        elif kw == "frobmap":
            args["Y"] = sc.word()
            _need(sc, names, args["Y"], ("scheme",))
        elif kw == "frobcount":
            args["Y"] = sc.word()
            _need(sc, names, args["Y"], ("scheme",))
            sc.word("via")
            args["v"] = sc.word()
            _need(sc, names, args["v"], ("fatpoint",))
            sc.word("over")
            args["q"] = sc.integer()
        elif kw == "igusa":
            args["X"] = sc.word()
            _need(sc, names, args["X"], ("scheme",))
            sc.word("at")
            args["germ"] = _parse_germ_ref(sc, names)
            sc.word("upto")
            args["N"] = sc.integer()
            if sc.maybe_word("closed"):
                args["closed"] = sc.rest()[0]
        elif kw in ("autoigusa", "hilbert"):
            args["germ"] = _parse_germ_ref(sc, names)
            sc.word("upto")
            args["N"] = sc.integer()
        elif kw == "hk":
            args["Y"] = sc.word()
            _need(sc, names, args["Y"], ("scheme",))
            sc.word("in")
            args["X"] = sc.word()
            _need(sc, names, args["X"], ("scheme",))
            sc.word("upto")
            args["N"] = sc.integer()
        elif kw == "milnor":
            args["f"] = sc.angle()
            _check_polys(sc, args["f"], _ring_vars(sc, state))
            sc.word("at")
            args["germ"] = _parse_germ_ref(sc, names)
            sc.word("upto")
            args["N"] = sc.integer()
        elif kw == "integrate":
            terms = []
            while True:
                coeff = 1
                sc.ws()
                if _INT.match(sc.text, sc.pos):
                    coeff = sc.integer()
                    sc.expect("*")
                name = sc.word()
                _need(sc, names, name, ("motif", "scheme"))
                terms.append((coeff, name))
                if not sc.peek("+"):
                    break
                sc.expect("+")
            args["terms"] = terms
            sc.word("along")
            args["v"] = sc.word()
            _need(sc, names, args["v"], ("fatpoint",))
            if sc.maybe_word("over"):
                args["q"] = sc.integer()
    else:
        raise sc.error(f"unknown statement {kw!r}", 0)
    if not sc.at_end():
        raise sc.error("unexpected trailing text")
    return Statement(kw, args, line, column, text)


def parse_script(text: str) -> Script:
    names: dict = {}
    state: dict = {}
    out = []
    for stmt, line, col in _split_statements(text):
        out.append(_parse_statement(stmt, line, col, names, state))
    return Script(out)


# ------------------------------------------------------------------ execution

@dataclass
class Report:
    command: str
    line: int
    column: int
    source: str
    data: dict = dc_field(default_factory=dict)
    text: str = ""
    error: str | None = None

    def to_json(self) -> dict:
        out = {"command": self.command, "line": self.line, "column": self.column, "source": self.source}
        if self.error is not None:
            out["error"] = self.error
        else:
            out.update(self.data)
        return out


class _Objects(dict):
    """Name table; names whose declaration failed stay unusable."""

    def __init__(self):
        super().__init__()
        self.failed: dict[str, int] = {}

    def __missing__(self, name):
        if name in self.failed:
            raise FatArcError(f"'{name}' is unavailable: its declaration (statement {self.failed[name]}) failed")
        raise KeyError(name)


class _Env:
    def __init__(self, char: int | None):
        self.char_override = char
        self.field = GF(char) if char else QQ
        self.ring: PolyRing | None = None
        self.objs = _Objects()

    def parse_poly(self, ring: PolyRing, text: str, col: int, line: int) -> Polynomial:
        try:
            return ring.parse(text)
        except ParseError as e:
            raise _located(e, line, col) from None

    def polys(self, ring, raw: tuple[str, int], line) -> list:
        text, col = raw
        return [self.parse_poly(ring, t, col, line) for t in _split_items(text)]

    def need_ring(self) -> PolyRing:
        if self.ring is None:
            raise FatArcError("no ring declared")
        return self.ring

    def germ(self, desc: dict) -> Germ:
        if "ref" in desc:
            return self.objs[desc["ref"]]
        base = desc["base"]
        if base in ("A1", "A2", "A3"):
            names = {"A1": ["xi"], "A2": ["xi", "zeta"], "A3": ["xi", "zeta", "eta"]}[base]
            ring = PolyRing(names, self.field)
            I = Ideal(ring, [])
        else:
            I = self.objs[base]
        point = None
        if desc.get("point"):
            txt = desc["point"].strip().strip("()")
            point = tuple(Fraction(c.strip()) for c in txt.split(","))
            point = tuple(self.field(c.numerator) if c.denominator == 1
                          else self.field.div(self.field(c.numerator), self.field(c.denominator))
                          for c in point)
        return Germ(I, point, name=base)


def _located(e: ParseError, line: int, col: int) -> ParseError:
    err = ParseError(f"line {line}, column {col + (e.position or 0)}: {e.message}")
    err.located = True
    return err


def _check_polys(sc: _Scanner, raw: tuple[str, int], names: Sequence[str] | None):
    """Syntax check of a polynomial list at parse time (field-independent)."""
    text, col = raw
    if not text.strip():
        return
    pos = 0
    for item in text.split(","):
        lead = len(item) - len(item.lstrip())
        vs = list(names) if names is not None else _infer_vars([item]) or ["_"]
        try:
            PolyRing(vs, QQ).parse(item)
        except ParseError as e:
            raise _located(e, sc.line, col + pos + lead) from None
        pos += len(item) + 1


def _infer_vars(texts: list[str]) -> list[str]:
    seen = []
    for t in texts:
        for m in _NAME.finditer(t):
            if m.group(0) not in seen:
                seen.append(m.group(0))
    return seen


def _motif(env: _Env, node, ambient: Ideal):
    kind = node[0]
    if kind == "or":
        return _motif(env, node[1], ambient) | _motif(env, node[2], ambient)
    if kind == "and":
        return _motif(env, node[1], ambient) & _motif(env, node[2], ambient)
    if kind == "not":
        return ~_motif(env, node[1], ambient)
    if kind == "all":
        return whole(ambient)
    if kind == "ref":
        return env.objs[node[1]]
    gens = [ambient.ring.parse(t) for t, _ in node[1]]
    return closed(ambient, gens) if kind == "closed" else cone(ambient, gens)


def _fmt_val(v) -> Any:
    if isinstance(v, LValue):
        return v.to_json()
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else int(v)
    return v


def _ideal_strs(I: Ideal) -> list[str]:
    return [str(g) for g in I.generators]


def _series_text(head: str, rep) -> str:
    lines = [head]
    for c in rep.coefficients:
        parts = [f"n={c.n}", f"length={c.jet_length}"]
        if c.dim is not None:
            parts.append(f"dim={c.dim}")
        if c.defect is not None:
            parts.append(f"defect={c.defect}")
        if c.exponent is not None:
            parts.append(f"exponent={c.exponent}")
        if c.L_coeff is not None:
            parts.append(f"coeff={c.L_coeff}")
        lines.append("  " + " ".join(parts))
    if rep.closed_form is not None:
        lines.append(f"  closed form {rep.closed_form}: {'matches' if rep.closed_form_matches else 'MISMATCH'}")
    if "tail_fit" in rep.extra:
        lines.append(f"  tail fit {rep.extra['tail_fit']}: {'ok' if rep.extra['tail_fit_ok'] else 'FAILED'}")
    return "\n".join(lines)


def _execute(st: Statement, env: _Env) -> Report | None:
    a = st.args
    rep = Report(st.kind, st.line, st.column, st.text)
    k = st.kind
    o = env.objs
    if k == "field":
        if env.char_override is None:
            env.field = GF(a["p"]) if a["p"] else QQ
        return None
    if k == "ring":
        env.ring = PolyRing(a["vars"], env.field)
        o[a["name"]] = env.ring
        return None
    if k == "ideal":
        ring = env.need_ring()
        o[a["name"]] = Ideal(ring, env.polys(ring, a["gens"], st.line))
        return None
    if k == "scheme":
        if "ref" in a:
            o[a["name"]] = o[a["ref"]]
        else:
            ring = env.need_ring()
            o[a["name"]] = Ideal(ring, env.polys(ring, a["gens"], st.line))
        return None
    if k == "fatpoint":
        if "jet_n" in a:
            fp = jet(env.germ(a["germ"]), a["jet_n"])
        else:
            texts = _split_items(a["gens"][0])
            vars_ = a.get("vars") or _infer_vars(texts)
            ring = PolyRing(vars_, env.field)
            gens = env.polys(ring, a["gens"], st.line)
            fp = FatPoint(Ideal(ring, gens), basis=a.get("basis"), var_order=a.get("order"))
        fp.name = a["name"]
        o[a["name"]] = fp
        return None
    if k == "germ":
        o[a["name"]] = env.germ(a["germ"])
        return None
    if k == "motif":
        amb = o[a["on"]] if "on" in a else Ideal(env.need_ring(), [])
        o[a["name"]] = _motif(env, a["expr"], amb)
        return None

    if k == "arc":
        arc = arc_scheme(o[a["X"]], o[a["v"]])
        rep.data = {"X": a["X"], "point": a["v"], "variables": list(arc.ring.names),
                    "generators": _ideal_strs(arc.ideal)}
        rep.text = f"arc {a['X']} {a['v']} = {arc.ideal}"
    elif k == "dim":
        ad = arc_dim(o[a["X"]], o[a["v"]])
        rep.data = {"X": a["X"], "point": a["v"], "dim": ad.dim, "defect": ad.defect,
                    "coordinate_affine": ad.coordinate_affine}
        ca = "none" if ad.coordinate_affine is None else ad.coordinate_affine
        rep.text = f"dim {a['X']} {a['v']}: dim = {ad.dim}, defect = {ad.defect}, coordinate_affine = {ca}"
    elif k == "length":
        fp = o[a["v"]]
        rep.data = {"point": a["v"], "length": fp.length}
        rep.text = f"length {a['v']} = {fp.length}"
    elif k == "basis":
        fp = o[a["v"]]
        rep.data = {"point": a["v"], "basis": [str(b) for b in fp.basis],
                    "filtration": fp.basis.is_filtration}
        rep.text = f"basis {a['v']} = {fp.basis}"
    elif k == "fingerprint":
        f = fp_fingerprint(o[a["v"]])
        rep.data = {"point": a["v"], **f.to_json()}
        rep.text = (f"fingerprint {a['v']}: length {f.length}, embdim {f.embdim}, "
                    f"hilbert {tuple(f.hilbert)}, socle {f.socle}")
    elif k == "count":
        X = o[a["X"]]
        if "v" in a:
            n = point_count_fat(X, o[a["v"]], a["q"])
            rep.text = f"count {a['X']} over {a['q']} via {a['v']} = {n}"
        else:
            n = point_count_scheme(X, a["q"])
            rep.text = f"count {a['X']} over {a['q']} = {n}"
        rep.data = {"X": a["X"], "q": a["q"], "via": a.get("v"), "count": n}
    elif k == "closure":
        X = o[a["X"]]
        mapping = {t: X.ring.parse(img) for t, img in zip(a["targets"], a["images"])}
        res = image_closure(X, mapping, a["targets"])
        rep.data = {"X": a["X"], "variables": a["targets"], "generators": _ideal_strs(res)}
        rep.text = f"closure {a['X']} = {res}"
    elif k == "frobenius":
        T = frobenius_transform(o[a["Y"]], o[a["X"]], a["n"])
        st_ = standard_monomials(T)
        ln = len(st_) if st_.is_finite() else None
        rep.data = {"Y": a["Y"], "X": a["X"], "n": a["n"], "generators": _ideal_strs(T), "length": ln}
        rep.text = f"frobenius {a['Y']} in {a['X']} power {a['n']} = {T}" + (
            f", length {ln}" if ln is not None else "")
    elif k == "frobmap":
        T, m = relative_frobenius_map(o[a["Y"]])
        rep.data = {"Y": a["Y"], "generators": _ideal_strs(T), "map": {v: str(p) for v, p in m.items()}}
        rep.text = (f"frobmap {a['Y']} = {T}; map " + ", ".join(f"{v} -> {p}" for v, p in m.items()))
    elif k == "frobcount":
        lhs, rhs = frobenius_adjunction_counts(o[a["Y"]], o[a["v"]], a["q"])
        rep.data = {"Y": a["Y"], "point": a["v"], "q": a["q"], "lhs": lhs, "rhs": rhs}
        rep.text = f"frobcount {a['Y']} via {a['v']} over {a['q']} = ({lhs}, {rhs})"
    elif k in ("igusa", "autoigusa", "hilbert", "hk", "milnor"):
        if k == "igusa":
            r = igusa_series(o[a["X"]], env.germ(a["germ"]), a["N"])
            if "closed" in a:
                r.check_closed_form(sympy.sympify(a["closed"].replace("^", "**"),
                                                  locals={"L": sympy.Symbol("L"), "t": sympy.Symbol("t")}))
        elif k == "autoigusa":
            r = auto_igusa(env.germ(a["germ"]), a["N"])
        elif k == "hilbert":
            r = hilbert_series(env.germ(a["germ"]), a["N"])
        elif k == "hk":
            r = hilbert_kunz_series(o[a["Y"]], o[a["X"]], a["N"])
        else:
            ring = env.need_ring()
            f = env.polys(ring, a["f"], st.line)[0]
            r = milnor_series(f, env.germ(a["germ"]), a["N"])
        rep.data = r.to_json()
        rep.data["kind"] = r.kind
        rep.text = _series_text(st.text, r)
    elif k == "integrate":
        s = None
        amb = None
        for coeff, name in a["terms"]:
            m = o[name]
            m = m if isinstance(m, ConstructibleMotif) else whole(m)
            piece = step_combine("scale", char_function(m), g=coeff)
            s = piece if s is None else step_combine("add", s, piece)
        val = integrate(s, o[a["v"]], a.get("q"))
        rep.data = {"point": a["v"], "realization": a.get("q", "L"), "integral": _fmt_val(val),
                    "fibers": [{"value": _fmt_val(v), "motif": str(m)} for v, m in s.fibers()]}
        rep.text = f"{st.text} = {val}"
    return rep


def run(script: Script | str, char: int | None = None) -> list[Report]:
    if isinstance(script, str):
        script = parse_script(script)
    env = _Env(char)
    reports = []
    for index, st in enumerate(script.statements, start=1):
        try:
            r = _execute(st, env)
        except (FatArcError, ValueError, ZeroDivisionError) as e:
            where = "" if getattr(e, "located", False) else f"line {st.line}, column {st.column}: "
            r = Report(st.kind, st.line, st.column, st.text,
                       error=f"statement {index}, {where}{type(e).__name__}: {e}")
            if "name" in st.args:
                env.objs.failed[st.args["name"]] = index
        if r is not None:
            reports.append(r)
    return reports


def emit(reports: list[Report], fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps([r.to_json() for r in reports], indent=2) + "\n"
    lines = []
    for r in reports:
        lines.append(f"error: {r.error}" if r.error else r.text)
    return "\n".join(lines) + ("\n" if lines else "")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fatarc", description="Arc schemes along fat points.")
    ap.add_argument("--version", action="version", version=f"fatarc {__version__}")
    sub = ap.add_subparsers(dest="cmd", required=True)
    for name, helptext in (("run", "run a script file ('-' for stdin)"), ("eval", "run statements given inline")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("source")
        p.add_argument("--json", action="store_true", help="emit JSON reports")
        p.add_argument("--char", type=int, default=None, help="override the coefficient field with F_p")
        p.add_argument("--max-enumeration", type=int, default=None)
        p.add_argument("--max-gb-pairs", type=int, default=None)
        p.add_argument("--order", choices=("lex", "grevlex"), default=None)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.cmd == "run":
        text = sys.stdin.read() if args.source == "-" else open(args.source, encoding="utf-8").read()
    else:
        text = args.source
    changes = {}
    if args.max_enumeration is not None:
        changes["max_enumeration"] = args.max_enumeration
    if args.max_gb_pairs is not None:
        changes["max_gb_pairs"] = args.max_gb_pairs
    if args.order is not None:
        order_from_name(args.order)
        changes["order"] = args.order
    if args.char is not None and not _is_prime(args.char):
        print(f"error: --char {args.char} is not prime", file=sys.stderr)
        return 2
    try:
        script = parse_script(text)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    with limits(**changes):
        reports = run(script, args.char)
    sys.stdout.write(emit(reports, "json" if args.json else "text"))
    failed = [r for r in reports if r.error]
    for r in failed:
        if args.json:
            print(f"error: {r.error}", file=sys.stderr)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
