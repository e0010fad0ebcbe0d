"""
A small language for algebras, maps and elements.

::

    # comments run to the end of the line
    algebra n=1 m=1;
    map sigma {
      q1 -> q1;
      p1 -> p1 + q1^2 - 1/2*y1;
      y1 -> y1;
    }
    element a = (p1 + q1)^2;

Expressions use ``+ - * ^`` and parentheses.  ``*`` is the (noncommutative)
product and must be written; ``^`` takes a nonnegative integer literal;
numbers are integers or ``a/b``.  Everything is normal ordered on parse.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import AlgebraSignature, Element, format_terms
from .errors import ArrowCountError, ParseError, UndeclaredGenerator

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<arrow>->)|(?P<op>[-+*^/(){};=])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text):
    tokens = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = mt.lastgroup
        chunk = mt.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind not in ("ws", "comment"):
                tokens.append(Token(kind if kind != "op" else chunk, chunk, line, col))
            col += len(chunk)
        pos = mt.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


@dataclass
class SourceDocument:
    """Parsed file: one signature, named maps (images in generator order) and elements."""

    signature: AlgebraSignature
    maps: dict = field(default_factory=dict)
    elements: dict = field(default_factory=dict)

    def endomorphism(self, name, check=True):
        from .automorphism import Endomorphism

        if name not in self.maps:
            raise KeyError(f"no map named {name!r}")
        return Endomorphism(self.signature, self.maps[name], check=check)

    def element(self, name):
        if name not in self.elements:
            raise KeyError(f"no element named {name!r}")
        return self.elements[name]


class _Parser:
    def __init__(self, text, names=None):
        self.toks = tokenize(text)
        self.pos = 0
        self.sig = None
        self.lookup = None
        if names is not None:
            self.set_names(names)

    def set_names(self, names):
        self.lookup = {nm: i for i, nm in enumerate(names)}

    @property
    def tok(self):
        return self.toks[self.pos]

    def error(self, message, tok=None, cls=ParseError):
        tok = tok or self.tok
        return cls(message, tok.line, tok.column)

    def expect(self, kind, what=None):
        tok = self.tok
        if tok.kind != kind:
            found = tok.text or "end of input"
            raise self.error(f"expected {what or kind!r}, found {found!r}")
        self.pos += 1
        return tok

    def accept(self, kind):
        if self.tok.kind == kind:
            self.pos += 1
            return True
        return False

    def keyword(self, word):
        tok = self.expect("ident", word)
        if tok.text != word:
            self.pos -= 1
            raise self.error(f"expected {word!r}, found {tok.text!r}")

    # expressions

    def expr(self):
        value = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.expect(self.tok.kind).kind
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.accept("*"):
            value = value * self.unary()
        return value

    def unary(self):
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.accept("^"):
            tok = self.tok
            if tok.kind != "int":
                raise self.error(f"exponent must be a nonnegative integer, found {tok.text or 'end of input'!r}")
            self.pos += 1
            base = base ** int(tok.text)
        return base

    def atom(self):
        tok = self.tok
        if tok.kind == "int":
            self.pos += 1
            value = Fraction(int(tok.text))
            if self.tok.kind == "/":
                self.pos += 1
                den = self.expect("int", "denominator")
                if int(den.text) == 0:
                    raise self.error("zero denominator", den)
                value /= int(den.text)
            return Element.const(self.sig, value)
        if tok.kind == "ident":
            if tok.text not in self.lookup:
                raise self.error(f"undeclared generator {tok.text!r}", tok, UndeclaredGenerator)
            self.pos += 1
            return Element.generator(self.sig, self.lookup[tok.text])
        if self.accept("("):
            value = self.expr()
            self.expect(")")
            return value
        raise self.error(f"expected an expression, found {tok.text or 'end of input'!r}")

    # statements

    def algebra(self):
        self.keyword("algebra")
        vals = {}
        for key in ("n", "m"):
            self.keyword(key)
            self.expect("=")
            vals[key] = int(self.expect("int", "integer").text)
        self.expect(";")
        self.sig = AlgebraSignature(vals["n"], vals["m"])
        self.set_names(self.sig.names())

    def map_body(self):
        start = self.expect("{")
        images = {}
        while not self.accept("}"):
            tok = self.expect("ident", "generator")
            if tok.text not in self.lookup:
                raise self.error(f"undeclared generator {tok.text!r}", tok, UndeclaredGenerator)
            idx = self.lookup[tok.text]
            if idx in images:
                raise self.error(f"second arrow for {tok.text}", tok, ArrowCountError)
            self.expect("arrow", "->")
            images[idx] = self.expr()
            self.expect(";")
        missing = [self.sig.name(i) for i in range(self.sig.s) if i not in images]
        if missing:
            raise self.error(f"no arrow for {', '.join(missing)}", start, ArrowCountError)
        return tuple(images[i] for i in range(self.sig.s))

    def document(self):
        if self.tok.kind == "eof":
            raise self.error("empty document")
        self.algebra()
        doc = SourceDocument(self.sig)
        while self.tok.kind != "eof":
            tok = self.tok
            if tok.kind == "ident" and tok.text == "algebra":
                raise self.error("second algebra declaration")
            if tok.kind == "ident" and tok.text == "map":
                self.pos += 1
                name = self.expect("ident", "map name")
                if name.text in doc.maps:
                    raise self.error(f"map {name.text!r} defined twice", name)
                doc.maps[name.text] = self.map_body()
            elif tok.kind == "ident" and tok.text == "element":
                self.pos += 1
                name = self.expect("ident", "element name")
                if name.text in doc.elements:
                    raise self.error(f"element {name.text!r} defined twice", name)
                self.expect("=")
                doc.elements[name.text] = self.expr()
                self.expect(";")
            else:
                raise self.error(f"expected 'map' or 'element', found {tok.text!r}")
        return doc


def parse(text):
    """Parse a full document into a :class:`SourceDocument`."""
    return _Parser(text).document()


def parse_expression(text, signature, names=None):
    """Parse a bare expression; ``names`` overrides the generator spellings (index order)."""
    p = _Parser(text, names or signature.names())
    p.sig = signature
    value = p.expr()
    p.expect("eof", "end of input")
    return value


def parse_map(text, signature):
    """Parse ``map <name> { ... }``; returns ``(name, images)``."""
    p = _Parser(text, signature.names())
    p.sig = signature
    p.keyword("map")
    name = p.expect("ident", "map name").text
    images = p.map_body()
    p.expect("eof", "end of input")
    return name, images


_ORDER_MARK = re.compile(r"\s*\+\s*O\(deg\s+(\d+)\)\s*$")


def parse_series(text, m):
    """Inverse of the series printer: ``<expr> + O(deg K)`` in ``y1..ym``."""
    from .series import TruncatedSeries

    mt = _ORDER_MARK.search(text)
    if not mt:
        raise ParseError("missing '+ O(deg K)' marker", 1, len(text) + 1)
    order = int(mt.group(1)) - 1
    value = parse_expression(text[: mt.start()], AlgebraSignature(0, m))
    return TruncatedSeries(m, order, dict(value.terms))


# printing


def format_element(a, names=None):
    return format_terms(a.items(), names or a.signature.names())


def format_map(name, signature, images, indent="  "):
    lines = [f"map {name} {{"]
    for i, im in enumerate(images):
        lines.append(f"{indent}{signature.name(i)} -> {format_element(im)};")
    lines.append("}")
    return "\n".join(lines)


def format_document(doc):
    sig = doc.signature
    out = [f"algebra n={sig.n} m={sig.m};"]
    for name, images in doc.maps.items():
        out.append(format_map(name, sig, images))
    for name, value in doc.elements.items():
        out.append(f"element {name} = {format_element(value)};")
    return "\n".join(out) + "\n"


def render(value, name="sigma"):
    """Text for any printable value; what comes out parses back to the same value."""
    from .automorphism import Endomorphism
    from .faces import FaceImage
    from .series import SeriesEndomorphism, TruncatedSeries

    if isinstance(value, SourceDocument):
        return format_document(value)
    if isinstance(value, Element):
        return format_element(value)
    if isinstance(value, Endomorphism):
        return format_map(name, value.signature, value.images)
    if isinstance(value, FaceImage):
        return str(value)
    if isinstance(value, TruncatedSeries):
        return value.format()
    if isinstance(value, SeriesEndomorphism):
        sig = AlgebraSignature(0, value.m)
        lines = [f"map {name} {{"] + [f"  {sig.name(i)} -> {im.format()};" for i, im in enumerate(value.images)] + ["}"]
        return "\n".join(lines)
    raise TypeError(f"cannot render {type(value).__name__}")
