"""Sparse multivariate polynomials over Q, exact arithmetic only.

Monomials are immutable sorted (variable, exponent) tuples; polynomials map
monomials to nonzero Fraction coefficients. A polynomial may carry a
MonomialOrder; when absent, degrevlex over its own sorted variables is used.
Serialization is canonical (terms sorted descending, explicit ^ exponents)
and round-trips through parse_polynomial.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

from .orders import MonomialOrder, default_order


class Monomial:
    __slots__ = ("exps", "_hash")

    def __init__(self, exps: Iterable[tuple[str, int]] = ()):
        cleaned = tuple((v, e) for v, e in exps if e != 0)
        if any(e < 0 for _, e in cleaned):
            raise ValueError("negative exponent")
        if list(cleaned) != sorted(cleaned, key=lambda p: p[0]):
            cleaned = tuple(sorted(cleaned, key=lambda p: p[0]))
        self.exps = cleaned
        self._hash = hash(cleaned)

    @staticmethod
    def one() -> "Monomial":
        return _ONE_MONO

    @staticmethod
    def var(name: str, exp: int = 1) -> "Monomial":
        return Monomial(((name, exp),))

    def degree(self) -> int:
        return sum(e for _, e in self.exps)

    def exponent(self, var: str) -> int:
        for v, e in self.exps:
            if v == var:
                return e
        return 0

    def variables(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.exps)

    def is_one(self) -> bool:
        return not self.exps

    def mul(self, other: "Monomial") -> "Monomial":
        return Monomial(_merge(self.exps, other.exps, min_keep=1))

    __mul__ = mul

    def divides(self, other: "Monomial") -> bool:
        it = dict(other.exps)
        return all(it.get(v, 0) >= e for v, e in self.exps)

    def div(self, other: "Monomial") -> "Monomial":
        """self / other; raises if not divisible."""
        out = []
        it = dict(self.exps)
        for v, e in other.exps:
            r = it.get(v, 0) - e
            if r < 0:
                raise ValueError("%s does not divide %s" % (other, self))
            it[v] = r
        return Monomial(it.items())

    def lcm(self, other: "Monomial") -> "Monomial":
        d = dict(self.exps)
        for v, e in other.exps:
            if e > d.get(v, 0):
                d[v] = e
        return Monomial(d.items())

    def coprime(self, other: "Monomial") -> bool:
        mine = {v for v, _ in self.exps}
        return all(v not in mine for v, _ in other.exps)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exps == other.exps

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if not self.exps:
            return "1"
        return "*".join(v if e == 1 else "%s^%d" % (v, e) for v, e in self.exps)


def _merge(a, b, min_keep):
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return out


_ONE_MONO = Monomial()


def _coerce(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError("cannot use %r as a rational coefficient" % (c,))


class Polynomial:
    __slots__ = ("terms", "order", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None,
                 order: MonomialOrder | None = None):
        t = {}
        if terms:
            for m, c in terms.items():
                c = _coerce(c)
                if c != 0:
                    t[m] = c
        self.terms = t
        self.order = order
        self._hash = None

    # construction helpers
    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial()

    @staticmethod
    def const(c) -> "Polynomial":
        return Polynomial({_ONE_MONO: _coerce(c)})

    @staticmethod
    def var(name: str) -> "Polynomial":
        return Polynomial({Monomial.var(name): Fraction(1)})

    def with_order(self, order: MonomialOrder | None) -> "Polynomial":
        p = Polynomial.__new__(Polynomial)
        p.terms = self.terms
        p.order = order
        p._hash = None
        return p

    # predicates / inspection
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m.is_one() for m in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.terms[_ONE_MONO]

    def variables(self) -> tuple[str, ...]:
        vs = set()
        for m in self.terms:
            vs.update(m.variables())
        return tuple(sorted(vs))

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(m.degree() for m in self.terms)

    def degree_in(self, var: str) -> int:
        if not self.terms:
            return 0
        return max(m.exponent(var) for m in self.terms)

    def effective_order(self) -> MonomialOrder:
        o = self.order or default_order(self.variables())
        return o.extended(self.variables())

    def leading(self, order: MonomialOrder | None = None) -> tuple[Monomial, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        o = (order or self.effective_order()).extended(self.variables())
        m = max(self.terms, key=o.key)
        return m, self.terms[m]

    def sorted_terms(self, order: MonomialOrder | None = None) -> list[tuple[Monomial, Fraction]]:
        o = (order or self.effective_order()).extended(self.variables())
        return [(m, self.terms[m]) for m in sorted(self.terms, key=o.key, reverse=True)]

    # arithmetic
    def __add__(self, other):
        other = _as_poly(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m, _F0) + c
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        return Polynomial(t, self.order or other.order)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()}, self.order)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.terms or not other.terms:
            return Polynomial({}, self.order or other.order)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        t: dict[Monomial, Fraction] = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = ma.mul(mb)
                s = t.get(m, _F0) + ca * cb
                if s:
                    t[m] = s
                else:
                    t.pop(m, None)
        return Polynomial(t, self.order or other.order)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.const(1).with_order(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return self.canonical_str()

    # calculus / evaluation / substitution
    def diff(self, var: str) -> "Polynomial":
        t = {}
        for m, c in self.terms.items():
            e = m.exponent(var)
            if e:
                reduced = Monomial([(v, p - 1 if v == var else p) for v, p in m.exps])
                s = t.get(reduced, _F0) + c * e
                if s:
                    t[reduced] = s
                else:
                    t.pop(reduced, None)
        return Polynomial(t, self.order)

    def evaluate(self, assignment: Mapping[str, object]):
        """Evaluate at a point. Exact when every value is Fraction/int."""
        total = None
        for m, c in self.terms.items():
            v = Fraction(c)
            acc = v
            for var, e in m.exps:
                acc = acc * assignment[var] ** e
            total = acc if total is None else total + acc
        if total is None:
            return Fraction(0)
        return total

    def subs(self, mapping: Mapping[str, object]) -> "Polynomial":
        """Substitute variables by polynomials or rational constants."""
        if not mapping:
            return self
        polys = {v: (p if isinstance(p, Polynomial) else Polynomial.const(p))
                 for v, p in mapping.items()}
        out = Polynomial({}, self.order)
        for m, c in self.terms.items():
            acc = Polynomial.const(c)
            rest = []
            for var, e in m.exps:
                if var in polys:
                    acc = acc * polys[var] ** e
                else:
                    rest.append((var, e))
            if rest:
                acc = acc * Polynomial({Monomial(rest): Fraction(1)})
            out = out + acc
        return out.with_order(self.order)

    def rename(self, mapping: Mapping[str, str]) -> "Polynomial":
        t = {}
        for m, c in self.terms.items():
            nm = Monomial([(mapping.get(v, v), e) for v, e in m.exps])
            if nm in t:
                raise ValueError("rename collides on %r" % (nm,))
            t[nm] = c
        return Polynomial(t)

    # normalization
    def content_primitive(self) -> tuple[Fraction, "Polynomial"]:
        """f = content * primitive with integer primitive coefficients, content
        carrying the sign so the primitive's canonical leading coefficient is positive."""
        if not self.terms:
            return Fraction(0), self
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = gcd(num, c.numerator * den // c.denominator)
        content = Fraction(num, den)
        prim = {m: Fraction(c / content) for m, c in self.terms.items()}
        p = Polynomial(prim, self.order)
        lm, lc = p.leading(default_order(p.variables()))
        if lc < 0:
            p = -p
            content = -content
        return content, p

    def primitive(self) -> "Polynomial":
        return self.content_primitive()[1]

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if not self.terms:
            return self
        _, lc = self.leading(order)
        if lc == 1:
            return self
        return Polynomial({m: c / lc for m, c in self.terms.items()}, self.order)

    # canonical text form
    def canonical_str(self) -> str:
        if not self.terms:
            return "0"
        o = default_order(self.variables())
        parts = []
        for i, (m, c) in enumerate(self.sorted_terms(o)):
            mono = repr(m)
            mag = abs(c)
            if m.is_one():
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = "%s*%s" % (mag, mono)
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)


_F0 = Fraction(0)


def _as_poly(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial.const(x)
    raise TypeError("cannot treat %r as a polynomial" % (x,))


# --- expression parser ------------------------------------------------------
# Accepts a superset of canonical_str output: +, -, *, /, ^, parentheses,
# integer/decimal/a-b rational literals, identifiers [A-Za-z_][A-Za-z0-9_]*.

class PolynomialParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__("%s (at position %d)" % (message, position))
        self.position = position


def _tokenize(s: str):
    tokens = []
    i, n = 0, len(s)
    while i < n:
        ch = s[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*/^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and s[i + 1].isdigit()):
            j = i
            seen_dot = False
            while j < n and (s[j].isdigit() or (s[j] == "." and not seen_dot)):
                if s[j] == ".":
                    seen_dot = True
                j += 1
            tokens.append(("num", s[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (s[j].isalnum() or s[j] == "_"):
                j += 1
            tokens.append(("ident", s[i:j], i))
            i = j
            continue
        raise PolynomialParseError("unexpected character %r" % ch, i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, s: str):
        self.tokens = _tokenize(s)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise PolynomialParseError("expected %s, found %r" % (kind, tok[1] or "end"), tok[2])
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise PolynomialParseError("trailing input %r" % tok[1], tok[2])
        return p

    def expr(self) -> Polynomial:
        kind, _, _ = self.peek()
        negate = False
        if kind in ("+", "-"):
            negate = kind == "-"
            self.take()
        p = self.term()
        if negate:
            p = -p
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            q = self.factor()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise PolynomialParseError("division only by nonzero constants", self.peek()[2])
                p = p * Polynomial.const(1 / q.constant_value())
        return p

    def factor(self) -> Polynomial:
        p = self.base()
        if self.peek()[0] == "^":
            self.take()
            neg = False
            if self.peek()[0] == "-":
                self.take()
                neg = True
            tok = self.take("num")
            if "." in tok[1] or neg:
                raise PolynomialParseError("exponent must be a non-negative integer", tok[2])
            p = p ** int(tok[1])
        return p

    def base(self) -> Polynomial:
        kind, text, pos = self.peek()
        if kind == "num":
            self.take()
            return Polynomial.const(Fraction(text))
        if kind == "ident":
            self.take()
            return Polynomial.var(text)
        if kind == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        if kind == "-":
            self.take()
            return -self.base()
        raise PolynomialParseError("expected a number, variable or '('", pos)


def parse_polynomial(s: str) -> Polynomial:
    return _Parser(s).parse()
