"""
Exact arithmetic in the field Q(v) of rational functions in one variable v.

The base variable is the square root of the Hecke parameter, so the parameter
itself is q = v^2 and every half-integer power of q is an honest polynomial.
A value is a pair of integer-coefficient polynomials (numerator, denominator)
kept in canonical form, which makes equality and hashing plain tuple work:

- the denominator is never the zero polynomial,
- gcd(numerator, denominator) = 1,
- the integer content of the pair is 1,
- the leading coefficient of the denominator is positive.

Polynomials are dense coefficient tuples starting with the constant term,
as in ``(0, 0, 1)`` for v^2.  Degrees stay small at the scales this package
targets, so the gcd is a primitive-PRS Euclid over the integers.

>>> print(DELTA * (ONE + Q) ** 2)
v^2
>>> print(parse_scalar("q/(1+q)^2"))
v^2/(v^4+2*v^2+1)
>>> parse_scalar("-v/(1+v^2)") == -V / (ONE + Q)
True
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import DivisionByZero, ParseError

# ---------------------------------------------------------------------------
# dense integer polynomials as tuples, constant term first


def _ptrim(coeffs) -> tuple[int, ...]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _padd(a, b):
    n = max(len(a), len(b))
    return _ptrim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def _pneg(a):
    return tuple(-c for c in a)


def _psub(a, b):
    return _padd(a, _pneg(b))


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c == 0:
            continue
        for j, d in enumerate(b):
            out[i + j] += c * d
    return _ptrim(out)


def _pcontent(a) -> int:
    g = 0
    for c in a:
        g = math.gcd(g, c)
    return g


def _pprimitive(a):
    """Primitive part with positive leading coefficient."""
    if not a:
        return ()
    g = _pcontent(a)
    if a[-1] < 0:
        g = -g
    return tuple(c // g for c in a)


def _ppseudo_rem(a, b):
    """Pseudo-remainder of a by b (b nonzero), integer arithmetic only."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and _ptrim(a):
        da, la = len(a) - 1, a[-1]
        a = [c * lb for c in a]
        for i, d in enumerate(b):
            a[da - db + i] -= la * d
        a = list(_ptrim(a))
    return _ptrim(a)


def _pgcd(a, b):
    """Primitive gcd over the integers, positive leading coefficient."""
    a, b = _pprimitive(a), _pprimitive(b)
    while b:
        a, b = b, _pprimitive(_ppseudo_rem(a, b))
    return a


def _pdiv_exact(a, b):
    """Exact quotient a/b in Z[v]; the caller guarantees divisibility, so
    every intermediate leading coefficient divides evenly."""
    if not a:
        return ()
    quo = [0] * (len(a) - len(b) + 1)
    rem = list(a)
    lb = b[-1]
    for k in range(len(quo) - 1, -1, -1):
        t, r = divmod(rem[k + len(b) - 1], lb)
        assert r == 0, "inexact polynomial division"
        quo[k] = t
        if t:
            for i, d in enumerate(b):
                rem[k + i] -= t * d
    assert not any(rem), "inexact polynomial division"
    return _ptrim(quo)


def _normalize_content(num, den):
    """Divide out the joint integer content and fix the denominator sign."""
    c = math.gcd(_pcontent(num), _pcontent(den))
    if den[-1] < 0:
        c = -c
    if c != 1:
        num = tuple(x // c for x in num)
        den = tuple(x // c for x in den)
    return num, den


def _peval(a, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _pshift(a, k):
    """Multiply by v^k (k >= 0)."""
    return ((0,) * k + tuple(a)) if a else ()


def _prev(a):
    """v^deg(a) * a(1/v)."""
    return _ptrim(reversed(a))


def _pfmt(a) -> str:
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        c = abs(c)
        if i == 0:
            body = str(c)
        else:
            var = "v" if i == 1 else f"v^{i}"
            body = var if c == 1 else f"{c}*{var}"
        parts.append(sign + body)
    return "".join(parts)


# ---------------------------------------------------------------------------


class Scalar:
    """An element of Q(v), always stored in canonical form.

    >>> Scalar.from_int(2) + Scalar.from_int(3)
    Scalar('5')
    >>> (V ** 2 / (ONE + V ** 2)).bar()
    Scalar('1/(v^2+1)')
    >>> V * V == Q
    True
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=(1,)):
        num, den = _ptrim(num), _ptrim(den)
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            den = (1,)
        else:
            if len(den) > 1 and len(num) > 1:
                g = _pgcd(num, den)
                if len(g) > 1:
                    num, den = _pdiv_exact(num, g), _pdiv_exact(den, g)
            num, den = _normalize_content(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _reduced(cls, num, den) -> "Scalar":
        """Fast constructor for num/den already coprime over Q(v)."""
        self = object.__new__(cls)
        num, den = _ptrim(num), _ptrim(den)
        if not num:
            den = (1,)
        else:
            num, den = _normalize_content(num, den)
        self.num = num
        self.den = den
        self._hash = None
        return self

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_int(cls, n: int) -> "Scalar":
        return cls((n,)) if n else cls(())

    @classmethod
    def from_fraction(cls, x) -> "Scalar":
        x = Fraction(x)
        return cls((x.numerator,), (x.denominator,))

    @staticmethod
    def _coerce(x):
        if isinstance(x, Scalar):
            return x
        if isinstance(x, int):
            return Scalar.from_int(x)
        if isinstance(x, Fraction):
            return Scalar.from_fraction(x)
        return None

    # -- ring structure ------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        b, d = self.den, other.den
        if b == d:
            t = _padd(self.num, other.num)
            if len(b) == 1:
                return Scalar._reduced(t, b)
            g2 = _pgcd(t, b)
            if len(g2) > 1:
                return Scalar._reduced(_pdiv_exact(t, g2), _pdiv_exact(b, g2))
            return Scalar._reduced(t, b)
        # t / (b d / g) with g = gcd(b, d); common factors of the sum live in g
        g = _pgcd(b, d) if (len(b) > 1 and len(d) > 1) else (1,)
        if len(g) > 1:
            db, dd = _pdiv_exact(b, g), _pdiv_exact(d, g)
        else:
            db, dd = b, d
        t = _padd(_pmul(self.num, dd), _pmul(other.num, db))
        g2 = _pgcd(t, g) if (len(g) > 1 and len(t) > 1) else (1,)
        if len(g2) > 1:
            t, g = _pdiv_exact(t, g2), _pdiv_exact(g, g2)
        return Scalar._reduced(t, _pmul(_pmul(db, dd), g))

    __radd__ = __add__

    def __neg__(self):
        return Scalar._reduced(_pneg(self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if not n1 or not n2:
            return ZERO
        # cross-cancel: each factor is already reduced
        if len(n1) > 1 and len(d2) > 1:
            g = _pgcd(n1, d2)
            if len(g) > 1:
                n1, d2 = _pdiv_exact(n1, g), _pdiv_exact(d2, g)
        if len(n2) > 1 and len(d1) > 1:
            g = _pgcd(n2, d1)
            if len(g) > 1:
                n2, d1 = _pdiv_exact(n2, g), _pdiv_exact(d1, g)
        return Scalar._reduced(_pmul(n1, n2), _pmul(d1, d2))

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        if not self.num:
            raise DivisionByZero("inverse of zero")
        return Scalar._reduced(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- involution and evaluation -------------------------------------------

    def bar(self) -> "Scalar":
        """The field automorphism v -> 1/v (hence q -> 1/q).

        >>> Q.bar() == ONE / Q
        True
        >>> DELTA.bar() == DELTA
        True
        """
        dn, dd = len(self.num) - 1, len(self.den) - 1
        num, den = _prev(self.num), _prev(self.den)
        if dd >= dn:
            num = _pshift(num, dd - dn)
        else:
            den = _pshift(den, dn - dd)
        return Scalar(num, den)

    def eval_at(self, v0) -> Fraction:
        """Exact value at a rational point v = v0.

        >>> DELTA.eval_at(1)
        Fraction(1, 4)
        """
        v0 = Fraction(v0)
        d = _peval(self.den, v0)
        if d == 0:
            raise DivisionByZero(f"denominator vanishes at v={v0}")
        return _peval(self.num, v0) / d

    # -- predicates, equality, text -------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == (1,) and self.den == (1,)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar('{format_scalar(self)}')"


ZERO = Scalar(())
ONE = Scalar((1,))
V = Scalar((0, 1))
Q = Scalar((0, 0, 1))
# the loop parameter: q/(1+q)^2, the value of f_s f_t f_s = DELTA * f_s
DELTA = Q / (ONE + Q) ** 2


@lru_cache(maxsize=None)
def delta_pow(k: int) -> Scalar:
    return DELTA ** k


@lru_cache(maxsize=None)
def qp1_pow(k: int) -> Scalar:
    return (ONE + Q) ** k


# ---------------------------------------------------------------------------
# text form: signed integers, v and q (= v^2), + - * / ^, parentheses


def format_scalar(s: Scalar) -> str:
    """Canonical text, ``P(v)`` or ``P(v)/(Q(v))``."""
    num = _pfmt(s.num)
    if s.den == (1,):
        return num
    if len([c for c in s.num if c != 0]) > 1:
        num = f"({num})"
    return f"{num}/({_pfmt(s.den)})"


class _ScalarParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise ParseError(msg, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at(self, chars) -> bool:
        ch = self.peek()
        return ch != "" and ch in chars

    def take(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.error("expected integer")
        return int(self.text[start:self.pos])

    def expr(self) -> Scalar:
        sign = 1
        while self.at("+-"):
            if self.peek() == "-":
                sign = -sign
            self.pos += 1
        out = self.term() * sign
        while self.at("+-"):
            op = self.peek()
            self.pos += 1
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self) -> Scalar:
        out = self.factor()
        while self.at("*/"):
            op = self.peek()
            self.pos += 1
            f = self.factor()
            out = out * f if op == "*" else out / f
        return out

    def factor(self) -> Scalar:
        base = self.primary()
        if self.peek() == "^":
            self.pos += 1
            return base ** self.integer()
        return base

    def primary(self) -> Scalar:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            out = self.expr()
            self.take(")")
            return out
        if ch == "v":
            self.pos += 1
            return V
        if ch == "q":
            self.pos += 1
            return Q
        if ch.isdigit():
            return Scalar.from_int(self.integer())
        self.error("expected a value")


def parse_scalar(text: str) -> Scalar:
    """Parse the scalar grammar; inverse of :func:`format_scalar`.

    >>> parse_scalar("q/(1+q)^2") == DELTA
    True
    >>> parse_scalar(format_scalar(DELTA ** 3)) == DELTA ** 3
    True
    """
    p = _ScalarParser(text)
    out = p.expr()
    p.skip_ws()
    if p.pos != len(text):
        p.error("trailing input")
    return out
