"""Text syntax shared by every file format.

Scalars: ``12``, ``-3/4``, ``a+b*sqrt(D)`` (either term may be absent).
Polynomials: ``[c0,c1,...,cn]`` ascending; an entry may itself be a
polynomial (coefficients in an inner variable) or a quotient ``[..]/[..]``.
"""

from __future__ import annotations

import re

from gmpy2 import mpq

from .poly import Poly
from .scalars import QuadExt, Rat, rat


class SyntaxParseError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.pos = pos


# ------------------------------------------------------------------ scalars
def format_rat(x) -> str:
    x = rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_scalar(x) -> str:
    if isinstance(x, QuadExt):
        if not x.b:
            return format_rat(x.a)
        b = rat(x.b)
        surd = f"sqrt({x.D})"
        mag = "" if abs(b) == 1 else format_rat(abs(b)) + "*"
        if not x.a:
            return ("-" if b < 0 else "") + mag + surd
        return format_rat(x.a) + ("-" if b < 0 else "+") + mag + surd
    if hasattr(x, "field") and hasattr(x, "code"):
        return str(x.code)
    return format_rat(x)


_RAT = r"\d+(?:/\d+)?"
_TERM = re.compile(rf"([+-]?)(?:({_RAT})(\*sqrt\((-?\d+)\))?|sqrt\((-?\d+)\))")


def parse_scalar(text: str, _offset: int = 0):
    """Parse a rational or an element of Q(sqrt(D)) in the syntax above."""
    s = text.replace(" ", "")
    if not s:
        raise SyntaxParseError("empty scalar", text, _offset)
    pos = 0
    a, b, D = mpq(0), mpq(0), None
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (pos > 0 and not m.group(1)):
            raise SyntaxParseError("malformed scalar", text, _offset + pos)
        sign = -1 if m.group(1) == "-" else 1
        if m.group(5) is not None:
            coef, d = mpq(1), int(m.group(5))
        else:
            coef = rat(m.group(2))
            d = int(m.group(4)) if m.group(3) else None
        if d is None:
            a += sign * coef
        else:
            if D is not None and d != D:
                raise SyntaxParseError("two different radicands", text, _offset + pos)
            D = d
            b += sign * coef
        pos = m.end()
    if D is None or not b:
        return a
    return QuadExt(a, b, D)


# -------------------------------------------------------------- polynomials
def format_poly(f) -> str:
    from .ratfunc import RatFunc

    if isinstance(f, RatFunc):
        if f.is_polynomial():
            return format_poly(f.num)
        return format_poly(f.num) + "/" + format_poly(f.den)
    if isinstance(f, Poly):
        return "[" + ",".join(format_poly(c) for c in f.coeffs) + "]"
    return format_scalar(f)


def parse_poly(text: str, variables: tuple[str, ...] = ("x", "t")):
    """Parse the nested list syntax; ``variables[0]`` names the outermost level.

    Returns a Poly, RatFunc (for ``[..]/[..]``) or scalar.
    """
    value, pos = _parse_value(text, 0, variables)
    if text[pos:].strip():
        raise SyntaxParseError("trailing characters", text, pos)
    return value


def _skip(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _parse_value(text: str, pos: int, variables: tuple[str, ...]):
    from .ratfunc import RatFunc

    pos = _skip(text, pos)
    if pos < len(text) and text[pos] == "[":
        num, pos = _parse_list(text, pos, variables)
        pos = _skip(text, pos)
        if pos < len(text) and text[pos] == "/":
            pos = _skip(text, pos + 1)
            if pos >= len(text) or text[pos] != "[":
                raise SyntaxParseError("expected '[' after '/'", text, pos)
            den, pos = _parse_list(text, pos, variables)
            if not den:
                raise SyntaxParseError("zero denominator", text, pos)
            return RatFunc(num, den), pos
        return num, pos
    end = pos
    depth = 0
    while end < len(text):
        ch = text[end]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in ",]":
            break
        end += 1
    return parse_scalar(text[pos:end], pos), end


def _parse_list(text: str, pos: int, variables: tuple[str, ...]):
    from .ratfunc import RatFunc, as_ratfunc

    var = variables[0] if variables else "x"
    inner = variables[1:] or ("x",)
    assert text[pos] == "["
    pos = _skip(text, pos + 1)
    coeffs = []
    if pos < len(text) and text[pos] == "]":
        return Poly((), var), pos + 1
    while True:
        value, pos = _parse_value(text, pos, inner)
        coeffs.append(value)
        pos = _skip(text, pos)
        if pos >= len(text):
            raise SyntaxParseError("unterminated list", text, pos)
        if text[pos] == ",":
            pos += 1
            continue
        if text[pos] == "]":
            if any(isinstance(c, RatFunc) for c in coeffs):
                coeffs = [as_ratfunc(c, inner[0]) for c in coeffs]
            return Poly(coeffs, var), pos + 1
        raise SyntaxParseError("expected ',' or ']'", text, pos)


def is_rat(x) -> bool:
    return isinstance(x, (int, Rat)) or type(x).__name__ == "mpz"
