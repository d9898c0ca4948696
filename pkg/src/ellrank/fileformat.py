"""Key = value text files for curves, quartics and point lists.

Lines are ``key = value``; ``#`` starts a comment.  Values use the scalar and
list syntax of :mod:`ellrank.algebra.syntax`, with ``var`` naming the
function-field variable (default ``t``).
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .algebra import Poly, RatFunc, as_ratfunc, format_poly, parse_poly
from .algebra.syntax import SyntaxParseError


class FileFormatError(ValueError):
    pass


def read_kv(text: str, source: str = "<text>") -> list[tuple[str, str, int]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise FileFormatError(f"{source}:{lineno}: expected 'key = value'")
        key, value = line.split("=", 1)
        out.append((key.strip(), value.strip(), lineno))
    if not out:
        raise FileFormatError(f"{source}: empty file")
    return out


def kv_dict(text: str, source: str = "<text>") -> dict[str, str]:
    return {k: v for k, v, _ in read_kv(text, source)}


def parse_function(value: str, var: str, source: str = "<text>", lineno: int = 0) -> RatFunc:
    """A scalar, ``[..]`` or ``[..]/[..]`` in the variable ``var``, as a RatFunc."""
    try:
        obj = parse_poly(value, (var, "x"))
    except SyntaxParseError as exc:
        raise FileFormatError(f"{source}:{lineno}: {exc}") from None
    return as_ratfunc(obj, var)


def format_function(f) -> str:
    if isinstance(f, RatFunc) and f.is_constant():
        return format_poly(f.num)
    return format_poly(f)


def read_fixture(name: str) -> str:
    return resources.files("ellrank.fixtures").joinpath(name).read_text()


def load_text(path_or_name: str) -> tuple[str, str]:
    """Read a file path, falling back to a bundled fixture name."""
    p = Path(path_or_name)
    if p.exists():
        return p.read_text(), str(p)
    try:
        return read_fixture(path_or_name), path_or_name
    except FileNotFoundError:
        raise FileFormatError(f"no such file or fixture: {path_or_name}") from None


def parse_curve_file(text: str, source: str = "<text>"):
    """Return a WeierstrassCurve or QuarticModel described by the file."""
    from .ellcurve import WeierstrassCurve
    from .mestre import QuarticModel

    entries = read_kv(text, source)
    d = {k: (v, n) for k, v, n in entries}
    var = d.get("var", ("t", 0))[0]
    kind = d.get("kind", ("weierstrass", 0))[0]
    if kind == "quartic":
        coeffs = []
        for i in range(5):
            if f"r{i}" not in d:
                raise FileFormatError(f"{source}: missing r{i}")
            v, n = d[f"r{i}"]
            coeffs.append(parse_function(v, var, source, n))
        return QuarticModel(tuple(coeffs), var=var)
    if kind != "weierstrass":
        raise FileFormatError(f"{source}: unknown kind {kind!r}")
    a = []
    for name in ("a1", "a2", "a3", "a4", "a6"):
        v, n = d.get(name, ("[]", 0))
        a.append(parse_function(v, var, source, n))
    return WeierstrassCurve(*a)


def format_curve_file(curve) -> str:
    from .mestre import QuarticModel

    if isinstance(curve, QuarticModel):
        lines = ["kind = quartic", f"var = {curve.var}"]
        lines += [f"r{i} = {format_function(c)}" for i, c in enumerate(curve.coeffs)]
        return "\n".join(lines) + "\n"
    var = curve.var or "t"
    lines = ["kind = weierstrass", f"var = {var}"]
    for name, c in zip(("a1", "a2", "a3", "a4", "a6"), curve.a):
        lines.append(f"{name} = {format_function(as_ratfunc(c, var))}")
    return "\n".join(lines) + "\n"


def parse_point(value: str, var: str, source: str = "<text>", lineno: int = 0):
    """``X ; Y`` (or ``O``) into a pair of RatFuncs, None for the point at infinity."""
    if value.strip() in ("O", "0:1:0"):
        return None
    if ";" not in value:
        raise FileFormatError(f"{source}:{lineno}: point must be 'X ; Y'")
    xs, ys = value.split(";", 1)
    return parse_function(xs, var, source, lineno), parse_function(ys, var, source, lineno)


def parse_points_file(text: str, source: str = "<text>") -> tuple[str, list]:
    entries = read_kv(text, source)
    var = next((v for k, v, _ in entries if k == "var"), "t")
    pts = [parse_point(v, var, source, n) for k, v, n in entries if k == "point"]
    return var, pts


def format_point(P) -> str:
    if P is None:
        return "O"
    return f"{format_function(P[0])} ; {format_function(P[1])}"


__all__ = [
    "FileFormatError",
    "Poly",
    "format_curve_file",
    "format_function",
    "format_point",
    "kv_dict",
    "load_text",
    "parse_curve_file",
    "parse_function",
    "parse_point",
    "parse_points_file",
    "read_fixture",
    "read_kv",
]
