"""Text formats: algebra files, subsets, ultimately periodic sets, functions.

The grammars are documented in docs/formats.md.
"""
from __future__ import annotations

import re
from pathlib import Path

from .algebra import FiniteAlgebra, Operation
from .arith import NatFun, floor_e_factorial, zigzag_g
from .upset import UpSet


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


# --------------------------------------------------------------------------
# algebras
# --------------------------------------------------------------------------

def _tokens(line: str) -> list[tuple[int, str]]:
    return [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]


def _int(tok: tuple[int, str], lineno: int, what: str) -> int:
    col, text = tok
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"expected integer {what}, got {text!r}", lineno, col) from None


def parse_algebra(text: str) -> FiniteAlgebra:
    """``carrier n`` then, per operation, ``op name arity`` and a line of values.

    Blank lines and ``#`` comments are ignored.
    """
    lines = [(i + 1, ln.split("#", 1)[0]) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln.strip()]
    if not lines:
        raise ParseError("empty algebra description")
    lineno, first = lines[0]
    toks = _tokens(first)
    if len(toks) != 2 or toks[0][1] != "carrier":
        raise ParseError("expected 'carrier <n>'", lineno, toks[0][0])
    n = _int(toks[1], lineno, "carrier size")
    if n < 1:
        raise ParseError("carrier size must be positive", lineno, toks[1][0])
    ops: list[Operation] = []
    pos = 1
    while pos < len(lines):
        lineno, header = lines[pos]
        toks = _tokens(header)
        if len(toks) != 3 or toks[0][1] != "op":
            raise ParseError("expected 'op <name> <arity>'", lineno, toks[0][0])
        name = toks[1][1]
        if any(o.name == name for o in ops):
            raise ParseError(f"duplicate operation name {name!r}", lineno, toks[1][0])
        arity = _int(toks[2], lineno, "arity")
        if arity < 0:
            raise ParseError("arity must be non-negative", lineno, toks[2][0])
        if pos + 1 >= len(lines):
            raise ParseError(f"missing table for operation {name!r}", lineno, len(header) + 1)
        lineno, body = lines[pos + 1]
        vals = _tokens(body)
        if len(vals) != n**arity:
            raise ParseError(f"operation {name!r} needs {n**arity} values, got {len(vals)}", lineno, 1)
        table = []
        for tok in vals:
            v = _int(tok, lineno, "table entry")
            if not 0 <= v < n:
                raise ParseError(f"value {v} outside carrier [0, {n})", lineno, tok[0])
            table.append(v)
        ops.append(Operation(name, arity, tuple(table)))
        pos += 2
    return FiniteAlgebra(n, tuple(ops))


def load_algebra(path: str | Path) -> FiniteAlgebra:
    return parse_algebra(Path(path).read_text())


def format_algebra(alg: FiniteAlgebra) -> str:
    out = [f"carrier {alg.size}"]
    for op in alg.operations:
        out.append(f"op {op.name} {op.arity}")
        out.append(" ".join(map(str, op.table)))
    return "\n".join(out) + "\n"


def parse_subset(text: str, n: int | None = None) -> int:
    """Comma-separated elements (braces optional) as a bitmask."""
    body = text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    mask = 0
    col = 1
    for part in body.split(","):
        s = part.strip()
        if s:
            if not s.isdigit():
                raise ParseError(f"expected element, got {s!r}", 1, col)
            x = int(s)
            if n is not None and x >= n:
                raise ParseError(f"element {x} outside carrier [0, {n})", 1, col)
            mask |= 1 << x
        col += len(part) + 1
    return mask


# --------------------------------------------------------------------------
# ultimately periodic sets
# --------------------------------------------------------------------------

_NUMS = r"\s*(\d+(?:\s*,\s*\d+)*)?\s*"
_UP = re.compile(r"up\(\s*a\s*=\s*(\d+)\s*,\s*k\s*=\s*(\d+)\s*,\s*F\s*=\s*\{" + _NUMS + r"\}\s*,\s*D\s*=\s*\{" + _NUMS + r"\}\s*\)")
_QUAD = re.compile(r"\{" + _NUMS + r"\}\s*;\s*(\d+)\s*;\s*(\d+)\s*;\s*\{" + _NUMS + r"\}")
_FINITE = re.compile(r"(?:finite)?\{" + _NUMS + r"\}")
_FIN_TAIL = re.compile(r"\{" + _NUMS + r"\}\s*\+\s*U\(\s*(\d+)\s*\)")
_PROG = re.compile(r"(\d+)\s*\+\s*(\d*)\s*N")
_NAT = re.compile(r"N")


def _nums(group: str | None) -> list[int]:
    return [int(t) for t in group.split(",")] if group else []


def _parse_term(term: str, col: int) -> UpSet:
    s = term.strip()
    lead = len(term) - len(term.lstrip())
    try:
        if m := _UP.fullmatch(s):
            return UpSet(int(m[1]), int(m[2]), frozenset(_nums(m[3])), frozenset(_nums(m[4])))
        if m := _QUAD.fullmatch(s):
            return UpSet(int(m[2]), int(m[3]), frozenset(_nums(m[1])), frozenset(_nums(m[4])))
        if m := _FIN_TAIL.fullmatch(s):
            return UpSet.of_finite(_nums(m[1])) | UpSet.final_segment(int(m[2]))
        if m := _FINITE.fullmatch(s):
            return UpSet.of_finite(_nums(m[1]))
        if m := _PROG.fullmatch(s):
            r = int(m[2]) if m[2] else 1
            if r == 0:
                return UpSet.of_finite({int(m[1])})
            return UpSet.progression(int(m[1]), r)
        if _NAT.fullmatch(s):
            return UpSet.naturals()
    except ValueError as exc:
        raise ParseError(str(exc), 1, col + lead) from None
    raise ParseError(f"cannot read {s!r} as an ultimately periodic set", 1, col + lead)


def parse_upset(text: str) -> UpSet:
    """A ``|``-separated union of terms; see docs/formats.md."""
    if not text.strip():
        raise ParseError("empty set description")
    out = UpSet.empty()
    col = 1
    depth = 0
    start = 0
    for i, ch in enumerate(text + "|"):
        if ch in "{(":
            depth += 1
        elif ch in "})":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unmatched {ch!r}", 1, i + 1)
        elif ch == "|" and depth == 0:
            out = out | _parse_term(text[start:i], col)
            start = i + 1
            col = i + 2
    if depth:
        raise ParseError("unclosed bracket", 1, len(text) + 1)
    return out


# --------------------------------------------------------------------------
# functions N -> N
# --------------------------------------------------------------------------

def parse_function(spec: str, N: int) -> NatFun:
    """``id``, ``const:c``, ``zigzag_g``, ``floor_e_fact``, ``poly:c0,c1,...`` or a file path."""
    s = spec.strip()
    if s == "id":
        return NatFun.tabulate(lambda x: x, N, "id")
    if s.startswith("const:"):
        c = s[6:]
        if not c.isdigit():
            raise ParseError(f"bad constant {c!r}", 1, 7)
        return NatFun.tabulate(lambda x: int(c), N, s)
    if s == "zigzag_g":
        return zigzag_g(N)
    if s == "floor_e_fact":
        return NatFun.tabulate(floor_e_factorial, N, s)
    if s.startswith("poly:"):
        try:
            coeffs = [int(t) for t in s[5:].split(",")]
        except ValueError:
            raise ParseError(f"bad coefficient list {s[5:]!r}", 1, 6) from None
        if any(c < 0 for c in coeffs):
            raise ParseError("coefficients must be non-negative", 1, 6)
        return NatFun.tabulate(lambda x: sum(c * x**i for i, c in enumerate(coeffs)), N, s)
    path = Path(s)
    if not path.is_file():
        raise ParseError(f"unknown function {s!r} (not a built-in name or a file)", 1, 1)
    vals = []
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        t = line.strip()
        if not t or t.startswith("#"):
            continue
        if not t.isdigit():
            raise ParseError(f"expected a natural number, got {t!r}", lineno, 1)
        vals.append(int(t))
    if len(vals) < N:
        raise ParseError(f"file gives {len(vals)} values, window needs {N}", len(vals) + 1, 1)
    return NatFun(tuple(vals[:N]), path.name)
