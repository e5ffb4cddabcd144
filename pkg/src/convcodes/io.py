"""Text formats: ``.ccode`` codes, ``.iso`` realizations, symbol streams and reports.

All formats are line oriented, ignore blank lines and treat ``#`` as the
start of a comment.  Field elements are written as their integer encodings.

``.ccode``::

    field 2 1
    params 3 2
    generator
    1 ; 1 ; 0 1
    0 0 1 ; 1 ; 1 1

``.iso``::

    field 2 1
    dims 3 2 3
    coords 2 0 1
    A
    0 1 0
    ...
    B
    ...

Streams hold one time step per line with ``?`` for an erased symbol.
Reports are ``key: value`` lines.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .channels import ERASED
from .code import ConvolutionalCode
from .galois import GF, field_create
from .poly import Poly, PolyMatrix
from .sysrep import IsoRep


class FormatError(ValueError):
    """A file does not follow the expected text format."""


def _lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _ints(tokens: Iterable[str], what: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"expected integers in {what}") from None


# -- field


def format_field(F: GF) -> str:
    if F.N == 1:
        return f"field {F.p} 1"
    return f"field {F.p} {F.N} " + " ".join(str(c) for c in F.modulus)


def parse_field(line: str) -> GF:
    parts = line.split()
    if not parts or parts[0] != "field" or len(parts) < 3:
        raise FormatError(f"expected 'field p N [modulus]', got {line!r}")
    p, N, *mod = _ints(parts[1:], "field line")
    if mod and len(mod) != N + 1:
        raise FormatError(f"modulus needs {N + 1} coefficients")
    try:
        return field_create(p, N, tuple(mod) if mod else None)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


# -- polynomials


def format_poly(p: Poly) -> str:
    return " ".join(str(int(c)) for c in p.coeffs) if not p.is_zero() else "0"


def parse_poly(F: GF, text: str) -> Poly:
    coeffs = _ints(text.split(), "polynomial literal")
    if not coeffs:
        raise FormatError("empty polynomial literal")
    try:
        F.validate(np.array(coeffs, dtype=np.int64))
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    return Poly(F, coeffs)


def format_poly_row(row: Iterable[Poly]) -> str:
    return " ; ".join(format_poly(p) for p in row)


def parse_poly_row(F: GF, line: str) -> list[Poly]:
    return [parse_poly(F, part) for part in line.split(";")]


def format_matrix(M: PolyMatrix) -> str:
    return "\n".join(format_poly_row(M.row(i)) for i in range(M.rows))


# -- .ccode


def format_code(code: ConvolutionalCode, kind: str = "generator",
                header: Iterable[str] = ()) -> str:
    if kind == "generator":
        M = code.G
    elif kind == "paritycheck":
        M = code.H
        if M is None:
            raise ValueError("catastrophic code has no parity-check matrix")
    else:
        raise ValueError("kind must be 'generator' or 'paritycheck'")
    lines = [f"# {h}" for h in header]
    lines += [format_field(code.field), f"params {code.n} {code.k}", kind, format_matrix(M)]
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> ConvolutionalCode:
    lines = _lines(text)
    if len(lines) < 3:
        raise FormatError("a .ccode file needs field, params and kind lines")
    F = parse_field(lines[0])
    parts = lines[1].split()
    if len(parts) != 3 or parts[0] != "params":
        raise FormatError(f"expected 'params n k', got {lines[1]!r}")
    n, k = _ints(parts[1:], "params line")
    kind = lines[2]
    if kind not in ("generator", "paritycheck"):
        raise FormatError(f"expected 'generator' or 'paritycheck', got {kind!r}")
    rows = [parse_poly_row(F, ln) for ln in lines[3:]]
    want = k if kind == "generator" else n - k
    if len(rows) != want:
        raise FormatError(f"expected {want} matrix rows, found {len(rows)}")
    if any(len(r) != n for r in rows):
        raise FormatError(f"every row needs {n} entries")
    M = PolyMatrix.from_entries(F, rows)
    try:
        if kind == "generator":
            return ConvolutionalCode(M)
        return ConvolutionalCode.from_parity_check(M)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def read_code(path) -> ConvolutionalCode:
    with open(path) as fh:
        return parse_code(fh.read())


def write_code(path, code: ConvolutionalCode, kind: str = "generator", header=()):
    with open(path, "w") as fh:
        fh.write(format_code(code, kind, header))


# -- .iso


def format_iso(sys: IsoRep) -> str:
    lines = [format_field(sys.field), f"dims {sys.s} {sys.k} {sys.n}"]
    if sys.coords is not None:
        lines.append("coords " + " ".join(str(c) for c in sys.coords))
    for name, M in (("A", sys.A), ("B", sys.B), ("C", sys.C), ("D", sys.D)):
        lines.append(name)
        lines.extend(" ".join(str(int(x)) for x in row) for row in M if len(row))
    return "\n".join(lines) + "\n"


def parse_iso(text: str) -> IsoRep:
    lines = _lines(text)
    if len(lines) < 2:
        raise FormatError("an .iso file needs field and dims lines")
    F = parse_field(lines[0])
    parts = lines[1].split()
    if len(parts) != 4 or parts[0] != "dims":
        raise FormatError(f"expected 'dims s k n', got {lines[1]!r}")
    s, k, n = _ints(parts[1:], "dims line")
    rest = lines[2:]
    coords = None
    if rest and rest[0].startswith("coords"):
        coords = _ints(rest[0].split()[1:], "coords line")
        rest = rest[1:]
    shapes = {"A": (s, s), "B": (k, s), "C": (s, n - k), "D": (k, n - k)}
    mats: dict[str, np.ndarray] = {}
    cur = None
    for line in rest:
        if line in shapes:
            cur = line
            mats[cur] = []
            continue
        if cur is None:
            raise FormatError(f"matrix data before a matrix label: {line!r}")
        mats[cur].append(_ints(line.split(), f"matrix {cur}"))
    out = {}
    for name, shape in shapes.items():
        if name not in mats:
            raise FormatError(f"missing matrix {name}")
        rows = mats[name]
        arr = np.array(rows, dtype=np.int64).reshape(-1, shape[1]) if rows else \
            np.zeros((0, shape[1]), dtype=np.int64)
        if shape[1] == 0:
            arr = np.zeros(shape, dtype=np.int64)
        if arr.shape != shape:
            raise FormatError(f"matrix {name} should be {shape[0]}x{shape[1]}")
        out[name] = arr
    try:
        return IsoRep(F, out["A"], out["B"], out["C"], out["D"], coords)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def read_iso(path) -> IsoRep:
    with open(path) as fh:
        return parse_iso(fh.read())


def write_iso(path, sys: IsoRep):
    with open(path, "w") as fh:
        fh.write(format_iso(sys))


# -- streams


def format_stream(values) -> str:
    values = np.atleast_2d(np.asarray(values, dtype=np.int64))
    lines = [" ".join("?" if v == ERASED else str(int(v)) for v in row) for row in values]
    return "\n".join(lines) + "\n"


def parse_stream(text: str, n: int | None = None, field: GF | None = None) -> np.ndarray:
    rows = []
    for line in _lines(text):
        toks = line.split()
        try:
            rows.append([ERASED if t == "?" else int(t) for t in toks])
        except ValueError:
            raise FormatError(f"bad stream token in {line!r}") from None
    if not rows:
        return np.zeros((0, n or 0), dtype=np.int64)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise FormatError("stream lines have different widths")
    if n is not None and width != n:
        raise FormatError(f"stream width {width} does not match n = {n}")
    arr = np.array(rows, dtype=np.int64)
    if field is not None:
        vals = arr[arr != ERASED]
        if vals.size and (vals.min() < 0 or vals.max() >= field.q):
            raise FormatError(f"stream symbol outside {field}")
    return arr


def read_stream(path, n=None, field=None) -> np.ndarray:
    with open(path) as fh:
        return parse_stream(fh.read(), n, field)


def write_stream(path, values):
    with open(path, "w") as fh:
        fh.write(format_stream(values))


# -- reports


def _report_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return " ".join(_report_value(x) for x in v)
    if isinstance(v, np.ndarray):
        return " ".join(str(int(x)) for x in v.reshape(-1))
    return str(v)


def format_report(items) -> str:
    pairs = items.items() if isinstance(items, dict) else items
    return "".join(f"{k}: {_report_value(v)}\n" for k, v in pairs)


def parse_report(text: str) -> dict[str, str]:
    out = {}
    for line in _lines(text):
        if ":" not in line:
            raise FormatError(f"report line without a key: {line!r}")
        k, v = line.split(":", 1)
        out[k.strip()] = v.strip()
    return out
