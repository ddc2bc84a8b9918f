"""Reading and writing dense complex matrices.

Two formats are supported:

* Matrix Market, ``array`` or ``coordinate`` layout with ``complex``,
  ``real`` or ``integer`` fields and ``general`` symmetry.
* JSON ``{"n": n, "entries": [[re, im], ...]}`` in row-major order.

Errors carry the 1-based line and column of the offending token.
"""

import json
import math
import os

import numpy as np

from .errors import NonSquare, ParseError

FORMATS = ("matrix-market", "json")
_EXTENSIONS = {".mtx": "matrix-market", ".mm": "matrix-market", ".json": "json"}


def detect_format(path):
    ext = os.path.splitext(str(path))[1].lower()
    try:
        return _EXTENSIONS[ext]
    except KeyError:
        raise ParseError(f"cannot infer matrix format from extension {ext!r}") from None


def read_matrix(path, fmt=None):
    fmt = fmt or detect_format(path)
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_matrix(text, fmt)


def parse_matrix(text, fmt):
    if fmt == "matrix-market":
        return parse_matrix_market(text)
    if fmt == "json":
        return parse_json(text)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def write_matrix(path, a, fmt=None):
    fmt = fmt or detect_format(path)
    text = format_matrix(a, fmt)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def format_matrix(a, fmt):
    if fmt == "matrix-market":
        return format_matrix_market(a)
    if fmt == "json":
        return format_json(a)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


# -- Matrix Market -----------------------------------------------------------


def _tokens(line):
    """(column, token) pairs with 1-based columns."""
    out = []
    i = 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace():
            j += 1
        out.append((i + 1, line[i:j]))
        i = j
    return out


def _number(tok, lineno, col, kind=float):
    try:
        val = int(tok) if kind is int else float(tok)
    except ValueError:
        raise ParseError(f"expected a number, got {tok!r}", lineno, col) from None
    if kind is float and not math.isfinite(val):
        raise ParseError(f"non-finite entry {tok!r}", lineno, col)
    return val


def parse_matrix_market(text):
    lines = text.splitlines()
    if not lines or not lines[0].lower().startswith("%%matrixmarket"):
        raise ParseError("missing %%MatrixMarket banner", 1, 1)
    banner = _tokens(lines[0])
    if len(banner) != 5:
        raise ParseError("banner must read: %%MatrixMarket matrix <layout> <field> <symmetry>", 1, 1)
    (_, head), (c1, obj), (c2, layout), (c3, field), (c4, sym) = banner
    if obj.lower() != "matrix":
        raise ParseError(f"unsupported object {obj!r}", 1, c1)
    layout = layout.lower()
    if layout not in ("array", "coordinate"):
        raise ParseError(f"unsupported layout {layout!r}", 1, c2)
    field = field.lower()
    if field not in ("complex", "real", "integer"):
        raise ParseError(f"unsupported field {field!r}", 1, c3)
    if sym.lower() != "general":
        raise ParseError(f"unsupported symmetry {sym!r}", 1, c4)
    width = 2 if field == "complex" else 1

    body = [
        (k + 1, _tokens(line))
        for k, line in enumerate(lines)
        if k > 0 and line.strip() and not line.lstrip().startswith("%")
    ]
    if not body:
        raise ParseError("missing size line", len(lines), 1)
    size_line, size = body[0]
    need = 2 if layout == "array" else 3
    if len(size) != need:
        raise ParseError(f"size line needs {need} integers", size_line, 1)
    dims = [_number(t, size_line, c, int) for c, t in size]
    rows, cols = dims[0], dims[1]
    if rows <= 0 or cols <= 0:
        raise ParseError("matrix dimensions must be positive", size_line, 1)
    if rows != cols:
        raise NonSquare(f"matrix is {rows}x{cols}", size_line, 1)
    n = rows
    a = np.zeros((n, n), dtype=complex)
    entries = body[1:]

    if layout == "array":
        if len(entries) != n * n:
            where = entries[n * n][0] if len(entries) > n * n else len(lines)
            raise ParseError(f"expected {n * n} entries, found {len(entries)}", where, 1)
        for k, (lineno, toks) in enumerate(entries):
            if len(toks) != width:
                raise ParseError(f"expected {width} values", lineno, toks[0][0])
            vals = [_number(t, lineno, c) for c, t in toks]
            # column-major order
            a[k % n, k // n] = complex(vals[0], vals[1] if width == 2 else 0.0)
        return a

    nnz = dims[2]
    if nnz < 0:
        raise ParseError("entry count must be nonnegative", size_line, size[2][0])
    if len(entries) != nnz:
        where = entries[nnz][0] if len(entries) > nnz else len(lines)
        raise ParseError(f"expected {nnz} entries, found {len(entries)}", where, 1)
    for lineno, toks in entries:
        if len(toks) != 2 + width:
            raise ParseError(f"expected {2 + width} fields", lineno, toks[0][0])
        i = _number(toks[0][1], lineno, toks[0][0], int)
        j = _number(toks[1][1], lineno, toks[1][0], int)
        if not 1 <= i <= n:
            raise ParseError(f"row index {i} out of range", lineno, toks[0][0])
        if not 1 <= j <= n:
            raise ParseError(f"column index {j} out of range", lineno, toks[1][0])
        vals = [_number(t, lineno, c) for c, t in toks[2:]]
        # duplicates are summed, as in most readers
        a[i - 1, j - 1] += complex(vals[0], vals[1] if width == 2 else 0.0)
    return a


def _fmt(x):
    return repr(float(x))


def format_matrix_market(a):
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    lines = ["%%MatrixMarket matrix array complex general", f"{n} {n}"]
    for j in range(n):
        for i in range(n):
            lines.append(f"{_fmt(a[i, j].real)} {_fmt(a[i, j].imag)}")
    return "\n".join(lines) + "\n"


# -- JSON --------------------------------------------------------------------


def _locate(text, key):
    """Line/column of the first occurrence of ``"key"`` in ``text``."""
    pos = text.find(f'"{key}"')
    if pos < 0:
        return 1, 1
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


def parse_json(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", 1, 1)
    if "n" not in doc or "entries" not in doc:
        raise ParseError('object needs keys "n" and "entries"', 1, 1)
    n = doc["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n <= 0:
        raise ParseError('"n" must be a positive integer', *_locate(text, "n"))
    ent = doc["entries"]
    where = _locate(text, "entries")
    if not isinstance(ent, list):
        raise ParseError('"entries" must be a list', *where)
    if len(ent) != n * n:
        if ent and len(ent) % n == 0:
            # a whole number of rows of length n: an n x m matrix
            raise NonSquare(f'"entries" has {len(ent)} values, expected n*n = {n * n}', *where)
        raise ParseError(f'"entries" has {len(ent)} values, expected {n * n}', *where)
    out = np.empty(n * n, dtype=complex)
    for k, e in enumerate(ent):
        ok = (
            isinstance(e, list)
            and len(e) == 2
            and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in e)
        )
        if not ok or not (math.isfinite(e[0]) and math.isfinite(e[1])):
            raise ParseError(f"entry {k} must be a finite [re, im] pair", *where)
        out[k] = complex(e[0], e[1])
    return out.reshape(n, n)


def format_json(a):
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    ent = ",\n".join(f"  [{_fmt(z.real)}, {_fmt(z.imag)}]" for z in a.ravel())
    return f'{{"n": {n}, "entries": [\n{ent}\n]}}\n'
