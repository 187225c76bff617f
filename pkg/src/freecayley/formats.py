"""Plain-text formats: DIMACS graphs, matrices, codes, Cayley specs and group tables."""

from __future__ import annotations

import math
from pathlib import Path

from .cayley import CayleySpec, ElementaryGroup, GroupTable, PowerGroup
from .codes import DistanceCert, LinearCode, parity_from_generator
from .fplinalg import MatModP
from .graph import Graph


class FormatError(ValueError):
    pass


def _content_lines(text: str, comment: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith(comment)]


def _header(line: str, kind: str) -> dict[str, str]:
    parts = line.split()
    if not parts or parts[0] != kind:
        raise FormatError(f"expected a '{kind}' header, got {line!r}")
    out = {}
    for tok in parts[1:]:
        if "=" not in tok:
            raise FormatError(f"malformed header field {tok!r}")
        k, v = tok.split("=", 1)
        out[k] = v
    return out


def _int(fields: dict[str, str], key: str) -> int:
    try:
        return int(fields[key])
    except (KeyError, ValueError):
        raise FormatError(f"header field {key!r} missing or not an integer") from None


def _ints(line: str) -> list[int]:
    try:
        return [int(t) for t in line.split()]
    except ValueError:
        raise FormatError(f"non-integer entry in {line!r}") from None


# ---------------------------------------------------------------------------
# DIMACS


def write_dimacs(g: Graph) -> str:
    edges = g.edges()
    lines = [f"p edge {g.order} {len(edges)}"] + [f"e {u + 1} {v + 1}" for u, v in edges]
    return "\n".join(lines) + "\n"


def read_dimacs(text: str) -> Graph:
    order = None
    edges = []
    for ln in _content_lines(text, "c"):
        parts = ln.split()
        if parts[0] == "p":
            if len(parts) != 4 or order is not None:
                raise FormatError(f"bad problem line {ln!r}")
            order = _ints(" ".join(parts[2:]))[0]
        elif parts[0] == "e":
            if order is None or len(parts) != 3:
                raise FormatError(f"bad edge line {ln!r}")
            u, v = _ints(" ".join(parts[1:]))
            edges.append((u - 1, v - 1))
        else:
            raise FormatError(f"unrecognised line {ln!r}")
    if order is None:
        raise FormatError("missing 'p edge' line")
    try:
        return Graph(order, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


# ---------------------------------------------------------------------------
# matrices and codes


def write_matrix(mat: MatModP) -> str:
    lines = [f"mat p={mat.p} rows={mat.rows} cols={mat.cols}"]
    lines += [" ".join(str(int(x)) for x in row) for row in mat.data]
    return "\n".join(lines) + "\n"


def _rows(lines: list[str], count: int, width: int) -> list[list[int]]:
    if len(lines) != count:
        raise FormatError(f"expected {count} rows, found {len(lines)}")
    rows = [_ints(ln) for ln in lines]
    if any(len(r) != width for r in rows):
        raise FormatError(f"every row must have {width} entries")
    return rows


def read_matrix(text: str) -> MatModP:
    lines = _content_lines(text, "#")
    if not lines:
        raise FormatError("empty matrix file")
    h = _header(lines[0], "mat")
    p, r, c = _int(h, "p"), _int(h, "rows"), _int(h, "cols")
    return MatModP.from_rows(p, _rows(lines[1:], r, c), c)


def write_code(code: LinearCode) -> str:
    lines = [f"code p={code.p} n={code.n} k={code.k}", f"# provenance: {code.provenance}"]
    if code.distance is not None:
        d = code.distance
        dtext = "inf" if d.d == math.inf else str(int(d.d))
        lines.append(f"# distance: {dtext} {d.method} {'exact' if d.exact else 'bound'}")
    lines += [" ".join(map(str, row)) for row in code.basis()]
    return "\n".join(lines) + "\n"


def read_code(text: str) -> LinearCode:
    raw = [ln.strip() for ln in text.splitlines() if ln.strip()]
    provenance, distance = "explicit", None
    body = []
    for ln in raw:
        if ln.startswith("# provenance:"):
            provenance = ln.split(":", 1)[1].strip()
        elif ln.startswith("# distance:"):
            parts = ln.split(":", 1)[1].split()
            if len(parts) != 3:
                raise FormatError(f"bad distance line {ln!r}")
            d = math.inf if parts[0] == "inf" else int(parts[0])
            distance = DistanceCert(d, parts[1], parts[2] == "exact")
        elif not ln.startswith("#"):
            body.append(ln)
    if not body:
        raise FormatError("empty code file")
    h = _header(body[0], "code")
    p, n, k = _int(h, "p"), _int(h, "n"), _int(h, "k")
    gen = MatModP.from_rows(p, _rows(body[1:], k, n), n)
    try:
        return LinearCode(p, n, k, gen, parity_from_generator(gen), provenance, distance)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


# ---------------------------------------------------------------------------
# groups and Cayley specs


def write_group(table: GroupTable) -> str:
    lines = [f"group order={table.order}"] + [" ".join(map(str, row)) for row in table.table]
    return "\n".join(lines) + "\n"


def read_group(text: str) -> GroupTable:
    lines = _content_lines(text, "#")
    if not lines:
        raise FormatError("empty group file")
    n = _int(_header(lines[0], "group"), "order")
    rows = _rows(lines[1:], n, n)
    try:
        return GroupTable(tuple(tuple(r) for r in rows))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def write_cayley(spec: CayleySpec, groupfile: str | None = None, p: int | None = None) -> str:
    g = spec.group
    if isinstance(g, ElementaryGroup):
        head = f"cayley kind=zp p={g.p} n={g.n}"
    else:
        if groupfile is None:
            raise ValueError("a group spec needs the path of its group table file")
        head = "cayley kind=group" + (f" p={p}" if p else "") + f" n={g.n} groupfile={groupfile}"
    return "\n".join([head] + [" ".join(map(str, c)) for c in spec.connection]) + "\n"


def read_cayley(text: str, base_dir: str | Path = ".") -> CayleySpec:
    lines = _content_lines(text, "#")
    if not lines:
        raise FormatError("empty cayley file")
    h = _header(lines[0], "cayley")
    n = _int(h, "n")
    kind = h.get("kind")
    if kind == "zp":
        try:
            group = ElementaryGroup(_int(h, "p"), n)
        except ValueError as exc:
            raise FormatError(str(exc)) from None
    elif kind == "group":
        if "groupfile" not in h:
            raise FormatError("group spec without groupfile")
        path = Path(base_dir) / h["groupfile"]
        try:
            group = PowerGroup(read_group(path.read_text()), n)
        except OSError as exc:
            raise FormatError(f"cannot read group file: {exc}") from None
    else:
        raise FormatError(f"unknown cayley kind {kind!r}")
    conn = [tuple(_ints(ln)) for ln in lines[1:]]
    try:
        return CayleySpec(group, tuple(conn))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def sniff(text: str) -> str:
    """Guess the format from the first content line."""
    for ln in text.splitlines():
        s = ln.strip()
        if not s or s.startswith("c ") or s == "c" or s.startswith("#"):
            continue
        word = s.split()[0]
        if word in ("p", "e"):
            return "dimacs"
        if word in ("cayley", "code", "mat", "group"):
            return word
        break
    raise FormatError("unrecognised file format")
