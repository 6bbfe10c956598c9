"""System description files.

Line-oriented text format (``#`` comments and blank lines ignored):

    vars: x1 x2 x3 x4            optional variable names (default x1..xn)
    deg: 9                       default truncation degree for the run
    f1: x2^3 + x1*x2 @deg 9      triangular right-hand sides
    input: 1                     the input gain g_n
    F1: ...    G1: ...           affine drift/input components
    witness G3: 1, 2*x3, 1, 0    a named vector field, n components
    map: x1 - x3, x2 + x4 - x3^2, x3, x4
    etype: {(0,3),(1,1)} ; {(0,0,1)} ; {(0,1,0,1)}
    ltype: (0,3) ; (0,0,1) ; (0,1,0,1)

A ``.json`` file mirrors the triangular format with fields
``{"n": int, "f": [expr, ...], "g": expr, "deg": int | null}``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .jetfun import Jet, ParseError, parse_jet
from .liegeo import AffineSystem, VectorField
from .multiindex import MultiIndex, parse_multiindex
from .triform import LowerTriangularSystem


class FileFormatError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


@dataclass
class SystemFile:
    path: str
    varnames: Optional[List[str]] = None
    deg: Optional[int] = None
    f: Dict[int, str] = field(default_factory=dict)
    g: Optional[str] = None
    F: Dict[int, str] = field(default_factory=dict)
    G: Dict[int, str] = field(default_factory=dict)
    witnesses: Dict[str, List[str]] = field(default_factory=dict)
    map_exprs: Optional[List[str]] = None
    etype: Optional[List[frozenset]] = None
    ltype: Optional[List[MultiIndex]] = None

    @property
    def n(self) -> int:
        candidates = [max(self.f, default=0), max(self.F, default=0), max(self.G, default=0)]
        if self.varnames:
            candidates.append(len(self.varnames))
        n = max(candidates)
        if n == 0:
            raise FileFormatError(f"{self.path}: no state equations found")
        return n

    def names(self) -> List[str]:
        if self.varnames:
            return list(self.varnames)
        return [f"x{i}" for i in range(1, self.n + 1)]


_SET_RE = re.compile(r"\([0-9,\s]*\)|0(?![0-9])")


def _parse_index_set(text: str, line: int) -> frozenset:
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise FileFormatError(f"expected a {{...}} index set, got {text!r}", line)
    found = _SET_RE.findall(body[1:-1])
    if not found:
        raise FileFormatError(f"empty index set {text!r}", line)
    return frozenset(parse_multiindex(t) for t in found)


def _split_top_level(text: str) -> List[str]:
    """Split on commas that are not inside parentheses."""
    parts = []
    depth = 0
    buf = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(buf))
            buf = []
        else:
            buf.append(ch)
    parts.append("".join(buf))
    return [p.strip() for p in parts]


_EQ_RE = re.compile(r"^([fFG])(\d+)$")


def load_file(path: str) -> SystemFile:
    if str(path).endswith(".json"):
        return _load_json(path)
    sf = SystemFile(path=str(path))
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if ":" not in line:
                raise FileFormatError(f"expected 'key: value', got {line!r}", lineno)
            key, value = line.split(":", 1)
            key = key.strip()
            value = value.strip()
            if key == "vars":
                sf.varnames = value.split()
            elif key == "deg":
                sf.deg = int(value)
            elif key == "input":
                sf.g = value
            elif key == "map":
                sf.map_exprs = _split_top_level(value)
            elif key == "etype":
                sf.etype = [
                    _parse_index_set(part, lineno) for part in value.split(";") if part.strip()
                ]
            elif key == "ltype":
                sf.ltype = [parse_multiindex(part) for part in value.split(";") if part.strip()]
            elif key.startswith("witness"):
                name = key[len("witness"):].strip()
                if not name:
                    raise FileFormatError("witness line needs a name, e.g. 'witness G3: ...'", lineno)
                sf.witnesses[name] = _split_top_level(value)
            else:
                m = _EQ_RE.match(key)
                if not m:
                    raise FileFormatError(f"unknown key {key!r}", lineno)
                kind, idx = m.group(1), int(m.group(2))
                if kind == "f":
                    sf.f[idx] = value
                elif kind == "F":
                    sf.F[idx] = value
                else:
                    sf.G[idx] = value
    return sf


def _load_json(path: str) -> SystemFile:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    sf = SystemFile(path=str(path))
    n = int(data["n"])
    exprs = list(data["f"])
    if len(exprs) != n:
        raise FileFormatError(f"{path}: expected {n} entries in 'f', got {len(exprs)}")
    sf.f = {i + 1: exprs[i] for i in range(n)}
    sf.g = data["g"]
    sf.deg = data.get("deg")
    if data.get("vars"):
        sf.varnames = list(data["vars"])
    return sf


def _parse_expr(sf: SystemFile, text: str, what: str) -> Jet:
    try:
        return parse_jet(text, sf.names())
    except ParseError as e:
        raise FileFormatError(f"{what}: {e}") from e


def build_triangular(sf: SystemFile) -> LowerTriangularSystem:
    n = sf.n
    if set(sf.f) != set(range(1, n + 1)):
        missing = sorted(set(range(1, n + 1)) - set(sf.f))
        raise FileFormatError(f"{sf.path}: missing equations f{missing}")
    if sf.g is None:
        raise FileFormatError(f"{sf.path}: missing 'input:' line for the input gain")
    f = [_parse_expr(sf, sf.f[i], f"f{i}") for i in range(1, n + 1)]
    g = _parse_expr(sf, sf.g, "input")
    return LowerTriangularSystem(f, g)


def build_affine(sf: SystemFile) -> AffineSystem:
    n = sf.n
    for name, table in (("F", sf.F), ("G", sf.G)):
        if set(table) != set(range(1, n + 1)):
            missing = sorted(set(range(1, n + 1)) - set(table))
            raise FileFormatError(f"{sf.path}: missing components {name}{missing}")
    F = VectorField([_parse_expr(sf, sf.F[i], f"F{i}") for i in range(1, n + 1)])
    G = VectorField([_parse_expr(sf, sf.G[i], f"G{i}") for i in range(1, n + 1)])
    return AffineSystem(F, G)


def build_witness(sf: SystemFile, name: str) -> VectorField:
    exprs = sf.witnesses[name]
    if len(exprs) != sf.n:
        raise FileFormatError(f"witness {name}: expected {sf.n} components, got {len(exprs)}")
    return VectorField([_parse_expr(sf, e, f"witness {name}") for e in exprs])


def witness_chain(sf: SystemFile, letter: str) -> Optional[List[VectorField]]:
    """Collect witnesses named e.g. G1..Gn (or Y1..Yn) into a chain list."""
    n = sf.n
    names = [f"{letter}{i}" for i in range(1, n + 1)]
    present = [name for name in names if name in sf.witnesses]
    if not present:
        return None
    missing = [name for name in names if name not in sf.witnesses]
    if missing:
        raise FileFormatError(f"{sf.path}: incomplete witness chain, missing {missing}")
    return [build_witness(sf, name) for name in names]


def build_map(sf: SystemFile, n: Optional[int] = None) -> List[Jet]:
    """The map's own file may carry nothing but the 'map:' line, so the
    dimension can be imposed from the system it applies to."""
    if not sf.map_exprs:
        raise FileFormatError(f"{sf.path}: no 'map:' line found")
    if n is None:
        n = len(sf.map_exprs)
    if len(sf.map_exprs) != n:
        raise FileFormatError(f"{sf.path}: map has {len(sf.map_exprs)} components, expected {n}")
    names = sf.varnames or [f"x{i}" for i in range(1, n + 1)]
    out = []
    for e in sf.map_exprs:
        try:
            out.append(parse_jet(e, names))
        except ParseError as err:
            raise FileFormatError(f"map: {err}") from err
    return out
