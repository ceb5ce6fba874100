"""Plain-text and CSV serialization.

All files are UTF-8 with LF line endings. Rationals are written as ``p/q``
(or a bare integer when ``q == 1``) and parsed without ever going through
floating point.
"""

from __future__ import annotations

import csv
import io
import re
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .exactgeom import HRep, Polytope, Vector, polytope_from_hrep
from .pivotcore import Objective, PathTrace, SignedPermutation
from .polygen import GenSpec

SCHEMA_VERSION = "1"
_INT = re.compile(r"[+-]?\d+")
_RAT = re.compile(r"[+-]?\d+(/[+-]?\d+)?")


class FormatError(ValueError):
    pass


def fmt_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(tok: str) -> Fraction:
    if not _RAT.fullmatch(tok):
        raise FormatError(f"not a rational: {tok!r}")
    try:
        return Fraction(tok)
    except ZeroDivisionError:
        raise FormatError(f"zero denominator in {tok!r}") from None


def parse_int(tok: str) -> int:
    if not _INT.fullmatch(tok):
        raise FormatError(f"not an integer: {tok!r}")
    return int(tok)


def fmt_vector(v: Sequence) -> str:
    return " ".join(fmt_rational(x) for x in v)


def parse_vector(text: str, n: int | None = None) -> Vector:
    toks = text.replace(",", " ").split()
    if n is not None and len(toks) != n:
        raise FormatError(f"expected {n} entries, got {len(toks)}")
    return tuple(parse_rational(t) for t in toks)


def _lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def _header(line: str) -> tuple[int, int]:
    toks = line.split()
    if len(toks) != 2:
        raise FormatError(f"header must have two integers, got {line!r}")
    a, b = (parse_int(t) for t in toks)
    if a < 1 or b < 0:
        raise FormatError(f"bad header {line!r}")
    return a, b


# --- H-rep, V-rep ---------------------------------------------------------------


def dump_hrep(h: HRep) -> str:
    out = [f"{h.ambient_dim} {len(h.rows)}"]
    out += [" ".join(str(x) for x in (*a, b)) for a, b in h.rows]
    return "\n".join(out) + "\n"


def load_hrep(text: str) -> HRep:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty H-representation")
    n, m = _header(lines[0])
    body = lines[1:]
    if len(body) != m:
        raise FormatError(f"header announces {m} rows, found {len(body)}")
    rows = []
    for ln in body:
        toks = ln.split()
        if len(toks) != n + 1:
            raise FormatError(f"row {ln!r} needs {n + 1} integers")
        vals = [parse_int(t) for t in toks]
        rows.append((tuple(vals[:n]), vals[n]))
    return HRep.from_rows(rows, n)


def dump_vrep(vertices: Sequence[Sequence[Fraction]], n: int) -> str:
    out = [f"{n} {len(vertices)}"] + [fmt_vector(v) for v in vertices]
    return "\n".join(out) + "\n"


def load_vrep(text: str) -> list[Vector]:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty V-representation")
    n, v = _header(lines[0])
    if len(lines) - 1 != v:
        raise FormatError(f"header announces {v} points, found {len(lines) - 1}")
    return [parse_vector(ln, n) for ln in lines[1:]]


def read_polytope(path: str | Path) -> Polytope:
    return polytope_from_hrep(load_hrep(Path(path).read_text(encoding="utf-8")))


def write_polytope(p: Polytope, directory: Path, stem: str) -> tuple[Path, Path]:
    directory.mkdir(parents=True, exist_ok=True)
    hpath, vpath = directory / f"{stem}.hrep", directory / f"{stem}.vrep"
    write_text(hpath, dump_hrep(p.hrep))
    write_text(vpath, dump_vrep(p.vertices, p.n))
    return hpath, vpath


def write_text(path: Path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# --- objectives and signed permutations --------------------------------------------


def dump_objective(o: Objective) -> str:
    out = [f"{o.n} {len(o.perturbations)}"] + [fmt_vector(c) for c in o.components]
    return "\n".join(out) + "\n"


def load_objective(text: str) -> Objective:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty objective")
    n, p = _header(lines[0])
    if len(lines) != p + 2:
        raise FormatError(f"objective with {p} perturbations needs {p + 1} vector lines")
    comps = [parse_vector(ln, n) for ln in lines[1:]]
    return Objective(comps[0], tuple(comps[1:]))


def dump_sigma(sigma: SignedPermutation) -> str:
    return str(sigma) + "\n"


def load_sigma(text: str) -> SignedPermutation:
    lines = _lines(text)
    if len(lines) != 1:
        raise FormatError("a signed permutation is a single line")
    try:
        return SignedPermutation(tuple(parse_int(t) for t in lines[0].replace(",", " ").split()))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


# --- manifests ----------------------------------------------------------------


def load_manifest(text: str) -> list[GenSpec]:
    specs = []
    for ln in _lines(text):
        try:
            specs.append(GenSpec.parse(ln))
        except ValueError as exc:
            raise FormatError(f"bad manifest line {ln!r}: {exc}") from None
    return specs


def dump_manifest(specs: Iterable[GenSpec]) -> str:
    return "".join(s.to_string() + "\n" for s in specs)


def load_config(text: str) -> dict[str, str]:
    """Flat ``key = value`` pairs; ``#`` starts a comment line."""
    out: dict[str, str] = {}
    for ln in _lines(text):
        key, sep, val = ln.partition("=")
        if not sep:
            raise FormatError(f"config line without '=': {ln!r}")
        key = key.strip()
        if key in out:
            raise FormatError(f"duplicate config key {key!r}")
        out[key] = val.strip()
    return out


# --- traces and CSV -------------------------------------------------------------


def dump_trace(p: Polytope, trace: PathTrace, header: str = "") -> str:
    out = [header] if header else []
    out.append(f"rule {trace.rule} steps {trace.length} bound {trace.declared_bound}")
    for i, v in enumerate(trace.vertex_indices):
        out.append(f"{i} v{v} {fmt_vector(p.vertices[v])}")
    return "\n".join(out) + "\n"


def csv_text(columns: Sequence[str], rows: Iterable[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n", extrasaction="raise")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def append_csv(path: Path, columns: Sequence[str], row: dict) -> None:
    """Append one row, writing the header first if the file is new or empty."""
    new = not path.exists() or path.stat().st_size == 0
    if not new:
        with open(path, encoding="utf-8") as fh:
            head = fh.readline().rstrip("\n").split(",")
        if head != list(columns):
            raise FormatError(f"{path} has a different column layout")
    with open(path, "a", encoding="utf-8", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(columns), lineterminator="\n")
        if new:
            w.writeheader()
        w.writerow(row)
