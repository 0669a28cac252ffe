"""Table files, JSON reports and the plain-text result caches."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from . import __version__
from .errors import NotAGroup, ParseError
from .groups import CayleyTable, verify_group

FORMAT = "cayley-v1"


# -- cayley-v1 -------------------------------------------------------------------


def parse_table(text: str, *, allow_invalid: bool = False, name: str | None = None) -> CayleyTable:
    """Parse ``n`` followed by ``n`` rows of ``n`` 0-based entries.

    Blank lines and lines starting with ``#`` are skipped.
    """
    rows = []
    n = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 1:
                raise ParseError("first line must hold the order only", lineno, 1)
            n = _int(fields[0], lineno, 1)
            if n < 1:
                raise ParseError("order must be positive", lineno, 1)
            continue
        if len(rows) == n:
            raise ParseError("more rows than the declared order", lineno, 1)
        if len(fields) != n:
            raise ParseError(f"expected {n} entries, found {len(fields)}", lineno, 1)
        row = []
        col = 1
        for f in fields:
            col = raw.index(f, col - 1) + 1
            v = _int(f, lineno, col)
            if not 0 <= v < n:
                raise ParseError(f"entry {v} out of range 0..{n - 1}", lineno, col)
            row.append(v)
            col += len(f)
        rows.append(row)
    if n is None:
        raise ParseError("empty input", 1, 1)
    if len(rows) != n:
        raise ParseError(f"expected {n} rows, found {len(rows)}", None, None)
    t = CayleyTable(np.array(rows, dtype=np.int64), name)
    if not allow_invalid:
        bad = verify_group(t)
        if bad:
            raise NotAGroup(bad)
    return t


def _int(tok, line, col):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"not an integer: {tok!r}", line, col) from None


def serialize_table(t: CayleyTable, comments=()) -> str:
    width = len(str(t.n - 1))
    lines = [str(t.n)]
    lines += [" ".join(str(v).rjust(width) for v in row) for row in t.tolist()]
    lines += [f"# {c}" for c in comments]
    return "\n".join(lines) + "\n"


def read_table(path, *, allow_invalid=False) -> CayleyTable:
    return parse_table(Path(path).read_text(), allow_invalid=allow_invalid, name=Path(path).stem)


# -- reports ------------------------------------------------------------------------

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "groupdist report",
    "type": "object",
    "required": ["command", "inputs", "results", "provenance", "proven"],
    "additionalProperties": False,
    "properties": {
        "command": {"type": "string"},
        "inputs": {"type": "object"},
        "results": {},
        "provenance": {
            "type": "object",
            "required": ["version", "backend"],
            "properties": {
                "version": {"type": "string"},
                "backend": {"enum": ["cython", "python"]},
                "budget": {"type": ["integer", "null"]},
                "cache": {"type": "boolean"},
            },
        },
        "proven": {"type": "boolean"},
    },
}


def _no_floats(obj, path="$"):
    if isinstance(obj, float):
        raise jsonschema.ValidationError(f"non-integer number at {path}")
    if isinstance(obj, dict):
        for k, v in obj.items():
            _no_floats(v, f"{path}.{k}")
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _no_floats(v, f"{path}[{i}]")


def validate_report(doc: dict) -> None:
    jsonschema.validate(doc, REPORT_SCHEMA)
    _no_floats(doc)


@dataclass
class Report:
    command: str
    inputs: dict
    results: object
    proven: bool = True
    provenance: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        from ._kernels import BACKEND

        prov = {"version": __version__, "backend": BACKEND}
        prov.update(self.provenance)
        doc = {"command": self.command, "inputs": self.inputs, "results": self.results,
               "provenance": prov, "proven": bool(self.proven)}
        validate_report(doc)
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


# -- caches ----------------------------------------------------------------------------


def cache_dir() -> Path:
    env = os.environ.get("GH_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "groupdist"


def _seed_lines(fname):
    try:
        return resources.files("groupdist").joinpath("data", fname).read_text().splitlines()
    except (FileNotFoundError, ModuleNotFoundError):
        return []


class _LineCache:
    fname = ""

    def __init__(self, directory=None, seed=True):
        self.path = Path(directory or cache_dir()) / self.fname
        self.data = {}
        if seed:
            self._load(_seed_lines(self.fname))
        if self.path.exists():
            self._load(self.path.read_text().splitlines())

    def _load(self, lines):
        for line in lines:
            line = line.strip()
            if line and not line.startswith("#"):
                self._parse(line.split())

    def _append(self, line):
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a") as fh:
            fh.write(line + "\n")


class MuCache(_LineCache):
    """Lines ``l v value``."""

    fname = "mu.cache"

    def _parse(self, f):
        self.data[(int(f[0]), int(f[1]))] = int(f[2])

    def get(self, ell, v):
        return self.data.get((ell, v))

    def put(self, ell, v, value):
        self.data[(ell, v)] = value
        self._append(f"{ell} {v} {value}")


class DistCache(_LineCache):
    """Lines ``nameA nameB distance proven``; names are order-sensitive."""

    fname = "dist.cache"

    def _parse(self, f):
        d = None if f[2] in ("None", "-") else int(f[2])
        self.data[(f[0], f[1])] = (d, f[3] in ("1", "true", "True"))

    def get(self, a, b):
        return self.data.get((a, b))

    def put(self, a, b, d, proven):
        self.data[(a, b)] = (d, proven)
        self._append(f"{a} {b} {d} {int(bool(proven))}")
