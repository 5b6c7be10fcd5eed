"""Group specification files and a few named presets.

A spec file is JSON:

    {"name": "B2", "rank": 2, "coxeter_matrix": [[1, 4], [4, 1]],
     "weights": [0, 1], "generators": ["s", "t"]}

with 0 in the matrix meaning ∞. "generators" is optional.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .coxeter import CoxeterSystem
from .errors import InvalidSystem, SpecFileError

__all__ = ["GroupSpec", "PRESETS", "preset", "load_spec", "parse_spec"]

PRESETS: dict[str, list[list[int]]] = {
    "A1": [[1]],
    "A1xA1": [[1, 2], [2, 1]],
    "A2": [[1, 3], [3, 1]],
    "B2": [[1, 4], [4, 1]],
    "I5": [[1, 5], [5, 1]],
    "G2": [[1, 6], [6, 1]],
    "Iinf": [[1, 0], [0, 1]],
    "A3": [[1, 3, 2], [3, 1, 3], [2, 3, 1]],
    "B3": [[1, 4, 2], [4, 1, 3], [2, 3, 1]],
    "H3": [[1, 5, 2], [5, 1, 3], [2, 3, 1]],
    "A~1": [[1, 0], [0, 1]],
    "A~2": [[1, 3, 3], [3, 1, 3], [3, 3, 1]],
}


@dataclass(frozen=True)
class GroupSpec:
    name: str
    matrix: tuple[tuple[int, ...], ...]
    weights: tuple[int, ...]
    generators: tuple[str, ...] | None = None

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def system(self, length_cap: int | None = None) -> CoxeterSystem:
        return CoxeterSystem(self.matrix, self.weights, names=self.generators,
                             length_cap=length_cap)

    def fingerprint(self) -> str:
        """sha256 of the data that determines the Hecke algebra."""
        payload = json.dumps(
            {"coxeter_matrix": [list(r) for r in self.matrix], "weights": list(self.weights)},
            sort_keys=True, separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode()).hexdigest()

    def to_json(self) -> dict:
        out: dict = {
            "name": self.name,
            "rank": self.rank,
            "coxeter_matrix": [list(r) for r in self.matrix],
            "weights": list(self.weights),
        }
        if self.generators is not None:
            out["generators"] = list(self.generators)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    def generator_names(self) -> tuple[str, ...]:
        if self.generators is not None:
            return self.generators
        return tuple(f"s{i + 1}" for i in range(self.rank))

    def parse_word(self, text: str | Sequence[str]) -> tuple[int, ...]:
        """Whitespace-separated generator names or 1-based indices."""
        tokens = text.split() if isinstance(text, str) else list(text)
        names = {n: i for i, n in enumerate(self.generator_names())}
        out = []
        for tok in tokens:
            if tok in names:
                out.append(names[tok])
            elif tok.isdigit() and 1 <= int(tok) <= self.rank:
                out.append(int(tok) - 1)
            else:
                raise SpecFileError(f"unknown generator {tok!r}")
        return tuple(out)


def preset(name: str, weights: Sequence[int], generators: Sequence[str] | None = None) -> GroupSpec:
    try:
        matrix = PRESETS[name]
    except KeyError:
        raise SpecFileError(f"unknown preset {name!r}; known: {', '.join(PRESETS)}") from None
    spec = GroupSpec(name, tuple(tuple(r) for r in matrix), tuple(int(w) for w in weights),
                     tuple(generators) if generators else None)
    spec.system()  # validate
    return spec


def parse_spec(text: str, source: str = "<string>") -> GroupSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFileError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise SpecFileError(f"{source}: top level must be an object")

    def field(key: str, kind):
        if key not in data:
            raise SpecFileError(f"{source}: missing field {key!r}")
        value = data[key]
        if not isinstance(value, kind) or isinstance(value, bool):
            raise SpecFileError(f"{source}: field {key!r} has the wrong type")
        return value

    name = field("name", str)
    rank = field("rank", int)
    matrix = field("coxeter_matrix", list)
    weights = field("weights", list)
    if len(matrix) != rank:
        raise SpecFileError(f"{source}: field 'coxeter_matrix' has {len(matrix)} rows, rank is {rank}")
    for i, row in enumerate(matrix):
        if not isinstance(row, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in row):
            raise SpecFileError(f"{source}: field 'coxeter_matrix' row {i} is not a list of integers")
    if not all(isinstance(x, int) and not isinstance(x, bool) for x in weights):
        raise SpecFileError(f"{source}: field 'weights' must hold integers")
    generators = data.get("generators")
    if generators is not None:
        if not isinstance(generators, list) or not all(isinstance(g, str) for g in generators):
            raise SpecFileError(f"{source}: field 'generators' must be a list of strings")
        if len(generators) != rank or len(set(generators)) != rank:
            raise SpecFileError(f"{source}: field 'generators' needs {rank} distinct names")
        generators = tuple(generators)
    spec = GroupSpec(name, tuple(tuple(r) for r in matrix), tuple(weights), generators)
    try:
        spec.system()
    except InvalidSystem as exc:
        raise SpecFileError(f"{source}: {type(exc).__name__}: {exc}") from exc
    return spec


def load_spec(path: str | Path) -> GroupSpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecFileError(f"{path}: {exc.strerror}") from exc
    return parse_spec(text, str(path))
