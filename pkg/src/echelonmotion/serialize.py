"""File formats: poset-v1 JSON, comma-separated extensions and bijections, JSONL reports."""

from __future__ import annotations

import json
from typing import IO, Any, Iterable

from .errors import InputError, ParseError
from .extensions import LinearExtension
from .poset import ElementBijection, Poset, from_covers

FORMAT = "poset-v1"


def poset_to_dict(P: Poset) -> dict[str, Any]:
    return {"format": FORMAT, "n": P.n, "covers": [list(c) for c in P.covers], "names": list(P.names)}


def dumps_poset(P: Poset) -> str:
    return json.dumps(poset_to_dict(P))


def poset_from_dict(data: Any) -> Poset:
    if not isinstance(data, dict):
        raise ParseError("poset document must be a JSON object")
    if data.get("format") != FORMAT:
        raise ParseError(f"field 'format': expected {FORMAT!r}, got {data.get('format')!r}")
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ParseError(f"field 'n': expected a non-negative integer, got {n!r}")
    covers = data.get("covers", [])
    if not isinstance(covers, list):
        raise ParseError("field 'covers': expected a list of pairs")
    pairs = []
    for k, c in enumerate(covers):
        if (not isinstance(c, list) or len(c) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in c)):
            raise ParseError(f"field 'covers'[{k}]: expected a pair of integers, got {c!r}")
        pairs.append((c[0], c[1]))
    names = data.get("names")
    if names is not None and (not isinstance(names, list) or len(names) != n):
        raise ParseError(f"field 'names': expected a list of {n} strings")
    try:
        return from_covers(n, pairs, names)
    except InputError as exc:
        raise ParseError(f"field 'covers': {exc}") from exc


def loads_poset(text: str) -> Poset:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return poset_from_dict(data)


def read_poset(path: str) -> Poset:
    with open(path, encoding="utf-8") as fh:
        return loads_poset(fh.read())


def write_poset(P: Poset, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_poset(P) + "\n")


def _parse_ints(text: str, what: str) -> list[int]:
    out = []
    for k, field in enumerate(text.strip().split(",")):
        try:
            out.append(int(field))
        except ValueError:
            raise ParseError(f"{what} field {k + 1}: not an integer: {field!r}") from None
    return out


def dumps_extension(sigma: LinearExtension) -> str:
    """Positions (1-based) listed by element index."""
    return ",".join(str(p) for p in sigma.pos)


def loads_extension(text: str) -> LinearExtension:
    pos = _parse_ints(text, "extension")
    try:
        return LinearExtension(tuple(pos))
    except InputError as exc:
        raise ParseError(f"extension: {exc}") from exc


def dumps_bijection(f: ElementBijection) -> str:
    """Images listed by element index, both 1-based."""
    return ",".join(str(v + 1) for v in f.image)


def loads_bijection(text: str) -> ElementBijection:
    image = _parse_ints(text, "bijection")
    try:
        return ElementBijection(tuple(v - 1 for v in image))
    except InputError as exc:
        raise ParseError(f"bijection: {exc}") from exc


def dumps_records(records: Iterable[dict[str, Any]]) -> str:
    """Line-delimited JSON with sorted keys, so equal records give equal bytes."""
    return "".join(json.dumps(r, sort_keys=True, separators=(",", ":")) + "\n" for r in records)


def loads_records(text: str) -> list[dict[str, Any]]:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            out.append(json.loads(line))
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {lineno} column {exc.colno}: {exc.msg}") from exc
    return out


def write_records(records: Iterable[dict[str, Any]], fh: IO[str]) -> None:
    fh.write(dumps_records(records))
