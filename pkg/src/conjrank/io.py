"""Text formats for groups, fusion directives and explicit bisets.

Group file::

    name S4
    degree 4
    gen (0 1)
    gen (0 1 2 3)
    sylow 2              # optional fusion directive, or:
    sub (0 1 2 3); (0 2)

Biset file (one ``left``/``right`` line per generator of S, in order)::

    points 6
    left (0 1 2)(3 4 5)
    right (0 2 1)(3 5 4)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .biset import Biset
from .errors import ParseError
from .perm_core import close_generators, parse_cycles

__all__ = ["GroupSpec", "parse_group_text", "read_group_file", "parse_generators",
           "parse_biset_text", "read_biset_file"]


@dataclass(frozen=True)
class GroupSpec:
    group: object
    sylow: int | None = None
    sub: str | None = None


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            key, _, rest = line.partition(" ")
            yield lineno, key.lower(), rest.strip()


def parse_generators(text, degree):
    """Generators separated by ``;`` or ``,`` between cycle groups."""
    parts = [p for p in re.split(r"[;,](?![^(]*\))", text) if p.strip()]
    return [parse_cycles(p, degree) for p in parts]


def parse_group_text(text):
    name = None
    degree = None
    gens_text = []
    sylow = None
    sub = None
    for lineno, key, rest in _lines(text):
        if key == "name":
            name = rest or None
        elif key == "degree":
            if not rest.isdigit():
                raise ParseError(f"line {lineno}: degree must be a nonnegative integer")
            degree = int(rest)
        elif key == "gen":
            gens_text.append((lineno, rest))
        elif key == "sylow":
            if not rest.isdigit():
                raise ParseError(f"line {lineno}: sylow needs a prime")
            sylow = int(rest)
        elif key == "sub":
            sub = rest
        else:
            raise ParseError(f"line {lineno}: unknown directive {key!r}")
    if degree is None:
        raise ParseError("missing 'degree' line")
    gens = []
    for lineno, body in gens_text:
        try:
            gens.append(parse_cycles(body, degree))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    return GroupSpec(close_generators(degree, gens, name=name), sylow, sub)


def read_group_file(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return parse_group_text(text)


def parse_biset_text(text, S, name=None):
    size = None
    left, right = [], []
    for lineno, key, rest in _lines(text):
        if key == "points":
            if not rest.isdigit():
                raise ParseError(f"line {lineno}: points must be a nonnegative integer")
            size = int(rest)
        elif key in ("left", "right"):
            if size is None:
                raise ParseError(f"line {lineno}: 'points' must come first")
            perm = parse_cycles(rest, size)
            (left if key == "left" else right).append(perm.images)
        else:
            raise ParseError(f"line {lineno}: unknown directive {key!r}")
    if size is None:
        raise ParseError("missing 'points' line")
    try:
        return Biset.from_generators(S, size, left, right, name=name)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def read_biset_file(path, S):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return parse_biset_text(text, S, name=Path(path).stem)
