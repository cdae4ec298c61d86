"""Family specs such as ``dihedral:5`` or ``product:dihedral:3:cyclic:2``, and the built-in roster."""

from __future__ import annotations

from pathlib import Path
from typing import Callable, Iterator

from .errors import FileParseError, UnknownFamily
from .groups import (
    DEFAULT_MAX_ORDER,
    FiniteGroup,
    load_cayley,
    make_alternating,
    make_cyclic,
    make_dihedral,
    make_direct_product,
    make_generalized_quaternion,
    make_semidihedral,
    make_symmetric,
)

FAMILIES: dict[str, Callable[..., FiniteGroup]] = {
    "dihedral": make_dihedral,
    "semidihedral": make_semidihedral,
    "quaternion": make_generalized_quaternion,
    "alternating": make_alternating,
    "symmetric": make_symmetric,
    "cyclic": make_cyclic,
}


def _parse(tokens: list[str], pos: int, max_order: int) -> tuple[FiniteGroup, int]:
    if pos >= len(tokens):
        raise UnknownFamily("incomplete group spec")
    name = tokens[pos].strip().lower()
    if name == "product":
        left, pos = _parse(tokens, pos + 1, max_order)
        right, pos = _parse(tokens, pos, max_order)
        return make_direct_product(left, right, max_order=max_order), pos
    if name not in FAMILIES:
        raise UnknownFamily(f"unknown family {tokens[pos]!r}; expected one of {', '.join(FAMILIES)} or product")
    if pos + 1 >= len(tokens):
        raise UnknownFamily(f"family {name} needs an integer parameter")
    try:
        param = int(tokens[pos + 1])
    except ValueError:
        raise UnknownFamily(f"parameter {tokens[pos + 1]!r} of {name} is not an integer") from None
    return FAMILIES[name](param, max_order=max_order), pos + 2


def parse_group_spec(spec: str, *, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Build a group from ``name:param[:...]`` or from a Cayley-table file path."""
    p = Path(spec)
    if spec.endswith(".json") or p.is_file():
        if not p.is_file():
            raise FileParseError(f"no such Cayley file: {spec}")
        return load_cayley(p, max_order=max_order)
    tokens = spec.split(":")
    g, pos = _parse(tokens, 0, max_order)
    if pos != len(tokens):
        raise UnknownFamily(f"trailing tokens in spec {spec!r}: {':'.join(tokens[pos:])}")
    return g


def builtin_specs(max_order: int = 64) -> list[str]:
    """Every built-in group spec whose order is at most ``max_order``."""
    specs: list[tuple[int, str]] = []

    def add(order: int, spec: str) -> None:
        if order <= max_order:
            specs.append((order, spec))

    for n in range(1, 9):
        add(n, f"cyclic:{n}")
    for n in range(3, max_order // 2 + 1):
        add(2 * n, f"dihedral:{n}")
    for n in range(2, max_order // 8 + 1):
        add(8 * n, f"semidihedral:{n}")
    for n in range(2, max_order // 4 + 1):
        add(4 * n, f"quaternion:{n}")
    fact = 1
    for n in range(1, 6):
        fact *= n
        add(fact, f"symmetric:{n}")
        if n >= 3:
            add(fact // 2, f"alternating:{n}")
    products = [
        (4, "product:cyclic:2:cyclic:2"),
        (12, "product:dihedral:3:cyclic:2"),
        (16, "product:dihedral:4:cyclic:2"),
        (16, "product:quaternion:2:cyclic:2"),
        (24, "product:alternating:4:cyclic:2"),
        (24, "product:dihedral:3:cyclic:4"),
        (30, "product:dihedral:5:cyclic:3"),
        (32, "product:quaternion:2:cyclic:4"),
        (36, "product:dihedral:3:dihedral:3"),
        (48, "product:symmetric:4:cyclic:2"),
        (64, "product:dihedral:4:dihedral:4"),
    ]
    for order, spec in products:
        add(order, spec)
    return [s for _, s in specs]


def builtin_groups(max_order: int = 64) -> Iterator[tuple[str, FiniteGroup]]:
    for spec in builtin_specs(max_order):
        yield spec, parse_group_spec(spec)


DEFAULT_SUITE = (
    [f"dihedral:{n}" for n in range(3, 13)]
    + [f"semidihedral:{n}" for n in range(2, 7)]
    + [f"quaternion:{n}" for n in range(2, 9)]
    + [f"alternating:{n}" for n in range(3, 6)]
)


def parse_range(text: str) -> list[str]:
    """``dihedral:3-12`` expands to ``dihedral:3`` ... ``dihedral:12``; plain specs pass through."""
    name, _, tail = text.rpartition(":")
    if name and "-" in tail:
        lo, _, hi = tail.partition("-")
        try:
            return [f"{name}:{n}" for n in range(int(lo), int(hi) + 1)]
        except ValueError:
            raise UnknownFamily(f"bad range {text!r}") from None
    return [text]
