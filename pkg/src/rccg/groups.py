"""Finite groups stored as validated Cayley tables over dense indices 0..n-1."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    FileParseError,
    IndexOutOfRange,
    InvalidParameter,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotLatinSquare,
    OrderTooLarge,
)

DEFAULT_MAX_ORDER = 512


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A group given by its multiplication table.

    ``table[i][j]`` is the index of ``element_i * element_j``. Instances are
    immutable; build them with :func:`build_from_cayley` or a family
    constructor so the axioms are checked.
    """

    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...]
    identity: int
    label: str = ""

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label or '?'}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        # unchecked: hot path
        return self.table[a][b]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        e = self.identity
        return tuple(row.index(e) for row in self.table)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    @cached_property
    def centralizer_masks(self) -> tuple[int, ...]:
        """Bitmask per element of the elements commuting with it."""
        n = self.order
        t = self.table
        masks = []
        for a in range(n):
            row = t[a]
            m = 0
            for b in range(n):
                if row[b] == t[b][a]:
                    m |= 1 << b
            masks.append(m)
        return tuple(masks)

    def index(self, name: str) -> int:
        """Index of the element displayed as ``name``."""
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no element named {name!r} in {self.label or 'group'}") from None

    def __getitem__(self, name: str) -> int:
        return self.index(name)

    def _check(self, a: int) -> None:
        if not (isinstance(a, (int, np.integer)) and 0 <= a < self.order):
            raise IndexOutOfRange(f"element index {a!r} outside 0..{self.order - 1}")

    def power(self, a: int, k: int) -> int:
        self._check(a)
        if k < 0:
            a, k = self.inv(a), -k
        x = self.identity
        for _ in range(k):
            x = self.table[x][a]
        return x

    def element_order(self, a: int) -> int:
        self._check(a)
        x, k = a, 1
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def subset(self, members: Iterable[int]) -> "ElementSet":
        return ElementSet.of(self, members)

    def named_subset(self, names: Iterable[str]) -> "ElementSet":
        return ElementSet.of(self, (self.index(s) for s in names))

    def whole(self) -> "ElementSet":
        return ElementSet(self, tuple(range(self.order)))


@dataclass(frozen=True, order=True)
class ElementSet:
    """A canonically sorted subset of a group's elements.

    Equality, hashing and ordering use the member tuple only, so sets coming
    from different algorithms compare by value.
    """

    group: FiniteGroup = field(compare=False, hash=False, repr=False)
    members: tuple[int, ...]

    @classmethod
    def of(cls, group: FiniteGroup, members: Iterable[int]) -> "ElementSet":
        ms = tuple(sorted(set(int(m) for m in members)))
        if ms and (ms[0] < 0 or ms[-1] >= group.order):
            raise IndexOutOfRange(f"subset members must lie in 0..{group.order - 1}")
        return cls(group, ms)

    @classmethod
    def from_mask(cls, group: FiniteGroup, mask: int) -> "ElementSet":
        return cls(group, tuple(i for i in range(group.order) if mask >> i & 1))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x: object) -> bool:
        return x in self.members

    @cached_property
    def mask(self) -> int:
        m = 0
        for x in self.members:
            m |= 1 << x
        return m

    @property
    def names(self) -> list[str]:
        return [self.group.names[i] for i in self.members]

    def __and__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet.from_mask(self.group, self.mask & other.mask)

    def __or__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet.from_mask(self.group, self.mask | other.mask)

    def __sub__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet.from_mask(self.group, self.mask & ~other.mask)

    def issubset(self, other: "ElementSet") -> bool:
        return self.mask & ~other.mask == 0

    def __str__(self) -> str:
        return "{" + ", ".join(self.names) + "}"


# ---------------------------------------------------------------- construction


def build_from_cayley(
    table: Sequence[Sequence[int]],
    names: Sequence[str] | None = None,
    *,
    label: str = "",
    max_order: int = DEFAULT_MAX_ORDER,
) -> FiniteGroup:
    """Validate a Cayley table against the group axioms and wrap it.

    Raises the first violation found, naming the offending cell or triple.
    """
    try:
        arr = np.asarray(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise InvalidParameter(f"Cayley table is not a rectangular integer array: {exc}") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise InvalidParameter(f"Cayley table must be a non-empty square array, got shape {arr.shape}")
    n = arr.shape[0]
    if n > max_order:
        raise OrderTooLarge(f"group order {n} exceeds cap {max_order}")
    if arr.min() < 0 or arr.max() >= n:
        i, j = np.argwhere((arr < 0) | (arr >= n))[0]
        raise InvalidParameter(f"table[{i}][{j}] = {arr[i, j]} is outside 0..{n - 1}")
    if names is None:
        names = [str(i) for i in range(n)]
    names = tuple(str(s) for s in names)
    if len(names) != n:
        raise InvalidParameter(f"{len(names)} names given for a table of order {n}")

    _check_latin(arr)
    e = _find_identity(arr)
    _check_inverses(arr, e)
    _check_associative(arr)
    return FiniteGroup(tuple(tuple(int(x) for x in row) for row in arr), names, e, label)


def _check_latin(arr: np.ndarray) -> None:
    n = arr.shape[0]
    full = np.arange(n)
    for axis, what in ((1, "row"), (0, "column")):
        lines = arr if axis == 1 else arr.T
        bad = np.nonzero((np.sort(lines, axis=1) != full).any(axis=1))[0]
        if bad.size:
            i = int(bad[0])
            seen: set[int] = set()
            for j, x in enumerate(lines[i]):
                if int(x) in seen:
                    cell = (i, j) if axis == 1 else (j, i)
                    raise NotLatinSquare(
                        f"{what} {i} repeats {int(x)} at table[{cell[0]}][{cell[1]}]"
                    )
                seen.add(int(x))


def _find_identity(arr: np.ndarray) -> int:
    full = np.arange(arr.shape[0])
    for e in range(arr.shape[0]):
        if np.array_equal(arr[e], full) and np.array_equal(arr[:, e], full):
            return e
    raise NoIdentity("no element acts as a two-sided identity")


def _check_inverses(arr: np.ndarray, e: int) -> None:
    for a in range(arr.shape[0]):
        b = int(np.nonzero(arr[a] == e)[0][0])
        if arr[b, a] != e:
            raise NoInverse(f"element {a} has right inverse {b} but table[{b}][{a}] != identity")


def _check_associative(arr: np.ndarray) -> None:
    # (a*b)*c == a*(b*c), one left factor at a time: O(n^2) memory
    for a in range(arr.shape[0]):
        left = arr[arr[a]]  # left[b, c] = (a*b)*c
        right = arr[a][arr]  # right[b, c] = a*(b*c)
        if not np.array_equal(left, right):
            b, c = np.argwhere(left != right)[0]
            raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})")


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise InvalidParameter(msg)


def _cap(order: int, max_order: int) -> None:
    if order > max_order:
        raise OrderTooLarge(f"group order {order} exceeds cap {max_order}")


def _word(gen: str, i: int) -> str:
    if i == 0:
        return ""
    return gen if i == 1 else f"{gen}^{i}"


def _coset_names(rot: str, refl: str, n: int) -> list[str]:
    names = ["e"] + [_word(rot, i) for i in range(1, n)]
    names += [_word(rot, i) + refl for i in range(n)]
    return names


def _metacyclic(n: int, twist: int, square_shift: int | None, names, label, max_order):
    """Table for elements a^i b^x (i < n, x in {0,1}), index i + n*x.

    ``b a^j = a^(twist*j) b``; ``b^2 = a^square_shift`` (identity when None).
    """
    order = 2 * n
    _cap(order, max_order)
    table = [[0] * order for _ in range(order)]
    for x in range(2):
        for i in range(n):
            for y in range(2):
                for j in range(n):
                    k = i + (j * twist if x else j)
                    z = x + y
                    if z == 2:
                        z = 0
                        k += square_shift or 0
                    table[i + n * x][j + n * y] = k % n + n * z
    return build_from_cayley(table, names, label=label, max_order=max_order)


def make_dihedral(n: int, *, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Dihedral group of order 2n: r^n = s^2 = e, srs = r^-1.

    Elements in order e, r, ..., r^(n-1), s, rs, ..., r^(n-1)s.
    """
    _require(isinstance(n, int) and n >= 3, f"dihedral parameter must be an integer >= 3, got {n!r}")
    return _metacyclic(n, -1, None, _coset_names("r", "s", n), f"D_{2 * n}", max_order)


def make_semidihedral(n: int, *, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Order 8n group with a^(4n) = b^2 = e and ba = a^(2n-1) b."""
    _require(isinstance(n, int) and n >= 2, f"semidihedral parameter must be an integer >= 2, got {n!r}")
    return _metacyclic(4 * n, 2 * n - 1, None, _coset_names("a", "b", 4 * n), f"SD_{8 * n}", max_order)


def make_generalized_quaternion(n: int, *, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Order 4n group with a^(2n) = e, b^2 = a^n and b^-1 a b = a^-1."""
    _require(isinstance(n, int) and n >= 2, f"quaternion parameter must be an integer >= 2, got {n!r}")
    return _metacyclic(2 * n, -1, n, _coset_names("a", "b", 2 * n), f"Q_{4 * n}", max_order)


def make_cyclic(n: int, *, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    _require(isinstance(n, int) and n >= 1, f"cyclic parameter must be an integer >= 1, got {n!r}")
    _cap(n, max_order)
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    names = ["e"] + [_word("g", i) for i in range(1, n)]
    return build_from_cayley(table, names, label=f"Z_{n}", max_order=max_order)


def cycle_notation(perm: Sequence[int]) -> str:
    """Cycle notation on points 1..n, e.g. ``(123)`` or ``(12)(34)``; identity is ``(1)``."""
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x + 1)
            x = perm[x]
        sep = "," if len(perm) > 9 else ""
        out.append("(" + sep.join(map(str, cyc)) + ")")
    return "".join(out) or "(1)"


def _perm_group(perms: list[tuple[int, ...]], label: str, max_order: int) -> FiniteGroup:
    _cap(len(perms), max_order)
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(x) = p(q(x))
    table = [[index[tuple(p[x] for x in q)] for q in perms] for p in perms]
    return build_from_cayley(table, [cycle_notation(p) for p in perms], label=label, max_order=max_order)


def _parity(perm: Sequence[int]) -> int:
    inv = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            inv += perm[i] > perm[j]
    return inv % 2


def _factorial_capped(n: int, divisor: int, max_order: int) -> None:
    size = 1
    for k in range(2, n + 1):
        size *= k
        if size // divisor > max_order:
            raise OrderTooLarge(f"group of degree {n} exceeds order cap {max_order}")


def make_symmetric(n: int, *, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Symmetric group on n points, permutations in lexicographic order."""
    _require(isinstance(n, int) and n >= 1, f"symmetric parameter must be an integer >= 1, got {n!r}")
    _factorial_capped(n, 1, max_order)
    return _perm_group(list(itertools.permutations(range(n))), f"S_{n}", max_order)


def make_alternating(n: int, *, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Even permutations on n points, in lexicographic order."""
    _require(isinstance(n, int) and n >= 3, f"alternating parameter must be an integer >= 3, got {n!r}")
    _factorial_capped(n, 2, max_order)
    perms = [p for p in itertools.permutations(range(n)) if _parity(p) == 0]
    return _perm_group(perms, f"A_{n}", max_order)


def make_direct_product(g: FiniteGroup, h: FiniteGroup, *, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """G x H with element (x, y) at index x*|H| + y."""
    m, n = g.order, h.order
    _cap(m * n, max_order)
    gt, ht = g.table, h.table
    table = [
        [gt[x1][x2] * n + ht[y1][y2] for x2 in range(m) for y2 in range(n)]
        for x1 in range(m)
        for y1 in range(n)
    ]
    names = [f"({a},{b})" for a in g.names for b in h.names]
    label = f"{g.label or 'G'}x{h.label or 'H'}"
    return build_from_cayley(table, names, label=label, max_order=max_order)


# ---------------------------------------------------------------- queries


def commute(g: FiniteGroup, a: int, b: int) -> bool:
    g._check(a)
    g._check(b)
    return g.table[a][b] == g.table[b][a]


def centralizer(g: FiniteGroup, a: int) -> ElementSet:
    g._check(a)
    return ElementSet.from_mask(g, g.centralizer_masks[a])


def center(g: FiniteGroup) -> ElementSet:
    mask = (1 << g.order) - 1
    for m in g.centralizer_masks:
        mask &= m
    return ElementSet.from_mask(g, mask)


def involutions(g: FiniteGroup) -> ElementSet:
    e = g.identity
    return ElementSet.of(g, (a for a in range(g.order) if a != e and g.table[a][a] == e))


def is_abelian(g: FiniteGroup) -> bool:
    full = (1 << g.order) - 1
    return all(m == full for m in g.centralizer_masks)


def is_subgroup(g: FiniteGroup, s: ElementSet) -> bool:
    if g.identity not in s:
        return False
    mask = s.mask
    for a in s:
        if not mask >> g.inv(a) & 1:
            return False
        row = g.table[a]
        for b in s:
            if not mask >> row[b] & 1:
                return False
    return True


def is_commuting(g: FiniteGroup, s: Iterable[int]) -> bool:
    s = list(s)
    masks = g.centralizer_masks
    want = 0
    for x in s:
        want |= 1 << x
    return all(masks[x] & want == want for x in s)


# ---------------------------------------------------------------- file format


def group_to_dict(g: FiniteGroup) -> dict:
    return {"order": g.order, "names": list(g.names), "table": [list(r) for r in g.table]}


def group_from_dict(data: dict, *, label: str = "", max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    if not isinstance(data, dict):
        raise FileParseError("Cayley document must be an object with order, names, table")
    missing = {"order", "table"} - data.keys()
    if missing:
        raise FileParseError(f"Cayley document lacks field(s): {', '.join(sorted(missing))}")
    table = data["table"]
    order = data["order"]
    if not isinstance(order, int) or not isinstance(table, list) or len(table) != order:
        raise FileParseError(f"declared order {order!r} does not match table with {len(table)} rows")
    return build_from_cayley(table, data.get("names"), label=label, max_order=max_order)


def save_cayley(g: FiniteGroup, path: str | Path) -> None:
    Path(path).write_text(json.dumps(group_to_dict(g)) + "\n", encoding="utf-8")


def load_cayley(path: str | Path, *, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    p = Path(path)
    try:
        data = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FileParseError(f"{p}: not valid JSON ({exc})") from None
    return group_from_dict(data, label=p.stem, max_order=max_order)
