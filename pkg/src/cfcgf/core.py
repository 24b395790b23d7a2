"""Coxeter systems, presets, and elementary word operations.

A Coxeter system is described by its symmetric matrix m: m[s][s] = 1 and,
for s != t, m[s][t] in {2, 3, ...} or infinity.  Generators are the
indices 0..rank-1; optional display names ride along for rendering only.
Words are tuples of generator indices.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .errors import InputError

INF = float("inf")

DEFAULT_MAX_RANK = 16


class TrackedPair(NamedTuple):
    """Unordered non-commuting pair, normalized s < t."""

    s: int
    t: int
    m: int | float

    @property
    def unbounded(self) -> bool:
        return self.m == INF


@dataclass(frozen=True)
class CoxeterSystem:
    matrix: tuple[tuple[int | float, ...], ...]
    names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        m = self.matrix
        n = len(m)
        if n < 1:
            raise InputError("a Coxeter system needs at least one generator")
        if any(len(row) != n for row in m):
            raise InputError("Coxeter matrix must be square")
        for i in range(n):
            if m[i][i] != 1:
                raise InputError(f"diagonal entry m[{i}][{i}] must be 1")
            for j in range(i + 1, n):
                if m[i][j] != m[j][i]:
                    raise InputError(f"Coxeter matrix must be symmetric at ({i},{j})")
                v = m[i][j]
                if v == INF:
                    continue
                if not isinstance(v, int) or v < 2:
                    raise InputError(
                        f"off-diagonal entry m[{i}][{j}]={v!r} must be an integer >= 2 or infinity"
                    )
        if not self.names:
            object.__setattr__(self, "names", tuple(str(i) for i in range(n)))
        elif len(self.names) != n:
            raise InputError("generator name list does not match matrix size")

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @property
    def generators(self) -> range:
        return range(self.rank)

    def m(self, s: int, t: int) -> int | float:
        return self.matrix[s][t]

    def commutes(self, s: int, t: int) -> bool:
        """True iff s and t are distinct and st = ts (edge label 2)."""
        return s != t and self.matrix[s][t] == 2

    def non_commuting(self, s: int) -> tuple[int, ...]:
        """Generators t != s with m[s][t] >= 3 (including infinity)."""
        return tuple(t for t in self.generators if t != s and self.matrix[s][t] != 2)

    def tracked_pairs(self) -> tuple[TrackedPair, ...]:
        """All pairs s < t with m[s][t] >= 3, i.e. pairs carrying a relation
        longer than a commutation (or none at all, when the label is infinite)."""
        out = []
        for s in self.generators:
            for t in range(s + 1, self.rank):
                if self.matrix[s][t] != 2:
                    out.append(TrackedPair(s, t, self.matrix[s][t]))
        return tuple(out)


def cyclic_shifts(word: tuple[int, ...]) -> list[tuple[int, ...]]:
    """All rotations of word, the word itself first.  The empty word has
    exactly one shift (itself)."""
    if not word:
        return [()]
    return [word[k:] + word[:k] for k in range(len(word))]


# ---------------------------------------------------------------------------
# Presets and the explicit-matrix document format.

_PRESET_RE = re.compile(r"^(A|B|D|tA)(\d+)$|^I2:(\d+|inf)$")


def _path_matrix(k: int, last: int | float = 3) -> list[list[int | float]]:
    m: list[list[int | float]] = [[2] * k for _ in range(k)]
    for i in range(k):
        m[i][i] = 1
    for i in range(k - 1):
        m[i][i + 1] = m[i + 1][i] = 3
    if k >= 2:
        m[k - 2][k - 1] = m[k - 1][k - 2] = last
    return m


def preset_system(name: str) -> CoxeterSystem:
    """Build one of the named families:

    A<k>      path on k nodes, all labels 3 (A1 is the single generator)
    B<k>      path on k nodes with label 4 on the last edge (k >= 2)
    D<k>      fork: nodes 0 and 1 both joined to 2, then a path (k >= 3)
    I2:<m>    dihedral with label m >= 3, or I2:inf
    tA1       two generators with an infinite label
    tA<k>     cycle on k+1 nodes, all labels 3 (k >= 2)
    """
    mo = _PRESET_RE.match(name)
    if not mo:
        raise InputError(f"unknown system preset {name!r}")
    if mo.group(3) is not None:
        lab: int | float = INF if mo.group(3) == "inf" else int(mo.group(3))
        if lab != INF and lab < 3:
            raise InputError("I2:<m> needs m >= 3 (use an explicit matrix for m = 2)")
        return CoxeterSystem(((1, lab), (lab, 1)))
    fam, k = mo.group(1), int(mo.group(2))
    if fam == "A":
        if k < 1:
            raise InputError("A<k> needs k >= 1")
        return CoxeterSystem(tuple(tuple(r) for r in _path_matrix(k)))
    if fam == "B":
        if k < 2:
            raise InputError("B<k> needs k >= 2")
        return CoxeterSystem(tuple(tuple(r) for r in _path_matrix(k, last=4)))
    if fam == "D":
        if k < 3:
            raise InputError("D<k> needs k >= 3")
        m = _path_matrix(k)
        # prongs 0 and 1 both attach to 2; undo the 0-1 path edge
        m[0][1] = m[1][0] = 2
        m[0][2] = m[2][0] = 3
        return CoxeterSystem(tuple(tuple(r) for r in m))
    # affine family tA<k>
    if k == 1:
        return CoxeterSystem(((1, INF), (INF, 1)))
    n = k + 1
    m = [[2] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 1
        j = (i + 1) % n
        m[i][j] = m[j][i] = 3
    return CoxeterSystem(tuple(tuple(r) for r in m))


def _entry_from_json(v, where: str) -> int | float:
    if v == "inf":
        return INF
    if isinstance(v, bool) or not isinstance(v, int):
        raise InputError(f"matrix entry at {where} must be an integer or \"inf\"")
    return v


def parse_system(text: str, max_rank: int = DEFAULT_MAX_RANK) -> CoxeterSystem:
    """Accept either a preset name (see preset_system) or a JSON document

        {"generators": ["a", "b"], "matrix": [[1, 3], [3, 1]]}

    with "inf" standing for an infinite label.  The generators field is
    optional.  Rank is capped (transition tables use machine-word bitsets).
    """
    text = text.strip()
    if text.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError(f"bad system document: {e}") from None
        if not isinstance(doc, dict) or "matrix" not in doc:
            raise InputError('system document needs a "matrix" field')
        raw = doc["matrix"]
        if not isinstance(raw, list) or not raw:
            raise InputError("matrix must be a non-empty list of rows")
        mat = tuple(
            tuple(_entry_from_json(v, f"({i},{j})") for j, v in enumerate(row))
            for i, row in enumerate(raw)
        )
        names: tuple[str, ...] = ()
        if "generators" in doc:
            gens = doc["generators"]
            if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
                raise InputError("generators must be a list of strings")
            names = tuple(gens)
        system = CoxeterSystem(mat, names)
    else:
        system = preset_system(text)
    if system.rank > max_rank:
        raise InputError(f"rank {system.rank} exceeds the cap of {max_rank}")
    return system


def serialize_system(system: CoxeterSystem) -> str:
    """Inverse of parse_system for explicit documents (round-trips exactly)."""
    mat = [["inf" if v == INF else v for v in row] for row in system.matrix]
    return json.dumps({"generators": list(system.names), "matrix": mat})
