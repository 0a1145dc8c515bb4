"""Ternary-tree encoding of Majorana operators into Pauli strings.

The 2n+1 root-to-leaf paths of a ternary tree with n internal nodes give
2n+1 mutually anticommuting Pauli strings; dropping one yields a mapping
for the 2n Majorana operators of n fermionic modes.  Every string has
weight at most ceil(log3(2n+1)), which saturates the log3(2n) lower bound
on the mean weight up to rounding.

Conventions fixed here:
    * nodes are numbered level by level, left to right, with the root 0;
    * the three child branches carry X, Y, Z in that order;
    * incomplete trees extend the leftmost leaves of the last complete
      level, so leaf qubit labels match their complete-tree node numbers;
    * the dropped path is the all-Z path (rightmost leaf of the base
      tree), which is never extended;
    * Majorana index u runs from 1 to 2n over the kept paths in
      lexicographic order.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field

from .pauli import PauliString

BRANCH_LETTERS = ("X", "Y", "Z")

TreePath = tuple[int, ...]


def node_index(path: TreePath, level: int) -> int:
    """Index of the node reached after ``level`` steps of ``path``.

    Level l of the tree starts at node (3**l - 1)/2; within the level the
    branch digits of the path read as a base-3 offset.
    """
    if not 0 <= level <= len(path):
        raise ValueError(f"level {level} outside path of length {len(path)}")
    offset = 0
    for step in path[:level]:
        if step not in (0, 1, 2):
            raise ValueError(f"invalid branch {step}")
        offset = 3 * offset + step
    return (3 ** level - 1) // 2 + offset


def path_operator(path: TreePath) -> PauliString:
    """Pauli string of a root-to-leaf path: branch letter at each visited node."""
    letters = {}
    for level, step in enumerate(path):
        letters[node_index(path, level)] = BRANCH_LETTERS[step]
    return PauliString.from_map(letters)


def _base_height(n_modes: int) -> int:
    # Largest h with 3**h <= 2n+1; the base tree is complete with height h.
    target = 2 * n_modes + 1
    h = 0
    while 3 ** (h + 1) <= target:
        h += 1
    return h


def _all_paths(base_height: int, extended_leaves: tuple[TreePath, ...]) -> tuple[TreePath, ...]:
    extended = set(extended_leaves)
    out: list[TreePath] = []
    for leaf in itertools.product((0, 1, 2), repeat=base_height):
        if leaf in extended:
            out.extend(leaf + (c,) for c in (0, 1, 2))
        else:
            out.append(leaf)
    return tuple(out)


@dataclass(frozen=True)
class TernaryTreeMapping:
    """Majorana-to-Pauli table for n fermionic modes on n qubits.

    Attributes:
        n_modes: number of fermionic modes n.
        base_height: height h of the underlying complete ternary tree.
        extended_leaves: paths of the base-tree leaves grown by one level
            to reach 2n+1 total paths (leftmost-first, possibly empty).
        num_qubits: qubit count, always equal to n_modes.
        majorana_table: kept path operators in lexicographic path order;
            entry u-1 represents Majorana operator u, u = 1..2n.
        dropped_path: the all-Z path excluded from the table.
    """

    n_modes: int
    base_height: int
    extended_leaves: tuple[TreePath, ...]
    num_qubits: int
    majorana_table: tuple[PauliString, ...] = field(repr=False)
    dropped_path: TreePath

    def paths(self) -> tuple[TreePath, ...]:
        """All 2n+1 tree paths in lexicographic order, dropped one included."""
        return _all_paths(self.base_height, self.extended_leaves)

    def kept_paths(self) -> tuple[TreePath, ...]:
        return tuple(p for p in self.paths() if p != self.dropped_path)


def build_mapping(n_modes: int) -> TernaryTreeMapping:
    """Construct the ternary-tree mapping for ``n_modes`` fermionic modes.

    The base tree is the largest complete ternary tree with at most 2n+1
    leaves; the leftmost m = n - (3**h - 1)/2 leaves are extended by one
    level.  Extending a leaf replaces its path operator by three new ones
    acting additionally on the new node's qubit, and the new node receives
    the qubit label the leaf had, so labels stay contiguous in 0..n-1.
    """
    if n_modes < 1:
        raise ValueError(f"need at least one mode, got {n_modes}")
    h = _base_height(n_modes)
    internal = (3 ** h - 1) // 2
    m = n_modes - internal
    base_leaves = list(itertools.product((0, 1, 2), repeat=h))
    if not 0 <= m < 3 ** h:
        raise AssertionError("extension count out of range")
    extended = tuple(base_leaves[:m])
    dropped = (2,) * h
    assert dropped not in extended, "the all-Z path must stay a leaf"

    kept = tuple(p for p in _all_paths(h, extended) if p != dropped)
    table = tuple(path_operator(p) for p in kept)
    if len(table) != 2 * n_modes:
        raise AssertionError("mapping must contain exactly 2n operators")
    return TernaryTreeMapping(
        n_modes=n_modes,
        base_height=h,
        extended_leaves=extended,
        num_qubits=n_modes,
        majorana_table=table,
        dropped_path=dropped,
    )


def majorana_operator(mapping: TernaryTreeMapping, u: int) -> PauliString:
    """Pauli string of Majorana operator u, 1-indexed."""
    if not 1 <= u <= 2 * mapping.n_modes:
        raise ValueError(f"Majorana index {u} outside 1..{2 * mapping.n_modes}")
    return mapping.majorana_table[u - 1]


def weight_lower_bound(n_modes: int) -> float:
    """Information-theoretic lower bound log3(2n) on the mean Pauli weight.

    Holds for every encoding of 2n anticommuting Majorana operators on any
    number of qubits, hence for Jordan-Wigner and Bravyi-Kitaev too.
    """
    if n_modes < 1:
        raise ValueError(f"need at least one mode, got {n_modes}")
    return math.log(2 * n_modes) / math.log(3)


@dataclass(frozen=True)
class MappingVerification:
    """Outcome of the exhaustive algebraic checks on a Majorana table."""

    n_operators: int
    anticommutation_failures: tuple[tuple[int, int], ...]
    square_failures: tuple[int, ...]
    identity_product_ok: bool | None
    identity_product_phase_power: int | None
    weight_histogram: dict[int, int]
    mean_weight: float
    max_weight: int

    @property
    def passed(self) -> bool:
        return (
            not self.anticommutation_failures
            and not self.square_failures
            and self.identity_product_ok is not False
        )


def verify_table(table: tuple[PauliString, ...]) -> MappingVerification:
    """Exhaustive anticommutation and involution checks on a Majorana table.

    Applies to any encoding (failures are reported as 1-based index
    pairs); the tree identity-product fields stay None.
    """
    if not table:
        raise ValueError("empty operator table")
    anti_failures = []
    for a, b in itertools.combinations(range(len(table)), 2):
        if not table[a].anticommutes_with(table[b]):
            anti_failures.append((a + 1, b + 1))
    square_failures = []
    for u, op in enumerate(table):
        sq = op * op
        if sq.letters or sq.phase_power != 0:
            square_failures.append(u + 1)
    weights = [op.weight for op in table]
    histogram: dict[int, int] = {}
    for w in weights:
        histogram[w] = histogram.get(w, 0) + 1
    return MappingVerification(
        n_operators=len(table),
        anticommutation_failures=tuple(anti_failures),
        square_failures=tuple(square_failures),
        identity_product_ok=None,
        identity_product_phase_power=None,
        weight_histogram=dict(sorted(histogram.items())),
        mean_weight=sum(weights) / len(weights),
        max_weight=max(weights),
    )


def verify_mapping(mapping: TernaryTreeMapping) -> MappingVerification:
    """Check the defining Majorana algebra plus the tree identity.

    Verifies that all table entries pairwise anticommute, that each squares
    to +identity, and, since the kept paths plus the dropped path exhaust
    the tree, that the ordered product of all 2n+1 path operators is a pure
    phase times the identity (every node letter appears exactly three
    times, once per branch).
    """
    base = verify_table(mapping.majorana_table)
    product = PauliString.identity()
    for path in mapping.paths():
        product = product * path_operator(path)
    identity_ok = not product.letters
    return MappingVerification(
        n_operators=base.n_operators,
        anticommutation_failures=base.anticommutation_failures,
        square_failures=base.square_failures,
        identity_product_ok=identity_ok,
        identity_product_phase_power=product.phase_power if identity_ok else None,
        weight_histogram=base.weight_histogram,
        mean_weight=base.mean_weight,
        max_weight=base.max_weight,
    )


def max_weight_bound(n_modes: int) -> int:
    """ceil(log3(2n+1)): no path is longer than the extended tree height."""
    h = _base_height(n_modes)
    return h if 3 ** h == 2 * n_modes + 1 else h + 1


# -- serialization ---------------------------------------------------------


def mapping_to_dict(mapping: TernaryTreeMapping) -> dict:
    return {
        "kind": "ternary",
        "n_modes": mapping.n_modes,
        "num_qubits": mapping.num_qubits,
        "base_height": mapping.base_height,
        "extended_leaves": [list(p) for p in mapping.extended_leaves],
        "dropped_path": list(mapping.dropped_path),
        "majorana_table": [str(op) for op in mapping.majorana_table],
    }


def mapping_from_dict(data: dict) -> TernaryTreeMapping:
    if data.get("kind") != "ternary":
        raise ValueError(f"not a ternary mapping payload: kind={data.get('kind')!r}")
    mapping = TernaryTreeMapping(
        n_modes=data["n_modes"],
        base_height=data["base_height"],
        extended_leaves=tuple(tuple(p) for p in data["extended_leaves"]),
        num_qubits=data["num_qubits"],
        majorana_table=tuple(PauliString.parse(s) for s in data["majorana_table"]),
        dropped_path=tuple(data["dropped_path"]),
    )
    return mapping


def save_mapping(mapping: TernaryTreeMapping, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(mapping_to_dict(mapping), fh, indent=2)
        fh.write("\n")


def load_mapping(path: str) -> TernaryTreeMapping:
    with open(path, encoding="utf-8") as fh:
        return mapping_from_dict(json.load(fh))
