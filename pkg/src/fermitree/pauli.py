"""Exact algebra of phase-tracked multi-qubit Pauli strings.

A :class:`PauliString` is a sparse tensor product of single-qubit Pauli
letters together with a global phase restricted to {+1, +i, -1, -i}.  The
phase is stored as an integer power of i, so products, commutation checks
and involutions are exact integer arithmetic with no floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

_PHASES: tuple[complex, ...] = (1, 1j, -1, -1j)
_PHASE_TOKENS = {"+": 0, "+i": 1, "-": 2, "-i": 3}
_TOKENS_BY_POWER = {v: k for k, v in _PHASE_TOKENS.items()}

# Single-qubit products: (a, b) -> (resulting letter or None, added power of i).
_LETTER_PRODUCT: dict[tuple[str, str], tuple[str | None, int]] = {
    ("X", "X"): (None, 0),
    ("Y", "Y"): (None, 0),
    ("Z", "Z"): (None, 0),
    ("X", "Y"): ("Z", 1),
    ("Y", "Z"): ("X", 1),
    ("Z", "X"): ("Y", 1),
    ("Y", "X"): ("Z", 3),
    ("Z", "Y"): ("X", 3),
    ("X", "Z"): ("Y", 3),
}

PAULI_MATRICES: dict[str, np.ndarray] = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_LETTER_TOKEN = re.compile(r"^([XYZ])(\d+)$")

DENSE_QUBIT_LIMIT = 14


@dataclass(frozen=True)
class PauliString:
    """Sparse multi-qubit Pauli operator with an exact i-power phase.

    Attributes:
        letters: sorted tuple of (qubit index, letter) pairs; identity
            factors are never stored.
        phase_power: integer k with the global phase equal to i**k.
    """

    letters: tuple[tuple[int, str], ...] = ()
    phase_power: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "phase_power", self.phase_power % 4)
        pairs = tuple(sorted(self.letters))
        seen = set()
        for qubit, letter in pairs:
            if qubit < 0:
                raise ValueError(f"negative qubit index {qubit}")
            if letter not in ("X", "Y", "Z"):
                raise ValueError(f"invalid Pauli letter {letter!r}")
            if qubit in seen:
                raise ValueError(f"duplicate qubit index {qubit}")
            seen.add(qubit)
        object.__setattr__(self, "letters", pairs)

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, phase_power: int = 0) -> "PauliString":
        return cls((), phase_power)

    @classmethod
    def single(cls, qubit: int, letter: str, phase_power: int = 0) -> "PauliString":
        return cls(((qubit, letter),), phase_power)

    @classmethod
    def from_map(cls, letters: dict[int, str], phase_power: int = 0) -> "PauliString":
        return cls(tuple(letters.items()), phase_power)

    # -- queries -----------------------------------------------------------

    @property
    def weight(self) -> int:
        """Number of qubits acted on nontrivially."""
        return len(self.letters)

    @property
    def phase(self) -> complex:
        return _PHASES[self.phase_power]

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def letter_map(self) -> dict[int, str]:
        return dict(self.letters)

    def support(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.letters)

    # -- algebra -----------------------------------------------------------

    def __mul__(self, other: "PauliString") -> "PauliString":
        """Operator product self @ other with exact phase accumulation."""
        if not isinstance(other, PauliString):
            return NotImplemented
        product = dict(self.letters)
        power = self.phase_power + other.phase_power
        for qubit, letter in other.letters:
            mine = product.get(qubit)
            if mine is None:
                product[qubit] = letter
            else:
                merged, extra = _LETTER_PRODUCT[(mine, letter)]
                power += extra
                if merged is None:
                    del product[qubit]
                else:
                    product[qubit] = merged
        return PauliString(tuple(product.items()), power)

    def anticommutes_with(self, other: "PauliString") -> bool:
        """True iff self*other == -other*self.

        Two strings anticommute exactly when the number of shared qubits
        carrying different letters is odd.
        """
        mine = dict(self.letters)
        differing = sum(
            1 for qubit, letter in other.letters
            if qubit in mine and mine[qubit] != letter
        )
        return differing % 2 == 1

    def commutes_with(self, other: "PauliString") -> bool:
        return not self.anticommutes_with(other)

    # -- densification -----------------------------------------------------

    def to_dense(self, num_qubits: int) -> np.ndarray:
        """Dense 2**num_qubits matrix, qubit 0 as the leftmost tensor factor.

        Intended as a brute-force oracle; refuses registers beyond
        ``DENSE_QUBIT_LIMIT`` qubits.
        """
        if num_qubits > DENSE_QUBIT_LIMIT:
            raise ValueError(
                f"dense form limited to {DENSE_QUBIT_LIMIT} qubits, got {num_qubits}"
            )
        if self.letters and self.letters[-1][0] >= num_qubits:
            raise ValueError(
                f"qubit index {self.letters[-1][0]} out of range for {num_qubits} qubits"
            )
        mat = np.array([[self.phase]], dtype=complex)
        lookup = self.letter_map()
        for qubit in range(num_qubits):
            mat = np.kron(mat, PAULI_MATRICES[lookup.get(qubit, "I")])
        return mat

    # -- text format -------------------------------------------------------

    def __str__(self) -> str:
        prefix = _TOKENS_BY_POWER[self.phase_power]
        if not self.letters:
            return f"{prefix} I"
        body = " ".join(f"{letter}{qubit}" for qubit, letter in self.letters)
        return f"{prefix} {body}"

    @classmethod
    def parse(cls, text: str) -> "PauliString":
        """Parse the text format, e.g. ``"+i X0 Z3 Y7"`` or ``"+ I"``.

        The phase prefix is optional and defaults to ``+``.  Round-trips
        with :meth:`__str__`.
        """
        tokens = text.split()
        if not tokens:
            raise ValueError("empty Pauli string text")
        power = 0
        if tokens[0] in _PHASE_TOKENS:
            power = _PHASE_TOKENS[tokens[0]]
            tokens = tokens[1:]
        if tokens == ["I"]:
            return cls.identity(power)
        if not tokens:
            raise ValueError("missing letter tokens (identity is spelled 'I')")
        pairs = []
        for token in tokens:
            match = _LETTER_TOKEN.match(token)
            if match is None:
                raise ValueError(f"malformed Pauli token {token!r}")
            pairs.append((int(match.group(2)), match.group(1)))
        return cls(tuple(pairs), power)


def multiply(a: PauliString, b: PauliString) -> PauliString:
    """Canonical product with accumulated phase; weight(a*b) <= weight(a)+weight(b)."""
    return a * b


def anticommutes(a: PauliString, b: PauliString) -> bool:
    """True iff a*b = -b*a (odd number of shared sites with differing letters)."""
    return a.anticommutes_with(b)


def to_dense(p: PauliString, num_qubits: int) -> np.ndarray:
    """Exact dense tensor-product matrix of ``p`` including its phase."""
    return p.to_dense(num_qubits)
