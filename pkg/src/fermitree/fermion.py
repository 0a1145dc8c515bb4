"""Fermionic k-RDMs through a Majorana encoding, exact and sampled.

Majorana operators are numbered 1..2n, operators 2j-1 and 2j belonging to
mode j with gamma_{2j-1} = c_j^dag + c_j and gamma_{2j} = i(c_j^dag - c_j).
Any mapping is consumed as its Majorana table (entry u-1 holding operator
u), so the ternary-tree, Jordan-Wigner and Bravyi-Kitaev encodings are
interchangeable everywhere below; expectation values of encoded monomials
are representation independent.

The sampled pipeline reuses the qubit Bell-measurement scheme: a k-RDM
monomial of 2k Majorana operators encodes to a single Pauli string, whose
expectation is read off the common shot stream with attenuation
sqrt(3)^weight, at most (2n+1)^k for the ternary-tree mapping.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .pauli import PauliString
from .statesim import (
    BellShotStream,
    DenseState,
    attach_ancillas,
    expectation,
    pauli_matvec,
    sample_bell_shots,
)
from .ternary import TernaryTreeMapping
from .tomography import BELL_EIGENVALUES, LETTERS

MappingLike = Union[TernaryTreeMapping, Sequence[PauliString]]

_PHASES = (1, 1j, -1, -1j)


def majorana_table(mapping: MappingLike) -> tuple[PauliString, ...]:
    """Majorana tables of any mapping kind, entry u-1 for operator u."""
    if isinstance(mapping, TernaryTreeMapping):
        return mapping.majorana_table
    table = tuple(mapping)
    if not table or len(table) % 2 != 0:
        raise ValueError(f"Majorana table must have even positive length, got {len(table)}")
    return table


def mode_count(mapping: MappingLike) -> int:
    return len(majorana_table(mapping)) // 2


@dataclass(frozen=True)
class MajoranaMonomial:
    """Ordered product of distinct Majorana operators times a coefficient."""

    indices: tuple[int, ...]
    coefficient: complex = 1.0

    def __post_init__(self) -> None:
        if any(u < 1 for u in self.indices):
            raise ValueError("Majorana indices are 1-based")
        if list(self.indices) != sorted(set(self.indices)):
            raise ValueError(
                f"indices must be strictly increasing, got {self.indices}; "
                "use from_unordered to normalize"
            )

    @classmethod
    def from_unordered(
        cls, indices: Sequence[int], coefficient: complex = 1.0
    ) -> "MajoranaMonomial":
        """Sort the factors, folding the permutation sign into the coefficient.

        Distinct Majorana operators anticommute, so each transposition
        flips the sign.  Repeated indices are rejected rather than
        cancelled.
        """
        order = list(indices)
        if len(set(order)) != len(order):
            raise ValueError(f"repeated Majorana index in {order}")
        swaps = 0
        for i in range(1, len(order)):
            j = i
            while j > 0 and order[j - 1] > order[j]:
                order[j - 1], order[j] = order[j], order[j - 1]
                swaps += 1
                j -= 1
        sign = -1.0 if swaps % 2 else 1.0
        return cls(tuple(order), coefficient * sign)

    @property
    def degree(self) -> int:
        return len(self.indices)


def hermitization_phase(num_factors: int) -> complex:
    """Exact phase i**(m(m-1)/2) making a degree-m Majorana monomial Hermitian."""
    return _PHASES[(num_factors * (num_factors - 1) // 2) % 4]


def encode_monomial(
    indices: Sequence[int] | MajoranaMonomial, mapping: MappingLike
) -> PauliString:
    """Pauli string of the index-ordered Majorana product, phase included.

    Coefficients of a MajoranaMonomial are not folded in; the string phase
    comes purely from the Pauli algebra of the table entries.
    """
    if isinstance(indices, MajoranaMonomial):
        indices = indices.indices
    table = majorana_table(mapping)
    out = PauliString.identity()
    for u in indices:
        if not 1 <= u <= len(table):
            raise ValueError(f"Majorana index {u} outside 1..{len(table)}")
        out = out * table[u - 1]
    return out


def number_operator_strings(mapping: MappingLike) -> tuple[PauliString, ...]:
    """Encoded 2n_j - 1 = i gamma_{2j-1} gamma_{2j}, one string per mode."""
    table = majorana_table(mapping)
    out = []
    for j in range(len(table) // 2):
        prod = table[2 * j] * table[2 * j + 1]
        out.append(PauliString(prod.letters, prod.phase_power + 1))
    return tuple(out)


def encoded_vacuum(mapping: MappingLike, num_qubits: int | None = None) -> DenseState:
    """The state annihilated by every mode, i.e. N_j = -1 for all j.

    Found by applying the rank-one projector prod_j (I - N_j)/2 to
    computational basis states and keeping the best image.  The global
    phase is whatever the projection produces; expectation values never
    see it.
    """
    numbers = number_operator_strings(mapping)
    if num_qubits is None:
        num_qubits = mode_count(mapping)
    if len(numbers) > num_qubits:
        raise ValueError(f"{len(numbers)} modes cannot fit on {num_qubits} qubits")
    dim = 2 ** num_qubits
    best: np.ndarray | None = None
    best_norm2 = 0.0
    for b in range(dim):
        vec = np.zeros(dim, dtype=complex)
        vec[b] = 1.0
        for n_op in numbers:
            vec = 0.5 * (vec - pauli_matvec(n_op, vec, num_qubits))
        norm2 = float(np.vdot(vec, vec).real)
        if norm2 > best_norm2 + 1e-12:
            best_norm2 = norm2
            best = vec
    if best is None or best_norm2 < 1e-12:
        raise ValueError("no vacuum component found in the computational basis")
    return DenseState(2, num_qubits, best / math.sqrt(best_norm2))


def encode_fock_state(
    mapping: MappingLike, occupations: Sequence[int], num_qubits: int | None = None
) -> DenseState:
    """Encoded Fock state with the given 0/1 occupation per mode.

    Creation operators (gamma_{2j-1} - i gamma_{2j})/2 are applied to the
    encoded vacuum in descending mode order, so mode 1 acts last; the
    overall sign convention is fixed but immaterial for expectations.
    """
    n = mode_count(mapping)
    if len(occupations) != n:
        raise ValueError(f"expected {n} occupations, got {len(occupations)}")
    if any(occ not in (0, 1) for occ in occupations):
        raise ValueError("occupations must be 0 or 1")
    if num_qubits is None:
        num_qubits = n
    table = majorana_table(mapping)
    vec = encoded_vacuum(mapping, num_qubits).amplitudes
    for j in sorted((j for j, occ in enumerate(occupations) if occ), reverse=True):
        raised = pauli_matvec(table[2 * j], vec, num_qubits)
        raised = raised - 1j * pauli_matvec(table[2 * j + 1], vec, num_qubits)
        vec = 0.5 * raised
        norm = np.linalg.norm(vec)
        if abs(norm - 1.0) > 1e-8:
            raise AssertionError(f"creation on mode {j + 1} changed the norm to {norm}")
        vec = vec / norm
    return DenseState(2, num_qubits, vec)


# -- exact oracle --------------------------------------------------------------


def exact_fermionic_rdm(
    state: DenseState, mapping: MappingLike, k: int
) -> dict[tuple[int, ...], complex]:
    """<gamma_{u1} ... gamma_{u2k}> for every increasing 2k-subset of indices.

    Values carry the algebraic phase of the encoded product; multiply by
    hermitization_phase(2k) for the real-valued Hermitian convention.
    """
    table = majorana_table(mapping)
    if not 1 <= k <= len(table) // 2:
        raise ValueError(f"k must be in 1..{len(table) // 2}, got {k}")
    out: dict[tuple[int, ...], complex] = {}
    for indices in itertools.combinations(range(1, len(table) + 1), 2 * k):
        out[indices] = expectation(state, encode_monomial(indices, mapping))
    return out


# -- sampled pipeline ----------------------------------------------------------


@dataclass(frozen=True)
class FermionEstimate:
    """One sampled Majorana-monomial expectation with its uncertainty."""

    indices: tuple[int, ...]
    value: complex
    std_error: float
    num_shots: int
    pauli: str
    weight: int
    attenuation: float


def estimate_monomial(
    stream: BellShotStream, indices: Sequence[int], mapping: MappingLike
) -> FermionEstimate:
    """Estimate one Majorana monomial from a qubit Bell shot stream.

    The encoded Pauli string is read off the stream exactly like a qubit
    RDM element; its phase is reattached afterwards, so the returned value
    is complex with a fixed phase direction.
    """
    if stream.local_dim != 2:
        raise ValueError("fermionic sampling runs on qubit streams")
    pauli = encode_monomial(indices, mapping)
    if pauli.letters and pauli.letters[-1][0] >= stream.num_pairs:
        raise ValueError("encoded string leaves the measured register")
    s = stream.num_shots
    products = np.ones(s, dtype=np.int8)
    for qubit, letter in pauli.letters:
        products *= BELL_EIGENVALUES[stream.codes[:, qubit], LETTERS.index(letter.lower())]
    mean = int(np.sum(products, dtype=np.int64)) / s
    scale = math.sqrt(3.0) ** pauli.weight
    return FermionEstimate(
        indices=tuple(indices),
        value=pauli.phase * scale * mean,
        std_error=scale * math.sqrt(max(0.0, 1.0 - mean * mean)) / math.sqrt(s),
        num_shots=s,
        pauli=str(pauli),
        weight=pauli.weight,
        attenuation=scale,
    )


def attenuation_bound(mapping: MappingLike, k: int) -> float:
    """(2n+1)^k, the worst-case attenuation of any degree-2k monomial."""
    return float((2 * mode_count(mapping) + 1) ** k)


def sampled_fermionic_rdm(
    system_state: DenseState,
    mapping: MappingLike,
    k: int,
    num_shots: int,
    seed: int,
    workers: int = 1,
) -> list[FermionEstimate]:
    """Estimate the full k-RDM monomial table from one joint shot stream.

    The system register is extended with one tetrahedral ancilla per qubit
    and measured pairwise in the Bell basis ``num_shots`` times; every
    degree-2k monomial is then evaluated on the same stream.
    """
    table = majorana_table(mapping)
    if not 1 <= k <= len(table) // 2:
        raise ValueError(f"k must be in 1..{len(table) // 2}, got {k}")
    stream = sample_bell_shots(attach_ancillas(system_state), num_shots, seed, workers)
    return [
        estimate_monomial(stream, indices, mapping)
        for indices in itertools.combinations(range(1, len(table) + 1), 2 * k)
    ]
