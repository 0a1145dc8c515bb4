"""Parallel estimation of qubit k-RDM elements from Bell shot streams.

Each system qubit is paired with one tetrahedral ancilla and every pair is
measured once per shot in the Bell basis.  A single stream then serves all
Pauli observables at once: the outcome of pair j assigns an eigenvalue of
+1 or -1 to each letter x, y, z, and

    <P_1 ... P_k>  ~  sqrt(3)^k * mean over shots of the eigenvalue product,

because each ancilla contributes a factor tr(sigma xi) = 1/sqrt(3).  The
price is the sqrt(3)^k variance amplification, uniform over all C(n,k) 3^k
elements of the k-RDM.

Accumulation is exact integer arithmetic on +-1 products, so estimates are
bit-identical under any partition of the shots.
"""

from __future__ import annotations

import csv
import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

from .statesim import BellShotStream, xi_density

LETTERS = ("x", "y", "z")

# Eigenvalue table, rows indexed by Bell outcome code (F+, F-, P+, P-),
# columns by letter (x, y, z).
BELL_EIGENVALUES = np.array(
    [
        [+1, -1, +1],
        [-1, +1, +1],
        [+1, +1, -1],
        [-1, -1, -1],
    ],
    dtype=np.int8,
)


@dataclass(frozen=True)
class RdmEstimate:
    """One k-RDM element estimated from a shot stream."""

    qubits: tuple[int, ...]
    letters: tuple[str, ...]
    value: float
    std_error: float
    num_shots: int

    @property
    def k(self) -> int:
        return len(self.qubits)


def _letter_columns(letters: tuple[str, ...]) -> list[int]:
    cols = []
    for letter in letters:
        if letter not in LETTERS:
            raise ValueError(f"invalid letter {letter!r}, need one of {LETTERS}")
        cols.append(LETTERS.index(letter))
    return cols


def estimate_rdm_element(
    stream: BellShotStream,
    qubits: tuple[int, ...],
    letters: tuple[str, ...],
) -> RdmEstimate:
    """Estimate <sigma_{a1} ... sigma_{ak}> on the given system qubits.

    Args:
        stream: qubit Bell shot stream (one pair per system qubit).
        qubits: distinct system qubit indices, ascending.
        letters: one of 'x', 'y', 'z' per qubit.

    Returns:
        RdmEstimate with the attenuation-corrected value and the plug-in
        standard error sqrt(3)^k * sqrt(1 - mean^2) / sqrt(S).
    """
    if stream.local_dim != 2:
        raise ValueError("qubit RDM estimation needs a qubit stream")
    if not qubits:
        raise ValueError("need at least one qubit")
    if len(qubits) != len(letters):
        raise ValueError("one letter per qubit required")
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"repeated qubit in {qubits}")
    if any(not 0 <= q < stream.num_pairs for q in qubits):
        raise ValueError(f"qubit outside 0..{stream.num_pairs - 1}")
    if stream.num_shots == 0:
        raise ValueError("empty shot stream")

    cols = _letter_columns(tuple(letters))
    k = len(qubits)
    products = np.ones(stream.num_shots, dtype=np.int8)
    for qubit, col in zip(qubits, cols):
        products *= BELL_EIGENVALUES[stream.codes[:, qubit], col]
    total = int(np.sum(products, dtype=np.int64))
    s = stream.num_shots
    mean = total / s
    scale = math.sqrt(3.0) ** k
    std_error = scale * math.sqrt(max(0.0, 1.0 - mean * mean)) / math.sqrt(s)
    return RdmEstimate(
        qubits=tuple(qubits),
        letters=tuple(letters),
        value=scale * mean,
        std_error=std_error,
        num_shots=s,
    )


def estimate_all_k_rdms(stream: BellShotStream, k: int) -> list[RdmEstimate]:
    """All C(n, k) * 3^k elements of the k-RDM from one stream."""
    n = stream.num_pairs
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}, got {k}")
    out = []
    for qubits in itertools.combinations(range(n), k):
        for letters in itertools.product(LETTERS, repeat=k):
            out.append(estimate_rdm_element(stream, qubits, letters))
    return out


def merge_streams(parts: list[BellShotStream]) -> BellShotStream:
    """Concatenate shot streams over the same register, preserving order."""
    if not parts:
        raise ValueError("nothing to merge")
    d = parts[0].local_dim
    n = parts[0].num_pairs
    if any(p.local_dim != d or p.num_pairs != n for p in parts):
        raise ValueError("streams disagree on register shape")
    return BellShotStream(d, n, np.concatenate([p.codes for p in parts]))


# -- single-qubit state reconstruction ---------------------------------------


def reconstruct_qubit_state(stream: BellShotStream, qubit: int = 0) -> np.ndarray:
    """Physical single-qubit density matrix from the three axis estimates.

    The raw Bloch vector estimate may leave the Bloch ball at finite shot
    count; eigenvalues are clipped to [0, 1] and renormalized.
    """
    pauli = {
        "x": np.array([[0, 1], [1, 0]], dtype=complex),
        "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
        "z": np.array([[1, 0], [0, -1]], dtype=complex),
    }
    rho = np.eye(2, dtype=complex)
    for letter in LETTERS:
        est = estimate_rdm_element(stream, (qubit,), (letter,))
        rho += est.value * pauli[letter]
    rho /= 2.0
    vals, vecs = np.linalg.eigh(rho)
    vals = np.clip(vals.real, 0.0, None)
    if vals.sum() == 0:
        raise ValueError("degenerate reconstruction")
    vals /= vals.sum()
    return (vecs * vals) @ vecs.conj().T


# -- the qubit SIC POVM -------------------------------------------------------


def sic_povm_elements() -> list[np.ndarray]:
    """Four-outcome tetrahedral POVM realized by the Bell measurement.

    Element order follows the outcome codes (F+, F-, P+, P-): the F+
    element is xi/2 and the others are its conjugations by Z, X, Y.
    """
    xi = xi_density()
    z = np.diag([1.0 + 0j, -1.0])
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    y = np.array([[0, -1j], [1j, 0]], dtype=complex)
    return [xi / 2, z @ xi @ z / 2, x @ xi @ x / 2, y @ xi @ y / 2]


# -- reports ------------------------------------------------------------------


def estimates_to_rows(estimates: list[RdmEstimate]) -> list[dict]:
    return [
        {
            "qubits": list(e.qubits),
            "letters": list(e.letters),
            "value": e.value,
            "std_error": e.std_error,
            "num_shots": e.num_shots,
        }
        for e in estimates
    ]


def write_rdm_report(
    estimates: list[RdmEstimate],
    path: str,
    exact: dict[tuple, float] | None = None,
    meta: dict | None = None,
) -> None:
    """JSON report of RDM estimates, with exact-oracle columns when given."""
    rows = estimates_to_rows(estimates)
    if exact is not None:
        for row, est in zip(rows, estimates):
            key = (est.qubits, est.letters)
            if key in exact:
                row["exact"] = exact[key]
                row["abs_error"] = abs(est.value - exact[key])
    payload = {"estimates": rows}
    if meta:
        payload = {**meta, "estimates": rows}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_weight_csv(path: str, rows: list[dict]) -> None:
    """CSV with columns n, kind, mean_weight, max_weight."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["n", "kind", "mean_weight", "max_weight"])
        writer.writeheader()
        writer.writerows(rows)
