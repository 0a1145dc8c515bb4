"""Exact dense simulation of qubit/qudit registers and Bell-basis sampling.

States are flat complex vectors over sites of a common local dimension D,
site 0 being the leftmost (most significant) tensor factor.  The module
provides the tetrahedral ancilla state, Heisenberg-Weyl displacement
operators, generalized Bell states, and two interchangeable ways to draw
Bell-basis measurement outcomes on site pairs:

    * ``bell_measure_all_pairs`` collapses one pair at a time (reference
      semantics, one shot per call);
    * ``sample_bell_shots`` samples the exact joint outcome distribution
      in bulk, with a blocked RNG layout that makes the stream depend only
      on the seed, never on the worker count.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .pauli import PAULI_MATRICES, PauliString

CAPACITY_AMPLITUDES = 2 ** 20
NORM_TOL = 1e-10

# Shots are generated in fixed blocks; block b always uses the RNG stream
# spawned with key (b,), so any worker partition yields identical output.
SHOT_BLOCK = 4096

QUBIT_BELL_LABELS = ("F+", "F-", "P+", "P-")


class CapacityError(ValueError):
    """Requested register exceeds the dense-simulation budget."""


@dataclass
class DenseState:
    """Normalized pure state of ``num_sites`` qudits of dimension ``local_dim``."""

    local_dim: int
    num_sites: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if self.local_dim < 2:
            raise ValueError(f"local dimension must be >= 2, got {self.local_dim}")
        if self.num_sites < 1:
            raise ValueError(f"need at least one site, got {self.num_sites}")
        dim = self.local_dim ** self.num_sites
        if dim > CAPACITY_AMPLITUDES:
            raise CapacityError(
                f"{self.num_sites} sites of dimension {self.local_dim} need "
                f"{dim} amplitudes, budget is {CAPACITY_AMPLITUDES}"
            )
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if self.amplitudes.shape != (dim,):
            raise ValueError(
                f"expected {dim} amplitudes, got {self.amplitudes.shape[0]}"
            )
        norm = np.linalg.norm(self.amplitudes)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm {norm} deviates from 1")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero_state(cls, num_sites: int, local_dim: int = 2) -> "DenseState":
        amps = np.zeros(local_dim ** num_sites, dtype=complex)
        amps[0] = 1.0
        return cls(local_dim, num_sites, amps)

    @classmethod
    def computational(cls, digits: tuple[int, ...], local_dim: int = 2) -> "DenseState":
        index = 0
        for d in digits:
            if not 0 <= d < local_dim:
                raise ValueError(f"digit {d} outside 0..{local_dim - 1}")
            index = index * local_dim + d
        amps = np.zeros(local_dim ** len(digits), dtype=complex)
        amps[index] = 1.0
        return cls(local_dim, len(digits), amps)

    @classmethod
    def from_amplitudes(
        cls,
        amplitudes: np.ndarray,
        local_dim: int = 2,
        normalize: bool = False,
    ) -> "DenseState":
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        num_sites = round(math.log(amps.shape[0], local_dim))
        if local_dim ** num_sites != amps.shape[0]:
            raise ValueError(
                f"{amps.shape[0]} amplitudes is not a power of {local_dim}"
            )
        if normalize:
            norm = np.linalg.norm(amps)
            if norm == 0:
                raise ValueError("cannot normalize the zero vector")
            amps = amps / norm
        return cls(local_dim, num_sites, amps)

    @classmethod
    def ghz(cls, num_sites: int, local_dim: int = 2) -> "DenseState":
        amps = np.zeros(local_dim ** num_sites, dtype=complex)
        amps[0] = 1 / math.sqrt(2)
        amps[-1] = 1 / math.sqrt(2)
        return cls(local_dim, num_sites, amps)

    # -- basic operations --------------------------------------------------

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def copy(self) -> "DenseState":
        return DenseState(self.local_dim, self.num_sites, self.amplitudes.copy())

    def as_tensor(self) -> np.ndarray:
        return self.amplitudes.reshape([self.local_dim] * self.num_sites)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def tensor(self, other: "DenseState") -> "DenseState":
        if other.local_dim != self.local_dim:
            raise ValueError("local dimensions differ")
        return DenseState(
            self.local_dim,
            self.num_sites + other.num_sites,
            np.kron(self.amplitudes, other.amplitudes),
        )

    def apply_single_site(self, matrix: np.ndarray, site: int) -> "DenseState":
        """Return the state with a local_dim x local_dim matrix applied at ``site``."""
        if not 0 <= site < self.num_sites:
            raise ValueError(f"site {site} outside 0..{self.num_sites - 1}")
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.shape != (self.local_dim, self.local_dim):
            raise ValueError(f"matrix shape {matrix.shape} does not match site")
        tensor = np.tensordot(matrix, self.as_tensor(), axes=([1], [site]))
        tensor = np.moveaxis(tensor, 0, site)
        out = DenseState.__new__(DenseState)
        out.local_dim = self.local_dim
        out.num_sites = self.num_sites
        out.amplitudes = np.ascontiguousarray(tensor).reshape(-1)
        return out


def random_state(
    num_sites: int, local_dim: int = 2, rng: np.random.Generator | int | None = None
) -> DenseState:
    """Haar-random pure state via a normalized complex Gaussian vector."""
    rng = np.random.default_rng(rng)
    dim = local_dim ** num_sites
    if dim > CAPACITY_AMPLITUDES:
        raise CapacityError(f"{dim} amplitudes exceed budget {CAPACITY_AMPLITUDES}")
    vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return DenseState(local_dim, num_sites, vec / np.linalg.norm(vec))


# -- Pauli action on qubit registers ----------------------------------------


def pauli_matvec(pauli: PauliString, amplitudes: np.ndarray, num_sites: int) -> np.ndarray:
    """P @ vec on a qubit register; the vector need not be normalized."""
    if pauli.letters and pauli.letters[-1][0] >= num_sites:
        raise ValueError(
            f"qubit {pauli.letters[-1][0]} outside register of {num_sites}"
        )
    vec = np.asarray(amplitudes, dtype=complex).reshape([2] * num_sites)
    for qubit, letter in pauli.letters:
        vec = np.moveaxis(
            np.tensordot(PAULI_MATRICES[letter], vec, axes=([1], [qubit])), 0, qubit
        )
    out = np.ascontiguousarray(vec).reshape(-1)
    if pauli.phase != 1:
        out = out * pauli.phase
    elif not pauli.letters:
        out = out.copy()
    return out


def apply_pauli(state: DenseState, pauli: PauliString) -> DenseState:
    """Apply a phase-tracked Pauli string to a qubit register."""
    if state.local_dim != 2:
        raise ValueError("Pauli strings act on qubit registers only")
    out = state.copy()
    out.amplitudes = pauli_matvec(pauli, state.amplitudes, state.num_sites)
    return out


def expectation(state: DenseState, pauli: PauliString) -> complex:
    """<state| P |state>; real up to roundoff when P is Hermitian (phase +-1)."""
    applied = apply_pauli(state, pauli)
    return complex(np.vdot(state.amplitudes, applied.amplitudes))


# -- the tetrahedral ancilla state ------------------------------------------


def prepare_xi() -> DenseState:
    """Single-qubit state with <X> = <Y> = <Z> = 1/sqrt(3).

    Produced by the two-rotation circuit Rz(3*pi/4) Rx(arccos(1/sqrt(3)))
    acting on |0>, with Rx(t) = exp(-i t X / 2) and Rz(t) = exp(-i t Z / 2).
    """
    theta = math.acos(1 / math.sqrt(3))
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    rx = np.array([[c, -1j * s], [-1j * s, c]])
    phi = 3 * math.pi / 4
    rz = np.diag([np.exp(-1j * phi / 2), np.exp(1j * phi / 2)])
    amps = rz @ rx @ np.array([1.0, 0.0])
    return DenseState(2, 1, amps)


def xi_density() -> np.ndarray:
    """Density matrix (I + (X+Y+Z)/sqrt(3)) / 2 of the tetrahedral state."""
    amps = prepare_xi().amplitudes
    return np.outer(amps, amps.conj())


def attach_ancillas(system: DenseState, ancilla: DenseState | None = None) -> DenseState:
    """Interleave one ancilla per system site: system site j lands on site 2j.

    The ancilla defaults to the tetrahedral state; any single-site state of
    the same local dimension is accepted.
    """
    if ancilla is None:
        ancilla = prepare_xi()
    if ancilla.num_sites != 1:
        raise ValueError("ancilla must be a single-site state")
    if ancilla.local_dim != system.local_dim:
        raise ValueError("ancilla local dimension differs from system")
    n = system.num_sites
    d = system.local_dim
    if d ** (2 * n) > CAPACITY_AMPLITUDES:
        raise CapacityError(f"{2 * n} sites of dimension {d} exceed the budget")
    tensor = system.as_tensor()
    for _ in range(n):
        tensor = np.multiply.outer(tensor, ancilla.amplitudes)
    # axes currently (s0..s_{n-1}, a0..a_{n-1}); interleave to (s0, a0, s1, a1, ...)
    perm = [axis for j in range(n) for axis in (j, n + j)]
    tensor = np.transpose(tensor, perm)
    return DenseState(d, 2 * n, np.ascontiguousarray(tensor).reshape(-1))


# -- Heisenberg-Weyl operators and generalized Bell states -------------------


def hw_operator(local_dim: int, f: int, g: int) -> np.ndarray:
    """Displacement operator X^f Z^g with X|d> = |d+1 mod D>, Z|d> = w^d |d>."""
    if local_dim < 2:
        raise ValueError(f"local dimension must be >= 2, got {local_dim}")
    omega = np.exp(2j * np.pi / local_dim)
    mat = np.zeros((local_dim, local_dim), dtype=complex)
    for d in range(local_dim):
        mat[(d + f) % local_dim, d] = omega ** (g * d)
    return mat


def generalized_bell_state(local_dim: int, h: int, ell: int) -> DenseState:
    """Two-site state (X^h Z^ell on the first site) applied to the diagonal pair.

    With this labeling X^f Z^g (x) X^f Z^{-g} has eigenvalue
    exp(2*pi*i*(g*h - f*ell)/D) on the (h, ell) state.
    """
    if local_dim < 2:
        raise ValueError(f"local dimension must be >= 2, got {local_dim}")
    d = local_dim
    h, ell = h % d, ell % d
    omega = np.exp(2j * np.pi / d)
    amps = np.zeros(d * d, dtype=complex)
    for k in range(d):
        amps[((k + h) % d) * d + k] = omega ** (ell * k) / math.sqrt(d)
    return DenseState(d, 2, amps)


def bell_basis_matrix(local_dim: int) -> np.ndarray:
    """Unitary whose column h*D+ell is the (h, ell) generalized Bell state."""
    d = local_dim
    cols = np.empty((d * d, d * d), dtype=complex)
    for h in range(d):
        for ell in range(d):
            cols[:, h * d + ell] = generalized_bell_state(d, h, ell).amplitudes
    return cols


def decode_bell_code(code: int, local_dim: int) -> tuple[int, int]:
    """Map a flat outcome code back to the (h, ell) label pair."""
    if not 0 <= code < local_dim ** 2:
        raise ValueError(f"code {code} outside 0..{local_dim ** 2 - 1}")
    return divmod(code, local_dim)


# -- Bell-basis measurement on site pairs ------------------------------------


@dataclass(frozen=True)
class ShotRecord:
    """Outcome of one Bell-basis measurement round over all site pairs."""

    local_dim: int
    codes: tuple[int, ...]

    def outcome_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(decode_bell_code(c, self.local_dim) for c in self.codes)

    def labels(self) -> tuple[str, ...]:
        if self.local_dim != 2:
            raise ValueError("named Bell outcomes exist only for qubits")
        return tuple(QUBIT_BELL_LABELS[c] for c in self.codes)


def _paired(state: DenseState) -> int:
    if state.num_sites % 2 != 0:
        raise ValueError(f"need an even number of sites, got {state.num_sites}")
    return state.num_sites // 2


def bell_measure_all_pairs(
    state: DenseState, rng: np.random.Generator | int | None = None
) -> ShotRecord:
    """Measure each (2p, 2p+1) pair in the Bell basis by sequential collapse.

    The input state is not modified; collapses happen on an internal copy.
    """
    rng = np.random.default_rng(rng)
    n_pairs = _paired(state)
    d = state.local_dim
    basis = bell_basis_matrix(d)
    basis_h = basis.conj().T
    tensor = state.as_tensor().copy()
    codes = []
    for p in range(n_pairs):
        moved = np.moveaxis(tensor, (2 * p, 2 * p + 1), (0, 1))
        flat = moved.reshape(d * d, -1)
        in_bell = basis_h @ flat
        probs = np.sum(np.abs(in_bell) ** 2, axis=1)
        probs = probs / probs.sum()
        code = int(rng.choice(d * d, p=probs))
        post = np.zeros_like(in_bell)
        post[code] = in_bell[code] / math.sqrt(probs[code])
        collapsed = (basis @ post).reshape(moved.shape)
        tensor = np.moveaxis(collapsed, (0, 1), (2 * p, 2 * p + 1))
        codes.append(code)
    return ShotRecord(local_dim=d, codes=tuple(codes))


def bell_outcome_distribution(state: DenseState) -> np.ndarray:
    """Exact joint outcome probabilities, flat index base D^2, pair 0 first.

    Equals the joint distribution of the sequential pairwise collapses,
    because the pair projectors commute.
    """
    n_pairs = _paired(state)
    d = state.local_dim
    basis_h = bell_basis_matrix(d).conj().T
    # site axes (s0, a0, s1, a1, ...) are adjacent per pair, so pair axes
    # group into one base-D^2 axis each without any transpose.
    tensor = state.amplitudes.reshape([d * d] * n_pairs)
    for p in range(n_pairs):
        tensor = np.moveaxis(np.tensordot(basis_h, tensor, axes=([1], [p])), 0, p)
    probs = np.abs(tensor.reshape(-1)) ** 2
    return probs / probs.sum()


@dataclass
class BellShotStream:
    """Batch of Bell measurement outcomes, shaped (num_shots, num_pairs)."""

    local_dim: int
    num_pairs: int
    codes: np.ndarray
    seed: int | None = None

    def __post_init__(self) -> None:
        self.codes = np.asarray(self.codes, dtype=np.uint8)
        if self.codes.ndim != 2 or self.codes.shape[1] != self.num_pairs:
            raise ValueError(f"codes shape {self.codes.shape} does not match pairs")
        if self.local_dim ** 2 > 256:
            raise ValueError("outcome codes exceed uint8 range")
        if self.codes.size and int(self.codes.max()) >= self.local_dim ** 2:
            raise ValueError("outcome code outside the Bell basis")

    @property
    def num_shots(self) -> int:
        return self.codes.shape[0]

    def __len__(self) -> int:
        return self.num_shots

    def record(self, index: int) -> ShotRecord:
        return ShotRecord(self.local_dim, tuple(int(c) for c in self.codes[index]))

    def __iter__(self):
        return (self.record(i) for i in range(self.num_shots))

    def to_jsonl(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for i in range(self.num_shots):
                rec = self.record(i)
                if self.local_dim == 2:
                    outcomes: list = list(rec.labels())
                else:
                    outcomes = [list(p) for p in rec.outcome_pairs()]
                fh.write(json.dumps({"shot_index": i, "outcomes": outcomes}) + "\n")

    @classmethod
    def from_jsonl(cls, path: str, local_dim: int | None = None) -> "BellShotStream":
        """Read a shot stream; qudit streams may need ``local_dim`` since the
        record format stores (h, ell) pairs, not the dimension."""
        rows = []
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    rows.append(json.loads(line))
        if not rows:
            raise ValueError(f"no shot records in {path}")
        rows.sort(key=lambda r: r["shot_index"])
        first = rows[0]["outcomes"]
        if first and isinstance(first[0], str):
            if local_dim not in (None, 2):
                raise ValueError("labeled Bell outcomes imply qubit records")
            label_code = {lab: c for c, lab in enumerate(QUBIT_BELL_LABELS)}
            d = 2
            codes = [[label_code[lab] for lab in r["outcomes"]] for r in rows]
        else:
            pairs = [r["outcomes"] for r in rows]
            if local_dim is None:
                local_dim = max(max(max(h, ell) for h, ell in p) for p in pairs) + 1
            d = max(local_dim, 2)
            codes = [[h * d + ell for h, ell in p] for p in pairs]
        return cls(d, len(codes[0]), np.array(codes, dtype=np.uint8))


def sample_bell_shots(
    state: DenseState,
    num_shots: int,
    seed: int,
    workers: int = 1,
) -> BellShotStream:
    """Draw ``num_shots`` joint Bell outcomes from the exact distribution.

    Shots are produced in blocks of ``SHOT_BLOCK``; block b derives its RNG
    from SeedSequence(seed, spawn_key=(b,)), so the result is a pure
    function of (state, num_shots, seed) regardless of ``workers``.
    """
    if num_shots < 1:
        raise ValueError(f"need at least one shot, got {num_shots}")
    if workers < 1:
        raise ValueError(f"need at least one worker, got {workers}")
    n_pairs = _paired(state)
    d = state.local_dim
    probs = bell_outcome_distribution(state)
    digits_weights = (d * d) ** np.arange(n_pairs - 1, -1, -1, dtype=np.int64)
    codes = np.empty((num_shots, n_pairs), dtype=np.uint8)

    blocks = [
        (b, start, min(start + SHOT_BLOCK, num_shots))
        for b, start in enumerate(range(0, num_shots, SHOT_BLOCK))
    ]

    def fill(block: tuple[int, int, int]) -> None:
        b, start, stop = block
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(b,)))
        flat = rng.choice(probs.shape[0], size=stop - start, p=probs)
        for j in range(n_pairs):
            codes[start:stop, j] = (flat // digits_weights[j]) % (d * d)

    if workers == 1:
        for block in blocks:
            fill(block)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(fill, blocks))
    return BellShotStream(local_dim=d, num_pairs=n_pairs, codes=codes, seed=seed)
