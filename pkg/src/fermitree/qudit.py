"""Heisenberg-Weyl correlator estimation and SIC POVMs for qudits.

The qubit scheme generalizes verbatim: pair every system qudit with an
ancilla in a fiducial state xi, measure pairs in the generalized Bell
basis, and read off displacement-operator correlators.  The (h, ell)
outcome on a pair contributes the exact eigenvalue exp(2*pi*i*(g*h -
f*ell)/D) of X^f Z^g (x) X^f Z^{-g}, and each ancilla attenuates the
signal by its calibration factor tr(X^f Z^{-g} xi).

A fiducial whose calibration factors all have magnitude 1/sqrt(D+1) makes
the induced POVM symmetric informationally complete; the attenuation is
then uniform and the shot cost grows as (D+1)^k for degree-k correlators.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .statesim import (
    BellShotStream,
    DenseState,
    hw_operator,
    prepare_xi,
)


@dataclass(frozen=True)
class FiducialState:
    """Single-qudit ancilla state used for every pair."""

    dimension: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if self.dimension < 2:
            raise ValueError(f"dimension must be >= 2, got {self.dimension}")
        if amps.shape != (self.dimension,):
            raise ValueError(
                f"expected {self.dimension} amplitudes, got {amps.shape[0]}"
            )
        if abs(np.linalg.norm(amps) - 1.0) > 1e-10:
            raise ValueError("fiducial state must be normalized")
        object.__setattr__(self, "amplitudes", amps)

    def density(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def as_state(self) -> DenseState:
        return DenseState(self.dimension, 1, self.amplitudes.copy())


def qubit_fiducial() -> FiducialState:
    """The tetrahedral state; its HW orbit is the qubit SIC POVM."""
    return FiducialState(2, prepare_xi().amplitudes)


def qutrit_fiducial() -> FiducialState:
    """(|1> - |2>)/sqrt(2), an exact SIC fiducial for D = 3."""
    amps = np.array([0.0, 1.0, -1.0]) / math.sqrt(2)
    return FiducialState(3, amps)


def calibration_factor(fiducial: FiducialState, f: int, g: int) -> complex:
    """tr(X^f Z^{-g} xi), the per-ancilla attenuation when targeting X^f Z^g."""
    d = fiducial.dimension
    op = hw_operator(d, f % d, (-g) % d)
    return complex(np.trace(op @ fiducial.density()))


def fiducial_overlaps(fiducial: FiducialState) -> dict[tuple[int, int], complex]:
    """Calibration factors for every nonzero displacement label (f, g)."""
    d = fiducial.dimension
    return {
        (f, g): calibration_factor(fiducial, f, g)
        for f in range(d)
        for g in range(d)
        if (f, g) != (0, 0)
    }


@dataclass(frozen=True)
class FiducialReport:
    """Summary of how close a fiducial is to the SIC condition."""

    dimension: int
    target_magnitude: float
    min_magnitude: float
    max_magnitude: float
    exact_sic: bool
    informationally_complete: bool


def validate_fiducial(fiducial: FiducialState, tol: float = 1e-9) -> FiducialReport:
    """Check |tr(X^f Z^{-g} xi)| = 1/sqrt(D+1) for all (f, g) != (0, 0).

    ``exact_sic`` requires every magnitude within ``tol`` of the target;
    ``informationally_complete`` only requires them all nonzero, which is
    what correlator estimation needs direction by direction.
    """
    d = fiducial.dimension
    target = 1 / math.sqrt(d + 1)
    mags = [abs(v) for v in fiducial_overlaps(fiducial).values()]
    return FiducialReport(
        dimension=d,
        target_magnitude=target,
        min_magnitude=min(mags),
        max_magnitude=max(mags),
        exact_sic=all(abs(m - target) <= tol for m in mags),
        informationally_complete=all(m > 1e-12 for m in mags),
    )


def hw_sic_elements(fiducial: FiducialState) -> list[np.ndarray]:
    """POVM elements (1/D) X^h Z^ell xi Z^{-ell} X^{-h}, (h, ell) in row order.

    They sum to the identity for any fiducial; for an exact SIC fiducial
    the projector overlaps are (D*delta + 1)/(D + 1).
    """
    d = fiducial.dimension
    xi = fiducial.density()
    out = []
    for h in range(d):
        for ell in range(d):
            w = hw_operator(d, h, ell)
            out.append(w @ xi @ w.conj().T / d)
    return out


# -- correlator estimation -----------------------------------------------------


@dataclass(frozen=True)
class HwEstimate:
    """Sampled displacement correlator <prod_i X^{f_i} Z^{g_i} at site q_i>."""

    targets: tuple[tuple[int, int, int], ...]
    value: complex
    std_error: float
    num_shots: int
    calibration: complex


def _checked_targets(
    targets: Sequence[tuple[int, int, int]], d: int, num_pairs: int
) -> tuple[tuple[int, int, int], ...]:
    seen = set()
    out = []
    for site, f, g in targets:
        if not 0 <= site < num_pairs:
            raise ValueError(f"site {site} outside 0..{num_pairs - 1}")
        if site in seen:
            raise ValueError(f"repeated site {site}")
        seen.add(site)
        f, g = f % d, g % d
        if (f, g) == (0, 0):
            raise ValueError(f"site {site} targets the identity displacement")
        out.append((site, f, g))
    if not out:
        raise ValueError("need at least one target")
    return tuple(out)


def estimate_hw_correlator(
    stream: BellShotStream,
    targets: Sequence[tuple[int, int, int]],
    fiducial: FiducialState,
) -> HwEstimate:
    """Estimate <prod_i X^{f_i} Z^{g_i}> from a generalized Bell shot stream.

    Args:
        stream: Bell outcomes over system-ancilla pairs, ancillas in
            ``fiducial``.
        targets: (site, f, g) triples on distinct sites.
        fiducial: the ancilla state, needed for calibration.

    Per shot the product of pair eigenvalues is the root of unity
    w^(sum_i g_i h_i - f_i ell_i); residues are accumulated as integer
    counts, so the result is independent of how shots are partitioned.
    """
    d = fiducial.dimension
    if stream.local_dim != d:
        raise ValueError(
            f"stream dimension {stream.local_dim} != fiducial dimension {d}"
        )
    checked = _checked_targets(targets, d, stream.num_pairs)
    if stream.num_shots == 0:
        raise ValueError("empty shot stream")

    residues = np.zeros(stream.num_shots, dtype=np.int64)
    for site, f, g in checked:
        h = stream.codes[:, site].astype(np.int64) // d
        ell = stream.codes[:, site].astype(np.int64) % d
        residues += g * h - f * ell
    counts = np.bincount(residues % d, minlength=d)
    omega = np.exp(2j * np.pi / d)
    s = stream.num_shots
    mean = sum(int(c) * omega ** r for r, c in enumerate(counts)) / s

    calibration = complex(np.prod([calibration_factor(fiducial, f, g) for _, f, g in checked]))
    if abs(calibration) < 1e-12:
        raise ValueError("fiducial is blind to a targeted displacement")
    return HwEstimate(
        targets=checked,
        value=mean / calibration,
        std_error=math.sqrt(max(0.0, 1.0 - abs(mean) ** 2) / s) / abs(calibration),
        num_shots=s,
        calibration=calibration,
    )


def exact_hw_correlator(
    state: DenseState, targets: Sequence[tuple[int, int, int]]
) -> complex:
    """Oracle <prod_i X^{f_i} Z^{g_i}> on a bare system register."""
    checked = _checked_targets(targets, state.local_dim, state.num_sites)
    applied = state
    for site, f, g in checked:
        applied = applied.apply_single_site(hw_operator(state.local_dim, f, g), site)
    return complex(np.vdot(state.amplitudes, applied.amplitudes))


# -- fiducial file format ------------------------------------------------------


def save_fiducial(fiducial: FiducialState, path: str) -> None:
    payload = {
        "dimension": fiducial.dimension,
        "amplitudes": [[float(a.real), float(a.imag)] for a in fiducial.amplitudes],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def load_fiducial(path: str) -> FiducialState:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    amps = np.array([complex(re, im) for re, im in payload["amplitudes"]])
    return FiducialState(int(payload["dimension"]), amps)
