"""Tests for the fermionic RDM pipeline."""

import math

import numpy as np
import pytest

from fermitree.baselines import bravyi_kitaev, jordan_wigner
from fermitree.fermion import (
    MajoranaMonomial,
    attenuation_bound,
    encode_fock_state,
    encode_monomial,
    encoded_vacuum,
    estimate_monomial,
    exact_fermionic_rdm,
    hermitization_phase,
    number_operator_strings,
    sampled_fermionic_rdm,
)
from fermitree.pauli import PauliString
from fermitree.statesim import (
    BellShotStream,
    attach_ancillas,
    expectation,
    random_state,
    sample_bell_shots,
)
from fermitree.ternary import build_mapping

ALL_MAPPINGS = [
    ("ternary", lambda n: build_mapping(n)),
    ("jw", jordan_wigner),
    ("bk", bravyi_kitaev),
]


def test_monomial_normalization():
    m = MajoranaMonomial.from_unordered((2, 1))
    assert m.indices == (1, 2)
    assert m.coefficient == -1.0
    m = MajoranaMonomial.from_unordered((3, 1, 2), coefficient=2.0)
    assert m.indices == (1, 2, 3)
    assert m.coefficient == 2.0  # two transpositions, even permutation
    with pytest.raises(ValueError):
        MajoranaMonomial((2, 1))
    with pytest.raises(ValueError):
        MajoranaMonomial.from_unordered((1, 1))
    with pytest.raises(ValueError):
        MajoranaMonomial((0, 1))


def test_hermitization_phase():
    assert hermitization_phase(1) == 1
    assert hermitization_phase(2) == 1j
    assert hermitization_phase(3) == -1j
    assert hermitization_phase(4) == -1


def test_encode_monomial_jw():
    table = jordan_wigner(2)
    assert str(encode_monomial((1, 2), table)) == "+i Z0"
    assert str(encode_monomial((1, 3), table)) == "-i Y0 X1"
    assert encode_monomial((), table) == PauliString.identity()
    assert encode_monomial(MajoranaMonomial((1, 2)), table) == encode_monomial((1, 2), table)
    with pytest.raises(ValueError):
        encode_monomial((5,), table)


def test_encode_monomial_matches_dense_oracle():
    # the encoded product must equal the matrix product of encoded factors
    mapping = build_mapping(2)
    for indices in [(1, 2), (2, 3), (1, 4), (1, 2, 3, 4)]:
        lhs = encode_monomial(indices, mapping).to_dense(2)
        rhs = np.eye(4, dtype=complex)
        for u in indices:
            rhs = rhs @ mapping.majorana_table[u - 1].to_dense(2)
        assert np.allclose(lhs, rhs, atol=1e-12)


def test_number_operator_strings_jw():
    assert [str(op) for op in number_operator_strings(jordan_wigner(2))] == [
        "- Z0",
        "- Z1",
    ]


def test_encoded_vacuum_jw_is_all_zeros():
    vac = encoded_vacuum(jordan_wigner(3), 3)
    want = np.zeros(8)
    want[0] = 1.0
    assert np.allclose(vac.amplitudes, want)


@pytest.mark.parametrize("kind,factory", ALL_MAPPINGS)
def test_vacuum_and_fock_occupations(kind, factory):
    mapping = factory(3)
    vac = encoded_vacuum(mapping, 3)
    fock = encode_fock_state(mapping, (1, 0, 1))
    for j, n_op in enumerate(number_operator_strings(mapping)):
        occ_vac = (1 + expectation(vac, n_op).real) / 2
        occ_fock = (1 + expectation(fock, n_op).real) / 2
        assert occ_vac == pytest.approx(0.0, abs=1e-10)
        assert occ_fock == pytest.approx((1, 0, 1)[j], abs=1e-10)


def test_double_occupation_is_forbidden():
    mapping = jordan_wigner(2)
    fock = encode_fock_state(mapping, (1, 1))
    table = mapping
    # applying a creation operator to an occupied mode annihilates the state
    vec = fock.amplitudes
    from fermitree.statesim import pauli_matvec

    raised = pauli_matvec(table[0], vec, 2) - 1j * pauli_matvec(table[1], vec, 2)
    assert np.linalg.norm(raised) == pytest.approx(0.0, abs=1e-10)


def test_encode_fock_state_guards():
    mapping = jordan_wigner(2)
    with pytest.raises(ValueError):
        encode_fock_state(mapping, (1,))
    with pytest.raises(ValueError):
        encode_fock_state(mapping, (2, 0))
    with pytest.raises(ValueError):
        encoded_vacuum(mapping, 1)


def test_exact_rdm_jw_fock_values():
    mapping = jordan_wigner(2)
    fock = encode_fock_state(mapping, (1, 0))
    table = exact_fermionic_rdm(fock, mapping, 1)
    assert len(table) == 6
    # <gamma_1 gamma_2> = -i(2 n_1 - 1) = -i on an occupied mode
    assert table[(1, 2)] == pytest.approx(-1j, abs=1e-12)
    assert table[(3, 4)] == pytest.approx(1j, abs=1e-12)
    for indices in [(1, 3), (1, 4), (2, 3), (2, 4)]:
        assert abs(table[indices]) < 1e-12


def test_exact_rdm_validation():
    mapping = jordan_wigner(2)
    fock = encode_fock_state(mapping, (1, 0))
    with pytest.raises(ValueError):
        exact_fermionic_rdm(fock, mapping, 0)
    with pytest.raises(ValueError):
        exact_fermionic_rdm(fock, mapping, 3)


@pytest.mark.parametrize("k", [1, 2])
def test_mapping_equivalence_exact_rdms(k):
    # the same Fock state must give identical RDM tables in all encodings
    tables = {}
    for kind, factory in ALL_MAPPINGS:
        mapping = factory(3)
        state = encode_fock_state(mapping, (1, 1, 0))
        tables[kind] = exact_fermionic_rdm(state, mapping, k)
    for indices in tables["ternary"]:
        vals = [tables[kind][indices] for kind, _ in ALL_MAPPINGS]
        assert abs(vals[0] - vals[1]) < 1e-10
        assert abs(vals[0] - vals[2]) < 1e-10


def test_majorana_expectation_norm_bound():
    # sum_u <gamma_u>^2 <= 1 for any state and any valid encoding
    for kind, factory in ALL_MAPPINGS:
        mapping = factory(2)
        rng = np.random.default_rng(61)
        for _ in range(20):
            state = random_state(2, 2, rng)
            total = 0.0
            for u in range(1, 5):
                total += expectation(state, encode_monomial((u,), mapping)).real ** 2
            assert total <= 1 + 1e-9


def test_estimate_monomial_fields():
    mapping = build_mapping(2)
    state = random_state(2, 2, np.random.default_rng(50))
    stream = sample_bell_shots(attach_ancillas(state), 20_000, seed=51)
    est = estimate_monomial(stream, (1, 2), mapping)
    pauli = encode_monomial((1, 2), mapping)
    assert est.weight == pauli.weight
    assert est.attenuation == pytest.approx(math.sqrt(3.0) ** pauli.weight)
    assert est.pauli == str(pauli)
    oracle = expectation(state, pauli)
    assert abs(est.value - oracle) <= 5 * max(est.std_error, 1e-3)


def test_estimate_monomial_merge_exactness():
    mapping = build_mapping(2)
    state = random_state(2, 2, np.random.default_rng(52))
    stream = sample_bell_shots(attach_ancillas(state), 5000, seed=53)
    full = estimate_monomial(stream, (2, 4), mapping)
    # exact integer accumulation: recomputing on a reordered partition of
    # the same shots gives bit-identical values
    reordered = BellShotStream(2, 2, np.concatenate([stream.codes[2500:], stream.codes[:2500]]))
    again = estimate_monomial(reordered, (2, 4), mapping)
    assert full.value == again.value


def test_sampled_rdm_against_oracle():
    mapping = build_mapping(2)
    state = random_state(2, 2, np.random.default_rng(54))
    estimates = sampled_fermionic_rdm(state, mapping, 1, 50_000, seed=55)
    exact = exact_fermionic_rdm(state, mapping, 1)
    assert len(estimates) == 6
    for est in estimates:
        assert abs(est.value - exact[est.indices]) <= 5 * max(est.std_error, 1e-3)
        assert est.attenuation <= attenuation_bound(mapping, 1)


def test_sampled_rdm_validation():
    mapping = build_mapping(2)
    state = random_state(2, 2, np.random.default_rng(56))
    with pytest.raises(ValueError):
        sampled_fermionic_rdm(state, mapping, 0, 100, seed=1)
    with pytest.raises(ValueError):
        sampled_fermionic_rdm(state, mapping, 3, 100, seed=1)


def test_attenuation_bound_values():
    assert attenuation_bound(build_mapping(3), 1) == 7.0
    assert attenuation_bound(jordan_wigner(2), 2) == 25.0
