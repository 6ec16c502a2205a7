"""Hermitian substrate: construction, spectra, traces, norms, minors."""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import charpoly_eigenvalues, random_hermitian
from wignerlab.hermitian_core import (
    EigenDecomposition,
    HermitianMatrix,
    eigen_decomposition,
    eigenvalues_desc,
    frobenius_norm,
    numeric_rank,
    principal_minor,
    trace_power,
)


# -- construction -------------------------------------------------------------

def test_rejects_non_square():
    with pytest.raises(ValueError, match="square"):
        HermitianMatrix(np.zeros((2, 3)))


def test_rejects_empty():
    with pytest.raises(ValueError):
        HermitianMatrix(np.zeros((0, 0)))


def test_rejects_asymmetric_beyond_tolerance():
    with pytest.raises(ValueError, match="not Hermitian"):
        HermitianMatrix(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_symmetrizes_tiny_asymmetry():
    a = np.array([[1.0, 0.5 + 1e-13], [0.5, 2.0]])
    m = HermitianMatrix(a)
    assert np.array_equal(m.entries, m.entries.T)


def test_diagonal_made_exactly_real():
    a = np.array([[1.0 + 1e-14j, 2.0 - 1.0j], [2.0 + 1.0j, 3.0]])
    m = HermitianMatrix(a)
    assert np.all(m.entries.diagonal().imag == 0.0)
    assert np.array_equal(m.entries, m.entries.conj().T)


def test_real_valued_complex_input_demoted_to_real():
    m = HermitianMatrix(np.eye(2, dtype=np.complex128))
    assert not m.is_complex


def test_one_by_one_is_legal():
    m = HermitianMatrix(np.array([[4.0]]))
    assert m.n == 1
    assert eigenvalues_desc(m)[0] == 4.0


def test_entries_immutable():
    m = HermitianMatrix(np.eye(2))
    with pytest.raises(ValueError):
        m.entries[0, 0] = 5.0


# -- eigenvalues_desc ---------------------------------------------------------

def test_eigenvalues_diagonal_matrix():
    m = HermitianMatrix(np.diag([1.0, 3.0, 2.0]))
    assert np.allclose(eigenvalues_desc(m), [3.0, 2.0, 1.0], atol=1e-14)


def test_eigenvalues_two_by_two_swap():
    m = HermitianMatrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert np.allclose(eigenvalues_desc(m), [1.0, -1.0], atol=1e-14)


def test_eigenvalues_match_charpoly_oracle_5x5(rng):
    for complex_entries in (False, True):
        a = random_hermitian(rng, 5, complex_entries)
        got = eigenvalues_desc(HermitianMatrix(a))
        want = charpoly_eigenvalues(a)
        assert np.max(np.abs(want.imag)) < 1e-8
        assert np.max(np.abs(got - want.real)) < 1e-8


def test_eigenvalue_sum_equals_trace(rng):
    for n in (1, 2, 7, 16, 32):
        a = random_hermitian(rng, n, complex_entries=bool(n % 2))
        m = HermitianMatrix(a)
        budget = 1e-10 * n * float(np.max(np.abs(m.entries)))
        assert abs(eigenvalues_desc(m).sum() - np.trace(m.entries).real) <= budget


def test_spectrum_real_for_200_random_matrices(rng):
    """The complex-path solver agrees and its imaginary parts vanish."""
    for _ in range(200):
        n = int(rng.integers(1, 33))
        a = random_hermitian(rng, n, complex_entries=bool(rng.integers(2)))
        lam = eigenvalues_desc(HermitianMatrix(a))
        assert lam.dtype == np.float64
        # independent general (non-symmetric) solver takes the complex route
        general = np.linalg.eigvals(a)
        scale = max(1.0, float(np.max(np.abs(a))))
        assert np.max(np.abs(general.imag)) <= 1e-10 * n * scale
        assert np.max(np.abs(np.sort(general.real) - np.sort(lam))) <= 1e-9 * n * scale


def test_eigenvalues_descending_order(rng):
    a = random_hermitian(rng, 12)
    lam = eigenvalues_desc(HermitianMatrix(a))
    assert np.all(np.diff(lam) <= 0)


# -- eigen_decomposition ------------------------------------------------------

def test_decomposition_reconstructs(rng):
    a = random_hermitian(rng, 9, complex_entries=True)
    dec = eigen_decomposition(HermitianMatrix(a))
    rebuilt = (dec.basis * dec.eigenvalues) @ dec.basis.conj().T
    assert np.max(np.abs(rebuilt - a)) < 1e-10
    gram = dec.basis.conj().T @ dec.basis
    assert np.max(np.abs(gram - np.eye(9))) < 1e-12


def test_decomposition_type_rejects_ascending():
    with pytest.raises(ValueError, match="descending"):
        EigenDecomposition(np.array([1.0, 2.0]))


# -- trace_power --------------------------------------------------------------

def test_trace_power_identity():
    assert trace_power(HermitianMatrix(np.eye(3)), 5) == pytest.approx(3.0, abs=1e-12)


def test_trace_power_two_by_two():
    m = HermitianMatrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert trace_power(m, 2) == pytest.approx(2.0, abs=1e-12)


def test_trace_power_matches_cubed_product(rng):
    a = random_hermitian(rng, 4, complex_entries=True)
    want = np.trace(a @ a @ a).real
    assert trace_power(HermitianMatrix(a), 3) == pytest.approx(want, rel=1e-10)


def test_trace_power_matches_repeated_multiplication(rng):
    for _ in range(20):
        n = int(rng.integers(1, 17))
        a = random_hermitian(rng, n, complex_entries=bool(rng.integers(2)))
        m = HermitianMatrix(a)
        power = np.eye(n, dtype=a.dtype)
        for k in range(1, 9):
            power = power @ a
            want = float(np.trace(power).real)
            assert trace_power(m, k) == pytest.approx(want, rel=1e-8, abs=1e-8)


def test_trace_power_requires_positive_k():
    with pytest.raises(ValueError, match="k >= 1"):
        trace_power(HermitianMatrix(np.eye(2)), 0)


# -- frobenius_norm -----------------------------------------------------------

def test_frobenius_zero_matrix():
    assert frobenius_norm(HermitianMatrix(np.zeros((3, 3)))) == 0.0


def test_frobenius_identity():
    assert frobenius_norm(HermitianMatrix(np.eye(7))) == pytest.approx(math.sqrt(7), rel=1e-15)


def test_frobenius_hand_example():
    m = HermitianMatrix(np.array([[0.0, 3.0], [3.0, 0.0]]))
    assert frobenius_norm(m) == pytest.approx(math.sqrt(18.0), rel=1e-15)


def test_frobenius_equals_sqrt_trace_square(rng):
    a = random_hermitian(rng, 11, complex_entries=True)
    m = HermitianMatrix(a)
    assert frobenius_norm(m) == pytest.approx(math.sqrt(trace_power(m, 2)), rel=1e-10)


# -- numeric_rank -------------------------------------------------------------

def test_rank_zero_matrix():
    assert numeric_rank(HermitianMatrix(np.zeros((3, 3)))) == 0


def test_rank_identity():
    assert numeric_rank(HermitianMatrix(np.eye(4))) == 4


def test_rank_one_outer_product(rng):
    v = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    v /= np.linalg.norm(v)
    assert numeric_rank(HermitianMatrix(np.outer(v, v.conj()))) == 1


def test_rank_respects_explicit_tolerance():
    m = HermitianMatrix(np.diag([1.0, 1e-3]))
    assert numeric_rank(m, tol=1e-2) == 1
    assert numeric_rank(m, tol=1e-4) == 2


# -- principal_minor ----------------------------------------------------------

def test_minor_full_index_set(rng):
    a = random_hermitian(rng, 4)
    m = HermitianMatrix(a)
    assert np.array_equal(principal_minor(m, range(4)).entries, m.entries)


def test_minor_diagonal_example():
    m = HermitianMatrix(np.diag([3.0, 1.0, 2.0]))
    got = principal_minor(m, [0, 2])
    assert np.array_equal(got.entries, np.diag([3.0, 2.0]))


def test_minor_matches_entrywise_removal(rng):
    a = random_hermitian(rng, 4, complex_entries=True)
    got = principal_minor(HermitianMatrix(a), [1, 2, 3])
    assert np.max(np.abs(got.entries - a[1:, 1:])) < 1e-15


def test_minor_empty_set_rejected():
    with pytest.raises(ValueError, match="empty minor"):
        principal_minor(HermitianMatrix(np.eye(2)), [])


def test_minor_out_of_range_rejected():
    with pytest.raises(ValueError, match="out of range"):
        principal_minor(HermitianMatrix(np.eye(2)), [0, 2])


# -- spectral inequalities ----------------------------------------------------

def test_cauchy_interlacing_against_leading_minor(rng):
    for _ in range(200):
        n = int(rng.integers(2, 33))
        a = random_hermitian(rng, n, complex_entries=bool(rng.integers(2)))
        m = HermitianMatrix(a)
        lam = eigenvalues_desc(m)
        mu = eigenvalues_desc(principal_minor(m, range(n - 1)))
        assert np.all(lam[1:] <= mu + 1e-8)
        assert np.all(mu <= lam[:-1] + 1e-8)


def test_largest_eigenvalue_is_rayleigh_max(rng):
    """10,000 random unit vectors approach lambda_1 from below, never above."""
    for _ in range(10):
        n = int(rng.integers(2, 7))
        a = random_hermitian(rng, n)
        lam = eigenvalues_desc(HermitianMatrix(a))
        v = rng.standard_normal((10_000, n))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        quotients = np.einsum("ti,ij,tj->t", v, a, v)
        best = float(np.max(quotients))
        spread = float(lam[0] - lam[-1])
        assert best <= lam[0] + 1e-10
        assert best >= lam[0] - 0.05 * max(spread, 1e-12)


def test_hoffman_wielandt_inequality(rng):
    for _ in range(200):
        n = int(rng.integers(1, 33))
        cplx = bool(rng.integers(2))
        a = random_hermitian(rng, n, cplx)
        b = random_hermitian(rng, n, cplx)
        la = eigenvalues_desc(HermitianMatrix(a))
        lb = eigenvalues_desc(HermitianMatrix(b))
        lhs = float(np.sum((la - lb) ** 2))
        rhs = frobenius_norm(HermitianMatrix(a) - HermitianMatrix(b)) ** 2
        assert lhs <= rhs + 1e-8


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 12), seed=st.integers(0, 2**31 - 1), cplx=st.booleans())
def test_spectrum_invariants_property(n, seed, cplx):
    """Trace identity, descending order, and interlacing under one roof."""
    a = random_hermitian(np.random.default_rng(seed), n, cplx)
    m = HermitianMatrix(a)
    lam = eigenvalues_desc(m)
    assert np.all(np.diff(lam) <= 0)
    assert abs(lam.sum() - np.trace(a).real) <= 1e-10 * n * max(1.0, np.max(np.abs(a)))
    if n >= 2:
        mu = eigenvalues_desc(principal_minor(m, range(n - 1)))
        assert np.all(lam[1:] <= mu + 1e-8) and np.all(mu <= lam[:-1] + 1e-8)
