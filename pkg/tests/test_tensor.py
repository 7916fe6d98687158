import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mpconcurrence.states import ghz_pair, random_pure
from mpconcurrence.tensor import (
    InvalidInputError,
    SubstateSelector,
    flat_index,
    hermitian_trace_norm,
    multi_index,
    partial_trace,
    partial_transpose,
    project_substate,
    realign,
    trace_norm,
    unrealign,
)
from oracles import loop_partial_trace, loop_partial_transpose, loop_realign, random_density

dims_strategy = st.sampled_from([(2, 2), (2, 3), (2, 2, 2), (3, 2, 2), (2, 3, 2)])


def test_flat_index_is_row_major():
    dims = (2, 3, 4)
    assert flat_index((1, 2, 3), dims) == (1 * 3 + 2) * 4 + 3
    for f in range(24):
        assert flat_index(multi_index(f, dims), dims) == f


def test_partial_trace_product_state():
    rho = np.zeros((8, 8))
    rho[0, 0] = 1
    np.testing.assert_allclose(partial_trace(rho, (2, 2, 2), 1), [[1, 0], [0, 0]])


@pytest.mark.parametrize("keep", [1, 2, 3])
def test_partial_trace_ghz_marginal(keep):
    g = ghz_pair((2, 2, 2), 0, 1).amplitudes
    red = partial_trace(np.outer(g, g.conj()), (2, 2, 2), keep)
    np.testing.assert_allclose(red, np.eye(2) / 2, atol=1e-15)


@pytest.mark.parametrize("keep", [1, 2, 3])
def test_partial_trace_matches_loop_oracle(rng, keep):
    rho = random_density(rng, (3, 3, 3))
    red = partial_trace(rho, (3, 3, 3), keep)
    np.testing.assert_allclose(red, loop_partial_trace(rho, (3, 3, 3), keep), atol=1e-14)
    assert abs(np.trace(red) - 1) < 1e-12


def test_partial_trace_rejects_bad_dims():
    with pytest.raises(InvalidInputError):
        partial_trace(np.eye(8) / 8, (2, 3), 1)
    with pytest.raises(InvalidInputError):
        partial_trace(np.eye(8) / 8, (2, 2, 2), 4)


def test_partial_transpose_diagonal_fixed(rng):
    rho = np.diag(rng.random(8))
    for j in (1, 2, 3):
        np.testing.assert_array_equal(partial_transpose(rho, (2, 2, 2), j), rho)


def test_bell_partial_transpose():
    phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    pt = partial_transpose(np.outer(phi, phi), (2, 2), 2)
    np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(pt)), [-0.5, 0.5, 0.5, 0.5], atol=1e-15)
    assert trace_norm(pt) == pytest.approx(2.0, abs=1e-14)


@given(dims=dims_strategy, seed=st.integers(0, 10_000), data=st.data())
def test_partial_transpose_oracle_and_involution(dims, seed, data):
    j = data.draw(st.integers(1, len(dims)))
    rho = random_density(np.random.default_rng(seed), dims)
    pt = partial_transpose(rho, dims, j)
    np.testing.assert_array_equal(pt, loop_partial_transpose(rho, dims, j))
    np.testing.assert_array_equal(partial_transpose(pt, dims, j), rho)
    np.testing.assert_allclose(pt, pt.conj().T, atol=1e-15)
    assert abs(np.trace(pt) - np.trace(rho)) < 1e-14
    assert hermitian_trace_norm(pt) >= 1 - 1e-12


def test_partial_transpose_symmetric_state_spectrum():
    # W state is permutation symmetric
    w = np.zeros(8)
    w[[1, 2, 4]] = 1 / np.sqrt(3)
    rho = np.outer(w, w)
    spectra = [np.sort(np.linalg.eigvalsh(partial_transpose(rho, (2, 2, 2), j))) for j in (1, 2, 3)]
    np.testing.assert_allclose(spectra[0], spectra[1], atol=1e-14)
    np.testing.assert_allclose(spectra[0], spectra[2], atol=1e-14)


@given(dims=dims_strategy, seed=st.integers(0, 10_000), data=st.data())
def test_realign_oracle_and_inverse(dims, seed, data):
    j = data.draw(st.integers(1, len(dims)))
    rho = random_density(np.random.default_rng(seed), dims)
    r = realign(rho, dims, j)
    np.testing.assert_array_equal(r, loop_realign(rho, dims, j))
    np.testing.assert_array_equal(unrealign(r, dims, j), rho)
    np.testing.assert_array_equal(np.sort_complex(r.ravel()), np.sort_complex(rho.ravel()))


def test_realign_product_state(rng):
    a = random_density(rng, (2, 1))
    b = random_density(rng, (2, 2))
    rho = np.kron(a, b)
    r = realign(rho, (2, 2, 2), 1)
    assert np.linalg.matrix_rank(r, tol=1e-12) == 1
    expected = np.linalg.norm(a) * np.linalg.norm(b)
    assert trace_norm(r) == pytest.approx(expected, abs=1e-12)
    assert trace_norm(r) <= 1 + 1e-12


@pytest.mark.parametrize("j", [1, 2, 3])
def test_realign_ghz_trace_norm(j):
    g = ghz_pair((2, 2, 2), 0, 1).amplitudes
    assert trace_norm(realign(np.outer(g, g), (2, 2, 2), j)) == pytest.approx(2.0, abs=1e-12)


def test_trace_norm_basics(rng):
    assert trace_norm(np.diag([1.0, -1.0])) == 2.0
    assert trace_norm(random_density(rng, (3, 3))) == pytest.approx(1.0, abs=1e-12)
    m = rng.standard_normal((3, 5))
    assert trace_norm(m) == pytest.approx(np.sum(np.linalg.svd(m, compute_uv=False)))
    with pytest.raises(InvalidInputError):
        trace_norm(np.array([[np.nan, 0], [0, 1]]))


def test_selector_validation():
    with pytest.raises(InvalidInputError):
        SubstateSelector(((0, 1), (1, 0), (0, 1)))
    with pytest.raises(InvalidInputError):
        SubstateSelector(((0, 1), (0, 1, 2), (0, 1)))
    with pytest.raises(InvalidInputError):
        SubstateSelector(((0,), (0,), (0,)))
    sel = SubstateSelector(((0, 3), (0, 1), (0, 1)))
    with pytest.raises(InvalidInputError):
        project_substate(np.eye(27) / 27, (3, 3, 3), sel)


def test_project_full_selector_is_identity(rng):
    rho = random_density(rng, (3, 3, 3))
    full = SubstateSelector(((0, 1, 2),) * 3)
    sub, dims = project_substate(rho, (3, 3, 3), full)
    assert dims == (3, 3, 3)
    np.testing.assert_array_equal(sub, rho)


def test_project_keeps_sorted_layout(rng):
    rho = random_density(rng, (3, 3, 3))
    sel = SubstateSelector(((0, 2), (1, 2), (0, 1)))
    sub, dims = project_substate(rho, (3, 3, 3), sel)
    assert dims == (2, 2, 2)
    labels = [(i, j, k) for i in (0, 2) for j in (1, 2) for k in (0, 1)]
    for r, lr in enumerate(labels):
        for c, lc in enumerate(labels):
            assert sub[r, c] == rho[flat_index(lr, (3, 3, 3)), flat_index(lc, (3, 3, 3))]
    assert np.trace(sub).real <= 1
    # idempotent under the full selector of the sub-state
    again, _ = project_substate(sub, dims, SubstateSelector(((0, 1),) * 3))
    np.testing.assert_array_equal(again, sub)


def test_project_diagonal(rng):
    rho = np.diag(rng.random(27))
    sel = SubstateSelector(((1, 2), (0, 2), (0, 1)))
    sub, _ = project_substate(rho, (3, 3, 3), sel)
    assert np.count_nonzero(sub - np.diag(np.diag(sub))) == 0


def test_projection_of_random_pure_state_is_subvector():
    psi = random_pure((3, 3, 3), 4)
    sel = SubstateSelector(((0, 1), (0, 2), (1, 2)))
    sub, _ = project_substate(np.outer(psi.amplitudes, psi.amplitudes.conj()), psi.dims, sel)
    v = psi.amplitudes[sel.flat_indices(psi.dims)]
    np.testing.assert_allclose(sub, np.outer(v, v.conj()), atol=1e-16)
