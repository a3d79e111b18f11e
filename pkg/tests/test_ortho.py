import json

import numpy as np
import pytest

from gcospec.cospec import is_rooted_generalized_cospectral
from gcospec.graph import RootedGraph, complete_graph, path_graph, split_root
from gcospec.graph6 import decode_graph6
from gcospec.miner import CatalogSource, enumerate_graphs, find_mates, rooted_cospectral_pairs
from gcospec.ortho import (
    GramMismatchError,
    PreconditionError,
    align_frames,
    certify,
    construct_block_q,
    construct_q,
    verify_certificate,
)
from gcospec.spectral import graph_decomposition, spectral_profile


def test_align_identity():
    x1, x2 = np.array([1.0, 2.0, 0.0]), np.array([0.5, -1.0, 3.0])
    m = align_frames(x1, x2, x1, x2)
    assert np.allclose(m @ x1, x1) and np.allclose(m @ x2, x2)
    assert np.allclose(m.T @ m, np.eye(3))


def test_align_one_dimensional_reflection():
    m = align_frames([2.0], [0.0], [-2.0], [0.0])
    assert m == pytest.approx(np.array([[-1.0]]))


def test_align_swap():
    m = align_frames([1.0, 0.0], [0.0, 1.0], [0.0, 1.0], [1.0, 0.0])
    assert m == pytest.approx(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert m @ np.array([1.0, 0.0]) == pytest.approx([0.0, 1.0])


def test_align_degenerate_frames():
    m = align_frames([0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0])
    assert m == pytest.approx(np.eye(3))
    x = np.array([1.0, 1.0, 0.0])
    y = np.array([0.0, 1.0, 1.0])
    m = align_frames(x, 2 * x, y, 2 * y)
    assert np.allclose(m @ x, y) and np.allclose(m.T @ m, np.eye(3))


def test_align_random_pairs():
    rng = np.random.default_rng(0)
    for k in range(1, 6):
        for _ in range(10):
            x1, x2 = rng.normal(size=k), rng.normal(size=k)
            q, _ = np.linalg.qr(rng.normal(size=(k, k)))
            y1, y2 = q @ x1, q @ x2
            m = align_frames(x1, x2, y1, y2)
            assert np.max(np.abs(m @ x1 - y1)) <= 1e-8
            assert np.max(np.abs(m @ x2 - y2)) <= 1e-8
            assert np.max(np.abs(m.T @ m - np.eye(k))) <= 1e-10


def test_align_gram_mismatch():
    with pytest.raises(GramMismatchError):
        align_frames([1.0, 0.0], [0.0, 1.0], [2.0, 0.0], [0.0, 1.0])


def test_construct_q_identity_inputs():
    g = path_graph(4)
    cert = construct_q(g, g, (1, 1, 0, 0), (1, 1, 0, 0))
    assert cert.verified
    assert max(cert.residual_orth, cert.residual_conj, cert.residual_e, cert.residual_b) <= 1e-7


def test_construct_q_p3_flip():
    p3 = path_graph(3)
    cert = construct_q(p3, p3, (1, 0, 0), (0, 0, 1))
    assert cert.verified
    assert cert.Q.T @ np.array([1.0, 0.0, 0.0]) == pytest.approx([0.0, 0.0, 1.0], abs=1e-9)
    flip = np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]], dtype=float)
    # the flip permutation is itself an exact solution
    assert verify_certificate(certify(flip, p3.to_numpy(), p3.to_numpy()), p3.to_numpy(), p3.to_numpy(),
                              [1, 0, 0], [0, 0, 1])


def test_construct_q_on_smallest_generalized_mates():
    recs = find_mates(CatalogSource(n=7), "generalized")
    for r in recs:
        g, h = decode_graph6(r.g6_a), decode_graph6(r.g6_b)
        cert = construct_q(g, h)
        assert cert.verified, r
        assert cert.residual_e <= 1e-7


def test_construct_q_preconditions(named):
    with pytest.raises(PreconditionError):
        construct_q(named["K14"], named["C4K1"])
    p3 = named["P3"]
    with pytest.raises(PreconditionError):
        construct_q(p3, p3, (1, 0, 0), (0, 1, 0))
    with pytest.raises(PreconditionError):
        construct_q(p3, named["P4"])


def test_block_examples():
    k2 = RootedGraph(complete_graph(2), 1)
    bc = construct_block_q(k2, k2)
    assert bc.verified and bc.inner.Q == pytest.approx(np.array([[1.0]]))
    bc = construct_block_q(RootedGraph(path_graph(4), 0), RootedGraph(path_graph(4), 3))
    assert bc.verified
    assert bc.full[-1, -1] == 1.0 and np.all(bc.full[-1, :-1] == 0) and np.all(bc.full[:-1, -1] == 0)
    with pytest.raises(PreconditionError):
        construct_block_q(RootedGraph(path_graph(3), 0), RootedGraph(path_graph(3), 1))


def test_block_single_vertex():
    k1 = RootedGraph(complete_graph(1), 0)
    bc = construct_block_q(k1, k1)
    assert bc.verified and bc.full.shape == (1, 1)


def test_verify_rejects_perturbation():
    g = path_graph(4)
    a = g.to_numpy()
    cert = certify(np.eye(4), a, a)
    assert verify_certificate(cert, a, a)
    q = np.eye(4)
    q[0, 0] += 1e-3
    assert not verify_certificate(certify(q, a, a), a, a)
    with pytest.raises(ValueError):
        verify_certificate(cert, a, np.eye(3))


def test_certificate_json():
    p3 = path_graph(3)
    cert = construct_q(p3, p3, (1, 0, 0), (0, 0, 1))
    d = json.loads(json.dumps(cert.to_dict()))
    assert d["verified"] is True
    q = np.array([[float(x) for x in row] for row in d["Q"]])
    assert np.array_equal(q, cert.Q)  # 17 significant digits round-trip doubles


def test_claim_and_roundtrip_n5():
    graphs = [g for n in range(2, 6) for g in enumerate_graphs(n)]
    count = 0
    for rg, rh in rooted_cospectral_pairs(graphs):
        bc = construct_block_q(rg, rh)
        assert bc.verified
        assert is_rooted_generalized_cospectral(rg, rh).rooted_generalized
        (g1, b), (h1, c) = split_root(rg), split_root(rh)
        pg = spectral_profile(graph_decomposition(g1), b)
        ph = spectral_profile(graph_decomposition(h1), c)
        assert pg.max_difference(ph) <= 1e-7
        # regularity of the inner block carries over to the bordered matrix
        assert bc.inner.residual_e <= 1e-8
        assert np.max(np.abs(bc.full.T @ np.ones(g1.n + 1) - 1)) <= 1e-8
        assert bc.inner.residual_orth <= 1e-9
        count += 1
    assert count > 100


def test_block_q_on_nonisomorphic_rooted_mates():
    # whether such mates exist is discovered, not assumed
    for r in find_mates(CatalogSource(n=7), "rooted"):
        rg = RootedGraph(decode_graph6(r.g6_a), r.root_a)
        rh = RootedGraph(decode_graph6(r.g6_b), r.root_b)
        assert construct_block_q(rg, rh).verified
