"""Tests of the 16x16 effective two-block density operators.

Cross-checks against the closed-form spectra live here too, so the two
independent derivations (coefficient tensor + Gram weighting vs the
characteristic polynomials) are never collapsed into one code path.
"""

import math

import numpy as np
import pytest

from vbsent.closed_forms import (
    ChannelWeights,
    adjacent_pt_negativity,
    adjacent_pt_spectrum,
    decay_parameter,
    disjoint_spectrum,
    mutual_information,
)
from vbsent.effective_rho import (
    BlockGeometry,
    _obc_coefficients,
    _pbc_coefficients,
    convexity_coefficients,
    m_tensor,
    measures,
    mode_partial_trace,
    mode_partial_transpose,
    open_geometry,
    rho_ab_adjacent,
    rho_ab_open,
    rho_ab_pbc,
    rho_ce_spectra,
    ring_geometry,
)
from vbsent.linalg import hermitian_eigvals


# ---------------------------------------------------------------- geometry


def test_open_geometry_total():
    g = open_geometry(2, 3, 1)
    assert g.total == 6
    assert g.boundary == "open"


def test_ring_geometry_total():
    g = ring_geometry(1, 2, 1, 3)
    assert g.total == 7


def test_geometry_validation():
    with pytest.raises(ValueError, match="length >= 1"):
        open_geometry(0, 1, 1)
    with pytest.raises(ValueError, match="gap >= 0"):
        open_geometry(1, -1, 1)
    with pytest.raises(ValueError, match="both gaps"):
        BlockGeometry("periodic", 1, 1, gap_c=1)
    with pytest.raises(ValueError, match="boundary"):
        BlockGeometry("twisted", 1, 1, gap=1)


# ---------------------------------------------------- coefficient tensors


def test_m_tensor_contraction_closes():
    # chaining two three-block couplings across a middle block of any
    # length reproduces the two-block coefficients to round-off
    m = m_tensor()
    for gap in (1, 2, 3, 4):
        assert m.contraction_defect(gap) < 1e-15


def test_obc_coefficients_transpose_flip():
    # swapping the A-mode indices equals sending z -> -z, entry by entry
    for gap in (1, 2, 3):
        z = decay_parameter(gap)
        coeff = _obc_coefficients(z)
        flipped = _obc_coefficients(-z)
        assert np.array_equal(coeff.transpose(2, 1, 0, 3), flipped)


def test_obc_coefficients_identity_row():
    # the (0,0,0,0)-type diagonal carries weight 1 before Gram weighting
    coeff = _obc_coefficients(decay_parameter(2))
    for mu in range(4):
        for rho in range(4):
            assert coeff[mu, rho, mu, rho] == pytest.approx(
                1.0 if mu != rho else coeff[mu, mu, mu, mu]
            )


def test_pbc_coefficients_transpose_flip():
    zc, zd = decay_parameter(2), decay_parameter(1)
    zt = decay_parameter(6)
    coeff = _pbc_coefficients(zc, zd, zt)
    flipped = _pbc_coefficients(-zc, -zd, zt)
    assert np.max(np.abs(coeff.transpose(2, 1, 0, 3) - flipped)) < 1e-15


# ------------------------------------------------------------ open chains


def test_rho_open_rejects_touching():
    with pytest.raises(ValueError, match="adjacent"):
        rho_ab_open(1, 0, 1)


def test_rho_open_unit_trace_and_psd():
    for geo in [(1, 1, 1), (2, 1, 2), (1, 3, 2), (3, 2, 1)]:
        op = rho_ab_open(*geo)
        vals = np.real(hermitian_eigvals(op.normalized))
        assert np.trace(op.normalized).real == pytest.approx(1.0, abs=1e-13)
        assert vals.min() > -1e-13


def test_rho_open_matches_polynomial_route():
    for la, gap, lb in [(1, 1, 1), (2, 1, 2), (1, 2, 3), (2, 2, 2)]:
        mode = rho_ab_open(la, gap, lb).spectrum()
        poly = disjoint_spectrum(la, gap, lb)
        assert mode.eigenvalues == pytest.approx(poly.eigenvalues, abs=1e-12)


def test_rho_adjacent_pt_matches_polynomial_route():
    for la, lb in [(1, 1), (1, 2), (2, 2), (3, 2)]:
        op = mode_partial_transpose(rho_ab_adjacent(la, lb))
        got = op.spectrum()
        want = adjacent_pt_spectrum(la, lb)
        assert got.eigenvalues == pytest.approx(want.eigenvalues, abs=1e-12)
        assert got.negativity == pytest.approx(
            adjacent_pt_negativity(la, lb).negativity, abs=1e-12
        )


def test_mode_pt_is_involution():
    op = rho_ab_open(2, 1, 1)
    back = mode_partial_transpose(mode_partial_transpose(op))
    assert np.array_equal(back.coeff, op.coeff)
    assert np.array_equal(back.normalized, op.normalized)


def test_mode_pt_positive_when_separated():
    for gap in (1, 2, 3):
        op = mode_partial_transpose(rho_ab_open(2, gap, 2))
        vals = np.real(hermitian_eigvals(op.normalized))
        assert vals.min() > -1e-13


def test_mode_partial_trace_gives_channel_weights():
    op = rho_ab_open(2, 1, 3)
    for side, length in (("B", 2), ("A", 3)):
        red = mode_partial_trace(op, side)
        vals = np.sort(np.real(hermitian_eigvals(red)))
        want = np.sort(ChannelWeights.from_length(length).weights)
        assert vals == pytest.approx(want, abs=1e-13)
    with pytest.raises(ValueError):
        mode_partial_trace(op, "C")


# -------------------------------------------------------------- end blocks


def test_rho_ce_spectra_middle_one():
    block, pt = rho_ce_spectra(1)
    w = ChannelWeights.from_length(1)
    assert block.eigenvalues == pytest.approx(
        tuple(sorted([w.singlet] + [w.triplet] * 3)), abs=1e-15
    )
    assert pt.eigenvalues == pytest.approx((1 / 6, 1 / 6, 1 / 6, 1 / 2), abs=1e-15)
    assert pt.negativity == 0.0


def test_rho_ce_no_negativity_any_middle():
    for mid in (1, 2, 3, 5):
        _, pt = rho_ce_spectra(mid)
        assert pt.negativity == 0.0


# ------------------------------------------------------------------- rings


def test_rho_pbc_unit_trace_and_psd():
    for geo in [(1, 1, 1, 1), (2, 1, 2, 1), (1, 2, 2, 3)]:
        op = rho_ab_pbc(*geo)
        vals = np.real(hermitian_eigvals(op.normalized))
        assert np.trace(op.normalized).real == pytest.approx(1.0, abs=1e-13)
        assert vals.min() > -1e-13
        assert op.note == ""


def test_rho_pbc_flags_touching():
    op = rho_ab_pbc(1, 1, 0, 2)
    assert "touching" in op.note


def test_rho_pbc_pt_positive_with_gaps():
    for geo in [(1, 1, 1, 1), (2, 1, 1, 2), (1, 2, 3, 1), (2, 2, 2, 2)]:
        op = mode_partial_transpose(rho_ab_pbc(*geo))
        vals = np.real(hermitian_eigvals(op.normalized))
        assert vals.min() > -1e-12


def test_rho_pbc_large_ring_approaches_open():
    # with one huge gap the ring factorizes into the open-chain state
    ring = rho_ab_pbc(2, 2, 1, 9).spectrum()
    chain = rho_ab_open(2, 1, 2).spectrum()
    assert ring.eigenvalues == pytest.approx(chain.eigenvalues, abs=1e-4)


def test_convexity_coefficients_simplex():
    for gc in range(1, 7):
        for gd in range(1, 7):
            weights = convexity_coefficients(gc, gd)
            assert min(weights) >= 0.0
            assert max(weights) <= 1.0
            assert math.fsum(weights) == pytest.approx(1.0, abs=1e-15)


def test_convexity_coefficients_anchor_values():
    assert convexity_coefficients(1, 1) == pytest.approx(
        (0.25, 0.25, 0.25, 0.25), abs=1e-15
    )
    assert sorted(convexity_coefficients(2, 1)) == pytest.approx(
        sorted((1 / 12, 1 / 12, 5 / 12, 5 / 12)), abs=1e-15
    )


def test_convexity_mixture_closes():
    # the four corner tensors, weighted, must equal the transposed tensor
    for gc, gd in [(1, 1), (2, 1), (1, 3), (2, 2), (3, 4)]:
        zc, zd = decay_parameter(gc), decay_parameter(gd)
        zt = decay_parameter(gc + gd + 2)
        target = _pbc_coefficients(-zc, -zd, zt)
        # corner (z_d, z_c) values matching the documented weight order
        corners = [(1.0, 1.0), (-1 / 3, 1.0), (1.0, -1 / 3), (-1 / 3, -1 / 3)]
        weights = convexity_coefficients(gc, gd)
        mix = sum(
            w * _pbc_coefficients(cc, dd, zt)
            for w, (dd, cc) in zip(weights, corners)
        )
        assert np.max(np.abs(mix - target)) < 1e-14


def test_convexity_breaks_at_zero_gap():
    # gap 0 flips z to -1, outside the node interval: some weight must
    # leave [0, 1], matching the construction's stated limit
    weights = convexity_coefficients(0, 1)
    assert min(weights) < 0.0


# ---------------------------------------------------------------- measures


def test_measures_far_blocks_nearly_mixed():
    m = measures(rho_ab_open(6, 6, 6))
    assert m.report.entropy == pytest.approx(4.0 * math.log(2.0), abs=1e-4)
    assert m.report.purity == pytest.approx(1.0 / 16.0, abs=1e-5)
    assert m.mutual_information == pytest.approx(0.0, abs=1e-5)


def test_measures_mutual_information_tracks_closed_form():
    for gap in (1, 2, 3):
        m = measures(rho_ab_open(6, gap, 6))
        target = mutual_information(decay_parameter(gap))
        tol = 0.01 if gap == 1 else 0.002
        assert abs(m.mutual_information - target) < tol


def test_measures_entropy_symmetry():
    m = measures(rho_ab_open(3, 2, 3))
    assert m.entropy_a == pytest.approx(m.entropy_b, abs=1e-13)
