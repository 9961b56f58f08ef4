"""Two-block density operators in the 16-dimensional bond-mode basis.

A length-L block supports exactly four ground states |A_mu>, mutually
orthogonal with norms w_mu(L).  Two disjoint blocks therefore live in a
16-dimensional space; the operators here are stored as the raw
coefficient matrix over the unnormalized product states together with
the diagonal Gram weights, and as the orthonormal-basis Hermitian matrix
D^(1/2) C D^(1/2).  Composite index order is A-major: (mu, rho) -> 4*mu+rho.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .closed_forms import CHANNEL_SIGNS, ChannelWeights, decay_parameter
from .linalg import (
    HermitianOperator,
    SpectrumReport,
    hermitian_eigvals,
    partial_trace,
    spectrum_report,
)
from .pauli_algebra import PARITY, calibrated_epsilon

TRACE_TOL = 1e-12

_SIGNS = np.array(CHANNEL_SIGNS, dtype=float)

# S_{mu alpha} = (s_mu + s_alpha)/2; integer valued for s = (-1,-1,3,-1)
_S_PAIR = (_SIGNS[:, None] + _SIGNS[None, :]) / 2.0


@dataclass(frozen=True)
class BlockGeometry:
    """Two marked blocks on an open chain (one gap) or a ring (two gaps)."""

    boundary: str
    block_a: int
    block_b: int
    gap: int | None = None
    gap_c: int | None = None
    gap_d: int | None = None

    def __post_init__(self):
        if self.boundary not in ("open", "periodic"):
            raise ValueError(f"boundary must be open or periodic, got {self.boundary!r}")
        if self.block_a < 1 or self.block_b < 1:
            raise ValueError(
                f"blocks need length >= 1, got ({self.block_a}, {self.block_b})"
            )
        if self.boundary == "open":
            if self.gap is None or self.gap < 0:
                raise ValueError(f"open geometry needs gap >= 0, got {self.gap}")
        else:
            if self.gap_c is None or self.gap_d is None:
                raise ValueError("periodic geometry needs both gaps")
            if self.gap_c < 0 or self.gap_d < 0:
                raise ValueError(
                    f"gaps must be >= 0, got ({self.gap_c}, {self.gap_d})"
                )

    @property
    def total(self) -> int:
        if self.boundary == "open":
            return self.block_a + self.gap + self.block_b
        return self.block_a + self.block_b + self.gap_c + self.gap_d


def open_geometry(block_a: int, gap: int, block_b: int) -> BlockGeometry:
    return BlockGeometry("open", block_a, block_b, gap=gap)


def ring_geometry(block_a: int, block_b: int, gap_c: int, gap_d: int) -> BlockGeometry:
    return BlockGeometry("periodic", block_a, block_b, gap_c=gap_c, gap_d=gap_d)


@dataclass(frozen=True)
class MTensor:
    """Rank-4 coupling tensor of the three-block contraction identity."""

    values: np.ndarray

    def weighted_contraction(self, gap: int) -> np.ndarray:
        """sum_{nu sigma} w_nu(gap) M_{mu nu rho sigma} M_{alpha nu beta sigma}."""
        w = np.array(ChannelWeights.from_length(gap).weights)
        return np.einsum("n,mnrs,anbs->mrab", w, self.values, self.values)

    def contraction_defect(self, gap: int) -> float:
        """Max |weighted contraction - closed-form coefficient tensor|."""
        direct = self.weighted_contraction(gap)
        closed = _obc_coefficients(decay_parameter(gap))
        return float(np.max(np.abs(direct - closed)))


def m_tensor() -> MTensor:
    from .pauli_algebra import m4_tensor

    return MTensor(m4_tensor())


@dataclass(frozen=True)
class EffectiveDensityOperator:
    """coeff over unnormalized modes, Gram weights, orthonormal matrix."""

    coeff: np.ndarray
    gram: np.ndarray
    normalized: np.ndarray
    geometry: BlockGeometry
    note: str = ""

    def spectrum(self) -> SpectrumReport:
        return spectrum_report(np.real(hermitian_eigvals(self.normalized)))

    def as_operator(self) -> HermitianOperator:
        return HermitianOperator(self.normalized, (4, 4))


def _assemble(coeff4: np.ndarray, geometry: BlockGeometry, note: str = "") -> EffectiveDensityOperator:
    w_a = np.array(ChannelWeights.from_length(geometry.block_a).weights)
    w_b = np.array(ChannelWeights.from_length(geometry.block_b).weights)
    gram = np.einsum("m,r->mr", w_a, w_b).reshape(16)
    coeff = coeff4.reshape(16, 16)
    half = np.sqrt(gram)
    normalized = half[:, None] * coeff * half[None, :]
    trace = float(np.trace(normalized).real)
    if abs(trace - 1.0) > TRACE_TOL:
        raise ValueError(f"construction lost the unit trace: {trace!r}")
    return EffectiveDensityOperator(
        coeff=coeff,
        gram=gram,
        normalized=normalized / trace,
        geometry=geometry,
        note=note,
    )


def _obc_parts() -> tuple[np.ndarray, np.ndarray]:
    """Integer base and linear tensors with coeff(z) = base + z * linear."""
    eye = np.eye(4)
    base = np.einsum("ma,rb->mrab", eye, eye)
    d_mr_ab = np.einsum("mr,ab->mrab", eye, eye)
    d_ra_mb = np.einsum("ra,mb->mrab", eye, eye)
    s_ma = _S_PAIR[:, None, :, None]
    s_rb = _S_PAIR[None, :, None, :]
    eps = np.einsum("abmr->mrab", calibrated_epsilon().values.astype(float))
    linear = -(d_mr_ab - d_ra_mb) * s_ma + eps * (s_rb - s_ma) / 2.0
    return base, linear


_OBC_BASE, _OBC_LINEAR = _obc_parts()


def _obc_coefficients(z: float) -> np.ndarray:
    return _OBC_BASE + z * _OBC_LINEAR


def rho_ab_open(block_a: int, gap: int, block_b: int) -> EffectiveDensityOperator:
    """Two disjoint blocks on an open chain, separated by gap >= 1 bulk sites."""
    if gap < 1:
        raise ValueError("disjoint blocks need gap >= 1; use rho_ab_adjacent for 0")
    geometry = open_geometry(block_a, gap, block_b)
    return _assemble(_obc_coefficients(decay_parameter(gap)), geometry)


def rho_ab_adjacent(block_a: int, block_b: int) -> EffectiveDensityOperator:
    """Two touching blocks: the gap-dependent coefficients at z = 1."""
    geometry = open_geometry(block_a, 0, block_b)
    return _assemble(_obc_coefficients(1.0), geometry)


def rho_ce_spectra(middle_length: int) -> tuple[SpectrumReport, SpectrumReport]:
    """Spectra of the two-end-block state and of its one-sided transpose.

    Tracing out a middle segment of total length L_mid leaves the two
    chain ends in the rank-4 state diag(w_mu(L_mid)); its partial
    transpose has eigenvalues w_mu - (-1)^mu (w_2 - w_1)/2.
    """
    if middle_length < 1:
        raise ValueError(f"middle length must be >= 1, got {middle_length}")
    w = ChannelWeights.from_length(middle_length).weights
    shift = (w[2] - w[1]) / 2.0
    pt = [w[mu] - PARITY[mu] * shift for mu in range(4)]
    return spectrum_report(list(w)), spectrum_report(pt)


def _pbc_coefficients(z_c: float, z_d: float, z_total: float) -> np.ndarray:
    s = _SIGNS
    norm = 1.0 + 3.0 * z_total
    x, y = z_d, z_c

    def lam(xx: float, yy: float) -> np.ndarray:
        pair = s[:, None] * s[None, :] + s[:, None] + s[None, :]
        return (1.0 + pair * xx * yy) / norm

    def gam(xx: float, yy: float) -> np.ndarray:
        return (s[:, None] + s[None, :]) * (xx * yy - (xx + yy) / 2.0) / norm

    eye = np.eye(4)
    eps = np.einsum("abmr->mrab", calibrated_epsilon().values.astype(float))
    # R_{rho mu beta alpha}: antisymmetrized sign combination, one factor (x - y)
    r4 = (
        s[:, None, None, None]
        - s[None, :, None, None]
        + s[None, None, :, None]
        - s[None, None, None, :]
    ) * (x - y) / (4.0 * norm)

    term1 = np.einsum("ma,rb,ab->mrab", eye, eye, lam(x, y))
    term2 = np.einsum("ar,mb,am->mrab", eye, eye, gam(x, y))
    term3 = eps * np.einsum("rmba->mrab", r4)
    term4 = np.einsum("mr,ab,ma->mrab", eye, eye, gam(-x, -y))
    return term1 - term2 + term3 - term4


def rho_ab_pbc(
    block_a: int, block_b: int, gap_c: int, gap_d: int
) -> EffectiveDensityOperator:
    """Two blocks on a ring, arcs in cyclic order: gap C, block A, gap D, block B.

    Gaps of 0 are constructed (the touching-on-ring case) but flagged,
    since the positivity guarantee for transposed ring states needs both
    gaps >= 1.
    """
    geometry = ring_geometry(block_a, block_b, gap_c, gap_d)
    coeff4 = _pbc_coefficients(
        decay_parameter(gap_c),
        decay_parameter(gap_d),
        decay_parameter(geometry.total),
    )
    note = "" if gap_c >= 1 and gap_d >= 1 else "touching blocks on a ring"
    return _assemble(coeff4, geometry, note)


def convexity_coefficients(gap_c: int, gap_d: int) -> tuple[float, float, float, float]:
    """Mixture weights certifying ring transpose positivity.

    The ring coefficient tensor is bilinear in (z_d, z_c), so its value
    at the sign-flipped point (-z_d, -z_c) is a weighted combination of
    the four members with gap parameters in {1, -1/3}, i.e. gap lengths
    0 and 1.  Matching the four bilinear monomials forces barycentric
    product weights; returned in corner order (1,1), (-1/3,1), (1,-1/3),
    (-1/3,-1/3) for the (z_d, z_c) slots.

    Each weight lies in [0, 1] exactly when both gaps are >= 1 (a 1D
    node weight leaves [0, 1] once a flipped parameter -z falls outside
    [-1/3, 1], which happens only at gap 0), and the four sum to 1
    identically.
    """
    zc = decay_parameter(gap_c)
    zd = decay_parameter(gap_d)
    # 1D weights for representing -z over the nodes {1, -1/3}
    high_d, low_d = (1.0 - 3.0 * zd) / 4.0, 3.0 * (1.0 + zd) / 4.0
    high_c, low_c = (1.0 - 3.0 * zc) / 4.0, 3.0 * (1.0 + zc) / 4.0
    return high_d * high_c, low_d * high_c, high_d * low_c, low_d * low_c


def mode_partial_transpose(op: EffectiveDensityOperator) -> EffectiveDensityOperator:
    """Swap the two A-mode indices of the coefficient tensor.

    Equivalent to flipping the sign of every gap parameter: z -> -z for
    the open constructions, (z_c, z_d) -> (-z_c, -z_d) on the ring.  Pure
    index movement, so applying it twice restores the input bitwise.
    """
    coeff4 = op.coeff.reshape(4, 4, 4, 4).transpose(2, 1, 0, 3)
    half = np.sqrt(op.gram)
    coeff = coeff4.reshape(16, 16)
    normalized = half[:, None] * coeff * half[None, :]
    return replace(op, coeff=coeff, normalized=normalized)


def mode_partial_trace(op: EffectiveDensityOperator, over: str) -> HermitianOperator:
    """Trace the orthonormal 16x16 matrix over one block's mode factor."""
    if over not in ("A", "B"):
        raise ValueError(f"over must be 'A' or 'B', got {over!r}")
    kept = [1] if over == "A" else [0]
    return partial_trace(HermitianOperator(op.normalized, (4, 4)), kept)


@dataclass(frozen=True)
class Measures:
    report: SpectrumReport
    entropy_a: float
    entropy_b: float
    mutual_information: float


def measures(op: EffectiveDensityOperator) -> Measures:
    """Joint spectrum plus the block entropies and their mutual information."""
    report = op.spectrum()
    ent = {}
    for side in ("A", "B"):
        vals = np.real(hermitian_eigvals(mode_partial_trace(op, "B" if side == "A" else "A")))
        ent[side] = spectrum_report(vals).entropy
    return Measures(
        report=report,
        entropy_a=ent["A"],
        entropy_b=ent["B"],
        mutual_information=ent["A"] + ent["B"] - report.entropy,
    )
