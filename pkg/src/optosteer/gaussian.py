"""Two-mode Gaussian state toolkit: steering, asymmetry, Renyi-2 entanglement.

Conventions
-----------
Quadratures are q = (b^dag + b)/sqrt(2) and p = i(b^dag - b)/sqrt(2), so
[q, p] = i and the vacuum variance is 1/2.  Covariance matrices are real 4x4
arrays in the ordered basis (q1, p1, q2, p2).  Mode A is mode 1 (top-left 2x2
block V1), mode B is mode 2 (bottom-right block V2), and the off-diagonal 2x2
block V3 carries the cross correlations.  A state is physical (bona fide) when
both symplectic eigenvalues of its covariance matrix are >= 1/2.

The steering measure in this convention is

    G(A->B) = max[0, (1/2) ln( det V1 / (4 det V) )]

which for block-diagonal standard-form states reduces to
max[0, -ln 2(v33 - v13^2/v11)].  The Renyi-2 entanglement E2 has a closed
two-branch expression valid for the squeezed-thermal-state (STS) class, i.e.
standard-form matrices with v11 = v22, v33 = v44 and v13 = -v24.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, NonPhysicalState, UnsupportedForm

# Relative tolerance used to decide whether a matrix is in STS standard form.
STS_FORM_RTOL = 1e-10

# Entries that vanish in the standard form: the q and p sectors never mix.
_OFF_PATTERN = ((0, 1), (0, 3), (1, 2), (2, 3))


class SteeringClass(enum.Enum):
    """Directional classification of a two-mode state's Gaussian steerability."""

    NO_WAY = "no_way"
    ONE_WAY_A_TO_B = "one_way_a_to_b"
    ONE_WAY_B_TO_A = "one_way_b_to_a"
    TWO_WAY = "two_way"


@dataclass(frozen=True)
class TwoModeCovariance:
    """A real 4x4 covariance matrix in the (q1, p1, q2, p2) basis.

    The wrapped array is made read-only.  Construction checks shape, realness
    and finiteness only; physicality is the job of :func:`validate_cm`.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (4, 4):
            raise InvalidInput(f"covariance matrix must be 4x4, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise InvalidInput("covariance matrix has non-finite entries")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_standard_form(cls, v11, v33, v13, v22=None, v44=None, v24=None):
        """Build the sparse standard-form matrix from its distinct elements.

        Omitted p-sector elements default to the STS pattern v22 = v11,
        v44 = v33, v24 = -v13.
        """
        v22 = v11 if v22 is None else v22
        v44 = v33 if v44 is None else v44
        v24 = -v13 if v24 is None else v24
        m = np.zeros((4, 4))
        m[0, 0], m[1, 1], m[2, 2], m[3, 3] = v11, v22, v33, v44
        m[0, 2] = m[2, 0] = v13
        m[1, 3] = m[3, 1] = v24
        return cls(m)

    @classmethod
    def vacuum(cls):
        return cls(0.5 * np.eye(4))

    @classmethod
    def squeezed_thermal(cls, r, n1=0.0, n2=0.0):
        """Two thermal modes (occupations n1, n2) after a two-mode squeezer.

        Exact STS standard form, bona fide by construction:
        v11 = (n1+1/2)cosh^2 r + (n2+1/2)sinh^2 r, v13 = (n1+n2+1)cosh r sinh r.
        """
        if r < 0 or n1 < 0 or n2 < 0:
            raise InvalidInput("squeezing and occupations must be >= 0")
        ch, sh = math.cosh(r), math.sinh(r)
        v11 = (n1 + 0.5) * ch * ch + (n2 + 0.5) * sh * sh
        v33 = (n2 + 0.5) * ch * ch + (n1 + 0.5) * sh * sh
        v13 = (n1 + n2 + 1.0) * ch * sh
        return cls.from_standard_form(v11, v33, v13)

    @classmethod
    def two_mode_squeezed_vacuum(cls, r):
        """Pure two-mode squeezed vacuum: v11 = v33 = cosh(2r)/2, v13 = sinh(2r)/2."""
        return cls.squeezed_thermal(r, 0.0, 0.0)

    # -- element and block access ------------------------------------------

    @property
    def v11(self):
        return self.matrix[0, 0]

    @property
    def v22(self):
        return self.matrix[1, 1]

    @property
    def v33(self):
        return self.matrix[2, 2]

    @property
    def v44(self):
        return self.matrix[3, 3]

    @property
    def v13(self):
        return self.matrix[0, 2]

    @property
    def v24(self):
        return self.matrix[1, 3]

    @property
    def block_a(self):
        """Mode-A 2x2 block V1."""
        return self.matrix[:2, :2]

    @property
    def block_b(self):
        """Mode-B 2x2 block V2."""
        return self.matrix[2:, 2:]

    @property
    def cross(self):
        """Cross-correlation 2x2 block V3."""
        return self.matrix[:2, 2:]

    def __array__(self, dtype=None, copy=None):
        return np.array(self.matrix, dtype=dtype)


@dataclass(frozen=True)
class CmValidity:
    """Validity report of a covariance matrix."""

    symmetric: bool
    positive_definite: bool
    bona_fide: bool
    nu_minus: float
    nu_plus: float

    @property
    def ok(self):
        return self.symmetric and self.positive_definite and self.bona_fide


def _det2(b):
    return b[0, 0] * b[1, 1] - b[0, 1] * b[1, 0]


def _det4(cm: TwoModeCovariance):
    """det V, using the decoupled q/p sector product when V is standard form.

    In the standard form the q sector (rows/cols 0, 2) and the p sector
    (rows/cols 1, 3) never mix, so det V = det(q sector) * det(p sector).
    The structured product is permutation-stable, which keeps the mode-swap
    identities exact in floating point; general matrices fall back to LU.
    """
    m = cm.matrix
    if all(m[i, j] == 0.0 and m[j, i] == 0.0 for i, j in _OFF_PATTERN):
        qdet = m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0]
        pdet = m[1, 1] * m[3, 3] - m[1, 3] * m[3, 1]
        return qdet * pdet
    return float(np.linalg.det(m))


def symplectic_eigenvalues(cm: TwoModeCovariance):
    """Both symplectic eigenvalues (nu_minus, nu_plus) of a two-mode matrix.

    Uses the closed form from the symplectic invariants,
    nu^2 = (Delta -+ sqrt(Delta^2 - 4 det V))/2 with
    Delta = det V1 + det V2 + 2 det V3.  Vacuum gives nu = 1/2.
    """
    delta = _det2(cm.block_a) + _det2(cm.block_b) + 2.0 * _det2(cm.cross)
    det_v = _det4(cm)
    disc = math.sqrt(max(delta * delta - 4.0 * det_v, 0.0))
    nu_minus = math.sqrt(max((delta - disc) / 2.0, 0.0))
    nu_plus = math.sqrt(max((delta + disc) / 2.0, 0.0))
    return nu_minus, nu_plus


def validate_cm(cm: TwoModeCovariance, tol_phys=1e-9) -> CmValidity:
    """Physicality gate: symmetry, positive definiteness, bona fide flag.

    bona fide means min(nu) >= 1/2 - tol_phys in the vacuum-1/2 convention.
    """
    m = cm.matrix
    symmetric = bool(np.array_equal(m, m.T))
    eigs = np.linalg.eigvalsh(0.5 * (m + m.T))
    positive_definite = bool(np.all(eigs > 0.0))
    nu_minus, nu_plus = symplectic_eigenvalues(cm)
    bona_fide = nu_minus >= 0.5 - tol_phys
    return CmValidity(symmetric, positive_definite, bona_fide, nu_minus, nu_plus)


def swap_modes(cm: TwoModeCovariance) -> TwoModeCovariance:
    """Exchange the two modes: (q1, p1) <-> (q2, p2)."""
    idx = (2, 3, 0, 1)
    return TwoModeCovariance(cm.matrix[np.ix_(idx, idx)])


def _check_marginals(cm: TwoModeCovariance):
    m = cm.matrix
    if m[0, 0] <= 0.0 or m[1, 1] <= 0.0 or m[2, 2] <= 0.0 or m[3, 3] <= 0.0:
        raise NonPhysicalState("covariance matrix has a non-positive variance")


def steering_a_to_b(cm: TwoModeCovariance) -> float:
    """Gaussian steerability of mode B by measurements on mode A.

    max[0, (1/2) ln(det V1 / (4 det V))]; zero iff the state is not
    A->B steerable under Gaussian measurements.
    """
    _check_marginals(cm)
    det_v = _det4(cm)
    if det_v <= 0.0:
        raise NonPhysicalState("det V <= 0")
    det_a = _det2(cm.block_a)
    if det_a <= 0.0:
        raise NonPhysicalState("det V1 <= 0")
    return max(0.0, 0.5 * math.log(det_a / (4.0 * det_v)))


def steering_b_to_a(cm: TwoModeCovariance) -> float:
    """Gaussian steerability of mode A by measurements on mode B."""
    _check_marginals(cm)
    det_v = _det4(cm)
    if det_v <= 0.0:
        raise NonPhysicalState("det V <= 0")
    det_b = _det2(cm.block_b)
    if det_b <= 0.0:
        raise NonPhysicalState("det V2 <= 0")
    return max(0.0, 0.5 * math.log(det_b / (4.0 * det_v)))


def steering_asymmetry(cm: TwoModeCovariance) -> float:
    """|G(A->B) - G(B->A)|.  Always below ln 2 for standard-form states."""
    return abs(steering_a_to_b(cm) - steering_b_to_a(cm))


def _require_sts(cm: TwoModeCovariance):
    m = cm.matrix
    scale = max(m[0, 0], m[1, 1], m[2, 2], m[3, 3])
    tol = STS_FORM_RTOL * scale
    dev = max(
        abs(m[0, 0] - m[1, 1]),
        abs(m[2, 2] - m[3, 3]),
        abs(m[0, 2] + m[1, 3]),
        max(abs(m[i, j]) for i, j in _OFF_PATTERN),
        max(abs(m[j, i]) for i, j in _OFF_PATTERN),
        abs(m[0, 2] - m[2, 0]),
        abs(m[1, 3] - m[3, 1]),
    )
    if dev > tol:
        raise UnsupportedForm(
            f"matrix deviates from STS standard form by {dev:.3e} (tol {tol:.3e})"
        )


def renyi2_entanglement(cm: TwoModeCovariance) -> float:
    """Gaussian Renyi-2 entanglement E2 of a squeezed thermal state.

    With s = (v11+v33)/2, d = (v11-v33)/2 and g = v11*v33 - v13^2:

    * separable branch, 4g >= 4s - 1: E2 = 0;
    * entangled branch, 4|d| + 1 <= 4g < 4s - 1:
      E2 = (1/2) ln h with
      h = [((4g+1)s - sqrt([(4g-1)^2 - 16 d^2][s^2 - d^2 - g])) / (4(d^2+g))]^2.

    Inputs outside the STS standard form raise UnsupportedForm; the region
    4g < 4|d| + 1 cannot occur for bona fide STS states and raises
    NonPhysicalState rather than extrapolating.
    """
    _require_sts(cm)
    v11, v33, v13 = cm.v11, cm.v33, cm.v13
    s = 0.5 * (v11 + v33)
    d = 0.5 * (v11 - v33)
    g = v11 * v33 - v13 * v13
    if 4.0 * g >= 4.0 * s - 1.0:
        return 0.0
    # g carries cancellation error of order eps * scale^2, so pure states that
    # sit exactly on the 4g = 4|d| + 1 boundary may land an ulp below it;
    # allow that sliver and reject only genuine gap-region inputs.
    gap_tol = 1e-12 * max(1.0, s * s)
    if 4.0 * g < 4.0 * abs(d) + 1.0 - gap_tol:
        raise NonPhysicalState(
            f"4g = {4 * g:.6g} < 4|d| + 1 = {4 * abs(d) + 1:.6g}: not a bona fide STS"
        )
    # Both factors are nonnegative in this branch ((4g-1)^2 >= 16d^2 and
    # s^2 - d^2 - g = v13^2); the clamps only absorb rounding at the edges.
    rad = max((4.0 * g - 1.0) ** 2 - 16.0 * d * d, 0.0) * max(s * s - d * d - g, 0.0)
    ratio = ((4.0 * g + 1.0) * s - math.sqrt(rad)) / (4.0 * (d * d + g))
    return max(0.0, math.log(ratio))


def classify_steering(cm: TwoModeCovariance, epsilon=1e-9) -> SteeringClass:
    """Classify the steering direction against a positivity tolerance."""
    if epsilon <= 0.0:
        raise InvalidInput("epsilon must be positive")
    g_ab = steering_a_to_b(cm)
    g_ba = steering_b_to_a(cm)
    if g_ab > epsilon and g_ba > epsilon:
        return SteeringClass.TWO_WAY
    if g_ab > epsilon:
        return SteeringClass.ONE_WAY_A_TO_B
    if g_ba > epsilon:
        return SteeringClass.ONE_WAY_B_TO_A
    return SteeringClass.NO_WAY
