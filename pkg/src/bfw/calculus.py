"""Lie-analytic layer on SU(2) and tori.

Casimir data, smoothness embeddings, the unitary one-parameter groups
e^{itu} with their weighted-norm growth curves, the separating-function
construction behind regularity, bounded point derivations, synthesis-degree
arithmetic, and the coefficient families realizing u(st^{-1}) as a projective
tensor.

Normalization: on su(2) the inner product is minus the Killing form with
kappa(X, Y) = 4 tr(XY); the orthonormal basis is i sigma_j / (2 sqrt(2)) and
the quadratic Casimir acts on the spin-n irrep by n(n+2)/8.  On the torus the
standard basis of the angle coordinates is used, giving |mu|^2.  Eigenvalues
are always computed from the matrices, never from those closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .duals import (
    GroupDual,
    Su2Dual,
    TorusDual,
    su2_algebra_rep,
    su2_class_angle,
)
from .errors import FamilyMismatchError, InsufficientCutoffError
from .fields import (
    OperatorField,
    coefficient_field,
    evaluate,
    involution,
    l2_inner,
    norm_a_omega,
    norm_l2_omega,
    pair,
)
from .labels import IrrepLabel, Su2Spin
from .weights import Weight, make_weight

__all__ = [
    "CasimirData",
    "casimir_eigenvalue",
    "series_tail",
    "SmoothingKernel",
    "apply_one_minus_laplacian",
    "smooth_embedding_check",
    "exp_itu",
    "GrowthCurve",
    "growth_curve",
    "SplineBump",
    "separating_function",
    "point_derivation",
    "derivation_bound_scan",
    "algebra_rep",
    "synthesis_degree",
    "NuDecomposition",
    "nu_decompose",
    "shift_operator",
    "pairing_identity_check",
]


# ---------------------------------------------------------------------------
# Casimir data
# ---------------------------------------------------------------------------

_SIGMA = (
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)


def _lie_basis(dual: GroupDual):
    if isinstance(dual, Su2Dual):
        return tuple(1.0j * s / (2.0 * math.sqrt(2.0)) for s in _SIGMA)
    if isinstance(dual, TorusDual):
        return tuple(np.eye(dual.n)[j] for j in range(dual.n))
    raise FamilyMismatchError(f"no Lie data for {dual!r}")


def algebra_rep(dual: GroupDual, a: IrrepLabel, X) -> np.ndarray:
    """Derived representation of the algebra element X on the irrep a."""
    if isinstance(dual, Su2Dual):
        return su2_algebra_rep(a.n, X)
    if isinstance(dual, TorusDual):
        return np.array([[1.0j * float(np.dot(a.mu, X))]])
    raise FamilyMismatchError(f"no Lie data for {dual!r}")


class CasimirData:
    """Orthonormal algebra basis with the induced Laplacian eigenvalues."""

    def __init__(self, dual: GroupDual):
        self.dual = dual
        self.basis = _lie_basis(dual)
        self._eig: dict[IrrepLabel, float] = {}

    def _square_sum(self, a: IrrepLabel) -> np.ndarray:
        d = self.dual.dim(a)
        M = np.zeros((d, d), dtype=complex)
        for X in self.basis:
            R = algebra_rep(self.dual, a, X)
            M -= R @ R
        return M

    def eigenvalue(self, a: IrrepLabel) -> float:
        v = self._eig.get(a)
        if v is None:
            M = self._square_sum(a)
            v = float(np.mean(np.real(np.diag(M))))
            self._eig[a] = v
        return v

    def off_scalar_residual(self, a: IrrepLabel) -> float:
        M = self._square_sum(a)
        return float(np.max(np.abs(M - self.eigenvalue(a) * np.eye(M.shape[0]))))


def casimir_eigenvalue(dual: GroupDual, a: IrrepLabel) -> float:
    return CasimirData(dual).eigenvalue(a)


def series_tail(dual: GroupDual, s: float, n_max: int):
    """Partial sums of sum d^2 (1 + wordlength^2)^(-s) by word-length shells.

    Returns rows (n, partial_sum, increment); convergent for s above half the
    group dimension.
    """
    rows = []
    total = 0.0
    prev_ball: set = set()
    for n in range(n_max + 1):
        shell = [a for a in dual.ball(n) if a not in prev_ball]
        prev_ball.update(shell)
        inc = sum(
            dual.dim(a) ** 2 * (1.0 + dual.word_length(a) ** 2) ** (-s) for a in shell
        )
        total += inc
        rows.append((n, total, inc))
    return rows


# ---------------------------------------------------------------------------
# smoothing kernels and the embedding check
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SmoothingKernel:
    """Truncated field with coefficient (1 + c(pi))^(-m) I per label."""

    exponent: float
    cutoff: int
    field: OperatorField
    tail_estimate: float  # crude continuation of the squared-weighted tail


def smoothing_kernel(dual: GroupDual, m: float, cutoff: int, w2: Weight | None = None) -> SmoothingKernel:
    cas = CasimirData(dual)
    terms = {}
    for a in dual.ball(cutoff):
        terms[a] = np.eye(dual.dim(a)) / (1.0 + cas.eigenvalue(a)) ** m
    fld = OperatorField.from_terms(dual, terms)
    tail = 0.0
    for a in dual.ball(4 * cutoff):
        if dual.word_length(a) <= cutoff:
            continue
        ww = w2(a) if w2 is not None else 1.0
        tail += dual.dim(a) ** 2 * ww / (1.0 + cas.eigenvalue(a)) ** (2 * m)
    return SmoothingKernel(m, cutoff, fld, tail)


def apply_one_minus_laplacian(u: OperatorField, n: float) -> OperatorField:
    """(1 - Laplacian)^n acting diagonally by (1 + c(pi))^n."""
    cas = CasimirData(u.dual)
    out = {a: (1.0 + cas.eigenvalue(a)) ** n * M for a, M in u.coeffs.items()}
    return OperatorField.from_terms(u.dual, out)


@dataclass(frozen=True)
class EmbeddingReport:
    lhs: float
    rhs: float
    holds: bool
    precondition_ok: bool  # n > d/4 + alpha/2
    kernel_l2w2_sq: float
    kernel_finite: bool  # full series converges iff 2n - alpha > d/2


def smooth_embedding_check(
    g: OperatorField, n: float, alpha: float, cutoff: int | None = None
) -> EmbeddingReport:
    """Check ||g||_{A_{w_a}} <= ||E_n||_{2, w_a^2} ||(1-Lap)^n g||_2 numerically.

    The kernel is truncated at ``cutoff`` (at least the support radius of g;
    the identity g = E_n * (1-Lap)^n g is labelwise, so a covering truncation
    keeps the bound valid).
    """
    dual = g.dual
    d = dual.lie_dim()
    w_a = make_weight(dual, {"kind": "poly", "alpha": alpha})
    w_sq = make_weight(dual, {"kind": "pow", "base": {"kind": "poly", "alpha": alpha}, "alpha": 2.0})
    radius = max((dual.word_length(a) for a in g.coeffs), default=0)
    cutoff = max(cutoff or 0, radius)
    kern = smoothing_kernel(dual, n, cutoff, w_sq)
    lhs = norm_a_omega(g, w_a)
    kern_norm = norm_l2_omega(kern.field, w_sq)
    rhs = kern_norm * norm_l2_omega(apply_one_minus_laplacian(g, n), make_weight(dual, "const:1"))
    return EmbeddingReport(
        lhs=lhs,
        rhs=rhs,
        holds=lhs <= rhs * (1.0 + 1e-9),
        precondition_ok=n > d / 4.0 + alpha / 2.0,
        kernel_l2w2_sq=kern_norm**2,
        kernel_finite=2.0 * n - alpha > d / 2.0,
    )


# ---------------------------------------------------------------------------
# e^{itu}
# ---------------------------------------------------------------------------

def _self_adjoint_residual(u: OperatorField) -> float:
    diff = involution(u) - u
    if diff.is_zero():
        return 0.0
    return max(float(np.max(np.abs(M))) for M in diff.coeffs.values())


def _su2_central_parts(u: OperatorField):
    """Trace weights b_n with u = sum b_n Tr pi_n(.), or None if not central."""
    out = {}
    for a, M in u.coeffs.items():
        d = a.n + 1
        b = complex(np.trace(M)) / d
        if np.max(np.abs(M - b * np.eye(d))) > 1e-10:
            return None
        out[a.n] = b * d  # coefficient field is (b d) I/d = trace weight b d
    return out


def exp_itu(
    dual: GroupDual,
    u: OperatorField,
    t: float,
    cutoff: int,
    tail_tol: float = 1e-6,
    grid_pad: int | None = None,
) -> tuple[OperatorField, float]:
    """Coefficients of e^{itu} up to the cutoff, with the Parseval defect.

    ``u`` must be self-adjoint (checked).  The SU(2) path requires u central
    and uses the one-dimensional class-angle quadrature with the square-sine
    class weight; tori go through the product grid.  The defect
    |1 - sum d ||coef||_2^2| measures the mass outside the cutoff; above
    ``tail_tol`` an insufficient-cutoff error carries it.
    """
    res = _self_adjoint_residual(u)
    if res > 1e-10:
        raise ValueError(f"u is not self-adjoint (residual {res:.2e})")
    if isinstance(dual, TorusDual):
        return _exp_itu_torus(dual, u, t, cutoff, tail_tol, grid_pad)
    if isinstance(dual, Su2Dual):
        return _exp_itu_su2(dual, u, t, cutoff, tail_tol, grid_pad)
    raise FamilyMismatchError(f"e^{{itu}} not implemented on {dual!r}")


def _exp_itu_torus(dual, u, t, cutoff, tail_tol, grid_pad):
    pad = grid_pad if grid_pad is not None else max(32, cutoff)
    m = 2 * (cutoff + pad) + 1
    axes = [2.0 * np.pi * np.arange(m) / m] * dual.n
    mesh = np.meshgrid(*axes, indexing="ij")
    vals = np.zeros(mesh[0].shape, dtype=complex)
    for a, M in u.coeffs.items():
        phase = sum(mu_j * th for mu_j, th in zip(a.mu, mesh))
        vals += M[0, 0] * np.exp(1j * phase)
    g = np.exp(1j * t * vals)
    spec = np.fft.fftn(g) / g.size
    terms = {}
    mass = 0.0
    for a in dual.ball(cutoff):
        idx = tuple(mu_j % m for mu_j in a.mu)
        c = spec[idx]
        terms[a] = np.array([[c]])
        mass += abs(c) ** 2
    defect = abs(1.0 - mass)
    if defect > tail_tol:
        raise InsufficientCutoffError(defect, cutoff)
    return OperatorField.from_terms(dual, terms), defect


def _exp_itu_su2(dual, u, t, cutoff, tail_tol, grid_pad):
    parts = _su2_central_parts(u)
    if parts is None:
        raise ValueError("the SU(2) path needs a central u (a series in characters)")
    pad = grid_pad if grid_pad is not None else max(32, cutoff // 2)
    m = 2 * (cutoff + pad) + 2
    theta = 2.0 * np.pi * (np.arange(m) + 0.5) / m
    vals = np.zeros(m, dtype=complex)
    sin_t = np.sin(theta)
    for n, b in parts.items():
        vals += b * (np.sin((n + 1) * theta) / sin_t)
    g = np.exp(1j * t * vals)
    ns = np.arange(cutoff + 1)
    kernel = np.sin(np.outer(ns + 1, theta)) * sin_t  # (cutoff+1, m)
    b_t = (2.0 / m) * kernel @ g
    terms = {
        Su2Spin(int(n)): b_t[n] * np.eye(n + 1) / (n + 1)
        for n in ns
        if abs(b_t[n]) > 1e-300
    }
    defect = abs(1.0 - float(np.sum(np.abs(b_t) ** 2)))
    if defect > tail_tol:
        raise InsufficientCutoffError(defect, cutoff)
    return OperatorField.from_terms(dual, terms), defect


def exp_itu_auto(
    dual: GroupDual,
    u: OperatorField,
    t: float,
    cutoff_cap: int,
    tail_tol: float = 1e-6,
    rate: float = 1.2,
    margin: int = 24,
) -> tuple[OperatorField, float, int]:
    """Adaptive cutoff: grows with |t| (ceil(rate * |t| * sup|u|) + margin),
    doubling on defect failures up to the cap."""
    sup = _sup_abs(dual, u)
    n = min(cutoff_cap, int(math.ceil(rate * abs(t) * sup)) + margin)
    while True:
        try:
            fld, defect = exp_itu(dual, u, t, n, tail_tol)
            return fld, defect, n
        except InsufficientCutoffError:
            if n >= cutoff_cap:
                raise
            n = min(cutoff_cap, 2 * n)


def _sup_abs(dual, u) -> float:
    if isinstance(dual, TorusDual):
        grid = [2.0 * np.pi * np.arange(256) / 256] * dual.n
        mesh = np.meshgrid(*grid, indexing="ij")
        vals = np.zeros(mesh[0].shape, dtype=complex)
        for a, M in u.coeffs.items():
            vals += M[0, 0] * np.exp(1j * sum(m_j * th for m_j, th in zip(a.mu, mesh)))
        return float(np.max(np.abs(vals)))
    parts = _su2_central_parts(u)
    if parts is None:
        raise ValueError("sup estimate needs a central u on SU(2)")
    theta = np.pi * (np.arange(512) + 0.5) / 512
    vals = np.zeros(512, dtype=complex)
    for n, b in parts.items():
        vals += b * np.sin((n + 1) * theta) / np.sin(theta)
    return float(np.max(np.abs(vals)))


# ---------------------------------------------------------------------------
# growth curves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GrowthCurve:
    rows: tuple[tuple[float, float, float, int, float], ...]  # t, norm, bound, cutoff, tail
    slope: float
    bound_exponent: float  # d/2 + alpha
    passed: bool

    def csv(self) -> str:
        lines = ["t,norm,bound,cutoff,tail"]
        for t, norm, bound, cutoff, tail in self.rows:
            lines.append(f"{t!r},{norm!r},{bound!r},{cutoff},{tail!r}")
        return "\n".join(lines) + "\n"


def _poly_alpha(w: Weight) -> float:
    desc = w.descriptor
    if not desc.startswith("poly:alpha="):
        raise ValueError("growth curves are calibrated for poly weights")
    return float(desc.split("=", 1)[1])


def growth_curve(
    dual: GroupDual,
    u: OperatorField,
    w: Weight,
    t_list,
    cutoff_cap: int = 120,
    tail_tol: float = 1e-6,
    slope_slack: float = 0.5,
) -> GrowthCurve:
    """Weighted norms of e^{itu} with the polynomial reference bound.

    The log-log slope is fitted over the largest decade of t; the pass flag
    compares it against (group dimension)/2 + alpha + slack.
    """
    alpha = _poly_alpha(w)
    exponent = dual.lie_dim() / 2.0 + alpha
    rows = []
    for t in t_list:
        fld, defect, used = exp_itu_auto(dual, u, float(t), cutoff_cap, tail_tol)
        rows.append((float(t), norm_a_omega(fld, w), (1.0 + abs(t)) ** exponent, used, defect))
    ts = np.array([r[0] for r in rows])
    norms = np.array([r[1] for r in rows])
    sel = ts >= ts.max() / 10.0
    if np.count_nonzero(sel) >= 2:
        slope = float(np.polyfit(np.log1p(ts[sel]), np.log(norms[sel]), 1)[0])
    else:
        slope = float("nan")
    passed = bool(slope <= exponent + slope_slack)
    return GrowthCurve(tuple(rows), slope, exponent, passed)


# ---------------------------------------------------------------------------
# separating functions
# ---------------------------------------------------------------------------

class SplineBump:
    """Piecewise-polynomial bump, exactly C^k: 0 on [-0.2, 0.2] and outside
    [0.2, 1.8], 1 on [0.8, 1.2], glued with order-k smoothstep ramps."""

    def __init__(self, k: int, rise=(0.2, 0.8), fall=(1.2, 1.8)):
        self.k = int(k)
        self.rise = rise
        self.fall = fall

    def _step(self, x):
        # regularized incomplete-beta smoothstep of order k on [0, 1]
        x = np.clip(x, 0.0, 1.0)
        k = self.k
        j = np.arange(k + 1)
        coef = (
            np.array([math.comb(k + j_i, j_i) * math.comb(2 * k + 1, k - j_i) for j_i in j])
            * (-1.0) ** j
        )
        return x ** (k + 1) * np.polyval(coef[::-1], x)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        r0, r1 = self.rise
        f0, f1 = self.fall
        up = self._step((x - r0) / (r1 - r0))
        down = self._step((f1 - x) / (f1 - f0))
        return np.where(x <= r0, 0.0, np.where(x >= f1, 0.0, np.minimum(up, down)))

    def fourier_series(self, period: float = 4.0, n_modes: int = 256, samples: int = 1 << 16):
        """Coefficients c_m of the periodization: phi(x) = sum c_m e^{2 pi i m x / period}."""
        xs = -period / 2.0 + period * np.arange(samples) / samples
        spec = np.fft.fft(self(xs)) / samples
        ms = np.arange(-n_modes, n_modes + 1)
        # grid starts at -period/2: undo the translation phase
        coefs = spec[ms % samples] * np.exp(2.0j * np.pi * ms * (-0.5))
        return ms, coefs


@dataclass(frozen=True)
class SeparatingReport:
    field: OperatorField
    series_tail: float  # l1 mass of the dropped bump modes
    achieved_sup_error: float  # max |v - phi(u0)| on the sample grid


def central_values(dual: GroupDual, u: OperatorField, angles: np.ndarray) -> np.ndarray:
    """Values of a central SU(2) field at points with the given class angles."""
    parts = _su2_central_parts(u)
    if parts is None:
        raise ValueError("central evaluation needs scalar coefficients")
    angles = np.asarray(angles, dtype=float)
    vals = np.zeros(angles.shape, dtype=complex)
    sin_t = np.sin(angles)
    for n, b in parts.items():
        if n == 0:
            vals += b
        else:
            vals += b * np.sin((n + 1) * angles) / sin_t
    return vals


def separating_function(
    dual: GroupDual,
    u0: OperatorField,
    smoothness: int | None = None,
    alpha: float = 1.0,
    n_modes: int = 160,
    cutoff_cap: int = 512,
    sample_points: int = 1000,
    rng=None,
) -> SeparatingReport:
    """Build v with v ~ 0 where u0 ~ 0 and v ~ 1 where u0 ~ 1.

    v = sum_m c_m e^{2 pi i (m/P) u0} over the Fourier series of a C^k bump
    periodized with period P = 4; since u0 takes values well inside a period,
    the periodization is exact and v(x) = bump(u0(x)) up to the dropped-mode
    tail.  Each exponential is computed through :func:`exp_itu`.
    """
    if smoothness is None:
        smoothness = math.ceil(dual.lie_dim() / 2.0 + alpha + 2.0)
    bump = SplineBump(smoothness)
    period = 4.0
    ms, coefs = bump.fourier_series(period=period, n_modes=n_modes)
    tail = _bump_tail_estimate(bump, period, n_modes)
    acc = None
    for mm, c in zip(ms, coefs):
        if abs(c) < 1e-14:
            continue
        t = 2.0 * np.pi * mm / period
        fld, _, _ = exp_itu_auto(dual, u0, t, cutoff_cap)
        piece = c * fld
        acc = piece if acc is None else acc + piece
    rng = rng or np.random.default_rng(0)
    err = 0.0
    if sample_points <= 0:
        pass
    elif isinstance(dual, Su2Dual):
        # central fields only depend on the class angle; evaluate all sample
        # points through it (identical to the matrix-trace evaluation)
        angles = np.array(
            [su2_class_angle(dual.random_point(rng)) for _ in range(sample_points)]
        )
        v_vals = central_values(dual, acc, angles)
        u_vals = central_values(dual, u0, angles)
        err = float(np.max(np.abs(v_vals - bump(np.real(u_vals)))))
    else:
        for _ in range(sample_points):
            s = dual.random_point(rng)
            v_val = evaluate(acc, s)
            u_val = evaluate(u0, s)
            err = max(err, abs(v_val - complex(bump(float(np.real(u_val))))))
    return SeparatingReport(acc, tail, err)


def _bump_tail_estimate(bump, period, n_modes):
    ms, coefs = bump.fourier_series(period=period, n_modes=4 * n_modes)
    outside = np.abs(ms) > n_modes
    return float(np.sum(np.abs(coefs[outside])))


# ---------------------------------------------------------------------------
# point derivations
# ---------------------------------------------------------------------------

def point_derivation(dual: GroupDual, X, u: OperatorField) -> complex:
    """<X, u> = sum d Tr(u^(pi) dpi(X)): the derivative of u at the identity."""
    total = 0.0 + 0.0j
    for a, M in u.coeffs.items():
        total += dual.dim(a) * complex(np.trace(M @ algebra_rep(dual, a, X)))
    return total


def derivation_bound_scan(dual: GroupDual, X, w: Weight, n_max: int):
    """Rows (n, sup over labels of word length <= n of ||dpi(X)|| / w(pi))."""
    rows = []
    best = 0.0
    prev: set = set()
    for n in range(1, n_max + 1):
        for a in dual.ball(n):
            if a in prev:
                continue
            prev.add(a)
            best = max(best, _algebra_norm(dual, a, X) / w(a))
        rows.append((n, best))
    return rows


def _algebra_norm(dual, a, X) -> float:
    if isinstance(dual, Su2Dual):
        # dpi(X) is conjugate to dpi of the diagonalization of X, whose norm
        # is n times the top eigenvalue modulus; exact and O(1)
        ev = np.linalg.eigvals(np.asarray(X, dtype=complex))
        return a.n * float(np.max(np.abs(ev)))
    return float(np.linalg.norm(algebra_rep(dual, a, X), 2))


# ---------------------------------------------------------------------------
# synthesis degree
# ---------------------------------------------------------------------------

def synthesis_degree(m: int, alpha: float) -> int:
    """Nilpotency bound floor(m/2 + alpha) + 1 for weak synthesis on an
    m-dimensional submanifold under a polynomial weight of exponent alpha."""
    if m < 0 or alpha <= 0:
        raise ValueError("need m >= 0 and alpha > 0")
    return int(math.floor(m / 2.0 + alpha)) + 1


# ---------------------------------------------------------------------------
# the shifted-argument tensor decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NuDecomposition:
    """Families phi, psi with u(s t^{-1}) = sum_ij phi_ij(s) psi_ij(t).

    Per label, with the polar decomposition u^ = V |u^| and A = |u^|^(1/2):

        phi_ij(s) = sqrt(d) (A pi(s) e_i, e_j),
        psi_ij(t) = sqrt(d) (e_j, A V* pi(t) e_i);

    both families are square-summable in the weighted L^2 norm with total
    exactly the weighted algebra norm of u.
    """

    u: OperatorField
    w: Weight
    parts: tuple[tuple[IrrepLabel, np.ndarray, np.ndarray], ...]  # (label, A, V)

    def phi_norm_sq_sum(self) -> float:
        total = 0.0
        for a, A, _ in self.parts:
            d = self.u.dual.dim(a)
            # ||phi_ij||_{2,w}^2 = w(a) (A^2 e_j, e_j), summed over i adds d
            total += d * self.w(a) * float(np.real(np.trace(A @ A)))
        return total

    def psi_norm_sq_sum(self) -> float:
        total = 0.0
        for a, A, V in self.parts:
            d = self.u.dual.dim(a)
            abar = self.u.dual.conjugate(a)
            B = V @ A
            total += d * self.w(abar) * float(np.real(np.trace(B.conj().T @ B)))
        return total

    def reconstruct(self, s, t) -> complex:
        """sum_ij phi_ij(s) psi_ij(t), evaluated from the explicit families."""
        dual = self.u.dual
        total = 0.0 + 0.0j
        for a, A, V in self.parts:
            d = dual.dim(a)
            Ps = A @ dual.rep(a, s)        # phi matrix: phi_ij = sqrt(d) (Ps)_{j i}
            Pt = A @ V.conj().T @ dual.rep(a, t)  # psi_ij = sqrt(d) conj((Pt)_{j i})
            total += d * complex(np.sum(Ps.T * Pt.T.conj()))
        return total

    def phi_fields(self):
        """The phi family as honest operator fields (small supports only):
        phi_ij is the matrix coefficient (pi(s) e_i, A e_j) times sqrt(d)."""
        dual = self.u.dual
        for a, A, _ in self.parts:
            d = dual.dim(a)
            for i in range(d):
                for j in range(d):
                    yield (a, i, j), coefficient_field(dual, a, A[:, j], np.eye(d)[i]) * math.sqrt(d)

    def psi_fields(self):
        """The psi family as fields: psi_ij is the conjugate of the matrix
        coefficient (pi(t) e_i, V A e_j)."""
        dual = self.u.dual
        for a, A, V in self.parts:
            d = dual.dim(a)
            VA = V @ A
            for i in range(d):
                for j in range(d):
                    base = coefficient_field(dual, a, VA[:, j], np.eye(d)[i]) * math.sqrt(d)
                    yield (a, i, j), involution(base)


def nu_decompose(u: OperatorField, w: Weight) -> NuDecomposition:
    parts = []
    for a, M in u.coeffs.items():
        U, sv, Vh = np.linalg.svd(M)
        A = (Vh.conj().T * np.sqrt(sv)) @ Vh  # |M|^(1/2)
        V = U @ Vh
        parts.append((a, A, V))
    return NuDecomposition(u, w, tuple(parts))


def shift_operator(T: OperatorField, w: Weight, f: OperatorField) -> OperatorField:
    """The bounded operator induced by a functional T on the weighted L^2
    space: coefficientwise f^(pi) -> f^(pi) pi(T) / w(pi)."""
    out = {}
    for a, M in f.coeffs.items():
        Ta = T.coeffs.get(a)
        if Ta is not None:
            out[a] = (M @ Ta) / w(a)
    return OperatorField.from_terms(f.dual, out)


def pairing_identity_check(T: OperatorField, u: OperatorField, w: Weight) -> float:
    """|<T, u> - <S(T), Nu>| with both sides computed independently.

    The left side is the plain duality pairing.  The right side pairs the
    induced operator with the tensor decomposition of the shifted function:
    S(T) acts on the first-variable family phi and is paired against the
    conjugate of the second-variable family psi in the weighted L^2 inner
    product, sum_ij (S(T) phi_ij, conj(psi_ij)).
    """
    nu = nu_decompose(u, w)
    lhs = pair(T, u)
    rhs = 0.0 + 0.0j
    psis = dict(nu.psi_fields())
    for key, phi in nu.phi_fields():
        rhs += l2_inner(shift_operator(T, w, phi), involution(psis[key]), w)
    return abs(lhs - rhs)
