"""Finitely supported operator fields and the weighted-algebra operations.

An :class:`OperatorField` assigns to finitely many labels a complex d x d
matrix.  One object serves three roles: an element of the weighted Fourier
algebra, a vector of the weighted L^2 space, and (via the sup-type norm) a
continuous functional.

Coefficient convention
----------------------
For a matrix coefficient u(s) = (pi(s) eta, xi) the transform is

    u^(pi) = eta xi* / d_pi,

so that the duality pairing <u, T> = sum_pi d_pi Tr(u^(pi) T_pi) gives
(T_pi eta, xi), and evaluation at a group point s is
sum_pi d_pi Tr(u^(pi) pi(s)).  Note the 1/d factor: some harmonic-analysis
texts normalize the transform differently.

Convolution is coefficientwise in the order (f * g)^(pi) = g^(pi) f^(pi),
which makes :func:`factorize` followed by :func:`convolve` reproduce the
input exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .duals import GroupDual
from .errors import FamilyMismatchError
from .labels import IrrepLabel, format_label, label_key
from .weights import Weight

__all__ = [
    "OperatorField",
    "zero_field",
    "one_field",
    "character_field",
    "coefficient_field",
    "norm_a_omega",
    "norm_l2_omega",
    "dual_norm",
    "dual_norm_report",
    "DualNormResult",
    "multiply",
    "evaluate",
    "pair",
    "translate",
    "involution",
    "factorize",
    "convolve",
    "scale_diag",
    "l2_inner",
    "PRUNE_TOL",
    "SVD_RANK_TOL",
]

PRUNE_TOL = 1e-15  # matrices with max |entry| below this are dropped
SVD_RANK_TOL = 1e-14  # relative singular-value cutoff in the product


@dataclass(frozen=True)
class OperatorField:
    """Immutable finitely supported map label -> complex d x d matrix."""

    dual: GroupDual
    coeffs: dict  # treated as frozen after construction

    @staticmethod
    def from_terms(dual: GroupDual, terms: dict) -> "OperatorField":
        clean = {}
        for a, M in terms.items():
            dual._check(a)
            M = np.asarray(M, dtype=complex)
            d = dual.dim(a)
            if M.shape != (d, d):
                raise ValueError(
                    f"coefficient at {format_label(a)} has shape {M.shape}, expected {(d, d)}"
                )
            if np.max(np.abs(M)) > PRUNE_TOL:
                M = M.copy()
                M.flags.writeable = False
                clean[a] = M
        return OperatorField(dual, clean)

    @property
    def support(self) -> tuple[IrrepLabel, ...]:
        return tuple(sorted(self.coeffs, key=label_key))

    def __getitem__(self, a: IrrepLabel) -> np.ndarray:
        d = self.dual.dim(a)
        return self.coeffs.get(a, np.zeros((d, d), dtype=complex))

    def __add__(self, other):
        self._same_dual(other)
        out = {a: M.copy() for a, M in self.coeffs.items()}
        for a, M in other.coeffs.items():
            out[a] = out.get(a, 0) + M
        return OperatorField.from_terms(self.dual, out)

    def __sub__(self, other):
        return self + (-1.0) * other

    def __mul__(self, c):
        return OperatorField.from_terms(self.dual, {a: c * M for a, M in self.coeffs.items()})

    __rmul__ = __mul__

    def _same_dual(self, other):
        if self.dual != other.dual:
            raise FamilyMismatchError(f"fields live on {self.dual!r} and {other.dual!r}")

    def is_zero(self) -> bool:
        return not self.coeffs


def zero_field(dual: GroupDual) -> OperatorField:
    return OperatorField.from_terms(dual, {})


def one_field(dual: GroupDual) -> OperatorField:
    """The constant function 1."""
    return OperatorField.from_terms(dual, {dual.trivial: np.ones((1, 1))})


def character_field(dual: GroupDual, a: IrrepLabel) -> OperatorField:
    """The ordinary character Tr pi_a(.), i.e. coefficient I/d at a."""
    d = dual.dim(a)
    return OperatorField.from_terms(dual, {a: np.eye(d) / d})


def coefficient_field(dual: GroupDual, a: IrrepLabel, xi, eta) -> OperatorField:
    """The matrix coefficient s -> (pi_a(s) eta, xi)."""
    xi = np.asarray(xi, dtype=complex)
    eta = np.asarray(eta, dtype=complex)
    return OperatorField.from_terms(dual, {a: np.outer(eta, xi.conj()) / dual.dim(a)})


# ---------------------------------------------------------------------------
# norms
# ---------------------------------------------------------------------------

def norm_a_omega(u: OperatorField, w: Weight) -> float:
    """Weighted trace-norm sum: sum over the support of ||u^(pi)||_1 d_pi w(pi)."""
    total = 0.0
    for a, M in u.coeffs.items():
        total += float(np.sum(np.linalg.svd(M, compute_uv=False))) * u.dual.dim(a) * w(a)
    return total


def norm_l2_omega(f: OperatorField, w: Weight) -> float:
    total = 0.0
    for a, M in f.coeffs.items():
        total += float(np.sum(np.abs(M) ** 2)) * f.dual.dim(a) * w(a)
    return float(np.sqrt(total))


def l2_inner(x: OperatorField, y: OperatorField, w: Weight) -> complex:
    """Weighted L^2 inner product (x, y) = sum d w Tr(y^(pi)* x^(pi))."""
    x._same_dual(y)
    total = 0.0 + 0.0j
    for a in set(x.coeffs) & set(y.coeffs):
        total += x.dual.dim(a) * w(a) * complex(np.trace(y.coeffs[a].conj().T @ x.coeffs[a]))
    return total


class DualNormResult(NamedTuple):
    value: float
    cutoff: int | None  # None when the sup ran over a finite support exactly
    exact: bool


def dual_norm_report(T, w: Weight, cutoff: int | None = None,
                     dual: GroupDual | None = None) -> DualNormResult:
    """Sup of operator norm over weight, with the truncation that produced it.

    For an :class:`OperatorField` the sup runs over its (finite) support and
    is exact.  For a group or spectrum point, pass ``dual`` and ``cutoff``;
    the scan covers labels of word length <= cutoff.
    """
    if isinstance(T, OperatorField):
        if T.is_zero():
            return DualNormResult(0.0, None, True)
        val = max(float(np.linalg.norm(M, 2)) / w(a) for a, M in T.coeffs.items())
        return DualNormResult(val, None, True)
    if dual is None or cutoff is None:
        raise ValueError("points need dual= and cutoff=")
    from .spectrum import rep_at  # late import; spectrum builds on fields

    best = 0.0
    for a in dual.ball(cutoff):
        best = max(best, float(np.linalg.norm(rep_at(dual, a, T), 2)) / w(a))
    return DualNormResult(best, cutoff, False)


def dual_norm(T, w: Weight, cutoff: int | None = None, dual: GroupDual | None = None) -> float:
    return dual_norm_report(T, w, cutoff, dual).value


# ---------------------------------------------------------------------------
# product
# ---------------------------------------------------------------------------

def _rank_one_parts(dual, a, M):
    """Vectors (eta_k, xi_k) with M = sum eta_k xi_k* / d, small ranks pruned."""
    U, s, Vh = np.linalg.svd(M)
    keep = s > SVD_RANK_TOL * s[0] if s.size and s[0] > 0 else np.zeros_like(s, bool)
    d = dual.dim(a)
    return (d * s[keep]) * U[:, keep], Vh[keep].conj().T  # columns eta_k, xi_k


def multiply(u: OperatorField, v: OperatorField) -> OperatorField:
    """Pointwise product of the represented functions.

    Rank-one pieces of each coefficient are routed through the fusion
    intertwiners: a pair (eta, xi) x (eta', xi') contributes
    (V*(eta (x) eta'))(V*(xi (x) xi'))* / d_sigma at each component sigma.
    """
    u._same_dual(v)
    dual = u.dual
    acc: dict = {}
    for a, Ma in u.coeffs.items():
        Ea, Xa = _rank_one_parts(dual, a, Ma)
        if Ea.shape[1] == 0:
            continue
        for b, Mb in v.coeffs.items():
            Eb, Xb = _rank_one_parts(dual, b, Mb)
            if Eb.shape[1] == 0:
                continue
            # all Kronecker pairs at once: columns are eta_k (x) eta'_l
            EE = np.einsum("ak,bl->abkl", Ea, Eb).reshape(Ea.shape[0] * Eb.shape[0], -1)
            XX = np.einsum("ak,bl->abkl", Xa, Xb).reshape(Xa.shape[0] * Xb.shape[0], -1)
            for sigma, isos in dual.intertwiners(a, b):
                d_s = dual.dim(sigma)
                for V in isos:
                    P = V.conj().T @ EE
                    Q = V.conj().T @ XX
                    block = (P @ Q.conj().T) / d_s
                    if sigma in acc:
                        acc[sigma] = acc[sigma] + block
                    else:
                        acc[sigma] = block
    return OperatorField.from_terms(dual, acc)


# ---------------------------------------------------------------------------
# evaluation, pairing, translations, involution
# ---------------------------------------------------------------------------

def evaluate(u: OperatorField, s) -> complex:
    """Fourier inversion at a group point: sum d_pi Tr(u^(pi) pi(s))."""
    total = 0.0 + 0.0j
    for a, M in u.coeffs.items():
        total += u.dual.dim(a) * complex(np.trace(M @ u.dual.rep(a, s)))
    return total


def pair(T, u: OperatorField) -> complex:
    """Duality pairing sum d_pi Tr(u^(pi) T_pi); T a field or a group point."""
    if isinstance(T, OperatorField):
        T._same_dual(u)
        total = 0.0 + 0.0j
        for a in set(T.coeffs) & set(u.coeffs):
            total += u.dual.dim(a) * complex(np.trace(u.coeffs[a] @ T.coeffs[a]))
        return total
    return evaluate(u, T)


def translate(u: OperatorField, t, side: str = "right") -> OperatorField:
    """Coefficientwise unitary translation; preserves the weighted norm.

    Right translation maps u^(pi) to pi(t) u^(pi); left translation to
    u^(pi) pi(t^{-1}).
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    out = {}
    for a, M in u.coeffs.items():
        if side == "right":
            out[a] = u.dual.rep(a, t) @ M
        else:
            out[a] = M @ u.dual.rep(a, u.dual.point_inv(t))
    return OperatorField.from_terms(u.dual, out)


def involution(u: OperatorField) -> OperatorField:
    """Pointwise complex conjugate, computed through conjugation intertwiners."""
    out: dict = {}
    for a, M in u.coeffs.items():
        abar, J = u.dual.conj_intertwiner(a)
        Jinv = J.conj().T  # J unitary for all supported families
        block = Jinv @ M.conj() @ J
        if abar in out:
            out[abar] = out[abar] + block
        else:
            out[abar] = block
    return OperatorField.from_terms(u.dual, out)


# ---------------------------------------------------------------------------
# factorization and convolution
# ---------------------------------------------------------------------------

def factorize(u: OperatorField, w1: Weight, w2: Weight) -> tuple[OperatorField, OperatorField]:
    """Split u = f * g with g in L^2_{w1} and f in L^2_{w2}.

    Per label, with the polar decomposition u^ = V |u^| and
    w = (w1 w2)^(1/2):

        g^ = (w1/w)^(1/2) V |u^|^(1/2),   f^ = (w2/w)^(1/2) |u^|^(1/2).

    Then ||u||_{A_w} <= ||f||_{2,w2} ||g||_{2,w1}, with equality when the
    support is a single label.
    """
    gs, fs = {}, {}
    for a, M in u.coeffs.items():
        U, s, Vh = np.linalg.svd(M)
        root = Vh.conj().T * np.sqrt(s)  # |M|^(1/2) = W sqrt(S) W*
        half = root @ Vh
        vpol = U @ Vh
        wa = np.sqrt(w1(a) * w2(a))
        gs[a] = np.sqrt(w1(a) / wa) * (vpol @ half)
        fs[a] = np.sqrt(w2(a) / wa) * half
    return OperatorField.from_terms(u.dual, fs), OperatorField.from_terms(u.dual, gs)


def convolve(f: OperatorField, g: OperatorField) -> OperatorField:
    """Convolution as coefficientwise product (f * g)^(pi) = g^(pi) f^(pi)."""
    f._same_dual(g)
    out = {}
    for a in set(f.coeffs) & set(g.coeffs):
        out[a] = g.coeffs[a] @ f.coeffs[a]
    return OperatorField.from_terms(f.dual, out)


def scale_diag(xi: OperatorField, w: Weight, direction: str) -> OperatorField:
    """Diagonal weight scaling: 'q' multiplies by sqrt(w), 'r' by 1/sqrt(w)."""
    if direction not in ("q", "r"):
        raise ValueError(f"direction must be 'q' or 'r', got {direction!r}")
    out = {}
    for a, M in xi.coeffs.items():
        c = np.sqrt(w(a))
        out[a] = M * (c if direction == "q" else 1.0 / c)
    return OperatorField.from_terms(xi.dual, out)
