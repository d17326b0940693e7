"""Dual objects of the supported compact groups as explicit fusion rings.

Each :class:`GroupDual` bundles, for one group family, everything the rest of
the workbench needs: dimensions, conjugation, fusion multiplicities, a default
generating set with word-length arithmetic, concrete representation matrices
at group points, Haar quadrature grids, and Clebsch-Gordan style intertwiners.

Families: the torus T^n, SU(2), the circle-with-flip group T x| Z2 (the
semidirect product where the flip inverts the circle), the quotient SO(3) of
SU(2), and binary products of any of these.

All instances are immutable values; every method is pure.  Memo caches only
store values that are functions of their key, so concurrent use is safe.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    FamilyMismatchError,
    IntertwinerSynthesisError,
    NotGeneratedError,
    UnsupportedBranchingError,
)
from .labels import (
    IrrepLabel,
    ProductLabel,
    SemidirectLabel,
    Su2Spin,
    TorusChar,
    label_key,
)

__all__ = [
    "GroupDual",
    "TorusDual",
    "Su2Dual",
    "So3Dual",
    "SemidirectDual",
    "ProductDual",
    "SemidirectPoint",
    "IntertwinerSet",
    "su2_irrep",
    "su2_euler_point",
    "su2_irrep_stack",
    "su2_algebra_rep",
    "su2_class_angle",
    "branch_su2_to_torus",
    "so3_lift",
    "parse_group",
    "group_token",
]

_EPS_FLIP = np.array([[0.0, -1.0], [1.0, 0.0]], dtype=complex)  # det-1 conjugator of SU(2)
_SWAP2 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)


# ---------------------------------------------------------------------------
# SU(2) representation matrices
# ---------------------------------------------------------------------------

def su2_irrep(n: int, g: np.ndarray) -> np.ndarray:
    """Matrix of the (n+1)-dimensional irrep at a 2x2 matrix g.

    Realized on the n-th symmetric power of C^2 in the orthonormalized
    monomial basis e_k, k = 0..n (e_0 the highest torus exponent), evaluated
    by contracting against the spin-1/2 factor one step at a time.  Works for
    any invertible g (unitary or not), stably up to n of a few hundred.
    """
    return su2_irrep_stack(n, np.asarray(g, dtype=complex)[None])[n][0]


def su2_irrep_stack(n_max: int, gs: np.ndarray) -> list[np.ndarray]:
    """All irreps 0..n_max at a batch of 2x2 matrices, shape (G,2,2) -> (G,k+1,k+1)."""
    gs = np.asarray(gs, dtype=complex)
    out = [np.ones(gs.shape[:1] + (1, 1), dtype=complex)]
    for n in range(1, n_max + 1):
        prev = out[-1]
        j = np.arange(n + 1)
        cur = np.zeros(gs.shape[:1] + (n + 1, n + 1), dtype=complex)
        w = np.sqrt(np.outer(n - j, n - j)) / n
        cur[:, : n, : n] += w[: n, : n] * prev * gs[:, None, None, 0, 0]
        w = np.sqrt(np.outer(n - j, j)) / n
        cur[:, : n, 1:] += w[: n, 1:] * prev * gs[:, None, None, 0, 1]
        w = np.sqrt(np.outer(j, n - j)) / n
        cur[:, 1:, : n] += w[1:, : n] * prev * gs[:, None, None, 1, 0]
        w = np.sqrt(np.outer(j, j)) / n
        cur[:, 1:, 1:] += w[1:, 1:] * prev * gs[:, None, None, 1, 1]
        out.append(cur)
    return out


def su2_algebra_rep(n: int, X: np.ndarray) -> np.ndarray:
    """Derived representation of a 2x2 algebra element on the n-th irrep."""
    X = np.asarray(X, dtype=complex)
    k = np.arange(n + 1)
    M = np.zeros((n + 1, n + 1), dtype=complex)
    M[k, k] = (n - k) * X[0, 0] + k * X[1, 1]
    if n >= 1:
        kk = np.arange(n)
        M[kk + 1, kk] = X[1, 0] * np.sqrt((n - kk) * (kk + 1.0))
        M[kk, kk + 1] = X[0, 1] * np.sqrt((kk + 1.0) * (n - kk))
    return M


def su2_class_angle(g: np.ndarray) -> float:
    """Conjugacy-class angle in [0, pi]: eigenvalues of g are exp(+-i angle)."""
    half_tr = 0.5 * float(np.real(np.trace(g)))
    return math.acos(min(1.0, max(-1.0, half_tr)))


def su2_euler_point(alpha: float, beta: float, gamma: float) -> np.ndarray:
    ca, sa = np.exp(-0.5j * alpha), np.exp(0.5j * alpha)
    cg, sg = np.exp(-0.5j * gamma), np.exp(0.5j * gamma)
    cb, sb = math.cos(beta / 2.0), math.sin(beta / 2.0)
    return np.array([[ca * cb * cg, -ca * sb * sg], [sa * sb * cg, sa * cb * sg]])


# ---------------------------------------------------------------------------
# points of the circle-with-flip group
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SemidirectPoint:
    """Group point (theta, flip): circle angle plus optional inversion flip."""

    theta: float
    flip: bool = False


@dataclass(frozen=True)
class IntertwinerSet:
    """Isometries embedding each fusion component into a tensor product.

    ``blocks`` maps a component label sigma to a list of isometries
    V: C^{d_sigma} -> C^{d_a d_b}, one per multiplicity, with orthogonal
    ranges; together the ranges fill the whole product space.
    """

    a: IrrepLabel
    b: IrrepLabel
    blocks: tuple[tuple[IrrepLabel, tuple[np.ndarray, ...]], ...]

    def __iter__(self):
        return iter(self.blocks)


# ---------------------------------------------------------------------------
# base class
# ---------------------------------------------------------------------------

class GroupDual:
    family = "?"

    def __init__(self):
        self._fuse_cache: dict = {}
        self._iw_cache: dict = {}

    # --- structure -------------------------------------------------------
    @property
    def trivial(self) -> IrrepLabel:
        raise NotImplementedError

    def contains(self, a: IrrepLabel) -> bool:
        raise NotImplementedError

    def dim(self, a: IrrepLabel) -> int:
        raise NotImplementedError

    def conjugate(self, a: IrrepLabel) -> IrrepLabel:
        raise NotImplementedError

    def generators(self) -> tuple[IrrepLabel, ...]:
        raise NotImplementedError

    def lie_dim(self) -> int:
        raise NotImplementedError

    def _fuse(self, a, b):
        raise NotImplementedError

    def _check(self, *labels):
        for a in labels:
            if not self.contains(a):
                raise FamilyMismatchError(f"{a!r} does not belong to {self!r}")

    def fuse(self, a: IrrepLabel, b: IrrepLabel) -> tuple[tuple[IrrepLabel, int], ...]:
        """Decomposition of a (x) b as a sorted multiset of (label, multiplicity)."""
        self._check(a, b)
        key = (a, b)
        hit = self._fuse_cache.get(key)
        if hit is None:
            hit = tuple(sorted(self._fuse(a, b), key=lambda p: label_key(p[0])))
            self._fuse_cache[key] = hit
        return hit

    def fuse_support(self, a, b) -> tuple[IrrepLabel, ...]:
        return tuple(s for s, _ in self.fuse(a, b))

    # --- word length machinery --------------------------------------------
    def support_step(self, supp: frozenset, S) -> frozenset:
        out = set()
        for a in supp:
            for s in S:
                out.update(self.fuse_support(a, s))
        return frozenset(out)

    def tensor_power_support(self, S, k: int) -> tuple[IrrepLabel, ...]:
        """Labels occurring in some k-fold tensor product of members of S."""
        if k == 0:
            return (self.trivial,)
        S = tuple(S)
        if not S:
            raise ValueError("empty generating set with k >= 1")
        self._check(*S)
        supp = frozenset(S)
        for _ in range(k - 1):
            supp = self.support_step(supp, S)
        return tuple(sorted(supp, key=label_key))

    def word_length(self, a: IrrepLabel, S=None, cap: int = 512) -> int:
        """Minimal k with a inside a k-fold product over S; trivial has length 0."""
        self._check(a)
        if a == self.trivial:
            return 0
        if S is None:
            fast = self._default_word_length(a)
            if fast is not None:
                return fast
            S = self.generators()
        S = tuple(S)
        seen = frozenset([self.trivial])
        supp = frozenset([self.trivial])
        for k in range(1, cap + 1):
            supp = self.support_step(supp, S)
            if a in supp:
                return k
            new = supp - seen
            if not new and k > 1:
                raise NotGeneratedError(a, k)
            seen = seen | supp
        raise NotGeneratedError(a, cap)

    def _default_word_length(self, a):
        return None

    def ball(self, radius: int, S=None) -> tuple[IrrepLabel, ...]:
        """All labels of word length <= radius (cumulative tensor-power support)."""
        if S is None:
            fast = self._default_ball(radius)
            if fast is not None:
                return fast
            S = self.generators()
        acc = {self.trivial}
        supp = frozenset([self.trivial])
        for _ in range(radius):
            supp = self.support_step(supp, S)
            acc.update(supp)
        return tuple(sorted(acc, key=label_key))

    def _default_ball(self, radius):
        return None

    # --- points and representations ---------------------------------------
    def identity(self):
        raise NotImplementedError

    def random_point(self, rng):
        raise NotImplementedError

    def point_mul(self, s, t):
        raise NotImplementedError

    def point_inv(self, s):
        raise NotImplementedError

    def rep(self, a: IrrepLabel, point) -> np.ndarray:
        """Unitary matrix of the irrep a at a group point."""
        raise NotImplementedError

    def conj_intertwiner(self, a: IrrepLabel):
        """(abar, J) with conj(rep(a, s)) == J rep(abar, s) J^{-1} for all s."""
        raise NotImplementedError

    def haar_grid(self, degree: int):
        """(points, weights) integrating exactly all products of matrix entries
        whose label indices total at most ``degree``."""
        raise NotImplementedError

    # --- intertwiners -------------------------------------------------------
    def intertwiners(self, a: IrrepLabel, b: IrrepLabel) -> IntertwinerSet:
        self._check(a, b)
        key = (a, b)
        hit = self._iw_cache.get(key)
        if hit is None:
            hit = self._build_intertwiners(a, b)
            self._iw_cache[key] = hit
        return hit

    def _build_intertwiners(self, a, b) -> IntertwinerSet:
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self._params() == other._params()

    def __hash__(self):
        return hash((type(self).__name__, self._params()))

    def _params(self):
        return ()

    def __repr__(self):
        return group_token(self)


# ---------------------------------------------------------------------------
# torus
# ---------------------------------------------------------------------------

class TorusDual(GroupDual):
    family = "torus"

    def __init__(self, n: int):
        super().__init__()
        if n < 1:
            raise ValueError("torus rank must be >= 1")
        self.n = n

    def _params(self):
        return (self.n,)

    @property
    def trivial(self):
        return TorusChar((0,) * self.n)

    def contains(self, a):
        return isinstance(a, TorusChar) and len(a.mu) == self.n

    def dim(self, a):
        self._check(a)
        return 1

    def conjugate(self, a):
        self._check(a)
        return TorusChar(tuple(-m for m in a.mu))

    def generators(self):
        out = []
        for j in range(self.n):
            e = [0] * self.n
            e[j] = 1
            out.append(TorusChar(tuple(e)))
            e[j] = -1
            out.append(TorusChar(tuple(e)))
        return tuple(out)

    def lie_dim(self):
        return self.n

    def _fuse(self, a, b):
        return [(TorusChar(tuple(x + y for x, y in zip(a.mu, b.mu))), 1)]

    def _default_word_length(self, a):
        return sum(abs(m) for m in a.mu)

    def _default_ball(self, radius):
        out = []
        for mu in itertools.product(range(-radius, radius + 1), repeat=self.n):
            if sum(abs(m) for m in mu) <= radius:
                out.append(TorusChar(mu))
        return tuple(sorted(out, key=label_key))

    def identity(self):
        return np.zeros(self.n)

    def random_point(self, rng):
        return rng.uniform(0.0, 2.0 * np.pi, size=self.n)

    def point_mul(self, s, t):
        return np.mod(np.asarray(s) + np.asarray(t), 2.0 * np.pi)

    def point_inv(self, s):
        return np.mod(-np.asarray(s), 2.0 * np.pi)

    def rep(self, a, point):
        self._check(a)
        return np.array([[np.exp(1j * float(np.dot(a.mu, point)))]])

    def conj_intertwiner(self, a):
        self._check(a)
        return self.conjugate(a), np.ones((1, 1), dtype=complex)

    def haar_grid(self, degree):
        m = degree + 1
        axis = 2.0 * np.pi * np.arange(m) / m
        pts = [np.array(p) for p in itertools.product(axis, repeat=self.n)]
        return pts, np.full(len(pts), 1.0 / m**self.n)

    def _build_intertwiners(self, a, b):
        (sigma, _), = self.fuse(a, b)
        return IntertwinerSet(a, b, ((sigma, (np.ones((1, 1), dtype=complex),)),))


# ---------------------------------------------------------------------------
# SU(2)
# ---------------------------------------------------------------------------

class Su2Dual(GroupDual):
    family = "su2"

    @property
    def trivial(self):
        return Su2Spin(0)

    def contains(self, a):
        return isinstance(a, Su2Spin)

    def dim(self, a):
        self._check(a)
        return a.n + 1

    def conjugate(self, a):
        self._check(a)
        return a

    def generators(self):
        return (Su2Spin(1),)

    def lie_dim(self):
        return 3

    def _fuse(self, a, b):
        lo, hi = abs(a.n - b.n), a.n + b.n
        return [(Su2Spin(k), 1) for k in range(lo, hi + 1, 2)]

    def _default_word_length(self, a):
        return a.n

    def _default_ball(self, radius):
        return tuple(Su2Spin(k) for k in range(radius + 1))

    def identity(self):
        return np.eye(2, dtype=complex)

    def random_point(self, rng):
        alpha, gamma = rng.uniform(0.0, 4.0 * np.pi, size=2)
        beta = math.acos(rng.uniform(-1.0, 1.0))
        return su2_euler_point(alpha, beta, gamma)

    def point_mul(self, s, t):
        return np.asarray(s) @ np.asarray(t)

    def point_inv(self, s):
        return np.asarray(s).conj().T

    def rep(self, a, point):
        self._check(a)
        return su2_irrep(a.n, point)

    def conj_intertwiner(self, a):
        self._check(a)
        # conj(g) = eps g eps^{-1} in SU(2); entries of the irrep are real
        # polynomials in the entries of g, so the relation lifts verbatim.
        return a, su2_irrep(a.n, _EPS_FLIP).real.astype(complex)

    def haar_grid(self, degree):
        k = degree + 1
        q = (degree + 6) // 4
        axis = 4.0 * np.pi * np.arange(k) / k
        xs, ws = np.polynomial.legendre.leggauss(q)
        betas = np.arccos(xs)
        pts, wts = [], []
        for alpha in axis:
            for beta, wb in zip(betas, ws):
                for gamma in axis:
                    pts.append(su2_euler_point(alpha, beta, gamma))
                    wts.append(wb / (2.0 * k * k))
        return pts, np.array(wts)

    def _build_intertwiners(self, a, b):
        blocks = []
        for sigma, _ in self.fuse(a, b):
            V = _su2_cg_isometry(a.n, b.n, sigma.n)
            blocks.append((sigma, (V,)))
        return IntertwinerSet(a, b, tuple(blocks))


def _jplus(j: float, m: float) -> float:
    return math.sqrt(max(j * (j + 1) - m * (m + 1), 0.0))


def _su2_cg_isometry(n1: int, n2: int, n: int) -> np.ndarray:
    """Clebsch-Gordan isometry onto the spin-n/2 component of n1 (x) n2.

    Phase fixed so the highest-weight coefficient at maximal first-factor
    exponent is real positive (Condon-Shortley style).
    """
    j1, j2, j = n1 / 2.0, n2 / 2.0, n / 2.0
    d1, d2, d = n1 + 1, n2 + 1, n + 1
    # highest-weight vector over first-factor exponents m1, with m2 = j - m1
    m1_hi = min(j1, j + j2)
    m1_lo = max(-j1, j - j2)
    count = int(round(m1_hi - m1_lo)) + 1
    coeff = np.zeros(count)
    coeff[0] = 1.0  # index i corresponds to m1 = m1_hi - i
    for i in range(count - 1):
        p = m1_hi - i
        coeff[i + 1] = -coeff[i] * _jplus(j2, j - p) / _jplus(j1, p - 1)
    coeff /= math.sqrt(float(np.dot(coeff, coeff)))
    if coeff[0] < 0:
        coeff = -coeff
    top = np.zeros(d1 * d2)
    for i in range(count):
        m1 = m1_hi - i
        k1 = int(round(j1 - m1))
        k2 = int(round(j2 - (j - m1)))
        top[k1 * d2 + k2] = coeff[i]

    V = np.zeros((d1 * d2, d), dtype=complex)
    V[:, 0] = top
    vec = top
    for col in range(1, d):
        m = j - (col - 1)
        nxt = np.zeros(d1 * d2)
        arr = vec.reshape(d1, d2)
        for k1 in range(d1):
            for k2 in range(d2):
                c = arr[k1, k2]
                if c == 0.0:
                    continue
                m1, m2 = j1 - k1, j2 - k2
                if k1 + 1 < d1:
                    nxt[(k1 + 1) * d2 + k2] += c * _jplus(j1, m1 - 1)
                if k2 + 1 < d2:
                    nxt[k1 * d2 + (k2 + 1)] += c * _jplus(j2, m2 - 1)
        vec = nxt / _jplus(j, m - 1)
        V[:, col] = vec
    if not np.allclose(V.conj().T @ V, np.eye(d), atol=1e-10):
        raise IntertwinerSynthesisError(f"CG isometry residual too large for ({n1},{n2})->{n}")
    return V


# ---------------------------------------------------------------------------
# SO(3) = SU(2) / center; labels are the even spins
# ---------------------------------------------------------------------------

class So3Dual(Su2Dual):
    family = "so3"

    def contains(self, a):
        return isinstance(a, Su2Spin) and a.n % 2 == 0

    def generators(self):
        return (Su2Spin(2),)

    def _default_word_length(self, a):
        return a.n // 2

    def _default_ball(self, radius):
        return tuple(Su2Spin(2 * k) for k in range(radius + 1))


# ---------------------------------------------------------------------------
# circle-with-flip group T x| Z2
# ---------------------------------------------------------------------------

class SemidirectDual(GroupDual):
    """Dual of the semidirect product of the circle by the inversion flip.

    Fusion is forced by character arithmetic: the two-dimensional characters
    vanish on flipped elements, so pi_m (x) pi_m = pi_{2m} + triv + sgn.
    """

    family = "txz2"

    @property
    def trivial(self):
        return SemidirectLabel("triv")

    def contains(self, a):
        return isinstance(a, SemidirectLabel)

    def dim(self, a):
        self._check(a)
        return 2 if a.kind == "pi" else 1

    def conjugate(self, a):
        self._check(a)
        return a

    def generators(self):
        return (SemidirectLabel("pi", 1),)

    def lie_dim(self):
        return 1

    def _fuse(self, a, b):
        ka, kb = a.kind, b.kind
        if ka != "pi" and kb != "pi":
            out = "triv" if ka == kb else "sgn"
            return [(SemidirectLabel(out), 1)]
        if ka != "pi" or kb != "pi":
            m = a.m if ka == "pi" else b.m
            return [(SemidirectLabel("pi", m), 1)]
        if a.m != b.m:
            return [
                (SemidirectLabel("pi", a.m + b.m), 1),
                (SemidirectLabel("pi", abs(a.m - b.m)), 1),
            ]
        return [
            (SemidirectLabel("pi", 2 * a.m), 1),
            (SemidirectLabel("triv"), 1),
            (SemidirectLabel("sgn"), 1),
        ]

    def _default_word_length(self, a):
        if a.kind == "triv":
            return 0
        if a.kind == "sgn":
            return 2
        return a.m

    def _default_ball(self, radius):
        out = [SemidirectLabel("triv")]
        if radius >= 2:
            out.append(SemidirectLabel("sgn"))
        out.extend(SemidirectLabel("pi", m) for m in range(1, radius + 1))
        return tuple(sorted(out, key=label_key))

    def identity(self):
        return SemidirectPoint(0.0, False)

    def random_point(self, rng):
        return SemidirectPoint(float(rng.uniform(0.0, 2.0 * np.pi)), bool(rng.integers(2)))

    def point_mul(self, s, t):
        theta = s.theta + (-t.theta if s.flip else t.theta)
        return SemidirectPoint(theta % (2.0 * np.pi), s.flip != t.flip)

    def point_inv(self, s):
        return SemidirectPoint(s.theta if s.flip else (-s.theta) % (2.0 * np.pi), s.flip)

    def rep(self, a, point):
        self._check(a)
        if a.kind == "triv":
            return np.ones((1, 1), dtype=complex)
        if a.kind == "sgn":
            return np.array([[-1.0 if point.flip else 1.0]], dtype=complex)
        z = np.exp(1j * a.m * point.theta)
        M = np.diag([z, np.conj(z)])
        return M @ _SWAP2 if point.flip else M

    def conj_intertwiner(self, a):
        self._check(a)
        if a.kind == "pi":
            return a, _SWAP2.copy()
        return a, np.ones((1, 1), dtype=complex)

    def haar_grid(self, degree):
        m = degree + 1
        pts = [
            SemidirectPoint(2.0 * np.pi * j / m, flip)
            for flip in (False, True)
            for j in range(m)
        ]
        return pts, np.full(len(pts), 0.5 / m)

    def _build_intertwiners(self, a, b):
        one = np.ones((1, 1), dtype=complex)
        sgn_twist = np.diag([1.0, -1.0]).astype(complex)
        ka, kb = a.kind, b.kind
        if ka != "pi" and kb != "pi":
            (sigma, _), = self.fuse(a, b)
            return IntertwinerSet(a, b, ((sigma, (one,)),))
        if ka != "pi" or kb != "pi":
            scalar_is_sgn = (a if ka != "pi" else b).kind == "sgn"
            (sigma, _), = self.fuse(a, b)
            V = sgn_twist if scalar_is_sgn else np.eye(2, dtype=complex)
            return IntertwinerSet(a, b, ((sigma, (V,)),))
        # pi_n (x) pi_m on basis (++, +-, -+, --) of weights n+m, n-m, m-n, -(n-m)
        top = np.zeros((4, 2), dtype=complex)
        top[0, 0] = 1.0
        top[3, 1] = 1.0
        blocks = [(SemidirectLabel("pi", a.m + b.m), (top,))]
        if a.m != b.m:
            mid = np.zeros((4, 2), dtype=complex)
            if a.m > b.m:
                mid[1, 0] = 1.0
                mid[2, 1] = 1.0
            else:
                mid[2, 0] = 1.0
                mid[1, 1] = 1.0
            blocks.append((SemidirectLabel("pi", abs(a.m - b.m)), (mid,)))
        else:
            plus = np.zeros((4, 1), dtype=complex)
            plus[1, 0] = plus[2, 0] = 1.0 / math.sqrt(2.0)
            minus = np.zeros((4, 1), dtype=complex)
            minus[1, 0] = 1.0 / math.sqrt(2.0)
            minus[2, 0] = -1.0 / math.sqrt(2.0)
            blocks.append((SemidirectLabel("triv"), (plus,)))
            blocks.append((SemidirectLabel("sgn"), (minus,)))
        blocks.sort(key=lambda p: label_key(p[0]))
        return IntertwinerSet(a, b, tuple(blocks))


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------

class ProductDual(GroupDual):
    family = "product"

    def __init__(self, left: GroupDual, right: GroupDual):
        super().__init__()
        self.left = left
        self.right = right

    def _params(self):
        return (self.left, self.right)

    @property
    def trivial(self):
        return ProductLabel(self.left.trivial, self.right.trivial)

    def contains(self, a):
        return (
            isinstance(a, ProductLabel)
            and self.left.contains(a.left)
            and self.right.contains(a.right)
        )

    def dim(self, a):
        self._check(a)
        return self.left.dim(a.left) * self.right.dim(a.right)

    def conjugate(self, a):
        self._check(a)
        return ProductLabel(self.left.conjugate(a.left), self.right.conjugate(a.right))

    def generators(self):
        lt, rt = self.left.trivial, self.right.trivial
        out = [ProductLabel(s, rt) for s in self.left.generators()]
        out += [ProductLabel(lt, s) for s in self.right.generators()]
        return tuple(out)

    def lie_dim(self):
        return self.left.lie_dim() + self.right.lie_dim()

    def _fuse(self, a, b):
        out = []
        for sl, ml in self.left.fuse(a.left, b.left):
            for sr, mr in self.right.fuse(a.right, b.right):
                out.append((ProductLabel(sl, sr), ml * mr))
        return out

    def _default_word_length(self, a):
        wl = self.left._default_word_length(a.left)
        wr = self.right._default_word_length(a.right)
        if wl is None or wr is None:
            return None
        return wl + wr

    def _default_ball(self, radius):
        lb = self.left._default_ball(radius)
        rb = self.right._default_ball(radius)
        if lb is None or rb is None:
            return None
        out = [
            ProductLabel(a, b)
            for a in lb
            for b in rb
            if self.left._default_word_length(a) + self.right._default_word_length(b) <= radius
        ]
        return tuple(sorted(out, key=label_key))

    def identity(self):
        return (self.left.identity(), self.right.identity())

    def random_point(self, rng):
        return (self.left.random_point(rng), self.right.random_point(rng))

    def point_mul(self, s, t):
        return (self.left.point_mul(s[0], t[0]), self.right.point_mul(s[1], t[1]))

    def point_inv(self, s):
        return (self.left.point_inv(s[0]), self.right.point_inv(s[1]))

    def rep(self, a, point):
        self._check(a)
        return np.kron(self.left.rep(a.left, point[0]), self.right.rep(a.right, point[1]))

    def conj_intertwiner(self, a):
        self._check(a)
        cl, Jl = self.left.conj_intertwiner(a.left)
        cr, Jr = self.right.conj_intertwiner(a.right)
        return ProductLabel(cl, cr), np.kron(Jl, Jr)

    def haar_grid(self, degree):
        lp, lw = self.left.haar_grid(degree)
        rp, rw = self.right.haar_grid(degree)
        pts = [(p, q) for p in lp for q in rp]
        return pts, np.outer(lw, rw).ravel()

    def _build_intertwiners(self, a, b):
        iwl = self.left.intertwiners(a.left, b.left)
        iwr = self.right.intertwiners(a.right, b.right)
        da1, da2 = self.left.dim(a.left), self.right.dim(a.right)
        db1, db2 = self.left.dim(b.left), self.right.dim(b.right)
        blocks = []
        for sl, Vls in iwl:
            for sr, Vrs in iwr:
                sigma = ProductLabel(sl, sr)
                vs = []
                for Vl in Vls:
                    for Vr in Vrs:
                        W = np.kron(Vl, Vr)  # (da1 db1 da2 db2, ds1 ds2)
                        W = W.reshape(da1, db1, da2, db2, -1)
                        W = W.transpose(0, 2, 1, 3, 4).reshape(da1 * da2 * db1 * db2, -1)
                        vs.append(W)
                blocks.append((sigma, tuple(vs)))
        blocks.sort(key=lambda p: label_key(p[0]))
        return IntertwinerSet(a, b, tuple(blocks))


# ---------------------------------------------------------------------------
# branching and quotient lifts
# ---------------------------------------------------------------------------

def branch_su2_to_torus(a: Su2Spin) -> tuple[tuple[TorusChar, int], ...]:
    """Restriction of the SU(2) irrep to the diagonal torus: exponents n-2j."""
    if not isinstance(a, Su2Spin):
        raise UnsupportedBranchingError(f"unsupported branching for {a!r}")
    return tuple((TorusChar((a.n - 2 * j,)), 1) for j in range(a.n + 1))


class Su2TorusBranching:
    """The pair SU(2) > diagonal torus, with forward and inverse branching."""

    subgroup = TorusDual(1)

    @staticmethod
    def branch(a: Su2Spin):
        return branch_su2_to_torus(a)

    @staticmethod
    def containing(sigma: TorusChar):
        """SU(2) labels whose restriction contains sigma, in increasing order."""
        k = abs(sigma.mu[0])
        n = k
        while True:
            yield Su2Spin(n)
            n += 2


def so3_lift(m: int) -> Su2Spin:
    """SO(3) label m pulled back through the double cover: the spin-2m irrep."""
    if m < 0:
        raise ValueError("SO(3) label must be >= 0")
    return Su2Spin(2 * m)


class Su2So3Lift:
    """The quotient SU(2) -> SO(3); pullback sends SO(3) label m to spin 2m."""

    quotient = So3Dual()
    source = Su2Dual()

    @staticmethod
    def lift(m: int) -> Su2Spin:
        return so3_lift(m)


# ---------------------------------------------------------------------------
# group tokens
# ---------------------------------------------------------------------------

def group_token(dual: GroupDual) -> str:
    if isinstance(dual, TorusDual):
        return f"torus:{dual.n}"
    if isinstance(dual, So3Dual):
        return "so3"
    if isinstance(dual, Su2Dual):
        return "su2"
    if isinstance(dual, SemidirectDual):
        return "txz2"
    if isinstance(dual, ProductDual):
        return f"prod({group_token(dual.left)},{group_token(dual.right)})"
    raise FamilyMismatchError(f"unknown dual {dual!r}")


def parse_group(token: str) -> GroupDual:
    token = token.strip()
    if token == "su2":
        return Su2Dual()
    if token == "so3":
        return So3Dual()
    if token == "txz2":
        return SemidirectDual()
    if token.startswith("torus:"):
        return TorusDual(int(token.split(":", 1)[1]))
    if token.startswith("prod(") and token.endswith(")"):
        inner = token[5:-1]
        depth, cut = 0, None
        for i, ch in enumerate(inner):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                cut = i
                break
        if cut is None:
            raise ValueError(f"bad product group {token!r}")
        return ProductDual(parse_group(inner[:cut]), parse_group(inner[cut + 1:]))
    raise ValueError(f"unknown group {token!r}")
