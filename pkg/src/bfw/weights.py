"""Weights on dual objects: construction, validation, and growth analysis.

A weight is a positive function w on the labels with w(sigma) <= w(a) w(b)
whenever sigma occurs in the fusion of a and b.  Built-in recipes:

    const:C          constant C >= 1
    dim              dimension of the label
    poly:alpha=A     (1 + word length)^A, A > 0, over the default generators
    exp:lambda=L     L^(word length); on the torus per-axis L_j^|mu_j|, L >= 1
    prod(R1,R2)      product of two recipes
    pow(R,A)         pointwise power, A >= 1

plus a JSON-only ``table`` recipe that overrides individual labels of a base
recipe (handy for fabricating invalid weights in diagnostics).  Evaluations
are memoized per weight; all built-ins are symmetric on the supported
families and nondecreasing in the SU(2) spin index, which the restriction
weight uses as its exactness certificate.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .duals import GroupDual, So3Dual, Su2Dual, Su2So3Lift, Su2TorusBranching, TorusDual
from .errors import LabelCapError, UnsupportedBranchingError, WeightSpecError
from .labels import IrrepLabel, format_label, parse_label

__all__ = [
    "Weight",
    "WeightReport",
    "GrowthCertificate",
    "GrowthClassification",
    "make_weight",
    "weight_from_json",
    "weight_to_json",
    "validate",
    "growth_rate",
    "classify_growth",
    "restrict_weight",
    "quotient_weight",
    "EPS_CLASS",
]

EPS_CLASS = 1e-3  # growth-classification threshold on the estimated rate


@dataclass(frozen=True)
class Weight:
    """Positive evaluable function on the labels of one dual object."""

    dual: GroupDual
    fn: object
    descriptor: str
    symmetric: bool = True
    bounded: bool = True
    su2_monotone: bool = False  # nondecreasing in the Su2Spin index
    warnings: tuple[str, ...] = ()
    log_fn: object = None  # exact log evaluator; keeps growth scans in range
    _cache: dict = field(default_factory=dict, repr=False, compare=False)
    _log_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __call__(self, a: IrrepLabel) -> float:
        v = self._cache.get(a)
        if v is None:
            v = float(self.fn(a))
            if not v > 0.0:
                raise WeightSpecError(f"weight {self.descriptor} is {v} at {format_label(a)}")
            self._cache[a] = v
        return v

    def log_value(self, a: IrrepLabel) -> float:
        """log of the weight; exponential recipes overflow plain evaluation
        long before the growth scans finish, so scans use this."""
        v = self._log_cache.get(a)
        if v is None:
            v = float(self.log_fn(a)) if self.log_fn is not None else math.log(self(a))
            self._log_cache[a] = v
        return v

    def of_support(self, labels) -> float:
        """Weight of a reducible object: the max over its irreducible support."""
        return max(self(a) for a in labels)

    def log_of_support(self, labels) -> float:
        return max(self.log_value(a) for a in labels)


@dataclass(frozen=True)
class WeightReport:
    passed: bool
    max_violation: float  # worst relative excess of w(sigma) over w(a) w(b)
    witness: tuple[str, str, str] | None
    witness_values: tuple[float, float, float] | None
    symmetry_residual: float
    infimum: float
    depth: int
    tol: float

    def to_json(self):
        return {
            "passed": self.passed,
            "max_violation": self.max_violation,
            "witness": list(self.witness) if self.witness else None,
            "witness_values": list(self.witness_values) if self.witness_values else None,
            "symmetry_residual": self.symmetry_residual,
            "infimum": self.infimum,
            "depth": self.depth,
            "tol": self.tol,
        }


@dataclass(frozen=True)
class GrowthCertificate:
    """Trace of w(pi^(x n))^(1/n) with its running infimum and a windowed
    rate estimate; the running infimum is a monotone upper bound of the rate,
    the window slope converges to it from both sides."""

    label: IrrepLabel
    seq: tuple[tuple[int, float], ...]
    rho_hat: float
    rho_slope: float
    tag: str  # "nonexponential-evidence" | "exponential-witness"
    n_max: int


@dataclass(frozen=True)
class GrowthClassification:
    kind: str  # "nonexponential-evidence" | "exponential-witness"
    witness: IrrepLabel | None
    rho: float
    certificates: tuple[GrowthCertificate, ...]


# ---------------------------------------------------------------------------
# recipes
# ---------------------------------------------------------------------------

def _split_args(s: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(s[start:i])
            start = i + 1
    parts.append(s[start:])
    return [p.strip() for p in parts]


def _parse_spec(spec: str) -> dict:
    spec = spec.strip()
    if spec == "dim":
        return {"kind": "dim"}
    if spec.startswith("const:"):
        return {"kind": "const", "c": float(spec[6:])}
    if spec.startswith("poly:"):
        body = spec[5:]
        if not body.startswith("alpha="):
            raise WeightSpecError(f"poly recipe needs alpha=..., got {spec!r}")
        return {"kind": "poly", "alpha": float(body[6:])}
    if spec.startswith("exp:"):
        body = spec[4:]
        if not body.startswith("lambda="):
            raise WeightSpecError(f"exp recipe needs lambda=..., got {spec!r}")
        lam = [float(x) for x in body[7:].split(",")]
        return {"kind": "exp", "lam": lam}
    if spec.startswith("prod(") and spec.endswith(")"):
        args = _split_args(spec[5:-1])
        if len(args) != 2:
            raise WeightSpecError(f"prod takes two recipes, got {spec!r}")
        return {"kind": "prod", "factors": [_parse_spec(a) for a in args]}
    if spec.startswith("pow(") and spec.endswith(")"):
        args = _split_args(spec[4:-1])
        if len(args) != 2:
            raise WeightSpecError(f"pow takes a recipe and an exponent, got {spec!r}")
        return {"kind": "pow", "base": _parse_spec(args[0]), "alpha": float(args[1])}
    raise WeightSpecError(f"cannot parse weight recipe {spec!r}")


def _spec_to_str(d: dict) -> str:
    k = d["kind"]
    if k == "dim":
        return "dim"
    if k == "const":
        return f"const:{d['c']:g}"
    if k == "poly":
        return f"poly:alpha={d['alpha']:g}"
    if k == "exp":
        return "exp:lambda=" + ",".join(f"{x:g}" for x in d["lam"])
    if k == "prod":
        return "prod(" + ",".join(_spec_to_str(f) for f in d["factors"]) + ")"
    if k == "pow":
        return f"pow({_spec_to_str(d['base'])},{d['alpha']:g})"
    if k == "table":
        return "table(...)"
    raise WeightSpecError(f"unknown recipe kind {k!r}")


def make_weight(dual: GroupDual, spec: str | dict) -> Weight:
    """Build a weight from a recipe string or its JSON dict form."""
    d = _parse_spec(spec) if isinstance(spec, str) else spec
    kind = d.get("kind")
    if kind == "const":
        c = float(d["c"])
        if c < 1.0:
            raise WeightSpecError(f"const weight needs c >= 1, got {c}")
        return Weight(dual, lambda a: c, _spec_to_str(d), log_fn=lambda a: math.log(c))
    if kind == "dim":
        return Weight(dual, dual.dim, "dim", su2_monotone=True, log_fn=lambda a: math.log(dual.dim(a)))
    if kind == "poly":
        alpha = float(d["alpha"])
        if alpha <= 0.0:
            raise WeightSpecError(f"poly weight needs alpha > 0, got {alpha}")
        return Weight(
            dual,
            lambda a: (1.0 + dual.word_length(a)) ** alpha,
            _spec_to_str(d),
            su2_monotone=True,
            log_fn=lambda a: alpha * math.log1p(dual.word_length(a)),
        )
    if kind == "exp":
        lam = [float(x) for x in d["lam"]]
        if any(x < 1.0 for x in lam):
            raise WeightSpecError(f"exp weight needs lambda >= 1, got {lam}")
        if isinstance(dual, TorusDual):
            if len(lam) == 1:
                lam = lam * dual.n
            if len(lam) != dual.n:
                raise WeightSpecError(
                    f"exp weight on rank-{dual.n} torus takes 1 or {dual.n} lambdas"
                )
            lam_t = tuple(lam)

            def fn(a, _l=lam_t):
                return math.prod(x ** abs(m) for x, m in zip(_l, a.mu))

            def log_fn(a, _l=lam_t):
                return sum(abs(m) * math.log(x) for x, m in zip(_l, a.mu))

        else:
            if len(lam) != 1:
                raise WeightSpecError("exp weight takes a single lambda on this family")
            base = lam[0]

            def fn(a, _b=base):
                return _b ** dual.word_length(a)

            def log_fn(a, _b=base):
                return dual.word_length(a) * math.log(_b)

        return Weight(dual, fn, _spec_to_str(d), su2_monotone=True, log_fn=log_fn)
    if kind == "prod":
        f1, f2 = (make_weight(dual, f) for f in d["factors"])
        return Weight(
            dual,
            lambda a: f1(a) * f2(a),
            f"prod({f1.descriptor},{f2.descriptor})",
            symmetric=f1.symmetric and f2.symmetric,
            bounded=f1.bounded and f2.bounded,
            su2_monotone=f1.su2_monotone and f2.su2_monotone,
            log_fn=lambda a: f1.log_value(a) + f2.log_value(a),
        )
    if kind == "pow":
        alpha = float(d["alpha"])
        if alpha < 1.0:
            raise WeightSpecError(f"pow weight needs alpha >= 1, got {alpha}")
        base = make_weight(dual, d["base"])
        return Weight(
            dual,
            lambda a: base(a) ** alpha,
            f"pow({base.descriptor},{alpha:g})",
            symmetric=base.symmetric,
            bounded=base.bounded,
            su2_monotone=base.su2_monotone,
            log_fn=lambda a: alpha * base.log_value(a),
        )
    if kind == "table":
        base = make_weight(dual, d.get("base", {"kind": "const", "c": 1.0}))
        entries = {parse_label(dual, k): float(v) for k, v in d.get("entries", {}).items()}
        if any(v <= 0.0 for v in entries.values()):
            raise WeightSpecError("table weight entries must be positive")

        def fn(a, _e=entries, _b=base):
            return _e.get(a, _b(a))

        return Weight(dual, fn, "table(...)", symmetric=False, bounded=base.bounded)
    raise WeightSpecError(f"unknown recipe kind {kind!r}")


def weight_from_json(dual: GroupDual, data: str | dict) -> Weight:
    if isinstance(data, str):
        data = json.loads(data)
    return make_weight(dual, data)


def weight_to_json(w: Weight) -> dict:
    return _parse_spec(w.descriptor) if w.descriptor != "table(...)" else {"kind": "table"}


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def validate(dual: GroupDual, w: Weight, depth: int = 12, tol: float = 1e-9) -> WeightReport:
    """Check the fusion inequality on all pairs of labels of word length <= depth.

    Failures are report contents, never exceptions.
    """
    labels = dual.ball(depth)
    worst = 0.0
    witness = None
    witness_vals = None
    for i, a in enumerate(labels):
        wa = w(a)
        for b in labels[i:]:
            bound = wa * w(b)
            for sigma, _ in dual.fuse(a, b):
                excess = w(sigma) / bound - 1.0
                if excess > worst:
                    worst = excess
                    witness = (format_label(sigma), format_label(a), format_label(b))
                    witness_vals = (w(sigma), wa, w(b))
    sym = max(abs(w(dual.conjugate(a)) - w(a)) / w(a) for a in labels)
    inf = min(w(a) for a in labels)
    passed = worst <= tol and (not w.symmetric or sym <= 1e-12)
    return WeightReport(passed, worst, witness, witness_vals, sym, inf, depth, tol)


# ---------------------------------------------------------------------------
# growth
# ---------------------------------------------------------------------------

def _power_log_values(dual, w, S, n_max, cap):
    """log w of the k-fold tensor powers of S, k = 1..n_max (max over support)."""
    vals = []
    supp = frozenset(S)
    for _ in range(n_max):
        vals.append(w.log_of_support(supp))
        if len(supp) > cap:
            raise LabelCapError(cap, len(supp))
        supp = dual.support_step(supp, S)
    return vals


def _certificate(dual, w, label, n_max, cap, eps_class):
    logs = _power_log_values(dual, w, (label,), n_max, cap)
    seq = []
    rho_hat = math.inf
    for n, lv in enumerate(logs, start=1):
        root = math.exp(lv / n)
        rho_hat = min(rho_hat, root)
        seq.append((n, root))
    half = max(1, n_max // 2)
    if n_max > 1:
        rho_slope = math.exp((logs[n_max - 1] - logs[half - 1]) / (n_max - half))
    else:
        rho_slope = seq[0][1]
    tag = "nonexponential-evidence" if rho_slope <= 1.0 + eps_class else "exponential-witness"
    return GrowthCertificate(label, tuple(seq), rho_hat, rho_slope, tag, n_max)


def growth_rate(
    dual: GroupDual,
    w: Weight,
    label: IrrepLabel,
    n_max: int,
    cap: int = 200_000,
    eps_class: float = EPS_CLASS,
) -> GrowthCertificate:
    """Certificate for the limit of w(pi^(x n))^(1/n).

    The running infimum equals the limit for submultiplicative sequences; the
    windowed log-slope between n_max/2 and n_max converges to the same limit
    (squeezed between the infimum estimate and its reflection) and is what the
    classification tag uses, since the plain root converges only like
    log(n)/n for polynomial-type weights.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    dual._check(label)
    return _certificate(dual, w, label, n_max, cap, eps_class)


def classify_growth(
    dual: GroupDual,
    w: Weight,
    S=None,
    n_max: int = 2048,
    cap: int = 200_000,
    eps_class: float = EPS_CLASS,
) -> GrowthClassification:
    """Evidence-level growth classification over a generating set."""
    S = tuple(S) if S is not None else dual.generators()
    certs = tuple(_certificate(dual, w, s, n_max, cap, eps_class) for s in S)
    for cert in certs:
        if cert.tag == "exponential-witness":
            return GrowthClassification("exponential-witness", cert.label, cert.rho_hat, certs)
    rho = max(cert.rho_hat for cert in certs)
    return GrowthClassification("nonexponential-evidence", None, rho, certs)


# ---------------------------------------------------------------------------
# restriction and quotient weights
# ---------------------------------------------------------------------------

def restrict_weight(w: Weight, branching=Su2TorusBranching, cap: int = 512) -> Weight:
    """Weight on the subgroup dual: infimum of w over labels restricting onto it.

    For recipes nondecreasing in the SU(2) index the infimum is attained at
    the smallest containing label and is exact; otherwise the scan truncates
    at ``cap`` and the result carries an inexact-infimum warning.
    """
    if (
        branching is not Su2TorusBranching
        or not isinstance(w.dual, Su2Dual)
        or isinstance(w.dual, So3Dual)
    ):
        raise UnsupportedBranchingError("only the SU(2) > torus branching is supported")
    sub = branching.subgroup
    exact = w.su2_monotone
    warnings = () if exact else ("inexact-infimum: scan truncated, recipe not certified monotone",)

    def fn(sigma):
        it = branching.containing(sigma)
        if exact:
            return w(next(it))
        best = math.inf
        for lab in it:
            if lab.n > cap:
                break
            best = min(best, w(lab))
        return best

    return Weight(
        sub,
        fn,
        f"restrict({w.descriptor})",
        symmetric=True,
        bounded=w.bounded,
        warnings=warnings,
    )


def quotient_weight(w: Weight, lift=Su2So3Lift) -> Weight:
    """Weight on the quotient dual: w pulled back through the covering map."""
    if lift is not Su2So3Lift or not isinstance(w.dual, Su2Dual) or isinstance(w.dual, So3Dual):
        raise UnsupportedBranchingError("only the SU(2) -> SO(3) quotient is supported")

    return Weight(
        lift.quotient,
        lambda a: w(a),  # SO(3) labels are the even SU(2) labels themselves
        f"quotient({w.descriptor})",
        symmetric=w.symmetric,
        bounded=w.bounded,
        su2_monotone=w.su2_monotone,
    )
