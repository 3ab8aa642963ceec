"""Extension operator norms and the resulting embedding constants.

All formulas take the Lebesgue exponent as an Interval ``p``; the embedding
pipeline feeds it ``q = np/(n+p)`` of the target exponent.  On a special
Lipschitz domain with Lipschitz bound ``M``:

    a  = (1+tau) (1+xi)^2 (1-xi)^-2 sqrt(1+M^2)
    Q  = p a / ((p+1) tau^(1+1/p))
    B  = A1 P (1+xi)^2 (1+tau) sqrt(1+M^2)
    A  = ((A0 Q)^p + 1)^(1/p)
    A' = max{2^(p-1) (A0 Q)^p + 1, [(n-1) 2^(p-1) (BQ)^p + ((A0+B) Q)^p + 1]^(1/p)}

For a minimally smooth domain with overlap number ``N`` and cover parameter
``eps`` the norm bound is ``N A' + 1`` when ``R <= gamma`` and
``b_eps (6NA + NA' + 3) n^(1/p) / gamma`` otherwise, where
``R = b_eps (6NA + NA' + 3) n^(1/p) / (NA' + 1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import ContractError, DomainError
from .interval import ONE, Interval, hull, interval_max, pow_real
from .kernel import DEFAULT_C_OMEGA, KernelConstants, PsiParams, kernel_constants
from .mollifier import MollifierConstants, compute_b_eps, mollifier_constants
from .special import SobolevExponents, talenti_constant

AS_PRINTED = "as-printed"
EXPONENTIATED = "exponentiated"
VARIANTS = (AS_PRINTED, EXPONENTIATED)

BRANCH_FIRST = "R<=gamma"
BRANCH_SECOND = "R>gamma"
BRANCH_HULL = "overlap"

DEFAULT_DELTA = 1e-12


def _as_interval(x) -> Interval:
    return x if isinstance(x, Interval) else Interval(x)


def _interval_or_none(d):
    return None if d is None else Interval.from_dict(d)


@dataclass(frozen=True)
class DomainSpec:
    """A domain with minimally smooth boundary, described by its cover data.

    ``eps`` is kept as an Interval so closed-form values (such as
    ``2 sin(pi/8) / (1 + sin(pi/8))``) never lose certification.
    """

    n: int
    M: float
    N: int
    eps: Interval
    measure: Optional[Interval] = None
    name: str = ""

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 2:
            raise DomainError(f"n must be an integer >= 2, got {self.n!r}")
        if not isinstance(self.N, int) or isinstance(self.N, bool) or self.N < 1:
            raise DomainError(f"overlap number N must be an integer >= 1, got {self.N!r}")
        if not (math.isfinite(self.M) and self.M >= 0):
            raise DomainError(f"Lipschitz bound M must be finite and >= 0, got {self.M!r}")
        object.__setattr__(self, "M", float(self.M))
        object.__setattr__(self, "eps", _as_interval(self.eps))
        if not self.eps.lo > 0:
            raise DomainError(f"eps must be positive, got {self.eps}")
        if self.measure is not None:
            object.__setattr__(self, "measure", _as_interval(self.measure))
            if not self.measure.lo > 0:
                raise DomainError(f"domain measure must be positive, got {self.measure}")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "M": self.M,
            "N": self.N,
            "eps": self.eps.to_dict(),
            "measure": None if self.measure is None else self.measure.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DomainSpec":
        return cls(
            n=d["n"],
            M=d["M"],
            N=d["N"],
            eps=Interval.from_dict(d["eps"]),
            measure=_interval_or_none(d.get("measure")),
            name=d.get("name", ""),
        )


@dataclass(frozen=True)
class ExtensionParams:
    """Free parameters of the extension construction.

    ``delta`` is a relative margin added to the upper end of the norm bound when
    ``xi = 0`` (the formulas are only valid for ``xi > 0`` and decrease to
    their ``xi = 0`` value).
    """

    tau: float
    xi: float = 0.0
    delta: float = DEFAULT_DELTA
    sigma: float = 1.0
    c_omega: float = DEFAULT_C_OMEGA

    def __post_init__(self):
        for name in ("tau", "xi", "delta", "sigma", "c_omega"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise DomainError(f"{name} must be a finite real, got {v!r}")
            object.__setattr__(self, name, float(v))
        if not self.tau > 0:
            raise DomainError(f"tau must be positive, got {self.tau}")
        if not 0 <= self.xi < 1:
            raise DomainError(f"xi must lie in [0, 1), got {self.xi}")
        if not self.delta >= 0:
            raise DomainError(f"delta must be >= 0, got {self.delta}")
        if not self.sigma > 0:
            raise DomainError(f"sigma must be positive, got {self.sigma}")
        if not self.c_omega > 0:
            raise DomainError(f"C_omega must be positive, got {self.c_omega}")

    def replace(self, **kw) -> "ExtensionParams":
        d = self.to_dict()
        d.update(kw)
        return ExtensionParams(**d)

    def to_dict(self) -> dict:
        return {"tau": self.tau, "xi": self.xi, "delta": self.delta, "sigma": self.sigma, "c_omega": self.c_omega}

    @classmethod
    def from_dict(cls, d: dict) -> "ExtensionParams":
        return cls(**d)


@dataclass(frozen=True)
class LipschitzNorms:
    Q: Interval
    B: Interval
    a: Interval
    A: Interval
    Aprime: Interval

    def to_dict(self) -> dict:
        return {k: getattr(self, k).to_dict() for k in ("Q", "B", "a", "A", "Aprime")}


@dataclass(frozen=True)
class NormBound:
    """Norm bound for a minimally smooth domain with the branch that produced it."""

    value: Interval
    branch: str
    R: Interval


@dataclass
class CertifiedBound:
    kind: str
    value: Interval
    inputs: dict = field(default_factory=dict)
    branch: Optional[str] = None
    formula_variant: str = AS_PRINTED
    wall_ms: Optional[float] = None

    KINDS = ("A_q", "C_p", "C_p_prime", "T_p")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise DomainError(f"unknown bound kind {self.kind!r}")
        if not self.value.lo > 0:
            raise DomainError(f"{self.kind} enclosure must be positive, got {self.value}")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "value": self.value.to_dict(),
            "inputs": self.inputs,
            "branch_taken": self.branch,
            "formula_variant": self.formula_variant,
            "wall_ms": self.wall_ms,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CertifiedBound":
        return cls(
            kind=d["kind"],
            value=Interval.from_dict(d["value"]),
            inputs=d.get("inputs", {}),
            branch=d.get("branch_taken"),
            formula_variant=d.get("formula_variant", AS_PRINTED),
            wall_ms=d.get("wall_ms"),
        )


def lp_norm_constant(A0: Interval, Q: Interval, p: Interval) -> Interval:
    """``A = ((A0 Q)^p + 1)^(1/p)``."""
    return pow_real(pow_real(A0 * Q, p) + 1.0, ONE / p)


def lipschitz_norms(
    p: Interval,
    params: ExtensionParams,
    M: float,
    n: int,
    kc: KernelConstants,
    P: Interval,
    variant: str = AS_PRINTED,
) -> LipschitzNorms:
    """Norm constants of the extension on a special Lipschitz domain."""
    p = _as_interval(p)
    if not p.lo > 1:
        raise DomainError(f"exponent must exceed 1, got {p}")
    if variant not in VARIANTS:
        raise DomainError(f"unknown formula variant {variant!r}")
    if not params.tau > 0:
        raise DomainError("tau must be positive")
    tau = Interval(params.tau)
    xi = Interval(params.xi)
    root = (Interval(M).sqr() + 1.0).sqrt()
    xi_ratio = ((xi + 1.0) / (ONE - xi)).sqr()
    a = (tau + 1.0) * xi_ratio * root
    Q = p * a / ((p + 1.0) * pow_real(tau, ONE + ONE / p))
    B = kc.A1 * P * (xi + 1.0).sqr() * (tau + 1.0) * root
    A = lp_norm_constant(kc.A0, Q, p)
    two_pm1 = pow_real(Interval(2), p - 1.0)
    first = two_pm1 * pow_real(kc.A0 * Q, p) + 1.0
    if variant == EXPONENTIATED:
        first = pow_real(first, ONE / p)
    inner = Interval(n - 1) * two_pm1 * pow_real(B * Q, p) + pow_real((kc.A0 + B) * Q, p) + 1.0
    second = pow_real(inner, ONE / p)
    return LipschitzNorms(Q=Q, B=B, a=a, A=A, Aprime=interval_max(first, second))


def minimally_smooth_norm(
    p: Interval,
    d: DomainSpec,
    params: ExtensionParams,
    gamma: Interval,
    lip: LipschitzNorms,
    b_eps: Interval,
) -> NormBound:
    """Norm bound of the extension operator on a minimally smooth domain."""
    p = _as_interval(p)
    gamma = _as_interval(gamma)
    if not gamma.lo > 0:
        raise DomainError(f"gamma must be positive, got {gamma}")
    N = Interval(d.N)
    NA1 = N * lip.Aprime + 1.0
    top = b_eps * (N * lip.A * 6.0 + N * lip.Aprime + 3.0) * pow_real(Interval(d.n), ONE / p)
    R = top / NA1
    if R.hi <= gamma.lo:
        value, branch = NA1, BRANCH_FIRST
    elif R.lo > gamma.hi:
        value, branch = top / gamma, BRANCH_SECOND
    else:
        value, branch = hull(NA1, top / gamma), BRANCH_HULL
    if params.xi == 0.0 and params.delta > 0.0:
        # the formulas hold for xi > 0 and decrease to their xi = 0 value
        value = Interval._raw(value.lo, (Interval(value.hi) * (1.0 + params.delta)).hi)
    return NormBound(value=value, branch=branch, R=R)


def _provenance(e: SobolevExponents, d: DomainSpec, params: ExtensionParams, kc, mc, variant, gamma) -> dict:
    return {
        "exponents": e.to_dict(),
        "domain": d.to_dict(),
        "params": params.to_dict(),
        "kernel": kc.to_dict(),
        "mollifier": mc.to_dict(),
        "formula_variant": variant,
        "gamma": gamma.to_dict(),
    }


def extension_bound(
    e: SobolevExponents,
    d: DomainSpec,
    params: ExtensionParams,
    gamma: Interval,
    kc: Optional[KernelConstants] = None,
    mc: Optional[MollifierConstants] = None,
    variant: str = AS_PRINTED,
) -> CertifiedBound:
    """``A_q(Omega)``: the extension norm bound evaluated at ``q = np/(n+p)``."""
    if e.n != d.n:
        raise DomainError(f"dimension mismatch: exponents n={e.n}, domain n={d.n}")
    kc = kc if kc is not None else kernel_constants(PsiParams(params.c_omega))
    mc = mc if mc is not None else mollifier_constants(d.n)
    if mc.n != d.n:
        raise DomainError("mollifier constants computed for another dimension")
    if kc.c_omega != params.c_omega:
        raise DomainError("kernel constants computed for another C_omega")
    q = e.q
    lip = lipschitz_norms(q, params, d.M, d.n, kc, mc.P, variant)
    b_eps = Interval(compute_b_eps(d.n, d.eps, mc.I1).hi)
    nb = minimally_smooth_norm(q, d, params, gamma, lip, b_eps)
    inputs = _provenance(e, d, params, kc, mc, variant, gamma)
    inputs["R"] = nb.R.to_dict()
    return CertifiedBound("A_q", nb.value, inputs, nb.branch, variant)


def talenti_bound(e: SobolevExponents) -> CertifiedBound:
    return CertifiedBound("T_p", talenti_constant(e), {"exponents": e.to_dict()}, None, AS_PRINTED)


def embedding_constant(
    e: SobolevExponents,
    d: DomainSpec,
    params: ExtensionParams,
    kc: Optional[KernelConstants] = None,
    mc: Optional[MollifierConstants] = None,
    variant: str = AS_PRINTED,
) -> CertifiedBound:
    """``C_p = 2^((q-1)/q) T_p A_q`` with ``gamma = sigma^(1/q)``."""
    q = e.q
    gamma = pow_real(Interval(params.sigma), ONE / q)
    aq = extension_bound(e, d, params, gamma, kc, mc, variant)
    tp = talenti_constant(e)
    value = pow_real(Interval(2), (q - 1.0) / q) * tp * aq.value
    inputs = dict(aq.inputs)
    inputs["A_q"] = aq.value.to_dict()
    inputs["T_p"] = tp.to_dict()
    return CertifiedBound("C_p", value, inputs, aq.branch, variant)


def embedding_constant_h1(
    e: SobolevExponents,
    d: DomainSpec,
    params: ExtensionParams,
    kc: Optional[KernelConstants] = None,
    mc: Optional[MollifierConstants] = None,
    variant: str = AS_PRINTED,
) -> CertifiedBound:
    """``C'_p = sqrt(2) |Omega|^((2-q)/(2q)) T_p A_q`` with ``gamma = sigma^(1/2)``; needs ``q < 2``."""
    if d.measure is None:
        raise ContractError("the H^1 embedding constant needs the domain measure")
    q = e.q
    if not q.hi < 2.0:
        raise DomainError(f"the H^1 embedding constant needs q < 2, got q={q}")
    gamma = Interval(params.sigma).sqrt()
    aq = extension_bound(e, d, params, gamma, kc, mc, variant)
    tp = talenti_constant(e)
    expo = (Interval(2) - q) / (q * 2.0)
    value = Interval(2).sqrt() * pow_real(d.measure, expo) * tp * aq.value
    inputs = dict(aq.inputs)
    inputs["A_q"] = aq.value.to_dict()
    inputs["T_p"] = tp.to_dict()
    return CertifiedBound("C_p_prime", value, inputs, aq.branch, variant)


__all__ = [
    "AS_PRINTED",
    "EXPONENTIATED",
    "DomainSpec",
    "ExtensionParams",
    "LipschitzNorms",
    "NormBound",
    "CertifiedBound",
    "lp_norm_constant",
    "lipschitz_norms",
    "minimally_smooth_norm",
    "extension_bound",
    "talenti_bound",
    "embedding_constant",
    "embedding_constant_h1",
]
