"""Parameter sweeps over tau and p.

Any tau > 0 yields a valid bound, so the search itself needs no rigor: it
minimizes the upper endpoint of the certified enclosure with plain
floating-point comparisons, and only the evaluated bounds are certified.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .errors import DomainError, UsageError
from .interval import ONE, Interval, pow_real
from .kernel import PsiParams, kernel_constants
from .mollifier import mollifier_constants
from .norms import AS_PRINTED, CertifiedBound, DomainSpec, ExtensionParams, embedding_constant, extension_bound
from .special import SobolevExponents

DEFAULT_TAU_GRID = tuple(round(0.5 + 0.05 * i, 10) for i in range(591))  # 0.5 .. 30
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def thread_count() -> int:
    raw = os.environ.get("SOBOCERT_THREADS")
    if raw is None or raw == "":
        return min(4, os.cpu_count() or 1)
    try:
        k = int(raw)
    except ValueError as exc:
        raise UsageError(f"SOBOCERT_THREADS must be a positive integer, got {raw!r}") from exc
    if k < 1:
        raise UsageError(f"SOBOCERT_THREADS must be a positive integer, got {raw!r}")
    return k


def _pmap(fn, items: Sequence, threads: Optional[int] = None) -> list:
    # results come back in input order whatever the completion order
    k = thread_count() if threads is None else threads
    if k <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=k) as pool:
        return list(pool.map(fn, items))


@dataclass
class SweepResult:
    axis: str
    points: List[Tuple[float, CertifiedBound]]
    argmin: float
    min_bound: CertifiedBound
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.points:
            raise DomainError("sweep produced no points")

    def to_rows(self) -> list:
        rows = [
            {"param": repr(x), "lo": repr(b.value.lo), "hi": repr(b.value.hi), "branch": b.branch or ""}
            for x, b in self.points
        ]
        return rows

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=["param", "lo", "hi", "branch"], lineterminator="\n")
        w.writeheader()
        for row in self.to_rows():
            w.writerow(row)
        b = self.min_bound
        w.writerow({"param": f"argmin={self.argmin!r}", "lo": repr(b.value.lo), "hi": repr(b.value.hi), "branch": b.branch or ""})
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "axis": self.axis,
            # full provenance is carried once, by min_bound
            "points": [
                {"param": x, "value": b.value.to_dict(), "branch_taken": b.branch} for x, b in self.points
            ],
            "argmin": self.argmin,
            "min_bound": self.min_bound.to_dict(),
            "extra": self.extra,
        }


def _argmin(points) -> int:
    best = 0
    for i, (_, b) in enumerate(points):
        if b.value.hi < points[best][1].value.hi:
            best = i
    return best


def _check_grid(grid: Sequence[float], what: str):
    if len(grid) == 0:
        raise UsageError(f"{what} grid is empty")
    for x0, x1 in zip(grid, grid[1:]):
        if not x0 < x1:
            raise UsageError(f"{what} grid must be strictly increasing")


def _context(e: SobolevExponents, d: DomainSpec, base: ExtensionParams, variant: str):
    kc = kernel_constants(PsiParams(base.c_omega))
    mc = mollifier_constants(d.n)
    gamma = pow_real(Interval(base.sigma), ONE / e.q)

    def at(tau: float) -> CertifiedBound:
        return extension_bound(e, d, base.replace(tau=float(tau)), gamma, kc, mc, variant)

    return at


def sweep_tau(
    e: SobolevExponents,
    d: DomainSpec,
    base: ExtensionParams,
    grid: Sequence[float] = DEFAULT_TAU_GRID,
    variant: str = AS_PRINTED,
    threads: Optional[int] = None,
) -> SweepResult:
    """``A_q(Omega)`` at each ``tau`` of ``grid``; argmin over upper endpoints."""
    _check_grid(grid, "tau")
    if grid[0] <= 0:
        raise UsageError("tau grid must be positive")
    at = _context(e, d, base, variant)
    bounds = _pmap(at, list(grid), threads)
    points = list(zip([float(x) for x in grid], bounds))
    i = _argmin(points)
    return SweepResult("tau", points, points[i][0], points[i][1])


@dataclass
class RefineResult:
    tau: float
    bound: CertifiedBound
    fallback: bool = False

    def __iter__(self):
        yield self.tau
        yield self.bound


def _unimodal(vals: Sequence[float]) -> bool:
    """Strictly decreasing then nondecreasing, with the minimum in the interior."""
    i = min(range(len(vals)), key=vals.__getitem__)
    if i == 0 or i == len(vals) - 1:
        return False
    return all(a >= b for a, b in zip(vals[: i + 1], vals[1 : i + 1])) and all(
        a <= b for a, b in zip(vals[i:], vals[i + 1 :])
    )


def refine_tau(
    e: SobolevExponents,
    d: DomainSpec,
    base: ExtensionParams,
    bracket: Tuple[float, float],
    tol: float = 1e-3,
    variant: str = AS_PRINTED,
    samples: int = 9,
) -> RefineResult:
    """Golden-section search on the upper endpoint of ``A_q(Omega)`` inside ``bracket``.

    The bracket is first sampled at ``samples`` points; if those values are not
    decreasing-then-increasing the best sample is returned with
    ``fallback=True``.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not (lo > 0 and hi >= lo):
        raise UsageError(f"invalid tau bracket {bracket!r}")
    if not tol > 0:
        raise UsageError("tol must be positive")
    at = _context(e, d, base, variant)
    if lo == hi:
        return RefineResult(lo, at(lo))
    xs = [lo + (hi - lo) * i / (samples - 1) for i in range(samples)]
    xs[-1] = hi
    bs = [at(x) for x in xs]
    vals = [b.value.hi for b in bs]
    i = min(range(len(vals)), key=vals.__getitem__)
    if not _unimodal(vals):
        return RefineResult(xs[i], bs[i], fallback=True)
    a, b = xs[i - 1], xs[i + 1]
    cache = {}

    def f(x):
        if x not in cache:
            cache[x] = at(x)
        return cache[x].value.hi

    c = b - _INV_PHI * (b - a)
    dd = a + _INV_PHI * (b - a)
    while b - a > tol:
        if f(c) <= f(dd):
            b, dd = dd, c
            c = b - _INV_PHI * (b - a)
        else:
            a, c = c, dd
            dd = a + _INV_PHI * (b - a)
    cands = [(f(x), x) for x in (a, c, dd, b)]
    cands.append((vals[i], xs[i]))
    best_v, best_x = min(cands)
    bound = cache[best_x] if best_x in cache else bs[i]
    return RefineResult(best_x, bound)


def sweep_p(
    d: DomainSpec,
    base: ExtensionParams,
    p_grid: Sequence[float],
    tau_grid: Sequence[float] = DEFAULT_TAU_GRID,
    variant: str = AS_PRINTED,
    tol: float = 1e-3,
    threads: Optional[int] = None,
) -> SweepResult:
    """For each ``p``: tau sweep, golden-section refinement, then ``C_p`` at the refined tau."""
    _check_grid(p_grid, "p")
    kc = kernel_constants(PsiParams(base.c_omega))
    mc = mollifier_constants(d.n)
    points = []
    taus = {}
    for p in p_grid:
        e = SobolevExponents(d.n, p)
        sw = sweep_tau(e, d, base, tau_grid, variant, threads)
        j = next(k for k, (x, _) in enumerate(sw.points) if x == sw.argmin)
        lo = sw.points[max(j - 1, 0)][0]
        hi = sw.points[min(j + 1, len(sw.points) - 1)][0]
        r = refine_tau(e, d, base, (lo, hi), tol, variant)
        tau = r.tau if r.bound.value.hi <= sw.min_bound.value.hi else sw.argmin
        cp = embedding_constant(e, d, base.replace(tau=tau), kc, mc, variant)
        points.append((float(p), cp))
        taus[repr(float(p))] = tau
    i = _argmin(points)
    return SweepResult("p", points, points[i][0], points[i][1], extra={"tau_star": taus})


__all__ = ["DEFAULT_TAU_GRID", "SweepResult", "RefineResult", "sweep_tau", "refine_tau", "sweep_p", "thread_count"]
