"""Built-in domains."""

from __future__ import annotations

from .errors import UsageError
from .interval import PI, Interval
from .norms import DomainSpec


def _example_b_eps() -> Interval:
    # 2 sin(pi/8) / (1 + sin(pi/8)), set by the smallest boundary semicircle
    s = (PI / 8.0).sin()
    return s * 2.0 / (s + 1.0)


CATALOG = {
    # plate with holes, cover of 8 sets by reflection
    "exampleA": DomainSpec(n=2, M=1.0, N=2, eps=Interval(0.25), name="exampleA"),
    # boundary of five semicircles and a segment
    "exampleB": DomainSpec(n=2, M=1.0, N=2, eps=_example_b_eps(), name="exampleB"),
}


def lookup(key: str) -> DomainSpec:
    try:
        return CATALOG[key]
    except KeyError:
        raise UsageError(f"unknown domain {key!r}; known: {', '.join(sorted(CATALOG))}") from None


def listing() -> list:
    return [CATALOG[k].to_dict() for k in sorted(CATALOG)]


__all__ = ["CATALOG", "lookup", "listing"]
