"""Weight-support combinatorics of commuting one-parameter degenerations.

A point of a (C*)^2-representation is modelled by the set of weight pairs
(w, w') of its nonzero coordinates; coefficients are irrelevant to flat
limits, so only the support is stored and every question here is exact
integer arithmetic.

The central phenomenon: limits along the two commuting factors need not
commute, but the two-step limit (first along (1,0), then along (0,1)) equals
the one-step limit along the composed subgroup (k, 1) once k is large, and
the threshold is an explicit maximum of weight-gap ratios.  Hilbert-Mumford
weights are additive through the same threshold.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class WeightedPoint:
    """Nonzero-coordinate weight pairs, optionally tagged for readability."""

    support: tuple[tuple[int, int], ...]
    tags: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.support:
            raise ValueError("support must be nonempty")
        pairs = [tuple(int(x) for x in p) for p in self.support]
        if len(set(pairs)) != len(pairs):
            raise ValueError("weight pairs must be distinct")
        tags = self.tags if self.tags else tuple(f"c{i}" for i in range(len(pairs)))
        if len(tags) != len(pairs):
            raise ValueError("one tag per support entry")
        order = sorted(range(len(pairs)), key=lambda i: pairs[i])
        object.__setattr__(self, "support", tuple(pairs[i] for i in order))
        object.__setattr__(self, "tags", tuple(tags[i] for i in order))

    @classmethod
    def from_dict(cls, obj: dict) -> "WeightedPoint":
        return cls(
            support=tuple(tuple(int(x) for x in p) for p in obj["support"]),
            tags=tuple(obj.get("tags", ())),
        )

    def to_dict(self) -> dict:
        return {"support": [list(p) for p in self.support], "tags": list(self.tags)}


def limit(p: WeightedPoint, direction: tuple[int, int]) -> WeightedPoint:
    """Flat limit along the subgroup with direction (a, b) != (0, 0): keep
    exactly the support entries minimizing a*w + b*w'."""
    a, b = int(direction[0]), int(direction[1])
    if a == 0 and b == 0:
        raise ValueError("direction must be nonzero")
    vals = [a * w + b * wp for w, wp in p.support]
    m = min(vals)
    keep = [i for i, v in enumerate(vals) if v == m]
    return WeightedPoint(
        support=tuple(p.support[i] for i in keep),
        tags=tuple(p.tags[i] for i in keep),
    )


def two_step_limit(p: WeightedPoint) -> WeightedPoint:
    """limit along (1, 0), then along (0, 1)."""
    return limit(limit(p, (1, 0)), (0, 1))


def min_composition_k(p: WeightedPoint) -> int:
    """Smallest k0 >= 1 such that limit(p, (k, 1)) equals the two-step limit
    for every k >= k0.

    With w_min the minimal first weight and w2 the minimal second weight
    among entries attaining w_min, an entry (w, w') with w > w_min stops
    competing once k * (w - w_min) > w2 - w'; the threshold is one more than
    the largest of these integer ratios.
    """
    w_min = min(w for w, _ in p.support)
    w2 = min(wp for w, wp in p.support if w == w_min)
    k0 = 1
    for w, wp in p.support:
        if w > w_min:
            k0 = max(k0, (w2 - wp) // (w - w_min) + 1)
    return k0


@dataclass(frozen=True)
class CompositionCheck:
    equal: bool
    min_k: int
    two_step: WeightedPoint
    composed: WeightedPoint

    def to_dict(self) -> dict:
        return {
            "equal": self.equal,
            "min_k": self.min_k,
            "two_step": self.two_step.to_dict(),
            "composed": self.composed.to_dict(),
        }


def composed_equals_two_step(p: WeightedPoint, k: int) -> CompositionCheck:
    """Compare the two-step limit with the one-step limit along (k, 1) and
    report the minimal k making them agree for all larger k."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    ts = two_step_limit(p)
    comp = limit(p, (k, 1))
    return CompositionCheck(
        equal=ts.support == comp.support,
        min_k=min_composition_k(p),
        two_step=ts,
        composed=comp,
    )


def mu_weight(p: WeightedPoint, direction: tuple[int, int]) -> int:
    """Hilbert-Mumford weight: minus the minimal pairing over the support."""
    a, b = int(direction[0]), int(direction[1])
    if a == 0 and b == 0:
        raise ValueError("direction must be nonzero")
    return -min(a * w + b * wp for w, wp in p.support)


@dataclass(frozen=True)
class MuAdditivity:
    mu_composed: int
    mu_stepwise: int
    residual: int
    mu_on_limit: int

    def to_dict(self) -> dict:
        return {
            "mu_composed": self.mu_composed,
            "mu_stepwise": self.mu_stepwise,
            "residual": self.residual,
            "mu_on_limit": self.mu_on_limit,
        }


def mu_additivity(p: WeightedPoint, k: int) -> MuAdditivity:
    """Additivity of the weight through the composed subgroup (k, 1).

    mu(p, (k,1)) is compared with k * mu(p, (1,0)) + mu(lim_{(1,0)} p, (0,1));
    the residual vanishes exactly when k >= min_composition_k(p), and the
    weight evaluated on the final limit point equals the stepwise sum for
    every k.
    """
    step1 = limit(p, (1, 0))
    stepwise = k * mu_weight(p, (1, 0)) + mu_weight(step1, (0, 1))
    composed = mu_weight(p, (k, 1))
    final = limit(step1, (0, 1))
    return MuAdditivity(
        mu_composed=composed,
        mu_stepwise=stepwise,
        residual=composed - stepwise,
        mu_on_limit=mu_weight(final, (k, 1)),
    )
