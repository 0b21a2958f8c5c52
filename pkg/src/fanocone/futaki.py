"""Futaki and Berman-Ding invariants of product test configurations.

A product configuration is determined by the polarization xi0 together with a
commuting one-parameter direction eta in the co-weight space.  With

    T(eta) = (A(xi0) * eta - A(eta) * xi0) / n,

the Futaki invariant is the directional derivative

    Fut(xi0; eta) = d/deps|_0 vol(xi0 - eps * T(eta)) / vol(xi0)
                  = -<grad vol(xi0), T(eta)> / vol(xi0).

An equivalent route differentiates the normalized volume instead:

    Fut(xi0; eta) = [d/deps|_0 hvol(xi0 - eps * eta)] / (n * A(xi0)^{n-1} * vol(xi0)).

Both are computed and must agree (the identity follows from Euler's relation
for the degree -n homogeneous function vol); the report carries both values.
For product configurations the Ding invariant has no log-canonical-threshold
correction and coincides with the Futaki invariant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateXi
from .linalg import dot, vec_add, vec_scale, vec_sub
from .singularity import ReebVector, ToricConeData, coords_of, gorenstein_vector, log_discrepancy, reeb
from .volume import VolumeForm, build_volume_form, grad_vol, vol

ANALYTIC = "analytic-gradient"
FINITE_DIFFERENCE = "finite-difference"


@dataclass(frozen=True)
class ProductTestConfig:
    """Polarization and commuting vector field direction, with a flag that
    records whether (A(xi0), A(eta)) = (n, 0) holds."""

    xi0: ReebVector
    eta: tuple
    normalized: bool = False


def product_config(data: ToricConeData, xi0, eta) -> ProductTestConfig:
    """Build a configuration, marking it normalized when it already is."""
    x = reeb(xi0)
    e = coords_of(eta)
    if len(e) != data.rank:
        raise ValueError("eta must live in the same co-weight space as xi0")
    a_xi = log_discrepancy(data, x)
    gamma = gorenstein_vector(data)
    a_eta = dot(gamma, e)
    is_norm = a_xi == data.rank and a_eta == 0
    return ProductTestConfig(xi0=x, eta=tuple(e), normalized=bool(is_norm))


def normalize_config(data: ToricConeData, cfg: ProductTestConfig) -> ProductTestConfig:
    """Rescale to (a * xi0, b * xi0 + eta) with A = n on the polarization and
    A = 0 on the direction: a = n / A(xi0), b = -A(eta) / A(xi0).

    Idempotent on configurations that already satisfy the normalization.
    """
    n = data.rank
    a_xi = log_discrepancy(data, cfg.xi0)
    if a_xi <= 0:
        raise DegenerateXi(f"A(xi0) = {a_xi} <= 0")
    gamma = gorenstein_vector(data)
    a_eta = dot(gamma, cfg.eta)
    a = n / a_xi if isinstance(a_xi, Fraction) else float(n) / a_xi
    b = -a_eta / a_xi
    new_xi = vec_scale(a, cfg.xi0.coords)
    new_eta = vec_add(vec_scale(b, cfg.xi0.coords), cfg.eta)
    return ProductTestConfig(xi0=reeb(new_xi), eta=tuple(new_eta), normalized=True)


def t_normalize(data: ToricConeData, xi0, eta) -> tuple:
    """T(eta) = (A(xi0) * eta - A(eta) * xi0) / n; satisfies A(T(eta)) = 0."""
    n = data.rank
    x = coords_of(xi0)
    e = coords_of(eta)
    gamma = gorenstein_vector(data)
    a_xi = dot(gamma, x)
    a_eta = dot(gamma, e)
    num = vec_sub(vec_scale(a_xi, e), vec_scale(a_eta, x))
    if all(isinstance(v, (int, Fraction)) for v in num):
        return tuple(Fraction(v) / n for v in num)
    return tuple(v / n for v in num)


@dataclass(frozen=True)
class FutakiReport:
    fut: float
    ding: float
    t_xi_eta: tuple
    method: str
    fut_hvol_route: float

    def to_dict(self) -> dict:
        return {
            "fut": self.fut,
            "ding": self.ding,
            "t_xi_eta": [float(v) for v in self.t_xi_eta],
            "method": self.method,
            "fut_hvol_route": self.fut_hvol_route,
        }


def _directional_derivative_fd(f, x: tuple[float, ...], d: tuple[float, ...], h: float) -> float:
    xp = tuple(a + h * b for a, b in zip(x, d))
    xm = tuple(a - h * b for a, b in zip(x, d))
    return (f(xp) - f(xm)) / (2 * h)


def futaki(
    data: ToricConeData,
    form: VolumeForm | None = None,
    cfg: ProductTestConfig | None = None,
    *,
    xi0=None,
    eta=None,
    method: str = ANALYTIC,
    consistency_rel_tol: float = 1e-9,
) -> FutakiReport:
    """Futaki invariant of the product configuration, by both routes.

    The primary value is the directional derivative of vol against -T(eta);
    the second route differentiates the normalized volume against -eta and
    rescales.  A RuntimeError is raised when the two disagree beyond
    ``consistency_rel_tol`` relative, which would indicate a broken gradient.
    With ``method='finite-difference'`` the derivative of vol is replaced by
    a central difference with step 1e-5 * |xi0|.
    """
    if form is None:
        form = build_volume_form(data)
    if cfg is None:
        if xi0 is None or eta is None:
            raise ValueError("provide either cfg or (xi0, eta)")
        cfg = product_config(data, xi0, eta)
    n = data.rank
    x = tuple(float(v) for v in cfg.xi0.coords)
    e = tuple(float(v) for v in cfg.eta)
    t_vec = t_normalize(data, cfg.xi0, cfg.eta)
    t_f = tuple(float(v) for v in t_vec)
    v0 = float(vol(form, x))
    a_xi = float(log_discrepancy(data, x))
    gamma = tuple(float(g) for g in gorenstein_vector(data))

    g = grad_vol(form, x)
    fut_analytic = -float(dot(g, t_f)) / v0

    # Second route: d/deps|_0 hvol(xi0 - eps eta) / (n A^{n-1} vol).
    grad_hvol = tuple(
        n * a_xi ** (n - 1) * gamma[k] * v0 + a_xi**n * float(g[k]) for k in range(n)
    )
    d_hvol = -float(dot(grad_hvol, e))
    fut_hvol = d_hvol / (n * a_xi ** (n - 1) * v0)

    scale = max(1.0, abs(fut_analytic), abs(fut_hvol))
    if abs(fut_analytic - fut_hvol) > consistency_rel_tol * scale:
        raise RuntimeError(
            f"futaki routes disagree: {fut_analytic} vs {fut_hvol}"
        )

    if method == FINITE_DIFFERENCE:
        h = 1e-5 * max(abs(v) for v in x)
        d_vol = -_directional_derivative_fd(lambda p: float(vol(form, p)), x, t_f, h)
        fut = d_vol / v0
    elif method == ANALYTIC:
        fut = fut_analytic
    else:
        raise ValueError(f"unknown method {method!r}")

    return FutakiReport(
        fut=fut,
        ding=fut,
        t_xi_eta=t_vec,
        method=method,
        fut_hvol_route=fut_hvol,
    )


def ding_product(
    data: ToricConeData,
    form: VolumeForm | None = None,
    cfg: ProductTestConfig | None = None,
    **kwargs,
) -> float:
    """Berman-Ding invariant of a product configuration.

    The central fiber of a product configuration is the variety itself, so
    the log-canonical-threshold correction term vanishes and the invariant
    equals the Futaki invariant.
    """
    return futaki(data, form, cfg, **kwargs).fut
