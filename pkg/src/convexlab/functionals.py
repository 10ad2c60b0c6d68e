"""Scalar functionals and inequality checks on convex bodies.

Covers the log-Minkowski integrals and their double inequality, the
Gardner-Hug-Weil entropy inequality, the Hoelder-limit identity, polar
volumes and volume products, affine surface area, the reverse Hoelder
inequality, the affine-surface-area lower bound on the volume product,
mean width and the SL(n) mean-width functional.
"""

from __future__ import annotations

import math

import numpy as np

from . import bodies, measures
from .bodies import ConvexBody, Ellipsoid, PolytopeV, support_values
from .errors import InvalidArgumentError, OriginNotInteriorError
from .records import EXACT_TOL, ChainRecord, InequalityRecord, quadrature_tolerance
from .sphere import SphereQuadrature, default_quadrature, unit_ball_volume

RATIO_FLOOR = 1e-12


def _quad(body: ConvexBody, quadrature: SphereQuadrature | None) -> SphereQuadrature:
    return quadrature if quadrature is not None else default_quadrature(body.dim)


def _is_exact(*bs: ConvexBody) -> bool:
    return all(isinstance(b, (PolytopeV, Ellipsoid)) for b in bs)


def _support_ratio(measure, K: ConvexBody, L: ConvexBody) -> np.ndarray:
    dirs = (
        measure.directions
        if isinstance(measure, measures.DiscreteSphereMeasure)
        else measure.quadrature.nodes
    )
    hk = support_values(K, dirs)
    hl = support_values(L, dirs)
    ratio = hk / hl
    if np.min(ratio) <= RATIO_FLOOR:
        raise OriginNotInteriorError(
            f"support ratio {np.min(ratio):.3e} below floor; origin not interior"
        )
    return ratio


# ---------------------------------------------------------------------------
# polar volume and volume product


def polar_volume(K: ConvexBody, quadrature: SphereQuadrature | None = None) -> float:
    """Vol(K polar): exact for polytopes and centered ellipsoids, otherwise
    the radial formula (1/n) * integral h_K^{-n} dmu."""
    if isinstance(K, PolytopeV):
        return bodies.volume(bodies.polar(K))
    if isinstance(K, Ellipsoid) and K.is_centered:
        return bodies.volume(bodies.polar(K))
    q = _quad(K, quadrature)
    h = support_values(K, q.nodes)
    return float(np.dot(q.weights, h ** (-K.dim)) / K.dim)


def volume_product(K: ConvexBody, quadrature: SphereQuadrature | None = None) -> float:
    """Mahler volume Vol(K) * Vol(K polar)."""
    return bodies.volume(K, quadrature) * polar_volume(K, quadrature)


# ---------------------------------------------------------------------------
# log-Minkowski integrals and the double inequality


def log_minkowski_L(
    K: ConvexBody, L: ConvexBody, quadrature: SphereQuadrature | None = None
) -> float:
    """integral ln(h_K / h_L) against the normalized cone-volume measure of L."""
    m = measures.cone_volume_measure(L, quadrature)
    ratio = _support_ratio(m, K, L)
    return measures.integrate_measure(m, np.log(ratio)) / m.total


def log_minkowski_1(
    K: ConvexBody, L: ConvexBody, quadrature: SphereQuadrature | None = None
) -> float:
    """integral ln(h_K / h_L) against the normalized mixed-volume measure dv1."""
    m = measures.mixed_volume_measure(L, K, quadrature)
    ratio = _support_ratio(m, K, L)
    return measures.integrate_measure(m, np.log(ratio)) / m.total


def _chain_terms(K, L, quadrature):
    m_cone = measures.cone_volume_measure(L, quadrature)
    ratio = _support_ratio(m_cone, K, L)
    log_ratio = np.log(ratio)
    vol_l = m_cone.total
    v1 = measures.integrate_measure(m_cone, ratio)  # integral (hK/hL) dv_L = V1(L, K)
    lower = measures.integrate_measure(m_cone, log_ratio) / vol_l
    upper = measures.integrate_measure(m_cone, ratio * log_ratio) / v1
    middle = math.log(v1 / vol_l)
    return lower, middle, upper, vol_l, v1


def entropy_chain(
    K: ConvexBody, L: ConvexBody, quadrature: SphereQuadrature | None = None
) -> ChainRecord:
    """Gibbs double inequality:
    integral ln(hK/hL) dvbar_L <= ln(V1/VolL) <= integral ln(hK/hL) dvbar_1."""
    lower, middle, upper, _, _ = _chain_terms(K, L, quadrature)
    tol = EXACT_TOL if _is_exact(K, L) and isinstance(L, PolytopeV) else quadrature_tolerance(
        max(abs(lower), abs(middle), abs(upper), 1.0)
    )
    return ChainRecord(
        name="entropy-chain",
        dim=K.dim,
        lower=lower,
        middle=middle,
        upper=upper,
        tolerance=tol,
        body=bodies.describe(K),
        body2=bodies.describe(L),
    )


def check_prop11(
    K: ConvexBody, L: ConvexBody, quadrature: SphereQuadrature | None = None
) -> tuple[ChainRecord, InequalityRecord]:
    """Modified log-Brunn-Minkowski double inequality:
    integral ln(hK/hL) dvbar_1 >= ln(V1/VolL) >= (1/n) ln(VolK/VolL)."""
    n = K.dim
    lower, middle, upper, vol_l, _ = _chain_terms(K, L, quadrature)
    vol_k = bodies.volume(K, quadrature)
    mink = math.log(vol_k / vol_l) / n
    exact = _is_exact(K, L) and isinstance(L, PolytopeV)
    tol = EXACT_TOL if exact else quadrature_tolerance(max(abs(middle), abs(mink), 1.0))
    first = ChainRecord(
        name="prop-log-minkowski",
        dim=n,
        lower=mink,
        middle=middle,
        upper=upper,
        tolerance=tol,
        body=bodies.describe(K),
        body2=bodies.describe(L),
    )
    second = InequalityRecord(
        name="prop-log-minkowski-vs-volume-ratio",
        dim=n,
        lhs=upper,
        rhs=mink,
        tolerance=tol,
        body=bodies.describe(K),
        body2=bodies.describe(L),
    )
    return first, second


def gardner_functional(
    K: ConvexBody,
    L: ConvexBody,
    variant: str = "gardner2",
    quadrature: SphereQuadrature | None = None,
) -> InequalityRecord:
    """Entropy inequality integral (hK/hL) ln(hK/hL) dvbar_L >= rhs.

    variant "gardner2": rhs = (V1/VolL) ln(V1/VolL), no containment needed.
    variant "gardner":  rhs = (1/n) (VolK/VolL)^{1/n} ln(VolK/VolL), requires L inside K.
    """
    if variant not in ("gardner", "gardner2"):
        raise InvalidArgumentError(f"unknown variant {variant!r}")
    n = K.dim
    m_cone = measures.cone_volume_measure(L, quadrature)
    ratio = _support_ratio(m_cone, K, L)
    if variant == "gardner" and np.min(ratio) < 1.0 - 1e-9:
        raise InvalidArgumentError(
            f"variant 'gardner' requires L inside K; min h_K/h_L = {np.min(ratio):.6f}"
        )
    vol_l = m_cone.total
    lhs = measures.integrate_measure(m_cone, ratio * np.log(ratio)) / vol_l
    if variant == "gardner2":
        v1 = measures.integrate_measure(m_cone, ratio)
        r = v1 / vol_l
        rhs = r * math.log(r)
    else:
        vol_k = bodies.volume(K, quadrature)
        r = vol_k / vol_l
        rhs = (r ** (1.0 / n)) * math.log(r) / n
    exact = _is_exact(K, L) and isinstance(L, PolytopeV)
    tol = EXACT_TOL if exact else quadrature_tolerance(max(abs(lhs), abs(rhs), 1.0))
    return InequalityRecord(
        name=f"entropy-{variant}",
        dim=n,
        lhs=lhs,
        rhs=rhs,
        tolerance=tol,
        body=bodies.describe(K),
        body2=bodies.describe(L),
    )


def holder_limit(
    K: ConvexBody, L: ConvexBody, p: float, quadrature: SphereQuadrature | None = None
) -> tuple[float, float]:
    """Exp/limit identity behind the first double inequality.

    approx  = [(1/V1) integral (hK/hL)^{p/(p+n)} dv_L]^{p+n}
    target  = exp[-(n/V1) integral (hK/hL) ln(hK/hL) dv_L]
    |approx - target| -> 0 at rate O(1/p).
    """
    if p <= 0:
        raise InvalidArgumentError(f"p must be positive, got {p}")
    n = K.dim
    m_cone = measures.cone_volume_measure(L, quadrature)
    ratio = _support_ratio(m_cone, K, L)
    v1 = measures.integrate_measure(m_cone, ratio)
    i_p = measures.integrate_measure(m_cone, ratio ** (p / (p + n))) / v1
    approx = math.exp((p + n) * math.log(i_p))
    ent = measures.integrate_measure(m_cone, ratio * np.log(ratio))
    target = math.exp(-n * ent / v1)
    return approx, target


# ---------------------------------------------------------------------------
# affine surface area and its inequalities


def affine_surface_area(L: ConvexBody, quadrature: SphereQuadrature | None = None) -> float:
    """Omega(L) = integral f_L^{n/(n+1)} dmu.

    Rejects polytopes (their value 0 would make every downstream bound
    vacuous) via UnsupportedRepresentationError.
    """
    q = _quad(L, quadrature)
    f = measures.curvature_density(L, q)
    n = L.dim
    return float(np.dot(q.weights, f ** (n / (n + 1.0))))


def reverse_holder_check(
    K: ConvexBody, L: ConvexBody, quadrature: SphereQuadrature | None = None
) -> InequalityRecord:
    """integral h_K f_L dmu >= (integral h_K^{-n} dmu)^{-1/n} * Omega(L)^{(n+1)/n}."""
    q = _quad(K, quadrature)
    n = K.dim
    f = measures.curvature_density(L, q)
    h = support_values(K, q.nodes)
    lhs = float(np.dot(q.weights, h * f))
    neg_moment = float(np.dot(q.weights, h ** (-n)))
    omega = float(np.dot(q.weights, f ** (n / (n + 1.0))))
    rhs = neg_moment ** (-1.0 / n) * omega ** ((n + 1.0) / n)
    return InequalityRecord(
        name="reverse-holder",
        dim=n,
        lhs=lhs,
        rhs=rhs,
        tolerance=quadrature_tolerance(rhs),
        body=bodies.describe(K),
        body2=bodies.describe(L),
        resolution=q.resolution,
    )


def prop21_bound(
    K: ConvexBody, L: ConvexBody, quadrature: SphereQuadrature | None = None
) -> InequalityRecord:
    """Affine-surface-area lower bound on the volume product:

    Vol(K) Vol(K*) >= (1/n^{n+1}) Omega(L)^{n+1} / Vol(L)^{n-1}
                      * (VolK/VolL) / exp(n * integral ln(hK/hL) dvbar_1)
    """
    n = K.dim
    omega = affine_surface_area(L, quadrature)
    vol_l = bodies.volume(L, quadrature)
    vol_k = bodies.volume(K, quadrature)
    lm1 = log_minkowski_1(K, L, quadrature)
    lhs = volume_product(K, quadrature)
    rhs = (
        (omega ** (n + 1.0) / vol_l ** (n - 1.0))
        / n ** (n + 1.0)
        * (vol_k / vol_l)
        / math.exp(n * lm1)
    )
    return InequalityRecord(
        name="volume-product-asa-bound",
        dim=n,
        lhs=lhs,
        rhs=rhs,
        tolerance=quadrature_tolerance(rhs),
        body=bodies.describe(K),
        body2=bodies.describe(L),
    )


def corollary22_bound(
    K: ConvexBody, quadrature: SphereQuadrature | None = None
) -> tuple[InequalityRecord, InequalityRecord]:
    """Self-referential special case plus the affine isoperimetric squeeze:

    Vol(K) Vol(K*) >= (1/n^{n+1}) Omega(K)^{n+1} / Vol(K)^{n-1}
    Omega(K)^{n+1} / Vol(K)^{n-1} <= n^{n+1} omega_n^2
    """
    n = K.dim
    omega = affine_surface_area(K, quadrature)
    vol = bodies.volume(K, quadrature)
    ratio = omega ** (n + 1.0) / vol ** (n - 1.0)
    lhs = volume_product(K, quadrature)
    rhs = ratio / n ** (n + 1.0)
    first = InequalityRecord(
        name="volume-product-asa-self-bound",
        dim=n,
        lhs=lhs,
        rhs=rhs,
        tolerance=quadrature_tolerance(rhs),
        body=bodies.describe(K),
    )
    iso_rhs = ratio
    iso_lhs = n ** (n + 1.0) * unit_ball_volume(n) ** 2
    second = InequalityRecord(
        name="affine-isoperimetric",
        dim=n,
        lhs=iso_lhs,
        rhs=iso_rhs,
        tolerance=quadrature_tolerance(iso_lhs),
        body=bodies.describe(K),
    )
    return first, second


# ---------------------------------------------------------------------------
# mean width and the SL(n) functional


def mean_width_w(K: ConvexBody, quadrature: SphereQuadrature | None = None) -> float:
    """w(K) = integral h_K dmu (unnormalized; twice the classical mean width up to
    the measure convention)."""
    q = _quad(K, quadrature)
    return float(np.dot(q.weights, support_values(K, q.nodes)))


def second_moment(K: ConvexBody, quadrature: SphereQuadrature | None = None) -> float:
    """integral h_K^2 dmu."""
    q = _quad(K, quadrature)
    h = support_values(K, q.nodes)
    return float(np.dot(q.weights, h * h))


def M_functional(K: ConvexBody, T=None, quadrature: SphereQuadrature | None = None) -> float:
    """Vol(K) * w(TK)^n / (integral h_{TK}^2 dmu)^n for T in SL(n).

    Degree zero in the normalization of the spherical measure.
    """
    n = K.dim
    if T is None:
        T = np.eye(n)
    T = np.asarray(T, dtype=float)
    det = float(np.linalg.det(T))
    if abs(det - 1.0) > 1e-9:
        raise InvalidArgumentError(f"T must have determinant 1, got det = {det}")
    q = _quad(K, quadrature)
    TK = bodies.linear_transform(K, T) if not np.array_equal(T, np.eye(n)) else K
    h = support_values(TK, q.nodes)
    w = float(np.dot(q.weights, h))
    m2 = float(np.dot(q.weights, h * h))
    vol = bodies.volume(K, q if not isinstance(K, (PolytopeV, Ellipsoid)) else None)
    return vol * math.exp(n * (math.log(w) - math.log(m2)))
