"""fence - Certified Error Bound.

The extremal quantity u_nu(xi, delta), the unit-ball constants V_N and
omega_{N-1}, and the lattice-count error bound omega_{N-1} * u_nu(R, delta)
with 2nu + 2 = N.

Example:
    >>> from ballpark import fence
    >>> params = fence.BoundParams(dim_n=3, delta=0.5, radius=1.0)
    >>> value = fence.u_nu(params)
    >>> value.bound          # 4 pi * 2 / (1 - 4/pi^2)

Classes:
    BoundParams: Dimension, delta and radius (the order is derived).
    BoundValue: u_nu, the two constants, the bound and its denominator.

Functions:
    volume_const: V_N = pi^(N/2) / Gamma(N/2 + 1).
    surface_const: omega_{N-1} = 2 pi^(N/2) / Gamma(N/2).
    u_nu: Full bound for BoundParams.
    u_nu_general: u_nu(xi, delta) for any order.
    u_nu_bracket_route: Same value through the raw bracket denominator.
    u_nu_closed_form_n3: Elementary N = 3 formula.
    u_nu_at_zero: Value at xi = 0 (not the limit xi -> 0+).
    equality_case: Whether J_nu J_{nu+1} vanishes at pi delta xi.
    theorem_window: V_N R^N -/+ omega_{N-1} u_nu(R, delta).

u_nu is even in xi; only xi > 0 is accepted here.
"""

import logging
import math
from dataclasses import dataclass, field

from .mishaps import DomainError, PositivityError
from .ripples import BesselOrder, bessel_pair, bracket, lanczos_gamma, tail_integral

logger = logging.getLogger(__name__)


def _check_dim(dim_n: int) -> None:
    if dim_n < 1:
        raise DomainError(f"dimension must be at least 1, got {dim_n}")


def _check_positive(value: float, name: str) -> None:
    if math.isnan(value) or value <= 0:
        raise DomainError(f"{name} must be > 0, got {value}")


def volume_const(dim_n: int) -> float:
    """Volume of the unit ball in R^N."""
    _check_dim(dim_n)
    return math.pi ** (dim_n / 2) / lanczos_gamma(dim_n / 2 + 1)


def surface_const(dim_n: int) -> float:
    """Surface area of the unit sphere in R^N (two points when N = 1)."""
    _check_dim(dim_n)
    return 2.0 * math.pi ** (dim_n / 2) / lanczos_gamma(dim_n / 2)


@dataclass(frozen=True)
class BoundParams:
    """Inputs to the lattice-count bound.

    Attributes:
        dim_n: Lattice rank N
        delta: Type parameter, must satisfy |A| <= 1/delta for the theorem
        radius: Ball radius R (plays the role of xi)
        order: Derived order nu with 2nu + 2 = N
    """
    dim_n: int
    delta: float
    radius: float
    order: BesselOrder = field(init=False)

    def __post_init__(self):
        _check_dim(self.dim_n)
        _check_positive(self.delta, "delta")
        _check_positive(self.radius, "radius")
        object.__setattr__(self, "order", BesselOrder.from_dim(self.dim_n))


@dataclass(frozen=True)
class BoundValue:
    """Evaluated bound.

    Attributes:
        u_value: u_nu(R, delta)
        surface_const: omega_{N-1}
        volume_const: V_N
        bound: surface_const * u_value
        denominator: 1 - (pi/2)(N-1) * tail integral at pi delta R
    """
    u_value: float
    surface_const: float
    volume_const: float
    bound: float
    denominator: float

    def to_dict(self) -> dict:
        return {
            "u_value": self.u_value,
            "surface_const": self.surface_const,
            "volume_const": self.volume_const,
            "bound": self.bound,
            "denominator": self.denominator,
        }


def _denominator(order: BesselOrder, xi: float, delta: float) -> float:
    if order.twice_order == -1:
        return 1.0
    weight = 0.5 * math.pi * (order.twice_order + 1)
    return 1.0 - weight * tail_integral(order, math.pi * delta * xi)


def u_nu_general(order: BesselOrder, xi: float, delta: float) -> float:
    """u_nu(xi, delta) = delta^-1 xi^(2nu+1) / (1 - (pi/2)(2nu+1) * tail).

    The tail integral runs from pi*delta*xi and is taken through the bracket
    identity. At nu = -1/2 the tail term carries a zero coefficient and is
    skipped, leaving u = 1/delta.

    Raises:
        DomainError: On nonpositive xi or delta
        PositivityError: If the denominator is not positive
    """
    _check_positive(xi, "xi")
    _check_positive(delta, "delta")
    denom = _denominator(order, xi, delta)
    if not denom > 0:
        raise PositivityError(
            f"u_nu denominator {denom!r} is not positive (nu={order}, xi={xi!r}, delta={delta!r})"
        )
    return xi ** (order.twice_order + 1) / (delta * denom)


def u_nu(params: BoundParams) -> BoundValue:
    """Evaluate omega_{N-1} u_nu(R, delta) for the lattice-count theorem.

    Raises:
        PositivityError: If the computed denominator is not positive
    """
    u_value = u_nu_general(params.order, params.radius, params.delta)
    denom = _denominator(params.order, params.radius, params.delta)
    if denom > 2.0:
        logger.warning("u_nu denominator %r exceeds 2 at N=%d delta=%r R=%r",
                       denom, params.dim_n, params.delta, params.radius)

    omega = surface_const(params.dim_n)
    return BoundValue(
        u_value=u_value,
        surface_const=omega,
        volume_const=volume_const(params.dim_n),
        bound=omega * u_value,
        denominator=denom,
    )


def u_nu_bracket_route(order: BesselOrder, xi: float, delta: float) -> float:
    """u_nu(xi, delta) from the raw bracket denominator.

    u_nu(z, 1/pi) = 2 z^(2nu+1) / bracket(nu, z) and the scaling identity
    with kappa = 1/(pi delta) give 2 xi^(2nu+1) / (pi delta bracket(nu, pi delta xi)).
    """
    _check_positive(xi, "xi")
    _check_positive(delta, "delta")
    b = bracket(order, math.pi * delta * xi)
    if not b > 0:
        raise PositivityError(f"bracket {b!r} is not positive (nu={order}, xi={xi!r}, delta={delta!r})")
    return 2.0 * xi ** (order.twice_order + 1) / (math.pi * delta * b)


def u_nu_closed_form_n3(delta: float, radius: float) -> float:
    """u_{1/2}(R, delta) = delta^-1 R^2 (1 - (sin(pi delta R) / (pi delta R))^2)^-1."""
    _check_positive(delta, "delta")
    _check_positive(radius, "radius")
    t = math.pi * delta * radius
    s = math.sin(t) / t
    return radius * radius / (delta * (1.0 - s * s))


def u_nu_at_zero(order: BesselOrder, delta: float) -> float:
    """u_nu(0, delta) = Gamma(nu+1) Gamma(nu+2) (2/(pi delta))^(2nu+2).

    This is the value at xi = 0 itself; the limit of u_nu(xi, delta) as
    xi -> 0+ is 0 for nu > -1/2 and is a different number.
    """
    _check_positive(delta, "delta")
    nu = order.nu
    return lanczos_gamma(nu + 1) * lanczos_gamma(nu + 2) * (2.0 / (math.pi * delta)) ** (order.twice_order + 2)


def equality_case(order: BesselOrder, xi: float, delta: float, tol: float = 1e-12) -> bool:
    """True when J_nu(pi delta xi) J_{nu+1}(pi delta xi) = 0 within tol.

    Exactly then the ball extremal problem's infimum equals omega_{N-1} u_nu.
    """
    _check_positive(xi, "xi")
    _check_positive(delta, "delta")
    j_nu, j_next = bessel_pair(order, math.pi * delta * xi)
    return abs(j_nu * j_next) <= tol


def theorem_window(dim_n: int, delta: float, radius: float) -> tuple[float, float]:
    """Interval V_N R^N -/+ omega_{N-1} u_nu(R, delta) that must hold the scaled count."""
    value = u_nu(BoundParams(dim_n=dim_n, delta=delta, radius=radius))
    main = value.volume_const * radius ** dim_n
    return main - value.bound, main + value.bound
