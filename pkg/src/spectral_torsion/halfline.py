"""Boundary-term machinery: rational functions of the normal covariable.

A boundary symbol ingredient is a rational function of xi_n with Gaussian
rational coefficients and an explicitly factored denominator.  The half-line
projection pi+ keeps the partial-fraction terms whose poles lie in the upper
half plane; real-line integrals are evaluated exactly by residues and carry
the formal atom pi.
"""

from __future__ import annotations

import math

from .clifford import DimensionMismatch, Multivector, mv_mul, trace
from .forms import OneForm, to_clifford
from .moments import moment, xi_monomial
from .scalars import (
    DIM_F,
    GR_I,
    GR_ONE,
    GR_ZERO,
    GaussianRational,
    PI,
    SymScalar,
    rational,
)


class RealPole(ValueError):
    pass


class NonIntegrable(ValueError):
    pass


class Poly:
    """Dense univariate polynomial over Gaussian rationals (low degree first)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, GaussianRational) else GaussianRational(c)
              for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [GR_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    def scale(self, s: GaussianRational) -> "Poly":
        return Poly(tuple(c * s for c in self.coeffs))

    def derivative(self) -> "Poly":
        return Poly(tuple(c * rational(k) for k, c in enumerate(self.coeffs) if k))

    def eval(self, x: GaussianRational) -> GaussianRational:
        acc = GR_ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_complex(self, x: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * x + complex(c)
        return acc

    def divide_linear(self, p: GaussianRational) -> tuple["Poly", GaussianRational]:
        """Synthetic division by (x - p): (quotient, remainder)."""
        if self.is_zero():
            return Poly(), GR_ZERO
        out = [GR_ZERO] * len(self.coeffs)
        acc = GR_ZERO
        for k in range(len(self.coeffs) - 1, -1, -1):
            acc = self.coeffs[k] + acc * p
            out[k] = acc
        remainder = out[0]
        return Poly(out[1:]), remainder

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"


POLY_ZERO = Poly()
POLY_ONE = Poly((GR_ONE,))
POLY_X = Poly((GR_ZERO, GR_ONE))


def _series_mul(a: list, b: list, order: int) -> list:
    out = [GR_ZERO] * (order + 1)
    for i, x in enumerate(a):
        if i > order or x.is_zero():
            continue
        for j, y in enumerate(b):
            if i + j > order:
                break
            out[i + j] = out[i + j] + x * y
    return out


def _inverse_power_series(base: GaussianRational, mult: int, order: int) -> list:
    """Taylor coefficients of (base + t)^(-mult) up to t^order; base != 0."""
    inv_base = GR_ONE / base
    out = []
    power = inv_base ** mult
    for k in range(order + 1):
        c = rational(math.comb(mult + k - 1, k))
        sign = -c if k & 1 else c
        out.append(power * sign)
        power = power * inv_base
    return out


class XiRational:
    """N(x) / prod_j (x - p_j)^(m_j) with Gaussian-rational poles.

    Construction cancels numerator roots at the poles, so the pole set is
    canonical for the value.
    """

    __slots__ = ("numer", "poles")

    def __init__(self, numer: Poly, poles=None):
        pole_map: dict[GaussianRational, int] = {}
        if poles:
            for p, mult in (poles.items() if isinstance(poles, dict) else poles):
                if mult < 0:
                    raise ValueError("negative pole multiplicity")
                if mult:
                    pole_map[p] = pole_map.get(p, 0) + mult
        if numer.is_zero():
            pole_map = {}
        else:
            for p in list(pole_map):
                while pole_map[p] > 0:
                    quotient, remainder = numer.divide_linear(p)
                    if not remainder.is_zero():
                        break
                    numer = quotient
                    pole_map[p] -= 1
                if pole_map[p] == 0:
                    del pole_map[p]
        object.__setattr__(self, "numer", numer)
        object.__setattr__(self, "poles", pole_map)

    def __setattr__(self, name, value):
        raise AttributeError("XiRational is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls) -> "XiRational":
        return cls(POLY_ZERO)

    @classmethod
    def from_coeff(cls, c) -> "XiRational":
        return cls(Poly((c,)))

    # -- structure --------------------------------------------------------

    def is_zero(self) -> bool:
        return self.numer.is_zero()

    @property
    def denominator_degree(self) -> int:
        return sum(self.poles.values())

    def denominator_poly(self) -> Poly:
        out = POLY_ONE
        for p, mult in self.poles.items():
            factor = Poly((-p, GR_ONE))
            for _ in range(mult):
                out = out * factor
        return out

    def __eq__(self, other):
        if not isinstance(other, XiRational):
            return NotImplemented
        return (self.numer * other.denominator_poly()
                == other.numer * self.denominator_poly())

    def __hash__(self):
        return hash((self.numer, frozenset(self.poles.items())))

    def __repr__(self):
        poles = {str(p): m for p, m in self.poles.items()}
        return f"XiRational({self.numer!r}, poles={poles})"

    # -- arithmetic ---------------------------------------------------------

    def __mul__(self, other: "XiRational") -> "XiRational":
        merged = dict(self.poles)
        for p, mult in other.poles.items():
            merged[p] = merged.get(p, 0) + mult
        return XiRational(self.numer * other.numer, merged)

    def scale(self, s) -> "XiRational":
        s = s if isinstance(s, GaussianRational) else GaussianRational(s)
        return XiRational(self.numer.scale(s), dict(self.poles))

    def __neg__(self) -> "XiRational":
        return self.scale(GaussianRational(-1))

    def __add__(self, other: "XiRational") -> "XiRational":
        union = dict(self.poles)
        for p, mult in other.poles.items():
            union[p] = max(union.get(p, 0), mult)
        na = self.numer
        for p, mult in union.items():
            extra = mult - self.poles.get(p, 0)
            for _ in range(extra):
                na = na * Poly((-p, GR_ONE))
        nb = other.numer
        for p, mult in union.items():
            extra = mult - other.poles.get(p, 0)
            for _ in range(extra):
                nb = nb * Poly((-p, GR_ONE))
        return XiRational(na + nb, union)

    def __sub__(self, other: "XiRational") -> "XiRational":
        return self + (-other)

    def derivative(self) -> "XiRational":
        """Exact derivative; pole multiplicities increase by one."""
        if self.is_zero():
            return XiRational.zero()
        bumped = {p: mult + 1 for p, mult in self.poles.items()}
        # d/dx N/prod (x-p)^m = [N' prod(x-p) - N sum_j m_j prod_{k!=j}(x-p_k)] / prod (x-p)^(m+1)
        prod_all = POLY_ONE
        for p in self.poles:
            prod_all = prod_all * Poly((-p, GR_ONE))
        total = self.numer.derivative() * prod_all
        for p, mult in self.poles.items():
            partial = POLY_ONE
            for q in self.poles:
                if q != p:
                    partial = partial * Poly((-q, GR_ONE))
            total = total - self.numer.scale(rational(mult)) * partial
        return XiRational(total, bumped)

    # -- evaluation -----------------------------------------------------------

    def eval_exact(self, x: GaussianRational) -> GaussianRational:
        value = self.numer.eval(x)
        for p, mult in self.poles.items():
            d = x - p
            if d.is_zero():
                raise ZeroDivisionError(f"evaluation at pole {p}")
            value = value / d ** mult
        return value

    def eval_complex(self, x: complex) -> complex:
        value = self.numer.eval_complex(x)
        for p, mult in self.poles.items():
            value /= (x - complex(p)) ** mult
        return value

    # -- residues / partial fractions -------------------------------------------

    def _deflated_series(self, p: GaussianRational, order: int) -> list:
        """Taylor coefficients (in t = x - p) of N(x) / prod_{q != p}(x - q)^(m_q)."""
        series = [GR_ZERO] * (order + 1)
        shifted = _shift_poly(self.numer, p)
        for k, c in enumerate(shifted.coeffs):
            if k <= order:
                series[k] = c
        for q, mult in self.poles.items():
            if q == p:
                continue
            series = _series_mul(series,
                                 _inverse_power_series(p - q, mult, order), order)
        return series

    def residue(self, p: GaussianRational) -> GaussianRational:
        mult = self.poles.get(p, 0)
        if mult == 0:
            return GR_ZERO
        return self._deflated_series(p, mult - 1)[mult - 1]

    def partial_fractions(self) -> dict:
        """Map pole -> [A_1, ..., A_m] with f = sum A_k / (x - p)^k (+ polynomial)."""
        out = {}
        for p, mult in self.poles.items():
            series = self._deflated_series(p, mult - 1)
            out[p] = [series[mult - k] for k in range(1, mult + 1)]
        return out


def _shift_poly(poly: Poly, p: GaussianRational) -> Poly:
    """Coefficients of poly(p + t) as a polynomial in t."""
    acc = POLY_ZERO
    shift = Poly((p, GR_ONE))
    for c in reversed(poly.coeffs):
        acc = acc * shift + Poly((c,))
    return acc


def pi_plus(f: XiRational) -> XiRational:
    """Half-line projection: keep partial-fraction terms with poles above the axis."""
    return _half_projection(f, keep_upper=True)


def pi_minus(f: XiRational) -> XiRational:
    return _half_projection(f, keep_upper=False)


def _half_projection(f: XiRational, keep_upper: bool) -> XiRational:
    if f.is_zero():
        return XiRational.zero()
    if f.numer.degree >= f.denominator_degree:
        raise NonIntegrable("symbol does not vanish at infinity")
    for p in f.poles:
        if p.im == 0:
            raise RealPole(f"real pole at {p}")
    out = XiRational.zero()
    for p, coeffs in f.partial_fractions().items():
        if (p.im > 0) != keep_upper:
            continue
        for k, a in enumerate(coeffs, start=1):
            if not a.is_zero():
                out = out + XiRational(Poly((a,)), {p: k})
    return out


def dxn_symbol(m: int) -> XiRational:
    """d/dxi_n of (1 + xi_n^2)^(1-m) on |xi'| = 1: 2(1-m) xi_n (1+xi_n^2)^(-m)."""
    if m < 2:
        raise ValueError("need m >= 2")
    return XiRational(Poly((GR_ZERO, GaussianRational(2 * (1 - m)))),
                      {GR_I: m, -GR_I: m})


def residue_derivative(m: int) -> GaussianRational:
    """(d/dx)^m [x / (x+i)^m] at x = i, computed by exact differentiation.

    Closed form: (2m-2)! (-i) 2^(-2m) / (m-1)!.
    """
    if m < 2:
        raise ValueError("need m >= 2")
    f = XiRational(POLY_X, {-GR_I: m})
    for _ in range(m):
        f = f.derivative()
    return f.eval_exact(GR_I)


def line_integral(f: XiRational) -> SymScalar:
    """Exact real-line integral: 2 pi i times the sum of upper residues."""
    if f.is_zero():
        return SymScalar.zero()
    for p in f.poles:
        if p.im == 0:
            raise RealPole(f"real pole at {p}")
    if f.numer.degree > f.denominator_degree - 2:
        raise NonIntegrable("integrand does not decay quadratically")
    total = GR_ZERO
    for p in f.poles:
        if p.im > 0:
            total = total + f.residue(p)
    return SymScalar.from_atom(PI, GaussianRational(0, 2) * total)


# ---------------------------------------------------------------------------
# Boundary density assembly
# ---------------------------------------------------------------------------


def half_inverse_symbol_components(n: int) -> tuple[XiRational, XiRational]:
    """pi+ of the order -1 inverse symbol i c(xi)/(1+xi_n^2), componentwise.

    Returns (tangential weight of c(xi'), normal weight of c(dx_n)):
    1/(2(xi_n - i)) and i/(2(xi_n - i)).
    """
    base = {GR_I: 1, -GR_I: 1}  # (1 + xi_n^2) = (xi_n - i)(xi_n + i)
    tangential = pi_plus(XiRational(Poly((GR_I,)), dict(base)))
    normal = pi_plus(XiRational(Poly((GR_ZERO, GR_I)), dict(base)))
    return tangential, normal


def boundary_symbol(u: OneForm, v: OneForm, w: OneForm, n: int) -> dict:
    """The boundary integrand as a map xi'-monomial -> (XiRational, Multivector).

    Each entry pairs the xi_n-rational weight (the projected inverse symbol
    times the normal derivative of the inverse-power symbol) with the Clifford
    factor whose trace it multiplies.
    """
    if n % 2 != 0 or n < 4:
        raise DimensionMismatch(f"boundary setting needs even n >= 4, got {n}")
    m = n // 2
    cuvw = mv_mul(mv_mul(to_clifford(u), to_clifford(v)), to_clifford(w))
    tangential_half, normal_half = half_inverse_symbol_components(n)
    dsym = dxn_symbol(m)
    out: dict[tuple, tuple[XiRational, Multivector]] = {
        xi_monomial(n - 1): (normal_half * dsym,
                             mv_mul(cuvw, Multivector.generator(n, n))),
    }
    f_tan = tangential_half * dsym
    for i in range(1, n):
        out[xi_monomial(n - 1, i)] = (f_tan,
                                      mv_mul(cuvw, Multivector.generator(n, i)))
    return out


def boundary_pieces(u: OneForm, v: OneForm, w: OneForm,
                    n: int) -> tuple[SymScalar, SymScalar]:
    """(tangential, normal) boundary contributions before summation.

    The tangential piece multiplies xi'-odd sphere moments and must vanish;
    it is computed and returned rather than silently dropped.  The normal
    piece carries dim_F (the perturbation never enters the boundary symbols)
    and vol(S^(n-2)).
    """
    for x in (u, v, w):
        if x.dim != n:
            raise DimensionMismatch(f"one-form dim {x.dim} != {n}")
    dim_factor = SymScalar.from_atom(DIM_F)
    tangential = SymScalar.zero()
    normal = SymScalar.zero()
    for expo, (f, mv) in boundary_symbol(u, v, w, n).items():
        weight = moment(n - 1, expo)  # xi'-odd entries integrate to zero
        contribution = trace(mv) * weight * line_integral(f) * dim_factor
        if sum(expo):
            tangential = tangential + contribution
        else:
            normal = normal + contribution
    return tangential, normal


def boundary_density(u: OneForm, v: OneForm, w: OneForm, n: int) -> SymScalar:
    """The boundary addend of the torsion functional.

    Exactly a Gaussian-rational multiple of
    pi * (u_n g(v,w) - v_n g(u,w) + w_n g(u,v)) * 2^m * dim_F * vol(S^(n-2)).
    """
    tangential, normal = boundary_pieces(u, v, w, n)
    if not tangential.is_zero():  # xi'-odd moments integrate to zero
        raise AssertionError("tangential boundary term failed to vanish")
    return normal
