"""Interior symbol assembly for the perturbed operators at a flat point.

At a normal-coordinate point with trivialized twist connection every
connection, curvature and metric-derivative contribution vanishes, so the
order -2m symbol of c(u)c(v)c(w) D^(1-2m) collapses to perturbation-only
terms:

    sigma = c(u)c(v)c(w) [ B + m * sum_i (c(e_i)B + B c(e_i)) xi_i c(xi) ]

restricted to |xi| = 1, where B is the zero-order perturbation multivector.
The twist factor Phi rides along every B-linear term, so traces over the
tensor product factor through the tr_F(Phi) atom.
"""

from __future__ import annotations

from dataclasses import dataclass

from .clifford import (
    DimensionMismatch,
    Multivector,
    OddDimension,
    anticommutator,
    grading,
    mv_mul,
    trace,
)
from .forms import OneForm, ThreeForm, to_clifford
from .moments import XiPolynomialMV, integrate_sphere, xi_monomial
from .scalars import GR_I, SymScalar, TR_F_PHI, rational


@dataclass(frozen=True)
class TorsionVector:
    """Perturbation c(T) + sqrt(-1) c(Y): 3-form torsion plus a vector field."""

    T: ThreeForm
    Y: OneForm


@dataclass(frozen=True)
class Grading:
    """Perturbation by the grading operator alone."""


@dataclass(frozen=True)
class VectorGrading:
    """Perturbation c(X) * grading: the twisted-fluctuation vector case."""

    X: OneForm


@dataclass(frozen=True)
class TorsionGrading:
    """Perturbation sqrt(-1) c(T) * grading: the twisted 3-form case."""

    T: ThreeForm


PerturbationCase = TorsionVector | Grading | VectorGrading | TorsionGrading

CASE_NAMES = {
    "torsion_vector": TorsionVector,
    "grading": Grading,
    "vector_grading": VectorGrading,
    "torsion_grading": TorsionGrading,
}


def case_name(case: PerturbationCase) -> str:
    for name, cls in CASE_NAMES.items():
        if isinstance(case, cls):
            return name
    raise TypeError(f"unknown perturbation case {case!r}")


def _check_case_dims(case: PerturbationCase, n: int) -> None:
    for field in ("T", "Y", "X"):
        tensor = getattr(case, field, None)
        if tensor is not None and tensor.dim != n:
            raise DimensionMismatch(
                f"{field} has dim {tensor.dim}, ambient dim is {n}")


def perturbation_multivector(case: PerturbationCase, n: int) -> Multivector:
    """The zero-order perturbation as an element of Cl(n)."""
    if n % 2 != 0:
        raise OddDimension(f"dimension must be even, got {n}")
    _check_case_dims(case, n)
    if isinstance(case, TorsionVector):
        return to_clifford(case.T) + to_clifford(case.Y).scale(GR_I)
    if isinstance(case, Grading):
        return grading(n)
    if isinstance(case, VectorGrading):
        return mv_mul(to_clifford(case.X), grading(n))
    if isinstance(case, TorsionGrading):
        return mv_mul(to_clifford(case.T), grading(n)).scale(GR_I)
    raise TypeError(f"unknown perturbation case {case!r}")


@dataclass(frozen=True)
class SymbolOrderPieces:
    """Order-2 and order-1 symbol pieces of the squared perturbed operator.

    At the flat point: p2 = |xi|^2 Id and p1 = sqrt(-1) sum_j xi_j
    (c(e_j) B + B c(e_j)), with the perturbation B carried separately (its
    twist factor enters only at trace time).
    """

    p2: XiPolynomialMV
    p1: XiPolynomialMV
    B: Multivector


def symbol_order_pieces(case: PerturbationCase, n: int) -> SymbolOrderPieces:
    if n % 2 != 0:
        raise OddDimension(f"dimension must be even, got {n}")
    b = perturbation_multivector(case, n)
    identity = Multivector.identity(n)
    p2 = XiPolynomialMV(n, n, {xi_monomial(n, j, j): identity
                               for j in range(1, n + 1)})
    p1_terms = {}
    for j in range(1, n + 1):
        bracket = anticommutator(Multivector.generator(n, j), b)
        if not bracket.is_zero():
            p1_terms[xi_monomial(n, j)] = bracket.scale(GR_I)
    return SymbolOrderPieces(p2=p2, p1=XiPolynomialMV(n, n, p1_terms), B=b)


def q_minus3_normal(b: Multivector, n: int) -> XiPolynomialMV:
    """Subleading symbol of the squared-operator inverse at the flat point.

    q_{-3} = -p2^{-1} p1 q_{-2}; restricted to |xi| = 1 (the suppressed
    prefactor is |xi|^-4) only the perturbation-linear part survives,

        -sqrt(-1) * sum_j xi_j (c(e_j) B + B c(e_j)).
    """
    terms = {}
    for j in range(1, n + 1):
        bracket = anticommutator(Multivector.generator(n, j), b)
        if not bracket.is_zero():
            terms[xi_monomial(n, j)] = bracket.scale(-GR_I)
    return XiPolynomialMV(n, n, terms)


def recursion_tail(n: int, metric_derivatives=None) -> XiPolynomialMV:
    """The k-sum correction to the subleading inverse-power symbol.

    sum_{k=0}^{m-2} of d_xi(sigma2^(1-m+k)) * d_x(sigma2^(-1)) * sigma2^(-k)
    with the leading -sqrt(-1), evaluated on |xi| = 1.  Its only first-order
    input is d_x g^(ab); in normal coordinates that is zero, so the whole sum
    vanishes — it is carried through the pipeline and asserted zero rather
    than omitted.
    """
    m = n // 2
    result = XiPolynomialMV.zero(n, n)
    if not metric_derivatives:
        return result
    identity = Multivector.identity(n)
    terms: dict[tuple, Multivector] = {}
    for k in range(0, m - 1):
        power = -m + k + 1
        for (mu, alpha, beta), dg in metric_derivatives.items():
            # d_xi(sigma2^power) = 2*power*xi_mu; d_x(sigma2^-1) = -dg xi_a xi_b
            coeff = -GR_I * rational(2 * power) * rational(-1) * rational(dg)
            expo = xi_monomial(n, mu, alpha, beta)
            mv = identity.scale(coeff)
            cur = terms.get(expo)
            terms[expo] = mv if cur is None else cur + mv
    return result + XiPolynomialMV(n, n, terms)


def sigma_minus2m(u: OneForm, v: OneForm, w: OneForm,
                  case: PerturbationCase, n: int) -> XiPolynomialMV:
    """Order -2m symbol of c(u)c(v)c(w) D^(1-2m) on the unit cosphere."""
    if n % 2 != 0:
        raise OddDimension(f"dimension must be even, got {n}")
    if n < 4:
        raise DimensionMismatch(f"symbol assembly needs n >= 4, got {n}")
    for x in (u, v, w):
        if x.dim != n:
            raise DimensionMismatch(f"one-form dim {x.dim} != {n}")
    _check_case_dims(case, n)
    m = n // 2
    cuvw = mv_mul(mv_mul(to_clifford(u), to_clifford(v)), to_clifford(w))
    b = perturbation_multivector(case, n)

    terms: dict[tuple, Multivector] = {}
    constant = mv_mul(cuvw, b)
    if not constant.is_zero():
        terms[xi_monomial(n)] = constant

    m_scale = rational(m)
    for i in range(1, n + 1):
        bracket = anticommutator(Multivector.generator(n, i), b)
        if bracket.is_zero():
            continue
        left = mv_mul(cuvw, bracket).scale(m_scale)
        for l in range(1, n + 1):
            term = mv_mul(left, Multivector.generator(n, l))
            if term.is_zero():
                continue
            expo = xi_monomial(n, i, l)
            cur = terms.get(expo)
            s = term if cur is None else cur + term
            if s.is_zero():
                terms.pop(expo, None)
            else:
                terms[expo] = s
    sigma = XiPolynomialMV(n, n, terms)

    # x-derivative recursion terms: identically zero in normal coordinates,
    # composed with i*c(xi) and carried explicitly.
    tail = recursion_tail(n)
    if not tail.is_zero():  # pragma: no cover - zero at the flat point
        composed: dict[tuple, Multivector] = {}
        for expo, mv in tail.terms.items():
            for l in range(1, n + 1):
                lifted = list(expo)
                lifted[l - 1] += 1
                term = mv_mul(mv_mul(cuvw, mv),
                              Multivector.generator(n, l)).scale(GR_I)
                key = tuple(lifted)
                cur = composed.get(key)
                composed[key] = term if cur is None else cur + term
        sigma = sigma + XiPolynomialMV(n, n, composed)
    return sigma


def interior_density(u: OneForm, v: OneForm, w: OneForm,
                     case: PerturbationCase, n: int) -> SymScalar:
    """Unit-cosphere integral of the symbol trace: the interior density.

    Carries one factor tr_F(Phi) (every surviving term is perturbation
    linear) and the atom vol(S^(n-1)) from the sphere moments.
    """
    sigma = sigma_minus2m(u, v, w, case, n)
    integrated = integrate_sphere(n, sigma)
    return trace(integrated) * SymScalar.from_atom(TR_F_PHI)
