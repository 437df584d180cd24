"""Shared exact oracles for the test suite.

These deliberately avoid the library's blade algebra where independence
matters: determinants by Gaussian elimination, rotations via the Cayley
transform, and a density evaluator that works on literal representation
matrices instead of blades.
"""

from __future__ import annotations

import random

import pytest

from spectral_torsion import (
    Multivector,
    OneForm,
    SymScalar,
    ThreeForm,
    TR_F_PHI,
    mv_mul,
    rational,
)
from spectral_torsion.matrix_rep import MatrixRep, mat_mul, mat_trace, mat_add, mat_scale
from spectral_torsion.moments import moment, xi_monomial
from spectral_torsion.scalars import GR_ZERO, GaussianRational
from spectral_torsion.symbols import perturbation_multivector
from spectral_torsion.forms import to_clifford


def rand_rational(rng: random.Random):
    return rational(rng.randint(-6, 6)) / rational(rng.randint(1, 4))


def rand_oneform(rng: random.Random, n: int) -> OneForm:
    return OneForm(tuple(rand_rational(rng) for _ in range(n)))


def rand_threeform(rng: random.Random, n: int, sparsity: float = 0.6) -> ThreeForm:
    comps = {}
    for a in range(1, n - 1):
        for b in range(a + 1, n):
            for c in range(b + 1, n + 1):
                if rng.random() < sparsity:
                    comps[(a, b, c)] = rand_rational(rng)
    return ThreeForm(n, comps)


def rand_multivector(rng: random.Random, n: int, max_blades: int = 6) -> Multivector:
    coeffs = {}
    for _ in range(rng.randint(1, max_blades)):
        mask = rng.randint(0, (1 << n) - 1)
        coeffs[mask] = GaussianRational(rand_rational(rng), rand_rational(rng))
    return Multivector(n, coeffs)


# ---------------------------------------------------------------------------
# determinant oracle (row reduction over exact rationals)
# ---------------------------------------------------------------------------


def det_exact(rows):
    mat = [list(r) for r in rows]
    size = len(mat)
    det = rational(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if mat[r][col] != 0), None)
        if pivot is None:
            return rational(0)
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            det = -det
        det = det * mat[col][col]
        inv = rational(1) / mat[col][col]
        for r in range(col + 1, size):
            factor = mat[r][col] * inv
            if factor != 0:
                for c in range(col, size):
                    mat[r][c] = mat[r][c] - factor * mat[col][c]
    return det


# ---------------------------------------------------------------------------
# exact special-orthogonal rotations (Cayley transform)
# ---------------------------------------------------------------------------


def _solve_exact(a, b):
    """Solve a X = b for square rational a and matrix b, by elimination."""
    size = len(a)
    aug = [list(a[r]) + list(b[r]) for r in range(size)]
    for col in range(size):
        pivot = next(r for r in range(col, size) if aug[r][col] != 0)
        if pivot != col:
            aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = rational(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[size:] for row in aug]


def cayley_rotation(rng: random.Random, n: int):
    """Random rational special-orthogonal matrix (I-A)(I+A)^-1, A antisymmetric."""
    a = [[rational(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = rational(rng.randint(-2, 2)) / rational(rng.randint(1, 3))
            a[i][j] = x
            a[j][i] = -x
    eye = [[rational(1 if i == j else 0) for j in range(n)] for i in range(n)]
    i_plus = [[eye[i][j] + a[i][j] for j in range(n)] for i in range(n)]
    i_minus = [[eye[i][j] - a[i][j] for j in range(n)] for i in range(n)]
    return _solve_exact(i_plus, i_minus)  # (I+A)^-1 (I-A); orthogonal, det +1


def rotate_oneform(q, u: OneForm) -> OneForm:
    n = u.dim
    return OneForm(tuple(
        sum((q[i][a] * u[i + 1] for i in range(n)), rational(0))
        for a in range(n)))


def rotate_threeform(q, t: ThreeForm) -> ThreeForm:
    n = t.dim
    comps = {}
    for a in range(1, n - 1):
        for b in range(a + 1, n):
            for c in range(b + 1, n + 1):
                total = rational(0)
                for (i, j, k), value in t.components.items():
                    minor = det_exact([
                        [q[i - 1][a - 1], q[i - 1][b - 1], q[i - 1][c - 1]],
                        [q[j - 1][a - 1], q[j - 1][b - 1], q[j - 1][c - 1]],
                        [q[k - 1][a - 1], q[k - 1][b - 1], q[k - 1][c - 1]],
                    ])
                    total = total + value * minor
                if total != 0:
                    comps[(a, b, c)] = total
    return ThreeForm(n, comps)


# ---------------------------------------------------------------------------
# literal-matrix density oracle
# ---------------------------------------------------------------------------


def _as_matrix(rep: MatrixRep, mv: Multivector):
    """Dense Gaussian-rational matrix of a multivector with constant coefficients."""
    d = rep.size
    acc = [[GR_ZERO] * d for _ in range(d)]
    for mask, coeff in mv.coeffs.items():
        value = coeff.constant_part()
        mat = rep.blade_matrix(mask)
        for i in range(d):
            row = mat[i]
            for j in range(d):
                if not row[j].is_zero():
                    acc[i][j] = acc[i][j] + value * row[j]
    return tuple(tuple(r) for r in acc)


def density_via_matrix_rep(u, v, w, case, n) -> SymScalar:
    """Interior density recomputed on literal representation matrices.

    Shares only the exact moment table with the blade pipeline; all Clifford
    products and traces happen entry-by-entry on matrices.
    """
    rep = MatrixRep(n)
    m = n // 2
    cw = _as_matrix(rep, mv_mul(mv_mul(to_clifford(u), to_clifford(v)),
                                to_clifford(w)))
    bmat = _as_matrix(rep, perturbation_multivector(case, n))
    gens = [_as_matrix(rep, Multivector.generator(n, i)) for i in range(1, n + 1)]

    total = SymScalar.zero()
    total = total + SymScalar.from_coeff(mat_trace(mat_mul(cw, bmat))) \
        * moment(n, xi_monomial(n))
    for i in range(n):
        anti = mat_add(mat_mul(gens[i], bmat), mat_mul(bmat, gens[i]))
        left = mat_scale(mat_mul(cw, anti), GaussianRational(m))
        for l in range(n):
            weight = moment(n, xi_monomial(n, i + 1, l + 1))
            if weight.is_zero():
                continue
            total = total + SymScalar.from_coeff(
                mat_trace(mat_mul(left, gens[l]))) * weight
    return total * SymScalar.from_atom(TR_F_PHI)


def quad_oracle(f, bound: float = 1e4) -> complex:
    """Adaptive quadrature of a rational symbol over [-bound, bound]."""
    from scipy.integrate import quad

    hints = [-10.0, -1.0, 0.0, 1.0, 10.0]
    re = quad(lambda x: f.eval_complex(x).real, -bound, bound,
              limit=800, epsabs=1e-13, epsrel=1e-13, points=hints)[0]
    im = quad(lambda x: f.eval_complex(x).imag, -bound, bound,
              limit=800, epsabs=1e-13, epsrel=1e-13, points=hints)[0]
    return complex(re, im)


@pytest.fixture
def rng():
    return random.Random(20240810)
