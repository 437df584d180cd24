"""Exact scalar arithmetic: rationals, Gaussian rationals and symbolic scalars.

Every density computed by this package is a finite Gaussian-rational linear
combination of monomials in a handful of formal atoms (pi, sphere volumes,
the twist-trace tr_F(Phi) and the twist dimension dim_F).  Keeping those
atoms symbolic makes closed-form comparisons exact; floating evaluation is a
separate, lossy view.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction as _Fraction
from typing import Iterable, Mapping

try:  # ~20x faster than fractions.Fraction; identical semantics for our use
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Rational


class MissingAtom(KeyError):
    """An atom occurring in a symbolic scalar has no numeric assignment."""


def rational(value) -> Rational:
    """Coerce an int, string ("p/q" or "p") or rational to a Rational."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, (int, str, _Fraction)):
        return Rational(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(q) -> str:
    return str(q)


_ZERO = Rational(0)
_ONE = Rational(1)


class GaussianRational:
    """Exact complex number with rational real and imaginary parts.

    Treated as immutable everywhere; arithmetic always builds new values.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = rational(re)
        self.im = rational(im)

    # -- constructors -------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse "p/q", "r/s i", "p/q+r/s i" or "p/q-r/s i" (also bare "i")."""
        s = text.strip()
        if not s:
            raise ValueError("empty Gaussian rational")
        if not s.endswith("i"):
            return cls(_parse_signed_rational(s), _ZERO)
        body = s[:-1].strip()
        # locate a +/- separating real and imaginary parts (not a leading sign)
        split = max(body.rfind("+"), body.rfind("-"))
        if split > 0:
            re_part = _parse_signed_rational(body[:split].strip())
            im_text = body[split:].strip()
        else:
            re_part = _ZERO
            im_text = body
        if im_text in ("", "+"):
            im_part = _ONE
        elif im_text == "-":
            im_part = -_ONE
        else:
            im_part = _parse_signed_rational(im_text)
        return cls(re_part, im_part)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = _as_gaussian(other)
        return _gr(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_gaussian(other)
        return _gr(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _as_gaussian(other).__sub__(self)

    def __mul__(self, other):
        other = _as_gaussian(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if b == 0:
            if d == 0:
                return _gr(a * c, _ZERO)
            return _gr(a * c, a * d)
        if d == 0:
            return _gr(a * c, b * c)
        return _gr(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_gaussian(other)
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        a, b, c, d = self.re, self.im, other.re, other.im
        return _gr((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        return _as_gaussian(other).__truediv__(self)

    def __neg__(self):
        return _gr(-self.re, -self.im)

    def __pow__(self, k: int):
        if k < 0:
            return GaussianRational(1) / self.__pow__(-k)
        out = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    # -- predicates / views -------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __eq__(self, other):
        if isinstance(other, (int, Rational, _Fraction)):
            return self.im == 0 and self.re == other
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        imag = "1 i" if self.im == 1 else ("-1 i" if self.im == -1 else f"{self.im} i")
        if self.re == 0:
            return imag
        sign = "+" if self.im > 0 else "-"
        mag = -self.im if self.im < 0 else self.im
        return f"{self.re}{sign}{mag} i"

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


_SIGNED_RATIONAL_RE = _re.compile(r"[+-]?\d+(?:/\d+)?")


def _parse_signed_rational(s: str):
    s = s.replace(" ", "")
    if not _SIGNED_RATIONAL_RE.fullmatch(s):
        raise ValueError(f"not a rational: {s!r}")
    return rational(s.lstrip("+"))


def _gr(re, im) -> GaussianRational:
    """Fast constructor for already-reduced rational parts."""
    z = GaussianRational.__new__(GaussianRational)
    z.re = re
    z.im = im
    return z


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)


def _as_gaussian(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Rational)):
        return GaussianRational(x)
    raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")


def gaussian(re=0, im=0) -> GaussianRational:
    return GaussianRational(re, im)


def i_power(k: int) -> GaussianRational:
    """i**k, exactly."""
    return (GR_I, GaussianRational(-1), GaussianRational(0, -1), GR_ONE)[(k - 1) % 4]


# ---------------------------------------------------------------------------
# Symbolic atoms
# ---------------------------------------------------------------------------

# Atoms are small tuples (rank, parameter); ordering PI < VOL_SPHERE(k) <
# TR_F_PHI < DIM_F is the canonical printing order.
Atom = tuple
SymAtom = Atom

PI: Atom = (0, 0)
TR_F_PHI: Atom = (2, 0)
DIM_F: Atom = (3, 0)


def vol_sphere(k: int) -> Atom:
    """The formal atom vol(S^k), the total surface measure of the unit k-sphere."""
    if k < 1:
        raise ValueError("sphere dimension must be >= 1")
    return (1, k)


def atom_name(a: Atom) -> str:
    rank, param = a
    if rank == 0:
        return "pi"
    if rank == 1:
        return f"vol(S^{param})"
    if rank == 2:
        return "tr_F(Phi)"
    if rank == 3:
        return "dim_F"
    raise ValueError(f"unknown atom {a!r}")


_ATOM_BY_NAME = {"pi": PI, "tr_F(Phi)": TR_F_PHI, "dim_F": DIM_F}
_VOL_RE = _re.compile(r"vol\(S\^(\d+)\)")


def atom_from_name(name: str) -> Atom:
    if name in _ATOM_BY_NAME:
        return _ATOM_BY_NAME[name]
    m = _VOL_RE.fullmatch(name)
    if m:
        return vol_sphere(int(m.group(1)))
    raise ValueError(f"unknown atom name {name!r}")


Monomial = tuple  # sorted tuple of atoms


def _merge_monomials(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b))


class SymScalar:
    """Finite Gaussian-rational combination of atom monomials, in canonical form.

    No zero coefficients are stored; equality is dict equality, which makes
    closed-form comparisons exact structural identities.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, GaussianRational] | None = None):
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                if not coeff.is_zero():
                    clean[mono] = coeff
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "SymScalar":
        return cls()

    @classmethod
    def from_coeff(cls, c) -> "SymScalar":
        return cls({(): _as_gaussian(c)})

    @classmethod
    def from_atom(cls, a: Atom, coeff=1) -> "SymScalar":
        return cls({(a,): _as_gaussian(coeff)})

    @classmethod
    def from_monomial(cls, atoms: Iterable[Atom], coeff=1) -> "SymScalar":
        return cls({tuple(sorted(atoms)): _as_gaussian(coeff)})

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = _as_sym(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            cur = out.get(mono)
            if cur is None:
                out[mono] = coeff
            else:
                sre, sim = cur.re + coeff.re, cur.im + coeff.im
                if sre == 0 and sim == 0:
                    del out[mono]
                else:
                    out[mono] = _gr(sre, sim)
        return _raw_sym(out)

    __radd__ = __add__

    def __neg__(self):
        return _raw_sym({m: _gr(-c.re, -c.im) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_sym(other))

    def __rsub__(self, other):
        return _as_sym(other) + (-self)

    def _product(self, other: "SymScalar", negate: bool) -> "SymScalar":
        """self * other with the sign folded in (hot path for blade products)."""
        st, ot = self.terms, other.terms
        if not st or not ot:
            return _SYM_ZERO
        out: dict = {}
        for m1, c1 in st.items():
            a, b = c1.re, c1.im
            for m2, c2 in ot.items():
                c, d = c2.re, c2.im
                if b == 0:
                    if d == 0:
                        pre, pim = a * c, _ZERO
                    else:
                        pre, pim = a * c, a * d
                elif d == 0:
                    pre, pim = a * c, b * c
                else:
                    pre, pim = a * c - b * d, a * d + b * c
                if negate:
                    pre, pim = -pre, -pim
                mono = m1 if not m2 else (m2 if not m1 else tuple(sorted(m1 + m2)))
                cur = out.get(mono)
                if cur is None:
                    if pre != 0 or pim != 0:
                        out[mono] = _gr(pre, pim)
                else:
                    sre, sim = cur.re + pre, cur.im + pim
                    if sre == 0 and sim == 0:
                        del out[mono]
                    else:
                        out[mono] = _gr(sre, sim)
        return _raw_sym(out)

    def __mul__(self, other):
        return self._product(_as_sym(other), False)

    __rmul__ = __mul__

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Rational, GaussianRational)):
            other = _as_sym(other)
        if not isinstance(other, SymScalar):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- views ----------------------------------------------------------

    def constant_part(self) -> GaussianRational:
        return self.terms.get((), GR_ZERO)

    def coefficient_of(self, atoms: Iterable[Atom]) -> GaussianRational:
        return self.terms.get(tuple(sorted(atoms)), GR_ZERO)

    def evaluate(self, env: Mapping[Atom, complex]) -> complex:
        """Substitute numeric atom values and evaluate in double precision."""
        total = 0j
        for mono, coeff in self.terms.items():
            value = complex(coeff)
            for a in mono:
                if a not in env:
                    raise MissingAtom(atom_name(a))
                value *= env[a]
            total += value
        return total

    def to_terms(self) -> list:
        """Structured canonical form: [{"atoms": [...], "coeff": str}, ...]."""
        out = []
        for mono in sorted(self.terms):
            out.append({"atoms": [atom_name(a) for a in mono],
                        "coeff": str(self.terms[mono])})
        return out

    @classmethod
    def from_terms(cls, items) -> "SymScalar":
        terms = {}
        for item in items:
            mono = tuple(sorted(atom_from_name(s) for s in item["atoms"]))
            terms[mono] = terms.get(mono, GR_ZERO) + GaussianRational.parse(item["coeff"])
        return cls(terms)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for mono in sorted(self.terms):
            coeff = self.terms[mono]
            atoms = "*".join(atom_name(a) for a in mono)
            if coeff.is_real():
                neg = coeff.re < 0
                magnitude = -coeff.re if neg else coeff.re
                mag = str(magnitude)
                is_one = magnitude == 1
            elif coeff.re == 0:
                neg = coeff.im < 0
                magnitude = -coeff.im if neg else coeff.im
                mag = f"({'1 i' if magnitude == 1 else f'{magnitude} i'})"
                is_one = False
            else:
                neg = False
                mag = f"({coeff})"
                is_one = False
            if atoms:
                body = atoms if is_one else f"{mag}*{atoms}"
            else:
                body = mag
            if not pieces:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append(("- " if neg else "+ ") + body)
        return " ".join(pieces)

    def __repr__(self):
        return f"SymScalar<{self}>"


def _raw_sym(terms: dict) -> SymScalar:
    """Fast constructor: `terms` must already be free of zero coefficients."""
    s = SymScalar.__new__(SymScalar)
    s.terms = terms
    return s


_SYM_ZERO = SymScalar()
SYM_ZERO = _SYM_ZERO
SYM_ONE = SymScalar.from_coeff(1)


def _as_sym(x) -> SymScalar:
    if isinstance(x, SymScalar):
        return x
    if isinstance(x, (int, Rational, GaussianRational)):
        return SymScalar.from_coeff(_as_gaussian(x))
    raise TypeError(f"cannot interpret {x!r} as a symbolic scalar")


def sym(x) -> SymScalar:
    return _as_sym(x)


def sym_mul(a: SymScalar, b: SymScalar) -> SymScalar:
    """Distributive exact product; monomials merge multiset-wise."""
    return _as_sym(a) * _as_sym(b)


def sym_eval(a: SymScalar, env: Mapping[Atom, complex]) -> complex:
    """Evaluate `a` numerically; raises MissingAtom for unassigned atoms."""
    return _as_sym(a).evaluate(env)
