"""Exact meromorphic rational values in X = q^{-s}, Y = q^{-t}.

A :class:`MeroRational` is a Laurent polynomial numerator (finite monomial
map (a, b) -> coefficient, meaning coeff * X^a * Y^b) over a multiset of
binomial denominator factors (1 - c X^a Y^b).  Denominators are never
expanded, so residue extraction and pole cancellation are structural:
cancelling a factor is exact synthetic division of the numerator.

Half-integer powers of q coming from the normalizations are absorbed into
the complex coefficients; the exponents a, b stay integral.
"""

from __future__ import annotations

import cmath
import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple

NORMAL_TOL = 1e-14  # relative threshold for dropping numerator noise
DIV_TOL = 1e-9      # relative tolerance for exact-division remainders
POLE_TOL = 1e-12    # |1 - c X^a Y^b| below this at a point reports a pole

Key = Tuple[int, int]


@dataclass(frozen=True)
class Factor:
    """Denominator factor (1 - c * X^a * Y^b), canonical orientation."""

    c: complex
    a: int
    b: int

    def canonical(self) -> tuple["Factor", complex, Key]:
        """Return (factor, numerator_scale, numerator_shift) such that
        1/(1 - c X^a Y^b) = numerator_scale * X^shift / (1 - c' X^a' Y^b')
        with (a', b') > (0, 0) lexicographically."""
        if (self.a, self.b) > (0, 0):
            return self, 1.0 + 0j, (0, 0)
        if (self.a, self.b) == (0, 0):
            raise ValueError("constant denominator factor")
        # (1 - c M) = -c M (1 - c^{-1} M^{-1})
        return (Factor(1 / self.c, -self.a, -self.b), -1 / self.c,
                (-self.a, -self.b))

    def matches(self, other: "Factor", tol: float = 1e-9) -> bool:
        return (self.a, self.b) == (other.a, other.b) and \
            abs(self.c - other.c) <= tol * max(1.0, abs(self.c))


def _merge(num: Dict[Key, complex]) -> Dict[Key, complex]:
    if not num:
        return {}
    mx = max(abs(v) for v in num.values())
    if mx == 0:
        return {}
    return {k: v for k, v in num.items() if abs(v) > NORMAL_TOL * mx}


class MeroRational:
    """Immutable meromorphic rational value with structural denominator."""

    __slots__ = ("base", "num", "den")

    def __init__(self, base: int, num: Dict[Key, complex],
                 den: Iterable[Factor] = ()):
        self.base = base
        clean_num = {}
        for k, v in num.items():
            if v != 0:
                clean_num[k] = clean_num.get(k, 0j) + complex(v)
        factors = []
        for f in den:
            cf, scale, shift = f.canonical()
            if scale != 1 or shift != (0, 0):
                clean_num = {(k[0] + shift[0], k[1] + shift[1]): v * scale
                             for k, v in clean_num.items()}
            factors.append(cf)
        self.num = _merge(clean_num)
        self.den = tuple(sorted(factors, key=lambda f: (f.a, f.b, f.c.real,
                                                        f.c.imag)))

    # -- constructors ----------------------------------------------------

    @staticmethod
    def const(base: int, c: complex) -> "MeroRational":
        return MeroRational(base, {(0, 0): complex(c)})

    @staticmethod
    def monomial(base: int, c: complex, a: int, b: int) -> "MeroRational":
        return MeroRational(base, {(a, b): complex(c)})

    def is_zero(self) -> bool:
        return not self.num

    # -- ring operations --------------------------------------------------

    def _require_same_base(self, other: "MeroRational"):
        if self.base != other.base:
            raise ValueError("base mismatch")

    def __add__(self, other: "MeroRational") -> "MeroRational":
        self._require_same_base(other)
        # common denominator: multiset max of the two factor lists
        cs, co = Counter(self.den), Counter(other.den)
        common = cs | co
        num = dict(self.num)
        num = _poly_mul_factors(num, list((common - cs).elements()))
        num2 = _poly_mul_factors(dict(other.num), list((common - co).elements()))
        for k, v in num2.items():
            num[k] = num.get(k, 0j) + v
        return MeroRational(self.base, num, tuple(common.elements()))

    def __neg__(self) -> "MeroRational":
        return MeroRational(self.base, {k: -v for k, v in self.num.items()},
                            self.den)

    def __sub__(self, other: "MeroRational") -> "MeroRational":
        return self + (-other)

    def __mul__(self, other) -> "MeroRational":
        if isinstance(other, (int, float, complex)):
            return MeroRational(self.base,
                                {k: v * other for k, v in self.num.items()},
                                self.den)
        self._require_same_base(other)
        num: Dict[Key, complex] = {}
        for k1, v1 in self.num.items():
            for k2, v2 in other.num.items():
                k = (k1[0] + k2[0], k1[1] + k2[1])
                num[k] = num.get(k, 0j) + v1 * v2
        return MeroRational(self.base, num, self.den + other.den)

    __rmul__ = __mul__

    def shift(self, c: complex, a: int, b: int) -> "MeroRational":
        """Multiply by the monomial c X^a Y^b."""
        return MeroRational(self.base,
                            {(k[0] + a, k[1] + b): v * c
                             for k, v in self.num.items()}, self.den)

    # -- cancellation ------------------------------------------------------

    def cancel_factor(self, f: Factor) -> tuple["MeroRational", bool]:
        """Divide the numerator by (1 - c X^a Y^b) and drop one matching
        denominator factor; reports (self, False) when not divisible."""
        f = f.canonical()[0]
        hit = None
        for i, g in enumerate(self.den):
            if g.matches(f):
                hit = i
                break
        if hit is None:
            return self, False
        q = _poly_divide(self.num, self.den[hit])
        if q is None:
            return self, False
        den = self.den[:hit] + self.den[hit + 1:]
        return MeroRational(self.base, q, den), True

    def cancel_all(self) -> "MeroRational":
        cur = self
        progress = True
        while progress and cur.den:
            progress = False
            for f in cur.den:
                nxt, ok = cur.cancel_factor(f)
                if ok:
                    cur = nxt
                    progress = True
                    break
        return cur

    # -- evaluation ----------------------------------------------------------

    def _xy(self, s, t) -> tuple[complex, complex]:
        lnq = math.log(self.base)
        from .characters import PVal
        if isinstance(s, PVal):
            if s.is_exact:
                u = s.units % 2
                x = cmath.exp(-complex(float(s.re)) * lnq) * \
                    cmath.exp(-1j * math.pi * float(u))
            else:
                x = cmath.exp(-s.raw * lnq)
        else:
            x = cmath.exp(-complex(s) * lnq)
        if isinstance(t, PVal):
            if t.is_exact:
                u = t.units % 2
                y = cmath.exp(-complex(float(t.re)) * lnq) * \
                    cmath.exp(-1j * math.pi * float(u))
            else:
                y = cmath.exp(-t.raw * lnq)
        else:
            y = cmath.exp(-complex(t) * lnq)
        return x, y

    def eval_at(self, s, t) -> "EvalOutcome":
        """Substitute X = q^{-s}, Y = q^{-t}; a vanishing denominator factor
        is reported (with its order) rather than raised."""
        x, y = self._xy(s, t)
        poles = [f for f in self.den
                 if abs(1 - f.c * x**f.a * y**f.b) <= POLE_TOL]
        if poles:
            return EvalOutcome(None, tuple(poles), len(poles))
        val = sum(v * x**k[0] * y**k[1] for k, v in self.num.items())
        for f in self.den:
            val /= (1 - f.c * x**f.a * y**f.b)
        return EvalOutcome(complex(val), (), 0)

    def eval_value(self, s, t) -> complex:
        return self.eval_at(s, t).expect()

    def residue_along(self, f: Factor, s, t) -> complex:
        """lim (1 - c X^a Y^b) * u along the factor's zero variety; requires
        multiplicity exactly one."""
        f = f.canonical()[0]
        mult = sum(1 for g in self.den if g.matches(f))
        if mult != 1:
            raise ValueError(f"factor multiplicity {mult}, need exactly 1")
        hit = next(i for i, g in enumerate(self.den) if g.matches(f))
        rest = MeroRational(self.base, self.num,
                            self.den[:hit] + self.den[hit + 1:])
        return rest.eval_value(s, t)

    # -- line restriction ----------------------------------------------------

    def restrict_line_s(self, s0, t0) -> tuple[Dict[int, complex], complex]:
        """Restrict to the line z -> (s0 + z, t0): returns the univariate
        Laurent polynomial in Z = q^{-z} and the constant from evaluating the
        denominator factors at z = 0 (factors must not vanish there)."""
        x0, y0 = self._xy(s0, t0)
        poly: Dict[int, complex] = {}
        for (a, b), v in self.num.items():
            poly[a] = poly.get(a, 0j) + v * x0**a * y0**b
        denval = 1.0 + 0j
        for f in self.den:
            w = 1 - f.c * x0**f.a * y0**f.b
            if abs(w) <= POLE_TOL:
                raise ValueError("denominator factor vanishes on the line "
                                 "base point; cancel first")
            denval *= w
        return _merge_poly(poly), denval

    def limit_along_line(self, s0, t0, divisor_order: int = 2):
        """Value at z = 0 of u(s0+z, t0) / (1 - q^{-divisor_order * z}).

        Performs exact univariate division by (1 - Z); reports
        (value, 'exact') or falls back to two-point Richardson extrapolation
        flagged 'numeric'; raises on a non-removable singularity.
        """
        try:
            poly, denval = self.restrict_line_s(s0, t0)
        except ValueError:
            return self._limit_numeric(s0, t0, divisor_order)
        if not poly:
            return 0j, "exact"
        scale = max(abs(v) for v in poly.values())
        q1 = _laurent_divide_one_minus_z(poly)
        if q1 is None:
            # P(1) != 0: non-removable unless numerically negligible
            p1 = sum(poly.values())
            if abs(p1) > DIV_TOL * scale:
                raise ValueError("non-removable singularity at z = 0")
            return self._limit_numeric(s0, t0, divisor_order)
        val = sum(q1.values()) / divisor_order / denval
        return complex(val), "exact"

    def _limit_numeric(self, s0, t0, divisor_order: int):
        h = 1e-4
        lnq = math.log(self.base)

        def g(z):
            sv = _as_complex_param(s0, self.base) + z
            tv = _as_complex_param(t0, self.base)
            num = self.eval_value(sv, tv)
            return num / (1 - cmath.exp(-divisor_order * z * lnq))

        # symmetric two-point rule cancels the O(h) term (Richardson step)
        val = (g(h) + g(-h)) / 2
        return complex(val), "numeric"

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "base": self.base,
            "num": [{"re": v.real, "im": v.imag, "a": k[0], "b": k[1]}
                    for k, v in sorted(self.num.items())],
            "den": [{"c_re": f.c.real, "c_im": f.c.imag, "a": f.a, "b": f.b}
                    for f in self.den],
        }

    @staticmethod
    def from_json(d: dict) -> "MeroRational":
        num = {(e["a"], e["b"]): complex(e["re"], e["im"]) for e in d["num"]}
        den = [Factor(complex(e["c_re"], e["c_im"]), e["a"], e["b"])
               for e in d["den"]]
        return MeroRational(d["base"], num, den)

    def __repr__(self):
        terms = " + ".join(f"({v:.6g})X^{k[0]}Y^{k[1]}"
                           for k, v in sorted(self.num.items()))
        dens = " ".join(f"(1-({f.c:.6g})X^{f.a}Y^{f.b})" for f in self.den)
        return f"MeroRational[q={self.base}]({terms or '0'}" + \
            (f" / {dens})" if dens else ")")


@dataclass(frozen=True)
class EvalOutcome:
    value: Optional[complex]
    pole_factors: tuple
    order: int

    @property
    def is_pole(self) -> bool:
        return self.order > 0

    def expect(self) -> complex:
        if self.is_pole:
            raise ValueError(f"pole of order {self.order} at evaluation "
                             f"point: {self.pole_factors}")
        return self.value


def _as_complex_param(v, base) -> complex:
    from .characters import PVal
    if isinstance(v, PVal):
        if v.is_exact:
            return complex(float(v.re),
                           float(v.units % 2) * math.pi / math.log(base))
        return v.raw
    return complex(v)


def _merge_poly(poly: Dict[int, complex]) -> Dict[int, complex]:
    if not poly:
        return {}
    mx = max(abs(v) for v in poly.values())
    if mx == 0:
        return {}
    return {k: v for k, v in poly.items() if abs(v) > NORMAL_TOL * mx}


def _poly_mul_factors(num: Dict[Key, complex],
                      factors: list[Factor]) -> Dict[Key, complex]:
    for f in factors:
        out: Dict[Key, complex] = {}
        for k, v in num.items():
            out[k] = out.get(k, 0j) + v
            k2 = (k[0] + f.a, k[1] + f.b)
            out[k2] = out.get(k2, 0j) - v * f.c
        num = out
    return num


def _poly_divide(num: Dict[Key, complex], f: Factor) -> Optional[Dict[Key, complex]]:
    """Exact division of a Laurent polynomial by (1 - c X^a Y^b), or None.

    Keys are grouped into progressions e0 + k*(a, b); on each progression the
    division is univariate synthetic division with a remainder check.
    """
    if not num:
        return {}
    a, b = f.a, f.b
    scale = max(abs(v) for v in num.values())
    classes: Dict[Key, Dict[int, complex]] = {}
    for (ea, eb), v in num.items():
        k = (ea // a) if a != 0 else (eb // b)
        base = (ea - k * a, eb - k * b)
        classes.setdefault(base, {})[k] = v
    out: Dict[Key, complex] = {}
    for base, poly in classes.items():
        kmin = min(poly)
        kmax = max(poly)
        q: Dict[int, complex] = {}
        prev = 0j
        for k in range(kmin, kmax + 1):
            cur = poly.get(k, 0j) + f.c * prev
            q[k] = cur
            prev = cur
        # remainder: the k = kmax quotient coefficient must vanish
        if abs(prev) > DIV_TOL * max(scale, 1e-300):
            return None
        for k, v in q.items():
            if k == kmax:
                continue
            key = (base[0] + k * a, base[1] + k * b)
            out[key] = out.get(key, 0j) + v
    return _merge(out)


def _laurent_divide_one_minus_z(poly: Dict[int, complex]) -> Optional[Dict[int, complex]]:
    """Divide a univariate Laurent polynomial by (1 - Z); None if P(1) != 0."""
    scale = max(abs(v) for v in poly.values())
    kmin, kmax = min(poly), max(poly)
    q: Dict[int, complex] = {}
    prev = 0j
    for k in range(kmin, kmax + 1):
        cur = poly.get(k, 0j) + prev
        q[k] = cur
        prev = cur
    if abs(prev) > DIV_TOL * max(scale, 1e-300):
        return None
    q.pop(kmax, None)
    return q


def geometric_tail(base: int, c: complex, a: int, b: int,
                   start: int = 0) -> MeroRational:
    """Closed form of sum_{k >= start} (c X^a Y^b)^k.

    A constant symbol (a = b = 0) is accepted only when |c| < 1 (otherwise
    the series diverges identically and is rejected)."""
    if (a, b) == (0, 0):
        if abs(c) >= 1:
            raise ValueError("divergent constant geometric series")
        return MeroRational.const(base, c**start / (1 - c))
    return MeroRational(base, {(a * start, b * start): c**start},
                        (Factor(c, a, b),))
