"""Depth-zero multiplicative characters, the additive character psi, exact
principal-series parameters, and the parameter-regime classification.

A tame character is determined by an exponent k modulo q-1 with respect to
the recorded generator of the residue field's unit group; its value on the
generator is exp(2*pi*i*k/(q-1)).  Characters of F^x and E^x are the pinned
extensions ``chi_s(x) = chi(pi^{-v(x)} x) |x|^s`` with the uniformizers fixed
in :mod:`padicsbo.localfield`.

Parameters s, t may be given exactly as (rational real part, rational number
of pi/ln(q_F) units of imaginary part), which makes every lattice-membership
test below a finite rational computation; plain complex values fall back to a
1e-12 tolerance on the nearest-lattice-point defect.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .localfield import (Ext, FieldPair, Rational, UNRAMIFIED, fr, frac_part,
                         val_frac, INF)

TWO_PI = 2 * math.pi

_root_cache: dict[int, list[complex]] = {}


def _roots(n: int) -> list[complex]:
    tab = _root_cache.get(n)
    if tab is None:
        tab = [cmath.exp(2j * math.pi * m / n) for m in range(n)]
        _root_cache[n] = tab
    return tab


@dataclass(frozen=True)
class TameCharacter:
    """Depth-zero character of O^x (trivial on 1 + pi*O), field 'F' or 'E'."""

    pair: FieldPair
    field: str
    k: int

    def __post_init__(self):
        q = self.q
        object.__setattr__(self, "k", self.k % (q - 1))

    @property
    def q(self) -> int:
        return self.pair.q_f if self.field == "F" else self.pair.q_e

    def is_trivial(self) -> bool:
        return self.k == 0

    def is_quadratic_or_trivial(self) -> bool:
        return (2 * self.k) % (self.q - 1) == 0

    def __mul__(self, other: "TameCharacter") -> "TameCharacter":
        if other.field != self.field or other.pair != self.pair:
            raise ValueError("character fields differ")
        return TameCharacter(self.pair, self.field, self.k + other.k)

    def inverse(self) -> "TameCharacter":
        return TameCharacter(self.pair, self.field, -self.k)

    def power(self, n: int) -> "TameCharacter":
        return TameCharacter(self.pair, self.field, self.k * n)

    # -- values on residue units ---------------------------------------

    def _dlog(self, res) -> int:
        if self.field == "F":
            return self.pair.dlog_f[res]
        return self.pair.dlog_e[res]

    def eval_res(self, res) -> complex:
        """Value on a residue-field unit (int for F and ramified E,
        pair (a, b) for unramified E)."""
        q = self.q
        return _roots(q - 1)[(self.k * self._dlog(res)) % (q - 1)]

    def angle2_res(self, res) -> Fraction:
        """Exact argument of eval_res in units of pi, reduced mod 2."""
        q = self.q
        return Fraction(2 * self.k * self._dlog(res), q - 1) % 2

    # -- values on field elements ---------------------------------------

    def chi0(self, x) -> complex:
        """The s = 0 extension: value chi(pi^{-v(x)} x) on nonzero x."""
        if self.field == "F":
            return self.eval_res(self.pair.leading_unit_f(x))
        return self.eval_res(self.pair.leading_unit_e(self.pair.as_ext(x)))

    def eval_s(self, x, s: complex) -> complex:
        """chi_s(x) = chi0(x) * |x|^s, exact leading unit, complex power."""
        if self.field == "F":
            v = self.pair.val_f(x)
            q = self.pair.q_f
        else:
            x = self.pair.as_ext(x)
            v = self.pair.val_e(x)
            q = self.pair.q_e
        if v == INF:
            raise ValueError("multiplicative character at 0")
        return self.chi0(x) * cmath.exp(-s * v * math.log(q))

    def chi0_at_p(self) -> tuple[complex, Fraction]:
        """(value, exact angle in pi-units) of chi0 at the prime p.

        This is 1 except for a ramified extension with alpha^2 = p*u, u != 1,
        where it equals chi(u^{-1}); it is the uniformizer-mismatch phase that
        enters every lattice condition below.
        """
        if self.field == "F" or self.pair.kind == UNRAMIFIED:
            return 1.0 + 0j, Fraction(0)
        u = self.pair.alpha_sq_unit
        if u == 1:
            return 1.0 + 0j, Fraction(0)
        from .localfield import residue_mod
        res = residue_mod(1 / u, self.pair.p)
        return self.eval_res(res), self.angle2_res(res)

    def restrict_to_f(self) -> "TameCharacter":
        """Restriction of an E-character to O_F^x, computed by exact discrete
        logarithm of the embedded F-generator in the residue field of E."""
        if self.field != "E":
            raise ValueError("restrict_to_f applies to E-characters")
        pr = self.pair
        if pr.kind != UNRAMIFIED:
            return TameCharacter(pr, "F", self.k)
        d = pr.dlog_e[(pr.gen_f % pr.p, 0)]
        assert d % (pr.p + 1) == 0
        kf = self.k * (d // (pr.p + 1))
        return TameCharacter(pr, "F", kf)

    def describe(self) -> dict:
        return {"field": self.field, "k": self.k, "q": self.q}


def additive_char(pair: FieldPair, x) -> complex:
    """psi with conductor exactly O_F: exp(2*pi*i*frac_p(x_1)), where the E
    extension uses only the first coordinate."""
    if isinstance(x, Ext):
        x = x.x1
    f = frac_part(x, pair.p)
    if f == 0:
        return 1.0 + 0j
    return cmath.exp(2j * math.pi * float(f))


# ----------------------------------------------------------------------
# exact parameter values


@dataclass(frozen=True)
class PVal:
    """A principal-series parameter, exact when possible.

    Exact form: value = re + i * units * pi / ln(q_F), with re and units
    rational.  Inexact form stores a raw complex number.
    """

    re: Optional[Fraction] = None
    units: Optional[Fraction] = None
    raw: Optional[complex] = None

    @staticmethod
    def exact(re: Rational, units: Rational = 0) -> "PVal":
        return PVal(re=fr(re), units=fr(units))

    @staticmethod
    def of(x: Union["PVal", complex, float, int, Fraction]) -> "PVal":
        if isinstance(x, PVal):
            return x
        if isinstance(x, (int, Fraction)):
            return PVal.exact(x, 0)
        if isinstance(x, float):
            return PVal(raw=complex(x))
        return PVal(raw=complex(x))

    @property
    def is_exact(self) -> bool:
        return self.re is not None

    def value(self, pair: FieldPair) -> complex:
        if self.is_exact:
            u = self.units % 2
            return complex(float(self.re),
                           float(u) * math.pi / math.log(pair.q_f))
        return self.raw

    def shift(self, dre: Rational = 0, dunits: Rational = 0) -> "PVal":
        if not self.is_exact:
            raise ValueError("shift requires an exact parameter")
        return PVal.exact(self.re + fr(dre), self.units + fr(dunits))

    def neg(self) -> "PVal":
        if self.is_exact:
            return PVal.exact(-self.re, -self.units)
        return PVal(raw=-self.raw)

    def describe(self) -> dict:
        if self.is_exact:
            return {"re": str(self.re), "im_units": str(self.units)}
        return {"re": self.raw.real, "im": self.raw.imag}


@dataclass(frozen=True)
class ParamTuple:
    """(chi, s, eta, t) with chi on E, eta on F."""

    chi: TameCharacter
    s: PVal
    eta: TameCharacter
    t: PVal

    def __post_init__(self):
        if self.chi.field != "E" or self.eta.field != "F":
            raise ValueError("chi must live on E, eta on F")
        if self.chi.pair != self.eta.pair:
            raise ValueError("chi and eta must share the field pair")

    @property
    def pair(self) -> FieldPair:
        return self.chi.pair

    @property
    def s_value(self) -> complex:
        return self.s.value(self.pair)

    @property
    def t_value(self) -> complex:
        return self.t.value(self.pair)

    @property
    def is_exact(self) -> bool:
        return self.s.is_exact and self.t.is_exact

    def with_st(self, s, t) -> "ParamTuple":
        return ParamTuple(self.chi, PVal.of(s), self.eta, PVal.of(t))

    def describe(self) -> dict:
        d = self.pair.describe()
        return {
            "p": d["p"], "ext": d["ext"], "alpha_sq": d["alpha_sq"],
            "chi_k": self.chi.k, "eta_k": self.eta.k,
            "s": self.s.describe(), "t": self.t.describe(),
        }


def param_tuple(pair: FieldPair, chi_k: int, eta_k: int, s, t) -> ParamTuple:
    return ParamTuple(TameCharacter(pair, "E", chi_k), PVal.of(s),
                      TameCharacter(pair, "F", eta_k), PVal.of(t))


def params_from_json(d: dict) -> ParamTuple:
    pair = FieldPair(d["p"], d["ext"], Fraction(str(d["alpha_sq"])))
    def pv(e):
        if "im_units" in e:
            return PVal.exact(Fraction(str(e["re"])), Fraction(str(e["im_units"])))
        return PVal(raw=complex(e["re"], e.get("im", 0.0)))
    return ParamTuple(TameCharacter(pair, "E", d["chi_k"]), pv(d["s"]),
                      TameCharacter(pair, "F", d["eta_k"]), pv(d["t"]))


# ----------------------------------------------------------------------
# regimes

LATTICE_TOL = 1e-12


def _lattice_member_exact(re: Fraction, units: Fraction,
                          phase2: Fraction) -> bool:
    # condition: phase * q^{-(re + i*units*pi/lnq)} == 1
    return re == 0 and (phase2 - units) % 2 == 0


def _lattice_member_numeric(w: complex, phase2: float, lnq: float,
                            tol: float) -> bool:
    # distance from w to the nearest point of i*(phase2*pi + 2*pi*Z)/lnq
    target_im = (phase2 * math.pi) / lnq
    period = TWO_PI / lnq
    k = round((w.imag - target_im) / period)
    defect = abs(complex(w.real, w.imag - target_im - k * period))
    return defect <= tol


@dataclass(frozen=True)
class RegimeClass:
    label: str  # Generic | Backslash | Slash | Both | InL
    chi_eta_trivial: bool
    chi_etaInv_trivial: bool
    in_backslash: bool
    in_slash: bool
    in_l: bool
    exact: bool

    def describe(self) -> dict:
        return {
            "label": self.label,
            "chi_eta_trivial": self.chi_eta_trivial,
            "chi_etaInv_trivial": self.chi_etaInv_trivial,
            "backslash": self.in_backslash,
            "slash": self.in_slash,
            "in_L": self.in_l,
            "exact": self.exact,
        }


def _combo_member(params: ParamTuple, cs: int, ct: int, chalf: Fraction,
                  tol: float) -> bool:
    """Membership test for chi0(p) * q^{-(cs*s + ct*t + chalf)} = 1.

    The chi0(p) phase enters with multiplicity one: it is the value of the
    pinned extension of chi at the prime of F, which is 1 except for a
    ramified alpha^2 = p*u with chi(u) != 1."""
    pair = params.pair
    _, phase2 = params.chi.chi0_at_p()
    if params.is_exact:
        re = cs * params.s.re + ct * params.t.re + chalf
        units = fr(cs) * params.s.units + fr(ct) * params.t.units
        return _lattice_member_exact(re, units, phase2)
    w = cs * params.s_value + ct * params.t_value + complex(float(chalf))
    return _lattice_member_numeric(w, float(phase2), math.log(pair.q_f), tol)


def in_backslash(params: ParamTuple, tol: float = LATTICE_TOL) -> bool:
    cond = (params.chi.restrict_to_f() * params.eta).is_trivial()
    return cond and _combo_member(params, 2, 1, Fraction(1, 2), tol)


def in_slash(params: ParamTuple, tol: float = LATTICE_TOL) -> bool:
    cond = (params.chi.restrict_to_f() * params.eta.inverse()).is_trivial()
    return cond and _combo_member(params, 2, -1, Fraction(1, 2), tol)


def _t_lattice(params: ParamTuple, re0: Fraction, units_mod: int,
               units_res: Fraction, tol: float) -> bool:
    """t in re0 + i*pi/ln(q_F) * (units_res + units_mod*Z), exact or numeric."""
    if params.t.is_exact:
        return (params.t.re == re0
                and (params.t.units - units_res) % units_mod == 0)
    t = params.t_value
    lnq = math.log(params.pair.q_f)
    period = units_mod * math.pi / lnq
    target = float(units_res) * math.pi / lnq
    k = round((t.imag - target) / period)
    return abs(complex(t.real - float(re0),
                       t.imag - target - k * period)) <= tol


def in_l(params: ParamTuple, tol: float = LATTICE_TOL) -> bool:
    """Membership in the discrete zero set of the normalized kernel.

    Requires both unit conditions, the slash lattice condition, and the
    t-condition determined by whether chi^2 = 1 and the ramification type
    (the zero pattern of the two gamma factors in the residue constant).
    """
    eta_r = params.chi.restrict_to_f()
    if not ((eta_r * params.eta).is_trivial()
            and (eta_r * params.eta.inverse()).is_trivial()):
        return False
    if not in_slash(params, tol):
        return False
    chi2_trivial = params.chi.is_quadratic_or_trivial()
    if not chi2_trivial:
        # zeros of the F-side gamma factor at 2t in 1 + lattice
        return _t_lattice(params, Fraction(1, 2), 1, Fraction(0), tol)
    if params.pair.kind == UNRAMIFIED:
        return _t_lattice(params, Fraction(-1, 2), 1, Fraction(0), tol)
    return (_t_lattice(params, Fraction(1, 2), 2, Fraction(1), tol)
            or _t_lattice(params, Fraction(-1, 2), 2, Fraction(0), tol))


def regime(params: ParamTuple, tol: float = LATTICE_TOL) -> RegimeClass:
    eta_r = params.chi.restrict_to_f()
    ce = (eta_r * params.eta).is_trivial()
    ci = (eta_r * params.eta.inverse()).is_trivial()
    bs = in_backslash(params, tol)
    sl = in_slash(params, tol)
    il = in_l(params, tol)
    if il:
        label = "InL"
    elif bs and sl:
        label = "Both"
    elif bs:
        label = "Backslash"
    elif sl:
        label = "Slash"
    else:
        label = "Generic"
    return RegimeClass(label, ce, ci, bs, sl, il, params.is_exact)


def l_points(pair: FieldPair, chi_squared_trivial: bool) -> list[tuple[PVal, PVal]]:
    """The explicit finite lists of exceptional (s, t), one period each.

    Imaginary parts are returned in units of pi/ln(q_F); they agree with the
    closed-form membership test of :func:`in_l` modulo periodicity.
    """
    H = Fraction(1, 2)
    if pair.kind == UNRAMIFIED:
        if not chi_squared_trivial:
            return [(PVal.exact(0, 0), PVal.exact(H, 0)),
                    (PVal.exact(0, H), PVal.exact(H, 1))]
        return [(PVal.exact(-H, 0), PVal.exact(-H, 0)),
                (PVal.exact(-H, H), PVal.exact(-H, 1))]
    if not chi_squared_trivial:
        return [(PVal.exact(0, 0), PVal.exact(H, 0)),
                (PVal.exact(0, 1), PVal.exact(H, 0)),
                (PVal.exact(0, H), PVal.exact(H, 1)),
                (PVal.exact(0, Fraction(3, 2)), PVal.exact(H, 1))]
    return [(PVal.exact(-H, 0), PVal.exact(-H, 0)),
            (PVal.exact(-H, 1), PVal.exact(-H, 0)),
            (PVal.exact(0, H), PVal.exact(H, 1)),
            (PVal.exact(0, Fraction(3, 2)), PVal.exact(H, 1))]
