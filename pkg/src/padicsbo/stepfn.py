"""Locally constant compactly supported test functions on F and E.

A :class:`StepFunction` stores, at a single uniform level N, the complex
coefficient of every level-N coset meeting its support (zero coefficients are
dropped).  Representatives are canonical digit representatives, so equality
of cosets is equality of keys.  All operations return new instances; values
are never mutated after construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Union

from .localfield import (Ext, FieldPair, Rational, canonical_rep, fr,
                         val_frac, INF)

Key = Union[Fraction, Ext]

_COEFF_TOL = 0.0  # dropped coefficients must be exactly零 unless caller trims


def _canon(pair: FieldPair, field_tag: str, x, level: int) -> Key:
    if field_tag == "F":
        return canonical_rep(x, pair.p, level)
    x = pair.as_ext(x)
    return Ext(canonical_rep(x.x1, pair.p, level),
               canonical_rep(x.x2, pair.p, level))


class StepFunction:
    """Finite coset -> coefficient map at one level; immutable by convention."""

    __slots__ = ("pair", "field", "level", "coeffs", "support_m")

    def __init__(self, pair: FieldPair, field_tag: str, level: int,
                 coeffs: Dict[Key, complex], canonical: bool = False):
        self.pair = pair
        self.field = field_tag
        self.level = level
        if canonical:
            cc = {k: complex(v) for k, v in coeffs.items() if v != 0}
        else:
            cc = {}
            for k, v in coeffs.items():
                if v == 0:
                    continue
                kk = _canon(pair, field_tag, k, level)
                cc[kk] = cc.get(kk, 0) + complex(v)
            cc = {k: v for k, v in cc.items() if v != 0}
        self.coeffs = cc
        self.support_m = self._support_bound()

    def _support_bound(self) -> int:
        m = 0
        for k in self.coeffs:
            vals = [val_frac(k, self.pair.p)] if self.field == "F" else \
                [val_frac(k.x1, self.pair.p), val_frac(k.x2, self.pair.p)]
            for v in vals:
                if v != INF:
                    m = max(m, -v)
        return m

    # ------------------------------------------------------------------

    @staticmethod
    def zero(pair: FieldPair, field_tag: str, level: int = 0) -> "StepFunction":
        return StepFunction(pair, field_tag, level, {}, canonical=True)

    @staticmethod
    def indicator(pair: FieldPair, field_tag: str, rep, level: int) -> "StepFunction":
        """Characteristic function of rep + p^level * O (componentwise)."""
        return StepFunction(pair, field_tag, level, {rep: 1.0})

    @staticmethod
    def box(pair: FieldPair, field_tag: str, low: int, level: int | None = None
            ) -> "StepFunction":
        """Characteristic function of p^low * O (componentwise), stored at
        `level` (defaults to max(low, 0))."""
        if level is None:
            level = max(low, 0)
        if field_tag == "F":
            reps = pair.coset_reps_f(low, level)
        else:
            reps = pair.coset_reps_e(low, level)
        return StepFunction(pair, field_tag, level,
                            {r: 1.0 for r in reps}, canonical=True)

    # ------------------------------------------------------------------

    @property
    def dim(self) -> int:
        return 1 if self.field == "F" else 2

    def vol(self) -> Fraction:
        return (self.pair.vol_f(self.level) if self.field == "F"
                else self.pair.vol_e(self.level))

    def evaluate(self, x) -> complex:
        key = _canon(self.pair, self.field, x, self.level)
        return self.coeffs.get(key, 0j)

    def __call__(self, x) -> complex:
        return self.evaluate(x)

    def at_zero(self) -> complex:
        z = Fraction(0) if self.field == "F" else Ext.of(0, 0)
        return self.coeffs.get(_canon(self.pair, self.field, z, self.level), 0j)

    def integrate(self) -> complex:
        return sum(self.coeffs.values(), 0j) * float(self.vol())

    def abs_coeff_sum(self) -> float:
        return sum(abs(v) for v in self.coeffs.values())

    # -- linear structure ----------------------------------------------

    def scale(self, c: complex) -> "StepFunction":
        return StepFunction(self.pair, self.field, self.level,
                            {k: c * v for k, v in self.coeffs.items()},
                            canonical=True)

    def conjugate(self) -> "StepFunction":
        return StepFunction(self.pair, self.field, self.level,
                            {k: v.conjugate() for k, v in self.coeffs.items()},
                            canonical=True)

    def refine(self, level: int) -> "StepFunction":
        """Rewrite at a finer level (same function)."""
        if level < self.level:
            raise ValueError("refine only goes to finer levels")
        if level == self.level:
            return self
        p = self.pair.p
        step = fr(p) ** self.level
        digits = [d * step for d in range(p ** (level - self.level))]
        out: Dict[Key, complex] = {}
        for k, v in self.coeffs.items():
            if self.field == "F":
                for d in digits:
                    out[k + d] = v
            else:
                for d1 in digits:
                    for d2 in digits:
                        out[Ext(k.x1 + d1, k.x2 + d2)] = v
        return StepFunction(self.pair, self.field, level, out, canonical=True)

    def align(self, other: "StepFunction") -> tuple["StepFunction", "StepFunction"]:
        lv = max(self.level, other.level)
        return self.refine(lv), other.refine(lv)

    def add(self, other: "StepFunction") -> "StepFunction":
        f, g = self.align(other)
        out = dict(f.coeffs)
        for k, v in g.coeffs.items():
            out[k] = out.get(k, 0j) + v
        return StepFunction(f.pair, f.field, f.level, out, canonical=True)

    def multiply(self, other: "StepFunction") -> "StepFunction":
        """Pointwise product of two step functions."""
        f, g = self.align(other)
        out = {k: v * g.coeffs[k] for k, v in f.coeffs.items() if k in g.coeffs}
        return StepFunction(f.pair, f.field, f.level, out, canonical=True)

    def __eq__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        if (self.pair, self.field) != (other.pair, other.field):
            return False
        f, g = self.align(other)
        return f.coeffs == g.coeffs

    def approx_eq(self, other: "StepFunction", tol: float = 1e-12) -> bool:
        f, g = self.align(other)
        keys = set(f.coeffs) | set(g.coeffs)
        return all(abs(f.coeffs.get(k, 0j) - g.coeffs.get(k, 0j)) <= tol
                   for k in keys)

    # -- group actions ---------------------------------------------------

    def translate(self, c) -> "StepFunction":
        """x -> f(x + c); Haar measure makes this integral preserving."""
        if self.field == "E":
            c = self.pair.as_ext(c)
            out = {Ext(k.x1 - c.x1, k.x2 - c.x2): v
                   for k, v in self.coeffs.items()}
        else:
            c = fr(c)
            out = {k - c: v for k, v in self.coeffs.items()}
        return StepFunction(self.pair, self.field, self.level, out)

    def dilate(self, a: Rational) -> "StepFunction":
        """x -> f(x / a) for a in F^x (componentwise scaling by a)."""
        a = fr(a)
        if a == 0:
            raise ValueError("dilate by 0")
        va = val_frac(a, self.pair.p)
        lvl = self.level + va
        if self.field == "E":
            out = {Ext(k.x1 * a, k.x2 * a): v for k, v in self.coeffs.items()}
        else:
            out = {k * a: v for k, v in self.coeffs.items()}
        return StepFunction(self.pair, self.field, lvl, out)

    def reflect(self) -> "StepFunction":
        return self.dilate(-1)

    def restrict_to_f(self) -> "StepFunction":
        """For f on E: the function y -> f(y + 0*alpha) on F."""
        if self.field != "E":
            raise ValueError("restrict_to_f applies to E-functions")
        out = {k.x1: v for k, v in self.coeffs.items() if k.x2 == 0}
        return StepFunction(self.pair, "F", self.level, out, canonical=True)

    def mobius_pullback(self, b: Rational, weight_exp: int = -2) -> "StepFunction":
        """The substituted test function |1 + b x|^weight_exp * f(x/(1 + b x)).

        With the default weight |1+bx|^{-2} this is the test function that
        appears on the transformed side of the unipotent equivariance
        condition (the exponent compensates the Jacobian of x -> x/(1-bx)).
        Requires the support of f to avoid 1/b, the pole of the inverse map
        x = y/(1 - b y); the level is refined until the pullback is verified
        constant on every output coset by the exact ultrametric criterion.
        """
        pr = self.pair
        b = fr(b)
        if b == 0:
            return self
        p = pr.p
        pole = 1 / b
        on_f = self.field == "F"
        # ramification index of the coset geometry: a level-l coordinate coset
        # has normalized-valuation radius l * em
        em = 1 if (on_f or pr.kind == "unramified") else 2

        def vof(x):
            return pr.val_f(x) if on_f else pr.val_e(x)

        pole_key = _canon(pr, self.field, pole if on_f else Ext.of(pole),
                          self.level)
        if pole_key in self.coeffs:
            raise ValueError(
                f"pole 1/b = {pole} lies in the support coset {pole_key}")

        def tinv(y):
            if on_f:
                return y / (1 - b * y)
            return pr.mul(y, pr.inv(Ext(1 - b * y.x1, -b * y.x2)))

        def tfwd(x):
            if on_f:
                return x / (1 + b * x)
            return pr.mul(x, pr.inv(Ext(1 + b * x.x1, b * x.x2)))

        def one_plus_bx(x):
            return 1 + b * x if on_f else Ext(1 + b * x.x1, b * x.x2)

        vb = pr.val_f(b) * em
        cap = self.support_m + self.level + 12
        lvl = self.level
        while lvl <= cap:
            lvl_e = lvl * em
            ok = True
            out: Dict[Key, complex] = {}
            # candidate region: box around the preimages of the support cosets
            lowv = 0
            for k in self.coeffs:
                x0 = tinv(k)
                vals = ([val_frac(x0, p)] if on_f else
                        [val_frac(x0.x1, p), val_frac(x0.x2, p)])
                for v in vals:
                    if v != INF:
                        lowv = min(lowv, v - 1)
            reps = (pr.coset_reps_f(lowv, lvl) if on_f
                    else pr.coset_reps_e(lowv, lvl))
            pole_key_lvl = _canon(pr, self.field,
                                  -pole if on_f else Ext.of(-pole), lvl)
            for r in reps:
                if r == pole_key_lvl:
                    # image shell escapes to infinity; contributes 0 once the
                    # whole image lies outside the support box
                    if lvl_e <= self.support_m * em + 2 * vb:
                        ok = False
                        break
                    continue
                den_v = vof(one_plus_bx(r))
                if lvl_e - 2 * den_v >= self.level * em:
                    val = self.evaluate(tfwd(r))
                    if val != 0:
                        w = float(pr.abs_f(one_plus_bx(r)) if on_f
                                  else pr.abs_e(one_plus_bx(r)))
                        out[r] = val * w**weight_exp
                    continue
                # image is a single far shell when v(x) is constant on the
                # coset; skip if that shell misses the support box
                rv = vof(r)
                if rv != INF and rv < lvl_e and rv - den_v < -self.support_m * em:
                    continue
                ok = False
                break
            if ok:
                return StepFunction(pr, self.field, lvl, out, canonical=True)
            lvl += 1
        raise RuntimeError(
            f"mobius_pullback did not stabilize below level {cap}")

    # ------------------------------------------------------------------

    def convolve(self, other: "StepFunction") -> "StepFunction":
        """(f*g)(x) = int f(y) g(x-y) dy, exact."""
        f, g = self.align(other)
        volf = float(f.vol())
        out: Dict[Key, complex] = {}
        for k1, v1 in f.coeffs.items():
            for k2, v2 in g.coeffs.items():
                k = k1 + k2
                out[k] = out.get(k, 0j) + v1 * v2 * volf
        return StepFunction(f.pair, f.field, f.level, out)

    # ------------------------------------------------------------------

    def to_json(self) -> dict:
        def ser(k):
            if self.field == "F":
                return [f"{k.numerator}/{k.denominator}"]
            return [f"{k.x1.numerator}/{k.x1.denominator}",
                    f"{k.x2.numerator}/{k.x2.denominator}"]
        items = sorted(self.coeffs.items(), key=lambda kv: ser(kv[0]))
        return {
            "field": self.field,
            "level": self.level,
            "support_M": self.support_m,
            "coeffs": [{"rep": ser(k), "re": v.real, "im": v.imag}
                       for k, v in items],
        }

    @staticmethod
    def from_json(pair: FieldPair, d: dict) -> "StepFunction":
        coeffs = {}
        for e in d["coeffs"]:
            rep = [Fraction(s) for s in e["rep"]]
            k = rep[0] if d["field"] == "F" else Ext(rep[0], rep[1])
            coeffs[k] = complex(e["re"], e["im"])
        return StepFunction(pair, d["field"], d["level"], coeffs)

    def __repr__(self):
        return (f"StepFunction({self.field}, level={self.level}, "
                f"{len(self.coeffs)} cosets)")


def random_step(pair: FieldPair, field_tag: str, seed: int, level: int = 1,
                support_m: int = 1, mag: int = 8) -> StepFunction:
    """Reproducible pseudo-random step function: coefficients are exact
    dyadic rationals k/mag with |k| <= mag, drawn from random.Random(seed)."""
    rng = random.Random(seed)
    reps = (list(pair.coset_reps_f(-support_m, level)) if field_tag == "F"
            else list(pair.coset_reps_e(-support_m, level)))
    coeffs = {}
    for r in reps:
        re = rng.randint(-mag, mag) / mag
        im = rng.randint(-mag, mag) / mag
        if re or im:
            coeffs[r] = complex(re, im)
    return StepFunction(pair, field_tag, level, coeffs, canonical=True)
