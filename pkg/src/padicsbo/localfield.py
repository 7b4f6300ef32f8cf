"""Exact arithmetic for F = Q_p and a tame quadratic extension E = F(alpha).

Elements of F are ``fractions.Fraction`` values (the dense subfield Q of Q_p);
elements of E are :class:`Ext` pairs ``(x1, x2)`` meaning ``x1 + x2*alpha``.
All valuations, absolute values, residues and Haar volumes are exact.

The extension is either

* unramified: ``alpha**2`` a unit whose residue is a non-square mod p, so the
  residue field of E is F_{p^2} and ``q_E = p**2``; or
* ramified: ``alpha**2 = p * (unit)``, so ``alpha`` is a uniformizer of E and
  ``q_E = p``.

Uniformizers are fixed once and for all: ``pi_F = p`` and ``pi_E = p``
(unramified) or ``alpha`` (ramified).  Haar measure gives the ring of
integers volume 1 on both fields, and ``d(ax) = |a| dx``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

INF = float("inf")

UNRAMIFIED = "unramified"
RAMIFIED = "ramified"

Rational = Union[int, Fraction]


def fr(x: Rational) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def val_int(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer, by repeated division."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def val_frac(x: Rational, p: int):
    """Exact p-adic valuation of a rational; +inf for 0."""
    x = fr(x)
    if x == 0:
        return INF
    return val_int(x.numerator, p) - val_int(x.denominator, p)


def residue_mod(x: Rational, p: int) -> int:
    """Image of a p-integral rational in Z/p (denominator inverted mod p)."""
    x = fr(x)
    num, den = x.numerator, x.denominator
    if den % p == 0:
        raise ValueError(f"{x} is not p-integral for p={p}")
    return (num * pow(den, -1, p)) % p


def canonical_rep(x: Rational, p: int, level: int) -> Fraction:
    """Unique representative of x + p^level*Z_p with a p-power denominator
    and all digits at positions >= level equal to zero."""
    x = fr(x)
    if x == 0:
        return Fraction(0)
    v = val_frac(x, p)
    if v >= level:
        return Fraction(0)
    den_pow = max(0, -v)
    big = p ** (den_pow + level)
    y = x * p**den_pow
    num, den = y.numerator, y.denominator
    r = (num * pow(den, -1, big)) % big
    return Fraction(r, p**den_pow)


def frac_part(x: Rational, p: int) -> Fraction:
    """p-adic fractional part: the representative of x mod Z_p in [0, 1)."""
    x = fr(x)
    v = val_frac(x, p)
    if x == 0 or v >= 0:
        return Fraction(0)
    den_pow = -v
    big = p**den_pow
    y = x * big
    num, den = y.numerator, y.denominator
    return Fraction((num * pow(den, -1, big)) % big, big)


@dataclass(frozen=True)
class Ext:
    """Element x1 + x2*alpha of the quadratic extension, exact coordinates."""

    x1: Fraction
    x2: Fraction

    @staticmethod
    def of(x1: Rational, x2: Rational = 0) -> "Ext":
        return Ext(fr(x1), fr(x2))

    def is_zero(self) -> bool:
        return self.x1 == 0 and self.x2 == 0

    def __add__(self, other: "Ext") -> "Ext":
        return Ext(self.x1 + other.x1, self.x2 + other.x2)

    def __sub__(self, other: "Ext") -> "Ext":
        return Ext(self.x1 - other.x1, self.x2 - other.x2)

    def __neg__(self) -> "Ext":
        return Ext(-self.x1, -self.x2)

    def scale(self, a: Rational) -> "Ext":
        a = fr(a)
        return Ext(self.x1 * a, self.x2 * a)


ZERO_E = Ext(Fraction(0), Fraction(0))
ONE_E = Ext(Fraction(1), Fraction(0))


class FieldPair:
    """The ambient data (p, extension kind, alpha^2) with exact arithmetic.

    Instances are immutable after construction and safe to share between
    threads; all methods are pure.
    """

    def __init__(self, p: int, kind: str, alpha_sq: Rational | None = None):
        if not _is_prime(p) or p == 2:
            raise ValueError(f"p must be an odd prime, got {p}")
        if kind not in (UNRAMIFIED, RAMIFIED):
            raise ValueError(f"kind must be '{UNRAMIFIED}' or '{RAMIFIED}'")
        if alpha_sq is None:
            ns = self._smallest_nonresidue(p)
            alpha_sq = ns if kind == UNRAMIFIED else p
        alpha_sq = fr(alpha_sq)
        v = val_frac(alpha_sq, p)
        if kind == UNRAMIFIED:
            if v != 0:
                raise ValueError("unramified alpha^2 must be a unit")
            r = residue_mod(alpha_sq, p)
            if pow(r, (p - 1) // 2, p) == 1:
                raise ValueError("unramified alpha^2 must reduce to a non-square")
        else:
            if v != 1:
                raise ValueError("ramified alpha^2 must have valuation 1")
        self.p = p
        self.kind = kind
        self.alpha_sq = alpha_sq
        self.q_f = p
        self.q_e = p * p if kind == UNRAMIFIED else p
        self.val_alpha2 = 0 if kind == UNRAMIFIED else 1
        # unit part of alpha^2 (equals alpha^2 itself when unramified)
        self.alpha_sq_unit = alpha_sq / p**self.val_alpha2
        self._build_residue_tables()

    @staticmethod
    def _smallest_nonresidue(p: int) -> int:
        squares = {pow(a, 2, p) for a in range(1, p)}
        return min(a for a in range(2, p) if a not in squares)

    # ------------------------------------------------------------------
    # residue fields

    def _build_residue_tables(self):
        p = self.p
        # F side: smallest primitive root mod p
        for g in range(2, p):
            seen, x = set(), 1
            for _ in range(p - 1):
                x = x * g % p
                seen.add(x)
            if len(seen) == p - 1:
                self.gen_f = g
                break
        self.dlog_f = {}
        x = 1
        for m in range(p - 1):
            self.dlog_f[x] = m
            x = x * self.gen_f % p
        if self.kind == UNRAMIFIED:
            r = residue_mod(self.alpha_sq, p)
            self._res_r = r

            def mulk(a, b):
                return ((a[0] * b[0] + a[1] * b[1] * r) % p,
                        (a[0] * b[1] + a[1] * b[0]) % p)

            self._mulk = mulk
            n = p * p - 1
            gen = None
            for a in range(p):
                for b in range(p):
                    if (a, b) == (0, 0):
                        continue
                    x, k = (a, b), 1
                    while x != (1, 0):
                        x = mulk(x, (a, b))
                        k += 1
                        if k > n:
                            break
                    if k == n:
                        gen = (a, b)
                        break
                if gen:
                    break
            self.gen_e = gen
            self.dlog_e = {}
            x = (1, 0)
            for m in range(n):
                self.dlog_e[x] = m
                x = mulk(x, gen)
        else:
            self.gen_e = self.gen_f
            self.dlog_e = self.dlog_f

    # ------------------------------------------------------------------
    # F arithmetic

    def val_f(self, x: Rational):
        return val_frac(x, self.p)

    def abs_f(self, x: Rational) -> Fraction:
        v = self.val_f(x)
        if v == INF:
            return Fraction(0)
        return Fraction(self.p) ** (-v)

    def leading_unit_f(self, x: Rational) -> int:
        """Residue of p^{-v(x)} x in F_p^x; rejects x = 0."""
        x = fr(x)
        if x == 0:
            raise ValueError("leading unit of 0 is undefined")
        v = val_frac(x, self.p)
        return residue_mod(x / fr(self.p) ** v, self.p)

    # ------------------------------------------------------------------
    # E arithmetic

    def as_ext(self, x) -> Ext:
        if isinstance(x, Ext):
            return x
        return Ext(fr(x), Fraction(0))

    def norm(self, x: Ext) -> Fraction:
        """Field norm x1^2 - x2^2 * alpha^2, an element of F."""
        return x.x1 * x.x1 - x.x2 * x.x2 * self.alpha_sq

    def mul(self, x: Ext, y: Ext) -> Ext:
        return Ext(x.x1 * y.x1 + x.x2 * y.x2 * self.alpha_sq,
                   x.x1 * y.x2 + x.x2 * y.x1)

    def inv(self, x: Ext) -> Ext:
        n = self.norm(x)
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in E")
        return Ext(x.x1 / n, -x.x2 / n)

    def conj(self, x: Ext) -> Ext:
        return Ext(x.x1, -x.x2)

    def val_e(self, x: Ext):
        """Normalized valuation of E (value 1 on the uniformizer of E)."""
        if x.is_zero():
            return INF
        v1, v2 = val_frac(x.x1, self.p), val_frac(x.x2, self.p)
        if self.kind == UNRAMIFIED:
            return min(v1, v2)
        return min(2 * v1, 2 * v2 + 1)

    def abs_e(self, x: Ext) -> Fraction:
        v = self.val_e(x)
        if v == INF:
            return Fraction(0)
        return Fraction(self.q_e) ** (-v)

    def leading_unit_e(self, x: Ext):
        """Residue-field image of pi_E^{-v(x)} x.

        Unramified: a pair (a, b) in F_{p^2} = F_p[ubar]; ramified: an int in
        F_p^x (the residue field of E equals that of F).
        """
        if x.is_zero():
            raise ValueError("leading unit of 0 is undefined")
        p = self.p
        v = self.val_e(x)
        if self.kind == UNRAMIFIED:
            u = x.scale(fr(p) ** (-v))
            return (residue_mod(u.x1, p), residue_mod(u.x2, p))
        u_r = self.alpha_sq_unit
        k, odd = divmod(v, 2)
        scale = fr(p) ** (-k) * u_r ** (-k)
        if odd == 0:
            return residue_mod(x.x1 * scale, p)
        return residue_mod(x.x2 * scale, p)

    # ------------------------------------------------------------------
    # cosets and shells

    def coset_reps_f(self, low: int, level: int) -> Iterator[Fraction]:
        """Canonical representatives of the level-`level` cosets tiling
        p^{low} O_F.  Requires level > ... at least low (compact box)."""
        if level < low:
            raise ValueError("level must be at least the box valuation bound")
        p = self.p
        count = p ** (level - low)
        scale = fr(p) ** low
        for j in range(count):
            yield j * scale

    def coset_reps_e(self, low: int, level: int) -> Iterator[Ext]:
        for a in self.coset_reps_f(low, level):
            for b in self.coset_reps_f(low, level):
                yield Ext(a, b)

    def unit_residues(self) -> range:
        return range(1, self.p)

    def shell_reps_f(self, m: int, level: int) -> Iterator[Fraction]:
        """Representatives of the level-`level` cosets tiling the shell
        p^m O_F^x (requires level >= m + 1)."""
        if level < m + 1:
            raise ValueError("level too coarse for the shell")
        p = self.p
        scale = fr(p) ** m
        for j in range(1, p ** (level - m)):
            if j % p != 0:
                yield j * scale

    def vol_f(self, level: int) -> Fraction:
        return Fraction(self.q_f) ** (-level)

    def vol_e(self, level: int) -> Fraction:
        """Volume of a level-`level` coordinate coset of E (product measure
        dx1 dx2, so vol(O_E) = 1)."""
        return Fraction(self.q_f) ** (-2 * level)

    # ------------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, FieldPair)
                and (self.p, self.kind, self.alpha_sq)
                == (other.p, other.kind, other.alpha_sq))

    def __hash__(self):
        return hash((self.p, self.kind, self.alpha_sq))

    def __repr__(self):
        return f"FieldPair(p={self.p}, kind={self.kind!r}, alpha_sq={self.alpha_sq})"

    def describe(self) -> dict:
        return {
            "p": self.p,
            "ext": self.kind,
            "alpha_sq": str(self.alpha_sq),
            "q_F": self.q_f,
            "q_E": self.q_e,
            "residue_generator_F": self.gen_f,
            "residue_generator_E": list(self.gen_e) if self.kind == UNRAMIFIED
            else self.gen_e,
        }
