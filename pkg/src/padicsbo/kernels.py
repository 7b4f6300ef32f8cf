"""The symmetry-breaking kernel family and its companions.

The kernel on E \\ F is

    K(x) = chi_{s-1/2}(x^2) * (chi_{s-1/2} eta_{t+1/2})(x2 / (x1^2 - x2^2 a^2))

for x = x1 + x2*alpha.  Writing X = q^{-s}, Y = q^{-t} (q = q_F), the value on
a product shell with v(x2) = vb and v_F(norm x) = vN is a single monomial

    K(x) = U(x) * q^{(vN+vb)/2} * X^{2 vb} * Y^{vb - vN},

with U(x) a product of unit-character values.  Pairings against a step
function phi split over the three regions F x (F \\ V), (F \\ V) x V and
V x V (V = p^n O_F, n = level of phi); the first is a finite sum of
monomials, the other two contribute explicit geometric tails whose
denominator factors are (1 - c X^2 Y^{+-1}) with c = chi0(p) q^{-1/2}.
All constancy thresholds are exact for depth-zero characters and are
re-verified programmatically on the boundary shells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Optional

from .characters import ParamTuple, PVal, TameCharacter, regime
from .localfield import Ext, FieldPair, INF, UNRAMIFIED, fr, val_frac
from .merorat import Factor, MeroRational, geometric_tail
from .stepfn import StepFunction

RAW = "raw"
NORMALIZED = "normalized"
DELTA = "delta"
RESIDUE_LINE = "residue_line"
DOUBLE_TILDE = "double_tilde"

VARIANTS = (RAW, NORMALIZED, DELTA, RESIDUE_LINE, DOUBLE_TILDE)

_CROSS_TOL = 1e-9


@dataclass
class PairingResult:
    value: MeroRational
    provenance: str  # "closed_form" | "oracle"
    metadata: dict = field(default_factory=dict)

    def eval(self, params: ParamTuple) -> complex:
        return self.value.eval_value(params.s, params.t)

    def to_json(self) -> dict:
        meta = {}
        for k, v in self.metadata.items():
            meta[k] = v.to_json() if isinstance(v, MeroRational) else v
        return {"value": self.value.to_json(), "provenance": self.provenance,
                "metadata": meta}


# ----------------------------------------------------------------------
# pointwise kernel


def _unit_part(params: ParamTuple, x: Ext) -> complex:
    """chi(ratio) * chi0(x2) * eta0(x2) * eta0(norm)^{-1} for x2 != 0."""
    pr = params.pair
    chi, eta = params.chi, params.eta
    # chi(ratio) = chi0(x) / chi0(conj x): the ratio x / conj(x) is a unit
    u = chi.chi0(x) / chi.chi0(pr.conj(x))
    u *= chi.chi0(Ext(x.x2, fr(0)))
    u *= eta.chi0(x.x2)
    u /= eta.chi0(pr.norm(x))
    return u


def kernel_shell_data(params: ParamTuple, x: Ext) -> tuple[complex, int, int]:
    """(unit value, vb, vN) so that K(x) = unit * q^{(vN+vb)/2} X^{2vb} Y^{vb-vN}."""
    pr = params.pair
    if x.x2 == 0:
        raise ValueError("kernel is defined off the line F (x2 != 0)")
    vb = pr.val_f(x.x2)
    vN = pr.val_f(pr.norm(x))
    return _unit_part(params, x), vb, vN


def kernel_pointwise(params: ParamTuple, x: Ext, cross_check: bool = True
                     ) -> complex:
    """Numeric kernel value; the product form and the rewritten absolute
    value form are both computed and cross-asserted."""
    pr = params.pair
    q = pr.q_f
    s, t = params.s_value, params.t_value
    unit, vb, vN = kernel_shell_data(params, x)
    lnq = math.log(q)
    val = unit * math.exp(0.5 * (vN + vb) * lnq) * \
        _cexp(-(2 * vb) * s * lnq) * _cexp(-(vb - vN) * t * lnq)
    if cross_check:
        chi, eta = params.chi, params.eta
        xsq = pr.mul(x, x)
        w = x.x2 / pr.norm(x)
        alt = chi.eval_s(xsq, s - 0.5) * chi.eval_s(Ext(w, fr(0)), s - 0.5) \
            * eta.eval_s(w, t + 0.5)
        if abs(alt - val) > _CROSS_TOL * max(1.0, abs(val)):
            raise AssertionError(
                f"kernel form mismatch at {x}: {val} vs {alt}")
    return val


def _cexp(z) -> complex:
    import cmath
    return cmath.exp(complex(z))


def kappa_transform(params: ParamTuple, u: Callable[[Ext], complex]
                    ) -> Callable[[Ext], complex]:
    """(kappa u)(x) = chi_{s-1/2}(x^2) u(1/x); an involution on E^x."""
    pr = params.pair
    s = params.s_value

    def ku(x: Ext) -> complex:
        if x.is_zero():
            raise ValueError("kappa transform evaluated at 0")
        return params.chi.eval_s(pr.mul(x, x), s - 0.5) * u(pr.inv(x))

    return ku


# ----------------------------------------------------------------------
# thresholds (exact for depth-zero characters, verified on boundary shells)


def second_term_threshold(pair: FieldPair, n: int) -> int:
    """Smallest N such that for v(x1) <= n-1 and x2 in p^N O_F the ratio
    character is 1 and eta0(norm) = eta0(x1^2): the ultrametric bounds give
    N >= n (unramified) and N >= n-1 (ramified)."""
    return n if pair.kind == UNRAMIFIED else n - 1


def verify_second_term_threshold(params: ParamTuple, n: int, N: int) -> bool:
    """Exact check of the two stabilization identities on the boundary
    shells; valuations are shell-determined, so representative checks
    certify the whole shells, and monotonicity covers deeper ones."""
    pr = params.pair
    chi, eta = params.chi, params.eta
    alpha = Ext.of(0, 1)
    for m in (n - 1, n - 2):
        for j in (max(N, n), max(N, n) + 1):
            for u1 in pr.unit_residues():
                x1 = fr(u1) * fr(pr.p)**m
                for u2 in pr.unit_residues():
                    x2 = fr(u2) * fr(pr.p)**j
                    num = Ext.of(x1, x2)
                    den = Ext.of(x1, -x2)
                    ratio_val = chi.chi0(num) / chi.chi0(den)
                    if abs(ratio_val - 1) > 1e-12:
                        return False
                    lhs = eta.chi0(pr.norm(num))
                    rhs = eta.chi0(x1 * x1)
                    if abs(lhs - rhs) > 1e-12:
                        return False
    return True


def stable_shell_threshold(pair: FieldPair) -> int:
    """Smallest M > 0 with chi0(a - alpha) = chi0(a) for v(a) <= -M
    (depth-zero characters stabilize already at M = 1)."""
    return 1


def verify_stable_shell_threshold(params: ParamTuple, M: int) -> bool:
    pr = params.pair
    chi = params.chi
    for m in (M, M + 1):
        for u in pr.unit_residues():
            a = fr(u) * fr(pr.p)**(-m)
            lhs = chi.chi0(Ext.of(a, -1))
            rhs = chi.chi0(Ext.of(a, 0))
            if abs(lhs - rhs) > 1e-12:
                return False
    return True


# ----------------------------------------------------------------------
# the closed-form pairing


def l_factor(pair: FieldPair, eta: TameCharacter, s) -> MeroRational:
    """Local L-factor L(s, eta_t) = (1 - q^{-s} Y)^{-1} for trivial eta,
    else 1, as a structural value in Y."""
    q = pair.q_f
    if not eta.is_trivial():
        return MeroRational.const(q, 1.0)
    c = _cexp(-complex(s) * math.log(q))
    return MeroRational(q, {(0, 0): 1.0 + 0j}, (Factor(c, 0, 1),))


def _chi0_at_p(params: ParamTuple) -> complex:
    return params.chi.chi0_at_p()[0]


def _normalizer_factors(params: ParamTuple) -> list[Factor]:
    """The inverse L-factors turning K into the holomorphic family: the
    binomials (1 - c X^2 Y^{+1}) for the plus condition and Y^{-1} for the
    minus condition, c = chi0(p) / sqrt(q)."""
    pr = params.pair
    eta_r = params.chi.restrict_to_f()
    c = _chi0_at_p(params) / math.sqrt(pr.q_f)
    out = []
    if (eta_r * params.eta).is_trivial():
        out.append(Factor(c, 2, 1))
    if (eta_r * params.eta.inverse()).is_trivial():
        out.append(Factor(c, 2, -1))
    return out


def closed_form_terms(params: ParamTuple, phi: StepFunction,
                      tail_threshold: Optional[int] = None,
                      stable_threshold: Optional[int] = None) -> dict:
    """Term-by-term meromorphic continuation of <K, phi>.

    Returns MeroRationals keyed term1, term2_finite, term2_tail,
    term3_finite, term3_single_tail, term3_double_tail.
    """
    pr = params.pair
    if phi.field != "E" or phi.pair != pr:
        raise ValueError("phi must be a step function on E over the same pair")
    q = pr.q_f
    n = phi.level
    chi, eta = params.chi, params.eta
    eta_r = chi.restrict_to_f()
    cond_plus = (eta_r * eta).is_trivial()
    cond_minus = (eta_r * eta.inverse()).is_trivial()
    c_phase = _chi0_at_p(params)
    c_sym = c_phase / math.sqrt(q)

    zero = MeroRational.const(q, 0.0)
    terms = {k: zero for k in ("term1", "term2_finite", "term2_tail",
                               "term3_finite", "term3_single_tail",
                               "term3_double_tail")}
    if not phi.coeffs:
        return terms

    Nthr = tail_threshold if tail_threshold is not None else \
        second_term_threshold(pr, n)
    j0 = max(n, Nthr)
    M = stable_threshold if stable_threshold is not None else \
        stable_shell_threshold(pr)
    if M < 1:
        raise ValueError("stable-shell threshold must be positive")

    vol2 = float(q) ** (-2 * n)
    volf = float(q) ** (-n)
    sqrtq = math.sqrt(q)

    t1: Dict[tuple, complex] = {}
    t2f = zero
    t2t = zero
    w0 = 0j

    t2f_acc: Dict[tuple, complex] = {}
    t2t_pref: Dict[tuple, complex] = {}  # monomial accumulator multiplying the tail

    for key, w in phi.coeffs.items():
        b = key.x2
        if b != 0:
            # region F x (F \ V): the kernel is constant on the whole coset
            unit, vb, vN = kernel_shell_data(params, key)
            mono = (2 * vb, vb - vN)
            t1[mono] = t1.get(mono, 0j) + w * vol2 * unit * sqrtq**(vN + vb)
            continue
        a = key.x1
        if a == 0:
            w0 = w
            continue
        # region (F \ V) x V, x1-coset through a = y
        m = pr.val_f(a)
        vN = 2 * m
        for j in range(n, j0):
            for u in pr.unit_residues():
                x2 = fr(u) * fr(pr.p)**j
                unit, vb, vN2 = kernel_shell_data(params, Ext(a, x2))
                mono = (2 * j, j - vN2)
                t2f_acc[mono] = t2f_acc.get(mono, 0j) + \
                    w * volf * float(q)**(-(j + 1)) * unit * sqrtq**(vN2 + j)
        if cond_plus:
            eta2inv = eta.power(-2).chi0(a)
            pref = w * volf * eta2inv * (1 - 1 / q) * float(q)**m
            mono = (0, -2 * m)
            t2t_pref[mono] = t2t_pref.get(mono, 0j) + pref

    terms["term1"] = MeroRational(q, t1)
    terms["term2_finite"] = MeroRational(q, t2f_acc)
    if t2t_pref:
        terms["term2_tail"] = MeroRational(q, t2t_pref) * \
            geometric_tail(q, c_sym, 2, 1, j0)

    if w0 != 0 and cond_minus:
        va = pr.val_alpha2
        chi_m2 = chi.power(-2)
        # finite shell values H(m) = Y^{2m} * c_phase^{-2m} * q^{-1} * G_m
        H: Dict[int, MeroRational] = {}
        for m in range(0, M):
            G = sum(chi_m2.chi0(Ext.of(fr(u) * fr(pr.p)**(-m), -1))
                    for u in pr.unit_residues())
            H[m] = MeroRational.monomial(q, c_phase**(-2 * m) * G / q, 0, 2 * m)
        # small-x1 geometric tail of the integral over p^{-(M-1)} O
        tail0 = MeroRational.monomial(
            q, sqrtq**va * c_phase**va * chi_m2.chi0(Ext.of(0, -1)) / q,
            0, -va)
        S_fin = tail0
        for m in range(0, M):
            S_fin = S_fin + H[m]
        A_n = MeroRational.monomial(q, c_sym**n, 2 * n, -n)
        geoA = geometric_tail(q, c_sym, 2, -1, 0)
        pref = w0 * (1 - 1 / q)
        terms["term3_single_tail"] = pref * A_n * S_fin * geoA
        if M >= 2:
            fin = MeroRational.const(q, 0.0)
            for i in range(0, M - 1):
                Ai = MeroRational.monomial(q, c_sym**i, 2 * i, -i)
                inner = MeroRational.const(q, 0.0)
                for m in range(i + 1, M):
                    inner = inner + H[m]
                fin = fin + Ai * inner
            terms["term3_finite"] = -pref * A_n * fin
        if cond_plus:
            geoAB = geometric_tail(q, c_sym, 2, 1, 0)
            ABM = MeroRational.monomial(q, c_sym**M, 2 * M, M)
            terms["term3_double_tail"] = \
                pref * (1 - 1 / q) * A_n * ABM * geoA * geoAB
    return terms


def homog_pair_1d(xi: TameCharacter, s_symbol: MeroRational,
                  g: StepFunction) -> MeroRational:
    """Pairing of the normalized homogeneous family xi~_{s-1} against a step
    function g on F, with q^{-s} represented by the monomial `s_symbol`.

    <xi_{s-1}, g> = sum over cosets away from 0 of xi(u) q^{-(s-1) v} vol
    plus, for trivial xi, the geometric tail g(0) (1-1/q) S^n / (1-S) with
    S = q^{-s}; the normalization multiplies by L(1, xi_{s-1})^{-1} = (1-S),
    so the result is holomorphic and equals (1-1/q) g(0) at S = 1.
    """
    pr = xi.pair
    if xi.field != "F" or g.field != "F":
        raise ValueError("homog_pair_1d lives on F")
    q = pr.q_f
    if len(s_symbol.num) != 1 or s_symbol.den:
        raise ValueError("s_symbol must be a single monomial")
    (sa, sb), sc = next(iter(s_symbol.num.items()))
    n = g.level
    voln = float(q)**(-n)
    finite = MeroRational.const(q, 0.0)
    acc: Dict[tuple, complex] = {}
    g0 = 0j
    for key, w in g.coeffs.items():
        if key == 0:
            g0 = w
            continue
        v = pr.val_f(key)
        # q^{-(s-1) v} = q^{v} * S^{v}
        mono = (sa * v, sb * v)
        acc[mono] = acc.get(mono, 0j) + \
            w * voln * xi.chi0(key) * float(q)**v * sc**v
    finite = MeroRational(q, acc)
    if not xi.is_trivial():
        return finite
    one_minus_s = MeroRational(q, {(0, 0): 1.0 + 0j, (sa, sb): -sc})
    out = finite * one_minus_s
    if g0 != 0:
        tail = MeroRational.monomial(q, g0 * (1 - 1 / q) * sc**n,
                                     sa * n, sb * n)
        out = out + tail
    return out


def residue_line_pairing(params: ParamTuple, phi: StepFunction) -> MeroRational:
    """(1 - q^{-1}) <L_t^eta, phi>: the holomorphic family supported on F,
    paired via the x2 = 0 slice.  L_t^eta = (eta^{-2})~_{-2t-1}(x1) delta(x2),
    so the family exponent is s = -2t, i.e. q^{-s} = Y^{-2}."""
    pr = params.pair
    q = pr.q_f
    xi = params.eta.power(-2)
    s_symbol = MeroRational.monomial(q, 1.0, 0, -2)
    g = phi.restrict_to_f()
    return homog_pair_1d(xi, s_symbol, g) * (1 - 1 / q)


def pair(variant: str, params: ParamTuple, phi: StepFunction,
         tail_threshold: Optional[int] = None,
         stable_threshold: Optional[int] = None) -> PairingResult:
    """Closed-form pairing of the selected kernel variant against phi."""
    pr = params.pair
    q = pr.q_f
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    reg = regime(params)
    if variant == DELTA:
        if not reg.in_slash:
            raise ValueError("the delta kernel lives only on the slash set")
        return PairingResult(MeroRational.const(q, phi.at_zero()),
                             "closed_form", {"regime": reg.label})
    if variant == RESIDUE_LINE:
        val = residue_line_pairing(params, phi)
        return PairingResult(val, "closed_form", {"regime": reg.label})
    if variant == DOUBLE_TILDE:
        if not reg.in_l:
            raise ValueError("the double-tilde kernel requires an L-tuple")
        base = pair(NORMALIZED, params, phi, tail_threshold, stable_threshold)
        lim, method = base.value.limit_along_line(params.s, params.t, 2)
        meta = dict(base.metadata)
        meta["limit_method"] = method
        return PairingResult(MeroRational.const(q, lim), "closed_form", meta)

    terms = closed_form_terms(params, phi, tail_threshold, stable_threshold)
    total = MeroRational.const(q, 0.0)
    for v in terms.values():
        total = total + v
    meta = {"regime": reg.label, "level_n": phi.level}
    meta.update(terms)
    if variant == RAW:
        return PairingResult(total, "closed_form", meta)
    for f in _normalizer_factors(params):
        binom = MeroRational(q, {(0, 0): 1.0 + 0j, (f.a, f.b): -f.c})
        total = total * binom
    total = total.cancel_all()
    if total.den:
        raise RuntimeError(
            f"holomorphic renormalization left denominator factors {total.den}")
    return PairingResult(total, "closed_form", meta)


# ----------------------------------------------------------------------
# brute-force oracle


def _geom_inf(r: float, k0: int) -> float:
    """sum_{k >= k0} r^k for 0 <= r < 1."""
    if r >= 1:
        raise ValueError("divergent tail")
    return r**k0 / (1 - r)


def _geom_fin(r: float, k0: int, k1: int) -> float:
    if k1 < k0:
        return 0.0
    if abs(r - 1) < 1e-15:
        return float(k1 - k0 + 1)
    return (r**k0 - r**(k1 + 1)) / (1 - r)


@dataclass
class OracleResult:
    value: complex
    tail_bound: float
    metadata: dict = field(default_factory=dict)


def oracle_pair(params: ParamTuple, phi: StepFunction, J: int = 12,
                verify_shells: int = 2) -> OracleResult:
    """Truncated shell-sum evaluation of <K, phi> with a rigorous geometric
    bound on the omitted shells.

    Valid strictly inside the local-integrability region
    Re(2s +- t + 1/2) > 0.  Integrand constancy on the product shells is the
    exact depth-zero bound (levels i+1, j+1); it is additionally re-verified
    by one level of refinement on the first `verify_shells` shells.
    """
    pr = params.pair
    q = pr.q_f
    s, t = params.s_value, params.t_value
    aR = t.real + 0.5            # exponent of q^{vN}
    bR = 2 * s.real + t.real - 0.5
    rp = q ** (-(2 * s.real + t.real + 0.5))
    rm = q ** (-(2 * s.real - t.real + 0.5))
    if rp >= 1 or rm >= 1:
        raise ValueError("parameters outside the convergence region")
    if phi.field != "E" or phi.pair != pr:
        raise ValueError("phi must be a step function on E")
    n = phi.level
    value = 0j
    bound = 0.0
    p = pr.p
    volf = float(q)**(-n)

    def kval(x1, x2):
        return kernel_pointwise(params, Ext(fr(x1), fr(x2)), cross_check=False)

    checked = 0
    for key, w in phi.coeffs.items():
        if key.x2 != 0:
            value += w * float(q)**(-2 * n) * \
                kernel_pointwise(params, key, cross_check=checked < verify_shells)
            if checked < verify_shells:
                _verify_coset_constant(params, key, n)
                checked += 1
            continue
        if key.x1 != 0:
            m = pr.val_f(key.x1)
            for j in range(n, J + 1):
                for u in pr.unit_residues():
                    value += w * volf * float(q)**(-(j + 1)) * \
                        kval(key.x1, fr(u) * fr(p)**j)
            # omitted j > J: |K| = q^{2m aR} q^{-j bR} on each shell
            bound += abs(w) * volf * (1 - 1 / q) * q**(2 * m * aR) * \
                _geom_inf(rp, J + 1)
            continue
        # V x V coset
        for i in range(n, J + 1):
            for j in range(n, J + 1):
                for u1 in pr.unit_residues():
                    for u2 in pr.unit_residues():
                        value += w * float(q)**(-(i + 1) - (j + 1)) * \
                            kval(fr(u1) * fr(p)**i, fr(u2) * fr(p)**j)
        bound += abs(w) * _t3_tail_bound(pr, aR, bR, n, J)
        if verify_shells:
            _verify_shell_constant(params, n, n)
            _verify_shell_constant(params, n, n + 1)
    return OracleResult(value, bound, {"J": J, "level": n})


def _t3_tail_bound(pr: FieldPair, aR: float, bR: float, n: int, J: int
                   ) -> float:
    """Bound on sum over {i, j >= n} \\ [n, J]^2 of vol * |K| on the shells.

    Uses |K| <= C q^{2 min(i,j) aR - j bR} with C = q^{max(aR,0) * v(alpha^2)}
    and splits along i <= j / i > j; all sums are explicit geometrics."""
    q = pr.q_f
    C = q ** (max(aR, 0.0) * pr.val_alpha2)
    rho = q ** (2 * aR - 1)
    rb = q ** (-(bR + 1))          # = q^{-Re(2s+t+1/2)} < 1
    ra = q ** (2 * aR - bR - 2)    # = q^{-Re(2s-t+1/2)} < 1
    # R1: n <= i <= j, j > J
    if abs(rho - 1) < 1e-12:
        # sum_{j>J} (j - n + 1) rb^j
        R1 = rb**(J + 1) * ((J + 2 - n) / (1 - rb) + rb / (1 - rb)**2)
    else:
        Sa = _geom_inf(ra, J + 1)
        Sb = _geom_inf(rb, J + 1)
        R1 = (rho * Sa - rho**n * Sb) / (rho - 1)
        R1 = abs(R1)
    # R2: i > max(j, J), j >= n
    sigma = q ** (2 * aR - bR - 1)
    R2 = (q**(-J) * _geom_fin(sigma, n, J) + _geom_inf(ra, J + 1)) / (q - 1)
    return (1 - 1 / q) ** 2 * C * (R1 + R2)


def _verify_coset_constant(params: ParamTuple, key: Ext, n: int):
    """One level of refinement: the kernel must repeat the parent value."""
    pr = params.pair
    p = pr.p
    base = kernel_pointwise(params, key, cross_check=False)
    step = fr(p)**n
    for d1 in range(p):
        for d2 in range(p):
            x = Ext(key.x1 + d1 * step, key.x2 + d2 * step)
            v = kernel_pointwise(params, x, cross_check=False)
            if abs(v - base) > 1e-9 * max(1.0, abs(base)):
                raise AssertionError(
                    f"kernel not constant on coset {key} at level {n}")


def _verify_shell_constant(params: ParamTuple, i: int, j: int):
    """Refinement check of constancy on product shells at levels (i+1, j+1)."""
    pr = params.pair
    p = pr.p
    for u1 in (1, p - 1):
        for u2 in (1, p - 1):
            x1 = fr(u1) * fr(p)**i
            x2 = fr(u2) * fr(p)**j
            base = kernel_pointwise(params, Ext(x1, x2), cross_check=False)
            for d1 in range(0, p, max(1, p - 1)):
                for d2 in range(0, p, max(1, p - 1)):
                    x = Ext(x1 + d1 * fr(p)**(i + 1), x2 + d2 * fr(p)**(j + 1))
                    v = kernel_pointwise(params, x, cross_check=False)
                    if abs(v - base) > 1e-9 * max(1.0, abs(base)):
                        raise AssertionError(
                            f"kernel not constant on shell ({i},{j})")


# ----------------------------------------------------------------------
# classification


def classify_support(params: ParamTuple) -> str:
    """Support of the normalized kernel: Empty | Point0 | LineF | AllE."""
    reg = regime(params)
    if reg.in_l:
        return "Empty"
    if reg.in_slash:
        return "Point0"
    if reg.in_backslash:
        return "LineF"
    return "AllE"


def kernel_space_basis(params: ParamTuple) -> dict:
    """Dimension and basis of the space of symmetry-breaking kernels."""
    reg = regime(params)
    if reg.in_l:
        return {"dimension": 2, "basis": [DELTA, DOUBLE_TILDE],
                "regime": reg.label}
    return {"dimension": 1, "basis": [NORMALIZED], "regime": reg.label}
