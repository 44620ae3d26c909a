"""
Parameter records for the diagram categories, the classified families, and
the consistency checker.

A category is determined by a sign `epsilon` (+1: cups/caps are even, -1:
cups/caps are odd), two fourth roots of unity `e`, `e_prime`, and nineteen
Laurent-polynomial parameters.  The independent ones are

    lam, lam_p   coefficients of the untwisting moves (cup/cap side),
    sig, sig_p   coefficients of the straightening moves,
    delta        value of a closed loop,
    rho          value of the curl (cup, crossing, cap),
    a, b, c      coefficients of the quadratic crossing relation
                 (crossing^2 = a + b*crossing + c*cap-then-cup),
    d .. F_p     coefficients of the sliding and pulling moves.

`check_consistency` evaluates the full equation system these parameters must
satisfy for the rewriting system to be well defined, returning the labels of
the equations that fail.  `family_instantiate` builds the classified
solution families, and `preset` provides ready-made categories.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
from dataclasses import dataclass

from .coeff import (
    GR_I,
    GR_ONE,
    GaussRational,
    LaurentPoly,
    gr,
    lp_exact_div,
    lp_int,
    lp_parse,
    lp_str,
    lp_var,
)


class ParamError(Exception):
    pass


FAMILIES = (
    "Cb0_l_s",
    "Cb0_bl_s",
    "Cb0_l_0",
    "Cb0_bl_0",
    "C0b_l_s",
    "C0b_bl_s",
    "C0b_l_0",
    "C0b_bl_0",
    "Cbb_l_s",
    "C00_l_s",
    "C00_ml_s",
    "C00_l_0",
    "C00_ml_0",
)

PRESETS = ("brauer", "bwm", "periplectic", "periplectic_q", "periplectic_q_op")

LAURENT_FIELDS = (
    "lam",
    "lam_p",
    "sig",
    "sig_p",
    "delta",
    "rho",
    "a",
    "b",
    "c",
    "d",
    "d_p",
    "f",
    "f_p",
    "D",
    "D_p",
    "E",
    "E_p",
    "F",
    "F_p",
)


def _is_fourth_root(u: GaussRational) -> bool:
    return u ** 4 == GR_ONE and not u.is_zero()


@dataclass(frozen=True)
class CategoryParams:
    epsilon: int
    e: GaussRational
    e_prime: GaussRational
    lam: LaurentPoly
    lam_p: LaurentPoly
    sig: LaurentPoly
    sig_p: LaurentPoly
    delta: LaurentPoly
    rho: LaurentPoly
    a: LaurentPoly
    b: LaurentPoly
    c: LaurentPoly
    d: LaurentPoly
    d_p: LaurentPoly
    f: LaurentPoly
    f_p: LaurentPoly
    D: LaurentPoly
    D_p: LaurentPoly
    E: LaurentPoly
    E_p: LaurentPoly
    F: LaurentPoly
    F_p: LaurentPoly

    def __post_init__(self):
        if self.epsilon not in (1, -1):
            raise ParamError("epsilon must be +1 or -1")
        if not _is_fourth_root(self.e) or not _is_fourth_root(self.e_prime):
            raise ParamError("e and e_prime must be fourth roots of unity")

    def fingerprint(self) -> str:
        payload = json.dumps(
            {
                "epsilon": self.epsilon,
                "e": str(self.e),
                "e_prime": str(self.e_prime),
                **{name: lp_str(getattr(self, name)) for name in LAURENT_FIELDS},
            },
            sort_keys=True,
        )
        return hashlib.sha1(payload.encode()).hexdigest()

    def to_json(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "e": str(self.e),
            "e_prime": str(self.e_prime),
            **{name: lp_str(getattr(self, name)) for name in LAURENT_FIELDS},
        }


_UNIT_STR = {"1": gr(1), "-1": gr(-1), "i": GR_I, "-i": -GR_I}


def unit_from_str(s: str) -> GaussRational:
    s = s.strip()
    if s not in _UNIT_STR:
        raise ParamError("expected a fourth root of unity, got %r" % s)
    return _UNIT_STR[s]


def params_from_json(data: dict) -> CategoryParams:
    return CategoryParams(
        epsilon=int(data["epsilon"]),
        e=unit_from_str(data["e"]),
        e_prime=unit_from_str(data["e_prime"]),
        **{name: lp_parse(data[name]) for name in LAURENT_FIELDS},
    )


def _sc(p: LaurentPoly, u: GaussRational) -> LaurentPoly:
    return p.scale(u)


def make_params(epsilon, e, e_prime, lam, lam_p, sig, delta, rho, a, b, c, f, f_p):
    """Assemble a full record, computing the dependent parameters.

    sig_p = epsilon*sig, d = -e*f_p, d_p = -e_prime*f, E = b - f,
    E_p = b - f_p, D = a*E/lam, D_p = a*E_p/lam_p, F = a/e, F_p = a/e_prime.
    """
    eps = gr(epsilon)
    E = b - f
    E_p = b - f_p
    return CategoryParams(
        epsilon=epsilon,
        e=e,
        e_prime=e_prime,
        lam=lam,
        lam_p=lam_p,
        sig=sig,
        sig_p=_sc(sig, eps),
        delta=delta,
        rho=rho,
        a=a,
        b=b,
        c=c,
        d=_sc(f_p, -e),
        d_p=_sc(f, -e_prime),
        f=f,
        f_p=f_p,
        D=lp_exact_div(a * E, lam),
        D_p=lp_exact_div(a * E_p, lam_p),
        E=E,
        E_p=E_p,
        F=_sc(a, e ** -1),
        F_p=_sc(a, e_prime ** -1),
    )


def vflip_params(p: CategoryParams) -> CategoryParams:
    """Parameter record of the category seen upside down.

    Reflecting every relation through a horizontal axis exchanges the primed
    and unprimed coefficients and fixes epsilon, delta, rho, a, b, c.
    """
    return dataclasses.replace(
        p,
        e=p.e_prime,
        e_prime=p.e,
        lam=p.lam_p,
        lam_p=p.lam,
        sig=p.sig_p,
        sig_p=p.sig,
        d=p.d_p,
        d_p=p.d,
        f=p.f_p,
        f_p=p.f,
        D=p.D_p,
        D_p=p.D,
        E=p.E_p,
        E_p=p.E,
        F=p.F_p,
        F_p=p.F,
    )


# ---------------------------------------------------------------------------
# Classified families


def family_instantiate(
    family: str,
    epsilon: int,
    e: GaussRational,
    bindings: dict | None = None,
    e_prime: GaussRational | None = None,
) -> CategoryParams:
    """Instantiate one of the classified families.

    `bindings` assigns Laurent polynomials to the family's free parameters
    (`lam`, `b`, `sig`, `delta`, `c` as applicable); unbound ones stay
    symbolic.  `e_prime` is only free in the families where it is not
    determined by `e`; passing it elsewhere must agree with the forced value.
    """
    if family not in FAMILIES:
        raise ParamError("unknown family %r" % family)
    if epsilon not in (1, -1):
        raise ParamError("epsilon must be +1 or -1")
    bindings = dict(bindings or {})
    eps = gr(epsilon)

    def bound(name, default_symbolic=True):
        if name in bindings:
            return bindings[name]
        return lp_var(name)

    lam = bound("lam")
    zero = LaurentPoly.zero()
    one = lp_int(1)

    group = family[:3]  # Cb0 / C0b / Cbb / C00
    lamp_kind = family.split("_")[1]  # l / bl / ml
    has_sig = family.endswith("_s")

    if group in ("Cb0", "C0b", "Cbb"):
        b = bound("b")
    else:
        b = zero
    sig = bound("sig") if has_sig else zero

    # unit constraints
    if group in ("Cb0", "C0b") or family == "C00_ml_s":
        need = gr(-epsilon)
    elif family in ("Cbb_l_s", "C00_l_s"):
        need = eps
    else:
        need = None  # C00_l_0, C00_ml_0: any fourth root
    if need is not None and e * e != need:
        raise ParamError("family %s requires e^2 = %s" % (family, need))

    # e_prime
    if family in ("Cb0_l_0", "Cb0_bl_0", "C0b_l_0", "C0b_bl_0"):
        if e_prime is None:
            raise ParamError("family %s needs an explicit e_prime" % family)
        if e_prime * e_prime != gr(-epsilon):
            raise ParamError("family %s requires e_prime^2 = -epsilon" % family)
        ep = e_prime
    elif family in ("C00_l_0", "C00_ml_0"):
        if family == "C00_l_0":
            # with c or delta nonzero the units must be mutually inverse
            forced = e ** -1
            ep = forced if e_prime is None else e_prime
            c_bind = bindings.get("c", lp_var("c"))
            delta_bind = bindings.get("delta", lp_var("delta"))
            if (not c_bind.is_zero() or not delta_bind.is_zero()) and ep != forced:
                raise ParamError("family C00_l_0 with c or delta nonzero needs e_prime = 1/e")
        else:
            ep = e_prime if e_prime is not None else e
        if not _is_fourth_root(ep):
            raise ParamError("e_prime must be a fourth root of unity")
    else:
        forced = _forced_e_prime(family, epsilon, e)
        if e_prime is not None and e_prime != forced:
            raise ParamError("family %s forces e_prime = %s" % (family, forced))
        ep = forced

    # lam_p
    if lamp_kind == "l":
        lam_p = lam
    elif lamp_kind == "bl":
        lam_p = b - lam
    else:  # ml
        lam_p = -lam

    # f / f_p
    if group == "Cb0":
        f, f_p = b, zero
    elif group == "C0b":
        f, f_p = zero, b
    elif group == "Cbb":
        f, f_p = b, b
    else:
        f, f_p = zero, zero

    # c, delta, rho, a per family
    if group in ("Cb0", "C0b"):
        c = zero
        if family in ("Cb0_l_s", "C0b_l_s"):
            sgn = gr(-epsilon) * e if group == "Cb0" else eps * e
            delta = lp_exact_div(_sc(sig * (lam + lam - b), sgn), b)
            rho_sign = gr(-epsilon) * e if group == "Cb0" else eps * e
            rho = _sc(sig * (lam - b), rho_sign)
        elif family in ("Cb0_bl_s", "C0b_bl_s"):
            delta = zero
            if group == "Cb0":
                rho = _sc(sig * lam, eps * e)
            else:
                rho = _sc(sig * (lam - b), eps * e)
        else:  # sig = 0 rows
            delta = zero
            rho = zero
        a = lam * lam - b * lam
    elif group == "Cbb":
        sig_inv = sig.unit_inverse() if sig.is_unit_monomial() else None
        if sig_inv is None:
            raise ParamError("family Cbb_l_s needs an invertible sig")
        c = _sc(lam * b * sig_inv, -e)
        delta = bound("delta")
        rho = _sc(sig * (lam - b), eps * e) + b * delta
        a = lam * lam - b * lam - c * delta
    else:  # C00
        if family == "C00_l_0":
            c = bound("c")
            delta = bound("delta")
            rho = zero
        elif family == "C00_l_s":
            c = zero
            delta = bound("delta")
            rho = _sc(sig * lam, eps * e)
        elif family == "C00_ml_s":
            c = zero
            delta = zero
            rho = _sc(sig * lam, eps * e)
        else:  # C00_ml_0
            c = zero
            delta = zero
            rho = zero
        a = lam * lam - c * delta

    return make_params(epsilon, e, ep, lam, lam_p, sig, delta, rho, a, b, c, f, f_p)


def _forced_e_prime(family: str, epsilon: int, e: GaussRational) -> GaussRational:
    eps = gr(epsilon)
    if family in ("Cb0_l_s", "Cb0_bl_s", "C0b_l_s", "C0b_bl_s", "C00_ml_s"):
        return -(eps * e)
    if family in ("Cbb_l_s", "C00_l_s"):
        return eps * e
    raise ParamError("e_prime not forced for %s" % family)


def legal_unit_choices(family: str, epsilon: int):
    """All (e, e_prime) pairs the family admits for the given epsilon."""
    roots = [gr(1), gr(-1), GR_I, -GR_I]
    out = []
    for e in roots:
        for ep in roots:
            try:
                family_instantiate(family, epsilon, e, {}, e_prime=ep)
            except ParamError:
                continue
            out.append((e, ep))
    return out


# ---------------------------------------------------------------------------
# Presets


def preset(name: str) -> CategoryParams:
    """Ready-made parameter records.  Never consults the environment."""
    if name == "brauer":
        return family_instantiate(
            "C00_l_s", 1, gr(1), {"lam": lp_int(1), "sig": lp_int(1)}
        )
    if name == "bwm":
        return family_instantiate(
            "Cbb_l_s",
            1,
            gr(1),
            {
                "lam": lp_var("v"),
                "b": lp_var("z"),
                "sig": lp_int(1),
                "delta": lp_parse("v^-1*z^-1 - v*z^-1 + 1"),
            },
        )
    if name == "periplectic":
        return family_instantiate(
            "C00_ml_s", -1, gr(1), {"lam": lp_int(1), "sig": lp_int(1)}
        )
    if name == "periplectic_q":
        return family_instantiate(
            "Cb0_bl_s",
            -1,
            gr(1),
            {"lam": lp_var("q"), "b": lp_parse("q - q^-1"), "sig": lp_int(1)},
        )
    if name == "periplectic_q_op":
        return family_instantiate(
            "C0b_bl_s",
            -1,
            gr(1),
            {"lam": lp_var("q"), "b": lp_parse("q - q^-1"), "sig": lp_int(-1)},
        )
    raise ParamError("unknown preset %r" % name)


# ---------------------------------------------------------------------------
# Consistency checker


def check_consistency(p: CategoryParams) -> list:
    """Return the labels of all consistency equations the record violates.

    An empty list means the rewriting system over these parameters is well
    defined.  Equations stated with denominators lam, lam_p, e or e_prime
    are checked in cleared form (multiplied through), which is equivalent
    because lam, lam_p are assumed invertible and e, e_prime are units.
    """
    eps = gr(p.epsilon)
    e, ep = p.e, p.e_prime
    L, Lp = p.lam, p.lam_p
    S, Sp = p.sig, p.sig_p
    dl, rho = p.delta, p.rho
    a, b, c = p.a, p.b, p.c
    d, dp = p.d, p.d_p
    f, fp = p.f, p.f_p
    D, Dp, E, Ep, F, Fp = p.D, p.D_p, p.E, p.E_p, p.F, p.F_p

    def s(poly, unit):
        return poly.scale(unit)

    fails = []

    def eq(label, lhs, rhs):
        if lhs != rhs:
            fails.append(label)

    if e ** 4 != GR_ONE or ep ** 4 != GR_ONE:
        fails.append("E4")

    if L == Lp:
        eq("QuadSame", L * L - b * L - c * dl, a)
    else:
        ok = (
            c.is_zero()
            and dl.is_zero()
            and a == -(Lp * L)
            and b == Lp + L
        )
        if not ok:
            fails.append("MuNeq")

    bf, bfp = b - f, b - fp

    # FFb system (cleared by lam / lam_p and the units where needed)
    eq("FFb.1", s(a * bf, e), L * c * S - s(L * (b - L - f) * fp, e))
    eq("FFb.2", s(a * bfp, ep), Lp * c * Sp - s(Lp * (b - Lp - fp) * f, ep))
    eq(
        "FFb.3",
        s(a * bf - f * L * L, eps * e * e),
        L * (fp * fp - f * fp - fp * L + f * L) + s(L * c * Sp, e),
    )
    eq(
        "FFb.4",
        s(a * bfp - fp * Lp * Lp, eps * ep * ep),
        Lp * (f * f - f * fp - f * Lp + fp * Lp) + s(Lp * c * S, ep),
    )
    eq("FFb.5", s(b - f - f, eps * e * e), b - fp - fp)
    eq("FFb.6", s(b - fp - fp, eps * ep * ep), b - f - f)
    eq("FFb.7", L * fp * (s(c * Sp, e) + f * L), a * bf * bfp)
    eq("FFb.8", Lp * f * (s(c * S, ep) + fp * Lp), a * bf * bfp)
    eq("FFb.9", L * (b - f - fp) - s(c * Sp, e), bf * bfp)
    eq("FFb.10", Lp * (b - fp - f) - s(c * S, ep), bf * bfp)
    eq("FFb.11", L * (s(c * Sp, e) + f * L - f * f) - s(c * Sp * f, e), a * bfp)
    eq("FFb.12", Lp * (s(c * S, ep) + fp * Lp - fp * fp) - s(c * S * fp, ep), a * bf)

    # Remaining curl / loop equations
    eq("Rest.1", c * rho, a * (b - f - fp))
    r2a = L * (s(S * c, ep) + f * fp) + c * dl * fp
    r2b = Lp * (s(Sp * c, e) + f * fp) + c * dl * f
    r2c = a * (b - f - fp)
    if not (r2a == r2b == r2c):
        fails.append("Rest.2")
    r3a = Sp * (d + s(L, e)) + f * dl
    r3b = S * (dp + s(Lp, ep)) + fp * dl
    if not (rho == r3a == r3b):
        fails.append("Rest.3")
    eq("Rest.4", S * (Lp - L) * (lp_int(1) + s(lp_int(1), eps * e * e)), LaurentPoly.zero())
    eq("Rest.5", Lp * (L - b + fp) * rho, a * bfp * dl + s(Lp * a * Sp, e))
    eq("Rest.6", L * (Lp - b + f) * rho, a * bf * dl + s(L * a * S, ep))
    eq(
        "Rest.7",
        bf * (rho * L + a * dl) + s(S * a * L, ep),
        bfp * (rho * Lp + a * dl) + s(Sp * a * Lp, e),
    )
    eq(
        "Rest.8",
        s(Lp * a * dl, e - ep ** -1),
        bfp * (s(S * a, GR_ONE) - s(Lp * rho, e))
        + Lp * (b - fp - f) * L * S
        - s(Lp * c * S * Sp, e),
    )
    eq(
        "Rest.9",
        s(L * a * dl, ep - e ** -1),
        bf * (s(Sp * a, GR_ONE) - s(L * rho, ep))
        + L * (b - f - fp) * Lp * Sp
        - s(L * c * S * Sp, ep),
    )

    # Pulling coefficient equations
    eq(
        "DEF.1",
        a * (b * E + s(c * Sp, e)),
        D * D + E * a * L + E * b * D + E * c * Sp * d + F * L * d,
    )
    eq(
        "DEF.2",
        a * L + b * D + b * b * E + c * Sp * d + s(c * Sp * b, e),
        D * E + b * E * E + s(E * c * Sp, e) + s(F * L, e),
    )
    eq(
        "DEF.3",
        b * E * c * Sp + b * F * L + s(c * c * Sp * Sp, e) + c * Sp * L * f,
        D * F + E * b * F + E * c * Sp * f + F * L * f,
    )
    eq(
        "DEF.4",
        a * (b * Ep + s(c * S, ep)),
        Dp * Dp + Ep * a * Lp + Ep * b * Dp + Ep * c * S * dp + Fp * Lp * dp,
    )
    eq(
        "DEF.5",
        a * Lp + b * Dp + b * b * Ep + c * S * dp + s(c * S * b, ep),
        Dp * Ep + b * Ep * Ep + s(Ep * c * S, ep) + s(Fp * Lp, ep),
    )
    eq(
        "DEF.6",
        b * Ep * c * S + b * Fp * Lp + s(c * c * S * S, ep) + c * S * Lp * fp,
        Dp * Fp + Ep * b * Fp + Ep * c * S * fp + Fp * Lp * fp,
    )

    if not c.is_zero():
        eq("CNZ.1", f, fp)
        if not (s(f, eps * e * e) == f and s(f, eps * ep * ep) == f):
            fails.append("CNZ.2")
        if not (E.is_zero() and Ep.is_zero()):
            fails.append("CNZ.3")
        if e * ep != GR_ONE:
            fails.append("CNZ.4")
        if not (s(c * Sp, e) + f * L).is_zero() or not (s(c * S, ep) + fp * Lp).is_zero():
            fails.append("CNZ.5")
        eq("CNZ.6", L, Lp)

    if not S.is_zero():
        if e * ep != GR_ONE:
            fails.append("SNZ.1")

    return fails


# ---------------------------------------------------------------------------
# Classification and feasibility


def classify(p: CategoryParams) -> list:
    """Family tags whose instantiation reproduces the given record."""
    bindings = {
        "lam": p.lam,
        "b": p.b,
        "sig": p.sig,
        "delta": p.delta,
        "c": p.c,
    }
    out = []
    for family in FAMILIES:
        try:
            candidate = family_instantiate(
                family, p.epsilon, p.e, bindings, e_prime=p.e_prime
            )
        except Exception:
            continue
        if candidate == p:
            out.append(family)
    return out


@dataclass(frozen=True)
class FeasibilityReport:
    status: str  # "Feasible" | "Infeasible"
    detail: str
    witnesses: tuple


def wenzl_feasibility() -> FeasibilityReport:
    """Test whether a category can host the tangle-style algebra with
    crossing relation x^2 = (q-1)x + q, untwist value q, curl value r and
    loop value (r-1)/(q-1), with q, r independent symbols.

    The imposed values force b = q-1, c = 0, a = q, lam = q, rho = r and a
    nonzero loop value, which excludes every classified family except the
    two with f-pattern (b, 0) or (0, b), equal untwist values and nonzero
    straightening coefficient.  For those rows the curl and loop formulas
    are proportional, and eliminating the free unit yields a nonzero
    polynomial obstruction.
    """
    q, r = lp_var("q"), lp_var("r")
    one = lp_int(1)
    witnesses = []
    for family in ("Cb0_l_s", "C0b_l_s"):
        # row formulas with lam = q, b = q - 1:
        #   curl  = u * 1            (u = +/- e*sig, a unit)
        #   loop  = u * (q + 1)/(q - 1)
        # imposing curl = r gives loop*(q-1) = r*(q+1), while the imposed
        # loop value gives loop*(q-1) = r - 1; the difference is the witness.
        witness = r * (q + one) - (r - one)
        witnesses.append((family, lp_str(witness)))
    detail = (
        "imposed values: a=q, b=q-1, c=0, lam=q, rho=r, loop=(r-1)/(q-1); "
        "candidate families reduce to rho = u and loop = u*(q+1)/(q-1) for a "
        "unit u, so r*(q+1) = r-1 would be required; the residual r*q + 1 "
        "is a nonzero polynomial in q, r."
    )
    return FeasibilityReport(status="Infeasible", detail=detail, witnesses=tuple(witnesses))
