"""
Normalization engine: rewrite generator words into the diagram basis.

A morphism is represented as a `NormalForm`: a finite linear combination of
Brauer diagrams with Laurent-polynomial coefficients.  The coefficient of a
diagram is, by definition, the coefficient in front of its standard
expression, which anchors all supersigns.

The engine works strictly bottom to top: `normalize` folds the letters of a
word one at a time with `push_generator`, which knows how to stack a single
cup, cap, or crossing on top of a diagram already in standard form.  Each
push is resolved by a case analysis on how the new letter meets the topmost
cup block (or, if there are no cups, the permutation part) of the diagram,
applying the defining relations of the category.  Signs arise only from
commuting odd letters (cups/caps when epsilon = -1) past each other.

`check_local_confluence` exhaustively verifies that applying any single
relation anywhere in a small word, then normalizing, agrees with normalizing
the word directly.  It deliberately accepts inconsistent parameter records so
that it can *detect* them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coeff import LaurentPoly, lp_exact_div, lp_int, lp_parse, lp_str
from .diagram import (
    BrauerDiagram,
    cap_blocks,
    compose_oracle,
    count_inversions,
    cup_blocks,
    diagram_from_parts,
    elem_cap_block,
    elem_cup_block,
    from_pairs,
    identity_diagram,
    permutation_canonical_word,
    remove_top_pair,
    standard_letters,
    through_perm,
)
from .diagram import vflip_diagram
from .params import CategoryParams, check_consistency, vflip_params
from .term import CAP, CROSS, CUP, GenWord, Letter


DEFAULT_FUEL = 10 ** 6


class RewriteError(Exception):
    pass


class WidthMismatch(RewriteError):
    pass


class ParamsMismatch(RewriteError):
    pass


class InconsistentParams(RewriteError):
    pass


class FuelExhausted(RewriteError):
    """The step budget ran out; reported as an engine defect, never truncated."""


# ---------------------------------------------------------------------------
# Normal forms


@dataclass
class NormalForm:
    """A linear combination of (m, n) Brauer diagrams."""

    m: int
    n: int
    terms: dict
    params_fingerprint: str

    def is_zero(self) -> bool:
        return not self.terms

    def scale(self, coeff: LaurentPoly) -> "NormalForm":
        out = {}
        for d, c in self.terms.items():
            nc = c * coeff
            if not nc.is_zero():
                out[d] = nc
        return NormalForm(self.m, self.n, out, self.params_fingerprint)

    def __add__(self, other: "NormalForm") -> "NormalForm":
        if (self.m, self.n) != (other.m, other.n):
            raise WidthMismatch("cannot add normal forms of different shapes")
        if self.params_fingerprint != other.params_fingerprint:
            raise ParamsMismatch("normal forms built with different parameters")
        out = dict(self.terms)
        for d, c in other.terms.items():
            _add_term(out, d, c)
        return NormalForm(self.m, self.n, out, self.params_fingerprint)

    def __sub__(self, other: "NormalForm") -> "NormalForm":
        return self + other.scale(lp_int(-1))

    def to_json(self) -> dict:
        items = sorted(self.terms.items(), key=lambda kv: _diagram_key(kv[0]))
        return {
            "m": self.m,
            "n": self.n,
            "terms": [
                {"pairs": _diagram_pairs(d), "coeff": lp_str(c)} for d, c in items
            ],
        }


def _diagram_pairs(d: BrauerDiagram):
    return sorted([i, j] for i, j in enumerate(d.match) if j > i)


def _diagram_key(d: BrauerDiagram):
    return tuple(tuple(p) for p in _diagram_pairs(d))


def nf_from_json(data: dict, p: CategoryParams) -> NormalForm:
    m, n = int(data["m"]), int(data["n"])
    terms = {}
    for item in data["terms"]:
        d = from_pairs(m, n, [tuple(pair) for pair in item["pairs"]])
        coeff = lp_parse(item["coeff"])
        if not coeff.is_zero():
            terms[d] = coeff
    return NormalForm(m, n, terms, _fingerprint(p))


def nf_from_diagram(d: BrauerDiagram, p: CategoryParams) -> NormalForm:
    return NormalForm(d.m, d.n, {d: lp_int(1)}, _fingerprint(p))


def _add_term(acc: dict, d: BrauerDiagram, coeff: LaurentPoly):
    cur = acc.get(d)
    new = coeff if cur is None else cur + coeff
    if new.is_zero():
        acc.pop(d, None)
    else:
        acc[d] = new


# ---------------------------------------------------------------------------
# The engine


class _Engine:
    """Memoized letter-pushing for one parameter record."""

    def __init__(self, params: CategoryParams, fingerprint: str):
        self.p = params
        self.fp = fingerprint
        self.eps = params.epsilon
        self.e_poly = LaurentPoly.const(params.e)
        self.ep_poly = LaurentPoly.const(params.e_prime)
        self.cache = {}
        self.fuel = DEFAULT_FUEL
        self._flip = None

    def sign(self, t: int) -> int:
        """epsilon^t."""
        return -1 if (self.eps == -1 and t % 2 == 1) else 1

    def _tick(self):
        self.fuel -= 1
        if self.fuel <= 0:
            raise FuelExhausted("step budget exhausted; engine defect")

    # -- entry points -------------------------------------------------------

    def push(self, kind: str, pos: int, d: BrauerDiagram) -> dict:
        key = (kind, pos, d)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        self._tick()
        if kind == CUP:
            if not 1 <= pos <= d.n + 1:
                raise WidthMismatch("cup at %d on width %d" % (pos, d.n))
            sgn, d2 = self._attach_cup(d, pos)
            out = {d2: lp_int(sgn)}
        elif kind == CROSS:
            if not 1 <= pos <= d.n - 1:
                raise WidthMismatch("crossing at %d on width %d" % (pos, d.n))
            out = self._push_cross(pos, d)
        elif kind == CAP:
            if not 1 <= pos <= d.n - 1:
                raise WidthMismatch("cap at %d on width %d" % (pos, d.n))
            out = self._push_cap(pos, d)
        else:
            raise RewriteError("unknown letter kind %r" % kind)
        self.cache[key] = out
        return out

    def push_nf(self, kind: str, pos: int, terms: dict) -> dict:
        out = {}
        for d, c in terms.items():
            for d2, c2 in self.push(kind, pos, d).items():
                _add_term(out, d2, c * c2)
        return out

    def push_letters(self, letters, terms: dict) -> dict:
        for kind, pos in letters:
            terms = self.push_nf(kind, pos, terms)
        return terms

    # -- attaching blocks ----------------------------------------------------

    def _attach_cup(self, d: BrauerDiagram, a: int):
        """Stack a plain cup at slot a on d; return (sign, diagram).

        A plain cup occupies two adjacent columns, so it can always commute
        down to its standard slot freely, picking up epsilon per cup block it
        passes.
        """
        block = elem_cup_block(d.n, 0, a)
        loops, d2 = compose_oracle(block, d)
        assert loops == 0
        idx = _peel_index(d2.cup_pairs(), (a, a + 1))
        return self.sign(idx), d2

    def _stack_block(self, d: BrauerDiagram, s: int, a: int) -> dict:
        """Normal form of an elementary cup block stacked on d.

        If the block letters land literally on top of the standard word of
        the composite, the coefficient is 1.  Otherwise the block tangles
        with the existing cups and its letters are pushed one at a time.
        """
        if s == 0:
            sgn, d2 = self._attach_cup(d, a)
            return {d2: lp_int(sgn)}
        key = (("cupblock", s), a, d)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        block_letters = [(CUP, a)] + [(CROSS, a + j) for j in range(1, s + 1)]
        loops, d2 = compose_oracle(elem_cup_block(d.n, s, a), d)
        assert loops == 0
        if standard_letters(d) + block_letters == standard_letters(d2):
            out = {d2: lp_int(1)}
        else:
            out = self.push_letters(block_letters, {d: lp_int(1)})
        self.cache[key] = out
        return out

    def _stack_block_nf(self, terms: dict, s: int, a: int) -> dict:
        out = {}
        for d, c in terms.items():
            _acc(out, self._stack_block(d, s, a), c)
        return out

    def _flip_engine(self) -> "_Engine":
        if self._flip is None:
            fq = vflip_params(self.p)
            fp = _fingerprint(fq)
            eng = _ENGINES.get(fp)
            if eng is None:
                eng = _Engine(fq, fp)
                _ENGINES[fp] = eng
            self._flip = eng
        return self._flip

    def _attach_capj_nf(self, d: BrauerDiagram, x: int, t: int) -> dict:
        """Stack a generalized cap (right strand over t middles) on d.

        d must have an identity permutation part and no cups.  If the cap
        block lands literally on top of the standard word, the coefficient
        is 1.  Otherwise the problem is reflected through a horizontal axis,
        where it becomes stacking cup blocks (the flipped d) on a single cup
        block, and solved by the engine of the flipped parameter record.
        """
        key = (("capblock", t), x, d)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        block = elem_cap_block(d.n - 2, t, x)
        loops, d2 = compose_oracle(block, d)
        assert loops == 0
        block_letters = [(CROSS, x + k) for k in range(t, 0, -1)] + [(CAP, x)]
        if standard_letters(d) + block_letters == standard_letters(d2):
            out = {d2: lp_int(1)}
        else:
            eng = self._flip_engine()
            eng.fuel = self.fuel
            try:
                base = elem_cup_block(d.n - 2, t, x)
                terms = eng.push_letters(
                    standard_letters(vflip_diagram(d)), {base: lp_int(1)}
                )
            finally:
                self.fuel = eng.fuel
            out = {vflip_diagram(k): v for k, v in terms.items()}
        self.cache[key] = out
        return out

    # -- crossing -----------------------------------------------------------

    def _push_cross(self, r: int, d: BrauerDiagram) -> dict:
        p = self.p
        cups = cup_blocks(d)
        if not cups:
            x = through_perm(d)
            y = tuple(r if v == r - 1 else (r - 1 if v == r else v) for v in x)
            base = diagram_from_parts(d.m, cap_blocks(d), y, [])
            if count_inversions(y) > count_inversions(x):
                return {base: lp_int(1)}
            # the new crossing doubles the top letter of the permutation
            out = {base: p.a, d: p.b}
            tail = self.push_nf(CAP, r, {base: lp_int(1)})
            tail = self.push_nf(CUP, r, tail)
            for d2, c in tail.items():
                _add_term(out, d2, c * p.c)
            return _prune(out)

        s1, a1 = cups[0]
        left, right = a1, a1 + s1 + 1
        rest = remove_top_pair(d, left, right)
        rest_nf = {rest: lp_int(1)}

        if r + 1 < left:
            return self._stack_block_nf(self.push(CROSS, r, rest), s1, a1)
        if r > right:
            return self._stack_block_nf(self.push(CROSS, r - 2, rest), s1, a1)
        if r == right:
            return self._stack_block(rest, s1 + 1, a1)
        if r == a1 - 1:
            # crossing grabs the straight left leg of the block: sliding
            out = {}
            dterm = self.push_letters(
                [(CUP, a1 - 1)] + [(CROSS, a1 + j) for j in range(1, s1 + 1)],
                rest_nf,
            )
            _acc(out, dterm, p.d)
            _acc(out, self._stack_block(rest, s1 + 1, a1 - 1), self.e_poly)
            _add_term(out, d, p.f)
            return _prune(out)
        if r == a1 and s1 == 0:
            return {d: p.lam}
        if r == a1:
            # crossing repeats the first crossing of the cascade: pulling
            out = {}
            dterm = self.push_letters(
                [(CUP, a1)] + [(CROSS, a1 + j) for j in range(2, s1 + 1)],
                rest_nf,
            )
            _acc(out, dterm, p.D)
            _add_term(out, d, p.E)
            _acc(out, self._stack_block(rest, s1 - 1, a1 + 1), p.F)
            return _prune(out)
        if r == a1 + s1:
            # crossing doubles the top letter of the cascade: twisting
            out = {}
            base = self._stack_block(rest, s1 - 1, a1)
            _acc(out, base, p.a)
            _add_term(out, d, p.b)
            tail = self.push_nf(CAP, a1 + s1, base)
            tail = self.push_nf(CUP, a1 + s1, tail)
            _acc(out, tail, p.c)
            return _prune(out)
        # a1 < r < a1 + s1: both strands pass under the arc; braid through
        return self._stack_block_nf(self.push(CROSS, r - 1, rest), s1, a1)

    # -- cap ----------------------------------------------------------------

    def _push_cap(self, r: int, d: BrauerDiagram) -> dict:
        p = self.p
        cups = cup_blocks(d)
        if not cups:
            return self._push_capj(r, 0, d)

        s1, a1 = cups[0]
        left, right = a1, a1 + s1 + 1
        rest = remove_top_pair(d, left, right)
        rest_nf = {rest: lp_int(1)}

        if r + 1 < left:
            out = self._stack_block_nf(self.push(CAP, r, rest), s1, a1 - 2)
            return _scale_sign(out, self.sign(1))
        if r > right:
            out = self._stack_block_nf(self.push(CAP, r - 2, rest), s1, a1)
            return _scale_sign(out, self.sign(1))
        if r == a1 - 1:
            # cap joins a free strand to the block's left leg: straightening
            letters = [(CROSS, a1 - 1 + j) for j in range(s1)]
            return _scaled(self.push_letters(letters, rest_nf), p.sig)
        if r == a1 and s1 == 0:
            return _scaled(dict(rest_nf), p.delta)
        if r == a1:
            # cap closes the block through its cascade: delooping
            letters = [(CROSS, a1 + j - 2) for j in range(2, s1 + 1)]
            return _scaled(self.push_letters(letters, rest_nf), p.rho)
        if r == right:
            if s1 == 0:
                return _scaled(dict(rest_nf), p.sig_p)
            # cap meets the cascade's top crossing: upside-down sliding
            base = self._stack_block(rest, s1 - 1, a1)
            out = {}
            _acc(out, self.push_nf(CAP, a1 + s1, base), p.d_p)
            mid = self.push_nf(CROSS, a1 + s1 + 1, base)
            _acc(out, self.push_nf(CAP, a1 + s1, mid), self.ep_poly)
            _acc(out, self.push_nf(CAP, a1 + s1 + 1, base), p.f_p)
            return _prune(out)
        if r == a1 + s1:
            # cap undoes the cascade's top crossing: upside-down untwisting
            base = self._stack_block(rest, s1 - 1, a1)
            return _scaled(self.push_nf(CAP, a1 + s1, base), p.lam_p)
        # a1 < r < a1 + s1: cap lands on the cascade: upside-down pulling
        off = r - a1
        pre = [(CUP, a1)] + [(CROSS, a1 + i) for i in range(1, off)]
        post = [(CROSS, a1 + j - 2) for j in range(off + 2, s1 + 1)]
        out = {}
        for coeff, window in (
            (p.D_p, [(CAP, r)]),
            (p.E_p, [(CROSS, r + 1), (CAP, r)]),
            (p.F_p, [(CAP, r + 1)]),
        ):
            _acc(out, self.push_letters(pre + window + post, rest_nf), coeff)
        return _prune(out)

    # -- generalized cap over a cupless diagram ------------------------------

    def _push_capj(self, x: int, t: int, d: BrauerDiagram) -> dict:
        """Push a cap whose right strand crosses over t middle strands.

        Letters, bottom to top: crossings x+t .. x+1, then the cap at x.
        d must have no cups; the cap eats through the permutation part one
        reduced-word letter at a time.
        """
        key = (("capj", t), x, d)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        self._tick()
        out = self._push_capj_cases(x, t, d)
        self.cache[key] = out
        return out

    def _push_capj_cases(self, x: int, t: int, d: BrauerDiagram) -> dict:
        p = self.p
        word = permutation_canonical_word(through_perm(d))
        if not word:
            return self._attach_capj_nf(d, x, t)
        j = word[0]
        perm = through_perm(d)
        stripped = tuple(j if v == j - 1 else (j - 1 if v == j else v) for v in perm)
        dt = diagram_from_parts(d.m, cap_blocks(d), stripped, [])

        if j + 1 < x:
            return self.push_nf(CROSS, j, self._push_capj(x, t, dt))
        if j > x + t + 1:
            return self.push_nf(CROSS, j - 2, self._push_capj(x, t, dt))
        if j == x + t + 1:
            # the crossing extends the cascade
            return self._push_capj(x, t + 1, dt)
        if j == x and t == 0:
            return _scaled(self._push_capj(x, 0, dt), p.lam_p)
        if j == x - 1:
            # upside-down sliding against the cap's straight left strand
            out = {}
            straight = self._push_capj(x - 1, 0, dt)
            shifted = [(CROSS, x + k - 2) for k in range(t, 0, -1)]
            _acc(out, self.push_letters(shifted, straight), p.d_p)
            _acc(out, self._push_capj(x - 1, t + 1, dt), self.ep_poly)
            _acc(out, self._push_capj(x, t, dt), p.f_p)
            return _prune(out)
        if j == x:
            # t >= 1: upside-down pulling at the cascade's bottom crossing
            out = {}
            straight = self._push_capj(x, 0, dt)
            shifted = [(CROSS, x + k - 2) for k in range(t, 1, -1)]
            _acc(out, self.push_letters(shifted, straight), p.D_p)
            _acc(out, self._push_capj(x, t, dt), p.E_p)
            _acc(out, self._push_capj(x + 1, t - 1, dt), p.F_p)
            return _prune(out)
        if j == x + t:
            # t >= 1: the crossing doubles the cascade's bottom letter
            out = {}
            _acc(out, self._push_capj(x, t - 1, dt), p.a)
            _acc(out, self._push_capj(x, t, dt), p.b)
            tail = self.push_nf(CAP, x + t, {dt: lp_int(1)})
            tail = self.push_nf(CUP, x + t, tail)
            rest_letters = [(CROSS, x + k) for k in range(t - 1, 0, -1)] + [(CAP, x)]
            _acc(out, self.push_letters(rest_letters, tail), p.c)
            return _prune(out)
        # x < j < x + t: the crossing swaps two middle strands under the arc
        return self.push_nf(CROSS, j - 1, self._push_capj(x, t, dt))


def _peel_index(cup_pairs, target):
    """Index at which `target` is peeled from a top-pair list (0 = first)."""
    pairs = list(cup_pairs)
    idx = 0
    while pairs:
        i, j = max(pairs, key=lambda q: q[0])
        if (i, j) == target:
            return idx
        pairs.remove((i, j))

        def relabel(c, i=i, j=j):
            if c < i:
                return c
            if c < j:
                return c - 1
            return c - 2

        new = []
        for a, b in pairs:
            na, nb = relabel(a), relabel(b)
            if (a, b) == target:
                target = (na, nb)
            new.append((na, nb))
        pairs = new
        idx += 1
    raise RewriteError("pair %r not found while peeling" % (target,))


def _scaled(terms: dict, coeff: LaurentPoly) -> dict:
    out = {}
    for d, c in terms.items():
        nc = c * coeff
        if not nc.is_zero():
            out[d] = nc
    return out


def _scale_sign(terms: dict, sgn: int) -> dict:
    if sgn == 1:
        return terms
    return {d: (-c) for d, c in terms.items()}


def _acc(acc: dict, terms: dict, coeff: LaurentPoly):
    for d, c in terms.items():
        _add_term(acc, d, c * coeff)


def _prune(terms: dict) -> dict:
    return {d: c for d, c in terms.items() if not c.is_zero()}


# ---------------------------------------------------------------------------
# Public API

_ENGINES = {}
_FPS = {}
_KNOWN_CONSISTENT = set()


def _fingerprint(p: CategoryParams) -> str:
    fp = _FPS.get(p)
    if fp is None:
        fp = p.fingerprint()
        _FPS[p] = fp
    return fp


def _engine_for(p: CategoryParams, fuel: int) -> _Engine:
    fp = _fingerprint(p)
    eng = _ENGINES.get(fp)
    if eng is None:
        eng = _Engine(p, fp)
        _ENGINES[fp] = eng
    eng.fuel = fuel
    return eng


def _require_consistent(p: CategoryParams):
    fp = _fingerprint(p)
    if fp in _KNOWN_CONSISTENT:
        return
    bad = check_consistency(p)
    if bad:
        raise InconsistentParams("parameters violate: %s" % ", ".join(bad))
    _KNOWN_CONSISTENT.add(fp)


def normalize(w: GenWord, p: CategoryParams, fuel: int = DEFAULT_FUEL) -> NormalForm:
    """Normal form of a generator word (bottom-to-top letters)."""
    _require_consistent(p)
    return _normalize_unchecked(w, p, fuel)


def _normalize_unchecked(w: GenWord, p: CategoryParams, fuel: int = DEFAULT_FUEL):
    eng = _engine_for(p, fuel)
    terms = {identity_diagram(w.domain): lp_int(1)}
    for letter in w.letters:
        terms = eng.push_nf(letter.kind, letter.pos, terms)
    return NormalForm(w.domain, w.codomain, terms, eng.fp)


def push_generator(
    g: Letter, d: BrauerDiagram, p: CategoryParams, fuel: int = DEFAULT_FUEL
) -> NormalForm:
    """Normal form of the letter g stacked on top of the diagram d."""
    _require_consistent(p)
    eng = _engine_for(p, fuel)
    n_out = g.width_out(d.n)
    terms = eng.push(g.kind, g.pos, d)
    return NormalForm(d.m, n_out, dict(terms), eng.fp)


def _check_pair(x: NormalForm, y: NormalForm, p: CategoryParams):
    fp = _fingerprint(p)
    if x.params_fingerprint != fp or y.params_fingerprint != fp:
        raise ParamsMismatch("normal forms built with different parameters")
    return fp


def nf_compose(x: NormalForm, y: NormalForm, p: CategoryParams,
               fuel: int = DEFAULT_FUEL) -> NormalForm:
    """Stack x on top of y."""
    fp = _check_pair(x, y, p)
    if x.m != y.n:
        raise WidthMismatch("compose: %d on top of %d" % (x.m, y.n))
    eng = _engine_for(p, fuel)
    out = {}
    for dx, cx in x.terms.items():
        terms = dict(y.terms)
        for kind, pos in standard_letters(dx):
            terms = eng.push_nf(kind, pos, terms)
        _acc(out, terms, cx)
    return NormalForm(y.m, x.n, _prune(out), fp)


def nf_tensor(x: NormalForm, y: NormalForm, p: CategoryParams,
              fuel: int = DEFAULT_FUEL) -> NormalForm:
    """Place x to the left of y: (x ⊗ id) ∘ (id ⊗ y)."""
    fp = _check_pair(x, y, p)
    eng = _engine_for(p, fuel)
    out = {}
    for dx, cx in x.terms.items():
        x_letters = standard_letters(dx)
        for dy, cy in y.terms.items():
            letters = [(k, pos + dx.m) for k, pos in standard_letters(dy)]
            letters += x_letters
            terms = eng.push_letters(
                letters, {identity_diagram(dx.m + dy.m): lp_int(1)}
            )
            _acc(out, terms, cx * cy)
    return NormalForm(x.m + y.m, x.n + y.n, _prune(out), fp)


def under_cross(p: CategoryParams, check: bool = True) -> NormalForm:
    """The inverse of the crossing, as a (2, 2) normal form."""
    if check:
        _require_consistent(p)
    one = lp_int(1)
    id2 = identity_diagram(2)
    hdiag = from_pairs(2, 2, [(0, 3), (1, 2)])
    cupcap = from_pairs(2, 2, [(0, 1), (2, 3)])
    inv_a = lp_exact_div(one, p.a)
    terms = {}
    _add_term(terms, id2, -lp_exact_div(p.b, p.a))
    _add_term(terms, hdiag, inv_a)
    _add_term(terms, cupcap, -lp_exact_div(p.c, p.lam * p.a))
    return NormalForm(2, 2, terms, _fingerprint(p))


# ---------------------------------------------------------------------------
# Local confluence sweep


def _letter_parity(kind: str) -> int:
    return 0 if kind == CROSS else 1


def _swap_step(g, u):
    """Commute the upper letter u below the lower letter g.

    Returns (parity exponent, (new lower, new upper)) or None if the letters
    touch the same strands.  Letters are (kind, pos) pairs; g acts first.
    """
    gk, x = g
    uk, r = u
    if gk in (CROSS, CUP):
        if uk in (CROSS, CAP):
            if r + 1 < x:
                nu = (uk, r)
                ng = (gk, x - 2 if uk == CAP else x)
            elif r > x + 1:
                nu = (uk, r - 2 if gk == CUP else r)
                ng = (gk, x)
            else:
                return None
        else:  # u is a cup inserted at slot r
            if r <= x:
                nu = (uk, r)
                ng = (gk, x + 2)
            elif r >= x + 2:
                nu = (uk, r - 2 if gk == CUP else r)
                ng = (gk, x)
            else:
                return None
    else:  # g is a cap at x
        if uk in (CROSS, CAP):
            if r + 1 < x:
                nu = (uk, r)
                ng = (gk, x - 2 if uk == CAP else x)
            elif r >= x:
                nu = (uk, r + 2)
                ng = (gk, x)
            else:
                return None
        else:
            if r <= x - 1:
                nu = (uk, r)
                ng = (gk, x + 2)
            else:
                nu = (uk, r + 2)
                ng = (gk, x)
    exponent = _letter_parity(gk) * _letter_parity(uk)
    return exponent, (nu, ng)


def _relation_steps(p: CategoryParams, letters):
    """All single relation applications inside a letter tuple.

    Yields (label, height, window length, [(coeff, replacement letters)]).
    Coefficients are LaurentPoly; replacements splice in place.
    """
    one = lp_int(1)
    n = len(letters)
    for h in range(n - 1):
        (k1, p1), (k2, p2) = letters[h], letters[h + 1]
        if k1 == CUP and k2 == CROSS:
            if p2 == p1:
                yield "untwisting", h, 2, [(p.lam, [(CUP, p1)])]
            elif p2 == p1 - 1:
                yield "sliding", h, 2, [
                    (p.d, [(CUP, p1 - 1)]),
                    (LaurentPoly.const(p.e), [(CUP, p1 - 1), (CROSS, p1)]),
                    (p.f, [(CUP, p1)]),
                ]
        elif k1 == CROSS and k2 == CAP:
            if p2 == p1:
                yield "ud-untwisting", h, 2, [(p.lam_p, [(CAP, p1)])]
            elif p2 == p1 + 1:
                yield "ud-sliding", h, 2, [
                    (p.d_p, [(CAP, p1)]),
                    (LaurentPoly.const(p.e_prime), [(CROSS, p1 + 1), (CAP, p1)]),
                    (p.f_p, [(CAP, p1 + 1)]),
                ]
        elif k1 == CUP and k2 == CAP:
            if p2 == p1:
                yield "looping", h, 2, [(p.delta, [])]
            elif p2 == p1 - 1:
                yield "straightening", h, 2, [(p.sig, [])]
            elif p2 == p1 + 1:
                yield "ud-straightening", h, 2, [(p.sig_p, [])]
        elif k1 == CROSS and k2 == CROSS and p1 == p2:
            yield "twisting", h, 2, [
                (p.a, []),
                (p.b, [(CROSS, p1)]),
                (p.c, [(CAP, p1), (CUP, p1)]),
            ]
        swap = _swap_step(letters[h], letters[h + 1])
        if swap is not None:
            exponent, (nu, ng) = swap
            sgn = -1 if (p.epsilon == -1 and exponent % 2 == 1) else 1
            yield "swap", h, 2, [(lp_int(sgn), [nu, ng])]
    for h in range(n - 2):
        (k1, p1), (k2, p2), (k3, p3) = letters[h], letters[h + 1], letters[h + 2]
        if (k1, k2, k3) == (CUP, CROSS, CAP) and p2 == p1 + 1 and p3 == p1:
            yield "delooping", h, 3, [(p.rho, [])]
        elif (k1, k2, k3) == (CUP, CROSS, CROSS) and p2 == p1 + 1 and p3 == p1:
            yield "pulling", h, 3, [
                (p.D, [(CUP, p1)]),
                (p.E, [(CUP, p1), (CROSS, p1 + 1)]),
                (p.F, [(CUP, p1 + 1)]),
            ]
        elif (k1, k2, k3) == (CROSS, CROSS, CAP) and p2 == p1 + 1 and p3 == p1:
            yield "ud-pulling", h, 3, [
                (p.D_p, [(CAP, p1)]),
                (p.E_p, [(CROSS, p1 + 1), (CAP, p1)]),
                (p.F_p, [(CAP, p1 + 1)]),
            ]
        if k1 == k2 == k3 == CROSS:
            if p1 == p3 and p2 == p1 + 1:
                yield "braid", h, 3, [
                    (one, [(CROSS, p1 + 1), (CROSS, p1), (CROSS, p1 + 1)])
                ]
            elif p1 == p3 and p2 == p1 - 1:
                yield "braid-rev", h, 3, [
                    (one, [(CROSS, p1 - 1), (CROSS, p1), (CROSS, p1 - 1)])
                ]


def check_local_confluence(
    p: CategoryParams,
    max_width: int = 6,
    max_letters: int = 4,
    fuel: int = 10 ** 8,
) -> list:
    """Compare every one-step rewrite of every small word against direct
    normalization.  Returns [(GenWord, difference NormalForm), ...]."""
    eng = _engine_for(p, fuel)
    failures = []

    def word_nf(domain, letters):
        terms = {identity_diagram(domain): lp_int(1)}
        return eng.push_letters(letters, terms)

    def visit(domain, letters, width, lhs):
        for label, h, span, replacements in _relation_steps(p, tuple(letters)):
            rhs = {}
            for coeff, repl in replacements:
                if coeff.is_zero():
                    continue
                new_letters = letters[:h] + repl + letters[h + span :]
                _acc(rhs, word_nf(domain, new_letters), coeff)
            rhs = _prune(rhs)
            if rhs != lhs:
                diff = dict(lhs)
                for d2, c2 in rhs.items():
                    _add_term(diff, d2, (-c2))
                gw = GenWord(domain, tuple(Letter(k, pos) for k, pos in letters))
                failures.append(
                    (gw, NormalForm(domain, gw.codomain, diff, eng.fp))
                )
        if len(letters) == max_letters:
            return
        candidates = [(CROSS, r) for r in range(1, width)]
        candidates += [(CAP, r) for r in range(1, width)]
        if width + 2 <= max_width:
            candidates += [(CUP, r) for r in range(1, width + 2)]
        for kind, pos in candidates:
            new_lhs = eng.push_nf(kind, pos, lhs)
            new_width = width + (2 if kind == CUP else -2 if kind == CAP else 0)
            visit(domain, letters + [(kind, pos)], new_width, new_lhs)

    for domain in range(0, max_width + 1):
        visit(domain, [], domain, {identity_diagram(domain): lp_int(1)})
    return failures
