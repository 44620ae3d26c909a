"""
Brauer diagrams: perfect matchings between m bottom dots and n top dots.

Dots are numbered 0..m-1 along the bottom (left to right) and m..m+n-1 along
the top.  Columns in the public API are 1-based.  Composition `x ∘ y` stacks
`x` on top of `y` and may close loops; the oracle reports how many.

Every diagram has a standard factorization

    (nested cup blocks) ∘ (permutation of through-strands) ∘ (nested cap blocks)

where an elementary cup block of spread s at column a creates a new pair
whose left leg sits at column a and whose right leg crosses over the s
strands in between, and cap blocks are the mirror image.  The permutation is
written as a fixed canonical reduced word (descending runs).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


class DiagramError(Exception):
    pass


@dataclass(frozen=True)
class BrauerDiagram:
    """A perfect matching on m bottom and n top dots.

    `match` is a fixed-point-free involution of range(m + n).
    """

    m: int
    n: int
    match: tuple

    def __post_init__(self):
        total = self.m + self.n
        if len(self.match) != total:
            raise DiagramError("matching has wrong size")
        for i, j in enumerate(self.match):
            if not 0 <= j < total or j == i or self.match[j] != i:
                raise DiagramError("not a fixed-point-free involution")

    # -- structure ---------------------------------------------------------

    def cup_pairs(self):
        """Top-top pairs as 1-based top columns (i, j) with i < j, sorted."""
        out = []
        for d in range(self.m, self.m + self.n):
            e = self.match[d]
            if e > d:
                out.append((d - self.m + 1, e - self.m + 1))
        return out

    def cap_pairs(self):
        """Bottom-bottom pairs as 1-based columns (i, j) with i < j, sorted."""
        out = []
        for d in range(self.m):
            e = self.match[d]
            if d < e < self.m:
                out.append((d + 1, e + 1))
        return out

    def through_pairs(self):
        """(bottom column, top column) 1-based pairs, sorted by bottom."""
        out = []
        for d in range(self.m):
            e = self.match[d]
            if e >= self.m:
                out.append((d + 1, e - self.m + 1))
        return out

    def __str__(self):
        return "BrauerDiagram(%d->%d; cups=%s caps=%s through=%s)" % (
            self.m,
            self.n,
            self.cup_pairs(),
            self.cap_pairs(),
            self.through_pairs(),
        )


def from_pairs(m: int, n: int, pairs) -> BrauerDiagram:
    """Build a diagram from 0-based dot pairs."""
    match = [-1] * (m + n)
    for i, j in pairs:
        match[i], match[j] = j, i
    return BrauerDiagram(m, n, tuple(match))


def identity_diagram(n: int) -> BrauerDiagram:
    return from_pairs(n, n, [(i, n + i) for i in range(n)])


def perm_diagram(p) -> BrauerDiagram:
    """Diagram of a permutation given in 0-based one-line notation.

    Bottom column i+1 connects to top column p[i]+1.
    """
    n = len(p)
    return from_pairs(n, n, [(i, n + p[i]) for i in range(n)])


def enumerate_diagrams(m: int, n: int):
    """All (m, n) diagrams; there are (m+n-1)!! of them when m+n is even."""
    total = m + n
    if total % 2:
        return
    dots = list(range(total))

    def rec(remaining, pairs):
        if not remaining:
            yield from_pairs(m, n, pairs)
            return
        a = remaining[0]
        for k in range(1, len(remaining)):
            b = remaining[k]
            yield from rec(remaining[1:k] + remaining[k + 1 :], pairs + [(a, b)])

    yield from rec(dots, [])


def double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


# ---------------------------------------------------------------------------
# Composition / tensor oracles (pure matching combinatorics)


def compose_oracle(top: BrauerDiagram, bot: BrauerDiagram):
    """Stack `top` onto `bot`; return (loop count, composed diagram).

    Requires top.m == bot.n.  This is an independent path-following
    implementation used as the oracle for the rewriting engine.
    """
    if top.m != bot.n:
        raise DiagramError(
            "cannot compose: top has %d inputs, bottom has %d outputs" % (top.m, bot.n)
        )
    m, k, n = bot.m, bot.n, top.n

    # Node keys: ('B', i) bottom boundary, ('T', j) top boundary, and middle
    # nodes ('M', w).  Each middle node has two edges (one through each
    # diagram); boundary nodes have one.
    def step(node, via):
        """Follow the strand through one diagram.  `via` is 'bot' or 'top'."""
        if via == "bot":
            kind, idx = node
            dot = idx if kind == "B" else m + idx  # ('M', w) enters bot's top
            out = bot.match[dot]
            return ("B", out) if out < m else ("M", out - m)
        kind, idx = node
        dot = idx if kind == "M" else top.m + idx
        out = top.match[dot]
        return ("M", out) if out < top.m else ("T", out - top.m)

    visited_mid = set()

    def walk(start, via):
        node, nxt_via = start, via
        while True:
            node = step(node, nxt_via)
            if node[0] == "M":
                visited_mid.add(node[1])
                nxt_via = "top" if nxt_via == "bot" else "bot"
            else:
                return node

    pairs = []
    done = set()
    for i in range(m):
        if ("B", i) in done:
            continue
        end = walk(("B", i), "bot")
        done.add(("B", i))
        done.add(end)
        a = i
        b = end[1] if end[0] == "B" else m + end[1]
        pairs.append((a, b))
    for j in range(n):
        if ("T", j) in done:
            continue
        end = walk(("T", j), "top")
        done.add(("T", j))
        done.add(end)
        assert end[0] == "T"
        pairs.append((m + j, m + end[1]))

    loops = 0
    for w in range(k):
        if w in visited_mid:
            continue
        loops += 1
        visited_mid.add(w)
        node, via = ("M", w), "top"
        while True:
            node = step(node, via)
            assert node[0] == "M"
            via = "top" if via == "bot" else "bot"
            if node[1] == w and via == "top":
                break
            visited_mid.add(node[1])

    return loops, from_pairs(m, n, pairs)


def tensor_oracle(left: BrauerDiagram, right: BrauerDiagram) -> BrauerDiagram:
    """Place `left` to the left of `right`."""
    m1, n1, m2, n2 = left.m, left.n, right.m, right.n
    m, n = m1 + m2, n1 + n2

    def map_left(d):
        return d if d < m1 else m + (d - m1)

    def map_right(d):
        return m1 + d if d < m2 else m + n1 + (d - m2)

    pairs = []
    for i, j in enumerate(left.match):
        if j > i:
            pairs.append((map_left(i), map_left(j)))
    for i, j in enumerate(right.match):
        if j > i:
            pairs.append((map_right(i), map_right(j)))
    return from_pairs(m, n, pairs)


def vflip_diagram(d: BrauerDiagram) -> BrauerDiagram:
    """Exchange top and bottom boundaries."""
    m, n = d.m, d.n

    def mp(i):
        return n + i if i < m else i - m

    pairs = [(mp(i), mp(j)) for i, j in enumerate(d.match) if j > i]
    pairs = [(min(a, b), max(a, b)) for a, b in pairs]
    return from_pairs(n, m, pairs)


def hflip_diagram(d: BrauerDiagram) -> BrauerDiagram:
    """Mirror the diagram left-to-right."""
    m, n = d.m, d.n

    def mp(i):
        return m - 1 - i if i < m else m + (n - 1 - (i - m))

    pairs = [tuple(sorted((mp(i), mp(j)))) for i, j in enumerate(d.match) if j > i]
    return from_pairs(m, n, pairs)


# ---------------------------------------------------------------------------
# Elementary diagrams


def elem_cross(w: int, r: int) -> BrauerDiagram:
    """Crossing of strands r, r+1 (1-based) among w strands."""
    if not 1 <= r <= w - 1:
        raise DiagramError("crossing position out of range")
    p = list(range(w))
    p[r - 1], p[r] = p[r], p[r - 1]
    return perm_diagram(p)


def elem_cup_block(w: int, s: int, a: int) -> BrauerDiagram:
    """Cup block on w strands: new pair with legs at top columns a, a+s+1.

    The right leg crosses over the s strands between the legs; an (w, w+2)
    diagram.  s = 0 gives the plain cup at column a.
    """
    if s < 0 or not 1 <= a <= w - s + 1:
        raise DiagramError("cup block out of range")
    pairs = [(w + a - 1, w + a + s)]  # 0-based top dots of the new pair
    for j in range(1, w + 1):  # bottom column j
        if j < a:
            t = j
        elif j <= a + s - 1:
            t = j + 1
        else:
            t = j + 2
        pairs.append((j - 1, w + t - 1))
    return from_pairs(w, w + 2, pairs)


def elem_cap_block(w: int, s: int, a: int) -> BrauerDiagram:
    """Cap block: mirror of the cup block; a (w+2, w) diagram.

    The capped pair sits at bottom columns a and a+s+1; the right strand
    crosses over the s strands in between before being capped.
    """
    if s < 0 or not 1 <= a <= w - s + 1:
        raise DiagramError("cap block out of range")
    pairs = [(a - 1, a + s)]
    for j in range(1, w + 3):
        if j == a or j == a + s + 1:
            continue
        if j < a:
            t = j
        elif j <= a + s:
            t = j - 1
        else:
            t = j - 2
        pairs.append((j - 1, (w + 2) + t - 1))
    return from_pairs(w + 2, w, pairs)


def elem_cup(w: int, r: int) -> BrauerDiagram:
    return elem_cup_block(w, 0, r)


def elem_cap(w: int, r: int) -> BrauerDiagram:
    return elem_cap_block(w, 0, r)


# ---------------------------------------------------------------------------
# Standard factorization


def cup_blocks(d: BrauerDiagram):
    """Peel the top pairs into elementary cup blocks, topmost block first.

    Returns a list of (s, a) with the topmost block's left column largest.
    """
    pairs = list(d.cup_pairs())
    out = []
    while pairs:
        i, j = max(pairs, key=lambda p: p[0])
        out.append((j - i - 1, i))
        pairs.remove((i, j))

        def relabel(c):
            if c < i:
                return c
            if c < j:
                return c - 1
            return c - 2

        pairs = [(relabel(x), relabel(y)) for x, y in pairs]
    return out


def cap_blocks(d: BrauerDiagram):
    """Peel the bottom pairs into elementary cap blocks, topmost block first.

    The bottom-most cap block has the largest left column; the returned list
    is ordered top to bottom (left columns increasing).
    """
    pairs = list(d.cap_pairs())
    peeled = []
    while pairs:
        i, j = max(pairs, key=lambda p: p[0])
        peeled.append((j - i - 1, i))
        pairs.remove((i, j))

        def relabel(c):
            if c < i:
                return c
            if c < j:
                return c - 1
            return c - 2

        pairs = [(relabel(x), relabel(y)) for x, y in pairs]
    return list(reversed(peeled))


def through_perm(d: BrauerDiagram):
    """0-based one-line permutation of the through-strands."""
    through = d.through_pairs()
    bots = sorted(b for b, _ in through)
    tops = sorted(t for _, t in through)
    bot_rank = {b: i for i, b in enumerate(bots)}
    top_rank = {t: i for i, t in enumerate(tops)}
    p = [0] * len(through)
    for b, t in through:
        p[bot_rank[b]] = top_rank[t]
    return tuple(p)


def count_inversions(p) -> int:
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])


def permutation_canonical_word(p):
    """Canonical reduced word for a 0-based one-line permutation.

    Returns 1-based positions [i1, i2, ...] with p = s_{i1} ∘ s_{i2} ∘ ...
    (leftmost factor outermost).  The word is a concatenation of descending
    runs s_{m_k} s_{m_k-1} ... s_k, is reduced, and never contains the
    consecutive factor s_i s_{i+1} s_i.
    """
    q = [x + 1 for x in p]
    r = len(q)
    word = []
    for k in range(1, r):
        mk = q[k - 1] - 1
        word.extend(range(mk, k - 1, -1))

        def binv(v, mk=mk, k=k):
            if v == mk + 1:
                return k
            if k <= v <= mk:
                return v + 1
            return v

        q = [binv(v) for v in q]
    assert all(q[j] == j + 1 for j in range(r)), "canonical word failed to sort"
    assert len(word) == count_inversions(p), "canonical word is not reduced"
    for idx in range(len(word) - 2):
        a, b, c = word[idx : idx + 3]
        assert not (a == c and b == a + 1), "forbidden braid factor in canonical word"
    return word


def apply_word(word, r):
    """One-line permutation of s_{word[0]} ∘ s_{word[1]} ∘ ... on r strands."""
    p = list(range(r))
    for i in word:
        p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


@dataclass(frozen=True)
class StandardWord:
    """Standard factorization data of a diagram.

    `caps` and `cups` list (spread, column) per elementary block, topmost
    first.  `perm_word` is the canonical reduced word of the through-strand
    permutation, outermost factor first.
    """

    m: int
    n: int
    caps: tuple
    perm_word: tuple
    cups: tuple


def standard_word(d: BrauerDiagram) -> StandardWord:
    return StandardWord(
        m=d.m,
        n=d.n,
        caps=tuple(cap_blocks(d)),
        perm_word=tuple(permutation_canonical_word(through_perm(d))),
        cups=tuple(cup_blocks(d)),
    )


def standard_letters(d: BrauerDiagram):
    """Bottom-to-top generator letters ('cap'|'cross'|'cup', column) of the
    standard word of `d`."""
    sw = standard_word(d)
    letters = []
    for s, a in reversed(sw.caps):
        letters.extend(("cross", a + j) for j in range(s, 0, -1))
        letters.append(("cap", a))
    letters.extend(("cross", i) for i in reversed(sw.perm_word))
    for s, a in reversed(sw.cups):
        letters.append(("cup", a))
        letters.extend(("cross", a + j) for j in range(1, s + 1))
    return letters


def diagram_from_parts(m, caps, perm, cups) -> BrauerDiagram:
    """Rebuild a diagram from standard factorization parts via the oracle.

    `caps`/`cups` are (s, a) lists topmost-first; `perm` is a 0-based
    one-line permutation of the through-strands.  Asserts no loops close.
    """
    w = m
    d = identity_diagram(m)
    for s, a in reversed(caps):
        loops, d = compose_oracle(elem_cap_block(w - 2, s, a), d)
        assert loops == 0
        w -= 2
    loops, d = compose_oracle(perm_diagram(perm), d)
    assert loops == 0
    for s, a in reversed(cups):
        loops, d = compose_oracle(elem_cup_block(w, s, a), d)
        assert loops == 0
        w += 2
    return d


def diagram_from_letters(m, letters) -> BrauerDiagram:
    """Evaluate generator letters bottom-to-top into a matching (oracle)."""
    d = identity_diagram(m)
    w = m
    for kind, pos in letters:
        if kind == "cross":
            elem = elem_cross(w, pos)
        elif kind == "cup":
            elem = elem_cup(w, pos)
            w += 2
        elif kind == "cap":
            elem = elem_cap(w - 2, pos)
            w -= 2
        else:
            raise DiagramError("bad letter kind %r" % kind)
        loops, d = compose_oracle(elem, d)
        if loops:
            raise DiagramError("letters close a loop")
    return d


def remove_top_pair(d: BrauerDiagram, i: int, j: int) -> BrauerDiagram:
    """Delete the top pair at columns (i, j) and relabel; the inverse of
    stacking an elementary cup block."""
    assert d.match[d.m + i - 1] == d.m + j - 1

    def relabel(c):
        if c < i:
            return c
        if c < j:
            return c - 1
        return c - 2

    pairs = []
    for a, b in enumerate(d.match):
        if b <= a:
            continue
        if a == d.m + i - 1:
            continue
        na = a if a < d.m else d.m + relabel(a - d.m + 1) - 1
        nb = b if b < d.m else d.m + relabel(b - d.m + 1) - 1
        pairs.append((na, nb))
    return from_pairs(d.m, d.n - 2, pairs)
