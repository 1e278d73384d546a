"""Predicate-level construction of the wide (k >= 4) ordered graph pairs.

The structures are far too wide to materialise, so adjacency and order are
computed pointwise from unbounded-integer coordinates.  Two layers:

* the flat layer on pairs (x, y): edges determined by congruence numbers,
  type labels (S-sets decoded from a banded layout of tuples of higher-level
  vertices), deletion sets (Omega) and a sign function for extreme rows;
* the history layer on triples (x, y, history): a history is a legal
  evolution of board configurations ((k-1)-tuples of flat vertices), and
  edges additionally require the two histories to be in continuity.

All label/edge predicates are memoised; recursion always moves to strictly
higher levels and terminates at the top level m.
"""

from __future__ import annotations

import random
from collections import namedtuple

from .params import GENERAL, Params, bit

HVertex = namedtuple("HVertex", ["x", "y", "history"])


class GeneralFamily:
    """Query engine for one (k, m) pair of wide structures."""

    def __init__(self, p: Params):
        if p.variant != GENERAL:
            raise ValueError("GeneralFamily requires general-variant params")
        self.p = p
        self._cl: dict = {}
        self._s: dict = {}
        self._edge: dict = {}

    # ---- flat layer -------------------------------------------------------

    def sgn(self, a: tuple[int, int], b: tuple[int, int]) -> int:
        """Sign of a pair of vertices in distinct rows, at least one row
        extreme; 1 marks a forbidden extreme/interior range combination."""
        p = self.p
        (xa, ya), (xb, yb) = a, b
        if ya % (p.k - 1) and yb % (p.k - 1):
            raise ValueError("sgn needs an extreme row")
        ia, ib = p.idx(xa), p.idx(xb)
        if ia == ib:
            return 0
        (xh, yh), (xl, yl), t = ((a, b, ib) if ia > ib else (b, a, ia))
        if yh == p.k - 1 and 0 < yl < p.k - 1 and p.rng_num(xl, t) == 0:
            return 1
        if yh == 0 and 0 < yl < p.k - 1 and p.rng_num(xl, t) == 1:
            return 1
        return 0

    def level_vertex(self, i: int, row: int, rel: int) -> tuple[int, int]:
        """The level-i vertex with relative coordinate rel in the row."""
        p = self.p
        return (rel * p.col(i) + p.half_sum(i), row)

    def band_tuple(self, i: int, j: int):
        """The j-th element of the banded layout over level-(i+1) vertices:
        two single copies of the level list, then its Cartesian powers of
        arity 1..k-2; total length cl*_{i+1}."""
        p = self.p
        w = p.k * p.gamma_star[p.m - i - 1]
        rows = p.gamma_star[p.m - i - 1]

        def nth(t):
            return self.level_vertex(i + 1, t // rows, t % rows)

        if j < 2 * w:
            return (nth(j % w),)
        j -= 2 * w
        for d in range(1, p.k - 1):
            if j < w ** d:
                out = []
                for _ in range(d):
                    j, r = divmod(j, w)
                    out.append(nth(r))
                return tuple(out)
            j -= w ** d
        raise ValueError("band index out of range")

    def s_set(self, x: int, y: int) -> frozenset:
        """The S component of the type label: congruence labels this vertex
        must not be adjacent to, decoded from the banded layout."""
        key = (x, y)
        hit = self._s.get(key)
        if hit is not None:
            return hit
        p = self.p
        i = p.idx(x)
        if i == p.m:
            out = frozenset()
        else:
            guard = p.gamma_star[p.m - i - 1]
            j = (p.floor_abs(x, i) // (p.k - 1)) % p.cl_star[i + 1]
            if j < guard or j >= p.cl_star[i + 1] - guard:
                out = frozenset()
            else:
                out = frozenset(self.cl(u, v) for u, v in self.band_tuple(i, j))
        self._s[key] = out
        return out

    def cl(self, x: int, y: int):
        """Congruence label: (cc, row, index, range number, S-set)."""
        key = (x, y)
        hit = self._cl.get(key)
        if hit is not None:
            return hit
        p = self.p
        i = p.idx(x)
        out = (p.cc(p.floor_abs(x, i), y), y, i, p.rng_num(x, i),
               self.s_set(x, y))
        self._cl[key] = out
        return out

    def in_omega(self, xo: int, yo: int, u: int, v: int) -> bool:
        """Is (u, v) in the deletion set Omega of (xo, yo)?"""
        p = self.p
        i = p.idx(xo)
        if i == p.m or yo % (p.k - 1) == 0 or v == yo:
            return False
        if not p.in_level(u, i):
            return False
        if p.floor_abs(xo, i) % (p.k - 1) or p.floor_abs(u, i) % (p.k - 1):
            return False
        pu, po = (p.proj(u, i + 1), v), (p.proj(xo, i + 1), yo)
        if self.edge_star(pu, po):
            return False
        if v % (p.k - 1) == 0:
            if not p.in_level(u, i + 1):
                return False
            if self.sgn(po, pu) != 0:
                return False
        return True

    def critical_star(self, a: tuple[int, int], b: tuple[int, int]) -> bool:
        """Extra edges of the A-side flat structure: both endpoints at the
        top level, distinct extreme rows, relative coordinate divisible by
        k-1 on both sides."""
        p = self.p
        (xa, ya), (xb, yb) = a, b
        return (ya != yb and ya % (p.k - 1) == 0 and yb % (p.k - 1) == 0
                and p.in_level(xa, p.m) and p.in_level(xb, p.m)
                and p.floor_abs(xa, p.m) % (p.k - 1) == 0
                and p.floor_abs(xb, p.m) % (p.k - 1) == 0)

    def _rule_e(self, a, b) -> bool:
        """Congruence rule at the lower endpoint level."""
        p = self.p
        (xa, ya), (xb, yb) = a, b
        ia, ib = p.idx(xa), p.idx(xb)
        t = min(ia, ib)
        ca = p.cc(p.floor_abs(xa, t), ya)
        cb = p.cc(p.floor_abs(xb, t), yb)
        if ya % (p.k - 1) == 0 or yb % (p.k - 1) == 0:
            return ca != cb and self.sgn(a, b) == 0
        if ia != ib:
            return ca != cb
        sw = abs(self.p.g(xa) - self.p.g(xb))
        qh = p.q_hat(min(ya, yb), max(ya, yb))
        return (ca - cb) * (ya - yb) * (-1) ** bit(sw, qh) > 0

    def edge_star(self, a: tuple[int, int], b: tuple[int, int],
                  side: str = "b") -> bool:
        """Adjacency of two flat vertices (B-side rules; side='a' adds the
        critical edges)."""
        if a > b:
            a, b = b, a
        if a[1] == b[1]:
            return False
        if side == "a" and self.critical_star(a, b):
            return True
        key = (a, b)
        hit = self._edge.get(key)
        if hit is None:
            hit = (self.cl(*b) not in self.s_set(*a)
                   and self.cl(*a) not in self.s_set(*b)
                   and not self.in_omega(*a, *b)
                   and not self.in_omega(*b, *a)
                   and self._rule_e(a, b))
            self._edge[key] = hit
        return hit

    # ---- board configurations and histories --------------------------------

    def compose(self, config: tuple, v: tuple[int, int]) -> tuple:
        """Place a pebble: unchanged if already pebbled or the board is
        full, else appended."""
        if v in config or len(config) == self.p.k - 1:
            return config
        return config + (v,)

    def step_ok(self, prev: tuple, cur: tuple, witness: tuple[int, int]
                ) -> bool:
        """Is cur reachable from prev in one step whose pebbled vertex is
        exactly `witness`?  Steps append, pop the last element, or leave a
        nonempty/full board unchanged."""
        if cur == prev + (witness,):
            return True
        if prev == cur + (witness,):
            return True
        if cur == prev:
            return witness in prev or len(prev) == self.p.k - 1
        return False

    def valid_history(self, history: tuple) -> bool:
        """history is a tuple of configurations starting from the empty
        board, each consecutive pair one legal step, length at most m."""
        p = self.p
        if not history or history[0] != () or len(history) > p.m:
            return False
        for prev, cur in zip(history, history[1:]):
            if len(cur) > p.k - 1:
                return False
            if cur == prev:
                if not prev:
                    return False
            elif cur[:-1] == prev:
                if cur[-1] in prev:
                    return False
            elif prev[:-1] == cur:
                pass
            else:
                return False
        return True

    def history_key(self, history: tuple):
        """Sort key: configurations by size then content, histories by the
        shorter-prefix-first lexicographic order."""
        return tuple((len(c), c) for c in history)

    def evolves(self, a: HVertex, b: HVertex) -> bool:
        """History continuity: b's history extends a's and the first new
        step pebbles exactly a's flat vertex."""
        ha, hb = a.history, b.history
        if ha == hb:
            return True
        if len(ha) >= len(hb) or hb[:len(ha)] != ha:
            return False
        return self.step_ok(hb[len(ha) - 1], hb[len(ha)], (a.x, a.y))

    def leads(self, a: HVertex, b: HVertex) -> bool:
        """a leads to b: histories in continuity, a's final board a prefix
        of b's, and a itself pebbled on b's final board."""
        fa, fb = a.history[-1], b.history[-1]
        return (self.evolves(a, b) and fb[:len(fa)] == fa
                and (a.x, a.y) in fb)

    def squiggle(self, b: HVertex, a: HVertex) -> bool:
        """b is squeezed out by a: a leads to b, a's congruence label is in
        b's S-set, and b is not pebbled on a's final board."""
        return (self.leads(a, b)
                and self.cl(a.x, a.y) in self.s_set(b.x, b.y)
                and (b.x, b.y) not in a.history[-1])

    def critical_full(self, a: HVertex, b: HVertex) -> bool:
        return (self.critical_star((a.x, a.y), (b.x, b.y))
                and (self.leads(a, b) or self.leads(b, a)))

    def edge_full(self, a: HVertex, b: HVertex, side: str = "b") -> bool:
        """Adjacency in the history-layer structure."""
        if a.y == b.y:
            return False
        if side == "a" and self.critical_full(a, b):
            return True
        if not self.edge_star((a.x, a.y), (b.x, b.y)):
            return False
        if not (self.leads(a, b) or self.leads(b, a)):
            return False
        if self.squiggle(a, b) or self.squiggle(b, a):
            return False
        return True

    def vertex_key(self, v: HVertex):
        """Linear-order key: row, then history, then first coordinate."""
        return (v.y, self.history_key(v.history), v.x)

    def sw_witness(self, r: int, picks, y: int, wbits) -> int | None:
        """First coordinate x of a vertex (x, y) at level r (and not r+1)
        whose slot word against each pick (u_i, v_i) has the requested bit:
        BIT(|g(x) - g(u_i)|, q_hat(y, v_i)) = wbits[i].  Picks must be at
        level r exactly, in distinct interior rows different from y."""
        p = self.p
        for (u, v) in picks:
            if p.idx(u) != r or not 0 < v < p.k - 1 or v == y:
                raise ValueError("picks must be level-r interior vertices "
                                 "in rows distinct from y")
        span = 2 ** p.sw_bits
        for gv in range(span):
            rel = (span + gv) * p.eta_star[r]
            for _ in range(p.k):
                x = rel * p.col(r) + p.half_sum(r)
                if p.idx(x) == r:
                    break
                rel += p.u_star[r]
            else:
                continue
            if all(bit(abs(p.g(x) - p.g(u)), p.q_hat(*sorted((y, v)))) == w
                   for (u, v), w in zip(picks, wbits)):
                return x
        return None

    def sampled_clique_check(self, side: str = "b", samples: int = 10000,
                             seed: int = 0) -> dict:
        """Randomised flat k-clique search, one vertex per row, biased
        toward single-level bands and repeated relative coordinates (the
        pigeonhole-critical congruence patterns).  Finding nothing is
        evidence, not proof; any hit is reported verbatim.

        Pairs on which the edge predicate is undefined (same-index interior
        top-level vertices outside the low band) cannot complete a clique
        and are counted separately."""
        p = self.p
        rng = random.Random(seed)
        found = []
        undefined = 0
        for _ in range(samples):
            t = rng.randrange(1, p.m + 1)
            top = p.gamma_star[p.m - t]
            base_rel = rng.randrange(top)
            cand = []
            for y in range(p.k):
                rel = base_rel if rng.random() < 0.5 else rng.randrange(top)
                cand.append((rel * p.col(t) + p.half_sum(t), y))
            try:
                if all(self.edge_star(u, v, side=side)
                       for i, u in enumerate(cand) for v in cand[i + 1:]):
                    found.append([[str(x), y] for x, y in cand])
            except ValueError:
                undefined += 1
        return {"side": side, "samples": samples, "seed": seed,
                "undefinedPairs": undefined, "cliques": found}

    # ---- distinguished witnesses -------------------------------------------

    def clique_vertices(self) -> list[HVertex]:
        """The k-clique of the A-side history structure sitting at the
        middle of each row, with histories pebbling rows bottom up."""
        p = self.p
        if p.k > p.m:
            raise ValueError("the clique witness needs k <= m")
        x = p.mid
        out = []
        hist = ((),)
        for i in range(p.k):
            out.append(HVertex(x, i, hist))
            if i < p.k - 1:
                hist = hist + (self.compose(hist[-1], (x, i)),)
        return out
