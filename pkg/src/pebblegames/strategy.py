"""Scripted Duplicator replies for the two-pebble game on the k=3 pair.

The reply discipline has three phases:

* mimic: answer with the identical label until the block around the critical
  column is pebbled in both extreme rows of one structure and the current
  pick lands in it;
* icebreak: that one round is answered by a top-level vertex whose congruence
  class matches (pick in B) or differs from (pick in A) the critical
  column's, away from the row ends and off the critical column itself;
* free play: answer inside the current abstraction level xi, preserving the
  horizontal residue of the pick, the per-level order bookkeeping, edge
  agreement between projections (also against immovable markers on the row
  ends of the level), and full partial isomorphism.  When no level-xi reply
  exists, drop one level and retry; xi decreases by at most one per round.

`validate_strategy` drives the reply function through every Spoiler move
sequence of a bounded number of rounds and asserts the invariants above
after each round.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from itertools import combinations

from .params import FULL_K3, REDUCED_K3, Params
from .structures import OrderedStructure

MODE_MIMIC = "mimic"
MODE_FREE = "free"

MAX_RECORDED_VIOLATIONS = 50


class StrategyError(RuntimeError):
    """No admissible reply exists; carries the offending position."""

    def __init__(self, message: str, trace: dict):
        super().__init__(f"{message}: {trace!r}")
        self.trace = trace


class K3Strategy:
    """Stateful Duplicator for the two-pebble game on an explicit k=3 pair.

    `a` and `b` must have identical vertex labels (they always do for the
    built pairs); replies are vertex labels of the opposite structure.
    """

    def __init__(self, p: Params, a: OrderedStructure, b: OrderedStructure,
                 *, pebbles: int = 2, rounds: int | None = None):
        if p.variant not in (FULL_K3, REDUCED_K3):
            raise ValueError("scripted strategy requires an explicit k=3 pair")
        if pebbles != 2:
            raise ValueError("scripted strategy plays with exactly 2 pebbles")
        self.p, self.a, self.b = p, a, b
        self.pebbles = pebbles
        self.rounds = p.m if rounds is None else rounds
        m, lo, w = p.m, p.lo, p.width

        self._fa = {i: [p.floor_abs(x, i) for x in range(w)]
                    for i in range(lo, m + 1)}
        self._pr = {i: [p.proj(x, i) for x in range(w)]
                    for i in range(lo, m + 1)}
        self._levw = {i: p.gamma_star[m - i] for i in range(lo, m + 1)}
        # immovable markers: leftmost and rightmost level-i vertex of each row
        self._marks = {i: [(j * p.col(i) + p.half_sum(i), d)
                           for d in range(p.k)
                           for j in (0, self._levw[i] - 1)]
                       for i in range(lo, m + 1)}
        self._critical = frozenset(p.cex_members(p.mid, m - 1))

        self._adj, self._pos, self._rows = [], [], []
        for s in (a, b):
            adj = set()
            for e in s.edges:
                u, v = tuple(e)
                adj.add((u, v))
                adj.add((v, u))
            self._adj.append(adj)
            self._pos.append(s.position)
            rows: dict[int, list] = {d: [] for d in range(p.k)}
            for v in s.vertices:
                rows[v[1]].append(v)
            self._rows.append(rows)
        self._consts = tuple(zip(a.constants, b.constants))
        # with boundary constants on the board every round is free play and
        # the row-end markers stay binding; without them the mimic/icebreak
        # discipline applies and the marker agreement is only advisory after
        # the icebreaking round (exploiting it costs Spoiler an extra round)
        self._assert_marks = bool(self._consts)

        self.board: list[tuple] = []
        self.xi = m
        self.mode = MODE_FREE if self._consts else MODE_MIMIC
        self.round = 1

    @property
    def theta(self) -> int:
        """Rounds left at the start of the current round."""
        return self.p.m - self.round + 1

    def respond(self, side: int, pick, slot: int | None = None):
        """Reply to Spoiler placing a pebble on `pick` in structure `side`
        (0 = a, 1 = b).  `slot` relocates an existing pebble pair; None
        places a fresh pair.  Returns the reply vertex and advances state."""
        if self.round > self.rounds:
            raise ValueError("the game is over")
        if slot is None:
            if len(self.board) >= self.pebbles:
                raise ValueError("board full; a slot must be relocated")
            others = tuple(self.board)
        else:
            others = tuple(pr for i, pr in enumerate(self.board) if i != slot)
        reply, xi, mode = self._compute(others, self.xi, self.mode,
                                        self.round, side, pick)
        pair = (pick, reply) if side == 0 else (reply, pick)
        if slot is None:
            self.board.append(pair)
        else:
            self.board[slot] = pair
        self.xi, self.mode = xi, mode
        self.round += 1
        return reply

    # ---- pure reply computation -----------------------------------------

    def _compute(self, others, xi, mode, ell, side, pick):
        """Reply and successor (xi, mode) for one Spoiler move; `others` are
        the pebble pairs that stay on the board.  Raises StrategyError when
        no admissible reply exists."""
        for pair in others:
            if pair[side] == pick:  # repeated pick: reuse the partner
                return pair[1 - side], xi, mode
        if mode == MODE_MIMIC:
            if self._icebreak_trigger(others, side, pick):
                return self._icebreak(others, xi, ell, side, pick)
            return pick, xi, mode
        if not others:
            return pick, xi, mode
        reply = self._scan(others, xi, ell, side, pick)
        if reply is not None:
            return reply, xi, mode
        if xi - 1 >= self.p.lo:
            reply = self._scan(others, xi - 1, ell, side, pick)
            if reply is not None:
                return reply, xi - 1, mode
        raise StrategyError("no admissible reply", {
            "round": ell, "xi": xi, "side": "ab"[side], "pick": pick,
            "board": others})

    def _icebreak_trigger(self, others, side, pick) -> bool:
        """Mimicking must stop when the critical block is pebbled in both
        extreme rows of one structure and the pick is one of the two."""
        x, y = pick
        if y not in (0, self.p.k - 1) or x not in self._critical:
            return False
        want = (self.p.k - 1) - y
        return any(pair[side][1] == want and pair[side][0] in self._critical
                   for pair in others)

    def _icebreak(self, others, xi, ell, side, pick):
        p = self.p
        x, y = pick
        fa, pr = self._fa[p.m], self._pr[p.m]
        res = x - pr[x]
        top = self._levw[p.m]
        for cand in self._rows[1 - side][y]:
            x2 = cand[0]
            if x2 - pr[x2] != res:
                continue
            f = fa[x2]
            if f in (0, top - 1):
                continue
            if side == 0:
                # pick in a: the reply must join the critical adjacency
                if p.cc(f, y) == 0:
                    continue
            else:
                # pick in b: match the critical congruence off the column
                if p.cc(f, y) != 0 or pr[x2] == p.mid:
                    continue
            new = (pick, cand) if side == 0 else (cand, pick)
            if not self._full_pi(others + (new,)):
                continue
            return cand, xi, MODE_FREE
        raise StrategyError("icebreak found no reply", {
            "round": ell, "xi": xi, "side": "ab"[side], "pick": pick,
            "board": others})

    def _scan(self, others, lev, ell, side, pick):
        """Least admissible level-`lev` reply in the reply structure's order,
        or None."""
        x, y = pick
        pr = self._pr[lev]
        res = x - pr[x]
        for cand in self._rows[1 - side][y]:
            x2 = cand[0]
            if x2 - pr[x2] != res:
                continue
            if not self._order_pair(x, x2, lev, ell):
                continue
            new = (pick, cand) if side == 0 else (cand, pick)
            if not self._abs_ok(new, others, lev):
                continue
            if self._assert_marks and not self._marks_ok(new, lev):
                continue
            if not self._full_pi(others + (new,)):
                continue
            return cand
        return None

    # ---- invariant predicates ---------------------------------------------

    def residue_ok(self, pair, lev) -> bool:
        """Equal horizontal residues at level `lev`."""
        pr = self._pr[lev]
        (xa, _), (xb, _) = pair
        return xa - pr[xa] == xb - pr[xb]

    def _order_pair(self, x, x2, lev, ell) -> bool:
        """Per-level order bookkeeping for one pebble pair in round ell:
        near a row end of the level the relative coordinates must be equal,
        away from both ends they must both stay away."""
        t = self.p.m - 1 - ell if self.p.variant == REDUCED_K3 \
            else self.p.m - ell
        if t <= 0:
            return True
        fa, w = self._fa[lev], self._levw[lev]
        for u, v in ((x, x2), (x2, x)):
            if fa[u] < t or w - fa[u] < t:
                if fa[v] != fa[u]:
                    return False
            elif not t <= fa[v] <= w - t:
                return False
        return True

    def _abs_ok(self, new, others, lev) -> bool:
        """The fresh pair agrees with every older pair over the level-`lev`
        projections: equality, adjacency, and same-row relative order."""
        fa, pr = self._fa[lev], self._pr[lev]
        adja, adjb = self._adj
        (nxa, y), (nxb, _) = new
        pa, pb = (pr[nxa], y), (pr[nxb], y)
        for (ua, d), (ub, _) in others:
            qa, qb = (pr[ua], d), (pr[ub], d)
            if (pa == qa) != (pb == qb):
                return False
            if pa == qa:
                continue
            if ((pa, qa) in adja) != ((pb, qb) in adjb):
                return False
            if d == y and ((fa[nxa] < fa[ua]) != (fa[nxb] < fa[ub])
                           or (fa[nxa] == fa[ua]) != (fa[nxb] == fa[ub])):
                return False
        return True

    def _marks_ok(self, new, lev) -> bool:
        """_abs_ok survives immovable pebbles on the row ends of the level."""
        pr = self._pr[lev]
        adja, adjb = self._adj
        (nxa, y), (nxb, _) = new
        pa, pb = (pr[nxa], y), (pr[nxb], y)
        for mark in self._marks[lev]:
            if (pa == mark) != (pb == mark):
                return False
            if pa != mark and ((pa, mark) in adja) != ((pb, mark) in adjb):
                return False
        return True

    def _full_pi(self, pairs) -> bool:
        """Partial isomorphism of the actual board, constants included."""
        adja, adjb = self._adj
        posa, posb = self._pos
        allp = tuple(pairs) + self._consts
        for (ua, ub), (va, vb) in combinations(allp, 2):
            if (ua == va) != (ub == vb):
                return False
            if ua == va:
                continue
            if ((ua, va) in adja) != ((ub, vb) in adjb):
                return False
            if (posa[ua] < posa[va]) != (posb[ub] < posb[vb]):
                return False
        return True

    def check_invariants(self, board, xi, ell):
        """Reason string when an invariant fails after round ell, else None."""
        if self.p.m - ell >= xi:
            return f"rounds left {self.p.m - ell} not below level {xi}"
        for pair in board:
            if not self.residue_ok(pair, xi):
                return f"residue mismatch at level {xi}: {pair}"
            if not self._order_pair(pair[0][0], pair[1][0], xi, ell):
                return f"order bookkeeping broken at level {xi}: {pair}"
            if self._assert_marks and not self._marks_ok(pair, xi):
                return f"row-end marker disagreement at level {xi}: {pair}"
        for i, pair in enumerate(board):
            rest = board[:i] + board[i + 1:]
            if not self._abs_ok(pair, rest, xi):
                return f"projection disagreement at level {xi}: {pair}"
        if not self._full_pi(board):
            return "board is not a partial isomorphism"
        return None


def respond_k3(state: K3Strategy, side: int, pick, slot: int | None = None):
    """Reply to one Spoiler move; see K3Strategy.respond."""
    return state.respond(side, pick, slot)


def validate_strategy(p: Params, a: OrderedStructure, b: OrderedStructure,
                      rounds: int | None = None, *, pebbles: int = 2,
                      jobs: int = 1) -> dict:
    """Drive the scripted replies through every Spoiler move sequence of the
    given number of rounds (default m) and check all invariants after every
    round.  Returns a report dict; `violations` is expected to be empty."""
    eng = K3Strategy(p, a, b, pebbles=pebbles, rounds=rounds)
    rounds = eng.rounds
    start = {((), p.m, eng.mode)}
    if jobs <= 1 or rounds <= 1:
        rep = _run_layers(eng, start, 1, rounds, pebbles)
    else:
        first = _run_layers(eng, start, 1, 1, pebbles, collect_final=True)
        states = sorted(first.pop("states"))
        chunks = [set(states[i::jobs]) for i in range(jobs) if states[i::jobs]]
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            parts = list(pool.map(_verify_chunk,
                                  [(p, a, b, tuple(c), 2, rounds, pebbles)
                                   for c in chunks]))
        rep = _merge_reports([first] + parts, rounds)
    rep["constants"] = len(a.constants)
    rep["markersAsserted"] = eng._assert_marks
    return rep


def _verify_chunk(args):
    p, a, b, states, start, rounds, pebbles = args
    eng = K3Strategy(p, a, b, pebbles=pebbles, rounds=rounds)
    return _run_layers(eng, set(states), start, rounds, pebbles)


def _run_layers(eng, states, start, rounds, pebbles, *, collect_final=False):
    """Breadth-first sweep over strategy states from round `start` through
    `rounds`, deduplicating boards and memoizing replies and invariant
    checks.  Returns the report plus the final layer under "states"."""
    reply_memo: dict = {}
    cond_memo: dict = {}
    violations: list = []
    n_violations = 0
    explored = 0
    for ell in range(start, rounds + 1):
        nxt = set()
        for board, xi, mode in states:
            explored += 1
            slots = list(range(len(board)))
            if len(board) < pebbles:
                slots.append(None)
            for side in (0, 1):
                verts = eng.a.vertices if side == 0 else eng.b.vertices
                for sl in slots:
                    others = (board if sl is None
                              else board[:sl] + board[sl + 1:])
                    for pick in verts:
                        key = (others, xi, mode, ell, side, pick)
                        out = reply_memo.get(key)
                        if out is None:
                            try:
                                out = eng._compute(others, xi, mode, ell,
                                                   side, pick)
                            except StrategyError as exc:
                                out = exc
                            reply_memo[key] = out
                        if isinstance(out, StrategyError):
                            n_violations += 1
                            if len(violations) < MAX_RECORDED_VIOLATIONS:
                                violations.append({"round": ell,
                                                   "reason": str(out)})
                            continue
                        reply, nxi, nmode = out
                        pair = ((pick, reply) if side == 0
                                else (reply, pick))
                        nboard = tuple(sorted(others + (pair,)))
                        ckey = (nboard, nxi, ell)
                        bad = cond_memo.get(ckey)
                        if bad is None:
                            bad = eng.check_invariants(nboard, nxi, ell)
                            cond_memo[ckey] = bad if bad else False
                        if bad:
                            n_violations += 1
                            if len(violations) < MAX_RECORDED_VIOLATIONS:
                                violations.append({
                                    "round": ell, "board": repr(nboard),
                                    "xi": nxi, "reason": bad})
                        if ell < rounds or collect_final:
                            nxt.add((nboard, nxi, nmode))
        states = nxt
    return {"rounds": rounds, "statesExplored": explored,
            "distinctReplies": len(reply_memo),
            "violationCount": n_violations, "violations": violations,
            "states": states}


def _merge_reports(parts, rounds):
    out = {"rounds": rounds, "statesExplored": 0, "distinctReplies": 0,
           "violationCount": 0, "violations": [], "states": set()}
    for part in parts:
        out["statesExplored"] += part["statesExplored"]
        out["distinctReplies"] += part["distinctReplies"]
        out["violationCount"] += part["violationCount"]
        out["violations"].extend(part["violations"])
        out["states"] |= part.get("states", set())
    out["violations"] = out["violations"][:MAX_RECORDED_VIOLATIONS]
    return out
