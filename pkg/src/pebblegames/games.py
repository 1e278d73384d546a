"""Exact solvers for bounded-round pebble games on ordered structures.

The main game: Spoiler and Duplicator play `rounds` rounds with `pebbles`
pebble pairs on two ordered structures.  Each round Spoiler picks a side and
a vertex, placing a new pebble while some are unused and otherwise moving an
existing one; Duplicator answers on the other side with the matching pebble.
Duplicator wins iff after every round the pebbled pairs, together with the
matched constants, form a partial isomorphism for edges, order and equality.

Also provided: the existential (one-sided) pebble game with unbounded
rounds, and round-bounded games on plain linear orders.

Solvers are exact AND/OR searches with memoisation; an optional node budget
raises `BudgetExceeded` instead of silently truncating.
"""

from __future__ import annotations

from .structures import OrderedStructure, linear_order


class BudgetExceeded(Exception):
    """The solver hit its node budget before finishing."""


class PebbleGameSolver:
    """Exact solver for the bounded-round pebble game on two explicit
    ordered structures.  Constants act as permanent extra pebble pairs."""

    def __init__(self, a: OrderedStructure, b: OrderedStructure,
                 pebbles: int, *, max_nodes: int | None = None):
        if len(a.constants) != len(b.constants):
            raise ValueError("structures must have equally many constants")
        self.a, self.b = a, b
        self.pebbles = pebbles
        self.max_nodes = max_nodes
        self.nodes = 0
        self._memo: dict = {}
        self._sides = (_Side(a, b), _Side(b, a))
        self._const_pairs = tuple(
            (a.position[ca], b.position[cb])
            for ca, cb in zip(a.constants, b.constants))

    def duplicator_wins(self, rounds: int,
                        pairs: tuple[tuple[int, int], ...] = ()) -> bool:
        """Does Duplicator win the game of the given length from the given
        position?  `pairs` are (position-in-a, position-in-b) pebble pairs
        and must already be a partial isomorphism."""
        return self._solve(tuple(sorted(pairs)), rounds)

    def winning_spoiler_move(self, rounds: int,
                             pairs: tuple[tuple[int, int], ...] = ()):
        """First winning Spoiler move (side, slot, vertex-position) in the
        deterministic move order, or None if Duplicator wins."""
        pairs = tuple(sorted(pairs))
        for side, slot, pick, rest in self._spoiler_moves(pairs):
            if not self._duplicator_can_answer(side, pick, rest, rounds - 1):
                return (("a", "b")[side], slot, pick)
        return None

    def duplicator_reply(self, rounds: int, pairs, side: str, slot, pick: int):
        """A winning Duplicator reply (vertex position on the other side) to
        the given Spoiler move, or None if every reply loses."""
        s = 0 if side == "a" else 1
        pairs = tuple(sorted(pairs))
        rest = (pairs[:slot] + pairs[slot + 1:]) if slot is not None else pairs
        for reply in self._candidates(s, pick, rest):
            newpairs = _with_pair(rest, s, pick, reply)
            if self._solve(newpairs, rounds - 1):
                return reply
        return None

    def play_step(self, rounds: int, pairs, side: str, slot, pick: int):
        """All non-losing Duplicator replies (vertex positions on the other
        side) to the given Spoiler move, in ascending order."""
        s = 0 if side == "a" else 1
        pairs = tuple(sorted(pairs))
        rest = (pairs[:slot] + pairs[slot + 1:]) if slot is not None else pairs
        return sorted(r for r in self._candidates(s, pick, rest)
                      if self._solve(_with_pair(rest, s, pick, r), rounds - 1))

    # ---- internals ----------------------------------------------------

    def _solve(self, pairs, rounds) -> bool:
        if rounds == 0:
            return True
        key = (pairs, rounds)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExceeded(f"node budget {self.max_nodes} exhausted")
        win = True
        for side, slot, pick, rest in self._spoiler_moves(pairs):
            if not self._duplicator_can_answer(side, pick, rest, rounds - 1):
                win = False
                break
        self._memo[key] = win
        return win

    def _duplicator_can_answer(self, side, pick, rest, rounds_left) -> bool:
        for reply in self._candidates(side, pick, rest):
            if self._solve(_with_pair(rest, side, pick, reply), rounds_left):
                return True
        return False

    def _spoiler_moves(self, pairs):
        """Deterministic move order: side a then b, slots ascending (a fresh
        pebble while the board is not full), vertices ascending."""
        slots = ([None] if len(pairs) < self.pebbles
                 else list(range(len(pairs))))
        for side in (0, 1):
            n = len(self._sides[side].mine.vertices)
            for slot in slots:
                rest = pairs if slot is None else pairs[:slot] + pairs[slot + 1:]
                for pick in range(n):
                    yield side, slot, pick, rest

    def _candidates(self, side, pick, rest):
        """Reply positions on the other side keeping a partial isomorphism,
        mimic candidate (same vertex label) first, then ascending."""
        s = self._sides[side]
        mask = s.full_other
        for pa, pb in list(rest) + list(self._const_pairs):
            mine, other = (pa, pb) if side == 0 else (pb, pa)
            if pick == mine:
                mask &= 1 << other
            else:
                mask &= ~(1 << other)
                mask &= (s.other_adj[other] if (s.mine_adj[mine] >> pick) & 1
                         else ~s.other_adj[other])
                mask &= (s.lt_other(other) if pick < mine
                         else s.gt_other(other))
            if not mask:
                return
        mimic = s.mimic.get(pick)
        if mimic is not None and (mask >> mimic) & 1:
            yield mimic
            mask &= ~(1 << mimic)
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low


class _Side:
    """Query tables for one orientation of the game (Spoiler's side `mine`,
    Duplicator's side `other`).  Vertex list index equals order rank."""

    def __init__(self, mine: OrderedStructure, other: OrderedStructure):
        self.mine, self.other = mine, other
        self.mine_adj = mine.adj_bits
        self.other_adj = other.adj_bits
        n = len(other.vertices)
        self.full_other = (1 << n) - 1
        self.mimic = {i: other.position[v] for i, v in enumerate(mine.vertices)
                      if v in other.position}

    def lt_other(self, j: int) -> int:
        return (1 << j) - 1

    def gt_other(self, j: int) -> int:
        return self.full_other ^ ((1 << (j + 1)) - 1)


def _with_pair(rest, side, pick, reply):
    pair = (pick, reply) if side == 0 else (reply, pick)
    return tuple(sorted(rest + (pair,)))


def existential_duplicator_wins(a: OrderedStructure, b: OrderedStructure,
                                pebbles: int) -> bool:
    """Unbounded-round existential pebble game: Spoiler picks only in a,
    Duplicator answers in b, positions must stay partial isomorphisms.
    Computed as a greatest fixpoint over positions of size <= pebbles."""
    from .structures import partial_isomorphism
    from itertools import combinations, product

    va, vb = a.vertices, b.vertices
    positions = set()
    for size in range(pebbles + 1):
        for us in combinations(range(len(va)), size):
            for vs in product(range(len(vb)), repeat=size):
                pos = frozenset(zip(us, vs))
                if partial_isomorphism(
                        a, b, [(va[i], vb[j]) for i, j in pos]):
                    positions.add(pos)

    def survives(pos, good):
        bases = [pos] if len(pos) < pebbles else [pos - {p} for p in pos]
        for pick in range(len(va)):
            for base in bases:
                if not any(base | {(pick, j)} in good
                           for j in range(len(vb))):
                    return False
        return True

    good = set(positions)
    changed = True
    while changed:
        changed = False
        for pos in list(good):
            if not survives(pos, good):
                good.discard(pos)
                changed = True
    return frozenset() in good


def order_game_duplicator_wins(n1: int, n2: int, rounds: int) -> bool:
    """Round-bounded game on two plain linear orders of sizes n1 and n2,
    with one pebble pair per round."""
    solver = PebbleGameSolver(linear_order(n1), linear_order(n2), rounds)
    return solver.duplicator_wins(rounds)
