"""Parameter tables and abstraction arithmetic.

A `Params` object fixes the lattice family: the width table gamma*, the
block-size quotients beta, and for the general (k >= 4) variant the auxiliary
tables U*, eta*, cl* and the board-history count.

All arithmetic is exact unbounded-integer arithmetic.  Coordinate functions
accept any nonnegative integer (values >= width are meaningful for boundary
computations on circularly shifted rows).
"""

from __future__ import annotations

from math import comb

FULL_K3 = "full-k3"
REDUCED_K3 = "reduced-k3"
GENERAL = "general"

VARIANTS = (FULL_K3, REDUCED_K3, GENERAL)


class Params:
    """Arithmetic tables for one structure family.

    k       -- number of rows (height), k >= 2
    m       -- number of abstraction levels / game rounds, m >= 3
    variant -- "full-k3", "reduced-k3" or "general"
    lo      -- lowest abstraction level (2 for reduced-k3, else 1)
    width   -- row length of the bottom level
    """

    def __init__(self, k: int, m: int, variant: str, *, toy: bool = False,
                 level_factor: int | None = None, u_factor: int | None = None):
        if variant not in VARIANTS:
            raise ValueError(f"unknown variant {variant!r}")
        if k < 2:
            raise ValueError("k must be >= 2")
        if m < 3:
            raise ValueError("m must be >= 3")
        if variant in (FULL_K3, REDUCED_K3) and k != 3:
            raise ValueError(f"variant {variant!r} requires k = 3")
        self.k = k
        self.m = m
        self.variant = variant
        self.toy = toy
        self.lo = 2 if variant == REDUCED_K3 else 1

        if variant == FULL_K3:
            gs = [4 * m]
            for i in range(1, m):
                gs.append(4 * (m - i) * gs[-1])
            self.gamma_star = tuple(gs)
        elif variant == REDUCED_K3:
            gs = [4 * (m - 1)]
            for i in range(1, m - 1):
                gs.append(4 * (m - i - 1) * gs[-1])
            self.gamma_star = tuple(gs)
        else:
            self._init_general(level_factor, u_factor)

        # column width of level i at the bottom level: beta(i, lo)
        self._col = {i: self.gamma_star[-1] // self.gamma_star[self.m - i]
                     for i in range(self.lo, self.m + 1)}
        for i in range(self.lo, self.m + 1):
            if self._col[i] * self.gamma_star[self.m - i] != self.gamma_star[-1]:
                raise AssertionError("beta must be integral")
        self.width = self.gamma_star[-1]
        # half-sum offsets used by proj; every summand must be even
        hs = {self.lo: 0}
        for i in range(self.lo + 1, self.m + 1):
            c = self._col[i]
            if c % 2:
                raise AssertionError("half-sum summand must be even")
            hs[i] = hs[i - 1] + c // 2
        self._half = hs
        self.mid = self.width // 2 + self._half[self.m]

    def _init_general(self, level_factor, u_factor):
        k, m = self.k, self.m
        self.sw_bits = comb(k - 2, 2)
        ufac = u_factor if u_factor is not None else 3 * (2 ** self.sw_bits)
        if ufac % 3:
            raise ValueError("u_factor must be divisible by 3")

        def lf(level: int) -> int:
            if level_factor is not None:
                return level_factor
            return 2 if self.toy else 2 ** level

        u_star = {m: k - 1}
        eta_star: dict[int, int] = {}
        cl_star: dict[int, int] = {}
        gs = [lf(m) * u_star[m]]
        for i in range(1, m):
            w = k * gs[i - 1]
            cl_star[m - i + 1] = 2 * w + sum(w ** d for d in range(1, k - 1))
            eta_star[m - i] = (k - 1) * cl_star[m - i + 1]
            u_star[m - i] = ufac * eta_star[m - i]
            gs.append(lf(m - i) * u_star[m - i] * gs[i - 1])
        self.gamma_star = tuple(gs)
        self.u_star = u_star
        self.eta_star = eta_star
        self.cl_star = cl_star
        self.u_factor = ufac
        self.bh_count = m * (k * gs[m - 1] + 1) ** (k - 1)
        self.gamma = tuple(m * self.bh_count * g for g in gs)
        for i in range(1, m + 1):
            if self.gamma_star[m - i] % u_star[i]:
                raise AssertionError("U*_i must divide gamma*_{m-i}")
            if i < m and u_star[i] % 3:
                raise AssertionError("U*_i must be divisible by 3 below level m")

    # ---- basic coordinate arithmetic -------------------------------------

    def _check_level(self, i: int) -> None:
        if not self.lo <= i <= self.m:
            raise ValueError(f"level {i} outside [{self.lo}, {self.m}]")

    def beta(self, j: int, i: int) -> int:
        """beta_{m-j}^{m-i} = gamma*_{m-i} / gamma*_{m-j}, lo <= i <= j <= m."""
        self._check_level(i)
        self._check_level(j)
        if i > j:
            raise ValueError("beta requires i <= j")
        num, den = self.gamma_star[self.m - i], self.gamma_star[self.m - j]
        q, r = divmod(num, den)
        if r:
            raise AssertionError("beta must be integral")
        return q

    def col(self, i: int) -> int:
        """Bottom-level width of one level-i block: beta(i, lo)."""
        self._check_level(i)
        return self._col[i]

    def floor_abs(self, x: int, i: int) -> int:
        """[x]_i: the level-i relative first coordinate of x."""
        self._check_level(i)
        if x < 0:
            raise ValueError("x must be nonnegative")
        return x // self._col[i]

    def proj(self, x: int, i: int) -> int:
        """<x>_i: the level-i lattice point whose block contains x."""
        self._check_level(i)
        if x < 0:
            raise ValueError("x must be nonnegative")
        return (x // self._col[i]) * self._col[i] + self._half[i]

    def half_sum(self, i: int) -> int:
        self._check_level(i)
        return self._half[i]

    def idx(self, x: int) -> int:
        """Vertex index: the largest level i with x = <x>_i."""
        r = self.lo
        for i in range(self.lo + 1, self.m + 1):
            if self.proj(x, i) == x:
                r = i
            else:
                break
        return r

    def in_level(self, x: int, i: int) -> bool:
        """x is a lattice point of the level-i sublattice."""
        return self.proj(x, i) == x

    def cc(self, rel: int, y: int) -> int:
        """Coordinate congruence number of relative coordinate rel in row y."""
        return (rel + y) % (self.k - 1)

    def tr(self, row: int) -> int:
        """Right circular shift amount of a row."""
        if not 0 <= row < self.k:
            raise ValueError("row out of range")
        return (row % (self.k - 1)) * sum(self._col[p]
                                          for p in range(self.lo, self.m + 1))

    def boundary_rel(self, row: int, i: int) -> int:
        """Level-i relative coordinate of a shifted row's leftmost label.

        The leftmost label of a shifted row is width - tr(row); its level-i
        relative coordinate is read from the right edge:
        gamma*_{m-i} - floor(tr(row) / col(i)).
        """
        self._check_level(i)
        return self.gamma_star[self.m - i] - self.tr(row) // self._col[i]

    def cex_members(self, x: int, i: int) -> list[int]:
        """Counterexample set of x down to level i: x together with every u
        in the level-idx(x) block of x having idx(u) <= i."""
        t = self.idx(x)
        self._check_level(i)
        if i > t:
            raise ValueError("cex requires i <= idx(x)")
        base = (x // self._col[t]) * self._col[t]
        out = [u for u in range(base, base + self._col[t]) if self.idx(u) <= i]
        if x not in out:
            out.append(x)
            out.sort()
        return out

    # ---- general-variant operations --------------------------------------

    def _need_general(self):
        if self.variant != GENERAL:
            raise ValueError("operation defined for the general variant only")

    def x_flat(self, x: int) -> int:
        """Flatten a packed first coordinate: x mod (width * k)."""
        self._need_general()
        return x % (self.width * self.k)

    def tuple_min(self, x: int, p: int) -> int:
        """Relative coordinate of the least member of the U*_p-tuple of x."""
        self._need_general()
        self._check_level(p)
        return (self.floor_abs(x, p) // self.u_star[p]) * self.u_star[p]

    def tuple_members(self, x: int, p: int) -> list[int]:
        """Bottom-level coordinates of the U*_p-tuple containing x."""
        self._need_general()
        base = self.tuple_min(x, p)
        c, h = self._col[p], self._half[p]
        return [(base + j) * c + h for j in range(self.u_star[p])]

    def rng_num(self, x: int, l: int) -> int:
        """Range number of x at level l; -1 when idx(x) > l."""
        self._need_general()
        self._check_level(l)
        if self.idx(x) > l:
            return -1
        r = self.floor_abs(x, l) % self.u_star[l]
        return (3 * r) // self.u_star[l] - 1

    def g(self, x: int) -> int:
        """Slot-word seed of x (defined at t = idx(x))."""
        self._need_general()
        t = self.idx(x)
        r = self.floor_abs(x, t) % self.u_star[t]
        if 3 * r < self.u_star[t]:
            return 0
        if t == self.m:
            raise ValueError("g undefined at the top level outside the low band")
        return (self.floor_abs(x, t) // self.eta_star[t]) % (2 ** self.sw_bits)

    def q_hat(self, y: int, y2: int) -> int:
        """0-based slot-word bit index for interior rows y < y2."""
        self._need_general()
        if not 1 <= y < y2 <= self.k - 2:
            raise ValueError("q_hat requires 1 <= y < y2 <= k-2")
        return (y2 - y - 1) + sum(self.k - 3 - s for s in range(y - 1))

    def sw(self, u: tuple[int, int], v: tuple[int, int]) -> int:
        """Slot word of two equal-index interior-row vertices, as an integer
        of at most C(k-2,2) bits."""
        self._need_general()
        (xu, yu), (xv, yv) = u, v
        if not (1 <= yu <= self.k - 2 and 1 <= yv <= self.k - 2):
            raise ValueError("sw requires interior rows")
        if self.idx(xu) != self.idx(xv):
            raise ValueError("sw requires equal vertex indices")
        return abs(self.g(xu) - self.g(xv))

    # ---- reporting --------------------------------------------------------

    def tables(self) -> dict:
        """All parameter tables with unbounded values as decimal strings."""
        out = {
            "k": self.k,
            "m": self.m,
            "variant": self.variant,
            "toy": self.toy,
            "width": str(self.width),
            "mid": str(self.mid),
            "gammaStar": [str(g) for g in self.gamma_star],
        }
        if self.variant == GENERAL:
            out["uStar"] = {str(i): str(v) for i, v in sorted(self.u_star.items())}
            out["etaStar"] = {str(i): str(v) for i, v in sorted(self.eta_star.items())}
            out["clStar"] = {str(i): str(v) for i, v in sorted(self.cl_star.items())}
            out["bhCount"] = str(self.bh_count)
            out["gamma"] = [str(g) for g in self.gamma]
        return out


def bit(word: int, n: int) -> int:
    """The n-th bit of word, counting from the right starting at 0."""
    if n < 0:
        raise ValueError("bit index must be nonnegative")
    return (word >> n) & 1
