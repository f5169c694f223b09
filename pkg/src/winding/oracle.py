"""Brute-force enumeration by dynamic programming over (position, winding).

Winding is tracked exactly in units of pi/8: an even value h means the
point sits on an axis or diagonal at angle h*pi/8, an odd value means
it lies strictly inside the octant ((h-1)pi/8, (h+1)pi/8).  The residue
of h mod 16 is decided by integer comparisons alone; across a segment
that avoids the origin the lift moves forward (ccw) or backward (cw) to
the nearest admissible value.  Arrays store h = base(x,y) + 16 w, so a
step only changes the sheet index w, and that change depends on the
position and direction only.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional

import numpy as np

from .angles import INF, InvalidQuery, WalkQuery
from .series import SqrtKSeries, t_series_from_ints

DIAG = ((1, 1), (-1, 1), (-1, -1), (1, -1))
RECT = ((1, 0), (0, 1), (-1, 0), (0, -1))
MAX_N = 24


class OriginHit(ValueError):
    pass


class BudgetExceeded(ValueError):
    pass


# geometry kernel

def base16(x, y):
    """Direction class of (x,y) != 0 mod 16, works on ints or int arrays."""
    x = np.asarray(x)
    y = np.asarray(y)
    ax, ay = np.abs(x), np.abs(y)
    out = np.full(np.broadcast(x, y).shape, -1, dtype=np.int64)
    # rays
    out = np.where((y == 0) & (x > 0), 0, out)
    out = np.where((x == y) & (x > 0), 2, out)
    out = np.where((x == 0) & (y > 0), 4, out)
    out = np.where((-x == y) & (y > 0), 6, out)
    out = np.where((y == 0) & (x < 0), 8, out)
    out = np.where((x == y) & (x < 0), 10, out)
    out = np.where((x == 0) & (y < 0), 12, out)
    out = np.where((x == -y) & (x > 0), 14, out)
    # open octants
    out = np.where((x > 0) & (y > 0) & (ay < ax), 1, out)
    out = np.where((x > 0) & (y > 0) & (ay > ax), 3, out)
    out = np.where((x < 0) & (y > 0) & (ax < ay), 5, out)
    out = np.where((x < 0) & (y > 0) & (ax > ay), 7, out)
    out = np.where((x < 0) & (y < 0) & (ay < ax), 9, out)
    out = np.where((x < 0) & (y < 0) & (ay > ax), 11, out)
    out = np.where((x > 0) & (y < 0) & (ax < ay), 13, out)
    out = np.where((x > 0) & (y < 0) & (ax > ay), 15, out)
    if out.ndim == 0:
        return int(out)
    return out


def lift(h: int, x: int, y: int, x2: int, y2: int) -> int:
    """Lifted class at (x2,y2) after the straight segment from (x,y)."""
    if x2 == 0 and y2 == 0:
        raise OriginHit("segment ends at the origin")
    cross = x * y2 - y * x2
    if cross == 0 and x * x2 + y * y2 <= 0:
        raise OriginHit("segment passes through the origin")
    b2 = base16(x2, y2)
    if cross > 0:
        return h + (b2 - h) % 16
    if cross < 0:
        return h - (h - b2) % 16
    return h


def sheet_shift(x, y, x2, y2):
    """Change of w = (h - base)/16 along segments (x,y)->(x2,y2), vectorized."""
    x, y, x2, y2 = (np.asarray(a, dtype=np.int64) for a in (x, y, x2, y2))
    b, b2 = base16(x, y), base16(x2, y2)
    cross = x * y2 - y * x2
    fwd = np.mod(b2 - b, 16)
    bwd = -np.mod(b - b2, 16)
    move = np.where(cross > 0, fwd, np.where(cross < 0, bwd, 0))
    return (move - (b2 - b)) // 16


@dataclass(frozen=True)
class WindingPos:
    x: int
    y: int
    h: int  # pi/8 units

    @property
    def on_grid(self) -> bool:
        return self.h % 2 == 0

    @property
    def oct(self) -> int:
        """Exact 4*theta/pi when on the grid, otherwise the octant floor."""
        return self.h // 2

    @property
    def theta_over_pi(self) -> Fraction:
        return Fraction(self.h, 8)


def winding_step(state: WindingPos, step: tuple[int, int]) -> WindingPos:
    x2, y2 = state.x + step[0], state.y + step[1]
    if x2 == 0 and y2 == 0:
        raise OriginHit("step into the origin")
    return WindingPos(x2, y2, lift(state.h, state.x, state.y, x2, y2))


def start_pos(x: int, y: int) -> WindingPos:
    return WindingPos(x, y, int(base16(x, y)))


# counting tables

@dataclass
class CountTable:
    counts: dict = field(default_factory=dict)   # length -> int
    biased: dict = field(default_factory=dict)   # length -> Fraction, sum t^n / n
    label: str = ""

    def series(self, order: int) -> SqrtKSeries:
        return t_series_from_ints([self.counts.get(n, 0) for n in range(order + 1)], order)

    def as_list(self, order: int) -> list[int]:
        return [int(self.counts.get(n, 0)) for n in range(order + 1)]


class _Grid:
    """Square grid [-R, R]^2 with the sheet index w in [wmin, wmax]."""

    def __init__(self, R: int, wmin: int, wmax: int, steps=DIAG, dtype=np.int64):
        self.R = R
        self.wmin, self.wmax = wmin, wmax
        self.nw = wmax - wmin + 1
        self.steps = steps
        self.dtype = dtype
        r = np.arange(-R, R + 1)
        self.X, self.Y = np.meshgrid(r, r, indexing="ij")
        # origin gets a dummy class so arrays are defined; it is always masked
        bx = np.where((self.X == 0) & (self.Y == 0), 1, self.X)
        self.base = base16(bx, self.Y)
        self.dw = []
        for dx, dy in steps:
            X2, Y2 = self.X + dx, self.Y + dy
            bad = ((X2 == 0) & (Y2 == 0)) | ((self.X == 0) & (self.Y == 0))
            sx = np.where(bad, 1, self.X)
            sx2 = np.where(bad, 2, X2)
            dw = sheet_shift(sx, self.Y, sx2, Y2)
            self.dw.append(np.where(bad, 0, dw))
        w = np.arange(wmin, wmax + 1)
        self.H = self.base[None, :, :] + 16 * w[:, None, None]
        self.c = R  # index of coordinate 0

    def zeros(self):
        return np.zeros((self.nw, 2 * self.R + 1, 2 * self.R + 1), dtype=self.dtype)

    def put(self, S, x: int, y: int, h: int, value=1) -> None:
        b = base16(x, y)
        w = (h - b) // 16
        S[w - self.wmin, x + self.c, y + self.c] += value

    def step(self, S):
        out = self.zeros()
        n = 2 * self.R + 1
        for (dx, dy), dw in zip(self.steps, self.dw):
            xs = slice(max(0, -dx), n - max(0, dx))
            xd = slice(max(0, dx), n - max(0, -dx))
            ys = slice(max(0, -dy), n - max(0, dy))
            yd = slice(max(0, dy), n - max(0, -dy))
            sub = S[:, xs, ys]
            d = dw[xs, ys]
            for v in (-1, 0, 1):
                m = d == v
                if not m.any():
                    continue
                part = sub * m[None, :, :]
                if v == 0:
                    out[:, xd, yd] += part
                elif v == 1:
                    out[1:, xd, yd] += part[:-1]
                    if part[-1].any():
                        raise BudgetExceeded("winding left the tracked range")
                else:
                    out[:-1, xd, yd] += part[1:]
                    if part[0].any():
                        raise BudgetExceeded("winding left the tracked range")
        return out

    def kill_origin(self, S):
        lost = S[:, self.c, self.c].sum()
        S[:, self.c, self.c] = 0
        return lost

    def interval_mask(self, bm, bp):
        """Sites whose winding lies in the open interval (bm pi/4, bp pi/4)."""
        m = np.ones(self.H.shape, dtype=bool)
        if bm != -INF:
            m &= self.H > 2 * bm
        if bp != INF:
            m &= self.H < 2 * bp
        return m

    def at(self, S, x: int, y: int, h: int):
        b = base16(x, y)
        if (h - b) % 16:
            return 0
        w = (h - b) // 16
        if not (self.wmin <= w <= self.wmax):
            return 0
        return S[w - self.wmin, x + self.c, y + self.c]


def _check_budget(N: int, limit: int = MAX_N) -> None:
    if N > limit:
        raise BudgetExceeded(f"length {N} exceeds the enumeration budget {limit}")


def _wrange(N: int) -> tuple[int, int]:
    # at most pi/2 of winding per step: |h| <= 4N, plus one sheet of slack
    m = (4 * N) // 16 + 2
    return -m, m


def count_walks(q: WalkQuery) -> CountTable:
    N = q.order
    _check_budget(N)
    wmin, wmax = _wrange(N)
    g = _Grid(N + max(q.l, q.p) + 1, wmin, wmax)
    S = g.zeros()
    g.put(S, q.p, 0, 0)
    mask = None if q.unconstrained else g.interval_mask(q.beta_minus, q.beta_plus)
    h_end = 2 * q.alpha
    targets = ((q.l, 0), (0, q.l), (-q.l, 0), (0, -q.l))
    out = CountTable(label=f"W l={q.l} p={q.p} alpha={q.alpha} I=({q.beta_minus},{q.beta_plus})")
    out.counts[0] = 1 if (q.l == q.p and q.alpha == 0) else 0
    for n in range(1, N + 1):
        S = g.step(S)
        g.kill_origin(S)
        out.counts[n] = int(sum(g.at(S, x, y, h_end) for x, y in targets))
        if mask is not None:
            S = S * mask
    return out


def count_excursions(alpha: int, beta_minus=-INF, beta_plus=INF, N: int = 10,
                     fixed_first_step: bool = False) -> CountTable:
    """Excursions from the origin, winding measured from the first step."""
    _check_budget(N)
    if alpha % 2:
        raise InvalidQuery("alpha must be even in pi/4 units")
    wmin, wmax = _wrange(N)
    g = _Grid(N // 2 + 2, wmin, wmax)
    out = CountTable(label=f"E alpha={alpha} I=({beta_minus},{beta_plus})")
    steps = DIAG[:1] if fixed_first_step else DIAG
    total = {n: 0 for n in range(N + 1)}
    for sx, sy in steps:
        h0 = int(base16(sx, sy))
        # relative winding: shift the interval bounds and target by h0
        S = g.zeros()
        g.put(S, sx, sy, h0)
        m = np.ones(g.H.shape, dtype=bool)
        if beta_minus != -INF:
            m &= g.H - h0 > 2 * beta_minus
        if beta_plus != INF:
            m &= g.H - h0 < 2 * beta_plus
        for n in range(2, N + 1):
            # positions at time n-1 are in S (already constrained)
            S = S * m
            cnt = 0
            for x, y in DIAG:
                cnt += int(g.at(S, x, y, h0 + 2 * alpha))
            total[n] += cnt
            S = g.step(S)
            g.kill_origin(S)
    out.counts = total
    return out


def count_loops(n_index: int, parity: str, N: int) -> CountTable:
    """Rooted diagonal loops avoiding the origin with winding 2 pi n_index."""
    if n_index == 0:
        raise InvalidQuery("loop index must be nonzero")
    _check_budget(N, 20)
    if parity not in ("even", "odd", "both"):
        raise InvalidQuery("parity must be even, odd or both")
    wmin, wmax = _wrange(N)
    R = N // 2
    g = _Grid(N + 1, wmin, wmax)
    counts = {n: 0 for n in range(N + 1)}
    for x0 in range(-R, R + 1):
        for y0 in range(-R, R + 1):
            if x0 == 0 and y0 == 0:
                continue
            odd = (x0 + y0) % 2 == 1
            if parity == "odd" and not odd or parity == "even" and odd:
                continue
            S = g.zeros()
            h0 = int(base16(x0, y0))
            g.put(S, x0, y0, h0)
            target = h0 + 16 * n_index
            for n in range(1, N + 1):
                S = g.step(S)
                g.kill_origin(S)
                if n >= 4 and n % 2 == 0:
                    # a loop of length n stays within distance n/2 of its root
                    if max(abs(x0), abs(y0)) <= n // 2:
                        counts[n] += int(g.at(S, x0, y0, target))
    out = CountTable(label=f"L n={n_index} {parity}")
    out.counts = counts
    out.biased = {n: Fraction(c, n) for n, c in counts.items() if n > 0}
    return out


def crossing_winding(path: list[tuple[int, int]]) -> int:
    """Signed crossings of the positive x-axis by a closed polygon (turns)."""
    total = 0
    for (x, y), (x2, y2) in zip(path, path[1:]):
        # half-open rule on y: upward crossing counts when y < 0 <= y2
        if (y < 0 <= y2) or (y2 < 0 <= y):
            # x-coordinate of the crossing, compared exactly
            # x + (x2-x) * (0-y)/(y2-y) > 0
            num = x * (y2 - y) - (x2 - x) * y
            den = y2 - y
            if (num > 0) == (den > 0) and num != 0:
                total += 1 if y2 > y else -1
    return total


# clusters of conditioned rectilinear walks

def _closed_rect_walks(l: int):
    n = 2 * l
    path = [(0, 0)]

    def rec(x, y, left):
        if abs(x) + abs(y) > left:
            return
        if left == 0:
            yield list(path)
            return
        for dx, dy in RECT:
            path.append((x + dx, y + dy))
            yield from rec(x + dx, y + dy, left - 1)
            path.pop()

    yield from rec(0, 0, n)


def _index_maps(path):
    """Indices of dual cells and lattice points near a closed rectilinear path."""
    xs = [p[0] for p in path]
    ys = [p[1] for p in path]
    x0, x1, y0, y1 = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
    # vertical edges (x, ylow) with sign
    vert = {}
    for (a, b), (c, d) in zip(path, path[1:]):
        if a == c:
            key = (a, min(b, d))
            vert[key] = vert.get(key, 0) + (1 if d > b else -1)
    cell = {}
    for cx in range(x0, x1 + 1):
        for cy in range(y0, y1 + 1):
            # dual point (cx+1/2, cy+1/2): ray to the right crosses edges at x >= cx+1
            cell[(cx, cy)] = sum(s for (ex, ey), s in vert.items() if ey == cy and ex >= cx + 1)
    onpath = set(path)
    lat = {}
    for px in range(x0, x1 + 1):
        for py in range(y0, y1 + 1):
            if (px, py) in onpath:
                continue
            lat[(px, py)] = sum(s for (ex, ey), s in vert.items() if ey == py and ex > px)
    edges = set()
    for p, q in zip(path, path[1:]):
        edges.add((p, q) if p <= q else (q, p))
    return cell, lat, edges


def _components(cell: dict, edges: set, n: int):
    """Components of cells of index n, joined across edges off the trajectory."""
    todo = {c for c, v in cell.items() if v == n}
    comps = []
    while todo:
        seed = todo.pop()
        comp = {seed}
        stack = [seed]
        while stack:
            cx, cy = stack.pop()
            # shared edge for each neighbour
            for (nx, ny), e in (
                ((cx + 1, cy), ((cx + 1, cy), (cx + 1, cy + 1))),
                ((cx - 1, cy), ((cx, cy), (cx, cy + 1))),
                ((cx, cy + 1), ((cx, cy + 1), (cx + 1, cy + 1))),
                ((cx, cy - 1), ((cx, cy), (cx + 1, cy))),
            ):
                if (nx, ny) in todo and e not in edges:
                    todo.discard((nx, ny))
                    comp.add((nx, ny))
                    stack.append((nx, ny))
        comps.append(comp)
    return comps


def _perimeter(comp: set, edges: set) -> tuple[int, int]:
    """(traced boundary length, interior edge count) of a union of cells."""
    inner = 0
    for cx, cy in comp:
        if (cx + 1, cy) in comp and ((cx + 1, cy), (cx + 1, cy + 1)) not in edges:
            inner += 1
        if (cx, cy + 1) in comp and ((cx, cy + 1), (cx + 1, cy + 1)) not in edges:
            inner += 1
    return 4 * len(comp) - 2 * inner, inner


@dataclass
class ClusterStats:
    l: int
    walks: int
    area: dict            # n -> Fraction, E[sum |c|]
    boundary_minus_2: dict  # n -> Fraction, E[sum (|boundary c| - 2)]
    identity_ok: bool     # traced perimeter = 2|c dual| - 2|c lattice| + 2 for every cluster
    index0_finite_area: Fraction  # exploratory: E[area of bounded index-0 clusters]


def cluster_stats(l: int) -> ClusterStats:
    if l < 1 or l > 4:
        raise BudgetExceeded("exhaustive cluster enumeration supports 1 <= l <= 4")
    area: dict = {}
    bnd: dict = {}
    ok = True
    walks = 0
    z_area = 0
    for path in _closed_rect_walks(l):
        walks += 1
        cell, lat, edges = _index_maps(path)
        vals = {v for v in cell.values() if v != 0}
        for n in vals:
            for comp in _components(cell, edges, n):
                per, _ = _perimeter(comp, edges)
                # lattice points inside the component: off-trajectory corners
                # whose four cells all belong to it
                inside = 0
                for (cx, cy) in comp:
                    corner = (cx + 1, cy + 1)
                    if corner in lat and lat[corner] == n and all(
                        c in comp for c in ((cx, cy), (cx + 1, cy), (cx, cy + 1), (cx + 1, cy + 1))
                    ):
                        inside += 1
                if per != 2 * len(comp) - 2 * inside + 2:
                    ok = False
                area[n] = area.get(n, 0) + len(comp)
                bnd[n] = bnd.get(n, 0) + per - 2
        # index-0 cells not connected to the outside
        zero = _components(cell, edges, 0)
        xs = [p[0] for p in path]
        ys = [p[1] for p in path]
        for comp in zero:
            if all(min(xs) <= cx < max(xs) and min(ys) <= cy < max(ys) for cx, cy in comp):
                z_area += len(comp)
    expect = lambda d: {n: Fraction(v, walks) for n, v in sorted(d.items())}
    if walks != comb(2 * l, l) ** 2:
        raise AssertionError("closed walk count mismatch")
    return ClusterStats(l, walks, expect(area), expect(bnd), ok, Fraction(z_area, walks))


# unconstrained random walk windings (time j + 1/2), exact

def _obj_grid(R: int, N: int) -> _Grid:
    wmin, wmax = _wrange(N + 1)
    return _Grid(R, wmin, wmax, dtype=object)


def _midpoint_h(g: _Grid, S, offset: int) -> dict:
    """Histogram of the winding (h - offset) at the midpoint of one more step."""
    hist: dict = {}
    X, Y = g.X, g.Y
    for dx, dy in DIAG:
        valid = ~((X == 0) & (Y == 0))
        sx = np.where(valid, X, 1)
        dw = sheet_shift(2 * sx, 2 * Y, 2 * sx + dx, 2 * Y + dy)
        b2 = base16(2 * sx + dx, 2 * Y + dy)
        for wi in range(g.nw):
            layer = S[wi]
            nz = np.nonzero(layer)
            for i, j in zip(*nz):
                h = int(b2[i, j]) + 16 * (wi + g.wmin + int(dw[i, j])) - offset
                hist[h] = hist.get(h, 0) + layer[i, j]
    return hist


def square_point_histograms(jmax: int) -> list[dict]:
    """hist[j][h] = number of walks of j+1 diagonal steps from (1,0) whose
    last-step midpoint has lifted class h (start class 0); total 4^(j+1)."""
    g = _obj_grid(jmax + 2, jmax)
    S = g.zeros()
    g.put(S, 1, 0, 0)
    out = []
    for j in range(jmax + 1):
        out.append(_midpoint_h(g, S, 0))
        S = g.step(S)
        if g.kill_origin(S):
            raise AssertionError("odd sublattice walk reached the origin")
    return out


def g_walk_histograms(p: int, nmax: int) -> list[dict]:
    """hist[n][h]: walks of n >= 1 diagonal steps from (p,0), no visit to the
    origin before the last step, by the class h of the last-step midpoint."""
    if p < 1:
        raise ValueError("p must be >= 1")
    _check_budget(nmax)
    g = _obj_grid(nmax + p + 2, nmax)
    S = g.zeros()
    g.put(S, p, 0, 0)
    out = [{}]
    for n in range(1, nmax + 1):
        out.append(_midpoint_h(g, S, 0))
        S = g.step(S)
        g.kill_origin(S)
    return out


def origin_point_histograms(jmax: int) -> tuple[list[dict], list[int]]:
    """Walks from (0,0) with first step fixed to (1,1) and j more steps, the
    last one halved.  Returns per-j histograms of the relative class and the
    number of walks absorbed at the origin before the midpoint; total 4^j."""
    g = _obj_grid(jmax + 2, jmax)
    hists = [{0: 1}]
    absorbed = [0]
    S = g.zeros()
    g.put(S, 1, 1, 2)
    dead = 0
    for j in range(1, jmax + 1):
        hists.append(_midpoint_h(g, S, 2))
        absorbed.append(dead * 4)
        S = g.step(S)
        dead = dead * 4 + g.kill_origin(S)
    return hists, absorbed


@dataclass
class Distribution:
    buckets: dict            # grid units -> probability
    tail_bound: float = 0.0
    normalization_defect: float = 0.0
    stderr: dict = field(default_factory=dict)
    absorbed: float = 0.0    # mass with theta = infinity
    meta: dict = field(default_factory=dict)


def _theta_batch(x, y, h, steps_x, steps_y):
    """Advance arrays of walkers by one full step each (vectorized lift)."""
    x2, y2 = x + steps_x, y + steps_y
    cross = x * y2 - y * x2
    b2 = base16(x2, y2)
    fwd = h + np.mod(b2 - h, 16)
    bwd = h - np.mod(h - b2, 16)
    return x2, y2, np.where(cross > 0, fwd, np.where(cross < 0, bwd, h))


def simulate_winding(mode: str, samples: int, seed: int, j: Optional[int] = None,
                     k: Optional[float] = None, batch: int = 200_000) -> Distribution:
    """Monte Carlo of the rectilinear walk winding at time zeta+1/2 (or j+1/2)
    around (-1/2,-1/2) ("square") or around the origin ("origin"), done in the
    rotated diagonal picture.  Buckets are the centre alpha (grid units) of
    windows of half-width pi/2 on the partition alpha in pi Z (square) or
    pi Z + pi/4 with windows (alpha - pi/2, alpha + pi/2) (origin)."""
    if samples < 1:
        raise InvalidQuery("samples must be >= 1")
    if (j is None) == (k is None):
        raise InvalidQuery("give exactly one of j (fixed time) or k (geometric time)")
    if mode not in ("square", "origin"):
        raise InvalidQuery("mode must be square or origin")
    ss = np.random.SeedSequence(seed)
    counts: dict = {}
    absorbed = 0
    done = 0
    for child in ss.spawn((samples + batch - 1) // batch):
        rng = np.random.Generator(np.random.Philox(child))
        n = min(batch, samples - done)
        done += n
        if j is not None:
            T = np.full(n, j, dtype=np.int64)
        else:
            T = rng.geometric(1.0 - k, size=n) - 1
        steps = np.array(DIAG, dtype=np.int64)
        if mode == "square":
            x = np.full(n, 2, dtype=np.int64)  # doubled coordinates
            y = np.zeros(n, dtype=np.int64)
            h = np.zeros(n, dtype=np.int64)
            h0 = 0
            todo = T.copy()  # full steps before the final half step
        else:
            x = np.full(n, 2, dtype=np.int64)
            y = np.full(n, 2, dtype=np.int64)
            h = np.full(n, 2, dtype=np.int64)
            h0 = 2
            todo = T - 1  # first step fixed; j = 0 handled below
        alive = np.ones(n, dtype=bool)
        t = 0
        tmax = int(todo.max()) if n else 0
        while t < tmax:
            act = alive & (todo > t)
            idx = np.nonzero(act)[0]
            if idx.size == 0:
                break
            d = steps[rng.integers(0, 4, size=idx.size)]
            nx, ny, nh = _theta_batch(x[idx], y[idx], h[idx], 2 * d[:, 0], 2 * d[:, 1])
            x[idx], y[idx], h[idx] = nx, ny, nh
            hit = (nx == 0) & (ny == 0)
            alive[idx[hit]] = False
            t += 1
        d = steps[rng.integers(0, 4, size=n)]
        mx, my, mh = _theta_batch(x, y, h, d[:, 0], d[:, 1])
        rel = mh - h0
        if mode == "origin":
            rel = np.where(T == 0, 0, rel)
            absorbed += int((~alive).sum())
            rel = rel[alive]
            # windows (alpha - pi/2, alpha + pi/2), alpha = (4m+2) pi/8 ... label by
            # the partition alpha in pi Z + pi/4: centres at h = 2 + 8m (pi/8 units)
            lab = 2 + 8 * np.floor_divide(rel - 2 + 4, 8)
            lab_units = lab // 2
        else:
            # partition alpha in pi Z: windows (alpha - pi/2, alpha + pi/2) in h = 8m +- 4
            lab = 8 * np.floor_divide(rel + 4, 8)
            lab_units = lab // 2
        u, c = np.unique(lab_units, return_counts=True)
        for a, cnt in zip(u.tolist(), c.tolist()):
            counts[a] = counts.get(a, 0) + cnt
    P = {a: c / samples for a, c in sorted(counts.items())}
    se = {a: (p * (1 - p) / samples) ** 0.5 for a, p in P.items()}
    return Distribution(P, 0.0, abs(sum(P.values()) + absorbed / samples - 1.0), se,
                        absorbed / samples, {"seed": seed, "samples": samples, "mode": mode,
                                             "j": j, "k": k})
