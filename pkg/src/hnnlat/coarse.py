"""Finite metric spaces and exact coarse-separation analysis.

Spaces are either weighted graphs with the shortest-path metric or explicit
rational distance matrices.  All arithmetic is exact: graph weights are
scaled to integers once and Dijkstra/BFS run over plain ints.

Scale conventions follow the definitions this package executes at finite
scale: neighborhoods N_r are strict (d < r), r-boundaries are non-strict
(d <= r), and an s-path moves through the subset in hops of length <= s.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from heapq import heappop, heappush
from math import inf, lcm

from .errors import PreconditionError

POINT_CAP = 50_000


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


class FiniteCoarseSpace:
    """Finite metric space with ids 0..points-1.

    Graph-backed spaces keep an adjacency list with integer-scaled weights;
    matrix-backed spaces validate the metric axioms exactly on construction.
    """

    def __init__(self, points: int):
        if points < 1:
            raise PreconditionError("a space needs at least one point")
        if points > POINT_CAP:
            raise PreconditionError(f"space exceeds the {POINT_CAP}-point cap")
        self.points = points
        self._dist_cache: dict[frozenset, tuple] = {}
        self._adj: list[list[tuple[int, int]]] | None = None
        self._scale = 1
        self._uniform_weight: int | None = None
        self._matrix: tuple[tuple[Fraction, ...], ...] | None = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_graph(cls, points: int, edges) -> "FiniteCoarseSpace":
        """edges: iterable of (i, j, weight); weights positive rationals."""
        space = cls(points)
        parsed = []
        for i, j, w in edges:
            w = Fraction(w)
            if not (0 <= i < points and 0 <= j < points) or i == j:
                raise PreconditionError(f"bad edge ({i}, {j})")
            if w <= 0:
                raise PreconditionError("edge weights must be positive")
            parsed.append((int(i), int(j), w))
        scale = lcm(*(w.denominator for _, _, w in parsed)) if parsed else 1
        adj: list[list[tuple[int, int]]] = [[] for _ in range(points)]
        weights = set()
        for i, j, w in parsed:
            wi = int(w * scale)
            adj[i].append((j, wi))
            adj[j].append((i, wi))
            weights.add(wi)
        space._adj = adj
        space._scale = scale
        space._uniform_weight = weights.pop() if len(weights) == 1 else None
        return space

    @classmethod
    def from_matrix(cls, matrix) -> "FiniteCoarseSpace":
        rows = tuple(tuple(Fraction(e) for e in row) for row in matrix)
        n = len(rows)
        space = cls(n)
        if any(len(r) != n for r in rows):
            raise PreconditionError("distance matrix must be square")
        for i in range(n):
            if rows[i][i] != 0:
                raise PreconditionError("nonzero diagonal")
            for j in range(n):
                if rows[i][j] < 0 or rows[i][j] != rows[j][i]:
                    raise PreconditionError("matrix must be symmetric and nonnegative")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if rows[i][j] > rows[i][k] + rows[k][j]:
                        raise PreconditionError(
                            f"triangle inequality fails at ({i}, {j}, {k})"
                        )
        space._matrix = rows
        return space

    # -- metric ---------------------------------------------------------

    def dist_from(self, sources) -> tuple:
        """Distances from a point set; entries are Fractions or math.inf."""
        key = frozenset(sources)
        if not all(0 <= s < self.points for s in key):
            raise PreconditionError("source outside the space")
        cached = self._dist_cache.get(key)
        if cached is not None:
            return cached
        if not key:
            out = (inf,) * self.points
        elif self._matrix is not None:
            out = tuple(min(self._matrix[s][x] for s in key) for x in range(self.points))
        else:
            out = self._graph_distances(key)
        self._dist_cache[key] = out
        return out

    def _graph_distances(self, sources: frozenset) -> tuple:
        adj = self._adj
        dist = [None] * self.points
        if self._uniform_weight is not None:
            w = self._uniform_weight
            queue = deque()
            for s in sources:
                dist[s] = 0
                queue.append(s)
            while queue:
                x = queue.popleft()
                for y, _ in adj[x]:
                    if dist[y] is None:
                        dist[y] = dist[x] + w
                        queue.append(y)
        else:
            heap = []
            for s in sources:
                dist[s] = 0
                heappush(heap, (0, s))
            while heap:
                d, x = heappop(heap)
                if d > dist[x]:
                    continue
                for y, w in adj[x]:
                    nd = d + w
                    if dist[y] is None or nd < dist[y]:
                        dist[y] = nd
                        heappush(heap, (nd, y))
        scale = self._scale
        return tuple(inf if d is None else Fraction(d, scale) for d in dist)

    def distance(self, i: int, j: int):
        return self.dist_from(frozenset([i]))[j]

    def diameter(self):
        """Exact diameter; infinite for disconnected spaces."""
        best = Fraction(0)
        for i in range(self.points):
            row = self.dist_from(frozenset([i]))
            if any(d is inf for d in row):
                return inf
            best = max(best, max(row))
        return best

    def all_points(self) -> frozenset:
        return frozenset(range(self.points))

    def _close_pairs(self, subset: frozenset, s):
        """Pairs of subset points at metric distance <= s (exact)."""
        s = Fraction(s)
        members = sorted(subset)
        if self._matrix is not None:
            for a_idx, a in enumerate(members):
                row = self._matrix[a]
                for b in members[a_idx + 1 :]:
                    if row[b] <= s:
                        yield a, b
            return
        # graph-backed: bounded search from each subset point
        s_scaled_num = s * self._scale
        member_set = subset
        for a in members:
            for b in self._bounded_reach(a, s_scaled_num):
                if b in member_set and b > a:
                    yield a, b

    def _bounded_reach(self, start: int, limit_scaled):
        adj = self._adj
        dist = {start: 0}
        heap = [(0, start)]
        while heap:
            d, x = heappop(heap)
            if d > dist[x]:
                continue
            for y, w in adj[x]:
                nd = d + w
                if nd <= limit_scaled and (y not in dist or nd < dist[y]):
                    dist[y] = nd
                    heappush(heap, (nd, y))
        return dist.keys()


class GridSpace(FiniteCoarseSpace):
    """Integer box with unit edges and the L1 shortest-path metric."""

    def __init__(self, dims):
        dims = [int(d) for d in dims]
        if not dims or any(d < 1 for d in dims):
            raise PreconditionError("each grid side must be >= 1")
        points = 1
        for d in dims:
            points *= d
        super().__init__(points)
        self.dims = tuple(dims)
        strides = []
        acc = 1
        for d in reversed(dims):
            strides.append(acc)
            acc *= d
        self._strides = tuple(reversed(strides))
        edges = []
        for idx in range(points):
            coords = self.coords(idx)
            for axis, d in enumerate(dims):
                if coords[axis] + 1 < d:
                    edges.append((idx, idx + self._strides[axis], 1))
        graph = FiniteCoarseSpace.from_graph(points, edges)
        self._adj = graph._adj
        self._scale = graph._scale
        self._uniform_weight = graph._uniform_weight

    def index(self, coords) -> int:
        if len(coords) != len(self.dims):
            raise PreconditionError("coordinate arity mismatch")
        for c, d in zip(coords, self.dims):
            if not 0 <= c < d:
                raise PreconditionError("coordinate outside the box")
        return sum(c * s for c, s in zip(coords, self._strides))

    def coords(self, idx: int) -> tuple[int, ...]:
        out = []
        for s in self._strides:
            out.append(idx // s)
            idx %= s
        return tuple(out)


def build_grid(dims) -> GridSpace:
    return GridSpace(dims)


class TreeProductSpace(FiniteCoarseSpace):
    """Cartesian product of a tree ball and a box, with the summed metric."""

    def __init__(self, ball, box: FiniteCoarseSpace):
        self.tree_vertices = ball.vertices
        self.box = box
        n_tree, n_box = len(ball.vertices), box.points
        super().__init__(n_tree * n_box)
        tree_index = {k: i for i, k in enumerate(ball.vertices)}
        edges = []
        for key in ball.vertices:
            parent = ball.parent[key]
            if parent is None:
                continue
            a, b = tree_index[key], tree_index[parent]
            for p in range(n_box):
                edges.append((a * n_box + p, b * n_box + p, 1))
        if box._adj is not None:
            for p in range(box.points):
                for q, w in box._adj[p]:
                    if q > p:
                        for t in range(n_tree):
                            edges.append((t * n_box + p, t * n_box + q, Fraction(w, box._scale)))
            graph = FiniteCoarseSpace.from_graph(self.points, edges)
            self._adj = graph._adj
            self._scale = graph._scale
            self._uniform_weight = graph._uniform_weight
        else:
            # matrix-backed box: tree distances via BFS, then the explicit sum
            tree_graph = FiniteCoarseSpace.from_graph(
                n_tree,
                [
                    (tree_index[k], tree_index[ball.parent[k]], 1)
                    for k in ball.vertices
                    if ball.parent[k] is not None
                ],
            ) if n_tree > 1 else None
            rows = []
            for t1 in range(n_tree):
                tree_row = (
                    tree_graph.dist_from(frozenset([t1])) if tree_graph else (Fraction(0),)
                )
                for p in range(n_box):
                    row = []
                    for t2 in range(n_tree):
                        for q in range(n_box):
                            row.append(tree_row[t2] + box._matrix[p][q])
                    rows.append(row)
            self._matrix = tuple(tuple(r) for r in rows)

    def pair_index(self, key, box_point: int) -> int:
        return self.tree_vertices.index(key) * self.box.points + box_point


def build_tree_product(ball, box: FiniteCoarseSpace) -> TreeProductSpace:
    return TreeProductSpace(ball, box)


# -- subset operations ----------------------------------------------------


def _check_subset(x: FiniteCoarseSpace, a):
    a = frozenset(int(p) for p in a)
    if not all(0 <= p < x.points for p in a):
        raise PreconditionError("subset contains points outside the space")
    return a


def neighborhood(x: FiniteCoarseSpace, a, r) -> frozenset:
    """Strict metric neighborhood {p : d(p, a) < r}."""
    a = _check_subset(x, a)
    r = Fraction(r)
    dist = x.dist_from(a)
    return frozenset(p for p in range(x.points) if dist[p] < r)


def boundary_r(x: FiniteCoarseSpace, c, r) -> frozenset:
    """Non-strict outer boundary {p outside c : d(p, c) <= r}."""
    c = _check_subset(x, c)
    r = Fraction(r)
    dist = x.dist_from(c)
    return frozenset(p for p in range(x.points) if p not in c and dist[p] <= r)


def s_components(x: FiniteCoarseSpace, subset, s) -> list[frozenset]:
    """Partition of the subset into maximal s-path-connected pieces.

    Components are returned sorted by their smallest member, so layouts are
    reproducible across runs.
    """
    subset = _check_subset(x, subset)
    if not subset:
        return []
    uf = _UnionFind(subset)
    for a, b in x._close_pairs(subset, s):
        uf.union(a, b)
    groups: dict[int, set[int]] = {}
    for p in subset:
        groups.setdefault(uf.find(p), set()).add(p)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def is_s_connected(x: FiniteCoarseSpace, subset, s) -> bool:
    return len(s_components(x, subset, s)) <= 1


def coarse_complement_profile(x: FiniteCoarseSpace, c, a, r_max: int) -> list[int | None]:
    """Minimal integer rho(r) with boundary_r(c) inside N_rho(a), r = 1..r_max.

    N is strict, so rho(r) is floor(max distance) + 1; an entry is None when
    no finite bound exists (empty a with nonempty boundary, or unreachable
    boundary points).  An empty boundary yields 0.
    """
    c = _check_subset(x, c)
    a = _check_subset(x, a)
    dist_a = x.dist_from(a)
    out: list[int | None] = []
    for r in range(1, r_max + 1):
        boundary = boundary_r(x, c, r)
        if not boundary:
            out.append(0)
            continue
        worst = max(dist_a[p] for p in boundary)
        out.append(None if worst is inf else int(worst) + 1)
    return out


@dataclass(frozen=True)
class Z2Classes:
    """Finite stand-in for separation classes: unions of deep components
    modulo shallow ones form a Z/2 space of the stated dimension."""

    dimension: int
    basis: tuple[frozenset, ...]


@dataclass(frozen=True)
class SeparationAnalysis:
    subset: frozenset
    r: Fraction
    s: Fraction
    r_deep: Fraction
    components: tuple[frozenset, ...]
    deep_flags: tuple[bool, ...]
    x_s_connected: bool

    @property
    def deep_count(self) -> int:
        return sum(self.deep_flags)

    @property
    def classes(self) -> Z2Classes:
        deep = [c for c, f in zip(self.components, self.deep_flags) if f]
        dim = max(self.deep_count - 1, 0)
        return Z2Classes(dimension=dim, basis=tuple(deep[:dim]))


def separation_analysis(x: FiniteCoarseSpace, a, r, s, r_deep) -> SeparationAnalysis:
    """Components of X - N_r(a) under s-paths, tagged deep or shallow.

    A component is deep when one of its points sits at distance > r_deep
    from a (an unreachable point counts as deep).
    """
    a = _check_subset(x, a)
    r, s, r_deep = Fraction(r), Fraction(s), Fraction(r_deep)
    complement = x.all_points() - neighborhood(x, a, r)
    comps = s_components(x, complement, s)
    dist_a = x.dist_from(a)
    flags = tuple(any(dist_a[p] is inf or dist_a[p] > r_deep for p in comp) for comp in comps)
    return SeparationAnalysis(
        subset=a,
        r=r,
        s=s,
        r_deep=r_deep,
        components=tuple(comps),
        deep_flags=flags,
        x_s_connected=is_s_connected(x, x.all_points(), s),
    )


@dataclass(frozen=True)
class ContainmentVerdict:
    side: str  # "inside", "outside", or "mixed" (a mixed verdict is a bug witness)
    precondition_failures: tuple[str, ...]
    witness: tuple[int, int] | None = None


def one_sided_containment_check(
    x: FiniteCoarseSpace, m, a, c, s, p
) -> ContainmentVerdict:
    """Finite one-sidedness check: an s-path-connected set avoiding N_p(a)
    must land entirely inside c or entirely outside."""
    m = _check_subset(x, m)
    a = _check_subset(x, a)
    c = _check_subset(x, c)
    failures = []
    if not m:
        failures.append("m is empty")
    elif not is_s_connected(x, m, s):
        failures.append("m is not s-path connected")
    if m & neighborhood(x, a, p):
        failures.append("m meets N_p(a)")
    inside = m & c
    outside = m - c
    if inside and outside:
        return ContainmentVerdict(
            "mixed", tuple(failures), witness=(min(inside), min(outside))
        )
    return ContainmentVerdict("outside" if outside else "inside", tuple(failures))
