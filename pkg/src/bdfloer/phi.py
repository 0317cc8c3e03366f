"""Standard complexes and the phi concordance invariants.

The reduced mapping cone is translated into a two-variable presentation
(each differential term carries the exponent pair (dI, dJ)) and then
into typed edges: a term of drop (p, q) contributes a bottom edge with
monomial U^p W^q and a top edge with monomial V^q W^p.  Products of a
bottom and a top monomial vanish; within one side, monomials multiply by
adding exponents, and a monomial is a ring element iff its W exponent is
positive or its main exponent is nonnegative.

Greedy typed basis changes cancel duplicate edges until the complex is a
single alternating path, the standard complex, from which phi is read:
a forward V-edge of drop (dI, dJ) contributes +1 at (dI, dJ); a backward
V-edge contributes -1 at the transposed drop.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complexes import BifilteredComplex
from .errors import InvalidParameter, NotSimplifiable


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def i_top(k: int, m: int, s: int) -> int:
    return min(k + _ceil_div(s - 1, 2), 2 * k)


def i_bot(k: int, m: int, s: int) -> int:
    return max(k + 1 + _ceil_div(s - m, 2), 1)


def delta_km(k: int, m: int, s: int):
    """The vector of the s-th long V-edge of the standard complex."""
    if s <= 2 * k:
        return (k - _ceil_div(s - 1, 2), m + k - (s + 1) // 2)
    return (0, 2 * k + m - s)


def phi_closed_form(k: int, m: int) -> dict:
    """Closed-form phi table: -(sum of short-edge counts) at (1, 0) and
    +1 at each Delta_{k,m}(s) for 1 <= s <= m-1."""
    if k < 1 or m < 2:
        raise InvalidParameter(f"need k >= 1, m >= 2, got ({k}, {m})")
    table = {}
    ones = sum(i_top(k, m, s) - i_bot(k, m, s) + 1 for s in range(1, m))
    if ones:
        table[(1, 0)] = -ones
    for s in range(1, m):
        v = delta_km(k, m, s)
        table[v] = table.get(v, 0) + 1
    return {key: val for key, val in table.items() if val}


# -- typed edge elimination ---------------------------------------------------


@dataclass(frozen=True)
class Edge:
    kind: str        # "U" (bottom ideal) or "V" (top ideal)
    forward: bool    # direction along the extracted path
    main: int        # U_B resp. V_T exponent
    w: int           # W exponent

    @property
    def vector(self):
        """Filtration-drop vector (dI, dJ) of the underlying term."""
        if self.kind == "U":
            return (self.main, self.w)
        return (self.w, self.main)


@dataclass
class StandardComplex:
    nodes: list          # generator names in path order
    edges: list          # Edge objects, edges[i] joins nodes[i], nodes[i+1]

    def v_edge_vectors(self):
        """Signed V-edge vectors in path order."""
        out = []
        for e in self.edges:
            if e.kind != "V":
                continue
            if e.forward:
                out.append((+1, e.vector))
            else:
                di, dj = e.vector
                out.append((-1, (dj, di)))
        return out


def phi_of_standard(sc: StandardComplex) -> dict:
    table = {}
    for sign, vec in sc.v_edge_vectors():
        table[vec] = table.get(vec, 0) + sign
    return {key: val for key, val in table.items() if val}


def _legal(mono) -> bool:
    main, w = mono
    return w >= 1 or (w == 0 and main >= 0)


class _TypedComplex:
    """Mod-2 edge sets keyed by (src, dst, kind); a basis change
    x2 -> x2 + mono * x1 transfers same-kind edges only (cross products
    vanish in the ring)."""

    def __init__(self, cx: BifilteredComplex):
        self.gens = dict(cx.canonical().gens)
        self.edges = {}  # (src, dst, kind) -> set of (main, w)
        for x, y, u, di, dj in cx.canonical().terms():
            if (di, dj) == (0, 0):
                raise NotSimplifiable("input complex is not reduced")
            self._toggle(x, y, "U", (di, dj))
            self._toggle(x, y, "V", (dj, di))

    def _toggle(self, x, y, kind, mono):
        key = (x, y, kind)
        bucket = self.edges.setdefault(key, set())
        if mono in bucket:
            bucket.discard(mono)
            if not bucket:
                del self.edges[key]
        else:
            bucket.add(mono)

    def out_edges(self, x, kind):
        return [
            (y, mono)
            for (src, y, k), monos in self.edges.items()
            if src == x and k == kind
            for mono in monos
        ]

    def in_edges(self, y, kind):
        return [
            (x, mono)
            for (x, dst, k), monos in self.edges.items()
            if dst == y and k == kind
            for mono in monos
        ]

    def absorb(self, x2, x1, kind, mono):
        """Basis change x2 -> x2 + mono * x1 (kind-typed monomial)."""
        assert _legal(mono), f"illegal monomial {mono}"
        assert x1 != x2
        for t, e in self.out_edges(x1, kind):
            self._toggle(x2, t, kind, (e[0] + mono[0], e[1] + mono[1]))
        for z, e in self.in_edges(x2, kind):
            self._toggle(z, x1, kind, (e[0] + mono[0], e[1] + mono[1]))

    def sinks(self):
        srcs = {src for (src, dst, k) in self.edges}
        return [n for n in self.gens if n not in srcs]

    def _state_key(self):
        return frozenset(
            (key, frozenset(monos)) for key, monos in self.edges.items()
        )

    def simplify(self, max_states=20000):
        """Reach a single-path edge graph by typed basis changes.

        Every absorb is self-inverse mod 2, so the move tree is explored
        depth-first with undo; visited states are memoized to rule out
        toggling cycles.  Moves that only cancel existing edges sort
        first.
        """
        seen = set()
        budget = [max_states]

        def dfs() -> bool:
            try:
                self.extract_path()
                return True
            except NotSimplifiable:
                pass
            key = self._state_key()
            if key in seen or budget[0] <= 0:
                return False
            seen.add(key)
            budget[0] -= 1
            moves = self._duplicate_sink_moves() + self._duplicate_source_moves()
            moves.sort(key=lambda mv: (mv[0], mv[1], str(mv[2]), str(mv[3]), mv[5]))
            for _, kind, x2, x1, mono, _ in moves:
                self.absorb(x2, x1, kind, mono)
                if dfs():
                    return True
                self.absorb(x2, x1, kind, mono)  # undo
            return False

        if not dfs():
            raise NotSimplifiable("basis-change search did not converge")

    def _duplicate_sink_moves(self):
        """Absorptions between two same-kind in-edges of one node."""
        moves = []
        by_target = {}
        for (src, dst, kind), monos in self.edges.items():
            for mono in monos:
                by_target.setdefault((dst, kind), []).append((src, mono))
        for (dst, kind), incoming in by_target.items():
            if len(incoming) < 2:
                continue
            incoming.sort(key=lambda sm: (sm[1][1], sm[1][0], str(sm[0])))
            for hi in range(len(incoming) - 1, 0, -1):
                x2, e2 = incoming[hi]
                for lo in range(hi - 1, -1, -1):
                    x1, e1 = incoming[lo]
                    if x1 == x2:
                        continue
                    mono = (e2[0] - e1[0], e2[1] - e1[1])
                    if not _legal(mono):
                        continue
                    cost = self._creation_cost(x2, x1, kind, mono)
                    moves.append((cost, kind, x2, x1, mono, f"in:{dst}"))
        return moves

    def _duplicate_source_moves(self):
        """Target-side absorptions killing a duplicate same-kind out-edge."""
        moves = []
        for x in self.gens:
            for kind in ("U", "V"):
                outs = self.out_edges(x, kind)
                if len(outs) < 2:
                    continue
                outs.sort(key=lambda te: (te[1][1], te[1][0], str(te[0])))
                for a in range(len(outs)):
                    keep, e_keep = outs[a]
                    for b in range(len(outs)):
                        if a == b:
                            continue
                        kill, e_kill = outs[b]
                        if kill == keep:
                            continue
                        mono = (e_kill[0] - e_keep[0], e_kill[1] - e_keep[1])
                        if not _legal(mono):
                            continue
                        cost = self._creation_cost(keep, kill, kind, mono)
                        moves.append((cost, kind, keep, kill, mono, f"out:{x}"))
        return moves

    def _creation_cost(self, x2, x1, kind, mono):
        created = 0
        for t, e in self.out_edges(x1, kind):
            shifted = (e[0] + mono[0], e[1] + mono[1])
            if shifted not in self.edges.get((x2, t, kind), ()):
                created += 1
        for z, e in self.in_edges(x2, kind):
            shifted = (e[0] + mono[0], e[1] + mono[1])
            if shifted not in self.edges.get((z, x1, kind), ()):
                created += 1
        return created

    def extract_path(self) -> StandardComplex:
        """The surviving edge graph must be a single alternating path."""
        if len(self.gens) <= 1 and not self.edges:
            return StandardComplex(list(self.gens), [])
        neighbors = {n: [] for n in self.gens}
        edge_map = {}
        for (src, dst, kind), monos in self.edges.items():
            for mono in monos:
                neighbors[src].append(dst)
                neighbors[dst].append(src)
                key = frozenset((src, dst))
                if key in edge_map:
                    raise NotSimplifiable(f"parallel edges between {src}, {dst}")
                edge_map[key] = (src, dst, kind, mono)
        ends = [n for n, ns in neighbors.items() if len(ns) == 1]
        if any(len(ns) > 2 for ns in neighbors.values()) or len(ends) != 2:
            raise NotSimplifiable("surviving edges do not form a path")
        # start from the endpoint with the larger Alexander grading
        start = max(ends, key=lambda n: (self.gens[n].j, str(n)))
        order, prev = [start], None
        while True:
            nxt = [x for x in neighbors[order[-1]] if x != prev]
            if not nxt:
                break
            prev = order[-1]
            order.append(nxt[0])
        if len(order) != len(self.gens):
            raise NotSimplifiable("edge graph is disconnected")
        edges = []
        for a, b in zip(order, order[1:]):
            src, dst, kind, mono = edge_map[frozenset((a, b))]
            edges.append(Edge(kind, forward=(src == a), main=mono[0], w=mono[1]))
        for e1, e2 in zip(edges, edges[1:]):
            if e1.kind == e2.kind:
                raise NotSimplifiable("edge kinds do not alternate")
        return StandardComplex(order, edges)


def to_standard(c: BifilteredComplex) -> StandardComplex:
    """Standardize a reduced flattened cone of a staircase input."""
    tc = _TypedComplex(c)
    tc.simplify()
    return tc.extract_path()


def independence_rank(tables) -> int:
    """Rank over the rationals of the matrix of phi tables."""
    tables = list(tables)
    if not tables:
        raise InvalidParameter("need at least one table")
    support = sorted({key for t in tables for key in t})
    rows = [[Fraction(t.get(key, 0)) for key in support] for t in tables]
    rank = 0
    for col in range(len(support)):
        piv = None
        for r in range(rank, len(rows)):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col] / prow[col]
                rows[r] = [a - f * b for a, b in zip(rows[r], prow)]
        rank += 1
    return rank
