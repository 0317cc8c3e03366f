"""Bifiltered chain complexes over F_2[U, U^-1].

A complex is a free module with a chosen basis.  Each basis element
carries (maslov, i, j): the Maslov grading and the two filtration levels
of the chosen representative.  A differential term ``x -> U^u y`` sends
the representative of x to U^u times the representative of y, which sits
at (i_y - u, j_y - u).  The filtration drop of the term is

    delta = (i_x - i_y + u, j_x - j_y + u)

and every term must have delta >= (0, 0) componentwise and drop the
Maslov grading by exactly one.  Coefficients are mod 2, so the
differential is stored as a set of terms; for a fixed (x, y) the
exponent u is pinned by the gradings, hence a plain dict works.

Generators may be re-gauged by U powers.  The gauge-invariant data of a
generator is (maslov - 2i, j - i); ``canonical`` re-gauges everything to
i = 0, which is the form used for isomorphism tests, JSON output and
golden files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import GradingUnderdetermined, NotAChainComplex


@dataclass(frozen=True)
class Gen:
    maslov: int
    i: int
    j: int

    @property
    def alexander(self):
        return self.j - self.i

    @property
    def mu(self):
        """Gauge-invariant Maslov grading of the i = 0 representative."""
        return self.maslov - 2 * self.i


class BifilteredComplex:
    def __init__(self, generators, differential, validate=True):
        """generators: dict name -> Gen (or (maslov, i, j) triple);
        differential: dict src -> dict dst -> u."""
        self.gens = {}
        for name, g in dict(generators).items():
            self.gens[name] = g if isinstance(g, Gen) else Gen(*g)
        self.diff = {x: dict(ts) for x, ts in differential.items() if ts}
        for x in list(self.diff):
            if not self.diff[x]:
                del self.diff[x]
        if validate:
            self.validate()

    # -- basic structure ------------------------------------------------

    def terms(self):
        """Yield (x, y, u, dI, dJ) for every differential term."""
        for x, ts in self.diff.items():
            gx = self.gens[x]
            for y, u in ts.items():
                gy = self.gens[y]
                yield x, y, u, gx.i - gy.i + u, gx.j - gy.j + u

    def validate(self):
        for x, y, u, di, dj in self.terms():
            if x not in self.gens or y not in self.gens:
                raise NotAChainComplex(f"term {x}->{y} references unknown generator")
            gx, gy = self.gens[x], self.gens[y]
            if gx.maslov - 1 != gy.maslov - 2 * u:
                raise NotAChainComplex(
                    f"term {x}->U^{u} {y} does not drop Maslov by 1"
                )
            if di < 0 or dj < 0:
                raise NotAChainComplex(f"term {x}->U^{u} {y} raises a filtration")
        # d^2 = 0 over F_2: count length-two paths mod 2
        for x, ts in self.diff.items():
            acc = {}
            for y, u in ts.items():
                for z, v in self.diff.get(y, {}).items():
                    key = z
                    acc[key] = acc.get(key, 0) ^ 1
                    # exponent u+v is determined by gradings, no need to track
            bad = [z for z, c in acc.items() if c]
            if bad:
                raise NotAChainComplex(f"d^2(x) != 0 at {x}: hits {bad}")
        return self

    def __len__(self):
        return len(self.gens)

    def delta(self, x, y):
        u = self.diff[x][y]
        gx, gy = self.gens[x], self.gens[y]
        return (gx.i - gy.i + u, gx.j - gy.j + u)

    def is_reduced(self) -> bool:
        return all(max(di, dj) >= 1 for *_, di, dj in self.terms())

    def genus(self) -> int:
        return max(g.alexander for g in self.gens.values())

    # -- constructions --------------------------------------------------

    def copy(self):
        return BifilteredComplex(self.gens, self.diff, validate=False)

    def translate(self, di=0, dj=0, dmaslov=0):
        gens = {
            n: Gen(g.maslov + dmaslov, g.i + di, g.j + dj)
            for n, g in self.gens.items()
        }
        return BifilteredComplex(gens, self.diff, validate=False)

    def rename(self, fn):
        gens = {fn(n): g for n, g in self.gens.items()}
        diff = {
            fn(x): {fn(y): u for y, u in ts.items()} for x, ts in self.diff.items()
        }
        return BifilteredComplex(gens, diff, validate=False)

    @staticmethod
    def direct_sum(parts, prefixes=None):
        gens, diff = {}, {}
        for idx, part in enumerate(parts):
            pre = prefixes[idx] if prefixes else f"s{idx}."
            renamed = part.rename(lambda n, pre=pre: pre + str(n))
            gens.update(renamed.gens)
            diff.update(renamed.diff)
        return BifilteredComplex(gens, diff, validate=False)

    def reflect(self):
        """Swap the two filtrations; an involution."""
        gens = {n: Gen(g.maslov, g.j, g.i) for n, g in self.gens.items()}
        return BifilteredComplex(gens, self.diff, validate=False)

    def mirror(self):
        """Dual complex: arrows reversed, gradings negated."""
        gens = {n: Gen(-g.maslov, -g.i, -g.j) for n, g in self.gens.items()}
        diff = {}
        for x, ts in self.diff.items():
            for y, u in ts.items():
                diff.setdefault(y, {})[x] = u
        return BifilteredComplex(gens, diff, validate=False)

    def canonical(self):
        """Re-gauge every generator to i = 0; exponents become delta_I."""
        gens = {n: Gen(g.mu, 0, g.alexander) for n, g in self.gens.items()}
        diff = {}
        for x, y, u, di, dj in self.terms():
            diff.setdefault(x, {})[y] = di
        return BifilteredComplex(gens, diff, validate=False)

    # -- reduction -------------------------------------------------------

    def reduce(self):
        """Cancel all same-filtration differential terms.

        Pairs are cancelled in lexicographic order of
        ((maslov, i, j, name) of the source, name of the target), which
        makes the output deterministic.
        """
        gens = dict(self.gens)
        diff = {x: dict(ts) for x, ts in self.diff.items()}
        into = {}
        for x, ts in diff.items():
            for y in ts:
                into.setdefault(y, set()).add(x)

        def gkey(x):
            g = gens[x]
            return (g.maslov, g.i, g.j, str(x))

        while True:
            best = None
            for x, ts in diff.items():
                gx = gens[x]
                for y, u in ts.items():
                    gy = gens[y]
                    if gx.i - gy.i + u == 0 and gx.j - gy.j + u == 0:
                        key = (gkey(x), str(y))
                        if best is None or key < best[0]:
                            best = (key, x, y)
            if best is None:
                break
            _, x, y = best
            u0 = diff[x][y]
            ins = [(a, diff[a][y]) for a in sorted(into.get(y, ()), key=str) if a != x]
            outs = [(b, q) for b, q in diff[x].items() if b != y]
            # drop x and y together with every term touching them
            for b in diff.get(x, {}):
                into[b].discard(x)
            diff.pop(x, None)
            for a in list(into.get(y, ())):
                diff[a].pop(y, None)
                if not diff[a]:
                    del diff[a]
            into.pop(y, None)
            for a in list(into.get(x, ())):
                diff[a].pop(x, None)
                if not diff[a]:
                    del diff[a]
            into.pop(x, None)
            if y in diff:
                for b in diff[y]:
                    into[b].discard(y)
                del diff[y]
            del gens[x], gens[y]
            # zig-zag: a -> y, x -> b gives a -> b with exponent p - u0 + q
            for a, p in ins:
                for b, q in outs:
                    u = p - u0 + q
                    row = diff.setdefault(a, {})
                    if b in row:
                        assert row[b] == u, "mod-2 collision with mismatched U power"
                        del row[b]
                        into[b].discard(a)
                        if not row:
                            del diff[a]
                    else:
                        row[b] = u
                        into.setdefault(b, set()).add(a)
        out = BifilteredComplex(gens, diff, validate=False)
        assert out.is_reduced()
        return out

    # -- homology ----------------------------------------------------------

    def homology_rank(self):
        """(free rank, torsion-free?) of homology over F_2[U, U^-1].

        Every entry of the differential matrix is a single monomial whose
        exponent is forced by the Maslov gradings, so after re-gauging by
        U powers the matrix has 0/1 entries.  Its Smith normal form over
        the Laurent ring therefore only has unit invariant factors:
        homology is free, of rank #gens - 2 rank_F2.
        """
        names = sorted(self.gens, key=str)
        index = {n: k for k, n in enumerate(names)}
        rows = []
        for x in names:
            r = 0
            for y in self.diff.get(x, {}):
                r |= 1 << index[y]
            rows.append(r)
        rank = _f2_rank(rows)
        return (len(names) - 2 * rank, True)

    def vertical_homology_grading(self):
        """Grading of the rank-1 homology of the delta_I = 0 part.

        Returns the gauge-invariant grading mu of the unique surviving
        class; raises if the vertical homology does not have rank one.
        """
        names = sorted(self.gens, key=str)
        index = {n: k for k, n in enumerate(names)}
        rows = {}
        for x, y, u, di, dj in self.terms():
            if di == 0:
                rows[x] = rows.get(x, 0) | 1 << index[y]
        # the vertical differential drops the invariant grading mu by one,
        # so homology splits by mu; rank-nullity per grading
        by_mu = {}
        for n in names:
            by_mu.setdefault(self.gens[n].mu, []).append(n)
        total, found = 0, None
        for mu, members in sorted(by_mu.items()):
            rank_out = _f2_rank([rows.get(n, 0) for n in members])
            rank_in = _f2_rank([rows.get(n, 0) for n in by_mu.get(mu + 1, [])])
            dim = len(members) - rank_out - rank_in
            if dim:
                total += dim
                found = mu
        if total != 1:
            raise NotAChainComplex(f"vertical homology has rank {total}, not 1")
        return found

    def normalize_knot_gradings(self):
        """Shift so Alexander is symmetric about 0 and the vertical
        homology class sits in Maslov grading 0.  Gauge: i is untouched."""
        poly = self.alexander_polynomial(symmetrize=False)
        exps = sorted(poly)
        if not exps:
            raise NotAChainComplex("zero Euler characteristic; not a knot complex")
        lo, hi = exps[0], exps[-1]
        if (lo + hi) % 2 != 0:
            raise NotAChainComplex("Alexander support cannot be symmetrized")
        centre = (lo + hi) // 2
        for e, c in poly.items():
            if poly.get(2 * centre - e, 0) != c:
                raise NotAChainComplex("Euler characteristic is not symmetric")
        mu0 = self.vertical_homology_grading()
        return self.translate(di=0, dj=-centre, dmaslov=-mu0)

    def alexander_polynomial(self, symmetrize=True):
        """Graded Euler characteristic as exponent -> coefficient."""
        poly = {}
        for n, g in self.gens.items():
            e = g.alexander
            poly[e] = poly.get(e, 0) + (1 if g.mu % 2 == 0 else -1)
        poly = {e: c for e, c in poly.items() if c}
        if symmetrize and poly:
            exps = sorted(poly)
            centre = (exps[0] + exps[-1]) // 2
            poly = {e - centre: c for e, c in poly.items()}
        return poly

    def subquotient_ranks(self, depth=2):
        """F_2 homology dimensions of the (i <= a, j <= b) subcomplexes.

        Used to check that reduction preserves the bifiltered homotopy
        type on complexes of finite support.  U translates are included
        down to ``depth`` below the interesting window.
        """
        if not self.gens:
            return {}
        a_vals = sorted({g.i for g in self.gens.values()})
        b_vals = sorted({g.j for g in self.gens.values()})
        spread = max(
            a_vals[-1] - a_vals[0], b_vals[-1] - b_vals[0], 1
        ) + depth
        out = {}
        for a in range(a_vals[0] - 1, a_vals[-1] + 2):
            for b in range(b_vals[0] - 1, b_vals[-1] + 2):
                # basis elements U^k x with max(i-a, j-b) <= k <= K
                elems = []
                index = {}
                for n, g in sorted(self.gens.items(), key=lambda kv: str(kv[0])):
                    k0 = max(g.i - a, g.j - b)
                    for k in range(k0, k0 + spread):
                        index[(n, k)] = len(elems)
                        elems.append((n, k))
                rows = []
                for n, k in elems:
                    r = 0
                    for y, u in self.diff.get(n, {}).items():
                        key = (y, u + k)
                        if key in index:
                            r |= 1 << index[key]
                    rows.append(r)
                rank = _f2_rank(rows)
                out[(a, b)] = len(elems) - 2 * rank
        return out

    # -- isomorphism -------------------------------------------------------

    def isomorphic(self, other, with_witness=False):
        """Generator bijection matching gauge-invariant gradings and the
        differential with its U powers (tested in the i = 0 gauge)."""
        a, b = self.canonical(), other.canonical()
        wit = _isomorphism(a, b)
        if with_witness:
            return wit
        return wit is not None

    def equivalent(self, other, tries=600, seed=0):
        """Filtered chain homotopy equivalence of reduced complexes.

        Reduced complexes are filtered homotopy equivalent iff they are
        isomorphic by an invertible filtered chain map, which need not be
        a generator bijection: reduction kills same-filtration terms but
        leaves removable cross-summand arrows behind.  The witness search
        solves for the space of filtered chain maps over F_2 and looks
        for one whose associated-graded part is invertible.
        """
        if len(self.gens) != len(other.gens):
            return False
        a, b = self.canonical(), other.canonical()
        if not (a.is_reduced() and b.is_reduced()):
            raise NotAChainComplex("equivalence test requires reduced inputs")
        counts_a, counts_b = {}, {}
        for g in a.gens.values():
            counts_a[(g.maslov, g.j)] = counts_a.get((g.maslov, g.j), 0) + 1
        for g in b.gens.values():
            counts_b[(g.maslov, g.j)] = counts_b.get((g.maslov, g.j), 0) + 1
        if counts_a != counts_b:
            # the associated graded of an equivalence is an isomorphism,
            # so the per-(maslov, alexander) generator counts must agree
            return False
        if _isomorphism(a, b) is not None:
            return True
        return _chain_iso_exists(a, b, tries, seed)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> str:
        c = self.canonical()
        gens = [
            {"name": str(n), "maslov": g.maslov, "i": g.i, "j": g.j}
            for n, g in sorted(c.gens.items(), key=lambda kv: str(kv[0]))
        ]
        diff = [
            {"from": str(x), "to": str(y), "u": u}
            for x, y, u, _, _ in sorted(c.terms(), key=lambda t: (str(t[0]), str(t[1])))
        ]
        return json.dumps(
            {"generators": gens, "differential": diff}, separators=(",", ":")
        )

    @staticmethod
    def from_json(text: str) -> "BifilteredComplex":
        data = json.loads(text)
        gens = {
            g["name"]: Gen(g["maslov"], g["i"], g["j"]) for g in data["generators"]
        }
        diff = {}
        for t in data["differential"]:
            diff.setdefault(t["from"], {})[t["to"]] = t["u"]
        return BifilteredComplex(gens, diff)


def _f2_rank(rows) -> int:
    basis = []
    for v in rows:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


# -- generator signatures and backtracking isomorphism ---------------------


def _signatures(c: BifilteredComplex, rounds=3):
    outs_of, ins_of = {}, {}
    for x, y, u, di, dj in c.terms():
        outs_of.setdefault(x, []).append((y, di, dj))
        ins_of.setdefault(y, []).append((x, di, dj))
    # canonical gauge: (mu, alexander) is the invariant generator label
    sig = {n: (g.maslov, g.j) for n, g in c.gens.items()}
    for _ in range(rounds):
        nxt = {}
        for n in c.gens:
            outs = sorted((di, dj, sig[y]) for y, di, dj in outs_of.get(n, []))
            ins = sorted((di, dj, sig[x]) for x, di, dj in ins_of.get(n, []))
            nxt[n] = (sig[n], tuple(outs), tuple(ins))
        code = {v: k for k, v in enumerate(sorted(set(nxt.values())))}
        sig = {n: (c.gens[n].maslov, c.gens[n].j, code[nxt[n]]) for n in c.gens}
    return sig


def _isomorphism(a: BifilteredComplex, b: BifilteredComplex):
    if len(a.gens) != len(b.gens):
        return None
    sa, sb = _signatures(a), _signatures(b)
    buckets_a, buckets_b = {}, {}
    for n, s in sa.items():
        buckets_a.setdefault(s, []).append(n)
    for n, s in sb.items():
        buckets_b.setdefault(s, []).append(n)
    if set(buckets_a) != set(buckets_b):
        return None
    if any(len(buckets_a[s]) != len(buckets_b[s]) for s in buckets_a):
        return None
    order = sorted(a.gens, key=lambda n: (len(buckets_a[sa[n]]), str(n)))
    into_a, into_b = {}, {}
    for x, y, u, di, dj in a.terms():
        into_a.setdefault(y, []).append(x)
    for x, y, u, di, dj in b.terms():
        into_b.setdefault(y, []).append(x)
    match = {}
    used = set()

    def consistent(x, y):
        # mapped neighbours must correspond with identical terms
        for t, u in a.diff.get(x, {}).items():
            if t in match:
                if b.diff.get(y, {}).get(match[t]) != u:
                    return False
        for s in into_a.get(x, []):
            if s in match:
                if x not in a.diff.get(s, {}):
                    return False
                if b.diff.get(match[s], {}).get(y) != a.diff[s][x]:
                    return False
        # degree check
        if len(a.diff.get(x, {})) != len(b.diff.get(y, {})):
            return False
        if len(into_a.get(x, [])) != len(into_b.get(y, [])):
            return False
        return True

    def solve(k):
        if k == len(order):
            return True
        x = order[k]
        for y in buckets_b[sa[x]]:
            if y in used or not consistent(x, y):
                continue
            match[x] = y
            used.add(y)
            if solve(k + 1):
                return True
            del match[x]
            used.discard(y)
        return False

    if solve(0):
        return dict(match)
    return None


def _chain_iso_exists(a: BifilteredComplex, b: BifilteredComplex,
                      tries: int, seed: int) -> bool:
    """Search for an invertible filtered chain map a -> b.

    Both inputs are canonical (i = 0 gauge).  A filtered degree-0 map
    sends x to U^c y with c = (mu(y) - mu(x))/2 >= 0 and
    A(y) - c <= A(x); the chain condition is F_2-linear because all U
    powers are forced by the gradings.  The map is a filtered isomorphism
    iff its strict-equality part (c = 0 and equal Alexander) is
    invertible, so we solve for the chain-map space and sample it for an
    element with invertible diagonal part.
    """
    import random as _random

    xs = sorted(a.gens, key=str)
    ys = sorted(b.gens, key=str)
    pairs = []
    pair_index = {}
    for x in xs:
        gx = a.gens[x]
        for y in ys:
            gy = b.gens[y]
            if (gy.maslov - gx.maslov) % 2 != 0:
                continue
            c = (gy.maslov - gx.maslov) // 2
            if c < 0 or gy.j - c > gx.j:
                continue
            pair_index[(x, y)] = len(pairs)
            pairs.append((x, y, c))
    if not pairs:
        return False
    # chain condition: for every x in a, z in b the coefficient of z in
    # (d_b phi + phi d_a)(x) vanishes
    equations = {}
    for (x, y, c) in pairs:
        k = pair_index[(x, y)]
        for z in b.diff.get(y, {}):
            equations.setdefault((x, z), 0)
            equations[(x, z)] ^= 1 << k
    for x in xs:
        for w in a.diff.get(x, {}):
            for z in ys:
                if (w, z) in pair_index:
                    k = pair_index[(w, z)]
                    equations.setdefault((x, z), 0)
                    equations[(x, z)] ^= 1 << k
    null_basis = _f2_nullspace(list(equations.values()), len(pairs))
    if not null_basis:
        return False
    diag = [
        k for k, (x, y, c) in enumerate(pairs)
        if c == 0 and a.gens[x].j == b.gens[y].j
    ]
    diag_set = set(diag)
    xi = {x: k for k, x in enumerate(xs)}
    yi = {y: k for k, y in enumerate(ys)}
    n = len(xs)

    def invertible_diagonal(vec: int) -> bool:
        rows = [0] * n
        for k in diag:
            if vec >> k & 1:
                x, y, _ = pairs[k]
                rows[xi[x]] |= 1 << yi[y]
        return _f2_rank(rows) == n

    rng = _random.Random(seed)
    sum_all = 0
    for v in null_basis:
        sum_all ^= v
    for attempt in range(tries):
        if attempt == 0:
            vec = sum_all
        elif attempt <= len(null_basis):
            vec = null_basis[attempt - 1]
        else:
            vec = 0
            for v in null_basis:
                if rng.getrandbits(1):
                    vec ^= v
        if vec and invertible_diagonal(vec):
            return True
    return False


def _f2_nullspace(rows, width):
    """Basis of the nullspace of the F_2 matrix given as bitmask rows."""
    pivots = {}
    for r in rows:
        cur = r
        for piv, pr in pivots.items():
            if cur >> piv & 1:
                cur ^= pr
        if cur:
            pivots[cur.bit_length() - 1] = cur
    # full Gauss-Jordan so every pivot column appears in one row only
    for piv in sorted(pivots, reverse=True):
        for other in pivots:
            if other != piv and pivots[other] >> piv & 1:
                pivots[other] ^= pivots[piv]
    basis = []
    for col in range(width):
        if col in pivots:
            continue
        vec = 1 << col
        for piv, row in pivots.items():
            if row >> col & 1:
                vec |= 1 << piv
        basis.append(vec)
    return basis


# -- building complexes from bigon data -------------------------------------


def from_bigons(generators, bigons):
    """Assemble a knot complex from (1,1) bigon data.

    ``generators`` is a list of names; ``bigons`` a list of
    (source, target, z_count, w_count).  A bigon contributes the term
    source -> U^{w_count} target with filtration drop
    (w_count, z_count).  Parallel bigons with equal counts cancel mod 2.
    Relative gradings are propagated along the bigon graph; the absolute
    Maslov grading puts the vertical homology class in grading 0 and the
    Alexander grading is symmetrized about 0.
    """
    names = list(generators)
    terms = {}
    for x, y, c, d in bigons:
        key = (x, y)
        if key in terms:
            pc, pd = terms[key]
            if (pc, pd) != (c, d):
                raise NotAChainComplex(
                    f"parallel bigons {x}->{y} with different counts"
                )
            del terms[key]  # mod 2 cancellation
        else:
            terms[key] = (c, d)
    # relative gradings by propagation over the bigon graph; a bigon
    # x -> U^d y forces M(x) - M(y) = 1 - 2d and A(x) - A(y) = c - d
    adj = {}
    for (x, y), (c, d) in terms.items():
        adj.setdefault(x, []).append((y, 1 - 2 * d, c - d))
        adj.setdefault(y, []).append((x, 2 * d - 1, d - c))
    maslov, alex = {}, {}
    seeded = False
    for start in names:
        if start in maslov:
            continue
        if seeded:
            raise GradingUnderdetermined(
                "bigon graph is disconnected; gradings cannot be pinned"
            )
        seeded = True
        maslov[start], alex[start] = 0, 0
        queue = [start]
        while queue:
            n = queue.pop()
            for other, dm, da in adj.get(n, []):
                m_other, a_other = maslov[n] - dm, alex[n] - da
                if other in maslov:
                    if maslov[other] != m_other or alex[other] != a_other:
                        raise NotAChainComplex("inconsistent bigon gradings")
                else:
                    maslov[other], alex[other] = m_other, a_other
                    queue.append(other)
    gens = {n: Gen(maslov[n], 0, alex[n]) for n in names}
    diff = {}
    for (x, y), (c, d) in terms.items():
        diff.setdefault(x, {})[y] = d
    cx = BifilteredComplex(gens, diff)
    return cx.normalize_knot_gradings()
