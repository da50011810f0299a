"""Book numbers in complements, Ramsey witnesses, and lower-bound certificates.

The central fact: a C4-free graph G on N vertices with minimum degree d has,
for every independent k-set, at most N - k(d+1) + C(k,2) common non-neighbors
(pairwise common neighborhoods have size <= 1, so inclusion-exclusion bounds
the union of the k neighborhoods below by k*d - C(k,2)).  That makes the
complement book-free at n* = N - k(d+1) + C(k,2) + 1 pages and proves
r(C4, B_{n*}^(k)) >= N + 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .canon import graph_digest
from .errors import DomainError, NotC4Free
from .graphcore import Graph, _bits, is_c4_free


@dataclass(frozen=True)
class BookWitness:
    """A spine (independent in G) together with its common non-neighbors."""

    spine: tuple[int, ...]
    pages: tuple[int, ...]
    page_count: int


@dataclass(frozen=True)
class LowerBoundCertificate:
    graph_hash: str                # sha256 of canonical graph6
    order: int
    spine: int                     # k
    min_degree: int
    c4_free: bool
    guaranteed_book_free_n: int    # n*
    implied_bound: str             # "r(C4, B_{n*}^(k)) >= N+1"
    construction_note: str = ""

    def as_dict(self) -> dict:
        return {
            "graph_hash": self.graph_hash,
            "order": self.order,
            "spine": self.spine,
            "min_degree": self.min_degree,
            "c4_free": self.c4_free,
            "guaranteed_book_free_n": self.guaranteed_book_free_n,
            "implied_bound": self.implied_bound,
            "construction_note": self.construction_note,
        }


def complement_book_number(g: Graph, k: int, stop_at: int | None = None):
    """Largest n with B_n^(k) embedded in the complement of g.

    Equals the maximum, over k-sets independent in g, of the number of common
    non-neighbors.  Spines are enumerated as cliques of the complement via
    recursive bitset intersection, pruned by the remaining-count bound; the
    returned witness has the lexicographically smallest maximizing spine.

    With stop_at set, returns as soon as some spine reaches stop_at pages
    (the reported value is then a lower bound on the true maximum).
    """
    n = g.n
    if not 1 <= k <= n:
        raise DomainError(f"k must be in [1, {n}], got {k}")
    full = (1 << n) - 1
    comp = [full ^ row ^ (1 << v) for v, row in enumerate(g.rows)]

    # Greedy warm start (low-degree spine) tightens the pruning bound from
    # the beginning; starting one below it keeps the lexicographically
    # smallest maximizer as the reported witness.
    greedy_mask = full
    picked = 0
    for v in sorted(range(n), key=lambda u: (g.rows[u].bit_count(), u)):
        if greedy_mask >> v & 1:
            greedy_mask &= comp[v]
            picked += 1
            if picked == k:
                break
    warm = greedy_mask.bit_count() if picked == k else 0

    best_count = warm - 1
    best_spine: tuple[int, ...] = ()
    best_pages = 0

    def extend(spine, mask, depth):
        nonlocal best_count, best_spine, best_pages
        if depth == k:
            count = mask.bit_count()
            if count > best_count:
                best_count = count
                best_spine = tuple(spine)
                best_pages = mask
            return best_count >= stop_at if stop_at is not None else False
        remaining = k - depth
        if mask.bit_count() - remaining <= best_count:
            return False
        start = spine[-1] + 1 if spine else 0
        for v in _bits(mask >> start << start):
            if mask.bit_count() - remaining <= best_count:
                return False
            if extend(spine + [v], mask & comp[v], depth + 1):
                return True
        return False

    extend([], full, 0)
    if best_count < 0:
        return 0, BookWitness((), (), 0)
    return best_count, BookWitness(best_spine, tuple(_bits(best_pages)), best_count)


def is_ramsey_witness(g: Graph, k: int, n: int) -> bool:
    """True iff g is C4-free and its complement has no B_n^(k).

    A True on N vertices proves r(C4, B_n^(k)) >= N + 1.
    """
    ok, _ = is_c4_free(g)
    if not ok:
        return False
    if k > g.n:
        return True  # no spine fits, complement trivially book-free
    count, _ = complement_book_number(g, k, stop_at=n)
    return count < n


def certify_lower_bound(g: Graph, k: int, note: str = "") -> LowerBoundCertificate:
    """Machine-checkable witness that r(C4, B_{n*}^(k)) >= N + 1.

    Refuses graphs with a C4.  n* is computed from the true minimum degree:
    n* = N - k(delta+1) + C(k,2) + 1.  For N <= 80 the certificate is
    cross-validated against the exhaustive book number (n* - 1 must be an
    upper bound for it).
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    ok, witness = is_c4_free(g)
    if not ok:
        raise NotC4Free(f"graph contains the 4-cycle {witness}")
    delta = min(g.degrees()) if g.n else 0
    n_star = g.n - k * (delta + 1) + comb(k, 2) + 1
    cert = LowerBoundCertificate(
        graph_hash=graph_digest(g),
        order=g.n,
        spine=k,
        min_degree=delta,
        c4_free=True,
        guaranteed_book_free_n=n_star,
        implied_bound=f"r(C4, B_{n_star}^({k})) >= {g.n + 1}",
        construction_note=note,
    )
    if g.n <= 80 and k <= g.n:
        nmax, _ = complement_book_number(g, k)
        if n_star - 1 < nmax:
            raise AssertionError(
                f"certificate unsound: n*-1 = {n_star - 1} < book number {nmax}"
            )
    return cert


@dataclass(frozen=True)
class GoodPairs:
    count: int
    sample: tuple[tuple[int, int], ...]


def good_pairs(g: Graph, deg_cap: int, sample_limit: int = 64) -> GoodPairs:
    """Pairs with disjoint neighborhoods, both endpoints of degree <= deg_cap.

    These are exactly the low-degree pairs joined by no 2-path, so the count
    never exceeds non_two_path_pairs(g).
    """
    rows = g.rows
    degs = g.degrees()
    low = [v for v in range(g.n) if degs[v] <= deg_cap]
    count = 0
    sample = []
    for i, u in enumerate(low):
        ru = rows[u]
        for v in low[i + 1 :]:
            if not ru & rows[v]:
                count += 1
                if len(sample) < sample_limit:
                    sample.append((u, v))
    return GoodPairs(count, tuple(sample))


def verify_admissible(g: Graph, v: int, k_set, deg_cap: int) -> bool:
    """Direct re-check of the four admissibility properties of a k-set."""
    ks = list(k_set)
    rows = g.rows
    # (1) independent
    for i, x in enumerate(ks):
        for y in ks[i + 1 :]:
            if rows[x] >> y & 1:
                return False
    # (2) low degree
    if any(g.degree(x) > deg_cap for x in ks):
        return False
    # (3) one vertex in each of k distinct punctured neighborhoods around v:
    # x must avoid N[v], be adjacent to some neighbor u of v, and the owners
    # must admit distinct representatives (singletons when g is C4-free).
    nv = g.rows[v] | 1 << v
    owner_sets = []
    for x in ks:
        if nv >> x & 1:
            return False
        owners = {u for u in _bits(g.rows[v]) if rows[u] >> x & 1}
        if not owners:
            return False
        owner_sets.append(owners)

    def matchable(i, used):
        if i == len(owner_sets):
            return True
        return any(u not in used and matchable(i + 1, used | {u}) for u in owner_sets[i])

    if not matchable(0, frozenset()):
        return False
    # (4) no three members with a common neighbor
    for i, x in enumerate(ks):
        for j in range(i + 1, len(ks)):
            for l in range(j + 1, len(ks)):
                if rows[x] & rows[ks[j]] & rows[ks[l]]:
                    return False
    return True


def find_admissible_sets(g: Graph, v: int, k: int, deg_cap: int, limit: int = 100):
    """Independent low-degree k-sets hitting k distinct punctured neighborhoods.

    Greedy construction: choose k of v's neighbors, then pick one vertex per
    pruned candidate pool, where the pool drops neighbors of already-chosen
    vertices and neighbors of any common neighbor of a chosen pair.  Each
    returned set is re-verified directly.  Requires g to be C4-free for the
    pools to behave as intended; d(v) < k simply yields no sets.
    """
    if limit <= 0:
        return []
    rows = g.rows
    degs = g.degrees()
    low_mask = 0
    for u in range(g.n):
        if degs[u] <= deg_cap:
            low_mask |= 1 << u
    nbrs = g.neighbors(v)
    forbidden = g.rows[v] | 1 << v
    pools = [(u, rows[u] & ~forbidden & low_mask) for u in nbrs]
    pools = [(u, b) for u, b in pools if b]
    out: list[tuple[int, ...]] = []

    def choose(start, chosen, banned):
        # banned: union of N(x) for chosen x and N(w) for common neighbors w
        # of chosen pairs; keeps properties (1) and (4) by construction.
        if len(chosen) == k:
            cand = tuple(sorted(chosen))
            if verify_admissible(g, v, cand, deg_cap):
                out.append(cand)
            return len(out) >= limit
        for idx in range(start, len(pools)):
            _, pool = pools[idx]
            for x in _bits(pool & ~banned):
                new_banned = banned | rows[x]
                for y in chosen:
                    w_mask = rows[x] & rows[y]
                    for w in _bits(w_mask):
                        new_banned |= rows[w]
                if choose(idx + 1, chosen + [x], new_banned):
                    return True
        return False

    choose(0, [], 0)
    return out
