"""Extremal-graph construction and isomorph-free exhaustive search.

Three construction routes live here:

* backtracking deletion search for induced subgraphs of a polarity graph
  with prescribed order and minimum degree,
* the randomized thinning of ER_p that realizes the general lower bound,
* canonical-augmentation enumeration of C4-free graphs (one representative
  per isomorphism class) used to decide small Ramsey values exactly, plus a
  simulated-annealing probe for specific witness graphs.

The augmentation rule: a child built by appending a vertex is kept iff
deleting the appended vertex gives the same canonical form as deleting the
child's canonically-last vertex.  Together with per-parent dedup by
canonical form, every isomorphism class is produced exactly once, and any
hereditary filter or monotone pruner keeps that property.
"""

from __future__ import annotations

import hashlib
import math
import random
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass
from fractions import Fraction
from functools import partial

from .bounds import floor_sqrt_minus_power, min_n_default_regime
from .canon import canonical_form, canonical_key, graph_digest
from .errors import (
    AsymptoticRegimeNotReached,
    AttemptsExhausted,
    BudgetExhausted,
    CapExceeded,
    DomainError,
)
from .geometry import er_graph
from .gf import field_new, is_prime
from .graphcore import Graph, _bits, g6_decode, g6_encode, is_c4_free
from .ramsey import LowerBoundCertificate, certify_lower_bound, complement_book_number, is_ramsey_witness

GENERATOR_VERSION = "orderly-v1"
ENUMERATION_ORDER_CAP = 13
ALL_GRAPHS_ORDER_CAP = 8


# -- induced subgraphs with a minimum-degree floor --


def greedy_min_degree_subgraph(g: Graph, target_order: int, min_deg: int, budget: int = 10**7):
    """Vertex set S with |S| = target_order and min degree >= min_deg in g[S].

    Complete backtracking over delete/protect decisions with forced-deletion
    closure (a vertex below the floor can never recover, so it must go).
    Branch vertices prefer deletions that push nothing below the floor, then
    low current degree.  Returns None only when the whole space is exhausted;
    running out of budget raises instead, since that proves nothing.
    """
    n = g.n
    if not 0 <= target_order <= n:
        raise DomainError(f"target_order must be in [0, {n}]")
    if min_deg < 0:
        raise DomainError("min_deg must be >= 0")
    rows = g.rows
    full = (1 << n) - 1
    nodes = 0

    def closure(alive, protected):
        """Force-delete vertices below the floor; None if a protected one dies."""
        while True:
            bad = 0
            for v in _bits(alive):
                if (rows[v] & alive).bit_count() < min_deg:
                    bad |= 1 << v
            if not bad:
                return alive
            if bad & protected:
                return None
            alive &= ~bad
            if alive.bit_count() < target_order:
                return None

    def dfs(alive, protected):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExhausted(f"deletion search exceeded {budget} nodes")
        alive = closure(alive, protected)
        if alive is None or alive.bit_count() < target_order:
            return None
        if alive.bit_count() == target_order:
            return alive
        choices = alive & ~protected
        if not choices:
            return None
        # prefer deletions that strand nobody below the floor, then low degree
        def rank(v):
            safe = all(
                (rows[w] & alive).bit_count() > min_deg for w in _bits(rows[v] & alive)
            )
            return (not safe, (rows[v] & alive).bit_count(), v)

        w = min(_bits(choices), key=rank)
        found = dfs(alive & ~(1 << w), protected)
        if found is not None:
            return found
        return dfs(alive, protected | 1 << w)

    result = dfs(full, 0)
    if result is None:
        return None
    verts = tuple(_bits(result))
    sub = g.induced_mask(result)
    assert sub.n == target_order and (target_order == 0 or min(sub.degrees()) >= min_deg)
    return verts


# -- randomized thinning of ER_p --


@dataclass(frozen=True)
class DeletionRun:
    n: int
    k: int
    alpha: Fraction          # effective exponent applied to n (default 21/80)
    c: int
    p: int                   # smallest prime >= sqrt(n) + 1/2
    order: int               # p^2 + p + 1
    m: int                   # degree floor of the surviving subgraph
    d: int                   # number of deleted vertices
    seed: int
    attempts: int
    result_digest: str

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "alpha": str(self.alpha),
            "c": self.c,
            "p": self.p,
            "order": self.order,
            "m": self.m,
            "d": self.d,
            "seed": self.seed,
            "attempts": self.attempts,
            "result_digest": self.result_digest,
        }


def _attempt_rng(seed: int, attempt: int) -> random.Random:
    """Independent stream per attempt index, reproducible across schedulers."""
    digest = hashlib.sha256(f"{seed}:{attempt}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def smallest_admissible_prime(n: int) -> int:
    """Smallest prime p with p >= sqrt(n) + 1/2, i.e. (2p-1)^2 >= 4n."""
    from math import isqrt

    p = max(2, isqrt(n))
    while (2 * p - 1) ** 2 < 4 * n or not is_prime(p):
        p += 1
    return p


def random_delete_construction(
    n: int,
    k: int,
    seed: int = 0,
    m: int | None = None,
    c: int = 6,
    alpha: Fraction = Fraction(21, 80),
    max_attempts: int = 1000,
) -> tuple[Graph, DeletionRun, LowerBoundCertificate]:
    """Delete d random vertices from ER_p until no survivor drops below m.

    Default m = floor(sqrt(n) - c*n^alpha); when that is nonpositive the
    asymptotic regime is not reached and the error reports the least n that
    would make the defaults usable.  On success the surviving graph has
    order n + mk - k(k-3)/2 - 1 and its certificate guarantees a book-free
    complement at n* <= n pages, hence r(C4, B_n^(k)) >= order + 1.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    alpha = Fraction(alpha)
    if m is None:
        m = floor_sqrt_minus_power(n, c, alpha)
        if m < 1:
            raise AsymptoticRegimeNotReached(
                f"default degree floor is {m} at n={n}; defaults need n >= "
                f"{min_n_default_regime(c, alpha)}",
                min_n=min_n_default_regime(c, alpha),
            )
    if m < 1:
        raise DomainError(f"degree floor m must be >= 1, got {m}")
    p = smallest_admissible_prime(n)
    base = er_graph(field_new(p, 1))
    order = base.n
    survivors = n + m * k - (k * k - 3 * k) // 2 - 1
    d = order - survivors
    if d < 0:
        raise DomainError(
            f"negative deletion count: ER_{p} has {order} vertices but the "
            f"target subgraph needs {survivors}"
        )
    full = (1 << order) - 1
    for attempt in range(1, max_attempts + 1):
        rng = _attempt_rng(seed, attempt)
        deleted = rng.sample(range(order), d)
        mask = full
        for v in deleted:
            mask ^= 1 << v
        sub = base.induced_mask(mask)
        if survivors == 0 or min(sub.degrees()) >= m:
            run = DeletionRun(
                n=n,
                k=k,
                alpha=alpha,
                c=c,
                p=p,
                order=order,
                m=m,
                d=d,
                seed=seed,
                attempts=attempt,
                result_digest=graph_digest(sub),
            )
            note = (
                f"random deletion of {d} vertices from ER_{p} (seed={seed}, "
                f"attempt={attempt}); targets B_{n}^({k})-free complement"
            )
            cert = certify_lower_bound(sub, k, note=note)
            # the certificate is at least as strong as the target claim
            if cert.guaranteed_book_free_n > n:
                raise AssertionError(
                    f"certificate n* = {cert.guaranteed_book_free_n} exceeds target {n}"
                )
            return sub, run, cert
    raise AttemptsExhausted(f"no degree->{m} subgraph found in {max_attempts} attempts")


# -- canonical augmentation enumeration --


@dataclass(frozen=True)
class ExhaustionProof:
    order: int
    graphs_examined: int
    all_rejected: bool
    generator_version: str
    k: int | None = None
    n: int | None = None

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "graphs_examined": self.graphs_examined,
            "all_rejected": self.all_rejected,
            "generator_version": self.generator_version,
            "k": self.k,
            "n": self.n,
        }


def _c4_extension_masks(g: Graph) -> list[int]:
    """Neighborhoods for a new vertex that keep the graph C4-free.

    A new vertex creates a C4 exactly when two of its chosen neighbors
    already share a common neighbor, so valid sets are the independent sets
    of the 'shares a common neighbor' conflict graph.
    """
    n = g.n
    conflict = [0] * n
    for u in range(n):
        ru = g.rows[u]
        for v in range(u + 1, n):
            if ru & g.rows[v]:
                conflict[u] |= 1 << v
                conflict[v] |= 1 << u
    out = []

    def rec(cur, rest):
        out.append(cur)
        r = rest
        while r:
            low = r & -r
            v = low.bit_length() - 1
            r ^= low
            rec(cur | low, r & ~conflict[v])

    rec(0, (1 << n) - 1)
    return out


def _children(parent: Graph, parent_key: bytes, c4: bool):
    """One representative per isomorphism class of accepted one-vertex extensions."""
    masks = _c4_extension_masks(parent) if c4 else range(1 << parent.n)
    seen = set()
    new_index = parent.n
    for mask in masks:
        child = parent.with_vertex(mask)
        form = canonical_form(child)
        if form.key in seen:
            continue
        seen.add(form.key)
        w_star = form.order[-1]  # vertex at the last canonical position
        if w_star != new_index:
            if canonical_key(child.delete_vertex(w_star)) != parent_key:
                continue
        yield child, form.key


class _Budget:
    __slots__ = ("examined",)

    def __init__(self):
        self.examined = 0


def _dfs_enumerate(g, key, target, c4, pruner, visitor, stats):
    if g.n == target:
        stats.examined += 1
        if visitor is not None and visitor(g):
            return g
        return None
    for child, ckey in _children(g, key, c4):
        if child.n < target and pruner is not None and not pruner(child):
            continue
        found = _dfs_enumerate(child, ckey, target, c4, pruner, visitor, stats)
        if found is not None:
            return found
    return None


def _seed_graph():
    g = Graph.empty(1)
    return g, canonical_key(g)


def _expand_frontier(level, c4, pruner):
    frontier = [_seed_graph()]
    current = 1
    while current < level:
        nxt = []
        for g, key in frontier:
            for child, ckey in _children(g, key, c4):
                if pruner is not None and not pruner(child):
                    continue
                nxt.append((child, ckey))
        frontier = nxt
        current += 1
    return frontier


def _worker(payload):
    start_idx, items, target, c4, pruner, visitor = payload
    stats = _Budget()
    for offset, (n_, rows) in enumerate(items):
        g = Graph(n_, rows, _trusted=True)
        found = _dfs_enumerate(g, canonical_key(g), target, c4, pruner, visitor, stats)
        if found is not None:
            return start_idx + offset, g6_encode(found), stats.examined
    return None, None, stats.examined


def _enumerate(order, c4, pruner, visitor, jobs, meta_k=None, meta_n=None):
    cap = ENUMERATION_ORDER_CAP if c4 else ALL_GRAPHS_ORDER_CAP
    if not 1 <= order <= cap:
        raise CapExceeded(f"order must be in [1, {cap}], got {order}")
    if jobs <= 1 or order <= 2:
        stats = _Budget()
        g, key = _seed_graph()
        found = _dfs_enumerate(g, key, order, c4, pruner, visitor, stats)
        if found is not None:
            return found
        return ExhaustionProof(order, stats.examined, True, GENERATOR_VERSION, meta_k, meta_n)

    split = max(2, min(order - 1, 6))
    frontier = _expand_frontier(split, c4, pruner)
    if not frontier:
        return ExhaustionProof(order, 0, True, GENERATOR_VERSION, meta_k, meta_n)
    chunk = max(1, (len(frontier) + 4 * jobs - 1) // (4 * jobs))
    payloads = []
    for start in range(0, len(frontier), chunk):
        items = [(g.n, g.rows) for g, _ in frontier[start : start + chunk]]
        payloads.append((start, items, order, c4, pruner, visitor))
    examined = 0
    best_idx = None
    best_g6 = None
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        pending = {pool.submit(_worker, pl): pl[0] for pl in payloads}
        while pending:
            done, _ = wait(pending, return_when=FIRST_COMPLETED)
            for fut in done:
                start = pending.pop(fut)
                idx, wg6, ex = fut.result()
                examined += ex
                if idx is not None and (best_idx is None or idx < best_idx):
                    best_idx, best_g6 = idx, wg6
            if best_idx is not None:
                # chunks that start past the best witness cannot improve it
                for fut, start in list(pending.items()):
                    if start > best_idx and fut.cancel():
                        del pending[fut]
    if best_g6 is not None:
        return g6_decode(best_g6)
    return ExhaustionProof(order, examined, True, GENERATOR_VERSION, meta_k, meta_n)


def enumerate_c4_free(order: int, pruner=None, visitor=None, jobs: int = 1):
    """One representative per isomorphism class of C4-free graphs on `order`.

    The visitor tests each completed graph; the first graph it accepts is
    returned (deterministically, independent of the worker count).  With no
    acceptance the full ExhaustionProof comes back.  The pruner may cut a
    partial graph only when every completion of it would be rejected.
    With jobs > 1, pruner and visitor must be picklable.
    """
    return _enumerate(order, True, pruner, visitor, jobs)


def enumerate_graphs(order: int, pruner=None, visitor=None, jobs: int = 1):
    """Same engine with the C4 filter off: all graphs up to isomorphism."""
    return _enumerate(order, False, pruner, visitor, jobs)


def count_c4_free_classes(order: int, jobs: int = 1) -> int:
    proof = enumerate_c4_free(order, jobs=jobs)
    return proof.graphs_examined


def _ramsey_visitor(g: Graph, k: int, n: int) -> bool:
    return is_ramsey_witness(g, k, n)


def _book_pruner(g: Graph, k: int, n: int) -> bool:
    """Keep a partial graph only while its complement is still B_n^(k)-free.

    The complement book number never decreases under one-vertex extension,
    so cutting here loses only graphs the visitor would reject.
    """
    if k > g.n:
        return True
    count, _ = complement_book_number(g, k, stop_at=n)
    return count < n


def exhaust_ramsey(order: int, k: int, n: int, jobs: int = 1, use_pruner: bool = True):
    """Witness graph or ExhaustionProof for r(C4, B_n^(k)) vs order.

    A witness on `order` vertices proves r >= order + 1; an ExhaustionProof
    with all_rejected proves r <= order.
    """
    visitor = partial(_ramsey_visitor, k=k, n=n)
    pruner = partial(_book_pruner, k=k, n=n) if use_pruner else None
    return _enumerate(order, True, pruner, visitor, jobs, meta_k=k, meta_n=n)


# -- heuristic probe for specific witness families --


def _can_add_edge(rows, u, v):
    """Edge uv keeps the graph C4-free iff no neighbor of u shares a
    common neighbor with v (and vice versa, which is the same condition)."""
    rv = rows[v]
    m = rows[u]
    while m:
        low = m & -m
        x = low.bit_length() - 1
        m ^= low
        if rows[x] & rv:
            return False
    return True


def _violating_pairs(rows, n, pages_needed):
    """Independent pairs whose common non-neighborhood fits a forbidden book."""
    full = (1 << n) - 1
    count = 0
    for u in range(n):
        ru = rows[u]
        for v in range(u + 1, n):
            if ru >> v & 1:
                continue
            union = (ru | rows[v]) & ~(1 << u) & ~(1 << v)
            if n - 2 - union.bit_count() >= pages_needed:
                count += 1
    return count


def probe_script_Gq(q: int, budget: int = 10**6, seed: int = 0):
    """Heuristic hunt for a (C4, B_{q^2-q+1}^(2))-Ramsey graph on q^2+q+3 vertices.

    Simulated annealing over C4-free graphs: edge toggles that preserve
    C4-freeness, occasional vertex rebuilds, restarts from random maximal
    C4-free graphs and from thinned polarity graphs.  A returned graph is
    re-verified; exhausting the budget returns None and proves nothing.
    """
    n = q * q + q + 3
    pages = q * q - q + 1
    rng = random.Random(seed)
    steps = 0

    def greedy_fill(rows):
        order = [(u, v) for u in range(n) for v in range(u + 1, n)]
        rng.shuffle(order)
        for u, v in order:
            if not rows[u] >> v & 1 and _can_add_edge(rows, u, v):
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        return rows

    def polarity_seed():
        # smallest prime-power plane with at least n points, thinned to n
        base_q = 2
        while base_q * base_q + base_q + 1 < n or not _is_prime_power_int(base_q):
            base_q += 1
        base = er_graph(base_q)
        keep = list(range(base.n))
        rng.shuffle(keep)
        keep = sorted(keep[:n])
        sub = base.induced_mask(sum(1 << v for v in keep))
        return greedy_fill(list(sub.rows))

    def random_seed():
        return greedy_fill([0] * n)

    best_energy = None
    restart = 0
    while steps < budget:
        rows = polarity_seed() if restart % 2 else random_seed()
        restart += 1
        energy = _violating_pairs(rows, n, pages)
        temperature = 2.0
        stall = 0
        while steps < budget and stall < 20000:
            steps += 1
            temperature = max(0.05, temperature * 0.99995)
            if energy == 0:
                g = Graph(n, rows, _trusted=True)
                ok, _ = is_c4_free(g)
                if ok and is_ramsey_witness(g, 2, pages):
                    return g
                break  # should not happen; restart from a fresh seed
            u = rng.randrange(n)
            v = rng.randrange(n)
            if u == v:
                continue
            if rows[u] >> v & 1:
                rows[u] ^= 1 << v
                rows[v] ^= 1 << u
                new_energy = _violating_pairs(rows, n, pages)
                if new_energy <= energy or rng.random() < _accept(energy, new_energy, temperature):
                    energy = new_energy
                else:
                    rows[u] |= 1 << v
                    rows[v] |= 1 << u
            else:
                if not _can_add_edge(rows, u, v):
                    continue
                rows[u] |= 1 << v
                rows[v] |= 1 << u
                new_energy = _violating_pairs(rows, n, pages)
                if new_energy <= energy or rng.random() < _accept(energy, new_energy, temperature):
                    energy = new_energy
                else:
                    rows[u] ^= 1 << v
                    rows[v] ^= 1 << u
            if best_energy is None or energy < best_energy:
                best_energy = energy
                stall = 0
            else:
                stall += 1
    return None


def _accept(old, new, temperature):
    return math.exp((old - new) / max(temperature, 1e-9))


def _is_prime_power_int(q: int) -> bool:
    from .errors import NotPrimePower
    from .gf import prime_power_decompose

    try:
        prime_power_decompose(q)
        return True
    except NotPrimePower:
        return False
