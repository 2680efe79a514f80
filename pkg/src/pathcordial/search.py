"""Backtracking search for cordial labelings of paths and cycles.

The search assigns vertex labels left to right as dense element indices and
keeps per-element vertex and edge counts.  In a cordial labeling of ``m``
objects over a group of order ``n`` every count is ``m // n`` or
``ceil(m / n)``, and exactly ``m % n`` elements reach the ceiling, so a
partial assignment is abandoned as soon as

* some count would exceed the ceiling,
* more than ``m % n`` elements would sit at the ceiling, or
* the remaining objects cannot lift every under-filled element to the floor.

Shift normalization fixes the first vertex to the identity (adding a constant
to every label preserves cordiality).  Reversal is handled by accepting only
the lexicographically smaller of a witness and its normalized mirror image.
"""

from __future__ import annotations

import enum
import itertools
import logging
import multiprocessing
import random
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field, replace
from typing import Optional

from .groups import GroupSpec, make_group
from .labeling import GraphLabeling, Kind, check_cordial

__all__ = [
    "Verdict",
    "SearchOptions",
    "SearchOutcome",
    "SearchBudgetExceeded",
    "search_path",
    "search_cycle",
    "search",
    "count_labelings",
    "OracleBoundExceeded",
    "DEFAULT_ORACLE_BOUND",
    "Exp2Report",
    "verify_exp2_argument",
]

log = logging.getLogger(__name__)

DEFAULT_ORACLE_BOUND = 10**8


class Verdict(str, enum.Enum):
    FOUND = "found"
    EXHAUSTED = "exhausted"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SearchOptions:
    symmetry_reduction: bool = True
    canonical_witness: bool = False
    node_budget: Optional[int] = None
    thread_hint: Optional[int] = None
    prune: bool = True


@dataclass
class SearchOutcome:
    verdict: Verdict
    witness: Optional[GraphLabeling]
    nodes_explored: int
    elapsed: float
    symmetry_mode: str

    @property
    def found(self) -> bool:
        return self.verdict is Verdict.FOUND

    def to_dict(self) -> dict:
        from .textio import format_labels

        return {
            "verdict": self.verdict.value,
            "witness": format_labels(self.witness) if self.witness is not None else None,
            "nodes_explored": self.nodes_explored,
            "elapsed": self.elapsed,
            "symmetry_mode": self.symmetry_mode,
        }


class SearchBudgetExceeded(Exception):
    pass


def _symmetry_mode(kind: Kind, opts: SearchOptions) -> str:
    if not opts.symmetry_reduction:
        return "none"
    return "shift+reversal" if kind is Kind.PATH else "shift+rotation+reflection"


def _canonical_path(seq: list[int], add, neg) -> bool:
    """``seq`` starts at the identity; compare with its normalized mirror."""
    s = neg[seq[-1]]
    mirror = [add[x][s] for x in reversed(seq)]
    return seq <= mirror


def _canonical_cycle(seq: list[int], add, neg) -> bool:
    m = len(seq)
    for order in (seq, seq[::-1]):
        for r in range(m):
            s = neg[order[r]]
            rot = [add[order[(r + j) % m]][s] for j in range(m)]
            if rot < seq:
                return False
    return True


class _Dfs:
    """Single-threaded depth-first search; holds the mutable count state."""

    def __init__(self, g: GroupSpec, kind: Kind, m: int, opts: SearchOptions, stop_event=None):
        self.g = g
        self.kind = kind
        self.m = m
        self.opts = opts
        self.n = n = g.order
        self.add = g.add_table
        self.neg = g.neg_table
        self.num_edges = m - 1 if kind is Kind.PATH else m
        self.v_floor, v_rem = divmod(m, n)
        self.v_ceil = self.v_floor + (1 if v_rem else 0)
        self.v_ceil_slots = v_rem if v_rem else n
        self.e_floor, e_rem = divmod(self.num_edges, n)
        self.e_ceil = self.e_floor + (1 if e_rem else 0)
        self.e_ceil_slots = e_rem if e_rem else n
        self.vcount = [0] * n
        self.ecount = [0] * n
        self.v_at_ceil = 0
        self.e_at_ceil = 0
        self.v_deficit = n * self.v_floor
        self.e_deficit = n * self.e_floor
        self.seq: list[int] = []
        self.nodes = 0
        self.stop_event = stop_event
        self.budget = opts.node_budget

    # -- count bookkeeping ------------------------------------------------

    def _push_vertex(self, x: int) -> None:
        c = self.vcount[x]
        if c < self.v_floor:
            self.v_deficit -= 1
        if c + 1 == self.v_ceil:
            self.v_at_ceil += 1
        self.vcount[x] = c + 1

    def _pop_vertex(self, x: int) -> None:
        c = self.vcount[x] - 1
        self.vcount[x] = c
        if c < self.v_floor:
            self.v_deficit += 1
        if c + 1 == self.v_ceil:
            self.v_at_ceil -= 1

    def _push_edge(self, e: int) -> None:
        c = self.ecount[e]
        if c < self.e_floor:
            self.e_deficit -= 1
        if c + 1 == self.e_ceil:
            self.e_at_ceil += 1
        self.ecount[e] = c + 1

    def _pop_edge(self, e: int) -> None:
        c = self.ecount[e] - 1
        self.ecount[e] = c
        if c < self.e_floor:
            self.e_deficit += 1
        if c + 1 == self.e_ceil:
            self.e_at_ceil -= 1

    def _vertex_ok(self, x: int) -> bool:
        c = self.vcount[x]
        if c >= self.v_ceil:
            return False
        if c + 1 == self.v_ceil and self.v_at_ceil >= self.v_ceil_slots:
            return False
        return True

    def _edge_ok(self, e: int) -> bool:
        c = self.ecount[e]
        if c >= self.e_ceil:
            return False
        if c + 1 == self.e_ceil and self.e_at_ceil >= self.e_ceil_slots:
            return False
        return True

    def _feasible(self) -> bool:
        placed = len(self.seq)
        if self.v_deficit > self.m - placed:
            return False
        edges_placed = placed - 1 if placed else 0
        return self.e_deficit <= self.num_edges - edges_placed

    # -- leaf -------------------------------------------------------------

    def _leaf_ok(self) -> bool:
        seq = self.seq
        if not self.opts.prune:
            lab = GraphLabeling.from_indices(self.g, self.kind, seq)
            if not check_cordial(lab).cordial:
                return False
        elif self.kind is Kind.CYCLE:
            e = self.add[seq[-1]][seq[0]]
            if not self._edge_ok(e):
                return False
        if self.opts.symmetry_reduction:
            if self.kind is Kind.PATH:
                return _canonical_path(seq, self.add, self.neg)
            return _canonical_cycle(seq, self.add, self.neg)
        return True

    # -- driver -----------------------------------------------------------

    def run(self, prefix: tuple[int, ...] = ()) -> Optional[list[int]]:
        """Return a witness extending ``prefix`` or ``None`` when exhausted."""
        for x in prefix:
            if self.opts.prune and not self._vertex_ok(x):
                return None
            if self.seq and self.opts.prune:
                e = self.add[self.seq[-1]][x]
                if not self._edge_ok(e):
                    return None
            self._place(x)
            if self.opts.prune and not self._feasible():
                return None
        return self._extend()

    def _place(self, x: int) -> None:
        if self.seq:
            self._push_edge(self.add[self.seq[-1]][x])
        self._push_vertex(x)
        self.seq.append(x)

    def _unplace(self) -> None:
        x = self.seq.pop()
        self._pop_vertex(x)
        if self.seq:
            self._pop_edge(self.add[self.seq[-1]][x])

    def _extend(self) -> Optional[list[int]]:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise SearchBudgetExceeded
        if self.stop_event is not None and self.nodes % 4096 == 0 and self.stop_event.is_set():
            raise SearchBudgetExceeded
        if len(self.seq) == self.m:
            return list(self.seq) if self._leaf_ok() else None
        if not self.seq and self.opts.symmetry_reduction:
            candidates: range | list[int] = [0]
        else:
            candidates = range(self.n)
        prune = self.opts.prune
        add_row = self.add[self.seq[-1]] if self.seq else None
        for x in candidates:
            if prune:
                if not self._vertex_ok(x):
                    continue
                if add_row is not None and not self._edge_ok(add_row[x]):
                    continue
            self._place(x)
            if not prune or self._feasible():
                found = self._extend()
                if found is not None:
                    return found
            self._unplace()
        return None


def _run_branch(factors, kind_value, m, opts, prefix, stop_event):
    g = make_group(factors)
    dfs = _Dfs(g, Kind(kind_value), m, opts, stop_event)
    try:
        witness = dfs.run(prefix)
    except SearchBudgetExceeded:
        return None, dfs.nodes, True
    if witness is not None and stop_event is not None:
        stop_event.set()
    return witness, dfs.nodes, False


def _first_level_prefixes(g: GroupSpec, opts: SearchOptions) -> list[tuple[int, ...]]:
    firsts = [0] if opts.symmetry_reduction else range(g.order)
    return [(a, b) for a in firsts for b in range(g.order)]


def search(g: GroupSpec, kind: Kind | str, m: int, opts: SearchOptions | None = None) -> SearchOutcome:
    kind = Kind(kind)
    opts = opts or SearchOptions()
    if kind is Kind.PATH and m < 1:
        raise ValueError("path length must be >= 1")
    if kind is Kind.CYCLE and m < 3:
        raise ValueError("cycle length must be >= 3")
    mode = _symmetry_mode(kind, opts)
    start = time.perf_counter()
    threads = opts.thread_hint or 1
    if threads > 1 and not opts.canonical_witness and m >= 3:
        witness, nodes, inconclusive = _search_parallel(g, kind, m, opts, threads)
    else:
        dfs = _Dfs(g, kind, m, opts)
        inconclusive = False
        try:
            witness = dfs.run()
        except SearchBudgetExceeded:
            witness, inconclusive = None, True
        nodes = dfs.nodes
    elapsed = time.perf_counter() - start
    if witness is not None:
        lab = GraphLabeling.from_indices(g, kind, witness)
        if not check_cordial(lab).cordial:
            raise AssertionError(f"search produced a non-cordial witness {witness}")
        return SearchOutcome(Verdict.FOUND, lab, nodes, elapsed, mode)
    verdict = Verdict.INCONCLUSIVE if inconclusive else Verdict.EXHAUSTED
    return SearchOutcome(verdict, None, nodes, elapsed, mode)


def _search_parallel(g, kind, m, opts, threads):
    # per-branch budgets would not add up to the global one; split it evenly
    prefixes = _first_level_prefixes(g, opts)
    branch_opts = opts
    if opts.node_budget is not None:
        branch_opts = replace(opts, node_budget=max(1, opts.node_budget // len(prefixes)))
    manager = multiprocessing.Manager()
    stop = manager.Event()
    nodes = 0
    inconclusive = False
    witness = None
    try:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            pending = {
                pool.submit(_run_branch, g.factors, kind.value, m, branch_opts, p, stop)
                for p in prefixes
            }
            while pending:
                done, pending = wait(pending, return_when=FIRST_COMPLETED)
                for fut in done:
                    if fut.cancelled():
                        continue
                    w, k, budget_hit = fut.result()
                    nodes += k
                    if w is not None and witness is None:
                        witness = w
                        stop.set()
                        for other in pending:
                            other.cancel()
                    elif budget_hit and not stop.is_set():
                        inconclusive = True
    finally:
        manager.shutdown()
    return witness, nodes, inconclusive and witness is None


def search_path(g: GroupSpec, m: int, opts: SearchOptions | None = None) -> SearchOutcome:
    return search(g, Kind.PATH, m, opts)


def search_cycle(g: GroupSpec, m: int, opts: SearchOptions | None = None) -> SearchOutcome:
    return search(g, Kind.CYCLE, m, opts)


# -- brute-force oracle -----------------------------------------------------


class OracleBoundExceeded(ValueError):
    pass


def count_labelings(
    g: GroupSpec, kind: Kind | str, m: int, bound: int = DEFAULT_ORACLE_BOUND
) -> int:
    """Number of cordial labelings by plain enumeration of all ``n**m`` labelings.

    No shift or reversal reduction is applied.
    """
    kind = Kind(kind)
    n = g.order
    if n**m > bound:
        raise OracleBoundExceeded(f"{n}^{m} labelings exceed the oracle bound {bound}")
    if kind is Kind.CYCLE and m < 3:
        raise ValueError("cycle length must be >= 3")
    if m < 1:
        raise ValueError("path length must be >= 1")
    elements = [g.element_at(i).residues for i in range(n)]
    factors = g.factors

    def plus(x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, factors))

    def even(items) -> bool:
        counts = {e: 0 for e in elements}
        for it in items:
            counts[it] += 1
        vals = counts.values()
        return max(vals) - min(vals) <= 1

    total = 0
    for labels in itertools.product(elements, repeat=m):
        if not even(labels):
            continue
        edges = [plus(labels[i], labels[i + 1]) for i in range(m - 1)]
        if kind is Kind.CYCLE:
            edges.append(plus(labels[-1], labels[0]))
        if even(edges):
            total += 1
    return total


# -- Z_2^m sum argument -------------------------------------------------------


@dataclass
class Exp2Report:
    m: int
    permutations_checked: int
    exhaustive: bool
    nonidentity_sum_is_identity: bool
    edge_sum_matches_leaves: bool
    full_edge_set_hits: int
    full_edge_set_implies_equal_leaves: bool
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.nonidentity_sum_is_identity
            and self.edge_sum_matches_leaves
            and self.full_edge_set_implies_equal_leaves
        )


def verify_exp2_argument(m: int, trials: int | None = None, seed: int = 0) -> Exp2Report:
    """Check the sum argument behind the non-cordiality of ``(Z_2)^m`` paths.

    Three properties over ``(Z_2)^m``:

    1. the nonidentity elements sum to the identity;
    2. for a permutation of all ``2^m`` elements laid on a path, the edge
       labels sum to the sum of the two end labels;
    3. a permutation whose edge labels are exactly the nonidentity elements
       would need equal end labels (so none is ever seen).

    With ``trials=None`` every permutation is checked; otherwise ``trials``
    random ones drawn with ``seed``.
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    g = make_group([2] * m)
    n = g.order
    add = g.add_table
    zero = 0

    acc = zero
    for i in range(1, n):
        acc = add[acc][i]
    prop1 = acc == zero

    nonid = frozenset(range(1, n))
    if trials is None:
        perms = itertools.permutations(range(n))
        exhaustive = True
    else:
        rng = random.Random(seed)

        def _sample():
            base = list(range(n))
            for _ in range(trials):
                rng.shuffle(base)
                yield tuple(base)

        perms = _sample()
        exhaustive = False

    checked = 0
    prop2 = True
    hits = 0
    prop3 = True
    failures = []
    for perm in perms:
        checked += 1
        edges = [add[perm[i]][perm[i + 1]] for i in range(n - 1)]
        esum = zero
        for e in edges:
            esum = add[esum][e]
        leaf_sum = add[perm[0]][perm[-1]]
        if esum != leaf_sum:
            prop2 = False
            failures.append(f"edge sum mismatch on {perm}")
        if len(set(edges)) == n - 1 and set(edges) == nonid:
            hits += 1
            if perm[0] != perm[-1]:
                prop3 = False
                failures.append(f"nonidentity edge set with distinct ends on {perm}")
    return Exp2Report(m, checked, exhaustive, prop1, prop2, hits, prop3, failures[:10])
