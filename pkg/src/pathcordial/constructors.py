"""Deterministic constructions of cordial path and cycle labelings.

Every function re-checks cordiality of what it builds and raises
:class:`ConstructionError` if a step ever produces a non-cordial labeling.
Functions that compose several steps accept an optional
:class:`ConstructionTrace` and append one record per step.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Any, Optional

from .groups import (
    GroupElement,
    GroupSpec,
    invariant_factors,
    isomorphic,
    make_group,
    primary_factors,
    prime_powers,
)
from .labeling import (
    GraphLabeling,
    Kind,
    check_cordial,
    count_partition,
    induced_edge_labels,
    shift,
    truncate,
)
from .search import SearchOptions, SearchOutcome, Verdict, search_cycle, search_path
from .textio import parse_labeling

__all__ = [
    "ConstructionError",
    "BaseNotFound",
    "IMPOSSIBLE",
    "TraceStep",
    "ConstructionTrace",
    "extend_by_one",
    "glue",
    "deficient_edge_label",
    "base_path",
    "path_for_length",
    "subdivide_cycle",
    "puff_cycle",
    "natural_cycle",
    "odd_cycle",
    "odd_path_pipeline",
    "double_path_auxiliary",
    "double_path",
    "hardcoded_labeling",
    "hardcoded_names",
    "transport",
    "m_weak_path",
    "construct_path",
    "construct_cycle",
    "DEFAULT_FALLBACK_BUDGET",
]

DEFAULT_FALLBACK_BUDGET = 20_000_000

M_GROUP = make_group([2, 2, 2])

# (Z_2)^r with larger order: non-existence of a cordial P_n is taken from the
# sum argument instead of exhaustive search
_EXP2_SEARCH_LIMIT = 8


class ConstructionError(Exception):
    pass


class BaseNotFound(ConstructionError):
    """Fallback search found no cordial base path (or ran out of budget)."""

    def __init__(
        self, message: str, outcome: SearchOutcome | None = None, proven: bool = False
    ):
        super().__init__(message)
        self.outcome = outcome
        self.proven = proven

    @property
    def exhausted(self) -> bool:
        """True when non-existence is certain (exhaustive search or theorem)."""
        if self.proven:
            return True
        return self.outcome is not None and self.outcome.verdict is Verdict.EXHAUSTED


class _Impossible:
    def __repr__(self) -> str:
        return "IMPOSSIBLE"

    def __bool__(self) -> bool:
        return False


IMPOSSIBLE = _Impossible()


@dataclass(frozen=True)
class TraceStep:
    rule: str
    params: dict[str, Any]


@dataclass
class ConstructionTrace:
    steps: list[TraceStep] = field(default_factory=list)

    def record(self, rule: str, **params: Any) -> None:
        self.steps.append(TraceStep(rule, params))

    def to_list(self) -> list[dict]:
        return [{"rule": s.rule, **s.params} for s in self.steps]

    def __len__(self) -> int:
        return len(self.steps)


def _note(trace: Optional[ConstructionTrace], rule: str, **params: Any) -> None:
    if trace is not None:
        trace.record(rule, **params)


def _verified(lab: GraphLabeling, rule: str) -> GraphLabeling:
    if not check_cordial(lab).cordial:
        raise ConstructionError(f"{rule} produced a non-cordial labeling")
    return lab


def _require_cordial_path(lab: GraphLabeling, what: str) -> None:
    if lab.kind is not Kind.PATH:
        raise ValueError(f"{what} must be a path labeling")
    if not check_cordial(lab).cordial:
        raise ValueError(f"{what} is not cordial")


# -- extension and gluing -----------------------------------------------------


def extend_by_one(lab: GraphLabeling, trace: Optional[ConstructionTrace] = None) -> GraphLabeling:
    """Append one vertex at the right end, keeping the path cordial.

    Requires ``len(lab) % n <= n / 2``.  Picks the candidate label with the
    smallest element index.
    """
    _require_cordial_path(lab, "input")
    g = lab.group
    n = g.order
    f = len(lab) % n
    if 2 * f > n:
        raise ValueError(f"path length {len(lab)} has remainder {f} > n/2 = {n / 2}")
    for i in range(n):
        cand = GraphLabeling(g, Kind.PATH, lab.labels + (g.element_at(i),))
        if check_cordial(cand).cordial:
            _note(trace, "extend_by_one", length=len(cand), label=list(cand.labels[-1]))
            return cand
    raise ConstructionError(f"no label extends this cordial P_{len(lab)}")


def deficient_edge_label(lab: GraphLabeling) -> GroupElement:
    """The unique edge label used one time fewer than the others.

    ``lab`` must be a cordial path whose length is a multiple of the group
    order.
    """
    g = lab.group
    n = g.order
    if len(lab) % n:
        raise ValueError("length is not a multiple of the group order")
    mult = len(lab) // n
    counts = count_partition(induced_edge_labels(lab), g).counts
    short = [i for i, c in enumerate(counts) if c == mult - 1]
    if len(short) != 1 or any(c not in (mult, mult - 1) for c in counts):
        raise ValueError("edge labels have no unique deficient element")
    return g.element_at(short[0])


def glue(
    lk: GraphLabeling, lmn: GraphLabeling, trace: Optional[ConstructionTrace] = None
) -> GraphLabeling:
    """Join a cordial ``P_k`` to a cordial ``P_{mn}`` by one edge.

    ``lmn`` is shifted so its left end is the identity and ``lk`` so its left
    end is the deficient edge label ``a`` of the shifted ``lmn``; the two left
    ends are then joined, so the new edge carries ``a``.  The result reads
    ``reversed(lk') + lmn'``.
    """
    _require_cordial_path(lk, "P_k")
    _require_cordial_path(lmn, "P_mn")
    g = lmn.group
    if lk.group != g:
        raise ValueError("labelings are over different groups")
    n = g.order
    if len(lmn) % n:
        raise ValueError(f"P_mn length {len(lmn)} is not a multiple of {n}")
    mult = len(lmn) // n
    vcounts = count_partition(lmn.labels, g).counts
    if any(c != mult for c in vcounts):
        raise ValueError("P_mn does not use every element exactly m times")

    lmn_s = shift(lmn, g.negate(lmn.labels[0]))
    a = deficient_edge_label(lmn_s)
    lk_s = shift(lk, g.add(a, g.negate(lk.labels[0])))
    out = GraphLabeling(g, Kind.PATH, lk_s.labels[::-1] + lmn_s.labels)
    _note(trace, "glue", k=len(lk), mn=len(lmn), edge=list(a.residues))
    return _verified(out, "glue")


# -- hardcoded labelings ------------------------------------------------------


@lru_cache(maxsize=None)
def _table() -> dict[str, GraphLabeling]:
    text = resources.files("pathcordial").joinpath("data/published_labelings.txt").read_text("utf-8")
    blocks = re.findall(r"^\[([^\]]+)\]\s*\n(.*?)(?=^\[|\Z)", text, flags=re.M | re.S)
    table: dict[str, GraphLabeling] = {}
    for name, body in blocks:
        lab = parse_labeling(body)
        if not check_cordial(lab).cordial:
            raise RuntimeError(f"hardcoded labeling {name!r} is not cordial; data file corrupt")
        table[name] = lab
    if not table:
        raise RuntimeError("hardcoded labeling table is empty")
    return table


def hardcoded_names() -> list[str]:
    return list(_table())


def hardcoded_labeling(name: str) -> GraphLabeling:
    try:
        return _table()[name]
    except KeyError:
        raise KeyError(f"unknown labeling {name!r}; known: {', '.join(_table())}") from None


def _cycle_to_path(lab: GraphLabeling) -> GraphLabeling:
    # drop the closing edge
    return GraphLabeling(lab.group, Kind.PATH, lab.labels)


def _table_base(g: GroupSpec) -> Optional[tuple[str, GraphLabeling]]:
    for name, lab in _table().items():
        if lab.group == g and len(lab) == g.order:
            return name, lab if lab.kind is Kind.PATH else _cycle_to_path(lab)
    return None


def _primary_coords(g: GroupSpec, a: GroupElement) -> list[tuple[int, int]]:
    out = []
    for r, d in zip(a.residues, g.factors):
        for q in prime_powers(d):
            out.append((q, r % q))
    return out


def transport(lab: GraphLabeling, target: GroupSpec) -> GraphLabeling:
    """Carry a labeling across an isomorphism between two presentations.

    Both groups are split into prime-power cyclic components; components of
    equal order are matched in order of appearance and recombined with the
    Chinese remainder theorem.  Sums are preserved, so cordiality is too.
    """
    src = lab.group
    if not isomorphic(src, target):
        raise ValueError(f"{src} and {target} are not isomorphic")
    slots = []  # (prime power, target factor position)
    for pos, d in enumerate(target.factors):
        for q in prime_powers(d):
            slots.append((q, pos))
    order = sorted(range(len(slots)), key=lambda i: slots[i][0])

    def image(a: GroupElement) -> GroupElement:
        coords = sorted(_primary_coords(src, a), key=lambda qc: qc[0])
        residues = [0] * target.rank
        moduli = [1] * target.rank
        for (q, c), slot in zip(coords, order):
            pos = slots[slot][1]
            # CRT merge of residue c mod q into residues[pos] mod moduli[pos]
            r0, m0 = residues[pos], moduli[pos]
            t = ((c - r0) * pow(m0, -1, q)) % q
            residues[pos] = r0 + m0 * t
            moduli[pos] = m0 * q
        return target.element(residues)

    return GraphLabeling(target, lab.kind, tuple(image(a) for a in lab.labels))


def _transported_table_base(g: GroupSpec) -> Optional[tuple[str, GraphLabeling]]:
    want = primary_factors(g)
    for name, lab in _table().items():
        if len(lab) == g.order and primary_factors(lab.group) == want:
            moved = transport(lab, g)
            return name, moved if moved.kind is Kind.PATH else _cycle_to_path(moved)
    return None


# -- odd order ----------------------------------------------------------------


def natural_cycle(g: GroupSpec) -> GraphLabeling:
    """``0, 1, ..., n-1`` around the cycle of a one-factor odd group.

    Consecutive edges are ``2i + 1`` and the closing edge is ``n - 1``; with
    ``n`` odd these are all distinct.
    """
    if g.rank != 1 or g.order % 2 == 0:
        raise ValueError("natural cycle labeling needs a single odd cyclic factor")
    n = g.order
    if n < 3:
        raise ValueError("cycle needs at least three vertices")
    return _verified(GraphLabeling.from_indices(g, Kind.CYCLE, range(n)), "natural_cycle")


def _check_puff_input(cycle: GraphLabeling, k: int) -> None:
    if cycle.kind is not Kind.CYCLE:
        raise ValueError("puffing needs a cycle labeling")
    if k < 3 or k % 2 == 0:
        raise ValueError(f"k must be odd and >= 3, got {k}")
    if len(cycle) != cycle.group.order:
        raise ValueError("cycle length must equal the group order")
    if not check_cordial(cycle).cordial:
        raise ValueError("input cycle is not cordial")


def subdivide_cycle(cycle: GraphLabeling, k: int) -> GraphLabeling:
    """Insert ``k - 1`` vertices into every edge ``x -> y``, labeled ``x, y, x, ...``.

    Still over the original group; each label is used ``k`` times and each
    original edge label repeats ``k`` times in a row.
    """
    _check_puff_input(cycle, k)
    labels = cycle.labels
    out = []
    for i, x in enumerate(labels):
        y = labels[(i + 1) % len(labels)]
        out.append(x)
        out.extend(y if j % 2 else x for j in range(1, k))
    return _verified(GraphLabeling(cycle.group, Kind.CYCLE, tuple(out)), "subdivide_cycle")


def puff_cycle(cycle: GraphLabeling, k: int, trace: Optional[ConstructionTrace] = None) -> GraphLabeling:
    """Cordial ``C_{kn}`` over ``A x Z_k`` from a cordial ``C_n`` over ``A``.

    Along each directed edge ``x -> y`` the inserted vertices
    ``q_1 .. q_{k-1}`` get ``q_{2i} = (l(x), i)`` and
    ``q_{2i+1} = (l(y), i + (k+1)/2)``; ``x`` itself is ``(l(x), 0)``.
    """
    _check_puff_input(cycle, k)
    a_group = cycle.group
    big = make_group(a_group.factors + (k,))
    half = (k + 1) // 2
    labels = cycle.labels
    out = []
    for idx, x in enumerate(labels):
        y = labels[(idx + 1) % len(labels)]
        out.append(x.residues + (0,))
        for j in range(1, k):
            i, odd = divmod(j, 2)
            out.append(y.residues + (i + half,) if odd else x.residues + (i,))
    lab = GraphLabeling.from_residues(big, Kind.CYCLE, out)
    _note(trace, "puff_cycle", base=str(a_group), k=k)
    return _verified(lab, "puff_cycle")


def odd_cycle(g: GroupSpec, trace: Optional[ConstructionTrace] = None) -> GraphLabeling:
    if g.order % 2 == 0:
        raise ValueError(f"group {g} has even order")
    if g.rank == 1:
        _note(trace, "natural_cycle", group=str(g))
        return natural_cycle(g)
    base = odd_cycle(make_group(g.factors[:-1]), trace)
    return puff_cycle(base, g.factors[-1], trace)


def odd_path_pipeline(
    g: GroupSpec, m: int, trace: Optional[ConstructionTrace] = None
) -> GraphLabeling:
    """Cordial ``P_m`` for odd ``|g|``: cordial cycle, drop an edge, then glue."""
    if g.order % 2 == 0:
        raise ValueError(f"group {g} has even order")
    cycle = odd_cycle(g, trace)
    base = _verified(_cycle_to_path(cycle), "delete_edge")
    _note(trace, "delete_edge", length=len(base))
    return path_for_length(g, m, trace=trace, base=base)


# -- Z_2 x Z_k ------------------------------------------------------------------


def _double_rows(k: int) -> tuple[list[list[int]], list[list[int]]]:
    if k < 2 or k % 2:
        raise ValueError(
            f"k must be even and >= 2, got {k}; for odd k the group Z_2 x Z_k is cyclic, "
            "use the cyclic construction"
        )
    top = [[(j + 1) % 2, j % k] for j in range(2 * k)]
    bottom = [[j % 2, j % k] for j in range(2 * k)]
    return top, bottom


def _serpentine(k: int, top, bottom) -> GraphLabeling:
    g = make_group([2, k])
    seq = [lab for pair in zip(top, bottom) for lab in pair]
    return GraphLabeling.from_residues(g, Kind.PATH, seq)


def double_path_auxiliary(k: int) -> GraphLabeling:
    """The two-row labeling before the swap (not cordial)."""
    top, bottom = _double_rows(k)
    return _serpentine(k, top, bottom)


def double_path(k: int, trace: Optional[ConstructionTrace] = None) -> GraphLabeling:
    """Cordial ``P_{4k}`` over ``Z_2 x Z_k`` for even ``k``.

    Swaps the first coordinates of the last ``k/2`` top-row labels with those
    of bottom-row positions ``k/2 .. k-1``, then reads the rows in zigzag.
    """
    top, bottom = _double_rows(k)
    half = k // 2
    for t in range(half):
        tp, bp = 2 * k - half + t, half + t
        top[tp][0], bottom[bp][0] = bottom[bp][0], top[tp][0]
    _note(trace, "double_path", k=k)
    return _verified(_serpentine(k, top, bottom), "double_path")


# -- dispatch -------------------------------------------------------------------


def base_path(
    g: GroupSpec,
    trace: Optional[ConstructionTrace] = None,
    opts: SearchOptions | None = None,
) -> GraphLabeling:
    """A cordial ``P_n`` with ``n = |g|``.

    Tried in order: published table (exact presentation, then up to
    isomorphism), odd-order pipeline (natural labeling for odd cyclic
    groups), and finally bounded search.
    Raises :class:`BaseNotFound` when the search fails.
    """
    hit = _table_base(g)
    if hit is not None:
        _note(trace, "table", name=hit[0])
        return hit[1]
    hit = _transported_table_base(g)
    if hit is not None:
        _note(trace, "table_isomorphic", name=hit[0], source=str(hit[1].group))
        return _verified(hit[1], "transport")
    if g.is_elementary_2() and g.order > _EXP2_SEARCH_LIMIT:
        _note(trace, "impossible", length=g.order)
        raise BaseNotFound(
            f"P_{g.order} over {g} is not cordial (sum argument for (Z_2)^r)", proven=True
        )
    if g.order % 2:
        cycle = odd_cycle(g, trace)
        _note(trace, "delete_edge", length=g.order)
        return _verified(_cycle_to_path(cycle), "delete_edge")
    opts = opts or SearchOptions(node_budget=DEFAULT_FALLBACK_BUDGET)
    # search runs much faster in the invariant-factor presentation
    target = make_group(invariant_factors(g))
    outcome = search_path(target, g.order, opts)
    _note(
        trace,
        "search",
        group=str(target),
        length=g.order,
        verdict=outcome.verdict.value,
        nodes=outcome.nodes_explored,
    )
    if outcome.witness is None:
        raise BaseNotFound(
            f"no cordial P_{g.order} over {g} ({outcome.verdict.value}, "
            f"{outcome.nodes_explored} nodes)",
            outcome,
        )
    if target == g:
        return outcome.witness
    _note(trace, "transport", source=str(target), target=str(g))
    return _verified(transport(outcome.witness, g), "transport")


def path_for_length(
    g: GroupSpec,
    m: int,
    trace: Optional[ConstructionTrace] = None,
    base: GraphLabeling | None = None,
    opts: SearchOptions | None = None,
) -> GraphLabeling:
    """Cordial ``P_m``: truncate the base ``P_n`` to ``m mod n`` and glue copies."""
    if m < 1:
        raise ValueError("path length must be >= 1")
    if base is None:
        base = base_path(g, trace, opts)
    n = g.order
    if len(base) != n or base.group != g:
        raise ValueError("base must be a cordial P_n over the same group")
    h, k = divmod(m, n)
    if k:
        cur = _verified(truncate(base, k), "truncate")
        _note(trace, "truncate", length=k)
    else:
        cur = base
        h -= 1
    for _ in range(h):
        cur = glue(cur, base, trace)
    return cur


def m_weak_path(m: int, trace: Optional[ConstructionTrace] = None):
    """Cordial ``P_m`` over ``Z_2^3``, or ``IMPOSSIBLE`` for ``m`` in {8, 9}.

    Short paths come from the published ``P_6, P_7, P_10, P_14, P_15, P_16``
    and single-vertex extensions; longer ones glue copies of the published
    ``P_16``.  Lengths congruent to 8 or 9 mod 16 start from the published
    ``P_24`` (or its extension to ``P_25``).
    """
    if m < 1:
        raise ValueError("path length must be >= 1")
    if m in (8, 9):
        _note(trace, "impossible", length=m)
        return IMPOSSIBLE
    p16 = hardcoded_labeling("m-p16")
    j, h = m % 16, m // 16
    if j in (8, 9):
        start = hardcoded_labeling("m-p24")
        _note(trace, "table", name="m-p24")
        if j == 9:
            start = extend_by_one(start, trace)
        h = (m - len(start)) // 16
    elif j == 0:
        start = p16
        _note(trace, "table", name="m-p16")
        h -= 1
    else:
        start = _m_short(j, trace)
    cur = start
    for _ in range(h):
        cur = glue(cur, p16, trace)
    return _verified(cur, "m_weak_path")


def _m_short(j: int, trace: Optional[ConstructionTrace]) -> GraphLabeling:
    named = {6: "m-p6", 7: "m-p7", 10: "m-p10", 14: "m-p14", 15: "m-p15", 16: "m-p16"}
    if j in named:
        _note(trace, "table", name=named[j])
        return hardcoded_labeling(named[j])
    if j <= 5:
        cur = GraphLabeling(M_GROUP, Kind.PATH, (M_GROUP.identity,))
        _note(trace, "single_vertex")
    elif 11 <= j <= 13:
        cur = hardcoded_labeling("m-p10")
        _note(trace, "table", name="m-p10")
    else:
        raise ValueError(f"no short M-path schedule for {j}")
    while len(cur) < j:
        cur = extend_by_one(cur, trace)
    return cur


def _exp2_impossible(g: GroupSpec, m: int) -> bool:
    return g.is_elementary_2() and m in (g.order, g.order + 1)


def _weak_schedule(
    g: GroupSpec, m: int, trace: Optional[ConstructionTrace], opts: SearchOptions
) -> GraphLabeling:
    """Cordial ``P_m`` when no cordial ``P_n`` exists.

    Uses a cordial ``P_{2n}`` (double path or search) as the glued block and
    searches for the shortest cordial start in the residue class of ``m``.
    """
    n = g.order
    outcome: SearchOutcome | None = None
    if g.rank == 2 and g.factors[0] == 2 and g.factors[1] % 2 == 0:
        block = double_path(g.factors[1], trace)
    else:
        outcome = search_path(g, 2 * n, opts)
        _note(trace, "search", length=2 * n, verdict=outcome.verdict.value)
        if outcome.witness is None:
            raise BaseNotFound(f"no cordial P_{2 * n} over {g}", outcome)
        block = outcome.witness
    period = len(block)
    length = m % period or period
    while True:
        if length > m:
            raise BaseNotFound(f"no cordial P_{m} over {g} found by the schedule", outcome)
        outcome = search_path(g, length, opts)
        _note(trace, "search", length=length, verdict=outcome.verdict.value)
        if outcome.witness is not None:
            break
        if outcome.verdict is Verdict.INCONCLUSIVE:
            raise BaseNotFound(f"search for P_{length} over {g} ran out of budget", outcome)
        length += period
    cur = outcome.witness
    for _ in range((m - length) // period):
        cur = glue(cur, block, trace)
    return cur


def construct_path(
    g: GroupSpec,
    m: int,
    trace: Optional[ConstructionTrace] = None,
    opts: SearchOptions | None = None,
):
    """Best available cordial ``P_m`` over ``g``, or ``IMPOSSIBLE``.

    ``IMPOSSIBLE`` is returned only for ``(Z_2)^r`` at lengths ``2^r`` and
    ``2^r + 1``.  Search failures raise :class:`BaseNotFound`.
    """
    if m < 1:
        raise ValueError("path length must be >= 1")
    opts = opts or SearchOptions(node_budget=DEFAULT_FALLBACK_BUDGET)
    if _exp2_impossible(g, m):
        _note(trace, "impossible", length=m)
        return IMPOSSIBLE
    if g == M_GROUP:
        return m_weak_path(m, trace)
    if g.rank == 2 and g.factors[0] == 2 and g.factors[1] % 2 == 0 and m == 2 * g.order:
        return double_path(g.factors[1], trace)
    try:
        base = base_path(g, trace, opts)
    except BaseNotFound as exc:
        if not (exc.exhausted and g.is_elementary_2() and g.order <= _EXP2_SEARCH_LIMIT):
            raise
        return _weak_schedule(g, m, trace, opts)
    return path_for_length(g, m, trace, base=base)


def construct_cycle(
    g: GroupSpec,
    m: int,
    trace: Optional[ConstructionTrace] = None,
    opts: SearchOptions | None = None,
) -> GraphLabeling:
    """Cordial ``C_m``: the odd-order construction when ``m = |g|`` is odd, else search."""
    if m < 3:
        raise ValueError("cycle length must be >= 3")
    if g.order % 2 and m == g.order:
        return odd_cycle(g, trace)
    opts = opts or SearchOptions(node_budget=DEFAULT_FALLBACK_BUDGET)
    outcome = search_cycle(g, m, opts)
    _note(trace, "search", kind="cycle", length=m, verdict=outcome.verdict.value)
    if outcome.witness is None:
        raise BaseNotFound(f"no cordial C_{m} over {g} ({outcome.verdict.value})", outcome)
    return outcome.witness
