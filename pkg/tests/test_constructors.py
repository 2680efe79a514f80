import itertools

import pytest

from conftest import lab
from pathcordial.constructors import (
    IMPOSSIBLE,
    BaseNotFound,
    ConstructionTrace,
    base_path,
    construct_cycle,
    construct_path,
    deficient_edge_label,
    double_path,
    double_path_auxiliary,
    extend_by_one,
    glue,
    hardcoded_labeling,
    hardcoded_names,
    m_weak_path,
    natural_cycle,
    odd_cycle,
    odd_path_pipeline,
    path_for_length,
    puff_cycle,
    subdivide_cycle,
    transport,
)
from pathcordial.groups import abelian_presentations, make_group, parse_group
from pathcordial.labeling import (
    GraphLabeling,
    Kind,
    check_cordial,
    count_partition,
    induced_edge_labels,
    truncate,
)
from pathcordial.textio import format_labels


def cordial(L):
    return check_cordial(L).cordial


def as_path(L):
    return GraphLabeling(L.group, Kind.PATH, L.labels)


def same_cycle(a, b):
    """Equal up to rotation and reflection."""
    if len(a) != len(b):
        return False
    seq = list(b.labels)
    rotations = [seq[i:] + seq[:i] for i in range(len(seq))]
    rev = seq[::-1]
    rotations += [rev[i:] + rev[:i] for i in range(len(rev))]
    return list(a.labels) in rotations


# -- extend_by_one --------------------------------------------------------------


def test_extend_p16_to_cordial_p17():
    p17 = extend_by_one(hardcoded_labeling("m-p16"))
    assert len(p17) == 17 and cordial(p17)


def test_extend_full_path_has_unique_edge_label():
    base = hardcoded_labeling("small-a")
    g = base.group
    good_edges = set()
    for a in g.elements():
        cand = GraphLabeling(g, Kind.PATH, base.labels + (a,))
        if cordial(cand):
            good_edges.add(g.add(base.labels[-1], a))
    assert len(good_edges) == 1
    assert cordial(extend_by_one(base))


def test_extend_single_vertex():
    p2 = extend_by_one(lab("3", "path", "0"))
    assert len(p2) == 2 and cordial(p2)


def test_extend_is_deterministic_least_index():
    assert format_labels(extend_by_one(lab("3", "path", "0"))) == "0-1"


def test_extend_rejects_bad_input():
    with pytest.raises(ValueError):
        extend_by_one(lab("2x2", "path", "00-01-10-11"))
    with pytest.raises(ValueError):
        # 7 mod 8 = 7 > 4
        extend_by_one(hardcoded_labeling("m-p7"))


# -- glue -------------------------------------------------------------------------


def test_glue_p6_p16():
    out = glue(hardcoded_labeling("m-p6"), hardcoded_labeling("m-p16"))
    assert len(out) == 22 and cordial(out)


def test_glue_p3_p3():
    p3 = as_path(hardcoded_labeling("fig1-c3"))
    assert cordial(p3)
    out = glue(p3, p3)
    assert len(out) == 6 and cordial(out)


@pytest.mark.parametrize(
    "k_name,mn_name", [("m-p6", "m-p16"), ("m-p10", "m-p16"), ("m-p7", "m-p24"), ("small-a", "fig2")]
)
def test_glue_adds_m_to_every_part(k_name, mn_name):
    lk, lmn = hardcoded_labeling(k_name), hardcoded_labeling(mn_name)
    mult = len(lmn) // lmn.group.order
    out = glue(lk, lmn)
    before, after = check_cordial(lk), check_cordial(out)
    assert after.vertex_partition.partition == tuple(
        x + mult for x in before.vertex_partition.partition
    )
    assert after.edge_partition.partition == tuple(
        x + mult for x in before.edge_partition.partition
    )


def test_glue_rejects():
    with pytest.raises(ValueError):
        glue(hardcoded_labeling("m-p6"), hardcoded_labeling("m-p7"))
    with pytest.raises(ValueError):
        glue(hardcoded_labeling("small-a"), hardcoded_labeling("m-p16"))
    with pytest.raises(ValueError):
        glue(lab("2x2", "path", "00-01-10-11"), hardcoded_labeling("fig2"))


def test_deficient_edge_label():
    small_a = hardcoded_labeling("small-a")
    counts = count_partition(induced_edge_labels(small_a), small_a.group).counts
    a = deficient_edge_label(small_a)
    assert counts[small_a.group.index_of(a)] == 0


# -- hardcoded table --------------------------------------------------------------


def test_hardcoded_names():
    names = set(hardcoded_names())
    for expected in ["small-a", "small-b", "small-c", "small-d", "small-e", "small-f",
                     "m-p6", "m-p7", "m-p10", "m-p14", "m-p15", "m-p16", "m-p24",
                     "fig1-c3", "fig1-c9", "fig2"]:
        assert expected in names


def test_hardcoded_examples():
    e = hardcoded_labeling("small-e")
    assert str(e.group) == "3x6" and len(e) == 18
    assert format_labels(e) == "00-25-21-01-02-22-12-15-04-11-24-20-10-13-05-03-23-14"
    assert format_labels(hardcoded_labeling("m-p24")).startswith("000-001-101-000-111-")
    assert hardcoded_labeling("fig2") == double_path(4)
    with pytest.raises(KeyError):
        hardcoded_labeling("nope")


# -- base_path / path_for_length ----------------------------------------------------


def test_base_path_examples():
    assert format_labels(base_path(parse_group("2x4"))) == "00-12-10-01-02-03-11-13"
    p9 = base_path(parse_group("3x3"))
    assert p9.labels == hardcoded_labeling("fig1-c9").labels and cordial(p9)
    with pytest.raises(BaseNotFound) as info:
        base_path(parse_group("2x2"))
    assert info.value.exhausted


def test_base_path_trace_is_non_empty():
    for spec in ["2x4", "15", "2x2x4", "2x9", "2x3x3"]:
        trace = ConstructionTrace()
        assert cordial(base_path(parse_group(spec), trace))
        assert len(trace) > 0


def test_base_path_large_elementary_is_proven_without_search():
    with pytest.raises(BaseNotFound) as info:
        base_path(parse_group("2x2x2x2"))
    assert info.value.proven and info.value.outcome is None


def test_path_for_length_examples():
    z3 = parse_group("3")
    p7 = path_for_length(z3, 7)
    assert len(p7) == 7 and cordial(p7)
    g = parse_group("2x4")
    assert path_for_length(g, 8) == base_path(g)
    g = parse_group("2x6")
    p25 = path_for_length(g, 25)
    assert len(p25) == 25 and cordial(p25)


TABLE_GROUPS = ["2x4", "2x6", "2x8", "4x4", "3x6", "2x10", "3", "3x3"]


@pytest.mark.parametrize("spec", TABLE_GROUPS)
def test_path_for_length_table_groups(spec):
    g = parse_group(spec)
    base = base_path(g)
    for t in range(1, g.order + 1):
        assert cordial(truncate(base, t))
    for m in range(1, 3 * g.order + 1):
        L = path_for_length(g, m, base=base)
        assert len(L) == m and cordial(L)


def _extendable_groups():
    out = []
    for n in range(2, 13):
        for g in abelian_presentations(n):
            if not g.is_elementary_2():
                out.append(str(g))
    return out


@pytest.mark.parametrize("spec", _extendable_groups())
def test_extend_by_one_exhaustive(spec):
    g = parse_group(spec)
    n = g.order
    base = base_path(g)
    for length in range(1, 3 * n + 1):
        if 2 * (length % n) > n:
            continue
        L = path_for_length(g, length, base=base)
        ext = extend_by_one(L)
        assert len(ext) == length + 1 and cordial(ext)


def test_extend_by_one_on_m_paths():
    for length in range(1, 25):
        if 2 * (length % 8) > 8 or length in (8, 9):
            continue
        ext = extend_by_one(m_weak_path(length))
        assert cordial(ext)


# -- odd order --------------------------------------------------------------------


def test_puff_matches_published_c9():
    c9 = puff_cycle(hardcoded_labeling("fig1-c3"), 3)
    assert format_labels(c9).startswith("00-12-01-10")
    assert c9 == hardcoded_labeling("fig1-c9")


@pytest.mark.parametrize("spec,k", [("3", 3), ("5", 3), ("3", 5), ("3x3", 3), ("7", 5)])
def test_puff_cycle_properties(spec, k):
    base = odd_cycle(parse_group(spec))
    n = len(base)
    sub = subdivide_cycle(base, k)
    counts = count_partition(sub.labels, base.group).counts
    assert set(counts) == {k}
    orig = induced_edge_labels(base)
    edges = induced_edge_labels(sub)
    assert edges == [e for e in orig for _ in range(k)]
    big = puff_cycle(base, k)
    assert len(big) == k * n
    assert set(count_partition(big.labels, big.group).counts) == {1}
    assert cordial(big)


def test_puff_cycle_rejects():
    c3 = hardcoded_labeling("fig1-c3")
    for k in (2, 4, 1):
        with pytest.raises(ValueError):
            puff_cycle(c3, k)
    with pytest.raises(ValueError):
        puff_cycle(lab("3", "cycle", "0-0-1"), 3)
    with pytest.raises(ValueError):
        puff_cycle(lab("3", "cycle", "0-1-2-0-1-2"), 3)


def test_odd_cycle_examples():
    assert odd_cycle(parse_group("3")) == hardcoded_labeling("fig1-c3")
    c9 = odd_cycle(parse_group("3x3"))
    assert c9 == hardcoded_labeling("fig1-c9")
    # the published drawing of this cycle, read along its arrows
    drawn = lab("3x3", "cycle", "00-21-02-20-11-22-10-01-12")
    assert same_cycle(c9, drawn)
    c5 = odd_cycle(parse_group("5"))
    assert [e.residues[0] for e in induced_edge_labels(c5)] == [1, 3, 0, 2, 4]
    assert cordial(c5)
    with pytest.raises(ValueError):
        odd_cycle(parse_group("2x3"))


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11, 21, 27])
def test_natural_cycle(n):
    assert cordial(natural_cycle(make_group([n])))


@pytest.mark.parametrize("spec,m", [("9", 9), ("3x3x3", 27), ("15", 40), ("3x5", 40)])
def test_odd_path_pipeline(spec, m):
    L = odd_path_pipeline(parse_group(spec), m)
    assert len(L) == m and cordial(L)


def test_odd_path_pipeline_rejects_even():
    with pytest.raises(ValueError):
        odd_path_pipeline(parse_group("4"), 5)


# -- double path ------------------------------------------------------------------------


def test_double_path_matches_published():
    L = double_path(4)
    assert format_labels(L) == "10-00-01-11-12-12-03-03-10-00-01-11-02-02-13-13"
    counts = count_partition(induced_edge_labels(L), L.group).counts
    assert counts[L.group.index_of(L.group.element([0, 3]))] == 1
    assert sorted(counts) == [1] + [2] * 7
    assert deficient_edge_label(L).residues == (0, 3)


@pytest.mark.parametrize("k", [2, 4, 6, 8, 10, 12, 14])
def test_double_path_cordial(k):
    L = double_path(k)
    assert len(L) == 4 * k and cordial(L)
    assert deficient_edge_label(L).residues == (0, k - 1)


@pytest.mark.parametrize("k", [2, 4, 6, 8])
def test_double_path_auxiliary_distribution(k):
    aux = double_path_auxiliary(k)
    g = aux.group
    counts = count_partition(induced_edge_labels(aux), g).counts
    # 4k - 1 edges: the last period is one edge short, so (0, k-1) gets 3
    for a in g.elements():
        i, j = a.residues
        expected = 0 if (i + j) % 2 == 0 else 4
        if (i, j) == (0, k - 1):
            expected = 3
        assert counts[g.index_of(a)] == expected
    assert set(count_partition(aux.labels, g).counts) == {2}


@pytest.mark.parametrize("k", [3, 5, 0, -2])
def test_double_path_rejects_odd(k):
    with pytest.raises(ValueError):
        double_path(k)


# -- weak (Z_2)^3 schedule ----------------------------------------------------------------


def test_m_weak_path_examples():
    assert m_weak_path(8) is IMPOSSIBLE
    assert m_weak_path(9) is IMPOSSIBLE
    for m in (40, 100, 41, 57):
        L = m_weak_path(m)
        assert len(L) == m and cordial(L)


def test_m_weak_path_trace():
    trace = ConstructionTrace()
    m_weak_path(40, trace)
    rules = [s.rule for s in trace.steps]
    assert rules[0] == "table" and trace.steps[0].params["name"] == "m-p24"
    assert rules.count("glue") == 1


# -- transport and dispatch ---------------------------------------------------------------


@pytest.mark.parametrize("src,dst", [("2x6", "2x2x3"), ("3x6", "2x3x3"), ("15", "3x5"), ("2x10", "2x2x5")])
def test_transport_is_isomorphism(src, dst):
    g, h = parse_group(src), parse_group(dst)
    seq = GraphLabeling.from_indices(g, Kind.PATH, range(g.order))
    moved = transport(seq, h)
    assert len(set(moved.labels)) == h.order
    image = dict(zip(seq.labels, moved.labels))
    for a, b in itertools.product(g.elements(), repeat=2):
        assert image[g.add(a, b)] == h.add(image[a], image[b])


def test_transport_rejects_non_isomorphic():
    with pytest.raises(ValueError):
        transport(hardcoded_labeling("small-a"), parse_group("8"))


@pytest.mark.parametrize("spec,m", [("2x2", 1), ("2x2", 8), ("2x2", 13), ("2x2", 20), ("4", 13), ("2x2x4", 33)])
def test_construct_path(spec, m):
    L = construct_path(parse_group(spec), m)
    assert len(L) == m and cordial(L)


def test_construct_path_impossible_and_double():
    assert construct_path(parse_group("2x2"), 4) is IMPOSSIBLE
    assert construct_path(parse_group("2x2x2x2"), 17) is IMPOSSIBLE
    assert construct_path(parse_group("2x4"), 16) == hardcoded_labeling("fig2")


def test_construct_cycle():
    assert construct_cycle(parse_group("3x3"), 9) == hardcoded_labeling("fig1-c9")
    C = construct_cycle(parse_group("4"), 8)
    assert cordial(C) and C.kind is Kind.CYCLE
