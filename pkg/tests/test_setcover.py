"""Tests for the set cover reduction: gadgets, aligned layouts and the audit."""

import pytest

from superpoly.errors import (
    ElementOutOfRange,
    InvalidSetCover,
    MisalignedElement,
    NotRulesAbiding,
    PreconditionViolated,
    TooLarge,
    WrongSet,
)
from superpoly.geometry.models import GRAY, Cell, Offset
from superpoly.geometry.relations import is_superpolyomino
from superpoly.oracles import element_poly_size, min_set_cover, set_poly_size
from superpoly.reductions.setcover import (
    AlignmentAssignment,
    SetCoverInstance,
    aligned_layout,
    aligned_solve,
    build_element_polyomino,
    build_instance,
    build_set_polyomino,
    extract_cover,
    gadget_origin,
    is_rules_abiding,
    misalignment_audit,
    misalignment_size,
    random_set_cover,
    sample_set_cover,
    setcover_from_provenance,
)
from superpoly.solver.evaluate import evaluate_layout, layout_union
from superpoly.solver.instance import Layout, emit_instance, parse_instance


@pytest.fixture()
def sample() -> SetCoverInstance:
    return sample_set_cover()


def random_covers(count: int, seed: int = 11) -> list[SetCoverInstance]:
    return [random_set_cover(2 + i % 4, 2 + i % 5, seed=seed + i) for i in range(count)]


# ---------------------------------------------------------------------------
# SetCoverInstance
# ---------------------------------------------------------------------------


def test_sample_set_cover_shape(sample: SetCoverInstance) -> None:
    assert sample.n == 4
    assert sample.m == 4
    assert sample.members(3) == {2, 3, 4}
    assert sample.sets_text == "1,2;1,4;2,3,4;2,4"


def test_covers(sample: SetCoverInstance) -> None:
    assert sample.covers([1, 3])
    assert not sample.covers([1, 2])


def test_universe_must_be_covered() -> None:
    with pytest.raises(InvalidSetCover):
        SetCoverInstance(3, (frozenset({1, 2}),))


def test_element_out_of_range() -> None:
    with pytest.raises(ElementOutOfRange) as info:
        SetCoverInstance(2, (frozenset({1, 2, 5}),))
    assert info.value.element == 5


def test_tiny_universe_is_rejected() -> None:
    with pytest.raises(InvalidSetCover):
        SetCoverInstance(1, (frozenset({1}),))


def test_random_set_cover_is_valid_and_reproducible() -> None:
    sc = random_set_cover(5, 3, seed=4)
    assert sc == random_set_cover(5, 3, seed=4)
    assert sc.covers(range(1, sc.m + 1))


# ---------------------------------------------------------------------------
# Gadgets
# ---------------------------------------------------------------------------


def test_element_polyomino_sizes() -> None:
    assert build_element_polyomino(4, 1).polyomino.size == 37
    assert build_element_polyomino(2, 2).polyomino.size == 15
    for n in range(2, 9):
        for i in range(1, n + 1):
            assert build_element_polyomino(n, i).polyomino.size == element_poly_size(n)


def test_element_polyomino_flag_height() -> None:
    p = build_element_polyomino(4, 3).polyomino
    assert p.bbox == (5, 13)
    assert all(Cell(x, 10) in p for x in range(1, 5))
    assert Cell(1, 8) not in p


def test_element_index_out_of_range() -> None:
    with pytest.raises(ElementOutOfRange):
        build_element_polyomino(4, 5)


def test_set_polyomino_of_sample(sample: SetCoverInstance) -> None:
    sp = build_set_polyomino(sample)
    assert sp.polyomino.size == 167
    assert sp.origins == (0, 6, 12, 18)
    assert sp.punctures[0] == Cell(1, 1)
    assert Cell(1, 1) not in sp.polyomino
    assert sp.flag_rows[0] == {6, 8}
    assert sp.flag_rows[2] == {8, 10, 12}
    assert sp.connectors == (Cell(5, 0), Cell(11, 0), Cell(17, 0))


def test_set_polyomino_size_formula() -> None:
    for sc in random_covers(20):
        assert build_set_polyomino(sc).polyomino.size == set_poly_size(sc)


def test_instance_names_and_sizes(sample: SetCoverInstance) -> None:
    inst = build_instance(sample)
    assert inst.names == ["Pbar", "P1", "P2", "P3", "P4"]
    assert [p.size for p in inst] == [167, 37, 37, 37, 37]
    assert inst.reduction == "setcover"


def test_every_piece_is_one_color() -> None:
    for sc in random_covers(20):
        inst = build_instance(sc)
        assert all(len(p.colors) == 1 for p in inst.polyominoes)
        assert {c for p in inst for c in p.colors} == {GRAY}


def test_provenance_round_trip(sample: SetCoverInstance) -> None:
    text = emit_instance(build_instance(sample))
    assert text.startswith("# reduction: setcover n=4 m=4 sets=1,2;1,4;2,3,4;2,4\n")
    assert setcover_from_provenance(parse_instance(text).provenance) == sample


def test_provenance_of_other_reduction() -> None:
    with pytest.raises(PreconditionViolated):
        setcover_from_provenance({"kind": "coloring"})


# ---------------------------------------------------------------------------
# Aligned layouts
# ---------------------------------------------------------------------------


def test_aligned_layout_places_elements_on_gadgets(sample: SetCoverInstance) -> None:
    assignment = AlignmentAssignment({1: 1, 2: 1, 3: 3, 4: 3})
    layout = aligned_layout(sample, assignment)
    assert layout == Layout((Offset(0, 0), Offset(0, 0), Offset(0, 0), Offset(12, 0), Offset(12, 0)))
    assert evaluate_layout(build_instance(sample), layout) == 169


def test_aligned_union_only_patches_punctures(sample: SetCoverInstance) -> None:
    inst = build_instance(sample)
    layout = aligned_layout(sample, AlignmentAssignment({1: 2, 2: 4, 3: 3, 4: 4}))
    union = layout_union(inst, layout)
    assert union.size == 167 + 3
    assert Offset(0, 0) in is_superpolyomino(union, inst[0])


def test_assignment_must_respect_membership(sample: SetCoverInstance) -> None:
    with pytest.raises(NotRulesAbiding) as info:
        aligned_layout(sample, AlignmentAssignment({1: 1, 2: 1, 3: 1, 4: 3}))
    assert (info.value.element, info.value.set_index) == (3, 1)


def test_assignment_must_map_every_element(sample: SetCoverInstance) -> None:
    with pytest.raises(InvalidSetCover):
        aligned_layout(sample, AlignmentAssignment({1: 1, 2: 1}))


def test_aligned_solve_on_sample(sample: SetCoverInstance) -> None:
    result, cover = aligned_solve(sample)
    assert result.size == 169
    assert result.optimal
    assert cover == {1, 3}


def test_aligned_solve_guard() -> None:
    sc = SetCoverInstance(13, (frozenset(range(1, 14)),))
    with pytest.raises(TooLarge):
        aligned_solve(sc)


def test_aligned_solve_matches_minimum_cover() -> None:
    for sc in random_covers(20):
        result, cover = aligned_solve(sc)
        witness = min_set_cover(sc)
        assert result.size == set_poly_size(sc) + witness.k
        assert cover == set(witness.sets)
        assert extract_cover(sc, result.layout) == cover


# ---------------------------------------------------------------------------
# extract_cover
# ---------------------------------------------------------------------------


def test_extract_cover_from_aligned_layout(sample: SetCoverInstance) -> None:
    layout = aligned_layout(sample, AlignmentAssignment({1: 1, 2: 1, 3: 3, 4: 3}))
    assert extract_cover(sample, layout) == {1, 3}


def test_extract_cover_is_translation_invariant(sample: SetCoverInstance) -> None:
    layout = aligned_layout(sample, AlignmentAssignment({1: 2, 2: 4, 3: 3, 4: 4}))
    assert extract_cover(sample, layout.shifted(Offset(-7, 3))) == {2, 3, 4}


def test_extract_cover_rejects_vertical_shift(sample: SetCoverInstance) -> None:
    layout = Layout((Offset(0, 0), Offset(0, 1), Offset(0, 0), Offset(12, 0), Offset(12, 0)))
    with pytest.raises(MisalignedElement) as info:
        extract_cover(sample, layout)
    assert info.value.element == 1


def test_extract_cover_rejects_wrong_set(sample: SetCoverInstance) -> None:
    layout = Layout((Offset(0, 0), Offset(0, 0), Offset(0, 0), Offset(0, 0), Offset(12, 0)))
    with pytest.raises(WrongSet) as info:
        extract_cover(sample, layout)
    assert (info.value.element, info.value.set_index) == (3, 1)


def test_extract_cover_rejects_short_layout(sample: SetCoverInstance) -> None:
    with pytest.raises(PreconditionViolated):
        extract_cover(sample, Layout((Offset(0, 0),)))


# ---------------------------------------------------------------------------
# Misalignment audit
# ---------------------------------------------------------------------------


def test_rules_abiding_offsets(sample: SetCoverInstance) -> None:
    assert is_rules_abiding(sample, 3, Offset(gadget_origin(4, 3), 0))
    assert not is_rules_abiding(sample, 3, Offset(0, 0))
    assert not is_rules_abiding(sample, 1, Offset(0, 1))


def test_misplaced_element_costs_a_whole_flag(sample: SetCoverInstance) -> None:
    # element 3 on the gadget of S1 = {1, 2}: puncture plus a missing flag
    assert misalignment_size(sample, 3, Offset(0, 0)) == 172


def test_audit_on_sample_set_cover(sample: SetCoverInstance) -> None:
    report = misalignment_audit(sample)
    assert report.bound == 171
    assert report.holds
    assert report.min_cheat_size >= 171
    assert report.placements > 0


def test_audit_single_element(sample: SetCoverInstance) -> None:
    report = misalignment_audit(sample, element=3)
    assert report.worst_element == 3
    assert report.min_cheat_size == misalignment_size(sample, 3, report.worst_offset)
    assert not is_rules_abiding(sample, 3, report.worst_offset)


@pytest.mark.slow
def test_audit_on_random_instances_with_more_elements_than_sets() -> None:
    for seed in range(5):
        sc = random_set_cover(5, 3, seed=100 + seed)
        assert misalignment_audit(sc).holds
