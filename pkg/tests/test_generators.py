import pytest
from hypothesis import given, settings, strategies as st

from probesort.generators import GenSpec, flipped_backbone, generate, max_extra
from probesort.model import edge_key, mispredicted_count, serialize, true_ham_path, validate_instance


def test_two_vertices():
    inst = generate(GenSpec(2, 0, 0, 1))
    assert inst.m == 1 and mispredicted_count(inst) == 0


def test_complete_five():
    inst = generate(GenSpec(5, family="complete", seed=3))
    assert inst.m == 10 and mispredicted_count(inst) == 0
    assert validate_instance(inst)


def test_exact_flip_count():
    inst = generate(GenSpec(50, 100, 7, 42))
    assert inst.m == 149
    assert mispredicted_count(inst) == 7


def test_flipped_backbone_small():
    inst = flipped_backbone(2, seed=5)
    assert inst.m == 1 and mispredicted_count(inst) == 1


def test_flipped_backbone_flips_exactly_the_path():
    inst = flipped_backbone(10, seed=8, extra_edges=15)
    assert mispredicted_count(inst) == 9
    path = true_ham_path(inst)
    backbone = {edge_key(path[i], path[i + 1]) for i in range(9)}
    flipped = {e for e, t, p in zip(inst.edges, inst.truth, inst.prediction) if t != p}
    assert flipped == backbone


def test_path_chords_stay_local():
    inst = generate(GenSpec(30, 40, 5, 2, "path_chords"))
    pos = {v: i for i, v in enumerate(true_ham_path(inst))}
    assert all(abs(pos[a] - pos[b]) <= 4 for a, b in inst.edges)
    assert inst.m == 29 + 40


@pytest.mark.parametrize(
    "spec",
    [
        GenSpec(5, max_extra(5) + 1),
        GenSpec(5, 0, 5),
        GenSpec(0),
        GenSpec(5, family="bogus"),
        GenSpec(5, 2, 1, family="flipped_backbone"),
    ],
)
def test_infeasible_specs(spec):
    with pytest.raises(ValueError):
        generate(spec)


def test_density():
    spec = GenSpec.from_density(20, 0.5, w=3)
    assert spec.extra_edges == round(0.5 * max_extra(20))


@st.composite
def specs(draw):
    n = draw(st.integers(1, 30))
    family = draw(st.sampled_from(["random", "path_chords", "complete"]))
    extra = 0 if family == "complete" else draw(st.integers(0, max_extra(n, family)))
    spec = GenSpec(n, extra, 0, draw(st.integers(0, 2**64 - 1)), family)
    return GenSpec(n, extra, draw(st.integers(0, spec.m)), spec.seed, family)


@settings(max_examples=120)
@given(specs())
def test_generated_instances_are_valid_and_exact(spec):
    inst = generate(spec)
    assert validate_instance(inst)
    assert mispredicted_count(inst) == spec.w
    assert inst.m == spec.m
    assert len(set(inst.edges)) == inst.m
    assert all(a != b for a, b in inst.edges)
    assert serialize(generate(spec)) == serialize(inst)
