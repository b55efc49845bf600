import math
import os

import pytest
from hypothesis import given, settings, strategies as st

from probesort.generators import GenSpec, generate
from probesort.model import Instance, mispredicted_count, true_ham_path
from probesort.oracle import ProbeOracle
from probesort.randomized import Certificate, RandomizedSolver, solve
from probesort.stepping import Done, NeedProbe, ProtocolError, SolverInvariantError, drive

from .conftest import A, B, C, instances


def test_chain_without_errors_takes_two_probes(chain3):
    o = ProbeOracle(chain3)
    path, stats = solve(o, chain3.observable(), seed=0)
    assert path == [A, B, C]
    assert o.probes_used() == 2
    assert o.probe_sequence() == [(A, B), (B, C)]
    assert stats.insertion_order == [A, B, C]


def test_chain_with_flipped_chord_takes_three_probes(chain3_flipped_chord):
    o = ProbeOracle(chain3_flipped_chord)
    path, stats = solve(o, chain3_flipped_chord.observable(), seed=0)
    assert path == [A, B, C]
    assert o.probe_sequence() == [(A, C), (A, B), (B, C)]
    assert stats.mispredicted_found == 1


def test_single_edge():
    inst = Instance.from_arcs(2, [(1, 0)])
    o = ProbeOracle(inst)
    assert solve(o, inst.observable())[0] == [1, 0]
    assert o.probes_used() == 1


def test_single_vertex():
    inst = Instance(1, (), (), ())
    solver = RandomizedSolver(inst.observable())
    assert solver.step() == Done([0])
    with pytest.raises(ProtocolError):
        solver.step()


def test_step_before_feed_is_rejected(chain3):
    solver = RandomizedSolver(chain3.observable())
    first = solver.step()
    assert isinstance(first, NeedProbe)
    with pytest.raises(ProtocolError):
        solver.step()
    with pytest.raises(ProtocolError):
        solver.feed(ProbeOracle(chain3).probe(B, C))


def _requests(inst: Instance, seed: int) -> list:
    solver = RandomizedSolver(inst.observable(), seed)
    oracle = ProbeOracle(inst)
    seq = []
    while True:
        req = solver.step()
        seq.append(req)
        if isinstance(req, Done):
            return seq
        solver.feed(oracle.probe(req.edge))


def test_same_seed_same_requests():
    inst = generate(GenSpec(40, 120, 15, 3))
    assert _requests(inst, 11) == _requests(inst, 11)


def test_step_feed_matches_solve():
    inst = generate(GenSpec(30, 60, 10, 4))
    o = ProbeOracle(inst)
    path, stats = solve(o, inst.observable(), seed=5)
    seq = _requests(inst, 5)
    assert seq[-1] == Done(path)
    assert [r.edge for r in seq[:-1]] == o.probe_sequence()


@settings(max_examples=150, deadline=None)
@given(instances(max_n=20), st.integers(0, 2**32))
def test_returns_true_path_and_respects_accounting(inst, seed):
    o = ProbeOracle(inst)
    path, stats = solve(o, inst.observable(), seed)
    assert path == true_ham_path(inst)
    assert o.probed_ledger() <= set(inst.truth_arcs())
    assert sorted(stats.insertion_order) == list(range(inst.n))
    assert stats.mispredicted_found <= mispredicted_count(inst)
    assert stats.probes == o.probes_used()
    certs = stats.type1_total + stats.type2_total
    # every round yields a certificate, a mispredicted edge, or an insertion
    assert certs + inst.n <= stats.iterations <= certs + inst.n + stats.mispredicted_found


@settings(max_examples=60, deadline=None)
@given(instances(max_n=15), st.integers(0, 2**32), st.integers(0, 2**32))
def test_insertion_order_is_seed_independent(inst, s1, s2):
    a = solve(ProbeOracle(inst), inst.observable(), s1, track_comparability=True)[1]
    b = solve(ProbeOracle(inst), inst.observable(), s2, track_comparability=True)[1]
    assert a.insertion_order == b.insertion_order
    assert a.comparability == b.comparability


def test_comparability_events_cover_all_pairs(chain3):
    _, stats = solve(ProbeOracle(chain3), chain3.observable(), track_comparability=True)
    assert stats.comparability == {(A, B): 2, (A, C): 3, (B, C): 3}


def test_certificate_validity(chain3):
    solver = RandomizedSolver(chain3.observable())
    st_ = solver.state
    c1 = Certificate(C, (B,))
    assert c1.kind == 1 and c1.valid(st_)
    st_.add_to_a(A)
    c2 = Certificate(C, (A, B))
    assert not c2.valid(st_)  # B outside A


def test_missing_active_vertex_is_reported(chain3, monkeypatch):
    solver = RandomizedSolver(chain3.observable())
    monkeypatch.setattr(Certificate, "valid", lambda self, st: True)
    solver.certificates[:] = [Certificate(v, (v,)) for v in range(3)]
    with pytest.raises(SolverInvariantError):
        drive(solver, ProbeOracle(chain3))


def test_probe_budget_n500():
    n, w = 500, 50
    bound = 40 * n * math.log(n) + 2 * w
    for seed in range(200):
        inst = generate(GenSpec(n, 3 * n, w, 2024 + seed))
        o = ProbeOracle(inst)
        path, _ = solve(o, inst.observable(), seed)
        assert o.probes_used() <= bound
        assert path == true_ham_path(inst)


TRIALS = int(os.environ.get("PROBESORT_CERT_TRIALS", "1000"))


def test_type1_certificates_per_vertex_n100():
    n = 100
    limit = 6 * math.log(n) + 6
    worst = 0
    for trial in range(TRIALS):
        inst = generate(GenSpec(n, 3 * n, trial % 30, 10_000 + trial // 10))
        _, stats = solve(ProbeOracle(inst), inst.observable(), trial)
        worst = max(worst, max(stats.type1))
    assert worst <= limit
