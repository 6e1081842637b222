"""Binding-layer smoke tests. The C++ suites own the algorithmic coverage;
these check that the Python surface exposes the same values, seeds, and
error types the core produces."""

import json

import pytest

import cubelab


def test_sample_roundtrip_and_determinism(tmp_path):
    s = cubelab.sample(6, 0.3, 12345)
    assert s.d == 6
    assert s.p == pytest.approx(0.3)
    assert s.seed == 12345
    assert s.vertex_count == 64
    assert s.edge_count == 192
    assert 0 < s.retained_count() < 192

    again = cubelab.sample(6, 0.3, 12345)
    assert again.retained_count() == s.retained_count()

    path = str(tmp_path / "sample.bin")
    s.save(path)
    loaded = cubelab.load_sample(path)
    assert loaded.d == s.d
    assert loaded.seed == s.seed
    assert loaded.retained_count() == s.retained_count()


def test_sample_rejects_bad_domain():
    with pytest.raises(ValueError):
        cubelab.sample(1, 0.5, 1)
    with pytest.raises(ValueError):
        cubelab.sample(4, 1.5, 1)


def test_component_labeling_accounts_for_every_vertex():
    s = cubelab.sample(8, 1.5 / 8, 7)
    labeling = cubelab.label_components(s)
    comps = labeling.components()
    assert sum(c.size for c in comps) == 256
    largest = labeling.largest
    assert largest.size == max(c.size for c in comps)
    members = labeling.members(largest.rep)
    assert len(members) == largest.size
    assert labeling.rep_of(members[0]) == largest.rep


def test_survival_oracles_match_fixed_points():
    assert cubelab.poisson_survival(0.5).gamma == 0.0
    g = cubelab.binomial_survival(16, 1.5 / 16)
    assert g.gamma == pytest.approx(0.610612310111, abs=1e-9)
    assert g.residual <= 1e-12


def test_cycle_census_and_certificates():
    full_q3 = cubelab.sample(3, 1.0, 1)
    census = cubelab.census_short_cycles(full_q3, 8)
    assert census.counts[4] == 6
    assert census.counts[6] == 16
    assert census.counts[8] == 6
    assert census.total() == 28
    assert cubelab.host_four_cycles(3) == 6

    cert = cubelab.long_cycle_search(full_q3, restarts=10)
    assert cert is not None
    assert cert.length() >= 6
    cubelab.check_cycle(cert, full_q3)

    text = cubelab.cycle_to_json(cert)
    back = cubelab.cycle_from_json(text)
    assert back.vertices == cert.vertices
    with pytest.raises(ValueError):
        cubelab.check_cycle(cubelab.CycleCertificate([0, 1, 2]), full_q3)


def test_minor_build_and_validate():
    s = cubelab.sample(8, 2.0 / 8, 11)
    cover = cubelab.piece_cover(s, 16, 4)
    cert = cubelab.build_minor(s, cover, 3)
    report = cubelab.validate_minor(cert, s)
    assert report.pass_, report.violation
    assert cert.t == len(cert.branch_sets)

    back = cubelab.minor_from_json(cubelab.minor_to_json(cert))
    assert back.branch_sets == cert.branch_sets


def test_expansion_probes_agree_with_reported_set():
    s = cubelab.sample(8, 2.0 / 8, 3)
    cert = cubelab.worst_cut_heuristic(s, 0.1)
    assert cert.set_size == len(cert.set)
    recount = cubelab.cut_report(s, cert.set)
    assert recount.edge_boundary_sample == cert.edge_boundary
    assert cert.beta_edge > 0

    bound = cubelab.iso_matching_bound(6, 7)
    assert bound.k == 1
    assert bound.bound == pytest.approx(6.0)
    check = cubelab.verify_iso_matching(6, [0, 1, 2, 4, 8, 16, 32])
    assert check.pass_
    assert check.matching_size >= check.bound.bound


def test_genus_bound_fields():
    full_q4 = cubelab.sample(4, 1.0, 1)
    g = cubelab.genus_lower_bound(full_q4, 0, 4)
    assert g.vertices == 16
    assert g.edges == 32
    assert g.excess == 16
    assert g.lower_bound <= 1
    assert cubelab.default_face_threshold(16) == 4


def test_harness_runs_config_and_matches_schema_fields():
    config = {
        "kind": "phase_portrait",
        "d": [5, 6],
        "epsilon": [0.5, 1.0],
        "trials": 2,
        "seed": "42",
    }
    report = json.loads(cubelab.run_experiment_json(json.dumps(config)))
    assert report["kind"] == "phase_portrait"
    assert len(report["trials"]) == 8
    assert report["config"]["seed"] == "42"

    csv_text = cubelab.run_experiment_csv(json.dumps(config))
    header = csv_text.splitlines()[0]
    assert header.startswith("record,stat,")
    assert len(csv_text.splitlines()) == 1 + 8 + 4 * 9

    schema = json.loads(cubelab.result_schema_json())
    assert schema["properties"]["kind"]

    with pytest.raises(ValueError):
        cubelab.run_experiment_json('{"kind": "phase_portrait"}')


def test_seed_derivation_matches_core():
    assert cubelab.mix64(0) == 0
    assert cubelab.trial_seed(42, 0, 1) != cubelab.trial_seed(42, 1, 1)
