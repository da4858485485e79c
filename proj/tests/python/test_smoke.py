"""Python-side smoke tests for the compiled module."""

import math

import pytest

import mtccoset as mtc


def test_su2_generator_and_validation():
    md = mtc.su2_level(2)
    assert md.rank == 3
    assert md.labels == ["0", "1", "2"]
    report = mtc.validate(md)
    assert report["pass"] is True
    dims, total = mtc.quantum_dims(md)
    assert total == pytest.approx(2.0, abs=1e-12)
    assert dims[1] == pytest.approx(math.sqrt(2.0), abs=1e-12)
    assert md.twists[2] == pytest.approx(-1.0 + 0.0j, abs=1e-12)


def test_verlinde_fusion():
    n = mtc.verlinde(mtc.su2_level(2))
    assert n[1][1][0] == 1
    assert n[1][1][2] == 1
    assert n[1][1][1] == 0


def test_degenerate_pointed_form_raises():
    with pytest.raises(mtc.StructuralError):
        mtc.pointed_cyclic(4, 2)


def test_ising_coset_pipeline():
    ambient = mtc.deligne_product(mtc.su2_level(1), mtc.su2_level(1))
    solutions = mtc.solve_branching(mtc.su2_level(2), mtc.minimal_model(3, 4), ambient, bound=2)
    assert len(solutions) == 1
    cs = solutions[0]
    assert mtc.kw_set(cs) == [0, 2]
    assert mtc.s_covariance_residual(cs) < 1e-10
    assert mtc.b_coeff(cs, 0, 0) == pytest.approx(0.5 + 0j, abs=1e-12)
    assert mtc.field_orbits(cs) == [[0, 3], [1, 2]]

    report = mtc.analyze(cs)
    assert report["pass"] is True
    names = [s["name"] for s in report["sections"]]
    assert "Kac-Wakimoto hypothesis" in names
    assert "spectral verification" in names
    spectral = next(s for s in report["sections"] if s["name"] == "spectral verification")
    assert spectral["status"] == "pass"


def test_roundtrip(tmp_path):
    md = mtc.minimal_model(4, 5)
    path = str(tmp_path / "mm45.json")
    mtc.save_modular_data(md, path)
    back = mtc.load_modular_data(path)
    assert back.labels == md.labels
    assert back.s == md.s


def test_spectral_verify_dict():
    ambient = mtc.deligne_product(mtc.su2_level(1), mtc.su2_level(1))
    cs = mtc.solve_branching(mtc.su2_level(2), mtc.minimal_model(3, 4), ambient)[0]
    report = mtc.spectral_verify(cs)
    assert report["pass"] is True
