import numpy as np
import pytest

import hclab


def test_commands_listed():
    assert len(hclab.commands()) == 14
    assert "saan-group" in hclab.commands()


def test_salas_run_matches_cli_contract():
    report, code = hclab.run("salas", {"weights": "genshi-hc", "c": 2, "m0": 3})
    assert code == 0
    assert report["schema_version"] == hclab.SCHEMA_VERSION
    assert report["report"]["verdict"] == "satisfied"


def test_violated_verdict_exit_code():
    _, code = hclab.run("salas", {"weights": "constant", "c": 1})
    assert code == 2


def test_unknown_parameter_raises():
    with pytest.raises(hclab.InputError):
        hclab.run("detan", {"bogus": 1})


def test_det_mnk_two_routes():
    rec, direct = hclab.det_mnk(2, 1)
    assert rec == direct == "1/6"


def test_kernel_and_image_of_shift():
    s = np.diag(np.ones(3, dtype=complex), k=1)
    kernel, image = hclab.kernel_and_image(s)
    assert kernel.shape == (4, 1)
    assert image.shape == (4, 3)
    assert abs(abs(kernel[0, 0]) - 1.0) < 1e-12


def test_exp_nilpotent_closed_form():
    s = np.array([[0, 1], [0, 0]], dtype=complex)
    e = hclab.exp_nilpotent(s, 1.5 - 0.5j)
    assert np.allclose(e, [[1, 1.5 - 0.5j], [0, 1]])
    with pytest.raises(hclab.DomainError):
        hclab.exp_nilpotent(np.eye(2, dtype=complex), 1.0)


def test_ker_dagger_dimension():
    s = np.diag(np.ones(3, dtype=complex), k=1)
    assert hclab.ker_dagger(s).shape == (4, 2)


def test_goldens_are_deterministic():
    assert hclab.emit_goldens("grading") == hclab.emit_goldens("grading")


def test_csv_render():
    text, code = hclab.render("volterra", {"ngrid": 256, "n-max": 4}, "csv")
    assert code == 0
    assert text.splitlines()[0].startswith("n,")
