import numpy as np
import pytest

from gme import figures
from gme.io import read_csv


def _table(files, name, tmp_path):
    p = tmp_path / name
    p.write_text(files[name])
    return read_csv(p)


def test_fig1_anchors(tmp_path):
    head, d = _table(figures.fig1(101), "fig1.csv", tmp_path)
    assert head == ["s", "E_pure", "E_mixed"]
    assert abs(d[0, 1] - 5 / 9) < 1e-11 and abs(d[-1, 1] - 5 / 9) < 1e-11
    assert abs(d[50, 1] - 0.25) < 1e-11
    assert np.max(np.abs(d[:, 1] - d[:, 2])) < 1e-11


def test_fig2_files(tmp_path):
    files = figures.fig2(11, samples=5)
    assert set(files) == {"fig2.csv", "fig2_samples.csv"}
    head, d = _table(files, "fig2.csv", tmp_path)
    assert head == ["s", "E_phi0", "E_phiPi"]
    assert np.all(d[:, 2] >= d[:, 1] - 1e-9)
    head, d = _table(files, "fig2_samples.csv", tmp_path)
    assert head == ["s", "phi", "E"] and d.shape == (5, 3)


def test_fig3_and_curves(tmp_path):
    _, d = _table(figures.fig3(201), "fig3.csv", tmp_path)
    assert np.all(d[:, 2] <= d[:, 1] + 1e-11)
    head, d = _table(figures.fig7(21), "fig7.csv", tmp_path)
    assert head[0] == "r" and len(head) == 9 and head[1] == "E_x0.8"
    assert np.allclose(d[:, -1], 0.5, atol=1e-11)  # x = 1 column
    head, d = _table(figures.fig8(21), "fig8.csv", tmp_path)
    assert head == ["x", "E_r0", "E_r0.1", "E_r0.2", "E_r0.3", "E_r0.5"]
    _, d = _table(figures.fig5(21), "fig5.csv", tmp_path)
    assert d.shape == (21, 2)


def test_surface_figures(tmp_path):
    head, d = _table(figures.fig9(101), "fig9.csv", tmp_path)
    assert head == ["x", "y", "E_rho"]
    at = {(round(x, 9), round(y, 9)): v for x, y, v in d}
    assert abs(at[(1.0, 0.0)] - 0.5) < 1e-11 and abs(at[(0.0, 1.0)] - 5 / 9) < 1e-11
    head, d = _table(figures.fig10(101), "fig10.csv", tmp_path)
    assert head == ["x", "y", "N"] and d.shape[0] == 101 * 102 // 2
    head, d = _table(figures.fig6(11), "fig6.csv", tmp_path)
    assert head == ["x", "r", "E_psi"] and d.shape[0] == 121
    head, d = _table(figures.fig4(101), "fig4.csv", tmp_path)
    assert d.shape[0] == 101 * 102 // 2


def test_unknown_figure():
    with pytest.raises(KeyError):
        figures.figure(11)
