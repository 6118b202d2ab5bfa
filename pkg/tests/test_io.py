import json
import math

import numpy as np
import pytest

from gme import io
from gme import states as st
from gme.errors import BadShape


def test_pure_roundtrip_is_bit_exact(tmp_path, rng):
    psi = st.random_pure((2, 3, 2), rng)
    io.save_state(psi, tmp_path / "p.json")
    back = io.load_state(tmp_path / "p.json")
    assert back.dims == psi.dims and np.array_equal(back.amplitudes, psi.amplitudes)


def test_density_roundtrip_is_bit_exact(tmp_path):
    rho = st.ghzw_mix(0.3, 0.45)
    io.save_state(rho, tmp_path / "r.json")
    back = io.load_state(tmp_path / "r.json")
    assert np.array_equal(back.matrix, rho.matrix)


def test_file_layout(tmp_path):
    io.save_state(st.ghz(2), tmp_path / "g.json")
    d = json.loads((tmp_path / "g.json").read_text())
    assert d["dims"] == [2, 2]
    assert len(d["amplitudes"]) == 4 and d["amplitudes"][3] == [1 / math.sqrt(2), 0.0]
    assert format(1 / math.sqrt(2), ".17g") in (tmp_path / "g.json").read_text()


def test_unnormalized_file_is_normalized():
    psi = io.state_from_dict({"dims": [2], "amplitudes": [[3, 0], [0, 4]]})
    assert np.allclose(psi.amplitudes, [0.6, 0.8j])


def test_bad_files():
    with pytest.raises(BadShape):
        io.state_from_dict({"dims": [2], "amplitudes": [[1, 0, 0], [0, 0, 0]]})
    with pytest.raises(BadShape):
        io.state_from_dict({"dims": [2]})


def test_csv_helpers(tmp_path):
    text = io.csv_text(["a", "b"], [(1.0, 1 / 3), (2.0, 1e-20)])
    assert text == "a,b\n1,0.333333333333\n2,1e-20\n"
    (tmp_path / "t.csv").write_text(text)
    header, data = io.read_csv(tmp_path / "t.csv")
    assert header == ["a", "b"] and data.shape == (2, 2)
