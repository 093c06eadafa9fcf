import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from torsemi import io
from torsemi.corpus import exhaustive_semirings, random_presentation
from torsemi.monoid import AffineMonoid, canonical_decomposition, normalize

gens2 = st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)).filter(any), min_size=1, max_size=4)


@given(gens2)
def test_monoid_text_and_json_round_trip(gens):
    m = AffineMonoid.from_generators(gens, 2)
    assert io.parse_monoid_text(io.monoid_text(m)) == m
    assert io.monoid_from_json(io.monoid_json(m)) == m


def test_monoid_comments_and_string_vectors():
    m = io.parse_monoid_text("# wedge\nn 2\n1 0  # ray\n1 2\n")
    assert m.generators == ((1, 0), (1, 2))
    assert io.monoid_from_json({"rank": 2, "generators": [["1", "0"], ["1", "2"]]}) == m


@pytest.mark.parametrize(
    "text, line, msg",
    [("n x\n", 1, "expected 'n <rank>'"), ("n 2\n1 2 3\n", 2, "expected 2"), ("n 2\n1 -1\n", 2, "nonnegative"), ("n 2\n\n1 a\n", 3, "integers")],
)
def test_monoid_parse_errors_name_the_line(tmp_path, text, line, msg):
    p = tmp_path / "bad.monoid"
    p.write_text(text)
    with pytest.raises(io.ParseError, match=msg) as exc:
        io.read_monoid(p)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"{p}:{line}:")


def test_missing_file():
    with pytest.raises(io.ParseError, match="cannot read"):
        io.read_monoid("/nonexistent/file.monoid")


def test_ideal_round_trip(tmp_path, data_dir):
    ideal = io.read_ideal(data_dir / "wedge.ideal")
    (tmp_path / "wedge.monoid").write_text((data_dir / "wedge.monoid").read_text())
    io.write_ideal(ideal, tmp_path / "copy.ideal", "wedge.monoid")
    assert io.read_ideal(tmp_path / "copy.ideal") == ideal


@pytest.mark.parametrize("s", exhaustive_semirings(2))
def test_semiring_round_trip(s):
    assert io.semiring_from_json(io.semiring_json(s)) == s


def test_semiring_errors():
    with pytest.raises(io.ParseError, match="order, add and mul"):
        io.semiring_from_json({"order": 1})
    with pytest.raises(io.ParseError, match="2 x 2"):
        io.semiring_from_json({"order": 2, "add": [[0]], "mul": [[0]]})
    with pytest.raises(io.ParseError, match="commutative"):
        io.semiring_from_json({"order": 2, "add": [[0, 1], [0, 1]], "mul": [[0, 0], [0, 0]]})


def test_bad_json_names_line(tmp_path):
    p = tmp_path / "s.json"
    p.write_text('{"order": 1,\n "add": [[0]\n}')
    with pytest.raises(io.ParseError) as exc:
        io.read_semiring(p)
    assert exc.value.line == 3


@given(st.integers(0, 10**6))
def test_presentation_round_trip(seed):
    p = random_presentation(np.random.default_rng(seed))
    assert io.presentation_from_json(io.presentation_json(p)) == p


def test_decomposition_json_shape(data_dir):
    d = canonical_decomposition(normalize(io.read_monoid(data_dir / "wedge.monoid")))
    doc = io.decomposition_json(d)
    assert [p["dim"] for p in doc["pieces"]] == [0, 1, 1, 2]
    assert doc["pieces"][-1]["dtilde_basis"] == [[0, 1], [1, 0]]
