"""Tests for code files and word files."""

import math

import pytest

from lrckit.code_model import (
    LinearCode,
    field_for_order,
    locality_profile,
    min_distance,
)
from lrckit.codefile import (
    format_word,
    load_code,
    load_word,
    parse_code,
    parse_word,
    save_code,
    serialize_code,
    verify_metadata,
)
from lrckit.constructions import build_canonical_d4, build_pyramid
from lrckit.exceptions import CodeFileError, IntegrityError
from lrckit.field_algebra import make_field

SMALL = """\
version 1
field 2 2 1 1 1
k 2
n 3
# a comment
meta construction "example"
columns
1 0
0 1
1 1
"""


class TestSerialize:
    """Test writing and reading the text format."""

    def test_layout(self):
        text = serialize_code(build_pyramid(4, 2, 4, 7))
        lines = text.splitlines()
        assert lines[:4] == ["version 1", "field 7 1 1 0", "k 4", "n 8"]
        assert 'meta construction "pyramid"' in lines
        assert "meta systematic_info [0,1,2,3]" in lines
        assert lines[-9] == "columns"

    def test_reload_keeps_code_and_metadata(self, tmp_path):
        code = build_canonical_d4(4, 2, 5)
        path = tmp_path / "d4.lrc"
        save_code(code, path)
        loaded = load_code(path)
        assert loaded == code
        assert loaded.systematic_info == (0, 1, 2, 3)
        assert loaded.metadata["params"] == {"k": 4, "r": 2, "q": 5}
        assert loaded.metadata["alphas"] == code.metadata["alphas"]

    def test_extension_field(self):
        code = parse_code(SMALL)
        assert code.field == make_field(2, 2)
        assert code.points == ((1, 0), (0, 1), (1, 1))
        assert code.metadata == {"construction": "example"}
        assert code.systematic_info is None

    def test_infinite_locality_round_trip(self):
        identity = LinearCode(field_for_order(3), [(1, 0), (0, 1)])
        tagged = identity.with_metadata(localities=[math.inf, math.inf])
        text = serialize_code(tagged)
        assert 'meta localities ["inf","inf"]' in text
        assert parse_code(text).metadata["localities"] == [math.inf, math.inf]


class TestParseErrors:
    @pytest.mark.parametrize(
        "text, fragment",
        [
            ("", "missing 'version'"),
            ("version 2\n", "unsupported format version"),
            ("version 1\nfield 4 1 1 0\n", "not prime"),
            ("version 1\nfield 2 2 1 0 1\n", "reducible"),
            ("version 1\nfield 2 1 1 0\nk x\n", "expected integers"),
            ("version 1\nfield 2 1 1 0\nk 1\nn 2\nmeta seed {\n", "bad JSON"),
            (
                "version 1\nfield 2 1 1 0\nk 1\nn 2\nmeta distance 0\ncolumns\n1\n1\n",
                "invalid metadata",
            ),
            ("version 1\nfield 2 1 1 0\nk 2\nn 2\ncolumns\n1 0\n1\n", "expected 2"),
            ("version 1\nfield 2 1 1 0\nk 1\nn 3\ncolumns\n1\n1\n", "expected n = 3"),
            ("version 1\nfield 2 1 1 0\nk 2\nn 2\ncolumns\n1 0\n1 0\n", "dimension"),
        ],
    )
    def test_rejected(self, text, fragment):
        with pytest.raises(CodeFileError, match=fragment):
            parse_code(text)

    def test_line_numbers(self):
        with pytest.raises(CodeFileError) as info:
            parse_code("version 1\nfield 2 1 1 0\nk 1\nn 1\ncolumns\nz\n")
        assert info.value.line == 6

    def test_missing_file(self, tmp_path):
        with pytest.raises(CodeFileError):
            load_code(tmp_path / "absent.lrc")


class TestVerifyMetadata:
    def test_correct_metadata(self):
        code = build_pyramid(4, 2, 4, 7)
        profile = locality_profile(code)
        tagged = code.with_metadata(
            distance=min_distance(code), localities=list(profile.localities)
        )
        verify_metadata(tagged)

    def test_stale_distance(self, tmp_path):
        path = tmp_path / "stale.lrc"
        save_code(build_pyramid(4, 2, 4, 7).with_metadata(distance=5), path)
        load_code(path)
        with pytest.raises(IntegrityError, match="distance"):
            load_code(path, verify=True)

    def test_stale_localities(self):
        code = build_pyramid(4, 2, 4, 7).with_metadata(localities=[1] * 8)
        with pytest.raises(IntegrityError) as info:
            verify_metadata(code)
        assert info.value.positions == list(range(8))


class TestWords:
    def test_parse(self):
        assert parse_word("1 ? 3\n") == [1, None, 3]

    def test_format(self):
        assert format_word([1, None, 3]) == "1 ? 3"

    @pytest.mark.parametrize("text", ["", "1 x 3", "   "])
    def test_rejected(self, text):
        with pytest.raises(CodeFileError):
            parse_word(text)

    def test_load(self, tmp_path):
        path = tmp_path / "word.txt"
        path.write_text("0 ? ?\n")
        assert load_word(path) == [0, None, None]
