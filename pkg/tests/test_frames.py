"""Frame file parsing/writing and the rectangular grid generators."""

import json

import pytest

from framecycles.frames import (
    FORMAT_VERSION,
    HEAVY_SECTION,
    LIGHT_SECTION,
    ParseError,
    generate_grid,
    generate_grid3d,
    parse_load_case,
    parse_model,
    write_load_case,
    write_model,
)
from framecycles.model import ModelError


def valid_doc():
    return {
        "format_version": FORMAT_VERSION,
        "dimensionality": 2,
        "sections": {"s": {"A": 0.0097, "I": 0.0001961, "E": 2.1e7}},
        "nodes": [
            {"id": 1, "coords": [0.0, 0.0]},
            {"id": 2, "coords": [0.0, 3.0]},
            {"id": 3, "coords": [3.0, 3.0]},
            {"id": 4, "coords": [3.0, 0.0]},
        ],
        "members": [
            {"id": 1, "a": 1, "b": 2, "section": "s"},
            {"id": 2, "a": 2, "b": 3, "section": "s"},
            {"id": 3, "a": 3, "b": 4, "section": "s"},
        ],
        "supports": [{"node": 1, "kind": "fixed"}, {"node": 4, "kind": "fixed"}],
    }


def write_doc(tmp_path, doc, name="frame.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return path


class TestParseModel:
    def test_valid_file(self, tmp_path):
        model = parse_model(write_doc(tmp_path, valid_doc()))
        assert len(model.nodes) == 4
        assert len(model.members) == 3
        assert list(model.supports) == [1, 4]
        assert model.ndim == 2

    def test_round_trip(self, tmp_path):
        original = generate_grid(2, 3, pattern="checker")
        path = tmp_path / "grid.json"
        write_model(original, path)
        restored = parse_model(path)
        assert restored.nodes == original.nodes
        assert restored.members == original.members
        assert restored.supports == original.supports
        assert restored.sections == original.sections

    def test_3d_round_trip(self, tmp_path):
        original = generate_grid3d(2, 1, 1)
        path = tmp_path / "grid3d.json"
        write_model(original, path)
        restored = parse_model(path)
        assert restored.ndim == 3
        assert restored.nodes == original.nodes

    def test_not_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{nope")
        with pytest.raises(ParseError, match="not valid JSON"):
            parse_model(path)

    def test_top_level_must_be_object(self, tmp_path):
        path = tmp_path / "list.json"
        path.write_text("[]")
        with pytest.raises(ParseError, match="top level"):
            parse_model(path)

    def test_bad_format_version(self, tmp_path):
        doc = valid_doc()
        doc["format_version"] = 99
        with pytest.raises(ParseError, match="format_version 99"):
            parse_model(write_doc(tmp_path, doc))

    def test_missing_field_is_named(self, tmp_path):
        doc = valid_doc()
        del doc["members"][1]["section"]
        with pytest.raises(ParseError, match="member 2: missing field 'section'"):
            parse_model(write_doc(tmp_path, doc))

    def test_bad_section_property_is_named(self, tmp_path):
        doc = valid_doc()
        doc["sections"]["s"]["A"] = -1.0
        with pytest.raises(ParseError, match="section 's'"):
            parse_model(write_doc(tmp_path, doc))

    def test_unsupported_support_kind(self, tmp_path):
        doc = valid_doc()
        doc["supports"][0]["kind"] = "pinned"
        with pytest.raises(ParseError, match="unsupported kind 'pinned'"):
            parse_model(write_doc(tmp_path, doc))

    def test_model_validation_wrapped(self, tmp_path):
        doc = valid_doc()
        doc["members"].append({"id": 4, "a": 1, "b": 9, "section": "s"})
        with pytest.raises(ParseError, match="missing node 9"):
            parse_model(write_doc(tmp_path, doc))


class TestLoadCaseFiles:
    def test_round_trip(self, tmp_path):
        loads = [(5, 1.5, -2.0, 0.25), (7, 0.0, 0.0, 3.0)]
        path = tmp_path / "loads.json"
        write_load_case(loads, path)
        assert parse_load_case(path) == loads

    def test_missing_components_default_to_zero(self, tmp_path):
        path = tmp_path / "loads.json"
        path.write_text(json.dumps({"format_version": 1, "loads": [{"node": 3, "fy": -1.0}]}))
        assert parse_load_case(path) == [(3, 0.0, -1.0, 0.0)]

    def test_bad_version(self, tmp_path):
        path = tmp_path / "loads.json"
        path.write_text(json.dumps({"format_version": 2, "loads": []}))
        with pytest.raises(ParseError, match="format_version"):
            parse_load_case(path)

    def test_load_needs_node(self, tmp_path):
        path = tmp_path / "loads.json"
        path.write_text(json.dumps({"format_version": 1, "loads": [{"fx": 1.0}]}))
        with pytest.raises(ParseError, match="load: missing field 'node'"):
            parse_load_case(path)


class TestGenerateGrid:
    def test_counts(self):
        model = generate_grid(3, 4)
        assert len(model.nodes) == 4 * 5
        assert len(model.members) == 3 * (5 + 4)
        assert len(model.supports) == 5

    def test_geometry(self):
        model = generate_grid(1, 1, bay=4.0, height=2.5)
        coords = {n.id: n.coords for n in model.nodes}
        assert coords[1] == (0.0, 0.0)
        assert coords[4] == (4.0, 2.5)

    def test_member_numbering_columns_before_beams(self):
        model = generate_grid(2, 2)
        sections_by_id = {m.id: (m.a, m.b) for m in model.members}
        # story 1: columns 1-3 vertical, beams 4-5 horizontal
        assert sections_by_id[1] == (1, 4)
        assert sections_by_id[4] == (4, 5)

    @pytest.mark.parametrize(
        "pattern,beam_section,column_section",
        [
            ("homogeneous", "heavy", "heavy"),
            ("weak-beams", "light", "heavy"),
            ("weak-columns", "heavy", "light"),
        ],
    )
    def test_uniform_patterns(self, pattern, beam_section, column_section):
        model = generate_grid(2, 2, pattern=pattern)
        for m in model.members:
            ya = model.node(m.a).coords[1]
            yb = model.node(m.b).coords[1]
            expected = column_section if ya != yb else beam_section
            assert m.section == expected

    def test_checker_mixes_sections(self):
        model = generate_grid(2, 3, pattern="checker")
        used = {m.section for m in model.members}
        assert used == {"light", "heavy"}

    def test_section_values(self):
        model = generate_grid(1, 1, pattern="weak-beams")
        assert model.sections["heavy"] == HEAVY_SECTION
        assert model.sections["light"] == LIGHT_SECTION

    def test_rejects_degenerate_sizes(self):
        with pytest.raises(ModelError, match=">= 1"):
            generate_grid(0, 2)
        with pytest.raises(ModelError, match="pattern"):
            generate_grid(1, 1, pattern="striped")


class TestGenerateGrid3d:
    def test_counts(self):
        model = generate_grid3d(2, 1, 1)
        assert len(model.nodes) == 3 * 4
        # per story: 4 columns + 2 beams in x + 2 beams in y
        assert len(model.members) == 2 * 8
        assert len(model.supports) == 4
        assert model.ndim == 3

    def test_coordinates_are_3d(self):
        model = generate_grid3d(1, 1, 1)
        assert all(len(n.coords) == 3 for n in model.nodes)

    def test_rejects_degenerate_sizes(self):
        with pytest.raises(ModelError, match=">= 1"):
            generate_grid3d(1, 0, 1)
