"""JSON parsing of model and span documents, with located errors."""

from __future__ import annotations

from pathlib import Path

import pytest

from amplehk.errors import ParseError, SchemaError
from amplehk.exact_linalg import IntMatrix
from amplehk.modelio import (
    load_json,
    parse_model,
    parse_model_file,
    parse_span,
    parse_span_document,
)
from amplehk.models import (
    BratteliModel,
    CantorZModel,
    FiniteGroupoid,
    ProductModel,
    SftModel,
    shape_violations,
)

MODELS_DIR = Path(__file__).resolve().parent.parent / "models"


def M(rows):
    return IntMatrix.from_rows(rows)


class TestLoadJson:
    def test_good(self):
        assert load_json('{"a": 1}') == {"a": 1}

    def test_location_reported(self):
        with pytest.raises(ParseError) as exc:
            load_json('{\n  "a": }')
        assert exc.value.line == 2
        assert exc.value.column is not None
        assert "line 2" in str(exc.value)


class TestParseModel:
    def test_sft(self):
        model = parse_model({"model": "sft", "matrix": [[1, 1], [1, 0]]})
        assert model == SftModel(M([[1, 1], [1, 0]]))

    def test_af(self):
        model = parse_model(
            {"model": "af", "level_sizes": [1, 2], "incidences": [[[1], [1]]], "tail": [[1, 1], [1, 1]]}
        )
        assert model == BratteliModel((1, 2), (M([[1], [1]]),), M([[1, 1], [1, 1]]))

    def test_cantor_z_with_default_depth(self):
        model = parse_model(
            {"model": "cantor_z", "diagram": {"level_sizes": [1], "incidences": [], "tail": [[2]]}}
        )
        assert isinstance(model, CantorZModel)
        assert model.telescope_depth == 3

    def test_finite(self):
        doc = {
            "model": "finite",
            "units": ["x"],
            "arrows": [
                {"id": "e", "source": "x", "target": "x"},
                {"id": "g", "source": "x", "target": "x"},
            ],
            "compose": [["e", "e", "e"], ["e", "g", "g"], ["g", "e", "g"], ["g", "g", "e"]],
            "inverse": {"e": "e", "g": "g"},
        }
        model = parse_model(doc)
        assert isinstance(model, FiniteGroupoid)
        assert model.units == ("x",)
        assert model.compose[("g", "g")] == "e"
        assert shape_violations(model) == []

    def test_product(self):
        doc = {
            "model": "product",
            "factors": [
                {"model": "sft", "matrix": [[1]]},
                {"model": "sft", "matrix": [[2]]},
            ],
        }
        model = parse_model(doc)
        assert model == ProductModel(SftModel(M([[1]])), SftModel(M([[2]])))

    def test_bundled_documents_parse_cleanly(self):
        for path in sorted(MODELS_DIR.glob("*.json")):
            if path.name == "span_pair.json":
                continue
            model = parse_model_file(path)
            assert shape_violations(model) == []


class TestSchemaPointers:
    def test_top_level_must_be_object(self):
        with pytest.raises(SchemaError) as exc:
            parse_model([1, 2])
        assert exc.value.pointer == "/"

    def test_missing_model_tag(self):
        with pytest.raises(SchemaError) as exc:
            parse_model({})
        assert exc.value.pointer == "/model"

    def test_unknown_kind(self):
        with pytest.raises(SchemaError) as exc:
            parse_model({"model": "etale"})
        assert exc.value.pointer == "/model"
        assert "etale" in str(exc.value)

    def test_bool_is_not_an_integer(self):
        with pytest.raises(SchemaError) as exc:
            parse_model({"model": "sft", "matrix": [[True]]})
        assert exc.value.pointer == "/matrix/0/0"

    def test_ragged_matrix(self):
        with pytest.raises(SchemaError) as exc:
            parse_model({"model": "sft", "matrix": [[1, 2], [3]]})
        assert exc.value.pointer == "/matrix/1"

    def test_level_sizes_are_integers(self):
        with pytest.raises(SchemaError) as exc:
            parse_model({"model": "af", "level_sizes": ["one"], "incidences": [], "tail": [[1]]})
        assert exc.value.pointer == "/level_sizes/0"

    def test_arrow_entries_are_objects(self):
        with pytest.raises(SchemaError) as exc:
            parse_model(
                {"model": "finite", "units": [], "arrows": ["g"], "compose": [], "inverse": {}}
            )
        assert exc.value.pointer == "/arrows/0"

    def test_compose_entries_are_triples(self):
        with pytest.raises(SchemaError) as exc:
            parse_model(
                {
                    "model": "finite",
                    "units": ["x"],
                    "arrows": [{"id": "e", "source": "x", "target": "x"}],
                    "compose": [["e", "e"]],
                    "inverse": {},
                }
            )
        assert exc.value.pointer == "/compose/0"

    def test_product_arity(self):
        with pytest.raises(SchemaError) as exc:
            parse_model({"model": "product", "factors": [{"model": "sft", "matrix": [[1]]}]})
        assert exc.value.pointer == "/factors"

    def test_nested_pointer_reaches_into_factors(self):
        doc = {
            "model": "product",
            "factors": [
                {"model": "sft", "matrix": [[1]]},
                {"model": "sft", "matrix": [[1, "x"]]},
            ],
        }
        with pytest.raises(SchemaError) as exc:
            parse_model(doc)
        assert exc.value.pointer == "/factors/1/matrix/0/1"

    def test_telescope_depth_type(self):
        doc = {
            "model": "cantor_z",
            "diagram": {"level_sizes": [1], "incidences": [], "tail": [[2]]},
            "telescope_depth": True,
        }
        with pytest.raises(SchemaError) as exc:
            parse_model(doc)
        assert exc.value.pointer == "/telescope_depth"


class TestSpanDocuments:
    def good_span(self) -> dict:
        return {
            "left": ["x"],
            "mid": ["m"],
            "right": ["y"],
            "left_leg": {"m": "x"},
            "right_leg": {"m": "y"},
        }

    def test_parse_span(self):
        span = parse_span(self.good_span())
        assert span.mid == ("m",)
        assert span.left_leg["m"] == "x"

    def test_invalid_span_becomes_schema_error(self):
        doc = self.good_span()
        del doc["left_leg"]["m"]
        with pytest.raises(SchemaError) as exc:
            parse_span(doc)
        assert "not a valid span" in str(exc.value)

    def test_single_span_document(self):
        kind, spans = parse_span_document({"span": self.good_span()})
        assert kind == "span"
        assert len(spans) == 1

    def test_compose_document(self):
        kind, spans = parse_span_document({"compose": [self.good_span(), self.good_span()]})
        assert kind == "compose"
        assert len(spans) == 2

    def test_compose_arity(self):
        with pytest.raises(SchemaError) as exc:
            parse_span_document({"compose": [self.good_span()]})
        assert exc.value.pointer == "/compose"

    def test_unrecognized_document(self):
        with pytest.raises(SchemaError):
            parse_span_document({"matrices": []})

    def test_bundled_span_document(self):
        kind, spans = parse_span_document(load_json((MODELS_DIR / "span_pair.json").read_text()))
        assert kind == "compose"
        assert spans[0].right == spans[1].left
