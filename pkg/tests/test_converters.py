#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""文件格式转换器测试"""

import json
from fractions import Fraction

import pytest

from app.models.converters import (
    ConverterFactory, DObjectJsonConverter, ObjectStoreConverter, QuiverJsonConverter, QuiverTextConverter,
    RepresentationJsonConverter, RepresentationTextConverter, dumps, jsonable,
)
from app.models.decomposition import is_isomorphic
from app.models.derived import iso_test
from app.models.quiver import Quiver
from app.utils.errors import CyclicQuiverError, ParseError
from tests.helpers import module, obj


def test_quiver_text_format():
    quiver = QuiverTextConverter().loads("# Kronecker\nvertices 2\narrow 1 2\narrow 1 2  # 第二条\n")
    assert quiver == Quiver.kronecker()
    assert QuiverTextConverter().dumps(quiver) == "vertices 2\narrow 1 2\narrow 1 2\n"


@pytest.mark.parametrize("text", ["arrow 1 2\n", "vertices two\n", "vertices 2\nedge 1 2\n", ""])
def test_quiver_text_errors(text):
    with pytest.raises(ParseError) as info:
        QuiverTextConverter().loads(text)
    assert info.value.exit_code == 2


def test_cyclic_quiver_file_is_a_precondition_failure():
    with pytest.raises(CyclicQuiverError):
        QuiverTextConverter().loads("vertices 2\narrow 1 2\narrow 2 1\n")


def test_quiver_json_format():
    quiver = QuiverJsonConverter().loads('{"vertices": 3, "arrows": [[1, 2], [3, 2]]}')
    assert quiver.arrows == ((1, 2), (3, 2))
    assert json.loads(QuiverJsonConverter().dumps(quiver)) == {"vertices": 3, "arrows": [[1, 2], [3, 2]]}
    with pytest.raises(ParseError):
        QuiverJsonConverter().loads('{"arrows": []}')
    with pytest.raises(ParseError):
        QuiverJsonConverter().loads('{"vertices": 2,')


def test_representation_json_with_fractions(a2, qq, f101):
    text = '{"dims": [1, 1], "maps": [[["2/3"]]]}'
    over_q = RepresentationJsonConverter(a2, qq).loads(text)
    assert qq.to_python_matrix(over_q.maps[0]) == [[Fraction(2, 3)]]
    over_f101 = RepresentationJsonConverter(a2, f101).loads(text)
    assert is_isomorphic(over_f101, module(a2, f101, "P", 1))
    assert json.loads(RepresentationJsonConverter(a2, qq).dumps(over_q))["maps"] == [[["2/3"]]]


def test_representation_json_errors(a2, f101):
    converter = RepresentationJsonConverter(a2, f101)
    with pytest.raises(ParseError):
        converter.loads('{"maps": []}')
    with pytest.raises(ParseError):
        converter.loads('{"dims": [1, 1], "maps": []}')
    with pytest.raises(ParseError):
        converter.loads('{"dims": [1, 1], "maps": [[[1, 2]]]}')


def test_representation_text_format(kronecker, f101, regular_r):
    text = "dims 1 1\narrow 0\n1\narrow 1\n1\n"
    assert RepresentationTextConverter(kronecker, f101).loads(text) == regular_r
    assert RepresentationTextConverter(kronecker, f101).dumps(regular_r) == text
    zero_map = RepresentationTextConverter(kronecker, f101).loads("dims 1 0\n")
    assert zero_map.dims == (1, 0)
    with pytest.raises(ParseError):
        RepresentationTextConverter(kronecker, f101).loads("dims 1 1\narrow 0\n1\n")


def test_object_json_with_references(a2, f101):
    resolve = {"P1": obj(a2, f101, ("P", 1, 0))}.__getitem__
    converter = DObjectJsonConverter(a2, f101, resolve=resolve)
    parsed = converter.loads('{"summands": [{"module": "P1", "shift": 1},'
                             ' {"module": {"dims": [1, 0], "maps": [[]]}, "shift": -1}]}')
    assert iso_test(parsed, obj(a2, f101, ("P", 1, 1), ("S", 1, -1)))
    with pytest.raises(ParseError):
        DObjectJsonConverter(a2, f101).from_dict("P1")
    with pytest.raises(ParseError):
        converter.from_dict({"summands": [{"shift": 1}]})


def test_object_store(a2, f101):
    objects = {"T": obj(a2, f101, ("P", 1, 0), ("S", 1, 0)), "E": obj(a2, f101, ("S", 2, 1))}
    text = ObjectStoreConverter(a2, f101).dumps(objects)
    loaded = ObjectStoreConverter(a2, f101).loads(text)
    assert set(loaded) == {"T", "E"}
    assert iso_test(loaded["T"], objects["T"])
    assert iso_test(loaded["E"], objects["E"])
    with pytest.raises(ParseError):
        ObjectStoreConverter(a2, f101).loads('{"things": {}}')


def test_factory_by_extension(a2, f101):
    assert isinstance(ConverterFactory.get_quiver_converter("q.json"), QuiverJsonConverter)
    assert isinstance(ConverterFactory.get_quiver_converter("q.txt"), QuiverTextConverter)
    assert isinstance(ConverterFactory.get_representation_converter("m.JSON", a2, f101), RepresentationJsonConverter)
    assert isinstance(ConverterFactory.get_representation_converter("m.rep", a2, f101), RepresentationTextConverter)


def test_load_missing_file_is_parse_error(tmp_path):
    with pytest.raises(ParseError):
        QuiverTextConverter().load(str(tmp_path / "missing.txt"))


def test_deterministic_json():
    assert jsonable({"x": (Fraction(1, 2), Fraction(4, 2))}) == {"x": ["1/2", 2]}
    assert dumps({"b": 1, "a": "域"}) == '{\n  "a": "域",\n  "b": 1\n}'
