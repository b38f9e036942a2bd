#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
文件格式转换器 - 箭图、表示与导出范畴对象的文本 / JSON 读写

格式:
1. 箭图文本: 首行 "vertices n"，其后每行 "arrow s t"；JSON: {"vertices": n, "arrows": [[s, t], ...]}
2. 表示文本: 首行 "dims d1 ... dn"，其后每条箭头一段 "arrow a" 加若干矩阵行；JSON: {"dims": [...], "maps": [...]}
3. 对象 JSON: {"summands": [{"module": 引用或内联表示, "shift": a}, ...]}
4. 对象仓库 JSON: {"objects": {名称: 对象}}，报告本身也是合法的仓库
"""

import os
import json
from abc import ABC, abstractmethod
from fractions import Fraction

from app.models.derived import DObject
from app.models.quiver import Quiver
from app.models.representation import Representation
from app.utils.errors import ParseError, WorkbenchError


def jsonable(value):
    """把 Fraction 等精确值转换为 JSON 可表示的形式 (非整数的分数写成字符串)"""
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else str(value)
    if isinstance(value, dict):
        return {k: jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def dumps(document):
    """确定性的 JSON 文本 (键排序、固定缩进)"""
    return json.dumps(jsonable(document), ensure_ascii=False, indent=2, sort_keys=True)


def _read(path):
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return f.read()
    except OSError as e:
        raise ParseError(f"无法读取文件 {path}: {e}", condition="ReadFile")


def _load_json(text, what):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{what} JSON 格式错误: {e}", condition="JSON")


def _int(token, where):
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{where}: '{token}' 不是整数", condition="Integer")


class FormatConverter(ABC):
    """格式转换器基类"""

    @abstractmethod
    def loads(self, text):
        """
        从文本解析

        Raises:
            ParseError: 格式错误
        """

    @abstractmethod
    def dumps(self, obj):
        """序列化为文本"""

    def load(self, path):
        return self.loads(_read(path))


class QuiverTextConverter(FormatConverter):
    """箭图文本格式"""

    def loads(self, text):
        vertices, arrows = None, []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            if tokens[0] == "vertices" and len(tokens) == 2 and vertices is None:
                vertices = _int(tokens[1], f"第 {number} 行")
            elif tokens[0] == "arrow" and len(tokens) == 3 and vertices is not None:
                arrows.append((_int(tokens[1], f"第 {number} 行"), _int(tokens[2], f"第 {number} 行")))
            else:
                raise ParseError(f"第 {number} 行无法解析: {raw!r}", condition="QuiverFormat")
        if vertices is None:
            raise ParseError("缺少 'vertices n' 行", condition="QuiverFormat")
        return Quiver(vertices, tuple(arrows))

    def dumps(self, quiver):
        lines = [f"vertices {quiver.vertex_count}"]
        lines.extend(f"arrow {s} {t}" for s, t in quiver.arrows)
        return "\n".join(lines) + "\n"


class QuiverJsonConverter(FormatConverter):
    """箭图 JSON 格式"""

    def loads(self, text):
        data = _load_json(text, "箭图")
        if not isinstance(data, dict) or "vertices" not in data:
            raise ParseError("箭图 JSON 需要 'vertices' 字段", condition="QuiverFormat")
        try:
            arrows = tuple((int(s), int(t)) for s, t in data.get("arrows", []))
            return Quiver(int(data["vertices"]), arrows)
        except (TypeError, ValueError) as e:
            raise ParseError(f"箭图 JSON 字段错误: {e}", condition="QuiverFormat")

    def dumps(self, quiver):
        return dumps(quiver.to_dict())


class RepresentationJsonConverter(FormatConverter):
    """表示 JSON 格式，矩阵元素为整数或 "p/q" 字符串，读入时约化到当前域"""

    def __init__(self, quiver, field):
        self.quiver = quiver
        self.field = field

    def from_dict(self, data):
        if not isinstance(data, dict) or "dims" not in data:
            raise ParseError("表示需要 'dims' 字段", condition="RepresentationFormat")
        dims = data["dims"]
        maps = data.get("maps", [])
        if len(maps) != len(self.quiver.arrows):
            raise ParseError(f"表示给出 {len(maps)} 个矩阵，箭图有 {len(self.quiver.arrows)} 条箭头",
                             condition="RepresentationFormat")
        try:
            return Representation.from_lists(self.quiver, self.field, dims, maps)
        except WorkbenchError as e:
            raise ParseError(f"表示数据不合法: {e.message}", condition="RepresentationFormat")
        except (TypeError, ValueError, ZeroDivisionError) as e:
            raise ParseError(f"表示数据不合法: {e}", condition="RepresentationFormat")

    def loads(self, text):
        return self.from_dict(_load_json(text, "表示"))

    def dumps(self, representation):
        return dumps(representation.to_dict())


class RepresentationTextConverter(RepresentationJsonConverter):
    """
    表示文本格式

    示例 (A_2 上的 P_1):
        dims 1 1
        arrow 0
        1
    """

    def loads(self, text):
        dims, maps, current = None, {}, None
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            if tokens[0] == "dims":
                dims = [_int(t, f"第 {number} 行") for t in tokens[1:]]
            elif tokens[0] == "arrow" and len(tokens) == 2:
                current = _int(tokens[1], f"第 {number} 行")
                maps[current] = []
            elif current is not None:
                maps[current].append(tokens)
            else:
                raise ParseError(f"第 {number} 行无法解析: {raw!r}", condition="RepresentationFormat")
        if dims is None:
            raise ParseError("缺少 'dims' 行", condition="RepresentationFormat")
        ordered = []
        for a, (s, t) in enumerate(self.quiver.arrows):
            rows = maps.get(a, [])
            if not rows and dims[t - 1] and dims[s - 1]:
                raise ParseError(f"缺少箭头 {a} 的矩阵", condition="RepresentationFormat")
            ordered.append(rows)
        return self.from_dict({"dims": dims, "maps": ordered})

    def dumps(self, representation):
        lines = ["dims " + " ".join(str(d) for d in representation.dims)]
        for a, matrix in enumerate(representation.to_dict()["maps"]):
            lines.append(f"arrow {a}")
            lines.extend(" ".join(str(jsonable(x)) for x in row) for row in matrix)
        return "\n".join(lines) + "\n"


class DObjectJsonConverter(FormatConverter):
    """
    导出范畴对象 JSON 格式

    Args:
        resolve (callable): 把字符串引用 (例如 "P2"、仓库中的名称) 解析为 DObject
    """

    def __init__(self, quiver, field, resolve=None):
        self.quiver = quiver
        self.field = field
        self.resolve = resolve
        self.modules = RepresentationJsonConverter(quiver, field)

    def from_dict(self, data):
        if isinstance(data, str):
            return self._reference(data)
        if isinstance(data, list):
            data = {"summands": data}
        if not isinstance(data, dict) or "summands" not in data:
            raise ParseError("对象需要 'summands' 字段", condition="ObjectFormat")
        result = DObject.zero(self.quiver, self.field)
        for item in data["summands"]:
            if not isinstance(item, dict) or "module" not in item:
                raise ParseError(f"直和项格式错误: {item!r}", condition="ObjectFormat")
            shift = int(item.get("shift", 0))
            module = item["module"]
            if isinstance(module, str):
                part = self._reference(module).shift(shift)
            else:
                part = DObject.build(self.quiver, self.field, [(self.modules.from_dict(module), shift)])
            result = result.direct_sum(part)
        return result

    def _reference(self, text):
        if self.resolve is None:
            raise ParseError(f"无法解析引用 '{text}'", condition="ObjectReference")
        return self.resolve(text)

    def loads(self, text):
        return self.from_dict(_load_json(text, "对象"))

    def dumps(self, obj):
        return dumps(obj.to_dict())


class ObjectStoreConverter(DObjectJsonConverter):
    """对象仓库 {"objects": {名称: 对象}}"""

    def loads(self, text):
        data = _load_json(text, "对象仓库")
        if not isinstance(data, dict) or not isinstance(data.get("objects"), dict):
            raise ParseError("对象仓库需要 'objects' 字典", condition="StoreFormat")
        return {name: self.from_dict(value) for name, value in data["objects"].items()}

    def dumps(self, objects):
        return dumps({"objects": {name: obj.to_dict() for name, obj in objects.items()}})


class ConverterFactory:
    """转换器工厂类"""

    @staticmethod
    def get_quiver_converter(file_path):
        """
        根据文件扩展名获取箭图转换器

        Returns:
            FormatConverter: .json 用 JSON 格式，其余用文本格式
        """
        ext = os.path.splitext(file_path)[1].lower()
        if ext == '.json':
            return QuiverJsonConverter()
        return QuiverTextConverter()

    @staticmethod
    def get_representation_converter(file_path, quiver, field):
        ext = os.path.splitext(file_path)[1].lower()
        if ext == '.json':
            return RepresentationJsonConverter(quiver, field)
        return RepresentationTextConverter(quiver, field)
