#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
会话 - 当前域、箭图与命名对象仓库

功能:
1. 域解析: 命令行参数 > 环境变量 SILTWB_FIELD > 设置文件 > 默认 F_101
2. 对象引用语法: P2、S1[1]、I3[-1]、M1..3 (A 型区间模)、仓库中的名称，用 + 连接成直和
3. 对象仓库的读写 (报告本身也是合法的仓库)
"""

import os
import re
import logging

from app.config import DEFAULT_FIELD, FIELD_ENV_VAR, RATIONAL_FIELD_NAMES
from app.controllers.settings_manager import SettingsManager
from app.models.converters import ConverterFactory, ObjectStoreConverter
from app.models.derived import DObject
from app.models.exact_linalg import PrimeField, RationalField
from app.models.quiver import Quiver
from app.models.representation import Representation
from app.utils.errors import ParseError, PreconditionError, PreconditionFailedError

logger = logging.getLogger("SiltWorkbench.CLI")

_TOKEN = re.compile(r'^(?P<base>[A-Za-z_][\w.]*?)(?:\[(?P<shift>[+-]?\d+)\])?$')
_STANDARD = re.compile(r'^(?P<kind>[PSI])(?P<vertex>\d+)$')
_INTERVAL = re.compile(r'^M(?P<start>\d+)\.\.(?P<end>\d+)$')


def parse_field(spec):
    """
    解析域描述

    Args:
        spec (str): "Q" / "q" / "QQ" 或奇素数

    Raises:
        ParseError: 非素数或格式错误
    """
    text = str(spec).strip()
    if text in RATIONAL_FIELD_NAMES:
        return RationalField()
    try:
        p = int(text)
    except ValueError:
        raise ParseError(f"无法解析域 '{spec}'，应为奇素数或 Q", condition="FieldSpec")
    try:
        return PrimeField(p)
    except PreconditionError:
        raise ParseError(f"{p} 不是奇素数", condition="FieldSpec")


def resolve_field(flag_value=None, settings=None):
    """
    按优先级确定工作域

    Args:
        flag_value (str): 命令行 --field 的值
        settings (SettingsManager): 设置管理器，缺省时使用单例
    """
    if flag_value:
        source, spec = "命令行", flag_value
    elif os.environ.get(FIELD_ENV_VAR):
        source, spec = "环境变量", os.environ[FIELD_ENV_VAR]
    else:
        settings = settings or SettingsManager()
        spec = settings.get_field_spec() or DEFAULT_FIELD
        source = "设置文件"
    field = parse_field(spec)
    logger.debug(f"工作域 {field.name} (来自{source})")
    return field


class Session:
    """
    一次命令的工作上下文

    Attributes:
        quiver (Quiver): 箭图
        field (Field): 基域
        objects (dict): 名称 → DObject
    """

    def __init__(self, quiver, field, objects=None):
        self.quiver = quiver
        self.field = field
        self.objects = {}
        for name, obj in (objects or {}).items():
            self.store(name, obj)

    @classmethod
    def from_files(cls, quiver_path=None, field=None, store_path=None):
        """
        由箭图文件与对象仓库文件构造

        Args:
            quiver_path (str): 箭图文件，缺省为 A_2
        """
        if quiver_path:
            quiver = ConverterFactory.get_quiver_converter(quiver_path).load(quiver_path)
        else:
            quiver = Quiver.linear_a(2)
        session = cls(quiver, field or resolve_field())
        if store_path:
            session.load_store(store_path)
        return session

    def store(self, name, obj):
        """
        Raises:
            PreconditionFailedError: 对象不在会话的箭图或域上
        """
        if isinstance(obj, Representation):
            obj = DObject.stalk(obj)
        if obj.quiver != self.quiver or obj.field != self.field:
            raise PreconditionFailedError(f"对象 {name} 不在当前会话的箭图和域上", condition="SameCategory")
        self.objects[name] = obj

    def load_store(self, path):
        converter = ObjectStoreConverter(self.quiver, self.field, resolve=self.parse_object)
        for name, obj in converter.load(path).items():
            self.store(name, obj)
        logger.debug(f"从 {path} 读入 {len(self.objects)} 个对象")

    def dump_store(self):
        return ObjectStoreConverter(self.quiver, self.field).dumps(self.objects)

    # ------------------------------------------------------------------
    # 引用语法
    # ------------------------------------------------------------------

    def _vertex(self, text, token):
        x = int(text)
        if not 1 <= x <= self.quiver.vertex_count:
            raise ParseError(f"'{token}' 引用了不存在的顶点 {x}", condition="ObjectReference")
        return x

    def _base(self, base, token):
        if base in self.objects:
            return self.objects[base]
        match = _STANDARD.match(base)
        if match:
            x = self._vertex(match['vertex'], token)
            factory = {"P": Representation.projective, "S": Representation.simple, "I": Representation.injective}
            return DObject.stalk(factory[match['kind']](self.quiver, self.field, x))
        match = _INTERVAL.match(base)
        if match:
            start, end = int(match['start']), int(match['end'])
            if not 1 <= start <= end <= self.quiver.vertex_count:
                raise ParseError(f"区间 '{token}' 超出范围", condition="ObjectReference")
            return DObject.stalk(Representation.interval(self.quiver, self.field, start, end))
        raise ParseError(f"无法解析对象引用 '{token}'", condition="ObjectReference")

    def parse_object(self, text):
        """
        解析 "P1+S2[1]" 形式的对象引用

        Raises:
            ParseError: 语法错误或未知名称
            NotTypeAError: 在非 A 型箭图上使用区间记号
        """
        text = text.strip()
        if text in ("", "0"):
            return DObject.zero(self.quiver, self.field)
        result = DObject.zero(self.quiver, self.field)
        for token in text.split('+'):
            token = token.strip()
            match = _TOKEN.match(token)
            if not match:
                raise ParseError(f"无法解析对象引用 '{token}'", condition="ObjectReference")
            obj = self._base(match['base'], token)
            result = result.direct_sum(obj.shift(int(match['shift'] or 0)))
        return result

    def parse_module(self, text):
        """
        解析集中在次数 0 的对象并返回其表示

        Raises:
            PreconditionFailedError: 对象带有非零平移
        """
        obj = self.parse_object(text)
        if obj.is_zero:
            return Representation.zero(self.quiver, self.field)
        if not obj.is_concentrated or obj.summands[0].shift != 0:
            raise PreconditionFailedError(f"'{text}' 不是模 (次数 0 的对象)", condition="Module")
        return obj.module()

    def parse_collection(self, text):
        """pre-SMC 参数: + 连接的茎复形，每个直和项是一个成员"""
        return self.parse_object(text).summand_objects()
