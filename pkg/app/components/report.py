#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
报告 - 命令结果的可读文本与 JSON 输出

JSON 报告按键排序输出，相同输入得到逐字节相同的文档；
其中 "objects" 字段与对象仓库格式一致，可以直接作为 --objects 的输入。
"""

from app.models.converters import dumps


class Report:
    """单个命令的报告"""

    def __init__(self, command, quiver=None, field=None):
        self.command = command
        self.quiver = quiver
        self.field = field
        self.status = "ok"
        self.data = {}
        self.objects = {}
        self.lines = []
        self.triangles = None
        self.error = None

    def line(self, text):
        """追加一行可读输出"""
        self.lines.append(text)
        return self

    def put(self, key, value):
        self.data[key] = value
        return self

    def add_object(self, name, obj):
        """登记一个输出对象 (同时进入可读输出)"""
        self.objects[name] = obj
        return self

    def fail(self, error):
        """
        记录异常

        Args:
            error (WorkbenchError): 引擎抛出的异常
        """
        self.error = error
        self.status = "not_completable" if error.exit_code == 0 else "error"
        self.lines.append(f"{error.__class__.__name__.replace('Error', '')}: {error.message}")
        return self

    @property
    def exit_code(self):
        return self.error.exit_code if self.error is not None else 0

    def to_dict(self):
        document = {
            "command": self.command,
            "status": self.status,
            "result": self.data,
            "objects": {name: obj.to_dict() for name, obj in self.objects.items()},
        }
        if self.quiver is not None:
            document["quiver"] = self.quiver.to_dict()
        if self.field is not None:
            document["field"] = self.field.spec
        if self.error is not None:
            document["error"] = self.error.to_dict()
            cycle = getattr(self.error, 'cycle', None)
            if cycle:
                document["error"]["cycle"] = list(cycle)
        if self.triangles is not None:
            document["triangles"] = self.triangles
        return document

    def render(self, as_json=False):
        if as_json:
            return dumps(self.to_dict())
        lines = list(self.lines)
        for name, obj in self.objects.items():
            lines.append(f"{name}: {obj.describe()}")
        if self.triangles:
            lines.append("三角:")
            lines.extend(
                f"  [{t['kind']}] {t['terms'][0]} → {t['terms'][1]} → {t['terms'][2]} → +1"
                for t in self.triangles)
        return "\n".join(lines)
