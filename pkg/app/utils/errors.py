#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
异常定义 - 工作台所有业务异常的统一层级

退出码约定:
1. 前置条件不满足 (PreconditionError 及其子类) -> 1
2. 输入解析失败 (ParseError) -> 2
3. 内部校验失败 (ComputationError 及其子类) -> 3
"""


class WorkbenchError(Exception):
    """工作台异常基类"""

    exit_code = 1

    def __init__(self, message, condition=None):
        """
        Args:
            message (str): 错误描述
            condition (str): 被违反的条件名称，用于报告
        """
        super().__init__(message)
        self.message = message
        self.condition = condition or self.__class__.__name__.replace('Error', '')

    def to_dict(self):
        """转换为报告中使用的字典"""
        return {
            "error": self.__class__.__name__.replace('Error', ''),
            "condition": self.condition,
            "message": self.message,
        }


class PreconditionError(WorkbenchError):
    """前置条件不满足"""
    exit_code = 1


class FieldMismatchError(PreconditionError):
    """不同域上的标量或矩阵混合运算"""


class DimensionMismatchError(PreconditionError):
    """矩阵形状与维数向量不一致"""


class CyclicQuiverError(PreconditionError):
    """箭图含有有向圈"""

    def __init__(self, message, cycle=None):
        super().__init__(message, condition="CyclicQuiver")
        self.cycle = cycle or []


class NotTypeAError(PreconditionError):
    """箭图不是A型"""


class NotExceptionalError(PreconditionError):
    """对象不是例外对象"""


class NotSiltingError(PreconditionError):
    """对象不是silting对象"""


class NotASummandError(PreconditionError):
    """给定对象不是直和项"""


class NotRigidError(PreconditionError):
    """模不是刚性的 (Ext¹(M,M) ≠ 0)"""


class NotPresiltingError(PreconditionError):
    """对象不是presilting对象"""


class NotPreSMCError(PreconditionError):
    """集合不是pre-SMC"""


class NotContainedError(PreconditionError):
    """子集包含关系不成立"""


class PreconditionFailedError(PreconditionError):
    """一般性的前置条件失败，condition 字段给出被违反的正交性"""


class NonIntegralMultiplicityError(PreconditionError):
    """Ext-箭图的箭头重数不是整数"""


class NotCompletableError(WorkbenchError):
    """pre-SMC 的 Ext-箭图含圈，无法补全为 SMC

    这是补全问题的否定答案，命令行以退出码 0 报告。
    """

    exit_code = 0

    def __init__(self, message, cycle=None):
        super().__init__(message, condition="NotCompletable")
        self.cycle = cycle or []


class ParseError(WorkbenchError):
    """输入格式错误"""
    exit_code = 2


class ComputationError(WorkbenchError):
    """内部校验失败，说明实现存在缺陷"""
    exit_code = 3


class DecompositionError(ComputationError):
    """无法确认自同态环的局部性"""


class ChainComplexError(ComputationError):
    """链复形的微分不满足 d∘d = 0 或链映射不交换"""
