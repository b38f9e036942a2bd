#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
SiltWorkbench 数据模型模块
包含精确线性代数、箭图表示、同调代数与导出范畴对象
"""
