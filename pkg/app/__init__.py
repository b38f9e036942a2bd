#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
SiltWorkbench - 遗传代数导出范畴上的 silting 与单纯极小集工作台
"""

__version__ = '0.1.0'
