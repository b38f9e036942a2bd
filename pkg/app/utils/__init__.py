#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
SiltWorkbench 工具函数模块
包含日志与异常定义
"""
