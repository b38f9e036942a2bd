#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
SiltWorkbench 组件模块
包含命令行界面与报告输出
"""
