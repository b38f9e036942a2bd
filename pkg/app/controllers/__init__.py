#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
SiltWorkbench 控制器模块
包含逼近、垂直子范畴、silting / SMC 引擎、A 型枚举器与会话管理
"""

from app.controllers.settings_manager import SettingsManager
from app.controllers.session import Session, resolve_field
