#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
SiltWorkbench 配置文件
包含全局配置和默认设置
"""

import os

from dotenv import load_dotenv

# 读取项目目录下的 .env (例如 SILTWB_FIELD=Q)
load_dotenv()

# 应用信息
APP_NAME = "SiltWorkbench"
APP_VERSION = "0.1.0"

# 数据目录配置
DATA_DIR = "data"
USER_SETTINGS_PATH = os.path.join(DATA_DIR, "settings.json")
LOG_DIR = os.path.join(DATA_DIR, "logs")
DATA_SUBDIRS = ["logs", "cache", "reports"]

# 日志配置
LOG_FILE_NAME = "app.log"
LOG_MAX_BYTES = 10 * 1024 * 1024
LOG_BACKUP_COUNT = 5
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# 环境变量
FIELD_ENV_VAR = "SILTWB_FIELD"

# 域配置
DEFAULT_PRIME = 101
DEFAULT_FIELD = str(DEFAULT_PRIME)
RATIONAL_FIELD_NAMES = ("Q", "q", "QQ")

# 分解算法配置
DECOMPOSE_RANDOM_TRIALS = 32  # 确定性候选用尽后的随机自同态尝试次数
DEFAULT_SEED = 0

# 缓存配置
HOM_CACHE_SIZE = 4096

# 导出范畴配置
Z_REPRESENTATIVE_MAX_ROUNDS = 8

# A型枚举器配置
DEFAULT_WINDOW = (-2, 2)
ORACLE_WINDOW_PADDING = 1

# 默认用户设置
DEFAULT_USER_SETTINGS = {
    "field": DEFAULT_FIELD,
    "window": list(DEFAULT_WINDOW),
    "seed": DEFAULT_SEED,
    "random_trials": DECOMPOSE_RANDOM_TRIALS,
    "log_level": "WARNING",
}
