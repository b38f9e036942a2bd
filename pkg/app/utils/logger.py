#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
日志工具
1. setup_logger: 配置 SiltWorkbench 根日志记录器 (滚动文件 + 控制台)
2. log_triangle: 以结构化记录输出逼近三角
3. TriangleCollector: 收集三角记录，供 --verbose-triangles 写入报告
"""

import os
import logging
from logging.handlers import RotatingFileHandler

from app.config import APP_NAME, LOG_DIR, LOG_FILE_NAME, LOG_MAX_BYTES, LOG_BACKUP_COUNT, LOG_FORMAT

TRIANGLE_LOGGER_NAME = f"{APP_NAME}.Triangles"


def setup_logger(log_dir=LOG_DIR, level="WARNING"):
    """
    设置应用程序日志记录器

    Args:
        log_dir (str): 日志目录，为 None 时只输出到控制台
        level (str): 控制台日志级别

    返回:
        logging.Logger: 配置好的日志记录器实例
    """
    logger = logging.getLogger(APP_NAME)
    logger.setLevel(logging.DEBUG)

    # 防止重复配置
    if logger.handlers:
        for handler in logger.handlers:
            if isinstance(handler, logging.StreamHandler) and not isinstance(handler, RotatingFileHandler):
                handler.setLevel(level)
        return logger

    formatter = logging.Formatter(LOG_FORMAT)

    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
        log_file = os.path.join(log_dir, LOG_FILE_NAME)
        file_handler = RotatingFileHandler(
            log_file, maxBytes=LOG_MAX_BYTES, backupCount=LOG_BACKUP_COUNT, encoding='utf-8'
        )
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    # 控制台处理器写 stderr，不干扰 JSON 报告
    console_handler = logging.StreamHandler()
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    # 三角日志默认关闭，由 TriangleCollector.attach 打开
    logging.getLogger(TRIANGLE_LOGGER_NAME).setLevel(logging.INFO)

    logger.debug("日志系统初始化完成")
    return logger


def log_triangle(kind, first, second, third, morphisms=None):
    """
    记录一个三角 first → second → third → first[1]

    Args:
        kind (str): 三角来源，例如 "mutate_left"、"thick_perp_project"
        first, second, third: 三项对象 (DObject 或其可读描述)
        morphisms (dict): 三角中态射的可序列化描述
    """
    logger = logging.getLogger(TRIANGLE_LOGGER_NAME)
    if not logger.isEnabledFor(logging.DEBUG):
        return
    record = {
        "kind": kind,
        "terms": [_describe(first), _describe(second), _describe(third)],
        "morphisms": morphisms or {},
    }
    logger.debug(f"[{kind}] {record['terms'][0]} → {record['terms'][1]} → {record['terms'][2]} → +1",
                 extra={"triangle": record})


def _describe(obj):
    if hasattr(obj, 'describe'):
        return obj.describe()
    return str(obj)


class TriangleCollector(logging.Handler):
    """收集三角日志记录的处理器"""

    def __init__(self):
        super().__init__(level=logging.DEBUG)
        self.triangles = []

    def emit(self, record):
        triangle = getattr(record, 'triangle', None)
        if triangle is not None:
            self.triangles.append(triangle)

    def attach(self):
        """挂载到三角日志记录器上"""
        logger = logging.getLogger(TRIANGLE_LOGGER_NAME)
        logger.setLevel(logging.DEBUG)
        logger.addHandler(self)
        return self

    def detach(self):
        """从三角日志记录器上卸载"""
        logging.getLogger(TRIANGLE_LOGGER_NAME).removeHandler(self)
