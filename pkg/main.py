#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
SiltWorkbench 命令行主入口模块

功能:
1. 初始化应用目录结构 (data/ 及 logs、cache、reports 子目录)
2. 初始化日志系统 (滚动文件 + stderr 控制台)
3. 解析命令行并执行一条命令，按约定的退出码退出
"""

import os
import sys
import logging

from app.config import APP_NAME, DATA_DIR, DATA_SUBDIRS
from app.components import cli
from app.utils.logger import setup_logger

# 全局logger对象
logger = None


def configure_logging(data_dir, level="WARNING"):
    """配置应用程序日志系统"""
    global logger
    logger = setup_logger(os.path.join(data_dir, "logs"), level)
    logger.debug(f"日志文件保存在: {os.path.join(data_dir, 'logs')}")
    return logger


def ensure_app_directories():
    """确保应用所需的所有目录都已创建"""
    data_dir = os.path.abspath(DATA_DIR)

    try:
        os.makedirs(data_dir, exist_ok=True)
    except PermissionError as e:
        # logger 尚未初始化
        print(f"警告: 无法创建数据目录 '{data_dir}': {e}", file=sys.stderr)
        import tempfile
        data_dir = os.path.join(tempfile.gettempdir(), APP_NAME)
        os.makedirs(data_dir, exist_ok=True)

    for subdir in DATA_SUBDIRS:
        subdir_path = os.path.join(data_dir, subdir)
        try:
            os.makedirs(subdir_path, exist_ok=True)
        except OSError as e:
            print(f"创建子目录 {subdir_path} 时出错: {e}", file=sys.stderr)

    return data_dir


def main():
    """应用主入口函数"""
    data_dir = ensure_app_directories()
    exit_code = cli.main(sys.argv[1:], configure_logging=lambda level: configure_logging(data_dir, level))
    logging.shutdown()
    sys.exit(exit_code)


if __name__ == "__main__":
    main()
