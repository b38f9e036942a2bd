#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
设置管理器 - 管理用户设置和配置
负责读取、保存用户设置 (默认域、枚举窗口、随机种子等)，并提供访问接口
"""

import os
import json
import logging

from app.config import DEFAULT_USER_SETTINGS, USER_SETTINGS_PATH

logger = logging.getLogger("SiltWorkbench.Settings")


class SettingsManager:
    """用户设置管理器，负责处理用户配置信息"""

    _instance = None  # 单例模式

    def __new__(cls, settings_path=None):
        """实现单例模式"""
        if cls._instance is None:
            cls._instance = super(SettingsManager, cls).__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self, settings_path=None):
        """
        初始化设置管理器

        Args:
            settings_path (str): 设置文件路径，只在首次创建时生效
        """
        # 防止重复初始化
        if self._initialized:
            return

        self.settings_path = settings_path or USER_SETTINGS_PATH
        self.settings = self.load_settings()

        self._initialized = True

    @classmethod
    def reset(cls):
        """丢弃单例 (测试中切换设置文件时使用)"""
        cls._instance = None

    def load_settings(self):
        """从文件加载设置，如果文件不存在则使用默认设置

        Returns:
            dict: 用户设置字典
        """
        if os.path.exists(self.settings_path):
            try:
                with open(self.settings_path, 'r', encoding='utf-8') as f:
                    settings = json.load(f)

                # 确保所有默认设置项都存在
                for key, value in DEFAULT_USER_SETTINGS.items():
                    if key not in settings:
                        settings[key] = value

                return settings
            except (OSError, json.JSONDecodeError) as e:
                logger.warning(f"加载设置文件失败: {e}")
                return dict(DEFAULT_USER_SETTINGS)
        else:
            # 文件不存在，使用默认设置
            return dict(DEFAULT_USER_SETTINGS)

    def save_settings(self):
        """保存设置到文件"""
        try:
            directory = os.path.dirname(self.settings_path)
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(self.settings_path, 'w', encoding='utf-8') as f:
                json.dump(self.settings, f, ensure_ascii=False, indent=4)
            return True
        except OSError as e:
            logger.error(f"保存设置文件失败: {e}")
            return False

    def get_setting(self, key, default=None):
        """获取指定设置项

        Args:
            key (str): 设置项键名
            default: 默认值，如果设置项不存在则返回此值

        Returns:
            设置项的值
        """
        return self.settings.get(key, default)

    def set_setting(self, key, value):
        """设置指定设置项

        Args:
            key (str): 设置项键名
            value: 设置项的值

        Returns:
            bool: 是否成功设置
        """
        self.settings[key] = value
        return self.save_settings()

    def get_field_spec(self):
        """设置文件中的域描述，例如 "101" 或 "Q" """
        return str(self.get_setting('field', DEFAULT_USER_SETTINGS['field']))

    def get_window(self):
        """
        Returns:
            tuple: (min_shift, max_shift)
        """
        low, high = self.get_setting('window', DEFAULT_USER_SETTINGS['window'])
        return int(low), int(high)

    def get_seed(self):
        return int(self.get_setting('seed', DEFAULT_USER_SETTINGS['seed']))

    def get_random_trials(self):
        return int(self.get_setting('random_trials', DEFAULT_USER_SETTINGS['random_trials']))
