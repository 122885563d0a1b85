"""
設定管理モジュール

ハッシュパラメータ、ソルバー、探索予算の設定を管理します。
"""

from .lab_config import (
    LabSettings,
    lab_config,
    build_settings,
    load_config_file,
    get_solver_config,
    get_budget_config,
    get_padding_config,
)

__all__ = [
    "LabSettings",
    "lab_config",
    "build_settings",
    "load_config_file",
    "get_solver_config",
    "get_budget_config",
    "get_padding_config",
]
