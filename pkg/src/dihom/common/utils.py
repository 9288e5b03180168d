"""公共工具函数：统一日志配置与运行参数（环境变量）读取。

包含：
- `get_logger`：配置并返回指定名称的 `logging.Logger`；
- `get_thread_cap`：读取 `DIHOM_THREADS`，限制并行工作线程数；
- `get_max_depth`：读取 `DIHOM_MAX_DEPTH`，限制 `hom_set` 的递归深度；
- `dump_json`：按确定性格式序列化报告，保证相同输入得到逐字节相同的输出。
"""

import os
import json
import logging
from typing import Any

from dotenv import load_dotenv

# 自动加载 .env 文件，确保 DIHOM_* 配置可用
load_dotenv()

DEFAULT_MAX_DEPTH = 32


def get_logger(name: str) -> logging.Logger:
    """获取带统一格式的 Logger。

    行为：
    - 日志级别默认为 INFO，可由 `DIHOM_LOG_LEVEL` 覆盖；
    - 日志格式包含时间、模块名、级别与消息；
    - 输出到 stderr，报告正文只写 stdout 或 `--json-out` 文件。
    """
    level = os.getenv("DIHOM_LOG_LEVEL", "INFO").upper()
    logging.basicConfig(level=level, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
    return logging.getLogger(name)


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")
    if value < 1:
        raise ValueError(f"{name} must be >= 1, got {value}")
    return value


def get_thread_cap() -> int:
    """并行上限：`DIHOM_THREADS`，缺省为 min(4, CPU 数)。"""
    return _int_env("DIHOM_THREADS", min(4, os.cpu_count() or 1))


def get_max_depth() -> int:
    """`hom_set` 递归深度上限：`DIHOM_MAX_DEPTH`，缺省 32。"""
    return _int_env("DIHOM_MAX_DEPTH", DEFAULT_MAX_DEPTH)


def dump_json(payload: Any) -> str:
    """确定性 JSON：键排序、固定缩进、不转义 Unicode。"""
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)
