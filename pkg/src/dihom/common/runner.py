"""逐用例扇出：在 `DIHOM_THREADS` 上限内并行执行独立工作项，并按输入顺序汇总结果。

实现要点：
- 线程池大小取 `get_thread_cap()`，为 1 时直接串行执行；
- 结果顺序与输入顺序一致，保证报告确定性。
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

from dihom.common.utils import get_logger, get_thread_cap

logger = get_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def fan_out(work: Callable[[T], R], items: Iterable[T], threads: int | None = None) -> list[R]:
    """对 items 逐项执行 work，返回与输入同序的结果列表。"""
    items = list(items)
    cap = get_thread_cap() if threads is None else threads
    if cap <= 1 or len(items) <= 1:
        return [work(item) for item in items]
    logger.debug(f"Fanning out {len(items)} work items over {cap} threads")
    with ThreadPoolExecutor(max_workers=cap) as pool:
        return list(pool.map(work, items))
