"""校验套件基类：统一封装用例执行、判定汇总与报告格式。

核心职责：
- 约定所有校验套件实现 `run`，返回逐用例的 `CaseRecord` 列表；
- `execute` 负责计时、日志与判定：verdict = pass 当且仅当所有非诊断用例通过；
- `format_report` 把报告序列化为确定性 JSON（除 wall_time 外逐字节稳定）。

使用说明：
- 子类在 `__init__` 中设置 `self.params`（写入报告的参数）与可选的 `header`（约定说明）；
- 诊断用例（`diagnostic=True`）失败只记 WARNING，不影响判定。
"""

import time
from abc import ABC, abstractmethod
from typing import Any

from dihom.common.types import CaseRecord, CheckReport
from dihom.common.utils import dump_json, get_logger

logger = get_logger(__name__)


class BaseCheck(ABC):
    """所有校验套件的基类。"""

    def __init__(self, check_name: str, description: str, header: list[str] | None = None):
        self.check_name = check_name
        self.description = description
        self.header = header or []
        self.params: dict[str, Any] = {}

    @abstractmethod
    def run(self) -> list[CaseRecord]:
        """执行全部用例并返回记录，顺序即报告中的顺序。"""

    def execute(self) -> CheckReport:
        logger.info(f"Running {self.check_name} with {self.params}")
        start = time.perf_counter()
        cases = self.run()
        for case in cases:
            if case.passed:
                continue
            if case.diagnostic:
                logger.warning(f"{self.check_name}: diagnostic case {case.name} records a mismatch")
            else:
                logger.error(f"{self.check_name}: case {case.name} failed")
        verdict = "pass" if all(c.passed for c in cases if not c.diagnostic) else "fail"
        report = CheckReport(
            check=self.check_name,
            parameters=self.params,
            header=self.header,
            cases=cases,
            verdict=verdict,
            wall_time=round(time.perf_counter() - start, 3),
        )
        logger.info(f"{self.check_name} finished: {len(cases)} cases, verdict={verdict}")
        return report

    def format_report(self, report: CheckReport) -> str:
        return dump_json(report.to_payload())
