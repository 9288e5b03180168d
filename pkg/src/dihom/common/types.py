"""公共数据模型：描述校验过程中的报告与表格结构。

包含：
- `CaseRecord`：单个校验用例的记录；
- `CheckReport`：一次校验命令的完整报告（带 schema 版本与耗时）；
- `WedgeCase` / `ChainColimitCase`：Θ-集比较的逐形状记录；
- `DoldThomCase` / `HurewiczCase`：分层模型上两个逐度比较的记录；
- `EndoMonoidTable`：同伦范畴中基点自同态幺半群的（部分）乘法表。
"""

from typing import Any, Literal

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

SCHEMA_VERSION = 1


class CaseRecord(BaseModel):
    """单个用例：输入、规模、是否通过、见证与截断标记。"""
    name: str = Field(description="用例名称")
    inputs: dict[str, Any] = Field(default_factory=dict, description="用例输入")
    sizes: dict[str, Any] = Field(default_factory=dict, description="两侧规模等计数")
    passed: bool = Field(description="用例是否通过")
    diagnostic: bool = Field(default=False, description="诊断用例不影响总判定")
    truncated: bool = Field(default=False, description="是否因界被截断")
    witnesses: list[Any] = Field(default_factory=list, description="失败或碰撞的见证")
    details: dict[str, Any] = Field(default_factory=dict, description="附加信息")


class CheckReport(BaseModel):
    """校验报告：verdict = pass 当且仅当所有非诊断用例通过。"""
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")
    check: str = Field(description="校验名称")
    parameters: dict[str, Any] = Field(default_factory=dict, description="命令参数")
    header: list[str] = Field(default_factory=list, description="约定说明")
    cases: list[CaseRecord] = Field(default_factory=list)
    verdict: Literal["pass", "fail"] = "pass"
    wall_time: float = Field(default=0.0, description="耗时（秒），不参与确定性比较")

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_payload(self) -> dict[str, Any]:
        return self.model_dump(by_alias=True, mode="json")

    def to_frame(self) -> pd.DataFrame:
        rows = [
            {
                "case": c.name,
                "passed": c.passed,
                "diagnostic": c.diagnostic,
                "truncated": c.truncated,
                **{f"size:{k}": v for k, v in c.sizes.items()},
            }
            for c in self.cases
        ]
        return pd.DataFrame(rows)


class WedgeCase(BaseModel):
    """N((D^k)^{∨n})(θ) 与 N(D^k)(θ)^n 的 Σ_n-轨道的比较。"""
    theta: list = Field(description="形状（嵌套数组）")
    lhs: int = Field(description="|hom(θ, (D^k)^{∨n})|")
    rhs: int = Field(description="|hom(θ, D^k)^n / Σ_n|")
    image: int = Field(description="α 诱导映射的像的大小")
    injective: bool
    surjective: bool
    witnesses: list[Any] = Field(default_factory=list)
    error: str | None = None


class ChainColimitCase(BaseModel):
    """D^0 → D^k → … → (D^k)^{∨n} 的逐形状记录。"""
    theta: list
    generators: int = Field(description="θ 的 1 维生成元个数")
    stage_sizes: list[int] = Field(description="各阶段 |hom(θ, (D^k)^{∨n})|")
    transitions_injective: list[bool]
    new_elements: list[int] = Field(description="不经过上一阶段像的元素个数")
    pattern_counts: list[int] = Field(description="按重标号归一后的模式个数")
    stabilization_index: int
    error: str | None = None


class EndoMonoidTable(BaseModel):
    """基点处自同态类的代表与部分乘法表；缺失项为 None。"""
    classes: list[str] = Field(description="类代表（单词）")
    table: dict[str, int | None] = Field(description='"i,j" -> k 或 None')
    complete: bool = Field(description="所有乘积都在界内可判定")


class DoldThomCase(BaseModel):
    """SP 塔在第 N 阶的余极限与约化 ℕ-线性模型在第 m 度的逐度比较。"""
    degree: int
    stage: int
    colimit_size: int = Field(description="余极限（去掉基点填充）的元素个数")
    linear_size: int = Field(description="权重 ≤ N 的约化 ℕ-线性组合个数")
    expected_size: int = Field(description="C(s+N, N)，s 为非基点单形个数")
    transitions_injective: bool
    bijective: bool
    faces_match: bool
    degeneracies_match: bool
    thinness_match: bool
    witnesses: list[Any] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (self.transitions_injective and self.bijective and self.faces_match
                and self.degeneracies_match and self.thinness_match
                and self.colimit_size == self.linear_size == self.expected_size)


class HurewiczCase(BaseModel):
    """字母计数预言（左侧）与同余闭包自同态幺半群（右侧）的比较。"""
    generators: int
    coefficients: str
    bound: int
    lhs_size: int
    rhs_size: int
    injective: bool
    surjective: bool
    table_matches: bool
    truncated: bool = False
    witnesses: list[Any] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.injective and self.surjective and self.table_matches
