"""Hom 与神经：在单个形状或整个有界目录上枚举函子 θ → C。

核心职责：
- `HomCheck`：单个形状的 hom_set，列出全部元素的规范序列化；
- `NerveCheck`：目录中每个形状的 |N(C)(θ)|，逐形状记录错误而不中断。
"""

from dihom.common.base_check import BaseCheck
from dihom.common.errors import DihomError
from dihom.common.types import CaseRecord
from dihom.common.utils import get_logger
from dihom.core.omegacat import GlobeChain, OmegaCat, functor_key, hom_set, monotone_map_count
from dihom.core.pasting import PastingTree
from dihom.core.thetaset import nerve

logger = get_logger(__name__)


class HomCheck(BaseCheck):
    """hom(θ, C)：元素个数与元素列表。"""

    def __init__(self, tree: PastingTree, category: OmegaCat):
        super().__init__(
            check_name="hom",
            description="Enumerates the functors from a pasting shape into a finite gaunt strict category.",
        )
        self.tree = tree
        self.category = category
        self.params = {"tree": tree.to_text(), "category": category.label}

    def run(self) -> list[CaseRecord]:
        elements = hom_set(self.tree, self.category)
        details = {"elements": [functor_key(F) for F in elements]}
        if isinstance(self.category, GlobeChain) and self.category.k == 1:
            # [n] 上的独立偏序集计数
            details["poset_oracle"] = monotone_map_count(self.tree, self.category.n)
        passed = details.get("poset_oracle", len(elements)) == len(elements)
        return [CaseRecord(
            name=f"hom({self.tree}, {self.category.label})",
            inputs=self.params,
            sizes={"hom": len(elements)},
            passed=passed,
            details=details,
        )]


class NerveCheck(BaseCheck):
    """N(C) 在有界形状目录上的逐度规模。"""

    def __init__(self, category: OmegaCat, max_dim: int, max_edges: int):
        super().__init__(
            check_name="nerve",
            description="Sizes of the nerve of a category on every shape of a bounded catalog.",
        )
        self.category = category
        self.max_dim = max_dim
        self.max_edges = max_edges
        self.params = {"category": category.label, "max_dim": max_dim, "max_edges": max_edges}

    def run(self) -> list[CaseRecord]:
        family = nerve(self.category, self.max_dim, self.max_edges)
        cases = []
        for t in family.catalog:
            try:
                size = len(family.at(t))
            except DihomError as e:
                cases.append(CaseRecord(name=t.to_text(), inputs={"theta": t.to_json()}, passed=False,
                                        details={"error": str(e)}))
                continue
            cases.append(CaseRecord(name=t.to_text(), inputs={"theta": t.to_json()}, sizes={"nerve": size},
                                    passed=True))
        return cases
