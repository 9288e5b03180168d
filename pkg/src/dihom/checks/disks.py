"""圆盘同调：Sym(N(D^k)) 的第 n 个直和项与 N((D^k)^{∨n}) 的逐度比较，以及链余极限。

核心职责：
- 对 n ≤ n_max：严格对称幂的规模与 wedge 左侧一致，α 诱导双射（k = 1 时门控）；
- k = 1 时：hom(θ, [n]) 与独立的单调映射计数一致；
- k = 1 时：D^0 → D^1 → (D^1)^{∨2} → … 的插入映射单射，模式计数在 θ 的 1 维生成元个数之内稳定。
"""

from dihom.common.base_check import BaseCheck
from dihom.common.types import CaseRecord
from dihom.common.utils import get_logger
from dihom.core.omegacat import globe, globe_chain, hom_set, monotone_map_count
from dihom.core.thetaset import CHAIN_INSERTION_NOTE, reduced_chain_colimit_check, sym, wedge_compare

from dihom.checks.wedge import WEDGE_HEADER, wedge_record

logger = get_logger(__name__)


class DisksCheck(BaseCheck):
    def __init__(self, k: int, n_max: int, max_dim: int, max_edges: int):
        super().__init__(
            check_name="check-disks",
            description="Symmetric powers of the nerve of D^k against nerves of wedges of D^k.",
            header=WEDGE_HEADER + [CHAIN_INSERTION_NOTE],
        )
        self.k, self.n_max = k, n_max
        self.max_dim, self.max_edges = max_dim, max_edges
        self.params = {"k": k, "n_max": n_max, "max_dim": max_dim, "max_edges": max_edges}

    def run(self) -> list[CaseRecord]:
        k, diagnostic = self.k, self.k >= 2
        cases: list[CaseRecord] = []
        powers = sym(globe(k), self.n_max, self.max_dim, self.max_edges)
        for n, family in enumerate(powers):
            for t in family.catalog:
                orbits = len(family.at(t))
                wedge = len(hom_set(t, globe_chain(k, n)))
                sizes = {"sym": orbits, "wedge": wedge}
                if k == 1:
                    sizes["poset_oracle"] = monotone_map_count(t, n)
                cases.append(CaseRecord(
                    name=f"sizes n={n} theta={t}",
                    inputs={"k": k, "n": n, "theta": t.to_json()},
                    sizes=sizes,
                    passed=len(set(sizes.values())) == 1,
                    diagnostic=diagnostic,
                ))
            if n >= 1:
                for case in wedge_compare(k, n, self.max_dim, self.max_edges):
                    cases.append(wedge_record(case, k, n))
        if k == 1 and self.n_max >= 1:
            for case in reduced_chain_colimit_check(k, self.n_max, self.max_dim, self.max_edges):
                passed = (case.error is None and all(case.transitions_injective)
                          and case.stabilization_index <= case.generators)
                cases.append(CaseRecord(
                    name=f"chain colimit theta={case.theta}",
                    inputs={"k": k, "n_max": self.n_max, "theta": case.theta},
                    sizes={"stages": case.stage_sizes, "patterns": case.pattern_counts},
                    passed=passed,
                    details=case.model_dump(exclude={"theta"}),
                ))
        return cases
