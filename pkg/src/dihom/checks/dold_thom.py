"""Dold–Thom（逐度）：SP 塔的余极限与约化 ℕ-线性模型的比较，以及 SP 塔本身的规模。"""

from math import comb

from dihom.common.base_check import BaseCheck
from dihom.common.types import CaseRecord
from dihom.common.utils import get_logger
from dihom.core.strat import StratSet, dold_thom_check, sp_tower

logger = get_logger(__name__)

DOLD_THOM_HEADER = [
    "SP transitions insert the iterated degeneracy of the basepoint; classes are multisets with basepoint padding removed",
    "a multiset maps to the N-combination counting its non-basepoint members",
]


class DoldThomCheck(BaseCheck):
    def __init__(self, model: StratSet, degree: int, stage: int):
        super().__init__(
            check_name="check-dold-thom",
            description="Degreewise comparison of the symmetric product tower with the reduced N-linear model.",
            header=DOLD_THOM_HEADER,
        )
        self.model = model
        self.degree, self.stage = degree, stage
        self.params = {"model": model.label, "degree": degree, "stage": stage}

    def run(self) -> list[CaseRecord]:
        errs = self.model.verify()
        cases = [CaseRecord(
            name="simplicial identities",
            inputs={"model": self.model.label},
            sizes={f"X_{n}": self.model.size(n) for n in range(self.model.dim + 1)},
            passed=not errs,
            witnesses=errs[:10],
        )]
        for N in range(1, self.stage + 1):
            case = dold_thom_check(self.model, self.degree, N)
            cases.append(CaseRecord(
                name=f"m={self.degree} N={N}",
                inputs={"degree": self.degree, "stage": N},
                sizes={"colimit": case.colimit_size, "linear": case.linear_size, "expected": case.expected_size},
                passed=case.passed,
                witnesses=case.witnesses,
                details=case.model_dump(exclude={"witnesses"}),
            ))
        return cases


class SymmetricPowerCheck(BaseCheck):
    """SP 塔逐阶的规模、C(s+n−1, n) 公式与转移映射的单射性。"""

    def __init__(self, model: StratSet, degree: int, stage: int):
        super().__init__(
            check_name="sp",
            description="Sizes of the strict symmetric powers of a pointed model and injectivity of the tower.",
            header=DOLD_THOM_HEADER[:1],
        )
        self.model = model
        self.degree, self.stage = degree, stage
        self.params = {"model": model.label, "degree": degree, "stage": stage}

    def run(self) -> list[CaseRecord]:
        m = self.degree
        if not 0 <= m <= self.model.dim:
            raise ValueError(f"degree {m} outside 0..{self.model.dim}")
        tower = sp_tower(self.model, self.stage)
        s = self.model.size(m)
        cases = []
        for n, stage in enumerate(tower.stages):
            expected = comb(s + n - 1, n)
            injective = True
            if n < self.stage:
                step = tower.transitions[n][m]
                injective = len(set(step.values())) == len(step)
            thin = sum(stage.is_thin(m, x) for x in stage.simplices[m])
            cases.append(CaseRecord(
                name=f"SP{n} degree {m}",
                inputs={"stage": n, "degree": m},
                sizes={"simplices": stage.size(m), "expected": expected, "thin": thin},
                passed=stage.size(m) == expected and injective,
                details={"transition_injective": injective},
            ))
        return cases
