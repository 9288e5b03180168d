"""楔 / 对称幂比较：α 诱导的 hom(θ, (D^k)^{∨n}) → hom(θ, D^k)^n / Σ_n。

k = 1 时逐形状要求双射；k ≥ 2 的记录只作诊断，不影响判定。
"""

from dihom.common.base_check import BaseCheck
from dihom.common.types import CaseRecord, WedgeCase
from dihom.common.utils import get_logger
from dihom.core.omegacat import globe_chain, hom_set
from dihom.core.pasting import PastingTree
from dihom.core.thetaset import alpha_image, staircase_member, wedge_compare

logger = get_logger(__name__)

WEDGE_HEADER = [
    "orbit representative: the tuple sorted by canonical functor serialization",
    "alpha coordinate l sends chain object j to 1 if j >= l, else 0",
]


def wedge_record(case: WedgeCase, k: int, n: int) -> CaseRecord:
    theta = PastingTree.from_json(case.theta)
    details = {}
    if case.error is None:
        lhs = hom_set(theta, globe_chain(k, n))
        details["staircase_hits"] = sum(staircase_member(alpha_image(F, n), k) for F in lhs)
    else:
        details["error"] = case.error
    return CaseRecord(
        name=f"k={k} n={n} theta={theta}",
        inputs={"k": k, "n": n, "theta": case.theta},
        sizes={"lhs": case.lhs, "rhs": case.rhs, "image": case.image},
        passed=case.error is None and case.injective and case.surjective,
        diagnostic=k >= 2,
        witnesses=case.witnesses,
        details={"injective": case.injective, "surjective": case.surjective, **details},
    )


class WedgeCheck(BaseCheck):
    def __init__(self, k: int, n: int, max_dim: int, max_edges: int):
        super().__init__(
            check_name="check-wedge",
            description="Compares the nerve of the n-fold wedge of D^k with Sigma_n-orbits of n-tuples of cells.",
            header=WEDGE_HEADER,
        )
        self.k, self.n = k, n
        self.max_dim, self.max_edges = max_dim, max_edges
        self.params = {"k": k, "n": n, "max_dim": max_dim, "max_edges": max_edges}

    def run(self) -> list[CaseRecord]:
        cases = wedge_compare(self.k, self.n, self.max_dim, self.max_edges)
        return [wedge_record(c, self.k, self.n) for c in cases]
