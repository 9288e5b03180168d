"""M[X] 的物化载体：逐度列出权重界内的组合，并抽查同态律。"""

from dihom.common.base_check import BaseCheck
from dihom.common.types import CaseRecord
from dihom.common.utils import get_logger
from dihom.core.monoid import CommMonoid
from dihom.core.strat import StratSet, m_linear, m_linear_reduced

logger = get_logger(__name__)


class LinearModelCheck(BaseCheck):
    def __init__(self, model: StratSet, coeff: CommMonoid, degree: int, bound: int, reduced: bool):
        super().__init__(
            check_name="nmod",
            description="Materialized carrier of the M-linear model of a stratified simplicial set.",
        )
        self.model, self.coeff = model, coeff
        self.degree, self.bound, self.reduced = degree, bound, reduced
        self.params = {"model": model.label, "coeff": coeff.label, "degree": degree, "bound": bound,
                       "reduced": reduced}

    def run(self) -> list[CaseRecord]:
        if not 0 <= self.degree <= self.model.dim:
            raise ValueError(f"degree {self.degree} outside 0..{self.model.dim}")
        build = m_linear_reduced if self.reduced else m_linear
        linear = build(self.model, self.coeff, self.bound)
        carrier = linear.carrier(self.degree)
        errs = linear.verify(weight_bound=min(self.bound, 2))
        return [CaseRecord(
            name=f"{linear.label} degree {self.degree}",
            inputs=self.params,
            sizes={"elements": len(carrier), "thin": sum(linear.is_thin(self.degree, c) for c in carrier)},
            passed=not errs,
            witnesses=errs[:10],
            details={"elements": [c.to_json(self.coeff) for c in carrier]},
        )]
