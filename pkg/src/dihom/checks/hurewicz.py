"""π₀-Hurewicz 与 ho1：自由幺半群交换化的预言 vs 同余闭包得到的自同态幺半群。"""

from dihom.common.base_check import BaseCheck
from dihom.common.types import CaseRecord
from dihom.common.utils import get_logger
from dihom.core.homotopy import ho1, hurewicz_check
from dihom.core.monoid import CommMonoid
from dihom.core.strat import StratSet, m_linear_reduced

logger = get_logger(__name__)


class HurewiczCheck(BaseCheck):
    def __init__(self, g: int, coeff: CommMonoid, bound: int):
        super().__init__(
            check_name="check-hurewicz",
            description="Letter-count abelianization against ho1 of the reduced linear model of a wedge of circles.",
            header=["generator i maps to the class of the one-letter word 1*e_i"],
        )
        self.g, self.coeff, self.bound = g, coeff, bound
        self.params = {"g": g, "coeff": coeff.label, "bound": bound}

    def run(self) -> list[CaseRecord]:
        case = hurewicz_check(self.g, self.coeff, self.bound)
        return [CaseRecord(
            name=f"g={self.g} coeff={self.coeff.label}",
            inputs=self.params,
            sizes={"lhs": case.lhs_size, "rhs": case.rhs_size},
            passed=case.passed,
            truncated=case.truncated,
            witnesses=case.witnesses,
            details=case.model_dump(exclude={"witnesses"}),
        )]


class Ho1Check(BaseCheck):
    """约化 M-线性模型在基点的 EndoMonoidTable 与有界展示。"""

    def __init__(self, model: StratSet, coeff: CommMonoid, bound: int, word_bound: int):
        super().__init__(
            check_name="ho1",
            description="Bounded congruence closure of the 1-skeleton of the reduced linear model.",
        )
        self.model, self.coeff = model, coeff
        self.bound, self.word_bound = bound, word_bound
        self.params = {"model": model.label, "coeff": coeff.label, "bound": bound, "word_bound": word_bound}

    def run(self) -> list[CaseRecord]:
        linear = m_linear_reduced(self.model, self.coeff, self.bound)
        result = ho1(linear, word_bound=self.word_bound, weight_bound=self.bound)
        return [CaseRecord(
            name=f"ho1({linear.label})",
            inputs=self.params,
            sizes={"words": result.presentation.words, "classes": result.presentation.classes,
                   "endo_classes": len(result.representatives)},
            passed=True,
            truncated=not result.endo.complete,
            details={"endo": result.endo.model_dump(), "relations": len(result.presentation.relations)},
        )]
