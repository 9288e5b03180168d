"""球面的范畴同调：S^n 的约化 M-线性模型与 B^n(M) 的比较。

核心职责：
- n = 1：ho1(M~[S¹]) 在基点的自同态幺半群与 (M, +) 在权重界内同构；
- n ≥ 2：ho1(M~[S^n]) 平凡、第 n 度载体恰为 {a·ι}，有限 M 时 Π_{n−1}(B^n M) 的自同态类即 M；
- 带点自同态：B^n(M) → B^n(M) 的带点函子即幺半群同态，M = ℕ 时为乘法。
"""

from itertools import product

from dihom.common.base_check import BaseCheck
from dihom.common.types import CaseRecord
from dihom.common.utils import get_logger
from dihom.core.homotopy import compare_endo, ho1, linear_sphere_letters, pi_n
from dihom.core.monoid import CommMonoid, MonoidKind, compose_homs
from dihom.core.omegacat import BULLET, delooped_monoid, pointed_monoid_endos
from dihom.core.strat import circle_model, combination, m_linear_reduced, sphere_model

logger = get_logger(__name__)


class SphereCheck(BaseCheck):
    def __init__(self, coeff: CommMonoid, n: int, bound: int):
        super().__init__(
            check_name="check-sphere",
            description="Categorical M-homology of spheres against iterated deloopings of M.",
            header=["ho1 classes are represented by the shortest word, ties broken by letter labels"],
        )
        self.coeff, self.n, self.bound = coeff, n, bound
        self.params = {"coeff": coeff.label, "n": n, "bound": bound}

    def run(self) -> list[CaseRecord]:
        if self.n < 1:
            raise ValueError(f"sphere dimension must be >= 1, got {self.n}")
        cases = self._circle() if self.n == 1 else self._higher()
        cases.append(self._pointed_endos())
        return cases

    def _circle(self) -> list[CaseRecord]:
        M, bound = self.coeff, self.bound
        model = m_linear_reduced(circle_model(dim=2), M, bound)
        result = ho1(model, word_bound=bound, weight_bound=bound)
        cmp = compare_endo(result, linear_sphere_letters(M, bound), M.op)
        return [CaseRecord(
            name=f"endo(ho1({model.label})) vs {M.label}",
            inputs=self.params,
            sizes={"classes": len(result.representatives), "monoid": len(M.elements_up_to(bound))},
            passed=cmp.injective and cmp.surjective and cmp.table_matches,
            truncated=cmp.truncated or not result.endo.complete,
            witnesses=cmp.witnesses,
            details={"endo": result.endo.model_dump()},
        )]

    def _higher(self) -> list[CaseRecord]:
        M, n, bound = self.coeff, self.n, self.bound
        X = sphere_model(n, dim=max(n, 2))
        model = m_linear_reduced(X, M, bound)
        result = ho1(model, word_bound=bound, weight_bound=bound)
        cases = [CaseRecord(
            name=f"ho1({model.label}) is trivial",
            inputs=self.params,
            sizes={"classes": len(result.representatives)},
            passed=len(result.representatives) == 1,
        )]
        top = tuple(range(n + 1))
        expected = {combination(M, [(top, a)]) for a in M.elements_up_to(bound)}
        carrier = set(model.carrier(n))
        cases.append(CaseRecord(
            name=f"degree {n} carrier of {model.label}",
            inputs=self.params,
            sizes={"carrier": len(carrier), "monoid": len(expected)},
            passed=carrier == expected and model.generators(n) == (top,),
        ))
        if M.is_finite:
            pi = pi_n(delooped_monoid(n, M), BULLET, n - 1)
            table = pi.endo.table if pi.endo else {}
            elems = M.elements()
            # 类按标签排序，这里按同样顺序对齐
            order = sorted(elems, key=M.element_label)
            pos = {e: i for i, e in enumerate(order)}
            ok = pi.endo is not None and len(pi.endo.classes) == len(elems) and all(
                table.get(f"{pos[a]},{pos[b]}") == pos[M.op(a, b)] for a, b in product(elems, repeat=2))
            cases.append(CaseRecord(
                name=f"Pi_{n - 1}(B^{n}({M.label})) endomorphisms",
                inputs=self.params,
                sizes={"classes": len(pi.endo.classes) if pi.endo else 0, "monoid": len(elems)},
                passed=ok,
                details={"structure": pi.structure, "composition": pi.composition},
            ))
        return cases

    def _pointed_endos(self) -> CaseRecord:
        M, n, bound = self.coeff, self.n, self.bound
        search = pointed_monoid_endos(n, M, M, bound)
        details = {"homomorphisms": [h.describe() for h in search.homs]}
        passed = True
        if M.kind is MonoidKind.FREE_COMMUTATIVE and M.generators_count == 1:
            by_image = {h.images[0][0]: h for h in search.homs}
            passed = sorted(by_image) == list(range(bound + 1))
            for a, b in product(range(min(bound, 2) + 1), range(min(bound, 3) + 1)):
                composite = compose_homs(by_image[a], by_image[b])
                if composite.images != ((a * b,),):
                    passed = False
        return CaseRecord(
            name=f"pointed endofunctors of B^{n}({M.label})",
            inputs=self.params,
            sizes={"homomorphisms": len(search.homs)},
            passed=passed,
            diagnostic=not (M.kind is MonoidKind.FREE_COMMUTATIVE and M.generators_count == 1),
            truncated=search.truncated,
            details=details,
        )
