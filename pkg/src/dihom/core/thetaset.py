"""逐度 Θ-集演算：神经、幂的 Σ_n-轨道商、严格对称幂，以及楔与阶梯的比较。

核心职责：
- `nerve`：在有界形状目录上计算 θ ↦ hom_set(θ, C)，逐形状记录错误；
- `power_orbits` / `sym`：逐度的严格集合商（多重集），规模为 C(s+n−1, n)；
- `wedge_compare`：α 诱导的 N((D^k)^{∨n}) → N(D^k)^{×n}_{Σ_n} 的逐度单射 / 满射检查；
- `staircase_member` / `staircase_sort`：阶梯子范畴 Ξ 的成员判定与排序置换；
- `reduced_chain_colimit_check`：链 D^0 → D^k → … 的插入映射与稳定化记录。

实现要点：
- 轨道的规范代表是按 `functor_key` 排序后的元组，规范化幂等且与置换无关；
- 逐形状的工作互不依赖，通过 `fan_out` 扇出，结果按目录顺序合并。
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from dihom.common.errors import DihomError, DimensionMismatchError, NoSortError
from dihom.common.runner import fan_out
from dihom.common.types import ChainColimitCase, WedgeCase
from dihom.common.utils import get_logger
from dihom.core.omegacat import (
    IDENTITY,
    ChainCoordinate,
    Functor,
    OmegaCat,
    functor_key,
    globe,
    globe_chain,
    hom_set,
    postcompose,
)
from dihom.core.pasting import PastingTree, enumerate_trees

logger = get_logger(__name__)

OrbitElement = tuple


@dataclass(frozen=True)
class ThetaFamily:
    """逐度 Θ-集：目录中的每个形状对应一组规范编码。"""

    catalog: tuple[PastingTree, ...]
    elements: dict = field(default_factory=dict)
    errors: dict = field(default_factory=dict)
    provenance: str = ""

    def at(self, t: PastingTree) -> tuple:
        if t in self.errors:
            raise DihomError(f"degree {t} of {self.provenance} failed: {self.errors[t]}")
        return self.elements[t]

    def sizes(self) -> dict[str, int | None]:
        return {t.to_text(): (None if t in self.errors else len(self.elements[t])) for t in self.catalog}


def canonical_orbit(entries: Iterable[Functor]) -> OrbitElement:
    """Σ_n-轨道的规范代表：按规范序列化排序后的元组。"""
    return tuple(sorted(entries, key=functor_key))


def nerve(C: OmegaCat, max_dim: int, max_edges: int) -> ThetaFamily:
    catalog = tuple(enumerate_trees(max_dim, max_edges))

    def degree(t: PastingTree):
        try:
            return tuple(hom_set(t, C)), None
        except DihomError as e:
            logger.error(f"Nerve of {C} failed at degree {t}: {e}")
            return None, str(e)

    elements, errors = {}, {}
    for t, (value, error) in zip(catalog, fan_out(degree, catalog)):
        if error is None:
            elements[t] = value
        else:
            errors[t] = error
    return ThetaFamily(catalog, elements, errors, provenance=f"nerve-of {C}")


def power_orbits(F: ThetaFamily, n: int) -> ThetaFamily:
    """θ ↦ F(θ) 上大小为 n 的多重集。"""
    if n < 0:
        raise ValueError(f"power must be >= 0, got {n}")
    elements = {}
    for t, value in F.elements.items():
        ordered = sorted(value, key=functor_key)
        elements[t] = tuple(itertools.combinations_with_replacement(ordered, n))
    return ThetaFamily(F.catalog, elements, dict(F.errors), provenance=f"orbit-of power-of({F.provenance}, {n})")


def sym(C: OmegaCat, n_max: int, max_dim: int, max_edges: int) -> list[ThetaFamily]:
    """⨿_{n ≤ n_max} D^n(N(C)) 的逐度模型。"""
    base = nerve(C, max_dim, max_edges)
    return [power_orbits(base, n) for n in range(n_max + 1)]


# -- 胞腔签名与阶梯 -----------------------------------------------------------

TOP = None  # D^k 唯一的 k 维胞腔没有“侧”


def cell_signatures(F: Functor, k: int) -> list[tuple[int, tuple[int, int | None]]]:
    """按深度优先列出每个生成元位置的 (层级, (维数, 侧))。

    层级为节点深度；维数为像胞腔的非退化维数；侧 ∈ {0, 1}，顶胞腔为 None。
    """
    out: list = []

    def walk(enc: Functor, depth: int, fixed: tuple | None) -> None:
        objs, cells = enc
        for a in objs:
            if fixed is not None:
                out.append((depth, fixed))
            elif depth == k:
                out.append((depth, (k, TOP)))
            else:
                if a not in (0, 1):
                    raise DimensionMismatchError(f"object {a!r} is not a cell of D^{k} at depth {depth}")
                out.append((depth, (depth, a)))
        for i, cell in enumerate(cells):
            if fixed is not None:
                child = fixed
            elif depth == k:
                child = (k, TOP)
            elif objs[i] == objs[i + 1]:
                child = (depth, objs[i])
            else:
                child = None
            walk(cell, depth + 1, child)

    walk(F, 0, None)
    return out


def _shape(F: Functor) -> tuple:
    objs, cells = F
    return (len(objs), tuple(_shape(c) for c in cells))


def _ring_ok(sigs: Sequence[tuple[int, int | None]], m: int, k: int) -> bool:
    """窗口嵌套条件（对 m 层递归）。

    Ξ 的 ℓ-态射是满足 i₀ ≤ … ≤ i_ℓ ≤ j_ℓ ≤ … ≤ j₀ 的 n 元组，这里采用的读法：
    - 第 m 层窗口是维数 > m 的项构成的连续段；
    - m = 0 时窗口之前全为侧 1 的对象，之后全为侧 0 的对象（即 1^a ⋯ 0^c）；
    - m ≥ 1 时窗口外的 m 维项（环）按 0 在前、1 在后的弱递增排列；
    - m = k 时只剩顶胞腔，无条件成立。
    k = 1 时该读法恰为 1^a e^b 0^c。
    """
    if m >= k:
        return True
    inner = [i for i, (d, _) in enumerate(sigs) if d > m]
    if inner:
        first, last = inner[0], inner[-1]
        if last - first + 1 != len(inner):
            return False
        left, right, window = sigs[:first], sigs[last + 1:], sigs[first:last + 1]
    else:
        left, right, window = sigs, [], []
    if m == 0:
        if inner:
            ok = all(s == 1 for _, s in left) and all(s == 0 for _, s in right)
        else:
            sides = [s for _, s in left]
            ok = sides == sorted(sides, reverse=True)
    else:
        sides = [s for _, s in list(left) + list(right)]
        ok = sides == sorted(sides)
    return ok and _ring_ok(window, m + 1, k)


def _check_common(entries: Sequence[Functor], k: int) -> list[list]:
    if k < 1:
        raise DimensionMismatchError(f"staircase needs k >= 1, got {k}")
    if not entries:
        return []
    shape = _shape(entries[0])
    if any(_shape(e) != shape for e in entries):
        raise DimensionMismatchError("entries are not functors from a common shape")
    return [cell_signatures(e, k) for e in entries]


def staircase_member(entries: Sequence[Functor], k: int) -> bool:
    """元组是否落在 Ξ 中：对每个生成元位置检查窗口条件。"""
    per_entry = _check_common(entries, k)
    if not per_entry:
        return True
    for pos in range(len(per_entry[0])):
        sigs = [sig[pos][1] for sig in per_entry]
        if not _ring_ok(sigs, 0, k):
            return False
    return True


def _stage(F: Functor) -> int:
    # 0 侧对象个数：1 侧 < 活跃 < 0 侧
    return sum(1 for a in F[0] if a == 0)


def staircase_sort(entries: Sequence[Functor], k: int) -> tuple[tuple[int, ...], tuple[Functor, ...]]:
    """返回 (σ, 排序后的元组)，sorted[i] = entries[σ[i]]。

    k = 1 时是按阶段
    （1 侧 < 活跃 < 0 侧）的计数排序；k ≥ 2 时先试计数排序，再穷举置换。
    """
    entries = tuple(entries)
    _check_common(entries, k)
    n = len(entries)
    buckets: dict[int, list[int]] = defaultdict(list)
    for i, e in enumerate(entries):
        buckets[_stage(e)].append(i)
    sigma = tuple(i for stage in sorted(buckets) for i in buckets[stage])
    candidate = tuple(entries[i] for i in sigma)
    if staircase_member(candidate, k):
        return sigma, candidate
    if k >= 2:
        for perm in itertools.permutations(range(n)):
            candidate = tuple(entries[i] for i in perm)
            if staircase_member(candidate, k):
                return perm, candidate
        logger.warning(f"NoSort: no permutation of {n} functors into D^{k} lands in the staircase")
    raise NoSortError(f"no permutation of the {n}-tuple lands in the staircase for k={k}")


# -- 楔比较 -------------------------------------------------------------------


def alpha_image(F: Functor, n: int) -> tuple[Functor, ...]:
    """α∘F 的 n 个坐标。"""
    return tuple(postcompose(F, ChainCoordinate(ell)) for ell in range(1, n + 1))


def _wedge_case(t: PastingTree, k: int, n: int) -> WedgeCase:
    try:
        lhs = hom_set(t, globe_chain(k, n))
        cells = sorted(hom_set(t, globe(k)), key=functor_key)
    except DihomError as e:
        return WedgeCase(theta=t.to_json(), lhs=0, rhs=0, image=0, injective=False, surjective=False, error=str(e))
    fibres: dict[OrbitElement, list[Functor]] = defaultdict(list)
    for F in lhs:
        fibres[canonical_orbit(alpha_image(F, n))].append(F)
    orbits = list(itertools.combinations_with_replacement(cells, n))
    collisions = [
        {"orbit": [functor_key(x) for x in orbit], "preimages": [functor_key(F) for F in pre]}
        for orbit, pre in sorted(fibres.items(), key=lambda kv: [functor_key(x) for x in kv[0]])
        if len(pre) > 1
    ]
    missing = [[functor_key(x) for x in orbit] for orbit in orbits if orbit not in fibres]
    return WedgeCase(
        theta=t.to_json(),
        lhs=len(lhs),
        rhs=len(orbits),
        image=len(fibres),
        injective=not collisions,
        surjective=not missing,
        witnesses=collisions + [{"missing": m} for m in missing],
    )


def wedge_compare(k: int, n: int, max_dim: int, max_edges: int) -> list[WedgeCase]:
    """逐形状比较 hom(θ, (D^k)^{∨n}) 与 hom(θ, D^k)^n 的 Σ_n-轨道。"""
    if k < 1 or n < 1:
        raise ValueError(f"wedge comparison needs k >= 1 and n >= 1, got k={k}, n={n}")
    catalog = enumerate_trees(max_dim, max_edges)
    cases = fan_out(lambda t: _wedge_case(t, k, n), catalog)
    for case in cases:
        if not (case.injective and case.surjective):
            level = logger.warning if k >= 2 else logger.error
            level(f"Wedge comparison k={k} n={n} at {case.theta}: lhs={case.lhs} rhs={case.rhs} "
                  f"injective={case.injective} surjective={case.surjective}")
    return cases


# -- 链余极限 -----------------------------------------------------------------

CHAIN_INSERTION_NOTE = (
    "transition (D^k)^{∨n} -> (D^k)^{∨(n+1)} fixes the basepoint 0 and glues the new copy at the far end "
    "(object j -> j); strict degreewise shadow of the pointed colimit"
)


def _pattern(F: Functor) -> tuple:
    """重标号归一：对象换成秩，子函子递归归一（去掉间隔长度）。"""
    objs, cells = F
    ranks = {v: r for r, v in enumerate(sorted(set(objs)))}
    return (tuple(ranks[a] for a in objs), tuple(_pattern(c) for c in cells))


def _chain_case(t: PastingTree, k: int, n_max: int) -> ChainColimitCase:
    try:
        stages = [hom_set(t, globe_chain(k, n)) for n in range(n_max + 1)]
    except DihomError as e:
        return ChainColimitCase(theta=t.to_json(), generators=t.width, stage_sizes=[], transitions_injective=[],
                                new_elements=[], pattern_counts=[], stabilization_index=-1, error=str(e))
    injective, new = [], [len(stages[0])]
    for prev, nxt in zip(stages, stages[1:]):
        image = {postcompose(F, IDENTITY) for F in prev}
        injective.append(len(image) == len(prev) and image <= set(nxt))
        new.append(len(set(nxt) - image))
    patterns = [len({_pattern(F) for F in stage}) for stage in stages]
    index = next(i for i in range(len(patterns)) if all(p == patterns[i] for p in patterns[i:]))
    return ChainColimitCase(
        theta=t.to_json(),
        generators=t.width,
        stage_sizes=[len(s) for s in stages],
        transitions_injective=injective,
        new_elements=new,
        pattern_counts=patterns,
        stabilization_index=index,
    )


def reduced_chain_colimit_check(k: int, n_max: int, max_dim: int, max_edges: int) -> list[ChainColimitCase]:
    """D^0 → D^k → … → (D^k)^{∨n_max} 的插入映射：单射性、新元素数与模式稳定化下标。"""
    if k != 1:
        raise ValueError(f"the chain colimit check is verified for k = 1 only, got k={k}")
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    catalog = enumerate_trees(max_dim, max_edges)
    return fan_out(lambda t: _chain_case(t, k, n_max), catalog)
