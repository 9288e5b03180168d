"""分层单纯集（StratSet）与分层单纯交换幺半群（StratCMonoid）。

核心职责：
- `StratSet`：截断到维数 d 的单纯集，带面 / 退化映射、逐度“薄”单形集合与可选基点；
- 构造：标准单形、`flat` / `sharp`、`strat_product`、`collapse`、不交并、
  有限 1-范畴的 Street 神经，以及内置模型 `builtin_model`（点、S¹、8 字形等）；
- `m_linear` / `m_linear_reduced`：M 系数线性组合模型（按权重截断物化）；
- `sp_power` / `sp_tower` / `dold_thom_check`：对称积塔与约化 ℕ-线性模型的逐度比较。

实现要点：
- 单形 id 可为任意可哈希值，排序与序列化统一用 `simplex_key`；JSON 中 id 为字符串；
- 约化模型删去基点的迭代退化（每度恰一个）对应的列，空组合是单位且是薄的；
- 载体只物化到权重界，但面 / 退化映射对任意组合精确。
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field, replace
from functools import cached_property
from math import comb
from typing import Any, Callable, Hashable, Iterable, Mapping

from pydantic import BaseModel, Field, ValidationError

from dihom.common.errors import (
    InvalidCategoryError,
    InvalidPresentationError,
    NoBasepointError,
    NotClosedError,
)
from dihom.common.types import DoldThomCase
from dihom.common.utils import get_logger
from dihom.core.monoid import CommMonoid, Element

logger = get_logger(__name__)

Simplex = Hashable
COLLAPSED = "*"
DEFAULT_MODEL_DIM = 4


def simplex_key(x: Simplex) -> str:
    return x if isinstance(x, str) else json.dumps(x, separators=(",", ":"), ensure_ascii=False)


def _sorted(xs: Iterable[Simplex]) -> tuple:
    return tuple(sorted(set(xs), key=simplex_key))


@dataclass(eq=False)
class StratSet:
    """截断到维数 dim 的分层单纯集。

    faces[(n, i)] 是 d_i: X_n → X_{n−1}；degens[(n, i)] 是 s_i: X_n → X_{n+1}（n < dim）。
    thin[n] ⊆ X_n，thin[0] 恒为空。
    """

    dim: int
    simplices: tuple[tuple[Simplex, ...], ...]
    faces: dict[tuple[int, int], dict]
    degens: dict[tuple[int, int], dict]
    thin: tuple[frozenset, ...]
    basepoint: Simplex | None = None
    label: str = "X"

    def size(self, n: int) -> int:
        return len(self.simplices[n])

    def face(self, n: int, i: int, x: Simplex) -> Simplex:
        return self.faces[(n, i)][x]

    def degen(self, n: int, i: int, x: Simplex) -> Simplex:
        return self.degens[(n, i)][x]

    def is_thin(self, n: int, x: Simplex) -> bool:
        return n >= 1 and x in self.thin[n]

    @cached_property
    def degenerate(self) -> tuple[frozenset, ...]:
        out = [frozenset()]
        for n in range(1, self.dim + 1):
            out.append(frozenset(y for i in range(n) for y in self.degens[(n - 1, i)].values()))
        return tuple(out)

    def basepoint_simplex(self, n: int) -> Simplex:
        """基点在第 n 度的迭代退化 s_0^n(*)。"""
        if self.basepoint is None:
            raise NoBasepointError(f"{self.label} has no basepoint")
        x = self.basepoint
        for m in range(n):
            x = self.degen(m, 0, x)
        return x

    def nondegenerate(self, n: int) -> tuple:
        return tuple(x for x in self.simplices[n] if x not in self.degenerate[n])

    def verify(self) -> list[str]:
        """穷举检查单纯恒等式、映射的全定义性与“退化 ⊆ 薄”；返回违例描述。"""
        errs: list[str] = []
        sets = [set(s) for s in self.simplices]
        for n in range(1, self.dim + 1):
            for i in range(n + 1):
                m = self.faces.get((n, i), {})
                if set(m) != sets[n] or not set(m.values()) <= sets[n - 1]:
                    errs.append(f"d_{i} on degree {n} is not a total map X_{n} -> X_{n - 1}")
        for n in range(self.dim):
            for i in range(n + 1):
                m = self.degens.get((n, i), {})
                if set(m) != sets[n] or not set(m.values()) <= sets[n + 1]:
                    errs.append(f"s_{i} on degree {n} is not a total map X_{n} -> X_{n + 1}")
        if errs:
            return errs
        for n in range(2, self.dim + 1):
            for x in self.simplices[n]:
                for j in range(1, n + 1):
                    for i in range(j):
                        lhs = self.face(n - 1, i, self.face(n, j, x))
                        rhs = self.face(n - 1, j - 1, self.face(n, i, x))
                        if lhs != rhs:
                            errs.append(f"d_{i} d_{j} != d_{j - 1} d_{i} at {simplex_key(x)}")
        for n in range(self.dim):
            for x in self.simplices[n]:
                for j in range(n + 1):
                    y = self.degen(n, j, x)
                    for i in range(n + 2):
                        lhs = self.face(n + 1, i, y)
                        if i < j:
                            rhs = self.degen(n - 1, j - 1, self.face(n, i, x))
                        elif i in (j, j + 1):
                            rhs = x
                        else:
                            rhs = self.degen(n - 1, j, self.face(n, i - 1, x))
                        if lhs != rhs:
                            errs.append(f"d_{i} s_{j} identity fails at {simplex_key(x)}")
        for n in range(self.dim - 1):
            for x in self.simplices[n]:
                for j in range(n + 1):
                    for i in range(j + 1):
                        lhs = self.degen(n + 1, i, self.degen(n, j, x))
                        rhs = self.degen(n + 1, j + 1, self.degen(n, i, x))
                        if lhs != rhs:
                            errs.append(f"s_{i} s_{j} != s_{j + 1} s_{i} at {simplex_key(x)}")
        if self.thin[0]:
            errs.append("degree 0 cannot carry thin simplices")
        for n in range(1, self.dim + 1):
            if not self.thin[n] <= sets[n]:
                errs.append(f"thin set in degree {n} is not a subset of X_{n}")
            if not self.degenerate[n] <= self.thin[n]:
                errs.append(f"degenerate {n}-simplices are not all thin")
        if self.basepoint is not None and self.basepoint not in sets[0]:
            errs.append(f"basepoint {simplex_key(self.basepoint)} is not a vertex")
        return errs

    def to_json(self) -> dict[str, Any]:
        k = simplex_key
        return {
            "label": self.label,
            "dim": self.dim,
            "simplices": {str(n): [k(x) for x in xs] for n, xs in enumerate(self.simplices)},
            "faces": {f"{n},{i}": {k(x): k(y) for x, y in m.items()} for (n, i), m in sorted(self.faces.items())},
            "degens": {f"{n},{i}": {k(x): k(y) for x, y in m.items()} for (n, i), m in sorted(self.degens.items())},
            "thin": {str(n): sorted(k(x) for x in self.thin[n]) for n in range(1, self.dim + 1)},
            "basepoint": None if self.basepoint is None else k(self.basepoint),
        }

    @classmethod
    def from_json(cls, data: Any) -> StratSet:
        try:
            spec = StratSetFile.model_validate(data)
        except ValidationError as e:
            raise InvalidPresentationError(f"invalid stratified simplicial set: {e}")
        simplices = tuple(tuple(spec.simplices.get(str(n), [])) for n in range(spec.dim + 1))

        def maps(raw: dict[str, dict[str, str]]) -> dict:
            out = {}
            for key, m in raw.items():
                n, sep, i = key.partition(",")
                if not sep or not n.isdigit() or not i.isdigit():
                    raise InvalidPresentationError(f"map key {key!r} must read 'n,i'")
                out[(int(n), int(i))] = dict(m)
            return out

        thin = (frozenset(),) + tuple(frozenset(spec.thin.get(str(n), [])) for n in range(1, spec.dim + 1))
        X = cls(spec.dim, simplices, maps(spec.faces), maps(spec.degens), thin, spec.basepoint, spec.label or "X")
        errs = X.verify()
        if errs:
            raise InvalidPresentationError(f"{X.label} is not a stratified simplicial set: {errs[0]}")
        return X


class StratSetFile(BaseModel):
    """分层单纯集的 JSON 文件格式；id 一律为字符串。"""
    dim: int = Field(ge=0, description="顶维数 d")
    simplices: dict[str, list[str]] = Field(description='"n" -> X_n 的 id 列表')
    faces: dict[str, dict[str, str]] = Field(default_factory=dict, description='"n,i" -> d_i: X_n → X_{n−1}')
    degens: dict[str, dict[str, str]] = Field(default_factory=dict, description='"n,i" -> s_i: X_n → X_{n+1}')
    thin: dict[str, list[str]] = Field(default_factory=dict, description='"n" -> 薄单形 id（n ≥ 1）')
    basepoint: str | None = None
    label: str | None = None


def _materialize(
    dim: int,
    simplices: Callable[[int], Iterable[Simplex]],
    face: Callable[[int, int, Simplex], Simplex],
    degen: Callable[[int, int, Simplex], Simplex],
    thin: Callable[[int, Simplex], bool] | None = None,
    basepoint: Simplex | None = None,
    label: str = "X",
) -> StratSet:
    """由逐度函数构造 StratSet；thin 缺省时取退化单形（最小分层）。"""
    if dim < 0:
        raise ValueError(f"dimension must be >= 0, got {dim}")
    xs = tuple(_sorted(simplices(n)) for n in range(dim + 1))
    faces = {(n, i): {x: face(n, i, x) for x in xs[n]} for n in range(1, dim + 1) for i in range(n + 1)}
    degens = {(n, i): {x: degen(n, i, x) for x in xs[n]} for n in range(dim) for i in range(n + 1)}
    X = StratSet(dim, xs, faces, degens, tuple(frozenset() for _ in range(dim + 1)), basepoint, label)
    if thin is None:
        return flat(X)
    marks = (frozenset(),) + tuple(frozenset(x for x in xs[n] if thin(n, x)) for n in range(1, dim + 1))
    return replace(X, thin=marks)


# -- 构造器 -------------------------------------------------------------------


def flat(X: StratSet) -> StratSet:
    """最小分层：薄 = 退化。"""
    return replace(X, thin=X.degenerate)


def sharp(X: StratSet) -> StratSet:
    """最大分层：所有正维单形都是薄的。"""
    marks = (frozenset(),) + tuple(frozenset(X.simplices[n]) for n in range(1, X.dim + 1))
    return replace(X, thin=marks)


def standard_simplex(n: int, dim: int = DEFAULT_MODEL_DIM) -> StratSet:
    """Δⁿ（最小分层）：第 m 度为 {0..n} 中长 m+1 的弱增序列。"""
    if n < 0:
        raise ValueError(f"simplex dimension must be >= 0, got {n}")
    return _materialize(
        dim,
        lambda m: itertools.combinations_with_replacement(range(n + 1), m + 1),
        lambda m, i, x: x[:i] + x[i + 1:],
        lambda m, i, x: x[:i + 1] + x[i:],
        basepoint=(0,),
        label=f"Δ{n}",
    )


def strat_product(X: StratSet, Y: StratSet) -> StratSet:
    """逐度积；(x, y) 为薄当且仅当 x、y 都薄。维数取两者较小值。"""
    d = min(X.dim, Y.dim)
    bp = None if X.basepoint is None or Y.basepoint is None else (X.basepoint, Y.basepoint)
    return _materialize(
        d,
        lambda n: itertools.product(X.simplices[n], Y.simplices[n]),
        lambda n, i, p: (X.face(n, i, p[0]), Y.face(n, i, p[1])),
        lambda n, i, p: (X.degen(n, i, p[0]), Y.degen(n, i, p[1])),
        lambda n, p: X.is_thin(n, p[0]) and Y.is_thin(n, p[1]),
        basepoint=bp,
        label=f"{X.label}×{Y.label}",
    )


def disjoint_union(*parts: StratSet) -> StratSet:
    """不交并，第 i 个分量的单形记为 (i, x)；没有基点。"""
    if not parts:
        raise ValueError("disjoint_union needs at least one part")
    d = min(p.dim for p in parts)
    return _materialize(
        d,
        lambda n: ((i, x) for i, p in enumerate(parts) for x in p.simplices[n]),
        lambda n, i, t: (t[0], parts[t[0]].face(n, i, t[1])),
        lambda n, i, t: (t[0], parts[t[0]].degen(n, i, t[1])),
        lambda n, t: parts[t[0]].is_thin(n, t[1]),
        label=" ⊔ ".join(p.label for p in parts),
    )


def generated_subset(X: StratSet, generators: Mapping[int, Iterable[Simplex]]) -> dict[int, frozenset]:
    """在面与退化映射下生成的子单纯集（逐度）。"""
    members = [set(xs) for xs in X.simplices]
    found: dict[int, set] = {n: set() for n in range(X.dim + 1)}
    stack = [(n, x) for n, xs in generators.items() for x in xs]
    while stack:
        n, x = stack.pop()
        if x in found[n]:
            continue
        if not 0 <= n <= X.dim or x not in members[n]:
            raise KeyError(f"{simplex_key(x)} is not a {n}-simplex of {X.label}")
        found[n].add(x)
        if n > 0:
            stack.extend((n - 1, X.face(n, i, x)) for i in range(n + 1))
        if n < X.dim:
            stack.extend((n + 1, X.degen(n, i, x)) for i in range(n + 1))
    return {n: frozenset(xs) for n, xs in found.items()}


def collapse(X: StratSet, A: Mapping[int, Iterable[Simplex]]) -> StratSet:
    """X/A：逐度把 A_n 压成一点 `*`，薄 = 薄单形的像，基点为压缩点。"""
    sub = {n: frozenset(A.get(n, ())) for n in range(X.dim + 1)}
    if not sub[0]:
        raise ValueError("collapse needs a non-empty subcomplex")
    for n in range(X.dim + 1):
        members = set(X.simplices[n])
        for x in sub[n]:
            if x not in members:
                raise NotClosedError(f"{simplex_key(x)} is not a {n}-simplex of {X.label}")
            if n > 0 and any(X.face(n, i, x) not in sub[n - 1] for i in range(n + 1)):
                raise NotClosedError(f"subcomplex is not closed under faces at {simplex_key(x)}")
            if n < X.dim and any(X.degen(n, i, x) not in sub[n + 1] for i in range(n + 1)):
                raise NotClosedError(f"subcomplex is not closed under degeneracies at {simplex_key(x)}")

    def q(n: int, x: Simplex) -> Simplex:
        return COLLAPSED if x in sub[n] else x

    return _materialize(
        X.dim,
        lambda n: (q(n, x) for x in X.simplices[n]),
        lambda n, i, x: COLLAPSED if x == COLLAPSED else q(n - 1, X.face(n, i, x)),
        lambda n, i, x: COLLAPSED if x == COLLAPSED else q(n + 1, X.degen(n, i, x)),
        lambda n, x: x == COLLAPSED or X.is_thin(n, x),
        basepoint=COLLAPSED,
        label=f"{X.label}/A",
    )


def simplex_boundary(n: int, dim: int = DEFAULT_MODEL_DIM) -> StratSet:
    """∂Δⁿ：由顶单形的全部面生成的子单纯集（最小分层，基点 (0,)）。"""
    if n < 1:
        raise ValueError(f"boundary needs n >= 1, got {n}")
    if n > dim:
        raise ValueError(f"model dimension {dim} is below the simplex dimension {n}")
    simplex = standard_simplex(n, dim)
    top = tuple(range(n + 1))
    sub = generated_subset(simplex, {n - 1: [simplex.face(n, i, top) for i in range(n + 1)]})
    return _materialize(
        dim,
        lambda m: sub[m],
        simplex.face,
        simplex.degen,
        basepoint=(0,),
        label=f"∂Δ{n}",
    )


def sphere_model(n: int, dim: int = DEFAULT_MODEL_DIM) -> StratSet:
    """Δⁿ/∂Δⁿ，非退化单形只有基点与顶单形 (0,1,…,n)。"""
    if n < 1:
        raise ValueError(f"sphere dimension must be >= 1, got {n}")
    if dim < n:
        raise ValueError(f"model dimension {dim} is below the sphere dimension {n}")
    boundary = simplex_boundary(n, dim)
    return replace(collapse(standard_simplex(n, dim), dict(enumerate(boundary.simplices))), label=f"S{n}")


def circle_model(dim: int = DEFAULT_MODEL_DIM) -> StratSet:
    """S¹ = Δ¹/∂Δ¹：一个顶点、一条非退化非薄的边 e = (0, 1)。"""
    return sphere_model(1, dim)


def wedge_of_circles(g: int, dim: int = DEFAULT_MODEL_DIM) -> StratSet:
    """g 个有向圆的楔：第 i 条边为 (i, (0, 1))。"""
    if g < 1:
        raise ValueError(f"wedge needs at least one circle, got {g}")
    union = disjoint_union(*(circle_model(dim) for _ in range(g)))
    points = generated_subset(union, {0: [(i, COLLAPSED) for i in range(g)]})
    return replace(collapse(union, points), label=f"∨{g}S1")


# -- 有限 1-范畴与 Street 神经 ------------------------------------------------


@dataclass(frozen=True)
class FiniteCategory:
    """有限 1-范畴：箭头 (name, 源, 靶)、单位与完整的复合表 (f, g) ↦ g∘f。"""

    objects: tuple
    arrows: tuple[tuple[Hashable, Hashable, Hashable], ...]
    identities: tuple[tuple[Hashable, Hashable], ...]
    composition: tuple[tuple[tuple[Hashable, Hashable], Hashable], ...]
    label: str = "C"

    @cached_property
    def ends(self) -> dict:
        return {f: (s, t) for f, s, t in self.arrows}

    @cached_property
    def identity(self) -> dict:
        return dict(self.identities)

    @cached_property
    def compose(self) -> dict:
        return dict(self.composition)

    def verify(self) -> None:
        ends, ident, comp = self.ends, self.identity, self.compose
        if set(ident) != set(self.objects):
            raise InvalidCategoryError(f"{self.label}: every object needs exactly one identity")
        for a, f in ident.items():
            if ends.get(f) != (a, a):
                raise InvalidCategoryError(f"{self.label}: identity of {a!r} has the wrong endpoints")
        for f, (s, t) in ends.items():
            for g, (s2, t2) in ends.items():
                if t != s2:
                    continue
                if (f, g) not in comp:
                    raise InvalidCategoryError(f"{self.label}: composite of {f!r} then {g!r} is missing")
                if ends.get(comp[(f, g)]) != (s, t2):
                    raise InvalidCategoryError(f"{self.label}: composite of {f!r} then {g!r} has the wrong endpoints")
            if comp.get((ident[s], f)) != f or comp.get((f, ident[t])) != f:
                raise InvalidCategoryError(f"{self.label}: unit laws fail at {f!r}")
        for (f, g), gf in comp.items():
            for h, (s3, _) in ends.items():
                if s3 == ends[g][1] and comp[(gf, h)] != comp[(f, comp[(g, h)])]:
                    raise InvalidCategoryError(f"{self.label}: associativity fails at {f!r}, {g!r}, {h!r}")


def chain_category(n: int) -> FiniteCategory:
    """偏序集 [n] = {0 < 1 < … < n}，箭头 (i, j) 满足 i ≤ j。"""
    if n < 0:
        raise ValueError(f"chain length must be >= 0, got {n}")
    arrows = tuple(((i, j), i, j) for i in range(n + 1) for j in range(i, n + 1))
    comp = tuple((((i, j), (j, k)), (i, k)) for i in range(n + 1) for j in range(i, n + 1) for k in range(j, n + 1))
    return FiniteCategory(tuple(range(n + 1)), arrows, tuple((i, (i, i)) for i in range(n + 1)), comp, f"[{n}]")


def monoid_category(M: CommMonoid) -> FiniteCategory:
    """有限幺半群的单对象范畴 BM，箭头即元素。"""
    elems = M.elements()
    arrows = tuple((x, "•", "•") for x in elems)
    comp = tuple(((x, y), M.op(y, x)) for x in elems for y in elems)
    return FiniteCategory(("•",), arrows, (("•", M.unit),), comp, f"B({M.label})")


def street_nerve1(C: FiniteCategory, dim: int = DEFAULT_MODEL_DIM, basepoint: Hashable | None = None) -> StratSet:
    """Street 神经：X_n 为可复合的 n 链，1 维薄 = 单位箭头，≥ 2 维全部薄。"""
    C.verify()
    ends, ident, comp = C.ends, C.identity, C.compose
    arrows = [f for f, _, _ in C.arrows]

    def chains(n: int) -> Iterable:
        if n == 0:
            return C.objects
        out = [(f,) for f in arrows]
        for _ in range(n - 1):
            out = [c + (g,) for c in out for g in arrows if ends[g][0] == ends[c[-1]][1]]
        return out

    def face(n: int, i: int, c: tuple) -> Simplex:
        if n == 1:
            return ends[c[0]][1] if i == 0 else ends[c[0]][0]
        if i == 0:
            return c[1:]
        if i == n:
            return c[:-1]
        return c[:i - 1] + (comp[(c[i - 1], c[i])],) + c[i + 1:]

    def degen(n: int, i: int, c) -> Simplex:
        if n == 0:
            return (ident[c],)
        obj = ends[c[0]][0] if i == 0 else ends[c[i - 1]][1]
        return c[:i] + (ident[obj],) + c[i:]

    identity_arrows = set(ident.values())
    if basepoint is not None and basepoint not in C.objects:
        raise InvalidCategoryError(f"basepoint {basepoint!r} is not an object of {C.label}")
    return _materialize(
        dim,
        chains,
        face,
        degen,
        lambda n, c: n >= 2 or c[0] in identity_arrows,
        basepoint=basepoint,
        label=f"N({C.label})",
    )


BUILTIN_MODELS = ("point", "s1", "figure-eight", "nerve-chain1", "nerve-bz2", "s2")


def builtin_model(name: str, dim: int = DEFAULT_MODEL_DIM) -> StratSet:
    """内置模型库，全部带基点。"""
    if name == "point":
        return replace(standard_simplex(0, dim), label="point")
    if name == "s1":
        return circle_model(dim)
    if name == "figure-eight":
        return replace(wedge_of_circles(2, dim), label="figure-eight")
    if name == "nerve-chain1":
        return street_nerve1(chain_category(1), dim, basepoint=0)
    if name == "nerve-bz2":
        return street_nerve1(monoid_category(CommMonoid.cyclic(2)), dim, basepoint="•")
    if name == "s2":
        return sphere_model(2, dim)
    raise InvalidPresentationError(f"unknown builtin model {name!r}; choose one of {', '.join(BUILTIN_MODELS)}")


# -- M 系数线性组合 -----------------------------------------------------------


@dataclass(frozen=True)
class MCombination:
    """固定度数单形上的 M 系数组合，规范形：去掉单位系数、按单形排序。"""

    terms: tuple[tuple[Simplex, Element], ...] = ()

    def support(self) -> tuple:
        return tuple(x for x, _ in self.terms)

    def weight(self, M: CommMonoid) -> int:
        return sum(M.weight(a) for _, a in self.terms)

    def to_json(self, M: CommMonoid | None = None) -> list:
        label = (lambda a: M.element_label(a)) if M is not None else (lambda a: a)
        return [[simplex_key(x), label(a)] for x, a in self.terms]

    def describe(self, M: CommMonoid) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{M.element_label(a)}·{simplex_key(x)}" for x, a in self.terms)


def combination(M: CommMonoid, pairs: Iterable[tuple[Simplex, Element]]) -> MCombination:
    acc: dict[Simplex, Element] = {}
    for x, a in pairs:
        acc[x] = M.op(acc[x], a) if x in acc else a
    unit = M.unit
    return MCombination(tuple(sorted(((x, a) for x, a in acc.items() if a != unit), key=lambda t: simplex_key(t[0]))))


@dataclass(eq=False)
class StratCMonoid:
    """逐度的 M 系数组合；薄部分 = 支撑在薄单形上的组合，面 / 退化按可加性延拓。"""

    base: StratSet
    monoid: CommMonoid
    weight_bound: int
    reduced: bool = False
    _carriers: dict[int, tuple] = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def label(self) -> str:
        tag = "~" if self.reduced else ""
        return f"{self.monoid.label}{tag}[{self.base.label}]"

    @property
    def zero(self) -> MCombination:
        return MCombination()

    def _dropped(self, n: int) -> Simplex | None:
        return self.base.basepoint_simplex(n) if self.reduced else None

    def generators(self, n: int) -> tuple:
        drop = self._dropped(n)
        return tuple(x for x in self.base.simplices[n] if x != drop)

    def carrier(self, n: int) -> tuple[MCombination, ...]:
        """第 n 度权重 ≤ weight_bound 的全部组合，按 (权重, 序列化) 排序。"""
        if n not in self._carriers:
            M, gens = self.monoid, self.generators(n)
            out: list[MCombination] = []

            def extend(i: int, budget: int, terms: tuple) -> None:
                if i == len(gens):
                    out.append(MCombination(terms))
                    return
                for a in M.elements_up_to(budget):
                    nxt = terms if a == M.unit else terms + ((gens[i], a),)
                    extend(i + 1, budget - M.weight(a), nxt)

            extend(0, self.weight_bound, ())
            self._carriers[n] = tuple(sorted(out, key=lambda c: (c.weight(M), json.dumps(c.to_json(M)))))
            logger.debug(f"Materialized degree {n} of {self.label}: {len(out)} combinations")
        return self._carriers[n]

    def add(self, c1: MCombination, c2: MCombination) -> MCombination:
        return combination(self.monoid, c1.terms + c2.terms)

    def _push(self, c: MCombination, target: int, f: Callable[[Simplex], Simplex]) -> MCombination:
        drop = self._dropped(target)
        return combination(self.monoid, ((f(x), a) for x, a in c.terms if f(x) != drop))

    def face(self, n: int, i: int, c: MCombination) -> MCombination:
        return self._push(c, n - 1, lambda x: self.base.face(n, i, x))

    def degen(self, n: int, i: int, c: MCombination) -> MCombination:
        return self._push(c, n + 1, lambda x: self.base.degen(n, i, x))

    def is_thin(self, n: int, c: MCombination) -> bool:
        return n >= 1 and all(self.base.is_thin(n, x) for x in c.support())

    def verify(self, weight_bound: int = 2) -> list[str]:
        """在权重 ≤ weight_bound 的元素上穷举检查同态性与薄部分的封闭性。"""
        errs: list[str] = []
        M = self.monoid
        probe = StratCMonoid(self.base, M, min(weight_bound, self.weight_bound), self.reduced)
        for n in range(self.dim + 1):
            elems = probe.carrier(n)
            for c1, c2 in itertools.product(elems, repeat=2):
                s = self.add(c1, c2)
                if s != self.add(c2, c1):
                    errs.append(f"addition is not commutative in degree {n}")
                if self.is_thin(n, c1) and self.is_thin(n, c2) and not self.is_thin(n, s):
                    errs.append(f"thin part is not a submonoid in degree {n}")
                for i in range(n + 1):
                    if n > 0 and self.face(n, i, s) != self.add(self.face(n, i, c1), self.face(n, i, c2)):
                        errs.append(f"d_{i} is not additive in degree {n}")
                    if n < self.dim and self.degen(n, i, s) != self.add(self.degen(n, i, c1), self.degen(n, i, c2)):
                        errs.append(f"s_{i} is not additive in degree {n}")
            for c in elems:
                for i in range(n + 1):
                    if n < self.dim and not self.is_thin(n + 1, self.degen(n, i, c)):
                        errs.append(f"s_{i} of {c.describe(M)} is not thin")
            if errs:
                break
        return errs


def m_linear(X: StratSet, M: CommMonoid, weight_bound: int) -> StratCMonoid:
    """M[X]：逐度 M 系数组合，载体物化到 weight_bound。"""
    if weight_bound < 1:
        raise ValueError(f"weight_bound must be >= 1, got {weight_bound}")
    if not M.commutative:
        raise ValueError(f"{M.label} is not commutative")
    return StratCMonoid(X, M, weight_bound)


def m_linear_reduced(X: StratSet, M: CommMonoid, weight_bound: int) -> StratCMonoid:
    """约化 M[X]：删去基点各度退化对应的列。"""
    if X.basepoint is None:
        raise NoBasepointError(f"{X.label} has no basepoint; the reduced model needs one")
    m_linear(X, M, weight_bound)
    return StratCMonoid(X, M, weight_bound, reduced=True)


# -- 对称积塔 -----------------------------------------------------------------


def sp_power(X: StratSet, n: int) -> StratSet:
    """第 n 个严格对称幂：逐度大小为 n 的多重集，全部成员薄时为薄。"""
    if X.basepoint is None:
        raise NoBasepointError(f"{X.label} has no basepoint")
    if n < 0:
        raise ValueError(f"power must be >= 0, got {n}")

    def norm(ms: Iterable) -> tuple:
        return tuple(sorted(ms, key=simplex_key))

    return _materialize(
        X.dim,
        lambda m: itertools.combinations_with_replacement(X.simplices[m], n),
        lambda m, i, ms: norm(X.face(m, i, x) for x in ms),
        lambda m, i, ms: norm(X.degen(m, i, x) for x in ms),
        lambda m, ms: all(X.is_thin(m, x) for x in ms),
        basepoint=(X.basepoint,) * n,
        label=f"SP{n}({X.label})",
    )


@dataclass
class SPTower:
    stages: list[StratSet]
    # transitions[n][m]：第 n 阶到第 n+1 阶在第 m 度上的插入映射
    transitions: list[dict[int, dict]]


def sp_tower(X: StratSet, N: int) -> SPTower:
    """SP⁰ → SP¹ → … → SP^N，转移映射插入基点的退化。"""
    if N < 0:
        raise ValueError(f"stage bound must be >= 0, got {N}")
    stages = [sp_power(X, n) for n in range(N + 1)]
    transitions = []
    for n in range(N):
        step = {}
        for m in range(X.dim + 1):
            pad = X.basepoint_simplex(m)
            step[m] = {ms: tuple(sorted(ms + (pad,), key=simplex_key)) for ms in stages[n].simplices[m]}
        transitions.append(step)
    return SPTower(stages, transitions)


def dold_thom_check(X: StratSet, m: int, N: int) -> DoldThomCase:
    """第 m 度：SP 塔第 N 阶的余极限与权重 ≤ N 的约化 ℕ[X] 的双射，连同面、退化与薄性。"""
    if X.basepoint is None:
        raise NoBasepointError(f"{X.label} has no basepoint")
    if not 0 <= m <= X.dim:
        raise ValueError(f"degree {m} outside 0..{X.dim}")
    if N < 1:
        raise ValueError(f"stage bound must be >= 1, got {N}")
    tower = sp_tower(X, N)
    top = tower.stages[N]
    N_coeff = CommMonoid.naturals()
    linear = m_linear_reduced(X, N_coeff, N)
    witnesses: list[Any] = []

    def strip(k: int, ms: tuple) -> tuple:
        pad = X.basepoint_simplex(k)
        return tuple(x for x in ms if x != pad)

    def to_linear(ms: tuple) -> MCombination:
        return combination(N_coeff, ((x, (1,)) for x in ms))

    injective = all(len(set(step[m].values())) == len(step[m]) for step in tower.transitions)
    colimit: dict[tuple, tuple] = {}
    for stage in tower.stages:
        for ms in stage.simplices[m]:
            colimit.setdefault(strip(m, ms), ms)
    # 每个类在第 N 阶的代表（补齐基点退化）
    pad = X.basepoint_simplex(m)
    reps = {r: tuple(sorted(r + (pad,) * (N - len(r)), key=simplex_key)) for r in colimit}
    if not set(reps.values()) <= set(top.simplices[m]):
        injective = False
        witnesses.append({"stage": N, "reason": "class without a representative in the last stage"})

    images = {r: to_linear(r) for r in reps}
    carrier = set(linear.carrier(m))
    bijective = len(set(images.values())) == len(images) and set(images.values()) == carrier
    if not bijective:
        witnesses.append({"reason": "not a bijection",
                          "unmatched": [c.describe(N_coeff) for c in sorted(carrier - set(images.values()),
                                                                             key=lambda c: json.dumps(c.to_json()))][:5]})

    faces_ok = degens_ok = thin_ok = True
    for r, rep in reps.items():
        img = images[r]
        for i in range(m + 1):
            if m > 0 and to_linear(strip(m - 1, top.face(m, i, rep))) != linear.face(m, i, img):
                faces_ok = False
                witnesses.append({"face": i, "element": [simplex_key(x) for x in r]})
            if m < X.dim and to_linear(strip(m + 1, top.degen(m, i, rep))) != linear.degen(m, i, img):
                degens_ok = False
                witnesses.append({"degeneracy": i, "element": [simplex_key(x) for x in r]})
        if m > 0 and top.is_thin(m, rep) != linear.is_thin(m, img):
            thin_ok = False
            witnesses.append({"thin": [simplex_key(x) for x in r]})

    s = len(linear.generators(m))
    expected = comb(s + N, N)
    case = DoldThomCase(
        degree=m,
        stage=N,
        colimit_size=len(colimit),
        linear_size=len(carrier),
        expected_size=expected,
        transitions_injective=injective,
        bijective=bijective,
        faces_match=faces_ok,
        degeneracies_match=degens_ok,
        thinness_match=thin_ok,
        witnesses=witnesses[:10],
    )
    logger.info(f"Dold-Thom {X.label} m={m} N={N}: colimit={case.colimit_size} linear={case.linear_size} "
                f"passed={case.passed}")
    return case


def load_model(ref: str, dim: int = DEFAULT_MODEL_DIM) -> StratSet:
    """`builtin:NAME` 或 StratSet JSON 文件路径。"""
    if ref.startswith("builtin:"):
        return builtin_model(ref.partition(":")[2], dim)
    try:
        with open(ref, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise InvalidPresentationError(f"cannot read model {ref}: {e}")
    logger.info(f"Loaded stratified simplicial set from {ref}")
    return StratSet.from_json(data)
