"""有限 gaunt 严格 ω-范畴：递归表示“对象 + 态射范畴”。

核心职责：
- 构造器：`empty`、`terminal`、`suspension`、`globe`、`boundary`、`product`、
  `globe_chain`、`delooped_monoid`，以及 JSON 显式表示；
- `hom_set(t, C)`：按花环递归枚举函子 θ → C，即神经 N(C) 在 θ 处的值；
- `StrictFunctor` / `postcompose`：所有比较映射（坐标映射、投影、链插入）都是后复合；
- `monotone_map_count`：独立的偏序集单调映射计数，用于交叉验证。

实现要点：
- 所有范畴都是不可变、可哈希的 dataclass，`hom_set` 以 (树, 范畴) 为键缓存；
- 不存储复合：花环递归本身不需要复合，复合只以幺半群元数据的形式保留在
  `Delooped` 上（供 homotopy 模块使用）；
- 函子编码为 (对象元组, 子函子元组)，点形状为 ((a,), ())。
"""

from __future__ import annotations

import itertools
import json
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Any, Hashable

import networkx as nx
from pydantic import BaseModel, Field, ValidationError

from dihom.common.errors import InvalidPresentationError, ShapeTooDeepError
from dihom.common.utils import get_logger, get_max_depth
from dihom.core.monoid import CommMonoid, EndoSearch, monoid_homs, parse_coefficients
from dihom.core.pasting import PastingTree

logger = get_logger(__name__)

Obj = Hashable
# (objects a_0..a_m, cells F_1..F_m)
Functor = tuple

STAR = "*"
BULLET = "•"

# (树, 范畴) 为键的 Hom 缓存上限
HOM_CACHE_SIZE = 4096


class OmegaCat(ABC):
    """有限 gaunt 严格 ω-范畴的抽象基类。"""

    @abstractmethod
    def objects(self) -> tuple:
        ...

    @abstractmethod
    def mor(self, a: Obj, b: Obj) -> OmegaCat:
        ...

    def identity(self, a: Obj) -> Obj:
        """mor(a, a) 中的单位对象。"""
        return STAR

    @property
    def basepoint(self) -> Obj | None:
        return None

    @property
    def label(self) -> str:
        return type(self).__name__

    def is_empty(self) -> bool:
        return len(self.objects()) == 0

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class Empty(OmegaCat):
    def objects(self) -> tuple:
        return ()

    def mor(self, a, b):
        raise KeyError(f"empty category has no object {a!r}")

    def is_empty(self) -> bool:
        return True

    @property
    def label(self) -> str:
        return "∅"


@dataclass(frozen=True)
class Terminal(OmegaCat):
    def objects(self) -> tuple:
        return (STAR,)

    def mor(self, a, b):
        return TERMINAL

    @property
    def basepoint(self):
        return STAR

    @property
    def label(self) -> str:
        return "*"


EMPTY = Empty()
TERMINAL = Terminal()


@dataclass(frozen=True)
class Suspension(OmegaCat):
    """S(C)：两个对象 0, 1，Mor(0,1) = C，Mor(1,0) = ∅。"""

    inner: OmegaCat

    def objects(self) -> tuple:
        return (0, 1)

    def mor(self, a, b):
        if a == b:
            return TERMINAL
        return self.inner if (a, b) == (0, 1) else EMPTY

    @property
    def basepoint(self):
        # D^1 总是以初始对象为基点
        return 0

    @property
    def label(self) -> str:
        return f"S({self.inner.label})"


@dataclass(frozen=True)
class Product(OmegaCat):
    """有限积：对象为各因子对象的元组，态射范畴逐分量取积；空因子吸收。"""

    factors: tuple[OmegaCat, ...]

    def objects(self) -> tuple:
        return tuple(itertools.product(*(f.objects() for f in self.factors)))

    def mor(self, a, b):
        return Product(tuple(f.mor(x, y) for f, x, y in zip(self.factors, a, b)))

    def identity(self, a):
        return tuple(f.identity(x) for f, x in zip(self.factors, a))

    def is_empty(self) -> bool:
        return any(f.is_empty() for f in self.factors)

    @property
    def label(self) -> str:
        return "(" + " × ".join(f.label for f in self.factors) + ")" if self.factors else "*"


@dataclass(frozen=True)
class GlobeChain(OmegaCat):
    """(D^k)^{∨n} 的自由链模型：第 ℓ 份的终点是第 ℓ+1 份的起点。"""

    k: int
    n: int

    def objects(self) -> tuple:
        return tuple(range(self.n + 1))

    def mor(self, a, b):
        if a > b:
            return EMPTY
        if a == b:
            return TERMINAL
        return Product((globe(self.k - 1),) * (b - a))

    @property
    def basepoint(self):
        return 0

    @property
    def label(self) -> str:
        return f"(D^{self.k})^∨{self.n}"


@dataclass(frozen=True)
class Discrete(OmegaCat):
    """以幺半群元素为对象的离散范畴。"""

    monoid: CommMonoid

    def objects(self) -> tuple:
        return tuple(self.monoid.elements())

    def mor(self, a, b):
        return TERMINAL if a == b else EMPTY

    def is_empty(self) -> bool:
        return False

    @property
    def label(self) -> str:
        return f"disc({self.monoid.label})"


@dataclass(frozen=True)
class Delooped(OmegaCat):
    """B^n M：单对象 •，mor(•,•) = B^{n-1} M，n = 1 时为 M 的离散范畴。"""

    n: int
    monoid: CommMonoid

    def objects(self) -> tuple:
        return (BULLET,)

    def mor(self, a, b):
        return Delooped(self.n - 1, self.monoid) if self.n >= 2 else Discrete(self.monoid)

    def identity(self, a):
        return BULLET if self.n >= 2 else self.monoid.unit

    @property
    def basepoint(self):
        return BULLET

    @property
    def label(self) -> str:
        return f"B^{self.n}({self.monoid.label})"


@dataclass(frozen=True)
class Explicit(OmegaCat):
    """JSON 显式表示；缺省的 mor(a,a) 为终对象，缺省的 mor(a,b) 为空。"""

    object_names: tuple
    mor_items: tuple = ()
    identity_items: tuple = ()
    point: Obj | None = None
    name: str | None = None

    @cached_property
    def _mors(self) -> dict:
        return dict(self.mor_items)

    @cached_property
    def _identities(self) -> dict:
        return dict(self.identity_items)

    def objects(self) -> tuple:
        return self.object_names

    def mor(self, a, b):
        if (a, b) in self._mors:
            return self._mors[(a, b)]
        return TERMINAL if a == b else EMPTY

    def identity(self, a):
        if a in self._identities:
            return self._identities[a]
        return self.mor(a, a).objects()[0]

    @property
    def basepoint(self):
        return self.point

    @property
    def label(self) -> str:
        return self.name or "explicit"


# -- 构造器 -------------------------------------------------------------------


def empty() -> OmegaCat:
    return EMPTY


def terminal() -> OmegaCat:
    return TERMINAL


def suspension(C: OmegaCat) -> OmegaCat:
    return Suspension(C)


def _iterated_suspension(base: OmegaCat, k: int) -> OmegaCat:
    if k < 0:
        raise ValueError(f"dimension must be >= 0, got {k}")
    C = base
    for _ in range(k):
        C = Suspension(C)
    return C


def globe(k: int) -> OmegaCat:
    """D^k = S^k(*)，k ≥ 1 时以初始对象 0 为基点。"""
    return _iterated_suspension(TERMINAL, k)


def boundary(k: int) -> OmegaCat:
    """∂D^k = S^k(∅)。"""
    return _iterated_suspension(EMPTY, k)


def product(C: OmegaCat, D: OmegaCat) -> OmegaCat:
    return Product((C, D))


def globe_chain(k: int, n: int) -> OmegaCat:
    if k < 1:
        raise ValueError(f"globe_chain needs k >= 1, got {k}")
    if n < 0:
        raise ValueError(f"globe_chain needs n >= 0, got {n}")
    return GlobeChain(k, n)


def delooped_monoid(n: int, M: CommMonoid) -> OmegaCat:
    if n < 1:
        raise ValueError(f"delooping degree must be >= 1, got {n}")
    if n >= 2 and not M.commutative:
        # 多次 delooping 需要交换性，这里只检查标志
        raise ValueError(f"B^{n} needs a commutative monoid, {M.label} is flagged associative-only")
    return Delooped(n, M)


def pointed_monoid_endos(n: int, source: CommMonoid, target: CommMonoid, bound: int) -> EndoSearch:
    """B^n(source) → B^n(target) 的带点函子，即幺半群同态（在候选像权重 ≤ bound 内搜索）。"""
    if n < 1:
        raise ValueError(f"sphere dimension must be >= 1, got {n}")
    if n >= 2 and not (source.commutative and target.commutative):
        raise ValueError("n-fold delooping with n >= 2 needs commutative monoids")
    result = monoid_homs(source, target, bound)
    if result.truncated:
        logger.warning(f"BoundExceeded: homomorphisms {source.label} -> {target.label} searched up to weight {bound}")
    return result


# -- Hom 枚举 -----------------------------------------------------------------


@lru_cache(maxsize=HOM_CACHE_SIZE)
def _hom(t: PastingTree, C: OmegaCat) -> tuple[Functor, ...]:
    objs = C.objects()
    if not t.children:
        return tuple(((a,), ()) for a in objs)
    out: list[Functor] = []
    m = len(t.children)

    def walk(i: int, chosen: tuple, cells: tuple) -> None:
        if i == m:
            out.append((chosen, cells))
            return
        prev = chosen[-1]
        for b in objs:
            hom = C.mor(prev, b)
            if hom.is_empty():
                continue
            for F in _hom(t.children[i], hom):
                walk(i + 1, chosen + (b,), cells + (F,))

    for a in objs:
        walk(0, (a,), ())
    return tuple(out)


def hom_set(t: PastingTree, C: OmegaCat, max_depth: int | None = None) -> list[Functor]:
    """枚举函子 t → C：Hom(点, C) = objects(C)，
    Hom(root(T₁…T_m), C) = {(a₀,…,a_m; F_i ∈ Hom(T_i, mor(a_{i−1}, a_i)))}。"""
    bound = get_max_depth() if max_depth is None else max_depth
    if t.height > bound:
        raise ShapeTooDeepError(f"shape {t} has depth {t.height} > bound {bound}")
    try:
        return list(_hom(t, C))
    except RecursionError as e:
        raise ShapeTooDeepError(f"recursion exhausted while enumerating {t} -> {C}: {e}")


def clear_hom_cache() -> None:
    """清空 Hom 枚举缓存（长时间作为库使用时调用）。"""
    _hom.cache_clear()


def functor_key(F: Functor) -> str:
    """规范序列化（深度优先），其字典序即函子编码的全序。"""
    return json.dumps(F, separators=(",", ":"), ensure_ascii=False)


def functor_objects(F: Functor) -> tuple:
    return F[0]


# -- 严格函子与后复合 ---------------------------------------------------------


class StrictFunctor(ABC):
    """严格函子：对象映射 + 各态射范畴上的函子。"""

    @abstractmethod
    def on_object(self, a: Obj) -> Obj:
        ...

    @abstractmethod
    def on_mor(self, a: Obj, b: Obj) -> StrictFunctor:
        ...


@dataclass(frozen=True)
class IdentityFunctor(StrictFunctor):
    def on_object(self, a):
        return a

    def on_mor(self, a, b):
        return self


@dataclass(frozen=True)
class ToTerminal(StrictFunctor):
    def on_object(self, a):
        return STAR

    def on_mor(self, a, b):
        return self


@dataclass(frozen=True)
class Projection(StrictFunctor):
    """积范畴到第 index 个因子的投影。"""

    index: int

    def on_object(self, a):
        return a[self.index]

    def on_mor(self, a, b):
        return self


@dataclass(frozen=True)
class ChainCoordinate(StrictFunctor):
    """α 的第 ℓ 个坐标：(D^k)^{∨n} → D^k，对象 j ↦ [j ≥ ℓ]。

    第 ℓ 份 D^k 经 α_ℓ 落在 {1}^{×ℓ−1} × D^k × {0}^{×n−ℓ}。
    """

    ell: int

    def on_object(self, j):
        return 1 if j >= self.ell else 0

    def on_mor(self, a, b):
        if a < self.ell <= b:
            return Projection(self.ell - 1 - a)
        return TO_TERMINAL


IDENTITY = IdentityFunctor()
TO_TERMINAL = ToTerminal()


def postcompose(F: Functor, phi: StrictFunctor) -> Functor:
    objs, cells = F
    new_objs = tuple(phi.on_object(a) for a in objs)
    new_cells = tuple(postcompose(c, phi.on_mor(objs[i], objs[i + 1])) for i, c in enumerate(cells))
    return (new_objs, new_cells)


# -- 独立偏序集预言 -----------------------------------------------------------


def monotone_map_count(t: PastingTree, n: int) -> int:
    """t 的 1-截断对象偏序集到 {0,…,n} 的单调映射个数（与 hom_set 无关的计数）。"""
    poset = nx.DiGraph()
    poset.add_nodes_from(range(t.width + 1))
    poset.add_edges_from((i, i + 1) for i in range(t.width))
    order = nx.transitive_closure_dag(poset)
    nodes = sorted(order.nodes)
    count = 0
    for values in itertools.product(range(n + 1), repeat=len(nodes)):
        f = dict(zip(nodes, values))
        if all(f[u] <= f[v] for u, v in order.edges):
            count += 1
    return count


# -- JSON ---------------------------------------------------------------------


class BuiltinCategorySpec(BaseModel):
    builtin: str = Field(description="构造器名称")
    params: list[Any] = Field(default_factory=list, description="构造器参数")


class ExplicitCategorySpec(BaseModel):
    objects: list[str | int] = Field(description="有限对象集")
    mor: dict[str, Any] = Field(default_factory=dict, description='"a,b" -> 范畴 JSON')
    identities: dict[str, Any] = Field(default_factory=dict, description="a -> mor(a,a) 中的单位对象")
    basepoint: str | int | None = None
    label: str | None = None


def category_from_json(data: Any) -> OmegaCat:
    """解析 `{"builtin": ..., "params": [...]}` 或显式表示，递归验证。"""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise InvalidPresentationError(f"category spec is not JSON: {e}")
    if not isinstance(data, dict):
        raise InvalidPresentationError(f"category spec must be an object, got {data!r}")
    try:
        if "builtin" in data:
            return _builtin(BuiltinCategorySpec.model_validate(data))
        return _explicit(ExplicitCategorySpec.model_validate(data))
    except ValidationError as e:
        raise InvalidPresentationError(f"invalid category spec: {e}")


def _builtin(spec: BuiltinCategorySpec) -> OmegaCat:
    name, p = spec.builtin, spec.params
    try:
        if name == "empty":
            return empty()
        if name == "terminal":
            return terminal()
        if name == "globe":
            return globe(int(p[0]))
        if name == "boundary":
            return boundary(int(p[0]))
        if name == "suspension":
            return suspension(category_from_json(p[0]))
        if name == "product":
            return product(category_from_json(p[0]), category_from_json(p[1]))
        if name == "globe_chain":
            return globe_chain(int(p[0]), int(p[1]))
        if name == "delooped_monoid":
            return delooped_monoid(int(p[0]), parse_coefficients(str(p[1])))
    except (IndexError, TypeError, ValueError) as e:
        raise InvalidPresentationError(f"bad parameters for builtin {name!r}: {p!r} ({e})")
    raise InvalidPresentationError(f"unknown builtin category {name!r}")


def _explicit(spec: ExplicitCategorySpec) -> OmegaCat:
    names = tuple(str(o) for o in spec.objects)
    if len(set(names)) != len(names):
        raise InvalidPresentationError("duplicate object names")
    if any("," in o for o in names):
        raise InvalidPresentationError("object names must not contain ','")
    items = []
    for key, sub in spec.mor.items():
        a, sep, b = key.partition(",")
        if not sep or a not in names or b not in names:
            raise InvalidPresentationError(f"mor key {key!r} does not name a pair of objects")
        C = category_from_json(sub)
        if a == b and C.is_empty():
            raise InvalidPresentationError(f"mor({a},{a}) must contain an identity")
        items.append(((a, b), C))
    identities = []
    mors = dict(items)
    for a, ident in spec.identities.items():
        if a not in names:
            raise InvalidPresentationError(f"identity given for unknown object {a!r}")
        hom = mors.get((a, a), TERMINAL)
        if ident not in hom.objects():
            raise InvalidPresentationError(f"identity {ident!r} is not an object of mor({a},{a})")
        identities.append((a, ident))
    point = None if spec.basepoint is None else str(spec.basepoint)
    if point is not None and point not in names:
        raise InvalidPresentationError(f"basepoint {point!r} is not an object")
    return Explicit(names, tuple(sorted(items, key=lambda kv: kv[0])), tuple(identities), point, spec.label)
