"""系数幺半群（CommMonoid）：有限乘法表、自由交换、自由结合三种表示。

核心职责：
- 统一接口：`op`、`unit`、`weight`、`elements`（有限时）、`elements_up_to`（按权重截断）；
- 有限表幺半群在构造时用 numpy 穷举验证单位律、结合律（以及声明时的交换律）；
- 有界搜索幺半群同态 `monoid_homs`，以及同态的求值与复合。

元素编码：
- 表幺半群：0..s-1 的整数；
- 自由交换（g 个生成元）：长度 g 的非负整数元组；
- 自由结合（g 个生成元）：生成元下标的元组（单词）。
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Hashable, Iterator

import numpy as np
from pydantic import BaseModel, Field, ValidationError

from dihom.common.errors import InfiniteError, InvalidPresentationError, InvalidCategoryError
from dihom.common.utils import get_logger

logger = get_logger(__name__)

Element = Hashable


class MonoidKind(str, Enum):
    TABLE = "table"
    FREE_COMMUTATIVE = "free_commutative"
    FREE_ASSOCIATIVE = "free_associative"


class MonoidTableFile(BaseModel):
    """`--coeff table:FILE` 的文件格式。"""
    table: list[list[int]] = Field(description="乘法表，table[a][b] = a·b")
    unit: int = Field(default=0, description="单位元下标")
    names: list[str] | None = Field(default=None, description="元素名称，仅用于展示")
    label: str | None = Field(default=None, description="幺半群名称")


@dataclass(frozen=True)
class CommMonoid:
    """有可判定相等的幺半群；`commutative=False` 时仅保证结合。"""

    kind: MonoidKind
    label: str
    table: tuple[tuple[int, ...], ...] = ()
    unit_index: int = 0
    generators_count: int = 0
    commutative: bool = True

    def __post_init__(self):
        if self.kind is MonoidKind.TABLE:
            self._verify_table()

    # -- 构造 -------------------------------------------------------------

    @classmethod
    def from_table(cls, table, unit: int = 0, label: str = "table", commutative: bool | None = None) -> CommMonoid:
        rows = tuple(tuple(int(x) for x in row) for row in table)
        if commutative is None:
            arr = np.array(rows, dtype=np.int64)
            commutative = bool(arr.size == 0 or np.array_equal(arr, arr.T))
        return cls(MonoidKind.TABLE, label, table=rows, unit_index=unit, commutative=commutative)

    @classmethod
    def cyclic(cls, m: int) -> CommMonoid:
        """ℤ/m（加法）。"""
        if m < 1:
            raise ValueError(f"cyclic order must be >= 1, got {m}")
        table = [[(a + b) % m for b in range(m)] for a in range(m)]
        return cls.from_table(table, 0, label=f"Z/{m}", commutative=True)

    @classmethod
    def trivial(cls) -> CommMonoid:
        return cls.from_table([[0]], 0, label="trivial", commutative=True)

    @classmethod
    def free_commutative(cls, g: int) -> CommMonoid:
        if g < 0:
            raise ValueError("generator count must be >= 0")
        label = "N" if g == 1 else f"N^{g}"
        return cls(MonoidKind.FREE_COMMUTATIVE, label, generators_count=g, commutative=True)

    @classmethod
    def naturals(cls) -> CommMonoid:
        return cls.free_commutative(1)

    @classmethod
    def free_associative(cls, g: int) -> CommMonoid:
        if g < 0:
            raise ValueError("generator count must be >= 0")
        return cls(MonoidKind.FREE_ASSOCIATIVE, f"Free({g})", generators_count=g, commutative=g <= 1)

    @classmethod
    def load_table(cls, path: str | Path) -> CommMonoid:
        try:
            spec = MonoidTableFile.model_validate_json(Path(path).read_text())
        except (OSError, ValidationError) as e:
            raise InvalidPresentationError(f"cannot load monoid table {path}: {e}")
        logger.info(f"Loaded monoid table {path} with {len(spec.table)} elements")
        return cls.from_table(spec.table, spec.unit, label=spec.label or Path(path).stem)

    # -- 验证 -------------------------------------------------------------

    def _verify_table(self) -> None:
        s = len(self.table)
        if s == 0 or any(len(row) != s for row in self.table):
            raise InvalidCategoryError(f"monoid table of {self.label} must be square and non-empty")
        T = np.array(self.table, dtype=np.int64)
        if T.min() < 0 or T.max() >= s:
            raise InvalidCategoryError(f"monoid table of {self.label} has entries out of range")
        if not 0 <= self.unit_index < s:
            raise InvalidCategoryError(f"unit {self.unit_index} out of range for {self.label}")
        idx = np.arange(s)
        u = self.unit_index
        if not (np.array_equal(T[u, :], idx) and np.array_equal(T[:, u], idx)):
            raise InvalidCategoryError(f"unit laws fail for {self.label}")
        # lhs[a,b,c] = (ab)c ; rhs[a,b,c] = a(bc)
        if not np.array_equal(T[T, :], T[:, T]):
            raise InvalidCategoryError(f"associativity fails for {self.label}")
        if self.commutative and not np.array_equal(T, T.T):
            raise InvalidCategoryError(f"{self.label} is flagged commutative but its table is not symmetric")

    # -- 运算 -------------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.kind is MonoidKind.TABLE or self.generators_count == 0

    @property
    def unit(self) -> Element:
        if self.kind is MonoidKind.TABLE:
            return self.unit_index
        if self.kind is MonoidKind.FREE_COMMUTATIVE:
            return (0,) * self.generators_count
        return ()

    def op(self, x: Element, y: Element) -> Element:
        if self.kind is MonoidKind.TABLE:
            return self.table[x][y]
        if self.kind is MonoidKind.FREE_COMMUTATIVE:
            return tuple(a + b for a, b in zip(x, y))
        return tuple(x) + tuple(y)

    def power(self, x: Element, k: int) -> Element:
        out = self.unit
        for _ in range(k):
            out = self.op(out, x)
        return out

    def generators(self) -> list[Element]:
        """生成元：自由表示取标准生成元，有限表取全部非单位元。"""
        if self.kind is MonoidKind.TABLE:
            return [x for x in range(len(self.table)) if x != self.unit_index]
        if self.kind is MonoidKind.FREE_COMMUTATIVE:
            g = self.generators_count
            return [tuple(1 if j == i else 0 for j in range(g)) for i in range(g)]
        return [(i,) for i in range(self.generators_count)]

    def weight(self, x: Element) -> int:
        """权重：表幺半群非单位元记 1；自由表示为总次数 / 单词长度。"""
        if self.kind is MonoidKind.TABLE:
            return 0 if x == self.unit_index else 1
        if self.kind is MonoidKind.FREE_COMMUTATIVE:
            return sum(x)
        return len(x)

    def elements(self) -> list[Element]:
        if self.kind is MonoidKind.TABLE:
            return list(range(len(self.table)))
        if self.generators_count == 0:
            return [self.unit]
        raise InfiniteError(f"{self.label} is infinite; use elements_up_to(weight)")

    def elements_up_to(self, weight: int) -> list[Element]:
        """权重 ≤ weight 的全部元素，按权重再按编码排序。"""
        if weight < 0:
            return []
        if self.kind is MonoidKind.TABLE:
            return [x for x in self.elements() if self.weight(x) <= weight]
        g = self.generators_count
        if self.kind is MonoidKind.FREE_COMMUTATIVE:
            out = [v for v in itertools.product(range(weight + 1), repeat=g) if sum(v) <= weight]
        else:
            out = [w for length in range(weight + 1) for w in itertools.product(range(g), repeat=length)]
        return sorted(out, key=lambda v: (self.weight(v), v))

    def contains(self, x: Element) -> bool:
        if self.kind is MonoidKind.TABLE:
            return isinstance(x, int) and 0 <= x < len(self.table)
        if self.kind is MonoidKind.FREE_COMMUTATIVE:
            return isinstance(x, tuple) and len(x) == self.generators_count and all(
                isinstance(a, int) and a >= 0 for a in x)
        return isinstance(x, tuple) and all(isinstance(a, int) and 0 <= a < self.generators_count for a in x)

    def element_label(self, x: Element) -> str:
        if self.kind is MonoidKind.FREE_COMMUTATIVE and self.generators_count == 1:
            return str(x[0])
        return json.dumps(x)

    def verify_axioms(self, weight_bound: int = 3) -> bool:
        """表幺半群已在构造时穷举验证；自由表示在权重范围内抽查。"""
        elems = self.elements() if self.is_finite else self.elements_up_to(weight_bound)
        for x in elems:
            if self.op(self.unit, x) != x or self.op(x, self.unit) != x:
                return False
            for y in elems:
                if self.commutative and self.op(x, y) != self.op(y, x):
                    return False
                for z in elems:
                    if self.op(self.op(x, y), z) != self.op(x, self.op(y, z)):
                        return False
        return True


def parse_coefficients(spec: str) -> CommMonoid:
    """解析 `--coeff {N|Z2|Zm|trivial|table:FILE|freeC:g|freeA:g}`。"""
    spec = spec.strip()
    if spec in ("N", "ℕ"):
        return CommMonoid.naturals()
    if spec in ("trivial", "0"):
        return CommMonoid.trivial()
    if spec.startswith("Z") and spec[1:].lstrip("/").isdigit():
        return CommMonoid.cyclic(int(spec[1:].lstrip("/")))
    kind, _, arg = spec.partition(":")
    if kind == "table" and arg:
        return CommMonoid.load_table(arg)
    if kind in ("freeC", "freeA") and arg.isdigit():
        g = int(arg)
        return CommMonoid.free_commutative(g) if kind == "freeC" else CommMonoid.free_associative(g)
    raise InvalidPresentationError(f"unknown coefficient spec {spec!r}")


# -- 同态 ---------------------------------------------------------------------


@dataclass(frozen=True)
class MonoidHom:
    """幺半群同态：自由源由生成元像决定；有限表源存储全部像。"""

    source: CommMonoid
    target: CommMonoid
    images: tuple

    def apply(self, x: Element) -> Element:
        src, tgt = self.source, self.target
        if src.kind is MonoidKind.TABLE:
            return self.images[x]
        out = tgt.unit
        if src.kind is MonoidKind.FREE_COMMUTATIVE:
            for img, count in zip(self.images, x):
                out = tgt.op(out, tgt.power(img, count))
            return out
        for letter in x:
            out = tgt.op(out, self.images[letter])
        return out

    def describe(self) -> str:
        src = self.source
        if src.kind is MonoidKind.TABLE:
            keys = range(len(src.table))
        else:
            keys = [src.element_label(g) for g in src.generators()]
        return ", ".join(f"{k}↦{self.target.element_label(v)}" for k, v in zip(keys, self.images))


def compose_homs(first: MonoidHom, second: MonoidHom) -> MonoidHom:
    """second ∘ first。"""
    if first.target != second.source:
        raise ValueError("homomorphisms are not composable")
    src = first.source
    if src.kind is MonoidKind.TABLE:
        images = tuple(second.apply(first.apply(x)) for x in range(len(src.table)))
    else:
        images = tuple(second.apply(img) for img in first.images)
    return MonoidHom(src, second.target, images)


@dataclass(frozen=True)
class EndoSearch:
    homs: tuple[MonoidHom, ...]
    truncated: bool  # BoundExceeded：目标无限时候选像被截断


def monoid_homs(source: CommMonoid, target: CommMonoid, bound: int) -> EndoSearch:
    """在候选像权重 ≤ bound 的范围内枚举全部同态 source → target。"""
    truncated = not target.is_finite
    candidates = target.elements() if target.is_finite else target.elements_up_to(bound)
    if source.kind is MonoidKind.TABLE:
        return EndoSearch(tuple(_table_homs(source, target, candidates)), truncated)
    if source.generators_count > 8:
        raise ValueError("free presentations with more than 8 generators are not searched")
    found = []
    for images in itertools.product(candidates, repeat=source.generators_count):
        if source.kind is MonoidKind.FREE_COMMUTATIVE and not target.commutative:
            if any(target.op(a, b) != target.op(b, a) for a, b in itertools.combinations(images, 2)):
                continue
        found.append(MonoidHom(source, target, tuple(images)))
    return EndoSearch(tuple(found), truncated)


def _table_homs(source: CommMonoid, target: CommMonoid, candidates: list) -> Iterator[MonoidHom]:
    s = len(source.table)
    others = [x for x in range(s) if x != source.unit_index]
    for choice in itertools.product(candidates, repeat=len(others)):
        images = [None] * s
        images[source.unit_index] = target.unit
        for x, img in zip(others, choice):
            images[x] = img
        if all(images[source.op(x, y)] == target.op(images[x], images[y]) for x in range(s) for y in range(s)):
            yield MonoidHom(source, target, tuple(images))

