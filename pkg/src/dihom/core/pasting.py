"""粘贴树（Pasting tree）：用平面有根树编码 Θ 的对象。

核心职责：
- `PastingTree` 不可变、可哈希，子树顺序有意义（平面性）；
- 提供圆盘 D^n、链 [n] 的构造与有界形状目录 `enumerate_trees`；
- 文本序列化：嵌套方括号，`[]` 为点、`[[]]` 为 D¹、`[[],[]]` 为 [2]；
  该文本本身就是合法 JSON（数组的数组）。

实现要点：
- 花环分解：根的子树 T₁,…,T_m 对应沿 m+1 个对象首尾相接粘合的 m 个胞腔；
- 目录的全序是子树列表上的字典序（`sort_key`），与边界参数无关，
  因而 (d, e) 的目录总是 (d', e') 目录的子序列。
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Any

from dihom.common.errors import InvalidPresentationError


@dataclass(frozen=True)
class PastingTree:
    """Θ 的一个对象：每个节点带有有序（可为空）的子树列表。"""

    children: tuple[PastingTree, ...] = ()

    @cached_property
    def height(self) -> int:
        return 1 + max(c.height for c in self.children) if self.children else 0

    @cached_property
    def edge_count(self) -> int:
        return sum(1 + c.edge_count for c in self.children)

    @cached_property
    def sort_key(self) -> tuple:
        return tuple(c.sort_key for c in self.children)

    @property
    def width(self) -> int:
        """根的子树数，即 1 维生成元个数；对象数为 width + 1。"""
        return len(self.children)

    def __lt__(self, other: PastingTree) -> bool:
        return self.sort_key < other.sort_key

    def to_text(self) -> str:
        return "[" + ",".join(c.to_text() for c in self.children) + "]"

    def to_json(self) -> list:
        return [c.to_json() for c in self.children]

    def __str__(self) -> str:
        return self.to_text()

    @classmethod
    def from_json(cls, data: Any) -> PastingTree:
        if not isinstance(data, list):
            raise InvalidPresentationError(f"pasting tree must be a nested list, got {data!r}")
        return cls(tuple(cls.from_json(c) for c in data))

    @classmethod
    def from_text(cls, text: str) -> PastingTree:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InvalidPresentationError(f"cannot parse pasting tree {text!r}: {e}")
        return cls.from_json(data)


POINT = PastingTree()
CATALOG_CACHE_SIZE = 256


def tree_disk(n: int) -> PastingTree:
    """D^n：高度为 n 的线性树。"""
    if n < 0:
        raise ValueError(f"disk dimension must be >= 0, got {n}")
    tree = POINT
    for _ in range(n):
        tree = PastingTree((tree,))
    return tree


def tree_chain(n: int) -> PastingTree:
    """[n] = D¹ ⨿_{D⁰} … ⨿_{D⁰} D¹：根带 n 个叶子。"""
    if n < 0:
        raise ValueError(f"chain length must be >= 0, got {n}")
    return PastingTree((POINT,) * n)


def dimension(t: PastingTree) -> int:
    return t.height


@lru_cache(maxsize=CATALOG_CACHE_SIZE)
def _trees(max_dim: int, max_edges: int) -> tuple[PastingTree, ...]:
    if max_dim == 0 or max_edges == 0:
        return (POINT,)
    subtrees = _trees(max_dim - 1, max_edges - 1)
    out = []

    def extend(prefix: tuple[PastingTree, ...], budget: int) -> None:
        out.append(PastingTree(prefix))
        for child in subtrees:
            cost = 1 + child.edge_count
            if cost <= budget:
                extend(prefix + (child,), budget - cost)

    extend((), max_edges)
    return tuple(out)


def enumerate_trees(max_dim: int, max_edges: int) -> list[PastingTree]:
    """高度 ≤ max_dim 且边数 ≤ max_edges 的全部平面有根树，按 `sort_key` 排序、无重复。"""
    if max_dim < 0 or max_edges < 0:
        raise ValueError("tree bounds must be >= 0")
    return sorted(_trees(max_dim, max_edges), key=lambda t: t.sort_key)


def clear_catalog_cache() -> None:
    _trees.cache_clear()
