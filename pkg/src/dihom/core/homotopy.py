"""不变量提取：弱等价类、有界同余闭包的同伦范畴 ho1、Hurewicz 比较与 Π_n。

核心职责：
- `weak_classes`：对象在“mor(a,b) 非空”的对称传递闭包下的划分；
- `ho1`：在 1-单形单词上做有界同余闭包（薄边 ≡ 空词，d₁σ ≡ d₂σ·d₀σ），
  输出生成元 / 关系的展示与基点处自同态幺半群的部分乘法表；
- `hurewicz_check`：字母计数预言（自由幺半群的交换化）与同余闭包结果的比较；
- `pi_n`：沿 mor(x,x) 展开 n 次后的同伦（幺半）范畴描述。

实现要点：
- 单词按 (起点, 字母元组) 编号，长度 ≤ word_bound 且权重 ≤ weight_bound；
- 关系只在界内的单词之间合并，因此任何等式都由界内的关系推出，不会多合并；
- 越界的乘积记为 None，并把整张表标记为不完整。
"""

from __future__ import annotations

import itertools
import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Union

import networkx as nx
from networkx.utils import UnionFind
from pydantic import BaseModel, Field

from dihom.common.errors import CompositionUnavailableError, NoBasepointError
from dihom.common.types import EndoMonoidTable, HurewiczCase
from dihom.common.utils import get_logger
from dihom.core.monoid import CommMonoid, MonoidKind
from dihom.core.omegacat import Delooped, OmegaCat
from dihom.core.strat import (
    StratCMonoid,
    StratSet,
    combination,
    m_linear_reduced,
    simplex_key,
    wedge_of_circles,
)

logger = get_logger(__name__)

Word = tuple
DEFAULT_WORD_BOUND = 6
DEFAULT_WEIGHT_BOUND = 6


def object_label(o: Hashable) -> str:
    return o if isinstance(o, str) else json.dumps(o, ensure_ascii=False)


def weak_classes(C: OmegaCat) -> list[list]:
    """弱等价类：以“mor(a,b) 非空”为边的无向图的连通分支。"""
    graph = nx.Graph()
    objs = C.objects()
    graph.add_nodes_from(objs)
    for a, b in itertools.product(objs, repeat=2):
        if a != b and not C.mor(a, b).is_empty():
            graph.add_edge(a, b)
    classes = [sorted(comp, key=object_label) for comp in nx.connected_components(graph)]
    return sorted(classes, key=lambda c: object_label(c[0]))


# -- ho1 ----------------------------------------------------------------------


@dataclass
class _Skeleton:
    """1、2 维数据：边的端点 / 权重 / 标签、2-单形的三个面、薄边。"""

    vertices: list
    ends: dict = field(default_factory=dict)
    weight: dict = field(default_factory=dict)
    label: dict = field(default_factory=dict)
    triangles: list = field(default_factory=list)
    thin: set = field(default_factory=set)
    vertex_label: Callable[[Any], str] = object_label


def _skeleton(S: Union[StratCMonoid, StratSet]) -> _Skeleton:
    if isinstance(S, StratCMonoid):
        M = S.monoid
        sk = _Skeleton(list(S.carrier(0)), vertex_label=lambda c: c.describe(M))
        for c in S.carrier(1):
            sk.ends[c] = (S.face(1, 1, c), S.face(1, 0, c))
            sk.weight[c] = c.weight(M)
            sk.label[c] = c.describe(M)
            if S.is_thin(1, c):
                sk.thin.add(c)
        for t in S.carrier(2):
            sk.triangles.append(tuple(S.face(2, i, t) for i in range(3)))
        return sk
    sk = _Skeleton(list(S.simplices[0]), vertex_label=simplex_key)
    for e in S.simplices[1]:
        sk.ends[e] = (S.face(1, 1, e), S.face(1, 0, e))
        sk.weight[e] = 1
        sk.label[e] = simplex_key(e)
        if S.is_thin(1, e):
            sk.thin.add(e)
    if S.dim >= 2:
        for t in S.simplices[2]:
            sk.triangles.append(tuple(S.face(2, i, t) for i in range(3)))
    return sk


class Ho1Presentation(BaseModel):
    """有界展示：对象、生成箭头、关系（两侧为字母标签列表）与界。"""
    objects: list[str] = Field(description="0 维元素")
    generators: list[dict[str, str]] = Field(description="1 维元素及其源、靶")
    relations: list[list[list[str]]] = Field(description="[左侧单词, 右侧单词]")
    word_bound: int
    weight_bound: int
    words: int = Field(description="界内单词总数")
    classes: int = Field(description="界内单词的同余类个数")


@dataclass
class Ho1Result:
    presentation: Ho1Presentation
    endo: EndoMonoidTable
    base: Any
    representatives: list[Word]
    _index: dict[Word, int] = field(default_factory=dict, repr=False)

    def class_of(self, letters: Word) -> int | None:
        """基点处单词所在的类下标；单词超出界时为 None。"""
        return self._index.get(tuple(letters))


def ho1(
    S: Union[StratCMonoid, StratSet],
    base: Any = None,
    word_bound: int = DEFAULT_WORD_BOUND,
    weight_bound: int = DEFAULT_WEIGHT_BOUND,
) -> Ho1Result:
    """1-骨架上的有界同余闭包与基点自同态表。"""
    if word_bound < 1 or weight_bound < 1:
        raise ValueError("ho1 bounds must be >= 1")
    if isinstance(S, StratCMonoid):
        if weight_bound > S.weight_bound:
            logger.warning(f"BoundExceeded: weight bound {weight_bound} exceeds the materialized {S.weight_bound}")
            weight_bound = S.weight_bound
        if base is None:
            base = S.zero
    elif base is None:
        if S.basepoint is None and not S.simplices[0]:
            raise NoBasepointError(f"{S.label} has no 0-simplices to serve as a basepoint")
        base = S.basepoint if S.basepoint is not None else S.simplices[0][0]
    sk = _skeleton(S)
    if base not in set(sk.vertices):
        raise ValueError(f"base {base!r} is not a 0-element")

    outgoing: dict[Any, list] = defaultdict(list)
    for e in sorted(sk.ends, key=lambda e: sk.label[e]):
        outgoing[sk.ends[e][0]].append(e)

    # 单词：(起点, 字母元组)
    words: list[tuple[Any, Word]] = []
    end_of: dict[tuple[Any, Word], Any] = {}
    for v in sk.vertices:
        frontier = [((v, ()), v, 0)]
        while frontier:
            nxt = []
            for w, end, wt in frontier:
                words.append(w)
                end_of[w] = end
                if len(w[1]) == word_bound:
                    continue
                for e in outgoing[end]:
                    if wt + sk.weight[e] <= weight_bound:
                        nxt.append(((v, w[1] + (e,)), sk.ends[e][1], wt + sk.weight[e]))
            frontier = nxt

    relations: dict[Any, set] = defaultdict(set)
    for e in sk.thin:
        relations[e].add(())
    for d0, d1, d2 in sk.triangles:
        if sk.ends[d2][1] != sk.ends[d0][0] or sk.ends[d1] != (sk.ends[d2][0], sk.ends[d0][1]):
            logger.warning(f"Skipping a 2-simplex whose faces are not parallel: {sk.label[d1]}")
            continue
        relations[d1].add((d2, d0))

    uf = UnionFind(words)
    index = set(words)
    for v, letters in words:
        for p, letter in enumerate(letters):
            for rhs in relations.get(letter, ()):
                other = (v, letters[:p] + rhs + letters[p + 1:])
                if other in index:
                    uf.union((v, letters), other)

    def rep_key(w: tuple[Any, Word]) -> tuple:
        return (len(w[1]), tuple(sk.label[e] for e in w[1]))

    loops = [w for w in words if w[0] == base and end_of[w] == base]
    by_root: dict[Any, list] = defaultdict(list)
    for w in loops:
        by_root[uf[w]].append(w)
    reps = sorted((min(ws, key=rep_key) for ws in by_root.values()), key=rep_key)
    class_index = {uf[w]: i for i, w in enumerate(reps)}
    loop_index = {w[1]: class_index[uf[w]] for w in loops}

    table: dict[str, int | None] = {}
    for (i, a), (j, b) in itertools.product(enumerate(reps), repeat=2):
        table[f"{i},{j}"] = loop_index.get(a[1] + b[1])
    complete = all(v is not None for v in table.values())

    def show(letters: Word) -> str:
        return "[" + ", ".join(sk.label[e] for e in letters) + "]"

    presentation = Ho1Presentation(
        objects=[sk.vertex_label(v) for v in sk.vertices],
        generators=[{"name": sk.label[e], "source": sk.vertex_label(s), "target": sk.vertex_label(t)}
                    for e, (s, t) in sorted(sk.ends.items(), key=lambda kv: sk.label[kv[0]])],
        relations=sorted([[sk.label[e]], [sk.label[x] for x in rhs]]
                         for e, rhss in relations.items() for rhs in rhss),
        word_bound=word_bound,
        weight_bound=weight_bound,
        words=len(words),
        classes=len({uf[w] for w in words}),
    )
    endo = EndoMonoidTable(classes=[show(w[1]) for w in reps], table=table, complete=complete)
    if not complete:
        logger.warning(f"BoundExceeded: {sum(v is None for v in table.values())} products of the endomorphism "
                       f"table lie beyond the word bounds")
    logger.info(f"ho1: {len(words)} words, {presentation.classes} classes, {len(reps)} endomorphism classes at base")
    return Ho1Result(presentation, endo, base, [w[1] for w in reps], loop_index)


# -- 比较 ---------------------------------------------------------------------


@dataclass
class EndoComparison:
    injective: bool
    surjective: bool
    table_matches: bool
    truncated: bool
    witnesses: list = field(default_factory=list)


def compare_endo(result: Ho1Result, images: dict[Hashable, Word], add: Callable[[Any, Any], Any]) -> EndoComparison:
    """检查 key ↦ class_of(images[key]) 是否为双射，并在乘法表有定义处与 add 相容。"""
    witnesses: list = []
    classes: dict[Hashable, int] = {}
    truncated = False
    for key, word in images.items():
        idx = result.class_of(word)
        if idx is None:
            truncated = True
            witnesses.append({"beyond_bounds": str(key)})
        else:
            classes[key] = idx
    inverse: dict[int, list] = defaultdict(list)
    for key, idx in classes.items():
        inverse[idx].append(key)
    collisions = [sorted(map(str, keys)) for keys in inverse.values() if len(keys) > 1]
    witnesses.extend({"collision": c} for c in collisions)
    injective = not collisions and not truncated
    missing = [result.endo.classes[i] for i in range(len(result.representatives)) if i not in inverse]
    witnesses.extend({"unreached": m} for m in missing)
    surjective = not missing
    table_ok = True
    for a, b in itertools.product(classes, repeat=2):
        got = result.endo.table.get(f"{classes[a]},{classes[b]}")
        s = add(a, b)
        if got is None or s not in classes:
            truncated = truncated or got is None
            continue
        if got != classes[s]:
            table_ok = False
            witnesses.append({"product": [str(a), str(b)], "expected": str(s)})
    return EndoComparison(injective, surjective, table_ok, truncated, witnesses[:10])


def _cyclic_order(M: CommMonoid) -> int | None:
    if M.kind is not MonoidKind.TABLE or M.unit_index != 0:
        return None
    s = len(M.table)
    ok = all(M.table[a][b] == (a + b) % s for a in range(s) for b in range(s))
    return s if ok else None


def letter_count_oracle(g: int, bound: int, modulus: int | None = None) -> set[tuple[int, ...]]:
    """自由幺半群（g 个生成元）中长度 ≤ bound 的单词的字母计数（可取模）。"""
    out = set()
    for length in range(bound + 1):
        for word in itertools.product(range(g), repeat=length):
            counts = [0] * g
            for letter in word:
                counts[letter] += 1
            out.add(tuple(c % modulus if modulus else c for c in counts))
    return out


def hurewicz_check(g: int, coeff: CommMonoid, bound: int) -> HurewiczCase:
    """g 个有向圆的楔：字母计数预言 vs ho1(约化 M-线性模型) 在基点的自同态类。"""
    if g < 1:
        raise ValueError(f"generator count must be >= 1, got {g}")
    if coeff.kind is MonoidKind.FREE_COMMUTATIVE and coeff.generators_count == 1:
        modulus, one = None, (1,)
    else:
        modulus, one = _cyclic_order(coeff), 1
        if modulus is None:
            raise ValueError(f"Hurewicz comparison supports N and Z/m coefficients, got {coeff.label}")
    lhs = letter_count_oracle(g, bound, modulus)
    model = m_linear_reduced(wedge_of_circles(g, dim=2), coeff, bound)
    result = ho1(model, word_bound=bound, weight_bound=bound)
    gens = [combination(coeff, [((i, (0, 1)), one)]) for i in range(g)]
    images = {v: tuple(letter for i, count in enumerate(v) for letter in [gens[i]] * count) for v in lhs}

    def add(v, w):
        s = tuple(a + b for a, b in zip(v, w))
        return tuple(x % modulus for x in s) if modulus else s

    cmp = compare_endo(result, images, add)
    case = HurewiczCase(
        generators=g,
        coefficients=coeff.label,
        bound=bound,
        lhs_size=len(lhs),
        rhs_size=len(result.representatives),
        injective=cmp.injective,
        surjective=cmp.surjective,
        table_matches=cmp.table_matches,
        truncated=cmp.truncated or not result.endo.complete,
        witnesses=cmp.witnesses,
    )
    logger.info(f"Hurewicz g={g} coeff={coeff.label} bound={bound}: lhs={case.lhs_size} rhs={case.rhs_size} "
                f"passed={case.passed}")
    return case


def linear_sphere_letters(M: CommMonoid, bound: int) -> dict[Any, Word]:
    """S¹ 模型上 a ↦ 单字母词 [a·e]（单位元对应空词）。"""
    edge = (0, 1)
    out = {}
    for a in M.elements_up_to(bound):
        out[a] = () if a == M.unit else (combination(M, [(edge, a)]),)
    return out


# -- Π_n ----------------------------------------------------------------------

STRUCTURES = {0: "category", 1: "monoidal", 2: "braided monoidal"}


class HomotopyMonoidal(BaseModel):
    """Π_n(C, x)：对象为 x 处的 n-胞腔，hom 为 (n+1)-胞腔的弱等价类。"""
    level: int
    base: str
    structure: str = Field(description="category / monoidal / braided monoidal / symmetric monoidal（仅元数据）")
    objects: list[str]
    hom_classes: dict[str, list[list[str]]] = Field(description='"a,b" -> 弱等价类')
    composition: str = Field(description="monoid：由幺半群元数据给出；thin：每个 hom 至多一类，复合被迫唯一")
    endo: EndoMonoidTable | None = None


def pi_n(C: OmegaCat, x: Hashable, n: int) -> HomotopyMonoidal:
    if n < 0:
        raise ValueError(f"level must be >= 0, got {n}")
    D, obj = C, x
    for _ in range(n):
        if obj not in D.objects():
            raise ValueError(f"{obj!r} is not an object of {D.label}")
        D, obj = D.mor(obj, obj), D.identity(obj)
    objs = D.objects()
    if obj not in objs:
        raise ValueError(f"{obj!r} is not an object of {D.label}")
    homs = {(a, b): weak_classes(D.mor(a, b)) for a, b in itertools.product(objs, repeat=2)}
    hom_classes = {f"{object_label(a)},{object_label(b)}": [[object_label(o) for o in cls] for cls in classes]
                   for (a, b), classes in homs.items()}
    endo_classes = homs[(obj, obj)]
    if isinstance(D, Delooped) and D.n == 1:
        M = D.monoid
        elems = [c[0] for c in endo_classes]
        pos = {e: i for i, e in enumerate(elems)}
        table = {f"{i},{j}": pos[M.op(a, b)] for (i, a), (j, b) in itertools.product(enumerate(elems), repeat=2)}
        endo = EndoMonoidTable(classes=[M.element_label(e) for e in elems], table=table, complete=True)
        composition = "monoid"
    elif all(len(classes) <= 1 for classes in homs.values()):
        endo = EndoMonoidTable(classes=[object_label(endo_classes[0][0])], table={"0,0": 0}, complete=True)
        composition = "thin"
    else:
        raise CompositionUnavailableError(f"{D.label} carries no composition metadata and has non-thin homs")
    return HomotopyMonoidal(
        level=n,
        base=object_label(x),
        structure=STRUCTURES.get(n, "symmetric monoidal"),
        objects=[object_label(o) for o in objs],
        hom_classes=hom_classes,
        composition=composition,
        endo=endo,
    )
