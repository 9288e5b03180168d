"""共享夹具：常用系数幺半群、内置模型与形状目录。"""

import pytest

from dihom.core.monoid import CommMonoid
from dihom.core.pasting import enumerate_trees
from dihom.core.strat import builtin_model


@pytest.fixture(autouse=True)
def serial_threads(monkeypatch):
    # 串行执行，失败时日志顺序稳定
    monkeypatch.setenv("DIHOM_THREADS", "1")


@pytest.fixture
def naturals():
    return CommMonoid.naturals()


@pytest.fixture
def z2():
    return CommMonoid.cyclic(2)


@pytest.fixture
def circle():
    return builtin_model("s1")


@pytest.fixture
def figure_eight():
    return builtin_model("figure-eight")


@pytest.fixture(scope="session")
def catalog():
    return enumerate_trees(2, 4)
