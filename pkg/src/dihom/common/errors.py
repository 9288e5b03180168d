"""异常层次：所有领域错误都继承 `DihomError`，CLI 统一捕获后以退出码 2 结束。"""


class DihomError(Exception):
    """dihom 领域错误的基类。"""


class InfiniteError(DihomError):
    """需要枚举的对象集合不是有限可枚举的。"""


class ShapeTooDeepError(DihomError):
    """`hom_set` 递归超过配置的深度上限。"""


class DimensionMismatchError(DihomError):
    """元组中的函子不是来自同一个形状，或目标维数不符。"""


class NoSortError(DihomError):
    """不存在使元组落入阶梯子范畴的置换。"""


class NotClosedError(DihomError):
    """子集在面映射或退化映射下不封闭。"""


class NoBasepointError(DihomError):
    """操作需要基点，但分层单纯集没有基点。"""


class InvalidCategoryError(DihomError):
    """复合表不完整、不结合或不满足单位律。"""


class CompositionUnavailableError(DihomError):
    """范畴没有可用的复合元数据。"""


class InvalidPresentationError(DihomError):
    """输入文本 / JSON / 系数描述格式错误。"""
