# coding=utf-8


class GeoLoopException(Exception):
    def __init__(self, name, reason):
        super(GeoLoopException, self).__init__(name, reason)
        self.name = name
        self.reason = reason

    def __repr__(self):
        if self.reason:
            return "{}: {}".format(self.name, self.reason)
        else:
            return self.name

    __str__ = __repr__


class ParseException(GeoLoopException):
    """输入文件、参数或环境变量无法解析。"""


class ValidityException(GeoLoopException):
    """点、词或群元素不满足定义中的约束。"""


class SolverException(GeoLoopException):
    """测地线数值求解失败：不收敛、离开坐标域或度量非正定。"""
