# coding=utf-8
import logging

from .const import CHAIN_STEP_BUDGET, SPECIES_G, SPECIES_Z_BASED
from .exceptions import ValidityException
from .g_logger import logger
from . import group, invariants, random_words, realization
from .words import Word


class LoopSpace:
    def __init__(self, manifold,
                 basepoint,
                 step_budget=CHAIN_STEP_BUDGET,
                 external_logger=None,
                 logger_level=logging.WARNING):
        """
        创建一个基于流形 M 与基点 v0 的环路空间 G(M,∞)

        :param manifold:
        一个 ManifoldSpec 实例，例如 Sphere(2)、FlatTorus(2)、ChartManifold(...)。
        点重合阈值 eps_eq 在构造流形时指定。

        :param basepoint:
        基点 v0 的坐标，必须是流形上的合法点。

        :param step_budget:
        chain_word 细分连接曲线时允许的最大段数。
        默认为64。

        :param external_logger:
        设置输出自身运行状态的日志对象。
        默认为None，即使用logging模块并打印到stderr。

        :param logger_level:
        内部日志打印level。默认为logging.WARNING。
        """
        logger.set_level(logger_level)
        if external_logger:
            logger.set_logger(external_logger)

        if int(step_budget) != step_budget or step_budget < 1:
            raise ValidityException("PreconditionException", "step_budget should be integer and >= 1")

        self.manifold = manifold
        self.basepoint = manifold.point(basepoint)
        self.step_budget = int(step_budget)
        self._charts = {}

    def word(self, points, species=SPECIES_G):
        """
        由点列构造一个词，点按 (x_k, ..., x_0) 的顺序给出。
        species 为 G 时返回约化后的群元素。
        """
        w = Word(self.manifold, points, species, self.basepoint if species in (SPECIES_G, SPECIES_Z_BASED) else None)
        if species == SPECIES_G:
            return group.as_element(w)
        return w

    def identity(self):
        return group.identity(self.manifold, self.basepoint)

    def mul(self, *elements):
        result = self.identity()
        for g in elements:
            result = group.mul(result, g)
        return result

    def inverse(self, g):
        return group.inverse(g)

    def act(self, z, g):
        return group.action_mu(z, g)

    def free_loop(self, z, g):
        return invariants.free_loop(z, g)

    def chain(self, p):
        return group.chain_word(self.manifold, self.basepoint, p, self.step_budget)

    def chart(self, p):
        """
        以 p 为中心的局部平凡化，同一个中心只构造一次。
        """
        p = self.manifold.point(p)
        key = tuple(p.tolist())
        if key not in self._charts:
            self._charts[key] = group.local_chart(self.manifold, self.basepoint, p, self.step_budget)
        return self._charts[key]

    def realize(self, w):
        return realization.realize(w)

    def pi1(self, g):
        return invariants.pi1_class(g)

    def random_words(self, count, max_length, seed):
        return random_words.random_words(self.manifold, self.basepoint, count, max_length, seed)

    def __repr__(self):
        return "LoopSpace({}, v0={})".format(self.manifold, list(self.basepoint))
