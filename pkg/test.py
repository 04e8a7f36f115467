# coding=utf-8
import io
import itertools
import json
import logging
import math
import os
import shutil
import tempfile
import unittest
from unittest import mock

import numpy as np

from geoloop import LoopSpace
from geoloop import cli, converters, group, invariants, realization, words
from geoloop.config import resolve_eps_eq
from geoloop.const import EPS_EQ, SPECIES_G, SPECIES_Z, SPECIES_Z_BASED, SPECIES_X, EXIT_OK, EXIT_PARSE, \
    EXIT_VALIDITY, EXIT_CONVERGENCE
from geoloop.exceptions import GeoLoopException, ParseException, ValidityException, SolverException
from geoloop.g_logger import logger
from geoloop.geodesic_solver import ShootingConfig, solve_bvp, integrate_geodesic, speed
from geoloop.manifold import Euclidean, Sphere, FlatTorus, HyperbolicDisk, ProjectivePlane, ChartManifold, \
    get_manifold
from geoloop.metrics import polar_to_unit
from geoloop.random_words import random_words, random_based_words, random_closed_word, make_rng

TestCase = unittest.TestCase

V0_SPHERE = (1.0, 0.0, 0.0)
V0_FLAT = (0.0, 0.0)
ROOT3_2 = math.sqrt(3.0) / 2.0


def G(m, v0, *points):
    return words.Word(m, points, SPECIES_G, v0)


def based(m, v0, *points):
    return words.Word(m, points, SPECIES_Z_BASED, v0)


def same_points(u, v):
    return len(u) == len(v) and all(np.array_equal(p, q) for p, q in zip(u.points, v.points))


class TestExceptions(TestCase):
    def test_str(self):
        e = ValidityException("UniquenessException", "antipodal")
        self.assertEqual("UniquenessException: antipodal", str(e))
        self.assertEqual("X", str(GeoLoopException("X", "")))
        self.assertTrue(isinstance(e, GeoLoopException))


class TestGLogger(TestCase):
    def setUp(self):
        class MockLogger:
            def __init__(self):
                self.output = ""

            def echo(self, message):
                self.output = message

            debug = echo
            info = echo
            warning = echo
            error = echo

        self.mock_external_logger = MockLogger()
        self.saved = logger.logger

    def tearDown(self):
        logger.set_logger(self.saved)
        logger.set_level(logging.WARNING)

    def test_logger(self):
        mock_logger = self.mock_external_logger
        logger.set_level(logging.INFO)
        logger.set_logger(mock_logger)

        logger.debug("Too old %s", "man")
        self.assertEqual("", mock_logger.output)

        logger.info("%s Haha %s", "a", "b")
        self.assertEqual("a Haha b", mock_logger.output)
        logger.warning("%s Haha %s", "a", "c")
        self.assertEqual("a Haha c", mock_logger.output)
        logger.error("%s Haha %s", "a", "d")
        self.assertEqual("a Haha d", mock_logger.output)

    def test_level(self):
        with self.assertRaises(GeoLoopException):
            logger.set_level(12345)

    def test_none_ascii(self):
        logger.set_logger(self.mock_external_logger)
        logger.set_level(logging.INFO)
        logger.info("%s", u"哈")
        self.assertEqual(u"哈", self.mock_external_logger.output)


class TestConfig(TestCase):
    def test_precedence(self):
        with mock.patch.dict(os.environ, {"GEOLOOP_EPS_EQ": ""}):
            self.assertEqual(EPS_EQ, resolve_eps_eq())
        with mock.patch.dict(os.environ, {"GEOLOOP_EPS_EQ": "1e-6"}):
            self.assertEqual(1e-6, resolve_eps_eq())
            self.assertEqual(1e-3, resolve_eps_eq(1e-3))
            self.assertEqual(1e-6, Sphere(2).eps_eq)

    def test_bad_values(self):
        with mock.patch.dict(os.environ, {"GEOLOOP_EPS_EQ": "tiny"}):
            with self.assertRaises(ParseException):
                resolve_eps_eq()
        with self.assertRaises(ParseException):
            resolve_eps_eq(-1.0)


class TestManifold(TestCase):
    def test_registry(self):
        self.assertEqual(Sphere(2), get_manifold("sphere", dim=2))
        self.assertNotEqual(Sphere(2), Sphere(2, radius=2.0))
        self.assertNotEqual(Sphere(2), FlatTorus(2))
        with self.assertRaises(ValidityException):
            get_manifold("klein_bottle")

    def test_points(self):
        m = Sphere(2)
        with self.assertRaises(ValidityException):
            m.point([1.0, 1.0, 0.0])
        with self.assertRaises(ValidityException):
            m.point([1.0, 0.0])
        with self.assertRaises(ValidityException):
            HyperbolicDisk().point([1.0, 0.0])
        self.assertTrue(np.allclose([0.25, 0.0], FlatTorus(2).point([1.25, -1.0])))
        self.assertTrue(np.allclose([0.0, 1.0, 0.0], ProjectivePlane().point([0.0, -1.0, 0.0])))

    def test_sphere(self):
        m = Sphere(2)
        self.assertFalse(m.unique_minimal(V0_SPHERE, (-1.0, 0.0, 0.0)))
        self.assertTrue(m.unique_minimal(V0_SPHERE, (0.0, 1.0, 0.0)))
        self.assertAlmostEqual(math.pi / 2, m.distance(V0_SPHERE, (0.0, 0.0, 1.0)), places=12)
        with self.assertRaises(ValidityException):
            m.geodesic(V0_SPHERE, (-1.0, 0.0, 0.0))
        mid = m.geodesic(V0_SPHERE, (0.0, 1.0, 0.0))(0.5)
        self.assertTrue(np.allclose([math.sqrt(0.5), math.sqrt(0.5), 0.0], mid))

    def test_torus(self):
        m = FlatTorus(2)
        self.assertFalse(m.unique_minimal(V0_FLAT, (0.5, 0.2)))
        self.assertTrue(m.unique_minimal(V0_FLAT, (0.49, 0.49)))
        self.assertAlmostEqual(0.1, m.distance((0.95, 0.0), (0.05, 0.0)), places=12)
        self.assertEqual(0.25, m.chart_radius)

    def test_hyperbolic(self):
        m = HyperbolicDisk()
        self.assertAlmostEqual(math.log(3.0), m.distance(V0_FLAT, (0.5, 0.0)), places=12)
        a, b = m.point((0.1, -0.3)), m.point((-0.4, 0.2))
        self.assertTrue(np.allclose(b, m.exp_map(a, m.log_map(a, b)), atol=1e-12))
        self.assertAlmostEqual(m.distance(a, b), m.norm(a, m.log_map(a, b)), places=10)
        ball = HyperbolicDisk(dim=3)
        self.assertAlmostEqual(math.log(3.0), ball.distance((0, 0, 0), (0, 0, 0.5)), places=12)

    def test_projective(self):
        m = ProjectivePlane()
        self.assertTrue(m.equal((0.0, 0.0, 1.0), (0.0, 0.0, -1.0)))
        self.assertAlmostEqual(math.pi / 3, m.distance(V0_SPHERE, (0.5, -ROOT3_2, 0.0)), places=12)
        self.assertFalse(m.unique_minimal(V0_SPHERE, (0.0, 1.0, 0.0)))

    def test_chart(self):
        m = ChartManifold(dim=2, metric="flat", rho_u=1.0)
        self.assertAlmostEqual(0.5, m.distance((0.0, 0.0), (0.3, 0.4)), places=7)
        self.assertFalse(m.unique_minimal((0.0, 0.0), (1.0, 1.0)))
        with self.assertRaises(ValidityException):
            ChartManifold(dim=2, metric="flat")
        with self.assertRaises(ValidityException):
            ChartManifold(dim=2, metric="polar_sphere", rho_u=1.0).point((-0.1, 0.0))

    def test_chart_distance_beyond_rho_u(self):
        m = ChartManifold(dim=2, metric="flat", rho_u=1.0)
        self.assertAlmostEqual(5.0, m.distance((0.0, 0.0), (3.0, 4.0)), places=9)
        meridian = ChartManifold(dim=2, metric="polar_sphere", rho_u=1.0)
        self.assertAlmostEqual(2.8, meridian.distance((0.2, 0.0), (3.0, 0.0)), delta=1e-6)
        hopeless = ChartManifold(dim=2, metric="polar_sphere", rho_u=1.0,
                                 shooting=ShootingConfig(newton_max_iters=1, bvp_tolerance=1e-300))
        with self.assertRaises(SolverException):
            hopeless.distance((1.0, 0.0), (2.0, 1.0))

    def test_bad_metric(self):
        m = ChartManifold(dim=2, metric=lambda x: -np.eye(2), rho_u=1.0)
        with self.assertRaises(SolverException):
            m.distance_bound((0.0, 0.0), (0.1, 0.0))

    def test_log_exp_examples(self):
        self.assertAlmostEqual(-0.3, FlatTorus(1).log_map((0.1,), (0.8,))[0], places=12)
        quarter = Sphere(2).exp_map(V0_SPHERE, (0.0, math.pi / 2, 0.0))
        self.assertTrue(np.allclose([0.0, 1.0, 0.0], quarter, atol=1e-12))


class TestManifoldProperties(TestCase):
    SPACES = (Sphere(2), FlatTorus(2), HyperbolicDisk(), ProjectivePlane())

    def unique_pairs(self, m, count, seed):
        rng = make_rng(seed)
        pairs = []
        while len(pairs) < count:
            a, b = m.random_point(rng), m.random_point(rng)
            if m.unique_minimal(a, b):
                pairs.append((a, b))
        return pairs

    def test_exp_log_round_trip(self):
        for m in self.SPACES:
            for a, b in self.unique_pairs(m, 2500, 17):
                self.assertLess(m.distance(b, m.exp_map(a, m.log_map(a, b))), 1e-9)
                self.assertAlmostEqual(m.distance(a, b), m.norm(a, m.log_map(a, b)), places=9)

    def test_geodesic_reversal(self):
        ts = (0.1, 0.25, 0.5, 0.8)
        for m in self.SPACES:
            for a, b in self.unique_pairs(m, 500, 19):
                forward, backward = m.geodesic(a, b), m.geodesic(b, a)
                for t in ts:
                    self.assertLess(m.distance(forward(t), backward(1.0 - t)), 1e-9)

    def test_polyline_length(self):
        ts = np.linspace(0.0, 1.0, 9)
        for m in self.SPACES:
            for a, b in self.unique_pairs(m, 500, 23):
                path = m.geodesic(a, b)
                self.assertAlmostEqual(m.distance(a, b), realization.polyline_length(m, path.points(ts)), places=9)

    def test_unique_minimal_symmetric(self):
        for m in self.SPACES:
            rng = make_rng(29)
            for _ in range(1000):
                a, b = m.random_point(rng), m.random_point(rng)
                self.assertEqual(m.unique_minimal(a, b), m.unique_minimal(b, a))
        t = FlatTorus(2)
        self.assertFalse(t.unique_minimal((0.5, 0.2), V0_FLAT))
        self.assertFalse(Sphere(2).unique_minimal((-1.0, 0.0, 0.0), V0_SPHERE))


class TestGeodesicSolver(TestCase):
    @classmethod
    def setUpClass(cls):
        cls.m = ChartManifold(dim=2, metric="polar_sphere", rho_u=2.5)
        rng = make_rng(7)
        cls.pairs = []
        while len(cls.pairs) < 100:
            a = np.array([rng.uniform(math.pi / 3, 2 * math.pi / 3), rng.uniform(-0.5, 0.5)])
            b = np.array([rng.uniform(math.pi / 3, 2 * math.pi / 3), rng.uniform(-0.5, 0.5)])
            d = math.acos(max(-1.0, min(1.0, float(np.dot(polar_to_unit(a), polar_to_unit(b))))))
            if 0.05 < d < math.pi / 2:
                cls.pairs.append((a, b, d))

    def test_great_circle_distance(self):
        for a, b, d in self.pairs:
            path = solve_bvp(self.m, a, b)
            self.assertAlmostEqual(d, path.length, delta=1e-6)
            self.assertTrue(np.array_equal(a, path(0.0)))
            self.assertTrue(np.array_equal(b, path(1.0)))

    def test_energy_conservation(self):
        for a, b, _ in self.pairs[:5]:
            positions, velocities = solve_bvp(self.m, a, b).trajectory
            speeds = np.array([speed(self.m, x, v) for x, v in zip(positions, velocities)])
            self.assertLess(np.max(np.abs(speeds - speeds[0])) / speeds[0], 1e-6)

    def test_step_halving(self):
        coarse = self.m.shooting.replace(rk4_steps=128)
        for a, b, _ in self.pairs[:5]:
            self.assertLess(abs(solve_bvp(self.m, a, b).length - solve_bvp(self.m, a, b, coarse).length), 1e-7)

    def test_errors(self):
        with self.assertRaises(ValidityException):
            ShootingConfig(rk4_steps=0)
        with self.assertRaises(ValidityException):
            solve_bvp(ChartManifold(dim=2, metric="flat", rho_u=1.0), (0.0, 0.0), (2.0, 0.0))
        with self.assertRaises(SolverException):
            integrate_geodesic(self.m, (0.2, 0.0), (-1.0, 0.0))
        hopeless = ShootingConfig(newton_max_iters=1, bvp_tolerance=1e-300)
        a, b, _ = self.pairs[0]
        with self.assertRaises(SolverException):
            solve_bvp(self.m, a, b, hopeless)

    def test_constant(self):
        path = solve_bvp(self.m, (1.0, 0.5), (1.0, 0.5))
        self.assertEqual(0.0, path.length)

    def test_flat_integration(self):
        m = ChartManifold(dim=2, metric="flat", rho_u=1.0)
        path = integrate_geodesic(m, (0.0, 0.0), (1.0, 0.0))
        self.assertTrue(np.allclose([1.0, 0.0], path.b, atol=1e-12))
        self.assertAlmostEqual(1.0, path.length, places=12)

    def test_equator_stays_on_equator(self):
        path = integrate_geodesic(self.m, (math.pi / 2, 0.0), (0.0, 1.0))
        positions, _ = path.trajectory
        self.assertLess(np.max(np.abs(positions[:, 0] - math.pi / 2)), 1e-8)
        self.assertAlmostEqual(1.0, path.b[1], delta=1e-8)

    def test_poincare_radial(self):
        m = ChartManifold(dim=2, metric="poincare_disk", rho_u=3.0)
        for s in (0.5, 1.0, 2.0):
            path = integrate_geodesic(m, (0.0, 0.0), (s / 2.0, 0.0))
            self.assertAlmostEqual(math.tanh(s / 2.0), path.b[0], delta=1e-7)
            self.assertAlmostEqual(0.0, path.b[1], delta=1e-12)
            self.assertAlmostEqual(s, path.length, places=9)

    def test_shooting_consistency(self):
        tolerance = self.m.shooting.bvp_tolerance
        for a, b, _ in self.pairs[:10]:
            v0 = solve_bvp(self.m, a, b).initial_velocity
            self.assertLess(np.linalg.norm(integrate_geodesic(self.m, a, v0).b - b), tolerance)
            back = self.m.exp_map(a, self.m.log_map(a, b))
            self.assertLess(np.linalg.norm(back - b), tolerance)


class TestWords(TestCase):
    def setUp(self):
        self.m = Sphere(2)
        self.a = (0.0, 1.0, 0.0)
        self.b = (0.0, 0.0, 1.0)

    def test_validate(self):
        m = self.m
        self.assertTrue(words.validate(words.segment(m, V0_SPHERE, self.a, self.a)))
        result = words.validate(words.segment(m, V0_SPHERE, (-1.0, 0.0, 0.0), self.a))
        self.assertFalse(result)
        self.assertEqual(1, result.index)
        result = words.validate(G(m, V0_SPHERE, V0_SPHERE, self.a, self.b))
        self.assertEqual(0, result.index)
        result = words.validate(words.Word(m, [self.a, self.b, V0_SPHERE], SPECIES_X))
        self.assertEqual(2, result.index)

    def test_representation(self):
        with self.assertRaises(ValidityException):
            words.Word(self.m, [], SPECIES_Z)
        with self.assertRaises(ValidityException):
            words.Word(self.m, [V0_SPHERE], SPECIES_G)
        with self.assertRaises(ValidityException) as ctx:
            words.Word(self.m, [V0_SPHERE, (0.0, 0.0)], SPECIES_Z)
        self.assertEqual("ManifoldMismatchException", ctx.exception.name)

    def test_reduce(self):
        m = self.m
        r = words.reduce(G(m, V0_SPHERE, V0_SPHERE, self.a, V0_SPHERE))
        self.assertEqual(0, r.k)
        r = words.reduce(G(m, V0_SPHERE, V0_SPHERE, self.b, self.a, self.a, V0_SPHERE))
        self.assertEqual(3, r.k)
        w = G(m, V0_SPHERE, V0_SPHERE, self.b, self.a, V0_SPHERE)
        self.assertTrue(same_points(w, words.reduce(w)))
        with self.assertRaises(ValidityException):
            words.reduce(words.segment(m, V0_SPHERE, (-1.0, 0.0, 0.0)))

    def test_endpoints_kept(self):
        m = Euclidean(2, eps_eq=1e-3)
        w = based(m, (0.0, 0.0), (1.0, 1.0), (0.5, 0.0), (1.0, 1.0005), (0.0, 0.0))
        r = words.reduce(w)
        self.assertTrue(np.array_equal((1.0, 1.0), r.head))
        self.assertTrue(np.array_equal((0.0, 0.0), r.tail))

    def test_class_equal(self):
        m = self.m
        self.assertTrue(words.class_equal(G(m, V0_SPHERE, V0_SPHERE, self.a, V0_SPHERE), G(m, V0_SPHERE, V0_SPHERE)))
        with self.assertRaises(ValidityException):
            words.class_equal(words.segment(m, V0_SPHERE), G(m, V0_SPHERE, V0_SPHERE))
        with self.assertRaises(ValidityException):
            words.class_equal(G(m, V0_SPHERE, V0_SPHERE), G(FlatTorus(2), V0_FLAT, V0_FLAT))

    def test_project_pi(self):
        w = based(self.m, V0_SPHERE, self.a, self.b, V0_SPHERE)
        self.assertTrue(np.array_equal(self.a, words.project_pi(w)))

    def test_concat(self):
        m = self.m
        u = words.segment(m, self.a, self.b)
        v = words.segment(m, self.b, V0_SPHERE)
        self.assertEqual(3, words.reduce(words.concat(u, v)).k + 1)
        with self.assertRaises(ValidityException) as ctx:
            words.concat(v, u)
        self.assertEqual("ComposabilityException", ctx.exception.name)

    def test_confluence(self):
        m = self.m
        config = [m.point(p / np.linalg.norm(p)) for p in
                  (np.array([1.0, 0.1, 0.2]), np.array([0.2, 1.0, -0.3]),
                   np.array([-0.3, 0.2, 1.0]), np.array([-0.5, -0.6, 0.4]))]
        checked = 0
        for n in range(1, 8):
            for labels in itertools.product(range(4), repeat=n):
                w = words.Word(m, [config[i] for i in labels], SPECIES_Z)
                forms = words.all_normal_forms(w)
                self.assertEqual(1, len(forms))
                self.assertTrue(same_points(forms[0], words.reduce(w)))
                checked += 1
        self.assertEqual(sum(4 ** n for n in range(1, 8)), checked)

    def test_class_equal_order(self):
        m = self.m
        self.assertFalse(words.class_equal(G(m, V0_SPHERE, V0_SPHERE, self.a, self.b, V0_SPHERE),
                                           G(m, V0_SPHERE, V0_SPHERE, self.b, self.a, V0_SPHERE)))

    def test_class_equal_equivalence(self):
        m = self.m
        corpus = random_words(m, V0_SPHERE, 1001, 6, seed=61)
        triples = []
        for g, h in zip(corpus, corpus[1:]):
            excursion = G(m, V0_SPHERE, *(list(g.points) + [self.a, V0_SPHERE]))
            stutter = G(m, V0_SPHERE, *([g.head] + list(g.points)))
            triples.append((g, excursion, stutter))
            triples.append((g, h, excursion))
        for u, v, w in triples:
            self.assertTrue(words.class_equal(u, u))
            self.assertEqual(words.class_equal(u, v), words.class_equal(v, u))
            if words.class_equal(u, v) and words.class_equal(v, w):
                self.assertTrue(words.class_equal(u, w))
        g = corpus[0]
        self.assertTrue(words.class_equal(g, triples[0][1]))
        self.assertTrue(words.class_equal(triples[0][1], triples[0][2]))

    def test_intermediate_words_valid(self):
        m = self.m
        for g in random_words(m, V0_SPHERE, 200, 6, seed=67):
            w = words.concat(g, words.reverse(g), SPECIES_G, V0_SPHERE)
            pts = list(w.points)
            steps = 0
            for j, _ in words.reduction_steps(w):
                del pts[j]
                self.assertTrue(words.validate(G(m, V0_SPHERE, *pts)))
                steps += 1
            self.assertEqual(len(w) - 1, steps)

    def test_first_reducible(self):
        m = self.m
        self.assertIsNone(words.first_reducible(words.segment(m, self.a, self.b)))
        self.assertEqual(1, words.first_reducible(words.segment(m, self.a, self.b, self.a)))


class TestGroup(TestCase):
    MANIFOLDS = (
        (Sphere(2), V0_SPHERE),
        (FlatTorus(2), V0_FLAT),
        (HyperbolicDisk(), V0_FLAT),
    )

    def test_identity(self):
        m = Sphere(2)
        e = group.identity(m, V0_SPHERE)
        self.assertEqual(0, e.k)
        self.assertTrue(np.array_equal(V0_SPHERE, words.project_pi(e)))
        self.assertTrue(words.class_equal(G(m, V0_SPHERE, V0_SPHERE, V0_SPHERE), e))
        self.assertTrue(same_points(e, group.inverse(e)))

    def test_axioms(self):
        for m, v0 in self.MANIFOLDS:
            corpus = random_words(m, v0, 1000, 6, seed=11)
            e = group.identity(m, v0)
            for i in range(len(corpus) - 2):
                g, h, k = corpus[i], corpus[i + 1], corpus[i + 2]
                self.assertTrue(words.class_equal(group.mul(e, g), g))
                self.assertTrue(words.class_equal(group.mul(g, e), g))
                self.assertTrue(words.class_equal(group.mul(g, group.inverse(g)), e))
                self.assertTrue(words.class_equal(group.mul(group.inverse(g), g), e))
                self.assertTrue(words.class_equal(group.mul(group.mul(g, h), k), group.mul(g, group.mul(h, k))))
                self.assertTrue(words.class_equal(group.inverse(group.mul(g, h)),
                                                  group.mul(group.inverse(h), group.inverse(g))))
                self.assertTrue(words.class_equal(group.inverse(group.inverse(g)), g))

    def test_basepoint_mismatch(self):
        m = Sphere(2)
        g = group.identity(m, V0_SPHERE)
        h = group.identity(m, (0.0, 1.0, 0.0))
        with self.assertRaises(ValidityException) as ctx:
            group.mul(g, h)
        self.assertEqual("BasepointMismatchException", ctx.exception.name)

    def test_action(self):
        m = Sphere(2)
        zs = random_based_words(m, V0_SPHERE, 200, 6, seed=3)
        gs = random_words(m, V0_SPHERE, 201, 6, seed=4)
        e = group.identity(m, V0_SPHERE)
        for z, g, h in zip(zs, gs, gs[1:]):
            zg = group.action_mu(z, g)
            self.assertTrue(np.array_equal(z.head, zg.head))
            self.assertTrue(words.class_equal(group.action_mu(z, e), z))
            self.assertTrue(words.class_equal(group.action_mu(zg, h), group.action_mu(z, group.mul(g, h))))
            back = group.action_mu(zg, group.inverse(g))
            self.assertTrue(words.class_equal(back, z))
            self.assertEqual(1, len(words.all_normal_forms(words.concat(zg, group.inverse(g), SPECIES_Z_BASED,
                                                                        V0_SPHERE))))

    def test_chain_word(self):
        m = Sphere(2)
        chain = group.chain_word(m, V0_SPHERE, (-1.0, 0.0, 0.0))
        self.assertGreaterEqual(chain.k, 2)
        self.assertTrue(words.validate(chain))
        self.assertEqual(0, group.chain_word(m, V0_SPHERE, V0_SPHERE).k)

        t = FlatTorus(2)
        chain = group.chain_word(t, V0_FLAT, (0.49, 0.49))
        self.assertTrue(words.validate(chain))
        for a, b in zip(chain.points[:-1], chain.points[1:]):
            self.assertTrue(np.all(np.abs(t.displacement(a, b)) < 0.5))

        with self.assertRaises(ValidityException) as ctx:
            group.chain_word(m, V0_SPHERE, (-1.0, 0.0, 0.0), step_budget=1)
        self.assertEqual("SubdivisionException", ctx.exception.name)


class TestTrivialization(TestCase):
    def check_charts(self, m, v0, p, q, max_norm):
        rng = make_rng(5)
        cp = group.local_chart(m, v0, p)
        cq = group.local_chart(m, v0, q)
        gs = random_words(m, v0, 1001, 5, seed=9)
        e = group.identity(m, v0)

        self.assertTrue(words.class_equal(group.phi_p(cp, cp.p, e), cp.e_p))
        self.assertTrue(words.class_equal(group.theta_p(cp, cp.e_p), e))

        for g, g2 in zip(gs, gs[1:]):
            x = m.exp_map(cp.p, m.random_tangent(rng, cp.p, max_norm))
            image = group.phi_p(cp, x, g)
            self.assertTrue(np.array_equal(x, words.project_pi(image)))
            self.assertTrue(words.class_equal(group.theta_p(cp, image), g))

            fiber = group.action_mu(group.chain_word(m, v0, x), g2)
            self.assertTrue(words.class_equal(group.phi_p(cp, words.project_pi(fiber), group.theta_p(cp, fiber)),
                                              fiber))
            self.assertTrue(words.class_equal(group.theta_p(cp, group.phi_p(cq, x, g)),
                                              group.mul(group.transition(cp, cq, x), g)))
            self.assertTrue(group.cocycle_holds(cp, cq, cp, x))

            translation = group.fiber_translation(cp, image, fiber)
            self.assertTrue(words.class_equal(group.action_mu(image, translation), fiber))

            point, coordinate = group.trivialize(cp, fiber)
            self.assertTrue(m.equal(point, x))
            self.assertTrue(words.class_equal(coordinate, group.theta_p(cp, fiber)))

    def test_sphere(self):
        m = Sphere(2)
        q = m.point(np.array([0.3, 1.0, 0.2]) / np.linalg.norm([0.3, 1.0, 0.2]))
        self.check_charts(m, V0_SPHERE, (0.0, 1.0, 0.0), q, 0.5)

    def test_torus(self):
        self.check_charts(FlatTorus(2), V0_FLAT, (0.3, 0.6), (0.35, 0.62), 0.1)

    def test_transition_same_chart(self):
        m = Sphere(2)
        cp = group.local_chart(m, V0_SPHERE, (0.0, 1.0, 0.0))
        x = m.point(np.array([0.2, 1.0, 0.1]) / np.linalg.norm([0.2, 1.0, 0.1]))
        self.assertTrue(words.class_equal(group.transition(cp, cp, x), group.identity(m, V0_SPHERE)))

    def test_chart_domain(self):
        m = Sphere(2)
        cp = group.local_chart(m, V0_SPHERE, (0.0, 1.0, 0.0))
        with self.assertRaises(ValidityException) as ctx:
            group.phi_p(cp, (0.0, -1.0, 0.0), group.identity(m, V0_SPHERE))
        self.assertEqual("ChartDomainException", ctx.exception.name)


class TestContraction(TestCase):
    def test_contract_step(self):
        m = Sphere(2)
        w = words.reduce(based(m, V0_SPHERE, (0.0, 0.0, 1.0), (0.0, 1.0, 0.0), V0_SPHERE))
        self.assertTrue(same_points(w, group.contract_step(0.0, w)))
        half = group.contract_step(0.5, w)
        self.assertAlmostEqual(math.pi / 4, m.distance(half.head, (0.0, 1.0, 0.0)), places=12)
        self.assertEqual(w.k - 1, words.reduce(group.contract_step(1.0, w)).k)

    def test_precondition(self):
        m = Sphere(2)
        a = (0.0, 1.0, 0.0)
        with self.assertRaises(ValidityException) as ctx:
            group.contract_step(1.0, based(m, V0_SPHERE, V0_SPHERE, a, V0_SPHERE))
        self.assertEqual("PreconditionException", ctx.exception.name)
        with self.assertRaises(ValidityException):
            group.contract_step(1.0, based(m, V0_SPHERE, a, a, V0_SPHERE))
        with self.assertRaises(ValidityException):
            group.contract_step(1.5, based(m, V0_SPHERE, a, V0_SPHERE))

    def test_contracts_to_basepoint(self):
        for m, v0 in ((Sphere(2), V0_SPHERE), (FlatTorus(2), V0_FLAT)):
            for z in random_based_words(m, v0, 1000, 12, seed=21) + random_words(m, v0, 100, 12, seed=22):
                path = group.contraction_path(z)
                self.assertEqual(words.reduce(z).k, len(path) - 1)
                self.assertEqual(0, path[-1].k)
                self.assertTrue(m.equal(path[-1].head, v0))


class TestRealization(TestCase):
    def test_constant(self):
        m = Sphere(2)
        loop = realization.realize(group.identity(m, V0_SPHERE))
        self.assertEqual(0.0, loop.length)
        for p in realization.sample(loop, 4):
            self.assertTrue(np.array_equal(V0_SPHERE, p))

    def test_sphere_breakpoints(self):
        m = Sphere(2)
        loop = realization.realize(G(m, V0_SPHERE, V0_SPHERE, (0.0, 0.0, 1.0), (0.0, 1.0, 0.0), V0_SPHERE))
        self.assertTrue(np.allclose([0.0, 1.0 / 3, 2.0 / 3, 1.0], loop.breakpoints, atol=1e-15))
        self.assertAlmostEqual(1.5 * math.pi, loop.length, places=12)
        self.assertTrue(np.allclose([0.0, 1.0, 0.0], loop(1.0 / 3), atol=1e-12))
        self.assertTrue(np.allclose([0.0, 0.0, 1.0], loop(2.0 / 3), atol=1e-12))

    def test_euclidean_breakpoints(self):
        m = Euclidean(2)
        loop = realization.realize(based(m, V0_FLAT, (1.0, 2.0), (1.0, 0.0), V0_FLAT))
        self.assertAlmostEqual(1.0 / 3, loop.breakpoints[1], places=15)
        self.assertTrue(np.allclose([1.0, 0.0], loop(1.0 / 3), atol=1e-12))
        self.assertTrue(np.allclose([1.0, 1.0], loop(2.0 / 3), atol=1e-12))

    def test_random_loops(self):
        for m, v0 in ((Sphere(2), V0_SPHERE), (FlatTorus(2), V0_FLAT), (HyperbolicDisk(), V0_FLAT)):
            for g in random_words(m, v0, 1000, 8, seed=31):
                loop = realization.realize(g)
                self.assertLess(realization.breakpoint_gap(loop), 1e-9)
                self.assertTrue(np.array_equal(v0, loop(0.0)))
                self.assertTrue(np.array_equal(v0, loop(1.0)))
                if loop.length == 0.0:
                    continue
                lengths = np.array([s.length for s in loop.segments])
                self.assertTrue(np.allclose(np.cumsum(lengths) / loop.length, loop.breakpoints[1:], atol=1e-15))
                for j in range(1, len(loop.breakpoints)):
                    lo, hi = loop.breakpoints[j - 1], loop.breakpoints[j]
                    if hi - lo < 1e-6:
                        continue
                    t1, t2 = lo + 0.25 * (hi - lo), lo + 0.75 * (hi - lo)
                    d = m.distance(loop(t1), loop(t2))
                    self.assertAlmostEqual(loop.length * (t2 - t1), d, delta=1e-6 * loop.length)

    def test_free_loop(self):
        m = Sphere(2)
        a, b = (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)
        loop = realization.realize(words.Word(m, [a, b, V0_SPHERE, a], SPECIES_X))
        self.assertTrue(np.array_equal(a, loop(0.0)))
        self.assertTrue(np.array_equal(a, loop(1.0)))

    def test_sample_convergence(self):
        m = Sphere(2)
        n = 2 ** 10
        for g in random_words(m, V0_SPHERE, 30, 8, seed=41):
            loop = realization.realize(g)
            total = realization.polyline_length(m, realization.sample(loop, n))
            self.assertLessEqual(total, loop.length + 1e-9)
            self.assertGreaterEqual(total, loop.length - len(loop.segments) * loop.length / n - 1e-9)
        with self.assertRaises(ValidityException):
            realization.sample(loop, 0)

    def test_invariance(self):
        m = FlatTorus(2)
        a, b = (0.3, 0.0), (0.3, 0.3)
        self.assertTrue(realization.realize_invariance_check(G(m, V0_FLAT, V0_FLAT, b, a, a, V0_FLAT)))
        report = realization.invariance_report(G(m, V0_FLAT, V0_FLAT, a, V0_FLAT))
        self.assertFalse(report.same_image)
        self.assertAlmostEqual(0.6, report.excised_length, places=12)
        self.assertTrue(report.pi1_agrees)
        self.assertTrue(report.excised_same_image)
        for g in random_words(m, V0_FLAT, 50, 8, seed=51):
            self.assertTrue(realization.realize_invariance_check(g))
            detour = G(m, V0_FLAT, *(list(g.points) + [a, b, a, V0_FLAT]))
            report = realization.invariance_report(detour)
            self.assertFalse(report.same_image)
            self.assertTrue(report.excised_same_image)
            self.assertTrue(report.pi1_agrees)


class TestInvariants(TestCase):
    def test_torus_winding(self):
        m = FlatTorus(1)
        w = G(m, (0.0,), (0.0,), (0.7,), (0.35,), (0.0,))
        self.assertEqual(invariants.DeckElement("lattice", [1]), invariants.pi1_class(w))
        self.assertTrue(invariants.pi1_class(group.identity(m, (0.0,))).is_identity)

    def test_projective_sign(self):
        m = ProjectivePlane()
        a = (0.5, ROOT3_2, 0.0)
        b = (-0.5, ROOT3_2, 0.0)
        w = G(m, V0_SPHERE, V0_SPHERE, b, a, V0_SPHERE)
        self.assertEqual(invariants.DeckElement("sign", -1), invariants.pi1_class(w))
        self.assertEqual(invariants.DeckElement("sign", 1), invariants.pi1_class(group.identity(m, V0_SPHERE)))

    def test_circle_winding(self):
        m = Sphere(1)
        v0 = (1.0, 0.0)
        p1 = (math.cos(2 * math.pi / 3), math.sin(2 * math.pi / 3))
        p2 = (math.cos(4 * math.pi / 3), math.sin(4 * math.pi / 3))
        self.assertEqual(invariants.DeckElement("winding", 1), invariants.pi1_class(G(m, v0, v0, p2, p1, v0)))
        self.assertEqual(invariants.DeckElement("winding", -1), invariants.pi1_class(G(m, v0, v0, p1, p2, v0)))

    def test_simply_connected(self):
        m = Sphere(2)
        for g in random_words(m, V0_SPHERE, 20, 6, seed=61):
            self.assertTrue(invariants.pi1_class(g).is_identity)

    def test_unsupported(self):
        m = ChartManifold(dim=2, metric="flat", rho_u=1.0)
        w = G(m, V0_FLAT, V0_FLAT, (0.2, 0.0), V0_FLAT)
        with self.assertRaises(ValidityException) as ctx:
            invariants.pi1_class(w)
        self.assertEqual("UnsupportedInvariantException", ctx.exception.name)

    def test_homomorphism(self):
        for m, v0 in ((FlatTorus(2), V0_FLAT), (ProjectivePlane(), V0_SPHERE)):
            corpus = random_words(m, v0, 1000, 6, seed=71)
            for a, b in zip(corpus, corpus[1:]):
                pa, pb = invariants.pi1_class(a), invariants.pi1_class(b)
                self.assertEqual(pa * pb, invariants.pi1_class(group.mul(a, b)))
                self.assertEqual(pa.inverse(), invariants.pi1_class(group.inverse(a)))
                self.assertEqual(pa, invariants.pi1_class(invariants.conjugate(a, b)))

    def test_reduction_invariance(self):
        rng = make_rng(81)
        for m, v0 in ((FlatTorus(2), V0_FLAT), (ProjectivePlane(), V0_SPHERE)):
            for _ in range(200):
                w = random_closed_word(m, v0, 8, rng)
                self.assertEqual(invariants.pi1_class(w), invariants.pi1_class(words.reduce(w)))

    def test_lifted_realization(self):
        m = FlatTorus(2)
        for g in random_words(m, V0_FLAT, 100, 8, seed=91):
            samples = realization.sample(realization.realize(g), 2 ** 12)
            self.assertEqual(invariants.pi1_class(g), invariants.polyline_deck_element(m, samples))

    def test_separation(self):
        m = FlatTorus(2)
        around_x = G(m, V0_FLAT, V0_FLAT, (0.9, 0.0), (0.6, 0.0), (0.3, 0.0), V0_FLAT)
        around_y = G(m, V0_FLAT, V0_FLAT, (0.0, 0.9), (0.0, 0.6), (0.0, 0.3), V0_FLAT)
        small = G(m, V0_FLAT, V0_FLAT, (0.2, 0.1), (0.1, 0.2), V0_FLAT)
        loops = (around_x, around_y, small)
        for u, v in itertools.combinations(loops, 2):
            self.assertFalse(words.class_equal(u, v))
            self.assertNotEqual(invariants.pi1_class(u), invariants.pi1_class(v))

    def test_deck_element_of_path(self):
        m = FlatTorus(2)
        z = based(m, V0_FLAT, V0_FLAT, (0.8, 0.0), (0.4, 0.0), V0_FLAT)
        self.assertEqual(invariants.DeckElement("lattice", [1, 0]), invariants.deck_element_of_path(z))
        zs = random_based_words(m, V0_FLAT, 1000, 8, seed=101)
        gs = random_words(m, V0_FLAT, 1000, 8, seed=102)
        for z, g in zip(zs, gs):
            self.assertEqual(invariants.deck_element_of_path(z) * invariants.pi1_class(g),
                             invariants.deck_element_of_path(group.action_mu(z, g)))
        with self.assertRaises(ValidityException):
            invariants.deck_element_of_path(based(Sphere(2), V0_SPHERE, V0_SPHERE))

    def test_free_loop(self):
        m = FlatTorus(2)
        zs = random_based_words(m, V0_FLAT, 300, 6, seed=141)
        gs = random_words(m, V0_FLAT, 301, 6, seed=142)
        for z, g, h in zip(zs, gs, gs[1:]):
            loop = invariants.free_loop(z, g)
            self.assertEqual(SPECIES_X, loop.species)
            self.assertTrue(words.validate(loop))
            self.assertTrue(np.array_equal(words.project_pi(z), words.project_pi(loop)))
            path = realization.realize(loop)
            self.assertTrue(m.equal(path(0.0), z.head))
            self.assertTrue(m.equal(path(1.0), z.head))
            self.assertEqual(invariants.pi1_class(g), invariants.pi1_class(loop))
            moved = invariants.free_loop(group.action_mu(z, h), invariants.conjugate(g, group.inverse(h)))
            self.assertTrue(words.class_equal(loop, moved))
        self.assertEqual(0, invariants.free_loop(zs[0], group.identity(m, V0_FLAT)).k)
        with self.assertRaises(ValidityException):
            invariants.free_loop(gs[0], gs[1])

    def test_conjugate_trivial(self):
        m = FlatTorus(2)
        e = group.identity(m, V0_FLAT)
        for g in random_words(m, V0_FLAT, 50, 6, seed=111):
            self.assertTrue(words.class_equal(invariants.conjugate(g, e), g))
            self.assertTrue(words.class_equal(invariants.conjugate(e, g), e))

    def test_chi(self):
        m = FlatTorus(2)
        e = group.identity(m, V0_FLAT)
        self.assertTrue(words.class_equal(invariants.chi(invariants.SurfaceTuple(2, [e] * 4)), e))
        corpus = random_words(m, V0_FLAT, 1001, 4, seed=121)
        g = corpus[0]
        self.assertTrue(words.class_equal(invariants.chi(invariants.SurfaceTuple(1, [g, g])), e))
        for a, b in zip(corpus, corpus[1:]):
            s = invariants.SurfaceTuple(1, [a, b])
            self.assertTrue(invariants.pi1_class(invariants.chi(s)).is_identity)
            self.assertTrue(invariants.is_surface_relator(s))

    def test_relator(self):
        for m, v0 in ((Sphere(2), V0_SPHERE), (ProjectivePlane(), V0_SPHERE)):
            corpus = random_words(m, v0, 40, 5, seed=131)
            for i in range(0, len(corpus), 4):
                self.assertTrue(invariants.is_surface_relator(invariants.SurfaceTuple(2, corpus[i:i + 4])))

    def test_surface_tuple(self):
        m = FlatTorus(2)
        e = group.identity(m, V0_FLAT)
        with self.assertRaises(ValidityException):
            invariants.SurfaceTuple(1, [e])
        with self.assertRaises(ValidityException):
            invariants.SurfaceTuple(0, [])
        with self.assertRaises(ValidityException):
            invariants.SurfaceTuple(1, [e, group.identity(m, (0.5, 0.5))])


class TestChains(TestCase):
    def test_random_points(self):
        rng = make_rng(13)
        spaces = ((Sphere(2), V0_SPHERE), (FlatTorus(2), V0_FLAT), (HyperbolicDisk(), V0_FLAT),
                  (ProjectivePlane(), V0_SPHERE), (Euclidean(3), (0.0, 0.0, 0.0)))
        for m, v0 in spaces:
            for _ in range(50):
                p = m.random_point(rng)
                chain = group.chain_word(m, v0, p)
                self.assertTrue(words.validate(chain))
                self.assertTrue(m.equal(chain.head, p))
                self.assertTrue(group.is_identity(group.inverse(group.mul(
                    group.as_element(words.concat(words.reverse(chain), chain, SPECIES_G, v0)),
                    group.identity(m, v0)))))

    def test_deck_identity(self):
        for m, v0 in ((FlatTorus(3), (0.0, 0.0, 0.0)), (ProjectivePlane(), V0_SPHERE), (Sphere(1), (1.0, 0.0))):
            e = group.identity(m, v0)
            self.assertEqual(invariants.deck_identity(m), invariants.pi1_class(e))
            self.assertTrue(invariants.deck_identity(m).is_identity)
        with self.assertRaises(ValidityException):
            invariants.deck_identity(ChartManifold(dim=2, metric="flat", rho_u=1.0))


class TestRandomWords(TestCase):
    def test_corpus(self):
        m = Sphere(2)
        self.assertEqual([], random_words(m, V0_SPHERE, 0, 4, seed=1))
        first = random_words(m, V0_SPHERE, 100, 6, seed=1)
        second = random_words(m, V0_SPHERE, 100, 6, seed=1)
        for u, v in zip(first, second):
            self.assertTrue(same_points(u, v))
        for g in first:
            self.assertTrue(words.validate(g))
            self.assertEqual(SPECIES_G, g.species)

    def test_max_length(self):
        rng = make_rng(2)
        for m, v0 in ((Sphere(2), V0_SPHERE), (FlatTorus(2), V0_FLAT)):
            for _ in range(500):
                w = random_closed_word(m, v0, 5, rng)
                self.assertLessEqual(w.k, 5)
                self.assertTrue(words.validate(w))
        with self.assertRaises(ValidityException):
            random_closed_word(Sphere(2), V0_SPHERE, 1, rng)


class TestLoopSpace(TestCase):
    def test_facade(self):
        space = LoopSpace(FlatTorus(2), V0_FLAT)
        g = space.word([V0_FLAT, (0.9, 0.0), (0.6, 0.0), (0.3, 0.0), V0_FLAT])
        self.assertEqual(invariants.DeckElement("lattice", [2, 0]), space.pi1(space.mul(g, g)))
        self.assertTrue(words.class_equal(space.mul(g, space.inverse(g)), space.identity()))
        self.assertIs(space.chart((0.3, 0.3)), space.chart((0.3, 0.3)))
        self.assertEqual(3, len(space.random_words(3, 4, seed=1)))
        self.assertAlmostEqual(1.0, space.realize(g).length, places=12)
        z = space.word([(0.2, 0.1), V0_FLAT], SPECIES_Z_BASED)
        loop = space.free_loop(z, g)
        self.assertEqual(SPECIES_X, loop.species)
        self.assertEqual(invariants.DeckElement("lattice", [1, 0]), space.pi1(loop))


class TestCli(TestCase):
    def setUp(self):
        self.dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.dir)

    def write(self, name, data):
        path = os.path.join(self.dir, name)
        with open(path, "w") as f:
            f.write(data if isinstance(data, str) else json.dumps(data))
        return path

    def call(self, *argv, **kwargs):
        out, err = io.StringIO(), io.StringIO()
        code = cli.main(list(argv), stdout=out, stderr=err, stdin=kwargs.get("stdin"))
        return code, out.getvalue(), err.getvalue()

    def sphere(self):
        return self.write("sphere.json", {"kind": "sphere", "dim": 2, "radius": 1})

    def test_reduce(self):
        word = self.write("w.json", {"species": "G", "basepoint": [1, 0, 0],
                                     "points": [[1, 0, 0], [0, 1, 0], [1, 0, 0]]})
        code, out, err = self.call("reduce", "--manifold", self.sphere(), "--word", word)
        self.assertEqual(EXIT_OK, code)
        self.assertEqual({"species": "G", "basepoint": [1, 0, 0], "points": [[1, 0, 0]]}, json.loads(out))

    def test_stdin(self):
        text = json.dumps({"species": "G", "basepoint": [1, 0, 0], "points": [[1, 0, 0], [0, 1, 0], [1, 0, 0]]})
        code, out, _ = self.call("reduce", "--manifold", self.sphere(), stdin=text)
        self.assertEqual(EXIT_OK, code)
        self.assertEqual([[1, 0, 0]], json.loads(out)["points"])

    def test_mul_inverse(self):
        g = {"species": "G", "basepoint": [1, 0, 0], "points": [[1, 0, 0], [0, 0, 1], [0, 1, 0], [1, 0, 0]]}
        g_path = self.write("g.json", g)
        code, out, _ = self.call("inv", "--manifold", self.sphere(), "--word", g_path)
        self.assertEqual(EXIT_OK, code)
        inv_path = self.write("inv.json", out)
        code, out, _ = self.call("mul", "--manifold", self.sphere(), "--word", g_path, "--word", inv_path)
        self.assertEqual(EXIT_OK, code)
        self.assertEqual([[1, 0, 0]], json.loads(out)["points"])

    def test_pi1(self):
        manifold = self.write("torus.json", {"kind": "flat_torus", "dim": 1})
        word = self.write("w.json", {"species": "G", "basepoint": [0], "points": [[0], [0.7], [0.35], [0]]})
        code, out, _ = self.call("pi1", "--manifold", manifold, "--word", word)
        self.assertEqual(EXIT_OK, code)
        self.assertEqual({"class": [1]}, json.loads(out))

    def test_relator(self):
        e = {"species": "G", "basepoint": [1, 0, 0], "points": [[1, 0, 0]]}
        tuple_path = self.write("t.json", {"genus": 1, "elements": [e, e]})
        code, out, _ = self.call("relator", "--manifold", self.sphere(), "--tuple", tuple_path)
        self.assertEqual(EXIT_OK, code)
        self.assertEqual({"class": True}, json.loads(out))
        code, out, _ = self.call("chi", "--manifold", self.sphere(), "--tuple", tuple_path)
        self.assertEqual([[1, 0, 0]], json.loads(out)["points"])

    def test_validate(self):
        word = self.write("w.json", {"species": "G", "basepoint": [1, 0, 0],
                                     "points": [[1, 0, 0], [0, 1, 0], [1, 0, 0]]})
        code, out, err = self.call("validate", "--manifold", self.sphere(), "--word", word)
        self.assertEqual(EXIT_OK, code)
        self.assertEqual({"valid": True, "species": "G", "k": 2}, json.loads(out))
        self.assertEqual("", err)

    def test_act_and_conjugate(self):
        g = self.write("g.json", {"species": "G", "basepoint": [1, 0, 0],
                                  "points": [[1, 0, 0], [0, 0, 1], [0, 1, 0], [1, 0, 0]]})
        z = self.write("z.json", {"species": "Z_based", "basepoint": [1, 0, 0], "points": [[0, 0, 1], [1, 0, 0]]})
        code, out, _ = self.call("act", "--manifold", self.sphere(), "--word", z, "--word", g)
        self.assertEqual(EXIT_OK, code)
        result = json.loads(out)
        self.assertEqual("Z_based", result["species"])
        self.assertEqual([[0, 0, 1], [0, 1, 0], [1, 0, 0]], result["points"])

        e = self.write("e.json", {"species": "G", "basepoint": [1, 0, 0], "points": [[1, 0, 0]]})
        code, out, _ = self.call("conjugate", "--manifold", self.sphere(), "--word", g, "--word", e)
        self.assertEqual(EXIT_OK, code)
        self.assertEqual([[1, 0, 0], [0, 0, 1], [0, 1, 0], [1, 0, 0]], json.loads(out)["points"])

    def test_deck(self):
        manifold = self.write("torus.json", {"kind": "flat_torus", "dim": 2})
        z = self.write("z.json", {"species": "Z_based", "basepoint": [0, 0],
                                  "points": [[0, 0], [0.8, 0], [0.4, 0], [0, 0]]})
        code, out, _ = self.call("deck", "--manifold", manifold, "--word", z)
        self.assertEqual(EXIT_OK, code)
        self.assertEqual({"class": [1, 0]}, json.loads(out))

    def test_sample(self):
        word = self.write("w.json", {"species": "G", "basepoint": [1, 0, 0],
                                     "points": [[1, 0, 0], [0, 0, 1], [0, 1, 0], [1, 0, 0]]})
        code, out, _ = self.call("sample", "--manifold", self.sphere(), "--word", word, "--samples", "3")
        self.assertEqual(EXIT_OK, code)
        points = json.loads(out)["points"]
        self.assertEqual(4, len(points))
        self.assertTrue(np.allclose([0.0, 1.0, 0.0], points[1], atol=1e-12))
        self.assertTrue(np.allclose([1.0, 0.0, 0.0], points[3], atol=1e-12))

    def test_bad_manifold(self):
        word = self.write("w.json", {"species": "Z", "points": [[0, 0]]})
        for text in ('{"kind": "flat_torus"}', '{"kind": "euclidean"}', '{"kind": "sphere", "dim": NaN}',
                     '{"kind": "sphere", "dim": 2, "radius": Infinity}', '{"kind": "sphere", "dim": true}'):
            code, out, err = self.call("reduce", "--manifold", self.write("m.json", text), "--word", word)
            self.assertEqual(EXIT_PARSE, code)
            self.assertEqual("", out)
            self.assertTrue(err)

    def test_env_tolerance(self):
        word = self.write("w.json", {"species": "Z", "points": [[1, 0, 0], [0.9999995, 0.001, 0]]})
        with mock.patch.dict(os.environ, {"GEOLOOP_EPS_EQ": "1e-2"}):
            code, out, _ = self.call("reduce", "--manifold", self.sphere(), "--word", word)
        self.assertEqual(EXIT_OK, code)
        self.assertEqual(1, len(json.loads(out)["points"]))
        with mock.patch.dict(os.environ, {"GEOLOOP_EPS_EQ": "tiny"}):
            code, out, _ = self.call("reduce", "--manifold", self.sphere(), "--word", word)
        self.assertEqual(EXIT_PARSE, code)
        self.assertEqual("", out)

    def test_realize_csv(self):
        word = self.write("w.json", {"species": "G", "basepoint": [1, 0, 0],
                                     "points": [[1, 0, 0], [0, 0, 1], [0, 1, 0], [1, 0, 0]]})
        code, out, _ = self.call("realize", "--manifold", self.sphere(), "--word", word, "--samples", "3",
                                 "--format", "csv")
        self.assertEqual(EXIT_OK, code)
        rows = [line.split(",") for line in out.strip().split("\n")]
        self.assertEqual(4, len(rows))
        self.assertEqual(4, len(rows[0]))
        self.assertTrue(np.allclose([1.0 / 3, 0.0, 1.0, 0.0], [float(c) for c in rows[1]], atol=1e-12))

    def test_solve_geodesic(self):
        manifold = self.write("chart.json", {"kind": "chart", "dim": 2, "metric": "polar_sphere", "rho_u": 2.5})
        code, out, _ = self.call("solve-geodesic", "--manifold", manifold, "--from", "[1.5707963267948966, 0]",
                                 "--to", "[1.5707963267948966, 1]", "--samples", "4")
        self.assertEqual(EXIT_OK, code)
        self.assertAlmostEqual(1.0, json.loads(out)["length"], delta=1e-6)

    def test_random_words(self):
        args = ("random-words", "--manifold", self.sphere(), "--basepoint", "[1, 0, 0]", "--count", "5",
                "--seed", "42", "--max-length", "6")
        first, second = self.call(*args), self.call(*args)
        self.assertEqual(EXIT_OK, first[0])
        self.assertEqual(first[1], second[1])
        self.assertEqual(5, len(json.loads(first[1])["words"]))

    def test_round_trip(self):
        m = Sphere(2)
        for g in random_words(m, V0_SPHERE, 20, 6, seed=5):
            text = converters.dumps(converters.word_to_json(g))
            again = converters.dumps(converters.word_to_json(converters.parse_word(m, json.loads(text))))
            self.assertEqual(text, again)
        self.assertEqual(Sphere(2), converters.parse_manifold(converters.manifold_to_json(Sphere(2))))
        corpus = random_words(m, V0_SPHERE, 4, 5, seed=6)
        s = invariants.SurfaceTuple(2, corpus)
        text = converters.dumps(converters.tuple_to_json(s))
        again = converters.parse_tuple(m, json.loads(text))
        self.assertEqual(text, converters.dumps(converters.tuple_to_json(again)))

    def test_exit_codes(self):
        code, out, err = self.call("reduce", "--manifold", self.write("bad.json", "{not json"), "--word", "x")
        self.assertEqual(EXIT_PARSE, code)
        self.assertEqual("", out)
        self.assertTrue(err)

        code, out, _ = self.call("frobnicate", "--manifold", self.sphere())
        self.assertEqual(EXIT_PARSE, code)
        self.assertEqual("", out)

        word = self.write("w.json", {"species": "Z", "points": [[1, 0, 0], [-1, 0, 0]]})
        code, out, _ = self.call("validate", "--manifold", self.sphere(), "--word", word)
        self.assertEqual(EXIT_VALIDITY, code)
        self.assertEqual("", out)

        def diverge(session):
            raise SolverException("ConvergenceException", "no convergence")

        with mock.patch.dict(cli._HANDLERS, {"reduce": diverge}):
            result = cli.run(cli.CommandRequest("reduce", self.sphere()))
        self.assertEqual(EXIT_CONVERGENCE, result.exit_code)
        self.assertIsNone(result.output)

    def test_tolerance(self):
        word = self.write("w.json", {"species": "Z", "points": [[1, 0, 0], [0.9999995, 0.001, 0]]})
        code, out, _ = self.call("reduce", "--manifold", self.sphere(), "--word", word)
        self.assertEqual(EXIT_OK, code)
        self.assertEqual(2, len(json.loads(out)["points"]))
        code, out, _ = self.call("reduce", "--manifold", self.sphere(), "--word", word, "--tolerance", "1e-2")
        self.assertEqual(EXIT_OK, code)
        self.assertEqual(1, len(json.loads(out)["points"]))


if __name__ == '__main__':
    unittest.main()
