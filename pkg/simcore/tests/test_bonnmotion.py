"""
Tests for BonnMotion trace parsing and RandomWaypoint generation.
"""

from django.test import SimpleTestCase

from simcore.bonnmotion import (
    RandomWaypointParams,
    format_bonnmotion,
    generate_random_waypoint,
    parse_bonnmotion,
)
from simcore.errors import ErrorCode, TraceParseError
from simcore.geometry import Position


class TestParseBonnmotion(SimpleTestCase):

    def test_equal_waypoints_make_static_node(self):
        traces = parse_bonnmotion("0.0 5.0 5.0 300.0 5.0 5.0\n")
        self.assertEqual(len(traces), 1)
        self.assertEqual(traces[0].position_at(120), Position(5, 5))

    def test_interpolates_between_waypoints(self):
        traces = parse_bonnmotion("0 0 0 10 10 0")
        self.assertEqual(traces[0].position_at(5), Position(5, 0))

    def test_one_trace_per_non_empty_line(self):
        traces = parse_bonnmotion("0 0 0 1 1 1\n\n0 2 2 1 3 3\n")
        self.assertEqual(len(traces), 2)
        self.assertEqual(traces[1].start, Position(2, 2))

    def test_incomplete_triple_names_line(self):
        with self.assertRaises(TraceParseError) as ctx:
            parse_bonnmotion("0 0 0 10 10")
        self.assertEqual(ctx.exception.line, 1)
        self.assertEqual(ctx.exception.code, ErrorCode.TRACE_PARSE)

    def test_non_numeric_token_names_column(self):
        with self.assertRaises(TraceParseError) as ctx:
            parse_bonnmotion("0 0 0 1 1 1\n0 x 0")
        self.assertEqual(ctx.exception.line, 2)
        self.assertEqual(ctx.exception.column, 2)

    def test_nan_coordinate_names_column(self):
        with self.assertRaises(TraceParseError) as ctx:
            parse_bonnmotion("0 0 0 1 nan 1")
        self.assertEqual(ctx.exception.line, 1)
        self.assertEqual(ctx.exception.column, 5)

    def test_infinite_time_rejected(self):
        with self.assertRaises(TraceParseError) as ctx:
            parse_bonnmotion("0 1 1\n0 0 0 inf 2 2")
        self.assertEqual(ctx.exception.line, 2)
        self.assertEqual(ctx.exception.column, 4)

    def test_non_monotonic_time(self):
        with self.assertRaises(TraceParseError) as ctx:
            parse_bonnmotion("0 0 0 5 1 1 5 2 2")
        self.assertEqual(ctx.exception.line, 1)

    def test_parse_error_is_value_error(self):
        with self.assertRaises(ValueError):
            parse_bonnmotion("a b c")


class TestRandomWaypoint(SimpleTestCase):

    def setUp(self):
        self.params = RandomWaypointParams(duration=120, nodes=5)

    def test_same_seed_same_traces(self):
        first = format_bonnmotion(generate_random_waypoint(self.params, seed=3))
        second = format_bonnmotion(generate_random_waypoint(self.params, seed=3))
        self.assertEqual(first, second)

    def test_stays_inside_area_and_duration(self):
        for trace in generate_random_waypoint(self.params, seed=11):
            self.assertEqual(trace.waypoints[0][0], 0.0)
            self.assertLessEqual(trace.waypoints[-1][0], self.params.duration)
            for _, position in trace.waypoints:
                self.assertTrue(0 <= position.x <= self.params.x)
                self.assertTrue(0 <= position.y <= self.params.y)

    def test_generated_trace_reparses(self):
        traces = generate_random_waypoint(self.params, seed=5)
        reparsed = parse_bonnmotion(format_bonnmotion(traces))
        self.assertEqual(len(reparsed), len(traces))

    def test_invalid_params(self):
        with self.assertRaises(ValueError):
            RandomWaypointParams(min_speed=2.0, max_speed=1.0)
        with self.assertRaises(ValueError):
            RandomWaypointParams(dimension=4)
