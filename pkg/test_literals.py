import unittest

from bundles import ext_bundle, line_bundle, phi_hat
from errors import DomainViolation, MarkerMismatch, ParseError
from literals import (
    parse_bundle,
    parse_coords,
    parse_element,
    parse_object,
    parse_range,
    parse_segment,
    parse_weights,
    parse_window,
)
from picard import ModelContext
from strip import FULL, MINUS, PLUS, OrbitClass, Segment


class TestLiterals(unittest.TestCase):
    """Unit tests for the command-line literal grammar"""

    def setUp(self):
        self.ctx = ModelContext.create(3)

    def test_segments(self):
        """Test full segments and both halves"""
        self.assertEqual(parse_segment("[0,1]", 3), Segment(3, 0, 1, FULL))
        self.assertEqual(parse_segment("[1,-1]+", 3), Segment(3, 1, -1, PLUS))
        self.assertEqual(parse_segment(" [ -1 , 1 ]- ", 3), Segment(3, -1, 1, MINUS))

    def test_segment_marker_must_fit(self):
        """Test that a marker off the midline is a domain error, not a parse error"""
        with self.assertRaises(MarkerMismatch):
            parse_segment("[0,1]+", 3)
        with self.assertRaises(MarkerMismatch):
            parse_segment("[0,0]", 3)

    def test_malformed_segment(self):
        """Test that an unclosed bracket reports a position"""
        with self.assertRaises(ParseError) as cm:
            parse_segment("[0,1", 3)
        self.assertIsNotNone(cm.exception.position)
        self.assertEqual(cm.exception.exit_code, 2)

    def test_elements(self):
        """Test that elements are normalized"""
        self.assertEqual(parse_element("1,-1,0,0", self.ctx), self.ctx.star)
        self.assertEqual(parse_element("0,0,3,0", self.ctx), self.ctx.c)
        with self.assertRaises(ParseError):
            parse_element("1,2,3", self.ctx)

    def test_bundles(self):
        """Test line and extension bundle literals"""
        ctx = self.ctx
        self.assertEqual(parse_bundle("O(0,0,1,0)", ctx), line_bundle(ctx.x3, ctx))
        self.assertEqual(parse_bundle("E(0,0,1,0; 0)", ctx), ext_bundle(ctx.x3, 0, ctx))
        self.assertEqual(
            parse_bundle("E(0,0,1,0;0)", ctx), phi_hat(OrbitClass.of(Segment(3, 0, 1)), ctx)
        )

    def test_extension_width_checked(self):
        """Test that width n-1 is refused after parsing"""
        with self.assertRaises(DomainViolation):
            parse_bundle("E(0,0,0,0; 2)", self.ctx)

    def test_malformed_bundle(self):
        """Test that a missing width is a parse error"""
        with self.assertRaises(ParseError):
            parse_bundle("E(0,0,1,0)", self.ctx)

    def test_objects(self):
        """Test that parse_object dispatches on the first character"""
        self.assertIsInstance(parse_object("[0,1]", self.ctx), Segment)
        self.assertEqual(parse_object("O(0,0,0,0)", self.ctx), line_bundle(self.ctx.zero, self.ctx))
        with self.assertRaises(ParseError):
            parse_object("X(0)", self.ctx)
        with self.assertRaises(ParseError):
            parse_object("", self.ctx)

    def test_coords_stay_raw(self):
        """Test that raw coordinates are not normalized"""
        self.assertEqual(parse_coords("0,0,3,0"), (0, 0, 3, 0))
        with self.assertRaises(ParseError):
            parse_coords("a,b,c,d")


class TestArgumentParsers(unittest.TestCase):
    """Unit tests for range, weight and window arguments"""

    def test_parse_range(self):
        """Test inclusive ranges and their errors"""
        self.assertEqual(parse_range("-3..6"), (-3, 6))
        self.assertEqual(parse_range(" 0..0 "), (0, 0))
        with self.assertRaises(ParseError):
            parse_range("3-6")
        with self.assertRaises(ParseError):
            parse_range("6..")
        with self.assertRaises(DomainViolation):
            parse_range("6..3")

    def test_parse_weights(self):
        """Test single weights, ranges and lists"""
        self.assertEqual(parse_weights("4"), [4])
        self.assertEqual(parse_weights("2..5"), [2, 3, 4, 5])
        self.assertEqual(parse_weights("2,3,5"), [2, 3, 5])
        with self.assertRaises(ParseError):
            parse_weights("two")
        with self.assertRaises(ParseError):
            parse_weights("2,,3")
        with self.assertRaises(DomainViolation):
            parse_weights("1,3")
        with self.assertRaises(DomainViolation):
            parse_weights("1..3")

    def test_parse_window(self):
        """Test multiples of n and absolute bounds"""
        self.assertEqual(parse_window("3n"), (3, None))
        self.assertEqual(parse_window("9"), (None, 9))
        with self.assertRaises(ParseError):
            parse_window("3m")
        with self.assertRaises(ParseError):
            parse_window("-3n")


if __name__ == "__main__":
    unittest.main()
