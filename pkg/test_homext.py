import unittest
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from bundles import ext_bundle, line_bundle, phi_hat, slope, tau, window_orbits
from errors import DomainViolation
from homext import (
    ALGEBRAIC,
    GEOMETRIC,
    GeomSegment,
    crossing_heights,
    euler_form,
    ext_dim,
    ext_dim_case_formulas,
    ext_dim_line_line,
    ext_splitting_report,
    hom_dim,
    intersection_index,
    line_line_floor_formula,
    marker_correction,
    positive_intersections,
    rank2_middle_criterion,
    rank2_middle_term,
)
from picard import ModelContext
from strip import FULL, MINUS, PLUS, SIGMA, SIGMA_INV, THETA, OrbitClass, Segment, apply_g, canonical_orbits


def orbit(n, i, j, marker=FULL):
    return OrbitClass.of(Segment(n, i, j, marker))


@st.composite
def element_pairs(draw):
    n = draw(st.integers(2, 7))
    ctx = ModelContext.create(n)
    c = st.integers(-6, 6)
    return (
        ctx.element(draw(c), draw(c), draw(c), draw(c)),
        ctx.element(draw(c), draw(c), draw(c), draw(c)),
    )


class TestIntersections(unittest.TestCase):
    """Unit tests for positive intersections and the marker correction"""

    def test_orbit_does_not_cross_itself(self):
        """Test that [0,1] has no positive crossing with its own orbit"""
        self.assertEqual(positive_intersections(Segment(3, 0, 1), orbit(3, 0, 1)), 0)

    def test_steeper_segment_crosses_once(self):
        """Test that [0,1] meets the orbit of [1,0] once, at height 1/2"""
        self.assertEqual(positive_intersections(Segment(3, 0, 1), orbit(3, 1, 0)), 1)
        self.assertEqual(crossing_heights(Segment(3, 0, 1), orbit(3, 1, 0)), [Fraction(1, 2)])

    def test_endpoints_do_not_count(self):
        """Test that touching the orbit at an endpoint is not a crossing"""
        self.assertEqual(positive_intersections(Segment(3, -1, 1, PLUS), orbit(3, 0, 0, PLUS)), 0)

    def test_flatter_segment_has_no_positive_crossing(self):
        """Test that crossings only count from the steeper side"""
        self.assertEqual(positive_intersections(Segment(3, 1, 0), orbit(3, 0, 1)), 0)

    def test_intersection_index_full(self):
        """Test I([0,1], [1,0]) = 1"""
        self.assertEqual(intersection_index(Segment(3, 0, 1), Segment(3, 1, 0)), 1)

    def test_marker_correction(self):
        """Test that opposite halves on the same midline point add one in one direction"""
        a = Segment(3, -1, 1, MINUS)
        b = Segment(3, 1, -1, PLUS)
        self.assertEqual(marker_correction(a, b), 1)
        self.assertEqual(intersection_index(a, b), 1)
        self.assertEqual(marker_correction(b, a), 0)
        self.assertEqual(intersection_index(b, a), 0)

    def test_no_correction_for_equal_markers(self):
        """Test that halves with the same marker get no correction"""
        self.assertEqual(marker_correction(Segment(3, -1, 1, MINUS), Segment(3, 1, -1, MINUS)), 0)
        self.assertEqual(marker_correction(Segment(3, 0, 1), Segment(3, 1, 0)), 0)

    def test_geom_segment_ranges(self):
        """Test the height ranges and endpoints of halves"""
        g = GeomSegment.of(Segment(3, 0, 2, PLUS))
        self.assertEqual(g.y_max, Fraction(1, 2))
        self.assertEqual(g.endpoints, ((Fraction(0), Fraction(0)), (Fraction(1), Fraction(1, 2))))

    def test_intersection_index_is_g_invariant(self):
        """Test that moving either segment within its orbit keeps the index"""
        words = [(THETA,), (SIGMA,), (SIGMA_INV, THETA), (SIGMA, SIGMA, THETA)]
        for n in (2, 3, 4):
            reps = [o.rep for o in canonical_orbits(n, n)]
            for a in reps:
                for b in reps:
                    index = intersection_index(a, b)
                    for word in words:
                        with self.subTest(a=str(a), b=str(b), word=word):
                            self.assertEqual(intersection_index(apply_g(word, a), b), index)
                            self.assertEqual(intersection_index(a, apply_g(word, b)), index)


class TestLineBundles(unittest.TestCase):
    """Unit tests for Ext and Hom between line bundles"""

    def test_serre_examples(self):
        """Test Ext(O(x), O(x+omega)) = 1 and the values at c"""
        ctx = ModelContext.create(3)
        self.assertEqual(ext_dim_line_line(ctx.x3, ctx.x3 + ctx.omega), 1)
        self.assertEqual(ext_dim_line_line(ctx.c, ctx.zero), 0)
        self.assertEqual(hom_dim(line_bundle(ctx.zero, ctx), line_bundle(ctx.c, ctx)), 2)
        self.assertEqual(euler_form(line_bundle(ctx.zero, ctx), line_bundle(ctx.zero, ctx)), 1)

    def test_floor_formula_examples(self):
        """Test two rows of the floor table for n=3"""
        ctx = ModelContext.create(3)
        self.assertEqual(line_line_floor_formula(4 * ctx.x3, ctx.zero), 1)
        self.assertEqual(line_line_floor_formula(ctx.zero, ctx.star - 2 * ctx.x3), 1)

    @given(element_pairs())
    @settings(max_examples=300, deadline=None)
    def test_floor_formula_matches_serre_duality(self, pair):
        """Test that the floor table equals dim R_{x+omega-y}"""
        x, y = pair
        self.assertEqual(line_line_floor_formula(x, y), ext_dim_line_line(x, y))

    @given(element_pairs())
    @settings(max_examples=300, deadline=None)
    def test_line_hom(self, pair):
        """Test that Hom(O(x), O(y)) = dim R_{y-x} by both methods"""
        x, y = pair
        ctx = ModelContext.create(x.n)
        X, Y = line_bundle(x, ctx), line_bundle(y, ctx)
        expected = max(0, (y - x).l + 1)
        self.assertEqual(hom_dim(X, Y, GEOMETRIC), expected)
        self.assertEqual(hom_dim(X, Y, ALGEBRAIC), expected)

    def test_unknown_method(self):
        """Test that an unknown method name is rejected"""
        ctx = ModelContext.create(3)
        O = line_bundle(ctx.zero, ctx)
        with self.assertRaises(DomainViolation):
            ext_dim(O, O, "numerical")


class TestOracles(unittest.TestCase):
    """Unit tests comparing the strip count with the algebraic formulas"""

    def test_extension_bundle_example(self):
        """Test Ext(E(x3;0), tau E(x3;0)) = 1 by both methods"""
        ctx = ModelContext.create(3)
        X = phi_hat(orbit(3, 0, 1), ctx)
        self.assertEqual(ext_dim(X, tau(X), GEOMETRIC), 1)
        self.assertEqual(ext_dim_case_formulas(X, tau(X)), 1)
        self.assertEqual(ext_dim(X, X), 0)

    def test_oracles_agree_on_windows(self):
        """Test that geometric and algebraic Ext agree on small windows"""
        for n in range(2, 6):
            ctx = ModelContext.create(n)
            bundles = [phi_hat(o, ctx) for o in window_orbits(ctx, n)]
            for X in bundles:
                for Y in bundles:
                    self.assertEqual(
                        ext_dim(X, Y, GEOMETRIC), ext_dim(X, Y, ALGEBRAIC), msg=f"n={n} X={X} Y={Y}"
                    )

    def test_serre_duality_on_window(self):
        """Test Ext(X, Y) = Hom(Y, tau X) on a small window"""
        ctx = ModelContext.create(3)
        bundles = [phi_hat(o, ctx) for o in window_orbits(ctx, 3)]
        for X in bundles:
            for Y in bundles:
                self.assertEqual(ext_dim(X, Y), hom_dim(Y, tau(X)), msg=f"X={X} Y={Y}")

    def test_indecomposables_are_exceptional(self):
        """Test that every window bundle has Ext(X, X) = 0 and End(X) = k"""
        ctx = ModelContext.create(4)
        for o in window_orbits(ctx, 4):
            X = phi_hat(o, ctx)
            self.assertEqual(ext_dim(X, X), 0)
            self.assertEqual(hom_dim(X, X), 1)

    def test_hom_respects_slopes(self):
        """Test that a nonzero Hom never lowers the slope"""
        ctx = ModelContext.create(3)
        bundles = [phi_hat(o, ctx) for o in window_orbits(ctx, 3)]
        for X in bundles:
            for Y in bundles:
                if hom_dim(X, Y):
                    self.assertLessEqual(slope(X), slope(Y))

    def test_extension_sequences_split_ext(self):
        """Test that Ext into or out of an extension bundle splits along its sequence"""
        ctx = ModelContext.create(3)
        bundles = [phi_hat(o, ctx) for o in window_orbits(ctx, 3)]
        for E in (b for b in bundles if not b.is_line):
            for X in bundles:
                self.assertEqual(ext_splitting_report(X, E), [])


class TestRankTwoMiddleTerms(unittest.TestCase):
    """Unit tests for indecomposable middle terms of line bundle extensions"""

    def setUp(self):
        self.ctx = ModelContext.create(3)
        ctx = self.ctx
        self.y = ctx.x1 + ctx.x2 + ctx.x3 - ctx.c

    def test_criterion(self):
        """Test the criterion on four differences"""
        ctx = self.ctx
        self.assertTrue(rank2_middle_criterion(ctx.zero, self.y))
        self.assertTrue(rank2_middle_criterion(ctx.zero, ctx.x1 + ctx.x2 + 2 * ctx.x3))
        self.assertFalse(rank2_middle_criterion(ctx.zero, self.y - ctx.c))
        self.assertFalse(rank2_middle_criterion(ctx.zero, ctx.x3))
        self.assertFalse(rank2_middle_criterion(ctx.zero, ctx.x1 + ctx.x2))

    def test_middle_term(self):
        """Test that the middle term is E(-omega; 0) with the right constituents"""
        ctx = self.ctx
        middle = rank2_middle_term(ctx.zero, self.y, ctx)
        self.assertEqual(middle, ext_bundle(-ctx.omega, 0, ctx))
        self.assertGreaterEqual(ext_dim(line_bundle(self.y, ctx), line_bundle(ctx.zero, ctx)), 1)

    def test_middle_term_needs_criterion(self):
        """Test that a split-only extension is refused"""
        with self.assertRaises(DomainViolation):
            rank2_middle_term(self.ctx.zero, self.ctx.x3, self.ctx)


if __name__ == "__main__":
    unittest.main()
