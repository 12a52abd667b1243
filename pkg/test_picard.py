import unittest

from hypothesis import given, settings, strategies as st

from errors import ContextMismatch, DomainViolation
from picard import (
    ModelContext,
    PicardBarElement,
    PicardElement,
    alt_coords,
    delta_degree,
    dim_R,
    dim_R_bruteforce,
    from_alt_coords,
    is_effective,
    normalize,
    project_bar,
    special_elements,
    star_split,
)

weights = st.integers(min_value=2, max_value=8)
coefficients = st.integers(min_value=-20, max_value=20)


@st.composite
def elements(draw, n=None):
    n = draw(weights) if n is None else n
    ctx = ModelContext.create(n)
    return ctx.element(draw(coefficients), draw(coefficients), draw(coefficients), draw(coefficients))


@st.composite
def element_pairs(draw):
    n = draw(weights)
    return draw(elements(n)), draw(elements(n))


class TestNormalForm(unittest.TestCase):
    """Unit tests for normal forms in the Picard group"""

    def test_double_x1_is_c(self):
        """Test that 2*x1 normalizes to c"""
        ctx = ModelContext.create(3)
        self.assertEqual(normalize(2, 0, 0, 0, ctx), PicardElement(3, 0, 0, 0, 1))
        self.assertEqual(ctx.x1 + ctx.x1, ctx.c)

    def test_x3_carry(self):
        """Test that n*x3 carries into c"""
        ctx = ModelContext.create(4)
        self.assertEqual(normalize(0, 0, 7, 0, ctx), PicardElement(4, 0, 0, 3, 1))

    def test_omega_normal_form(self):
        """Test that omega is (1,1,n-1,-2) and adds up to c with x1+x2+x3"""
        for n in range(2, 9):
            ctx = ModelContext.create(n)
            self.assertEqual(ctx.omega.as_tuple(), (1, 1, n - 1, -2))
            self.assertEqual(ctx.omega + ctx.x1 + ctx.x2 + ctx.x3, ctx.c)

    def test_negative_x3(self):
        """Test that -x3 is (n-1)x3 - c"""
        ctx = ModelContext.create(5)
        self.assertEqual((-ctx.x3).as_tuple(), (0, 0, 4, -1))

    def test_dominant_element(self):
        """Test that 2*omega + c is (n-2)x3"""
        for n in range(2, 9):
            ctx = ModelContext.create(n)
            self.assertEqual(ctx.omega + ctx.omega + ctx.c, ctx.delta_dom)
            self.assertEqual(ctx.delta_dom.as_tuple(), (0, 0, n - 2, 0))

    def test_special_elements(self):
        """Test that special_elements returns omega, c and the dominant element"""
        ctx = ModelContext.create(4)
        omega, c, dom = special_elements(ctx)
        self.assertEqual(omega.as_tuple(), (1, 1, 3, -2))
        self.assertEqual(c.as_tuple(), (0, 0, 0, 1))
        self.assertEqual(dom.as_tuple(), (0, 0, 2, 0))

    def test_star_is_its_own_negative(self):
        """Test that x1 - x2 has order two"""
        ctx = ModelContext.create(3)
        self.assertEqual(-ctx.star, ctx.star)
        self.assertNotEqual(ctx.star, ctx.zero)

    def test_text_and_json_forms(self):
        """Test that elements print as l1,l2,l3,l and serialize by generator"""
        ctx = ModelContext.create(3)
        self.assertEqual(str(ctx.omega), "1,1,2,-2")
        self.assertEqual(ctx.x3.to_json(), {"x1": 0, "x2": 0, "x3": 1, "c": 0})

    def test_mixing_weights_fails(self):
        """Test that adding elements of different weights raises ContextMismatch"""
        with self.assertRaises(ContextMismatch):
            ModelContext.create(3).x3 + ModelContext.create(4).x3

    def test_weight_below_two_rejected(self):
        """Test that n < 2 is a domain violation"""
        with self.assertRaises(DomainViolation):
            ModelContext.create(1)

    def test_base_of_other_weight_rejected(self):
        """Test that a base element of another weight cannot build a context"""
        with self.assertRaises(ContextMismatch):
            ModelContext(3, ModelContext.create(4).x3)

    @given(elements())
    @settings(max_examples=200, deadline=None)
    def test_normal_form_bounds(self, x):
        """Test that every result satisfies the normal-form bounds"""
        self.assertIn(x.l1, (0, 1))
        self.assertIn(x.l2, (0, 1))
        self.assertTrue(0 <= x.l3 < x.n)

    @given(element_pairs())
    @settings(max_examples=200, deadline=None)
    def test_group_laws(self, pair):
        """Test commutativity, inverses and double negation"""
        x, y = pair
        self.assertEqual(x + y, y + x)
        self.assertEqual(x + (-x), ModelContext.create(x.n).zero)
        self.assertEqual(-(-x), x)
        self.assertEqual(3 * x, x + x + x)


class TestDimensionsAndDegrees(unittest.TestCase):
    """Unit tests for dim R_x, effectivity and the degree"""

    def test_effective_examples(self):
        """Test that x3 and c are effective and omega is not"""
        ctx = ModelContext.create(3)
        self.assertTrue(is_effective(ctx.x3))
        self.assertTrue(is_effective(ctx.c))
        self.assertFalse(is_effective(ctx.omega))

    def test_dim_r_examples(self):
        """Test dim R at zero, c and omega"""
        ctx = ModelContext.create(3)
        self.assertEqual(dim_R(ctx.zero), 1)
        self.assertEqual(dim_R(ctx.c), 2)
        self.assertEqual(dim_R(ctx.omega), 0)

    def test_degree_examples(self):
        """Test degrees of x3, x1, c and omega"""
        self.assertEqual(delta_degree(ModelContext.create(4).x3), 1)
        self.assertEqual(delta_degree(ModelContext.create(3).x1), 3)
        self.assertEqual(delta_degree(ModelContext.create(3).c), 6)
        self.assertEqual(delta_degree(ModelContext.create(3).omega), -2)
        self.assertEqual(delta_degree(ModelContext.create(4).omega), -1)

    @given(elements())
    @settings(max_examples=200, deadline=None)
    def test_dim_r_positive_iff_effective(self, x):
        """Test that dim R_x > 0 exactly for effective x"""
        self.assertEqual(dim_R(x) > 0, is_effective(x))

    @given(weights, st.integers(0, 1), st.integers(0, 1), st.integers(0, 7), st.integers(-3, 4))
    @settings(max_examples=150, deadline=None)
    def test_dim_r_matches_monomial_count(self, n, l1, l2, l3, l):
        """Test that the closed formula agrees with the monomial enumeration"""
        x = ModelContext.create(n).element(l1, l2, l3 % n, l)
        self.assertEqual(dim_R(x), dim_R_bruteforce(x))

    @given(element_pairs())
    @settings(max_examples=200, deadline=None)
    def test_degree_is_additive(self, pair):
        """Test that delta_degree is a homomorphism"""
        x, y = pair
        self.assertEqual(delta_degree(x + y), delta_degree(x) + delta_degree(y))


class TestCoordinates(unittest.TestCase):
    """Unit tests for alternative coordinates and the quotient by x1 - x2"""

    def test_alt_coords_examples(self):
        """Test alt_coords of omega, x1 and c"""
        ctx = ModelContext.create(3)
        self.assertEqual(alt_coords(ctx.omega), (1, 0, -1))
        self.assertEqual(alt_coords(ctx.x1), (1, 1, 0))
        self.assertEqual(alt_coords(ctx.c), (0, 0, 3))

    def test_project_bar_examples(self):
        """Test the quotient map on x1 - x2, x2 and omega"""
        ctx = ModelContext.create(3)
        self.assertEqual(project_bar(ctx.star), PicardBarElement(3, 0, 0))
        self.assertEqual(project_bar(ctx.x2), project_bar(ctx.x1))
        self.assertEqual(project_bar(ctx.omega), PicardBarElement(3, 0, -1))

    def test_bar_arithmetic(self):
        """Test that the bar group carries x1 + x1 into n*x3"""
        one = PicardBarElement(3, 1, 0)
        self.assertEqual(one + one, PicardBarElement(3, 0, 3))
        self.assertEqual(one + (-one), PicardBarElement(3, 0, 0))
        self.assertEqual(one.lift(), ModelContext.create(3).x1)

    @given(elements())
    @settings(max_examples=200, deadline=None)
    def test_alt_coords_round_trip(self, x):
        """Test that alt_coords and from_alt_coords are inverse"""
        ctx = ModelContext.create(x.n)
        self.assertEqual(from_alt_coords(*alt_coords(x), ctx), x)

    @given(elements())
    @settings(max_examples=200, deadline=None)
    def test_star_split_round_trip(self, x):
        """Test that x = eps*(x1 - x2) + r*x1 + m*x3"""
        ctx = ModelContext.create(x.n)
        eps, r, m = star_split(x)
        self.assertEqual(eps * ctx.star + r * ctx.x1 + m * ctx.x3, x)

    @given(element_pairs())
    @settings(max_examples=200, deadline=None)
    def test_bar_kernel(self, pair):
        """Test that two elements have the same image iff they differ by 0 or x1 - x2"""
        x, y = pair
        ctx = ModelContext.create(x.n)
        self.assertEqual(project_bar(x) == project_bar(y), x - y in (ctx.zero, ctx.star))

    def test_duality_compatibility(self):
        """Test which bases admit the mirrored-segment duality"""
        ctx = ModelContext.create(3)
        self.assertTrue(ctx.is_duality_compatible)
        self.assertTrue(ModelContext(3, -ctx.omega).is_duality_compatible)
        self.assertFalse(ModelContext(3, ctx.zero).is_duality_compatible)


if __name__ == "__main__":
    unittest.main()
