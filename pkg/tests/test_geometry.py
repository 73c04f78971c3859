import unittest
import os
import sys
from fractions import Fraction

# Add src directory to path for testing
sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'src'))

from geometry import (
    collinear_overlap,
    crosses_transversally,
    inside_ccw_sector,
    on_segment,
    orientation,
    point,
    segment_intersection,
    snap,
)


class TestPredicates(unittest.TestCase):
    def test_orientation(self):
        """Test orientation signs"""
        a, b = point(0, 0), point(1, 0)
        self.assertEqual(orientation(a, b, point(0, 1)), 1)
        self.assertEqual(orientation(a, b, point(0, -1)), -1)
        self.assertEqual(orientation(a, b, point(5, 0)), 0)

    def test_orientation_is_exact(self):
        """Test orientation on nearly collinear points"""
        a = point(Fraction(1, 3), Fraction(1, 3))
        b = point(Fraction(2, 3), Fraction(2, 3))
        self.assertEqual(orientation(a, b, point(Fraction(10 ** 20 + 1, 10 ** 20), 1)), -1)
        self.assertEqual(orientation(a, b, point(7, 7)), 0)

    def test_on_segment(self):
        """Test point on segment"""
        a, b = point(0, 0), point(2, 2)
        self.assertTrue(on_segment(point(1, 1), a, b))
        self.assertTrue(on_segment(b, a, b))
        self.assertFalse(on_segment(point(3, 3), a, b))
        self.assertFalse(on_segment(point(1, 0), a, b))

    def test_collinear_overlap(self):
        """Test overlap of collinear segments"""
        self.assertTrue(collinear_overlap(point(0, 0), point(2, 0), point(1, 0), point(3, 0)))
        self.assertFalse(collinear_overlap(point(0, 0), point(1, 0), point(1, 0), point(2, 0)))
        self.assertFalse(collinear_overlap(point(0, 0), point(2, 0), point(0, 1), point(2, 1)))
        self.assertTrue(collinear_overlap(point(0, 0), point(0, 4), point(0, 3), point(0, 1)))


class TestSegmentIntersection(unittest.TestCase):
    def test_proper_crossing(self):
        """Test crossing point of two segments"""
        p = segment_intersection(point(0, 0), point(1, 1), point(0, 1), point(1, 0))
        self.assertEqual(p, (Fraction(1, 2), Fraction(1, 2)))

    def test_rational_crossing_point(self):
        """Test crossing point with rational coordinates"""
        p = segment_intersection(point(0, 0), point(3, 1), point(0, 1), point(1, 0))
        self.assertEqual(p, (Fraction(3, 4), Fraction(1, 4)))

    def test_touching(self):
        """Test segments meeting at an endpoint"""
        self.assertEqual(segment_intersection(point(0, 0), point(2, 0), point(1, 0), point(1, 1)), (1, 0))
        self.assertEqual(segment_intersection(point(0, 0), point(1, 0), point(1, 0), point(2, 0)), (1, 0))

    def test_disjoint(self):
        """Test disjoint segments"""
        self.assertIsNone(segment_intersection(point(0, 0), point(1, 0), point(0, 1), point(1, 1)))
        self.assertIsNone(segment_intersection(point(0, 0), point(1, 1), point(2, 0), point(3, -5)))

    def test_overlap_has_no_single_point(self):
        """Test that overlapping segments have no single intersection point"""
        self.assertIsNone(segment_intersection(point(0, 0), point(2, 0), point(1, 0), point(3, 0)))


class TestTransversality(unittest.TestCase):
    def test_sectors(self):
        """Test ray inside a counterclockwise sector"""
        east, north, west = point(1, 0), point(0, 1), point(-1, 0)
        self.assertTrue(inside_ccw_sector(east, west, north))
        self.assertFalse(inside_ccw_sector(west, east, north))
        self.assertFalse(inside_ccw_sector(east, north, east))
        # reflex sector from north back round to east
        self.assertTrue(inside_ccw_sector(north, east, point(-1, -1)))
        self.assertFalse(inside_ccw_sector(north, east, point(1, 1)))

    def test_crossing(self):
        """Test transversal crossing of two straight curves"""
        self.assertTrue(crosses_transversally(point(-1, 0), point(1, 0), point(0, -1), point(0, 1)))
        self.assertTrue(crosses_transversally(point(-1, 0), point(1, 0), point(-1, -1), point(1, 1)))

    def test_touching_from_one_side(self):
        """Test curves that touch without crossing"""
        self.assertFalse(crosses_transversally(point(-1, 0), point(1, 0), point(-1, 1), point(1, 1)))
        self.assertFalse(crosses_transversally(point(-1, 0), point(1, 0), point(0, 1), point(1, 1)))

    def test_bent_curves(self):
        """Test transversality of bent curves"""
        # both curves bend at the common point; the second passes from inside the first's wedge to outside
        self.assertTrue(crosses_transversally(point(1, 1), point(-1, 1), point(0, 1), point(0, -1)))
        self.assertFalse(crosses_transversally(point(1, 1), point(-1, 1), point(0, -1), point(1, -1)))


class TestSnap(unittest.TestCase):
    def test_snap(self):
        """Test snapping floats to a dyadic grid"""
        self.assertEqual(snap(0.5, 4), Fraction(1, 2))
        self.assertEqual(snap(1 / 3, 2), Fraction(1, 4))
        self.assertEqual(snap(-0.74, 2), Fraction(-3, 4))


if __name__ == '__main__':
    unittest.main()
