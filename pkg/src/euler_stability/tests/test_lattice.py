"""
Tests for the lattice module of the euler_stability package.
"""

import math
import unittest

import numpy as np

from ..errors import AdmissibilityError, DegenerateClassError
from ..lattice import (Domain, LatticeManager, LatticeVector, TruncationKind, admissible_N, admissible_sequence,
                       alpha, canonical_classes, canonical_leaders, enumerate_class, galerkin_chain,
                       galerkin_class_bound, in_reality_disc, is_admissible_N, lens_points, reduced_cross, rho,
                       rho_of_mode, rho_sequence, unstable_disc, wrap, wrap_array, zeitlin_class_size)


class TestLatticeVector(unittest.TestCase):
    """Test cases for integer vectors."""

    def test_cross_is_antisymmetric(self):
        """Test cross product antisymmetry."""
        u, v = LatticeVector(3, -2), LatticeVector(5, 7)
        self.assertEqual(u.cross(v), 3 * 7 - (-2) * 5)
        self.assertEqual(u.cross(v), -v.cross(u))
        self.assertEqual(u.cross(u), 0)

    def test_arithmetic(self):
        """Test vector arithmetic."""
        a, p = LatticeVector(1, -2), LatticeVector(3, 1)
        self.assertEqual(a + 2 * p, LatticeVector(7, 0))
        self.assertEqual(a - p, LatticeVector(-2, -3))
        self.assertEqual(-a, LatticeVector(-1, 2))
        self.assertEqual(LatticeVector(4, 3).norm_sq(), 25)
        self.assertAlmostEqual(LatticeVector(4, 3).norm(), 5.0)
        self.assertTrue(LatticeVector(0, 0).is_zero())

    def test_parse(self):
        """Test parsing of X,Y strings."""
        self.assertEqual(LatticeVector.parse("5,3"), LatticeVector(5, 3))
        self.assertEqual(LatticeVector.parse(" -4, 7"), LatticeVector(-4, 7))
        with self.assertRaises(ValueError):
            LatticeVector.parse("5")
        with self.assertRaises(ValueError):
            LatticeVector.parse("a,b")

    def test_truncation_kind_parse(self):
        """Test truncation name parsing."""
        self.assertIs(TruncationKind.parse("Zeitlin"), TruncationKind.ZEITLIN)
        self.assertIs(TruncationKind.parse("galerkin"), TruncationKind.GALERKIN)
        with self.assertRaises(ValueError):
            TruncationKind.parse("spectral")


class TestDomain(unittest.TestCase):
    """Test cases for the truncation domain and wrapping."""

    def test_size_and_epsilon(self):
        """Test domain size and deformation parameter."""
        domain = Domain(7)
        self.assertEqual(domain.size, 15 * 15)
        self.assertEqual(len(list(domain.points())), domain.size)
        self.assertAlmostEqual(domain.epsilon * domain.width, 2 * math.pi, places=14)
        self.assertEqual(domain.mode_array().shape, (domain.size, 2))

    def test_invalid_size(self):
        """Test rejection of nonpositive N."""
        with self.assertRaises(ValueError):
            Domain(0)
        with self.assertRaises(ValueError):
            Domain(-3)

    def test_flat_index_matches_points(self):
        """Test flat index against lexicographic order."""
        domain = Domain(3)
        for i, k in enumerate(domain.points()):
            self.assertEqual(domain.flat_index(k.x1, k.x2), i)

    def test_wrap_examples(self):
        """Test wrap on boundary, interior and full-period inputs."""
        N = 6
        domain = Domain(N)
        self.assertEqual(wrap(LatticeVector(N + 1, 0), domain), LatticeVector(-N, 0))
        self.assertEqual(wrap(LatticeVector(3, -2), Domain(5)), LatticeVector(3, -2))
        self.assertEqual(wrap(LatticeVector(2 * N + 1, -(2 * N + 1)), domain), LatticeVector(0, 0))

    def test_wrap_idempotent_and_congruent(self):
        """Test wrap congruence on random inputs."""
        rng = np.random.default_rng(7)
        domain = Domain(9)
        raw = rng.integers(-1000, 1000, size=(10000, 2))
        wrapped = wrap_array(raw, domain)
        self.assertTrue(np.all(np.abs(wrapped) <= domain.N))
        self.assertTrue(np.all((raw - wrapped) % domain.width == 0))
        np.testing.assert_array_equal(wrap_array(wrapped, domain), wrapped)


class TestUnstableDisc(unittest.TestCase):
    """Test cases for the unstable disc and its lens points."""

    def test_small_discs(self):
        """Test discs of p=(1,0) and p=(2,1)."""
        self.assertEqual(unstable_disc(LatticeVector(1, 0)), {LatticeVector(0, 0)})
        expected = {LatticeVector(x1, x2) for x1, x2 in
                    [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1),
                     (2, 0), (-2, 0), (0, 2), (0, -2)]}
        self.assertEqual(unstable_disc(LatticeVector(2, 1)), expected)

    def test_interior_count(self):
        """Test the interior point count for p=(5,3)."""
        self.assertEqual(len(unstable_disc(LatticeVector(5, 3))) - 1, 100)

    def test_lens_census(self):
        """Test the lens point count for p=(5,3)."""
        self.assertEqual(len(lens_points(LatticeVector(5, 3))), 24)

    def test_boundary_neighbours_count_as_outside(self):
        """Test lens points whose neighbour lies exactly on the circle |x| = |p|."""
        p = LatticeVector(5, 3)
        lens = set(lens_points(p))
        for a, neighbour in ((LatticeVector(-2, 2), LatticeVector(3, 5)),
                             (LatticeVector(2, -2), LatticeVector(-3, -5))):
            self.assertIn(a, unstable_disc(p))
            self.assertNotIn(neighbour, unstable_disc(p))
            self.assertEqual(rho_of_mode(neighbour, p), 0.0)
            self.assertIn(a, lens)
            self.assertFalse(in_reality_disc(a, p))

    def test_zero_p_rejected(self):
        """Test rejection of the zero wave vector."""
        with self.assertRaises(ValueError):
            unstable_disc(LatticeVector(0, 0))

    def test_reality_disc_points_are_lens_points(self):
        """Test the sufficient disc lies inside the lens."""
        p = LatticeVector(7, 5)
        lens = set(lens_points(p))
        inside = [a for a in unstable_disc(p) if in_reality_disc(a, p)]
        self.assertTrue(inside)
        self.assertTrue(set(inside) <= lens)


class TestRhoAndAlpha(unittest.TestCase):
    """Test cases for ρ and the class prefactor."""

    def setUp(self):
        """Set up test fixtures."""
        self.p = LatticeVector(3, 1)
        self.domain = Domain(30)

    def test_rho_examples(self):
        """Test ρ at a disc mode, a boundary mode and an outer mode."""
        for kind in TruncationKind:
            self.assertAlmostEqual(rho(LatticeVector(1, -2), 0, self.p, self.domain, kind), -0.1, places=15)
            self.assertEqual(rho(LatticeVector(-3, -1), 2, self.p, self.domain, kind), 0.0)
            self.assertAlmostEqual(rho(LatticeVector(1, -2), 2, self.p, self.domain, kind), 39 / 490, places=15)

    def test_rho_at_zero_mode(self):
        """Test the degenerate-class error at the origin."""
        with self.assertRaises(DegenerateClassError):
            rho(LatticeVector(-3, -1), 1, self.p, self.domain, TruncationKind.GALERKIN)

    def test_rho_sign_matches_disc(self):
        """Test ρ < 0 exactly on disc members over random classes."""
        rng = np.random.default_rng(11)
        p = LatticeVector(5, 3)
        disc = unstable_disc(p)
        domain = Domain(admissible_N(p, 40))
        for _ in range(100):
            a = LatticeVector(*(int(v) for v in rng.integers(-domain.N, domain.N + 1, 2)))
            descriptor = enumerate_class(a, p, domain, TruncationKind.ZEITLIN)
            if descriptor.contains_origin():
                continue
            values = rho_sequence(descriptor)
            for mode, value in zip(descriptor.modes, values):
                self.assertEqual(value < 0.0, mode in disc)

    def test_alpha_examples(self):
        """Test α for parallel, Galerkin and Zeitlin cases."""
        a, p = LatticeVector(2, 1), LatticeVector(4, 2)
        for kind in TruncationKind:
            self.assertEqual(alpha(a, p, 0.7, Domain(10), kind), 0.0)
        a, p = LatticeVector(0, 3), LatticeVector(3, 1)
        self.assertEqual(alpha(a, p, 1.0, Domain(200), TruncationKind.GALERKIN), -9.0)
        eps = 2 * math.pi / 401
        zeitlin = alpha(a, p, 1.0, Domain(200), TruncationKind.ZEITLIN)
        self.assertAlmostEqual(zeitlin, math.sin(-9 * eps) / eps, places=12)
        self.assertAlmostEqual(zeitlin, -8.9703, places=3)
        self.assertLess(abs(alpha(a, p, 1.0, Domain(2000), TruncationKind.ZEITLIN) + 9.0), abs(zeitlin + 9.0))

    def test_zeitlin_alpha_independent_of_member(self):
        """Test the Zeitlin prefactor is the same for every class member."""
        rng = np.random.default_rng(3)
        domain = Domain(17)
        p = LatticeVector(4, 1)
        for _ in range(200):
            a = LatticeVector(*(int(v) for v in rng.integers(-17, 18, 2)))
            k = int(rng.integers(-50, 50))
            member = wrap(a + k * p, domain)
            first = math.sin(domain.epsilon * member.cross(p))
            second = math.sin(domain.epsilon * a.cross(p))
            self.assertAlmostEqual(first, second, places=12)
            self.assertEqual(reduced_cross(member, p, domain, TruncationKind.ZEITLIN),
                             reduced_cross(a, p, domain, TruncationKind.ZEITLIN))


class TestClasses(unittest.TestCase):
    """Test cases for class enumeration and the canonical partition."""

    def test_zeitlin_class_size(self):
        """Test Zeitlin class sizes."""
        descriptor = enumerate_class(LatticeVector(1, 1), LatticeVector(5, 3), Domain(200), TruncationKind.ZEITLIN)
        self.assertEqual(descriptor.size, 401)
        self.assertEqual(zeitlin_class_size(LatticeVector(3, 3), Domain(19)), 13)
        descriptor = enumerate_class(LatticeVector(0, 1), LatticeVector(3, 3), Domain(19), TruncationKind.ZEITLIN)
        self.assertEqual(descriptor.size, 13)
        self.assertTrue(descriptor.cyclic)

    def test_zeitlin_sizes_random(self):
        """Test Zeitlin sizes are odd and follow the gcd formula."""
        rng = np.random.default_rng(5)
        for _ in range(50):
            p = LatticeVector(int(rng.integers(1, 7)), int(rng.integers(-6, 7)))
            domain = Domain(int(rng.integers(max(abs(p.x1), abs(p.x2)), 25)))
            descriptor = enumerate_class(LatticeVector(0, 1), p, domain, TruncationKind.ZEITLIN)
            kappa = math.gcd(p.x1, p.x2)
            self.assertEqual(descriptor.size, domain.width // math.gcd(domain.width, kappa))
            self.assertEqual(descriptor.size % 2, 1)

    def test_galerkin_axis_walk(self):
        """Test a Galerkin class along an axis."""
        descriptor = enumerate_class(LatticeVector(0, 0), LatticeVector(1, 0), Domain(3), TruncationKind.GALERKIN)
        self.assertEqual(descriptor.size, 7)
        self.assertEqual((descriptor.m1, descriptor.m2), (3, 3))
        self.assertEqual(descriptor.modes[0], LatticeVector(-3, 0))
        self.assertEqual(descriptor.modes[-1], LatticeVector(3, 0))
        self.assertFalse(descriptor.cyclic)

    def test_galerkin_size_bound(self):
        """Test the Galerkin class size bound over the partition."""
        p, domain = LatticeVector(3, 2), Domain(12)
        bound = galerkin_class_bound(p, domain)
        self.assertEqual(bound, 9)
        sizes = []
        for descriptor in canonical_classes(p, domain, TruncationKind.GALERKIN):
            sizes.append(descriptor.size)
            self.assertLessEqual(descriptor.size, bound)
            self.assertFalse(domain.contains(descriptor.modes[0] - p))
            self.assertFalse(domain.contains(descriptor.modes[-1] + p))
        self.assertEqual(max(sizes), bound)

    def test_leader_outside_domain(self):
        """Test rejection of leaders outside D."""
        with self.assertRaises(ValueError):
            enumerate_class(LatticeVector(5, 0), LatticeVector(1, 0), Domain(3), TruncationKind.ZEITLIN)
        with self.assertRaises(ValueError):
            enumerate_class(LatticeVector(1, 0), LatticeVector(0, 0), Domain(3), TruncationKind.ZEITLIN)

    def test_partition(self):
        """Test canonical classes cover D exactly once."""
        for p in (LatticeVector(1, 0), LatticeVector(2, 1), LatticeVector(3, 3)):
            for kind in TruncationKind:
                domain = Domain(8)
                classes = canonical_classes(p, domain, kind)
                modes = [m for c in classes for m in c.modes]
                self.assertEqual(len(modes), domain.size)
                self.assertEqual(set(modes), set(domain.points()))

    def test_small_zeitlin_leaders(self):
        """Test the 3×3 Zeitlin partition for p=(1,0)."""
        leaders = canonical_leaders(LatticeVector(1, 0), Domain(1), TruncationKind.ZEITLIN)
        self.assertEqual(leaders, [LatticeVector(-1, -1), LatticeVector(-1, 0), LatticeVector(-1, 1)])

    def test_disc_leaders_pair_up(self):
        """Test the classes meeting the disc for p=(5,3), N=200."""
        p = LatticeVector(5, 3)
        domain = Domain(200)
        disc = unstable_disc(p) - {LatticeVector(0, 0)}
        hits = [c for c in canonical_classes(p, domain, TruncationKind.ZEITLIN)
                if not c.contains_origin() and any(m in disc for m in c.modes)]
        self.assertEqual(sum(sum(m in disc for m in c.modes) for c in hits), 100)
        members = {m for c in hits for m in c.modes if m in disc}
        self.assertEqual(members, {-m for m in members})

    def test_galerkin_chain(self):
        """Test matched-length Galerkin chains."""
        chain = galerkin_chain(LatticeVector(1, -2), LatticeVector(3, 1), 5)
        self.assertEqual(chain.size, 5)
        self.assertEqual(chain.modes[2], LatticeVector(1, -2))
        self.assertEqual(chain.domain.N, 7)
        with self.assertRaises(ValueError):
            galerkin_chain(LatticeVector(1, -2), LatticeVector(3, 1), 4)

    def test_no_three_consecutive_disc_modes(self):
        """Test that at most two consecutive class modes meet the closed disc."""
        for x1 in range(0, 9):
            for x2 in range(-8, 9):
                p = LatticeVector(x1, x2)
                if p.is_zero() or p.norm_sq() > 64 or math.gcd(x1, x2) % 2 == 0:
                    continue
                domain = Domain(admissible_sequence(p, 1)[0])
                radius_sq = p.norm_sq()
                closed = [LatticeVector(a1, a2) for a1 in range(-x1 - abs(x2), x1 + abs(x2) + 1)
                          for a2 in range(-x1 - abs(x2), x1 + abs(x2) + 1)
                          if 0 < a1 * a1 + a2 * a2 <= radius_sq]
                for a in closed:
                    triple = [wrap(a + k * p, domain) for k in range(3)]
                    if any(m.is_zero() for m in triple):
                        continue
                    self.assertFalse(all(m.norm_sq() <= radius_sq for m in triple), f"p={p}, a={a}")


class TestAdmissibleN(unittest.TestCase):
    """Test cases for admissible Zeitlin grid sizes."""

    def test_examples(self):
        """Test the admissible N formula."""
        self.assertEqual(admissible_N(LatticeVector(3, 3), 6), 19)
        self.assertEqual(admissible_N(LatticeVector(5, 3), 40), 40)

    def test_even_gcd(self):
        """Test rejection for even κ."""
        with self.assertRaises(AdmissibilityError) as ctx:
            admissible_N(LatticeVector(6, 2), 40)
        self.assertIn("no admissible N exists for even gcd", str(ctx.exception))

    def test_small_n_tilde(self):
        """Test rejection of ñ below the bound."""
        with self.assertRaises(AdmissibilityError):
            admissible_N(LatticeVector(3, 3), 5)

    def test_sequence_is_admissible(self):
        """Test consecutive admissible values."""
        p = LatticeVector(3, 3)
        values = admissible_sequence(p, 4)
        self.assertEqual(values, [19, 22, 25, 28])
        self.assertTrue(all(is_admissible_N(p, N) for N in values))
        self.assertFalse(is_admissible_N(p, 20))
        self.assertFalse(is_admissible_N(LatticeVector(6, 2), 100))


class TestLatticeManager(unittest.TestCase):
    """Test cases for the lattice manager facade."""

    def setUp(self):
        """Set up test fixtures."""
        self.manager = LatticeManager(LatticeVector(5, 3))

    def test_domain_for(self):
        """Test domain construction from N and ñ."""
        self.assertEqual(self.manager.domain_for(N=50).N, 50)
        self.assertEqual(self.manager.domain_for(n_tilde=40).N, 40)
        with self.assertRaises(ValueError):
            self.manager.domain_for()
        with self.assertRaises(AdmissibilityError):
            self.manager.domain_for(N=10, strict=True)

    def test_disc_census(self):
        """Test the unstable disc census."""
        self.assertEqual(self.manager.disc_census(), {'interior_points': 100, 'lens_points': 24})

    def test_class_of(self):
        """Test single class lookup."""
        descriptor = self.manager.class_of(LatticeVector(1, 1), Domain(40))
        self.assertIn(LatticeVector(1, 1), descriptor)
        self.assertEqual(descriptor.index_of(LatticeVector(1, 1)), 0)

    def test_zero_p(self):
        """Test rejection of the zero wave vector."""
        with self.assertRaises(ValueError):
            LatticeManager(LatticeVector(0, 0))


if __name__ == '__main__':
    unittest.main()
