from math import comb

from django.test import SimpleTestCase

from ...services.cohomology_service import CohomologyService
from ...services.errors import GuardExceededError
from ..models.cohomology_model import CohomologyElement, EmbeddingVerdict


class CohomologyElementTests(SimpleTestCase):
    def test_squares_vanish(self):
        x1 = CohomologyElement.generator(2, 1)
        self.assertEqual(x1 * x1, CohomologyElement(2, {}))

    def test_product_of_distinct_generators(self):
        product = CohomologyElement.generator(3, 1) * CohomologyElement.generator(3, 3, -1)
        self.assertEqual(product.coefficient((1, 3)), -1)
        self.assertEqual(list(product.monomials()), [((1, 3), -1)])

    def test_zero_terms_are_dropped(self):
        total = CohomologyElement.generator(2, 1) + CohomologyElement.generator(2, 1, -1)
        self.assertEqual(total.terms, {})

    def test_mismatched_factor_counts(self):
        with self.assertRaises(ValueError):
            CohomologyElement.one(2) + CohomologyElement.one(3)


class CohomologyServiceTests(SimpleTestCase):
    def setUp(self):
        self.service = CohomologyService()

    def test_total_chern_class_of_two_lines(self):
        total = self.service.total_chern_external_sum(2, [1, 1])
        self.assertEqual(total.coefficient(()), 1)
        self.assertEqual(total.coefficient((1,)), 1)
        self.assertEqual(total.coefficient((2,)), 1)
        self.assertEqual(total.coefficient((1, 2)), 1)

    def test_inverse_class_coefficients(self):
        for k in range(1, 9):
            inverse = self.service.total_chern_external_sum(k, [-1] * k)
            for j in range(k + 1):
                with self.subTest(k=k, j=j):
                    self.assertEqual(
                        sum(inverse.degree_part(j).values()), self.service.chern_inverse_coeff(k, j)
                    )

    def test_inverse_class_per_monomial(self):
        for k in range(1, 13):
            inverse = self.service.total_chern_external_sum(k, [-1] * k)
            for j in range(k + 1):
                part = inverse.degree_part(j)
                with self.subTest(k=k, j=j):
                    self.assertEqual(len(part), comb(k, j))
                    self.assertTrue(all(value == (-1) ** j for value in part.values()))

    def test_total_class_times_inverse_is_one(self):
        for k in range(1, 13):
            product = self.service.total_chern_external_sum(k, [1] * k)
            for index in range(1, k + 1):
                product = product * (
                    CohomologyElement.one(k) + CohomologyElement.generator(k, index, -1)
                )
            with self.subTest(k=k):
                self.assertEqual(product, CohomologyElement.one(k))

    def test_inverse_coefficient_closed_form(self):
        self.assertEqual(self.service.chern_inverse_coeff(1000, 3), -comb(1000, 3))
        self.assertEqual(self.service.chern_inverse_coeff(5, 6), 0)

    def test_threshold_is_twice_the_factor_count(self):
        for k in range(1, 30):
            with self.subTest(k=k):
                self.assertTrue(self.service.embeds_in_trivial(k, 2 * k - 1).obstructed)
                self.assertFalse(self.service.embeds_in_trivial(k, 2 * k).obstructed)

    def test_closed_form_agrees_with_expansion(self):
        for k in range(1, 13):
            for r in range(0, 2 * k + 3):
                with self.subTest(k=k, r=r):
                    self.assertEqual(
                        self.service.embeds_in_trivial(k, r).verdict,
                        self.service.embeds_by_expansion(k, r),
                    )

    def test_obstruction_witness(self):
        certificate = self.service.embeds_in_trivial(3, 5)
        self.assertEqual(certificate.verdict, EmbeddingVerdict.OBSTRUCTED)
        self.assertEqual(certificate.witness_degree, 3)
        self.assertEqual(certificate.coefficient, -1)
        self.assertEqual(certificate.complement_rank, 2)
        self.assertIn("rank 2", certificate.explanation())

    def test_large_factor_counts_stay_closed_form(self):
        self.assertTrue(self.service.embeds_in_trivial(10**6, 10**6 + 5).obstructed)

    def test_brute_force_guard(self):
        with self.assertRaises(GuardExceededError):
            self.service.total_chern_external_sum(15, [1] * 15)

    def test_bad_signs(self):
        with self.assertRaises(ValueError):
            self.service.total_chern_external_sum(2, [1, 2])
