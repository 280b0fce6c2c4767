import itertools
import unittest

import numpy as np

from rankcode.decoder import (
    ReceivedTuple,
    conventional_decode,
    converse_pattern,
    errata_capability,
    generalized_decode,
    generalized_decode_locator,
    random_received,
)
from rankcode.errors import DecodingFailure, ParameterError, ShapeError
from rankcode.gabidulin import GabidulinCode
from rankcode.linalg import batch_rank, random_full_rank, rank


def correctable(d):
    return [
        (eps, mu, delta)
        for eps, mu, delta in itertools.product(range(d), repeat=3)
        if errata_capability(eps, mu, delta, d)
    ]


class DecoderTestCase(unittest.TestCase):
    spec = "gab:q=2,m=4,n=4,k=2"

    def setUp(self):
        self.code = GabidulinCode.from_spec(self.spec)
        self.rng = np.random.default_rng(2024)

    def assertDecodes(self, outcome, x):
        self.assertTrue(outcome.success, outcome.failure)
        np.testing.assert_array_equal(outcome.codeword, x)


class ErrataCapabilityTest(unittest.TestCase):
    def test_predicate(self):
        self.assertTrue(errata_capability(1, 0, 0, 3))
        self.assertTrue(errata_capability(0, 1, 1, 3))
        self.assertFalse(errata_capability(1, 1, 0, 3))
        self.assertTrue(errata_capability(1, 1, 1, 5))
        self.assertFalse(errata_capability(2, 1, 0, 5))


class ConventionalDecodeTest(DecoderTestCase):
    def test_clean_codeword(self):
        x = self.code.encode(self.code.random_message(self.rng))
        outcome = conventional_decode(self.code, x)
        self.assertDecodes(outcome, x)
        self.assertEqual(outcome.epsilon, 0)
        self.assertFalse(np.any(outcome.error))

    def test_every_rank_one_error(self):
        field = self.code.field
        x = self.code.encode(self.code.random_message(self.rng))
        vectors = [field.GFq(v) for v in itertools.product(range(2), repeat=4) if any(v)]
        for u, v in itertools.product(vectors, vectors):
            e = field.from_matrix(u[:, np.newaxis] * v[np.newaxis, :])
            with self.subTest(u=u, v=v):
                outcome = conventional_decode(self.code, field.add(x, e))
                self.assertDecodes(outcome, x)
                self.assertEqual(outcome.epsilon, 1)
                np.testing.assert_array_equal(outcome.error, e)

    def test_rank_one_errors_on_every_codeword(self):
        field = self.code.field
        vectors = [field.GFq(v) for v in itertools.product(range(2), repeat=4) if any(v)]
        for index, x in enumerate(self.code.codewords()):
            v = vectors[index % len(vectors)]
            for u in vectors:
                e = field.from_matrix(u[:, np.newaxis] * v[np.newaxis, :])
                outcome = conventional_decode(self.code, field.add(x, e))
                self.assertDecodes(outcome, x)
                np.testing.assert_array_equal(outcome.error, e)

    def test_agrees_with_generalized_decode_without_side_information(self):
        field = self.code.field
        for _ in range(300):
            x = self.code.encode(self.code.random_message(self.rng))
            L = random_full_rank(field.GFq, 4, 1, self.rng)
            E = random_full_rank(field.GFq, 1, 4, self.rng)
            for error in (field.zeros(4), field.from_matrix(L @ E)):
                r = field.add(x, error)
                plain = conventional_decode(self.code, r)
                general = generalized_decode(self.code, ReceivedTuple.plain(self.code, r))
                self.assertDecodes(plain, x)
                self.assertDecodes(general, x)
                self.assertEqual(plain.epsilon, general.epsilon)
                np.testing.assert_array_equal(plain.error, general.error)

    def test_beyond_half_the_distance(self):
        field = self.code.field
        failures = 0
        for _ in range(200):
            x = self.code.encode(self.code.random_message(self.rng))
            L = random_full_rank(field.GFq, 4, 2, self.rng)
            E = random_full_rank(field.GFq, 2, 4, self.rng)
            r = field.add(x, field.from_matrix(L @ E))
            outcome = conventional_decode(self.code, r)
            if outcome.success:
                self.assertTrue(self.code.is_codeword(outcome.codeword))
                self.assertFalse(np.array_equal(outcome.codeword, x))
                distance = rank(field.to_matrix(field.sub(r, outcome.codeword)))
                self.assertLessEqual(distance, 1)
            else:
                failures += 1
        self.assertGreater(failures, 0)


class TransposedCodeTest(unittest.TestCase):
    def test_transpose_keeps_minimum_rank_distance(self):
        code = GabidulinCode.from_spec("gab:q=2,m=4,n=4,k=2")
        words = code.codeword_matrices
        transposed = words.transpose(0, 2, 1)
        np.testing.assert_array_equal(batch_rank(words, 2), batch_rank(transposed, 2))
        pairs = [(i, j) for i in range(len(words)) for j in range(i + 1, len(words))]
        left, right = np.array(pairs).T
        for stack in (words, transposed):
            differences = (stack[left] - stack[right]) % 2
            self.assertEqual(int(batch_rank(differences, 2).min()), code.d)


class GeneralizedDecodeTest(DecoderTestCase):
    def test_every_correctable_pattern(self):
        for eps, mu, delta in correctable(self.code.d):
            for _ in range(60):
                x, received = random_received(self.code, eps, mu, delta, self.rng)
                with self.subTest(pattern=(eps, mu, delta)):
                    self.assertDecodes(generalized_decode(self.code, received), x)
                    self.assertDecodes(generalized_decode_locator(self.code, received), x)

    def test_sampled_patterns(self):
        patterns = correctable(self.code.d)
        decoders = (generalized_decode, generalized_decode_locator)
        for trial in range(10_000):
            eps, mu, delta = patterns[self.rng.integers(len(patterns))]
            x, received = random_received(self.code, eps, mu, delta, self.rng)
            outcome = decoders[trial % 2](self.code, received)
            self.assertDecodes(outcome, x)
            self.assertEqual((outcome.mu, outcome.delta), (mu, delta))

    def test_workspace_is_filled(self):
        x, received = random_received(self.code, 1, 0, 0, self.rng)
        outcome = generalized_decode(self.code, received)
        ws = outcome.workspace
        self.assertEqual(ws.sigma_F.q_degree, 1)
        self.assertEqual(ws.tau, 1)
        self.assertEqual(ws.locations.shape, (4, 1))
        self.assertGreater(outcome.operations, 0)

    def test_locator_workspace_is_filled(self):
        x, received = random_received(self.code, 0, 1, 1, self.rng)
        outcome = generalized_decode_locator(self.code, received)
        self.assertDecodes(outcome, x)
        ws = outcome.workspace
        self.assertEqual(ws.lam.q_degree, 2)
        self.assertIsNotNone(ws.lambda_F)

    def test_too_much_side_information_fails(self):
        x, received = random_received(self.code, 0, 2, 1, self.rng)
        outcome = generalized_decode(self.code, received)
        self.assertFalse(outcome.success)
        self.assertEqual(outcome.failure.kind, "capability")
        with self.assertRaises(DecodingFailure):
            outcome.unwrap()

    def test_side_information_is_never_harmful_to_a_codeword(self):
        x = self.code.encode(self.code.random_message(self.rng))
        field = self.code.field
        L = field.GFq([[1], [0], [1], [0]])
        E = field.GFq([[0, 1, 1, 0]])
        outcome = generalized_decode(self.code, ReceivedTuple(x, L, E))
        self.assertDecodes(outcome, x)

    def test_invalid_tuples(self):
        field = self.code.field
        x = self.code.encode(self.code.random_message(self.rng))
        with self.assertRaises(ShapeError):
            generalized_decode(self.code, ReceivedTuple(x, field.GFq.Zeros((3, 0)), field.GFq.Zeros((0, 4))))
        with self.assertRaises(ShapeError):
            generalized_decode(self.code, ReceivedTuple(x, field.GFq.Zeros((4, 0)), field.GFq.Zeros((0, 3))))
        with self.assertRaises(ParameterError):
            generalized_decode(self.code, ReceivedTuple(x, field.GFq.Zeros((4, 1)), field.GFq.Zeros((0, 4))))
        with self.assertRaises(ParameterError):
            generalized_decode(self.code, ReceivedTuple(x, field.GFq.Zeros((4, 0)), field.GFq.Zeros((1, 4))))


class LargerDistanceTest(DecoderTestCase):
    spec = "gab:q=2,m=6,n=6,k=2"

    def test_every_correctable_pattern(self):
        for eps, mu, delta in correctable(self.code.d):
            for _ in range(15):
                x, received = random_received(self.code, eps, mu, delta, self.rng)
                with self.subTest(pattern=(eps, mu, delta)):
                    self.assertDecodes(generalized_decode(self.code, received), x)
                    self.assertDecodes(generalized_decode_locator(self.code, received), x)

    def test_side_information_extends_capability(self):
        for _ in range(20):
            x, received = random_received(self.code, 1, 1, 1, self.rng)
            self.assertEqual(received.objective(self.code, x), 3)
            self.assertDecodes(generalized_decode(self.code, received), x)
            plain = conventional_decode(self.code, received.r)
            self.assertFalse(plain.success and np.array_equal(plain.codeword, x))

    def test_odd_characteristic(self):
        code = GabidulinCode.from_spec("gab:q=3,m=5,n=5,k=1")
        for eps, mu, delta in [(2, 0, 0), (1, 1, 1), (0, 2, 2), (1, 2, 0)]:
            x, received = random_received(code, eps, mu, delta, self.rng)
            self.assertDecodes(generalized_decode(code, received), x)
            self.assertDecodes(generalized_decode_locator(code, received), x)

    def test_short_code(self):
        code = GabidulinCode.from_spec("gab:q=2,m=7,n=5,k=1")
        for eps, mu, delta in [(2, 0, 0), (1, 1, 1), (0, 4, 0), (0, 0, 4)]:
            x, received = random_received(code, eps, mu, delta, self.rng)
            self.assertDecodes(generalized_decode(code, received), x)


class ConversePatternTest(DecoderTestCase):
    spec = "gab:q=2,m=6,n=6,k=2"

    def test_transmitted_codeword_is_not_the_unique_minimum(self):
        for eps, mu, delta in [(3, 0, 0), (2, 1, 0), (2, 0, 1), (1, 2, 1), (1, 1, 2)]:
            with self.subTest(pattern=(eps, mu, delta)):
                pattern = converse_pattern(self.code, eps, mu, delta, self.rng)
                self.assertTrue(self.code.is_codeword(pattern.rival))
                rival_distance = rank(
                    self.code.field.to_matrix(self.code.field.sub(pattern.rival, pattern.transmitted))
                )
                self.assertEqual(rival_distance, self.code.d)
                ours = pattern.received.objective(self.code, pattern.transmitted)
                theirs = pattern.received.objective(self.code, pattern.rival)
                self.assertEqual(ours, eps + mu + delta)
                self.assertLessEqual(theirs, ours)

    def test_rejects_correctable_patterns(self):
        with self.assertRaises(ParameterError):
            converse_pattern(self.code, 1, 1, 1, self.rng)
        with self.assertRaises(ParameterError):
            converse_pattern(self.code, 4, 2, 0, self.rng)


class OperationCountTest(unittest.TestCase):
    def test_operations_grow_linearly_in_m(self):
        rng = np.random.default_rng(8)
        sizes = [8, 16, 32, 64]
        counts = []
        for m in sizes:
            code = GabidulinCode.from_spec(f"gab:q=2,m={m},n={m},k={m - 4}")
            x, received = random_received(code, 1, 1, 1, rng)
            outcome = generalized_decode(code, received)
            self.assertTrue(outcome.success, outcome.failure)
            np.testing.assert_array_equal(outcome.codeword, x)
            counts.append(outcome.operations)
        slopes = [
            (counts[i + 1] - counts[i]) / (sizes[i + 1] - sizes[i]) for i in range(len(sizes) - 1)
        ]
        self.assertGreater(min(slopes), 0)
        self.assertLessEqual(max(slopes) / min(slopes), 2)
        self.assertLessEqual(counts[-1] / counts[0], 2 * sizes[-1] / sizes[0])


if __name__ == "__main__":
    unittest.main()
