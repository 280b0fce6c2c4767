"""Cartesian products of Gabidulin codes sharing n and d.

An n x m payload is split column-wise into blocks of widths m_1..m_l,
block i being a codeword of a Gabidulin code over F_{q^{m_i}}. The product
is MRD with the same d and decodes block by block in the smaller fields.
"""

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from rankcode.decoder import DecodeOutcome, ReceivedTuple, generalized_decode
from rankcode.errors import ParameterError, ShapeError
from rankcode.field import ExtensionField
from rankcode.gabidulin import GabidulinCode
from rankcode.linalg import hstack, rre

logger = logging.getLogger(__name__)


def _check_compatible(codes: Sequence[GabidulinCode]):
    if not codes:
        raise ParameterError("a product code needs at least one component")
    first = codes[0]
    for code in codes[1:]:
        if (code.q, code.n, code.d) != (first.q, first.n, first.d):
            raise ParameterError(
                f"components must share (q, n, d); {code!r} differs from {first!r}"
            )


@dataclass(frozen=True)
class CartesianProductCode:
    components: tuple[GabidulinCode, ...]

    def __post_init__(self):
        _check_compatible(self.components)

    @classmethod
    def build(cls, q: int, n: int, m: int, d: int) -> "CartesianProductCode":
        """floor(m/n) components: n x n codes and one n x (m - n(l-1)) code."""
        count = m // n
        if count < 1:
            raise ParameterError(f"need m >= n, got n={n}, m={m}")
        widths = [n] * (count - 1) + [m - n * (count - 1)]
        components = tuple(
            GabidulinCode(ExtensionField.create(q, width), n, n - d + 1) for width in widths
        )
        return cls(components)

    @property
    def n(self) -> int:
        return self.components[0].n

    @property
    def d(self) -> int:
        return self.components[0].d

    @property
    def q(self) -> int:
        return self.components[0].q

    @property
    def widths(self) -> tuple[int, ...]:
        return tuple(code.m for code in self.components)

    @property
    def m(self) -> int:
        return sum(self.widths)

    @property
    def cardinality(self) -> int:
        size = 1
        for code in self.components:
            size *= code.cardinality
        return size

    def _blocks(self):
        edges = np.cumsum((0,) + self.widths)
        return [slice(int(lo), int(hi)) for lo, hi in zip(edges[:-1], edges[1:])]

    def encode(self, messages) -> list:
        return [code.encode(u) for code, u in zip(self.components, messages, strict=True)]

    def join(self, words):
        """n x m matrix over F_q from per-component vectors."""
        return hstack(
            [code.field.to_matrix(w) for code, w in zip(self.components, words, strict=True)]
        )

    def split(self, x) -> list:
        """Per-component vectors from an n x m matrix over F_q."""
        if x.shape != (self.n, self.m):
            raise ShapeError(f"expected a {self.n}x{self.m} matrix, got {x.shape}")
        return [
            code.field.from_matrix(x[:, block])
            for code, block in zip(self.components, self._blocks())
        ]

    def split_tuple(self, r, L_hat, E_hat) -> list[ReceivedTuple]:
        """Component tuples sharing L_hat; each E_hat block is cut to a row basis."""
        tuples = []
        for code, block, r_i in zip(self.components, self._blocks(), self.split(r)):
            R, pivots = rre(E_hat[:, block])
            tuples.append(ReceivedTuple(r_i, L_hat, R[: len(pivots)]))
        return tuples

    def decode(self, r, L_hat, E_hat) -> list[DecodeOutcome]:
        return product_code_decode(self.components, self.split_tuple(r, L_hat, E_hat))


def product_code_decode(
    codes: Sequence[GabidulinCode], tuples: Sequence[ReceivedTuple]
) -> list[DecodeOutcome]:
    _check_compatible(codes)
    if len(codes) != len(tuples):
        raise ShapeError(f"{len(codes)} components but {len(tuples)} received tuples")
    shared = tuples[0].L_hat
    for t in tuples[1:]:
        if t.L_hat.shape != shared.shape or np.any(t.L_hat != shared):
            raise ParameterError("component tuples must share L_hat")
    outcomes = [generalized_decode(code, t) for code, t in zip(codes, tuples)]
    failed = [i for i, outcome in enumerate(outcomes) if not outcome.success]
    if failed:
        logger.info(f"product decode: components {failed} failed")
    return outcomes
