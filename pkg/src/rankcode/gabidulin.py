"""Gabidulin codes defined by a Moore parity-check matrix.

A codeword is a length-n vector over F_{q^m}, equivalently an n x m matrix
over F_q. The code is the null space of H with H[l, i] = h_i^[l],
l = 0..d-2, and is MRD: d = n - k + 1 and |C| = q^(mk).
"""

import itertools
import logging
from functools import cached_property

import numpy as np

from rankcode.errors import (
    FormatError,
    InconsistentSystemError,
    OracleLimitError,
    ParameterError,
    ShapeError,
)
from rankcode.field import ExtensionField, FieldParams, default_modulus, parse_key_values
from rankcode.linalg import null_space, rank, right_inverse, rre
from rankcode.linpoly import LinPoly

logger = logging.getLogger(__name__)

CODE_PREFIX = "gab:"
DEFAULT_ENUMERATION_LIMIT = 2**16


class GabidulinCode:
    def __init__(self, field: ExtensionField, n: int, k: int, h=None):
        if not 1 <= k <= n <= field.m:
            raise ParameterError(f"need 1 <= k <= n <= m, got k={k}, n={n}, m={field.m}")
        self.field = field
        self.n = n
        self.k = k
        if h is None:
            h = field.basis[:n]
        field.check(h)
        if h.shape != (n,):
            raise ShapeError(f"h must have length {n}, got shape {h.shape}")
        self.h = h.copy()
        self.h_matrix = field.to_matrix(self.h)
        if rank(self.h_matrix) != n:
            raise ParameterError("h is not linearly independent over F_q")
        rows = [field.frob_pow(self.h, ell) for ell in range(self.d - 1)]
        self.H = field.GF(np.stack(rows)) if rows else field.zeros((0, n))
        self.G = null_space(self.H) if rows else field.GF.Identity(n)
        self.Q = right_inverse(self.h_matrix)
        self._message_positions = rre(self.G)[1]

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def m(self) -> int:
        return self.field.m

    @property
    def d(self) -> int:
        return self.n - self.k + 1

    @property
    def cardinality(self) -> int:
        return self.q ** (self.m * self.k)

    @property
    def spec(self) -> str:
        params = self.field.params
        text = f"{CODE_PREFIX}q={params.q},m={params.m},n={self.n},k={self.k}"
        if params.modulus != default_modulus(params.q, params.m):
            text += f",poly={params.modulus_int:#x}"
        return text

    def __repr__(self):
        return f"GabidulinCode({self.spec}, d={self.d})"

    @classmethod
    def from_spec(cls, text: str) -> "GabidulinCode":
        """Parse ``gab:q=2,m=8,n=8,k=4[,poly=0x11D]``."""
        if not text.startswith(CODE_PREFIX):
            raise FormatError(f"code spec must start with {CODE_PREFIX!r}: {text!r}")
        values = parse_key_values(
            text[len(CODE_PREFIX) :], required=("q", "m", "n", "k"), optional=("poly",)
        )
        params = FieldParams.create(values["q"], values["m"], values.get("poly"))
        return cls(ExtensionField(params), values["n"], values["k"])

    def encode(self, u):
        self.field.check(u)
        if u.shape != (self.k,):
            raise ShapeError(f"message must have length {self.k}, got shape {u.shape}")
        return self.field.matmul(u, self.G)

    def unencode(self, x):
        """Message of a codeword; G in RRE form is systematic on its pivots."""
        if not self.is_codeword(x):
            raise ParameterError("word is not a codeword")
        return x[list(self._message_positions)]

    def syndromes(self, r):
        """S_l = sum_i h_i^[l] r_i for l = 0..d-2."""
        self.field.check(r)
        if r.shape != (self.n,):
            raise ShapeError(f"received word must have length {self.n}, got shape {r.shape}")
        if self.d == 1:
            return self.field.zeros(0)
        return self.field.matmul(self.H, r)

    def syndrome_poly(self, r) -> LinPoly:
        return LinPoly(self.field, self.syndromes(r))

    def is_codeword(self, x) -> bool:
        return not np.any(self.syndromes(x))

    def random_message(self, rng: np.random.Generator):
        return self.field.random(self.k, rng)

    def codewords(self, limit: int = DEFAULT_ENUMERATION_LIMIT):
        """Every codeword, as a (|C|, n) array over F_{q^m}."""
        if self.cardinality > limit:
            raise OracleLimitError(
                f"{self.spec} has {self.cardinality} codewords, above the limit {limit}"
            )
        messages = np.array(
            list(itertools.product(range(self.field.order), repeat=self.k)), dtype=np.int64
        )
        return self.field.GF(messages) @ self.G

    @cached_property
    def codeword_matrices(self) -> np.ndarray:
        """Integer (|C|, n, m) expansion of ``codewords()``."""
        return np.asarray(self.field.to_matrix(self.codewords())).astype(np.int64)


def new_code(field: ExtensionField, n: int, k: int, h=None) -> GabidulinCode:
    code = GabidulinCode(field, n, k, h)
    logger.debug(f"built {code!r}")
    return code


def gabidulin_solve(field: ExtensionField, A, B):
    """Solve B_l = sum_j A_j^[l] X_j, l = 0..len(B)-1, for X.

    A must be linearly independent over F_q with len(A) <= len(B). Raises
    InconsistentSystemError when no X satisfies every equation.
    """
    A = field.GF(A).reshape(-1)
    B = field.GF(B).reshape(-1)
    tau = A.size
    if tau > B.size:
        raise ParameterError(f"{tau} unknowns need at least {tau} equations, got {B.size}")

    levels = []
    A_k, B_k = A, B
    for k in range(tau):
        pivot = A_k[k]
        if pivot == 0:
            raise ParameterError("coefficients are linearly dependent over F_q")
        levels.append((A_k, B_k[0]))
        if k == tau - 1:
            break
        # D(y) = y^[1] - c y vanishes on pivot
        c = field.power(pivot, field.q - 1)
        c_twists = field.zeros(B_k.size - 1)
        c_twists[0] = c
        for ell in range(1, c_twists.size):
            c_twists[ell] = field.frob_pow(c_twists[ell - 1], 1)
        A_k = field.sub(field.frob_pow(A_k, 1), field.mul(c, A_k))
        B_k = field.sub(B_k[1:], field.mul(c_twists, B_k[:-1]))

    X = field.zeros(tau)
    for k in reversed(range(tau)):
        A_k, b0 = levels[k]
        known = field.matmul(A_k[k + 1 :], X[k + 1 :]) if k + 1 < tau else field.zero
        X[k] = field.div(field.sub(b0, known), A_k[k])

    for ell in range(B.size):
        lhs = field.matmul(field.frob_pow(A, ell), X) if tau else field.zero
        if lhs != B[ell]:
            raise InconsistentSystemError(f"equation {ell} is not satisfied")
    return X


def berlekamp_massey(field: ExtensionField, S, d_eff: int) -> LinPoly:
    """Least q-degree sigma with sigma_0 = 1 and sum_i sigma_i S_{l-i}^[i] = 0.

    Uses S_0..S_{d_eff-2}. The result is scaled to be monic; it has the
    same roots and still annihilates the sequence.
    """
    count = max(d_eff - 1, 0)
    S = LinPoly(field, field.GF(S).reshape(-1)).padded(count)
    C = LinPoly.identity(field)
    B = LinPoly.identity(field)
    L = 0
    shift = 1
    b = field.one
    for step in range(count):
        top = min(C.q_degree, step)
        window = S[step - top : step + 1][::-1]
        discrepancy = field.zero
        if top >= 0:
            twisted = field.zeros(top + 1)
            for i in range(top + 1):
                twisted[i] = field.frob_pow(window[i], i)
            discrepancy = field.matmul(C.coeffs[: top + 1], twisted)
        if discrepancy == 0:
            shift += 1
            continue
        factor = field.div(discrepancy, field.frob_pow(b, shift))
        update = C - B.shift(shift).scale(factor)
        if 2 * L <= step:
            B, C = C, update
            L = step + 1 - L
            b = discrepancy
            shift = 1
        else:
            C = update
            shift += 1
    logger.debug(f"berlekamp_massey: L={L}, q-degree={C.q_degree}")
    return C.scale(field.inv(C.coeffs[-1]))
