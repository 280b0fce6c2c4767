"""Prime fields F_q and their extensions F_{q^m}.

Elements are galois ``FieldArray`` values. An element of F_{q^m} is also read
as a length-m coordinate vector over F_q in the polynomial basis
1, alpha, ..., alpha^(m-1) (little-endian), which is how vectors over F_{q^m}
turn into matrices over F_q.
"""

import contextlib
import contextvars
import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property

import galois
import numpy as np

from rankcode.errors import FieldMismatchError, FormatError, ParameterError

# Integer encoding: base-q digits of the integer are the coefficients, lowest first.
BINARY_MODULI = {
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
}

MAX_Q = 2**16
MAX_M = 64

_active_counters: contextvars.ContextVar[tuple[Counter, ...]] = contextvars.ContextVar(
    "rankcode_operation_counters", default=()
)


@contextlib.contextmanager
def count_operations():
    """Count extension-field operations performed inside the block.

    Yields a ``Counter`` keyed by ``add``, ``mul``, ``inv`` and ``frob``.
    Nested blocks each see every operation.
    """
    counter = Counter()
    token = _active_counters.set(_active_counters.get() + (counter,))
    try:
        yield counter
    finally:
        _active_counters.reset(token)


def _tally(kind: str, amount: int):
    for counter in _active_counters.get():
        counter[kind] += amount


def _digits(value: int, base: int) -> tuple[int, ...]:
    digits = []
    while value:
        value, digit = divmod(value, base)
        digits.append(digit)
    return tuple(digits)


def default_modulus(q: int, m: int) -> tuple[int, ...]:
    if m == 1:
        return (0, 1)
    if q == 2 and m in BINARY_MODULI:
        return _digits(BINARY_MODULI[m], 2)
    poly = galois.irreducible_poly(q, m, method="min")
    return tuple(int(c) for c in poly.coeffs[::-1])


@dataclass(frozen=True)
class FieldParams:
    q: int
    m: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not (2 <= self.q < MAX_Q) or not galois.is_prime(self.q):
            raise ParameterError(f"q must be a prime below {MAX_Q}, got {self.q}")
        if not (1 <= self.m <= MAX_M):
            raise ParameterError(f"m must be in [1, {MAX_M}], got {self.m}")
        if len(self.modulus) != self.m + 1 or self.modulus[-1] != 1:
            raise ParameterError(
                f"modulus must be monic of degree {self.m}, got {self.modulus}"
            )
        if any(not (0 <= c < self.q) for c in self.modulus):
            raise ParameterError(f"modulus coefficients must lie in [0, {self.q})")

    @classmethod
    def create(cls, q: int, m: int, modulus: int | None = None) -> "FieldParams":
        if modulus is None:
            if q < 2 or not galois.is_prime(q):
                raise ParameterError(f"q must be prime, got {q}")
            if not (1 <= m <= MAX_M):
                raise ParameterError(f"m must be in [1, {MAX_M}], got {m}")
            return cls(q, m, default_modulus(q, m))
        digits = _digits(modulus, q)
        return cls(q, m, digits)

    @classmethod
    def parse(cls, text: str) -> "FieldParams":
        """Parse ``q=2,m=8[,poly=0x11D]``."""
        values = parse_key_values(text, required=("q", "m"), optional=("poly",))
        return cls.create(values["q"], values["m"], values.get("poly"))

    @property
    def modulus_int(self) -> int:
        return sum(c * self.q**i for i, c in enumerate(self.modulus))

    def __str__(self):
        return f"q={self.q},m={self.m},poly={self.modulus_int:#x}"


def parse_key_values(text: str, required=(), optional=()) -> dict[str, int]:
    values = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        key, sep, raw = item.partition("=")
        key = key.strip()
        if not sep or key not in (*required, *optional):
            raise FormatError(f"unexpected item {item!r} in {text!r}")
        if key in values:
            raise FormatError(f"duplicate key {key!r} in {text!r}")
        try:
            values[key] = int(raw.strip(), 0)
        except ValueError:
            raise FormatError(f"{key} must be an integer in {text!r}") from None
    missing = [key for key in required if key not in values]
    if missing:
        raise FormatError(f"missing {', '.join(missing)} in {text!r}")
    return values


class ExtensionField:
    """F_{q^m} together with its prime subfield F_q.

    Arithmetic helpers check operands belong to this field and feed the
    operation counter used for complexity measurements.
    """

    def __init__(self, params: FieldParams):
        self.params = params
        self.GFq = galois.GF(params.q)
        if params.m == 1:
            self.GF = self.GFq
        else:
            poly = galois.Poly(list(reversed(params.modulus)), field=self.GFq)
            try:
                self.GF = galois.GF(params.q**params.m, irreducible_poly=poly)
            except ValueError as e:
                raise ParameterError(f"modulus of {params} is not irreducible: {e}") from e
        # largest s with q^s usable as a single exponent
        self._frob_chunk = max(1, int(62 // math.log2(params.q)))

    @classmethod
    def create(cls, q: int, m: int, modulus: int | None = None) -> "ExtensionField":
        return cls(FieldParams.create(q, m, modulus))

    @classmethod
    def parse(cls, text: str) -> "ExtensionField":
        return cls(FieldParams.parse(text))

    @property
    def q(self) -> int:
        return self.params.q

    @property
    def m(self) -> int:
        return self.params.m

    @property
    def order(self) -> int:
        return self.params.q**self.params.m

    def __repr__(self):
        return f"ExtensionField({self.params})"

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and other.params == self.params

    def __hash__(self):
        return hash(self.params)

    # -- construction -----------------------------------------------------

    def check(self, *arrays):
        for a in arrays:
            if not isinstance(a, self.GF):
                raise FieldMismatchError(
                    f"expected an element of GF({self.q}^{self.m}), got {type(a).__name__}"
                )

    def elements(self, values) -> galois.FieldArray:
        return self.GF(values)

    def zeros(self, shape) -> galois.FieldArray:
        return self.GF.Zeros(shape)

    @property
    def zero(self):
        return self.GF(0)

    @property
    def one(self):
        return self.GF(1)

    @cached_property
    def basis(self) -> galois.FieldArray:
        """alpha^0, ..., alpha^(m-1)."""
        return self.GF([self.q**i for i in range(self.m)])

    def embed(self, values) -> galois.FieldArray:
        """Read F_q values as constants of F_{q^m}."""
        return self.GF(np.asarray(values).view(np.ndarray).astype(np.int64))

    def to_matrix(self, v) -> galois.FieldArray:
        """Expand (..., n) over F_{q^m} into (..., n, m) over F_q."""
        self.check(v)
        if self.m == 1:
            return self.GFq(np.asarray(v)[..., np.newaxis])
        return self.GFq(np.asarray(v.vector())[..., ::-1])

    def from_matrix(self, M) -> galois.FieldArray:
        """Inverse of ``to_matrix``."""
        raw = np.asarray(M)
        if raw.shape[-1:] != (self.m,):
            raise FieldMismatchError(
                f"rows must have length {self.m}, got shape {raw.shape}"
            )
        if self.m == 1:
            return self.GF(raw[..., 0])
        return self.GF.Vector(raw[..., ::-1])

    def coeffs(self, a) -> tuple[int, ...]:
        return tuple(int(c) for c in self.to_matrix(a).reshape(-1))

    def random(self, shape, rng: np.random.Generator) -> galois.FieldArray:
        shape = (shape,) if isinstance(shape, int) else tuple(shape)
        return self.from_matrix(self.GFq(rng.integers(0, self.q, size=shape + (self.m,))))

    def random_independent(self, count: int, rng: np.random.Generator) -> galois.FieldArray:
        """``count`` elements linearly independent over F_q."""
        if count > self.m:
            raise ParameterError(f"at most {self.m} independent elements exist")
        while True:
            M = self.GFq(rng.integers(0, self.q, size=(count, self.m)))
            if count == 0 or np.linalg.matrix_rank(M) == count:
                return self.from_matrix(M)

    # -- arithmetic ---------------------------------------------------------

    def add(self, a, b):
        self.check(a, b)
        _tally("add", max(np.size(a), np.size(b)))
        return a + b

    def sub(self, a, b):
        self.check(a, b)
        _tally("add", max(np.size(a), np.size(b)))
        return a - b

    def mul(self, a, b):
        self.check(a, b)
        _tally("mul", max(np.size(a), np.size(b)))
        return a * b

    def inv(self, a):
        self.check(a)
        if np.any(a == 0):
            raise ZeroDivisionError("zero has no multiplicative inverse")
        _tally("inv", np.size(a))
        return a**-1

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, exponent: int):
        self.check(a)
        _tally("mul", np.size(a))
        return a**exponent

    def frob_pow(self, a, i: int):
        """a^(q^i); negative i is taken mod m."""
        self.check(a)
        i %= self.m
        _tally("frob", np.size(a))
        out = a.copy()
        while i:
            step = min(i, self._frob_chunk)
            out = out ** (self.q**step)
            i -= step
        return out

    def matmul(self, A, B):
        self.check(A, B)
        inner = A.shape[-1]
        outer = np.size(A) // max(inner, 1) * (B.shape[-1] if B.ndim > 1 else 1)
        _tally("mul", outer * inner)
        _tally("add", outer * max(inner - 1, 0))
        return A @ B

    # -- text ---------------------------------------------------------------

    def to_hex(self, a) -> str:
        self.check(a)
        return format(int(a), "x")

    def from_hex(self, text: str):
        try:
            value = int(text.strip(), 16)
        except ValueError:
            raise FormatError(f"not a hex field element: {text!r}") from None
        if value >= self.order:
            raise FormatError(f"{text!r} is outside GF({self.q}^{self.m})")
        return self.GF(value)


def as_field(field) -> ExtensionField:
    if isinstance(field, ExtensionField):
        return field
    if isinstance(field, FieldParams):
        return ExtensionField(field)
    if isinstance(field, str):
        return ExtensionField.parse(field)
    raise FieldMismatchError(f"cannot build a field from {field!r}")
