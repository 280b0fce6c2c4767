"""Linearized polynomials f(x) = sum_i f_i x^[i] over F_{q^m}, with x^[i] = x^(q^i).

The ring multiplication is composition (the symbolic product), written
``A @ B`` for A(B(x)). It is not commutative.
"""

import numpy as np

from rankcode.errors import ParameterError
from rankcode.field import ExtensionField
from rankcode.linalg import left_null_space


class LinPoly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: ExtensionField, coeffs):
        if not isinstance(coeffs, field.GF):
            coeffs = field.GF(coeffs)
        coeffs = coeffs.reshape(-1)
        nonzero = np.flatnonzero(np.asarray(coeffs))
        size = int(nonzero[-1]) + 1 if nonzero.size else 0
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", coeffs[:size].copy())

    def __setattr__(self, name, value):
        raise AttributeError("LinPoly is immutable")

    @classmethod
    def zero(cls, field: ExtensionField) -> "LinPoly":
        return cls(field, field.zeros(0))

    @classmethod
    def identity(cls, field: ExtensionField) -> "LinPoly":
        return cls(field, field.GF([1]))

    @classmethod
    def monomial(cls, field: ExtensionField, degree: int, coeff=1) -> "LinPoly":
        coeffs = field.zeros(degree + 1)
        coeffs[degree] = coeff
        return cls(field, coeffs)

    @property
    def q_degree(self) -> int:
        """Index of the top nonzero coefficient; -1 for the zero polynomial."""
        return self.coeffs.size - 1

    def is_zero(self) -> bool:
        return self.coeffs.size == 0

    def coefficient(self, i: int):
        if 0 <= i < self.coeffs.size:
            return self.coeffs[i]
        return self.field.zero

    def padded(self, length: int):
        out = self.field.zeros(length)
        size = min(length, self.coeffs.size)
        out[:size] = self.coeffs[:size]
        return out

    def is_monic(self) -> bool:
        return not self.is_zero() and self.coeffs[-1] == 1

    # -- evaluation -----------------------------------------------------------

    def __call__(self, beta):
        """sum_i f_i beta^[i], elementwise over an array of betas."""
        field = self.field
        field.check(beta)
        result = field.GF.Zeros(np.shape(beta))
        power = beta
        for i, c in enumerate(self.coeffs):
            if i:
                power = field.frob_pow(power, 1)
            if c != 0:
                result = field.add(result, field.mul(c, power))
        return result

    # -- ring operations ------------------------------------------------------

    def _check(self, other: "LinPoly"):
        if other.field != self.field:
            raise ParameterError("linearized polynomials over different fields")

    def __add__(self, other: "LinPoly") -> "LinPoly":
        if not isinstance(other, LinPoly):
            return NotImplemented
        self._check(other)
        size = max(self.coeffs.size, other.coeffs.size)
        return LinPoly(self.field, self.field.add(self.padded(size), other.padded(size)))

    def __neg__(self) -> "LinPoly":
        return LinPoly(self.field, -self.coeffs)

    def __sub__(self, other: "LinPoly") -> "LinPoly":
        if not isinstance(other, LinPoly):
            return NotImplemented
        self._check(other)
        size = max(self.coeffs.size, other.coeffs.size)
        return LinPoly(self.field, self.field.sub(self.padded(size), other.padded(size)))

    def __matmul__(self, other: "LinPoly") -> "LinPoly":
        if not isinstance(other, LinPoly):
            return NotImplemented
        self._check(other)
        return symbolic_product(self, other)

    def scale(self, c) -> "LinPoly":
        """c * f(x), a left multiplication by the constant c."""
        return LinPoly(self.field, self.field.mul(c, self.coeffs))

    def twist(self, i: int) -> "LinPoly":
        """Apply [i] to every coefficient."""
        return LinPoly(self.field, self.field.frob_pow(self.coeffs, i))

    def shift(self, s: int) -> "LinPoly":
        """x^[s] @ f."""
        if self.is_zero():
            return self
        field = self.field
        twisted = field.frob_pow(self.coeffs, s)
        return LinPoly(field, np.concatenate([np.zeros(s, dtype=twisted.dtype), np.asarray(twisted)]))

    def truncate(self, t: int) -> "LinPoly":
        """f mod x^[t]."""
        return LinPoly(self.field, self.coeffs[: max(t, 0)])

    # -- comparison and display -----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, LinPoly):
            return NotImplemented
        return (
            other.field == self.field
            and other.coeffs.size == self.coeffs.size
            and bool(np.all(other.coeffs == self.coeffs))
        )

    def __hash__(self):
        return hash((self.field, tuple(np.asarray(self.coeffs).tolist())))

    def __str__(self):
        terms = []
        for i, c in enumerate(np.asarray(self.coeffs).tolist()):
            if c:
                terms.append(f"{c}·x" if i == 0 else f"{c}·x^[{i}]")
        return " + ".join(terms) or "0"

    def __repr__(self):
        return f"LinPoly({self})"


def symbolic_product(A: LinPoly, B: LinPoly) -> LinPoly:
    """A(B(x)): P_l = sum_i A_i B_{l-i}^[i]."""
    field = A.field
    if A.is_zero() or B.is_zero():
        return LinPoly.zero(field)
    tA, tB = A.q_degree, B.q_degree
    P = field.zeros(tA + tB + 1)
    for i, a in enumerate(A.coeffs):
        if a == 0:
            continue
        window = slice(i, i + tB + 1)
        P[window] = field.add(P[window], field.mul(a, field.frob_pow(B.coeffs, i)))
    return LinPoly(field, P)


def product_coefficient(A: LinPoly, B: LinPoly, ell: int):
    """Coefficient of x^[ell] in A @ B from the closed-form double sum."""
    field = A.field
    total = field.zero
    for i in range(max(0, ell - B.q_degree), min(ell, A.q_degree) + 1):
        term = field.mul(A.coefficient(i), field.frob_pow(B.coefficient(ell - i), i))
        total = field.add(total, term)
    return total


def q_reverse(f: LinPoly, t: int) -> LinPoly:
    """fbar_i = f_{t-i}^[i-t] for i = 0..t."""
    if t < f.q_degree:
        raise ParameterError(f"q-reverse needs t >= q-degree {f.q_degree}, got {t}")
    field = f.field
    reversed_coeffs = f.padded(t + 1)[::-1]
    out = field.zeros(t + 1)
    for i in range(t + 1):
        if reversed_coeffs[i] != 0:
            out[i] = field.frob_pow(reversed_coeffs[i], i - t)
    return LinPoly(field, out)


def min_poly(field: ExtensionField, S) -> LinPoly:
    """Monic linearized polynomial of least q-degree vanishing on span(S)."""
    M = LinPoly.identity(field)
    for alpha in field.GF(S).reshape(-1):
        beta = M(alpha)
        if beta == 0:
            continue
        factor = LinPoly(field, [int(-field.power(beta, field.q - 1)), 1])
        M = factor @ M
    return M


def root_space_basis(f: LinPoly):
    """Basis of {beta : f(beta) = 0} via the kernel of f's F_q-matrix."""
    if f.is_zero():
        raise ParameterError("the zero polynomial vanishes everywhere")
    field = f.field
    images = field.to_matrix(f(field.basis))
    kernel = left_null_space(images)
    return field.from_matrix(kernel) if kernel.shape[0] else field.zeros(0)


def right_divide(f: LinPoly, g: LinPoly) -> tuple[LinPoly, LinPoly]:
    """(Q, R) with f = Q @ g + R and q_degree(R) < q_degree(g)."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero linearized polynomial")
    field = f.field
    quotient = LinPoly.zero(field)
    remainder = f
    while remainder.q_degree >= g.q_degree:
        k = remainder.q_degree - g.q_degree
        c = field.div(remainder.coeffs[-1], field.frob_pow(g.coeffs[-1], k))
        term = LinPoly.monomial(field, k, c)
        quotient = quotient + term
        remainder = remainder - term @ g
    return quotient, remainder


def left_divide(f: LinPoly, g: LinPoly) -> tuple[LinPoly, LinPoly]:
    """(Q, R) with f = g @ Q + R and q_degree(R) < q_degree(g)."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero linearized polynomial")
    field = f.field
    tg = g.q_degree
    quotient = LinPoly.zero(field)
    remainder = f
    while remainder.q_degree >= tg:
        k = remainder.q_degree - tg
        c = field.frob_pow(field.div(remainder.coeffs[-1], g.coeffs[-1]), -tg)
        term = LinPoly.monomial(field, k, c)
        quotient = quotient + term
        remainder = remainder - g @ term
    return quotient, remainder
