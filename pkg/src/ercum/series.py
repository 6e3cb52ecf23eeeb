"""Truncated formal power series with exact coefficients.

Coefficients are Fractions, or CPoly values (univariate polynomials in a
named parameter, usually c, with Fraction coefficients).  Everything here is
exact; convergence of the fixed-point solvers means coefficientwise
stabilization, never a float tolerance.

The solvers cover the functional equations used elsewhere in the package:
exp-type fixed points t = exp(2zt) and H = exp(qz H^(q-1)), Lagrange
inversion for psi = z*phi(psi), and the two printed variants of the rooted
tree equation for W(z) with c-dependent coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from .errors import SolverError, UsageError

Number = Union[int, Fraction]
Scalar = Union[int, Fraction, "CPoly"]


def _as_fraction(x: Number) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise UsageError(f"expected an exact number, got {type(x).__name__}")


# ---------------------------------------------------------------------------
# polynomials in one parameter
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CPoly:
    """Polynomial in one parameter with Fraction coefficients.

    coeffs[i] multiplies var**i; trailing zeros are trimmed, so the zero
    polynomial has coeffs == ().  An optional degree bound guards against
    runaway symbolic growth: arithmetic whose result would exceed the bound
    raises SolverError.
    """

    coeffs: tuple[Fraction, ...]
    var: str = "c"
    bound: int | None = None

    @staticmethod
    def of(value: Number, var: str = "c", bound: int | None = None) -> "CPoly":
        v = _as_fraction(value)
        return CPoly((v,) if v else (), var, bound)

    @staticmethod
    def variable(var: str = "c", bound: int | None = None) -> "CPoly":
        return CPoly((Fraction(0), Fraction(1)), var, bound)

    @staticmethod
    def from_coeffs(coeffs: Iterable[Number], var: str = "c",
                    bound: int | None = None) -> "CPoly":
        return CPoly(_trim(tuple(_as_fraction(x) for x in coeffs)), var, bound)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise UsageError(f"{self} is not constant in {self.var}")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __call__(self, value: Number) -> Fraction:
        v = _as_fraction(value)
        acc = Fraction(0)
        for a in reversed(self.coeffs):
            acc = acc * v + a
        return acc

    def _lift(self, other) -> "CPoly | None":
        if isinstance(other, CPoly):
            if other.var != self.var and self.coeffs and other.coeffs \
                    and not (self.is_constant() and other.is_constant()):
                raise UsageError(f"mixed parameters {self.var!r} and {other.var!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return CPoly.of(other, self.var)
        return None

    def _bound_with(self, other: "CPoly") -> int | None:
        bs = [b for b in (self.bound, other.bound) if b is not None]
        return min(bs) if bs else None

    def _check(self, coeffs: tuple[Fraction, ...], bound: int | None) -> "CPoly":
        coeffs = _trim(coeffs)
        if bound is not None and len(coeffs) - 1 > bound:
            raise SolverError(
                f"degree {len(coeffs) - 1} in {self.var} exceeds bound {bound}")
        return CPoly(coeffs, self.var, bound)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        coeffs = tuple(self.coeff(i) + o.coeff(i) for i in range(n))
        return self._check(coeffs, self._bound_with(o))

    __radd__ = __add__

    def __neg__(self):
        return CPoly(tuple(-a for a in self.coeffs), self.var, self.bound)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return CPoly((), self.var, self._bound_with(o))
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return self._check(tuple(out), self._bound_with(o))

    __rmul__ = __mul__

    def __pow__(self, m: int):
        if not isinstance(m, int) or m < 0:
            raise UsageError("polynomial power must be a non-negative integer")
        acc = CPoly.of(1, self.var, self.bound)
        for _ in range(m):
            acc = acc * self
        return acc

    def shift_down(self, k: int = 1) -> "CPoly":
        """Exact division by var**k; lower coefficients must vanish."""
        if any(self.coeff(i) for i in range(min(k, len(self.coeffs)))):
            raise UsageError(f"{self} is not divisible by {self.var}**{k}")
        return CPoly(self.coeffs[k:], self.var, self.bound)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if isinstance(other, CPoly):
            if self.coeffs == () or other.coeffs == ():
                return self.coeffs == other.coeffs
            if self.is_constant() and other.is_constant():
                return self.coeffs == other.coeffs
            return self.var == other.var and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.coeffs, self.var))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            if i == 0:
                parts.append(str(a))
            else:
                v = self.var if i == 1 else f"{self.var}^{i}"
                parts.append(v if a == 1 else f"{a}*{v}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def _trim(coeffs: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return coeffs[:n]


def _is_zero(x: Scalar) -> bool:
    if isinstance(x, CPoly):
        return x.is_zero()
    return x == 0


def _scalar_eq(a: Scalar, b: Scalar) -> bool:
    return a == b


# ---------------------------------------------------------------------------
# truncated series
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TruncatedSeries:
    """Power series modulo z^(order+1); exactly order+1 stored coefficients."""

    order: int
    coeffs: tuple

    def __post_init__(self):
        if self.order < 0:
            raise UsageError("order must be non-negative")
        if len(self.coeffs) != self.order + 1:
            raise UsageError(
                f"need {self.order + 1} coefficients, got {len(self.coeffs)}")

    @staticmethod
    def from_coeffs(coeffs: Sequence[Scalar], order: int | None = None) -> "TruncatedSeries":
        cs = list(coeffs)
        if order is None:
            order = len(cs) - 1
        if len(cs) < order + 1:
            cs += [Fraction(0)] * (order + 1 - len(cs))
        return TruncatedSeries(order, tuple(cs[: order + 1]))

    @staticmethod
    def constant(value: Scalar, order: int) -> "TruncatedSeries":
        return TruncatedSeries.from_coeffs([value], order)

    @staticmethod
    def zero(order: int) -> "TruncatedSeries":
        return TruncatedSeries.constant(Fraction(0), order)

    @staticmethod
    def z(order: int) -> "TruncatedSeries":
        return TruncatedSeries.from_coeffs([Fraction(0), Fraction(1)], order)

    def coeff(self, k: int) -> Scalar:
        return self.coeffs[k]

    def _match(self, other: "TruncatedSeries"):
        if self.order != other.order:
            raise UsageError(
                f"mismatched truncation orders {self.order} and {other.order}")

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            self._match(other)
            return TruncatedSeries(self.order, tuple(
                a + b for a, b in zip(self.coeffs, other.coeffs)))
        if isinstance(other, (int, Fraction, CPoly)):
            cs = list(self.coeffs)
            cs[0] = cs[0] + other
            return TruncatedSeries(self.order, tuple(cs))
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, TruncatedSeries):
            self._match(other)
            return self + (-other)
        if isinstance(other, (int, Fraction, CPoly)):
            return self + (-other if not isinstance(other, int) else -other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            self._match(other)
            out = []
            for n in range(self.order + 1):
                acc = Fraction(0)
                for i in range(n + 1):
                    a, b = self.coeffs[i], other.coeffs[n - i]
                    if not (_is_zero(a) or _is_zero(b)):
                        acc = acc + a * b
                out.append(acc)
            return TruncatedSeries(self.order, tuple(out))
        if isinstance(other, (int, Fraction, CPoly)):
            return TruncatedSeries(self.order, tuple(a * other for a in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, m: int):
        if not isinstance(m, int) or m < 0:
            raise UsageError("series power must be a non-negative integer")
        acc = TruncatedSeries.constant(Fraction(1), self.order)
        base = self
        while m:
            if m & 1:
                acc = acc * base
            base = base * base if m > 1 else base
            m >>= 1
        return acc

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and all(
            _scalar_eq(a, b) for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __str__(self):
        return "[" + ", ".join(str(c) for c in self.coeffs) + "]"


def seriesArithmetic(a: TruncatedSeries, b: TruncatedSeries, op: str,
                     m: int = 0) -> TruncatedSeries:
    """Dispatch helper kept for symmetry with the table of operations."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "pow":
        return a ** m
    raise UsageError(f"unknown op {op!r}")


def seriesExp(a: TruncatedSeries) -> TruncatedSeries:
    """exp(a) mod z^(K+1) via (exp a)' = a' exp a; needs a(0) == 0 exactly."""
    if not _is_zero(a.coeffs[0]):
        raise UsageError("seriesExp needs a zero constant term")
    K = a.order
    b: list[Scalar] = [Fraction(1)]
    for n in range(1, K + 1):
        acc = Fraction(0)
        for j in range(1, n + 1):
            aj = a.coeffs[j]
            if not _is_zero(aj):
                acc = acc + (j * aj) * b[n - j]
        b.append(acc * Fraction(1, n))
    return TruncatedSeries(K, tuple(b))


def solveFixedPoint(F: Callable[[TruncatedSeries], TruncatedSeries],
                    order: int,
                    start: TruncatedSeries | None = None) -> TruncatedSeries:
    """Iterate S <- F(S) to exact stabilization.

    F must determine at least one further coefficient per pass, so the
    solution is reached within order+1 improvement steps.
    """
    s = start if start is not None else TruncatedSeries.constant(Fraction(1), order)
    for _ in range(order + 2):
        s2 = F(s)
        if s2 == s:
            return s
        s = s2
    raise SolverError(f"fixed point did not stabilize within {order + 1} iterations")


def solveLagrange(phi: TruncatedSeries, order: int) -> TruncatedSeries:
    """Solve psi = z*phi(psi) by Lagrange inversion.

    psi_k = (1/k) [w^(k-1)] phi(w)^k, with phi given as a series in w.
    """
    if not _scalar_eq(phi.coeffs[0], Fraction(1)):
        raise UsageError("solveLagrange needs phi(0) == 1")
    psi = [Fraction(0)] * (order + 1)
    power = TruncatedSeries.constant(Fraction(1), phi.order)
    for k in range(1, order + 1):
        power = power * phi
        psi[k] = power.coeffs[k - 1] * Fraction(1, k)
    return TruncatedSeries(order, tuple(psi))


def solveWHat(c: Number | None, order: int, variant: str) -> TruncatedSeries:
    """Rooted-tree generating function W(z), both printed variants.

    variant 'eq66':  W = 1 - c e^{2z} + c exp{2z [e^{2z} W - 1]}
    variant 'eq68':  W = 1 + c e^{2z} (exp{2z e^{2z} W} - 1)

    The two differ (they should not); both are kept computable so the
    discrepancy can be measured against the diagram census.  Coefficients are
    CPoly in c; pass c=None for the symbolic parameter.
    """
    if variant not in ("eq66", "eq68"):
        raise UsageError(f"unknown variant {variant!r}")
    if c is None:
        cc: Scalar = CPoly.variable("c", bound=order + 2)
    else:
        cc = CPoly.of(c, "c", bound=order + 2)
    z = TruncatedSeries.z(order)
    e2z = seriesExp(2 * z)

    if variant == "eq66":
        def F(w: TruncatedSeries) -> TruncatedSeries:
            inner = seriesExp(2 * z * (e2z * w - 1))
            return 1 + (-cc) * e2z + cc * inner
    else:
        def F(w: TruncatedSeries) -> TruncatedSeries:
            inner = seriesExp(2 * z * e2z * w)
            return 1 + cc * e2z * (inner - TruncatedSeries.constant(Fraction(1), order))

    return solveFixedPoint(F, order)
