"""Dense truncated multivariate Taylor ("jet") arithmetic.

A jet stores the Taylor coefficients of a scalar function at a point, up to
a fixed total order, in graded-lexicographic multi-index order (grade first,
then descending lexicographic within a grade, so for two variables at order
two the order is 1, x, y, x^2, xy, y^2).  The degree-0 coefficient is the
value at the expansion point.  All derivatives used anywhere in this package
come from this module: truncation is exact, never approximate-then-rounded.

Multiplication is the truncated convolution; division and the elementary
functions go through univariate series composition around the constant term.
Coefficients are float64 or complex128 arrays depending on ``scalar_kind``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "JetSpec",
    "Jet",
    "DomainError",
    "SpecMismatchError",
    "OrderError",
    "constant",
    "variable",
    "jet_arith",
    "jet_elementary",
    "jet_partial_derivative",
    "derivative_extract",
    "DIV_EPS",
]

# Near-zero threshold for division/log/sqrt domain checks.  Chart exclusions
# keep sample points far from singular sets, so violations signal a domain
# bug rather than borderline roundoff.
DIV_EPS = 1e-13


class DomainError(ArithmeticError):
    """Constant term outside the domain of the requested operation."""


class SpecMismatchError(ValueError):
    """Operands carry different JetSpecs."""


class OrderError(ValueError):
    """Requested operation needs a higher truncation order than available."""


@dataclass(frozen=True)
class JetSpec:
    """Shape of a jet: variable count, truncation order and scalar kind."""

    n_vars: int
    order: int
    scalar_kind: str = "real"  # "real" | "complex"

    def __post_init__(self):
        if self.n_vars < 1:
            raise ValueError("n_vars must be >= 1")
        if self.order < 0:
            raise ValueError("order must be >= 0")
        if self.scalar_kind not in ("real", "complex"):
            raise ValueError(f"unknown scalar_kind {self.scalar_kind!r}")

    @property
    def n_coeffs(self) -> int:
        return math.comb(self.n_vars + self.order, self.order)

    @property
    def dtype(self):
        return np.complex128 if self.scalar_kind == "complex" else np.float64

    def with_order(self, order: int) -> "JetSpec":
        return JetSpec(self.n_vars, order, self.scalar_kind)

    def with_kind(self, kind: str) -> "JetSpec":
        return JetSpec(self.n_vars, self.order, kind)


@lru_cache(maxsize=None)
def multi_indices(n_vars: int, order: int) -> tuple:
    """All multi-indices with |m| <= order, graded then descending-lex."""
    out = []
    for deg in range(order + 1):
        out.extend(sorted(_indices_of_degree(n_vars, deg), reverse=True))
    return tuple(out)


def _indices_of_degree(n_vars, deg):
    if n_vars == 1:
        return [(deg,)]
    out = []
    for first in range(deg + 1):
        out.extend((first,) + rest for rest in _indices_of_degree(n_vars - 1, deg - first))
    return out


@lru_cache(maxsize=None)
def _index_positions(n_vars: int, order: int) -> dict:
    return {m: i for i, m in enumerate(multi_indices(n_vars, order))}


@lru_cache(maxsize=None)
def _mul_table(n_vars: int, order: int):
    """Index triples (I, J, K) with m_I + m_J = m_K, |m_K| <= order."""
    idx = multi_indices(n_vars, order)
    pos = _index_positions(n_vars, order)
    I, J, K = [], [], []
    for i, mi in enumerate(idx):
        di = sum(mi)
        for j, mj in enumerate(idx):
            if di + sum(mj) > order:
                continue
            I.append(i)
            J.append(j)
            K.append(pos[tuple(a + b for a, b in zip(mi, mj))])
    return np.asarray(I), np.asarray(J), np.asarray(K)


@lru_cache(maxsize=None)
def _diff_table(n_vars: int, order: int, var: int):
    """(src, dst, factor) arrays realizing d/dx_var : order -> order-1."""
    idx_lo = multi_indices(n_vars, order - 1)
    pos_hi = _index_positions(n_vars, order)
    src, dst, fac = [], [], []
    for k, m in enumerate(idx_lo):
        m_up = list(m)
        m_up[var] += 1
        src.append(pos_hi[tuple(m_up)])
        dst.append(k)
        fac.append(m_up[var])
    return np.asarray(src), np.asarray(dst), np.asarray(fac, dtype=np.float64)


@lru_cache(maxsize=None)
def _truncate_slice(n_vars: int, order_hi: int, order_lo: int) -> int:
    """Coefficient count of the lower order (a prefix in graded-lex order)."""
    return math.comb(n_vars + order_lo, order_lo)


class Jet:
    """Immutable truncated Taylor expansion; supports +, -, *, /, ** and
    the elementary functions in this module."""

    __slots__ = ("spec", "c")

    def __init__(self, spec: JetSpec, coeffs):
        c = np.asarray(coeffs, dtype=spec.dtype)
        if c.shape != (spec.n_coeffs,):
            raise ValueError(f"expected {spec.n_coeffs} coefficients, got {c.shape}")
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "c", c)

    def __setattr__(self, *a):
        raise AttributeError("Jet is immutable")

    # -- basic views -------------------------------------------------------

    @property
    def value(self):
        """Value at the expansion point (degree-0 coefficient)."""
        v = self.c[0]
        return complex(v) if self.spec.scalar_kind == "complex" else float(v)

    def truncate(self, order: int) -> "Jet":
        if order > self.spec.order:
            raise OrderError(f"cannot truncate order {self.spec.order} jet to {order}")
        n = _truncate_slice(self.spec.n_vars, self.spec.order, order)
        return Jet(self.spec.with_order(order), self.c[:n])

    def to_complex(self) -> "Jet":
        if self.spec.scalar_kind == "complex":
            return self
        return Jet(self.spec.with_kind("complex"), self.c.astype(np.complex128))

    def real_part(self) -> "Jet":
        if self.spec.scalar_kind == "real":
            return self
        return Jet(self.spec.with_kind("real"), self.c.real.copy())

    def imag_part(self) -> "Jet":
        if self.spec.scalar_kind == "real":
            return constant(self.spec, 0.0)
        return Jet(self.spec.with_kind("real"), self.c.imag.copy())

    def conj(self) -> "Jet":
        if self.spec.scalar_kind == "real":
            return self
        return Jet(self.spec, np.conj(self.c))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.c)))

    def __repr__(self):
        return f"Jet(n={self.spec.n_vars}, k={self.spec.order}, c={self.c!r})"

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Jet):
            if other.spec != self.spec:
                raise SpecMismatchError(f"{other.spec} vs {self.spec}")
            return other
        if isinstance(other, (int, float, np.integer, np.floating)):
            return constant(self.spec, other)
        if isinstance(other, (complex, np.complexfloating)):
            if self.spec.scalar_kind != "complex":
                raise SpecMismatchError("complex scalar with real jet")
            return constant(self.spec, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Jet(self.spec, self.c + o.c)

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.spec, -self.c)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Jet(self.spec, self.c - o.c)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Jet(self.spec, o.c - self.c)

    def __mul__(self, other):
        if isinstance(other, (int, float, np.integer, np.floating)):
            return Jet(self.spec, self.c * other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.integer, np.floating)):
            return Jet(self.spec, self.c / other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _mul(self, _reciprocal(o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _mul(o, _reciprocal(self))

    def __pow__(self, p):
        if isinstance(p, (int, np.integer)):
            return ipow(self, int(p))
        if isinstance(p, (float, np.floating)) and float(p).is_integer():
            return ipow(self, int(p))
        return jet_elementary("pow_real", self, float(p))


def constant(spec: JetSpec, value) -> Jet:
    c = np.zeros(spec.n_coeffs, dtype=spec.dtype)
    c[0] = value
    return Jet(spec, c)


def variable(spec: JetSpec, var: int, value) -> Jet:
    """The coordinate function x_var expanded at x_var = value."""
    if not 0 <= var < spec.n_vars:
        raise ValueError(f"variable index {var} out of range")
    c = np.zeros(spec.n_coeffs, dtype=spec.dtype)
    c[0] = value
    if spec.order >= 1:
        e = tuple(1 if i == var else 0 for i in range(spec.n_vars))
        c[_index_positions(spec.n_vars, spec.order)[e]] = 1.0
    return Jet(spec, c)


def _mul(a: Jet, b: Jet) -> Jet:
    I, J, K = _mul_table(a.spec.n_vars, a.spec.order)
    terms = a.c[I] * b.c[J]
    n = a.spec.n_coeffs
    if a.spec.scalar_kind == "complex":
        out = np.bincount(K, weights=terms.real, minlength=n) + 1j * np.bincount(
            K, weights=terms.imag, minlength=n
        )
    else:
        out = np.bincount(K, weights=terms, minlength=n)
    return Jet(a.spec, out)


def ipow(a: Jet, p: int) -> Jet:
    if p < 0:
        return ipow(_reciprocal(a), -p)
    result = constant(a.spec, 1.0)
    base = a
    while p:
        if p & 1:
            result = _mul(result, base)
        base = _mul(base, base) if p > 1 else base
        p >>= 1
    return result


def _nilpotent_part(a: Jet) -> Jet:
    c = a.c.copy()
    c[0] = 0.0
    return Jet(a.spec, c)


def _compose_series(coeffs, a: Jet) -> Jet:
    """Horner evaluation of sum coeffs[k] * (a - a0)^k, truncated."""
    u = _nilpotent_part(a)
    res = constant(a.spec, coeffs[-1])
    for ck in coeffs[-2::-1]:
        res = _mul(res, u) + ck
    return res


def _check_positive(c, what, eps):
    if isinstance(c, complex):
        if abs(c) <= eps:
            raise DomainError(f"{what} of jet with near-zero constant term {c!r}")
    else:
        if c <= eps:
            raise DomainError(f"{what} of jet with non-positive constant term {c!r}")


def _reciprocal(b: Jet, eps: float = DIV_EPS) -> Jet:
    c0 = b.value
    if abs(c0) <= eps:
        raise DomainError(
            f"division by jet with near-zero constant term {c0!r}; "
            "this usually signals a chart-domain violation"
        )
    k = b.spec.order
    coeffs = [(-1.0) ** j / c0 ** (j + 1) for j in range(k + 1)]
    return _compose_series(coeffs, b)


def jet_arith(a: Jet, b: Jet, op: str) -> Jet:
    """Dispatch form of the ring operations (operators are preferred)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def _binom_real(p: float, k: int) -> float:
    out = 1.0
    for j in range(k):
        out *= (p - j) / (j + 1)
    return out


def _series_coeffs(f: str, c, order: int, extra=None):
    """Univariate Taylor coefficients of f at the point c, up to ``order``."""
    ks = range(order + 1)
    if f == "exp":
        e = np.exp(c)
        return [e / math.factorial(k) for k in ks]
    if f == "log":
        _check_positive(c, "log", DIV_EPS)
        out = [np.log(c)]
        out += [(-1.0) ** (k - 1) / (k * c**k) for k in range(1, order + 1)]
        return out
    if f == "sin":
        cyc = [np.sin(c), np.cos(c), -np.sin(c), -np.cos(c)]
        return [cyc[k % 4] / math.factorial(k) for k in ks]
    if f == "cos":
        cyc = [np.cos(c), -np.sin(c), -np.cos(c), np.sin(c)]
        return [cyc[k % 4] / math.factorial(k) for k in ks]
    if f == "sinh":
        cyc = [np.sinh(c), np.cosh(c)]
        return [cyc[k % 2] / math.factorial(k) for k in ks]
    if f == "cosh":
        cyc = [np.cosh(c), np.sinh(c)]
        return [cyc[k % 2] / math.factorial(k) for k in ks]
    if f == "sqrt":
        _check_positive(c, "sqrt", DIV_EPS)
        r = np.sqrt(c)
        return [_binom_real(0.5, k) * r / c**k for k in ks]
    if f == "pow_real":
        p = extra
        _check_positive(c, f"real power {p}", DIV_EPS)
        return [_binom_real(p, k) * c ** (p - k) for k in ks]
    if f == "atan":
        # (1+x^2) f'(x) = 1 expanded at c gives the recurrence
        # (1+c^2)(k+1) t_{k+1} + 2ck t_k + (k-1) t_{k-1} = [k == 0].
        d = 1.0 + c * c
        if abs(d) <= DIV_EPS:
            raise DomainError(f"atan at singular point {c!r}")
        t = [np.arctan(c) if not isinstance(c, complex) else np.arctan(c)]
        if order >= 1:
            t.append(1.0 / d)
        for k in range(1, order):
            t.append((-2.0 * c * k * t[k] - (k - 1) * t[k - 1]) / (d * (k + 1)))
        return t
    raise ValueError(f"unknown elementary function {f!r}")


def jet_elementary(f: str, a: Jet, extra=None) -> Jet:
    """Apply an elementary function by univariate series composition."""
    if f == "tan":
        return jet_elementary("sin", a) / jet_elementary("cos", a)
    c0 = a.value
    coeffs = _series_coeffs(f, c0, a.spec.order, extra)
    return _compose_series(coeffs, a)


def jet_partial_derivative(a: Jet, var: int) -> Jet:
    """d/dx_var as a map from order-k jets to order-(k-1) jets."""
    if a.spec.order < 1:
        raise OrderError("cannot differentiate an order-0 jet")
    spec_lo = a.spec.with_order(a.spec.order - 1)
    src, dst, fac = _diff_table(a.spec.n_vars, a.spec.order, var)
    c = np.zeros(spec_lo.n_coeffs, dtype=a.spec.dtype)
    c[dst] = a.c[src] * fac
    return Jet(spec_lo, c)


@lru_cache(maxsize=None)
def _embed_table(n_lo: int, n_hi: int, order: int):
    """Positions of (m, 0, ..., 0) multi-indices inside the larger ring."""
    pos_hi = _index_positions(n_hi, order)
    pad = (0,) * (n_hi - n_lo)
    return np.asarray([pos_hi[m + pad] for m in multi_indices(n_lo, order)])


def embed_jet(a: Jet, n_hi: int) -> Jet:
    """View a jet in n_lo variables as one in n_hi >= n_lo variables, the
    extra (trailing) variables not appearing."""
    if n_hi == a.spec.n_vars:
        return a
    if n_hi < a.spec.n_vars:
        raise ValueError("cannot embed into fewer variables")
    spec_hi = JetSpec(n_hi, a.spec.order, a.spec.scalar_kind)
    c = np.zeros(spec_hi.n_coeffs, dtype=spec_hi.dtype)
    c[_embed_table(a.spec.n_vars, n_hi, a.spec.order)] = a.c
    return Jet(spec_hi, c)


def restrict_jet(a: Jet, n_lo: int) -> Jet:
    """Restrict a jet to the slice where the trailing variables are frozen
    at their expansion-point values (drops their derivative data)."""
    if n_lo == a.spec.n_vars:
        return a
    spec_lo = JetSpec(n_lo, a.spec.order, a.spec.scalar_kind)
    return Jet(spec_lo, a.c[_embed_table(n_lo, a.spec.n_vars, a.spec.order)])


def derivative_extract(a: Jet, multi_index) -> float | complex:
    """Mixed partial derivative value: coeff(m) times m!."""
    m = tuple(int(v) for v in multi_index)
    if len(m) != a.spec.n_vars:
        raise ValueError("multi-index length mismatch")
    if sum(m) > a.spec.order:
        raise OrderError(f"|{m}| exceeds jet order {a.spec.order}")
    pos = _index_positions(a.spec.n_vars, a.spec.order)[m]
    fact = 1
    for mi in m:
        fact *= math.factorial(mi)
    v = a.c[pos] * fact
    return complex(v) if a.spec.scalar_kind == "complex" else float(v)


# Named elementary wrappers, convenient for expression evaluation.
def exp(a):
    return jet_elementary("exp", a)


def log(a):
    return jet_elementary("log", a)


def sin(a):
    return jet_elementary("sin", a)


def cos(a):
    return jet_elementary("cos", a)


def tan(a):
    return jet_elementary("tan", a)


def sinh(a):
    return jet_elementary("sinh", a)


def cosh(a):
    return jet_elementary("cosh", a)


def sqrt(a):
    return jet_elementary("sqrt", a)


def atan(a):
    return jet_elementary("atan", a)
