"""Coordinate charts, scalar fields on them, and tensor field containers.

Fields are anything with ``eval_jet(point, order) -> Jet`` and an integer
``derivative_depth`` (how many extra base-field orders an evaluation burns
internally).  Evaluations are memoized per (point, order): the 4D pipelines
ask the same base quantities for every metric component.
"""

from __future__ import annotations

import numpy as np

from . import expr as ex
from . import jets
from .jets import Jet, JetSpec

__all__ = [
    "Chart",
    "ExprField",
    "LambdaField",
    "ConstField",
    "MetricField",
    "FormField",
    "ChartError",
    "parse_expr",
    "holomorphy_residual",
    "sample_points",
]


class ChartError(ValueError):
    pass


class Chart:
    """A coordinate chart: names, sample box and exclusion fields.

    ``complex_pair`` designates two coordinates (x, y) such that expressions
    may use zeta = x + i*y.  Exclusion fields must stay bounded away from 0
    on admissible points; they are filled in after construction because they
    are themselves fields on this chart.
    """

    def __init__(self, coord_names, sample_domain, complex_pair=None, margin=0.05):
        self.coord_names = tuple(coord_names)
        self.dim = len(self.coord_names)
        self.sample_domain = dict(sample_domain)
        self.complex_pair = complex_pair
        self.exclusions = []
        self.margin = margin
        for name in self.sample_domain:
            if name not in self.coord_names:
                raise ChartError(f"sample_domain key {name!r} is not a coordinate")

    def index(self, name: str) -> int:
        return self.coord_names.index(name)

    def spec(self, order: int, kind: str = "real") -> JetSpec:
        return JetSpec(self.dim, order, kind)

    def coordinate_jets(self, point, order, kind="real"):
        spec = self.spec(order, kind)
        return {
            name: jets.variable(spec, k, point[k]) for k, name in enumerate(self.coord_names)
        }

    def admissible(self, point, margin=None) -> bool:
        m = self.margin if margin is None else margin
        for field in self.exclusions:
            if abs(field.eval_jet(tuple(point), 0).value) < m:
                return False
        return True


class _MemoField:
    """Memoization shared by all field kinds."""

    def __init__(self):
        self._cache = {}

    def eval_jet(self, point, order) -> Jet:
        key = (tuple(point), order)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._evaluate(key[0], order)
            self._cache[key] = hit
        return hit

    def _evaluate(self, point, order):
        raise NotImplementedError


class ConstField(_MemoField):
    derivative_depth = 0

    def __init__(self, chart: Chart, value: float):
        super().__init__()
        self.chart = chart
        self.value = value

    def _evaluate(self, point, order):
        return jets.constant(self.chart.spec(order), self.value)


class ExprField(_MemoField):
    """A parsed closed-form expression evaluated to jets on a chart.

    Real-valued by default: complex intermediate arithmetic is allowed but
    the result must have negligible imaginary part.  Pass real_valued=False
    to obtain the raw (complex) jet.
    """

    derivative_depth = 0

    def __init__(self, chart: Chart, source, params=None, real_valued=True):
        super().__init__()
        self.chart = chart
        self.params = dict(params or {})
        declared = set(chart.coord_names) | set(self.params)
        if chart.complex_pair is not None:
            declared.add("zeta")
        if isinstance(source, str):
            self.source = source
            self.ast = ex.parse(source, declared)
        else:
            self.ast = source
            self.source = ex.pretty(source)
            undeclared = ex.free_identifiers(self.ast) - declared
            if undeclared:
                raise ex.UndeclaredIdentifierError(sorted(undeclared)[0], 0)
        self.real_valued = real_valued
        self._complex = ex.uses_complex(self.ast) or any(
            isinstance(v, complex) for v in self.params.values()
        )

    def _evaluate(self, point, order):
        kind = "complex" if self._complex else "real"
        env = self.chart.coordinate_jets(point, order, kind)
        if self.chart.complex_pair is not None and kind == "complex":
            xn, yn = self.chart.complex_pair
            env["zeta"] = env[xn] + constant_like(env[xn], 1j) * env[yn]
        spec = self.chart.spec(order, kind)
        for name, value in self.params.items():
            env[name] = jets.constant(spec, value)
        jet = _eval_ast(self.ast, env, spec)
        if self.real_valued and kind == "complex":
            resid = jet.imag_part().max_abs()
            scale = max(1.0, jet.real_part().max_abs())
            if resid > 1e-9 * scale:
                raise ChartError(
                    f"expression {self.source!r} flagged real-valued has imaginary "
                    f"residual {resid:.3e} at {point}"
                )
            return jet.real_part()
        return jet

    def eval_complex_jet(self, point, order) -> Jet:
        key = (tuple(point), order, "c")
        hit = self._cache.get(key)
        if hit is None:
            kind = "complex"
            env = self.chart.coordinate_jets(point, order, kind)
            if self.chart.complex_pair is not None:
                xn, yn = self.chart.complex_pair
                env["zeta"] = env[xn] + constant_like(env[xn], 1j) * env[yn]
            spec = self.chart.spec(order, kind)
            for name, value in self.params.items():
                env[name] = jets.constant(spec, value)
            hit = _eval_ast(self.ast, env, spec)
            self._cache[key] = hit
        return hit


class LambdaField(_MemoField):
    """Derived evaluator (point, order) -> Jet with a declared depth."""

    def __init__(self, chart: Chart, fn, depth=0, name=""):
        super().__init__()
        self.chart = chart
        self._fn = fn
        self.derivative_depth = depth
        self.name = name

    def _evaluate(self, point, order):
        return self._fn(point, order)


def partial_field(field, var: int) -> LambdaField:
    """Coordinate partial derivative of a field, as a field."""

    def fn(point, order):
        return jets.jet_partial_derivative(field.eval_jet(point, order + 1), var)

    return LambdaField(field.chart, fn, depth=field.derivative_depth + 1,
                       name=f"d{var}")


def constant_like(jet: Jet, value) -> Jet:
    return jets.constant(jet.spec, value)


def _eval_ast(node, env, spec):
    if isinstance(node, ex.Num):
        return jets.constant(spec, node.value)
    if isinstance(node, ex.Imag):
        if spec.scalar_kind != "complex":
            raise ChartError("imaginary unit in a real-only evaluation")
        return jets.constant(spec, 1j)
    if isinstance(node, ex.Var):
        try:
            return env[node.name]
        except KeyError:
            raise ex.UndeclaredIdentifierError(node.name, 0) from None
    if isinstance(node, ex.Neg):
        return -_eval_ast(node.arg, env, spec)
    if isinstance(node, ex.Bin):
        if node.op == "^":
            base = _eval_ast(node.left, env, spec)
            if isinstance(node.right, ex.Num) or (
                isinstance(node.right, ex.Neg) and isinstance(node.right.arg, ex.Num)
            ):
                p = node.right.value if isinstance(node.right, ex.Num) else -node.right.arg.value
                if float(p).is_integer():
                    return jets.ipow(base, int(p))
                return jets.jet_elementary("pow_real", base, float(p))
            power = _eval_ast(node.right, env, spec)
            return jets.exp(power * jets.log(base))
        a = _eval_ast(node.left, env, spec)
        b = _eval_ast(node.right, env, spec)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        return a / b
    if isinstance(node, ex.Call):
        arg = _eval_ast(node.arg, env, spec)
        if node.fn == "re":
            out = arg.real_part()
        elif node.fn == "im":
            out = arg.imag_part()
        elif node.fn == "conj":
            return arg.conj()
        elif node.fn == "abs2":
            out = (arg * arg.conj()).real_part()
        else:
            return jets.jet_elementary(node.fn, arg)
        return out.to_complex() if spec.scalar_kind == "complex" else out
    raise TypeError(f"not an AST node: {node!r}")


def parse_expr(source: str, declared) -> object:
    """Module-level parse hook (ASTs are plain data; see expr module)."""
    return ex.parse(source, declared)


def holomorphy_residual(field: ExprField, point, order=1) -> float:
    """Max Cauchy-Riemann residual of an expression in zeta at ``point``.

    The two residuals are du/dx - dv/dy and du/dy + dv/dx, extracted from
    the complex jet over the chart's designated real coordinate pair.
    """
    chart = field.chart
    if chart.complex_pair is None:
        raise ChartError("chart has no designated complex coordinate pair")
    # non-analytic operations (conj, re, ...) are allowed: the residual
    # exposes them instead of rejecting the input
    jet = field.eval_complex_jet(point, max(order, 1))
    ix = chart.index(chart.complex_pair[0])
    iy = chart.index(chart.complex_pair[1])
    fx = jets.jet_partial_derivative(jet, ix)
    fy = jets.jet_partial_derivative(jet, iy)
    # f = u + iv: CR <=> f_y = i f_x
    res = fy - constant_like(fy, 1j) * fx
    return res.max_abs()


def sample_points(chart: Chart, n: int, seed: int, margin=None, max_rejects=20000):
    """Seeded uniform samples from the chart box, honoring exclusions."""
    rng = np.random.default_rng(seed)
    lo = np.array([chart.sample_domain[c][0] for c in chart.coord_names])
    hi = np.array([chart.sample_domain[c][1] for c in chart.coord_names])
    out = []
    rejects = 0
    while len(out) < n:
        p = tuple(lo + (hi - lo) * rng.random(chart.dim))
        if chart.admissible(p, margin):
            out.append(p)
        else:
            rejects += 1
            if rejects > max_rejects:
                raise ChartError(
                    f"rejection sampling exhausted after {max_rejects} tries; "
                    "sample domain is effectively empty"
                )
    return out


class MetricField:
    """Symmetric dim x dim array of component fields plus an orientation sign.

    Components are stored once per unordered index pair, so g_ij = g_ji is
    structural.  ``orientation_sign`` selects the volume form
    sign * sqrt(det g) dx^1 ^ ... ^ dx^n.
    """

    def __init__(self, chart: Chart, components: dict, orientation_sign=1):
        self.chart = chart
        self.orientation_sign = int(orientation_sign)
        if self.orientation_sign not in (1, -1):
            raise ChartError("orientation_sign must be +1 or -1")
        self._comp = {}
        for (i, j), field in components.items():
            self._comp[(min(i, j), max(i, j))] = field
        self.zero = ConstField(chart, 0.0)

    def component(self, i, j):
        return self._comp.get((min(i, j), max(i, j)), self.zero)

    @property
    def derivative_depth(self):
        return max((f.derivative_depth for f in self._comp.values()), default=0)

    def component_jets(self, point, order):
        d = self.chart.dim
        g = np.empty((d, d), dtype=object)
        for i in range(d):
            for j in range(i, d):
                g[i, j] = g[j, i] = self.component(i, j).eval_jet(point, order)
        return g


class FormField:
    """Degree-k form with components stored on increasing index tuples."""

    def __init__(self, chart: Chart, degree: int, components: dict):
        self.chart = chart
        self.degree = int(degree)
        self._comp = {}
        for idx, field in components.items():
            key = tuple(idx) if degree > 1 else ((idx,) if isinstance(idx, int) else tuple(idx))
            if len(key) != self.degree or list(key) != sorted(set(key)):
                raise ChartError(f"component index {key} is not strictly increasing")
            self._comp[key] = field
        self.zero = ConstField(chart, 0.0)

    @classmethod
    def zero_form(cls, chart, degree=1):
        return cls(chart, degree, {})

    def component(self, idx):
        return self._comp.get(tuple(idx), self.zero)

    @property
    def components(self):
        return dict(self._comp)

    @property
    def derivative_depth(self):
        return max((f.derivative_depth for f in self._comp.values()), default=0)

    def component_jets(self, point, order):
        """Full antisymmetric object array of jets."""
        d = self.chart.dim
        spec = JetSpec(d, order)
        arr = np.empty((d,) * self.degree, dtype=object)
        arr[...] = jets.constant(spec, 0.0)
        for idx, field in self._comp.items():
            val = field.eval_jet(point, order)
            for perm, sign in _permutations_with_sign(idx):
                arr[perm] = sign * val if sign < 0 else val
        return arr


def _permutations_with_sign(idx):
    import itertools

    base = list(idx)
    out = []
    for perm in itertools.permutations(range(len(base))):
        sign = _perm_sign(perm)
        out.append((tuple(base[p] for p in perm), sign))
    return out


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign
