"""Bivariate expansions sum_n c_n alpha_n(x) beta_n(y) over two orthonormal families.

Such an expansion sums to a nonnegative bivariate density exactly when the
conditional moment polynomials m_n(y) = E[X^n | Y=y] produced by a coupled
triangular recursion form pm sequences for (almost) every y.  At finite
order we sample y on a rational grid: a single negative Hankel determinant
at any grid point refutes positivity outright, while all-nonnegative
determinants certify it to the tested order.

Orthonormal families carry 1/sqrt(norm) scale factors, but the recursion
only ever consumes *ratios* of coefficients.  Whenever every norm ratio
alpha_norm_n / beta_norm_n is a perfect rational square (always true for
equal marginals), the whole computation stays in exact rational arithmetic;
other shapes are rejected rather than approximated.

The correlated-Gaussian pair (Hermite families, c_n = rho^n) is wired in as
the fully worked reference instance, with its closed-form conditional
moments, conditional density, and truncated kernel for cross-checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import InsufficientMomentsError, SchemaError
from .moments import MomentSequence, PmReport, builtin, is_pm
from .orthopoly import (
    OrthoBasis,
    Polynomial,
    _expand_in_basis,
    basis_from_moments,
    hermite,
    hermite_addition_holds,
)
from .rationals import double_factorial, rat, rat_str, rational_sqrt

DEFAULT_GRID = tuple(Fraction(k, 2) for k in range(-4, 5))


@dataclass(frozen=True)
class SupportFlags:
    """Declared support properties of the marginal measures.

    Moments alone cannot decide these at finite order, so the necessary-
    condition battery only runs the checks the caller vouches for.
    """

    zero_in_supp_mu: bool = False
    mu_unbounded: bool = False
    nu_unbounded: bool = False
    same_marginals: bool = False

    def to_json_dict(self) -> dict:
        return {
            "zero_in_supp_mu": self.zero_in_supp_mu,
            "mu_unbounded": self.mu_unbounded,
            "nu_unbounded": self.nu_unbounded,
            "same_marginals": self.same_marginals,
        }

    @classmethod
    def from_json_dict(cls, data: dict, where: str = "$") -> "SupportFlags":
        if not isinstance(data, dict):
            raise SchemaError(f"{where}: expected an object of boolean flags")
        kwargs = {}
        for key in ("zero_in_supp_mu", "mu_unbounded", "nu_unbounded", "same_marginals"):
            val = data.get(key, False)
            if not isinstance(val, bool):
                raise SchemaError(f"{where}.{key}: expected a boolean")
            kwargs[key] = val
        return cls(**kwargs)


@dataclass(frozen=True)
class LancasterProblem:
    """One candidate expansion: two families (as monic bases plus norms) and coefficients.

    The families are interpreted in their orthonormal frames.  Construction
    verifies c_0 = 1 (the conditional measures must be probability measures)
    and that every norm ratio has an exact rational square root, which is
    what keeps the moment recursion rational.
    """

    alpha: OrthoBasis
    beta: OrthoBasis
    coeffs: tuple[Fraction, ...]
    support: SupportFlags = SupportFlags()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(rat(c) for c in self.coeffs))
        n = len(self.coeffs) - 1
        if n < 0:
            raise ValueError("at least the order-0 coefficient is required")
        if self.coeffs[0] != 1:
            raise ValueError(f"c_0 must be 1 for probability conditionals, got {self.coeffs[0]}")
        if self.alpha.order < n or self.beta.order < n:
            raise ValueError(
                f"both families must reach order {n}; got {self.alpha.order} and {self.beta.order}"
            )
        scales = []
        for k in range(n + 1):
            s = rational_sqrt(self.alpha.norms[k] / self.beta.norms[k])
            if s is None:
                raise ValueError(
                    f"norm ratio at order {k} is not a perfect rational square; "
                    "the exact orthonormal engine needs equal norms or square ratios"
                )
            scales.append(s)
        object.__setattr__(self, "_scales", tuple(scales))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def norm_scale(self, n: int) -> Fraction:
        """sqrt(alpha_norm_n / beta_norm_n), exactly."""
        return self._scales[n]

    def to_json_dict(self, grid_a=None, grid_b=None) -> dict:
        return {
            "alpha": self.alpha.to_json_dict(),
            "beta": self.beta.to_json_dict(),
            "coeffs": [rat_str(c) for c in self.coeffs],
            "grid_a": [rat_str(v) for v in (grid_a if grid_a is not None else DEFAULT_GRID)],
            "grid_b": [rat_str(v) for v in (grid_b if grid_b is not None else DEFAULT_GRID)],
            "support_flags": self.support.to_json_dict(),
        }


def parse_problem_json(data: dict, where: str = "$") -> tuple[LancasterProblem, tuple, tuple]:
    """Load a problem file: returns (problem, grid_a, grid_b)."""
    if not isinstance(data, dict):
        raise SchemaError(f"{where}: expected a problem object")
    alpha = OrthoBasis.from_json_dict(data.get("alpha"), f"{where}.alpha")
    beta = OrthoBasis.from_json_dict(data.get("beta"), f"{where}.beta")
    raw = data.get("coeffs")
    if not isinstance(raw, list) or not raw:
        raise SchemaError(f"{where}.coeffs: expected a non-empty list of rational strings")
    coeffs = []
    for i, c in enumerate(raw):
        try:
            coeffs.append(rat(c))
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"{where}.coeffs[{i}]: {exc}") from exc

    def grid(key):
        vals = data.get(key)
        if vals is None:
            return DEFAULT_GRID
        if not isinstance(vals, list):
            raise SchemaError(f"{where}.{key}: expected a list of rational strings")
        out = []
        for i, v in enumerate(vals):
            try:
                out.append(rat(v))
            except (TypeError, ValueError) as exc:
                raise SchemaError(f"{where}.{key}[{i}]: {exc}") from exc
        return tuple(out)

    flags = SupportFlags.from_json_dict(data.get("support_flags", {}), f"{where}.support_flags")
    try:
        problem = LancasterProblem(alpha, beta, tuple(coeffs), flags)
    except ValueError as exc:
        raise SchemaError(f"{where}: {exc}") from exc
    return problem, grid("grid_a"), grid("grid_b")


@dataclass(frozen=True)
class MomentPolynomials:
    """Conditional moment polynomials: ma[n] = E[X^n | Y=y] in y, mb[n] = E[Y^n | X=x] in x."""

    ma: tuple[Polynomial, ...]
    mb: tuple[Polynomial, ...]


def moment_polynomials(prob: LancasterProblem) -> MomentPolynomials:
    """Run the coupled triangular recursion for the conditional moments.

    In orthonormal terms the recursion reads

        m_n(y) = c_n (b_nn/a_nn) y^n
                 + sum_{j<n} (c_n b_nj y^j - a_nj m_j(y)) / a_nn,

    with a, b the orthonormal monomial coefficients of the two families.
    Only the ratios b_nj / a_nn and a_nj / a_nn enter, and with rational
    norm-ratio roots (checked at problem construction) everything collapses
    to exact rational arithmetic over the monic coefficient triangles.
    """
    pa = prob.alpha.monomial_coeffs
    pb = prob.beta.monomial_coeffs
    ma: list[Polynomial] = []
    mb: list[Polynomial] = []
    for n in range(prob.order + 1):
        c = prob.coeffs[n]
        s = prob.norm_scale(n)
        acc_a = (c * s / pa[n][n]) * prob.beta.polys[n]
        acc_b = (c / (s * pb[n][n])) * prob.alpha.polys[n]
        for j in range(n):
            acc_a = acc_a - (pa[n][j] / pa[n][n]) * ma[j]
            acc_b = acc_b - (pb[n][j] / pb[n][n]) * mb[j]
        ma.append(acc_a)
        mb.append(acc_b)
    return MomentPolynomials(tuple(ma), tuple(mb))


@dataclass(frozen=True)
class GridVerdict:
    """Hankel report of the conditional moment sequence at one grid point."""

    side: str  # "a": moments of X given Y = point; "b": moments of Y given X = point
    point: Fraction
    report: PmReport

    def to_json_dict(self) -> dict:
        return {
            "side": self.side,
            "point": rat_str(self.point),
            "report": self.report.to_json_dict(),
        }


@dataclass(frozen=True)
class NecessaryConditions:
    """Cheap necessary conditions every positive expansion must satisfy.

    * square_sum_partials: partial sums of c_n^2 (must stay bounded);
    * origin_partials: partial sums of c_n a_{n,0} b_{n,0} (nonnegative limit
      when 0 lies in the support of mu); None unless declared;
    * ratio_pm: Hankel report of {c_n a_nn/b_nn} (a moment sequence when mu
      has unbounded support); None unless declared;
    * coeff_pm: Hankel report of {c_n} itself (equal marginals with unbounded
      support); None unless declared.
    """

    square_sum_partials: tuple[Fraction, ...]
    origin_partials: tuple[Fraction, ...] | None
    ratio_pm: PmReport | None
    coeff_pm: PmReport | None

    @property
    def origin_sum(self) -> Fraction | None:
        return self.origin_partials[-1] if self.origin_partials else None

    def to_json_dict(self, float_digits: int = 17) -> dict:
        return {
            "square_sum_partials": [f"{float(v):.{float_digits}g}" for v in self.square_sum_partials],
            "origin_sum": rat_str(self.origin_sum) if self.origin_sum is not None else None,
            "origin_sign": None
            if self.origin_sum is None
            else (1 if self.origin_sum > 0 else (0 if self.origin_sum == 0 else -1)),
            "ratio_pm": self.ratio_pm.to_json_dict() if self.ratio_pm else None,
            "coeff_pm": self.coeff_pm.to_json_dict() if self.coeff_pm else None,
        }


def necessary_conditions(prob: LancasterProblem, upto: int | None = None) -> NecessaryConditions:
    """Evaluate the declared necessary conditions with exact arithmetic."""
    n_max = prob.order if upto is None else min(upto, prob.order)
    cs = prob.coeffs[: n_max + 1]

    partials = []
    acc = Fraction(0)
    for c in cs:
        acc += c * c
        partials.append(acc)

    origin = None
    if prob.support.zero_in_supp_mu:
        # a_{n,0} b_{n,0} = pa_{n,0} pb_{n,0} / sqrt(norm_a norm_b), and
        # sqrt(norm_a norm_b) = norm_scale * beta_norm exactly.
        pa = prob.alpha.monomial_coeffs
        pb = prob.beta.monomial_coeffs
        origin = []
        acc0 = Fraction(0)
        for n, c in enumerate(cs):
            root = prob.norm_scale(n) * prob.beta.norms[n]
            acc0 += c * pa[n][0] * pb[n][0] / root
            origin.append(acc0)
        origin = tuple(origin)

    ratio_report = None
    if prob.support.mu_unbounded:
        pa = prob.alpha.monomial_coeffs
        pb = prob.beta.monomial_coeffs
        ratio_seq = MomentSequence(
            tuple(
                cs[n] * pa[n][n] / (pb[n][n] * prob.norm_scale(n)) for n in range(n_max + 1)
            ),
            label="c*lead-ratio",
        )
        ratio_report = is_pm(ratio_seq, n_max // 2)

    coeff_report = None
    if (
        prob.support.same_marginals
        and prob.support.mu_unbounded
        and prob.support.nu_unbounded
    ):
        coeff_report = is_pm(MomentSequence(cs, label="coefficients"), n_max // 2)

    return NecessaryConditions(tuple(partials), origin, ratio_report, coeff_report)


def full_order_check(h_polys, basis: OrthoBasis) -> tuple[bool, ...]:
    """Flag, for each n, whether h_n expands in the family with full order n.

    Expands each polynomial in the basis and requires a nonzero component at
    index n and zero components above n.  This is the conditional-moment
    polynomial criterion: an expansion over the two families can exist only
    when every conditional expectation of basis polynomials has exactly full
    order.
    """
    flags = []
    for n, h in enumerate(h_polys):
        coeffs = _expand_in_basis(h, basis.polys)
        flags.append(coeffs[n] != 0 and all(c == 0 for c in coeffs[n + 1 :]))
    return tuple(flags)


POSITIVE = "positive"
REFUTED = "refuted"


@dataclass(frozen=True)
class LancasterReport:
    """Aggregated grid positivity evidence for one expansion problem."""

    moment_polys: MomentPolynomials
    grid_verdicts: tuple[GridVerdict, ...]
    necessary: NecessaryConditions
    pc_flags: tuple[bool, ...]
    order: int
    verdict: str

    @property
    def verdict_label(self) -> str:
        if self.verdict == REFUTED:
            return "refuted"
        return f"positive-to-order {self.order}"

    def to_json_dict(self, float_digits: int = 17) -> dict:
        return {
            "conditional_moments_a": [
                [rat_str(c) for c in p.coeffs] for p in self.moment_polys.ma
            ],
            "conditional_moments_b": [
                [rat_str(c) for c in p.coeffs] for p in self.moment_polys.mb
            ],
            "grid_verdicts": [v.to_json_dict() for v in self.grid_verdicts],
            "necessary_conditions": self.necessary.to_json_dict(float_digits),
            "pc_flags": list(self.pc_flags),
            "order": self.order,
            "verdict": self.verdict,
            "verdict_label": self.verdict_label,
        }


def lancaster_report(
    prob: LancasterProblem,
    grid_a=DEFAULT_GRID,
    grid_b=DEFAULT_GRID,
    order: int | None = None,
) -> LancasterReport:
    """Evaluate conditional moments on both grids and aggregate Hankel verdicts.

    ``order`` is the Hankel depth per grid point and needs conditional
    moments to index 2*order, so it may be at most half the problem order.
    Any negative determinant anywhere refutes the expansion; otherwise the
    report is positive to the tested order.  Grid evaluations are
    independent and the aggregation does not depend on their order.
    """
    n = prob.order
    if order is None:
        order = n // 2
    if 2 * order > n:
        raise InsufficientMomentsError(
            f"grid test at order {order} needs conditional moments to index {2 * order}, "
            f"but the problem stops at {n}"
        )
    polys = moment_polynomials(prob)
    verdicts = []
    for side, grid, family in (("a", grid_a, polys.ma), ("b", grid_b, polys.mb)):
        for point in grid:
            point = rat(point)
            seq = MomentSequence(
                tuple(family[k](point) for k in range(2 * order + 1)),
                label=f"conditional[{side}]@{point}",
            )
            verdicts.append(GridVerdict(side, point, is_pm(seq, order)))

    refuted = any(v.report.first_negative_order is not None for v in verdicts)
    h_polys = [prob.coeffs[k] * prob.beta.polys[k] for k in range(n + 1)]
    return LancasterReport(
        moment_polys=polys,
        grid_verdicts=tuple(verdicts),
        necessary=necessary_conditions(prob),
        pc_flags=full_order_check(h_polys, prob.beta),
        order=order,
        verdict=REFUTED if refuted else POSITIVE,
    )


# ---------------------------------------------------------------------------
# The correlated-Gaussian reference instance
# ---------------------------------------------------------------------------

def _check_rho(rho: Fraction) -> Fraction:
    rho = rat(rho)
    if not abs(rho) < 1:
        raise ValueError(f"correlation must satisfy |rho| < 1, got {rho}")
    return rho


def mehler_moments(rho, order: int) -> tuple[Polynomial, ...]:
    """Closed-form conditional moments of the correlated Gaussian pair.

    m_n(y) = sum_{2j<=n} C(n,2j) (1-rho^2)^j (2j-1)!! rho^(n-2j) y^(n-2j),
    i.e. the n-th moment of N(rho*y, 1-rho^2) as an exact polynomial in y.
    """
    rho = _check_rho(rho)
    if order < 0:
        raise ValueError("order must be nonnegative")
    one_m = 1 - rho * rho
    out = []
    for n in range(order + 1):
        coeffs = [Fraction(0)] * (n + 1)
        for j in range(n // 2 + 1):
            coeffs[n - 2 * j] = (
                comb(n, 2 * j) * one_m**j * double_factorial(2 * j - 1) * rho ** (n - 2 * j)
            )
        out.append(Polynomial(tuple(coeffs)))
    return tuple(out)


def mehler_density(x: float, y: float, rho) -> float:
    """Conditional Gaussian density g(x; y, rho) of N(rho*y, 1 - rho^2) at x."""
    rho = float(_check_rho(rho))
    var = 1.0 - rho * rho
    return math.exp(-((x - rho * y) ** 2) / (2.0 * var)) / math.sqrt(2.0 * math.pi * var)


def mehler_kernel(x: float, y: float, rho, terms: int) -> float:
    """Truncated bilinear Hermite kernel sum_{n<=terms} rho^n He_n(x) He_n(y) / n!."""
    rho = float(_check_rho(rho))
    hx_prev, hx = 0.0, 1.0
    hy_prev, hy = 0.0, 1.0
    total = 0.0
    power = 1.0
    fact = 1.0
    for n in range(terms + 1):
        if n > 0:
            hx, hx_prev = x * hx - (n - 1) * hx_prev, hx
            hy, hy_prev = y * hy - (n - 1) * hy_prev, hy
            power *= rho
            fact *= n
        total += power * hx * hy / fact
    return total


_PRESET_COEFFS = {
    "mehler": "powers of the correlation: c_n = rho^n",
    "harmonic": "c_n = 1/(n+1)",
    "catalan-ratio": "c_n = C(2n,n) / ((n+1) 4^n)",
    "fibonacci-scaled": "c_n = Fibonacci(1,1,2,...)[n] / 3^n",
}


def preset_names() -> tuple[str, ...]:
    return tuple(_PRESET_COEFFS)


def preset_problem(name: str, order: int, rho=None) -> LancasterProblem:
    """Hermite/Hermite problems with the stock candidate coefficient families."""
    if name not in _PRESET_COEFFS:
        known = ", ".join(_PRESET_COEFFS)
        raise ValueError(f"unknown preset {name!r}; known: {known}")
    if name == "mehler":
        if rho is None:
            raise ValueError("preset 'mehler' needs a correlation rho")
        rho = _check_rho(rho)
        coeffs = tuple(rho**n for n in range(order + 1))
    elif rho is not None:
        raise ValueError(f"preset {name!r} takes no correlation parameter")
    elif name == "harmonic":
        coeffs = builtin("log_kernel", order + 1, 0).values
    elif name == "catalan-ratio":
        cat = builtin("catalan", order + 1)
        coeffs = tuple(v / Fraction(4) ** n for n, v in enumerate(cat.values))
    else:  # fibonacci-scaled
        coeffs = builtin("fib_scaled", order + 1).values
    basis = hermite(order)
    flags = SupportFlags(
        zero_in_supp_mu=True, mu_unbounded=True, nu_unbounded=True, same_marginals=True
    )
    return LancasterProblem(basis, basis, coeffs, flags)


# ---------------------------------------------------------------------------
# Reference battery: every exact identity the Gaussian instance must satisfy
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _hermite_sum_formula(n: int) -> Polynomial:
    # independent route: He_n(x) = n! sum_m (-1)^m x^(n-2m) / (2^m m! (n-2m)!)
    coeffs = [Fraction(0)] * (n + 1)
    for m in range(n // 2 + 1):
        coeffs[n - 2 * m] = Fraction(
            (-1) ** m * math.factorial(n), 2**m * math.factorial(m) * math.factorial(n - 2 * m)
        )
    return Polynomial(tuple(coeffs))


def mehler_demo_battery(rho, order: int = 10) -> list[CheckResult]:
    """Run the full exact-identity battery on the Gaussian reference instance.

    Returns one named pass/fail result per check; everything rational is
    compared exactly and the two float cross-checks carry explicit
    tolerances.
    """
    rho = _check_rho(rho)
    if order < 4:
        raise ValueError("the battery needs order >= 4")
    results: list[CheckResult] = []

    def record(name: str, passed: bool, detail: str = ""):
        results.append(CheckResult(name, bool(passed), detail))

    hb = hermite(max(order, 12))

    record(
        "hermite-recurrence-vs-sum-formula",
        all(hb.polys[n] == _hermite_sum_formula(n) for n in range(13)),
        "orders 0..12",
    )
    gauss = builtin("gaussian", 25)
    rebuilt = basis_from_moments(gauss, 12)
    record(
        "hermite-from-gaussian-moments",
        rebuilt.polys == hermite(12).polys
        and rebuilt.norms == hermite(12).norms
        and rebuilt.recurrence == hermite(12).recurrence,
        "basis, norms, and recurrence at order 12",
    )
    record(
        "hermite-addition-formula",
        all(hermite_addition_holds(n, Fraction(3, 5)) for n in range(9)),
        "mixing weight 3/5, orders 0..8",
    )

    prob = preset_problem("mehler", order, rho)
    recursion = moment_polynomials(prob)
    closed = mehler_moments(rho, order)
    record(
        "conditional-moments-recursion-vs-closed-form",
        recursion.ma == closed and recursion.mb == closed,
        f"both sides, orders 0..{order}",
    )

    pi = hb.monomial_coeffs
    ok = True
    for n in range(order + 1):
        acc = Polynomial()
        for j in range(n + 1):
            acc = acc + pi[n][j] * closed[j]
        ok &= acc == rho**n * hb.polys[n]
    record("constant-column-identity", ok, "sum_j pi_nj m_j(y) = rho^n He_n(y)")

    one_m = 1 - rho * rho
    ok = True
    for n in range(order + 1):
        lhs = closed[n] * Fraction(1, math.factorial(n))
        coeffs = [Fraction(0)] * (n + 1)
        for j in range(n // 2 + 1):
            coeffs[n - 2 * j] = (
                rho ** (n - 2 * j)
                * (one_m / 2) ** j
                / (math.factorial(n - 2 * j) * math.factorial(j))
            )
        ok &= lhs == Polynomial(tuple(coeffs))
    record(
        "generating-function-coefficients",
        ok,
        "t^n coefficient of exp(rho y t + t^2(1-rho^2)/2) equals m_n(y)/n!",
    )

    record(
        "leading-coefficient-law",
        all(
            recursion.ma[n].coefficient(n) == prob.coeffs[n] * prob.norm_scale(n)
            for n in range(order + 1)
        ),
        "lead(m_n) = c_n b_nn/a_nn",
    )

    rep = lancaster_report(prob)
    record(
        "grid-hankel-positivity",
        rep.verdict == POSITIVE
        and all(v.report.strictly_positive for v in rep.grid_verdicts),
        f"default grid, order {rep.order}",
    )

    nec = rep.necessary
    bound = 1 / one_m
    origin_ok = nec.origin_sum is not None and nec.origin_sum > 0
    origin_detail = ""
    if origin_ok:
        target = 1.0 / math.sqrt(float(one_m))
        origin_detail = f"truncated {float(nec.origin_sum):.6f} vs limit {target:.6f}"
        origin_ok = abs(float(nec.origin_sum) - target) < 1e-3
    record(
        "necessary-conditions",
        all(p < bound for p in nec.square_sum_partials)
        and origin_ok
        and nec.ratio_pm is not None
        and nec.ratio_pm.is_pm
        and nec.coeff_pm is not None
        and nec.coeff_pm.is_pm,
        origin_detail,
    )
    record(
        "geometric-coefficients-rank-one",
        nec.coeff_pm is not None
        and all(d == 0 for d in nec.coeff_pm.hankel_dets[1:]),
        "Hankel collapses beyond d_0 for c_n = rho^n",
    )

    rho_f = float(rho)
    worst = 0.0
    for xi in range(-2, 3):
        for yi in range(-2, 3):
            kernel = mehler_kernel(float(xi), float(yi), rho, 30)
            oracle = (
                mehler_density(float(xi), float(yi), rho)
                * math.sqrt(2 * math.pi)
                * math.exp(xi * xi / 2.0)
            )
            worst = max(worst, abs(kernel - oracle))
    record(
        "kernel-vs-density",
        worst <= 1e-8,
        f"max deviation {worst:.3e} on the integer grid, 30 terms",
    )

    h_good = [rho**n * hb.polys[n] for n in range(order + 1)]
    flags_good = full_order_check(h_good, hb)
    h_bad = list(h_good)
    h_bad[2] = Polynomial.x()
    flags_bad = full_order_check(h_bad, hb)
    record(
        "full-order-check",
        all(flags_good) and not flags_bad[2],
        "passes on the reference family, catches a degree-deficient h_2",
    )

    from .positivity import OrthogonalSeries, certify_positive

    cert_bad = certify_positive(
        OrthogonalSeries(hb, (Fraction(0), Fraction(1), Fraction(0))), 1
    )
    ys = [Fraction(k) for k in range(-2, 3)]
    certs_ok = True
    for y in ys:
        cs = tuple(rho**n * hb.polys[n](y) / hb.norms[n] for n in range(hb.order + 1))
        cert = certify_positive(OrthogonalSeries(hb, cs), 4)
        certs_ok &= cert.verdict == "certified" and cert.pm_report.strictly_positive
    record(
        "positivity-certificates",
        cert_bad.verdict == "refuted"
        and cert_bad.verdict_order == 1
        and cert_bad.pm_report.hankel_dets[1] == -1
        and certs_ok,
        "refutes the odd-coefficient control, certifies the Gaussian family",
    )

    return results
