"""Decide (to finite order) whether an orthogonal series sums to a nonnegative function.

The pivot is an exact triangular correspondence: a series sum_n c_n p_n(x)
over the orthogonal family of a measure mu determines candidate power
moments M_0..M_N of the would-be limit measure nu through

    sum_{j<=n} pi_{n,j} M_j = c_n * norm_n        for every n,

where pi is the monomial coefficient triangle of the family.  Nonnegativity
of the limit is then exactly the pm property of {M_j}: a negative Hankel
determinant refutes it outright, while all-nonnegative determinants certify
it as far as they were tested (finite-order evidence, never a proof).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import log

from .errors import InsufficientMomentsError
from .moments import MomentSequence, PmReport, is_pm
from .orthopoly import OrthoBasis, Polynomial, _inner
from .rationals import rat, rat_str


@dataclass(frozen=True)
class OrthogonalSeries:
    """A truncated series sum_n coeffs[n] * basis.polys[n](x)."""

    basis: OrthoBasis
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(rat(c) for c in self.coeffs))
        if len(self.coeffs) > self.basis.order + 1:
            raise ValueError(
                f"{len(self.coeffs)} coefficients exceed basis order {self.basis.order}"
            )

    def padded_coeffs(self) -> tuple[Fraction, ...]:
        """Coefficients extended by zeros to the basis order (the series is finite)."""
        pad = self.basis.order + 1 - len(self.coeffs)
        return self.coeffs + (Fraction(0),) * pad

    def partial_sum(self) -> Polynomial:
        """The truncated series as an explicit polynomial."""
        acc = Polynomial()
        for c, p in zip(self.coeffs, self.basis.polys):
            if c:
                acc = acc + c * p
        return acc


def moments_from_coefficients(series: OrthogonalSeries) -> MomentSequence:
    """Recover the candidate measure moments M_0..M_N from series coefficients.

    Solves the unit-triangular system sum_{j<=n} pi_{n,j} M_j = c_n norm_n by
    forward substitution; always solvable and exact.  Coefficients beyond the
    given prefix are treated as zero.
    """
    basis = series.basis
    cs = series.padded_coeffs()
    pi = basis.monomial_coeffs
    out: list[Fraction] = []
    for n in range(basis.order + 1):
        rhs = cs[n] * basis.norms[n]
        acc = sum((pi[n][j] * out[j] for j in range(n)), Fraction(0))
        out.append((rhs - acc) / pi[n][n])
    return MomentSequence(tuple(out), label="recovered")


def coefficients_from_moments(basis: OrthoBasis, nu: MomentSequence) -> tuple[Fraction, ...]:
    """Series coefficients of the measure with moments nu, over the given family.

    c_n = (sum_j pi_{n,j} nu_j) / norm_n; the exact inverse of
    :func:`moments_from_coefficients`.
    """
    if len(nu) < basis.order + 1:
        raise InsufficientMomentsError(
            f"need {basis.order + 1} moments of the target measure, got {len(nu)}"
        )
    pi = basis.monomial_coeffs
    return tuple(
        sum((pi[n][j] * nu[j] for j in range(n + 1)), Fraction(0)) / basis.norms[n]
        for n in range(basis.order + 1)
    )


CERTIFIED = "certified"
REFUTED = "refuted"
DEGENERATE = "degenerate"


@dataclass(frozen=True)
class PositivityCertificate:
    """Outcome of the finite-order nonnegativity test for one series.

    ``verdict`` is one of:

    * ``certified``  -- all Hankel determinants of the recovered moments are
      strictly positive up to ``verdict_order``: every tested necessary
      condition holds (evidence, not proof);
    * ``refuted``    -- a negative determinant at ``verdict_order``: a
      definitive negative, since the condition is necessary;
    * ``degenerate`` -- a zero determinant at ``verdict_order`` with no
      negative one: the limit measure, if any, may have finite support.
    """

    recovered_moments: MomentSequence
    pm_report: PmReport
    verdict: str
    verdict_order: int
    rm_partials: tuple[float, ...]
    notes: tuple[str, ...] = ()

    @property
    def verdict_label(self) -> str:
        if self.verdict == CERTIFIED:
            return f"certified-to-order {self.verdict_order}"
        if self.verdict == REFUTED:
            return f"refuted-at-order {self.verdict_order}"
        return f"degenerate-at-order {self.verdict_order}"

    def to_json_dict(self, float_digits: int = 17) -> dict:
        return {
            "recovered_moments": self.recovered_moments.to_json_dict(),
            "pm_report": self.pm_report.to_json_dict(),
            "verdict": self.verdict,
            "verdict_order": self.verdict_order,
            "verdict_label": self.verdict_label,
            "rm_partials": [f"{x:.{float_digits}g}" for x in self.rm_partials],
            "notes": list(self.notes),
        }


def certify_positive(series: OrthogonalSeries, order: int) -> PositivityCertificate:
    """Recover measure moments from the series and run the Hankel battery.

    ``order`` is the deepest Hankel order tested; the basis must reach order
    2*order so that M_0..M_{2 order} exist.
    """
    basis = series.basis
    if 2 * order > basis.order:
        raise InsufficientMomentsError(
            f"certification to order {order} needs a basis of order {2 * order}, got {basis.order}"
        )
    recovered = moments_from_coefficients(series)
    window = recovered.prefix(2 * order + 1, label="recovered")
    report = is_pm(window, order)

    notes: list[str] = []
    first_neg = report.first_negative_order
    if first_neg is not None:
        verdict, vorder = REFUTED, first_neg
        notes.append(f"necessary condition violated: d_{first_neg} < 0")
    else:
        first_zero = next((k for k, d in enumerate(report.hankel_dets) if d == 0), None)
        if first_zero is not None:
            verdict, vorder = DEGENERATE, first_zero
            notes.append(
                f"d_{first_zero} = 0: the limit measure may have finite support; not a refutation"
            )
        else:
            verdict, vorder = CERTIFIED, order
    return PositivityCertificate(
        recovered_moments=recovered,
        pm_report=report,
        verdict=verdict,
        verdict_order=vorder,
        rm_partials=rademacher_menshov_partials(series),
        notes=tuple(notes),
    )


def log_weighted_partials(energies) -> tuple[float, ...]:
    """Partial sums S_N = sum_{n<=N} energies[n] * log(n+1)^2, as floats."""
    out = []
    acc = 0.0
    for n, e in enumerate(energies):
        acc += float(e) * log(n + 1) ** 2
        out.append(acc)
    return tuple(out)


def rademacher_menshov_partials(series: OrthogonalSeries, upto: int | None = None) -> tuple[float, ...]:
    """Partial sums of c_n^2 * norm_n * log(n+1)^2 for convergence inspection.

    Boundedness of the full series upgrades mean-square convergence to
    almost-everywhere convergence.  Reported for inspection only; verdicts
    never depend on it.  Natural logarithm (the base only rescales).
    """
    n_max = len(series.coeffs) - 1 if upto is None else upto
    cs = series.padded_coeffs()
    if n_max > series.basis.order:
        raise InsufficientMomentsError(
            f"diagnostic to index {n_max} exceeds basis order {series.basis.order}"
        )
    energies = [cs[n] ** 2 * series.basis.norms[n] for n in range(n_max + 1)]
    return log_weighted_partials(energies)


@dataclass(frozen=True)
class KernelProjection:
    """Image of a polynomial under the truncated reproducing map, with a loss flag."""

    image: Polynomial
    lossy: bool


def kernel_projection(basis: OrthoBasis, f: Polynomial, order: int) -> KernelProjection:
    """Project f onto span{p_0..p_order} via moment bilinear forms.

    Computes sum_{i<=order} p_i * <p_i, f> / norm_i.  The reproducing-map
    property makes this the exact identity whenever deg f <= order; with
    deg f > order the projection is returned with ``lossy`` set.
    """
    if order > basis.order:
        raise ValueError(f"projection order {order} exceeds basis order {basis.order}")
    m = basis.source_moments
    acc = Polynomial()
    for i in range(order + 1):
        w = _inner(basis.polys[i], f, m) / basis.norms[i]
        if w:
            acc = acc + w * basis.polys[i]
    return KernelProjection(acc, lossy=f.degree > order)
