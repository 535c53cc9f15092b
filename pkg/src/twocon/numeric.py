"""Scalar analytics: the degree-parameter root solve, truncated-Poisson
distribution helpers, derived model parameters, and log-space arithmetic.

Everything here is a pure function of its inputs.  The central object is
the increasing function

    g(lam) = lam * (e^lam - 1) / (e^lam - 1 - lam),

whose unique positive root at level c = 2m/n parameterizes the whole model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "expm1m",
    "log_expm1m",
    "g",
    "solve_lambda",
    "eta_bar_of",
    "p_c_of",
    "ModelParams",
    "derive_params",
    "LogReal",
    "log_double_factorial",
    "log_binomial",
    "TruncatedPoisson",
    "trunc_poisson_pmf",
    "eta_of",
]

# Below this, e^lam - 1 - lam is summed as a power series: the direct
# expm1(lam) - lam subtraction cancels catastrophically as lam -> 0.
_SERIES_CUTOFF = 1e-3

# Tail-relative cutoff for truncated-Poisson moment/cdf sums.
_TAIL_EPS = 1e-15


def expm1m(lam: float) -> float:
    """e^lam - 1 - lam, accurate down to lam -> 0+."""
    if lam < _SERIES_CUTOFF:
        # lam^2/2! + ... + lam^8/8!; the dropped lam^9 term is < 1e-27
        # relative at the cutoff.
        s = 0.0
        term = lam * lam / 2.0
        for k in range(2, 9):
            s += term
            term *= lam / (k + 1)
        return s
    return math.expm1(lam) - lam


def log_expm1m(lam: float) -> float:
    """ln(e^lam - 1 - lam), stable for both tiny and large lam."""
    if lam <= 0:
        raise DomainError("lambda must be positive")
    if lam > 40.0:
        # e^lam dominates; peel it off to avoid overflow.
        return lam + math.log1p(-(1.0 + lam) * math.exp(-lam))
    return math.log(expm1m(lam))


def g(lam: float) -> float:
    """The mean of a truncated Poisson: lam(e^lam - 1)/(e^lam - 1 - lam)."""
    if lam <= 0:
        raise DomainError("lambda must be positive")
    return lam * math.expm1(lam) / expm1m(lam)


def solve_lambda(c: float) -> float:
    """Unique positive root of g(lam) = c, for c > 2.

    Bisection on a safe bracket followed by Newton polishing; the result
    satisfies |g(lam) - c| <= 1e-10.
    """
    if not math.isfinite(c):
        raise DomainError("average degree must be finite")
    if c <= 2:
        raise DomainError("average degree must exceed 2")
    lo, hi = 1e-12, max(20.0, c + 10.0)
    # g(lo) ~ 2 + lo/3 < c and g(hi) > hi >= c+10 > c, so the root is
    # bracketed.
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if g(mid) < c:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-14 * lo:
            break
    lam = 0.5 * (lo + hi)
    # Newton refinement; g is smooth and increasing so a couple of steps
    # from a tight bracket land on the float closest to the root.
    for _ in range(3):
        e1 = math.expm1(lam)
        em = expm1m(lam)
        gv = lam * e1 / em
        # d/dlam [lam(e^l-1)/(e^l-1-l)]
        dg = (e1 + lam * (e1 + 1.0)) / em - lam * e1 * e1 / (em * em)
        step = (gv - c) / dg
        nxt = lam - step
        if nxt <= 0:
            break
        lam = nxt
    if abs(g(lam) - c) > 1e-10:
        raise ArithmeticError(
            f"root solve failed to converge at c={c}: residual {g(lam) - c:g}"
        )
    return lam


def eta_bar_of(lam: float) -> float:
    """lam * e^lam / (e^lam - 1), the size-biased second-moment ratio."""
    if lam <= 0:
        raise DomainError("lambda must be positive")
    return lam / (-math.expm1(-lam))


def p_c_of(lam: float) -> float:
    """P(Y = 2) for Y truncated-Poisson(lam): lam^2 / (2(e^lam - 1 - lam))."""
    if lam <= 0:
        raise DomainError("lambda must be positive")
    return lam * lam / (2.0 * expm1m(lam))


@dataclass(frozen=True)
class ModelParams:
    """All scalar parameters derived from an (n, m) pair with m > n."""

    n: int
    m: int
    c: float          # 2m/n
    r: int            # 2m - 2n
    lambda_c: float   # root of g(lam) = c
    eta_bar: float    # lam e^lam / (e^lam - 1)
    p_c: float        # P(Y = 2)
    delta: float      # (lambda_c / c)^2
    p_a: float        # exp(-c/2 - lambda_c^2/4)


def derive_params(n: int, m: int) -> ModelParams:
    """Solve for lambda_c at c = 2m/n and package the derived scalars."""
    if n < 3:
        raise DomainError("need n >= 3")
    if m <= n:
        raise DomainError("need m > n (average degree must exceed 2)")
    c = 2.0 * m / n
    lam = solve_lambda(c)
    return ModelParams(
        n=n,
        m=m,
        c=c,
        r=2 * m - 2 * n,
        lambda_c=lam,
        eta_bar=eta_bar_of(lam),
        p_c=p_c_of(lam),
        delta=(lam / c) ** 2,
        p_a=math.exp(-c / 2.0 - lam * lam / 4.0),
    )


@dataclass(frozen=True)
class LogReal:
    """A real number stored as (sign, ln|x|), for astronomically large counts."""

    log_magnitude: float
    sign: int = 1

    @classmethod
    def zero(cls) -> "LogReal":
        return cls(float("-inf"), 0)

    @classmethod
    def from_float(cls, x: float) -> "LogReal":
        if x == 0:
            return cls.zero()
        return cls(math.log(abs(x)), 1 if x > 0 else -1)

    @classmethod
    def from_log(cls, log_magnitude: float, sign: int = 1) -> "LogReal":
        return cls(log_magnitude, sign)

    def to_float(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_magnitude)

    def __mul__(self, other: "LogReal") -> "LogReal":
        if self.sign == 0 or other.sign == 0:
            return LogReal.zero()
        return LogReal(self.log_magnitude + other.log_magnitude,
                       self.sign * other.sign)

    def __truediv__(self, other: "LogReal") -> "LogReal":
        if other.sign == 0:
            raise ZeroDivisionError("division by LogReal zero")
        if self.sign == 0:
            return LogReal.zero()
        return LogReal(self.log_magnitude - other.log_magnitude,
                       self.sign * other.sign)

    def __add__(self, other: "LogReal") -> "LogReal":
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        a, b = self, other
        if b.log_magnitude > a.log_magnitude:
            a, b = b, a
        d = b.log_magnitude - a.log_magnitude  # <= 0
        if a.sign == b.sign:
            return LogReal(a.log_magnitude + math.log1p(math.exp(d)), a.sign)
        # opposite signs: magnitude shrinks
        if d == 0.0:
            return LogReal.zero()
        return LogReal(a.log_magnitude + math.log1p(-math.exp(d)), a.sign)

    def __neg__(self) -> "LogReal":
        return LogReal(self.log_magnitude, -self.sign)

    def __sub__(self, other: "LogReal") -> "LogReal":
        return self + (-other)

    def log10(self) -> float:
        if self.sign == 0:
            return float("-inf")
        return self.log_magnitude / math.log(10.0)

    def decimal_string(self, digits: int = 6) -> str:
        """Render as 'd.ddddddE+expo' without ever leaving log space."""
        if self.sign == 0:
            return "0"
        l10 = self.log10()
        expo = math.floor(l10)
        mant = 10.0 ** (l10 - expo)
        # guard against mantissa rounding to 10.0
        if mant >= 10.0 - 0.5 * 10.0 ** (-digits):
            mant /= 10.0
            expo += 1
        sign = "-" if self.sign < 0 else ""
        return f"{sign}{mant:.{digits}f}e+{expo}" if expo >= 0 else \
            f"{sign}{mant:.{digits}f}e{expo}"


def log_double_factorial(m: int) -> LogReal:
    """ln((2m-1)!!) via (2m)!/(2^m m!)."""
    if m < 0:
        raise DomainError("m must be non-negative")
    if m == 0:
        return LogReal(0.0, 1)  # empty product
    val = math.lgamma(2 * m + 1) - m * math.log(2.0) - math.lgamma(m + 1)
    return LogReal(val, 1)


def log_binomial(n: int, k: int) -> float:
    """ln C(n, k); -inf outside the triangle."""
    if k < 0 or k > n:
        return float("-inf")
    return (math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1))


class TruncatedPoisson:
    """Poisson(lam) conditioned on the value being at least 2."""

    def __init__(self, lam: float):
        if lam <= 0:
            raise DomainError("lambda must be positive")
        self.lam = lam
        self._log_norm = log_expm1m(lam)

    def log_pmf(self, j: int) -> float:
        if j < 2:
            return float("-inf")
        return j * math.log(self.lam) - math.lgamma(j + 1) - self._log_norm

    def pmf(self, j: int) -> float:
        if j < 2:
            return 0.0
        return math.exp(self.log_pmf(j))

    def mean(self) -> float:
        return g(self.lam)

    def support_table(self, tail_eps: float = _TAIL_EPS):
        """(values, pmf) arrays covering all but a < tail_eps tail mass."""
        vals, probs = [], []
        total = 0.0
        j = 2
        while True:
            p = self.pmf(j)
            vals.append(j)
            probs.append(p)
            total += p
            if 1.0 - total < tail_eps and j > self.lam + 2:
                break
            j += 1
            if j > 2000:  # unreachable at sane lambda; safety stop
                break
        return vals, probs

    def moment_sum(self, f) -> float:
        """Sum f(j) * pmf(j) until the terms are negligible."""
        total = 0.0
        j = 2
        while True:
            term = f(j) * self.pmf(j)
            total += term
            if j > self.lam + 2 and abs(term) < _TAIL_EPS * max(abs(total), 1e-300):
                break
            j += 1
            if j > 5000:
                break
        return total

    def factorial_moment(self, k: int) -> float:
        """E[Y(Y-1)...(Y-k+1)]."""
        def falling(j):
            out = 1.0
            for i in range(k):
                out *= j - i
            return out
        return self.moment_sum(falling)


def trunc_poisson_pmf(lam: float, j: int) -> float:
    """P(Y = j) for Y ~ truncated Poisson(lam); 0 below the support."""
    if j < 2:
        return 0.0
    return TruncatedPoisson(lam).pmf(j)


def eta_of(degrees) -> float:
    """sum d_i(d_i - 1) / sum d_i for a degree sequence with min degree 2."""
    ds = list(degrees)
    if not ds:
        raise DomainError("empty degree sequence")
    if any(d < 2 for d in ds):
        raise DomainError("eta is defined for min-degree-2 sequences")
    tot = sum(ds)
    return sum(d * (d - 1) for d in ds) / tot
