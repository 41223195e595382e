"""
Regularized incomplete beta function and the t / F distributions built on it
"""
import math

from scipy.special import betaln

from wcgkit.config import pipeline_config
from wcgkit.exceptions import ConvergenceError, DomainError

_TINY = 1e-300


def _beta_continued_fraction(a: float, b: float, x: float) -> float:
    """Modified Lentz evaluation of the incomplete beta continued fraction"""
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d

    for m in range(1, pipeline_config.BETA_CF_MAX_ITER + 1):
        m2 = 2 * m
        # Even step
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        # Odd step
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < pipeline_config.BETA_CF_TOLERANCE:
            return h

    raise ConvergenceError(f"Incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """
    I_x(a, b) via a continued fraction

    Args:
        a: Shape a > 0
        b: Shape b > 0
        x: Point in [0, 1]

    Returns:
        Value in [0, 1]
    """
    a, b, x = float(a), float(b), float(x)
    if not (a > 0 and b > 0) or math.isinf(a) or math.isinf(b):
        raise DomainError(f"Shape parameters must be positive and finite (a={a}, b={b})")
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"x must lie in [0, 1], got {x}")
    if x == 0.0 or x == 1.0:
        return x
    # Closed forms
    if b == 1.0:
        return x ** a
    if a == 1.0:
        return -math.expm1(b * math.log1p(-x))

    front = math.exp(a * math.log(x) + b * math.log1p(-x) - betaln(a, b))
    if x < (a + 1.0) / (a + b + 2.0):
        value = front * _beta_continued_fraction(a, b, x) / a
    else:
        value = 1.0 - front * _beta_continued_fraction(b, a, 1.0 - x) / b
    return min(1.0, max(0.0, value))


def student_t_sf(t: float, df: float) -> float:
    """P(T > t) for Student's t with df degrees of freedom"""
    if df <= 0:
        raise DomainError(f"Degrees of freedom must be positive, got {df}")
    t = float(t)
    if math.isinf(t):
        return 0.0 if t > 0 else 1.0
    tail = 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t))
    return tail if t > 0 else 1.0 - tail


def student_t_cdf(t: float, df: float) -> float:
    """P(T <= t)"""
    return student_t_sf(-float(t), df)


def f_cdf(f: float, d1: float, d2: float) -> float:
    """P(F <= f) for Fisher's F with (d1, d2) degrees of freedom"""
    if d1 <= 0 or d2 <= 0:
        raise DomainError(f"Degrees of freedom must be positive, got ({d1}, {d2})")
    if f <= 0:
        return 0.0
    if math.isinf(f):
        return 1.0
    return regularized_incomplete_beta(d1 / 2.0, d2 / 2.0, d1 * f / (d1 * f + d2))


def f_sf(f: float, d1: float, d2: float) -> float:
    """P(F > f), evaluated on the complementary argument"""
    if d1 <= 0 or d2 <= 0:
        raise DomainError(f"Degrees of freedom must be positive, got ({d1}, {d2})")
    if f <= 0:
        return 1.0
    if math.isinf(f):
        return 0.0
    return regularized_incomplete_beta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f))
