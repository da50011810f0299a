"""Closed-form bounds for r(C4, B_n^(k)): every formula the toolkit evaluates.

All arithmetic is exact: big integers everywhere, Fractions for the rational
inputs (eps) and the threshold Q(k, eps), and an exact algebraic comparator
for floors of sqrt(n) - c*n^alpha so no bound is ever off by one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt

from .errors import DomainError, NotPrimePower
from .gf import prime_power_decompose

# -- exact floors of sqrt(n) - c * n^alpha --


def _cmp_sqrt_expr(n: int, c: int, alpha: Fraction, v: int) -> int:
    """Exact sign of (sqrt(n) - c*n^alpha) - v using only integer arithmetic.

    Both sides of sqrt(n) - v >= c*n^alpha are raised to the power
    E = lcm(2, alpha.denominator), turning the comparison into one between
    A + B*sqrt(n) and an integer, which squaring settles exactly.
    """
    if n < 1 or c < 0:
        raise DomainError("need n >= 1 and c >= 0")
    if alpha <= 0 or alpha >= Fraction(1, 2):
        raise DomainError(f"alpha must lie in (0, 1/2), got {alpha}")
    if v > 0 and n < v * v:
        return -1  # sqrt(n) - v < 0 <= c*n^alpha
    e = 2 * alpha.denominator // math.gcd(2, alpha.denominator)
    # (sqrt(n) - v)^e = A + B*sqrt(n) with integer A, B
    a_coef = 0
    b_coef = 0
    for i in range(e + 1):
        term = comb(e, i) * (-v) ** (e - i)
        if i % 2 == 0:
            a_coef += term * n ** (i // 2)
        else:
            b_coef += term * n ** ((i - 1) // 2)
    rhs = c**e * n ** (alpha.numerator * e // alpha.denominator)
    p_coef = a_coef - rhs
    q_coef = b_coef
    if q_coef == 0:
        return (p_coef > 0) - (p_coef < 0)
    s = isqrt(n)
    if s * s == n:
        total = p_coef + q_coef * s
        return (total > 0) - (total < 0)
    lhs_sq, rhs_sq = q_coef * q_coef * n, p_coef * p_coef
    if p_coef >= 0 and q_coef > 0:
        return 1
    if p_coef <= 0 and q_coef < 0:
        return -1
    if lhs_sq == rhs_sq:
        raise AssertionError("sqrt(n) rational for non-square n")
    if q_coef > 0:
        return 1 if lhs_sq > rhs_sq else -1
    return 1 if lhs_sq < rhs_sq else -1


def floor_sqrt_minus_power(n: int, c: int = 6, alpha: Fraction = Fraction(21, 80)) -> int:
    """floor(sqrt(n) - c * n^alpha), exact for every n >= 1.

    A float estimate seeds the answer; the exact comparator then walks it to
    the true floor, so perfect squares and near-integer values are safe.
    """
    alpha = Fraction(alpha)
    guess = math.floor(math.sqrt(n) - c * n ** float(alpha))
    while _cmp_sqrt_expr(n, c, alpha, guess) < 0:
        guess -= 1
    while _cmp_sqrt_expr(n, c, alpha, guess + 1) >= 0:
        guess += 1
    return guess


def min_n_default_regime(c: int = 6, alpha: Fraction = Fraction(21, 80)) -> int:
    """Least n at which floor(sqrt(n) - c*n^alpha) reaches 1 under defaults.

    sqrt(n) - c*n^alpha is increasing once n^(1/2-alpha) > 2*c*alpha, so a
    bisection above that point is exact.
    """
    alpha = Fraction(alpha)
    lo = 2
    hi = 4
    while floor_sqrt_minus_power(hi, c, alpha) < 1:
        lo, hi = hi, hi * 4
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if floor_sqrt_minus_power(mid, c, alpha) >= 1:
            hi = mid
        else:
            lo = mid
    return hi


def _as_eps(eps) -> Fraction:
    """Normalize eps to an exact Fraction in (0, 1).

    Floats are taken at their shortest decimal representation, so 0.3 means
    exactly 3/10.
    """
    if isinstance(eps, float):
        eps = Fraction(str(eps))
    else:
        eps = Fraction(eps)
    if not 0 < eps < 1:
        raise DomainError(f"eps must lie strictly in (0, 1), got {eps}")
    return eps


# -- star case (k = 1) --


def parsons_upper(n: int) -> int:
    """Upper bound n + floor(sqrt(n-1)) + 2 for the star book B_n^(1).

    One smaller when n - 1 is a perfect square, which is where the bound is
    attained with room to spare.
    """
    if n < 2:
        raise DomainError(f"parsons_upper needs n >= 2, got {n}")
    root = isqrt(n - 1)
    if root * root == n - 1:
        return n + root + 1
    return n + root + 2


# -- iterated star recurrence --


@dataclass(frozen=True)
class GSequence:
    values: tuple[int, ...]  # g_0(n) .. g_k(n)
    cap: int                 # n + k*floor(sqrt(n)) + ceil((k^2+9k)/4)
    cap_holds: bool


def g_sequence(n: int, k: int) -> GSequence:
    """g_0 = n, g_i = g_{i-1} + floor(sqrt(g_{i-1} - 1)) + 2, up to g_k.

    Also evaluates the closed-form cap n + k*floor(sqrt(n)) + (k^2+9k)/4
    (rounded up) and flags any violation rather than assuming it.
    """
    if n < 2:
        raise DomainError(f"g_sequence needs n >= 2, got {n}")
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    values = [n]
    for _ in range(k):
        g = values[-1]
        values.append(g + isqrt(g - 1) + 2)
    cap = n + k * isqrt(n) + -(-(k * k + 9 * k) // 4)
    return GSequence(tuple(values), cap, values[-1] <= cap)


# -- the (k, q, t, eps) parameter pack --


def book_order_offset(k: int) -> int:
    """a_k = C(k,2) - k."""
    return comb(k, 2) - k


def ladder_offset(k: int) -> int:
    """b_k = a_k - ceil(k/2) + 2."""
    return book_order_offset(k) - -(-k // 2) + 2


@dataclass(frozen=True)
class BoundsParams:
    k: int
    q: int
    t: int
    eps: Fraction
    a_k: int
    b_k: int
    n: int                      # q^2 - k*q + t + a_k
    ladder: tuple[int, ...]     # N_1 .. N_k
    threshold: Fraction         # Q(k, eps) = (320 k^4)^(k+1) / eps^(2k)
    q_meets_threshold: bool
    t_in_range: bool            # 0 <= t <= (1 - eps) q


def q_threshold(k: int, eps) -> Fraction:
    eps = _as_eps(eps)
    return Fraction(320 * k**4) ** (k + 1) / eps ** (2 * k)


def bounds_params(k: int, q: int, t: int, eps) -> BoundsParams:
    """All derived quantities for the (k, q, t, eps) parameterization."""
    if k < 3:
        raise DomainError(f"bounds_params needs k >= 3, got {k}")
    if q < 2:
        raise DomainError(f"bounds_params needs q >= 2, got {q}")
    eps = _as_eps(eps)
    a_k = book_order_offset(k)
    b_k = ladder_offset(k)
    n = q * q - k * q + t + a_k
    ladder = [q * q - (k - i) * q + t + b_k for i in range(1, k - 1)]
    ladder.append(q * q - q + t + b_k + 1)
    ladder.append(q * q + t)
    threshold = q_threshold(k, eps)
    return BoundsParams(
        k=k,
        q=q,
        t=t,
        eps=eps,
        a_k=a_k,
        b_k=b_k,
        n=n,
        ladder=tuple(ladder),
        threshold=threshold,
        q_meets_threshold=Fraction(q) >= threshold,
        t_in_range=0 <= t and Fraction(t) <= (1 - eps) * q,
    )


# -- admissibility of (q, t) for the exact-value family --


@dataclass(frozen=True)
class Admissibility:
    admissible: bool
    reason: str
    parity_class: str  # "even", "3 mod 4", or "1 mod 4"


def theorem15_admissible(k: int, q: int, t: int, eps) -> Admissibility:
    """Whether (q, t) lands in the exact-value family's stated (q, t) window.

    The size threshold on q is reported separately (bounds_params), since no
    desk-scale q meets it; certificates stand on their own.
    """
    if k < 3:
        raise DomainError(f"k must be >= 3, got {k}")
    eps = _as_eps(eps)
    p, _ = prime_power_decompose(q)  # raises NotPrimePower
    hi = (1 - eps) * q
    if p == 2:
        cls = "even"
        if t < 0:
            return Admissibility(False, f"t={t} < 0", cls)
        if Fraction(t) > hi:
            return Admissibility(False, f"t={t} > (1-eps)q = {hi}", cls)
        if t == 1:
            return Admissibility(False, "t=1 excluded for even q", cls)
        return Admissibility(True, "even prime power, 0 <= t <= (1-eps)q, t != 1", cls)
    if q % 4 == 3:
        cls = "3 mod 4"
        lo, excl = (q + 1) // 2, (q + 3) // 2
    else:
        cls = "1 mod 4"
        lo, excl = (q - 1) // 2, (q + 1) // 2
    if t < lo:
        return Admissibility(False, f"t={t} < {lo}", cls)
    if Fraction(t) > hi:
        return Admissibility(False, f"t={t} > (1-eps)q = {hi}", cls)
    if t == excl:
        return Admissibility(False, f"t={excl} excluded for q = {cls}", cls)
    return Admissibility(True, f"odd prime power ({cls}), {lo} <= t <= (1-eps)q, t != {excl}", cls)


def theorem15_table(qmin: int, qmax: int, k: int, eps) -> list[dict]:
    """Predicted exact values r = q^2 + t over admissible (q, t) in range."""
    rows = []
    for q in range(max(2, qmin), qmax + 1):
        try:
            prime_power_decompose(q)
        except NotPrimePower:
            continue
        for t in range(0, q + 1):
            adm = theorem15_admissible(k, q, t, eps)
            if adm.admissible:
                rows.append(
                    {
                        "q": q,
                        "t": t,
                        "n": q * q - k * q + t + book_order_offset(k),
                        "r": q * q + t,
                        "parity_class": adm.parity_class,
                    }
                )
    return rows


# -- general lower bound via random thinning --


@dataclass(frozen=True)
class Theorem16Bound:
    value: int
    in_regime: bool
    floor_term: int  # floor(sqrt(n) - 6 n^0.2625)
    note: str


def theorem16_lower(n: int, k: int) -> Theorem16Bound:
    """n + k*floor(sqrt(n) - 6 n^0.2625) - k(k-3)/2, or the trivial n + k.

    The floor is evaluated exactly (integer algebra, not floating point).
    Below the regime where the floor reaches 1 the stated bound degenerates,
    so the trivial book-order bound is returned and flagged.
    """
    if n < 1 or k < 0:
        raise DomainError("need n >= 1 and k >= 0")
    if k == 0:
        return Theorem16Bound(n, True, 0, "k=0: formula degenerates to n")
    ft = floor_sqrt_minus_power(n)
    if ft < 1:
        return Theorem16Bound(n + k, False, ft, "asymptotic regime not reached")
    return Theorem16Bound(n + k * ft - (k * k - 3 * k) // 2, True, ft, "asymptotic bound; assumes n sufficiently large")


# -- aggregated per-(n, k) report --


@dataclass(frozen=True)
class BoundReport:
    n: int
    k: int
    lower: int
    lower_provenance: str
    upper: int | None
    upper_provenance: str | None
    exact: int | None

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "lower": self.lower,
            "lower_provenance": self.lower_provenance,
            "upper": self.upper,
            "upper_provenance": self.upper_provenance,
            "exact": self.exact,
        }


# Exact small values with their published-source tags.
KNOWN_EXACT = {
    (3, 2): (9, "published exact value r(C4, B_3^(2)) = 9"),
    (13, 2): (22, "published exact value r(C4, B_13^(2)) = 22"),
}


def _is_prime_power(q: int) -> bool:
    try:
        prime_power_decompose(q)
        return True
    except NotPrimePower:
        return False


def _k2_family(n: int):
    """(q, t) with n = (q-1)^2 + (t-2), 0 <= t <= q-1, q >= 4, if any."""
    s = isqrt(n + 2)
    if s * s > n + 2 or n + 2 - s * s > s:
        return None
    q, t = s + 1, n + 2 - s * s
    if q < 4:
        return None
    return q, t


def _k2_exact_window(q: int, t: int) -> bool:
    p, _ = prime_power_decompose(q)
    if p == 2:
        return q >= 4 and 0 <= t <= q - 1 and t != 1
    if q % 4 == 3:
        return q >= 5 and (q + 1) // 2 <= t <= q - 1 and t != (q + 3) // 2
    return q >= 5 and (q - 1) // 2 <= t <= q - 1 and t != (q + 1) // 2


def _k_ge3_family(n: int, k: int):
    """Prime powers q with n = q^2 - kq + t + a_k and 0 <= t <= q."""
    a_k = book_order_offset(k)
    out = []
    lo = max(2, isqrt(max(n, 1)) - k - 2)
    for q in range(lo, isqrt(max(n, 1)) + k + 3):
        t = n - q * q + k * q - a_k
        if 0 <= t <= q and _is_prime_power(q):
            out.append((q, t))
    return out


def bound_report(n: int, k: int) -> BoundReport:
    """Best lower/upper bound for r(C4, B_n^(k)) this toolkit can justify."""
    if n < 1 or k < 1:
        raise DomainError("need n >= 1 and k >= 1")
    lowers = [(n + k, "trivial bound: the book has n + k vertices")]
    uppers: list[tuple[int, str]] = []
    exacts: list[tuple[int, str]] = []

    if (n, k) in KNOWN_EXACT:
        exacts.append(KNOWN_EXACT[(n, k)])

    if k == 1 and n >= 2:
        uppers.append((parsons_upper(n), "star bound n + floor(sqrt(n-1)) + 2"))
        s = isqrt(n)
        if s * s == n and _is_prime_power(s):
            exacts.append((s * s + s + 1, f"polarity-graph family, n = q^2 with q = {s}"))
        s = isqrt(n - 1)
        if s * s == n - 1 and _is_prime_power(s):
            exacts.append((s * s + s + 2, f"polarity-graph family, n = q^2 + 1 with q = {s}"))

    if k == 2:
        if n >= 2:
            g2 = g_sequence(n, 2).values[2]
            uppers.append((g2, "twice-iterated star bound g(g(n))"))
        fam = _k2_family(n)
        if fam is not None:
            q, t = fam
            uppers.append((q * q + t, f"induced polarity-subgraph bound (q={q}, t={t})"))
            if _is_prime_power(q) and _k2_exact_window(q, t):
                exacts.append((q * q + t, f"exact family value q^2 + t (q={q}, t={t})"))
        # n = q^2 - q + 1 special family for prime powers q
        s = isqrt(n)
        for q in (s, s + 1):
            if q >= 2 and q * q - q + 1 == n and _is_prime_power(q):
                lowers.append((q * q + q + 2, f"polarity special case lower (q={q})"))
                uppers.append((q * q + q + 4, f"polarity special case upper (q={q})"))
                if q == 3:
                    exacts.append((16, "15-vertex witness family (4-regular C4-free graphs exist)"))

    if k >= 3:
        if n >= 2:
            gk = g_sequence(n, k).values[k]
            uppers.append((gk, f"{k}-times iterated star bound"))
        t16 = theorem16_lower(n, k)
        if t16.in_regime:
            lowers.append((t16.value, "random polarity-thinning bound (asymptotic)"))
        for q, t in _k_ge3_family(n, k):
            # the exact family needs q at least Q(k, eps) for a feasible eps
            if t == 0:
                meets = q > Fraction(320 * k**4) ** (k + 1)
                adm = theorem15_admissible(k, q, t, Fraction(1, 2)).admissible if meets else False
            else:
                eps_max = 1 - Fraction(t, q)
                meets = 0 < eps_max < 1 and Fraction(q) >= q_threshold(k, eps_max)
                adm = theorem15_admissible(k, q, t, eps_max).admissible if meets else False
            if meets:
                uppers.append((q * q + t, f"upper family q^2 + t (q={q}, t={t})"))
                if adm:
                    exacts.append((q * q + t, f"exact family q^2 + t (q={q}, t={t})"))

    for value, src in exacts:
        lowers.append((value, src))
        uppers.append((value, src))

    lower, lower_src = max(lowers, key=lambda it: it[0])
    upper, upper_src = (min(uppers, key=lambda it: it[0]) if uppers else (None, None))
    exact = lower if upper is not None and lower == upper else None
    return BoundReport(n, k, lower, lower_src, upper, upper_src, exact)
