"""Exact arithmetic in GF(p^e) for the prime powers the constructions need.

Elements are polynomials of degree < e over Z_p, reduced modulo a fixed monic
irreducible modulus.  Everything is a value type: two elements are equal iff
their coefficient vectors are equal, and fields compare by (p, e, modulus).
"""

from __future__ import annotations

from itertools import product

from .errors import (
    CapExceeded,
    DivisionByZero,
    DomainError,
    FieldMismatch,
    NonPrimeCharacteristic,
)

DEFAULT_ORDER_CAP = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def next_prime(n: int) -> int:
    """Smallest prime >= n."""
    c = max(n, 2)
    while not is_prime(c):
        c += 1
    return c


def prime_power_decompose(q: int) -> tuple[int, int]:
    """Write q = p^e for prime p, or raise NotPrimePower."""
    from .errors import NotPrimePower

    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = q
    d = 2
    while d * d <= p:
        if p % d == 0:
            p = d
            break
        d += 1
    e = 0
    rest = q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return p, e


# -- polynomial helpers (coefficient tuples, constant term first) --


def _poly_trim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _poly_add(a, b, p):
    n = max(len(a), len(b))
    a = tuple(a) + (0,) * (n - len(a))
    b = tuple(b) + (0,) * (n - len(b))
    return _poly_trim([(x + y) % p for x, y in zip(a, b)])


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _poly_mod(a, m, p):
    """Remainder of a modulo m; m must be monic."""
    a = list(a)
    dm = len(m) - 1
    while len(a) > dm:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - dm
            for i in range(dm):
                a[shift + i] = (a[shift + i] - lead * m[i]) % p
        a.pop()
    return _poly_trim(a)


def _is_irreducible(poly, p):
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(poly) - 1
    if deg <= 0:
        return False
    if poly[0] == 0 and deg > 1:
        return False  # divisible by x
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            divisor = low + (1,)
            if not _poly_mod(poly, divisor, p):
                return False
    return True


class Field:
    """GF(p^e) with the lexicographically smallest monic irreducible modulus.

    Modulus candidates are compared coefficient-by-coefficient from the
    constant term upward, so the choice is deterministic across runs.
    """

    __slots__ = ("p", "e", "q", "modulus", "_elements")

    def __init__(self, p: int, e: int, modulus):
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = tuple(modulus)
        self._elements = None

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        return f"Field(p={self.p}, e={self.e})"

    # -- element construction --

    def element(self, coeffs) -> "FieldElement":
        if isinstance(coeffs, int):
            coeffs = self._digits(coeffs)
        coeffs = tuple(c % self.p for c in coeffs)
        if len(coeffs) != self.e:
            coeffs = _poly_mod(coeffs, self.modulus, self.p)
            coeffs = coeffs + (0,) * (self.e - len(coeffs))
        return FieldElement(self, coeffs)

    def _digits(self, i: int):
        digits = []
        for _ in range(self.e):
            i, r = divmod(i, self.p)
            digits.append(r)
        return tuple(digits)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.e)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, (1,) + (0,) * (self.e - 1))

    def index(self, a: "FieldElement") -> int:
        """Position of a in elements(); the base-p value of its coefficients."""
        v = 0
        for c in reversed(a.coeffs):
            v = v * self.p + c
        return v

    def add(self, a, b):
        return add(a, b)

    def mul(self, a, b):
        return mul(a, b)

    def neg(self, a):
        return neg(a)

    def inv(self, a):
        return inv(a)


class FieldElement:
    """Immutable element of a Field; supports +, -, *, unary -, **."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        self.field = field
        self.coeffs = tuple(coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field.p, self.field.e, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, neg(other))

    def __mul__(self, other):
        return mul(self, other)

    def __neg__(self):
        return neg(self)

    def __pow__(self, k: int):
        if k < 0:
            return inv(self) ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = mul(result, base)
            base = mul(base, base)
            k >>= 1
        return result

    def __repr__(self):
        return f"FieldElement({self.coeffs} over GF({self.field.q}))"


def _check_same_field(a: FieldElement, b: FieldElement) -> Field:
    if a.field != b.field:
        raise FieldMismatch(f"operands from {a.field!r} and {b.field!r}")
    return a.field


def field_new(p: int, e: int, cap: int = DEFAULT_ORDER_CAP) -> Field:
    """Build GF(p^e), selecting the smallest monic irreducible modulus."""
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if e < 1:
        raise DomainError(f"extension degree must be >= 1, got {e}")
    if p**e > cap:
        raise CapExceeded(f"p^e = {p**e} exceeds cap {cap}")
    if e == 1:
        return Field(p, 1, (0, 1))  # modulus x
    for low in product(range(p), repeat=e):
        candidate = low + (1,)
        if _is_irreducible(candidate, p):
            return Field(p, e, candidate)
    raise AssertionError("no irreducible polynomial found")  # unreachable


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    f = _check_same_field(a, b)
    coeffs = tuple((x + y) % f.p for x, y in zip(a.coeffs, b.coeffs))
    return FieldElement(f, coeffs)


def neg(a: FieldElement) -> FieldElement:
    f = a.field
    return FieldElement(f, tuple((-x) % f.p for x in a.coeffs))


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    f = _check_same_field(a, b)
    prod_ = _poly_mul(a.coeffs, b.coeffs, f.p)
    red = _poly_mod(prod_, f.modulus, f.p) if len(prod_) > f.e else prod_
    return FieldElement(f, red + (0,) * (f.e - len(red)))


def inv(a: FieldElement) -> FieldElement:
    """Inverse via a^(q-2); exact for every nonzero element."""
    if not a:
        raise DivisionByZero("inverse of zero")
    return a ** (a.field.q - 2)


def elements(field: Field) -> list[FieldElement]:
    """All q elements, ordered by base-p coefficient value: 0, 1, 2, ..., x, ...

    The order is deterministic across runs; index i has the base-p digits of i
    as coefficients (constant term first).
    """
    if field._elements is None:
        field._elements = [
            FieldElement(field, field._digits(i)) for i in range(field.q)
        ]
    return list(field._elements)
