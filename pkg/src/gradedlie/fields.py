"""Exact field arithmetic over the rationals and prime fields.

A field is represented by a small coefficient-protocol object rather than by
wrapping every scalar: rational values are ``gmpy2.mpq`` (or
``fractions.Fraction`` when gmpy2 is unavailable), prime-field values are
plain ints in ``[0, p)``.  All values are immutable, so they are safe to
share between threads.  Containers (matrices, Lie elements, ...) carry the
field object and guard against mixing fields at their own boundaries.

Fields are spelled ``"Q"`` or ``"Fp:<prime>"`` in config files and on the
command line; see :func:`parse_field`.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as _mpq

    _HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as _mpq

    _HAVE_GMPY2 = False


class FieldError(ValueError):
    """Bad field construction or mixed-field operation."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Common interface of the concrete fields below.

    Subclasses provide exact ``add/sub/mul/neg/inv/div`` plus coercion
    (``of``), parsing and formatting.  Zero coefficients are represented as
    the field's canonical zero; sparse containers drop them.
    """

    zero = None
    one = None

    def of(self, x):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == self.zero

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, a) -> str:
        return str(a)

    @property
    def name(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return self.name


class RationalField(Field):
    """The field of rationals with arbitrary-precision arithmetic.

    Values are normalized automatically (lowest terms, positive
    denominator) by the backing mpq/Fraction type.
    """

    def __init__(self):
        self.zero = _mpq(0)
        self.one = _mpq(1)

    def of(self, x):
        if isinstance(x, float):
            raise FieldError("refusing to coerce float to an exact rational")
        return _mpq(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in Q")
        return a / b

    def parse(self, text: str):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            d = int(den)
            if d == 0:
                raise FieldError("zero denominator")
            return _mpq(int(num), d)
        return _mpq(int(text))

    @property
    def name(self) -> str:
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class PrimeField(Field):
    """The prime field F_p; values are canonical representatives in [0, p)."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def of(self, x):
        if isinstance(x, float):
            raise FieldError("refusing to coerce float to F_p")
        if not isinstance(x, int):
            # accept exact rationals with denominator invertible mod p
            num = int(x.numerator)
            den = int(x.denominator)
            if den % self.p == 0:
                raise FieldError(f"denominator {den} not invertible mod {self.p}")
            return num * pow(den, -1, self.p) % self.p
        return x % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero in F_{self.p}")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def parse(self, text: str):
        return self.of(int(text.strip()))

    @property
    def name(self) -> str:
        return f"Fp:{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(text: str) -> Field:
    """Parse a field spec: "Q" or "Fp:<prime>"."""
    text = text.strip()
    if text == "Q":
        return QQ
    if text.startswith("Fp:"):
        return PrimeField(int(text[3:]))
    raise FieldError(f"unknown field spec {text!r} (expected 'Q' or 'Fp:<prime>')")


def check_same_field(a: Field, b: Field, what: str = "operands"):
    if a != b:
        raise FieldError(f"field mismatch between {what}: {a.name} vs {b.name}")
