"""Exact arithmetic in the additive group Z[1/p] and its 2x2 unipotent image.

Every value is a normalized pair ``num / p**den_exp``; arithmetic is exact
with arbitrary-precision integers throughout, so long witness words cannot
overflow.  The inner loops are delegated to the kernel backend chosen by
``amalgam._kernels``.
"""

import math

from amalgam import _kernels as K
from amalgam.errors import InvalidParams, LiteralError


class Prime:
    """A validated prime, checked by trial division at construction."""

    __slots__ = ("p",)

    def __init__(self, p):
        if not isinstance(p, int) or isinstance(p, bool) or p < 2:
            raise InvalidParams(f"prime must be an integer >= 2, got {p!r}")
        d = 2
        while d * d <= p:
            if p % d == 0:
                raise InvalidParams(f"{p} is not prime (divisible by {d})")
            d += 1
        self.p = p

    def __int__(self):
        return self.p

    __index__ = __int__

    def __eq__(self, other):
        if isinstance(other, Prime):
            return self.p == other.p
        if isinstance(other, int):
            return self.p == other
        return NotImplemented

    def __hash__(self):
        return hash(self.p)

    def __repr__(self):
        return f"Prime({self.p})"


def _as_int_prime(p):
    return p.p if isinstance(p, Prime) else p


class PAdicRational:
    """An element of Z[1/p]: ``num / p**den_exp`` with p not dividing num.

    Instances are immutable value objects; all operations return new ones.
    """

    __slots__ = ("num", "den_exp", "p")

    def __init__(self, num, den_exp=0, p=None):
        if p is None:
            raise InvalidParams("PAdicRational needs a prime")
        if den_exp < 0:
            raise InvalidParams(f"den_exp must be a natural, got {den_exp}")
        pp = _as_int_prime(p)
        n, k = K.norm(num, den_exp, pp)
        self.num = n
        self.den_exp = k
        self.p = pp

    @classmethod
    def _raw(cls, num, den_exp, p):
        # Internal fast path: caller guarantees the pair is already normalized.
        self = object.__new__(cls)
        self.num = num
        self.den_exp = den_exp
        self.p = p
        return self

    @classmethod
    def zero(cls, p):
        return cls._raw(0, 0, _as_int_prime(p))

    @classmethod
    def one(cls, p):
        return cls._raw(1, 0, _as_int_prime(p))

    def _check_same(self, other):
        if not isinstance(other, PAdicRational):
            return NotImplemented
        if self.p != other.p:
            raise InvalidParams(f"mixed primes {self.p} and {other.p}")
        return other

    def __add__(self, other):
        o = self._check_same(other)
        if o is NotImplemented:
            return NotImplemented
        n, k = K.add(self.num, self.den_exp, o.num, o.den_exp, self.p)
        return PAdicRational._raw(n, k, self.p)

    def __neg__(self):
        return PAdicRational._raw(-self.num, self.den_exp, self.p)

    def __sub__(self, other):
        o = self._check_same(other)
        if o is NotImplemented:
            return NotImplemented
        n, k = K.add(self.num, self.den_exp, -o.num, o.den_exp, self.p)
        return PAdicRational._raw(n, k, self.p)

    def __mul__(self, other):
        o = self._check_same(other)
        if o is NotImplemented:
            return NotImplemented
        n, k = K.mul(self.num, self.den_exp, o.num, o.den_exp, self.p)
        return PAdicRational._raw(n, k, self.p)

    def __eq__(self, other):
        if not isinstance(other, PAdicRational):
            return NotImplemented
        return (
            self.num == other.num
            and self.den_exp == other.den_exp
            and self.p == other.p
        )

    def __hash__(self):
        return hash((self.num, self.den_exp, self.p))

    def __bool__(self):
        return self.num != 0

    def valuation(self):
        """p-adic valuation; +infinity (math.inf) for zero."""
        if self.num == 0:
            return math.inf
        return K.val(self.num, self.den_exp, self.p)

    def in_pn(self, n):
        """True iff the value lies in p**n Z."""
        return K.in_subgroup(self.num, self.den_exp, self.p, n)

    def __str__(self):
        if self.den_exp == 0:
            return str(self.num)
        return f"{self.num}/{self.p ** self.den_exp}"

    def __repr__(self):
        return f"PAdicRational({self.num}, {self.den_exp}, p={self.p})"


def coset_rep(x, n):
    """Split x as rep + b with rep the unique element of [0, p**n) in x's coset.

    b lands in p**n Z; the rep depends only on the coset x + p**n Z, which is
    what makes it usable as a transversal map.
    """
    rn, rk, bn, bk = K.coset_split(x.num, x.den_exp, x.p, n)
    return PAdicRational._raw(rn, rk, x.p), PAdicRational._raw(bn, bk, x.p)


def parse_padic(text, p):
    """Parse `m` or `m/d` with d a positive power of the configured prime."""
    pp = _as_int_prime(p)
    s = text.strip()
    num_s, slash, den_s = s.partition("/")
    try:
        num = int(num_s.strip())
    except ValueError:
        raise LiteralError(f"bad integer numerator in {text!r}") from None
    if not slash:
        return PAdicRational._raw(num, 0, pp)
    try:
        den = int(den_s.strip())
    except ValueError:
        raise LiteralError(f"bad integer denominator in {text!r}") from None
    if den < 1:
        raise LiteralError(f"denominator must be positive in {text!r}")
    k = 0
    while den % pp == 0:
        den //= pp
        k += 1
    if den != 1:
        raise LiteralError(
            f"denominator in {text!r} is not a power of the prime {pp}"
        )
    return PAdicRational(num, k, pp)


class Mat2:
    """A 2x2 matrix with exact p-power-denominator entries."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a = a
        self.b = b
        self.c = c
        self.d = d

    @classmethod
    def identity(cls, p):
        one = PAdicRational.one(p)
        zero = PAdicRational.zero(p)
        return cls(one, zero, zero, one)

    def det(self):
        return self.a * self.d - self.b * self.c

    def is_unipotent(self):
        one = PAdicRational.one(self.a.p)
        zero = PAdicRational.zero(self.a.p)
        return self.a == one and self.d == one and self.c == zero

    def __eq__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return (
            self.a == other.a
            and self.b == other.b
            and self.c == other.c
            and self.d == other.d
        )

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"

    __repr__ = __str__


def mat_mul(A, B):
    return Mat2(
        A.a * B.a + A.b * B.c,
        A.a * B.b + A.b * B.d,
        A.c * B.a + A.d * B.c,
        A.c * B.b + A.d * B.d,
    )


def unipotent(z):
    """The matrix with rows (1 z / 0 1); a homomorphic image of (Z[1/p], +)."""
    one = PAdicRational.one(z.p)
    zero = PAdicRational.zero(z.p)
    return Mat2(one, z, zero, one)
