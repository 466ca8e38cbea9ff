"""Three concrete factor systems.

* ``dense``: every factor is the additive group Z[1/p], amalgamated over the
  descending chain B_n = p**n Z.  The main instance; equality and membership
  are decidable, and every hypothesis of the construction holds.
* ``heisenberg``: the discrete Heisenberg group at every level, amalgamated
  over central chains of z-axis subgroups.  Non-abelian factors; exercises the
  engine where letter order matters.
* ``cyclic``: Z/p**L at every level with B_n = <p**min(n+1, L)>.  Finite value
  set, so oracles can enumerate words exhaustively.  The chain is shifted by
  one so that B_0 is proper in H_0; requesting the unshifted chain is exactly
  the kind of degenerate instance construction must reject.
"""

import random

from amalgam import _kernels as K
from amalgam.errors import InvalidParams, LiteralError
from amalgam.factors import FactorSystem
from amalgam.padic import PAdicRational, Prime, parse_padic

_PROBE_SEED = 0xA3A1


def _as_prime_int(p):
    return p.p if isinstance(p, Prime) else Prime(p).p


class DenseInstance(FactorSystem):
    """H_n = (Z[1/p], +) for every n, B_n = p**n Z."""

    kind = "dense"

    def __init__(self, p):
        self.p = _as_prime_int(p)
        self._zero = PAdicRational.zero(self.p)
        self._one = PAdicRational.one(self.p)
        self._invp = PAdicRational(1, 1, self.p)
        self._validate_axioms(random.Random(_PROBE_SEED))

    def factor_id(self, n):
        return self._zero

    def factor_mul(self, n, x, y):
        num, k = K.add(x.num, x.den_exp, y.num, y.den_exp, self.p)
        return PAdicRational._raw(num, k, self.p)

    def factor_inv(self, n, x):
        return PAdicRational._raw(-x.num, x.den_exp, self.p)

    def in_base(self, n, x):
        return K.in_subgroup(x.num, x.den_exp, self.p, n)

    def split(self, n, h):
        rn, rk, bn, bk = K.coset_split(h.num, h.den_exp, self.p, n - 1)
        return PAdicRational._raw(rn, rk, self.p), PAdicRational._raw(bn, bk, self.p)

    def split_chain(self, m, n, b):
        rn, rk, bn, bk = K.coset_split(b.num, b.den_exp, self.p, n)
        return PAdicRational._raw(rn, rk, self.p), PAdicRational._raw(bn, bk, self.p)

    def nonbase_elem(self, n):
        return self._invp if n == 0 else self._one

    def escape_elem(self, n):
        return self._invp if n == 0 else self._one

    def base_escape_level(self, x):
        if x.den_exp > 0:
            return 0
        return K.val(x.num, 0, self.p) + 1

    def sample(self, n, rng):
        return PAdicRational(rng.randint(-625, 625), rng.randint(0, 3), self.p)

    def sample_base(self, n, rng):
        return PAdicRational(rng.randint(-625, 625) * self.p**n, 0, self.p)

    def parse_value(self, text):
        return parse_padic(text, self.p)

    def value_str(self, x):
        return str(x)


class HeisenbergInstance(FactorSystem):
    """H_n = discrete Heisenberg group on integer triples, B_n = z-axis p**n Z.

    Group law (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x*y'); the centre is the
    z-axis, which contains every B_n.
    """

    kind = "heisenberg"

    def __init__(self, p):
        self.p = _as_prime_int(p)
        self._id = (0, 0, 0)
        self._validate_axioms(random.Random(_PROBE_SEED))

    def factor_id(self, n):
        return self._id

    def factor_mul(self, n, a, b):
        return (a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1])

    def factor_inv(self, n, a):
        return (-a[0], -a[1], -a[2] + a[0] * a[1])

    def in_base(self, n, a):
        return a[0] == 0 and a[1] == 0 and a[2] % self.p**n == 0

    def split(self, n, h):
        q = self.p ** (n - 1)
        zr = h[2] % q
        return (h[0], h[1], zr), (0, 0, h[2] - zr)

    def split_chain(self, m, n, b):
        q = self.p**n
        zr = b[2] % q
        return (0, 0, zr), (0, 0, b[2] - zr)

    def nonbase_elem(self, n):
        return (1, 0, 0)

    def escape_elem(self, n):
        return (1, 0, 0)

    def base_escape_level(self, a):
        if a[0] != 0 or a[1] != 0:
            return 0
        return K.val(a[2], 0, self.p) + 1

    def sample(self, n, rng):
        return (rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-625, 625))

    def sample_base(self, n, rng):
        return (0, 0, self.p**n * rng.randint(-625, 625))

    def parse_value(self, text):
        s = text.strip()
        if not (s.startswith("(") and s.endswith(")")):
            raise LiteralError(f"expected (x,y,z) triple, got {text!r}")
        parts = s[1:-1].split(",")
        if len(parts) != 3:
            raise LiteralError(f"expected 3 components in {text!r}")
        try:
            x, y, z = (int(q.strip()) for q in parts)
        except ValueError:
            raise LiteralError(f"non-integer component in {text!r}") from None
        return (x, y, z)

    def value_str(self, a):
        return f"({a[0]},{a[1]},{a[2]})"


class FiniteCyclicInstance(FactorSystem):
    """H_n = Z/p**L at every level, B_n = <p**min(n+shift, L)>.

    The default shift of 1 keeps B_0 proper in H_0.  shift=0 makes B_0 the
    whole group; the constructor's axiom probes reject it.  The chain becomes
    trivial from level L-shift on, so the intersection is trivial and words
    can be enumerated exhaustively.
    """

    kind = "cyclic"

    def __init__(self, p, L, chain_shift=1, max_level=None):
        self.p = _as_prime_int(p)
        if not isinstance(L, int) or isinstance(L, bool) or L < 2:
            raise InvalidParams(f"cyclic instance needs integer L >= 2, got {L!r}")
        if not isinstance(chain_shift, int) or chain_shift < 0:
            raise InvalidParams(f"chain_shift must be a natural, got {chain_shift!r}")
        if max_level is not None and (not isinstance(max_level, int) or max_level < 0):
            raise InvalidParams(f"max_level must be a natural or None, got {max_level!r}")
        self.L = L
        self.chain_shift = chain_shift
        self.max_level = max_level
        self.modulus = self.p**L
        self._validate_axioms(random.Random(_PROBE_SEED))

    def _exp(self, n):
        return min(n + self.chain_shift, self.L)

    def factor_id(self, n):
        return 0

    def factor_mul(self, n, x, y):
        return (x + y) % self.modulus

    def factor_inv(self, n, x):
        return (-x) % self.modulus

    def in_base(self, n, x):
        return x % self.p ** self._exp(n) == 0

    def split(self, n, h):
        q = self.p ** self._exp(n - 1)
        rep = h % q
        return rep, (h - rep) % self.modulus

    def split_chain(self, m, n, b):
        q = self.p ** self._exp(n)
        rep = b % q
        return rep, (b - rep) % self.modulus

    def nonbase_elem(self, n):
        return 1

    def escape_elem(self, n):
        return 1

    def base_escape_level(self, x):
        v = K.val(x, 0, self.p)
        return max(0, v + 1 - self.chain_shift)

    def sample(self, n, rng):
        return rng.randrange(self.modulus)

    def sample_base(self, n, rng):
        q = self.p ** self._exp(n)
        return q * rng.randrange(self.modulus // q)

    def parse_value(self, text):
        try:
            return int(text.strip()) % self.modulus
        except ValueError:
            raise LiteralError(f"expected an integer residue, got {text!r}") from None

    def value_str(self, x):
        return str(x)

    def params(self):
        out = {"L": self.L, "chain_shift": self.chain_shift}
        if self.max_level is not None:
            out["max_level"] = self.max_level
        return out


_KINDS = {
    "dense": (DenseInstance, ()),
    "heisenberg": (HeisenbergInstance, ()),
    "cyclic": (FiniteCyclicInstance, ("L", "chain_shift", "max_level")),
}


def make_instance(kind, p, params=None):
    """Build a factor system by name, validating its axioms at construction."""
    if kind not in _KINDS:
        raise InvalidParams(
            f"unknown instance kind {kind!r}; expected one of {sorted(_KINDS)}"
        )
    cls, allowed = _KINDS[kind]
    params = dict(params or {})
    for key in params:
        if key not in allowed:
            raise InvalidParams(f"unknown parameter {key!r} for {kind} instance")
    if kind == "cyclic":
        params.setdefault("L", 3)
    return cls(p, **params)
