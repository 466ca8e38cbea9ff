# cython: language_level=3
"""Compiled twin of ``_kernels_py``: same six functions, same semantics.

Numerators stay arbitrary-precision Python integers (witness words grow and
must not overflow); the win comes from typed exponents, C-level loops and
cheap internal calls.  The prime is kept as an object so powers are computed
exactly rather than in C integer arithmetic.
"""


cpdef norm(num, long k, p):
    """Cancel common factors of p between numerator and denominator."""
    if num == 0:
        return 0, 0
    while k > 0 and num % p == 0:
        num //= p
        k -= 1
    return num, k


cpdef add(an, long ak, bn, long bk, p):
    if ak == bk:
        return norm(an + bn, ak, p)
    if ak < bk:
        an, ak, bn, bk = bn, bk, an, ak
    return norm(an + bn * p ** (ak - bk), ak, p)


cpdef mul(an, long ak, bn, long bk, p):
    return norm(an * bn, ak + bk, p)


cpdef long val(num, long k, p) except? -1073741824:
    """p-adic valuation of a nonzero normalized pair."""
    if num == 0:
        raise ValueError("valuation of zero is undefined")
    cdef long v = -k
    while num % p == 0:
        num //= p
        v += 1
    return v


cpdef coset_split(num, long k, p, long n):
    """Split x into (rep, x - rep) with rep in [0, p**n) and x - rep in p**n Z.

    Returns a flat 4-tuple (rep_num, rep_k, b_num, b_k), both pairs normalized.
    """
    if num == 0:
        return 0, 0, 0, 0
    q = p ** (n + k)
    r = num % q
    rn, rk = norm(r, k, p)
    bn, bk = norm(num - r, k, p)
    return rn, rk, bn, bk


cpdef bint in_subgroup(num, long k, p, long n):
    """True iff num / p**k lies in p**n Z (n >= 0)."""
    if num == 0:
        return True
    if k != 0:
        return False
    if n == 0:
        return True
    return num % p ** n == 0
