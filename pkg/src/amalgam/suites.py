"""Randomized conformance batteries over a factor system.

Every suite is deterministic given its seed and returns a plain dict shaped
for JSON output: name, instance descriptor, sample count, failure count per
sub-check, overall ok flag.  The CLI's ``check`` subcommands and the
full-scale acceptance run both call these.
"""

import random

from amalgam.homs import phi_eval, psi_eval, standard_hom
from amalgam.normalform import (
    centrality_check,
    eq,
    identity,
    inject,
    inv,
    is_identity,
    level,
    mul,
    reduce_word,
)
from amalgam.oracle import naive_reduce
from amalgam.padic import mat_mul
from amalgam.witnesses import lemma21_suite


def _cap(sys, max_level):
    if sys.max_level is not None:
        return min(max_level, sys.max_level)
    return max_level


def random_word(sys, rng, max_len=12, max_level=6):
    max_level = _cap(sys, max_level)
    out = []
    for _ in range(rng.randint(0, max_len)):
        n = rng.randint(0, max_level)
        out.append((n, sys.sample(n, rng)))
    return out


def random_form(sys, rng, max_len=12, max_level=6):
    return reduce_word(sys, random_word(sys, rng, max_len, max_level))


def _report(name, sys, samples, seed, checks):
    failures = sum(checks.values())
    return {
        "name": name,
        "instance": sys.descriptor(),
        "samples": samples,
        "failures": failures,
        "checks": checks,
        "seed": seed,
        "ok": failures == 0,
    }


def check_axioms(sys, samples, seed, max_level=6, max_len=8):
    """Group laws on reduced forms: associativity, identity, inverses."""
    rng = random.Random(seed)
    checks = {"assoc": 0, "identity": 0, "inverse": 0, "level_bound": 0}
    e = identity(sys)
    for _ in range(samples):
        a = random_form(sys, rng, max_len, max_level)
        b = random_form(sys, rng, max_len, max_level)
        c = random_form(sys, rng, max_len, max_level)
        ab = mul(sys, a, b)
        if not eq(sys, mul(sys, ab, c), mul(sys, a, mul(sys, b, c))):
            checks["assoc"] += 1
        if not (eq(sys, mul(sys, a, e), a) and eq(sys, mul(sys, e, a), a)):
            checks["identity"] += 1
        if not is_identity(sys, mul(sys, a, inv(sys, a))):
            checks["inverse"] += 1
        if level(ab) > max(level(a), level(b)):
            checks["level_bound"] += 1
    return _report("axioms", sys, samples, seed, checks)


def check_oracle(sys, samples, seed, max_len=10, max_level=4):
    """Engine against the word-rewriting oracle, plus eq vs quotient equality."""
    rng = random.Random(seed)
    checks = {"oracle_match": 0, "eq_quotient": 0}
    for _ in range(samples):
        w1 = random_word(sys, rng, max_len, max_level)
        w2 = random_word(sys, rng, max_len, max_level)
        f1 = reduce_word(sys, w1)
        f2 = reduce_word(sys, w2)
        if not (eq(sys, f1, naive_reduce(sys, w1))
                and eq(sys, f2, naive_reduce(sys, w2))):
            checks["oracle_match"] += 1
        quotient_triv = is_identity(sys, mul(sys, f1, inv(sys, f2)))
        if eq(sys, f1, f2) != quotient_triv:
            checks["eq_quotient"] += 1
    return _report("oracle", sys, samples, seed, checks)


def exhaustive_words(alphabet, max_len):
    """All words over the alphabet of length 0..max_len, shortest first."""
    frontier = [[]]
    yield []
    for _ in range(max_len):
        frontier = [w + [s] for w in frontier for s in alphabet]
        yield from frontier


def check_oracle_exhaustive(sys, alphabet, max_len):
    count = 0
    checks = {"oracle_match": 0}
    for word in exhaustive_words(alphabet, max_len):
        count += 1
        if not eq(sys, reduce_word(sys, word), naive_reduce(sys, word)):
            checks["oracle_match"] += 1
    return _report("oracle_exhaustive", sys, count, None, checks)


def check_lemma21(sys, samples, seed, max_m=5):
    rep = lemma21_suite(sys, samples, seed, max_m)
    return _report("lemma21", sys, rep.samples, rep.seed,
                   {"conjugation_level": rep.failures})


def check_centrality(sys, samples, seed, max_n=5):
    """Sampled B_n <= Z(G_{n+1}): every base value commutes with every g."""
    if sys.max_level is not None:
        max_n = min(max_n, max(0, sys.max_level - 1))
    rng = random.Random(seed)
    checks = {"central": 0}
    for _ in range(samples):
        n = rng.randint(0, max_n)
        g = random_form(sys, rng, 8, n + 1)
        z = sys.sample_base(n, rng)
        if not centrality_check(sys, g, n, z):
            checks["central"] += 1
    return _report("centrality", sys, samples, seed, checks)


def check_homs(sys, samples, seed, max_level=6, incl_samples=None):
    """standard_hom respects products, factor inclusions, and the matrix lift."""
    hom = standard_hom(sys)
    t = hom.target
    max_level = _cap(sys, max_level)
    if incl_samples is None:
        incl_samples = max(1, samples // 10)
    rng = random.Random(seed)
    checks = {"hom_mul": 0, "factor_incl": 0, "psi_mul": 0}
    for _ in range(samples):
        a = random_form(sys, rng, 8, max_level)
        b = random_form(sys, rng, 8, max_level)
        ab = mul(sys, a, b)
        lhs = phi_eval(ab, hom)
        rhs = t.add(phi_eval(a, hom), phi_eval(b, hom))
        if not t.eq(lhs, rhs):
            checks["hom_mul"] += 1
        if t.embeds:
            pa = psi_eval(a, hom)
            pb = psi_eval(b, hom)
            if psi_eval(ab, hom) != mat_mul(pa, pb):
                checks["psi_mul"] += 1
    for n in range(max_level + 1):
        for _ in range(incl_samples):
            x = sys.sample(n, rng)
            direct = hom.phi(n, x)
            through = phi_eval(inject(sys, n, x), hom)
            if not t.eq(direct, through):
                checks["factor_incl"] += 1
    return _report("homs", sys, samples, seed, checks)


def check_instance(sys, samples, seed, max_level=6):
    """Sampled factor-system contract: splits, chain, centrality, escapes."""
    max_level = max(1, _cap(sys, max_level))
    rng = random.Random(seed)
    checks = {
        "split_exact": 0,
        "split_rep_fixed": 0,
        "split_coset": 0,
        "chain_exact": 0,
        "chain_descent": 0,
        "base_central": 0,
        "escape_proper": 0,
        "bel_consistent": 0,
    }
    e = sys.factor_id(0)
    for _ in range(samples):
        n = rng.randint(1, max_level)
        h = sys.sample(n, rng)
        rep, b = sys.split(n, h)
        if not sys.factor_eq(n, sys.factor_mul(n, rep, b), h):
            checks["split_exact"] += 1
        rep2, b2 = sys.split(n, rep)
        if not (sys.factor_eq(n, rep2, rep) and sys.factor_eq(n, b2, e)):
            checks["split_rep_fixed"] += 1
        z = sys.sample_base(n - 1, rng)
        rep3, _ = sys.split(n, sys.factor_mul(n, h, z))
        if not sys.factor_eq(n, rep3, rep):
            checks["split_coset"] += 1
        m = rng.randint(0, n - 1)
        bm = sys.sample_base(m, rng)
        crep, cb = sys.split_chain(m, n, bm)
        if not sys.factor_eq(m, sys.factor_mul(m, crep, cb), bm):
            checks["chain_exact"] += 1
        if not sys.in_base(n, cb):
            checks["chain_descent"] += 1
        for lvl in (n - 1, n):
            x = sys.sample(lvl, rng)
            zb = sys.sample_base(n - 1, rng)
            if not sys.factor_eq(
                lvl, sys.factor_mul(lvl, x, zb), sys.factor_mul(lvl, zb, x)
            ):
                checks["base_central"] += 1
        ne = sys.nonbase_elem(n)
        esc = sys.escape_elem(n)
        if sys.in_base(n, ne) or sys.in_base(n, esc):
            checks["escape_proper"] += 1
        if not sys.factor_eq(n, h, e):
            bl = sys.base_escape_level(h)
            least = not sys.in_base(bl, h) and (bl == 0 or sys.in_base(bl - 1, h))
            if not least:
                checks["bel_consistent"] += 1
    return _report("instance", sys, samples, seed, checks)
