"""Canonical normal forms and exact arithmetic for the iterated amalgam.

An element is either ``Base(h)``, a level-0 value, or ``Alt(n, letters, tail)``
with n >= 1: a strictly alternating tuple of letters containing at least one
``RLetter`` (a transversal representative of a nonidentity coset of the level-n
factor modulo B_{n-1}) and possibly ``LLetter``s (canonical forms of level < n
elements, themselves reduced modulo B_{n-1}), followed by one tail in B_{n-1}.
Every B_k with k <= n-1 is central in the level-n stage, which is what lets a
single right-placed tail absorb all split residues.

Multiplication lifts both operands to the higher level and pushes the right
operand's letters one at a time onto the left operand's, merging at the
junction; a merge that lands in B_{n-1} drops into the tail, and the next push
meets the newly exposed letter, so cascades resolve letter by letter.  The
result is reassembled at a lower level when all level-n letters cancel.  The
empty word is ``Base(identity)`` and all representatives are fixed by the
factor system, so forms are structurally unique per element; ``oracle`` checks
that claim against an independent rewriting strategy.
"""

from amalgam.errors import PreconditionViolated


class Base:
    """A level-0 element, stored as a bare factor value."""

    __slots__ = ("value",)
    level = 0

    def __init__(self, value):
        self.value = value

    def __eq__(self, other):
        return type(other) is Base and self.value == other.value

    def __hash__(self):
        return hash(("B", self.value))

    def __repr__(self):
        return f"Base({self.value!r})"


class RLetter:
    """Transversal representative of a nonidentity coset of H_n / B_{n-1}."""

    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    def __eq__(self, other):
        return type(other) is RLetter and self.value == other.value

    def __hash__(self):
        return hash(("R", self.value))

    def __repr__(self):
        return f"R({self.value!r})"


class LLetter:
    """Canonical representative of a nonidentity coset of G_{n-1} / B_{n-1}."""

    __slots__ = ("form",)

    def __init__(self, form):
        self.form = form

    def __eq__(self, other):
        return type(other) is LLetter and self.form == other.form

    def __hash__(self):
        return hash(("L", self.form))

    def __repr__(self):
        return f"L({self.form!r})"


class Alt:
    """Alternating normal form at level n >= 1 with a central tail."""

    __slots__ = ("level", "letters", "tail")

    def __init__(self, level, letters, tail):
        self.level = level
        self.letters = letters
        self.tail = tail

    def __eq__(self, other):
        return (
            type(other) is Alt
            and self.level == other.level
            and self.letters == other.letters
            and self.tail == other.tail
        )

    def __hash__(self):
        return hash(("A", self.level, self.letters, self.tail))

    def __repr__(self):
        return f"Alt({self.level}; {list(self.letters)!r}; tail={self.tail!r})"


def identity(sys):
    return Base(sys.factor_id(0))


def level(form):
    """Minimal n such that the element lies in the level-n stage."""
    return form.level


def is_identity(sys, form):
    return type(form) is Base and sys.factor_eq(0, form.value, sys.factor_id(0))


def inject(sys, n, x):
    """Canonical form of the one-syllable word placing x in the level-n factor."""
    sys.check_level(n)
    if n == 0 or sys.in_base(n - 1, x):
        # values in B_{n-1} are identified down the chain to level 0
        return Base(x)
    rep, b = sys.split(n, x)
    return Alt(n, (RLetter(rep),), b)


def _left_canonical(sys, form, n):
    """Reduce a level < n form, not in B_{n-1}, to a left letter plus residue."""
    if type(form) is Base:
        rep, b = sys.split(n, form.value)
        return LLetter(Base(rep)), b
    rep_t, b2 = sys.split_chain(form.level - 1, n - 1, form.tail)
    return LLetter(Alt(form.level, form.letters, rep_t)), b2


def _lift(sys, form, n):
    """View a level <= n form as (letter list, tail value) at level n."""
    if form.level == n:
        return list(form.letters), form.tail
    if type(form) is Base and sys.in_base(n - 1, form.value):
        return [], form.value
    letter, b = _left_canonical(sys, form, n)
    return [letter], b


def _push(sys, stack, n, letter, tail):
    """Append one canonical letter, merging at the junction; returns the tail."""
    if not stack:
        stack.append(letter)
        return tail
    top = stack[-1]
    tt, tl = type(top), type(letter)
    if tt is RLetter and tl is RLetter:
        prod = sys.factor_mul(n, top.value, letter.value)
        stack.pop()
        if sys.in_base(n - 1, prod):
            return sys.factor_mul(n, tail, prod)
        rep, b = sys.split(n, prod)
        stack.append(RLetter(rep))
        return sys.factor_mul(n, tail, b)
    if tt is LLetter and tl is LLetter:
        prod = mul(sys, top.form, letter.form)
        stack.pop()
        if type(prod) is Base and sys.in_base(n - 1, prod.value):
            return sys.factor_mul(n, tail, prod.value)
        newl, b = _left_canonical(sys, prod, n)
        stack.append(newl)
        return sys.factor_mul(n, tail, b)
    stack.append(letter)
    return tail


def _assemble(sys, n, letters, tail):
    if not letters:
        return Base(tail)
    if len(letters) == 1 and type(letters[0]) is LLetter:
        # no level-n letter survived: the element lives below level n
        return mul(sys, letters[0].form, Base(tail))
    return Alt(n, tuple(letters), tail)


def mul(sys, f, g):
    lf, lg = f.level, g.level
    if lf == 0 and lg == 0:
        return Base(sys.factor_mul(0, f.value, g.value))
    n = lf if lf > lg else lg
    stack, ft = _lift(sys, f, n)
    gletters, gt = _lift(sys, g, n)
    tail = sys.factor_mul(n, ft, gt)
    for letter in gletters:
        tail = _push(sys, stack, n, letter, tail)
    return _assemble(sys, n, stack, tail)


def inv(sys, form):
    if type(form) is Base:
        return Base(sys.factor_inv(0, form.value))
    n = form.level
    tail = sys.factor_inv(n, form.tail)
    out = []
    for letter in reversed(form.letters):
        if type(letter) is RLetter:
            rep, b = sys.split(n, sys.factor_inv(n, letter.value))
            out.append(RLetter(rep))
        else:
            newl, b = _left_canonical(sys, inv(sys, letter.form), n)
            out.append(newl)
        tail = sys.factor_mul(n, tail, b)
    return Alt(n, tuple(out), tail)


def forms_equal(sys, f, g):
    """Structural equality through the factor system's own value equality."""
    tf = type(f)
    if tf is not type(g):
        return False
    if tf is Base:
        return sys.factor_eq(0, f.value, g.value)
    if f.level != g.level or len(f.letters) != len(g.letters):
        return False
    for a, b in zip(f.letters, g.letters):
        ta = type(a)
        if ta is not type(b):
            return False
        if ta is RLetter:
            if not sys.factor_eq(f.level, a.value, b.value):
                return False
        elif not forms_equal(sys, a.form, b.form):
            return False
    return sys.factor_eq(f.level, f.tail, g.tail)


def eq(sys, f, g):
    return forms_equal(sys, f, g)


def reduce_word(sys, word):
    """Canonical form of a word given as (level, value) syllables, in order."""
    acc = identity(sys)
    for n, x in word:
        acc = mul(sys, acc, inject(sys, n, x))
    return acc


def centrality_check(sys, g, n, z):
    """True iff g commutes with z; the contract says it always does.

    Preconditions: level(g) <= n+1 and z in B_n.  Those are the hypotheses
    under which the base value z is central in the whole level-(n+1) stage.
    """
    if g.level > n + 1:
        raise PreconditionViolated(
            f"centrality_check needs level(g) <= n+1; got level {g.level}, n {n}"
        )
    if not sys.in_base(n, z):
        raise PreconditionViolated("centrality_check needs z in B_n")
    zi = Base(sys.factor_inv(0, z))
    comm = mul(sys, mul(sys, g, Base(z)), mul(sys, inv(sys, g), zi))
    return is_identity(sys, comm)
