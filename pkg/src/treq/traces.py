"""Fricke trace polynomials and exact 2x2 matrix arithmetic.

For a word w(a, b) the trace polynomial f_w in Z[x, y, z] satisfies
tr w(A, B) = f_w(tr A, tr B, tr AB) for every pair A, B in SL(2, K).
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .config import DEFAULT_PRIME
from .errors import PreconditionError, RankError, SamplingError, SingularMatrixError
from .words import (Word, canonical_rotation, cyclic_core, invert_letters,
                    palindromic_reverse, reduce_letters, sort_key)

Exponent = tuple[int, int, int]

_VARS = ("x", "y", "z")


class TracePolynomial:
    """Sparse polynomial in x, y, z with integer coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | None = None):
        self.terms = {tuple(e): int(c) for e, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def constant(cls, c: int) -> "TracePolynomial":
        return cls({(0, 0, 0): c})

    @classmethod
    def variable(cls, idx: int) -> "TracePolynomial":
        e = [0, 0, 0]
        e[idx] = 1
        return cls({tuple(e): 1})

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = TracePolynomial.constant(other)
        if not isinstance(other, TracePolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other: "TracePolynomial") -> "TracePolynomial":
        out = dict(self.terms)
        for e, c in _coerce(other).terms.items():
            out[e] = out.get(e, 0) + c
        return TracePolynomial(out)

    def __neg__(self) -> "TracePolynomial":
        return TracePolynomial({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "TracePolynomial") -> "TracePolynomial":
        return self + (-_coerce(other))

    def __mul__(self, other) -> "TracePolynomial":
        if isinstance(other, int):
            return TracePolynomial({e: c * other for e, c in self.terms.items()})
        out: dict[Exponent, int] = {}
        for (i, j, k), c in self.terms.items():
            for (p, q, r), d in other.terms.items():
                e = (i + p, j + q, k + r)
                out[e] = out.get(e, 0) + c * d
        return TracePolynomial(out)

    __rmul__ = __mul__

    def shift(self, idx: int) -> "TracePolynomial":
        """Multiply by the variable with index ``idx``."""
        out = {}
        for e, c in self.terms.items():
            e2 = list(e)
            e2[idx] += 1
            out[tuple(e2)] = c
        return TracePolynomial(out)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __call__(self, x, y, z, modulus: int | None = None):
        """Evaluate; with ``modulus`` the arithmetic is done in Z/modulus."""
        total = 0
        for (i, j, k), c in self.terms.items():
            if modulus is None:
                total += c * x**i * y**j * z**k
            else:
                total += c * pow(x, i, modulus) * pow(y, j, modulus) * pow(z, k, modulus)
        return total % modulus if modulus is not None else total

    def ordered_terms(self) -> list[tuple[Exponent, int]]:
        """Ascending total degree, lex (x > y > z) within a degree, constant last."""
        const = [(e, c) for e, c in self.terms.items() if sum(e) == 0]
        rest = sorted(((e, c) for e, c in self.terms.items() if sum(e) > 0),
                      key=lambda ec: (sum(ec[0]), tuple(-v for v in ec[0])))
        return rest + const

    def __str__(self) -> str:
        items = self.ordered_terms()
        if not items:
            return "0"
        out = []
        for n, (e, c) in enumerate(items):
            mono = "*".join(v if p == 1 else f"{v}^{p}" for v, p in zip(_VARS, e) if p)
            mag = abs(c)
            body = mono if mono and mag == 1 else (f"{mag}*{mono}" if mono else str(mag))
            if n == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"TracePolynomial({str(self)!r})"

    def to_json(self) -> list[dict]:
        return [{"exp": list(e), "coef": c} for e, c in self.ordered_terms()]

    @classmethod
    def from_json(cls, data: list[dict]) -> "TracePolynomial":
        return cls({tuple(t["exp"]): t["coef"] for t in data})


def _coerce(p) -> TracePolynomial:
    return TracePolynomial.constant(p) if isinstance(p, int) else p


TWO = TracePolynomial.constant(2)
_VAR_POLYS = tuple(TracePolynomial.variable(i) for i in range(3))


@lru_cache(maxsize=None)
def chebyshev(n: int, idx: int) -> TracePolynomial:
    """tr X^n as a polynomial in t = tr X: t_0 = 2, t_1 = t, t_n = t t_{n-1} - t_{n-2}."""
    n = abs(n)
    if n == 0:
        return TWO
    prev, cur = TWO, _VAR_POLYS[idx]
    for _ in range(n - 1):
        prev, cur = cur, cur.shift(idx) - prev
    return cur


def _trace_key(t) -> tuple[int, ...]:
    core = cyclic_core(reduce_letters(t))
    if not core:
        return ()
    fwd = canonical_rotation(core)
    back = canonical_rotation(invert_letters(core))
    return min(fwd, back, key=sort_key)


def _tr(t) -> TracePolynomial:
    return _trace_from_key(_trace_key(t))


# the cache is the memo table; functools.lru_cache is safe under threads
@lru_cache(maxsize=1 << 18)
def _trace_from_key(key: tuple[int, ...]) -> TracePolynomial:
    if not key:
        return TWO
    n = len(key)
    first = abs(key[0])
    if all(abs(x) == first for x in key):
        return chebyshev(n, first - 1)
    # trace is inversion invariant: work on whichever side has fewer inverses
    neg = sum(1 for x in key if x < 0)
    w = key if 2 * neg <= n else invert_letters(key)
    for i, x in enumerate(w):
        if x < 0:
            # X^-1 = (tr X) I - X
            u, v = w[:i], w[i + 1:]
            return _tr(u + v).shift(-x - 1) - _tr(u + (-x,) + v)
    for i in range(n):
        if w[i] == w[(i + 1) % n]:
            # X^2 = (tr X) X - I
            r = w[i:] + w[:i]
            return _tr(r[1:]).shift(r[0] - 1) - _tr(r[2:])
    # positive, alternating: (ab)^(n/2)
    return chebyshev(n // 2, 2)


def trace_poly(w: Word) -> TracePolynomial:
    """Fricke polynomial f_w with x = tr A, y = tr B, z = tr AB."""
    if w.rank != 2:
        raise RankError("trace polynomials are defined for rank-2 words")
    return _tr(w.letters)


def trace_cache_info():
    return _trace_from_key.cache_info()


# -- exact 2x2 matrices -----------------------------------------------------

def _to_field(v, p: int | None):
    if p is None:
        return Fraction(v)
    if isinstance(v, Fraction):
        if v.denominator % p == 0:
            raise SingularMatrixError(f"denominator of {v} vanishes mod {p}")
        return v.numerator * pow(v.denominator, -1, p) % p
    return int(v) % p


class Mat2:
    """2x2 matrix over Q (``p is None``) or over F_p."""

    __slots__ = ("a", "b", "c", "d", "p")

    def __init__(self, rows, p: int | None = None, sl2: bool = False):
        (a, b), (c, d) = rows
        self.p = p
        self.a, self.b, self.c, self.d = (_to_field(v, p) for v in (a, b, c, d))
        if sl2 and self.det() != 1:
            raise PreconditionError(f"determinant {self.det()} != 1 for a claimed SL(2) matrix")

    @classmethod
    def _raw(cls, a, b, c, d, p):
        m = cls.__new__(cls)
        m.a, m.b, m.c, m.d, m.p = a, b, c, d, p
        return m

    @classmethod
    def identity(cls, p: int | None = None) -> "Mat2":
        return cls([[1, 0], [0, 1]], p)

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]

    def det(self):
        v = self.a * self.d - self.b * self.c
        return v % self.p if self.p else v

    def trace(self):
        v = self.a + self.d
        return v % self.p if self.p else v

    def __matmul__(self, o: "Mat2") -> "Mat2":
        if self.p != o.p:
            raise PreconditionError("matrices live over different fields")
        a = self.a * o.a + self.b * o.c
        b = self.a * o.b + self.b * o.d
        c = self.c * o.a + self.d * o.c
        d = self.c * o.b + self.d * o.d
        p = self.p
        if p:
            a, b, c, d = a % p, b % p, c % p, d % p
        return Mat2._raw(a, b, c, d, p)

    def scale(self, s) -> "Mat2":
        p = self.p
        s = _to_field(s, p)
        vals = [v * s for v in (self.a, self.b, self.c, self.d)]
        if p:
            vals = [v % p for v in vals]
        return Mat2._raw(*vals, p)

    def inverse(self) -> "Mat2":
        det = self.det()
        if det == 0:
            raise SingularMatrixError("matrix is singular")
        p = self.p
        inv = pow(det, -1, p) if p else 1 / det
        m = Mat2._raw(self.d, -self.b, -self.c, self.a, p)
        return m.scale(inv) if p else Mat2._raw(*(v * inv for v in (m.a, m.b, m.c, m.d)), None)

    def __pow__(self, n: int) -> "Mat2":
        base = self if n >= 0 else self.inverse()
        result = Mat2.identity(self.p)
        n = abs(n)
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat2):
            return NotImplemented
        return (self.p, self.a, self.b, self.c, self.d) == (other.p, other.a, other.b, other.c, other.d)

    def __hash__(self) -> int:
        return hash((self.p, self.a, self.b, self.c, self.d))

    def __repr__(self) -> str:
        field = f", p={self.p}" if self.p else ""
        return f"Mat2([[{self.a}, {self.b}], [{self.c}, {self.d}]]{field})"


def eval_word(w: Word, assignment: Sequence[Mat2] | Mapping[int, Mat2]) -> Mat2:
    """The matrix product w(M_1, ..., M_k); ``assignment`` is indexed from 1 if a mapping."""
    if isinstance(assignment, Mapping):
        mats = dict(assignment)
    else:
        mats = {i + 1: m for i, m in enumerate(assignment)}
    needed = {abs(x) for x in w.letters}
    missing = needed - mats.keys()
    if missing:
        raise RankError(f"no matrix assigned to generators {sorted(missing)}")
    inverses = {}
    for g in {-x for x in w.letters if x < 0}:
        try:
            inverses[g] = mats[g].inverse()
        except SingularMatrixError:
            raise SingularMatrixError(f"matrix for generator {g} is singular") from None
    p = next(iter(mats.values())).p if mats else None
    result = Mat2.identity(p)
    for x in w.letters:
        result = result @ (mats[x] if x > 0 else inverses[-x])
    return result


def trace(m: Mat2):
    return m.trace()


def char_equiv_symbolic(u: Word, v: Word) -> bool:
    return trace_poly(u) == trace_poly(v)


# -- randomized screening over F_p -------------------------------------------

def sqrt_mod(n: int, p: int) -> int | None:
    """A square root of n modulo the odd prime p, or None (Tonelli-Shanks)."""
    n %= p
    if n == 0:
        return 0
    if pow(n, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def random_gl2(rng: random.Random, p: int, tries: int = 64) -> Mat2:
    for _ in range(tries):
        m = Mat2([[rng.randrange(p) for _ in range(2)] for _ in range(2)], p)
        if m.det() != 0:
            return m
    raise SamplingError("no invertible matrix found")


def random_sl2(rng: random.Random, p: int, tries: int = 64) -> Mat2:
    """Uniform invertible matrix rescaled by 1/sqrt(det); resample if det is a non-square."""
    for _ in range(tries):
        m = random_gl2(rng, p)
        r = sqrt_mod(m.det(), p)
        if r:
            m = m.scale(pow(r, -1, p))
            assert m.det() == 1
            return m
    raise SamplingError(f"could not normalise a matrix to determinant 1 mod {p}")


DISTINCT = "distinct"
PROBABLY_EQUIVALENT = "probably_equivalent"


def char_equiv_randomized(u: Word, v: Word, samples: int = 64, seed: int = 0,
                          prime: int = DEFAULT_PRIME) -> str:
    """Compare tr alpha(u) and tr alpha(v) at random SL(2, F_p) representations.

    ``distinct`` is certain; ``probably_equivalent`` only means no sampled
    representation separated the two.
    """
    if u.rank != v.rank:
        raise RankError(f"rank mismatch: {u.rank} vs {v.rank}")
    rng = random.Random(seed)
    for _ in range(samples):
        mats = [random_sl2(rng, prime) for _ in range(u.rank)]
        if eval_word(u, mats).trace() != eval_word(v, mats).trace():
            return DISTINCT
    return PROBABLY_EQUIVALENT


def _require_invertible(*mats: Mat2) -> None:
    for m in mats:
        if m.det() == 0:
            raise SingularMatrixError(f"{m!r} is singular")


def gl2_palindrome_check(w: Word, X: Mat2, Y: Mat2):
    """``(tr w(X, Y), tr w^R(X, Y))`` for arbitrary invertible X, Y."""
    if w.rank != 2:
        raise RankError("expects a rank-2 word")
    _require_invertible(X, Y)
    return (eval_word(w, [X, Y]).trace(),
            eval_word(palindromic_reverse(w), [X, Y]).trace())


def conjugate_power_check(p: int, q: int, A: Mat2, T: Mat2):
    """``(tr A^p B^q, tr A^q B^p)`` with B = T A T^-1."""
    _require_invertible(A, T)
    B = T @ A @ T.inverse()
    return (A**p @ B**q).trace(), (A**q @ B**p).trace()
