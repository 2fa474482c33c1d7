"""Exact arithmetic in GF(p^m).

Elements are canonical integers in [0, q): the little-endian base-p digit
vector of an integer is the coefficient vector of the residue polynomial.
Multiplication goes through precomputed exp/log tables for q <= 2**20 and
falls back to schoolbook polynomial multiplication above that.  Addition in
extension fields with p > 2 uses a Zech-logarithm table so the hot paths
never leave integer land; GF(2^m) addition is plain XOR.

The reducing polynomial is not a free choice here: for every (p, m) we use
the monic irreducible of degree m with the smallest canonical integer, found
by deterministic search and verified with the gcd(x^(p^i) - x, f) criterion.
Two processes therefore always agree on the representation.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Sequence

# exp/log (and Zech) tables are built for fields up to this size
TABLE_LIMIT = 1 << 20


# ---------------------------------------------------------------------------
# integer helpers


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


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; fine for n <= 2**40 or so."""
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def prime_power(q: int) -> tuple[int, int]:
    """Split q into (p, m) with q = p**m, p prime; raises if q is not a prime power."""
    if q < 2:
        raise ValueError(f"field size must be >= 2, got {q}")
    factors = factorize(q)
    if len(factors) != 1:
        raise ValueError(f"{q} is not a prime power")
    ((p, m),) = factors.items()
    return p, m


# ---------------------------------------------------------------------------
# polynomials over GF(p): little-endian coefficient lists, no trailing zeros


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_add(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        out[i] = ((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
    return _trim(out)

def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_rem(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo f (f need not be monic)."""
    a = _trim(list(a))
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df and a:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _trim(a)
    return a


def _poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, _poly_rem(a, b, p)
    if a:
        inv_lead = pow(a[-1], p - 2, p)
        a = [(c * inv_lead) % p for c in a]
    return a


def _poly_powmod_x(e: int, f: Sequence[int], p: int) -> list[int]:
    """x**e modulo f, by square and multiply."""
    result = [1]
    base = _poly_rem([0, 1], f, p)
    while e:
        if e & 1:
            result = _poly_rem(_poly_mul(result, base, p), f, p)
        base = _poly_rem(_poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's criterion: x^(p^m) == x mod f and gcd(x^(p^(m/r)) - x, f) = 1
    for every prime r dividing m."""
    f = _trim(list(f))
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    h = _poly_powmod_x(p ** m, f, p)
    if _trim(_poly_add(h, [0, p - 1], p)) != []:  # h - x must vanish
        return False
    for r in factorize(m):
        g = _poly_powmod_x(p ** (m // r), f, p)
        g_minus_x = _poly_add(g, [0, p - 1], p)
        if len(_poly_gcd(g_minus_x, f, p)) != 1:
            return False
    return True


def find_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Monic irreducible of degree m over GF(p) whose low-order coefficient
    vector has the smallest canonical integer.  Deterministic."""
    if not is_prime(p):
        raise ValueError(f"characteristic must be prime, got {p}")
    if m < 1:
        raise ValueError(f"extension degree must be >= 1, got {m}")
    for c in range(p ** m):
        low = _int_digits(c, p, m)
        f = list(low) + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("unreachable: irreducibles of every degree exist")


def _int_digits(value: int, p: int, m: int) -> tuple[int, ...]:
    digits = []
    for _ in range(m):
        value, d = divmod(value, p)
        digits.append(d)
    return tuple(digits)


# ---------------------------------------------------------------------------


class Field:
    """GF(p^m) acting on canonical integer representatives.

    The heavy lookup tables are built lazily on first arithmetic use, so
    parameter-only work (size formulas, planning) stays cheap.  Once built
    they are never mutated; instances are safe to share between threads
    (a lost race during the first build just rebuilds identical tables).
    """

    def __init__(self, p: int, m: int, irreducible: Sequence[int] | None = None):
        if not is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p}")
        if m < 1:
            raise ValueError(f"extension degree must be >= 1, got {m}")
        self.p = p
        self.m = m
        self.q = p ** m
        if irreducible is None:
            irreducible = find_irreducible(p, m)
        irreducible = tuple(int(c) % p for c in irreducible)
        if len(irreducible) != m + 1 or irreducible[-1] != 1:
            raise ValueError("reducing polynomial must be monic of degree m")
        if not is_irreducible(list(irreducible), p):
            raise ValueError(f"{irreducible} is reducible over GF({p})")
        self.irreducible = irreducible
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._zech: list[int] | None = None
        self.generator: int | None = None

    # -- construction ------------------------------------------------------

    @classmethod
    def from_q(cls, q: int) -> "Field":
        p, m = prime_power(q)
        return field_for(p, m)

    def __repr__(self) -> str:
        return f"Field(p={self.p}, m={self.m}, q={self.q})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.m == other.m
            and self.irreducible == other.irreducible
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.irreducible))

    # -- digit views -------------------------------------------------------

    def digits(self, a: int) -> tuple[int, ...]:
        """Little-endian base-p digit vector of a canonical integer."""
        self._check(a)
        return _int_digits(a, self.p, self.m)

    def from_digits(self, digits: Iterable[int]) -> int:
        digits = list(digits)
        if len(digits) > self.m:
            raise ValueError(f"at most {self.m} digits expected, got {len(digits)}")
        value = 0
        for d in reversed(digits):
            if not 0 <= d < self.p:
                raise ValueError(f"digit {d} out of range [0, {self.p})")
            value = value * self.p + d
        return value

    def _check(self, a: int) -> int:
        if not isinstance(a, int) or isinstance(a, bool) or not 0 <= a < self.q:
            raise ValueError(f"{a!r} is not a canonical element of {self!r}")
        return a

    # -- table construction ------------------------------------------------

    def _build_tables(self) -> None:
        if self._exp is not None or self.q > TABLE_LIMIT:
            return
        q = self.q
        g = self._find_generator()
        exp = [1] * (2 * (q - 1))
        log = [-1] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self.mul_schoolbook(x, g)
        if x != 1:
            raise AssertionError("generator order check failed")
        exp[q - 1:] = exp[: q - 1]  # doubled so mul can skip a modulo
        self.generator = g
        self._exp = exp
        self._log = log
        if self.p > 2 and self.m > 1:
            self._build_zech(exp, log)

    def _build_zech(self, exp: list[int], log: list[int]) -> None:
        # zech[t] = log(1 + g^t), or -1 when 1 + g^t = 0
        q = self.q
        zech = [-1] * (q - 1)
        for t in range(q - 1):
            s = self._add_digits(1, exp[t])
            zech[t] = log[s] if s else -1
        self._zech = zech

    def _find_generator(self) -> int:
        if self.q == 2:
            return 1  # trivial group, 1 generates it
        cofactors = [(self.q - 1) // r for r in factorize(self.q - 1)]
        for g in range(2, self.q):
            if all(self._pow_schoolbook(g, c) != 1 for c in cofactors):
                return g
        raise AssertionError("multiplicative group of a finite field is cyclic")

    def _pow_schoolbook(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self.mul_schoolbook(result, a)
            a = self.mul_schoolbook(a, a)
            e >>= 1
        return result

    # -- arithmetic --------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        p = self.p
        if p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % p
        if self.q <= TABLE_LIMIT:
            if self._zech is None:
                self._build_tables()
            if a == 0:
                return b
            if b == 0:
                return a
            log = self._log
            la, lb = log[a], log[b]
            t = lb - la
            if t < 0:
                t += self.q - 1
            z = self._zech[t]
            if z < 0:
                return 0
            return self._exp[la + z]
        return self._add_digits(a, b)

    def _add_digits(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        value = 0
        scale = 1
        for _ in range(m):
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            value += ((da + db) % p) * scale
            scale *= p
        return value

    def neg(self, a: int) -> int:
        self._check(a)
        p = self.p
        if p == 2:
            return a
        if self.m == 1:
            return (p - a) % p
        value = 0
        scale = 1
        for _ in range(self.m):
            a, d = divmod(a, p)
            value += ((p - d) % p) * scale
            scale *= p
        return value

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        if self.q <= TABLE_LIMIT:
            if self._exp is None:
                self._build_tables()
            if a == 0 or b == 0:
                return 0
            return self._exp[self._log[a] + self._log[b]]
        return self.mul_schoolbook(a, b)

    def mul_schoolbook(self, a: int, b: int) -> int:
        """Table-free multiplication: digit convolution reduced by the
        field polynomial.  Kept callable on every field so the two paths
        can be checked against each other."""
        self._check(a)
        self._check(b)
        p, m = self.p, self.m
        if m == 1:
            return (a * b) % p
        if p == 2:
            return self._mul_gf2(a, b)
        da = _int_digits(a, p, m)
        db = _int_digits(b, p, m)
        conv = [0] * (2 * m - 1)
        for i, ai in enumerate(da):
            if ai:
                for j, bj in enumerate(db):
                    conv[i + j] += ai * bj
        f = self.irreducible
        for i in range(2 * m - 2, m - 1, -1):
            c = conv[i] % p
            if c:
                shift = i - m
                for j in range(m + 1):
                    conv[shift + j] -= c * f[j]
        value = 0
        for i in range(m - 1, -1, -1):
            value = value * p + conv[i] % p
        return value

    def _mul_gf2(self, a: int, b: int) -> int:
        # carry-less multiply, then shift-subtract the field polynomial
        m = self.m
        out = 0
        while b:
            if b & 1:
                out ^= a
            a <<= 1
            b >>= 1
        f_int = 0
        for i, c in enumerate(self.irreducible):
            f_int |= c << i
        for i in range(2 * m - 2, m - 1, -1):
            if (out >> i) & 1:
                out ^= f_int << (i - m)
        return out

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise ZeroDivisionError(f"0 has no multiplicative inverse in {self!r}")
        if self.q <= TABLE_LIMIT:
            if self._exp is None:
                self._build_tables()
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return self._pow_schoolbook(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        self._check(a)
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        if self.q <= TABLE_LIMIT:
            if self._exp is None:
                self._build_tables()
            return self._exp[(self._log[a] * e) % (self.q - 1)]
        return self._pow_schoolbook(a, e)

    # -- vectors -----------------------------------------------------------

    def dot(self, u: Sequence[int], v: Sequence[int]) -> int:
        if len(u) != len(v):
            raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
        acc = 0
        for a, b in zip(u, v):
            acc = self.add(acc, self.mul(a, b))
        return acc

    def fast_ops(self):
        """(add, mul) closures without canonicality checks, for inner loops
        whose operands were validated up front.  Semantically identical to
        add/mul; falls back to the checked methods when the field is too
        large for tables."""
        if self.q > TABLE_LIMIT:
            return self.add, self.mul
        if self._exp is None:
            self._build_tables()
        exp, log, qm1 = self._exp, self._log, self.q - 1

        def mul_fast(a: int, b: int) -> int:
            if a == 0 or b == 0:
                return 0
            return exp[log[a] + log[b]]

        if self.p == 2:
            def add_fast(a: int, b: int) -> int:
                return a ^ b
        elif self.m == 1:
            p = self.p
            def add_fast(a: int, b: int) -> int:
                return (a + b) % p
        else:
            zech = self._zech
            def add_fast(a: int, b: int) -> int:
                if a == 0:
                    return b
                if b == 0:
                    return a
                la = log[a]
                t = log[b] - la
                if t < 0:
                    t += qm1
                z = zech[t]
                return 0 if z < 0 else exp[la + z]

        return add_fast, mul_fast

    # -- sampling ----------------------------------------------------------

    def sample_uniform(self, rng) -> int:
        """Uniform element, one base-p digit per draw; no element-level
        rejection, so a scripted source with m in-range values yields
        exactly one element."""
        if self.p == 2:
            return rng.getrandbits(self.m)
        value = 0
        scale = 1
        for _ in range(self.m):
            value += rng.randrange(self.p) * scale
            scale *= self.p
        return value

    def sample_vector(self, rng, length: int) -> tuple[int, ...]:
        return tuple(self.sample_uniform(rng) for _ in range(length))

    # -- serialization -----------------------------------------------------

    @property
    def symbol_bits(self) -> int:
        """Width of one element on the wire: ceil(log2 q) bits."""
        return max(1, (self.q - 1).bit_length())

    @property
    def symbol_bytes(self) -> int:
        return (self.symbol_bits + 7) // 8

    def encode_symbols(self, values: Sequence[int]) -> bytes:
        nbytes = self.symbol_bytes
        return b"".join(self._check(v).to_bytes(nbytes, "big") for v in values)

    def decode_symbols(self, data: bytes, count: int) -> tuple[int, ...]:
        nbytes = self.symbol_bytes
        if len(data) != count * nbytes:
            raise ValueError(
                f"expected {count * nbytes} bytes for {count} symbols, got {len(data)}"
            )
        values = []
        for i in range(count):
            v = int.from_bytes(data[i * nbytes : (i + 1) * nbytes], "big")
            if v >= self.q:
                raise ValueError(f"symbol {i} decodes to {v}, outside [0, {self.q})")
            values.append(v)
        return tuple(values)

    @property
    def log2_q(self) -> float:
        return self.m * math.log2(self.p)


@lru_cache(maxsize=None)
def field_for(p: int, m: int) -> Field:
    """Shared Field instance per (p, m); tables get built at most once."""
    return Field(p, m)


class FieldElement:
    """Thin operator wrapper over a canonical integer.  The codec paths work
    on raw integers; this exists for interactive use and for enforcing the
    same-field contract at the boundary."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: int):
        field._check(value)
        self.field = field
        self.value = value

    def _coerce(self, other: "FieldElement") -> int:
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        if other.field != self.field:
            raise ValueError(f"mismatched fields: {self.field!r} vs {other.field!r}")
        return other.value

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._coerce(other)))

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._coerce(other)))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._coerce(other)))

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._coerce(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    @property
    def digits(self) -> tuple[int, ...]:
        return self.field.digits(self.value)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldElement)
            and other.field == self.field
            and other.value == self.value
        )

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __repr__(self) -> str:
        return f"FieldElement({self.value} in GF({self.field.q}))"
