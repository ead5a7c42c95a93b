"""Prime-field arithmetic GF(q) for odd primes q below 2^63.

Scalars are wrapped in :class:`FieldElem`; bulk data (weight vectors,
matrices) is kept as numpy arrays of canonical residues.  Arrays use
``int64`` whenever a product of two residues fits in a signed 64-bit word,
and fall back to ``object`` arrays of Python ints otherwise, so the same
vectorised code serves both regimes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContextMismatch, EvenModulus, NotPrime, RangeExceeded, ZeroInverse

# Deterministic for every n < 3.3e24, which covers all 64-bit inputs.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

MAX_MODULUS = 1 << 63
PRIME_SCAN_LIMIT = 1 << 62
# Largest q with (q - 1)**2 + q < 2**63.
_INT64_SAFE = 3037000499


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 64-bit integers."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def smallest_prime_geq(x: int) -> int:
    """Least odd prime p >= x (3 for x <= 3)."""
    if x >= PRIME_SCAN_LIMIT:
        raise RangeExceeded(f"{x} is not below 2^62")
    p = max(x, 3)
    if p % 2 == 0:
        p += 1
    while not is_prime(p):
        p += 2
    return p


@dataclass(frozen=True)
class FieldCtx:
    """The field GF(q); ``q`` is an odd prime below 2^63."""

    q: int

    def __post_init__(self):
        q = self.q
        if not isinstance(q, (int, np.integer)) or isinstance(q, bool):
            raise TypeError(f"modulus must be an integer, got {type(q).__name__}")
        object.__setattr__(self, "q", int(q))
        if q % 2 == 0:
            raise EvenModulus(f"modulus {q} is even; only odd primes are supported")
        if q < 3:
            raise NotPrime(f"{q} is not an odd prime")
        if q >= MAX_MODULUS:
            raise RangeExceeded(f"modulus {q} does not fit in 63 bits")
        if not is_prime(q):
            raise NotPrime(f"{q} is not prime")

    def __repr__(self):
        return f"FieldCtx({self.q})"

    @property
    def dtype(self):
        """numpy dtype able to hold products of two residues."""
        return np.int64 if self.q <= _INT64_SAFE else object

    def __call__(self, value: int) -> FieldElem:
        return FieldElem(int(value) % self.q, self)

    @property
    def zero(self) -> FieldElem:
        return FieldElem(0, self)

    @property
    def one(self) -> FieldElem:
        return FieldElem(1, self)

    def asarray(self, values) -> np.ndarray:
        """Canonical residues of ``values`` as an array of :attr:`dtype`."""
        arr = np.asarray(values)
        if arr.dtype == object or self.dtype is object:
            flat = [int(v) % self.q for v in arr.ravel()]
            return np.array(flat, dtype=self.dtype).reshape(arr.shape)
        return np.mod(arr.astype(np.int64, copy=False), self.q)


def field_new(q: int) -> FieldCtx:
    return FieldCtx(q)


@dataclass(frozen=True, eq=False)
class FieldElem:
    """A residue in ``[0, q)`` bound to its field."""

    value: int
    ctx: FieldCtx

    def __post_init__(self):
        if not 0 <= self.value < self.ctx.q:
            raise ValueError(f"{self.value} is not a canonical residue mod {self.ctx.q}")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"GF({self.ctx.q}) vs GF({other.ctx.q})")
            return other.value
        if isinstance(other, (int, np.integer)) and not isinstance(other, bool):
            return int(other) % self.ctx.q
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem((self.value + o) % self.ctx.q, self.ctx)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem((self.value - o) % self.ctx.q, self.ctx)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem((o - self.value) % self.ctx.q, self.ctx)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.value * o % self.ctx.q, self.ctx)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(-self.value % self.ctx.q, self.ctx)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * inv(FieldElem(o, self.ctx))

    def __pow__(self, e: int):
        if e < 0:
            return inv(self) ** -e
        return FieldElem(pow(self.value, e, self.ctx.q), self.ctx)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, (int, np.integer)) and not isinstance(other, bool):
            return self.value == int(other) % self.ctx.q
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.ctx.q))

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.ctx.q})"


def _check(a: FieldElem, b: FieldElem) -> None:
    if a.ctx != b.ctx:
        raise ContextMismatch(f"GF({a.ctx.q}) vs GF({b.ctx.q})")


def add(a: FieldElem, b: FieldElem) -> FieldElem:
    _check(a, b)
    return a + b


def sub(a: FieldElem, b: FieldElem) -> FieldElem:
    _check(a, b)
    return a - b


def mul(a: FieldElem, b: FieldElem) -> FieldElem:
    _check(a, b)
    return a * b


def neg(a: FieldElem) -> FieldElem:
    return -a


def inv(a: FieldElem) -> FieldElem:
    if a.value == 0:
        raise ZeroInverse(f"0 has no inverse in GF({a.ctx.q})")
    return FieldElem(pow(a.value, -1, a.ctx.q), a.ctx)


def inv_array(values: np.ndarray, q: int) -> np.ndarray:
    """Elementwise inverse of nonzero residues (Fermat, vectorised)."""
    values = np.asarray(values)
    if values.dtype == object:
        return np.array([pow(int(v), -1, q) for v in values.ravel()], dtype=object).reshape(values.shape)
    result = np.ones_like(values)
    base = values % q
    e = q - 2
    while e:
        if e & 1:
            result = result * base % q
        base = base * base % q
        e >>= 1
    return result


# -- sampling ---------------------------------------------------------------


_RAW_CHUNK = 1 << 20


def _draw_raw(rng: np.random.Generator, q: int, size: int) -> np.ndarray:
    """``size`` uniform residues by rejection from [0, 2^bits)."""
    bits = (q - 1).bit_length()
    mask = np.uint64((1 << bits) - 1)
    accept = q / (1 << bits)
    out = np.empty(size, dtype=np.int64)
    filled = 0
    while filled < size:
        need = size - filled
        raw = rng.bit_generator.random_raw(min(int(need / accept * 1.02) + 32, _RAW_CHUNK))
        raw &= mask
        # masked words are below 2^63, so the int64 view is exact
        raw = raw[raw < np.uint64(q)][:need].view(np.int64)
        out[filled : filled + raw.size] = raw
        filled += raw.size
    return out


def sample_uniform(ctx: FieldCtx, rng: np.random.Generator) -> FieldElem:
    """One uniform element of GF(q), 0 included."""
    return FieldElem(int(_draw_raw(rng, ctx.q, 1)[0]), ctx)


def sample_uniform_array(ctx: FieldCtx, rng: np.random.Generator, size: int | tuple) -> np.ndarray:
    """Array of i.i.d. uniform residues with dtype ``ctx.dtype``."""
    shape = (size,) if isinstance(size, (int, np.integer)) else tuple(size)
    count = int(np.prod(shape, dtype=np.int64))
    values = _draw_raw(rng, ctx.q, count).reshape(shape)
    if ctx.dtype is object:
        return values.astype(object)
    return values
