"""Finite fields built as explicit towers F_p ⊂ F_q ⊂ F_{q^m}.

Every element of a level with ``q`` elements is stored as an ``int`` in
``range(q)``: its canonical index.  The index of an element with coordinates
``(c_0, ..., c_{d-1})`` over the base level is ``sum(c_t * |base|**t)``, so the
constant coefficient is the least significant digit.  Enumerating indices in
increasing order therefore gives the lexicographic coordinate order that the
rest of the library uses for every "first witness" tie-break.

Two consequences of this encoding are used throughout:

* the index written in base ``p`` is the flattened coordinate vector over the
  prime field, so addition is digit-wise addition mod ``p`` at every level;
* the elements ``0..p-1`` of the prime field keep their index in every
  extension, so plain ints below ``p`` can be mixed with elements of any level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

# Levels with at most this many elements get dense add/mul tables.  These back
# the vectorised arithmetic used by the linear algebra kernels.
TABLE_LIMIT = 1024


class FieldError(Exception):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class FieldMismatch(FieldError, ValueError):
    pass


class NoNonsquare(FieldError, ValueError):
    pass


class NotIrreducible(FieldError, ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, s)`` with ``q == p**s``; raise ``ValueError`` otherwise."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    s, r = 0, q
    while r % p == 0:
        r //= p
        s += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, s


_LEVELS: dict[tuple, "GF"] = {}


class GF:
    """One level of a field tower.

    Build levels with :meth:`prime` and :meth:`extension`; identical towers are
    shared, so levels compare by identity as well as by :attr:`key`.
    """

    def __init__(self, p: int, base: GF | None = None, poly: tuple[int, ...] | None = None):
        self.p = p
        self.base = base
        if base is None:
            self.degree = 1
            self.poly = None
            self.q = p
            self.total_degree = 1
            self.depth = 0
        else:
            self.poly = tuple(poly)
            self.degree = len(poly) - 1
            self.q = base.q**self.degree
            self.total_degree = base.total_degree * self.degree
            self.depth = base.depth + 1
        self.key = (p,) if base is None else base.key + (self.poly,)

    # -- construction ---------------------------------------------------

    @staticmethod
    def prime(p: int) -> GF:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        key = (p,)
        if key not in _LEVELS:
            _LEVELS[key] = GF(p)
        return _LEVELS[key]

    def extension(self, degree: int, poly: Sequence[int] | None = None) -> GF:
        """Degree-``degree`` extension of this level.

        Without ``poly`` the lexicographically smallest monic irreducible
        polynomial is used.  ``degree == 1`` without an explicit polynomial
        returns this level unchanged.
        """
        if degree < 1:
            raise ValueError("extension degree must be >= 1")
        if poly is None:
            if degree == 1:
                return self
            poly = find_irreducible(self, degree)
        poly = tuple(int(c) for c in poly)
        if len(poly) != degree + 1 or poly[-1] != 1:
            raise NotIrreducible(f"polynomial {list(poly)} is not monic of degree {degree}")
        if any(not 0 <= c < self.q for c in poly):
            raise NotIrreducible(f"polynomial {list(poly)} has coefficients outside the base field")
        key = self.key + (poly,)
        if key not in _LEVELS:
            if not is_irreducible(self, poly):
                raise NotIrreducible(f"polynomial {list(poly)} is reducible over F_{self.q}")
            _LEVELS[key] = GF(self.p, self, poly)
        return _LEVELS[key]

    def __eq__(self, other):
        return isinstance(other, GF) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        if self.base is None:
            return f"GF({self.p})"
        return f"GF({self.q}; {list(self.poly)} over F_{self.base.q})"

    @property
    def is_prime(self) -> bool:
        return self.base is None

    @property
    def tower(self) -> tuple[GF, ...]:
        """Levels from the prime field up to this one."""
        out = [self]
        while out[-1].base is not None:
            out.append(out[-1].base)
        return tuple(reversed(out))

    def subfield_of(self, other: GF) -> bool:
        """True if this level is one of ``other``'s tower levels."""
        return self in other.tower

    # -- coordinates ----------------------------------------------------

    def coords(self, x: int) -> tuple[int, ...]:
        """Coordinates of ``x`` over the base level (``(x,)`` at the prime level)."""
        if self.base is None:
            return (x,)
        b = self.base.q
        out = []
        for _ in range(self.degree):
            x, r = divmod(x, b)
            out.append(r)
        return tuple(out)

    def from_coords(self, coords: Sequence[int]) -> int:
        if self.base is None:
            (c,) = coords
            return int(c) % self.p
        if len(coords) != self.degree:
            raise FieldMismatch(f"expected {self.degree} coordinates, got {len(coords)}")
        b = self.base.q
        return sum(int(c) * b**t for t, c in enumerate(coords))

    def prime_digits(self, x: int) -> tuple[int, ...]:
        """Flattened coordinates over the prime field."""
        out = []
        for _ in range(self.total_degree):
            x, r = divmod(x, self.p)
            out.append(r)
        return tuple(out)

    def from_prime_digits(self, digits: Sequence[int]) -> int:
        return sum(int(d) * self.p**t for t, d in enumerate(digits))

    def elements(self) -> range:
        """All elements in canonical order, starting at 0."""
        return range(self.q)

    def __call__(self, x: int | Sequence[int]) -> FieldElement:
        if isinstance(x, (int, np.integer)):
            x = int(x)
            if not 0 <= x < self.q:
                raise FieldMismatch(f"{x} is not an element index of {self!r}")
            return FieldElement(self, x)
        return FieldElement(self, self.from_coords(x))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @cached_property
    def generator(self) -> int:
        """Residue of the polynomial variable (the ``alpha`` of this extension)."""
        if self.base is None:
            raise FieldError("the prime field has no defining polynomial")
        if self.degree == 1:
            return self.base.neg(self.poly[0])
        return self.base.q

    # -- scalar arithmetic ----------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.base is None:
            return (a + b) % self.p
        if self.q <= TABLE_LIMIT:
            return self._add_rows[a][b]
        p, r, w = self.p, 0, 1
        while a or b:
            r += ((a % p + b % p) % p) * w
            a //= p
            b //= p
            w *= p
        return r

    def neg(self, a: int) -> int:
        if self.base is None:
            return (-a) % self.p
        p, r, w = self.p, 0, 1
        while a:
            r += ((-a) % p) * w
            a //= p
            w *= p
        return r

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.base is None:
            return (a * b) % self.p
        if self.q <= TABLE_LIMIT:
            return self._mul_rows[a][b]
        return self._poly_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"inverse of zero in {self!r}")
        if self.base is None:
            return pow(a, -1, self.p)
        if self.q <= TABLE_LIMIT:
            return int(self.inv_table[a])
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.base is None:
            return pow(a, e, self.p)
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def frob(self, a: int, i: int = 1) -> int:
        """The automorphism ``a -> a**(p**i)``."""
        i %= self.total_degree
        return self.pow(a, self.p**i)

    def _poly_mul(self, a: int, b: int) -> int:
        B = self.base
        x, y = self.coords(a), self.coords(b)
        d = self.degree
        prod = [0] * (2 * d - 1)
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj:
                    prod[i + j] = B.add(prod[i + j], B.mul(xi, yj))
        # reduce: t^d = -(poly[0] + ... + poly[d-1] t^{d-1})
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c == 0:
                continue
            prod[k] = 0
            for t in range(d):
                prod[k - d + t] = B.sub(prod[k - d + t], B.mul(c, self.poly[t]))
        return self.from_coords(prod[:d])

    # -- dense tables -----------------------------------------------------

    @cached_property
    def digit_table(self) -> np.ndarray:
        idx = np.arange(self.q, dtype=np.int64)
        return (idx[:, None] // self.p ** np.arange(self.total_degree, dtype=np.int64)) % self.p

    @cached_property
    def add_table(self) -> np.ndarray:
        self._require_tables()
        D = self.digit_table
        w = self.p ** np.arange(self.total_degree, dtype=np.int64)
        return (((D[:, None, :] + D[None, :, :]) % self.p) @ w).astype(np.int64)

    @cached_property
    def neg_table(self) -> np.ndarray:
        self._require_tables()
        w = self.p ** np.arange(self.total_degree, dtype=np.int64)
        return ((-self.digit_table) % self.p) @ w

    @cached_property
    def mul_table(self) -> np.ndarray:
        self._require_tables()
        q = self.q
        if self.base is None:
            a = np.arange(q, dtype=np.int64)
            return (a[:, None] * a[None, :]) % q
        # exp/log tables from a primitive element; products via index sums
        g, powers = self._primitive()
        log = np.zeros(q, dtype=np.int64)
        log[powers] = np.arange(q - 1)
        exp = np.asarray(powers, dtype=np.int64)
        s = (log[:, None] + log[None, :]) % (q - 1)
        table = exp[s]
        table[0, :] = 0
        table[:, 0] = 0
        return table

    @cached_property
    def inv_table(self) -> np.ndarray:
        M = self.mul_table
        inv = np.zeros(self.q, dtype=np.int64)
        rows, cols = np.nonzero(M == 1)
        inv[rows] = cols
        return inv

    @cached_property
    def _add_rows(self) -> list[list[int]]:
        return self.add_table.tolist()

    @cached_property
    def _mul_rows(self) -> list[list[int]]:
        return self.mul_table.tolist()

    def _require_tables(self):
        if self.q > TABLE_LIMIT:
            raise FieldError(f"{self!r} is too large for dense tables (limit {TABLE_LIMIT})")

    def _primitive(self) -> tuple[int, list[int]]:
        for g in range(1, self.q):
            powers, x = [], 1
            for _ in range(self.q - 1):
                powers.append(x)
                x = self._poly_mul(x, g)
                if x == 1:
                    break
            if len(powers) == self.q - 1:
                return g, powers
        raise FieldError("no primitive element found")  # unreachable for a field

    # -- vectorised arithmetic on index arrays --------------------------

    def vadd(self, a, b):
        if self.base is None:
            return (np.asarray(a) + b) % self.p
        return self.add_table[a, b]

    def vneg(self, a):
        if self.base is None:
            return (-np.asarray(a)) % self.p
        return self.neg_table[a]

    def vsub(self, a, b):
        if self.base is None:
            return (np.asarray(a) - b) % self.p
        return self.add_table[a, self.neg_table[b]]

    def vmul(self, a, b):
        if self.base is None:
            return (np.asarray(a) * b) % self.p
        return self.mul_table[a, b]

    def vinv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        if self.base is None:
            return np.asarray(pow_mod_array(a, self.p - 2, self.p))
        return self.inv_table[a]

    # -- squares ---------------------------------------------------------

    def squares(self) -> set[int]:
        return {self.mul(x, x) for x in self.elements()}


def pow_mod_array(a: np.ndarray, e: int, p: int) -> np.ndarray:
    result = np.ones_like(a)
    base = a % p
    while e:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


@dataclass(frozen=True)
class FieldElement:
    """An element of one tower level, with the usual operators.

    Ints are accepted on the right-hand side of ``+ - * /`` and denote prime
    field elements (they are reduced mod ``p``).
    """

    field: GF
    value: int

    @property
    def level(self) -> int:
        return self.field.depth

    @property
    def coords(self) -> tuple[int, ...]:
        return self.field.coords(self.value)

    def _other(self, b) -> int:
        if isinstance(b, FieldElement):
            if b.field != self.field:
                raise FieldMismatch(f"{b.field!r} vs {self.field!r}")
            return b.value
        if isinstance(b, (int, np.integer)):
            return int(b) % self.field.p
        return NotImplemented

    def _wrap(self, v: int) -> FieldElement:
        return FieldElement(self.field, v)

    def __add__(self, b):
        return self._wrap(self.field.add(self.value, self._other(b)))

    __radd__ = __add__

    def __sub__(self, b):
        return self._wrap(self.field.sub(self.value, self._other(b)))

    def __rsub__(self, b):
        return self._wrap(self.field.sub(self._other(b), self.value))

    def __mul__(self, b):
        return self._wrap(self.field.mul(self.value, self._other(b)))

    __rmul__ = __mul__

    def __truediv__(self, b):
        return self._wrap(self.field.div(self.value, self._other(b)))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def inv(self) -> FieldElement:
        return self._wrap(self.field.inv(self.value))

    def frob(self, i: int = 1) -> FieldElement:
        return self._wrap(self.field.frob(self.value, i))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.field.q}:{self.value}"


def arith(a: FieldElement, b, op: str) -> FieldElement:
    """Dispatch by name: ``add sub mul neg inv pow frob``.

    ``b`` is the second operand, the exponent for ``pow`` or the index ``i``
    for ``frob`` (the map ``x -> x**(p**i)``); it is ignored for ``neg`` and
    ``inv``.
    """
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    if op == "pow":
        return a ** int(b)
    if op == "frob":
        return a.frob(int(b))
    raise ValueError(f"unknown operation {op!r}")


def enumerate_field(F: GF) -> Iterator[FieldElement]:
    for x in F.elements():
        yield FieldElement(F, x)


def find_nonsquare(F: GF) -> int:
    """First element, in canonical order, that is not a square."""
    if F.p == 2:
        raise NoNonsquare(f"every element of F_{F.q} is a square")
    squares = F.squares()
    return next(x for x in F.elements() if x not in squares)


def base_coordinates(F: GF, x: int) -> tuple[int, ...]:
    """Coordinates of ``x`` in the power basis ``1, alpha, ..., alpha^(d-1)``."""
    return F.coords(x)


def field_q(q: int) -> GF:
    """F_q as a direct extension of its prime field (the prime field if q = p)."""
    p, s = prime_power(q)
    return GF.prime(p).extension(s)


# -- polynomials over a level: lists of element indices, constant first ---------


def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_mod(F: GF, f: list[int], g: Sequence[int]) -> list[int]:
    f = _trim(list(f))
    g = _trim(list(g))
    dg = len(g) - 1
    inv_lead = F.inv(g[-1])
    while len(f) - 1 >= dg and f:
        c = F.mul(f[-1], inv_lead)
        shift = len(f) - 1 - dg
        for t, gt in enumerate(g):
            f[shift + t] = F.sub(f[shift + t], F.mul(c, gt))
        _trim(f)
    return f


def poly_mulmod(F: GF, a: Sequence[int], b: Sequence[int], mod: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj:
                prod[i + j] = F.add(prod[i + j], F.mul(ai, bj))
    return poly_mod(F, prod, mod)


def poly_powmod(F: GF, a: Sequence[int], e: int, mod: Sequence[int]) -> list[int]:
    result = [1]
    a = poly_mod(F, list(a), mod)
    while e:
        if e & 1:
            result = poly_mulmod(F, result, a, mod)
        a = poly_mulmod(F, a, a, mod)
        e >>= 1
    return result


def poly_gcd(F: GF, a: Sequence[int], b: Sequence[int]) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, poly_mod(F, a, b)
    if a:
        inv = F.inv(a[-1])
        a = [F.mul(c, inv) for c in a]
    return a


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(F: GF, poly: Sequence[int]) -> bool:
    """Rabin's test for a monic polynomial over ``F``."""
    f = _trim(list(poly))
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    Q = F.q
    x = [0, 1]

    def frob_power(k: int) -> list[int]:
        g = x
        for _ in range(k):
            g = poly_powmod(F, g, Q, f)
        return g

    if _trim(_poly_sub(F, frob_power(d), x)):
        return False
    for r in _prime_factors(d):
        h = _poly_sub(F, frob_power(d // r), x)
        if len(poly_gcd(F, f, h)) != 1:
            return False
    return True


def _poly_sub(F: GF, a: Sequence[int], b: Sequence[int]) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([F.sub(x, y) for x, y in zip(a, b)])


_IRREDUCIBLE_CACHE: dict[tuple, tuple[int, ...]] = {}


def find_irreducible(F: GF, d: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible polynomial of degree ``d``.

    Candidates ``t^d + c_{d-1} t^{d-1} + ... + c_0`` are scanned in increasing
    order of ``sum(c_i * q**i)``.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    key = (F.key, d)
    if key in _IRREDUCIBLE_CACHE:
        return _IRREDUCIBLE_CACHE[key]
    Q = F.q
    for n in range(Q**d):
        coeffs = []
        for _ in range(d):
            n, r = divmod(n, Q)
            coeffs.append(r)
        poly = tuple(coeffs) + (1,)
        if is_irreducible(F, poly):
            _IRREDUCIBLE_CACHE[key] = poly
            return poly
    raise FieldError("no irreducible polynomial found")  # unreachable


# -- serialization -------------------------------------------------------------


def element_to_json(F: GF, x: int):
    """Prime-field elements are plain ints; others nest their coordinate arrays."""
    if F.base is None:
        return int(x)
    return [element_to_json(F.base, c) for c in F.coords(x)]


def element_from_json(F: GF, obj) -> int:
    if F.base is None:
        if isinstance(obj, list):
            (obj,) = obj
        return int(obj) % F.p
    if not isinstance(obj, list) or len(obj) != F.degree:
        raise FieldMismatch(f"bad coordinate array for {F!r}: {obj!r}")
    return F.from_coords([element_from_json(F.base, c) for c in obj])


def tower_to_json(F: GF) -> dict:
    return {
        "p": F.p,
        "tower": [[element_to_json(L.base, c) for c in L.poly] for L in F.tower[1:]],
    }


def tower_from_json(obj: dict) -> GF:
    F = GF.prime(int(obj["p"]))
    for poly in obj.get("tower", []):
        coeffs = [element_from_json(F, c) for c in poly]
        F = F.extension(len(coeffs) - 1, coeffs)
    return F
