"""Exact coefficient rings: Q, Z, Z/N, F_p, F_q(p^e), and element parsing.

Every ring is an object exposing arithmetic on *raw* representations
(int, Fraction, coefficient tuple, ...).  ``FieldElem`` is a thin wrapper
pairing a raw value with its ring so that user-facing code can use
operators.  All arithmetic is exact; there is no floating point anywhere
in this package.

Function fields and simple extensions live in :mod:`wittcycles.funfield`;
they subclass :class:`Ring` and plug into the same protocol.
"""

from fractions import Fraction


class RingError(ValueError):
    """Domain error raised by ring operations (non-unit inverse, bad input)."""


# ---------------------------------------------------------------------------
# primality

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, valid far beyond any size used here."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# element wrapper


class FieldElem:
    """A raw ring value tagged with its parent ring.

    Supports +, -, *, /, ** and exact equality.  Integers coerce
    automatically on the other side of an operator.
    """

    __slots__ = ("ring", "v")

    def __init__(self, ring, v):
        self.ring = ring
        self.v = v

    def _rhs(self, other):
        if isinstance(other, FieldElem):
            if other.ring != self.ring:
                raise RingError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other.v
        if isinstance(other, int):
            return self.ring.from_int(other)
        if isinstance(other, Fraction):
            return self.ring.from_fraction(other)
        return NotImplemented

    def __add__(self, other):
        w = self._rhs(other)
        if w is NotImplemented:
            return NotImplemented
        return FieldElem(self.ring, self.ring.add(self.v, w))

    __radd__ = __add__

    def __sub__(self, other):
        w = self._rhs(other)
        if w is NotImplemented:
            return NotImplemented
        return FieldElem(self.ring, self.ring.sub(self.v, w))

    def __rsub__(self, other):
        w = self._rhs(other)
        if w is NotImplemented:
            return NotImplemented
        return FieldElem(self.ring, self.ring.sub(w, self.v))

    def __mul__(self, other):
        w = self._rhs(other)
        if w is NotImplemented:
            return NotImplemented
        return FieldElem(self.ring, self.ring.mul(self.v, w))

    __rmul__ = __mul__

    def __truediv__(self, other):
        w = self._rhs(other)
        if w is NotImplemented:
            return NotImplemented
        return FieldElem(self.ring, self.ring.mul(self.v, self.ring.inv(w)))

    def __rtruediv__(self, other):
        w = self._rhs(other)
        if w is NotImplemented:
            return NotImplemented
        return FieldElem(self.ring, self.ring.mul(w, self.ring.inv(self.v)))

    def __neg__(self):
        return FieldElem(self.ring, self.ring.neg(self.v))

    def __pow__(self, n):
        if n < 0:
            return FieldElem(self.ring, self.ring.pow(self.ring.inv(self.v), -n))
        return FieldElem(self.ring, self.ring.pow(self.v, n))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.ring == other.ring and self.ring.eq(self.v, other.v)
        if isinstance(other, (int, Fraction)):
            return self.ring.eq(self.v, self._rhs(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.ring.hash_raw(self.v)))

    def __bool__(self):
        return not self.ring.is_zero(self.v)

    def inverse(self):
        return FieldElem(self.ring, self.ring.inv(self.v))

    def __repr__(self):
        return self.ring.to_str(self.v)


# ---------------------------------------------------------------------------
# ring protocol


class Ring:
    is_field = False
    torsion_free = False  # n*x = 0 with n nonzero integer implies x = 0
    char = 0

    # subclasses provide: zero, one, add, mul, neg, eq, from_int, inv,
    # to_str, coerce, random

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_zero(self, a):
        return self.eq(a, self.zero)

    def is_one(self, a):
        return self.eq(a, self.one)

    def pow(self, a, n):
        if n < 0:
            raise RingError("negative power of ring element")
        r = self.one
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def from_fraction(self, fr):
        """Image of a rational number; errors when the denominator is not a unit."""
        num = self.from_int(fr.numerator)
        if fr.denominator == 1:
            return num
        return self.mul(num, self.inv(self.from_int(fr.denominator)))

    def hash_raw(self, a):
        return hash(a)

    def generators(self):
        """Named generators usable in text expressions, as {name: raw}."""
        return {}

    def embed_from(self, other):
        """Raw-value embedding ``other -> self``; identity by default."""
        if other == self:
            return lambda v: v
        raise RingError(f"no embedding of {other} into {self}")

    def __call__(self, x):
        return FieldElem(self, self.coerce(x))

    def el(self, raw):
        return FieldElem(self, raw)

    def is_raw(self, x):
        """Whether x is already a raw value of this ring."""
        return False

    def coerce(self, x):
        if isinstance(x, FieldElem):
            if x.ring != self:
                raise RingError(f"cannot move element between {x.ring} and {self}")
            return x.v
        if self.is_raw(x):
            return x
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction):
            return self.from_fraction(x)
        if isinstance(x, str):
            return parse_element(self, x)
        raise RingError(f"cannot coerce {x!r} into {self}")


class Rationals(Ring):
    is_field = True
    torsion_free = True
    char = 0
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def eq(self, a, b):
        return a == b

    def inv(self, a):
        if a == 0:
            raise RingError("division by zero in Q")
        return 1 / a

    def is_raw(self, x):
        return isinstance(x, Fraction)

    def is_zero(self, a):
        return a == 0

    def is_one(self, a):
        return a == 1

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, fr):
        return fr

    def to_str(self, a):
        return str(a)

    def random(self, rng, size=5):
        return Fraction(rng.randint(-size, size), rng.randint(1, size))

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class Integers(Ring):
    """Z, used as a Witt coefficient ring; not a field."""

    torsion_free = True
    char = 0
    zero = 0
    one = 1

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def eq(self, a, b):
        return a == b

    def inv(self, a):
        if a in (1, -1):
            return a
        raise RingError(f"{a} is not a unit in Z")

    def is_raw(self, x):
        return isinstance(x, int)

    def is_zero(self, a):
        return a == 0

    def is_one(self, a):
        return a == 1

    def from_int(self, n):
        return n

    def to_str(self, a):
        return str(a)

    def random(self, rng, size=5):
        return rng.randint(-size, size)

    def __eq__(self, other):
        return isinstance(other, Integers)

    def __hash__(self):
        return hash("Z")

    def __repr__(self):
        return "Z"


class IntegerModRing(Ring):
    """Z/N for arbitrary N >= 2; a field exactly when N is prime."""

    def __init__(self, n):
        if n < 2:
            raise RingError("modulus must be >= 2")
        self.n = n
        self.char = n
        self.zero = 0
        self.one = 1 % n

    def add(self, a, b):
        return (a + b) % self.n

    def sub(self, a, b):
        return (a - b) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def eq(self, a, b):
        return a == b

    def inv(self, a):
        try:
            return pow(a, -1, self.n)
        except ValueError:
            raise RingError(f"{a} is not a unit mod {self.n}") from None

    def from_int(self, n):
        return n % self.n

    def is_raw(self, x):
        return isinstance(x, int) and 0 <= x < self.n

    def is_zero(self, a):
        return a == 0

    def is_one(self, a):
        return a == self.one

    def to_str(self, a):
        return str(a)

    def random(self, rng, size=None):
        return rng.randrange(self.n)

    def __eq__(self, other):
        return type(other) is type(self) and other.n == self.n

    def __hash__(self):
        return hash(("Zmod", self.n))

    def __repr__(self):
        return f"Z/{self.n}"


class PrimeField(IntegerModRing):
    is_field = True

    def __init__(self, p):
        if not is_prime(p):
            raise RingError(f"{p} is not prime")
        super().__init__(p)
        self.p = p
        self.e = 1
        self.q = p

    def frobenius(self, a, times=1):
        return a

    def __repr__(self):
        return f"F{self.p}"


# ---------------------------------------------------------------------------
# dense F_p coefficient-list helpers, used for the extension-field modulus
# search and for internal modulus arithmetic.  Lists are little-endian with
# no trailing zeros.


def _fp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _fp_trim(out)


def _fp_rem(a, b, p):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    ilb = pow(lb, -1, p)
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        c = a[-1] * ilb % p
        for j, bj in enumerate(b):
            a[k + j] = (a[k + j] - c * bj) % p
        _fp_trim(a)
    return a


def _fp_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _fp_rem(a, b, p)
    if a:
        il = pow(a[-1], -1, p)
        a = [c * il % p for c in a]
    return a


def _fp_powmod_x(k, mod, p):
    """x^k mod (mod) over F_p."""
    result = [1]
    base = _fp_rem([0, 1], mod, p) if len(mod) <= 2 else [0, 1]
    while k:
        if k & 1:
            result = _fp_rem(_fp_mul(result, base, p), mod, p)
        base = _fp_rem(_fp_mul(base, base, p), mod, p)
        k >>= 1
    return result


def _fp_minus_x(g, p):
    """g(x) - x as a trimmed list."""
    out = [0] * max(len(g), 2)
    for i, c in enumerate(g):
        out[i] = c
    out[1] = (out[1] - 1) % p
    return _fp_trim(out)


def _fp_is_irreducible(f, p):
    """Rabin test: f monic of degree e over F_p."""
    e = len(f) - 1
    if e == 0:
        return False
    if _fp_minus_x(_fp_powmod_x(p ** e, f, p), p):
        return False
    for r in {d for d in range(2, e + 1) if e % d == 0 and is_prime(d)}:
        xpe = _fp_powmod_x(p ** (e // r), f, p)
        if len(_fp_gcd(f, _fp_minus_x(xpe, p), p)) > 1:
            return False
    return True


def lex_smallest_irreducible(p, e):
    """Monic irreducible of degree e over F_p, minimal in the lex order on
    the coefficient tuple (c_{e-1}, ..., c_0).  Returns the full little-endian
    coefficient list including the leading 1."""
    if e == 1:
        return [0, 1]

    def rec(tail):
        # tail holds (c_{e-1}, ..., c_k); extend until all coefficients fixed
        if len(tail) == e:
            f = list(reversed(tail)) + [1]
            return f if _fp_is_irreducible(f, p) else None
        for c in range(p):
            got = rec(tail + [c])
            if got is not None:
                return got
        return None

    f = rec([])
    if f is None:  # cannot happen: irreducibles of every degree exist
        raise RingError(f"no irreducible of degree {e} over F_{p}")
    return f


class ExtField(Ring):
    """F_{p^e} in the polynomial basis over F_p.

    Raw values are tuples of e ints.  The modulus is the deterministic
    lex-smallest irreducible, so results are reproducible without Conway
    polynomial tables.
    """

    is_field = True

    def __init__(self, p, e, modulus=None):
        if not is_prime(p):
            raise RingError(f"{p} is not prime")
        if not 1 <= e <= 16:
            raise RingError(f"extension degree {e} out of supported range 1..16")
        self.p = p
        self.e = e
        self.q = p ** e
        self.char = p
        if modulus is None:
            modulus = lex_smallest_irreducible(p, e)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise RingError("modulus must be monic of degree e")
        if not _fp_is_irreducible(list(modulus), p):
            raise RingError("modulus is not irreducible")
        self.modulus = tuple(modulus)
        self.zero = (0,) * e
        self.one = tuple([1] + [0] * (e - 1))
        # reduction table for x^e .. x^(2e-2)
        self._red = []
        cur = [(-c) % p for c in modulus[:-1]]  # x^e
        for _ in range(e - 1):
            self._red.append(tuple(cur))
            cur = [0] + cur
            lead = cur.pop()
            if lead:
                cur = [(ci - lead * mi) % p for ci, mi in zip(cur, modulus[:-1])]
        self.gen = tuple([0, 1] + [0] * (e - 2)) if e > 1 else (1,)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        p, e = self.p, self.e
        prod = [0] * (2 * e - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        out = list(prod[:e])
        for k in range(e, 2 * e - 1):
            c = prod[k]
            if c:
                red = self._red[k - e]
                for i in range(e):
                    out[i] = (out[i] + c * red[i]) % p
        return tuple(out)

    def eq(self, a, b):
        return a == b

    def inv(self, a):
        if a == self.zero:
            raise RingError(f"division by zero in {self}")
        # extended Euclid on coefficient lists
        p = self.p
        r0, r1 = list(self.modulus), _fp_trim(list(a))
        s0, s1 = [], [1]
        while r1:
            q, rem = self._divmod_lists(r0, r1)
            qs1 = _fp_mul(q, s1, p)
            diff = [0] * max(len(s0), len(qs1))
            for i, c in enumerate(s0):
                diff[i] = c
            for i, c in enumerate(qs1):
                diff[i] = (diff[i] - c) % p
            r0, r1 = r1, rem
            s0, s1 = s1, _fp_trim(diff)
        il = pow(r0[-1], -1, p)
        s0 = [c * il % p for c in s0]
        return tuple(s0 + [0] * (self.e - len(s0)))

    def _divmod_lists(self, a, b):
        p = self.p
        a = list(a)
        q = [0] * max(1, len(a) - len(b) + 1)
        db, ilb = len(b) - 1, pow(b[-1], -1, p)
        while a and len(a) - 1 >= db:
            k = len(a) - 1 - db
            c = a[-1] * ilb % p
            q[k] = c
            for j, bj in enumerate(b):
                a[k + j] = (a[k + j] - c * bj) % p
            _fp_trim(a)
        return _fp_trim(q), a

    def from_int(self, n):
        return tuple([n % self.p] + [0] * (self.e - 1))

    def is_raw(self, x):
        return isinstance(x, tuple) and len(x) == self.e and all(isinstance(c, int) for c in x)

    def is_zero(self, a):
        return a == self.zero

    def is_one(self, a):
        return a == self.one

    def frobenius(self, a, times=1):
        return self.pow(a, self.p ** times)

    def to_str(self, a):
        terms = []
        for i in range(self.e - 1, -1, -1):
            c = a[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("x" if c == 1 else f"{c}*x")
            else:
                terms.append(f"x^{i}" if c == 1 else f"{c}*x^{i}")
        return " + ".join(terms) if terms else "0"

    def generators(self):
        return {"x": self.gen}

    def random(self, rng, size=None):
        return tuple(rng.randrange(self.p) for _ in range(self.e))

    def encode(self, a):
        """Integer encoding sum c_i p^i, shared with the counting harness."""
        n = 0
        for c in reversed(a):
            n = n * self.p + c
        return n

    def decode(self, n):
        cs = []
        for _ in range(self.e):
            n, c = divmod(n, self.p)
            cs.append(c)
        return tuple(cs)

    def __eq__(self, other):
        return (type(other) is ExtField and other.p == self.p and other.e == self.e
                and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("GF", self.p, self.e, self.modulus))

    def __repr__(self):
        return f"F{self.p}^{self.e}"


Q = Rationals()
Z = Integers()


def make_finite_field(p, e):
    """F_{p^e} with the deterministic lex-smallest modulus; F_p when e = 1."""
    if not is_prime(p):
        raise RingError(f"{p} is not prime")
    if not 1 <= e <= 16:
        raise RingError(f"extension degree {e} out of supported range 1..16")
    if e == 1:
        return PrimeField(p)
    return ExtField(p, e)


# ---------------------------------------------------------------------------
# field spec strings: Q, F2, F3^2, Q(t), F5(t,u), Z, Z/6


def parse_field_spec(spec):
    spec = spec.strip()
    base, vars_part = spec, None
    if "(" in spec:
        if not spec.endswith(")"):
            raise RingError(f"malformed field spec {spec!r}")
        base, vars_part = spec[: spec.index("(")], spec[spec.index("(") + 1 : -1]
    if base == "Q":
        k = Q
    elif base == "Z":
        k = Z
    elif base.startswith("Z/"):
        k = IntegerModRing(int(base[2:]))
        if is_prime(k.n):
            k = PrimeField(k.n)
    elif base.startswith("F"):
        body = base[1:]
        if "^" in body:
            ps, es = body.split("^")
            k = make_finite_field(int(ps), int(es))
        else:
            k = make_finite_field(int(body), 1)
    else:
        raise RingError(f"unknown field spec {spec!r}")
    if vars_part is not None:
        from .funfield import FunctionField

        names = tuple(v.strip() for v in vars_part.split(",") if v.strip())
        k = FunctionField(k, names)
    return k


# ---------------------------------------------------------------------------
# element expressions: sums of products of integers, p/q fractions, named
# generators and powers, with parentheses.  This covers the documented
# polynomial text format `c*x1^a1*x2^a2 + ...` and rational functions like
# `(s^2+1)/(s-1)`.


def _tokenize(text):
    toks = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("int", int(text[i:j])))
            i = j
        elif c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("name", text[i:j]))
            i = j
        elif c in "+-*/^()":
            toks.append((c, c))
            i += 1
        else:
            raise RingError(f"unexpected character {c!r} in {text!r}")
    return toks


class _ExprParser:
    def __init__(self, ring, toks):
        self.ring = ring
        self.toks = toks
        self.pos = 0
        self.gens = ring.generators()

    def peek(self):
        return self.toks[self.pos][0] if self.pos < len(self.toks) else None

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def parse(self):
        v = self.sum()
        if self.pos != len(self.toks):
            raise RingError("trailing tokens in element expression")
        return v

    def sum(self):
        if self.peek() == "-":
            self.next()
            v = FieldElem(self.ring, self.ring.neg(self.product().v))
        else:
            if self.peek() == "+":
                self.next()
            v = self.product()
        while self.peek() in ("+", "-"):
            op = self.next()[0]
            rhs = self.product()
            v = v + rhs if op == "+" else v - rhs
        return v

    def product(self):
        v = self.power()
        while self.peek() in ("*", "/"):
            op = self.next()[0]
            rhs = self.power()
            v = v * rhs if op == "*" else v / rhs
        return v

    def power(self):
        v = self.atom()
        if self.peek() == "^":
            self.next()
            neg = False
            if self.peek() == "-":
                self.next()
                neg = True
            kind, val = self.next()
            if kind != "int":
                raise RingError("exponent must be an integer")
            v = v ** (-val if neg else val)
        return v

    def atom(self):
        kind, val = self.next()
        if kind == "int":
            return FieldElem(self.ring, self.ring.from_int(val))
        if kind == "name":
            if val not in self.gens:
                raise RingError(f"unknown generator {val!r} in {self.ring}")
            return FieldElem(self.ring, self.gens[val])
        if kind == "(":
            v = self.sum()
            if self.next()[0] != ")":
                raise RingError("unbalanced parentheses")
            return v
        raise RingError(f"unexpected token {val!r}")


def parse_element(ring, text):
    """Parse an element expression in ``ring``; returns a raw value."""
    return _ExprParser(ring, _tokenize(text)).parse().v
