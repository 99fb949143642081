"""Dense univariate polynomials over a coefficient ring.

Coefficients are raw ring values in little-endian order with no trailing
zeros; the zero polynomial has an empty list.  Division, gcd and resultant
require the coefficient ring to be a field.
"""

from .rings import RingError


class UniPoly:
    __slots__ = ("ring", "coeffs", "var")

    def __init__(self, ring, coeffs, var="x"):
        while coeffs and ring.is_zero(coeffs[-1]):
            coeffs = coeffs[:-1]
        self.ring = ring
        self.coeffs = list(coeffs)
        self.var = var

    @classmethod
    def gen(cls, ring, var="x"):
        return cls(ring, [ring.zero, ring.one], var)

    @classmethod
    def const(cls, ring, c, var="x"):
        return cls(ring, [ring.coerce(c)], var)

    @classmethod
    def from_elems(cls, elems, ring, var="x"):
        return cls(ring, [ring.coerce(e) for e in elems], var)

    # -- structure -----------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.coeffs

    @property
    def lc(self):
        if not self.coeffs:
            raise RingError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.zero

    def is_monic(self):
        return bool(self.coeffs) and self.ring.is_one(self.coeffs[-1])

    def monic(self):
        if self.is_zero() or self.is_monic():
            return self
        il = self.ring.inv(self.lc)
        return UniPoly(self.ring, [self.ring.mul(c, il) for c in self.coeffs], self.var)

    def _same(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly.const(self.ring, other, self.var)
        if other.ring != self.ring:
            raise RingError("polynomials over different rings")
        return other

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = self._same(other)
        R = self.ring
        n = max(len(self.coeffs), len(other.coeffs))
        out = [R.zero] * n
        for i, c in enumerate(self.coeffs):
            out[i] = c
        for i, c in enumerate(other.coeffs):
            out[i] = R.add(out[i], c)
        return UniPoly(R, out, self.var)

    __radd__ = __add__

    def __neg__(self):
        R = self.ring
        return UniPoly(R, [R.neg(c) for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return (-self) + self._same(other)

    def __mul__(self, other):
        other = self._same(other)
        R = self.ring
        if self.is_zero() or other.is_zero():
            return UniPoly(R, [], self.var)
        out = [R.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if R.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = R.add(out[i + j], R.mul(a, b))
        return UniPoly(R, out, self.var)

    __rmul__ = __mul__

    def scale(self, c):
        R = self.ring
        c = R.coerce(c)
        return UniPoly(R, [R.mul(c, a) for a in self.coeffs], self.var)

    def shift_up(self, k):
        """Multiply by var^k."""
        if self.is_zero():
            return self
        return UniPoly(self.ring, [self.ring.zero] * k + self.coeffs, self.var)

    def __pow__(self, n):
        result = UniPoly.const(self.ring, self.ring.one, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other):
        other = self._same(other)
        if other.is_zero():
            raise RingError("polynomial division by zero")
        R = self.ring
        rem = list(self.coeffs)
        db = other.degree
        ilc = R.inv(other.lc)
        q = [R.zero] * max(0, len(rem) - db)
        while len(rem) - 1 >= db and rem:
            c = R.mul(rem[-1], ilc)
            k = len(rem) - 1 - db
            q[k] = c
            for j, bj in enumerate(other.coeffs):
                rem[k + j] = R.sub(rem[k + j], R.mul(c, bj))
            while rem and R.is_zero(rem[-1]):
                rem.pop()
        return UniPoly(R, q, self.var), UniPoly(R, rem, self.var)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise RingError("division is not exact")
        return q

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            if other.ring != self.ring:
                return False
            return len(self.coeffs) == len(other.coeffs) and all(
                self.ring.eq(a, b) for a, b in zip(self.coeffs, other.coeffs)
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, tuple(self.ring.hash_raw(c) for c in self.coeffs)))

    # -- calculus and evaluation ----------------------------------------

    def derivative(self):
        R = self.ring
        return UniPoly(
            R,
            [R.mul(R.from_int(i), c) for i, c in enumerate(self.coeffs)][1:],
            self.var,
        )

    def eval_raw(self, x, ring=None, embed=None):
        """Horner evaluation; ``embed`` maps self's coefficients into ``ring``."""
        R = ring if ring is not None else self.ring
        emb = embed if embed is not None else (lambda c: c)
        acc = R.zero
        for c in reversed(self.coeffs):
            acc = R.add(R.mul(acc, x), emb(c))
        return acc

    def __call__(self, x):
        from .rings import FieldElem

        if isinstance(x, FieldElem):
            if x.ring == self.ring:
                return FieldElem(x.ring, self.eval_raw(x.v))
            return FieldElem(x.ring, self.eval_raw(x.v, x.ring, x.ring.embed_from(self.ring)))
        return FieldElem(self.ring, self.eval_raw(self.ring.coerce(x)))

    def shifted(self, c):
        """f(x + c), by repeated synthetic division at c."""
        R = self.ring
        c = R.coerce(c)
        cs = list(self.coeffs)
        out = []
        for _ in range(len(self.coeffs)):
            quot = [R.zero] * (len(cs) - 1)
            acc = R.zero
            for i in range(len(cs) - 1, 0, -1):
                acc = R.add(R.mul(acc, c), cs[i])
                quot[i - 1] = acc
            out.append(R.add(R.mul(acc, c), cs[0]))
            cs = quot
            if not cs:
                break
        return UniPoly(R, out, self.var)

    def reversed_coeffs(self):
        """x^deg * f(1/x); used for behaviour at infinity."""
        return UniPoly(self.ring, list(reversed(self.coeffs)), self.var)

    def map_coeffs(self, func, ring=None, var=None):
        R = ring if ring is not None else self.ring
        return UniPoly(R, [func(c) for c in self.coeffs], var or self.var)

    # -- gcd family -----------------------------------------------------

    def gcd(self, other):
        a, b = self, self._same(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def xgcd(self, other):
        """(g, u, v) with u*self + v*other = g monic."""
        R = self.ring
        other = self._same(other)
        a, b = self, other
        ua, va = UniPoly.const(R, R.one, self.var), UniPoly(R, [], self.var)
        ub, vb = UniPoly(R, [], self.var), UniPoly.const(R, R.one, self.var)
        while not b.is_zero():
            q, r = a.divmod(b)
            a, b = b, r
            ua, ub = ub, ua - q * ub
            va, vb = vb, va - q * vb
        if a.is_zero():
            return a, ua, va
        il = R.inv(a.lc)
        return a.monic(), ua.scale(il), va.scale(il)

    def pow_mod(self, n, modulus):
        result = UniPoly.const(self.ring, self.ring.one, self.var)
        base = self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return result

    def squarefree_part(self):
        d = self.derivative()
        if d.is_zero():
            return self  # char-p p-th power; handled by the factorizer
        return self.exact_div(self.gcd(d)) if self.degree > 0 else self

    # -- display ---------------------------------------------------------

    def to_str(self):
        if not self.coeffs:
            return "0"
        R = self.ring
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if R.is_zero(c):
                continue
            cs = R.to_str(c)
            need_parens = ("+" in cs[1:]) or ("-" in cs[1:]) or ("/" in cs)
            if need_parens:
                cs = f"({cs})"
            if i == 0:
                terms.append(cs)
            else:
                xs = self.var if i == 1 else f"{self.var}^{i}"
                terms.append(xs if cs == "1" else f"{cs}*{xs}")
        return " + ".join(terms)

    def __repr__(self):
        return self.to_str()


def resultant(f, g):
    """Res(f, g) = lc(f)^deg(g) * prod of g over the roots of f.

    Euclidean-style computation; coefficients must form a field and f must
    be nonzero.
    """
    if not isinstance(f, UniPoly) or not isinstance(g, UniPoly):
        raise RingError("resultant expects UniPoly arguments")
    if f.ring != g.ring:
        raise RingError("resultant of polynomials over different fields")
    R = f.ring
    if f.is_zero():
        raise RingError("resultant of the zero polynomial")
    if g.is_zero():
        return R.zero if f.degree > 0 else R.one
    acc = R.one
    sign = 1
    while g.degree > 0:
        if f.degree < g.degree:
            if (f.degree * g.degree) % 2 == 1:
                sign = -sign
            f, g = g, f
            continue
        r = f % g
        if r.is_zero():
            return R.zero
        acc = R.mul(acc, R.pow(g.lc, f.degree - r.degree))
        if (f.degree * g.degree) % 2 == 1:
            sign = -sign
        f, g = g, r
    acc = R.mul(acc, R.pow(g.lc, f.degree))
    return acc if sign == 1 else R.neg(acc)
