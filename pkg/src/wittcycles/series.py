"""Truncated power series over an arbitrary coefficient ring.

A TruncSeries of order M holds exactly the coefficients c_0..c_M of an
element of R[t]/(t^(M+1)).  These carry the 1-unit side of the Witt
vector correspondence; only ring operations on R are required, so they
work over Z/N and other non-fields as well.
"""

from fractions import Fraction

from .rings import RingError


class TruncSeries:
    __slots__ = ("ring", "order", "coeffs")

    def __init__(self, ring, coeffs, order=None):
        if order is None:
            order = len(coeffs) - 1
        coeffs = [ring.coerce(c) for c in coeffs[: order + 1]]
        coeffs += [ring.zero] * (order + 1 - len(coeffs))
        self.ring = ring
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def one(cls, ring, order):
        return cls(ring, [ring.one], order)

    def is_one_unit(self):
        return self.ring.is_one(self.coeffs[0])

    def truncate(self, order):
        if order > self.order:
            raise RingError("cannot extend a truncated series")
        return TruncSeries(self.ring, self.coeffs[: order + 1], order)

    def __add__(self, other):
        self._check(other)
        R = self.ring
        return TruncSeries(R, [R.add(a, b) for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __sub__(self, other):
        self._check(other)
        R = self.ring
        return TruncSeries(R, [R.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __neg__(self):
        R = self.ring
        return TruncSeries(R, [R.neg(a) for a in self.coeffs], self.order)

    def __mul__(self, other):
        self._check(other)
        R = self.ring
        n = self.order
        out = [R.zero] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if R.is_zero(a):
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if not R.is_zero(b):
                    out[i + j] = R.add(out[i + j], R.mul(a, b))
        return TruncSeries(R, out, n)

    def _check(self, other):
        if not isinstance(other, TruncSeries) or other.ring != self.ring or other.order != self.order:
            raise RingError("series mismatch (ring or truncation order)")

    def inverse(self):
        """Multiplicative inverse; requires the constant term to be a unit."""
        R = self.ring
        c0 = R.inv(self.coeffs[0])
        out = [c0] + [R.zero] * self.order
        for k in range(1, self.order + 1):
            acc = R.zero
            for j in range(1, k + 1):
                acc = R.add(acc, R.mul(self.coeffs[j], out[k - j]))
            out[k] = R.neg(R.mul(c0, acc))
        return TruncSeries(R, out, self.order)

    def derivative(self):
        """Formal derivative, with the truncation order dropping by one."""
        R = self.ring
        return TruncSeries(
            R,
            [R.mul(R.from_int(i), c) for i, c in enumerate(self.coeffs)][1:],
            self.order - 1,
        )

    def scale(self, c):
        R = self.ring
        c = R.coerce(c)
        return TruncSeries(R, [R.mul(c, a) for a in self.coeffs], self.order)

    def pow_int(self, n):
        result = TruncSeries.one(self.ring, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.order == other.order
            and all(self.ring.eq(a, b) for a, b in zip(self.coeffs, other.coeffs))
        )

    def __hash__(self):
        return hash((self.ring, self.order, tuple(self.ring.hash_raw(c) for c in self.coeffs)))

    def __repr__(self):
        R = self.ring
        parts = []
        for i, c in enumerate(self.coeffs):
            if R.is_zero(c):
                continue
            cs = R.to_str(c)
            if i == 0:
                parts.append(cs)
            else:
                t = "t" if i == 1 else f"t^{i}"
                parts.append(t if cs == "1" else f"({cs})*{t}")
        return (" + ".join(parts) if parts else "0") + f" + O(t^{self.order + 1})"


# ---------------------------------------------------------------------------
# exact exp/log over Q, used for Artin-Hasse truncations and the Moebius
# product cross-check.  Coefficient lists of Fractions, index = power of t.


def q_exp(coeffs, order):
    """exp of a series with zero constant term, to the given order."""
    if coeffs and coeffs[0] != 0:
        raise RingError("exp needs zero constant term")
    s = list(coeffs[: order + 1]) + [Fraction(0)] * max(0, order + 1 - len(coeffs))
    out = [Fraction(1)] + [Fraction(0)] * order
    # f' = s' f, so (n+1) c_{n+1} = sum_{j} (j+1) s_{j+1} c_{n-j}
    for n in range(order):
        acc = Fraction(0)
        for j in range(n + 1):
            if j + 1 <= order:
                acc += (j + 1) * s[j + 1] * out[n - j]
        out[n + 1] = acc / (n + 1)
    return out


def q_log(coeffs, order):
    """log of a 1-unit series, to the given order."""
    if not coeffs or coeffs[0] != 1:
        raise RingError("log needs constant term 1")
    f = list(coeffs[: order + 1]) + [Fraction(0)] * max(0, order + 1 - len(coeffs))
    # log(f)' = f'/f: solve g with g' = f'/f, g(0) = 0
    out = [Fraction(0)] * (order + 1)
    # compute f^{-1} then integrate f' * f^{-1}
    inv = [Fraction(1)] + [Fraction(0)] * order
    for k in range(1, order + 1):
        acc = Fraction(0)
        for j in range(1, k + 1):
            acc += f[j] * inv[k - j]
        inv[k] = -acc
    for n in range(1, order + 1):
        acc = Fraction(0)
        for j in range(1, n + 1):
            acc += j * f[j] * inv[n - j]
        out[n] = acc / n
    return out


def q_pow_fraction(coeffs, exponent, order):
    """1-unit series raised to a rational exponent, exactly over Q."""
    lg = q_log(coeffs, order)
    scaled = [c * exponent for c in lg]
    return q_exp(scaled, order)
