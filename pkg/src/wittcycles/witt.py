"""Truncated big Witt vectors W_m(A) over an arbitrary coefficient ring.

Components are indexed 1..m.  The 1-unit correspondence uses the sign
convention

    w = (a_1, ..., a_m)   <->   prod_{i=1}^m (1 - a_i t^i)  mod t^(m+1),

so the Teichmueller lift [a] corresponds to 1 - a*t and the ghost map is
read off from -t f'/f.  The literature is split on this sign; everything
in this package consistently uses the convention above.

Addition and multiplication are computed through the 1-unit side, where
both are integral polynomial identities valid over every ring: addition
is series multiplication, and multiplication expands both arguments into
basic factors V_i[a_i] and uses

    V_i[a] * V_j[b] = gcd(i,j) * V_l([a^(l/i) b^(l/j)]),   l = lcm(i,j).

The classical universal sum/product/Frobenius polynomials are derived by
ghost inversion over Q, cached process-wide with a hard integrality
assertion, and tested to agree with the series route; they are also what
the Frobenius operator evaluates.
"""

import threading
from fractions import Fraction
from math import comb, gcd as int_gcd

from .funfield import SimpleExtension
from .mpoly import MPoly
from .rings import Integers, Q, RingError
from .series import TruncSeries


def divisors(n):
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


class WittVector:
    __slots__ = ("ring", "comps")

    def __init__(self, ring, comps):
        comps = [ring.coerce(c) for c in comps]
        if not comps:
            raise RingError("Witt vectors need length >= 1")
        self.ring = ring
        self.comps = comps

    @property
    def m(self):
        return len(self.comps)

    @classmethod
    def zero(cls, ring, m):
        return cls(ring, [ring.zero] * m)

    @classmethod
    def one(cls, ring, m):
        return cls(ring, [ring.one] + [ring.zero] * (m - 1))

    def _check(self, other):
        if not isinstance(other, WittVector):
            raise RingError("expected a Witt vector")
        if other.ring != self.ring or other.m != self.m:
            raise RingError("Witt vectors with mismatched length or ring")

    def __add__(self, other):
        return witt_add(self, other)

    def __mul__(self, other):
        return witt_mul(self, other)

    def __neg__(self):
        return witt_neg(self)

    def __sub__(self, other):
        return witt_add(self, witt_neg(other))

    def __eq__(self, other):
        if not isinstance(other, WittVector):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.m == other.m
            and all(self.ring.eq(a, b) for a, b in zip(self.comps, other.comps))
        )

    def __hash__(self):
        return hash((self.ring, tuple(self.ring.hash_raw(c) for c in self.comps)))

    def is_zero(self):
        return all(self.ring.is_zero(c) for c in self.comps)

    def __repr__(self):
        return "(" + ", ".join(self.ring.to_str(c) for c in self.comps) + ")"


# ---------------------------------------------------------------------------
# universal polynomials: derived once by ghost inversion over Q, with a hard
# integrality assertion.  Variables are interleaved a_1, b_1, a_2, b_2, ...
# so embeddings between different lengths are plain padding.


class IntegralityError(RingError):
    """The ghost inversion produced a non-integral coefficient: a bug."""


class _UniversalCache:
    def __init__(self):
        self.sum = {}
        self.prod = {}
        self.frob = {}
        self.lock = threading.Lock()

    def sum_poly(self, n):
        if n not in self.sum:
            self._derive_two_arg(n, "sum")
        return self.sum[n]

    def prod_poly(self, n):
        if n not in self.prod:
            self._derive_two_arg(n, "prod")
        return self.prod[n]

    def frob_poly(self, r, n):
        if (r, n) not in self.frob:
            self._derive_frob(r, n)
        return self.frob[(r, n)]

    def _derive_two_arg(self, n, mode):
        nv = 2 * n

        def gh(k, half):
            terms = {}
            for d in divisors(k):
                e = [0] * nv
                e[2 * (d - 1) + half] = k // d
                terms[tuple(e)] = Fraction(d)
            return MPoly(Q, nv, terms)

        polys = []
        for k in range(1, n + 1):
            if mode == "sum":
                target = gh(k, 0) + gh(k, 1)
            else:
                target = gh(k, 0) * gh(k, 1)
            acc = target
            for d in divisors(k)[:-1]:
                acc = acc - (polys[d - 1] ** (k // d)).scale(Fraction(d))
            polys.append(_assert_integral(acc.scale(Fraction(1, k))))
        with self.lock:
            table = self.sum if mode == "sum" else self.prod
            for k, p in enumerate(polys, start=1):
                table.setdefault(k, _strip(p, 2 * k))

    def _derive_frob(self, r, n):
        nv = r * n

        def gh(k):
            terms = {}
            for d in divisors(k):
                e = [0] * nv
                e[d - 1] = k // d
                terms[tuple(e)] = Fraction(d)
            return MPoly(Q, nv, terms)

        polys = []
        for k in range(1, n + 1):
            acc = gh(r * k)
            for d in divisors(k)[:-1]:
                acc = acc - (polys[d - 1] ** (k // d)).scale(Fraction(d))
            polys.append(_assert_integral(acc.scale(Fraction(1, k))))
        with self.lock:
            for k, p in enumerate(polys, start=1):
                self.frob.setdefault((r, k), _strip(p, r * k))


def _strip(mp, nv):
    """Drop unused trailing variables (their exponents are all zero)."""
    return MPoly(Q, nv, {e[:nv]: c for e, c in mp.terms.items()})


def _assert_integral(mp):
    for c in mp.terms.values():
        if c.denominator != 1:
            raise IntegralityError(
                "universal Witt polynomial has a non-integral coefficient; aborting"
            )
    return mp


_CACHE = _UniversalCache()


def sum_poly(n):
    """The universal addition polynomial S_n (interleaved a/b variables)."""
    return _CACHE.sum_poly(n)


def prod_poly(n):
    """The universal multiplication polynomial P_n."""
    return _CACHE.prod_poly(n)


def frobenius_poly(r, n):
    """The integral polynomial giving component n of F_r."""
    return _CACHE.frob_poly(r, n)


def eval_int_mpoly(mp, vals, R):
    """Evaluate an integer-coefficient MPoly on raw ring values."""
    pow_cache = [None] * len(vals)
    acc = R.zero
    for e, c in mp.terms.items():
        term = R.from_int(int(c))
        for i, ei in enumerate(e):
            if ei:
                pc = pow_cache[i]
                if pc is None:
                    pc = pow_cache[i] = {}
                v = pc.get(ei)
                if v is None:
                    v = pc[ei] = R.pow(vals[i], ei)
                term = R.mul(term, v)
        acc = R.add(acc, term)
    return acc


# ---------------------------------------------------------------------------
# ghost coordinates


def ghost(w):
    """gh_n = sum over d|n of d * a_d^(n/d), for n = 1..m."""
    R = w.ring
    out = []
    for n in range(1, w.m + 1):
        acc = R.zero
        for d in divisors(n):
            acc = R.add(acc, R.mul(R.from_int(d), R.pow(w.comps[d - 1], n // d)))
        out.append(acc)
    return out


def from_ghost(g, ring):
    """Invert the ghost map over a torsion-free ring.

    Over Z the divisions are checked for exactness and a RingError is
    raised on failure instead of silently moving to Q.
    """
    if not ring.torsion_free:
        raise RingError("ghost inversion needs a torsion-free ring")
    g = [ring.coerce(c) for c in g]
    comps = []
    for n in range(1, len(g) + 1):
        acc = g[n - 1]
        for d in divisors(n)[:-1]:
            acc = ring.sub(acc, ring.mul(ring.from_int(d), ring.pow(comps[d - 1], n // d)))
        comps.append(_div_int(ring, acc, n))
    return WittVector(ring, comps)


def _div_int(R, a, n):
    if n == 1:
        return a
    if isinstance(R, Integers):
        if a % n:
            raise RingError(f"ghost inversion: {a} is not divisible by {n} over Z")
        return a // n
    return R.mul(a, R.inv(R.from_int(n)))


# ---------------------------------------------------------------------------
# arithmetic


def witt_add(u, v):
    u._check(v)
    return from_one_unit(to_one_unit(u) * to_one_unit(v))


def witt_neg(u):
    return from_one_unit(to_one_unit(u).inverse())


def witt_mul(u, v):
    u._check(v)
    R = u.ring
    m = u.m
    acc = TruncSeries.one(R, m)
    for i in range(1, m + 1):
        ai = u.comps[i - 1]
        if R.is_zero(ai):
            continue
        for j in range(1, m + 1):
            bj = v.comps[j - 1]
            if R.is_zero(bj):
                continue
            g = int_gcd(i, j)
            l = i * j // g
            if l > m:
                continue
            c = R.mul(R.pow(ai, l // i), R.pow(bj, l // j))
            acc = acc * _basic_factor_power(R, c, l, g, m)
    return from_one_unit(acc)


def _basic_factor_power(R, c, l, g, m):
    """(1 - c t^l)^g truncated at order m."""
    coeffs = [R.zero] * (m + 1)
    k = 0
    while l * k <= m and k <= g:
        sign = -comb(g, k) if k % 2 else comb(g, k)
        coeffs[l * k] = R.mul(R.from_int(sign), R.pow(c, k))
        k += 1
    return TruncSeries(R, coeffs, m)


def witt_scalar(n, w):
    """n-fold Witt self-sum (n may be negative); the module's only integer action."""
    if n == 0:
        return WittVector.zero(w.ring, w.m)
    base = w if n > 0 else witt_neg(w)
    n = abs(n)
    acc = None
    cur = base
    while n:
        if n & 1:
            acc = cur if acc is None else witt_add(acc, cur)
        n >>= 1
        if n:
            cur = witt_add(cur, cur)
    return acc


def witt_add_universal(u, v):
    """Addition through the cached universal polynomials (reference route)."""
    u._check(v)
    return _eval_two_arg(u, v, sum_poly)


def witt_mul_universal(u, v):
    u._check(v)
    return _eval_two_arg(u, v, prod_poly)


def _eval_two_arg(u, v, poly_of):
    R = u.ring
    vals = []
    for a, b in zip(u.comps, v.comps):
        vals.append(a)
        vals.append(b)
    comps = [eval_int_mpoly(poly_of(n), vals[: 2 * n], R) for n in range(1, u.m + 1)]
    return WittVector(R, comps)


# ---------------------------------------------------------------------------
# operators


def teichmueller(a, m, ring=None):
    """[a] = (a, 0, ..., 0); multiplicative."""
    from .rings import FieldElem

    if ring is None:
        if not isinstance(a, FieldElem):
            raise RingError("teichmueller needs a ring when given a raw value")
        ring, a = a.ring, a.v
    return WittVector(ring, [ring.coerce(a)] + [ring.zero] * (m - 1))


def verschiebung(n, w):
    """V_n: W_m -> W_(nm+n-1), placing component i at slot n*i."""
    if n < 1:
        raise RingError("verschiebung index must be >= 1")
    R = w.ring
    out_len = n * w.m + n - 1
    comps = [R.zero] * out_len
    for i in range(1, w.m + 1):
        comps[n * i - 1] = w.comps[i - 1]
    return WittVector(R, comps)


def frobenius(n, w):
    """F_n: W_(nm+n-1) -> W_m, the ghost-side reindexing gh_i -> gh_(ni)."""
    if n < 1:
        raise RingError("frobenius index must be >= 1")
    if n == 1:
        return WittVector(w.ring, list(w.comps))
    L = w.m
    if (L + 1) % n:
        raise RingError(f"frobenius F_{n} needs input length of the form {n}m+{n - 1}")
    m = (L + 1) // n - 1
    if m < 1:
        raise RingError(f"frobenius F_{n} needs input length of the form {n}m+{n - 1}")
    R = w.ring
    comps = [eval_int_mpoly(frobenius_poly(n, i), w.comps[: n * i], R) for i in range(1, m + 1)]
    return WittVector(R, comps)


def restrict(w, m2):
    """R: drop components above m2."""
    if not 1 <= m2 <= w.m:
        raise RingError("restriction target out of range")
    return WittVector(w.ring, w.comps[:m2])


# ---------------------------------------------------------------------------
# the 1-unit correspondence


def to_one_unit(w):
    """prod (1 - a_i t^i) mod t^(m+1)."""
    R = w.ring
    m = w.m
    acc = TruncSeries.one(R, m)
    for i in range(1, m + 1):
        a = w.comps[i - 1]
        if not R.is_zero(a):
            acc = acc * _basic_factor_power(R, a, i, 1, m)
    return acc


def from_one_unit(f, length=None, ring=None):
    """Peel a 1-unit series into Witt components; inverse of to_one_unit."""
    if isinstance(f, TruncSeries):
        R = f.ring
        coeffs = f.coeffs
        if length is None:
            length = f.order
    else:
        if ring is None:
            raise RingError("from_one_unit needs a ring when given a plain list")
        R = ring
        coeffs = [R.coerce(c) for c in f]
        if length is None:
            length = len(coeffs) - 1
    if not coeffs or not R.is_one(coeffs[0]):
        raise RingError("1-unit series must have constant term 1")
    m = length
    cur = list(coeffs[: m + 1]) + [R.zero] * max(0, m + 1 - len(coeffs))
    comps = []
    for i in range(1, m + 1):
        a = R.neg(cur[i])
        comps.append(a)
        if not R.is_zero(a):
            # divide by (1 - a t^i): multiply by sum_k a^k t^(ik)
            new = list(cur)
            power = R.one
            k = 1
            while i * k <= m:
                power = R.mul(power, a)
                for idx in range(i * k, m + 1):
                    new[idx] = R.add(new[idx], R.mul(power, cur[idx - i * k]))
                k += 1
            cur = new
    return WittVector(R, comps)


# ---------------------------------------------------------------------------
# trace


def witt_trace(w, ext):
    """Witt trace along a finite separable simple extension L/k.

    Realized on 1-units as the norm: the result's series is the
    determinant of multiplication by the series of w on L tensor
    k[t]/(t^(m+1)), which equals Res_theta(g, f_w)/lc for the monic
    minimal polynomial g.  Additive; on Teichmuellers it is the Witt sum
    of the conjugate Teichmuellers.
    """
    if not isinstance(ext, SimpleExtension):
        raise RingError("witt_trace needs a simple extension")
    if w.ring != ext:
        raise RingError("Witt vector is not over the extension field")
    if not ext.is_separable():
        raise RingError("witt_trace: inseparable extension")
    k = ext.base
    D = ext.degree
    m = w.m
    f = to_one_unit(w)
    if D == 1:
        emb = [c[0] for c in f.coeffs]
        return from_one_unit(TruncSeries(k, emb, m))
    # columns: f * theta^j, coordinates give series over k
    cols = []
    cur = f
    for j in range(D):
        cols.append(cur)
        if j < D - 1:
            cur = TruncSeries(ext, [ext.mul(c, ext.gen) for c in cur.coeffs], m)
    M = [[TruncSeries(k, [col.coeffs[idx][i] for idx in range(m + 1)], m) for col in cols] for i in range(D)]
    det = TruncSeries.one(k, m)
    for c in range(D):
        piv = M[c][c]
        det = det * piv
        inv = piv.inverse()
        for i in range(c + 1, D):
            entry = M[i][c]
            if all(k.is_zero(x) for x in entry.coeffs):
                continue
            factor = entry * inv
            for j in range(c, D):
                M[i][j] = M[i][j] - factor * M[c][j]
    return from_one_unit(det)
