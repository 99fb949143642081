"""Artin-Hasse truncations, the epsilon 0-cycle shadow, and the p-typical
decomposition of truncated big Witt vectors over Z_(p)-algebras.

The splitting W_m(A) = prod over j coprime to p of W_(n(j))(A) is computed
through polynomials derived once by ghost inversion over Q; their
denominators are asserted to be prime to p, so they reduce to any ring in
which the relevant integers are invertible.  The epsilon comparison (the
multiplication route) is kept as a cross-check in the test suite rather
than as the definition.
"""

import threading
from fractions import Fraction

from .mpoly import MPoly
from .rings import Q, RingError, is_prime
from .series import TruncSeries, q_exp, q_pow_fraction
from .witt import WittVector, divisors, eval_int_mpoly, from_one_unit


def _check_prime(p):
    if not is_prime(p):
        raise RingError(f"{p} is not prime")


def n_of_j(j, p, m):
    """The unique n with j*p^n <= m < j*p^(n+1)."""
    _check_prime(p)
    if j < 1 or j > m:
        raise RingError("j out of range")
    if j % p == 0:
        raise RingError(f"{j} is not coprime to {p}")
    n = 0
    while j * p ** (n + 1) <= m:
        n += 1
    return n


def coprime_indices(p, m):
    return [j for j in range(1, m + 1) if j % p]


# ---------------------------------------------------------------------------
# Artin-Hasse


class ArtinHasseTrunc:
    """Truncation of exp(-sum t^(p^i)/p^i); all denominators prime to p."""

    __slots__ = ("p", "m", "series")

    def __init__(self, p, m, series):
        self.p = p
        self.m = m
        self.series = series

    def coefficients(self):
        return list(self.series.coeffs)

    def __repr__(self):
        return f"ArtinHasseTrunc(p={self.p}, m={self.m}, {self.series!r})"


def artin_hasse(p, m):
    """The inverse Artin-Hasse 1-unit, truncated to order m, over Q."""
    _check_prime(p)
    if m < 1:
        raise RingError("truncation order must be >= 1")
    arg = [Fraction(0)] * (m + 1)
    i = 0
    while p ** i <= m:
        arg[p ** i] = -Fraction(1, p ** i)
        i += 1
    coeffs = q_exp(arg, m)
    for c in coeffs:
        if c.denominator % p == 0:
            raise RingError("Artin-Hasse coefficient is not p-integral; aborting")
    return ArtinHasseTrunc(p, m, TruncSeries(Q, coeffs, m))


def artin_hasse_product_formula(p, m):
    """Moebius-product form prod_{(j,p)=1} (1-t^j)^(mu(j)/j), for cross-checks."""
    _check_prime(p)
    acc = [Fraction(1)] + [Fraction(0)] * m
    for j in coprime_indices(p, m):
        mu = _moebius(j)
        if mu == 0:
            continue
        base = [Fraction(1)] + [Fraction(0)] * m
        base[j] = Fraction(-1)
        powed = q_pow_fraction(base, Fraction(mu, j), m)
        acc = _q_mul_trunc(acc, powed, m)
    return TruncSeries(Q, acc, m)


def _q_mul_trunc(a, b, m):
    out = [Fraction(0)] * (m + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(m + 1 - i):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


def _moebius(n):
    mu = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            mu = -mu
        d += 1
    if n > 1:
        mu = -mu
    return mu


def epsilon(p, m, ring):
    """from_one_unit of the reduced Artin-Hasse truncation: a W_m idempotent."""
    ah = artin_hasse(p, m)
    comps = []
    for c in ah.series.coeffs:
        try:
            comps.append(ring.from_fraction(c))
        except RingError as exc:
            raise RingError(
                f"epsilon({p}, {m}) needs 1/{c.denominator} in {ring}: {exc}"
            ) from None
    return from_one_unit(comps, length=m, ring=ring)


# ---------------------------------------------------------------------------
# p-typical Witt vectors


class PTypicalWitt:
    """Witt vector with indices p^0..p^n (level n, n+1 components)."""

    __slots__ = ("p", "ring", "comps")

    def __init__(self, p, ring, comps):
        _check_prime(p)
        comps = [ring.coerce(c) for c in comps]
        if not comps:
            raise RingError("p-typical Witt vectors need level >= 0")
        self.p = p
        self.ring = ring
        self.comps = comps

    @property
    def level(self):
        return len(self.comps) - 1

    @classmethod
    def zero(cls, p, ring, level):
        return cls(p, ring, [ring.zero] * (level + 1))

    @classmethod
    def teichmueller(cls, p, a, level, ring=None):
        from .rings import FieldElem

        if ring is None:
            if not isinstance(a, FieldElem):
                raise RingError("teichmueller needs a ring when given a raw value")
            ring, a = a.ring, a.v
        return cls(p, ring, [ring.coerce(a)] + [ring.zero] * level)

    def _check(self, other):
        if not isinstance(other, PTypicalWitt) or other.p != self.p:
            raise RingError("p-typical Witt vectors with different p")
        if other.ring != self.ring or other.level != self.level:
            raise RingError("p-typical Witt vectors with mismatched level or ring")

    def ghost(self):
        """w_i = sum_{s<=i} p^s a_s^(p^(i-s))."""
        R = self.ring
        p = self.p
        out = []
        for i in range(self.level + 1):
            acc = R.zero
            for s in range(i + 1):
                acc = R.add(acc, R.mul(R.from_int(p ** s), R.pow(self.comps[s], p ** (i - s))))
            out.append(acc)
        return out

    def __add__(self, other):
        self._check(other)
        return _eval_ptyp_two_arg(self, other, "sum")

    def __mul__(self, other):
        self._check(other)
        return _eval_ptyp_two_arg(self, other, "prod")

    def __neg__(self):
        R = self.ring
        vals = list(self.comps)
        comps = [
            eval_int_mpoly(_PCACHE.neg_poly(self.p, i), vals[: i + 1], R)
            for i in range(self.level + 1)
        ]
        return PTypicalWitt(self.p, R, comps)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, PTypicalWitt):
            return NotImplemented
        return (
            self.p == other.p
            and self.ring == other.ring
            and self.level == other.level
            and all(self.ring.eq(a, b) for a, b in zip(self.comps, other.comps))
        )

    def __hash__(self):
        return hash((self.p, self.ring, tuple(self.ring.hash_raw(c) for c in self.comps)))

    def is_zero(self):
        return all(self.ring.is_zero(c) for c in self.comps)

    def __repr__(self):
        return "(" + ", ".join(self.ring.to_str(c) for c in self.comps) + f")_p={self.p}"


def p_frobenius(w):
    """F: level n -> level n-1, the ghost shift w_i -> w_(i+1)."""
    if w.level < 1:
        raise RingError("p-typical Frobenius needs level >= 1")
    R = w.ring
    comps = [
        eval_int_mpoly(_PCACHE.frob_poly(w.p, i), w.comps[: i + 2], R)
        for i in range(w.level)
    ]
    return PTypicalWitt(w.p, R, comps)


def p_verschiebung(w):
    """V: level n -> level n+1, shifting components up one slot."""
    R = w.ring
    return PTypicalWitt(w.p, R, [R.zero] + list(w.comps))


def p_restrict(w, level):
    if not 0 <= level <= w.level:
        raise RingError("restriction level out of range")
    return PTypicalWitt(w.p, w.ring, w.comps[: level + 1])


def p_scalar(n, w):
    if n == 0:
        return PTypicalWitt.zero(w.p, w.ring, w.level)
    base = w if n > 0 else -w
    n = abs(n)
    acc = None
    cur = base
    while n:
        if n & 1:
            acc = cur if acc is None else acc + cur
        n >>= 1
        if n:
            cur = cur + cur
    return acc


def p_from_ghost(g, p, ring):
    if not ring.torsion_free:
        raise RingError("ghost inversion needs a torsion-free ring")
    g = [ring.coerce(c) for c in g]
    comps = []
    for i in range(len(g)):
        acc = g[i]
        for s in range(i):
            acc = ring.sub(acc, ring.mul(ring.from_int(p ** s), ring.pow(comps[s], p ** (i - s))))
        comps.append(ring.mul(acc, ring.inv(ring.from_int(p ** i))) if i else acc)
    return PTypicalWitt(p, ring, comps)


# ---------------------------------------------------------------------------
# polynomial caches


class _PTypicalCache:
    def __init__(self):
        self.two_arg = {}  # (p, 'sum'|'prod', i) -> MPoly, interleaved vars
        self.neg = {}  # (p, i)
        self.frob = {}  # (p, i)
        self.split = {}  # (p, j, i) -> MPoly in a_1..a_(j p^i)
        self.join = {}  # (p, m, n) -> MPoly in flattened y-vars
        self.lock = threading.Lock()

    def _ptyp_ghost(self, p, i, nv, var_of):
        terms = {}
        for s in range(i + 1):
            e = [0] * nv
            e[var_of(s)] = p ** (i - s)
            terms[tuple(e)] = Fraction(p ** s)
        return MPoly(Q, nv, terms)

    def two_arg_poly(self, p, mode, i):
        key = (p, mode, i)
        if key not in self.two_arg:
            nv = 2 * (i + 1)
            polys = []
            for k in range(i + 1):
                ga = self._ptyp_ghost(p, k, nv, lambda s: 2 * s)
                gb = self._ptyp_ghost(p, k, nv, lambda s: 2 * s + 1)
                target = ga + gb if mode == "sum" else ga * gb
                acc = target
                for s in range(k):
                    acc = acc - (polys[s] ** (p ** (k - s))).scale(Fraction(p ** s))
                polys.append(_assert_denoms(acc.scale(Fraction(1, p ** k)), 1))
            with self.lock:
                for k, poly in enumerate(polys):
                    self.two_arg.setdefault((p, mode, k), poly)
        return self.two_arg[key]

    def neg_poly(self, p, i):
        key = (p, i)
        if key not in self.neg:
            nv = i + 1
            polys = []
            for k in range(i + 1):
                g = self._ptyp_ghost(p, k, nv, lambda s: s)
                acc = -g
                for s in range(k):
                    acc = acc - (polys[s] ** (p ** (k - s))).scale(Fraction(p ** s))
                polys.append(_assert_denoms(acc.scale(Fraction(1, p ** k)), 1))
            with self.lock:
                for k, poly in enumerate(polys):
                    self.neg.setdefault((p, k), poly)
        return self.neg[key]

    def frob_poly(self, p, i):
        """Component i of F in variables y_0..y_(i+1)."""
        key = (p, i)
        if key not in self.frob:
            nv = i + 2
            polys = []
            for k in range(i + 1):
                g = self._ptyp_ghost(p, k + 1, nv, lambda s: s)
                acc = g
                for s in range(k):
                    acc = acc - (polys[s] ** (p ** (k - s))).scale(Fraction(p ** s))
                polys.append(_assert_denoms(acc.scale(Fraction(1, p ** k)), 1))
            with self.lock:
                for k, poly in enumerate(polys):
                    self.frob.setdefault((p, k), poly)
        return self.frob[key]

    def split_poly(self, p, j, i):
        """y_i of the j-component, as a polynomial in a_1..a_(j p^i)."""
        key = (p, j, i)
        if key not in self.split:
            nv = j * p ** i
            polys = []
            for k in range(i + 1):
                g = _big_ghost_mpoly(j * p ** k, nv)
                acc = g
                for s in range(k):
                    acc = acc - (polys[s] ** (p ** (k - s))).scale(Fraction(p ** s))
                polys.append(_assert_denoms(acc.scale(Fraction(1, p ** k)), p))
            with self.lock:
                for k, poly in enumerate(polys):
                    self.split.setdefault((p, j, k), _strip_trailing(poly, j * p ** k))
        return self.split[key]

    def join_poly(self, p, m, n):
        """a_n in the flattened split variables, for W_m and the given p."""
        key = (p, m, n)
        if key not in self.join:
            layout = split_layout(p, m)
            nv = m
            var_of = {}
            pos = 0
            for j, lev in layout:
                for i in range(lev + 1):
                    var_of[(j, i)] = pos
                    pos += 1
            polys = {}
            for k in range(1, m + 1):
                jk, ik = _j_i_of(k, p)
                g = self._ptyp_ghost(p, ik, nv, lambda s, jk=jk: var_of[(jk, s)])
                acc = g
                for d in divisors(k)[:-1]:
                    acc = acc - (polys[d] ** (k // d)).scale(Fraction(d))
                polys[k] = _assert_denoms(acc.scale(Fraction(1, k)), p)
            with self.lock:
                for k, poly in polys.items():
                    self.join.setdefault((p, m, k), poly)
        return self.join[key]


def _big_ghost_mpoly(k, nv):
    terms = {}
    for d in divisors(k):
        e = [0] * nv
        e[d - 1] = k // d
        terms[tuple(e)] = Fraction(d)
    return MPoly(Q, nv, terms)


def _assert_denoms(mp, p):
    """p = 1 demands integer coefficients; otherwise denominators prime to p."""
    for c in mp.terms.values():
        if p == 1:
            if c.denominator != 1:
                raise RingError("p-typical polynomial failed integrality; aborting")
        elif c.denominator % p == 0:
            raise RingError("splitting polynomial has a denominator divisible by p; aborting")
    return mp


def _strip_trailing(mp, nv):
    return MPoly(Q, nv, {e[:nv]: c for e, c in mp.terms.items()})


def _j_i_of(k, p):
    i = 0
    while k % p == 0:
        k //= p
        i += 1
    return k, i


_PCACHE = _PTypicalCache()


def _eval_ptyp_two_arg(u, v, mode):
    R = u.ring
    vals = []
    for a, b in zip(u.comps, v.comps):
        vals.append(a)
        vals.append(b)
    comps = [
        eval_int_mpoly(_PCACHE.two_arg_poly(u.p, mode, i), vals[: 2 * (i + 1)], R)
        for i in range(u.level + 1)
    ]
    return PTypicalWitt(u.p, R, comps)


def _eval_fraction_mpoly(mp, vals, R):
    """Evaluate an MPoly with Fraction coefficients on raw ring values."""
    pow_cache = [None] * len(vals)
    acc = R.zero
    for e, c in mp.terms.items():
        try:
            term = R.from_fraction(c)
        except RingError:
            raise RingError(
                f"splitting needs 1/{c.denominator} to exist in {R}"
            ) from None
        for i, ei in enumerate(e):
            if ei:
                pc = pow_cache[i]
                if pc is None:
                    pc = pow_cache[i] = {}
                vv = pc.get(ei)
                if vv is None:
                    vv = pc[ei] = R.pow(vals[i], ei)
                term = R.mul(term, vv)
        acc = R.add(acc, term)
    return acc


# ---------------------------------------------------------------------------
# the decomposition itself


def split_layout(p, m):
    """[(j, n(j))] for j coprime to p, ascending."""
    return [(j, n_of_j(j, p, m)) for j in coprime_indices(p, m)]


def p_typical_split(w, p):
    """Ring isomorphism W_m(A) -> prod_j W_(n(j))(A) for Z_(p)-algebras A.

    Characterized on ghosts by w_i(y^(j)) = gh_(j p^i)(w).
    """
    _check_prime(p)
    R = w.ring
    out = {}
    for j, lev in split_layout(p, w.m):
        comps = [
            _eval_fraction_mpoly(_PCACHE.split_poly(p, j, i), w.comps[: j * p ** i], R)
            for i in range(lev + 1)
        ]
        out[j] = PTypicalWitt(p, R, comps)
    return out


def p_typical_join(parts, p, m, ring):
    """Inverse of p_typical_split."""
    _check_prime(p)
    layout = split_layout(p, m)
    vals = []
    for j, lev in layout:
        part = parts[j]
        if part.level != lev or part.p != p or part.ring != ring:
            raise RingError(f"component j={j} has wrong level, p, or ring")
        vals.extend(part.comps)
    comps = [
        _eval_fraction_mpoly(_PCACHE.join_poly(p, m, n), vals, ring)
        for n in range(1, m + 1)
    ]
    return WittVector(ring, comps)
