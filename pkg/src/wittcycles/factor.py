"""Univariate factorization over F_q, Q, and function fields over them.

Finite fields use squarefree/distinct-degree/equal-degree splitting
(Cantor-Zassenhaus with a fixed-seed PRNG so results are deterministic).
Q uses Zassenhaus: reduce mod a good small prime, Hensel lift, recombine
subsets; the degree is capped (default 12).  Function fields F(t_1..t_r)
factor by specializing the last transcendental at a good point, factoring
recursively over the smaller field, lifting (t-a)-adically, and
recombining.  Factors are returned monic and deterministically ordered.
"""

import random
from fractions import Fraction
from math import gcd as int_gcd

from .funfield import FunctionField
from .mpoly import MPoly, RatFunc, mpoly_gcd
from .poly import UniPoly
from .rings import (
    ExtField,
    IntegerModRing,
    PrimeField,
    Q,
    Ring,
    RingError,
    is_prime,
)

ZASSENHAUS_DEGREE_CAP = 12


def factor_univariate(f, field=None):
    """Monic irreducible factors of f with multiplicities.

    The product of factors^multiplicity times the unit lc(f) equals f.
    Constants factor as the empty list.
    """
    if field is None:
        field = f.ring
    if f.ring != field:
        raise RingError("polynomial is not over the stated field")
    if f.is_zero():
        raise RingError("cannot factor the zero polynomial")
    if f.degree == 0:
        return []
    if isinstance(field, (PrimeField, ExtField)):
        fac = _factor_finite(f.monic(), field)
    elif field == Q:
        fac = _factor_rational(f.monic())
    elif isinstance(field, FunctionField):
        fac = _factor_function_field(f.monic(), field)
    else:
        raise RingError(f"factorization over {field} is not supported")
    fac.sort(key=lambda gm: _poly_sort_key(gm[0]))
    return fac


def is_irreducible(f, field=None):
    if f.degree <= 0:
        return False
    fac = factor_univariate(f, field)
    return len(fac) == 1 and fac[0][1] == 1


def _poly_sort_key(g):
    return (g.degree, g.to_str())


# ---------------------------------------------------------------------------
# finite fields


def _factor_finite(f, K):
    out = []
    for g, m in _squarefree_decomposition(f, K):
        for d, h in _distinct_degree(g, K):
            for irr in _equal_degree(h, d, K):
                out.append((irr, m))
    return out


def _squarefree_decomposition(f, K):
    """[(squarefree monic, multiplicity)] with product f; handles p-th powers."""
    p = K.char
    out = []
    d = f.derivative()
    if d.is_zero():
        return [(g, m * p) for g, m in _squarefree_decomposition(_pth_root(f, K), K)]
    c = f.gcd(d)
    w = f.exact_div(c)
    i = 1
    while w.degree > 0:
        y = w.gcd(c)
        fac = w.exact_div(y)
        if fac.degree > 0:
            out.append((fac, i))
        w = y
        c = c.exact_div(y)
        i += 1
    if c.degree > 0:
        out.extend((g, m * p) for g, m in _squarefree_decomposition(_pth_root(c, K), K))
    return out


def _pth_root(f, K):
    """Inverse Frobenius on a polynomial of the form g(x^p) over perfect F_q."""
    p = K.char
    coeffs = []
    for i in range(0, f.degree + 1, p):
        c = f.coeff(i)
        coeffs.append(K.pow(c, K.q // p))
    for i, c in enumerate(f.coeffs):
        if i % p and not K.is_zero(c):
            raise RingError("polynomial with zero derivative is not a p-th power")
    return UniPoly(K, coeffs, f.var)


def _distinct_degree(f, K):
    """[(d, product of irreducible factors of degree d)] for squarefree monic f."""
    out = []
    x = UniPoly.gen(K, f.var)
    h = x
    d = 0
    while f.degree > 2 * (d + 1) - 1 and f.degree > 0:
        d += 1
        h = h.pow_mod(K.q, f)
        g = f.gcd(h - x)
        if g.degree > 0:
            out.append((d, g))
            f = f.exact_div(g)
            h = h % f
    if f.degree > 0:
        out.append((f.degree, f))
    return out


def _equal_degree(f, d, K):
    """Split a squarefree product of degree-d irreducibles into its factors."""
    if f.degree == d:
        return [f]
    rng = random.Random(0xC0FFEE)  # fixed seed: deterministic for a given input
    stack = [f]
    out = []
    while stack:
        g = stack.pop()
        if g.degree == d:
            out.append(g)
            continue
        h = _edf_split(g, d, K, rng)
        stack.append(h)
        stack.append(g.exact_div(h))
    return out


def _edf_split(g, d, K, rng):
    """A proper monic factor of g (product of >= 2 degree-d irreducibles)."""
    one = UniPoly.const(K, K.one, g.var)
    while True:
        r = UniPoly(K, [K.random(rng) for _ in range(g.degree)], g.var)
        if r.degree < 1:
            continue
        if K.char == 2:
            # additive trace map sum r^(2^i) for i < k*d over F_{2^k}
            k = K.e * d
            t = r % g
            acc = t
            for _ in range(k - 1):
                t = (t * t) % g
                acc = (acc + t) % g
            cand = g.gcd(acc)
        else:
            e = (K.q ** d - 1) // 2
            t = r.pow_mod(e, g)
            cand = g.gcd(t - one)
        if 0 < cand.degree < g.degree:
            return cand.monic()


# ---------------------------------------------------------------------------
# integer coefficient helpers (little-endian lists, no trailing zeros)


def _z_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _z_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _z_trim(out)


def _z_divmod_monic(a, b):
    """Divide by monic b over Z."""
    a = list(a)
    db = len(b) - 1
    q = [0] * max(0, len(a) - db)
    while a and len(a) - 1 >= db:
        c = a[-1]
        k = len(a) - 1 - db
        q[k] = c
        for j, bj in enumerate(b):
            a[k + j] -= c * bj
        _z_trim(a)
    return _z_trim(q), a


def _z_content(a):
    g = 0
    for c in a:
        g = int_gcd(g, abs(c))
    return g or 1


def _z_primitive(a):
    g = _z_content(a)
    a = [c // g for c in a]
    if a and a[-1] < 0:
        a = [-c for c in a]
    return a


def _factor_rational(f):
    """Zassenhaus over Q for monic input; factors returned monic over Q."""
    if f.degree > ZASSENHAUS_DEGREE_CAP:
        raise RingError(
            f"degree {f.degree} exceeds the Zassenhaus cap {ZASSENHAUS_DEGREE_CAP}"
        )
    # multiplicities via squarefree part, recovered by trial division
    sqf = f.exact_div(f.gcd(f.derivative())) if f.degree > 1 else f
    irreducibles = _factor_rational_squarefree(sqf)
    return _multiplicities(f, irreducibles)


def _multiplicities(f, irreducibles):
    out = []
    rem = f
    for g in irreducibles:
        m = 0
        while True:
            q, r = rem.divmod(g)
            if not r.is_zero():
                break
            rem = q
            m += 1
        if m:
            out.append((g, m))
    if rem.degree != 0:
        raise RingError("internal factorization error: leftover degree")
    return out


def _factor_rational_squarefree(f):
    """Monic squarefree f over Q -> list of monic irreducible factors."""
    if f.degree == 1:
        return [f]
    # clear denominators to a primitive integer polynomial
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // int_gcd(den, c.denominator)
    zf = _z_primitive([int(c * den) for c in f.coeffs])
    lc = zf[-1]
    n = len(zf) - 1
    # monicize: G(x) = lc^(n-1) * F(x/lc), monic over Z
    G = [c * lc ** (n - 1 - i) for i, c in enumerate(zf[:-1])] + [1]
    factors_G = _zassenhaus_monic(G)
    out = []
    for h in factors_G:
        # undo the substitution: primitive part of h(lc*x)
        hz = _z_primitive([c * lc ** i for i, c in enumerate(h)])
        out.append(UniPoly(Q, [Fraction(c, hz[-1]) for c in hz], f.var))
    return out


def _zassenhaus_monic(G):
    """Factor a monic squarefree integer polynomial; returns monic int lists."""
    n = len(G) - 1
    if n == 1:
        return [G]
    p = 3
    while True:
        K = PrimeField(p)
        fp = UniPoly(K, [c % p for c in G])
        if fp.degree == n:
            d = fp.derivative()
            if not d.is_zero() and fp.gcd(d).degree == 0:
                break
        p = _next_prime(p)
    modfac = [g for g, _ in _factor_finite(fp, K)]
    if len(modfac) == 1:
        return [G]
    # lift precision: comfortably above twice the Mignotte-style bound
    maxc = max(abs(c) for c in G)
    bound = 2 ** n * (maxc + 1) * (n + 1)
    e = 1
    while p ** e <= 2 * bound:
        e += 1
    lifted = _hensel_tree([c % p ** e for c in G], modfac, p, e)
    return _recombine_int(G, lifted, p ** e)


def _next_prime(p):
    p += 2
    while not is_prime(p):
        p += 2
    return p


def _center(c, pk):
    c %= pk
    return c - pk if c > pk // 2 else c


def _recombine_int(G, lifted, pk):
    out = []
    rem = list(G)
    idx = list(range(len(lifted)))
    import itertools

    size = 1
    while 2 * size <= len(idx):
        found = True
        while found and 2 * size <= len(idx):
            found = False
            for combo in itertools.combinations(idx, size):
                cand = [1]
                for i in combo:
                    cand = [c % pk for c in _z_mul(cand, lifted[i])]
                cz = _z_trim([_center(c, pk) for c in cand])
                q, r = _z_divmod_monic(rem, cz)
                if not r:
                    out.append(cz)
                    rem = q
                    idx = [i for i in idx if i not in combo]
                    found = True
                    break
        size += 1
    if len(rem) > 1:
        out.append(rem)
    return out


def _hensel_tree(fc, factors, p, e):
    """Lift a pairwise-coprime monic factorization of fc from mod p to mod p^e.

    fc is an integer coefficient list, monic; factors are monic over F_p with
    product congruent to fc mod p.  Returns integer coefficient lists with
    canonical representatives mod p^e.
    """
    if len(factors) == 1:
        return [fc]
    mid = len(factors) // 2
    g0 = factors[0]
    for fac in factors[1:mid]:
        g0 = g0 * fac
    h0 = factors[mid]
    for fac in factors[mid + 1 :]:
        h0 = h0 * fac
    gc, hc = _hensel_pair(fc, g0, h0, p, e)
    return _hensel_tree(gc, factors[:mid], p, e) + _hensel_tree(hc, factors[mid:], p, e)


def _hensel_pair(fc, g0, h0, p, e):
    """Quadratic Hensel lifting of fc = g*h from mod p to mod p^e.

    The working modulus doubles each round, which is what keeps the degree
    bookkeeping exact: the error term times (s*g + t*h - 1) vanishes
    identically at the doubled precision.
    """
    d, s0, t0 = g0.xgcd(h0)
    if d.degree != 0:
        raise RingError("Hensel factors are not coprime")
    gc = [c % p for c in g0.coeffs]
    hc = [c % p for c in h0.coeffs]
    sc = list(s0.coeffs)
    tc = list(t0.coeffs)
    k = 1
    while k < e:
        k2 = min(2 * k, e)
        R = IntegerModRing(p ** k2)
        m = p ** k2
        f_ = UniPoly(R, [c % m for c in fc])
        g_ = UniPoly(R, [c % m for c in gc])
        h_ = UniPoly(R, [c % m for c in hc])
        s_ = UniPoly(R, [c % m for c in sc])
        t_ = UniPoly(R, [c % m for c in tc])
        err = f_ - g_ * h_
        qq, rr = (err * t_).divmod(g_)
        g_ = g_ + rr
        h_ = h_ + err * s_ + qq * h_
        b = s_ * g_ + t_ * h_ - UniPoly.const(R, R.one)
        cc, dd = (s_ * b).divmod(h_)
        s_ = s_ - dd
        t_ = t_ - t_ * b - cc * g_
        gc, hc, sc, tc = g_.coeffs, h_.coeffs, s_.coeffs, t_.coeffs
        k = k2
    return [c % p ** e for c in gc], [c % p ** e for c in hc]


# ---------------------------------------------------------------------------
# function fields: specialize the last variable, lift, recombine


class _TruncRing(Ring):
    """K0[v]/(v^T): truncated power series used as Hensel coefficients."""

    def __init__(self, base, order):
        self.base = base
        self.order = order
        self.char = base.char
        self.zero = (base.zero,) * order
        self.one = tuple([base.one] + [base.zero] * (order - 1))

    def add(self, a, b):
        K = self.base
        return tuple(K.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        K = self.base
        return tuple(K.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        K = self.base
        return tuple(K.neg(x) for x in a)

    def mul(self, a, b):
        K = self.base
        T = self.order
        out = [K.zero] * T
        for i, x in enumerate(a):
            if K.is_zero(x):
                continue
            for j in range(T - i):
                y = b[j]
                if not K.is_zero(y):
                    out[i + j] = K.add(out[i + j], K.mul(x, y))
        return tuple(out)

    def eq(self, a, b):
        K = self.base
        return all(K.eq(x, y) for x, y in zip(a, b))

    def inv(self, a):
        K = self.base
        if K.is_zero(a[0]):
            raise RingError("non-unit truncated series")
        i0 = K.inv(a[0])
        out = [i0] + [K.zero] * (self.order - 1)
        for k in range(1, self.order):
            acc = K.zero
            for j in range(1, k + 1):
                acc = K.add(acc, K.mul(a[j], out[k - j]))
            out[k] = K.neg(K.mul(i0, acc))
        return tuple(out)

    def from_int(self, n):
        return tuple([self.base.from_int(n)] + [self.base.zero] * (self.order - 1))

    def from_base(self, c):
        return tuple([c] + [self.base.zero] * (self.order - 1))

    def is_raw(self, x):
        return isinstance(x, tuple) and len(x) == self.order


    def to_str(self, a):
        return "[" + ", ".join(self.base.to_str(c) for c in a) + "]"

    def hash_raw(self, a):
        return hash(tuple(self.base.hash_raw(c) for c in a))

    def __eq__(self, other):
        return isinstance(other, _TruncRing) and other.base == self.base and other.order == self.order

    def __hash__(self):
        return hash(("trunc", self.base, self.order))

    def __repr__(self):
        return f"{self.base}[[v]]/v^{self.order}"


def _factor_function_field(f, K):
    p = K.char
    d = f.derivative()
    if d.is_zero():
        # f = g(u^p); either coefficientwise p-th root exists or factors stay inseparable
        g_coeffs = [f.coeff(i) for i in range(0, f.degree + 1, p)]
        g = UniPoly(K, g_coeffs, f.var)
        out = []
        for h, m in _factor_function_field(g.monic(), K):
            root = _ratfunc_pth_root_poly(h, K)
            if root is not None:
                out.extend((irr, mm * m * p) for irr, mm in _factor_function_field(root, K))
            else:
                out.append((_compose_xp(h, p), m))
        return out
    sqf = f.exact_div(f.gcd(d)) if f.degree > 1 else f
    irreducibles = _factor_ff_squarefree(sqf, K)
    return _multiplicities(f, irreducibles)


def _compose_xp(h, p):
    coeffs = []
    for i, c in enumerate(h.coeffs):
        if i:
            coeffs.extend([h.ring.zero] * (p - 1))
        coeffs.append(c)
    return UniPoly(h.ring, coeffs, h.var)


def _ratfunc_pth_root_poly(h, K):
    """Coefficientwise p-th root of a UniPoly over a function field, or None."""
    out = []
    for c in h.coeffs:
        r = _ratfunc_pth_root(c, K)
        if r is None:
            return None
        out.append(r)
    return UniPoly(K, out, h.var)


def _ratfunc_pth_root(c, K):
    num = _mpoly_pth_root(c.num, K)
    den = _mpoly_pth_root(c.den, K)
    if num is None or den is None:
        return None
    return RatFunc(num, den)


def _mpoly_pth_root(m, K):
    p = K.char
    F = K.constants
    terms = {}
    for e, c in m.terms.items():
        if any(x % p for x in e):
            return None
        terms[tuple(x // p for x in e)] = F.pow(c, F.q // p) if hasattr(F, "q") else c
    return MPoly(F, m.nvars, terms)


def _factor_ff_squarefree(f, K):
    """Monic squarefree f over a function field -> monic irreducible factors."""
    if f.degree == 1:
        return [f]
    K0 = K.drop_last()
    # clear denominators: P has MPoly coefficients, primitive in the pure sense
    den = MPoly.const(K.constants, K.nvars, K.constants.one)
    for c in f.coeffs:
        g = mpoly_gcd(den, c.den)
        den = den.exact_div(g) * c.den
    nums = []
    for c in f.coeffs:
        nums.append(c.num * den.exact_div(c.den))
    cont = MPoly.zero(K.constants, K.nvars)
    for c in nums:
        cont = mpoly_gcd(cont, c)
    nums = [c.exact_div(cont) for c in nums]
    n = f.degree
    lc_poly = nums[-1]
    # monicize: M = lc^(n-1) P(u/lc); coefficient j picks up lc^(n-1-j)
    M = [nums[j] * lc_poly ** (n - 1 - j) if j < n else None for j in range(n)]
    M_coeffs_k0 = [K.poly_as_univariate(c) for c in M[:n]]  # UniPoly in v over K0
    lc_k0 = K.poly_as_univariate(lc_poly)
    T = max(max((c.degree for c in M_coeffs_k0), default=0), 0) + 1
    a = _good_specialization(M_coeffs_k0, n, K0, K)
    # factor the specialization over K0
    Ma = UniPoly(K0, [c.eval_raw(a) for c in M_coeffs_k0] + [K0.one], f.var)
    base_factors = _factor_over(Ma.monic(), K0)
    if len(base_factors) == 1:
        return [f]
    TR = _TruncRing(K0, T)
    shift_coeffs = [c.shifted(a) for c in M_coeffs_k0]
    fM = UniPoly(
        TR,
        [tuple((list(c.coeffs) + [K0.zero] * T)[:T]) for c in shift_coeffs] + [TR.one],
        f.var,
    )
    start = [g.map_coeffs(TR.from_base, TR) for g in base_factors]
    lifted = _hensel_tree_series(fM, start, TR)
    return _recombine_ff(f, lifted, K, K0, a, lc_poly)


def _factor_over(g, K0):
    """Irreducible monic factors of a squarefree monic polynomial over K0."""
    if isinstance(K0, FunctionField):
        return [h for h, _ in _factor_function_field(g, K0)]
    if K0 == Q:
        return _factor_rational_squarefree(g)
    return [h for h, _ in _factor_finite(g, K0)]


def _good_specialization(M_coeffs_k0, n, K0, K):
    """A constant a with lc nonzero after shift and squarefree specialization."""
    F = K.constants
    for a_raw in _constant_candidates(K0, F):
        coeffs = [c.eval_raw(a_raw) for c in M_coeffs_k0] + [K0.one]
        Ma = UniPoly(K0, coeffs)
        if Ma.degree != n:
            continue
        d = Ma.derivative()
        if d.is_zero():
            continue
        if Ma.gcd(d).degree == 0:
            return a_raw
    raise RingError(
        "no squarefree specialization point found in the constant field; "
        "factorization over this function field needs a larger constant field"
    )


def _constant_candidates(K0, F):
    emb = K0.embed_from(F) if K0 != F else (lambda v: v)
    if F == Q:
        k = 0
        while k <= 60:
            yield emb(Fraction(k))
            if k:
                yield emb(Fraction(-k))
            k += 1
    else:
        for i in range(F.q):
            yield emb(F.decode(i) if isinstance(F, ExtField) else i)


def _hensel_tree_series(f, factors, TR):
    if len(factors) == 1:
        return [f]
    mid = len(factors) // 2
    g = factors[0]
    for fac in factors[1:mid]:
        g = g * fac
    h = factors[mid]
    for fac in factors[mid + 1 :]:
        h = h * fac
    g, h = _hensel_pair_series(f, g, h, TR)
    return _hensel_tree_series(g, factors[:mid], TR) + _hensel_tree_series(h, factors[mid:], TR)


def _hensel_pair_series(f, g, h, TR):
    """Quadratic Hensel lifting in the (v-a)-adic direction, order doubling."""
    K0 = TR.base
    T = TR.order
    g0 = UniPoly(K0, [c[0] for c in g.coeffs], f.var)
    h0 = UniPoly(K0, [c[0] for c in h.coeffs], f.var)
    d, s0, t0 = g0.xgcd(h0)
    if d.degree != 0:
        raise RingError("Hensel factors are not coprime")
    gc = [(c,) for c in g0.coeffs]
    hc = [(c,) for c in h0.coeffs]
    sc = [(c,) for c in s0.coeffs]
    tc = [(c,) for c in t0.coeffs]
    k = 1
    while k < T:
        k2 = min(2 * k, T)
        R = _TruncRing(K0, k2)

        def pad(cs):
            return UniPoly(R, [tuple((list(x) + [K0.zero] * k2)[:k2]) for x in cs], f.var)

        f_ = UniPoly(R, [tuple(c[:k2]) for c in f.coeffs], f.var)
        g_, h_, s_, t_ = pad(gc), pad(hc), pad(sc), pad(tc)
        err = f_ - g_ * h_
        qq, rr = (err * t_).divmod(g_)
        g_ = g_ + rr
        h_ = h_ + err * s_ + qq * h_
        b = s_ * g_ + t_ * h_ - UniPoly.const(R, R.one, f.var)
        cc, dd = (s_ * b).divmod(h_)
        s_ = s_ - dd
        t_ = t_ - t_ * b - cc * g_
        gc, hc, sc, tc = g_.coeffs, h_.coeffs, s_.coeffs, t_.coeffs
        k = k2

    def pad_T(cs):
        return UniPoly(TR, [tuple((list(x) + [K0.zero] * T)[:T]) for x in cs], f.var)

    return pad_T(gc), pad_T(hc)


def _recombine_ff(f, lifted, K, K0, a, lc_poly):
    """Combine lifted series factors into true factors of the original f."""
    import itertools

    i_last = K.nvars - 1
    lc_K = RatFunc.from_poly(lc_poly)
    v_minus_a = K.sub(K.var(i_last), _k0_to_K(a, K, K0))

    def series_to_K(tr_val):
        # sum coeff_j * (v - a)^j as an element of K
        acc = K.zero
        power = K.one
        for c in tr_val:
            term = _k0_to_K(c, K, K0)
            acc = K.add(acc, K.mul(term, power))
            power = K.mul(power, v_minus_a)
        return acc

    def to_K_poly(g):
        return UniPoly(K, [series_to_K(c) for c in g.coeffs], f.var)

    out = []
    rem = f
    idx = list(range(len(lifted)))
    size = 1
    while 2 * size <= len(idx):
        found = True
        while found and 2 * size <= len(idx):
            found = False
            for combo in itertools.combinations(idx, size):
                cand = None
                for i in combo:
                    cand = lifted[i] if cand is None else cand * lifted[i]
                candK = to_K_poly(cand)
                # undo monicization: root transform u -> lc*u, then monicize
                gK = UniPoly(
                    K,
                    [K.mul(c, K.pow(lc_K, j)) for j, c in enumerate(candK.coeffs)],
                    f.var,
                ).monic()
                q, r = rem.divmod(gK)
                if r.is_zero():
                    out.append(gK)
                    rem = q
                    idx = [i for i in idx if i not in combo]
                    found = True
                    break
        size += 1
    if rem.degree > 0:
        out.append(rem.monic())
    return out


def _k0_to_K(c, K, K0):
    if K.nvars == 1:
        return K.from_constant(c)
    return K.embed_from(K0)(c)
