"""Sparse multivariate polynomials over a constant field, and reduced
fractions of them.

These are the internal representation of function-field elements.  The
variable count is fixed per polynomial; exponent vectors are tuples.
Gcds use the primitive pseudo-remainder sequence recursively over the
last-used variable, which is entirely adequate at the degrees this
package works with (r <= 3 transcendentals, small degrees).
"""

from .rings import RingError


def _grlex_key(exp):
    return (sum(exp), exp)


class MPoly:
    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field, nvars, terms):
        self.field = field
        self.nvars = nvars
        self.terms = {e: c for e, c in terms.items() if not field.is_zero(c)}

    @classmethod
    def _raw(cls, field, nvars, terms):
        """Trusted constructor: terms already free of zero coefficients."""
        self = cls.__new__(cls)
        self.field = field
        self.nvars = nvars
        self.terms = terms
        return self

    @classmethod
    def zero(cls, field, nvars):
        return cls(field, nvars, {})

    @classmethod
    def const(cls, field, nvars, c):
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, field, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, {tuple(e): field.one})

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.nvars, self.field.zero)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i):
        return max((e[i] for e in self.terms), default=-1)

    def uses(self, i):
        return any(e[i] for e in self.terms)

    def lead_term(self):
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def __add__(self, other):
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            cur = out.get(e)
            if cur is None:
                out[e] = c
            else:
                s = F.add(cur, c)
                if F.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
        return MPoly._raw(F, self.nvars, out)

    def __neg__(self):
        F = self.field
        return MPoly._raw(F, self.nvars, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        if self.nvars == 1:
            da, db = self.degree_in(0), other.degree_in(0)
            if da < 0 or db < 0:
                return MPoly._raw(F, 1, {})
            la = _coeff_list(self, 0)
            lb = _coeff_list(other, 0)
            out = [F.zero] * (da + db + 1)
            for i, x in enumerate(la):
                if F.is_zero(x):
                    continue
                for j, y in enumerate(lb):
                    if not F.is_zero(y):
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
            return MPoly._raw(
                F, 1, {(k,): c for k, c in enumerate(out) if not F.is_zero(c)}
            )
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                cur = out.get(e)
                prod = F.mul(c1, c2)
                if cur is None:
                    out[e] = prod
                else:
                    out[e] = F.add(cur, prod)
        return MPoly(F, self.nvars, out)

    def scale(self, c):
        F = self.field
        if F.is_zero(c):
            return MPoly.zero(F, self.nvars)
        return MPoly(F, self.nvars, {e: F.mul(c, v) for e, v in self.terms.items()})

    def mul_monomial(self, exp, c):
        F = self.field
        return MPoly(
            F,
            self.nvars,
            {tuple(a + b for a, b in zip(e, exp)): F.mul(c, v) for e, v in self.terms.items()},
        )

    def __pow__(self, n):
        result = MPoly.const(self.field, self.nvars, self.field.one)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, frozenset(self.terms.items())))

    def derivative(self, i):
        F = self.field
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                nc = F.mul(F.from_int(e[i]), c)
                if not F.is_zero(nc):
                    out[tuple(ne)] = nc
        return MPoly(F, self.nvars, out)

    def subs_const(self, i, val):
        """Substitute variable i by the field value ``val``."""
        F = self.field
        out = {}
        for e, c in self.terms.items():
            nc = F.mul(c, F.pow(val, e[i]))
            ne = list(e)
            ne[i] = 0
            ne = tuple(ne)
            s = F.add(out.get(ne, F.zero), nc)
            if F.is_zero(s):
                out.pop(ne, None)
            else:
                out[ne] = s
        return MPoly(F, self.nvars, out)

    def eval_all(self, vals):
        F = self.field
        acc = F.zero
        for e, c in self.terms.items():
            t = c
            for i, ei in enumerate(e):
                if ei:
                    t = F.mul(t, F.pow(vals[i], ei))
            acc = F.add(acc, t)
        return acc

    def coeffs_in(self, i):
        """Coefficients of powers of variable i, as MPolys not using i.

        Returns a list indexed by the exponent of variable i.
        """
        d = self.degree_in(i)
        out = [dict() for _ in range(d + 1)]
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            out[k][tuple(ne)] = c
        return [MPoly(self.field, self.nvars, t) for t in out]

    @classmethod
    def from_coeffs_in(cls, coeffs, i):
        f = coeffs[0].field
        n = coeffs[0].nvars
        terms = {}
        for k, c in enumerate(coeffs):
            for e, v in c.terms.items():
                ne = list(e)
                ne[i] += k
                terms[tuple(ne)] = v
        return cls(f, n, terms)

    def exact_div(self, d):
        if d.is_zero():
            raise RingError("multivariate division by zero")
        F = self.field
        if self.nvars == 1:
            if self.is_zero():
                return self
            la = _coeff_list(self, 0)
            lb = _coeff_list(d, 0)
            if len(la) < len(lb):
                raise RingError("multivariate division is not exact")
            dlb = len(lb) - 1
            ilb = F.inv(lb[-1])
            quot = [F.zero] * (len(la) - dlb)
            rem1 = list(la)
            for k in range(len(quot) - 1, -1, -1):
                c = F.mul(rem1[k + dlb], ilb)
                quot[k] = c
                if not F.is_zero(c):
                    for j, bj in enumerate(lb):
                        rem1[k + j] = F.sub(rem1[k + j], F.mul(c, bj))
            if any(not F.is_zero(x) for x in rem1):
                raise RingError("multivariate division is not exact")
            return MPoly._raw(F, 1, {(k,): c for k, c in enumerate(quot) if not F.is_zero(c)})
        rem = self
        out = {}
        de, dc = d.lead_term()
        dci = F.inv(dc)
        while not rem.is_zero():
            e, c = rem.lead_term()
            qe = tuple(a - b for a, b in zip(e, de))
            if any(x < 0 for x in qe):
                raise RingError("multivariate division is not exact")
            qc = F.mul(c, dci)
            out[qe] = F.add(out.get(qe, F.zero), qc)
            rem = rem - d.mul_monomial(qe, qc)
        return MPoly(F, self.nvars, out)

    def monic_normalized(self):
        """Scale so the grlex leading coefficient is 1."""
        if self.is_zero():
            return self
        _, c = self.lead_term()
        if self.field.is_one(c):
            return self
        return self.scale(self.field.inv(c))

    def to_str(self, names):
        if not self.terms:
            return "0"
        F = self.field
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            factors = []
            cs = F.to_str(c)
            if ("+" in cs[1:]) or ("-" in cs[1:]) or ("/" in cs) or ("*" in cs):
                cs = f"({cs})"
            if sum(e) == 0:
                factors.append(cs)
            else:
                if cs != "1":
                    factors.append(cs)
                for i, ei in enumerate(e):
                    if ei == 1:
                        factors.append(names[i])
                    elif ei > 1:
                        factors.append(f"{names[i]}^{ei}")
            parts.append("*".join(factors))
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# gcd


def _uni_gcd_dense(a, b, field):
    """Euclid on dense coefficient lists over a field; returns monic list."""

    def trim(v):
        while v and field.is_zero(v[-1]):
            v.pop()
        return v

    def rem(u, v):
        u = list(u)
        dv, ilv = len(v) - 1, field.inv(v[-1])
        while u and len(u) - 1 >= dv:
            c = field.mul(u[-1], ilv)
            k = len(u) - 1 - dv
            for j, vj in enumerate(v):
                u[k + j] = field.sub(u[k + j], field.mul(c, vj))
            trim(u)
        return u

    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, rem(a, b)
    if a:
        il = field.inv(a[-1])
        a = [field.mul(c, il) for c in a]
    return a


def mpoly_gcd(a, b):
    """Monic-normalized gcd of multivariate polynomials over a field."""
    F = a.field
    if a.is_zero():
        return b.monic_normalized()
    if b.is_zero():
        return a.monic_normalized()
    if a.is_constant() or b.is_constant():
        return MPoly.const(F, a.nvars, F.one)
    used = [i for i in range(a.nvars) if a.uses(i) or b.uses(i)]
    if not used:
        return MPoly.const(F, a.nvars, F.one)
    if len(used) == 1:
        v = used[0]
        g = _uni_gcd_dense(_coeff_list(a, v), _coeff_list(b, v), F)
        terms = {}
        for k, c in enumerate(g):
            e = [0] * a.nvars
            e[v] = k
            terms[tuple(e)] = c
        return MPoly(F, a.nvars, terms)
    v = used[-1]
    ca, pa = _content_pp(a, v)
    cb, pb = _content_pp(b, v)
    cg = mpoly_gcd(ca, cb)
    if pa.degree_in(v) < pb.degree_in(v):
        pa, pb = pb, pa
    while True:
        r = _prem(pa, pb, v)
        if r.is_zero():
            gp = _content_pp(pb, v)[1]
            break
        if r.degree_in(v) == 0:
            gp = MPoly.const(F, a.nvars, F.one)
            break
        r = _content_pp(r, v)[1]
        pa, pb = pb, r
    return (cg * gp).monic_normalized()


def _coeff_list(p, v):
    out = [p.field.zero] * (p.degree_in(v) + 1)
    for e, c in p.terms.items():
        out[e[v]] = c
    return out


def _content_pp(p, v):
    """(content, primitive part) of p with respect to variable v."""
    coeffs = p.coeffs_in(v)
    cont = MPoly.zero(p.field, p.nvars)
    for c in coeffs:
        if c.is_zero():
            continue
        cont = mpoly_gcd(cont, c)
        if cont.is_constant():
            cont = MPoly.const(p.field, p.nvars, p.field.one)
            return cont, p
    return cont, p.exact_div(cont)


def _prem(a, b, v):
    """Pseudo-remainder of a by b with respect to variable v."""
    db = b.degree_in(v)
    lb = b.coeffs_in(v)[db]
    r = a
    e = a.degree_in(v) - db + 1
    while not r.is_zero() and r.degree_in(v) >= db:
        dr = r.degree_in(v)
        lr = r.coeffs_in(v)[dr]
        shift = [0] * a.nvars
        shift[v] = dr - db
        r = r * lb - b * lr.mul_monomial(tuple(shift), a.field.one)
        e -= 1
    if e > 0:
        lbp = lb ** e
        r = r * lbp
    return r


# ---------------------------------------------------------------------------
# reduced fractions


class RatFunc:
    """num/den with gcd 1 and den normalized to grlex leading coefficient 1."""

    __slots__ = ("num", "den", "den_is_one")

    def __init__(self, num, den, reduce=True):
        if den.is_zero():
            raise RingError("rational function with zero denominator")
        F = num.field
        den_one = den.is_constant() and F.is_one(den.constant_value())
        if num.is_zero():
            if not den_one:
                den = MPoly.const(F, num.nvars, F.one)
                den_one = True
        elif reduce and not den_one:
            g = mpoly_gcd(num, den)
            if not (g.is_constant() and F.is_one(g.constant_value())):
                num = num.exact_div(g)
                den = den.exact_div(g)
                den_one = den.is_constant() and F.is_one(den.constant_value())
        if not den_one:
            if den.is_constant():
                c = den.constant_value()
                num = num.scale(F.inv(c))
                den = MPoly.const(F, num.nvars, F.one)
                den_one = True
            else:
                _, lc = den.lead_term()
                if not F.is_one(lc):
                    il = F.inv(lc)
                    num = num.scale(il)
                    den = den.scale(il)
        self.num = num
        self.den = den
        self.den_is_one = den_one

    @classmethod
    def from_poly(cls, p):
        return cls(p, MPoly.const(p.field, p.nvars, p.field.one), reduce=False)

    def is_zero(self):
        return self.num.is_zero()

    def is_poly(self):
        return self.den.is_constant()

    def __add__(self, other):
        if self.den_is_one and other.den_is_one:
            return RatFunc(self.num + other.num, self.den, reduce=False)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        if self.den_is_one and other.den_is_one:
            return RatFunc(self.num - other.num, self.den, reduce=False)
        return self + (-other)

    def __mul__(self, other):
        if self.den_is_one and other.den_is_one:
            return RatFunc(self.num * other.num, self.den, reduce=False)
        return RatFunc(self.num * other.num, self.den * other.den)

    def inv(self):
        if self.num.is_zero():
            raise RingError("division by zero rational function")
        return RatFunc(self.den, self.num, reduce=False)

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))
