"""Function fields F(t_1..t_r) and simple extensions k(theta).

A function field wraps reduced fractions of multivariate polynomials over
a constant field (Q, F_p or F_q).  A simple extension k[x]/(g) stores
elements as coefficient tuples in the power basis of a monic separable
generator; towers must be collapsed by the caller.
"""

from .mpoly import MPoly, RatFunc
from .poly import UniPoly
from .rings import Ring, RingError


class FunctionField(Ring):
    is_field = True

    def __init__(self, constants, names):
        if isinstance(constants, FunctionField):
            raise RingError("nested function fields are not supported; join the variables")
        if not 1 <= len(names) <= 3:
            raise RingError("function fields support 1..3 transcendentals")
        if len(set(names)) != len(names):
            raise RingError("duplicate transcendental names")
        self.constants = constants
        self.names = tuple(names)
        self.nvars = len(names)
        self.char = constants.char
        self.torsion_free = constants.char == 0
        one = MPoly.const(constants, self.nvars, constants.one)
        self.zero = RatFunc(MPoly.zero(constants, self.nvars), one, reduce=False)
        self.one = RatFunc(one, one, reduce=False)

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

    def is_zero(self, a):
        return a.is_zero()

    def is_one(self, a):
        return a.den_is_one and a.num.is_constant() and self.constants.is_one(a.num.constant_value())

    def inv(self, a):
        return a.inv()

    def is_raw(self, x):
        return isinstance(x, RatFunc)

    def from_int(self, n):
        return RatFunc.from_poly(MPoly.const(self.constants, self.nvars, self.constants.from_int(n)))

    def from_poly(self, p):
        return RatFunc.from_poly(p)

    def from_constant(self, c):
        return RatFunc.from_poly(MPoly.const(self.constants, self.nvars, c))

    def var(self, i):
        return RatFunc.from_poly(MPoly.var(self.constants, self.nvars, i))

    def generators(self):
        return {name: self.var(i) for i, name in enumerate(self.names)}

    def embed_from(self, other):
        if other == self:
            return lambda v: v
        if other == self.constants:
            return self.from_constant
        if isinstance(other, FunctionField) and other.constants == self.constants and set(
            other.names
        ) <= set(self.names):
            pos = [self.names.index(n) for n in other.names]

            def emb(v):
                return RatFunc(
                    _reindex(v.num, pos, self.nvars), _reindex(v.den, pos, self.nvars), reduce=False
                )

            return emb
        raise RingError(f"no embedding of {other} into {self}")

    def to_str(self, a):
        ns = a.num.to_str(self.names)
        if a.is_poly() and a.den.field.is_one(a.den.constant_value()):
            return ns
        ds = a.den.to_str(self.names)
        return f"({ns})/({ds})"

    def random(self, rng, size=2):
        num = self._random_poly(rng, size)
        while True:
            den = self._random_poly(rng, max(1, size - 1)) if rng.random() < 0.3 else MPoly.const(
                self.constants, self.nvars, self.constants.one
            )
            if not den.is_zero():
                return RatFunc(num, den)

    def _random_poly(self, rng, deg):
        terms = {}
        for _ in range(rng.randint(1, 3)):
            e = tuple(rng.randint(0, deg) for _ in range(self.nvars))
            terms[e] = self.constants.random(rng)
        return MPoly(self.constants, self.nvars, terms)

    def hash_raw(self, a):
        return hash(a)

    def __eq__(self, other):
        return (
            isinstance(other, FunctionField)
            and other.constants == self.constants
            and other.names == self.names
        )

    def __hash__(self):
        return hash(("FF", self.constants, self.names))

    def __repr__(self):
        return f"{self.constants}({','.join(self.names)})"

    # -- conversions used by the cycle machinery -------------------------

    def with_variable(self, name):
        """The function field with one extra transcendental appended."""
        if name in self.names:
            raise RingError(f"variable {name!r} already present in {self}")
        return FunctionField(self.constants, self.names + (name,))

    def drop_last(self):
        """The coefficient field obtained by removing the last variable."""
        if self.nvars == 1:
            return self.constants
        return FunctionField(self.constants, self.names[:-1])

    def poly_as_univariate(self, p, var="?"):
        """An MPoly, viewed as a UniPoly in the last variable over drop_last()."""
        sub = self.drop_last()
        i = self.nvars - 1
        coeffs = []
        for c in p.coeffs_in(i):
            if self.nvars == 1:
                coeffs.append(c.constant_value())
            else:
                coeffs.append(RatFunc.from_poly(_strip_var(c, i)))
        return UniPoly(sub, coeffs, self.names[i] if var == "?" else var)

    def univariate_to_poly(self, f):
        """Inverse of poly_as_univariate for polynomial (denominator-free) input."""
        i = self.nvars - 1
        terms = {}
        for k, c in enumerate(f.coeffs):
            if self.nvars == 1:
                if not self.constants.is_zero(c):
                    e = [0] * self.nvars
                    e[i] = k
                    terms[tuple(e)] = c
            else:
                if not c.is_poly():
                    raise RingError("coefficient has a denominator")
                scale = c.den.constant_value()
                num = c.num.scale(self.constants.inv(scale)) if not self.constants.is_one(scale) else c.num
                for e, v in num.terms.items():
                    terms[e[:i] + (k,)] = v
        return MPoly(self.constants, self.nvars, terms)


def _reindex(p, pos, nvars):
    terms = {}
    for e, c in p.terms.items():
        ne = [0] * nvars
        for src, dst in enumerate(pos):
            ne[dst] = e[src]
        terms[tuple(ne)] = c
    return MPoly(p.field, nvars, terms)


def _strip_var(p, i):
    terms = {e[:i] + e[i + 1 :]: c for e, c in p.terms.items()}
    return MPoly(p.field, p.nvars - 1, terms)


# ---------------------------------------------------------------------------
# simple extensions


class SimpleExtension(Ring):
    """k[x]/(g) for g monic separable of degree >= 1 over the field k."""

    is_field = True

    def __init__(self, base, minpoly, gen_name="th", check_irreducible=False):
        if not base.is_field:
            raise RingError("simple extensions require a field as base")
        if isinstance(base, SimpleExtension):
            raise RingError("towers of simple extensions must be collapsed first")
        if minpoly.is_zero() or not minpoly.is_monic() or minpoly.degree < 1:
            raise RingError("minimal polynomial must be monic of degree >= 1")
        if minpoly.ring != base:
            raise RingError("minimal polynomial is not over the base field")
        self.base = base
        self.minpoly = minpoly
        self.gen_name = gen_name
        self.degree = minpoly.degree
        self.char = base.char
        self.torsion_free = base.torsion_free
        d = self.degree
        self.zero = (base.zero,) * d
        self.one = tuple([base.one] + [base.zero] * (d - 1))
        self.gen = tuple([base.zero, base.one] + [base.zero] * (d - 2)) if d > 1 else (
            base.neg(minpoly.coeff(0)),
        )
        # reduction rows for x^d .. x^(2d-2)
        self._red = []
        cur = [base.neg(c) for c in minpoly.coeffs[:-1]]
        for _ in range(d - 1):
            self._red.append(tuple(cur))
            cur = [base.zero] + cur
            lead = cur.pop()
            if not base.is_zero(lead):
                cur = [base.sub(ci, base.mul(lead, mi)) for ci, mi in zip(cur, minpoly.coeffs[:-1])]
        if check_irreducible:
            from .factor import factor_univariate

            fac = factor_univariate(minpoly, base)
            if len(fac) != 1 or fac[0][1] != 1:
                raise RingError("minimal polynomial is reducible")

    def is_separable(self):
        g = self.minpoly
        d = g.derivative()
        return (not d.is_zero()) and g.gcd(d).degree == 0

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
        d = self.degree
        prod = [K.zero] * (2 * d - 1)
        for i, ai in enumerate(a):
            if K.is_zero(ai):
                continue
            for j, bj in enumerate(b):
                prod[i + j] = K.add(prod[i + j], K.mul(ai, bj))
        out = list(prod[:d])
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if not K.is_zero(c):
                red = self._red[k - d]
                for i in range(d):
                    out[i] = K.add(out[i], K.mul(c, red[i]))
        return tuple(out)

    def eq(self, a, b):
        K = self.base
        return all(K.eq(x, y) for x, y in zip(a, b))

    def inv(self, a):
        if self.is_zero(a):
            raise RingError(f"division by zero in {self}")
        f = UniPoly(self.base, list(a), "x")
        g, u, _ = f.xgcd(self.minpoly)
        if g.degree != 0:
            raise RingError("element is a zero divisor; minimal polynomial not irreducible")
        il = self.base.inv(g.coeff(0)) if not self.base.is_one(g.coeff(0)) else self.base.one
        u = u.scale(il)
        cs = list(u.coeffs) + [self.base.zero] * (self.degree - len(u.coeffs))
        return tuple(cs[: self.degree])

    def is_raw(self, x):
        return isinstance(x, tuple) and len(x) == self.degree and all(self.base.is_raw(c) for c in x)

    def from_int(self, n):
        return tuple([self.base.from_int(n)] + [self.base.zero] * (self.degree - 1))

    def from_base(self, c):
        return tuple([c] + [self.base.zero] * (self.degree - 1))

    def embed_from(self, other):
        if other == self:
            return lambda v: v
        if other == self.base:
            return self.from_base
        base_emb = self.base.embed_from(other)
        return lambda v: self.from_base(base_emb(v))

    def generators(self):
        gens = {self.gen_name: self.gen}
        for name, g in self.base.generators().items():
            gens.setdefault(name, self.from_base(g))
        return gens

    def to_str(self, a):
        return UniPoly(self.base, list(a), self.gen_name).to_str()

    def hash_raw(self, a):
        return hash(tuple(self.base.hash_raw(c) for c in a))

    def random(self, rng, size=2):
        return tuple(self.base.random(rng, size) for _ in range(self.degree))

    def __eq__(self, other):
        return (
            isinstance(other, SimpleExtension)
            and other.base == self.base
            and other.minpoly == self.minpoly
            and other.gen_name == self.gen_name
        )

    def __hash__(self):
        return hash(("ext", self.base, self.minpoly, self.gen_name))

    def __repr__(self):
        return f"{self.base}[{self.gen_name}]/({self.minpoly.to_str()})"

    # -- field-theoretic helpers -----------------------------------------

    def trace(self, a):
        """Tr(a) into the base field, as the trace of multiplication by a."""
        K = self.base
        t = K.zero
        cur = a  # a * theta^j, iterated
        for j in range(self.degree):
            t = K.add(t, cur[j])
            if j < self.degree - 1:
                cur = self.mul_by_gen(cur)
        return t

    def mul_by_gen(self, a):
        K = self.base
        d = self.degree
        shifted = [K.zero] + list(a)
        lead = shifted.pop()
        if not K.is_zero(lead):
            red = self._red[0] if self._red else None
            if red is None:  # degree 1: x = -c0
                return (K.mul(lead, K.neg(self.minpoly.coeff(0))),)
            shifted = [K.add(ci, K.mul(lead, ri)) for ci, ri in zip(shifted, red)]
        return tuple(shifted)

    def powers_matrix(self, a, count):
        """Rows a^0, a^1, ..., a^(count-1) as coefficient vectors."""
        rows = [self.one]
        for _ in range(count - 1):
            rows.append(self.mul(rows[-1], a))
        return [list(r) for r in rows]

    def min_poly_of(self, a, var="x"):
        """Monic minimal polynomial of a over the base field."""
        K = self.base
        powers = []
        cur = self.one
        for _ in range(self.degree):
            powers.append(list(cur))
            cur = self.mul(cur, a)
            sol = _solve(K, powers, list(cur))
            if sol is not None:
                coeffs = [K.neg(c) for c in sol] + [K.one]
                return UniPoly(K, coeffs, var)
        raise RingError("no minimal polynomial found (inconsistent extension)")

    def express_in_powers(self, target, a, degree):
        """Coefficients c_j with target = sum c_j a^j, if solvable."""
        rows = self.powers_matrix(a, degree)
        return _solve(self.base, rows, list(target))


def _solve(K, rows, target):
    """Solve sum_j c_j rows[j] = target over the field K; None if unsolvable."""
    m = len(rows)
    if m == 0:
        return [] if all(K.is_zero(t) for t in target) else None
    n = len(target)
    # build augmented matrix with columns = rows (transpose)
    A = [[rows[j][i] for j in range(m)] + [target[i]] for i in range(n)]
    piv_cols = []
    r = 0
    for c in range(m):
        piv = None
        for i in range(r, n):
            if not K.is_zero(A[i][c]):
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        ipiv = K.inv(A[r][c])
        A[r] = [K.mul(x, ipiv) for x in A[r]]
        for i in range(n):
            if i != r and not K.is_zero(A[i][c]):
                f = A[i][c]
                A[i] = [K.sub(x, K.mul(f, y)) for x, y in zip(A[i], A[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, n):
        if not K.is_zero(A[i][m]):
            return None
    sol = [K.zero] * m
    for i, c in enumerate(piv_cols):
        sol[c] = A[i][m]
    return sol
