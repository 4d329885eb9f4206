"""Exact sparse multivariate polynomials and rational functions.

Every coefficient in the engine lives here.  Polynomials are sparse maps
from exponent vectors to nonzero `Fraction` coefficients over a tuple of
named variables; rational functions are gcd-reduced pairs of polynomials.
There is no floating point anywhere and no silent truncation: all
operations are exact, and values are immutable after construction.

Laurent-type expressions (negative powers of z, w, sqrt(q)) are never
stored with negative exponents; they are encoded as honest fractions,
e.g. z^{-1} as 1/z, with `assert_polynomial` guarding the places where a
result is claimed to be polynomial.
"""

from __future__ import annotations

import math
from fractions import Fraction

# All scalar coefficients are arbitrary-precision rationals.  Fraction
# already maintains gcd(|num|, den) = 1 and den > 0.
BigRational = Fraction

_FRACTION_LIKE = (int, Fraction)

# Primes used for the modular coprimality fast path in gcd computations.
_GCD_PRIMES = (2147483647, 2147483629, 2147483587)


class AlgebraError(ArithmeticError):
    """Base class for exact-arithmetic failures."""


class DivisionByZeroPolynomial(AlgebraError):
    """Division by the zero polynomial or rational function."""


class SubstitutionError(AlgebraError):
    """A substitution produced a zero denominator."""

    def __init__(self, message, bindings=None):
        super().__init__(message)
        self.bindings = bindings


class NotPolynomialError(AlgebraError):
    """A rational function claimed to be polynomial has a nonunit denominator."""

    def __init__(self, message, residual_denominator):
        super().__init__(message)
        self.residual_denominator = residual_denominator


def _grlex_key(exps):
    return (sum(exps), exps)


class SparsePoly:
    """Sparse multivariate polynomial with Fraction coefficients.

    `variables` is an ordered tuple of names; `terms` maps exponent
    tuples (one entry per variable, all >= 0) to nonzero Fractions.
    Term order for leading terms and serialization is graded
    lexicographic on the exponent tuple, largest first.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms, _clean=False):
        variables = tuple(variables)
        if _clean:
            self.variables = variables
            self.terms = terms
            return
        clean = {}
        nvars = len(variables)
        for exps, coeff in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} has wrong length for {variables}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}; use RationalFunction")
            coeff = Fraction(coeff)
            if coeff:
                clean[exps] = clean.get(exps, Fraction(0)) + coeff
                if not clean[exps]:
                    del clean[exps]
        self.variables = variables
        self.terms = clean

    # -- constructors ----------------------------------------------------

    @classmethod
    def constant(cls, value, variables=()):
        value = Fraction(value)
        variables = tuple(variables)
        if not value:
            return cls(variables, {}, _clean=True)
        return cls(variables, {(0,) * len(variables): value}, _clean=True)

    @classmethod
    def variable(cls, name):
        return cls((name,), {(1,): Fraction(1)}, _clean=True)

    @classmethod
    def monomial(cls, variables, exps, coeff=1):
        return cls(tuple(variables), {tuple(exps): Fraction(coeff)})

    # -- structure -------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.terms:
            return Fraction(0)
        if not self.is_constant:
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name):
        if name not in self.variables or not self.terms:
            return 0
        i = self.variables.index(name)
        return max(e[i] for e in self.terms)

    def effective_variables(self):
        used = [False] * len(self.variables)
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.variables, used) if u)

    def leading(self):
        """Leading (exponent, coefficient) in graded-lex order."""
        if not self.terms:
            return None
        exps = max(self.terms, key=_grlex_key)
        return exps, self.terms[exps]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def restrict_variables(self, variables):
        """Reindex onto `variables`, which must cover all effective ones."""
        variables = tuple(variables)
        pos = []
        for i, v in enumerate(self.variables):
            pos.append(variables.index(v) if v in variables else -1)
        n = len(variables)
        out = {}
        for exps, coeff in self.terms.items():
            new = [0] * n
            for i, e in enumerate(exps):
                if e:
                    if pos[i] < 0:
                        raise ValueError(f"variable {self.variables[i]} cannot be dropped")
                    new[pos[i]] = e
            out[tuple(new)] = coeff
        return SparsePoly(variables, out, _clean=True)

    # -- arithmetic ------------------------------------------------------

    @staticmethod
    def _align(a, b):
        if a.variables == b.variables:
            return a, b
        merged = list(a.variables)
        for v in b.variables:
            if v not in merged:
                merged.append(v)
        merged = tuple(merged)
        return a.restrict_variables(merged), b.restrict_variables(merged)

    def _coerce(self, other):
        if isinstance(other, SparsePoly):
            return other
        if isinstance(other, _FRACTION_LIKE):
            return SparsePoly.constant(other, self.variables)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = SparsePoly._align(self, other)
        terms = dict(a.terms)
        for exps, coeff in b.terms.items():
            s = terms.get(exps, Fraction(0)) + coeff
            if s:
                terms[exps] = s
            else:
                terms.pop(exps, None)
        return SparsePoly(a.variables, terms, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly(self.variables, {e: -c for e, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = SparsePoly._align(self, other)
        if len(a.terms) < len(b.terms):
            a, b = b, a
        out = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                exps = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(exps)
                p = c1 * c2
                if s is None:
                    out[exps] = p
                else:
                    s = s + p
                    if s:
                        out[exps] = s
                    else:
                        del out[exps]
        return SparsePoly(a.variables, out, _clean=True)

    __rmul__ = __mul__

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return SparsePoly(self.variables, {}, _clean=True)
        return SparsePoly(self.variables, {e: cc * c for e, cc in self.terms.items()}, _clean=True)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("SparsePoly powers must be non-negative integers")
        result = SparsePoly.constant(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, _FRACTION_LIKE):
            return self.is_constant and self.constant_value() == other
        if not isinstance(other, SparsePoly):
            return NotImplemented
        a, b = SparsePoly._align(self, other)
        return a.terms == b.terms

    def __bool__(self):
        return bool(self.terms)

    def __hash__(self):
        key = tuple(sorted(
            (tuple((v, e) for v, e in zip(self.variables, exps) if e), coeff)
            for exps, coeff in self.terms.items()))
        return hash(key)

    # -- content / division ----------------------------------------------

    def content(self):
        """Positive rational c with self/c integer-primitive; sign from leading term."""
        if not self.terms:
            return Fraction(1)
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = math.gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
        content = Fraction(num_gcd, den_lcm)
        if self.leading()[1] < 0:
            content = -content
        return content

    def primitive(self):
        c = self.content()
        if c == 1:
            return self
        return self.scale(1 / c)

    def try_divide(self, divisor):
        """Exact division: return self/divisor or None if not divisible."""
        if divisor.is_zero:
            raise DivisionByZeroPolynomial("division by zero polynomial")
        if divisor.is_constant:
            return self.scale(1 / divisor.constant_value())
        a, b = SparsePoly._align(self, divisor)
        lead_e, lead_c = b.leading()
        rem = dict(a.terms)
        quo = {}
        while rem:
            exps = max(rem, key=_grlex_key)
            coeff = rem[exps]
            q_exps = tuple(x - y for x, y in zip(exps, lead_e))
            if any(e < 0 for e in q_exps):
                return None
            q_coeff = coeff / lead_c
            quo[q_exps] = q_coeff
            for e2, c2 in b.terms.items():
                t = tuple(x + y for x, y in zip(q_exps, e2))
                s = rem.get(t, Fraction(0)) - q_coeff * c2
                if s:
                    rem[t] = s
                else:
                    rem.pop(t, None)
        return SparsePoly(a.variables, quo, _clean=True)

    # -- substitution ------------------------------------------------------

    def substitute(self, bindings):
        """Substitute variables by RationalFunctions; returns a RationalFunction."""
        bindings = {k: RationalFunction.coerce(v) for k, v in bindings.items()}
        keep = [v for v in self.variables if v not in bindings]
        result = RationalFunction.zero()
        power_cache = {}

        def power_of(name, e):
            key = (name, e)
            if key not in power_cache:
                power_cache[key] = bindings[name] ** e
            return power_cache[key]

        for exps, coeff in self.sorted_terms():
            kept = {}
            term = None
            for v, e in zip(self.variables, exps):
                if not e:
                    continue
                if v in bindings:
                    f = power_of(v, e)
                    term = f if term is None else term * f
                else:
                    kept[v] = e
            mono_vars = tuple(kept)
            mono = SparsePoly(mono_vars, {tuple(kept[v] for v in mono_vars): coeff})
            part = RationalFunction.from_poly(mono)
            if term is not None:
                part = part * term
            result = result + part
        return result

    # -- misc ---------------------------------------------------------------

    def map_exponents(self, factor):
        """Multiply every exponent by `factor` (Adams-type variable power map)."""
        if factor == 1:
            return self
        return SparsePoly(
            self.variables,
            {tuple(e * factor for e in exps): c for exps, c in self.terms.items()},
            _clean=True,
        )

    def __repr__(self):
        return f"SparsePoly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def format_poly(p):
    if not p.terms:
        return "0"
    chunks = []
    for exps, coeff in p.sorted_terms():
        factors = []
        for v, e in zip(p.variables, exps):
            if e == 1:
                factors.append(v)
            elif e > 1:
                factors.append(f"{v}^{e}")
        body = "*".join(factors)
        if not body:
            chunk = str(coeff)
        elif coeff == 1:
            chunk = body
        elif coeff == -1:
            chunk = "-" + body
        else:
            chunk = f"{coeff}*{body}"
        chunks.append(chunk)
    out = chunks[0]
    for chunk in chunks[1:]:
        out += " - " + chunk[1:] if chunk.startswith("-") else " + " + chunk
    return out


# ---------------------------------------------------------------------------
# polynomial gcd
# ---------------------------------------------------------------------------


def _int_coeffs_univariate(p, var_index):
    """Dense integer coefficient list (low to high) after clearing denominators."""
    den_lcm = 1
    for c in p.terms.values():
        den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    deg = max(e[var_index] for e in p.terms)
    out = [0] * (deg + 1)
    for exps, c in p.terms.items():
        out[exps[var_index]] = c.numerator * (den_lcm // c.denominator)
    g = 0
    for c in out:
        g = math.gcd(g, c)
    if g > 1:
        out = [c // g for c in out]
    return out


def _int_list_primitive(a):
    g = 0
    for c in a:
        g = math.gcd(g, c)
    if g > 1:
        a = [c // g for c in a]
    return a


def _int_list_gcd(a, b):
    """Primitive gcd of primitive dense integer coefficient lists (subresultant PRS)."""
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    if not a:
        return _int_list_primitive(b)
    if not b:
        return _int_list_primitive(a)
    if len(a) < len(b):
        a, b = b, a
    a = _int_list_primitive(a)
    b = _int_list_primitive(b)
    while True:
        # pseudo-remainder of a by b
        r = list(a)
        lb = b[-1]
        db = len(b) - 1
        while len(r) - 1 >= db and r:
            lr = r[-1]
            shift = len(r) - 1 - db
            r = [c * lb for c in r]
            for i, c in enumerate(b):
                r[shift + i] -= lr * c
            while r and r[-1] == 0:
                r.pop()
        if not r:
            return b
        r = _int_list_primitive(r)
        a, b = b, r
        if len(b) == 1:
            return [1]


def _poly_mod_p(p, prime):
    """Coefficients of p modulo prime, or None if a denominator vanishes."""
    out = {}
    for exps, c in p.terms.items():
        if c.denominator % prime == 0:
            return None
        v = c.numerator * pow(c.denominator, prime - 2, prime) % prime
        if v:
            out[exps] = v
    return out


def _coprime_mod_p(a, b):
    """True if a, b are provably coprime via modular univariate images.

    A nonconstant common factor has positive degree in at least one shared
    effective variable, so certifying a constant image gcd (with preserved
    leading degrees) separately for every shared variable is sound.
    """
    common = set(a.effective_variables()) & set(b.effective_variables())
    if not common:
        return True
    for main in sorted(common):
        certified = False
        da = a.degree_in(main)
        db = b.degree_in(main)
        for offset in range(3):
            for prime in _GCD_PRIMES:
                ga = _eval_mod_p(a, main, prime, offset)
                gb = _eval_mod_p(b, main, prime, offset)
                if ga is None or gb is None:
                    continue
                if len(ga) - 1 != da or len(gb) - 1 != db:
                    continue  # leading coefficient collapsed; inconclusive
                if _gcd_mod_p_lists(ga, gb, prime) == 0:
                    certified = True
                break
            if certified:
                break
        if not certified:
            return False
    return True


def _eval_mod_p(p, main, prime, offset):
    """Univariate image of p in `main` mod prime, other variables at 2+offset+i."""
    idx = {v: i for i, v in enumerate(p.variables)}
    mi = idx[main]
    values = {}
    k = 0
    for v in p.variables:
        if v != main:
            values[idx[v]] = 2 + offset + k
            k += 1
    out = {}
    for exps, c in p.terms.items():
        if c.denominator % prime == 0:
            return None
        v = c.numerator * pow(c.denominator, prime - 2, prime) % prime
        for i, e in enumerate(exps):
            if i != mi and e:
                v = v * pow(values[i], e, prime) % prime
        out[exps[mi]] = (out.get(exps[mi], 0) + v) % prime
    deg = max((e for e, c in out.items() if c), default=0)
    lst = [0] * (deg + 1)
    for e, c in out.items():
        if e <= deg:
            lst[e] = c
    return lst


def _gcd_mod_p_lists(a, b, prime):
    """Degree of gcd of dense coefficient lists over GF(prime)."""
    a = [c % prime for c in a]
    b = [c % prime for c in b]
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    while b:
        # a mod b over GF(p)
        inv = pow(b[-1], prime - 2, prime)
        while len(a) >= len(b):
            factor = a[-1] * inv % prime
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[shift + i] = (a[shift + i] - factor * c) % prime
            while a and a[-1] == 0:
                a.pop()
            if not a:
                break
        a, b = b, a
    return len(a) - 1 if a else -1


def _common_monomial(p):
    mins = None
    for exps in p.terms:
        if mins is None:
            mins = list(exps)
        else:
            mins = [min(m, e) for m, e in zip(mins, exps)]
        if not any(mins):
            break
    return tuple(mins) if mins else ()


def poly_gcd(a, b):
    """Primitive gcd with positive leading coefficient (graded-lex leading term)."""
    if a.is_zero:
        return b.primitive() if not b.is_zero else SparsePoly.constant(0)
    if b.is_zero:
        return a.primitive()
    a, b = SparsePoly._align(a, b)
    if a.is_constant or b.is_constant:
        return SparsePoly.constant(1, a.variables)
    # common monomial factor
    ma = _common_monomial(a)
    mb = _common_monomial(b)
    shared = tuple(min(x, y) for x, y in zip(ma, mb))
    if any(shared):
        strip = lambda p, m: SparsePoly(
            p.variables,
            {tuple(e - s for e, s in zip(exps, m)): c for exps, c in p.terms.items()},
            _clean=True)
        mono = SparsePoly(a.variables, {shared: Fraction(1)}, _clean=True)
        inner = poly_gcd(strip(a, ma), strip(b, mb))
        return (mono * inner).primitive()
    if a.terms == b.terms:
        return a.primitive()
    avars = a.effective_variables()
    bvars = b.effective_variables()
    if not (set(avars) & set(bvars)):
        return SparsePoly.constant(1, a.variables)
    if _coprime_mod_p(a, b):
        return SparsePoly.constant(1, a.variables)
    # trial exact division catches the frequent (f*g)/g pattern
    q = a.try_divide(b)
    if q is not None:
        return b.primitive()
    q = b.try_divide(a)
    if q is not None:
        return a.primitive()
    if len(avars) == 1 and avars == bvars:
        i = a.variables.index(avars[0])
        g = _int_list_gcd(_int_coeffs_univariate(a, i), _int_coeffs_univariate(b, i))
        terms = {}
        zero = [0] * len(a.variables)
        for e, c in enumerate(g):
            if c:
                exps = list(zero)
                exps[i] = e
                terms[tuple(exps)] = Fraction(c)
        return SparsePoly(a.variables, terms, _clean=True).primitive()
    return _gcd_multivariate(a, b)


def _as_univariate(p, name):
    """View p as univariate in `name` with SparsePoly coefficients (same variables, name removed)."""
    rest = tuple(v for v in p.variables if v != name)
    i = p.variables.index(name)
    coeffs = {}
    for exps, c in p.terms.items():
        e = exps[i]
        inner = tuple(x for j, x in enumerate(exps) if j != i)
        coeffs.setdefault(e, {})[inner] = c
    return {e: SparsePoly(rest, t, _clean=True) for e, t in coeffs.items()}, rest


def _from_univariate(coeffs, name, rest):
    variables = rest + (name,)
    terms = {}
    for e, poly in coeffs.items():
        for exps, c in poly.terms.items():
            terms[exps + (e,)] = c
    return SparsePoly(variables, terms, _clean=True)


def _uni_content(coeffs):
    g = SparsePoly.constant(0)
    for poly in coeffs.values():
        g = poly_gcd(g, poly)
        if g.is_constant and not g.is_zero:
            break
    return g


def _uni_scale_div(coeffs, d):
    out = {}
    for e, poly in coeffs.items():
        q = poly.try_divide(d)
        if q is None:
            raise AlgebraError("inexact division during gcd content removal")
        out[e] = q
    return out


def _gcd_multivariate(a, b):
    """Primitive PRS in the last shared variable, recursing on the contents."""
    common = sorted(set(a.effective_variables()) & set(b.effective_variables()))
    name = common[-1]
    ua, rest = _as_univariate(a, name)
    ub, _ = _as_univariate(b.restrict_variables(a.variables), name)
    ca = _uni_content(ua)
    cb = _uni_content(ub)
    content_gcd = poly_gcd(ca, cb)
    ua = _uni_scale_div(ua, ca)
    ub = _uni_scale_div(ub, cb)

    def degree(u):
        return max(u) if u else -1

    if degree(ua) < degree(ub):
        ua, ub = ub, ua
    while True:
        if not ub:
            g = _from_univariate(ua, name, rest)
            break
        # pseudo-remainder of ua by ub
        db = degree(ub)
        lb = ub[db]
        r = dict(ua)
        while r and degree(r) >= db:
            dr = degree(r)
            lr = r[dr]
            r = {e: p * lb for e, p in r.items()}
            shift = dr - db
            for e, p in ub.items():
                t = e + shift
                s = r.get(t, SparsePoly.constant(0)) - p * lr
                if s.is_zero:
                    r.pop(t, None)
                else:
                    r[t] = s
        if not r:
            g = _from_univariate(ub, name, rest)
            break
        cr = _uni_content(r)
        r = _uni_scale_div(r, cr)
        ua, ub = ub, r
        if degree(ub) == 0:
            g = SparsePoly.constant(1, a.variables)
            break
    g = (content_gcd * g.restrict_variables(a.variables)).primitive()
    return g


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------


class RationalFunction:
    """Quotient of SparsePolys: gcd-reduced, denominator primitive with positive lead."""

    __slots__ = ("num", "den")

    def __init__(self, num, den, _normalized=False):
        if _normalized:
            self.num = num
            self.den = den
            return
        if den.is_zero:
            raise DivisionByZeroPolynomial("zero denominator")
        num, den = SparsePoly._align(num, den)
        if num.is_zero:
            self.num = SparsePoly.constant(0, num.variables)
            self.den = SparsePoly.constant(1, num.variables)
            return
        if not den.is_constant:
            g = poly_gcd(num, den)
            if not g.is_constant:
                num = num.try_divide(g)
                den = den.try_divide(g)
        c = den.content()
        if c != 1:
            den = den.scale(1 / c)
            num = num.scale(1 / c)
        self.num = num
        self.den = den

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_poly(cls, p):
        return cls(p, SparsePoly.constant(1, p.variables), _normalized=True)

    @classmethod
    def constant(cls, value):
        return cls.from_poly(SparsePoly.constant(value))

    @classmethod
    def zero(cls):
        return cls.constant(0)

    @classmethod
    def one(cls):
        return cls.constant(1)

    @classmethod
    def variable(cls, name):
        return cls.from_poly(SparsePoly.variable(name))

    @classmethod
    def coerce(cls, value):
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, SparsePoly):
            return cls.from_poly(value)
        if isinstance(value, _FRACTION_LIKE):
            return cls.constant(value)
        raise TypeError(f"cannot coerce {value!r} to RationalFunction")

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self):
        return self.num.is_zero

    @property
    def is_constant(self):
        return self.num.is_constant and self.den.is_constant

    def constant_value(self):
        return self.num.constant_value() / self.den.constant_value()

    @property
    def is_polynomial(self):
        return self.den.is_constant

    def as_fraction(self):
        """Fraction value of a constant rational function."""
        if not self.is_constant:
            raise ValueError(f"{self} is not constant")
        return self.constant_value()

    def __bool__(self):
        return not self.num.is_zero

    def __eq__(self, other):
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):
        # normalize numerator scale so equal values hash equally
        if self.num.is_zero:
            return hash(0)
        c = self.num.content()
        return hash((self.num.scale(1 / c), self.den, c))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        a, b = self, other
        if a.den == b.den:
            return RationalFunction(a.num + b.num, a.den)
        g = poly_gcd(a.den, b.den)
        if g.is_constant:
            return RationalFunction(a.num * b.den + b.num * a.den, a.den * b.den)
        da = a.den.try_divide(g)
        db = b.den.try_divide(g)
        return RationalFunction(a.num * db + b.num * da, a.den * db)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return RationalFunction.zero()
        # cross-cancel before multiplying to keep degrees small
        n1, d2 = self.num, other.den
        if not d2.is_constant:
            g = poly_gcd(n1, d2)
            if not g.is_constant:
                n1 = n1.try_divide(g)
                d2 = d2.try_divide(g)
        n2, d1 = other.num, self.den
        if not d1.is_constant:
            g = poly_gcd(n2, d1)
            if not g.is_constant:
                n2 = n2.try_divide(g)
                d1 = d1.try_divide(g)
        num = n1 * n2
        den = d1 * d2
        c = den.content()
        if c != 1:
            den = den.scale(1 / c)
            num = num.scale(1 / c)
        return RationalFunction(num, den, _normalized=True)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero:
            raise DivisionByZeroPolynomial("inverting zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = RationalFunction.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            raise ValueError("RationalFunction powers must be integers")
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return RationalFunction.one()
        return RationalFunction(self.num ** n, self.den ** n)

    # -- substitution -------------------------------------------------------

    def substitute(self, bindings):
        """Compose with variable bindings (values coerced to RationalFunctions)."""
        relevant = {k: v for k, v in bindings.items() if k in self.num.variables}
        if not relevant:
            return self
        num = self.num.substitute(relevant)
        den = self.den.substitute(relevant)
        if den.is_zero:
            raise SubstitutionError(
                f"substitution {_fmt_bindings(bindings)} sends the denominator "
                f"{self.den} to zero", bindings)
        return num / den

    def variables(self):
        return tuple(sorted(set(self.num.effective_variables())
                            | set(self.den.effective_variables())))

    def map_all_exponents(self, n):
        """Substitute v -> v^n for every variable (Adams action on coefficients)."""
        if n == 1:
            return self
        return RationalFunction(self.num.map_exponents(n), self.den.map_exponents(n),
                                _normalized=True)

    def __repr__(self):
        return f"RationalFunction({self.__str__()!r})"

    def __str__(self):
        if self.den.is_constant and self.den.constant_value() == 1:
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"


def _fmt_bindings(bindings):
    return "{" + ", ".join(f"{k} -> {v}" for k, v in sorted(bindings.items())) + "}"


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def poly_arith(a, b, op):
    """Arithmetic on polynomials/rational functions; always a RationalFunction."""
    a = RationalFunction.coerce(a)
    b = RationalFunction.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero:
            raise DivisionByZeroPolynomial("poly_arith: division by zero")
        return a / b
    raise ValueError(f"unknown op {op!r}")


def substitute(f, bindings):
    return RationalFunction.coerce(f).substitute(bindings)


def assert_polynomial(f, variable_subset=None):
    """Return the SparsePoly value of f, or raise NotPolynomialError.

    If `variable_subset` is given, also require every effective variable of
    the result to lie in it.
    """
    f = RationalFunction.coerce(f)
    if not f.den.is_constant:
        raise NotPolynomialError(
            f"not polynomial: residual denominator {f.den}", f.den)
    p = f.num.scale(1 / f.den.constant_value())
    if variable_subset is not None:
        stray = set(p.effective_variables()) - set(variable_subset)
        if stray:
            raise NotPolynomialError(
                f"polynomial involves unexpected variables {sorted(stray)}", f.den)
    return p


def collect_even_powers(p, src="s", dst="q"):
    """Rewrite a polynomial in src with only even exponents as one in dst = src^2."""
    if src not in p.variables:
        return p
    i = p.variables.index(src)
    variables = tuple(dst if v == src else v for v in p.variables)
    terms = {}
    for exps, c in p.terms.items():
        if exps[i] % 2:
            raise NotPolynomialError(
                f"odd power {src}^{exps[i]} present; not a polynomial in {dst} = {src}^2",
                SparsePoly.variable(src))
        new = list(exps)
        new[i] = exps[i] // 2
        terms[tuple(new)] = c
    return SparsePoly(variables, terms)


def univariate_coefficients(p, name):
    """Dense Fraction coefficient list of a polynomial in a single variable."""
    extra = [v for v in p.effective_variables() if v != name]
    if extra:
        raise ValueError(f"{p} is not univariate in {name}: has {extra}")
    if p.is_zero:
        return [Fraction(0)]
    if name not in p.variables:
        return [p.constant_value()]
    i = p.variables.index(name)
    deg = max(e[i] for e in p.terms)
    out = [Fraction(0)] * (deg + 1)
    for exps, c in p.terms.items():
        out[exps[i]] += c
    return out


def is_palindromic(coeffs, degree=None):
    """coeffs[j] == coeffs[d-j] for the stated degree d (default: len-1)."""
    d = degree if degree is not None else len(coeffs) - 1
    if d < 0 or len(coeffs) - 1 > d:
        return False
    padded = list(coeffs) + [Fraction(0)] * (d + 1 - len(coeffs))
    return all(padded[j] == padded[d - j] for j in range(d + 1))


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def poly_to_json(p):
    """Graded-lex sorted list of {"exps": {...}, "coeff": "a/b"} objects."""
    out = []
    for exps, coeff in p.sorted_terms():
        e = {v: x for v, x in zip(p.variables, exps) if x}
        out.append({"exps": dict(sorted(e.items())), "coeff": str(coeff)})
    return out


def rational_to_json(f):
    f = RationalFunction.coerce(f)
    return {"num": poly_to_json(f.num), "den": poly_to_json(f.den)}
