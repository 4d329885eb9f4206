"""Multi-alphabet symmetric functions and truncated plethystic series.

Everything is stored in the power-sum basis, where products are
concatenations, Adams operations re-scale indices, and the Hall pairing
is diagonal.  Schur, monomial and complete conversions go through
symmetric-group characters (Murnaghan-Nakayama) and Kostka numbers.

A SymFunc is homogeneous: every alphabet carries the same degree.  A
SymSeries is a truncation of an element of Lambda[[T]] whose T^n
coefficient is homogeneous of degree n; plethystic Exp and Log act on
these exactly, up to the truncation order.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .algebra import RationalFunction
from .partitions import (
    as_partition,
    dominates,
    kostka_number,
    moebius,
    partitions,
    sn_character,
    z_lambda,
)


class TruncationError(ArithmeticError):
    """An operation produced a degree beyond the series truncation."""

    def __init__(self, message, degree):
        super().__init__(message)
        self.degree = degree


def _merge_partitions(a, b):
    return tuple(sorted(a + b, reverse=True))


def _empty_key(k):
    return ((),) * k


class SymFunc:
    """Homogeneous symmetric function in k alphabets, power-sum basis.

    terms maps k-tuples of partitions (one power-sum index per alphabet,
    each of size `degree`) to RationalFunction coefficients.
    """

    __slots__ = ("k", "degree", "terms")

    def __init__(self, k, degree, terms, _clean=False):
        if _clean:
            self.k = k
            self.degree = degree
            self.terms = terms
            return
        clean = {}
        for key, coeff in terms.items():
            key = tuple(as_partition(lam) for lam in key)
            if len(key) != k:
                raise ValueError(f"key {key} does not match k={k}")
            if any(sum(lam) != degree for lam in key):
                raise ValueError(f"key {key} is not homogeneous of degree {degree}")
            coeff = RationalFunction.coerce(coeff)
            if coeff:
                if key in clean:
                    clean[key] = clean[key] + coeff
                    if not clean[key]:
                        del clean[key]
                else:
                    clean[key] = coeff
        self.k = k
        self.degree = degree
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, k, degree=0):
        return cls(k, degree, {}, _clean=True)

    @classmethod
    def scalar(cls, k, value, degree=0):
        """Scalar multiple of the empty power product.

        A nonzero degree is only meaningful for k = 0, where the
        homogeneity constraint is vacuous and the degree is pure
        T-bookkeeping.
        """
        value = RationalFunction.coerce(value)
        if not value:
            return cls.zero(k, degree)
        if degree and k:
            raise ValueError("nonzero-degree scalars only exist for k = 0")
        return cls(k, degree, {_empty_key(k): value}, _clean=True)

    @classmethod
    def one(cls, k):
        return cls.scalar(k, 1)

    @classmethod
    def power(cls, k, index, lam, coeff=1):
        """p_lam on alphabet `index`, degree |lam| (requires k = 1 alphabets
        of interest packed via from_factors for multi-alphabet use)."""
        if k != 1 or index != 0:
            raise ValueError("use from_factors for multi-alphabet monomials")
        lam = as_partition(lam)
        return cls(1, sum(lam), {(lam,): RationalFunction.coerce(coeff)})

    @classmethod
    def from_factors(cls, factors):
        """Tensor product over alphabets: factors[i] is {partition: coeff}.

        All factors must be homogeneous of one common degree.
        """
        k = len(factors)
        degree = None
        for f in factors:
            for lam in f:
                d = sum(lam)
                if degree is None:
                    degree = d
                elif d != degree:
                    raise ValueError("factors are not homogeneous of one degree")
        if degree is None:
            degree = 0
        out = {}
        keys = [_empty_key(0)]
        coeffs = [RationalFunction.one()]
        for f in factors:
            new_keys = []
            new_coeffs = []
            for key, c in zip(keys, coeffs):
                for lam, c2 in f.items():
                    new_keys.append(key + (as_partition(lam),))
                    new_coeffs.append(c * RationalFunction.coerce(c2))
            keys, coeffs = new_keys, new_coeffs
        for key, c in zip(keys, coeffs):
            if c:
                out[key] = out.get(key, RationalFunction.zero()) + c
        return cls(k, degree, {key: c for key, c in out.items() if c}, _clean=True)

    # -- ring structure ------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.k != other.k or self.degree != other.degree:
            raise ValueError("can only add SymFuncs of equal k and degree")
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            if key in terms:
                s = terms[key] + coeff
                if s:
                    terms[key] = s
                else:
                    del terms[key]
            else:
                terms[key] = coeff
        return SymFunc(self.k, self.degree, terms, _clean=True)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = RationalFunction.coerce(c)
        if not c or self.is_zero:
            return SymFunc.zero(self.k, self.degree)
        return SymFunc(self.k, self.degree,
                       {key: coeff * c for key, coeff in self.terms.items()},
                       _clean=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RationalFunction)):
            return self.scale(other)
        if not isinstance(other, SymFunc):
            return NotImplemented
        if self.k != other.k:
            raise ValueError("alphabet counts differ")
        k = self.k
        out = {}
        for key1, c1 in self.terms.items():
            for key2, c2 in other.terms.items():
                key = tuple(_merge_partitions(a, b) for a, b in zip(key1, key2))
                c = c1 * c2
                if key in out:
                    s = out[key] + c
                    if s:
                        out[key] = s
                    else:
                        del out[key]
                else:
                    out[key] = c
        return SymFunc(k, self.degree + other.degree, out, _clean=True)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        return (self.k == other.k and self.degree == other.degree
                and self.terms == other.terms)

    def coefficient(self, key):
        key = tuple(as_partition(lam) for lam in key)
        return self.terms.get(key, RationalFunction.zero())

    # -- operations ------------------------------------------------------------

    def adams(self, n):
        """psi_n: multiply power indices by n, map every coefficient variable
        v to v^n, degree to n*degree."""
        if n == 1:
            return self
        terms = {
            tuple(tuple(p * n for p in lam) for lam in key):
                coeff.map_all_exponents(n)
            for key, coeff in self.terms.items()
        }
        return SymFunc(self.k, self.degree * n, terms, _clean=True)

    def hall(self, other):
        """Extended Hall pairing, diagonal in the power basis."""
        if not isinstance(other, SymFunc):
            raise TypeError("hall pairing needs a SymFunc")
        if self.k != other.k or self.degree != other.degree:
            return RationalFunction.zero()
        total = RationalFunction.zero()
        small, big = (self, other) if len(self.terms) <= len(other.terms) else (other, self)
        for key, c1 in small.terms.items():
            c2 = big.terms.get(key)
            if c2 is None:
                continue
            z = 1
            for lam in key:
                z *= z_lambda(lam)
            total = total + c1 * c2 * z
        return total

    def substitute(self, bindings):
        return SymFunc(self.k, self.degree,
                       {key: coeff.substitute(bindings)
                        for key, coeff in self.terms.items()})

    def _axis_transform(self, matrix_row):
        """Apply a linear change of power index separately on each alphabet.

        matrix_row(target, source) gives the coefficient of the target index
        in terms of the stored source index; used for power -> schur and
        friends.  Returns a plain dict keyed like terms.
        """
        current = dict(self.terms)
        n = self.degree
        lams = partitions(n)
        for axis in range(self.k):
            new = {}
            for key, coeff in current.items():
                src = key[axis]
                for tgt in lams:
                    factor = matrix_row(tgt, src)
                    if not factor:
                        continue
                    nk = key[:axis] + (tgt,) + key[axis + 1:]
                    c = coeff * factor
                    if nk in new:
                        s = new[nk] + c
                        if s:
                            new[nk] = s
                        else:
                            del new[nk]
                    else:
                        new[nk] = c
            current = new
        return current

    def to_schur(self):
        """Schur-basis coefficients {key: RationalFunction}."""
        return self._axis_transform(lambda mu, rho: Fraction(sn_character(mu, rho)))

    def to_monomial(self):
        """Monomial-basis coefficients (via Schur then Kostka numbers)."""
        schur = SymFunc(self.k, self.degree, self.to_schur(), _clean=True)
        return schur._axis_transform(
            lambda nu, lam: Fraction(kostka_number(lam, nu)))

    def to_complete(self):
        """Complete-basis coefficients via a unitriangular Kostka solve."""
        schur = self.to_schur()
        n = self.degree
        lams = partitions(n)  # lex descending refines dominance
        current = dict(schur)
        for axis in range(self.k):
            new = {}
            # group keys by the other axes, solve triangular system per group
            groups = {}
            for key, coeff in current.items():
                rest = key[:axis] + key[axis + 1:]
                groups.setdefault(rest, {})[key[axis]] = coeff
            for rest, vec in groups.items():
                solved = {}
                for lam in lams:
                    value = vec.get(lam, RationalFunction.zero())
                    for mu, c in solved.items():
                        kn = kostka_number(lam, mu)
                        if kn:
                            value = value - c * kn
                    if value:
                        solved[lam] = value
                for lam, c in solved.items():
                    nk = rest[:axis] + (lam,) + rest[axis:]
                    new[nk] = c
            current = new
        return current

    def basis_convert(self, target):
        if target == "power":
            return dict(self.terms)
        if target == "schur":
            return self.to_schur()
        if target == "monomial":
            return self.to_monomial()
        if target == "complete":
            return self.to_complete()
        raise ValueError(f"unknown basis {target!r}")

    def __repr__(self):
        body = ", ".join(f"p{list(map(list, key))}: {coeff}"
                         for key, coeff in sorted(self.terms.items()))
        return f"SymFunc(k={self.k}, deg={self.degree}, {{{body}}})"


# ---------------------------------------------------------------------------
# basis builders
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def schur_in_power(lam):
    """s_lam = sum_rho chi^lam_rho / z_rho p_rho, as {rho: Fraction}."""
    lam = as_partition(lam)
    out = {}
    for rho in partitions(sum(lam)):
        chi = sn_character(lam, rho)
        if chi:
            out[rho] = Fraction(chi, z_lambda(rho))
    return out


@lru_cache(maxsize=None)
def complete_in_power(n):
    """h_n = sum_rho p_rho / z_rho."""
    return {rho: Fraction(1, z_lambda(rho)) for rho in partitions(n)}


def schur_symfunc(lam):
    """s_lam on a single alphabet."""
    return SymFunc(1, sum(as_partition(lam)), {(rho,): c for rho, c in schur_in_power(lam).items()})


def complete_symfunc(lam):
    """h_lam = prod h_{lam_i} on a single alphabet."""
    lam = as_partition(lam)
    out = SymFunc.one(1)
    for part in lam:
        out = out * SymFunc(1, part, {(rho,): c for rho, c in complete_in_power(part).items()})
    return out


def power_symfunc(lam):
    return SymFunc(1, sum(as_partition(lam)), {(as_partition(lam),): RationalFunction.one()})


# ---------------------------------------------------------------------------
# type extension and principal specialization
# ---------------------------------------------------------------------------


def type_extension(family, omega):
    """Extend a partition-indexed family to a type: product of Adams images.

    `family` maps a partition to a single-alphabet SymFunc; the entry
    (d, lam) contributes psi_d(family(lam)).
    """
    out = SymFunc.one(1)
    for d, lam in omega.entries:
        out = out * family(lam).adams(d)
    return out


def schur_type(omega):
    """s_omega: the Schur family extended to a type (single alphabet)."""
    return type_extension(schur_symfunc, omega)


def power_y_specialized(r, q=None):
    """p_r of the alphabet y_i = q^{i-1}: the geometric value 1/(1-q^r)."""
    if q is None:
        q = RationalFunction.variable("q")
    else:
        q = RationalFunction.coerce(q)
    return RationalFunction.one() / (RationalFunction.one() - q ** r)


def schur_xy_specialized(lam, q=None):
    """s_lam(x y) with y_i = q^{i-1}: p_rho(x) sum weighted by 1/(1-q^{rho_j})."""
    lam = as_partition(lam)
    terms = {}
    for rho, c in schur_in_power(lam).items():
        coeff = RationalFunction.coerce(c)
        for part in rho:
            coeff = coeff * power_y_specialized(part, q)
        terms[(rho,)] = coeff
    return SymFunc(1, sum(lam), terms)


def schur_type_xy_specialized(omega, q=None):
    """s_omega(x y) under the same specialization, with q -> q^{d} per entry."""
    qv = RationalFunction.variable("q") if q is None else RationalFunction.coerce(q)
    out = SymFunc.one(1)
    for d, lam in omega.entries:
        piece_terms = {}
        for rho, c in schur_in_power(lam).items():
            coeff = RationalFunction.coerce(c)
            scaled = tuple(p * d for p in rho)
            for part in scaled:
                coeff = coeff * (RationalFunction.one() - qv ** part).inverse()
            piece_terms[(scaled,)] = coeff
        piece = SymFunc(1, sum(lam) * d, piece_terms)
        out = out * piece
    return out


def u_specialize(f):
    """Map p_r -> 1 - u^r on a single-alphabet SymFunc."""
    if f.k != 1:
        raise ValueError("u-specialization works on one alphabet")
    u = RationalFunction.variable("u")
    total = RationalFunction.zero()
    for (rho,), c in f.terms.items():
        value = c
        for part in rho:
            value = value * (RationalFunction.one() - u ** part)
        total = total + value
    return total


def top_degree(f):
    """(-1)^n <f, s_{(1^n)}> for homogeneous f of degree n on one alphabet."""
    if f.k != 1:
        raise ValueError("top degree works on one alphabet")
    n = f.degree
    sign = (-1) ** n
    return f.hall(schur_symfunc(tuple([1] * n))) * sign if n else (
        f.coefficient(((),)) * sign)


def top_degree_u_route(f):
    """u^n f[1-u^{-1}] at u = 0; must agree with top_degree."""
    if f.k != 1:
        raise ValueError("top degree works on one alphabet")
    total = RationalFunction.zero()
    for (rho,), c in f.terms.items():
        value = c
        # u^n prod (1 - u^{-rho_j}) = prod (u^{rho_j} - 1) since |rho| = n
        for part in rho:
            value = value * (RationalFunction.variable("u") ** part - 1)
        total = total + value
    return total.substitute({"u": RationalFunction.zero()})


# ---------------------------------------------------------------------------
# series
# ---------------------------------------------------------------------------


class SymSeries:
    """Truncated series sum_{n<=N} f_n T^n with f_n homogeneous of degree n."""

    __slots__ = ("k", "N", "coeffs")

    def __init__(self, k, N, coeffs, _clean=False):
        if N < 0:
            raise ValueError("truncation must be >= 0")
        if _clean:
            self.k = k
            self.N = N
            self.coeffs = coeffs
            return
        clean = {}
        for n, f in coeffs.items():
            if n < 0 or n > N:
                continue
            if not isinstance(f, SymFunc):
                f = SymFunc.scalar(k, f, degree=n if k == 0 else 0)
            if f.k != k:
                raise ValueError("alphabet count mismatch")
            if f.degree != n and not f.is_zero:
                if k == 0:
                    f = SymFunc(0, n, f.terms, _clean=True)
                else:
                    raise ValueError(f"coefficient at T^{n} has degree {f.degree}")
            if not f.is_zero:
                clean[n] = f
        self.k = k
        self.N = N
        self.coeffs = clean

    @classmethod
    def one(cls, k, N):
        return cls(k, N, {0: SymFunc.one(k)}, _clean=True)

    @classmethod
    def zero(cls, k, N):
        return cls(k, N, {}, _clean=True)

    def coefficient(self, n):
        return self.coeffs.get(n, SymFunc.zero(self.k, n))

    @property
    def constant_term(self):
        return self.coefficient(0).coefficient(_empty_key(self.k))

    def has_constant_one(self):
        return self.constant_term == RationalFunction.one()

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.coeffs)
        for n, f in other.coeffs.items():
            s = out.get(n, SymFunc.zero(self.k, n)) + f
            if s.is_zero:
                out.pop(n, None)
            else:
                out[n] = s
        return SymSeries(self.k, self.N, out, _clean=True)

    def _coerce(self, other):
        if isinstance(other, SymSeries):
            if other.k != self.k or other.N != self.N:
                raise ValueError("series shape mismatch")
            return other
        if isinstance(other, (int, Fraction, RationalFunction)):
            return SymSeries(self.k, self.N, {0: SymFunc.scalar(self.k, other)})
        raise TypeError(f"cannot combine SymSeries with {other!r}")

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def scale(self, c):
        return SymSeries(self.k, self.N,
                         {n: f.scale(c) for n, f in self.coeffs.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for i, f in self.coeffs.items():
            for j, g in other.coeffs.items():
                n = i + j
                if n > self.N:
                    continue
                p = f * g
                if n in out:
                    s = out[n] + p
                    if s.is_zero:
                        del out[n]
                    else:
                        out[n] = s
                elif not p.is_zero:
                    out[n] = p
        return SymSeries(self.k, self.N, out, _clean=True)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("series powers must be non-negative integers")
        result = SymSeries.one(self.k, self.N)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def pow_scalar(self, exponent):
        """(1 + B)^e for a scalar exponent e (exact binomial series)."""
        if not self.has_constant_one():
            raise ValueError("pow_scalar needs constant term 1")
        e = RationalFunction.coerce(exponent)
        b = self - 1
        result = SymSeries.one(self.k, self.N)
        term = SymSeries.one(self.k, self.N)
        coeff = RationalFunction.one()
        for j in range(1, self.N + 1):
            term = term * b
            if not term.coeffs:
                break
            coeff = coeff * (e - (j - 1)) / j
            result = result + term.scale(coeff)
        return result

    def adams(self, d):
        if d == 1:
            return self
        out = {}
        for n, f in self.coeffs.items():
            if n * d > self.N:
                raise TruncationError(
                    f"Adams psi_{d} pushes degree {n} past truncation {self.N}",
                    n * d)
            out[n * d] = f.adams(d)
        return SymSeries(self.k, self.N, out, _clean=True)

    def _adams_truncating(self, d):
        """Adams that silently drops degrees beyond N (internal to Log/Exp)."""
        out = {}
        for n, f in self.coeffs.items():
            if n * d <= self.N:
                out[n * d] = f.adams(d)
        return SymSeries(self.k, self.N, out, _clean=True)

    def log(self):
        """Formal log of a series with constant term 1."""
        if not self.has_constant_one():
            raise ValueError("log needs constant term 1")
        b = self - 1
        out = SymSeries.zero(self.k, self.N)
        term = SymSeries.one(self.k, self.N)
        for m in range(1, self.N + 1):
            term = term * b
            if not term.coeffs:
                break
            out = out + term.scale(Fraction((-1) ** (m + 1), m))
        return out

    def exp(self):
        """Formal exp of a series with zero constant term."""
        if 0 in self.coeffs:
            raise ValueError("exp needs zero constant term")
        out = SymSeries.one(self.k, self.N)
        term = SymSeries.one(self.k, self.N)
        fact = 1
        for m in range(1, self.N + 1):
            term = term * self
            if not term.coeffs:
                break
            fact *= m
            out = out + term.scale(Fraction(1, fact))
        return out

    def plethystic_log(self):
        """Log = Psi^{-1} after the formal log."""
        l = self.log()
        out = {}
        for m in range(1, self.N + 1):
            acc = SymFunc.zero(self.k, m)
            for d in _divisors(m):
                mu = moebius(d)
                if not mu:
                    continue
                inner = l.coeffs.get(m // d)
                if inner is None:
                    continue
                acc = acc + inner.adams(d).scale(Fraction(mu, d))
            if not acc.is_zero:
                out[m] = acc
        return SymSeries(self.k, self.N, out, _clean=True)

    def plethystic_exp(self):
        """Exp = exp after Psi."""
        if 0 in self.coeffs:
            raise ValueError("Exp needs zero constant term")
        psi = {}
        for m in range(1, self.N + 1):
            acc = SymFunc.zero(self.k, m)
            for d in _divisors(m):
                inner = self.coeffs.get(m // d)
                if inner is None:
                    continue
                acc = acc + inner.adams(d).scale(Fraction(1, d))
            if not acc.is_zero:
                psi[m] = acc
        return SymSeries(self.k, self.N, psi, _clean=True).exp()

    def substitute(self, bindings):
        return SymSeries(self.k, self.N,
                         {n: f.substitute(bindings) for n, f in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, SymSeries):
            return NotImplemented
        return (self.k == other.k and self.N == other.N
                and self.coeffs == other.coeffs)

    def __repr__(self):
        return (f"SymSeries(k={self.k}, N={self.N}, "
                f"degrees={sorted(self.coeffs)})")


def _divisors(m):
    out = [d for d in range(1, m + 1) if m % d == 0]
    return out


def hall_pairing(f, g):
    return f.hall(g)


def adams(obj, n):
    return obj.adams(n)


def plethystic_log(series):
    if not series.has_constant_one():
        raise ValueError("plethystic Log needs constant term 1")
    return series.plethystic_log()


def plethystic_exp(series):
    return series.plethystic_exp()
