"""Brute-force ground truth over small finite fields.

Enumerates GL_n(F_q) for prime q and small n, classifies every element's
conjugacy class by characteristic-polynomial factorization plus rank
conditions (rational canonical data), and evaluates exact convolution
counts of the surface-group relation against characteristic functions of
class closures.  A separate GL_2 character table with exact cyclotomic
arithmetic provides an independent route to the same numbers.

Everything here returns Fractions; nothing is ever floated.
"""

from __future__ import annotations

import math
import os
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .macdonald import centralizer_order, modified_kostka_q
from .partitions import MultiType, TypeT, dominates, n_stat, partitions
from .quiver import genericity_check

DEFAULT_BUDGET = 10_000_000


class BudgetError(RuntimeError):
    """The requested census exceeds the configured work budget."""

    def __init__(self, message, estimate):
        super().__init__(message)
        self.estimate = estimate


def configured_budget(budget=None):
    if budget is not None:
        return budget
    env = os.environ.get("CH_BUDGET")
    if env:
        return int(env)
    return DEFAULT_BUDGET


def is_prime(q):
    if q < 2:
        return False
    f = 2
    while f * f <= q:
        if q % f == 0:
            return False
        f += 1
    return True


# ---------------------------------------------------------------------------
# linear algebra over F_p
# ---------------------------------------------------------------------------


def mat_mul(a, b, p):
    n = len(a)
    return tuple(
        tuple(sum(a[i][l] * b[l][j] for l in range(n)) % p for j in range(n))
        for i in range(n))


def mat_identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_det(a, p):
    n = len(a)
    m = [list(row) for row in a]
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] % p), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        inv = pow(m[col][col], p - 2, p)
        det = det * m[col][col] % p
        for r in range(col + 1, n):
            factor = m[r][col] * inv % p
            if factor:
                m[r] = [(m[r][j] - factor * m[col][j]) % p for j in range(n)]
    return det % p


def mat_inv(a, p):
    n = len(a)
    m = [list(row) + [1 if i == j else 0 for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] % p), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[pivot] = m[pivot], m[col]
        inv = pow(m[col][col], p - 2, p)
        m[col] = [x * inv % p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                factor = m[r][col]
                m[r] = [(m[r][j] - factor * m[col][j]) % p for j in range(2 * n)]
    return tuple(tuple(row[n:]) for row in m)


def mat_rank(a, p):
    if not a:
        return 0
    rows = [list(r) for r in a]
    n_cols = len(rows[0])
    rank = 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(rows[r][j] - f * rows[rank][j]) % p for j in range(n_cols)]
        rank += 1
    return rank


# -- univariate polynomials over F_p (dense low-to-high coefficient tuples) --


def poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return tuple(out)


def poly_eval_matrix(coeffs, m, p):
    n = len(m)
    out = tuple(tuple(0 for _ in range(n)) for _ in range(n))
    power = mat_identity(n)
    for c in coeffs:
        if c:
            out = tuple(
                tuple((out[i][j] + c * power[i][j]) % p for j in range(n))
                for i in range(n))
        power = mat_mul(power, m, p)
    return out


def charpoly(m, p):
    """det(x I - M) as monic coefficients, by cofactor expansion (n <= 4)."""
    n = len(m)
    entries = [[((-m[i][j]) % p,) if i != j else ((-m[i][j]) % p, 1)
                for j in range(n)] for i in range(n)]

    def det(rows, cols):
        if len(rows) == 1:
            return entries[rows[0]][cols[0]]
        total = (0,)
        r = rows[0]
        for idx, c in enumerate(cols):
            minor = det(rows[1:], cols[:idx] + cols[idx + 1:])
            term = poly_mul(entries[r][c], minor, p)
            if idx % 2:
                term = tuple((-x) % p for x in term)
            width = max(len(total), len(term))
            total = tuple(((total[i] if i < len(total) else 0)
                           + (term[i] if i < len(term) else 0)) % p
                          for i in range(width))
        return total

    return det(tuple(range(n)), tuple(range(n)))


@lru_cache(maxsize=None)
def monic_irreducibles(p, d):
    """All monic irreducible polynomials of degree d over F_p (d <= 3)."""
    if d == 1:
        return tuple((a % p, 1) for a in range(p))
    out = []
    for tail in product(range(p), repeat=d):
        f = tail + (1,)
        if f[0] == 0:
            continue
        # degree 2, 3: irreducible iff no root
        if any(_poly_eval(f, x, p) == 0 for x in range(p)):
            continue
        if d == 2 or d == 3:
            out.append(f)
        else:
            raise NotImplementedError("irreducibles only generated up to degree 3")
    return tuple(out)


def _poly_eval(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def factor_monic(f, p):
    """Factor a monic polynomial into irreducibles: {factor: multiplicity}."""
    out = {}
    rest = f
    deg = len(rest) - 1
    d = 1
    while deg > 0:
        if d > deg:
            raise AssertionError("factorization ran past the degree")
        progressed = False
        for g in monic_irreducibles(p, d):
            if d == 1 and g[1] != 1:
                continue
            while True:
                q, r = _poly_divmod(rest, g, p)
                if any(r):
                    break
                out[g] = out.get(g, 0) + 1
                rest = q
                deg -= d
                progressed = True
                if deg == 0:
                    break
            if deg == 0:
                break
        if deg == 0:
            break
        if not progressed:
            d += 1
    return out


def _poly_divmod(a, b, p):
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    quo = [0] * max(1, len(a) - db)
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        shift = len(a) - 1 - db
        factor = a[-1] * inv % p
        quo[shift] = factor
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * c) % p
        while a and a[-1] == 0:
            a.pop()
    rem = tuple(a) if a else (0,)
    return tuple(quo), rem


# ---------------------------------------------------------------------------
# census
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassInfo:
    """One conjugacy class: canonical key, representative, size, type."""

    key: tuple          # sorted tuple of (irreducible factor coeffs, partition)
    rep: tuple
    size: int
    typ: TypeT


class GroupCensus:
    """Full enumeration of GL_n(F_q) with class membership."""

    def __init__(self, n, q, elements, class_keys, classes):
        self.n = n
        self.q = q
        self.elements = elements
        self.element_index = {m: i for i, m in enumerate(elements)}
        self.class_of = class_keys          # element index -> class id
        self.classes = classes              # list[ClassInfo]
        self.class_key_index = {c.key: i for i, c in enumerate(classes)}
        self.identity_class = self.class_of[self.element_index[mat_identity(n)]]
        self._inverse_index = None
        self._inverse_class = None
        self._commutator_cache = {}

    @property
    def order(self):
        return len(self.elements)

    def inverse_index(self):
        if self._inverse_index is None:
            self._inverse_index = [
                self.element_index[mat_inv(m, self.q)] for m in self.elements]
        return self._inverse_index

    def inverse_class(self):
        if self._inverse_class is None:
            inv = self.inverse_index()
            out = [0] * len(self.classes)
            for cid, info in enumerate(self.classes):
                out[cid] = self.class_of[inv[self.element_index[info.rep]]]
            self._inverse_class = out
        return self._inverse_class


def gl_order_value(n, q):
    return math.prod(q ** n - q ** i for i in range(n))


def class_key_of_matrix(m, p):
    """Canonical class data: factorization of the characteristic polynomial
    plus the partition of generalized-kernel jumps per irreducible factor."""
    n = len(m)
    f = charpoly(m, p)
    key = []
    for factor, mult in sorted(factor_monic(f, p).items()):
        d = len(factor) - 1
        if mult == 1:
            lam = (1,)
        else:
            kernels = []
            power = (1,)
            for j in range(1, mult + 1):
                power = poly_mul(power, factor, p)
                ker = n - mat_rank(poly_eval_matrix(power, m, p), p)
                kernels.append(ker // d)
            counts = [kernels[0]] + [kernels[j] - kernels[j - 1] for j in range(1, mult)]
            lam = _partition_from_counts(counts)
        key.append((factor, lam))
    return tuple(key)


def _partition_from_counts(counts):
    """counts[j] = number of parts > j; recover the partition."""
    lam = []
    for j, c in enumerate(counts):
        if c < 0:
            raise AssertionError("kernel jumps must decrease")
    for i in range(len(counts)):
        parts_here = counts[i] - (counts[i + 1] if i + 1 < len(counts) else 0)
        lam.extend([i + 1] * parts_here)
    return tuple(sorted(lam, reverse=True))


def type_of_class_key(key):
    return TypeT(tuple((len(factor) - 1, lam) for factor, lam in key))


def build_census(n, q, budget=None):
    """Enumerate GL_n(F_q), classify every element; n <= 3, q a small prime."""
    if n < 1 or n > 3:
        raise ValueError("census supports 1 <= n <= 3")
    if not is_prime(q):
        raise ValueError(f"census needs a prime q (got {q}); prime powers are "
                         "not supported by the element enumeration")
    limit = configured_budget(budget)
    estimate = q ** (n * n)
    if estimate > limit:
        raise BudgetError(
            f"census of GL_{n}(F_{q}) scans {estimate} matrices; budget {limit}",
            estimate)
    elements = []
    class_keys = {}
    assignments = []
    for flat in product(range(q), repeat=n * n):
        m = tuple(tuple(flat[i * n + j] for j in range(n)) for i in range(n))
        if mat_det(m, q) == 0:
            continue
        elements.append(m)
        key = class_key_of_matrix(m, q)
        if key not in class_keys:
            class_keys[key] = [len(class_keys), m, 0]
        class_keys[key][2] += 1
        assignments.append(class_keys[key][0])
    classes = [None] * len(class_keys)
    for key, (cid, rep, size) in class_keys.items():
        classes[cid] = ClassInfo(key, rep, size, type_of_class_key(key))
    census = GroupCensus(n, q, tuple(elements), assignments, classes)
    if census.order != gl_order_value(n, q):
        raise AssertionError("census order disagrees with the group order formula")
    if sum(c.size for c in classes) != census.order:
        raise AssertionError("class sizes do not add up to the group order")
    return census


# ---------------------------------------------------------------------------
# class descriptors and characteristic functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassDescriptor:
    """A class of GL_n(F_q) by (degree, partition, eigenvalue) blocks.

    Eigenvalues: an integer of F_q^* for degree-1 blocks; a monic
    irreducible coefficient tuple (low to high, length d+1) for degree-d
    blocks.
    """

    entries: tuple

    def __init__(self, entries):
        clean = []
        for d, lam, eig in entries:
            lam = tuple(lam)
            if d == 1:
                eig = int(eig)
            else:
                eig = tuple(int(x) for x in eig)
                if len(eig) != d + 1:
                    raise ValueError("degree-d eigenvalue needs d+1 coefficients")
            clean.append((int(d), lam, eig))
        clean.sort(key=lambda e: (e[0], e[1], str(e[2])))
        object.__setattr__(self, "entries", tuple(clean))

    @property
    def typ(self):
        return TypeT(tuple((d, lam) for d, lam, _ in self.entries))

    @property
    def n(self):
        return self.typ.size

    def factor_blocks(self, p):
        """[(irreducible factor coeffs, partition)] with validation."""
        out = []
        for d, lam, eig in self.entries:
            if d == 1:
                a = eig % p
                if a == 0:
                    raise ValueError("eigenvalue must be invertible")
                factor = ((-a) % p, 1)
            else:
                factor = tuple(x % p for x in eig)
                if factor[-1] != 1:
                    raise ValueError("eigenvalue polynomial must be monic")
                if factor not in monic_irreducibles(p, d):
                    raise ValueError(f"{factor} is not irreducible of degree {d} "
                                     f"over F_{p}; pick a different q")
                if factor[0] == 0:
                    raise ValueError("eigenvalue polynomial must be invertible")
            out.append((factor, lam))
        factors = [f for f, _ in out]
        if len(set(factors)) != len(factors):
            raise ValueError("eigenvalue blocks must be pairwise distinct")
        return out

    def is_semisimple(self):
        return all(set(lam) == {1} for _, lam, _ in self.entries)

    def is_regular(self):
        return all(len(lam) == 1 for _, lam, _ in self.entries)


def find_class(census, descriptor):
    """Class id of a descriptor in the census."""
    blocks = descriptor.factor_blocks(census.q)
    key = tuple(sorted(blocks))
    cid = census.class_key_index.get(key)
    if cid is None:
        raise ValueError(f"descriptor {descriptor} not realizable over F_{census.q}")
    return cid


def closure_char_function(descriptor, census):
    """Values of the IC characteristic function of the class closure.

    On a class of the same eigenvalue blocks with blockwise-dominated
    partitions the value is prod q^{-n(lam_block)} Ktilde_{lam, tau}(q^d);
    degree > 1 blocks must be semisimple (their closures are trivial).
    """
    q = census.q
    blocks = descriptor.factor_blocks(q)
    for (factor, lam) in blocks:
        if len(factor) - 1 > 1 and set(lam) != {1}:
            raise NotImplementedError(
                "closures of non-semisimple blocks over extension fields are "
                "not supported by the oracle")
    values = [Fraction(0)] * len(census.classes)
    for cid, info in enumerate(census.classes):
        if len(info.key) != len(blocks):
            continue
        tau_blocks = dict(info.key)
        value = Fraction(1)
        ok = True
        for factor, lam in blocks:
            tau = tau_blocks.get(factor)
            if tau is None or not dominates(lam, tau):
                ok = False
                break
            d = len(factor) - 1
            kt = modified_kostka_q(lam, tau)
            qd = Fraction(q) ** d
            value *= _eval_qpoly(kt, qd) / qd ** n_stat(lam)
        if ok:
            values[cid] = value
    return values


def closure_indicator_function(descriptor, census):
    """1 on every class inside the closure, 0 elsewhere."""
    q = census.q
    blocks = descriptor.factor_blocks(q)
    values = [Fraction(0)] * len(census.classes)
    for cid, info in enumerate(census.classes):
        if len(info.key) != len(blocks):
            continue
        tau_blocks = dict(info.key)
        ok = all(
            (tau := tau_blocks.get(factor)) is not None and dominates(lam, tau)
            for factor, lam in blocks)
        if ok:
            values[cid] = Fraction(1)
    return values


def _eval_qpoly(poly, qv):
    total = Fraction(0)
    if poly.is_zero:
        return total
    i = poly.variables.index("q")
    for exps, c in poly.terms.items():
        total += c * qv ** exps[i]
    return total


# ---------------------------------------------------------------------------
# convolution machinery
# ---------------------------------------------------------------------------


def commutator_distribution(census, g):
    """Class function E_g(z) = #{(a_1, b_1, ..., a_g, b_g): prod [a_i,b_i] = z}.

    g = 0 is the point mass at the identity; g = 1 is enumerated directly;
    larger g is the g-fold convolution power of the g = 1 distribution.
    """
    if g in census._commutator_cache:
        return census._commutator_cache[g]
    if g == 0:
        out = [Fraction(0)] * len(census.classes)
        out[census.identity_class] = Fraction(1)
    elif g == 1:
        out = _commutator_base(census)
    else:
        base = commutator_distribution(census, 1)
        out = base
        for _ in range(g - 1):
            out = convolve_class_functions(census, out, base)
    census._commutator_cache[g] = out
    return out


def _commutator_base(census):
    q = census.q
    nclasses = len(census.classes)
    totals = [Fraction(0)] * nclasses
    for info in census.classes:
        a = info.rep
        a_inv = mat_inv(a, q)
        bucket = [0] * nclasses
        for b in census.elements:
            c = mat_mul(mat_mul(a, b, q), mat_mul(a_inv, mat_inv(b, q), q), q)
            bucket[census.class_of[census.element_index[c]]] += 1
        for cid in range(nclasses):
            if bucket[cid]:
                totals[cid] += Fraction(info.size * bucket[cid],
                                        census.classes[cid].size)
    for v in totals:
        if v.denominator != 1:
            raise AssertionError("commutator distribution must be integral")
    return totals


def convolve_class_functions(census, f, h):
    """(f * h)(z) = sum_x f(x) h(x^{-1} z), evaluated per class."""
    q = census.q
    inv = census.inverse_index()
    out = []
    class_of = census.class_of
    idx = census.element_index
    for info in census.classes:
        z = info.rep
        total = Fraction(0)
        for i, x in enumerate(census.elements):
            fx = f[class_of[i]]
            if fx:
                y = mat_mul(census.elements[inv[i]], z, q)
                total += fx * h[class_of[idx[y]]]
        out.append(total)
    return out


def _final_bracket(census, f, h):
    """<f * h, 1_1> = (1/|G|) sum_C |C| f(C) h(class((rep_C)^{-1}))."""
    inv_class = census.inverse_class()
    total = Fraction(0)
    for cid, info in enumerate(census.classes):
        if f[cid]:
            total += info.size * f[cid] * h[inv_class[cid]]
    return total / census.order


def convolution_count(census, g, descriptors, weights="ic"):
    """<E * X_1 * ... * X_k, 1_1> over the census group.

    weights: "ic" uses intersection-cohomology closure values, "indicator"
    plain closure indicators.
    """
    maker = closure_char_function if weights == "ic" else closure_indicator_function
    funcs = [maker(d, census) for d in descriptors]
    f = commutator_distribution(census, g)
    if not funcs:
        return f[census.identity_class] / census.order
    for h in funcs[:-1]:
        f = convolve_class_functions(census, f, h)
    return _final_bracket(census, f, funcs[-1])


def stack_count(census, g, descriptors):
    """#[M](F_q) = #U(F_q)/|G|, for semisimple-or-regular closures.

    Counts with plain closure indicators; warns when the rational-smoothness
    hypothesis fails (the IC-weighted number then differs in general).
    """
    if not all(d.is_semisimple() or d.is_regular() for d in descriptors):
        warnings.warn("stack count hypothesis violated: classes are neither "
                      "semisimple nor regular; reporting the raw indicator count")
    return convolution_count(census, g, descriptors, weights="indicator")


# ---------------------------------------------------------------------------
# finite extension fields (for eigenvalue search and the character table)
# ---------------------------------------------------------------------------


class FieldExtension:
    """F_{p^d} as polynomials modulo a chosen irreducible."""

    def __init__(self, p, d):
        self.p = p
        self.d = d
        self.modulus = monic_irreducibles(p, d)[0] if d > 1 else (0, 1)
        self.order = p ** d

    def mul(self, a, b):
        if self.d == 1:
            return ((a[0] * b[0]) % self.p,)
        prod_ = poly_mul(a, b, self.p)
        _, rem = _poly_divmod(prod_, self.modulus, self.p)
        rem = tuple(rem) + (0,) * (self.d - len(rem))
        return rem[:self.d]

    def power(self, a, e):
        result = self.one()
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def one(self):
        return (1,) + (0,) * (self.d - 1)

    def zero(self):
        return (0,) * self.d

    def elements(self):
        return [tuple(v) for v in product(range(self.p), repeat=self.d)]

    @lru_cache(maxsize=None)
    def generator(self):
        target = self.order - 1
        for cand in self.elements():
            if cand == self.zero():
                continue
            seen = cand
            order = 1
            while seen != self.one():
                seen = self.mul(seen, cand)
                order += 1
                if order > target:
                    break
            if order == target:
                return cand
        raise AssertionError("no multiplicative generator found")

    def dlog_table(self):
        gen = self.generator()
        table = {}
        acc = self.one()
        for e in range(self.order - 1):
            table[acc] = e
            acc = self.mul(acc, gen)
        return table

    def minimal_polynomial(self, a):
        """Monic minimal polynomial of a over F_p (degree divides d)."""
        conjugates = []
        seen = a
        while seen not in conjugates:
            conjugates.append(seen)
            seen = self.power(seen, self.p)
        # prod (x - conj): computed in the extension, lands in F_p
        poly = [self.one()]
        for c in conjugates:
            neg_c = tuple((-x) % self.p for x in c)
            new = [self.zero()] * (len(poly) + 1)
            for i, coeff in enumerate(poly):
                new[i + 1] = tuple((new[i + 1][j] + coeff[j]) % self.p
                                   for j in range(self.d))
                prod_ = self.mul(coeff, neg_c)
                new[i] = tuple((new[i][j] + prod_[j]) % self.p for j in range(self.d))
            poly = new
        out = []
        for coeff in poly:
            if any(coeff[1:]):
                raise AssertionError("minimal polynomial has coefficients outside F_p")
            out.append(coeff[0])
        return tuple(out)


# ---------------------------------------------------------------------------
# generic eigenvalue search
# ---------------------------------------------------------------------------


def find_generic_eigenvalues(multitype, q, max_candidates=200000):
    """Concrete generic eigenvalue data over F_q for a multi-type, or None.

    Works in the cyclic group F_{q^D}^* with D the lcm of all degrees: each
    degree-d block contributes its d Frobenius translates.  The search runs
    over assignments of distinct degree-d orbits per class, checking the
    exact genericity condition; the first hit is returned as descriptors.
    """
    if isinstance(multitype, TypeT):
        multitype = MultiType((multitype,))
    degrees = sorted({d for t in multitype.types for d, _ in t.entries})
    D = 1
    for d in degrees:
        D = D * d // math.gcd(D, d)
    modulus = q ** D - 1
    fields = {d: FieldExtension(q, d) for d in degrees}
    dlogs = {d: fields[d].dlog_table() for d in degrees}
    # orbit representatives per degree: dlog exponents embedded in Z/(q^D - 1)
    orbit_reps = {}
    for d in degrees:
        embed = modulus // (q ** d - 1)
        reps = []
        seen = set()
        for elt, e in sorted(dlogs[d].items(), key=lambda kv: kv[1]):
            if elt in seen:
                continue
            orbit = []
            cur = elt
            for _ in range(d):
                orbit.append(cur)
                seen.add(cur)
                cur = fields[d].power(cur, q)
            if len(set(orbit)) != d:
                continue  # degree smaller than d
            reps.append((elt, tuple((dlogs[d][x] * embed) % modulus for x in orbit)))
        orbit_reps[d] = reps

    def class_candidates(t):
        """Assignments of pairwise distinct orbits to the entries of one type."""
        slots = t.entries
        chosen = [[] for _ in slots]

        def rec(i, used):
            if i == len(slots):
                yield tuple(chosen)
                return
            d, lam = slots[i]
            for elt, vectors in orbit_reps[d]:
                if any(v in used for v in vectors):
                    continue
                chosen[i] = (d, lam, elt, vectors)
                yield from rec(i + 1, used | set(vectors))
            chosen[i] = []

        yield from rec(0, frozenset())

    candidate_lists = [list(class_candidates(t)) for t in multitype.types]
    tried = 0
    for combo in product(*candidate_lists):
        tried += 1
        if tried > max_candidates:
            return None
        classes = []
        for assignment in combo:
            eigs = []
            for d, lam, _, vectors in assignment:
                for v in vectors:
                    eigs.append(((v,), sum(lam)))
            classes.append(eigs)
        if genericity_check(classes, (modulus,)):
            descriptors = []
            for assignment in combo:
                entries = []
                for d, lam, elt, _ in assignment:
                    if d == 1:
                        entries.append((1, lam, elt[0]))
                    else:
                        entries.append((d, lam, fields[d].minimal_polynomial(elt)))
                descriptors.append(ClassDescriptor(tuple(entries)))
            return tuple(descriptors)
    return None


# ---------------------------------------------------------------------------
# GL_2 character table with exact cyclotomic values
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic_poly(m):
    """Coefficients (low to high) of the m-th cyclotomic polynomial."""
    # x^m - 1 divided by the product of proper cyclotomic factors
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            div = cyclotomic_poly(d)
            poly = _zpoly_exact_div(poly, div)
    return tuple(poly)


def _zpoly_exact_div(a, b):
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        shift = len(a) - len(b)
        f = a[-1] // b[-1]
        out[shift] = f
        for i, c in enumerate(b):
            a[shift + i] -= f * c
    if any(a):
        raise AssertionError("inexact cyclotomic division")
    return out


class Cyclotomic:
    """Exact element of Q[zeta_m], stored in the group-algebra basis."""

    __slots__ = ("m", "terms")

    def __init__(self, m, terms=None):
        self.m = m
        self.terms = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    e %= m
                    self.terms[e] = self.terms.get(e, Fraction(0)) + c
            self.terms = {e: c for e, c in self.terms.items() if c}

    @classmethod
    def root(cls, m, e):
        return cls(m, {e: 1})

    @classmethod
    def constant(cls, m, c):
        return cls(m, {0: c})

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Cyclotomic(self.m, out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.m, {e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1 + e2) % self.m
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Cyclotomic(self.m, out)

    __rmul__ = __mul__

    def conjugate(self):
        return Cyclotomic(self.m, {(-e) % self.m: c for e, c in self.terms.items()})

    def to_rational(self):
        """Rational value, asserting the element is rational (mod Phi_m)."""
        dense = [Fraction(0)] * self.m
        for e, c in self.terms.items():
            dense[e] += c
        phi = [Fraction(c) for c in cyclotomic_poly(self.m)]
        # reduce modulo Phi_m
        while len(dense) >= len(phi):
            while dense and not dense[-1]:
                dense.pop()
            if len(dense) < len(phi):
                break
            f = dense[-1] / phi[-1]
            shift = len(dense) - len(phi)
            for i, c in enumerate(phi):
                dense[shift + i] -= f * c
        while dense and not dense[-1]:
            dense.pop()
        if len(dense) > 1:
            raise AssertionError("cyclotomic value is not rational")
        return dense[0] if dense else Fraction(0)


class GL2CharacterTable:
    """The classical character table of GL_2(F_q), matched to a census."""

    def __init__(self, census):
        if census.n != 2:
            raise ValueError("character table only implemented for n = 2")
        self.census = census
        q = census.q
        self.q = q
        self.m = q * q - 1
        self.fq2 = FieldExtension(q, 2)
        self.dlog2 = self.fq2.dlog_table()
        self._embed = {}  # F_q^* -> exponent of zeta_m via F_{q^2} embedding
        for a in range(1, q):
            self._embed[a] = self.dlog2[(a, 0)]
        self._class_params = [self._classify(info) for info in census.classes]
        self.characters = self._build_characters()

    def _classify(self, info):
        q = self.q
        key = info.key
        if len(key) == 1 and len(key[0][0]) == 3:
            factor = key[0][0]
            # eigenvalue z in F_{q^2}: root of the factor
            z = self._root_of_quadratic(factor)
            return ("d", z)
        if len(key) == 1:
            factor, lam = key[0]
            a = (-factor[0]) % q
            return ("b", a) if lam == (2,) else ("a", a)
        (f1, _), (f2, _) = key
        return ("c", ((-f1[0]) % q, (-f2[0]) % q))

    def _root_of_quadratic(self, factor):
        for z, e in self.dlog2.items():
            del e
            if self._eval_ext(factor, z) == self.fq2.zero():
                return z
        raise AssertionError("quadratic factor has no root in F_{q^2}")

    def _eval_ext(self, factor, z):
        acc = self.fq2.zero()
        for c in reversed(factor):
            acc = self.fq2.mul(acc, z)
            acc = ((acc[0] + c) % self.q, acc[1])
        return acc

    def _alpha(self, j, a):
        """alpha_j(a) for a in F_q^*: zeta_{q-1}^{j dlog a} inside Q[zeta_m]."""
        return Cyclotomic.root(self.m, j * self._embed[a] * 1 % self.m)

    def _phi(self, j, z):
        return Cyclotomic.root(self.m, j * self.dlog2[z] % self.m)

    def _build_characters(self):
        q = self.q
        m = self.m
        chars = []

        def c0(v):
            return Cyclotomic.constant(m, v)

        for j in range(q - 1):

            def u_char(params, j=j):
                kind, data = params
                if kind == "a":
                    return self._alpha(2 * j, data)
                if kind == "b":
                    return self._alpha(2 * j, data)
                if kind == "c":
                    x, y = data
                    return self._alpha(j, x) * self._alpha(j, y)
                z = data
                norm = self.fq2.power(z, q + 1)
                return self._alpha(j, norm[0])

            def v_char(params, j=j):
                kind, data = params
                if kind == "a":
                    return self._alpha(2 * j, data) * self.q
                if kind == "b":
                    return c0(0)
                if kind == "c":
                    x, y = data
                    return self._alpha(j, x) * self._alpha(j, y)
                z = data
                norm = self.fq2.power(z, q + 1)
                return self._alpha(j, norm[0]) * (-1)

            chars.append((1, u_char))
            chars.append((q, v_char))
        for j1 in range(q - 1):
            for j2 in range(j1 + 1, q - 1):

                def w_char(params, j1=j1, j2=j2):
                    kind, data = params
                    if kind == "a":
                        return self._alpha(j1 + j2, data) * (self.q + 1)
                    if kind == "b":
                        return self._alpha(j1 + j2, data)
                    if kind == "c":
                        x, y = data
                        return (self._alpha(j1, x) * self._alpha(j2, y)
                                + self._alpha(j1, y) * self._alpha(j2, x))
                    return c0(0)

                chars.append((q + 1, w_char))
        seen_pairs = set()
        for j in range(self.m):
            if (j * q) % self.m == j % self.m:
                continue  # phi = phi^q: not a regular character
            pair = frozenset({j % self.m, (j * q) % self.m})
            if pair in seen_pairs:
                continue
            seen_pairs.add(pair)

            def x_char(params, j=j):
                kind, data = params
                if kind == "a":
                    return self._phi(j, (data, 0)) * (self.q - 1)
                if kind == "b":
                    return self._phi(j, (data, 0)) * (-1)
                if kind == "c":
                    return c0(0)
                z = data
                zq = self.fq2.power(z, self.q)
                return (self._phi(j, z) + self._phi(j, zq)) * (-1)

            chars.append((q - 1, x_char))
        return chars

    def check_orthogonality(self):
        """Exact first orthogonality for all pairs of characters."""
        census = self.census
        order = census.order
        for i, (deg_i, chi_i) in enumerate(self.characters):
            for j, (deg_j, chi_j) in enumerate(self.characters):
                if j < i:
                    continue
                total = Cyclotomic.constant(self.m, 0)
                for cid, info in enumerate(census.classes):
                    p = self._class_params[cid]
                    total = total + chi_i(p) * chi_j(p).conjugate() * info.size
                value = total.to_rational() / order
                expected = Fraction(1) if i == j else Fraction(0)
                if value != expected:
                    raise AssertionError(
                        f"orthogonality fails for characters {i}, {j}: {value}")
        return True

    def check_degrees(self):
        for deg, chi in self.characters:
            value = chi(("a", 1)).to_rational()
            if value != deg:
                raise AssertionError(f"degree mismatch: {value} vs {deg}")
        if len(self.characters) != len(self.census.classes):
            raise AssertionError("character count differs from class count")
        return True

    def commutator_from_characters(self, g=1):
        """E_g(C) = |G|^{2g-1} sum_chi chi(C)/chi(1)^{2g-1}, per class."""
        order = self.census.order
        out = []
        for cid in range(len(self.census.classes)):
            p = self._class_params[cid]
            total = Cyclotomic.constant(self.m, 0)
            for deg, chi in self.characters:
                total = total + chi(p) * Fraction(1, deg ** (2 * g - 1))
            value = total.to_rational() * Fraction(order) ** (2 * g - 1)
            if value.denominator != 1:
                raise AssertionError("character-path commutator count not integral")
            out.append(value)
        return out

    def frobenius_count(self, class_ids, g):
        """#U_C / |G| from the Frobenius character formula (honest classes)."""
        order = self.census.order
        total = Cyclotomic.constant(self.m, 0)
        for deg, chi in self.characters:
            term = Cyclotomic.constant(self.m, 1)
            for cid in class_ids:
                p = self._class_params[cid]
                term = term * chi(p) * self.census.classes[cid].size
            total = total + term * (Fraction(order, deg) ** (2 * g - 2)
                                    / Fraction(deg) ** len(class_ids))
        return total.to_rational()
