"""Modified Macdonald polynomials, Kostka polynomials, Green polynomials,
hook products and unipotent centralizer orders.

The two-parameter Macdonald data comes from the combinatorial filling
formula (inv/maj statistics), which is integral and needs no
orthogonalization.  The one-parameter Kostka polynomials come from the
charge statistic on semistandard tableaux, deliberately computed by an
independent route so that the identities tying the two together act as
genuine cross-checks rather than tautologies.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, cache
from itertools import permutations

from .algebra import (
    RationalFunction,
    SparsePoly,
    assert_polynomial,
)
from .partitions import (
    arm,
    as_partition,
    cells,
    dual,
    kostka_number,
    leg,
    n_stat,
    partitions,
    sn_character,
)

QT_VARS = ("q", "t")


# ---------------------------------------------------------------------------
# fillings: modified Macdonald polynomials
# ---------------------------------------------------------------------------


def _diagram_rows(mu):
    """Cells of mu grouped in reading order: top row first, left to right.

    Rows are indexed 1..len(mu) with row 1 the longest, drawn at the bottom;
    the reading order therefore starts at row len(mu).
    """
    order = []
    for i in range(len(mu), 0, -1):
        for j in range(1, mu[i - 1] + 1):
            order.append((i, j))
    return order


def _attack_pairs(mu, order):
    """Index pairs (a, b), a before b in reading order, that attack.

    Cells attack within a row, and across consecutive rows when the upper
    cell sits strictly to the right of the lower one; reading order is top
    row first, so the upper cell is always the first of the pair.
    """
    pos = {cell: idx for idx, cell in enumerate(order)}
    pairs = []
    for (i, j), a in pos.items():
        # same row, to the right
        for j2 in range(j + 1, mu[i - 1] + 1):
            pairs.append((a, pos[(i, j2)]))
        # row below (i-1), strictly to the left
        if i - 1 >= 1:
            for j2 in range(1, min(j - 1, mu[i - 2]) + 1):
                pairs.append((a, pos[(i - 1, j2)]))
    return pairs


def _descent_data(mu, order):
    """For each cell with a cell below it: (index, index_below, leg+1, arm)."""
    pos = {cell: idx for idx, cell in enumerate(order)}
    d = dual(mu)
    data = []
    for (i, j), a in pos.items():
        if i >= 2 and j <= mu[i - 2]:
            data.append((a, pos[(i - 1, j)], leg(mu, (i, j), d) + 1, arm(mu, (i, j))))
    return data


def _content_fillings(content):
    """Distinct arrangements of the multiset {1^c1, 2^c2, ...}."""
    letters = []
    for letter, mult in enumerate(content, start=1):
        letters.extend([letter] * mult)
    seen = set()
    for p in permutations(letters):
        if p not in seen:
            seen.add(p)
            yield p


@lru_cache(maxsize=None)
def macdonald_monomial(mu):
    """Monomial expansion of the modified Macdonald polynomial of mu.

    Returns {content partition: SparsePoly in (q, t)} where each value is
    sum over fillings with that content of q^inv t^maj.
    """
    mu = as_partition(mu)
    n = sum(mu)
    order = _diagram_rows(mu)
    attacks = _attack_pairs(mu, order)
    descents = _descent_data(mu, order)
    out = {}
    for content in partitions(n):
        acc = {}
        for filling in _content_fillings(content):
            maj = 0
            arm_discount = 0
            for a, below, legp1, arm_len in descents:
                if filling[a] > filling[below]:
                    maj += legp1
                    arm_discount += arm_len
            inv_pairs = sum(1 for a, b in attacks if filling[a] > filling[b])
            inv = inv_pairs - arm_discount
            if inv < 0:
                raise AssertionError("negative inv statistic; conventions broken")
            key = (inv, maj)
            acc[key] = acc.get(key, 0) + 1
        out[content] = SparsePoly(QT_VARS, {k: Fraction(v) for k, v in acc.items()})
    return out


@lru_cache(maxsize=None)
def macdonald_schur(mu):
    """Schur expansion of the modified Macdonald polynomial.

    Returns {lam: K(q,t)} with the (q,t)-Kostka polynomials as SparsePolys.
    The monomial-to-Schur change of basis is a unitriangular solve against
    the Kostka numbers, taken in lexicographically descending order, which
    refines dominance.
    """
    mu = as_partition(mu)
    mono = macdonald_monomial(mu)
    n = sum(mu)
    coeffs = {}
    for lam in partitions(n):
        value = mono[lam]
        for bigger, a in coeffs.items():
            kn = kostka_number(bigger, lam)
            if kn:
                value = value - a.scale(kn)
        coeffs[lam] = value
    return coeffs


def kostka_qt(lam, mu):
    """The (q,t)-Kostka polynomial attached to Schur index lam, Macdonald index mu."""
    lam = as_partition(lam)
    mu = as_partition(mu)
    if sum(lam) != sum(mu):
        raise ValueError("Kostka indices need equal sizes")
    return macdonald_schur(mu).get(lam, SparsePoly(QT_VARS, {}))


# ---------------------------------------------------------------------------
# charge and one-variable Kostka polynomials
# ---------------------------------------------------------------------------


def charge(word):
    """Charge of a word with partition content (Lascoux-Schutzenberger).

    Standard subwords are extracted scanning right to left cyclically; a
    letter found strictly to the left of the previous one (no wrap) raises
    the running index by one.
    """
    word = list(word)
    total = 0
    while word:
        top = max(word)
        pos = max(i for i, c in enumerate(word) if c == 1)
        picked = [pos]
        index = 0
        for letter in range(2, top + 1):
            j = pos - 1
            wrapped = False
            while True:
                if j < 0:
                    j = len(word) - 1
                    wrapped = True
                if word[j] == letter:
                    break
                j -= 1
            if not wrapped:
                index += 1
            total += index
            pos = j
            picked.append(j)
        for j in sorted(picked, reverse=True):
            word.pop(j)
    return total


def _ssyt_tableaux(shape, content):
    """Semistandard tableaux of the given shape and content, as row lists."""
    shape = as_partition(shape)
    content = as_partition(content)
    if sum(shape) != sum(content):
        return

    def shapes_down(lam, letter):
        if letter == 0:
            if not lam:
                yield []
            return
        from .partitions import _horizontal_strip_removals

        for nu in _horizontal_strip_removals(lam, content[letter - 1]):
            for chain in shapes_down(nu, letter - 1):
                yield chain + [lam]

    for chain in shapes_down(shape, len(content)):
        rows = [[] for _ in shape]
        previous = ()
        for letter, lam in enumerate(chain, start=1):
            for r in range(len(lam)):
                old = previous[r] if r < len(previous) else 0
                rows[r].extend([letter] * (lam[r] - old))
            previous = lam
        yield rows


def reading_word(rows):
    """Rows read right to left, top row first."""
    out = []
    for row in rows:
        out.extend(reversed(row))
    return out


@lru_cache(maxsize=None)
def kostka_foulkes(lam, mu):
    """Charge Kostka-Foulkes polynomial K_{lam,mu}(t)."""
    lam = as_partition(lam)
    mu = as_partition(mu)
    if sum(lam) != sum(mu):
        raise ValueError("Kostka-Foulkes needs |lam| = |mu|")
    terms = {}
    for rows in _ssyt_tableaux(lam, mu):
        c = charge(reading_word(rows))
        terms[(c,)] = terms.get((c,), 0) + 1
    return SparsePoly(("t",), {k: Fraction(v) for k, v in terms.items()})


@lru_cache(maxsize=None)
def modified_kostka_q(lam, mu):
    """One-variable modified Kostka polynomial: q^{n(mu)} K_{lam,mu}(1/q)."""
    k = kostka_foulkes(lam, mu)
    shift = n_stat(as_partition(mu))
    terms = {}
    for (e,), c in k.terms.items():
        if e > shift:
            raise AssertionError("charge exceeds n(mu); conventions broken")
        terms[(shift - e,)] = c
    return SparsePoly(("q",), terms)


@lru_cache(maxsize=None)
def green_polynomial(lam, rho):
    """Green polynomial Q^lam_rho(q) = sum_mu chi^mu_rho Ktilde_{mu,lam}(q)."""
    lam = as_partition(lam)
    rho = as_partition(rho)
    if sum(lam) != sum(rho):
        raise ValueError("Green polynomial needs |lam| = |rho|")
    total = SparsePoly(("q",), {})
    for mu in partitions(sum(lam)):
        chi = sn_character(mu, rho)
        if chi:
            total = total + modified_kostka_q(mu, lam).scale(chi)
    return total


# ---------------------------------------------------------------------------
# hooks, centralizers, group orders
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def hook_polynomial(lam):
    """H_lam(q) = prod over cells (1 - q^{hook})."""
    lam = as_partition(lam)
    q = SparsePoly.variable("q")
    d = dual(lam)
    out = SparsePoly.constant(1, ("q",))
    for cell in cells(lam):
        h = arm(lam, cell) + leg(lam, cell, d) + 1
        out = out * (SparsePoly.constant(1, ("q",)) - SparsePoly.monomial(("q",), (h,)))
    del q
    return out


@lru_cache(maxsize=None)
def centralizer_order(lam):
    """a_lam(q): order of the centralizer of a unipotent element of type lam."""
    lam = as_partition(lam)
    q = RationalFunction.variable("q")
    mult = {}
    for p in lam:
        mult[p] = mult.get(p, 0) + 1
    value = q ** (sum(lam) + 2 * n_stat(lam))
    for m in mult.values():
        for j in range(1, m + 1):
            value = value * (1 - q ** (-j))
    poly = assert_polynomial(value, ("q",))
    if any(c.denominator != 1 for c in poly.terms.values()):
        raise AssertionError("centralizer order must have integer coefficients")
    return poly


def hook_and_centralizer(lam):
    a = centralizer_order(lam)
    return {
        "hook": hook_polynomial(lam),
        "centralizer": a,
        "inverse_centralizer": RationalFunction.one() / RationalFunction.from_poly(a),
    }


@cache
def gl_order(n):
    """|GL_n(F_q)| as a polynomial in q."""
    q = SparsePoly.variable("q")
    out = SparsePoly.constant(1, ("q",))
    qn = SparsePoly.monomial(("q",), (n,))
    for i in range(n):
        out = out * (qn - SparsePoly.monomial(("q",), (i,)))
    del q
    return out


@lru_cache(maxsize=None)
def unipotent_character_degree(lam):
    """Degree of the unipotent character of GL_n(F_q) attached to lam.

    Extracted from |G| / chi(1) = (-1)^{|lam|} H_lam(q) q^{n(n-1)/2 - n(lam)}
    by exact division.
    """
    lam = as_partition(lam)
    n = sum(lam)
    sign = (-1) ** n
    denom = RationalFunction.from_poly(hook_polynomial(lam)) * sign
    denom = denom * RationalFunction.variable("q") ** (n * (n - 1) // 2 - n_stat(lam))
    return assert_polynomial(RationalFunction.from_poly(gl_order(n)) / denom, ("q",))


# -- type-level versions ------------------------------------------------------


def _q_power_subst(poly, d):
    """Substitute q -> q^d in a univariate polynomial in q."""
    return poly.map_exponents(d) if d != 1 else poly


def hook_polynomial_type(omega):
    """H_omega(q) = prod H_{omega^i}(q^{d_i})."""
    out = SparsePoly.constant(1, ("q",))
    for d, lam in omega.entries:
        out = out * _q_power_subst(hook_polynomial(lam), d)
    return out


def centralizer_order_type(omega):
    """a_omega(q) = prod a_{omega^i}(q^{d_i})."""
    out = SparsePoly.constant(1, ("q",))
    for d, lam in omega.entries:
        out = out * _q_power_subst(centralizer_order(lam), d)
    return out


def modified_kostka_q_type(omega, tau_entries):
    """Ktilde_{omega,tau}(q) for blockwise-aligned entries (same degrees)."""
    out = SparsePoly.constant(1, ("q",))
    for (d, lam), (d2, mu) in zip(omega.entries, tau_entries):
        if d != d2:
            raise ValueError("degree profiles must match")
        out = out * _q_power_subst(modified_kostka_q(lam, mu), d)
    return out


# ---------------------------------------------------------------------------
# the genus hook kernel
# ---------------------------------------------------------------------------


def genus_hook(lam, g, z=None, w=None):
    """Cell product (z^{2a+1}-w^{2l+1})^{2g} / ((z^{2a+2}-w^{2l})(z^{2a}-w^{2l+2})).

    z and w may be RationalFunctions to evaluate a specialization exactly;
    they default to the variables z and w.  The empty partition is refused:
    the kernel's constant term is handled by the series builder.
    """
    lam = as_partition(lam)
    if not lam:
        raise ValueError("genus_hook needs a nonempty partition")
    zv = RationalFunction.variable("z") if z is None else RationalFunction.coerce(z)
    wv = RationalFunction.variable("w") if w is None else RationalFunction.coerce(w)
    d = dual(lam)
    out = RationalFunction.one()
    for cell in cells(lam):
        a = arm(lam, cell)
        l = leg(lam, cell, d)
        if g:
            out = out * (zv ** (2 * a + 1) - wv ** (2 * l + 1)) ** (2 * g)
        out = out / ((zv ** (2 * a + 2) - wv ** (2 * l)) * (zv ** (2 * a) - wv ** (2 * l + 2)))
    return out


def genus_hook_sqrt_q(lam, g):
    """The kernel at (z, w) = (sqrt q, 1/sqrt q), exact in q.

    All half-integer powers cancel: each squared numerator factor is
    q^{2a+1} - 2 q^{a-l} + q^{-2l-1}.
    """
    lam = as_partition(lam)
    if not lam:
        raise ValueError("genus_hook_sqrt_q needs a nonempty partition")
    q = RationalFunction.variable("q")
    d = dual(lam)
    out = RationalFunction.one()
    for cell in cells(lam):
        a = arm(lam, cell)
        l = leg(lam, cell, d)
        if g:
            out = out * (q ** (2 * a + 1) - 2 * q ** (a - l) + q ** (-2 * l - 1)) ** g
        out = out / ((q ** (a + 1) - q ** (-l)) * (q ** a - q ** (-l - 1)))
    return out
