"""Partitions, GL_n conjugacy-class types, multi-types and their statistics.

Partitions are plain tuples of weakly decreasing positive integers.  A
type is a multiset of (degree, partition) pairs canonically sorted; the
degree-1-only types parametrize classes over the algebraic closure,
general types the classes over F_q.  Multi-types are tuples of types of
equal size, one per puncture.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, cache
from itertools import permutations

# Guard against runaway inputs; everything in the battery is far smaller.
MAX_PARTITION_SIZE = 64


class ParseError(ValueError):
    """Grammar error with the offending position for caret diagnostics."""

    def __init__(self, message, text, pos):
        super().__init__(f"{message} at position {pos}")
        self.text = text
        self.pos = pos

    def caret_diagnostic(self):
        return f"{self.text}\n{' ' * self.pos}^ {self.args[0]}"


# ---------------------------------------------------------------------------
# partitions
# ---------------------------------------------------------------------------


def as_partition(parts):
    parts = tuple(int(p) for p in parts)
    if any(p <= 0 for p in parts):
        raise ValueError(f"partition parts must be positive: {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"partition parts must weakly decrease: {parts}")
    if sum(parts) > MAX_PARTITION_SIZE:
        raise ValueError(f"partition size {sum(parts)} exceeds bound {MAX_PARTITION_SIZE}")
    return parts


@cache
def partitions(n):
    """All partitions of n, lexicographically descending ((n) first)."""
    if n < 0:
        return ()
    if n == 0:
        return ((),)
    out = []

    def rec(remaining, maxpart, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for p in range(min(remaining, maxpart), 0, -1):
            prefix.append(p)
            rec(remaining - p, p, prefix)
            prefix.pop()

    rec(n, n, [])
    return tuple(out)


def dual(lam):
    """Conjugate partition (column lengths)."""
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p >= j) for j in range(1, lam[0] + 1))


def cells(lam):
    """Cells (i, j), 1-based, row i of length lam[i-1]."""
    return [(i + 1, j + 1) for i, p in enumerate(lam) for j in range(p)]


def arm(lam, cell):
    i, j = cell
    return lam[i - 1] - j


def leg(lam, cell, lam_dual=None):
    i, j = cell
    d = lam_dual if lam_dual is not None else dual(lam)
    return d[j - 1] - i


def hook(lam, cell, lam_dual=None):
    return arm(lam, cell) + leg(lam, cell, lam_dual) + 1


def n_stat(lam):
    """n(lambda) = sum (i-1) lambda_i."""
    return sum(i * p for i, p in enumerate(lam))


def z_lambda(lam):
    """Centralizer order of a permutation of cycle type lambda."""
    z = 1
    mult = {}
    for p in lam:
        mult[p] = mult.get(p, 0) + 1
    for p, m in mult.items():
        z *= p ** m * math.factorial(m)
    return z


def dominates(lam, mu):
    """lam >= mu in dominance order (equal sizes assumed)."""
    if sum(lam) != sum(mu):
        return False
    total_l = total_m = 0
    for i in range(max(len(lam), len(mu))):
        total_l += lam[i] if i < len(lam) else 0
        total_m += mu[i] if i < len(mu) else 0
        if total_l < total_m:
            return False
    return True


def cell_stats(lam):
    """Per-cell arm/leg/hook plus n(lam) and the dual, in one report."""
    lam = as_partition(lam)
    d = dual(lam)
    per_cell = {
        cell: {"arm": arm(lam, cell), "leg": leg(lam, cell, d),
               "hook": hook(lam, cell, d)}
        for cell in cells(lam)
    }
    return {"cells": per_cell, "n": n_stat(lam), "dual": d}


# ---------------------------------------------------------------------------
# symmetric group characters and Kostka numbers
# ---------------------------------------------------------------------------


def _beta_set(lam, length):
    return tuple(lam[j] + (length - 1 - j) if j < len(lam) else (length - 1 - j)
                 for j in range(length))


def _partition_from_beta(beta):
    beta = sorted(beta, reverse=True)
    out = []
    for j, b in enumerate(beta):
        part = b - (len(beta) - 1 - j)
        if part > 0:
            out.append(part)
    return tuple(out)


@lru_cache(maxsize=None)
def sn_character(lam, rho):
    """Irreducible symmetric group character chi^lam at cycle type rho."""
    if sum(lam) != sum(rho):
        raise ValueError("character requires |lam| = |rho|")
    if not lam:
        return 1
    r = rho[0]
    rest = rho[1:]
    length = len(lam)
    beta = _beta_set(lam, length)
    beta_set = set(beta)
    total = 0
    for b in beta:
        if b >= r and (b - r) not in beta_set:
            # removing an r-rim-hook: sign from crossings in the beta-set
            crossings = sum(1 for c in beta if b - r < c < b)
            new_beta = tuple((b - r) if c == b else c for c in beta)
            new_lam = _partition_from_beta(new_beta)
            total += (-1) ** crossings * sn_character(new_lam, rest)
    return total


@lru_cache(maxsize=None)
def kostka_number(lam, mu):
    """Number of semistandard tableaux of shape lam and content mu."""
    if sum(lam) != sum(mu):
        return 0
    if not mu:
        return 1 if not lam else 0
    last = mu[-1]
    head = mu[:-1]
    total = 0
    for nu in _horizontal_strip_removals(lam, last):
        total += kostka_number(nu, head)
    return total


def _horizontal_strip_removals(lam, size):
    """Partitions nu with lam/nu a horizontal strip of the given size."""
    out = []

    def rec(i, remaining, prefix):
        if i == len(lam):
            if remaining == 0:
                out.append(as_partition([p for p in prefix if p > 0]))
            return
        lower = lam[i + 1] if i + 1 < len(lam) else 0
        upper = lam[i]
        cap = prefix[-1] if prefix else lam[0]
        for v in range(min(upper, cap), max(lower, upper - remaining) - 1, -1):
            if upper - v <= remaining:
                rec(i + 1, remaining - (upper - v), prefix + [v])

    rec(0, size, [])
    return out


# ---------------------------------------------------------------------------
# types
# ---------------------------------------------------------------------------


def _entry_sort_key(entry):
    d, lam = entry
    # paper's total order: compare partitions first (fixed total order),
    # then degrees; any fixed choice works since types are multisets
    return (lam, d)


@dataclass(frozen=True)
class TypeT:
    """A type: canonically sorted multiset of (degree, partition) pairs."""

    entries: tuple

    def __init__(self, entries):
        clean = []
        for d, lam in entries:
            d = int(d)
            lam = as_partition(lam)
            if d <= 0:
                raise ValueError(f"type degree must be positive: {d}")
            if not lam:
                raise ValueError("type entries need nonempty partitions")
            clean.append((d, lam))
        clean.sort(key=_entry_sort_key, reverse=True)
        object.__setattr__(self, "entries", tuple(clean))

    @classmethod
    def from_partition(cls, lam):
        return cls(((1, tuple(lam)),))

    @classmethod
    def iota(cls, lams):
        """Section of m: a sequence of partitions, all with degree 1."""
        return cls(tuple((1, tuple(lam)) for lam in lams))

    @property
    def size(self):
        return sum(d * sum(lam) for d, lam in self.entries)

    @property
    def degrees(self):
        return tuple(d for d, _ in self.entries)

    @property
    def f(self):
        """f(omega) = sum of |omega^i| (no degree factors)."""
        return sum(sum(lam) for _, lam in self.entries)

    @property
    def n(self):
        """n(omega) = sum d_i n(omega^i)."""
        return sum(d * n_stat(lam) for d, lam in self.entries)

    @property
    def is_degree_one(self):
        return all(d == 1 for d, _ in self.entries)

    def geometric(self):
        """The map m: repeat each partition d times with degree 1."""
        out = []
        for d, lam in self.entries:
            out.extend([lam] * d)
        return TypeT.iota(out)

    def dual(self):
        return TypeT(tuple((d, dual(lam)) for d, lam in self.entries))

    def partitions_only(self):
        """The partition sequence, degree-1 types only."""
        if not self.is_degree_one:
            raise ValueError(f"{self} has degrees > 1")
        return tuple(lam for _, lam in self.entries)

    def __str__(self):
        return "".join(
            (f"[{','.join(map(str, lam))}]" if d == 1
             else f"({d},[{','.join(map(str, lam))}])")
            for d, lam in self.entries) or "[]"

    def __len__(self):
        return len(self.entries)


def type_m(omega):
    return omega.geometric()


def type_iota(lams):
    return TypeT.iota(lams)


def closure_le(tau, omega):
    """tau lies in the closure of omega.

    Entries are matched blockwise (one eigenvalue block each): some pairing
    of the entries must preserve degrees and degenerate each partition in
    dominance order.  Blocks of equal (degree, size) are interchangeable,
    so a small matching search is needed.
    """
    if len(tau.entries) != len(omega.entries):
        return False
    by_degree_t = {}
    by_degree_o = {}
    for d, lam in tau.entries:
        by_degree_t.setdefault((d, sum(lam)), []).append(lam)
    for d, lam in omega.entries:
        by_degree_o.setdefault((d, sum(lam)), []).append(lam)
    if set(by_degree_t) != set(by_degree_o):
        return False
    for key, ts in by_degree_t.items():
        os_ = by_degree_o[key]
        if len(ts) != len(os_):
            return False
        if not any(all(dominates(os_[i], ts[perm[i]]) for i in range(len(ts)))
                   for perm in permutations(range(len(ts)))):
            return False
    return True


def closure_choices(omega):
    """Blockwise degeneration choices: tuples aligned with omega.entries.

    The master sums run over tuples of classes in the closure, i.e. over an
    independent dominance-lower partition per eigenvalue block; types with
    repeated entries are hit once per assignment, which is the correct
    multiplicity.
    """
    per_entry = []
    for d, lam in omega.entries:
        per_entry.append([(d, mu) for mu in partitions(sum(lam)) if dominates(lam, mu)])
    out = []

    def rec(i, acc):
        if i == len(per_entry):
            out.append(tuple(acc))
            return
        for entry in per_entry[i]:
            rec(i + 1, acc + [entry])

    rec(0, [])
    return out


def closure_down_set(omega):
    """All distinct types tau with tau trianglelefteq omega."""
    seen = []
    for choice in closure_choices(omega):
        t = TypeT(choice)
        if t not in seen:
            seen.append(t)
    return seen


@cache
def types_of_size(n):
    """All types of size n (the finite set indexing the master sums)."""
    atoms = []
    for d in range(1, n + 1):
        for m in range(1, n // d + 1):
            for lam in partitions(m):
                atoms.append((d, lam))
    atoms.sort(key=_entry_sort_key, reverse=True)
    out = []

    def rec(start, remaining, acc):
        if remaining == 0:
            out.append(TypeT(tuple(acc)))
            return
        for i in range(start, len(atoms)):
            d, lam = atoms[i]
            w = d * sum(lam)
            if w <= remaining:
                rec(i, remaining - w, acc + [(d, lam)])

    rec(0, n, [])
    return tuple(out)


@cache
def geometric_types_of_size(n):
    return tuple(t for t in types_of_size(n) if t.is_degree_one)


# ---------------------------------------------------------------------------
# combinatorial constants
# ---------------------------------------------------------------------------


def moebius(n):
    if n < 1:
        raise ValueError("moebius needs a positive integer")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def kconst(omega):
    """K^o: (-1)^{r-1} d^{r-1} mu(d) (r-1)! when all degrees equal d, else 0."""
    degrees = omega.degrees
    r = len(degrees)
    if r == 0:
        return 1
    d = degrees[0]
    if any(e != d for e in degrees):
        return 0
    return (-1) ** (r - 1) * d ** (r - 1) * moebius(d) * math.factorial(r - 1)


def weyl_group_order(omega):
    """|W(omega)| = prod over distinct entries of m! * d^m.

    The factor d^m (per entry a cyclic group generated by the Frobenius
    twist of the GL_{n_i}(F_{q^d}) factor) is what makes C^o match the
    coefficients of the plethystic Log identity; multiplicity factorials
    alone fail already for the single entry (2,(1)).
    """
    mult = {}
    for d, lam in omega.entries:
        mult[(d, lam)] = mult.get((d, lam), 0) + 1
    order = 1
    for (d, _), m in mult.items():
        order *= math.factorial(m) * d ** m
    return order


def cconst(omega):
    """C^o = K^o / |W(omega)|."""
    return Fraction(kconst(omega), weyl_group_order(omega))


def combinatorial_constants(omega):
    return {"K": kconst(omega), "W": weyl_group_order(omega), "C": cconst(omega)}


# ---------------------------------------------------------------------------
# multi-types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MultiType:
    """k-tuple of types of equal size."""

    types: tuple

    def __init__(self, types):
        types = tuple(types)
        if not types:
            raise ValueError("multi-type needs at least one component")
        sizes = {t.size for t in types}
        if len(sizes) != 1:
            raise ValueError(f"components must share one size, got {sorted(sizes)}")
        object.__setattr__(self, "types", types)

    @property
    def k(self):
        return len(self.types)

    @property
    def n(self):
        return self.types[0].size

    @property
    def is_degree_one(self):
        return all(t.is_degree_one for t in self.types)

    def dual(self):
        return MultiType(tuple(t.dual() for t in self.types))

    def r_sign_exponent(self):
        """r(omega) = k|omega| + sum |omega^i_j| over all entries."""
        return self.k * self.n + sum(t.f for t in self.types)

    def __str__(self):
        return ";".join(str(t) for t in self.types)


# ---------------------------------------------------------------------------
# text grammar
# ---------------------------------------------------------------------------


def _skip_ws(text, pos):
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _parse_int(text, pos):
    start = pos
    while pos < len(text) and text[pos].isdigit():
        pos += 1
    if pos == start:
        raise ParseError("expected an integer", text, start)
    return int(text[start:pos]), pos


def _parse_bracket_partition(text, pos):
    if pos >= len(text) or text[pos] != "[":
        raise ParseError("expected '['", text, pos)
    pos += 1
    parts = []
    pos = _skip_ws(text, pos)
    if pos < len(text) and text[pos] == "]":
        return (), pos + 1
    while True:
        pos = _skip_ws(text, pos)
        value, pos = _parse_int(text, pos)
        parts.append(value)
        pos = _skip_ws(text, pos)
        if pos < len(text) and text[pos] == ",":
            pos += 1
            continue
        if pos < len(text) and text[pos] == "]":
            try:
                return as_partition(parts), pos + 1
            except ValueError as exc:
                raise ParseError(str(exc), text, pos) from exc
        raise ParseError("expected ',' or ']'", text, pos)


def _parse_entry(text, pos):
    pos = _skip_ws(text, pos)
    if pos < len(text) and text[pos] == "(":
        pos += 1
        pos = _skip_ws(text, pos)
        d, pos = _parse_int(text, pos)
        pos = _skip_ws(text, pos)
        if pos >= len(text) or text[pos] != ",":
            raise ParseError("expected ',' inside (d,[parts])", text, pos)
        pos = _skip_ws(text, pos + 1)
        lam, pos = _parse_bracket_partition(text, pos)
        pos = _skip_ws(text, pos)
        if pos >= len(text) or text[pos] != ")":
            raise ParseError("expected ')'", text, pos)
        return (d, lam), pos + 1
    lam, pos = _parse_bracket_partition(text, pos)
    return (1, lam), pos


def parse_type(text, pos=0, full=True):
    entries = []
    pos = _skip_ws(text, pos)
    while pos < len(text) and text[pos] in "([":
        entry, pos = _parse_entry(text, pos)
        if not entry[1]:
            raise ParseError("empty partition in type entry", text, pos)
        entries.append(entry)
        pos = _skip_ws(text, pos)
    if not entries:
        raise ParseError("expected a type entry '[...]' or '(d,[...])'", text, pos)
    omega = TypeT(tuple(entries))
    if full:
        if pos != len(text):
            raise ParseError("unexpected trailing input", text, pos)
        return omega
    return omega, pos


def parse_partition(text):
    lam, pos = _parse_bracket_partition(text, _skip_ws(text, 0))
    pos = _skip_ws(text, pos)
    if pos != len(text):
        raise ParseError("unexpected trailing input", text, pos)
    return lam


def parse_multitype(text):
    types = []
    pos = 0
    while True:
        omega, pos = parse_type(text, pos, full=False)
        types.append(omega)
        pos = _skip_ws(text, pos)
        if pos < len(text) and text[pos] == ";":
            pos += 1
            continue
        break
    if pos != len(text):
        raise ParseError("unexpected trailing input", text, pos)
    try:
        return MultiType(tuple(types))
    except ValueError as exc:
        raise ParseError(str(exc), text, pos) from exc
