"""Comet-shaped quivers from multi-types, Kac root classification,
dimension formulas, and the genericity test for eigenvalue data.

The quiver has one central node carrying g loops and one type-A leg per
puncture; the leg and its dimension vector are read off the column
lengths of the Young diagrams of the class type.  Non-emptiness of the
associated character variety is governed by whether the dimension vector
is a root, which the classifier decides by Kac's reflection algorithm.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .partitions import MultiType, TypeT, dual


@dataclass(frozen=True)
class CometQuiver:
    """Star-shaped quiver: g loops at the center, legs of the given lengths."""

    g: int
    leg_lengths: tuple

    def nodes(self):
        out = [("c",)]
        for i, s in enumerate(self.leg_lengths):
            out.extend(("l", i, j) for j in range(1, s + 1))
        return out

    def neighbors(self, node):
        out = []
        if node == ("c",):
            for i, s in enumerate(self.leg_lengths):
                if s >= 1:
                    out.append(("l", i, 1))
        else:
            _, i, j = node
            out.append(("c",) if j == 1 else ("l", i, j - 1))
            if j + 1 <= self.leg_lengths[i]:
                out.append(("l", i, j + 1))
        return out

    def loops_at(self, node):
        return self.g if node == ("c",) else 0


@dataclass(frozen=True)
class DimVector:
    """Non-negative integers per node: center value plus per-leg tuples."""

    center: int
    legs: tuple

    def value(self, node):
        if node == ("c",):
            return self.center
        _, i, j = node
        return self.legs[i][j - 1]

    def as_dict(self, quiver):
        return {node: self.value(node) for node in quiver.nodes()}


def _columns_in_canonical_order(omega):
    """Column lengths of the Young diagrams, diagrams in canonical type order."""
    cols = []
    for _, lam in omega.entries:
        cols.extend(dual(lam))
    return cols


def leg_dimension_values(omega):
    """v_1 = n - n_1, v_i = v_{i-1} - n_i, truncated at the first zero."""
    if not omega.is_degree_one:
        omega = omega.geometric()
    n = omega.size
    values = []
    running = n
    for c in _columns_in_canonical_order(omega):
        running -= c
        if running <= 0:
            break
        values.append(running)
    return tuple(values)


def build_quiver(multitype, g):
    """CometQuiver and DimVector of a multi-type (degrees collapsed via m)."""
    if isinstance(multitype, TypeT):
        multitype = MultiType((multitype,))
    legs = tuple(leg_dimension_values(t) for t in multitype.types)
    quiver = CometQuiver(g, tuple(len(leg) for leg in legs))
    vec = DimVector(multitype.n, legs)
    return quiver, vec


# ---------------------------------------------------------------------------
# Kac's root classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootClassification:
    kind: str  # "not_root" | "real" | "imaginary"
    fundamental: bool | None = None  # for imaginary: already in fundamental region
    reflections: int = 0

    @property
    def is_root(self):
        return self.kind in ("real", "imaginary")


def _pairing(quiver, values, node):
    """(v, e_node) for the symmetric Cartan form; 2 - 2*loops on the diagonal."""
    total = (2 - 2 * quiver.loops_at(node)) * values[node]
    for nb in quiver.neighbors(node):
        total -= values[nb]
    return total


def _support_connected(quiver, values):
    support = [node for node, v in values.items() if v > 0]
    if not support:
        return False
    seen = {support[0]}
    stack = [support[0]]
    while stack:
        node = stack.pop()
        for nb in quiver.neighbors(node):
            if values.get(nb, 0) > 0 and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(support)


def root_test(quiver, dimvec):
    """Classify the vector: not a root, real, or imaginary (Kac algorithm).

    Reflections act only at loop-free nodes.  The vector is real when the
    reflection orbit reaches a loop-free simple root; imaginary when it
    reaches the fundamental region (connected support, all loop-free
    pairings <= 0); otherwise it is not a root.
    """
    values = dimvec.as_dict(quiver)
    if any(v < 0 for v in values.values()) or not any(values.values()):
        return RootClassification("not_root")
    loop_free = [node for node in quiver.nodes() if quiver.loops_at(node) == 0]
    reflections = 0
    while True:
        positive = [node for node, v in values.items() if v > 0]
        if len(positive) == 1 and values[positive[0]] == 1:
            if quiver.loops_at(positive[0]) == 0:
                return RootClassification("real", reflections=reflections)
            return RootClassification("imaginary", fundamental=reflections == 0,
                                      reflections=reflections)
        candidate = None
        for node in loop_free:
            if values[node] > 0 and _pairing(quiver, values, node) > 0:
                candidate = node
                break
        if candidate is None:
            if _support_connected(quiver, values):
                return RootClassification("imaginary", fundamental=reflections == 0,
                                          reflections=reflections)
            return RootClassification("not_root", reflections=reflections)
        p = _pairing(quiver, values, candidate)
        values[candidate] -= p
        if values[candidate] < 0:
            return RootClassification("not_root", reflections=reflections + 1)
        reflections += 1


# ---------------------------------------------------------------------------
# dimensions
# ---------------------------------------------------------------------------


def class_dimension(omega):
    """Dimension of a conjugacy class of the given type over the closure:
    n^2 minus the sum of squared dual parts across all eigenvalue blocks."""
    geo = omega.geometric() if not omega.is_degree_one else omega
    n = geo.size
    centralizer_dim = sum(sum(c * c for c in dual(lam)) for _, lam in geo.entries)
    return n * n - centralizer_dim


def dimension_dC(multitype, g):
    """d_C = 2g n^2 - 2 n^2 + 2 + sum of class dimensions."""
    if isinstance(multitype, TypeT):
        multitype = MultiType((multitype,))
    n = multitype.n
    total_class_dim = sum(class_dimension(t) for t in multitype.types)
    return (2 * g - 2) * n * n + 2 + total_class_dim


def dimension_dC_unipotent_formula(mu_vec, g, k):
    """d for a tuple of unipotent-type partitions: (2g+k-2)n^2 + 2 - sum n_ij^2."""
    n = sum(mu_vec[0])
    if any(sum(mu) != n for mu in mu_vec):
        raise ValueError("partitions must have equal size")
    if len(mu_vec) != k:
        raise ValueError("need one partition per puncture")
    squares = sum(sum(c * c for c in dual(mu)) for mu in mu_vec)
    return (2 * g + k - 2) * n * n + 2 - squares


# ---------------------------------------------------------------------------
# genericity
# ---------------------------------------------------------------------------


class EigenvalueModelError(ValueError):
    """Eigenvalue data inconsistent with the declared type."""


def _reduce(vec, orders):
    return tuple(x % o if o else x for x, o in zip(vec, orders))


def _subset_sums(eigs, r, orders):
    """All achievable sums of size-r sub-multisets of [(vector, multiplicity)]."""
    states = {(_reduce((0,) * len(orders), orders), ): None}
    # dp over eigenvalues: states keyed by (current sum, chosen count)
    dp = {(_reduce((0,) * len(orders), orders), 0)}
    for vec, mult in eigs:
        vec = _reduce(vec, orders)
        new = set(dp)
        for total, count in dp:
            acc = total
            for j in range(1, mult + 1):
                if count + j > r:
                    break
                acc = _reduce(tuple(a + b for a, b in zip(acc, vec)), orders)
                new.add((acc, count + j))
        dp = new
    del states
    return {total for total, count in dp if count == r}


def genericity_check(classes, orders):
    """Generic tuple test in an abstract abelian group.

    `classes` is a list (one per puncture) of [(exponent vector, multiplicity)]
    eigenvalue data; `orders` gives each generator's order (0 = infinite).
    Generic means the total determinant vanishes (sum of all weighted vectors
    is zero) and no size-r selection, 0 < r < n, multiplies to the identity.
    """
    if not classes:
        raise EigenvalueModelError("no classes given")
    sizes = {sum(m for _, m in eigs) for eigs in classes}
    if len(sizes) != 1:
        raise EigenvalueModelError(f"classes have different sizes {sorted(sizes)}")
    n = sizes.pop()
    width = len(orders)
    for eigs in classes:
        for vec, mult in eigs:
            if len(vec) != width:
                raise EigenvalueModelError("exponent vector width mismatch")
            if mult <= 0:
                raise EigenvalueModelError("multiplicities must be positive")
    zero = _reduce((0,) * width, orders)
    det = zero
    for eigs in classes:
        for vec, mult in eigs:
            det = _reduce(tuple(a + b * mult for a, b in zip(det, vec)), orders)
    if det != zero:
        return False
    for r in range(1, n):
        per_class = [_subset_sums(eigs, r, orders) for eigs in classes]
        # meet in the middle: combine the first half and the second half
        half = len(per_class) // 2
        left = {zero}
        for sums in per_class[:half] or [ {zero} ]:
            left = {_reduce(tuple(a + b for a, b in zip(x, y)), orders)
                    for x in left for y in sums}
        right = {zero}
        for sums in per_class[half:] or [ {zero} ]:
            right = {_reduce(tuple(a + b for a, b in zip(x, y)), orders)
                     for x in right for y in sums}
        negatives = {_reduce(tuple(-a for a in x), orders) for x in left}
        if negatives & right:
            return False
    return True


def eigenvalue_data_from_type(omega, assignments, orders):
    """Abstract eigenvalue data for a type given one generator vector per entry.

    Degree-d entries contribute d Frobenius-translate vectors; in the
    abstract model the caller supplies the d translates explicitly.
    """
    eigs = []
    idx = 0
    for d, lam in omega.entries:
        for _ in range(d):
            if idx >= len(assignments):
                raise EigenvalueModelError("not enough eigenvalue vectors")
            eigs.append((_reduce(assignments[idx], orders), sum(lam)))
            idx += 1
    if idx != len(assignments):
        raise EigenvalueModelError("too many eigenvalue vectors")
    return eigs
