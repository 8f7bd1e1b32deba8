"""PE solutions s(x, y) = (xy, theta_x(y)) on a finite semigroup."""
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    NotBijective,
    NotProductShaped,
    OutOfRangeEntry,
    P1Violation,
    P2Violation,
    PentagonError,
    TheoremViolation,
)
from .semigroup import (
    CayleyTable,
    frozen_array,
    permutations,
    relabel_layer,
    validate_table,
)

QYBE_CONVENTIONS = ("qybe-a", "qybe-b")


class PESolution:
    """A Cayley table together with a theta family, ``theta[x, y] = theta_x(y)``.

    Instances are only created by :func:`verify_solution` and the
    constructors built on it, so (P1) and (P2) hold.
    """

    __slots__ = ("semigroup", "theta")

    def __init__(self, semigroup, theta):
        self.semigroup = semigroup
        self.theta = frozen_array(theta, ndim=2)

    @property
    def order(self):
        return self.semigroup.order

    @property
    def table(self):
        return self.semigroup.table

    def __call__(self, x, y):
        return int(self.table[x, y]), int(self.theta[x, y])

    def as_map(self):
        return self.table, self.theta

    def key(self):
        return self.table.tobytes() + self.theta.tobytes()

    def __eq__(self, other):
        return (
            isinstance(other, PESolution)
            and np.array_equal(self.table, other.table)
            and np.array_equal(self.theta, other.theta)
        )

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"PESolution(table={self.table.tolist()}, theta={self.theta.tolist()})"


def _check_theta_shape(S, theta):
    theta = np.asarray(theta)
    n = S.order
    if theta.shape != (n, n):
        raise OutOfRangeEntry(f"theta must be {n}x{n}, got shape {theta.shape}")
    if np.any((theta < 0) | (theta >= n)):
        x, y = np.argwhere((theta < 0) | (theta >= n))[0]
        raise OutOfRangeEntry(f"theta[{x}][{y}] = {theta[x, y]} outside 0..{n - 1}")
    return theta.astype(np.int64)


def axiom_violations(S, theta):
    """First witness of each failed axiom: {'P1': (x, y, z), 'P2': (x, y, w)}."""
    t = S.table
    th = _check_theta_shape(S, theta)
    n = S.order
    x, y, z = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    t1 = th[x, y]
    t2 = th[t[x, y], z]
    p1 = t[t1, t2] != th[x, t[y, z]]
    p2 = th[t1, t2] != th[y, z]
    out = {}
    for name, bad in (("P1", p1), ("P2", p2)):
        hits = np.argwhere(bad)
        if len(hits):
            out[name] = tuple(int(v) for v in hits[0])
    return out


def verify_solution(S, theta):
    """Return the verified :class:`PESolution`, or raise on the first failed axiom.

    The raised exception is P1Violation when (P1) fails and P2Violation
    otherwise; ``.violations`` lists every failed axiom.
    """
    violations = axiom_violations(S, theta)
    if "P1" in violations:
        raise P1Violation(violations["P1"], violations)
    if "P2" in violations:
        raise P2Violation(violations["P2"], violations)
    return PESolution(S, theta)


def from_map(first, second):
    """Package a map X^2 -> X^2 given by its two coordinate tables."""
    first = np.asarray(first, dtype=np.int64)
    S = validate_table(first.shape[0], first)
    return verify_solution(S, second)


# ----------------------------------------------------------- leg compositions

def _triples(n):
    return np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")


def apply_legs(first, second, legs):
    """Apply s_ij legs in order (first listed acts first) to every triple of X^3."""
    first = np.asarray(first)
    second = np.asarray(second)
    a, b, c = _triples(first.shape[0])
    for leg in legs:
        if leg == "12":
            a, b = first[a, b], second[a, b]
        elif leg == "23":
            b, c = first[b, c], second[b, c]
        elif leg == "13":
            a, c = first[a, c], second[a, c]
        else:
            raise ValueError(f"unknown leg {leg!r}")
    return a, b, c


def legs_agree(first, second, left, right):
    la = apply_legs(first, second, left)
    ra = apply_legs(first, second, right)
    return all(np.array_equal(p, q) for p, q in zip(la, ra))


def _as_coordinate_tables(s):
    if isinstance(s, PESolution):
        return s.table, s.theta
    if isinstance(s, tuple) and len(s) == 2:
        return np.asarray(s[0]), np.asarray(s[1])
    arr = np.asarray(s)
    if arr.ndim == 3 and arr.shape[2] == 2:
        return arr[:, :, 0], arr[:, :, 1]
    raise PentagonError("a map on X^2 is a pair of n x n tables or an (n, n, 2) array")


def pentagon_direct_check(s):
    """Evaluate s23 s13 s12 == s12 s23 on all of X^3 for an arbitrary map."""
    first, second = _as_coordinate_tables(s)
    return legs_agree(first, second, ["12", "13", "23"], ["23", "12"])


def qybe_check(s, convention="qybe-a"):
    """Set-theoretic Yang-Baxter identity.

    ``qybe-a``: s12 s13 s23 == s23 s13 s12.
    ``qybe-b``: the braid form s12 s23 s12 == s23 s12 s23.
    """
    first, second = _as_coordinate_tables(s)
    if convention == "qybe-a":
        return legs_agree(first, second, ["23", "13", "12"], ["12", "13", "23"])
    if convention == "qybe-b":
        return legs_agree(first, second, ["12", "23", "12"], ["23", "12", "23"])
    raise ValueError(f"unknown convention {convention!r}")


# ------------------------------------------------------------------- properties

@dataclass(frozen=True)
class PropertyReport:
    involutive: bool
    idempotent: bool
    bijective: bool
    non_degenerate: bool
    commutative: bool
    cocommutative: bool
    qybe: bool

    def as_dict(self):
        return dict(self.__dict__)


def square(s):
    """s o s as coordinate tables."""
    t, th = s.table, s.theta
    return t[t, th], th[t, th]


def is_bijective(s):
    codes = s.table * s.order + s.theta
    return len(np.unique(codes)) == s.order ** 2


def classify_properties(s, convention="qybe-a"):
    t, th = s.table, s.theta
    n = s.order
    rng = np.arange(n)
    f2, g2 = square(s)
    x = rng[:, None]
    y = rng[None, :]
    involutive = bool(np.all(f2 == x) and np.all(g2 == y))
    idempotent = bool(np.array_equal(f2, t) and np.array_equal(g2, th))
    # xy theta_x(y) = x and theta_{xy} theta_x(y) = y
    inv_ids = bool(np.all(t[t, th] == x) and np.all(th[t, th] == y))
    # xy theta_x(y) = xy and theta_{xy} theta_x(y) = theta_x(y)
    idem_ids = bool(np.array_equal(t[t, th], t) and np.array_equal(th[t, th], th))
    if inv_ids != involutive or idem_ids != idempotent:
        raise TheoremViolation("definitional and identity-based checks disagree")
    return PropertyReport(
        involutive=involutive,
        idempotent=idempotent,
        bijective=is_bijective(s),
        non_degenerate=all(len(set(row)) == n for row in th.tolist()),
        commutative=legs_agree(t, th, ["13", "12"], ["12", "13"]),
        cocommutative=legs_agree(t, th, ["23", "13"], ["13", "23"]),
        qybe=qybe_check(s, convention),
    )


# ------------------------------------------------------------------- opposite

def opposite(s):
    """s^op = tau s^{-1} tau, re-verified as a PE solution."""
    n = s.order
    if not is_bijective(s):
        raise NotBijective("s is not a bijection of X x X")
    inv_first = np.empty((n, n), dtype=np.int64)
    inv_second = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        for y in range(n):
            a, b = s.table[x, y], s.theta[x, y]
            inv_first[a, b] = x
            inv_second[a, b] = y
    # tau s^{-1} tau (x, y) = swap(s^{-1}(y, x))
    first = inv_second.T
    second = inv_first.T
    if kernels.first_nonassociative(first)[0] >= 0:
        raise NotProductShaped("first coordinate of s^op is not associative")
    try:
        return verify_solution(CayleyTable(first), second)
    except PentagonError as exc:
        raise TheoremViolation(f"opposite solution failed verification: {exc}") from exc


# ----------------------------------------------------------------- isomorphism

def relabel_solution(s, perm):
    return PESolution(
        CayleyTable(relabel_layer(s.table, perm)), relabel_layer(s.theta, perm)
    )


def solution_canonical_form(s):
    """Least (table, theta) over all relabelings, with the permutation reaching it."""
    n = s.order
    perms, invs = permutations(n)
    layers = np.stack([s.table, s.theta])
    best, k, _ = kernels.canonical_layers(layers, perms, invs)
    best = best.reshape(2, n, n)
    return PESolution(CayleyTable(best[0]), best[1]), perms[k].copy()


def canonical_key(s):
    n = s.order
    perms, invs = permutations(n)
    best, _, _ = kernels.canonical_layers(np.stack([s.table, s.theta]), perms, invs)
    return best.astype(np.int8).tobytes()


def automorphism_count(s):
    n = s.order
    perms, invs = permutations(n)
    _, _, stab = kernels.canonical_layers(np.stack([s.table, s.theta]), perms, invs)
    return stab


def is_solution_isomorphism(s, t, psi):
    psi = np.asarray(psi)
    return bool(
        np.array_equal(psi[s.table], t.table[np.ix_(psi, psi)])
        and np.array_equal(psi[s.theta], t.theta[np.ix_(psi, psi)])
    )


def solutions_isomorphic(s, t):
    """psi with (psi x psi) s = t (psi x psi), or None."""
    if s.order != t.order:
        return None
    cs, p = solution_canonical_form(s)
    ct, q = solution_canonical_form(t)
    if cs != ct:
        return None
    psi = np.argsort(q)[p]
    if not is_solution_isomorphism(s, t, psi):
        raise TheoremViolation("canonical forms agree but the composed relabeling fails")
    return psi
