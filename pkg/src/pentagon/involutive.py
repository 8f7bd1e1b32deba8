"""Involutive solutions: retracts, t_A, extensions and the product decomposition."""
from dataclasses import dataclass
from math import comb

import numpy as np

from .constructions import kac_takesaki, product_solution
from .errors import (
    BadSigma,
    DecompositionFailed,
    NotElementaryAbelian2Group,
    NotInvolutive,
    NotWellDefined,
    PentagonError,
    TheoremViolation,
)
from .named import elementary_abelian
from .semigroup import CayleyTable, Congruence, analyze, is_congruence, quotient
from .solution import (
    classify_properties,
    is_solution_isomorphism,
    solution_canonical_form,
    verify_solution,
)


def _require_involutive(s):
    if not classify_properties(s).involutive:
        raise NotInvolutive("s o s != id")


def is_irretractable(s):
    return len({row.tobytes() for row in s.theta}) == s.order


def retract_relation(s):
    """x ~ y iff theta_x == theta_y, classes numbered by first occurrence."""
    rows = {}
    labels = [rows.setdefault(row.tobytes(), len(rows)) for row in s.theta]
    return Congruence.from_labels(labels)


def retract(s):
    """Ret(s): the induced solution on X / ~, checked to be irretractable."""
    _require_involutive(s)
    rho = retract_relation(s)
    if not is_congruence(s.semigroup, rho.classes):
        raise NotWellDefined("theta-equality is not a congruence")
    Q = quotient(s.semigroup, rho)
    if not analyze(Q).is_left_zero:
        raise NotWellDefined("X / ~ is not a left zero semigroup")
    k = Q.order
    cls = np.array(rho.classes)
    theta = np.full((k, k), -1, dtype=np.int64)
    for x in range(s.order):
        for y in range(s.order):
            v = cls[s.theta[x, y]]
            cur = theta[cls[x], cls[y]]
            if cur >= 0 and cur != v:
                raise NotWellDefined(f"induced theta is not well defined at ({x}, {y})")
            theta[cls[x], cls[y]] = v
    try:
        r = verify_solution(Q, theta)
    except PentagonError as exc:
        raise NotWellDefined(f"Ret(s) is not a solution: {exc}") from exc
    if not classify_properties(r).involutive:
        raise NotWellDefined("Ret(s) is not involutive")
    if not is_irretractable(r):
        raise NotWellDefined("Ret(s) is not irretractable")
    return r


def _require_elementary_abelian(A):
    facts = analyze(A)
    if not facts.is_group:
        raise NotElementaryAbelian2Group("not a group")
    one = facts.identity
    if any(A.table[x, x] != one for x in range(A.order)):
        raise NotElementaryAbelian2Group("some element has order > 2")
    return facts


def t_A(A):
    """t_A(x, y) = (x, x + y) on an elementary abelian 2-group A."""
    _require_elementary_abelian(A)
    n = A.order
    left_zero = np.repeat(np.arange(n)[:, None], n, axis=1)
    s = verify_solution(CayleyTable(left_zero), A.table)
    if not classify_properties(s).involutive or not is_irretractable(s):
        raise TheoremViolation("t_A should be irretractable and involutive")
    return s


def _perm_inverse(p):
    q = np.empty_like(p)
    q[p] = np.arange(len(p))
    return q


def ext_sigma(A, x_size, sigma):
    """Ext^sigma_X(t_A) on X x A, the pair (x, a) stored as x * |A| + a.

    ((x, a), (y, b)) -> ((x, a), (sigma_{a+b} sigma_b^-1 (y), a + b)),
    ``sigma[a]`` a permutation of range(x_size) for each a in A.
    """
    _require_elementary_abelian(A)
    m = A.order
    sig = np.asarray(sigma, dtype=np.int64)
    if sig.shape != (m, x_size):
        raise BadSigma(f"sigma must list {m} permutations of range({x_size})")
    for a in range(m):
        if sorted(sig[a].tolist()) != list(range(x_size)):
            raise BadSigma(f"sigma[{a}] is not a permutation")
    inv = np.array([_perm_inverse(p) for p in sig])
    N = x_size * m
    xs, As = np.divmod(np.arange(N), m)
    ab = A.table[As[:, None], As[None, :]]
    ys = np.broadcast_to(xs[None, :], (N, N))
    bs = np.broadcast_to(As[None, :], (N, N))
    theta = sig[ab, inv[bs, ys]] * m + ab
    table = np.repeat(np.arange(N)[:, None], N, axis=1)
    s = verify_solution(CayleyTable(table), theta)
    if not classify_properties(s).involutive:
        raise TheoremViolation("Ext^sigma_X(t_A) should be involutive")
    return s


@dataclass(frozen=True)
class InvolutiveDecomposition:
    """s = Ext^sigma_X(t_A) x s_G.

    ``witness[k]`` is the carrier element for index k of X x A x G, where
    (x, a, g) has index (x * |A| + a) * |G| + g.
    """

    x_size: int
    A: CayleyTable
    G: CayleyTable
    sigma: np.ndarray
    witness: np.ndarray

    def sizes(self):
        return self.x_size, self.A.order, self.G.order

    def reassemble(self):
        return product_solution(ext_sigma(self.A, self.x_size, self.sigma), kac_takesaki(self.G))


def _split_left_group(s):
    """s on L x G as (theta on L, group table, coords)."""
    facts = analyze(s.semigroup)
    lg = facts.left_group
    if lg is None:
        raise DecompositionFailed("carrier is not a left group")
    coords = lg.coords
    nl = len(lg.left)
    theta_l = np.full((nl, nl), -1, dtype=np.int64)
    for x in range(s.order):
        for y in range(s.order):
            v = s.theta[x, y]
            if coords[v, 1] != coords[y, 1]:
                raise DecompositionFailed(f"theta does not fix the group part at ({x}, {y})")
            i, j = coords[x, 0], coords[y, 0]
            if theta_l[i, j] >= 0 and theta_l[i, j] != coords[v, 0]:
                raise DecompositionFailed("left part of theta depends on the group part")
            theta_l[i, j] = coords[v, 0]
    return theta_l, lg.group_table(s.semigroup), coords


def decompose_involutive(s):
    _require_involutive(s)
    theta_l, G, coords = _split_left_group(s)
    if not analyze(G).is_group or any(G.table[g, g] != G.table[0, 0] for g in range(G.order)):
        raise DecompositionFailed("group factor is not an elementary abelian 2-group")
    nl = theta_l.shape[0]
    sL = verify_solution(CayleyTable(np.repeat(np.arange(nl)[:, None], nl, axis=1)), theta_l)

    # A is the retract: x + y := theta-bar_x(y)
    R = retract(sL)
    A = CayleyTable(R.theta)
    try:
        _require_elementary_abelian(A)
    except NotElementaryAbelian2Group as exc:
        raise DecompositionFailed(f"retract is not t_A: {exc}") from exc
    tA = t_A(A)
    if solution_canonical_form(tA)[0] != solution_canonical_form(R)[0]:
        raise DecompositionFailed("Ret(s) is not isomorphic to t_A")
    if solution_canonical_form(retract(s))[0] != solution_canonical_form(tA)[0]:
        raise DecompositionFailed("Ret(s) of the full solution differs from t_A")
    zero = analyze(A).identity
    cls = retract_relation(sL).classes
    m = A.order
    if nl % m:
        raise DecompositionFailed("fibres of the retract have unequal sizes")
    k = nl // m
    fibres = [[l for l in range(nl) if cls[l] == a] for a in range(m)]
    if any(len(f) != k for f in fibres):
        raise DecompositionFailed("fibres of the retract have unequal sizes")

    # label each fibre in sorted order; sigma_zero = id and sigma_b from theta_b on fibre b
    xcoord = np.empty(nl, dtype=np.int64)
    for f in fibres:
        for i, l in enumerate(f):
            xcoord[l] = i
    sigma = np.empty((m, k), dtype=np.int64)
    for b in range(m):
        rep = fibres[b][0]
        # X-coordinate of theta_{(., b)}(y, b) is sigma_zero sigma_b^-1 (y)
        sigma_inv = np.array([xcoord[theta_l[rep, fibres[b][y]]] for y in range(k)])
        if sorted(sigma_inv.tolist()) != list(range(k)):
            raise DecompositionFailed("theta_b is not a bijection between fibres")
        sigma[b] = _perm_inverse(sigma_inv)
    if not np.array_equal(sigma[zero], np.arange(k)):
        raise DecompositionFailed("sigma at the zero of A should be the identity")

    # witness: (x, a, g) -> carrier element with left index fibres[a][x] and group index g
    by_coords = {(int(c[0]), int(c[1])): e for e, c in enumerate(coords)}
    ng = G.order
    witness = np.empty(s.order, dtype=np.int64)
    for x in range(k):
        for a in range(m):
            for g in range(ng):
                witness[(x * m + a) * ng + g] = by_coords[fibres[a][x], g]
    dec = InvolutiveDecomposition(k, A, G, sigma, witness)
    if not is_solution_isomorphism(dec.reassemble(), s, witness):
        raise DecompositionFailed("Ext^sigma_X(t_A) x s_G does not reassemble s")
    return dec


def two_adic_valuation(N):
    n = 0
    while N % 2 == 0:
        N //= 2
        n += 1
    return n


def count_involutive(N):
    """C(n + 2, 2) for N = 2^n (2m + 1)."""
    if N < 1:
        raise ValueError("N must be positive")
    return comb(two_adic_valuation(N) + 2, 2)


def decomposition_sizes(N):
    """Ordered (|X|, |A|, |G|) with |A|, |G| powers of two and product N."""
    out = []
    a = 1
    while N % a == 0:
        g = 1
        while (N // a) % g == 0:
            out.append((N // (a * g), a, g))
            g *= 2
        a *= 2
    return out


def involutive_from_sizes(x_size, a_rank, g_rank):
    """Representative Ext^id_X(t_A) x s_G for given sizes (sigma identically id)."""
    A = elementary_abelian(a_rank)
    G = elementary_abelian(g_rank)
    sigma = np.tile(np.arange(x_size), (A.order, 1))
    return product_solution(ext_sigma(A, x_size, sigma), kac_takesaki(G))
