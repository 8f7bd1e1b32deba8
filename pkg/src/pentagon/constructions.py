"""Explicit recipes producing PE solutions.  Every output is re-verified."""
from dataclasses import dataclass

import numpy as np

from .errors import (
    ClosureFailed,
    CocycleFailed,
    ConditionFailed,
    NotAGroup,
    NotExactFactorization,
    NotMatched,
    NotNormal,
    PreconditionFailed,
    SigmaConditionFailed,
    TheoremViolation,
)
from .semigroup import (
    CayleyTable,
    analyze,
    coset_representative_systems,
    cosets,
    frozen_array,
    is_homomorphism,
    is_normal_subgroup,
    normal_subgroups,
    validate_table,
)
from .solution import PESolution, classify_properties, is_bijective, opposite, verify_solution


def _as_map(values, n, name):
    f = np.asarray(values, dtype=np.int64)
    if f.shape != (n,) or np.any((f < 0) | (f >= n)):
        raise PreconditionFailed(f"{name} must be a map on range({n})")
    return f


def _group_facts(G):
    facts = analyze(G)
    if not facts.is_group:
        raise NotAGroup("expected a group table")
    return facts


# ------------------------------------------------------------ simple examples

def lyubashenko(n, f, g):
    """s(x, y) = (f(x), g(y)) for commuting idempotent maps f, g."""
    f = _as_map(f, n, "f")
    g = _as_map(g, n, "g")
    if not np.array_equal(f[f], f):
        raise PreconditionFailed("f o f != f")
    if not np.array_equal(g[g], g):
        raise PreconditionFailed("g o g != g")
    if not np.array_equal(f[g], g[f]):
        raise PreconditionFailed("f o g != g o f")
    S = validate_table(n, np.repeat(f[:, None], n, axis=1))
    return verify_solution(S, np.repeat(g[None, :], n, axis=0))


def endo_solution(S, gamma):
    """s(x, y) = (xy, gamma(y)) for an idempotent endomorphism gamma."""
    n = S.order
    gamma = _as_map(gamma, n, "gamma")
    if not is_homomorphism(S, S, gamma):
        raise PreconditionFailed("gamma is not an endomorphism")
    if not np.array_equal(gamma[gamma], gamma):
        raise PreconditionFailed("gamma o gamma != gamma")
    s = verify_solution(S, np.repeat(gamma[None, :], n, axis=0))
    if classify_properties(s).non_degenerate != np.array_equal(gamma, np.arange(n)):
        raise TheoremViolation("non-degeneracy should hold exactly when gamma = id")
    return s


def _perm_power(sigma, k):
    n = len(sigma)
    out = np.arange(n)
    for _ in range(k % _perm_order(sigma)):
        out = sigma[out]
    return out


def _perm_order(sigma):
    n = len(sigma)
    cur = sigma.copy()
    k = 1
    while not np.array_equal(cur, np.arange(n)):
        cur = sigma[cur]
        k += 1
    return k


def left_zero_group_solution(G, n, sigma):
    """Bijective solution on E x G, E = {1..n}, with (i, a)(j, b) = (i, ab).

    ``sigma`` lists the images of 0..n-1 (label i of E is index i - 1).  The
    pair (i, a) is stored as (i - 1) * |G| + a and
    s((i, a), (j, b)) = ((i, ab), (sigma^i(j), b)).
    """
    _group_facts(G)
    sigma = np.asarray(sigma, dtype=np.int64)
    if sorted(sigma.tolist()) != list(range(n)):
        raise PreconditionFailed("sigma must be a permutation of range(n)")
    for i in range(n):
        label = i + 1
        if not np.array_equal(_perm_power(sigma, sigma[i] + 2), _perm_power(sigma, label)):
            raise SigmaConditionFailed(label)
    m = G.order
    N = n * m
    idx, a = np.divmod(np.arange(N), m)
    table = idx[:, None] * m + G.table[a[:, None], a[None, :]]
    powers = [_perm_power(sigma, i + 1) for i in range(n)]
    theta = np.array(
        [[powers[idx[x]][idx[y]] * m + a[y] for y in range(N)] for x in range(N)]
    )
    s = verify_solution(CayleyTable(table), theta)
    if not is_bijective(s):
        raise TheoremViolation("left-zero x group solution should be bijective")
    return s


# --------------------------------------------------------- exact factorization

@dataclass(frozen=True)
class FactorizationSolutions:
    s: PESolution
    r: PESolution
    r_is_flip_conjugate: bool   # r == tau s tau
    r_is_opposite: bool         # r == tau s^-1 tau


def _projections(G, H, K):
    t = G.table
    p1 = np.full(G.order, -1, dtype=np.int64)
    p2 = np.full(G.order, -1, dtype=np.int64)
    counts = np.zeros(G.order, dtype=np.int64)
    for h in H:
        for k in K:
            x = t[h, k]
            counts[x] += 1
            p1[x], p2[x] = h, k
    bad = np.nonzero(counts != 1)[0]
    if len(bad):
        x = int(bad[0])
        raise NotExactFactorization(f"{x} has {counts[x]} factorizations hk")
    return p1, p2


def exact_factorization_solutions(G, H, K):
    """The two bijective solutions attached to an exact factorization G = HK."""
    facts = _group_facts(G)
    inv = np.array(facts.inverses)
    t = G.table
    for name, sub in (("H", H), ("K", K)):
        if any(t[a, b] not in sub for a in sub for b in sub):
            raise NotExactFactorization(f"{name} is not closed under the product")
    p1, p2 = _projections(G, sorted(H), sorted(K))
    n = G.order
    s_first = np.empty((n, n), dtype=np.int64)
    s_second = np.empty((n, n), dtype=np.int64)
    r_first = np.empty((n, n), dtype=np.int64)
    r_second = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        for y in range(n):
            w = t[y, inv[p1[x]]]
            s_first[x, y] = t[p2[w], x]
            s_second[x, y] = w
            u = t[inv[p2[x]], y]
            r_first[x, y] = t[x, p1[u]]
            r_second[x, y] = u
    out = []
    for first, second in ((s_first, s_second), (r_first, r_second)):
        sol = verify_solution(validate_table(n, first), second)
        if not is_bijective(sol):
            raise TheoremViolation("factorization solution should be bijective")
        if not analyze(sol.semigroup).is_left_group:
            raise TheoremViolation("factorization product should be a left group")
        out.append(sol)
    s, r = out
    flip = np.array_equal(r.table, s.theta.T) and np.array_equal(r.theta, s.table.T)
    return FactorizationSolutions(s, r, bool(flip), opposite(s) == r)


# ------------------------------------------------------------- group solutions

def kashaev_sergeev(G, X, lam, mu):
    """s(x, y) = (xy, mu(x)^-1 mu(xy)) on the subsemigroup X of G.

    ``lam`` and ``mu`` are indexed by elements of G (only entries in X are
    read).  The result is relabeled to 0..|X|-1 in sorted order of X.
    """
    facts = _group_facts(G)
    inv = facts.inverses
    t = G.table
    X = sorted(set(int(x) for x in X))
    members = set(X)
    index = {x: i for i, x in enumerate(X)}
    for x in X:
        for y in X:
            if t[x, y] not in members:
                raise ClosureFailed((x, y))
    star = {}
    for x in X:
        for y in X:
            v = int(t[inv[mu[x]], mu[t[x, y]]])
            if v not in members:
                raise ClosureFailed((x, y))
            star[x, y] = v
    for x in X:
        for y in X:
            if mu[star[x, y]] != t[lam[x], mu[y]]:
                raise CocycleFailed((x, y))
    k = len(X)
    table = [[index[int(t[x, y])] for y in X] for x in X]
    theta = [[index[star[x, y]] for y in X] for x in X]
    return verify_solution(validate_table(k, table), theta)


@dataclass(frozen=True)
class GroupSolutionData:
    K: frozenset
    R: frozenset
    mu: np.ndarray


def check_group_data(G, data, facts=None):
    facts = facts or _group_facts(G)
    t = G.table
    inv = facts.inverses
    if not is_normal_subgroup(G, data.K, facts):
        raise NotNormal(f"{sorted(data.K)} is not a normal subgroup")
    mu = np.asarray(data.mu)
    for c in cosets(G, data.K):
        hits = [r for r in data.R if r in c]
        if len(hits) != 1:
            raise ConditionFailed("R meets each coset once", c)
        if any(mu[x] != hits[0] for x in c):
            raise ConditionFailed("mu(x) is the representative of Kx", c)
    for x in range(G.order):
        if t[mu[x], inv[x]] not in data.K:
            raise ConditionFailed("mu(x) in Kx", (x,))


def group_quotient_solution(G, data):
    """theta_x(y) = mu(x)^-1 mu(xy) for a normal subgroup and representative map."""
    facts = _group_facts(G)
    check_group_data(G, data, facts)
    t = G.table
    inv = np.array(facts.inverses)
    mu = np.asarray(data.mu)
    theta = t[inv[mu][:, None], mu[t]]
    return verify_solution(G, theta)


def group_solutions(G):
    """Every solution from a normal subgroup and a representative system (as a set)."""
    out = set()
    for K in normal_subgroups(G):
        for R, mu in coset_representative_systems(G, K):
            out.add(group_quotient_solution(G, GroupSolutionData(K, R, mu)))
    return out


def extract_group_data(s):
    """Recover (K, R, mu) from a solution on a group and check the round trip."""
    G = s.semigroup
    facts = _group_facts(G)
    one = facts.identity
    t = G.table
    inv = np.array(facts.inverses)
    theta1 = s.theta[one]
    K = frozenset(int(x) for x in range(G.order) if theta1[x] == one)
    R = frozenset(int(v) for v in theta1)
    data = GroupSolutionData(K, R, frozen_array(theta1))
    try:
        check_group_data(G, data, facts)
    except (NotNormal, ConditionFailed) as exc:
        raise TheoremViolation(str(exc)) from exc
    rebuilt = t[inv[theta1][:, None], theta1[t]]
    if not np.array_equal(rebuilt, s.theta):
        raise TheoremViolation("theta_x(y) != theta_1(x)^-1 theta_1(xy)")
    if group_quotient_solution(G, data) != s:
        raise TheoremViolation("round trip through the group construction failed")
    return data


# --------------------------------------------------------------- matched pairs

@dataclass(frozen=True)
class MatchedQuadruple:
    """Solutions s on S and t on T with actions alpha[u] on S and beta[a] on T."""

    s: PESolution
    t: PESolution
    alpha: np.ndarray  # shape (|T|, |S|)
    beta: np.ndarray   # shape (|S|, |T|)


MATCHED_IDENTITIES = (
    "alpha_u(a alpha_v(b)) = alpha_u(a) alpha_{beta_a(u) v}(b)",
    "beta_a(beta_b(u) v) = beta_{b alpha_v(a)}(u) beta_a(v)",
    "theta_a alpha_u = theta_{alpha_v(a)} alpha_{beta_a(v) u}",
    "theta_{a alpha_u(b)} = alpha_{eta_{beta_b(u)}(v)} theta_{a alpha_u(b)}",
    "eta_{beta_{b alpha_v(c)}(u)}(beta_c(v)) = "
    "beta_{theta_{a alpha_u(b)}(alpha_{beta_b(u) v}(c))}(eta_{beta_b(u)}(v))",
)


def check_matched_quadruple(q):
    """Evaluate the matched-quadruple identities.

    Returns (ok, violations) where each violation is (identity, witness)
    with the witness ordered as (a, b, c, u, v) for the quantified variables.
    """
    S, T = q.s.table, q.t.table
    th, eta = q.s.theta, q.t.theta
    al = np.asarray(q.alpha)
    be = np.asarray(q.beta)
    n, m = len(S), len(T)
    if al.shape != (m, n) or be.shape != (n, m):
        raise NotMatched("alpha must be |T| x |S| and beta |S| x |T|")
    found = {}

    def fail(i, witness):
        found.setdefault(MATCHED_IDENTITIES[i], witness)

    for a in range(n):
        for b in range(n):
            for u in range(m):
                for v in range(m):
                    if al[u, S[a, al[v, b]]] != S[al[u, a], al[T[be[a, u], v], b]]:
                        fail(0, (a, b, None, u, v))
                    if be[a, T[be[b, u], v]] != T[be[S[b, al[v, a]], u], be[a, v]]:
                        fail(1, (a, b, None, u, v))
                    if th[a, al[u, b]] != th[al[v, a], al[T[be[a, v], u], b]]:
                        fail(2, (a, b, None, u, v))
                    p = S[a, al[u, b]]
                    w = eta[be[b, u], v]
                    for c in range(n):
                        if th[p, c] != al[w, th[p, c]]:
                            fail(3, (a, b, c, u, v))
                        lhs = eta[be[S[b, al[v, c]], u], be[c, v]]
                        rhs = be[th[p, al[T[be[b, u], v], c]], w]
                        if lhs != rhs:
                            fail(4, (a, b, c, u, v))
    violations = [(name, found[name]) for name in MATCHED_IDENTITIES if name in found]
    return not violations, violations


def matched_product_table(q):
    S, T = q.s.table, q.t.table
    n, m = len(S), len(T)
    a, u = np.divmod(np.arange(n * m), m)
    al = np.asarray(q.alpha)
    be = np.asarray(q.beta)
    A, U = a[:, None], u[:, None]
    B, V = a[None, :], u[None, :]
    first_s = S[A, al[U, B]]
    first_t = T[be[B, U], V]
    second_s = q.s.theta[A, al[U, B]]
    second_t = q.t.theta[be[B, U], V]
    return first_s * m + first_t, second_s * m + second_t


def matched_product(q):
    """s bowtie t on S x T; the pair (a, u) is element a * |T| + u."""
    ok, violations = check_matched_quadruple(q)
    if not ok:
        raise NotMatched(f"not a matched quadruple: {violations[0]}")
    first, second = matched_product_table(q)
    return verify_solution(validate_table(len(first), first), second)


# ------------------------------------------------------------------ products

def kac_takesaki(S):
    """s(x, y) = (xy, y)."""
    n = S.order
    return verify_solution(S, np.tile(np.arange(n), (n, 1)))


def product_solution(s, t):
    """s x t on S x T; the pair (a, u) is element a * |T| + u."""
    n, m = s.order, t.order
    a, u = np.divmod(np.arange(n * m), m)
    table = s.table[a[:, None], a[None, :]] * m + t.table[u[:, None], u[None, :]]
    theta = s.theta[a[:, None], a[None, :]] * m + t.theta[u[:, None], u[None, :]]
    return verify_solution(CayleyTable(table), theta)
