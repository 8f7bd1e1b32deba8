"""Exhaustive search: semigroups of order n, solutions on a semigroup, censuses."""
import hashlib
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from math import factorial

import numpy as np

from . import kernels
from .errors import OrderTooLarge, PreconditionFailed
from .semigroup import CayleyTable, analyze, canonical_form, permutations
from .serialize import dumps, semigroup_to_json, solution_to_json
from .solution import PESolution, classify_properties

MAX_FULL_ORDER = 4
MAX_LONG_ORDER = 5


@dataclass(frozen=True)
class SearchFilter:
    involutive: bool = False
    idempotent: bool = False
    bijective: bool = False
    nondegenerate: bool = False
    commutative: bool = False
    cocommutative: bool = False
    e_invariant: bool = False
    e_fixed: bool = False

    NAMES = {
        "involutive": kernels.INVOLUTIVE,
        "idempotent": kernels.IDEMPOTENT,
        "bijective": kernels.BIJECTIVE,
        "nondegenerate": kernels.NONDEGENERATE,
        "commutative": kernels.COMMUTATIVE,
        "cocommutative": kernels.COCOMMUTATIVE,
        "e_invariant": kernels.E_INVARIANT,
        "e_fixed": kernels.E_FIXED,
    }

    @classmethod
    def from_names(cls, names):
        names = [n.replace("-", "_") for n in (names or [])]
        unknown = [n for n in names if n not in cls.NAMES]
        if unknown:
            raise ValueError(f"unknown filter {unknown[0]!r}")
        return cls(**{n: True for n in names})

    def names(self):
        return [f.name for f in fields(self) if getattr(self, f.name)]

    @property
    def flags(self):
        return sum(self.NAMES[n] for n in self.names())

    @property
    def needs_clifford(self):
        return self.e_invariant or self.e_fixed

    def label(self):
        return "+".join(n.replace("_", "-") for n in self.names()) or "none"


NO_FILTER = SearchFilter()


# ------------------------------------------------------------ parallel driver

def parallel_partition(run, prefixes, workers=1):
    """Run ``run(prefix)`` for each prefix on ``workers`` threads.

    Results (2-D int arrays, one row per hit) are concatenated in prefix order
    and then sorted and deduplicated, so the output never depends on the
    worker count.
    """
    prefixes = list(prefixes)
    if workers <= 1 or len(prefixes) <= 1:
        parts = [run(p) for p in prefixes]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, prefixes))
    parts = [p for p in parts if len(p)]
    if not parts:
        return np.empty((0, 0), dtype=np.int64)
    merged = np.concatenate(parts)
    return np.unique(merged, axis=0)


# ---------------------------------------------------------------- semigroups

def _check_order(n, allow_long):
    if n < 1:
        raise ValueError("order must be positive")
    limit = MAX_LONG_ORDER if allow_long else MAX_FULL_ORDER
    if n > limit:
        raise OrderTooLarge(f"semigroup enumeration is limited to order {limit}")


def enumerate_semigroups(n, up_to_iso=False, workers=1, allow_long=False):
    """All associative n x n tables in lexicographic order.

    With ``up_to_iso`` one canonical table per class, sorted by its bytes.
    """
    _check_order(n, allow_long)
    empty = np.empty(0, dtype=np.int64)
    N = n * n
    if n == 1:
        rows = kernels.search_tables(1, empty, 1)
    else:
        prefixes = kernels.search_tables(n, empty, n)[:, :n]
        rows = parallel_partition(lambda p: kernels.search_tables(n, p, N), prefixes, workers)
    tables = [CayleyTable(r.reshape(n, n)) for r in rows]
    if not up_to_iso:
        return tables
    reps = {}
    for S in tables:
        c = canonical_form(S)[0]
        reps.setdefault(c.table.tobytes(), c)
    return [reps[k] for k in sorted(reps)]


def semigroup_automorphism_count(S):
    perms, invs = permutations(S.order)
    return kernels.canonical_layers(S.table[None], perms, invs)[2]


# ----------------------------------------------------------------- solutions

def _right_commutative(t):
    # (xz)y == (xy)z for all x, y, z
    x, y, z = np.meshgrid(*(np.arange(len(t)),) * 3, indexing="ij")
    return bool(np.all(t[t[x, z], y] == t[t[x, y], z]))


def enumerate_solutions(S, filt=NO_FILTER, workers=1):
    """Every theta family on S satisfying (P1), (P2) and the filter, in lexicographic order."""
    filt = filt or NO_FILTER
    n = S.order
    facts = analyze(S)
    if filt.needs_clifford and not facts.is_clifford:
        raise PreconditionFailed("E(X) filters need a Clifford semigroup")
    idem = np.zeros(n, dtype=np.bool_)
    idem[list(facts.idempotents)] = True
    table = np.ascontiguousarray(S.table, dtype=np.int64)
    # commutativity also needs xzy = xyz, a condition on the table alone
    if filt.commutative and not _right_commutative(table):
        return []
    flags = filt.flags
    N = n * n
    empty = np.empty(0, dtype=np.int64)
    if n == 1:
        rows = kernels.search_thetas(table, idem, flags, empty, N)
    else:
        prefixes = kernels.search_thetas(table, idem, flags, empty, n)[:, :n]
        rows = parallel_partition(
            lambda p: kernels.search_thetas(table, idem, flags, p, N), prefixes, workers
        )
    return [PESolution(S, r.reshape(n, n)) for r in rows]


# -------------------------------------------------------------------- census

def solution_key(table, theta, perms, invs):
    best, _, stab = kernels.canonical_layers(np.stack([table, theta]), perms, invs)
    return best.astype(np.int8).tobytes(), stab


def anti_key(table, theta, perms, invs):
    """Class key up to isomorphism or anti-isomorphism of the carrier (theta kept)."""
    a = solution_key(table, theta, perms, invs)[0]
    b = solution_key(np.ascontiguousarray(table.T), theta, perms, invs)[0]
    return min(a, b)


@dataclass
class CensusReport:
    order: int
    filter: str
    semigroups_labeled: int
    semigroups_iso: int
    solutions_labeled: int
    iso_classes: int
    iso_or_anti_classes: int
    catalog: list = field(default_factory=list)   # (canonical bytes, PESolution), sorted

    def summary(self):
        return {
            "order": self.order,
            "filter": self.filter,
            "semigroups": {"labeled": self.semigroups_labeled, "iso_classes": self.semigroups_iso},
            "solutions_labeled": self.solutions_labeled,
            "iso_classes": self.iso_classes,
            "iso_or_anti_classes": self.iso_or_anti_classes,
        }


def _census_limit(n, filt):
    if n < 1:
        raise ValueError("order must be positive")
    restrictive = filt.involutive or filt.idempotent
    limit = 4 if restrictive else 3
    if n > limit:
        raise OrderTooLarge(
            f"census at order {n} needs an involutive or idempotent filter" if n == 4
            else f"census is limited to order {limit}"
        )


def census(n, filt=NO_FILTER, workers=1, semigroups=None):
    """Solutions of order n across all carriers, counted labeled and up to isomorphism.

    Only one table per isomorphism class is searched; labeled counts follow by
    orbit-stabilizer (n! / |Aut S| labeled copies of each class).
    ``semigroups`` overrides the carrier list (any labeling, any order).
    """
    filt = filt or NO_FILTER
    _census_limit(n, filt)
    labeled_total = None
    if semigroups is None:
        labeled = enumerate_semigroups(n, workers=workers)
        labeled_total = len(labeled)
        semigroups = labeled
    reps = {}
    for S in semigroups:
        c = canonical_form(S)[0]
        reps.setdefault(c.table.tobytes(), c)
    perms, invs = permutations(n)
    nfact = factorial(n)
    classes = {}
    anti = set()
    labeled_solutions = 0
    labeled_semigroups = 0
    for key in sorted(reps):
        S = reps[key]
        aut = semigroup_automorphism_count(S)
        labeled_semigroups += nfact // aut
        if filt.needs_clifford and not analyze(S).is_clifford:
            continue
        sols = enumerate_solutions(S, filt, workers)
        labeled_solutions += (nfact // aut) * len(sols)
        for s in sols:
            k, _ = solution_key(s.table, s.theta, perms, invs)
            if k not in classes:
                flat = np.frombuffer(k, dtype=np.int8).astype(np.int64).reshape(2, n, n)
                classes[k] = PESolution(CayleyTable(flat[0]), flat[1])
            anti.add(anti_key(s.table, s.theta, perms, invs))
    if labeled_total is not None and labeled_total != labeled_semigroups:
        raise AssertionError("orbit-stabilizer count disagrees with the labeled enumeration")
    return CensusReport(
        order=n,
        filter=filt.label(),
        semigroups_labeled=labeled_semigroups,
        semigroups_iso=len(reps),
        solutions_labeled=labeled_solutions,
        iso_classes=len(classes),
        iso_or_anti_classes=len(anti),
        catalog=[(k, classes[k]) for k in sorted(classes)],
    )


def census_labeled(n, filt=NO_FILTER):
    """Reference census over every labeled table (slow, used as a cross-check)."""
    filt = filt or NO_FILTER
    _census_limit(n, filt)
    perms, invs = permutations(n)
    classes = set()
    total = 0
    for S in enumerate_semigroups(n):
        if filt.needs_clifford and not analyze(S).is_clifford:
            continue
        sols = enumerate_solutions(S, filt)
        total += len(sols)
        classes.update(solution_key(s.table, s.theta, perms, invs)[0] for s in sols)
    return total, len(classes)


# ------------------------------------------------------------------- catalog

def catalog_entry(s):
    props = classify_properties(s).as_dict()
    return solution_to_json(s, {"properties": props})


def write_catalog(report, out_dir):
    """One JSON per class plus census.json with sha256 checksums; returns the census dict."""
    os.makedirs(out_dir, exist_ok=True)
    width = max(4, len(str(len(report.catalog))))
    entries = []
    for i, (_, s) in enumerate(report.catalog):
        name = f"solution_{i:0{width}d}.json"
        text = dumps(catalog_entry(s))
        with open(os.path.join(out_dir, name), "w") as fh:
            fh.write(text)
        entries.append({"file": name, "sha256": hashlib.sha256(text.encode()).hexdigest()})
    doc = report.summary()
    doc["catalog"] = entries
    doc["catalog_sha256"] = hashlib.sha256("".join(e["sha256"] for e in entries).encode()).hexdigest()
    with open(os.path.join(out_dir, "census.json"), "w") as fh:
        fh.write(dumps(doc))
    return doc


def semigroup_listing(tables):
    return [semigroup_to_json(S) for S in tables]
