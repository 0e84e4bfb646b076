"""Exact desk-scale optimization: minimum t-transversals, exact upper
chromatic number, modular-set theorem verification, and the numeric
bound calculators with their applicability predicates."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .blocking import construct_union, enumerate_t_mod_p_sets
from .coloring import Coloring, is_proper, make_coloring, trivial_coloring
from .fields import factor_prime_power
from .geometry import Hypergraph, ProjectiveSpace, theta

OPTIMAL = "optimal"
BOUND_ONLY = "bound_only"

DEFAULT_TAU_VERTEX_LIMIT = 40
DEFAULT_UCN_VERTEX_LIMIT = 20


class SolverError(ValueError):
    pass


@dataclass
class SolveResult:
    objective: int | None
    witness: object
    nodes: int
    status: str
    lower_bound: int | None = None
    upper_bound: int | None = None


# -- minimum t-transversal ----------------------------------------------

def _greedy_transversal(edge_pts, num_vertices, t):
    deficits = [t] * len(edge_pts)
    chosen = set()
    vertex_edges = [[] for _ in range(num_vertices)]
    for ei, pts in enumerate(edge_pts):
        for v in pts:
            vertex_edges[v].append(ei)
    while any(d > 0 for d in deficits):
        best_v, best_gain = None, -1
        for v in range(num_vertices):
            if v in chosen:
                continue
            gain = sum(1 for ei in vertex_edges[v] if deficits[ei] > 0)
            if gain > best_gain:
                best_v, best_gain = v, gain
        if best_gain <= 0:
            return None
        chosen.add(best_v)
        for ei in vertex_edges[best_v]:
            deficits[ei] -= 1
    return chosen


def exact_tau(H: Hypergraph, t: int, *, vertex_limit: int = DEFAULT_TAU_VERTEX_LIMIT,
              lower_bound: int | None = None, initial_witness=None) -> SolveResult:
    """Minimum size of a t-transversal, by branch and bound.

    lower_bound, when supplied (for H(n,m,q) this is t*theta(n-m) from
    the folklore bound when t <= q), lets the search stop as soon as an
    incumbent meets it.  initial_witness seeds the incumbent, e.g. a
    disjoint-subspace construction.
    """
    if t < 1:
        raise SolverError("t must be >= 1")
    V = H.num_vertices
    edge_pts = H.edge_index_lists()
    if any(len(pts) < t for pts in edge_pts):
        raise SolverError("infeasible: some hyperedge has fewer than t vertices")

    geometric_lb = lower_bound
    if geometric_lb is None and H.params is not None:
        n, m, q = H.params
        if t <= q:
            geometric_lb = t * theta(n - m, q)

    if initial_witness is not None:
        inc = sorted(set(initial_witness))
        for pts in edge_pts:
            if sum(1 for v in pts if v in set(inc)) < t:
                raise SolverError("initial witness is not a t-transversal")
    else:
        greedy = _greedy_transversal(edge_pts, V, t)
        inc = sorted(greedy) if greedy is not None else None

    if V > vertex_limit:
        return SolveResult(objective=None, witness=inc, nodes=0, status=BOUND_ONLY,
                           lower_bound=geometric_lb,
                           upper_bound=len(inc) if inc is not None else None)

    if inc is not None and geometric_lb is not None and len(inc) == geometric_lb:
        return SolveResult(objective=len(inc), witness=tuple(inc), nodes=0,
                           status=OPTIMAL, lower_bound=geometric_lb,
                           upper_bound=len(inc))

    vertex_edges = [[] for _ in range(V)]
    for ei, pts in enumerate(edge_pts):
        for v in pts:
            vertex_edges[v].append(ei)

    best = [set(inc) if inc is not None else set(range(V))]
    best_size = [len(best[0])]
    nodes = [0]
    done = [False]

    def bound(chosen_count, deficits, available):
        lb1 = max(deficits) if deficits else 0
        total = sum(d for d in deficits if d > 0)
        if total == 0:
            return chosen_count
        maxcover = 1
        for v in available:
            cover = sum(1 for ei in vertex_edges[v] if deficits[ei] > 0)
            if cover > maxcover:
                maxcover = cover
        lb2 = -(-total // maxcover)
        # packing over edges with pairwise disjoint open candidate sets
        lb3 = 0
        used = set()
        order = sorted((ei for ei, d in enumerate(deficits) if d > 0),
                       key=lambda ei: len(edge_pts[ei]))
        for ei in order:
            cands = [v for v in edge_pts[ei] if v in available]
            if any(v in used for v in cands):
                continue
            used.update(cands)
            lb3 += deficits[ei]
        return chosen_count + max(lb1, lb2, lb3)

    def dfs(chosen, excluded, deficits):
        if done[0]:
            return
        nodes[0] += 1
        open_edges = [ei for ei, d in enumerate(deficits) if d > 0]
        if not open_edges:
            if len(chosen) < best_size[0]:
                best[0] = set(chosen)
                best_size[0] = len(chosen)
                if geometric_lb is not None and best_size[0] == geometric_lb:
                    done[0] = True
            return
        available = set(range(V)) - chosen - excluded
        if bound(len(chosen), deficits, available) >= best_size[0]:
            return
        # branch on the open edge with the fewest remaining candidates
        pick, pick_cands = None, None
        for ei in open_edges:
            cands = [v for v in edge_pts[ei] if v in available]
            if len(cands) < deficits[ei]:
                return  # infeasible branch
            if pick is None or len(cands) < len(pick_cands):
                pick, pick_cands = ei, cands
        newly_excluded = []
        for v in pick_cands:
            chosen.add(v)
            for ei in vertex_edges[v]:
                deficits[ei] -= 1
            dfs(chosen, excluded, deficits)
            chosen.discard(v)
            for ei in vertex_edges[v]:
                deficits[ei] += 1
            excluded.add(v)
            newly_excluded.append(v)
            if done[0]:
                break
        for v in newly_excluded:
            excluded.discard(v)

    dfs(set(), set(), [t] * len(edge_pts))
    witness = tuple(sorted(best[0]))
    return SolveResult(objective=best_size[0], witness=witness, nodes=nodes[0],
                       status=OPTIMAL, lower_bound=geometric_lb,
                       upper_bound=best_size[0])


# -- exact upper chromatic number ---------------------------------------

def exact_ucn(H: Hypergraph, *, vertex_limit: int = DEFAULT_UCN_VERTEX_LIMIT,
              tau2_witness=None) -> SolveResult:
    """Largest N admitting a proper strict N-coloring.

    Searches over class merges starting from the all-distinct coloring:
    UCN = |V| - (minimum number of merges killing every rainbow edge).
    The incumbent is seeded by the trivial coloring built on a minimum
    2-transversal.
    """
    V = H.num_vertices
    if any(e.bit_count() < 2 for e in H.edges):
        raise SolverError("infeasible: an edge with fewer than 2 vertices is always rainbow")

    if tau2_witness is None:
        tau_res = exact_tau(H, 2, vertex_limit=max(DEFAULT_TAU_VERTEX_LIMIT, V))
        tau2_witness = tau_res.witness
        tau2 = tau_res.objective
    else:
        tau2 = len(tau2_witness)
    seed_coloring = trivial_coloring(tau2_witness, H)
    trivial_lb = V - tau2 + 1

    if V > vertex_limit:
        return SolveResult(objective=None, witness=seed_coloring, nodes=0,
                           status=BOUND_ONLY, lower_bound=trivial_lb)

    edge_pts = H.edge_index_lists()
    best_merges = [len(tau2_witness) - 1]
    best_assignment = [list(seed_coloring.assignment)]
    nodes = [0]

    parent = list(range(V))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def rainbow_edges():
        out = []
        for ei, pts in enumerate(edge_pts):
            roots = [find(v) for v in pts]
            if len(set(roots)) == len(roots):
                out.append((ei, roots))
        return out

    def pack_bound(rainbows):
        used = set()
        cnt = 0
        for ei, roots in rainbows:
            rs = set(roots)
            if rs & used:
                continue
            used |= rs
            cnt += 1
        return cnt

    def record(merges):
        if merges < best_merges[0]:
            best_merges[0] = merges
            best_assignment[0] = [find(v) for v in range(V)]

    def dfs(merges):
        nodes[0] += 1
        rainbows = rainbow_edges()
        if not rainbows:
            record(merges)
            return
        if merges + pack_bound(rainbows) >= best_merges[0]:
            return
        ei, roots = rainbows[0]
        pts = edge_pts[ei]
        tried = set()
        for a in range(len(pts)):
            for b in range(a + 1, len(pts)):
                ra, rb = find(pts[a]), find(pts[b])
                key = (min(ra, rb), max(ra, rb))
                if key in tried:
                    continue
                tried.add(key)
                saved = list(parent)
                parent[max(ra, rb)] = min(ra, rb)
                dfs(merges + 1)
                parent[:] = saved

    dfs(0)
    witness = make_coloring(best_assignment[0])
    objective = V - best_merges[0]
    ok, _ = is_proper(witness, H)
    assert ok and witness.N == objective
    assert objective >= trivial_lb
    return SolveResult(objective=objective, witness=witness, nodes=nodes[0],
                       status=OPTIMAL, lower_bound=trivial_lb, upper_bound=objective)


# -- modular-set theorem verification -----------------------------------

@dataclass
class TModPVerification:
    p: int
    t: int
    k: int
    max_size: int
    weight_cap: int
    kernel_dim: int
    num_solution_classes: int
    exhaustive: bool
    num_found: int
    num_unions: int
    expected_size: int
    violations: list
    verified: bool
    sets: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "p": self.p, "t": self.t, "k": self.k, "max_size": self.max_size,
            "weight_cap": self.weight_cap, "kernel_dim": self.kernel_dim,
            "num_solution_classes": self.num_solution_classes,
            "exhaustive": self.exhaustive, "num_found": self.num_found,
            "num_unions": self.num_unions, "expected_size": self.expected_size,
            "violations": self.violations, "verified": self.verified,
            "sets": [list(B.weights) for B in self.sets],
        }


def verify_tmodp_theorem(p: int, t: int, max_size: int | None = None,
                         coset_limit: int | None = None, seed: int = 0) -> TModPVerification:
    """Exhaustively verify, in the plane PG(2,p), that every residue-capped
    t (mod p) set of bounded total weight is a weighted union of t lines.

    The bound defaults to (t+1)*theta(1) + p - 2, the regime in which the
    structure claim applies; t must satisfy t <= 3p/8 + 1.
    """
    if Fraction(t) > Fraction(3 * p, 8) + 1:
        raise SolverError(f"hypothesis violated: t = {t} > 3p/8 + 1 = {Fraction(3 * p, 8) + 1}")
    space = ProjectiveSpace.of_order(2, p)
    k = 1
    if max_size is None:
        max_size = (t + 1) * theta(space.n - k, p) + p - 2
    kwargs = {}
    if coset_limit is not None:
        kwargs["coset_limit"] = coset_limit
    enum = enumerate_t_mod_p_sets(space, k=k, t=t, max_size=max_size,
                                  weight_cap=p - 1, seed=seed, **kwargs)
    expected_size = t * theta(space.n - k, p)

    lines = space.subspaces(1)
    union_weights = set()
    for combo in itertools.combinations_with_replacement(range(len(lines)), t):
        mult = {}
        for li in combo:
            mult[li] = mult.get(li, 0) + 1
        B = construct_union(space, [(lines[li], m) for li, m in mult.items()])
        if B.size <= max_size and max(B.weights) <= p - 1:
            union_weights.add(tuple(B.weights))

    violations = []
    found_weights = set()
    for B in enum.sets:
        wt = tuple(B.weights)
        found_weights.add(wt)
        if B.size != expected_size:
            violations.append({"weights": list(wt), "reason": f"size {B.size} != {expected_size}"})
        elif wt not in union_weights:
            violations.append({"weights": list(wt), "reason": "not a weighted union of t lines"})
    if enum.exhaustive:
        for wt in union_weights - found_weights:
            violations.append({"weights": list(wt), "reason": "line union missed by enumeration"})

    return TModPVerification(
        p=p, t=t, k=k, max_size=max_size, weight_cap=p - 1,
        kernel_dim=enum.kernel_dim, num_solution_classes=enum.num_solution_classes,
        exhaustive=enum.exhaustive, num_found=len(enum.sets),
        num_unions=len(union_weights), expected_size=expected_size,
        violations=violations, verified=not violations and enum.exhaustive,
        sets=enum.sets)


# -- bound calculators ---------------------------------------------------

def _sqrt2_combo_nonneg(a: Fraction, b: Fraction) -> bool:
    """Exact sign test of a*sqrt(2) + b >= 0."""
    if a == 0:
        return b >= 0
    if a > 0 and b >= 0:
        return True
    if a < 0 and b <= 0:
        return False
    if a > 0:
        return 2 * a * a >= b * b
    return 2 * a * a <= b * b


@dataclass
class BoundsReport:
    n: int
    k: int
    q: int
    p: int
    h: int
    t: int
    theta_n: int
    theta_k: int
    trivial_lower: int
    tau2_known: int | None
    # delta for prime order: (sqrt(2)*q^k - q^k - 3*theta(k-1) - 8) / 2,
    # stored as the exact pair (sqrt2 coefficient, rational part)
    delta_prime_sqrt2: Fraction
    delta_prime_rational: Fraction
    delta_prime_nonneg: bool
    delta_ext: Fraction | None
    delta_strong: Fraction
    blsetthm_threshold: Fraction
    dbhszvdv_size: int
    bruen_lower_ceil: int
    blokhuis: Fraction
    flags: dict

    def to_json(self) -> dict:
        def frac(x):
            if x is None:
                return None
            return f"{x.numerator}/{x.denominator}"
        return {
            "n": self.n, "k": self.k, "q": self.q, "p": self.p, "h": self.h,
            "t": self.t, "theta_n": self.theta_n, "theta_k": self.theta_k,
            "trivial_lower": self.trivial_lower, "tau2_known": self.tau2_known,
            "delta_prime": {"sqrt2_coeff": frac(self.delta_prime_sqrt2),
                            "rational": frac(self.delta_prime_rational),
                            "nonnegative": self.delta_prime_nonneg},
            "delta_ext": frac(self.delta_ext),
            "delta_strong": frac(self.delta_strong),
            "blsetthm_threshold": frac(self.blsetthm_threshold),
            "dbhszvdv_size": self.dbhszvdv_size,
            "bruen_lower_ceil": self.bruen_lower_ceil,
            "blokhuis": frac(self.blokhuis),
            "flags": dict(self.flags),
        }


def bounds_report(n: int, k: int, q: int, t: int) -> BoundsReport:
    """All bound formulas and theorem-applicability flags, exact."""
    p, h = factor_prime_power(q)
    qk = q**k
    theta_n = theta(n, q)
    theta_k = theta(k, q)
    trivial_lower = theta_n - 2 * theta_k + 1
    tau2_known = 2 * theta_k if 2 * k < n else None

    a = Fraction(qk, 2)
    b = Fraction(-qk - 3 * theta(k - 1, q) - 8, 2)
    delta_prime_nonneg = _sqrt2_combo_nonneg(a, b)

    delta_ext = Fraction(q ** (k - 1) - theta(k - 2, q) - 3, 2) if k >= 2 else None
    delta_strong = Fraction(qk, 200) - theta(k - 1, q) - Fraction(3, 2)
    blsetthm_threshold = (Fraction(t) + Fraction(1, 2)) * p**k - Fraction(1, 2)
    dbhszvdv_size = 2 * qk + 2 * (qk - 1) // (p - 1)

    s = math.isqrt(q)
    bruen_lower_ceil = q + s + 1 + (0 if s * s == q else 1)
    blokhuis = Fraction(3 * (p + 1), 2)

    flags = {
        "ucnthm": n >= 3 and 2 * k < n and ((k == 1 and q >= 17) or (k >= 2 and q >= 13)),
        "ucnstabp": ((h == 1 and q >= 11 and delta_prime_nonneg)
                     or (h >= 2 and k >= 2 and q >= 25)),
        "ucnstabq": h >= 2 and p >= 11 and qk >= 239,
        "tmodpsetthm": h == 1 and Fraction(t) <= Fraction(3 * p, 8) + 1,
        "blsetthm": h == 1 and Fraction(t) <= Fraction(3 * p, 8) + 1,
    }

    return BoundsReport(
        n=n, k=k, q=q, p=p, h=h, t=t, theta_n=theta_n, theta_k=theta_k,
        trivial_lower=trivial_lower, tau2_known=tau2_known,
        delta_prime_sqrt2=a, delta_prime_rational=b,
        delta_prime_nonneg=delta_prime_nonneg,
        delta_ext=delta_ext, delta_strong=delta_strong,
        blsetthm_threshold=blsetthm_threshold, dbhszvdv_size=dbhszvdv_size,
        bruen_lower_ceil=bruen_lower_ceil, blokhuis=blokhuis, flags=flags)
