"""Weighted point sets of PG(n,q): multiple blocking sets, minimality,
secant-line classification, modular intersection conditions, and the
standard constructions.

Throughout, k names the dimension of the subspaces being met: a t-fold
blocking set with respect to k-spaces meets every k-space in at least t
points, counted with weights.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .geometry import ProjectiveSpace, Subspace, theta


class BlockingError(ValueError):
    pass


@dataclass
class WeightedPointSet:
    space: ProjectiveSpace
    weights: list

    def __post_init__(self):
        if len(self.weights) != self.space.num_points:
            raise BlockingError("weight array length does not match the point count")
        if any(w < 0 for w in self.weights):
            raise BlockingError("weights must be nonnegative")

    @property
    def size(self) -> int:
        return sum(self.weights)

    @property
    def support(self):
        return [i for i, w in enumerate(self.weights) if w > 0]

    def copy(self) -> "WeightedPointSet":
        return WeightedPointSet(self.space, list(self.weights))

    def subspace_weight(self, U: Subspace) -> int:
        w = self.weights
        return sum(w[i] for i in U.point_indices())

    def to_json(self) -> dict:
        return {"space": {"n": self.space.n, "q": self.space.q},
                "weights": list(self.weights)}


def _subspace_supports(space: ProjectiveSpace, m: int):
    return [S.point_indices() for S in space.subspaces(m)]


def kspace_weights(B: WeightedPointSet, k: int):
    """Weighted intersection size of B with every k-space, in canonical order."""
    w = B.weights
    return [sum(w[i] for i in sup) for sup in _subspace_supports(B.space, k)]


# -- blocking, essentiality, minimality ---------------------------------

def is_t_fold_blocking(B: WeightedPointSet, t: int, k: int):
    """True iff every k-space meets B in >= t weight; else (False, witness)."""
    if k < 1 or k > B.space.n - 1:
        raise BlockingError(f"k = {k} out of range")
    subs = B.space.subspaces(k)
    w = B.weights
    for S in subs:
        if sum(w[i] for i in S.point_indices()) < t:
            return False, S
    return True, None


def _require_blocking(B, t, k):
    ok, witness = is_t_fold_blocking(B, t, k)
    if not ok:
        raise BlockingError(
            f"not a {t}-fold blocking set with respect to {k}-spaces "
            f"(violated by a k-space of weight {B.subspace_weight(witness)})")


def essential_points(B: WeightedPointSet, t: int, k: int):
    """Positive-weight points lying on some k-space of weight exactly t."""
    _require_blocking(B, t, k)
    w = B.weights
    tight = 0
    for S in B.space.subspaces(k):
        if sum(w[i] for i in S.point_indices()) == t:
            tight |= S.mask
    return {i for i in B.support if tight >> i & 1}


def is_minimal(B: WeightedPointSet, t: int, k: int) -> bool:
    ess = essential_points(B, t, k)
    return all(i in ess for i in B.support)


def minimal_reduction(B: WeightedPointSet, t: int, k: int, order=None) -> WeightedPointSet:
    """Decrement non-essential weights in the given point order until minimal."""
    _require_blocking(B, t, k)
    space = B.space
    if order is None:
        order = range(space.num_points)
    order = list(order)
    supports = _subspace_supports(space, k)
    point_spaces = [[] for _ in range(space.num_points)]
    for si, sup in enumerate(supports):
        for i in sup:
            point_spaces[i].append(si)
    w = list(B.weights)
    sums = [sum(w[i] for i in sup) for sup in supports]
    changed = True
    while changed:
        changed = False
        for i in order:
            while w[i] > 0 and all(sums[si] > t for si in point_spaces[i]):
                w[i] -= 1
                for si in point_spaces[i]:
                    sums[si] -= 1
                changed = True
    return WeightedPointSet(space, w)


def harrach_uniqueness_limit(space: ProjectiveSpace, t: int, k: int) -> int:
    """Size bound below which the contained minimal t-fold set is unique.

    k again names the dimension of the met subspaces; the blockers
    themselves have typical dimension n - k.
    """
    q = space.q
    return (t + 1) * q ** (space.n - k) + theta(space.n - k - 1, q)


# -- modular intersection conditions ------------------------------------

def is_t_mod_p_set(B: WeightedPointSet, t: int, k: int, p: int | None = None):
    """True iff every k-space weight is congruent to t mod p."""
    char = B.space.field.p
    if p is not None and p != char:
        raise BlockingError(f"p = {p} does not match the field characteristic {char}")
    p = char
    w = B.weights
    for S in B.space.subspaces(k):
        if sum(w[i] for i in S.point_indices()) % p != t % p:
            return False, S
    return True, None


@dataclass
class ModExponentReport:
    t: int
    p: int
    e: int
    capped: bool
    size_lower_bound: Fraction


def largest_mod_exponent(B: WeightedPointSet, t: int, k: int) -> ModExponentReport:
    """Largest e with every k-space weight congruent to t mod p^e."""
    ok, witness = is_t_mod_p_set(B, t, k)
    if not ok:
        raise BlockingError("not a t (mod p) set")
    p = B.space.field.p
    sums = kspace_weights(B, k)
    max_sum = max(sums) if sums else 0
    e = 1
    capped = False
    while True:
        mod = p ** (e + 1)
        if mod > max_sum + abs(t):
            # all intersections would have to equal t exactly from here on
            if all(s == t for s in sums):
                capped = True
            else:
                break
        if any((s - t) % mod for s in sums):
            break
        e += 1
        if capped:
            break
    n, q = B.space.n, B.space.q
    bound = Fraction(t * q ** (n - k)) + Fraction(q ** (n - k), p**e + 1) - 1
    return ModExponentReport(t=t, p=p, e=e, capped=capped, size_lower_bound=bound)


# -- secant-line classification -----------------------------------------

T_SECANT = "t_secant"
LONG = "long"
FULL = "full"


@dataclass
class SecantClassification:
    t: int
    p: int
    classes: list  # per line, in canonical line order
    h1: int  # full lines
    h2: int  # long lines
    s_min: int | None
    outer_points: list = field(default_factory=list)
    line_weights: list = field(default_factory=list)


def classify_lines(B: WeightedPointSet, t: int) -> SecantClassification:
    """Classify every line as a t-secant, long, or full line.

    A full line has every point at positive weight; a t-secant has weight
    exactly t; everything else is long.  s_min (minimal s with a long
    line of weight s*p + t) is reported only when B is a t (mod p) set
    with respect to lines, since s is meaningful only there.
    """
    space = B.space
    p = space.field.p
    w = B.weights
    classes = []
    weights = []
    h1 = h2 = 0
    long_min = None
    for line in space.subspaces(1):
        pts = line.point_indices()
        lw = sum(w[i] for i in pts)
        weights.append(lw)
        if lw == t:
            classes.append(T_SECANT)
        elif all(w[i] > 0 for i in pts):
            classes.append(FULL)
            h1 += 1
        else:
            classes.append(LONG)
            h2 += 1
            if long_min is None or lw < long_min:
                long_min = lw
    s_min = None
    if long_min is not None and all((lw - t) % p == 0 for lw in weights):
        s_min = (long_min - t) // p
    outer = [i for i, wi in enumerate(w) if wi == 0]
    return SecantClassification(t=t, p=p, classes=classes, h1=h1, h2=h2,
                                s_min=s_min, outer_points=outer, line_weights=weights)


# -- bounds and constructions -------------------------------------------

def folklore_bound_margin(B: WeightedPointSet, t: int, k: int) -> int:
    """Margin |B| - t*theta(n-k) of the folklore lower bound; requires t <= q."""
    if t > B.space.q:
        raise BlockingError(f"t = {t} > q = {B.space.q}: the folklore bound may fail")
    _require_blocking(B, t, k)
    margin = B.size - t * theta(B.space.n - k, B.space.q)
    return margin


def construct_union(space: ProjectiveSpace, subspaces_with_mult):
    """Weighted union: each point gets the multiplicity sum of the
    subspaces containing it."""
    w = [0] * space.num_points
    for S, mult in subspaces_with_mult:
        if mult < 0:
            raise BlockingError("multiplicities must be nonnegative")
        for i in S.point_indices():
            w[i] += mult
    return WeightedPointSet(space, w)


def construct_qplus1_fold(space: ProjectiveSpace, k: int) -> WeightedPointSet:
    """An (n-k+1)-space with weight one: a (q+1)-fold blocking set with
    respect to k-spaces, of size theta(n-k+1) < (q+1)*theta(n-k)."""
    if k < 1 or k > space.n - 1:
        raise BlockingError(f"k = {k} out of range")
    m = space.n - k + 1
    rows = []
    for i in range(m + 1):
        row = [0] * (space.n + 1)
        row[i] = 1
        rows.append(tuple(row))
    S = space.subspace_from_basis(tuple(rows))
    return construct_union(space, [(S, 1)])


# -- mod-p solution enumeration -----------------------------------------

def solve_mod_p(rows, rhs, p):
    """Solve A x = rhs over GF(p).

    rows is a list of (dense) coefficient lists.  Returns (particular,
    kernel_basis) with free variables set to zero, or None if the system
    is inconsistent.
    """
    ncols = len(rows[0]) if rows else 0
    aug = [[c % p for c in row] + [b % p] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(aug)):
            if aug[i][c]:
                piv = i
                break
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], p - 2, p)
        if inv != 1:
            aug[r] = [(x * inv) % p for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c]:
                coef = aug[i][c]
                aug[i] = [(x - coef * y) % p for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == len(aug):
            break
    for i in range(r, len(aug)):
        if aug[i][ncols]:
            return None
    pivset = set(pivots)
    particular = [0] * ncols
    for i, c in enumerate(pivots):
        particular[c] = aug[i][ncols]
    kernel = []
    for f_col in range(ncols):
        if f_col in pivset:
            continue
        vec = [0] * ncols
        vec[f_col] = 1
        for i, c in enumerate(pivots):
            vec[c] = (-aug[i][f_col]) % p
        kernel.append(vec)
    return particular, kernel


DEFAULT_COSET_LIMIT = 3**13


@dataclass
class TModPEnumeration:
    sets: list
    kernel_dim: int
    num_solution_classes: int
    exhaustive: bool
    sampled: int = 0


def enumerate_t_mod_p_sets(space: ProjectiveSpace, k: int, t: int, max_size: int,
                           weight_cap: int | None = None,
                           coset_limit: int = DEFAULT_COSET_LIMIT,
                           sample_count: int = 100000, seed: int = 0) -> TModPEnumeration:
    """All weight functions w with 0 <= w <= weight_cap pointwise,
    sum(w) <= max_size, and every k-space weight congruent to t mod p.

    The solutions form a coset of the kernel of the k-space/point
    incidence matrix over GF(p); the coset is walked exhaustively unless
    it exceeds coset_limit, in which case uniform kernel samples are
    drawn instead (exhaustive=False in the result).
    """
    if space.field.h != 1:
        raise BlockingError("mod-p enumeration requires a prime field (h = 1)")
    p = space.field.p
    if weight_cap is None:
        weight_cap = p - 1
    if weight_cap > p - 1:
        raise BlockingError("weight_cap above p - 1 leaves residue representatives")
    supports = _subspace_supports(space, k)
    npts = space.num_points
    rows = []
    for sup in supports:
        row = [0] * npts
        for i in sup:
            row[i] = 1
        rows.append(row)
    solved = solve_mod_p(rows, [t] * len(rows), p)
    if solved is None:
        return TModPEnumeration([], 0, 0, True)
    particular, kernel = solved
    kdim = len(kernel)
    total = p**kdim
    found = []

    def consider(w):
        if max(w) <= weight_cap and sum(w) <= max_size:
            found.append(WeightedPointSet(space, list(w)))

    if total <= coset_limit:
        for coeffs in itertools.product(range(p), repeat=kdim):
            w = list(particular)
            for c, vec in zip(coeffs, kernel):
                if c:
                    for j in range(npts):
                        if vec[j]:
                            w[j] = (w[j] + c * vec[j]) % p
            consider(w)
        exhaustive = True
        sampled = 0
    else:
        rng = random.Random(seed)
        seen = set()
        for _ in range(sample_count):
            coeffs = tuple(rng.randrange(p) for _ in range(kdim))
            if coeffs in seen:
                continue
            seen.add(coeffs)
            w = list(particular)
            for c, vec in zip(coeffs, kernel):
                if c:
                    for j in range(npts):
                        if vec[j]:
                            w[j] = (w[j] + c * vec[j]) % p
            consider(w)
        exhaustive = False
        sampled = len(seen)
    found.sort(key=lambda B: tuple(B.weights))
    return TModPEnumeration(found, kdim, total, exhaustive, sampled)
