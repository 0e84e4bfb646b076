"""Canonical JSON certificates with checksums, and re-verification that
never re-solves anything."""

from __future__ import annotations

import hashlib
import json

from .blocking import WeightedPointSet, is_minimal, is_t_fold_blocking, is_t_mod_p_set
from .coloring import Coloring, is_proper, is_strict, is_trivial_coloring
from .geometry import ProjectiveSpace, theta
from .solvers import bounds_report

SCHEMA_VERSION = 1

KINDS = ("transversal", "coloring", "blocking_set", "tmodp_report", "bounds")


class CertificateError(ValueError):
    pass


def canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def checksum(payload) -> str:
    return hashlib.sha256(canonical_json(payload).encode()).hexdigest()


def make_certificate(kind: str, payload: dict) -> dict:
    if kind not in KINDS:
        raise CertificateError(f"unknown certificate kind {kind!r}")
    return {"schema_version": SCHEMA_VERSION, "kind": kind,
            "payload": payload, "checksum": checksum(payload)}


def write_certificate(cert: dict, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(canonical_json(cert))


def load_certificate(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


_space_cache: dict = {}


def _space(n: int, q: int) -> ProjectiveSpace:
    key = (n, q)
    if key not in _space_cache:
        _space_cache[key] = ProjectiveSpace.of_order(n, q)
    return _space_cache[key]


def _verify_transversal(payload):
    n, k, q, t = payload["n"], payload["k"], payload["q"], payload["t"]
    pts = set(payload["points"])
    if "objective" in payload and payload["objective"] != len(pts):
        return False, "objective does not match the witness size"
    space = _space(n, q)
    for S in space.subspaces(k):
        hit = sum(1 for i in S.point_indices() if i in pts)
        if hit < t:
            return False, f"a {k}-space meets the set in only {hit} < {t} points"
    return True, "t-transversal verified"


def _verify_coloring(payload):
    n, k, q = payload["n"], payload["k"], payload["q"]
    space = _space(n, q)
    H = space.hypergraph(k)
    coloring = Coloring(tuple(payload["assignment"]))
    if not is_strict(coloring, H.num_vertices):
        return False, "coloring is not strict"
    if payload.get("N") is not None and coloring.N != payload["N"]:
        return False, "N does not match the assignment"
    ok, edge = is_proper(coloring, H)
    if not ok:
        idx = [i for i in range(H.num_vertices) if edge >> i & 1]
        return False, f"rainbow hyperedge on points {idx}"
    if payload.get("trivial"):
        triv, _ = is_trivial_coloring(coloring, H)
        if not triv:
            return False, "claimed trivial but no class contains a 2-transversal"
    return True, "proper strict coloring verified"


def _verify_blocking_set(payload):
    n, q = payload["space"]["n"], payload["space"]["q"]
    space = _space(n, q)
    B = WeightedPointSet(space, list(payload["weights"]))
    for claim in payload["claims"]:
        kind = claim["type"]
        t, k = claim["t"], claim["k"]
        if kind == "t_fold_blocking":
            ok, witness = is_t_fold_blocking(B, t, k)
            if ok != claim.get("verified", True):
                detail = "claim mismatch"
                if witness is not None:
                    detail = f"violating {k}-space with basis {witness.basis}"
                return False, detail
        elif kind == "t_mod_p":
            ok, witness = is_t_mod_p_set(B, t, k)
            if ok != claim.get("verified", True):
                return False, f"t (mod p) claim fails on a {k}-space"
        elif kind == "minimal":
            if is_minimal(B, t, k) != claim.get("verified", True):
                return False, "minimality claim mismatch"
        else:
            return False, f"unknown claim type {kind!r}"
    return True, "all claims verified"


def _verify_tmodp_report(payload):
    p, t, k = payload["p"], payload["t"], payload["k"]
    space = _space(2, p)
    expected = payload["expected_size"]
    if expected != t * theta(space.n - k, p):
        return False, "expected_size is wrong for the parameters"
    if len(payload["sets"]) != payload["num_found"]:
        return False, "num_found does not match the listed sets"
    for wt in payload["sets"]:
        B = WeightedPointSet(space, list(wt))
        ok, _ = is_t_mod_p_set(B, t, k)
        if not ok:
            return False, f"listed set of size {B.size} is not a {t} (mod {p}) set"
        if payload.get("verified") and B.size != expected:
            return False, f"listed set has size {B.size} != {expected}"
    return True, "report sets verified"


def _verify_bounds(payload):
    rep = bounds_report(payload["n"], payload["k"], payload["q"], payload["t"])
    if rep.to_json() != payload["report"]:
        return False, "bounds report does not match a recomputation"
    return True, "bounds verified"


_VERIFIERS = {
    "transversal": _verify_transversal,
    "coloring": _verify_coloring,
    "blocking_set": _verify_blocking_set,
    "tmodp_report": _verify_tmodp_report,
    "bounds": _verify_bounds,
}


def recheck(cert: dict):
    """Verify a certificate without re-solving.  Returns (ok, detail)."""
    for key in ("schema_version", "kind", "payload", "checksum"):
        if key not in cert:
            return False, f"malformed certificate: missing {key!r}"
    if cert["kind"] not in _VERIFIERS:
        return False, f"unknown certificate kind {cert['kind']!r}"
    if checksum(cert["payload"]) != cert["checksum"]:
        return False, "checksum mismatch"
    try:
        return _VERIFIERS[cert["kind"]](cert["payload"])
    except (ValueError, KeyError, IndexError) as exc:
        return False, f"verification error: {exc}"
