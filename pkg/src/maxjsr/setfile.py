"""Matrix-set files and machine-readable certificates.

A set file is UTF-8 JSON with exactly the fields ``n`` and ``matrices``,
each matrix carrying ``name`` and ``rows``.  Entries are nonnegative decimal
numbers; strings holding fractions of decimals ("10/3", "0.25") are accepted
and parsed exactly before conversion to double precision.

Certificates are JSON records that embed their inputs, so each can be
re-checked on its own (see :func:`certificate_problems`).
"""

from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import CertificateError, SetFileError
from .jsr import (
    FinitenessCertificate,
    JsrBounds,
    MatrixSet,
    NonexistenceCertificate,
    WeightedMaxNorm,
    aggregate,
    jsr,
    verify_barabanov,
    verify_extremal,
)
from .geometry import HausdorffReport, hausdorff
from .maxcore import MaxMatrix, MaxVector, apply as max_apply
from .spectral import CycleMeanResult, cycle_mean
from .tolerance import allclose, close, resolve_tolerance

TOOL_VERSION = "0.1.0"

CERTIFICATE_KINDS = ("mu", "jsr", "barabanov", "finiteness", "hausdorff", "nonexistence", "probe")


def _parse_entry(value, location: str) -> float:
    if isinstance(value, bool):
        raise SetFileError("boolean is not a number", location)
    if isinstance(value, (int, float)):
        result = float(value)
    elif isinstance(value, str):
        try:
            result = float(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise SetFileError(f"cannot parse number {value!r} ({exc})", location) from None
    else:
        raise SetFileError(f"expected a number, got {type(value).__name__}", location)
    if not np.isfinite(result):
        raise SetFileError(f"entry {value!r} is not finite", location)
    if result < 0:
        raise SetFileError(f"entry {value!r} is negative", location)
    return result


def parse_set_text(text: str) -> MatrixSet:
    """Parse a set file from its text; diagnostics name the offending datum."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SetFileError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None

    if not isinstance(doc, dict):
        raise SetFileError("top level must be an object")
    extra = set(doc) - {"n", "matrices"}
    if extra:
        raise SetFileError(f"unknown top-level fields {sorted(extra)}")
    if "n" not in doc or "matrices" not in doc:
        raise SetFileError("top level needs the fields 'n' and 'matrices'")
    n = doc["n"]
    if not isinstance(n, int) or n < 1:
        raise SetFileError(f"'n' must be a positive integer, got {n!r}")
    raw_matrices = doc["matrices"]
    if not isinstance(raw_matrices, list) or not raw_matrices:
        raise SetFileError("'matrices' must be a nonempty list")

    members = []
    seen = set()
    for mi, rec in enumerate(raw_matrices):
        where = f"matrices[{mi}]"
        if not isinstance(rec, dict) or set(rec) != {"name", "rows"}:
            raise SetFileError("each matrix needs exactly the fields 'name' and 'rows'", where)
        name = rec["name"]
        if not isinstance(name, str) or not name:
            raise SetFileError("matrix name must be a nonempty string", where)
        if name in seen:
            raise SetFileError(f"duplicate matrix name {name!r}", where)
        seen.add(name)
        rows = rec["rows"]
        if not isinstance(rows, list) or len(rows) != n:
            raise SetFileError(f"expected {n} rows", f"{where}.rows")
        entries = np.zeros((n, n))
        for ri, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != n:
                raise SetFileError(f"expected {n} entries", f"{where}.rows[{ri}]")
            for ci, value in enumerate(row):
                entries[ri, ci] = _parse_entry(value, f"{where}.rows[{ri}][{ci}]")
        members.append((name, MaxMatrix(entries)))
    return MatrixSet(members)


def load_set(path) -> MatrixSet:
    with open(path, encoding="utf-8") as handle:
        return parse_set_text(handle.read())


def set_to_dict(psi: MatrixSet) -> dict:
    return {
        "n": psi.n,
        "matrices": [
            {"name": name, "rows": [list(row) for row in mat.data.tolist()]}
            for name, mat in psi
        ],
    }


def set_from_dict(doc: dict) -> MatrixSet:
    return parse_set_text(json.dumps(doc))


def serialize_set(psi: MatrixSet) -> str:
    """Round-trips bit-exactly: floats are emitted with shortest repr."""
    return json.dumps(set_to_dict(psi), indent=2) + "\n"


def dump_set(psi: MatrixSet, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(serialize_set(psi))


# --------------------------------------------------------------------------
# certificates


def make_certificate(kind: str, payload: dict, tolerance: float) -> dict:
    if kind not in CERTIFICATE_KINDS:
        raise ValueError(f"unknown certificate kind {kind!r}")
    return {
        "kind": kind,
        "tool_version": TOOL_VERSION,
        "tolerance_used": tolerance,
        "payload": payload,
    }


def mu_certificate(psi: MatrixSet, name: str, result: CycleMeanResult, tolerance: float) -> dict:
    return make_certificate(
        "mu",
        {
            "set": set_to_dict(psi),
            "matrix": name,
            "mu": result.mu,
            "witness_cycle": list(result.witness_cycle),
        },
        tolerance,
    )


def jsr_certificate(psi: MatrixSet, result: CycleMeanResult, tolerance: float,
                    bounds: JsrBounds | None = None) -> dict:
    payload = {
        "set": set_to_dict(psi),
        "mu": result.mu,
        "witness_cycle": list(result.witness_cycle),
    }
    if bounds is not None:
        payload["bounds"] = {"m": bounds.m, "lower": bounds.lower, "upper": bounds.upper}
    return make_certificate("jsr", payload, tolerance)


def barabanov_certificate(psi: MatrixSet, nu: WeightedMaxNorm, mu: float, tolerance: float,
                          verified: dict | None = None) -> dict:
    payload = {
        "set": set_to_dict(psi),
        "mu": mu,
        "weights": list(nu.weights.data.tolist()),
    }
    if verified is not None:
        payload["verified"] = verified
    return make_certificate("barabanov", payload, tolerance)


def finiteness_certificate(psi: MatrixSet, cert: FinitenessCertificate, mu: float,
                           tolerance: float) -> dict:
    return make_certificate(
        "finiteness",
        {
            "set": set_to_dict(psi),
            "mu": mu,
            "k": cert.k,
            "region_cycle": list(cert.region_cycle),
            "matrix_names": list(cert.matrix_names),
            "product_rows": [list(row) for row in cert.product.data.tolist()],
        },
        tolerance,
    )


def hausdorff_certificate(psi: MatrixSet, phi: MatrixSet, report: HausdorffReport,
                          tolerance: float) -> dict:
    return make_certificate(
        "hausdorff",
        {
            "set_a": set_to_dict(psi),
            "set_b": set_to_dict(phi),
            "distance": report.distance,
            "argmax_side": report.argmax_side,
            "argmax_member": report.argmax_member,
        },
        tolerance,
    )


def nonexistence_certificate(psi: MatrixSet, cert: NonexistenceCertificate,
                             tolerance: float) -> dict:
    payload = {
        "set": set_to_dict(psi),
        "nonexistent": cert.obstructed,
    }
    if cert.obstructed:
        payload["witness"] = list(cert.witness.data.tolist())
        payload["eigenvalue"] = cert.eigenvalue
        payload["class_nodes"] = list(cert.class_nodes)
    return make_certificate("nonexistence", payload, tolerance)


def probe_certificate(report: dict, tolerance: float) -> dict:
    return make_certificate("probe", report, tolerance)


def write_certificate(cert: dict, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(cert, handle, indent=2)
        handle.write("\n")


def load_certificate(path) -> dict:
    with open(path, encoding="utf-8") as handle:
        doc = json.load(handle)
    if not isinstance(doc, dict) or "kind" not in doc or "payload" not in doc:
        raise CertificateError("not a certificate: missing 'kind' or 'payload'")
    return doc


def certificate_problems(cert: dict) -> list[str]:
    """Re-check a certificate against its embedded data.

    Returns a list of human-readable problems; an empty list means the
    certificate's claims reproduce.
    """
    kind = cert.get("kind")
    if kind not in CERTIFICATE_KINDS:
        return [f"unknown certificate kind {kind!r}"]
    tol = resolve_tolerance(cert.get("tolerance_used"))
    payload = cert.get("payload", {})
    try:
        checker = _CHECKERS[kind]
    except KeyError:
        return [f"no checker for kind {kind!r}"]
    try:
        return checker(payload, tol)
    except (KeyError, TypeError, ValueError) as exc:
        return [f"malformed payload: {exc}"]


def verify_certificate(cert: dict) -> None:
    problems = certificate_problems(cert)
    if problems:
        raise CertificateError("certificate failed re-verification", problems)


def _witness_mean(data: np.ndarray, cycle: list[int]) -> float:
    prod = 1.0
    k = len(cycle)
    for idx in range(k):
        prod *= data[cycle[idx], cycle[(idx + 1) % k]]
    return prod ** (1.0 / k)


def _check_mu_like(payload: dict, tol: float, data: np.ndarray) -> list[str]:
    problems = []
    mu = float(payload["mu"])
    cycle = [int(i) for i in payload["witness_cycle"]]
    if cycle:
        if len(set(cycle)) != len(cycle):
            problems.append("witness cycle repeats a node")
        elif not close(_witness_mean(data, cycle), mu, tol):
            problems.append("witness cycle does not attain the claimed value")
    elif mu != 0.0:
        problems.append("empty witness with a nonzero value")
    if not close(cycle_mean(data, tol=tol).mu, mu, tol):
        problems.append("recomputed cycle mean disagrees with the claim")
    return problems


def _check_mu(payload: dict, tol: float) -> list[str]:
    psi = set_from_dict(payload["set"])
    name = payload["matrix"]
    return _check_mu_like(payload, tol, psi.member(name).data)


def _check_jsr(payload: dict, tol: float) -> list[str]:
    psi = set_from_dict(payload["set"])
    return _check_mu_like(payload, tol, aggregate(psi).data)


def _check_barabanov(payload: dict, tol: float) -> list[str]:
    psi = set_from_dict(payload["set"])
    problems = []
    weights = np.asarray(payload["weights"], dtype=np.float64)
    mu = float(payload["mu"])
    if not (weights > 0).all():
        problems.append("weights are not strictly positive")
        return problems
    nu = WeightedMaxNorm(MaxVector(weights))
    if not close(jsr(psi, tol=tol), mu, tol):
        problems.append("claimed radius disagrees with the recomputed one")
    if not verify_extremal(psi, nu, samples=32, tol=tol):
        problems.append("norm is not extremal for the set")
    if not verify_barabanov(psi, nu, samples=32, tol=tol):
        problems.append("norm fails the exact-attainment check")
    return problems


def _check_finiteness(payload: dict, tol: float) -> list[str]:
    psi = set_from_dict(payload["set"])
    problems = []
    k = int(payload["k"])
    names = list(payload["matrix_names"])
    region_cycle = [int(i) for i in payload["region_cycle"]]
    product = np.asarray(payload["product_rows"], dtype=np.float64)
    mu = float(payload["mu"])
    if not (1 <= k <= psi.n):
        problems.append(f"length {k} outside 1..{psi.n}")
    if len(names) != k or len(region_cycle) != k:
        problems.append("length fields disagree")
    if len(set(region_cycle)) != len(region_cycle):
        problems.append("region cycle repeats a region")
    refold = psi.member(names[0]).data
    for name in names[1:]:
        refold = kernels.max_mul(psi.member(name).data, refold)
    if not allclose(refold, product, tol):
        problems.append("product does not equal the fold of the named members")
    if not close(cycle_mean(product, tol=tol).mu ** (1.0 / k), mu, tol):
        problems.append("product does not attain the claimed radius")
    if not close(jsr(psi, tol=tol), mu, tol):
        problems.append("claimed radius disagrees with the recomputed one")
    return problems


def _check_hausdorff(payload: dict, tol: float) -> list[str]:
    left = set_from_dict(payload["set_a"])
    right = set_from_dict(payload["set_b"])
    report = hausdorff(left, right)
    problems = []
    if not close(report.distance, float(payload["distance"]), tol):
        problems.append("recomputed distance disagrees")
    return problems


def _check_nonexistence(payload: dict, tol: float) -> list[str]:
    from .jsr import barabanov_nonexistence

    psi = set_from_dict(payload["set"])
    problems = []
    claimed = bool(payload["nonexistent"])
    if claimed:
        witness = np.asarray(payload["witness"], dtype=np.float64)
        lam = float(payload["eigenvalue"])
        if witness.shape != (psi.n,) or (witness < 0).any() or not (witness > 0).any():
            problems.append("witness is not a nonzero nonnegative vector")
            return problems
        image = max_apply(aggregate(psi), MaxVector(witness)).data
        if not allclose(image, lam * witness, tol):
            problems.append("witness fails the eigen equation")
        mu = jsr(psi, tol=tol)
        if not lam < mu:
            problems.append("witness eigenvalue does not sit below the radius")
    else:
        if barabanov_nonexistence(psi, tol=tol).obstructed:
            problems.append("obstruction exists but the certificate claims none")
    return problems


def _check_probe(payload: dict, tol: float) -> list[str]:
    problems = []
    checks = payload.get("checks")
    if not isinstance(checks, list):
        return ["probe payload needs a 'checks' list"]
    passed = sum(1 for c in checks if c.get("status") == "pass")
    failed = sum(1 for c in checks if c.get("status") == "fail")
    if passed != payload.get("passed") or failed != payload.get("failed"):
        problems.append("pass/fail counts disagree with the check list")
    return problems


_CHECKERS = {
    "mu": _check_mu,
    "jsr": _check_jsr,
    "barabanov": _check_barabanov,
    "finiteness": _check_finiteness,
    "hausdorff": _check_hausdorff,
    "nonexistence": _check_nonexistence,
    "probe": _check_probe,
}
