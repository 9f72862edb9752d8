"""Witness file persistence and standalone re-verification.

A witness file records a membership claim together with everything needed
to re-check it by ring arithmetic alone: the target element, the module
spec pairs, and one witness per pair.  For registered claim ids the target
is additionally rebuilt from (claim, n) and compared, so a tampered target
cannot masquerade as the named claim.
"""

import json
from pathlib import Path

from .membership import ModuleSpec, Verdict
from .ring import RingElt


def _prop24a_target(n):
    from .geometry import congruence_rhs
    from .hecke import pairing_obstruction

    return congruence_rhs(n, "eq57", starred=True) - 4 * pairing_obstruction(n)


def _prop24b_target(n):
    from .geometry import congruence_rhs
    from .hecke import pairing_obstruction

    return congruence_rhs(n, "eq581", starred=True) - 2 * pairing_obstruction(n)


def _prop31_target(n):
    from .geometry import congruence_rhs

    return congruence_rhs(n, "eq521", starred=True)


def _prop35_target(n):
    from .geometry import congruence_rhs

    return congruence_rhs(n, "eq525" if n % 2 else "eq526", starred=True)


def _h1_target(n):
    from .hecke import pairing_obstruction

    return pairing_obstruction(n)


def _eq1_target(n):
    from .hecke import coset_rep_sum
    from .ring import ONE_MINUS_S

    return coset_rep_sum(n) * ONE_MINUS_S


TARGET_BUILDERS = {
    "h1": _h1_target,
    "eq1": _eq1_target,
    "prop24a": _prop24a_target,
    "prop24b": _prop24b_target,
    "prop31": _prop31_target,
    "prop35": _prop35_target,
}


def witness_payload(claim: str, n: int, verdict: Verdict) -> dict:
    if not verdict.is_member:
        raise ValueError("only Member verdicts can be persisted")
    return {
        "claim": claim,
        "n": n,
        "target": verdict.target.to_json(),
        "spec": verdict.spec.to_json(),
        "witnesses": [w.to_json() for w in verdict.witnesses],
        "depth": verdict.depth,
    }


def write_witness(out_dir: str | Path, claim: str, n: int, verdict: Verdict) -> Path:
    path = Path(out_dir) / "witness" / claim / f"{n}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = witness_payload(claim, n, verdict)
    path.write_text(json.dumps(payload, sort_keys=True, indent=1) + "\n")
    return path


def check_witness_obj(obj: dict) -> tuple[bool, str]:
    """Re-verify a witness payload by ring arithmetic alone."""
    try:
        claim = obj["claim"]
        n = int(obj["n"])
        target = RingElt.from_json(obj["target"])
        spec = ModuleSpec.from_json(obj["spec"])
        witnesses = [RingElt.from_json(w) for w in obj["witnesses"]]
    except (KeyError, ValueError, TypeError) as exc:
        return False, f"malformed witness file: {exc}"
    if len(witnesses) != len(spec.pairs):
        return False, "witness count does not match spec pairs"
    total = RingElt.zero(target.det)
    for (left, right), w in zip(spec.pairs, witnesses):
        if w.det != target.det:
            return False, "witness determinant mismatch"
        total = total + left * w * right
    if total != target:
        return False, "witness equation does not reproduce the target"
    builder = TARGET_BUILDERS.get(claim)
    if builder is not None and builder(n) != target:
        return False, f"target does not match the registered builder for {claim!r}"
    return True, f"witness for {claim} n={n} verified"


def check_witness_file(path: str | Path) -> tuple[bool, str]:
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        return False, f"cannot read witness file: {exc}"
    return check_witness_obj(obj)
