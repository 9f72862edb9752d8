"""Structured verification reports shared by the checkers and the CLI."""

from dataclasses import dataclass


@dataclass
class VerificationReport:
    """One claim/instance outcome.

    status is one of verified, failed, undetermined; failed reports carry a
    machine-readable locator in `detail`.
    """

    claim: str
    n: int
    status: str
    witness_path: str | None = None
    elapsed: float = 0.0
    depth: int | None = None
    detail: str | None = None

    def sort_key(self):
        return (self.claim, self.n)

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "n": self.n,
            "status": self.status,
            "witness_path": self.witness_path,
            "elapsed": round(self.elapsed, 6),
            "depth": self.depth,
            "detail": self.detail,
        }

    def text_line(self) -> str:
        extra = ""
        if self.depth is not None:
            extra += f" depth={self.depth}"
        if self.witness_path:
            extra += f" witness={self.witness_path}"
        if self.detail:
            extra += f" :: {self.detail}"
        return f"{self.status.upper():12s} {self.claim} n={self.n}{extra}"
