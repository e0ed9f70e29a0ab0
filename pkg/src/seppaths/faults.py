"""Single-fault localization from path-probe outcomes.

A deployed separating-covering system gives every element a distinct,
nonempty signature (the set of paths through it), so the set of failed
probes identifies the faulty element exactly; the all-pass report is
reserved for the healthy state because no signature is empty.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotCovering, NotSeparating, UnknownElement
from .trees import edge
from .verify import (
    Element,
    PathSystem,
    TargetSet,
    covers,
    path_contains,
    separates,
    signatures,
)


def signature_table(fs: PathSystem, ts: TargetSet) -> dict[Element, frozenset[int]]:
    """The injective element -> signature map of a deployed system.

    Refuses systems that do not separate and cover the target set, since
    decoding would be ambiguous.
    """
    sep = separates(fs, ts)
    if not sep:
        raise NotSeparating(str(sep))
    cov = covers(fs, ts)
    if not cov:
        raise NotCovering(str(cov))
    return signatures(fs, ts)


@dataclass(frozen=True)
class ProbeReport:
    """One bit per path: True when the probe traversed its path successfully."""

    outcomes: tuple[bool, ...]

    @property
    def failed(self) -> frozenset[int]:
        return frozenset(i for i, ok in enumerate(self.outcomes) if not ok)


def simulate_probes(fs: PathSystem, fault: Element | None) -> ProbeReport:
    """Single-fault model: probe i fails iff the faulty element lies on path i."""
    if fault is None:
        return ProbeReport(tuple(True for _ in fs.paths))
    if isinstance(fault, int):
        if not fs.host.has_vertex(fault):
            raise UnknownElement(f"vertex {fault} not in host")
    else:
        fault = edge(*fault)
        if not fs.host.has_edge(*fault):
            raise UnknownElement(f"edge {fault} not in host")
    return ProbeReport(tuple(not path_contains(p, fault) for p in fs.paths))


@dataclass(frozen=True)
class Diagnosis:
    """NoFault, Identified (with the element), or Inconsistent.

    Inconsistent reports (multi-fault or corruption) echo the failed index
    set; they are a value, not an error.
    """

    kind: str
    element: Element | None
    failed: frozenset[int]

    NO_FAULT = "NoFault"
    IDENTIFIED = "Identified"
    INCONSISTENT = "Inconsistent"


def decode(table: dict[Element, frozenset[int]], report: ProbeReport) -> Diagnosis:
    """Match the failed-probe set against the signature table."""
    failed = report.failed
    if not failed:
        return Diagnosis(Diagnosis.NO_FAULT, None, failed)
    by_signature = {sig: s for s, sig in table.items()}
    if failed in by_signature:
        return Diagnosis(Diagnosis.IDENTIFIED, by_signature[failed], failed)
    return Diagnosis(Diagnosis.INCONSISTENT, None, failed)
