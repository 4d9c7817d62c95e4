"""Sweep and moduli reports with deterministic JSON / text serialization.

Failures carry their inputs and the nonzero residual in canonical text form,
so a failing case is reproducible golden data.  With deterministic=True the
elapsed time is zeroed, making byte-identical output for identical inputs
and seeds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Failure:
    inputs: tuple[str, ...]
    residual: str

    def to_dict(self):
        return {"inputs": list(self.inputs), "residual": self.residual}


@dataclass
class SweepReport:
    sweep: str
    params: dict
    checked: int
    failures: list[Failure] = field(default_factory=list)
    elapsed_ms: int = 0
    seed: int | None = None
    summary: dict | None = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def sort_failures(self):
        self.failures.sort(key=lambda f: f.inputs)

    def to_dict(self, deterministic: bool = False) -> dict:
        d = {
            "schema_version": SCHEMA_VERSION,
            "sweep": self.sweep,
            "params": self.params,
            "checked": self.checked,
            "failures": [f.to_dict() for f in self.failures],
            "elapsed_ms": 0 if deterministic else self.elapsed_ms,
            "seed": self.seed,
        }
        if self.summary is not None:
            d["summary"] = self.summary
        return d

    def to_text(self, deterministic: bool = False) -> str:
        lines = [f"sweep: {self.sweep}"]
        for k in sorted(self.params):
            lines.append(f"  {k} = {self.params[k]}")
        lines.append(f"  checked: {self.checked}")
        if self.seed is not None:
            lines.append(f"  seed: {self.seed}")
        if self.summary:
            for k in sorted(self.summary):
                lines.append(f"  {k}: {self.summary[k]}")
        if not deterministic:
            lines.append(f"  elapsed_ms: {self.elapsed_ms}")
        if self.failures:
            lines.append(f"  FAIL ({len(self.failures)} failures)")
            for f in self.failures:
                lines.append(f"    {', '.join(f.inputs)} -> {f.residual}")
        else:
            lines.append("  PASS")
        return "\n".join(lines) + "\n"


@dataclass
class ModuliReport:
    n: int
    dim_inv: int
    dim_leaf: int
    casimir_codim: int | None
    max_len_reached: int
    stabilized: bool
    samples: int
    seed: int
    trace: list[dict] = field(default_factory=list)
    elapsed_ms: int = 0

    def to_dict(self, deterministic: bool = False) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "n": self.n,
            "dim_inv": self.dim_inv,
            "dim_leaf": self.dim_leaf,
            "casimir_codim": self.casimir_codim,
            "max_len_reached": self.max_len_reached,
            "stabilized": self.stabilized,
            "samples": self.samples,
            "seed": self.seed,
            "trace": self.trace,
            "elapsed_ms": 0 if deterministic else self.elapsed_ms,
        }

    def to_text(self, deterministic: bool = False) -> str:
        lines = [
            f"moduli dimensions at N = {self.n}",
            f"  dim_inv = {self.dim_inv}",
            f"  dim_leaf = {self.dim_leaf}",
            f"  casimir_codim = {self.casimir_codim}",
            f"  word length reached: {self.max_len_reached}"
            + ("" if self.stabilized else " (NOT stabilized)"),
            f"  samples: {self.samples}  seed: {self.seed}",
            "  trace (len: dim_inv dim_leaf): "
            + ", ".join(f"{t['len']}: {t['dim_inv']} {t['dim_leaf']}" for t in self.trace),
        ]
        if not deterministic:
            lines.append(f"  elapsed_ms: {self.elapsed_ms}")
        return "\n".join(lines) + "\n"


def report_emit(report, fmt: str = "json", deterministic: bool = False) -> bytes:
    """Serialize a report; identical inputs and seeds give identical bytes
    when deterministic is set."""
    if fmt == "json":
        return (
            json.dumps(report.to_dict(deterministic=deterministic), indent=2, sort_keys=False)
            + "\n"
        ).encode()
    if fmt == "text":
        return report.to_text(deterministic=deterministic).encode()
    raise ValueError(f"unknown format {fmt!r}")
