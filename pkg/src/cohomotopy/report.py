"""Structured report assembled by the CLI, with text and JSON renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .engine import compute, compute_all, cross_check
from .manifold import BLOCK_SCHEMA, ManifoldDescriptor, validate
from .results import CohomotopyResult, result_from_dict
from .splitting import OracleBoundExceeded, homology_check, normalize, orbit_oracle, suspension_splitting


@dataclass
class Report:
    descriptor: dict
    validation: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    splitting: dict | None = None
    results: dict[int, CohomotopyResult] = field(default_factory=dict)
    checks: dict[str, dict] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.validation and all(c.get("ok", True) for c in self.checks.values())

    def to_dict(self) -> dict:
        return {
            "descriptor": self.descriptor,
            "validation": {"errors": list(self.validation), "warnings": list(self.warnings)},
            "splitting": self.splitting,
            "cohomotopy": {str(i): r.to_dict() for i, r in sorted(self.results.items())},
            "checks": self.checks,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        return cls(
            data["descriptor"],
            list(data["validation"]["errors"]),
            list(data["validation"]["warnings"]),
            data.get("splitting"),
            {int(i): result_from_dict(r) for i, r in data.get("cohomotopy", {}).items()},
            dict(data.get("checks", {})),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)

    def to_text(self) -> str:
        d = self.descriptor
        T = " ⊕ ".join(f"Z/{p}{'^' + str(r) if r > 1 else ''}" for p, r in d.get("torsion", [])) or "0"
        lines = [f"manifold: n={d['n']} l={d['l']} k={d['k']} c={d.get('c', 0)} T={T} spin={d.get('spin', True)}"]
        for w in self.warnings:
            lines.append(f"warning: {w}")
        for v in self.validation:
            lines.append(f"invalid: {v}")
        if self.splitting is not None:
            lines.append(f"ΣM ≃ {self.splitting['render']}")
            lines.append(f"  {self.splitting['cofibre']}")
            na = self.splitting["normalized"]
            blocks = ", ".join(f"{b.name}={na['blocks'].get(b.name, [])}" for b in BLOCK_SCHEMA[d["n"]])
            lines.append(f"  normalized attach: {blocks} (r_j0={na['r_j0']}, r_j1={na['r_j1']}, δ={na['delta']})")
        if self.results:
            lines.append("cohomotopy:")
            for i, r in sorted(self.results.items()):
                lines.append(f"  π^{i}(M): {r.render()}")
        for name, c in sorted(self.checks.items()):
            status = "ok" if c.get("ok", True) else "FAILED"
            detail = "; ".join(c.get("details", []))
            lines.append(f"check {name}: {status}" + (f" ({detail})" if detail else ""))
        return "\n".join(lines) + "\n"


def build_report(
    d: ManifoldDescriptor,
    degree: int | None = None,
    check: bool = False,
    oracle: bool = False,
) -> Report:
    violations = validate(d)
    rep = Report(
        d.to_dict(),
        [str(v) for v in violations if v.severity == "error"],
        [f"{v.path}: {v.rule}" for v in violations if v.severity != "error"],
    )
    if rep.validation:
        return rep
    w = suspension_splitting(d)
    na = w.cofibre.attachment
    rep.splitting = {
        "render": w.render(),
        "cofibre": w.cofibre.describe(),
        "normalized": na.to_dict(),
        "wedge": w.to_dict(),
    }
    rep.results = {degree: compute(d, degree)} if degree is not None else compute_all(d)
    if check:
        mism = homology_check(w, d)
        rep.checks["homology"] = {"ok": not mism, "details": [str(m) for m in mism]}
        cross = cross_check(d)
        rep.checks["cross_engine"] = {"ok": not cross, "details": cross}
    if oracle:
        v = d.attaching_vector()
        try:
            orb = orbit_oracle(v)
        except OracleBoundExceeded as exc:
            rep.checks["oracle"] = {"ok": True, "details": [f"skipped: {exc}"]}
        else:
            nv = normalize(v).vector
            good = nv in orb and nv == orb.canonical()
            rep.checks["oracle"] = {"ok": good, "details": [f"orbit size {len(orb)}"]}
    return rep
