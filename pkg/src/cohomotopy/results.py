"""Result values shared by the stable and cohomotopy engines.

Each result knows how to render itself, serialize to a tagged dict and
report the set of groups it allows (``possible_groups``), which is what the
cross-engine comparison uses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .abelian import FgAbGroup, direct_sum


def _group_key(g: FgAbGroup):
    return (g.free_rank, g.order or 0, g.invariant_factors())


def _groups(gs) -> tuple[FgAbGroup, ...]:
    return tuple(sorted(set(gs), key=_group_key))


@dataclass(frozen=True)
class ExactGroup:
    group: FgAbGroup
    display: str | None = None
    provenance: str = ""
    kind: str = field(default="exact", init=False)

    def render(self) -> str:
        return self.display or str(self.group)

    def possible_groups(self) -> tuple[FgAbGroup, ...] | None:
        return (self.group,)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "group": self.group.to_dict(),
            "display": self.render(),
            "provenance": self.provenance,
        }


@dataclass(frozen=True)
class Extension:
    """0 → sub → E → quot → 0, optionally with a known direct complement.

    The full answer is ``complement ⊕ E``.  ``sub`` lists candidate
    subgroups (one entry when known).  ``quot`` is None when it is only known
    symbolically, in which case ``quot_label`` names it and ``needs`` names
    the missing input.  ``middle`` lists candidate E (empty when symbolic).
    """

    sub: tuple[FgAbGroup, ...]
    quot: FgAbGroup | None
    split: str  # "yes" | "no" | "unknown"
    middle: tuple[FgAbGroup, ...] = ()
    provenance: str = ""
    complement: FgAbGroup = FgAbGroup()
    quot_label: str | None = None
    sub_label: str | None = None
    needs: str | None = None
    notes: tuple[str, ...] = ()
    kind: str = field(default="extension", init=False)

    def __post_init__(self):
        if self.split not in ("yes", "no", "unknown"):
            raise ValueError(f"split must be yes/no/unknown, got {self.split!r}")
        object.__setattr__(self, "sub", _groups(self.sub))
        object.__setattr__(self, "middle", _groups(self.middle))

    @property
    def determined(self) -> bool:
        return self.quot is not None and len(self.middle) == 1

    def candidates(self) -> tuple[FgAbGroup, ...]:
        """Candidate values of the full group complement ⊕ E."""
        return _groups(direct_sum(self.complement, m) for m in self.middle)

    def possible_groups(self) -> tuple[FgAbGroup, ...] | None:
        return None if self.quot is None else self.candidates()

    def render(self) -> str:
        if self.quot is None and self.sub == (FgAbGroup(),):
            return f"{self.quot_label or '?'}" + (f"; needs {self.needs}" if self.needs else "")
        if len(self.sub) == 1:
            sub = str(self.sub[0])
        else:
            sub = self.sub_label or "G"
        quot = str(self.quot) if self.quot is not None else (self.quot_label or "?")
        head = f"0 → {sub} → E → {quot} → 0"
        if self.sub_label and len(self.sub) > 1:
            head += f", {self.sub_label} ∈ {{{', '.join(map(str, self.sub))}}}"
        split = {"yes": "split", "no": "non-split", "unknown": "splitting unknown"}[self.split]
        text = f"{head} ({split})"
        if not self.complement.is_trivial:
            text = f"{self.complement} ⊕ E, {text}"
        if self.quot is not None:
            cands = self.candidates()
            if len(cands) == 1:
                text += f"; = {cands[0]}"
            else:
                text += f"; candidates: {', '.join(map(str, cands))}"
        if self.needs:
            text += f"; needs {self.needs}"
        return text

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "sub": [g.to_dict() for g in self.sub],
            "quot": None if self.quot is None else self.quot.to_dict(),
            "split": self.split,
            "middle": [g.to_dict() for g in self.middle],
            "complement": self.complement.to_dict(),
            "provenance": self.provenance,
            "quot_label": self.quot_label,
            "sub_label": self.sub_label,
            "needs": self.needs,
            "notes": list(self.notes),
            "display": self.render(),
        }


@dataclass(frozen=True)
class TorsorOver:
    """A set with a free transitive action of π^degree."""

    degree: int
    acting: Union["ExactGroup", "Extension", None] = None
    note: str = ""
    kind: str = field(default="torsor", init=False)

    def possible_groups(self) -> tuple[FgAbGroup, ...] | None:
        return None

    def cardinalities(self) -> set[int | None]:
        """|set| = |acting group|; None stands for infinite."""
        gs = self.acting.possible_groups() if self.acting is not None else None
        if gs is None:
            return set()
        return {g.order for g in gs}

    def render(self) -> str:
        text = f"torsor over π^{self.degree}"
        if self.acting is not None:
            text += f" ({self.acting.render()})"
        if self.note:
            text += f"; {self.note}"
        return text

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "degree": self.degree,
            "acting": None if self.acting is None else self.acting.to_dict(),
            "note": self.note,
            "display": self.render(),
        }


@dataclass(frozen=True)
class StructuralStatement:
    key: str
    text: str
    data: tuple[tuple[str, object], ...] = ()
    kind: str = field(default="statement", init=False)

    def get(self, name: str, default=None):
        return dict(self.data).get(name, default)

    def possible_groups(self) -> tuple[FgAbGroup, ...] | None:
        return None

    def render(self) -> str:
        return self.text

    def to_dict(self) -> dict:
        return {"kind": self.kind, "key": self.key, "text": self.text, "data": dict(self.data), "display": self.text}


@dataclass(frozen=True)
class Unknown:
    reason: str
    kind: str = field(default="unknown", init=False)

    def possible_groups(self) -> tuple[FgAbGroup, ...] | None:
        return None

    def render(self) -> str:
        return f"unknown: {self.reason}"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "reason": self.reason, "display": self.render()}


CohomotopyResult = Union[ExactGroup, Extension, TorsorOver, StructuralStatement, Unknown]


def result_from_dict(data: dict) -> CohomotopyResult:
    kind = data["kind"]
    if kind == "exact":
        g = FgAbGroup.from_dict(data["group"])
        display = data.get("display")
        return ExactGroup(g, None if display == str(g) else display, data.get("provenance", ""))
    if kind == "extension":
        return Extension(
            tuple(FgAbGroup.from_dict(g) for g in data["sub"]),
            None if data["quot"] is None else FgAbGroup.from_dict(data["quot"]),
            data["split"],
            tuple(FgAbGroup.from_dict(g) for g in data["middle"]),
            data.get("provenance", ""),
            FgAbGroup.from_dict(data["complement"]),
            data.get("quot_label"),
            data.get("sub_label"),
            data.get("needs"),
            tuple(data.get("notes", ())),
        )
    if kind == "torsor":
        acting = data.get("acting")
        return TorsorOver(data["degree"], None if acting is None else result_from_dict(acting), data.get("note", ""))
    if kind == "statement":
        return StructuralStatement(data["key"], data["text"], tuple(data.get("data", {}).items()))
    if kind == "unknown":
        return Unknown(data["reason"])
    raise ValueError(f"unknown result kind {kind!r}")


def trivial(provenance: str = "") -> ExactGroup:
    return ExactGroup(FgAbGroup(), None, provenance)


def agree(a: CohomotopyResult, b: CohomotopyResult) -> bool:
    """Do two results describe the same possibilities?

    Results with concrete group sets must allow the same groups.  Symbolic
    extensions must share sub, split flag and quotient label.
    """
    ga, gb = a.possible_groups(), b.possible_groups()
    if ga is not None and gb is not None:
        return set(ga) == set(gb)
    if isinstance(a, Extension) and isinstance(b, Extension):
        return (a.sub, a.split, a.quot_label, a.complement) == (b.sub, b.split, b.quot_label, b.complement)
    return a == b
