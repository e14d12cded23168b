"""Exact-rational discharging: initial charges, rule sets, ledgers and audits.

Every vertex and face ``x`` starts with ``d(x) - 4``; the total is ``-4 chi``.
Rules move charge along incidences: vertex/face pairs are counted once per
corner and face/face pairs once per shared edge, so an element that meets
another several times sends (or receives) several times.

Elements are ``('v', id)`` or ``('f', index)``; in JSON they become
``"v3"`` / ``"f0"`` and rationals become ``"p/q"`` strings.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Literal

from .embedding import RotationGraph, euler_characteristic
from .structure import classify_3vertex, face_profile

Element = tuple[str, int]
Incidence = Literal["vertex->face", "face->vertex", "face->face"]

F = Fraction


def element_name(x: Element) -> str:
    return f"{x[0]}{x[1]}"


def rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Transfer:
    source: Element
    target: Element
    amount: Fraction
    rule: str

    def to_json(self) -> dict:
        return {"from": element_name(self.source), "to": element_name(self.target),
                "amount": rational(self.amount), "rule": self.rule}


@dataclass
class ChargeLedger:
    initial: dict[Element, Fraction]
    transfers: list[Transfer] = field(default_factory=list)

    @property
    def final(self) -> dict[Element, Fraction]:
        out = dict(self.initial)
        for t in self.transfers:
            out[t.source] -= t.amount
            out[t.target] += t.amount
        return out

    def total_initial(self) -> Fraction:
        return sum(self.initial.values(), F(0))

    def total_final(self) -> Fraction:
        return sum(self.final.values(), F(0))

    def transfers_of(self, x: Element) -> list[Transfer]:
        return [t for t in self.transfers if x in (t.source, t.target)]


class _Ctx:
    """Per-graph lookups shared by rule predicates."""

    def __init__(self, G: RotationGraph):
        self.G = G
        self.faces = G.faces.faces
        self._profile: dict[int, tuple[int, ...]] = {}

    def deg(self, v: int) -> int:
        return self.G.degree(v)

    def fdeg(self, f: int) -> int:
        return self.faces[f].degree

    def profile(self, f: int) -> tuple[int, ...]:
        if f not in self._profile:
            self._profile[f] = face_profile(self.G, f)
        return self._profile[f]

    def triangle(self, f: int, test: Callable[[tuple[int, ...]], bool]) -> bool:
        return self.fdeg(f) == 3 and test(self.profile(f))


Predicate = Callable[[_Ctx, int, int], bool]


@dataclass(frozen=True)
class Rule:
    """One row of a rule table: ``amount`` per incidence where ``test`` holds."""

    id: str
    incidence: Incidence
    amount: Fraction
    sender: str
    receiver: str
    test: Predicate = field(compare=False, repr=False)


@dataclass(frozen=True)
class RuleSet:
    id: str
    rules: tuple[Rule, ...]

    def amounts(self) -> set[Fraction]:
        return {r.amount for r in self.rules}

    def amount(self, rule_id: str, receiver: str | None = None) -> Fraction:
        rows = [r for r in self.rules if r.id == rule_id and receiver in (None, r.receiver)]
        if len({r.amount for r in rows}) != 1:
            raise KeyError(f"{self.id}: no unique amount for {rule_id} {receiver or ''}".rstrip())
        return rows[0].amount


def _vf(rule_id, amount, sender, receiver, test) -> Rule:
    return Rule(rule_id, "vertex->face", amount, sender, receiver, test)


def _fv(rule_id, amount, sender, receiver, test) -> Rule:
    return Rule(rule_id, "face->vertex", amount, sender, receiver, test)


def _five_sends(rule_id: str, receiver: str, amount: Fraction,
                shape: Callable[[tuple[int, ...]], bool]) -> Rule:
    return _vf(rule_id, amount, "5-vertex", receiver,
               lambda c, v, f: c.deg(v) == 5 and c.triangle(f, shape))


def _all5(p):
    return p[0] >= 5


def _is455(p):
    return p == (4, 5, 5)


def _is45x(lo: int, hi: int | None):
    return lambda p: p[0] == 4 and p[1] == 5 and p[2] >= lo and (hi is None or p[2] <= hi)


def _t1_good_bad(mode: str, good: Fraction, bad: Fraction) -> tuple[Rule, ...]:
    def status(c: _Ctx, v: int) -> str:
        return classify_3vertex(c.G, v, mode)

    return (
        _fv("R1", good, "5+-face", "good 3-vertex",
            lambda c, f, v: c.fdeg(f) >= 5 and status(c, v) == "good"),
        _fv("R1", bad, "5+-face", "bad 3-vertex",
            lambda c, f, v: c.fdeg(f) >= 5 and status(c, v) == "bad"),
    )


RULESETS: dict[str, RuleSet] = {
    "T0_13": RuleSet("T0_13", (
        _five_sends("R1", "(5+,5+,5+)-face", F(1, 3), _all5),
        _five_sends("R1", "(4,5,5)-face", F(1, 2), _is455),
        _five_sends("R1", "(4,5,6+)-face", F(5, 12), _is45x(6, None)),
        _vf("R2", F(7, 12), "6+-vertex", "3-face", lambda c, v, f: c.deg(v) >= 6 and c.fdeg(f) == 3),
        _fv("R3", F(11, 60), "5+-face", "vertex", lambda c, f, v: c.fdeg(f) >= 5),
    )),
    "T0_2": RuleSet("T0_2", (
        _five_sends("R1", "(5+,5+,5+)-face", F(1, 3), _all5),
        _five_sends("R1", "(4,5,5)-face", F(1, 2), _is455),
        _five_sends("R1", "(4,5,6)-face", F(5, 12), _is45x(6, 6)),
        _five_sends("R1", "(4,5,7+)-face", F(61, 150), _is45x(7, None)),
        _vf("R2", F(7, 12), "6-vertex", "3-face", lambda c, v, f: c.deg(v) == 6 and c.fdeg(f) == 3),
        _vf("R3", F(89, 150), "7+-vertex", "3-face", lambda c, v, f: c.deg(v) >= 7 and c.fdeg(f) == 3),
        _fv("R4", F(11, 60), "5-face", "vertex", lambda c, f, v: c.fdeg(f) == 5),
        _fv("R5", F(49, 150), "6+-face", "vertex", lambda c, f, v: c.fdeg(f) >= 6),
    )),
    "T1_1": RuleSet("T1_1", (
        _fv("R1", F(1, 3), "5+-face", "3-vertex", lambda c, f, v: c.fdeg(f) >= 5 and c.deg(v) == 3),
    )),
    "T1_2": RuleSet("T1_2", _t1_good_bad("four_face", F(1, 3), F(1, 2))),
    "T1_3": RuleSet("T1_3", _t1_good_bad("three_face", F(1, 3), F(1, 2)) + (
        Rule("R1", "face->face", F(1, 3), "5+-face", "3-face",
             lambda c, f, g: c.fdeg(f) >= 5 and c.fdeg(g) == 3),
    )),
}

THEOREM_OF = {"T0_13": "T0", "T0_2": "T0", "T1_1": "T1", "T1_2": "T1", "T1_3": "T1"}


def get_ruleset(ruleset: str | RuleSet) -> RuleSet:
    if isinstance(ruleset, RuleSet):
        return ruleset
    try:
        return RULESETS[ruleset]
    except KeyError:
        raise ValueError(f"unknown ruleset {ruleset!r}; choose from {', '.join(RULESETS)}") from None


def initial_charges(G: RotationGraph) -> ChargeLedger:
    init: dict[Element, Fraction] = {}
    for v in G.vertices:
        init[("v", v)] = F(G.degree(v) - 4)
    for i, face in enumerate(G.faces.faces):
        init[("f", i)] = F(face.degree - 4)
    return ChargeLedger(init)


def apply_rules(G: RotationGraph, ruleset: str | RuleSet) -> ChargeLedger:
    rs = get_ruleset(ruleset)
    ctx = _Ctx(G)
    ledger = initial_charges(G)
    out = ledger.transfers
    by_kind = defaultdict(list)
    for r in rs.rules:
        by_kind[r.incidence].append(r)
    for v in G.vertices:
        for f in G.faces.corners[v]:
            for r in by_kind["vertex->face"]:
                if r.test(ctx, v, f):
                    out.append(Transfer(("v", v), ("f", f), r.amount, r.id))
            for r in by_kind["face->vertex"]:
                if r.test(ctx, f, v):
                    out.append(Transfer(("f", f), ("v", v), r.amount, r.id))
    if by_kind["face->face"]:
        for e in G.edges:
            f1, f2 = G.faces.edge_sides[e]
            if f1 == f2:
                continue
            for a, b in ((f1, f2), (f2, f1)):
                for r in by_kind["face->face"]:
                    if r.test(ctx, a, b):
                        out.append(Transfer(("f", a), ("f", b), r.amount, r.id))
    return ledger


@dataclass
class NegativeElement:
    element: Element
    final: Fraction
    transfers: list[Transfer]
    explained_by: dict | None

    def to_json(self) -> dict:
        return {"element": element_name(self.element), "final": rational(self.final),
                "transfers": [t.to_json() for t in self.transfers],
                "explained_by": self.explained_by}


@dataclass
class AuditReport:
    ruleset: str
    characteristic: int
    total_initial: Fraction
    total_final: Fraction
    conservation: bool
    negatives: list[NegativeElement]
    positive_exists: bool
    first_config: dict | None
    ledger: ChargeLedger = field(repr=False)

    def to_json(self) -> dict:
        return {
            "ruleset": self.ruleset,
            "characteristic": self.characteristic,
            "total_initial": rational(self.total_initial),
            "total_final": rational(self.total_final),
            "conservation": self.conservation,
            "negatives": [n.to_json() for n in self.negatives],
            "property_II": self.positive_exists,
            "first_config": self.first_config,
            "final": {element_name(x): rational(q) for x, q in self.ledger.final.items()},
        }


def audit(G: RotationGraph, ruleset: str | RuleSet) -> AuditReport:
    """Run a rule set and report conservation, negative elements and reducible witnesses.

    A negative element is *explained* by the first configuration (in the
    detector scan order of the matching theorem) whose deleted set touches
    it: the vertex itself, or a boundary vertex of the face.
    """
    from .reducer import iter_configs

    rs = get_ruleset(ruleset)
    ledger = apply_rules(G, rs)
    final = ledger.final
    chi = euler_characteristic(G)
    total_i, total_f = ledger.total_initial(), ledger.total_final()
    theorem = THEOREM_OF.get(rs.id)
    configs = list(iter_configs(G, theorem)) if theorem else []

    def touches(x: Element) -> dict | None:
        near = {x[1]} if x[0] == "v" else set(G.faces.faces[x[1]].vertices)
        for m in configs:
            if m.deleted & near:
                return m.to_json()
        return None

    negatives = [NegativeElement(x, q, ledger.transfers_of(x), touches(x))
                 for x, q in final.items() if q < 0]
    return AuditReport(
        ruleset=rs.id, characteristic=chi, total_initial=total_i, total_final=total_f,
        conservation=total_i == total_f == -4 * chi,
        negatives=negatives,
        positive_exists=any(q > 0 for q in final.values()),
        first_config=configs[0].to_json() if configs else None,
        ledger=ledger,
    )
