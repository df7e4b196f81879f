"""Scenario x variant matrix: execution, expected verdicts and text/table rendering."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from akasim.harness.scenarios import PROPERTY_OF, SCENARIOS, ScenarioOutcome, run_scenario
from akasim.variants import Variant

V = Variant
_ALL = frozenset(Variant)

# variants on which each attack is expected to work, one entry per property box
EXPECTED_SUCCESS = {
    "false_base_station": frozenset({V.GSM}),
    "replay": frozenset({V.GSM}),
    "cross_network_key_reuse": frozenset({V.GSM, V.UMTS, V.ECGSM_IOT, V.EAP_AKA}),
    "home_presence_check": frozenset({V.GSM, V.UMTS, V.ECGSM_IOT, V.EPS}),
    "identity_exposure": _ALL - {V.FIVEG_AKA, V.FIVEG_EAP_AKA_PRIME},
    "amf_separation": frozenset({V.GSM, V.UMTS, V.ECGSM_IOT, V.EAP_AKA}),
}


@dataclass
class MatrixRow:
    scenario: str
    variant: Variant
    attack_succeeded: bool | None  # None when seeds disagree
    evidence_file: str
    outcomes: list[ScenarioOutcome] = field(default_factory=list, repr=False)

    @property
    def expected(self) -> bool:
        return self.variant in EXPECTED_SUCCESS[self.scenario]

    @property
    def label(self) -> str:
        if self.attack_succeeded is None:
            return "MIXED"
        return "SUCCEEDS" if self.attack_succeeded else "BLOCKED"


@dataclass
class MatrixReport:
    seeds: list[int]
    rows: list[MatrixRow]

    def cell(self, scenario: str, variant: Variant | str) -> MatrixRow:
        variant = Variant(variant)
        for row in self.rows:
            if row.scenario == scenario and row.variant is variant:
                return row
        raise KeyError((scenario, variant))

    def scenarios(self) -> list[str]:
        return list(dict.fromkeys(r.scenario for r in self.rows))

    def variants(self) -> list[Variant]:
        return list(dict.fromkeys(r.variant for r in self.rows))

    def deviations(self) -> list[MatrixRow]:
        return [r for r in self.rows if r.attack_succeeded is not r.expected]

    def check_complete(self) -> None:
        have = {(r.scenario, r.variant) for r in self.rows}
        missing = [(s, v) for s in self.scenarios() for v in Variant if (s, v) not in have]
        if missing:
            raise AssertionError(f"matrix incomplete: {missing}")

    def property_matrix(self) -> dict[str, dict[Variant, bool | None]]:
        """Property -> variant -> holds; a property holds where its attack is blocked."""
        out: dict[str, dict[Variant, bool | None]] = {}
        for row in self.rows:
            holds = None if row.attack_succeeded is None else not row.attack_succeeded
            out.setdefault(PROPERTY_OF[row.scenario], {})[row.variant] = holds
        return out

    def render_text(self) -> str:
        variants = self.variants()
        w = max(len(s) for s in list(self.scenarios()) + list(PROPERTY_OF.values())) + 2
        cw = {v: max(len(v.value), len("SUCCEEDS")) + 2 for v in variants}
        lines = [f"# attack matrix seeds={','.join(map(str, self.seeds))}",
                 "scenario".ljust(w) + "".join(v.value.ljust(cw[v]) for v in variants).rstrip()]
        for s in self.scenarios():
            lines.append(s.ljust(w) + "".join(self.cell(s, v).label.ljust(cw[v])
                                              for v in variants).rstrip())
        lines += ["", "# property matrix (yes = property holds, attack blocked)",
                  "property".ljust(w) + "".join(v.value.ljust(cw[v]) for v in variants).rstrip()]
        for prop, cells in self.property_matrix().items():
            marks = ["?" if cells[v] is None else ("yes" if cells[v] else "no") for v in variants]
            cells_txt = "".join(m.ljust(cw[v]) for m, v in zip(marks, variants))
            lines.append(prop.ljust(w) + cells_txt.rstrip())
        dev = self.deviations()
        lines += ["", f"# deviations from expected: {len(dev)}"]
        lines += [f"#   {r.scenario} {r.variant.value} got {r.label}" for r in dev]
        return "\n".join(lines) + "\n"

    def render_table(self) -> str:
        lines = ["scenario\tvariant\tattack_succeeded\tevidence_file"]
        for r in self.rows:
            flag = "mixed" if r.attack_succeeded is None else str(r.attack_succeeded).lower()
            lines.append(f"{r.scenario}\t{r.variant.value}\t{flag}\t{r.evidence_file}")
        return "\n".join(lines) + "\n"

    def write_evidence(self, out_dir: str | Path) -> None:
        out_dir = Path(out_dir)
        for row in self.rows:
            path = out_dir / row.evidence_file
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text("".join(o.evidence_text() for o in row.outcomes))


def run_matrix(seeds, scenarios=None, variants=None) -> MatrixReport:
    seeds = list(seeds)
    if not seeds:
        raise ValueError("at least one seed is required")
    rows = []
    for name in scenarios or SCENARIOS:
        for variant in variants or Variant:
            variant = Variant(variant)
            outcomes = [run_scenario(name, variant, s) for s in seeds]
            flags = {o.attack_succeeded for o in outcomes}
            verdict = flags.pop() if len(flags) == 1 else None
            evidence = f"evidence/{name}__{variant.value}.txt"
            rows.append(MatrixRow(name, variant, verdict, evidence, outcomes))
    report = MatrixReport(seeds, rows)
    if scenarios is None and variants is None:
        report.check_complete()
    return report
