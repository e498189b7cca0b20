# The fixture suite: expected dominant and Hemmer-Nakano dimensions of Schur
# and q-Schur algebras, read from data/schur_fixtures.csv, recomputed and
# compared. Fixtures run concurrently; the report is ordered by the table.

from __future__ import annotations

import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import asdict, dataclass, field
from math import comb
from pathlib import Path
from typing import Any

import pandas as pd
from tqdm import tqdm

from .config import Settings
from .Core.exceptions import InvalidInputError, QHCoversError
from .Core.ring_arith import CoefficientDomain
from .Covers.consistency import (equivalence_implication, functor_is_equivalence, gendo_symmetric_halving,
                                 hn_domdim_bound, rigidity_check, specht_uniqueness_probe, truncation_consistency)
from .Covers.cover import CoverSpec
from .Covers.dimensions import (AT_LEAST, FINITE, MINUS_INFINITY, Dimension, domdim_algebra, global_dimension,
                                hn_dim_proj, hn_dim_standard, inf_domdim_standards, qschur_domdim_formula,
                                schur_domdim_formula, tensor_space_dimensions)
from .Schur.schur_algebra import schur_algebra
from .Schur.tensor_space import tensor_space

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).parent / "data"
FIXTURE_FILE = DATA_DIR / "schur_fixtures.csv"
PROBE_FILE = DATA_DIR / "specht_probes.csv"

SUITES = ("schur", "qschur", "integral", "all")
FAMILIES = ("schur", "qschur")
COLUMNS = ("suite", "family", "n", "d", "ring", "u", "domdim", "hn_proj", "hn_standard", "inf_standards",
           "citation", "opt_in")
PROBE_COLUMNS = ("ring", "d", "nonzero", "citation")

# statements the expected values are taken from
CITATIONS = {
    "schur-domdim-formula": "domdim S_R(n,d) = 2 inf{k : (k+1) 1_R is not a unit, 1 <= k < d}, n >= d",
    "qschur-domdim-formula": "domdim S_{R,q}(n,d) = 2 inf{s : 1 + q + ... + q^s is not a unit, 1 <= s < d}",
    "schur-hn-field": "over a field: hn-proj = domdim - 2 and hn-standard = domdim / 2 - 2",
    "qschur-hn-field": "over a field: hn-proj = domdim - 2 and hn-standard = domdim / 2 - 2 for q-Schur algebras",
    "schur-hn-integral": "over Z_(p): hn-proj = domdim - 1 and hn-standard = domdim / 2 - 1",
    "standards-halving": "domdim A = 2 inf over lambda of domdim Delta(lambda)",
    "semisimple-certificate": "B semisimple gives infinite dominant and Hemmer-Nakano dimensions",
    "specht-char2": "in characteristic 2 Hom_B(F Delta((d)), F Delta((1^d))) is nonzero",
}

PASS, FAIL, ERROR, SKIPPED, INFO = "pass", "fail", "error", "skipped", "info"

BYTES_PER_ENTRY = 8


def _flag(text: str) -> bool:
    value = text.strip().lower()
    if value not in ("true", "false"):
        raise InvalidInputError(f"expected true or false, got {text!r}")
    return value == "true"


def _citations(text: str) -> tuple[str, ...]:
    keys = tuple(k.strip() for k in text.split(";") if k.strip())
    unknown = [k for k in keys if k not in CITATIONS]
    if unknown:
        raise InvalidInputError(f"unknown citation keys {unknown}")
    return keys


@dataclass(frozen=True)
class FixtureRow:
    """One algebra of the table with its expected values ("" when not asserted)."""

    suite: str
    family: str
    n: int
    d: int
    ring: str
    u: str
    domdim: str
    hn_proj: str
    hn_standard: str
    inf_standards: str
    citation: tuple[str, ...]
    opt_in: bool

    @property
    def key(self) -> tuple[str, int, int, str, str]:
        return self.family, self.n, self.d, self.ring, self.u

    @property
    def label(self) -> str:
        return f"{self.family}({self.n},{self.d}) {self.ring} u={self.u}"

    @property
    def rank(self) -> int:
        """Rank of S(n, d): the number of S_d-orbits on pairs of multi-indices."""
        return comb(self.n * self.n + self.d - 1, self.d)

    @property
    def table_bytes(self) -> int:
        """Size of the dense structure constant table."""
        return self.rank ** 3 * BYTES_PER_ENTRY

    @property
    def domain(self) -> CoefficientDomain:
        return CoefficientDomain.parse(self.ring)


@dataclass(frozen=True)
class SpechtRow:
    ring: str
    d: int
    nonzero: bool
    citation: tuple[str, ...]


@dataclass(frozen=True)
class FixtureTable:
    """The versioned table of expected values."""

    rows: tuple[FixtureRow, ...]
    probes: tuple[SpechtRow, ...] = ()

    @classmethod
    def load(cls, path: str | Path | None = None, probe_path: str | Path | None = None) -> FixtureTable:
        """Read the fixture CSV (and the cell module probes) with pandas.

        Raises:
            InvalidInputError: on missing columns, unknown families or rings,
                malformed values or citation keys that do not resolve.
        """
        df = pd.read_csv(path or FIXTURE_FILE, dtype=str, keep_default_na=False)
        missing = [c for c in COLUMNS if c not in df.columns]
        if missing:
            raise InvalidInputError(f"fixture table lacks columns {missing}")
        rows = []
        for rec in df.to_dict("records"):
            try:
                row = FixtureRow(
                    suite=rec["suite"].strip(), family=rec["family"].strip(), n=int(rec["n"]), d=int(rec["d"]),
                    ring=rec["ring"].strip(), u=rec["u"].strip() or "1", domdim=rec["domdim"].strip(),
                    hn_proj=rec["hn_proj"].strip(), hn_standard=rec["hn_standard"].strip(),
                    inf_standards=rec["inf_standards"].strip(), citation=_citations(rec["citation"]),
                    opt_in=_flag(rec["opt_in"]))
            except ValueError as exc:
                raise InvalidInputError(f"malformed fixture row {rec}: {exc}") from exc
            if row.suite not in SUITES[:-1] or row.family not in FAMILIES:
                raise InvalidInputError(f"unknown suite or family in {row.label}")
            _ = row.domain
            for text in (row.domdim, row.hn_proj, row.hn_standard, row.inf_standards):
                if text:
                    Dimension.parse(text)
            if not row.citation:
                raise InvalidInputError(f"{row.label} has expected values without a citation")
            rows.append(row)
        probes: list[SpechtRow] = []
        probe_file = Path(probe_path) if probe_path is not None else PROBE_FILE
        if probe_file.exists():
            pf = pd.read_csv(probe_file, dtype=str, keep_default_na=False)
            if any(c not in pf.columns for c in PROBE_COLUMNS):
                raise InvalidInputError(f"probe table lacks columns {PROBE_COLUMNS}")
            probes = [SpechtRow(r["ring"].strip(), int(r["d"]), _flag(r["nonzero"]), _citations(r["citation"]))
                      for r in pf.to_dict("records")]
        logger.debug("loaded %d fixtures and %d probes", len(rows), len(probes))
        return cls(tuple(rows), tuple(probes))

    def select(self, suite: str, include_d4: bool = False) -> list[FixtureRow]:
        """Rows of one suite ("all": every suite, each algebra once)."""
        if suite not in SUITES:
            raise InvalidInputError(f"unknown suite {suite!r}; expected one of {SUITES}")
        chosen, seen = [], set()
        for row in self.rows:
            if (suite != "all" and row.suite != suite) or (row.opt_in and not include_d4):
                continue
            if row.key in seen:
                continue
            seen.add(row.key)
            chosen.append(row)
        return chosen


@dataclass(frozen=True)
class CheckRecord:
    fixture: str
    check: str
    expected: str
    computed: str
    status: str
    citation: str = ""


@dataclass
class FixtureOutcome:
    row: FixtureRow
    records: list[CheckRecord] = field(default_factory=list)
    values: dict[str, Dimension] = field(default_factory=dict)
    runtime: float = 0.0


def _expect(row: FixtureRow, check: str, expected: str, computed: Dimension) -> CheckRecord:
    if not expected:
        return CheckRecord(row.label, check, "", str(computed), INFO)
    status = PASS if Dimension.parse(expected) == computed else FAIL
    return CheckRecord(row.label, check, expected, str(computed), status, ";".join(row.citation))


def _holds(label: str, check: str, holds: bool, citation: str = "") -> CheckRecord:
    return CheckRecord(label, check, "true", str(holds).lower(), PASS if holds else FAIL, citation)


def run_fixture(row: FixtureRow, cap: int, settings: Settings) -> FixtureOutcome:
    """Build the algebra of one row, compute its dimensions and run the per-algebra consistency checks."""
    outcome = FixtureOutcome(row)
    start = time.perf_counter()
    domain = row.domain
    values = outcome.values
    if row.family == "schur":
        formula = schur_domdim_formula(domain, row.d)
    else:
        formula = qschur_domdim_formula(domain, row.u, row.d)
    if row.table_bytes > settings.max_table_bytes:
        reason = f"structure constants need {row.table_bytes} bytes, limit {settings.max_table_bytes}"
        if not domain.is_field:
            outcome.records.append(CheckRecord(row.label, "build", "", reason, SKIPPED))
            logger.warning("skipping %s: %s", row.label, reason)
            return outcome
        logger.info("%s: %s; using the tensor space", row.label, reason)
        reports = tensor_space_dimensions(tensor_space(row.n, row.d, domain, domain.element(row.u)), cap)
        values.update(domdim=reports["domdim"].value, hn_proj=reports["hn_proj"].value, formula=formula)
        outcome.records += [CheckRecord(row.label, "route", "", "tensor-space", INFO),
                            _expect(row, "domdim", row.domdim, values["domdim"]),
                            _expect(row, "domdim-formula", row.domdim, formula),
                            _expect(row, "hn-proj", row.hn_proj, values["hn_proj"])]
        outcome.runtime = time.perf_counter() - start
        return outcome
    data = schur_algebra(row.n, row.d, domain, domain.element(row.u), family=row.family)
    cover = CoverSpec.from_schur(data)
    assert cover.chain is not None
    values["domdim"] = domdim_algebra(cover, cap).value
    values["formula"] = formula
    records = [_expect(row, "domdim", row.domdim, values["domdim"]),
               _expect(row, "domdim-formula", row.domdim, formula)]
    if not row.opt_in:
        values["hn_proj"] = hn_dim_proj(cover, cap).value
        values["hn_standard"] = hn_dim_standard(cover, cover.chain, cap).value
        values["inf_standards"] = inf_domdim_standards(cover.algebra, cover, cover.chain, cap).value
        records += [_expect(row, "hn-proj", row.hn_proj, values["hn_proj"]),
                    _expect(row, "hn-standard", row.hn_standard, values["hn_standard"]),
                    _expect(row, "inf-standards", row.inf_standards, values["inf_standards"]),
                    _holds(row.label, "halving", gendo_symmetric_halving(values["domdim"], values["inf_standards"])),
                    _holds(row.label, "hn-bound", hn_domdim_bound(values["hn_proj"], values["domdim"],
                                                                  exact=domain.is_field))]
        if domain.is_field:
            rigidity = rigidity_check(cover, cover.chain, values["hn_standard"])
            records.append(_holds(row.label, "rigidity", rigidity.consistent))
            records.append(_holds(row.label, "equivalence-implication", _implication(cover, values["hn_proj"], cap)))
    outcome.records.extend(records)
    outcome.runtime = time.perf_counter() - start
    logger.info("%s finished in %.1f s", row.label, outcome.runtime)
    return outcome


def _implication(cover: CoverSpec, hn_proj: Dimension, cap: int) -> bool:
    """hn-proj >= gldim A forces an equivalence; gldim is resolved only as far as hn-proj reaches."""
    equivalence = functor_is_equivalence(cover)
    if equivalence or hn_proj.kind == MINUS_INFINITY:
        return True
    reach = hn_proj.value if hn_proj.kind in (FINITE, AT_LEAST) else cap
    gldim = global_dimension(cover.algebra, max(reach, 1), cover.faithful)
    return equivalence_implication(hn_proj, gldim, equivalence)


def _truncation_records(outcomes: list[FixtureOutcome]) -> list[CheckRecord]:
    """Compare every Z_(p) fixture with the F_p fixture of the same algebra run alongside it."""
    by_key = {o.row.key: o for o in outcomes}
    records = []
    for o in outcomes:
        dom = o.row.domain
        if not dom.is_local or not o.values:
            continue
        partner = by_key.get((o.row.family, o.row.n, o.row.d, dom.residue_field().spec, o.row.u))
        if partner is None or not partner.values:
            continue
        for name in ("domdim", "hn_proj", "hn_standard"):
            if name in o.values and name in partner.values:
                ok = truncation_consistency(partner.values[name], o.values[name])
                label = f"{o.row.label} / {partner.row.label}"
                records.append(_holds(label, f"truncation-{name.replace('_', '-')}", ok))
    return records


def _probe_records(probes: tuple[SpechtRow, ...]) -> list[CheckRecord]:
    records = []
    for probe in probes:
        label = f"specht S({probe.d},{probe.d}) {probe.ring}"
        result = specht_uniqueness_probe(CoefficientDomain.parse(probe.ring), probe.d)
        status = PASS if result.nonzero == probe.nonzero else FAIL
        records.append(CheckRecord(label, "hom-nonzero", str(probe.nonzero).lower(), str(result.nonzero).lower(),
                                   status, ";".join(probe.citation)))
    return records


@dataclass
class SuiteResult:
    suite: str
    cap: int
    records: list[CheckRecord]
    runtimes: dict[str, float]

    @property
    def passed(self) -> bool:
        return all(r.status not in (FAIL, ERROR) for r in self.records)

    def frame(self) -> pd.DataFrame:
        """The report as a table, with the runtime of each fixture."""
        df = pd.DataFrame([asdict(r) for r in self.records], columns=list(CheckRecord.__dataclass_fields__))
        df["runtime_s"] = df["fixture"].map(self.runtimes).round(2)
        return df

    def to_json(self) -> dict[str, Any]:
        """Machine-readable report; runtimes are left out so repeated runs agree byte for byte."""
        return {"suite": self.suite, "cap": self.cap, "passed": self.passed,
                "checks": [asdict(r) for r in self.records]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)


def run_suite(suite: str, cap: int, settings: Settings, include_d4: bool = False,
              table: FixtureTable | None = None, progress: bool = True) -> SuiteResult:
    """Run every fixture of a suite, up to ``settings.workers`` at a time.

    Args:
        suite (str): "schur", "qschur", "integral" or "all".
        cap (int): degree cap for every dimension.
        settings (Settings): worker count and the table size limit for d = 4 rows.
        include_d4 (bool): also run the opt-in rows.
        table (FixtureTable | None): the fixtures; the packaged table by default.
        progress (bool): show a progress bar on standard error.

    Returns:
        SuiteResult: one record per check, in table order.
    """
    table = table or FixtureTable.load()
    rows = table.select(suite, include_d4)
    outcomes: dict[int, FixtureOutcome] = {}
    with ThreadPoolExecutor(max_workers=settings.workers) as executor:
        futures = {executor.submit(run_fixture, row, cap, settings): i for i, row in enumerate(rows)}
        for future in tqdm(as_completed(futures), total=len(futures), desc=f"{suite} fixtures", disable=not progress):
            i = futures[future]
            try:
                outcomes[i] = future.result()
            except QHCoversError as exc:
                logger.error("%s failed: %s", rows[i].label, exc)
                outcomes[i] = FixtureOutcome(rows[i], [CheckRecord(rows[i].label, "build", "", str(exc), ERROR)])
    ordered = [outcomes[i] for i in range(len(rows))]
    records = [r for o in ordered for r in o.records]
    records += _truncation_records(ordered)
    if suite in ("schur", "all"):
        records += _probe_records(table.probes)
    runtimes = {o.row.label: o.runtime for o in ordered}
    result = SuiteResult(suite, cap, records, runtimes)
    logger.info("suite %s: %d checks, passed %s", suite, len(records), result.passed)
    return result
