"""Theorem-verification harness over generated families of categories."""

from __future__ import annotations

import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from . import euler, generators
from .config import EulercatConfig
from .euler import EulerResult
from .exactalg import sum_of_entries, taylor_coefficients
from .fincat import FinCat, is_acyclic, opposite
from .nerve import count_nondegenerate_by_matrix, level_counts, nondegenerate_chains
from .reporters import ReportTable
from .simplex import (
    EqSimplexCheck,
    ResolutionMismatch,
    check_eq_simplex,
    enumerate_admissible_relations,
    homology_ranks,
    resolution_isomorphism,
    splitting_dim,
)
from .subdivision import length_filtration, sd, sd_truncated

logger = logging.getLogger("eulercat")

FAMILIES = ("posets-exhaustive", "acyclic-random", "monoids-small")

REPORT_COLUMNS = ("category-id", "theorem-id", "lhs", "rhs", "verdict")

# Truncation depth for the subdivision smoke check on non-acyclic inputs.
TRUNCATED_SD_LEVEL = 2


@dataclass
class VerifyRecord:
    """One theorem instance: lhs and rhs must agree exactly."""

    category_id: str
    theorem_id: str
    lhs: str
    rhs: str
    passed: bool

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "FAIL"

    def cells(self) -> Tuple[str, ...]:
        return (self.category_id, self.theorem_id, self.lhs, self.rhs, self.verdict)


@dataclass
class VerifyReport:
    family: str
    size: int
    seed: int
    records: List[VerifyRecord] = field(default_factory=list)

    def sort(self) -> None:
        self.records.sort(key=lambda r: (r.category_id, r.theorem_id))

    @property
    def failed(self) -> List[VerifyRecord]:
        return [r for r in self.records if not r.passed]

    @property
    def passed(self) -> bool:
        return not self.failed

    @property
    def category_count(self) -> int:
        return len({r.category_id for r in self.records})

    def to_table(self) -> ReportTable:
        table = ReportTable(
            REPORT_COLUMNS,
            meta={
                "family": self.family,
                "size": self.size,
                "seed": self.seed,
                "categories": self.category_count,
                "checks": len(self.records),
                "failed": len(self.failed),
            },
        )
        for r in self.records:
            table.add(*r.cells())
        return table


def same_result(a: EulerResult, b: EulerResult) -> bool:
    """Equal exact values, or both undefined for the same reason."""
    return a.value == b.value and a.reason == b.reason


class CategoryChecks:
    """Collects the records for one category."""

    def __init__(self, category_id: str, cat: FinCat, config: EulercatConfig):
        self.category_id = category_id
        self.cat = cat
        self.config = config
        self.records: List[VerifyRecord] = []

    def record(
        self, theorem_id: str, lhs: object, rhs: object, passed: Optional[bool] = None
    ) -> None:
        if passed is None:
            passed = lhs == rhs
        rec = VerifyRecord(self.category_id, theorem_id, _fmt(lhs), _fmt(rhs), bool(passed))
        if not rec.passed:
            logger.warning(f"{self.category_id} {theorem_id}: {rec.lhs} != {rec.rhs}")
        else:
            logger.debug(f"{self.category_id} {theorem_id}: {rec.lhs}")
        self.records.append(rec)

    def compare(self, theorem_id: str, lhs: EulerResult, rhs: EulerResult) -> None:
        self.record(theorem_id, lhs, rhs, same_result(lhs, rhs))

    # -- checks valid for every finite category --------------------------------

    def check_main_theorem(self) -> None:
        """The adjugate form against enumerated chain counts.

        On acyclic C the enumerated level polynomial gives χ outright. Otherwise
        the expansion of the adjugate form must reproduce #N̄_n(C) for every
        n up to ``series_depth``.
        """
        cat = self.cat
        if is_acyclic(cat):
            levels = euler.chi_series(cat, "levels")
            self.compare("main.l2ext", euler.chi_ext_l2_of_sd_op(cat), levels)
            return
        depth = self.config.series_depth
        rf = euler.series_rational_function(cat)
        enumerated = [len(nondegenerate_chains(cat, n)) for n in range(depth + 1)]
        self.record("main.l2ext", _integral(taylor_coefficients(rf, depth)), enumerated)

    def check_oracles(self) -> None:
        depth = self.config.series_depth
        rf = euler.series_rational_function(self.cat)
        taylor = _integral(taylor_coefficients(rf, depth))
        enumerated = [len(nondegenerate_chains(self.cat, n)) for n in range(depth + 1)]
        by_matrix = [count_nondegenerate_by_matrix(self.cat, n) for n in range(depth + 1)]
        self.record("oracle.taylor", taylor, enumerated)
        self.record("oracle.matrix", by_matrix, enumerated)
        bound = sum(level_counts(self.cat, 1)[1:])
        self.record(
            "oracle.bound",
            enumerated[1:],
            [bound ** n for n in range(1, depth + 1)],
            all(c <= bound ** n for n, c in enumerate(enumerated) if n >= 1),
        )

    # -- acyclic categories ----------------------------------------------------

    def check_coincidence(self) -> None:
        cat = self.cat
        series = euler.chi_series(cat)
        self.compare("coincidence.leinster", euler.chi_leinster(cat), series)
        self.compare("coincidence.l2", euler.chi_l2_acyclic(cat), series)
        topo = euler.filtration_from_topological_order(cat)
        filtrations = {
            "topological": topo,
            "longest-path": euler.longest_path_filtration(cat),
            "scaled": euler.NFiltration(tuple(2 * v + 1 for v in topo.mu)),
        }
        for name, mu in filtrations.items():
            self.compare(f"coincidence.fil.{name}", euler.chi_fil(cat, mu), series)
        inverse = euler.mobius_inversion(cat)
        if inverse is not None:
            self.compare("mobius.entry-sum", EulerResult.of(sum_of_entries(inverse)), series)

    def check_splitting(self) -> None:
        objs = self.cat.objects
        pairs = [(x, y) for x in objs for y in objs]
        good = sum(1 for x, y in pairs if splitting_dim(self.cat, x, y) == (1 if x == y else 0))
        self.record("splitting.delta", good, len(pairs))

    def check_subdivision(self) -> None:
        cat = self.cat
        total = sum(level_counts(cat, len(cat.objects)))
        if total > self.config.max_sd_objects:
            logger.warning(f"{self.category_id}: Sd has {total} objects, skipping Sd checks")
            return
        s = sd(cat, self.config.ascii_labels)
        sub = s.category
        nonzero = [c for c in level_counts(cat, len(cat.objects)) if c]
        self.record("sd.levels", s.level_counts(), nonzero)
        self.record("sd.acyclic", is_acyclic(sub), True)
        self.compare("sd.leinster", euler.chi_leinster(sub), euler.chi_leinster(cat))
        self.compare("sd.series", euler.chi_series(sub, "levels"), euler.chi_series(cat))
        self.compare(
            "sd.fil",
            euler.chi_fil(sub, length_filtration(s)),
            euler.chi_fil(cat, euler.filtration_from_topological_order(cat)),
        )
        self.compare("sd.l2-op", euler.chi_l2_acyclic(opposite(sub)), euler.chi_l2_acyclic(cat))
        self.record(
            "sd.alternating",
            euler.alternating_sums_by_object(sub),
            [(-1) ** level for level in s.levels],
        )
        self.record("sd.opposite-levels", sd(opposite(cat)).level_counts(), s.level_counts())

        if len(sub.objects) <= self.config.max_splitting_objects:
            self.compare("sd.l2-splitting", euler.chi_l2_of_sd_op(s), euler.chi_l2_acyclic(cat))

        if len(sub.objects) <= self.config.max_resolution_objects:
            exact = 0
            for g in sub.objects:
                try:
                    iso = resolution_isomorphism(s, g)
                except ResolutionMismatch as e:
                    logger.warning(f"{self.category_id}: {e}")
                    continue
                if not any(homology_ranks(iso.resolution)):
                    exact += 1
            self.record("resolution.exact-iso", exact, len(sub.objects))

    # -- non-acyclic categories -------------------------------------------------

    def check_non_acyclic(self) -> None:
        self.compare(
            "l2.undefined",
            euler.chi_l2_acyclic(self.cat),
            EulerResult.undefined(euler.UndefinedReason.NOT_ACYCLIC),
        )
        s = sd_truncated(self.cat, TRUNCATED_SD_LEVEL, self.config.ascii_labels)
        expected = level_counts(self.cat, TRUNCATED_SD_LEVEL)
        self.record("sd-truncated.levels", s.level_counts(), expected)

    def run(self) -> List[VerifyRecord]:
        try:
            self.check_main_theorem()
            self.check_oracles()
            if is_acyclic(self.cat):
                self.check_coincidence()
                self.check_splitting()
                self.check_subdivision()
            else:
                self.check_non_acyclic()
        except Exception as e:
            logger.error(f"{self.category_id}: check raised {type(e).__name__}: {e}")
            self.record("error", type(e).__name__, str(e), False)
        return self.records


def _integral(values: Iterable[Fraction]) -> List[object]:
    return [int(v) if v.denominator == 1 else v for v in values]


def _fmt(value: object) -> str:
    if isinstance(value, (list, tuple)):
        return ",".join(_fmt(v) for v in value)
    if isinstance(value, Fraction):
        return str(EulerResult.of(value))
    if isinstance(value, bool):
        return str(value).lower()
    return str(value)


class VerifyHarness:
    """Runs the check suite over a family, fanning out across threads."""

    def __init__(self, config: EulercatConfig):
        self.config = config

    def _bound(self, family: str) -> int:
        return {
            "posets-exhaustive": self.config.max_poset_size,
            "acyclic-random": self.config.max_random_objects,
            "monoids-small": self.config.max_monoid_size,
        }[family]

    def corpus(self, family: str, size: int, seed: int) -> List[Tuple[str, FinCat]]:
        """The (category-id, category) pairs of a family, in a fixed order."""
        if family not in FAMILIES:
            raise ValueError(f"Unknown family: {family} (expected one of {', '.join(FAMILIES)})")
        if size < 0 or size > self._bound(family):
            raise ValueError(f"Size {size} for {family} is outside 0..{self._bound(family)}")

        out: List[Tuple[str, FinCat]] = []
        if family == "posets-exhaustive":
            for n in range(size + 1):
                for i, order in enumerate(generators.unlabeled_posets(n)):
                    out.append((f"poset-{n}-{i:03d}", generators.poset_category(n, order)))
        elif family == "acyclic-random":
            rng = random.Random(seed)
            for i in range(self.config.random_count):
                n = rng.randint(1, max(size, 1))
                mode = rng.choice(generators.RANDOM_MODES)
                cat = generators.random_acyclic(rng, n, mode)
                out.append((f"random-{seed}-{i:04d}-{mode}", cat))
        else:
            for n in range(1, size + 1):
                for i, cat in enumerate(generators.small_monoids(n)):
                    out.append((f"monoid-{n}-{i:03d}", cat))
            out.append(("iso-pair", generators.iso_pair()))
            out.append(("pole-witness", generators.pole_witness()))
        return out

    def run(self, family: str, size: int, seed: int = 0) -> VerifyReport:
        corpus = self.corpus(family, size, seed)
        logger.info(f"Verifying {len(corpus)} categories from {family} (size {size}, seed {seed})")
        report = VerifyReport(family, size, seed)
        report.records = self._fan_out(
            [CategoryChecks(cid, cat, self.config).run for cid, cat in corpus]
        )
        report.sort()
        if report.passed:
            logger.info(f"All {len(report.records)} checks passed")
        else:
            logger.warning(f"{len(report.failed)} of {len(report.records)} checks failed")
        return report

    def _fan_out(self, jobs: Sequence[Callable[[], List[VerifyRecord]]]) -> List[VerifyRecord]:
        with ThreadPoolExecutor(max_workers=self.config.threads) as pool:
            futures = [pool.submit(job) for job in jobs]
            return [rec for fut in futures for rec in fut.result()]

    def simplex_sweep(self, n: int, all_up_to: bool = False) -> List[EqSimplexCheck]:
        """check_eq_simplex on every admissible relation on [n] (or on [0..n])."""
        sizes: Iterable[int] = range(n + 1) if all_up_to else (n,)
        rels = [
            rel
            for k in sizes
            for rel in enumerate_admissible_relations(k, self.config.simplex_max_n)
        ]
        with ThreadPoolExecutor(max_workers=self.config.threads) as pool:
            checks = list(pool.map(check_eq_simplex, rels))
        logger.info(f"Checked {len(checks)} equivalence simplices")
        return checks
