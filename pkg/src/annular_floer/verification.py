"""Self-verification suite run by ``annular-floer verify``.

Each check returns a :class:`CheckResult`; the suite is deterministic for a
given :class:`VerifyConfig`.  The pytest acceptance suite covers the same
ground more thoroughly; this one is sized to finish in about a minute.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .annular_invariant import BOTTOM, pl_function, tmod_cross_check, value_at
from .braid_lab import (band_rank_lower_bound, identity_formula, quasi_positive_formula,
                        quasi_positive_word, torus_formula, torus_word)
from .braids import BraidWord, parse_word
from .chain_complexes import build_tilde, check_complex, homology_ranks
from .corpus import make_rng, random_annular_grid, random_move
from .grid_core import from_braid, mirror_horizontal, reflect_diagonal
from .transverse_refinement import eta, legendrian_grading_audit, theta_for_braid

SAMPLE_TS = tuple(Fraction(k, 4) for k in range(9))


@dataclass(frozen=True)
class VerifyConfig:
    max_grid: int = 6
    seed: int = 7
    fuzz_grids: int = 12
    moves_per_grid: int = 3
    trunc: int = 4


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "cases": self.cases,
                "failures": self.failures[:5]}


def _agree(f, g) -> bool:
    return all(f(t) == g(t) for t in SAMPLE_TS)


def check_closed_forms() -> CheckResult:
    cases = [(BraidWord(n, ()), identity_formula(n)) for n in (1, 2, 3)]
    cases += [(torus_word(p, q), torus_formula(p, q)) for p, q in ((2, 2), (2, 3), (3, 3))]
    for strands, factors in ((2, [((), 1)]), (3, [((1,), 2)]), (3, [((), 1), ((2,), 1)])):
        w = quasi_positive_word(strands, factors)
        cases.append((w, quasi_positive_formula(w.writhe, w.num_components, strands)))
    failures = [w.text() or f"id{w.strands}" for w, f in cases
                if pl_function(from_braid(w)) != f]
    return CheckResult("closed_forms", not failures, len(cases), failures)


def check_structural(cfg: VerifyConfig) -> CheckResult:
    rng = make_rng(cfg.seed)
    failures = []
    for i in range(cfg.fuzz_grids):
        d = random_annular_grid(rng, rng.randrange(4, cfg.max_grid + 1))
        top, bottom = pl_function(d), pl_function(d, BOTTOM)
        if not _agree(top, lambda t: -pl_function(mirror_horizontal(d), BOTTOM)(t)):
            failures.append({"grid": i, "law": "mirror"})
        r = reflect_diagonal(d)
        if pl_function(r) != top or pl_function(r, BOTTOM) != bottom:
            failures.append({"grid": i, "law": "reflection"})
        e = d
        for _ in range(cfg.moves_per_grid):
            _, _, e = random_move(e, rng)
        if pl_function(e) != top:
            failures.append({"grid": i, "law": "moves"})
    return CheckResult("structural_identities", not failures, cfg.fuzz_grids, failures)


def check_gradings(cfg: VerifyConfig) -> CheckResult:
    rng = make_rng(cfg.seed + 1)
    failures = []
    grids = [random_annular_grid(rng, rng.randrange(4, cfg.max_grid + 1))
             for _ in range(cfg.fuzz_grids)]
    grids += [from_braid(parse_word(w, 2)) for w in ("", "1", "-1", "1 -1")]
    for i, d in enumerate(grids):
        if not legendrian_grading_audit(d):
            failures.append({"grid": i, "law": "legendrian"})
        c = build_tilde(d)
        if not check_complex(c).passed:
            failures.append({"grid": i, "law": "complex_audit"})
        if sum(homology_ranks(c).values()) != 2 ** (d.n - 1):
            failures.append({"grid": i, "law": "tilde_rank"})
    return CheckResult("grading_engine", not failures, len(grids), failures)


def check_eta(cfg: VerifyConfig) -> CheckResult:
    words = [("", 1), ("1", 2), ("-1", 2), ("1 1 1", 2), ("1 -2", 3), ("-1 -1", 2)]
    failures = []
    for text, n in words:
        w = parse_word(text, n)
        res = eta(w, D=cfg.trunc)
        if res.finite == theta_for_braid(w):
            failures.append({"word": text, "law": "dichotomy"})
        if res.finite and not -Fraction(n, 2) <= res.value <= Fraction(n, 2):
            failures.append({"word": text, "law": "range"})
    return CheckResult("eta", not failures, len(words), failures)


def check_tmod(cfg: VerifyConfig) -> CheckResult:
    failures = []
    braids = [("", 2), ("1", 2), ("1 1 1", 2)]
    for text, n in braids:
        d = from_braid(parse_word(text, n))
        for p, q in ((0, 1), (1, 3), (1, 2)):
            t = Fraction(2 * p, q)
            got = tmod_cross_check(d, p, q, cfg.trunc)
            if got != -value_at(d, t).value:
                failures.append({"word": text, "t": str(t)})
    return CheckResult("tmod_cross_check", not failures, len(braids) * 3, failures)


def check_band_rank() -> CheckResult:
    failures = []
    if band_rank_lower_bound(parse_word("1 1 1", 2)).bound != 3:
        failures.append("1 1 1")
    for n in (1, 2, 3):
        if band_rank_lower_bound(BraidWord(n, ())).bound != 0:
            failures.append(f"id{n}")
    return CheckResult("band_rank", not failures, 4, failures)


def run_suite(cfg: VerifyConfig = VerifyConfig()) -> dict:
    checks = [check_closed_forms(), check_structural(cfg), check_gradings(cfg),
              check_eta(cfg), check_tmod(cfg), check_band_rank()]
    return {
        "config": {"max_grid": cfg.max_grid, "seed": cfg.seed, "fuzz_grids": cfg.fuzz_grids,
                   "trunc": cfg.trunc},
        "passed": all(c.passed for c in checks),
        "checks": [c.to_json() for c in checks],
    }
