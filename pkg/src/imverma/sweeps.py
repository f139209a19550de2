"""Verification suites over finite windows, with a JSON-configurable driver.

Each suite splits its work into independent cells, runs them serially or in
a process pool, and merges the cell reports in a fixed order, so a report
never depends on the degree of parallelism.
"""

from __future__ import annotations

import json
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import kashiwara
from .crystal import crystal_oracle_check, random_presentation, verify_crystal_axioms, verify_prop91
from .pbw import (
    Element,
    WeightWindow,
    all_monomials,
    enumerate_window,
    grade,
    straighten_word,
)
from .qcoeff import ONE, Q, Scalar, g_coeff, g_coeff_dual, taylor_coefficients
from .shapovalov import (
    IntegralityError,
    det_witness,
    gram,
    pair_closed_n2,
    pair_monomials,
    pair_unrestricted,
)
from .verma import (
    HighestWeight,
    ModuleVector,
    find_singular_vectors,
    local_nilpotency_exponent,
    xplus_labels,
)

__all__ = ["SweepConfig", "SUITES", "run_suite", "CONFIG_ENV"]

CONFIG_ENV = "IMVERMA_CONFIG"


@dataclass
class SweepConfig:
    max_length: int = 3
    index_lo: int = -3
    index_hi: int = 3
    label_lo: int = -4
    label_hi: int = 4
    degree_bound: int = 4
    lambda_h: Fraction = Fraction(1)
    lambda_d: Fraction = Fraction(0)
    seed: int = 0
    samples: int = 100
    parallelism: int = 1
    output_path: Optional[str] = None
    boundary_study: bool = False

    def __post_init__(self):
        self.lambda_h = Fraction(self.lambda_h)
        self.lambda_d = Fraction(self.lambda_d)
        if self.index_lo > self.index_hi or self.label_lo > self.label_hi:
            raise ValueError("ranges need lo <= hi")
        if self.max_length < 0:
            raise ValueError("max_length must be >= 0")
        if self.parallelism < 1:
            raise ValueError("parallelism must be >= 1")
        self.weight()  # validates lambda

    def weight(self) -> HighestWeight:
        return HighestWeight(self.lambda_h, self.lambda_d, self.boundary_study)

    @property
    def indices(self) -> range:
        return range(self.index_lo, self.index_hi + 1)

    @property
    def labels(self) -> range:
        return range(self.label_lo, self.label_hi + 1)

    def to_json_obj(self) -> dict:
        """Everything that affects results (parallelism and output path excluded)."""
        d = asdict(self)
        d.pop("parallelism")
        d.pop("output_path")
        d["lambda_h"] = str(self.lambda_h)
        d["lambda_d"] = str(self.lambda_d)
        return d

    @classmethod
    def from_json_obj(cls, obj: dict) -> "SweepConfig":
        known = {f.name for f in fields(cls)}
        extra = set(obj) - known
        if extra:
            raise ValueError(f"unknown config keys: {sorted(extra)}")
        return cls(**obj)

    @classmethod
    def load(cls, path: Optional[str] = None, **overrides) -> "SweepConfig":
        """Read ``path`` (or the file named by ``$IMVERMA_CONFIG``), then apply overrides."""
        path = path or os.environ.get(CONFIG_ENV)
        base: dict = {}
        if path:
            with open(path, encoding="utf-8") as fh:
                base = json.load(fh)
        base.update({k: v for k, v in overrides.items() if v is not None})
        return cls.from_json_obj(base)


def _chunks(items: Sequence, n: int) -> List[Sequence]:
    size = max(1, -(-len(items) // max(1, n * 4)))
    return [items[i:i + size] for i in range(0, len(items), size)]


def _run_cells(fn: Callable, cells: List[tuple], parallelism: int) -> List[dict]:
    if parallelism <= 1 or len(cells) <= 1:
        return [fn(*c) for c in cells]
    with ProcessPoolExecutor(max_workers=parallelism) as pool:
        return list(pool.map(fn, *zip(*cells)))


def _merge(name: str, parts: List[dict]) -> dict:
    """Sum ``checked``; concatenate failures in cell order."""
    out = {"check": name, "checked": 0, "failures": []}
    for p in parts:
        out["checked"] += p["checked"]
        out["failures"].extend(p["failures"])
    out["ok"] = not out["failures"]
    return out


# -- g-series -------------------------------------------------------------------


def _series(a: Scalar) -> List[Scalar]:
    """Taylor coefficients of ``(a t - 1) / (t - a)``."""
    return taylor_coefficients([-ONE, a], [-a, ONE], 20)


def suite_g_series(cfg: SweepConfig) -> List[dict]:
    q2, qm2 = Q * Q, (Q * Q).inverse()
    out = []
    for name, a, table in (
        ("(q^-2 t - 1)/(t - q^-2) = sum g(r) t^r", qm2, g_coeff),
        ("(q^2 t - 1)/(t - q^2) = sum g'(r) t^r", q2, g_coeff_dual),
    ):
        fails = [
            {"r": r, "series": str(s), "table": str(table(r))}
            for r, s in enumerate(_series(a))
            if s != table(r)
        ]
        out.append({"check": name, "checked": 20, "failures": fails, "ok": not fails})
    # recorded, not asserted: the two tables differ, so g is not q -> 1/q invariant
    same = all(g_coeff(r) == g_coeff_dual(r) for r in range(20))
    out.append({"check": "g(r) symmetric under q -> 1/q (informational)", "holds": same})
    return out


# -- straightening --------------------------------------------------------------


def _straighten_cell(words: Tuple[Tuple[int, ...], ...]) -> dict:
    fails = []
    for w in words:
        left = straighten_word(w, "leftmost")
        right = straighten_word(w, "rightmost")
        if left != right:
            fails.append({"word": list(w), "problem": "strategies disagree"})
            continue
        spec = Element(left).subs_v1()
        if spec.terms != {tuple(sorted(w, reverse=True)): Scalar(1)}:
            fails.append({"word": list(w), "problem": "v=1 specialization is not the sorted word"})
        if any(grade(m) != grade(w) for m in left):
            fails.append({"word": list(w), "problem": "grade not preserved"})
    return {"checked": len(words), "failures": fails}


def random_words(seed: int, count: int, max_len: int, lo: int, hi: int) -> List[Tuple[int, ...]]:
    rng = random.Random(seed)
    return [
        tuple(rng.randint(lo, hi) for _ in range(rng.randint(0, max_len))) for _ in range(count)
    ]


def suite_straighten(cfg: SweepConfig) -> List[dict]:
    words = random_words(cfg.seed, cfg.samples, cfg.max_length, cfg.index_lo, cfg.index_hi)
    cells = [(tuple(c),) for c in _chunks(words, cfg.parallelism)]
    rep = _merge("straighten", _run_cells(_straighten_cell, cells, cfg.parallelism))
    rep["seed"] = cfg.seed
    return [rep]


# -- relations ------------------------------------------------------------------


def _relation_cell(rel: str, labels: Tuple[int, ...], monos: Tuple) -> dict:
    r = kashiwara.verify_relation(rel, labels, labels, monos, gamma="symbolic")
    return {"checked": r.checked, "failures": r.mismatches}


def suite_relations(cfg: SweepConfig) -> List[dict]:
    monos = all_monomials(cfg.max_length, cfg.index_lo, cfg.index_hi)
    labels = tuple(cfg.labels)
    out = []
    for rel in kashiwara.RELATION_IDS:
        cells = [(rel, labels, tuple(c)) for c in _chunks(monos, cfg.parallelism)]
        rep = _merge(f"relation {rel}", _run_cells(_relation_cell, cells, cfg.parallelism))
        rep["gamma"] = "symbolic"
        out.append(rep)
    return out


# -- bilinear form --------------------------------------------------------------


def _form_windows(cfg: SweepConfig) -> List[WeightWindow]:
    return [
        WeightWindow(k, m, cfg.index_lo, cfg.index_hi)
        for k in range(1, cfg.max_length + 1)
        for m in range(-cfg.degree_bound, cfg.degree_bound + 1)
        if enumerate_window(k, m, cfg.index_lo, cfg.index_hi)
    ]


def _gram_cell(windows: Tuple[WeightWindow, ...]) -> dict:
    fails, checked = [], 0
    for w in windows:
        checked += 1
        try:
            g = gram(w)
        except IntegralityError as exc:
            fails.append({"window": w.to_json_obj(), "problem": str(exc)})
            continue
        if not g.is_symmetric():
            fails.append({"window": w.to_json_obj(), "problem": "not symmetric"})
        if not g.congruent_to_identity():
            fails.append({"window": w.to_json_obj(), "problem": "not identity mod q^2"})
        if not det_witness(g):
            fails.append({"window": w.to_json_obj(), "problem": "det constant term != 1"})
    return {"checked": checked, "failures": fails}


def _cross_length_cell(pairs: Tuple) -> dict:
    fails = []
    for a, b in pairs:
        p = pair_unrestricted(a, b)
        if not p.is_zero():
            fails.append({"a": list(a), "b": list(b), "pairing": str(p)})
    return {"checked": len(pairs), "failures": fails}


def n2_quadruples(lo: int, hi: int):
    for m1 in range(lo, hi + 1):
        for m2 in range(lo, m1 + 1):
            for k1 in range(lo, hi + 1):
                k2 = m1 + m2 - k1
                if lo <= k2 <= k1:
                    yield m1, m2, k1, k2


def _n2_cell(quads: Tuple) -> dict:
    fails = []
    for m1, m2, k1, k2 in quads:
        got = pair_monomials((m1, m2), (k1, k2))
        want = pair_closed_n2(m1, m2, k1, k2)
        if got != want:
            fails.append({"quad": [m1, m2, k1, k2], "recursion": str(got), "closed": str(want)})
    return {"checked": len(quads), "failures": fails}


def suite_form(cfg: SweepConfig) -> List[dict]:
    par = cfg.parallelism
    windows = _form_windows(cfg)
    out = [_merge("gram windows", _run_cells(_gram_cell, [(tuple(c),) for c in _chunks(windows, par)], par))]
    monos = all_monomials(cfg.max_length, cfg.index_lo, cfg.index_hi)
    cross = [(a, b) for a in monos for b in monos if len(a) != len(b)]
    out.append(_merge("cross-length orthogonality", _run_cells(_cross_length_cell, [(tuple(c),) for c in _chunks(cross, par)], par)))
    quads = list(n2_quadruples(cfg.index_lo, cfg.index_hi))
    out.append(_merge("length-2 closed form", _run_cells(_n2_cell, [(tuple(c),) for c in _chunks(quads, par)], par)))
    return out


# -- crystal ------------------------------------------------------------------------


def _crystal_cell(h: str, d: str, boundary: bool, monos: Tuple, labels: Tuple) -> Tuple[dict, dict]:
    w = HighestWeight(Fraction(h), Fraction(d), boundary)
    o = crystal_oracle_check(w, monos, labels, labels)
    a = verify_crystal_axioms(w, monos, labels, labels)
    return {"checked": o.checked, "failures": o.failures}, {"checked": a.checked, "failures": a.failures}


def suite_crystal(cfg: SweepConfig) -> List[dict]:
    monos = all_monomials(cfg.max_length, cfg.index_lo, cfg.index_hi)
    labels = tuple(cfg.labels)
    cells = [
        (str(cfg.lambda_h), str(cfg.lambda_d), cfg.boundary_study, tuple(c), labels)
        for c in _chunks(monos, cfg.parallelism)
    ]
    parts = _run_cells(_crystal_cell, cells, cfg.parallelism)
    return [
        _merge("crystal oracle", [p[0] for p in parts]),
        _merge("crystal axioms", [p[1] for p in parts]),
    ]


# -- singular vectors ---------------------------------------------------------------


def random_vector(rng: random.Random, weight: HighestWeight, max_len: int, lo: int, hi: int) -> ModuleVector:
    terms: Dict = {}
    for _ in range(rng.randint(1, 3)):
        n = rng.randint(0, max_len)
        m = tuple(sorted((rng.randint(lo, hi) for _ in range(n)), reverse=True))
        terms[m] = Scalar(rng.choice([-2, -1, 1, 2, 3]))
    return ModuleVector(Element(terms), weight)


def suite_singular(cfg: SweepConfig) -> List[dict]:
    w = cfg.weight()
    fails, found, checked = [], [], 0
    for k in range(1, min(cfg.max_length, 2) + 1):
        for m in range(k * cfg.index_lo, k * cfg.index_hi + 1):
            win = WeightWindow(k, m, cfg.index_lo, cfg.index_hi)
            checked += 1
            sv = find_singular_vectors(win, w)
            if sv:
                found.append({"window": win.to_json_obj(), "dimension": len(sv)})
            if w.h != 0 and sv:
                fails.append({"window": win.to_json_obj(), "dimension": len(sv)})
            if w.h == 0 and k == 1 and len(sv) != len(win.basis()):
                fails.append({"window": win.to_json_obj(), "dimension": len(sv), "expected": len(win.basis())})
    out = [{"check": "singular vectors", "checked": checked, "failures": fails, "found": found, "ok": not fails}]
    rng = random.Random(cfg.seed)
    nil_fails = []
    for i in range(cfg.samples):
        vec = random_vector(rng, w, cfg.max_length, cfg.index_lo, cfg.index_hi)
        if vec.is_zero():
            continue
        for k in xplus_labels(vec):
            n = local_nilpotency_exponent(k, vec)
            if n > vec.max_length() + 1:
                nil_fails.append({"sample": i, "k": k, "exponent": n})
    out.append({"check": "local nilpotency", "checked": cfg.samples, "failures": nil_fails, "ok": not nil_fails, "seed": cfg.seed})
    return out


# -- lattice ------------------------------------------------------------------------


def suite_lattice(cfg: SweepConfig) -> List[dict]:
    w = cfg.weight()
    rng = random.Random(cfg.seed)
    basis = all_monomials(cfg.max_length, cfg.index_lo, cfg.index_hi, min_len=1)
    samples = [random_presentation(rng, w, basis) for _ in range(cfg.samples)]
    rep = verify_prop91(w, samples, basis, control=basis[0])
    d = rep.to_json_obj()
    d["seed"] = cfg.seed
    return [d]


SUITES: Dict[str, Callable[[SweepConfig], List[dict]]] = {
    "g-series": suite_g_series,
    "straighten": suite_straighten,
    "relations": suite_relations,
    "form": suite_form,
    "crystal": suite_crystal,
    "singular": suite_singular,
    "lattice": suite_lattice,
}


def run_suite(name: str, cfg: SweepConfig) -> dict:
    """Report for one suite (or ``"all"``); ``ok`` is false if any check failed."""
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise KeyError(name)
    checks = []
    for n in names:
        for c in SUITES[n](cfg):
            c["suite"] = n
            checks.append(c)
    nfail = sum(len(c.get("failures", [])) for c in checks)
    return {
        "suite": name,
        "config": cfg.to_json_obj(),
        "checks": checks,
        "failures": nfail,
        "ok": nfail == 0,
    }
