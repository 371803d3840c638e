"""Cross-checks between the counts, the classification and the diagram families.

The report is a plain dictionary so it can be dumped as JSON unchanged. Items
are sorted by key, which keeps the output byte-identical however the grid
points were scheduled across workers.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Callable, Iterable

from .diagram_families import CASE_TAG, FAMILY_CASES, build, closed_form, family_specs
from .errors import AtlasError
from .hopf_atlas import canonical_case, classify, default_workers, verify_counts
from .surgery_diagram import homology_order

REPORT_VERSION = 1

# tags accepted by --case, mapped to the classification tag
CASE_ALIASES = {
    "a": "a", "b": "b", "c1": "c1", "c2": "c2", "c3": "c3", "d1": "d1", "d2": "d2", "d3": "d3",
    "e1": "e_t1eq1", "e2": "e_t1gt1", "e_t1eq1": "e_t1eq1", "e_t1gt1": "e_t1gt1",
}

LABEL_NOTE = (
    "The closed-form count table names the t1 > 1 branch of case e 'e1' and the t1 = 1 branch 'e2'; "
    "the classification uses the opposite names. Counts here are keyed on (t0, t1), so the "
    "mismatch affects labels only."
)
E2_NOTE = (
    "Case e with t1 > 1 uses rot_Q = s(r0 + (1-r)/p), s(t1 - 1 + (1-r)/p) with "
    "d3 = (3 + (2r - r^2 - 1)/p)/4; the surgery diagrams reproduce exactly this pairing."
)


def rational_json(q) -> dict[str, str]:
    q = Fraction(q)
    return {"num": str(q.numerator), "den": str(q.denominator)}


def rational_from_json(obj: dict[str, str]) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def _family_grid(case: str, p: int, t_max: int) -> list[tuple[int, int]]:
    ts = range(-t_max, t_max + 1)
    tag = CASE_TAG[case]
    return [(t0, t1) for t0 in ts for t1 in ts if canonical_case(t0, t1) == (tag, False)]


def _check_family_point(key: tuple[str, int, int, int]) -> dict[str, Any]:
    case, p, t0, t1 = key
    failures: list[dict[str, Any]] = []
    built = Counter()
    n = 0
    for spec in family_specs(case, p, t0, t1):
        n += 1
        fd = build(spec)
        got = fd.invariants()
        built[got] += 1
        want = closed_form(spec).invariants()
        problems = []
        if got != want:
            problems.append("invariants")
        if homology_order(fd.diagram) != p:
            problems.append("homology order")
        if not fd.positive:
            problems.append("not a positive Hopf link")
        if problems:
            failures.append({
                "spec": {k: v for k, v in vars(spec).items() if v is not None},
                "problems": problems,
                "expected": [rational_json(v) for v in want],
                "actual": [rational_json(v) for v in got],
            })
    listed = Counter(x.invariants() for x in classify(p, t0, t1))
    closed = built == listed
    status = "pass" if closed and not failures else "fail"
    item: dict[str, Any] = {
        "case": case, "p": p, "t0": t0, "t1": t1,
        "diagrams": n, "classified": sum(listed.values()),
        "multiset_equal": closed, "status": status,
    }
    if failures:
        item["failures"] = failures
    return item


def _check_structure_point(key: tuple[int, int, int]) -> dict[str, Any]:
    p, t0, t1 = key
    entries = classify(p, t0, t1)
    bad_tb = [x for x in entries if (x.tbq0 - Fraction(1, p)).denominator != 1
              or (x.tbq1 - Fraction(1, p)).denominator != 1
              or x.tbq0 != t0 + Fraction(1, p) or x.tbq1 != t1 + Fraction(1, p)]
    tuples = [x.invariants() for x in entries]
    distinct = len(set(tuples)) == len(tuples)
    ambient_ok = all((x.ambient == "tight") == (x.case_tag == "a") for x in entries)
    ok = not bad_tb and distinct and ambient_ok
    return {"p": p, "t0": t0, "t1": t1, "status": "pass" if ok else "fail",
            "tb_ok": not bad_tb, "distinct": distinct, "ambient_ok": ambient_ok}


def _run(fn: Callable, keys: list, workers: int) -> list:
    if workers > 1 and len(keys) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, keys, chunksize=8))
    return [fn(k) for k in keys]


def build_report(p_min: int = 2, p_max: int = 6, t_max: int = 3, case: str | None = None,
                 workers: int | None = None) -> dict[str, Any]:
    if p_min < 2 or p_max < p_min or t_max < 0:
        raise AtlasError(f"empty or invalid grid: p in [{p_min}, {p_max}], |t| <= {t_max}")
    tag = None
    if case is not None:
        if case not in CASE_ALIASES:
            raise AtlasError(f"unknown case {case!r}; choose from {', '.join(sorted(CASE_ALIASES))}")
        tag = CASE_ALIASES[case]
    workers = default_workers() if workers is None else max(1, workers)
    ps = range(p_min, p_max + 1)
    ts = range(-t_max, t_max + 1)

    def wanted(t0: int, t1: int) -> bool:
        return tag is None or canonical_case(t0, t1)[0] == tag

    count_rows = [r for r in verify_counts(ps, ts, workers).rows if wanted(r.t0, r.t1)]
    counts = [
        {"p": r.p, "t0": r.t0, "t1": r.t1, "case": r.case_tag, "classified": r.classified,
         "closed_form": r.closed_form, "normalized": r.normalized,
         "status": "pass" if r.ok else "fail"}
        for r in count_rows
    ]

    structure_keys = [(p, t0, t1) for p in ps for t0 in ts for t1 in ts if wanted(t0, t1)]
    structure = sorted(_run(_check_structure_point, structure_keys, workers), key=lambda d: (d["p"], d["t0"], d["t1"]))

    cases = [c for c in FAMILY_CASES if tag is None or CASE_TAG[c] == tag]
    fam_keys = [(c, p, t0, t1) for c in cases for p in ps for t0, t1 in _family_grid(c, p, t_max)]
    families = sorted(_run(_check_family_point, fam_keys, workers),
                      key=lambda d: (FAMILY_CASES.index(d["case"]), d["p"], d["t0"], d["t1"]))

    sections = {"counts": counts, "structure": structure, "families": families}
    summary = {name: {"total": len(items), "failed": sum(1 for i in items if i["status"] != "pass")}
               for name, items in sections.items()}
    return {
        "format_version": REPORT_VERSION,
        "grid": {"p_min": p_min, "p_max": p_max, "t_max": t_max, "case": case},
        "notes": [LABEL_NOTE, E2_NOTE],
        **sections,
        "summary": summary,
        "ok": all(s["failed"] == 0 for s in summary.values()),
    }


def failed_items(report: dict[str, Any]) -> Iterable[tuple[str, dict[str, Any]]]:
    for name in ("counts", "structure", "families"):
        for item in report[name]:
            if item["status"] != "pass":
                yield name, item
