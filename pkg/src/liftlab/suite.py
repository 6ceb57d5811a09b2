"""The standard verification battery behind ``liftlab report``.

Every check is a deterministic function of the seed and returns a
JSON-able dict with a ``pass`` flag.  Wall-clock never enters the report
body, so two runs with one seed are byte-identical.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .category_kernel import (cat_from_rpm, enumerate_functors,
                              enumerate_nat_homs, enumerate_nat_trans,
                              hom_from_nat, named_categories, named_magmas,
                              nat_from_hom, rpm_from_cat, twin_category)
from .filter_calculus import base_generation_oracle, principality_oracle
from .lebesgue_diff import (kernel_from_lifting, random_total_fn, recovers,
                            verify_theorem1)
from .measure_algebra import (brute_force_liftings, enumerate_liftings,
                              sampled_lifting_oracle)
from .measure_space import build_space
from .partial_magma import (classify, interchange_sweep, regular_tables,
                            single_unit_totality, square_pm, twin_pm)
from .verdict import jsonable


def _check_s1_lifting_oracle(seed: int) -> dict:
    space = build_space([1, 1, 0])
    brute = brute_force_liftings(space)
    enumerated = sorted(t.table for t in enumerate_liftings(space))
    ok = [t.table for t in brute] == enumerated
    return {"pass": ok, "brute_force": len(brute), "enumerated": len(enumerated)}


def _check_s2_sampled_oracle(seed: int) -> dict:
    v = sampled_lifting_oracle(build_space([1, 1, 0, 0]), samples=500, seed=seed)
    return {"pass": bool(v), "detail": v.to_dict()}


def _theorem1(weights, require_roundtrip: bool) -> dict:
    report = verify_theorem1(build_space(weights))
    ok = report.all_pass and (report.round_trips_identical or not require_roundtrip)
    return {"pass": ok, "report": report.to_dict()}


def _check_theorem1_s1(seed: int) -> dict:
    return _theorem1([1, 1, 0], require_roundtrip=True)


def _check_theorem1_s2(seed: int) -> dict:
    return _theorem1([1, 1, 0, 0], require_roundtrip=True)


def _check_theorem1_no_null(seed: int) -> dict:
    return _theorem1([1, 2, 3], require_roundtrip=True)


def _check_random_recovery(seed: int) -> dict:
    rng = random.Random(seed)
    tried = 0
    for weights in ([1, 1, 0], [1, 1, 0, 0], [2, 3, 0]):
        space = build_space(weights)
        for lifting in enumerate_liftings(space):
            kernel = kernel_from_lifting(space, lifting)
            for _ in range(25):
                f = random_total_fn(space, rng)
                tried += 1
                v = recovers(space, kernel, f)
                if not v:
                    return {"pass": False, "witness": jsonable(v.witness),
                            "weights": weights}
    return {"pass": True, "functions": tried}


def _check_filter_principality(seed: int) -> dict:
    a = principality_oracle(4)
    b = base_generation_oracle(4)
    return {"pass": bool(a) and bool(b),
            "principality": a.to_dict(), "base_generation": b.to_dict()}


def _check_pm_fixtures(seed: int) -> dict:
    magmas = named_magmas()
    sub = classify(magmas["nat_sub"])
    details = {"nat_sub": sub.to_dict()}
    ok = (sub.units == (0,) and not sub.associative and not sub.fastened
          and not sub.regular)
    for name in ("M1", "M2", "M3", "M6", "MSQ"):
        c = classify(magmas[name])
        details[name] = {"regular": c.regular, "units": list(c.units),
                         "total": c.total}
        ok = ok and c.regular
    ok = ok and classify(magmas["M1"]).monoid and not classify(magmas["M2"]).total
    for n in (1, 2, 3):
        ok = ok and classify(twin_pm(n)).regular
    ok = ok and classify(square_pm(magmas["M3"])).regular
    return {"pass": ok, "classifications": details}


def _check_interchange_n2(seed: int) -> dict:
    rep = interchange_sweep(2)
    return {"pass": rep.violations == 0, "sweep": rep.to_dict()}


def _check_interchange_n3(seed: int) -> dict:
    rep = interchange_sweep(3)
    return {"pass": rep.violations == 0, "sweep": rep.to_dict()}


def _check_single_unit_totality(seed: int) -> dict:
    counts = {}
    for n in (1, 2, 3):
        regs = regular_tables(n)
        counts[str(n)] = len(regs)
        for pm in regs:
            if not single_unit_totality(pm):
                return {"pass": False, "witness": pm.table}
    return {"pass": True, "regular_counts": counts}


def _check_cat_roundtrips(seed: int) -> dict:
    for name, cat in named_categories().items():
        pm = rpm_from_cat(cat)
        if rpm_from_cat(cat_from_rpm(pm)) != pm:
            return {"pass": False, "witness": name}
    counts = {}
    for n in (1, 2, 3):
        regs = regular_tables(n)
        counts[str(n)] = len(regs)
        for pm in regs:
            if rpm_from_cat(cat_from_rpm(pm)) != pm:
                return {"pass": False, "witness": pm.table}
    return {"pass": True, "regular_counts": counts}


def natequiv_report(source_name: str, target_name: str) -> dict:
    """Count both encodings of transformations for every functor pair and
    confirm the converters are mutually inverse."""
    cats = named_categories()
    c, d = cats[source_name], cats[target_name]
    functors = enumerate_functors(c, d)
    hom_total = trans_total = 0
    pair_mismatches = []
    for t in functors:
        for s in functors:
            homs = enumerate_nat_homs(t, s)
            trans = enumerate_nat_trans(t, s)
            hom_total += len(homs)
            trans_total += len(trans)
            if len(homs) != len(trans):
                pair_mismatches.append((t.arrow_map, s.arrow_map))
                continue
            converted = {nat_from_hom(a).components for a in homs}
            if converted != {tau.components for tau in trans}:
                pair_mismatches.append((t.arrow_map, s.arrow_map))
            if any(hom_from_nat(nat_from_hom(a)) != a for a in homs):
                pair_mismatches.append((t.arrow_map, s.arrow_map))
    return {
        "pass": hom_total == trans_total and not pair_mismatches,
        "functors": len(functors),
        "arrow_indexed": hom_total,
        "object_indexed": trans_total,
        "mismatched_pairs": jsonable(pair_mismatches),
    }


def _check_natequiv_2_3(seed: int) -> dict:
    return natequiv_report("2", "3")


def _check_twin_categories(seed: int) -> dict:
    cats = named_categories()
    details = {}
    for name in ("1", "2", "3"):
        tw = twin_category(cats[name])
        details[name] = {"objects": len(tw.category.objects),
                         "arrows": tw.category.pm.n}
        if len(tw.category.objects) != cats[name].pm.n:
            return {"pass": False, "witness": name}
    return {"pass": True, "twins": details}


def _check_yoneda(seed: int) -> dict:
    from .yoneda_finite import yoneda_roundtrip

    reports = []
    ok = True
    for z in (1, 2, 3):
        for x in (1, 2):
            rep = yoneda_roundtrip(z, x)
            reports.append(rep.to_dict())
            ok = ok and rep.all_pass
    return {"pass": ok, "configs": reports}


def _check_adjunction(seed: int) -> dict:
    from .yoneda_finite import adjunction_bijection

    reports = [adjunction_bijection(2, 3).to_dict(),
               adjunction_bijection(1, 4).to_dict()]
    return {"pass": all(r["all_pass"] for r in reports), "configs": reports}


#: name -> (function, heavy). Heavy checks are skipped by --quick.
CHECKS: dict = {
    "filter_principality": (_check_filter_principality, False),
    "s1_lifting_oracle": (_check_s1_lifting_oracle, True),
    "s2_sampled_lifting_oracle": (_check_s2_sampled_oracle, False),
    "theorem1_s1": (_check_theorem1_s1, False),
    "theorem1_s2": (_check_theorem1_s2, False),
    "theorem1_no_null": (_check_theorem1_no_null, False),
    "random_function_recovery": (_check_random_recovery, False),
    "pm_fixtures": (_check_pm_fixtures, False),
    "interchange_n2": (_check_interchange_n2, False),
    "interchange_n3": (_check_interchange_n3, True),
    "single_unit_totality": (_check_single_unit_totality, False),
    "cat_rpm_roundtrips": (_check_cat_roundtrips, False),
    "twin_categories": (_check_twin_categories, False),
    "natequiv_2_3": (_check_natequiv_2_3, False),
    "yoneda_roundtrips": (_check_yoneda, False),
    "adjunction": (_check_adjunction, False),
}


def run_check(name: str, seed: int = 0) -> dict:
    fn, _ = CHECKS[name]
    out = fn(seed)
    out["name"] = name
    return out


def run_suite(seed: int = 0, quick: bool = False, parallel: int = 1) -> dict:
    names = [n for n, (_, heavy) in CHECKS.items() if not (quick and heavy)]
    if parallel > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            results = list(pool.map(run_check, names, [seed] * len(names)))
    else:
        results = [run_check(n, seed) for n in names]
    checks = [{"name": r.pop("name"), "pass": r.pop("pass"), "details": jsonable(r)}
              for r in results]
    return {
        "suite": "liftlab-verification",
        "version": __version__,
        "seed": seed,
        "quick": quick,
        "notes": {"ultrafilter_tiebreak": "lowest-index"},
        "checks": checks,
        "all_pass": all(c["pass"] for c in checks),
    }
