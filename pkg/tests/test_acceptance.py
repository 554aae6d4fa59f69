"""Acceptance gate: six criteria, each a single pass/fail line.

Run with ``pytest tests/test_acceptance.py`` (the lines appear in the terminal
summary) or ``python tests/test_acceptance.py``.
"""
import math
import sys
import time

import pytest

from kleinlens import abelian, groups
from kleinlens.geometry import constructions, fibration, lens_model
from kleinlens.lens_core import (Basis, GluingMatrix, Sign, TorusClass, apply_gluing,
                                 heegaard_gluing, klein_bottle_embeds,
                                 lens_from_meridian_class, normalize, projective_plane_embeds)

# pinned thresholds
SEAM_TOL = 1e-12
MIN_SEP = 1e-4
WINDING_RESIDUAL = 1e-9
BUDGET = {1: 1.0, 2: 5.0, 3: 60.0, 4: 2.0, 5: 30.0, 6: None}

KLEIN_YES = {(4, 1), (4, 3), (8, 3), (8, 5), (12, 5), (12, 7), (16, 7), (16, 9)}

RESULTS = {}


def canonical_pairs(max_p):
    yield 1, 0
    for p in range(2, max_p + 1):
        for q in range(1, p):
            if math.gcd(p, q) == 1:
                yield p, q


def criterion_1():
    wrong = [(p, q) for p, q in canonical_pairs(16)
             if klein_bottle_embeds(normalize(p, q)).embeds != ((p, q) in KLEIN_YES)]
    return not wrong, f"mismatches {wrong[:3]}" if wrong else "yes-set matches exactly"


def criterion_2():
    cases = 0
    for n in range(1, 51):
        for ell in range(-25, 26):
            if math.gcd(n, ell) != 1:
                continue
            h = abelian.dehn_filling_H1(n, ell)
            want = abelian.AbelianGroup((4 * n,)) if ell % 2 else abelian.AbelianGroup((2, 2 * n))
            if h != want:
                return False, f"H1({n},{ell}) = {h}, expected {want}"
            cases += 1
    return True, f"{cases} coprime pairs"


def criterion_3():
    cases = 0
    for n in range(1, 13):
        for ell in range(-12, 13):
            if ell == 0 or 4 * n * abs(ell) > groups.DEFAULT_ORDER_CAP:
                continue
            t = groups.build_metacyclic_table(n, ell)
            ax = groups.check_group_axioms(t.table)
            tag = f"(n={n}, l={ell})"
            if groups.group_order(t) != 4 * n * abs(ell):
                return False, f"order wrong {tag}"
            if not (ax["identity"] and ax["latin"] and ax["associative"]):
                return False, f"axioms fail {tag}"
            if groups.element_order(t, 0, 1) != 2 * abs(ell):
                return False, f"ord(v) wrong {tag}"
            if groups.is_abelian(t) != (abs(ell) == 1):
                return False, f"abelian flag wrong {tag}"
            oracle = (abelian.dehn_filling_H1(n, ell) if math.gcd(n, ell) == 1
                      else abelian.attached_disc_quotient(n, ell))
            if groups.table_abelianization(t) != oracle:
                return False, f"abelianization differs from oracle {tag}"
            cases += 1
    return True, f"{cases} tables"


def criterion_4():
    for p, q in canonical_pairs(500):
        g = heegaard_gluing(normalize(p, q))
        if g.p * g.r + g.q * g.s != 1 or g.determinant != -1:
            return False, f"L({p},{q}) gluing fails"
    band = TorusClass(1, 2, Basis.HEEGAARD_SIDE_1)
    mu1 = TorusClass(1, 0, Basis.HEEGAARD_SIDE_1)
    for n in range(1, 101):
        for sign in Sign:
            s = sign.value_int
            image = apply_gluing(constructions.klein_gluing(n, sign), band)
            if image != TorusClass(-s, 2 * s, Basis.HEEGAARD_SIDE_2):
                return False, f"two-band identity fails n={n} sign={sign.value}"
        expected = TorusClass(-(2 * n + 1), 4 * n, Basis.HEEGAARD_SIDE_2)
        g = GluingMatrix(4 * n, 2 * n + 1, n, -(2 * n - 1))
        handle_class = constructions.handle_boundary_class(constructions.handle_layout(n))
        if apply_gluing(g, mu1) != expected or handle_class.boundary_class != expected:
            return False, f"handle class fails n={n}"
        fib = TorusClass(-(2 * n + 1), -4 * n, Basis.HEEGAARD_SIDE_2)
        ident = fibration.heegaard_identification_from_fibration(n)
        if ident.meridian_image != fib or lens_from_meridian_class(fib) != normalize(4 * n, 2 * n - 1):
            return False, f"fibration identification fails n={n}"
    return True, "p <= 500, n <= 100, both signs"


def criterion_5():
    worst = 0.0
    for n in range(1, 17):
        for sign in Sign:
            mesh = lens_model.klein_lens_embedding(n, sign, 64, tol=math.inf)
            residual, ok = lens_model.verify_seams(mesh, SEAM_TOL)
            worst = max(worst, residual)
            if not ok:
                return False, f"seam residual {residual:.3e} at n={n}"
            if mesh.euler_characteristic != 0:
                return False, f"Euler characteristic {mesh.euler_characteristic} at n={n}"
            if n <= 8:
                rep = lens_model.embedded_injectivity_check(mesh, min_sep=MIN_SEP)
                if not rep.passed:
                    return False, f"injectivity fails at n={n}: {rep.min_separation:.3e}"
    for sign, want in ((Sign.PLUS, (2, 1)), (Sign.MINUS, (2, -1))):
        w = constructions.winding_numbers(constructions.moebius_boundary_trace(10_000, sign))
        if tuple(round(x) for x in w) != want or max(abs(x - round(x)) for x in w) > WINDING_RESIDUAL:
            return False, f"winding {w} for sign {sign.value}"
    return True, f"max seam residual {worst:.3e}"


def criterion_6():
    wrong = [(p, q) for p, q in canonical_pairs(200)
             if projective_plane_embeds(normalize(p, q)) != ((p, q) == (2, 1))]
    if wrong:
        return False, f"projective plane verdict wrong on {wrong[:3]}"
    for n in range(1, 51):
        for ell in range(-24, 25, 2):
            if math.gcd(n, ell) == 1 and abelian.dehn_filling_H1(n, ell).is_cyclic:
                return False, f"H1({n},{ell}) is cyclic"
    mesh = lens_model.corrupt_seam(lens_model.klein_lens_embedding(1, Sign.MINUS, 64))
    if lens_model.verify_seams(mesh, SEAM_TOL)[1]:
        return False, "corrupted seam passed verification"
    return True, "all three controls rejected"


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5, 6: criterion_6}
NAMES = {
    1: "classification table", 2: "filling homology", 3: "metacyclic tables",
    4: "Heegaard arithmetic", 5: "geometry", 6: "negative controls",
}


def evaluate(k):
    start = time.perf_counter()
    ok, detail = CRITERIA[k]()
    elapsed = time.perf_counter() - start
    budget = BUDGET[k]
    if budget is not None and elapsed >= budget:
        ok, detail = False, f"{detail}; runtime {elapsed:.2f} s over budget {budget} s"
    line = f"criterion {k} ({NAMES[k]}): {'PASS' if ok else 'FAIL'} [{elapsed:.2f} s] {detail}"
    RESULTS[k] = line
    return ok, line


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    ok, line = evaluate(k)
    print(line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(k) for k in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
