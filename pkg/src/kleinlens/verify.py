"""Property sweeps over every module, bounded by (max_n, max_p).

Each suite returns a :class:`SuiteResult`; a suite stops at its first
counterexample.  Random draws use fixed seeds so repeated runs agree.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np

from . import abelian, groups
from .geometry import constructions, fibration, lens_model
from .lens_core import (Basis, Sign, TorusClass, apply_gluing, are_homeomorphic,
                        deck_power, heegaard_gluing, homeomorphism_class,
                        klein_bottle_embeds, klein_bottle_embeds_by_enumeration,
                        normalize, projective_plane_embeds)

SEED = 20221


@dataclass
class SuiteResult:
    name: str
    cases: int
    passed: bool
    counterexample: Optional[str] = None
    seconds: float = 0.0


class _Fail(Exception):
    pass


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise _Fail(message)


def coprime_pairs(max_p: int):
    for p in range(1, max_p + 1):
        for q in range(p if p > 1 else 1):
            if math.gcd(p, q) == 1:
                yield p, q


def suite_gluing(max_n, max_p):
    cases = 0
    for p, q in coprime_pairs(max_p):
        g = heegaard_gluing(normalize(p, q))
        _require(g.p * g.r + g.q * g.s == 1, f"Bezout fails for L({p},{q})")
        _require(g.determinant == -1, f"determinant {g.determinant} for L({p},{q})")
        cases += 1
    rng = np.random.default_rng(SEED)
    for p, q in list(coprime_pairs(min(max_p, 60)))[::7]:
        g = heegaard_gluing(normalize(p, q))
        a, b, c, d = (int(x) for x in rng.integers(-1000, 1000, size=4))
        c1 = TorusClass(a, b, Basis.HEEGAARD_SIDE_1)
        c2 = TorusClass(c, d, Basis.HEEGAARD_SIDE_1)
        _require(apply_gluing(g, c1 + c2) == apply_gluing(g, c1) + apply_gluing(g, c2),
                 f"gluing not additive for L({p},{q})")
        cases += 1
    return cases


def suite_homeomorphism(max_n, max_p):
    cases = 0
    bound = min(max_p, 200)
    for p in range(1, bound + 1):
        qs = [q for q in range(p if p > 1 else 1) if math.gcd(p, q) == 1]
        spaces = [normalize(p, q) for q in qs]
        rel = {(a.q, b.q): are_homeomorphic(a, b) for a in spaces for b in spaces}
        for a in spaces:
            _require(rel[a.q, a.q], f"{a} not homeomorphic to itself")
            for b in spaces:
                _require(rel[a.q, b.q] == rel[b.q, a.q], f"asymmetric on {a}, {b}")
        # transitivity: the relation must be the partition into classes
        for a in spaces:
            cls = homeomorphism_class(a)
            for b in spaces:
                _require(rel[a.q, b.q] == (b.q in cls), f"relation disagrees with class of {a}")
                if rel[a.q, b.q]:
                    _require(homeomorphism_class(b) == cls, f"classes of {a}, {b} differ")
        cases += len(spaces) ** 2
    for n in range(1, max_n + 1):
        _require(are_homeomorphic(normalize(4 * n, 2 * n + 1), normalize(4 * n, 2 * n - 1)),
                 f"L({4 * n},{2 * n + 1}) !~ L({4 * n},{2 * n - 1})")
        cases += 1
    return cases


def suite_klein_decision(max_n, max_p):
    cases = 0
    for p, q in coprime_pairs(max_p):
        space = normalize(p, q)
        closed = klein_bottle_embeds(space)
        oracle = klein_bottle_embeds_by_enumeration(space)
        _require(closed.embeds == oracle, f"closed form and enumeration disagree on {space}")
        if closed.embeds:
            _require(closed.n * 4 == p, f"verdict n wrong for {space}")
            target = normalize(p, 2 * closed.n + closed.sign.value_int)
            _require(space == target, f"reported sign does not realise {space}")
        _require(projective_plane_embeds(space) == ((p, q) == (2, 1)),
                 f"projective plane verdict wrong on {space}")
        cases += 1
    return cases


def suite_deck(max_n, max_p):
    rng = np.random.default_rng(SEED + 1)
    cases = 0
    for p, q in coprime_pairs(min(max_p, 40)):
        space = normalize(p, q)
        v = rng.normal(size=4)
        v /= np.linalg.norm(v)
        z = (complex(v[0], v[1]), complex(v[2], v[3]))
        w = z
        for _ in range(p):
            w = deck_power(space, w, 1)
            norm = abs(w[0]) ** 2 + abs(w[1]) ** 2
            _require(abs(norm - 1) < 1e-12, f"deck action changed the norm on {space}")
        _require(max(abs(w[0] - z[0]), abs(w[1] - z[1])) < 1e-9, f"sigma^p != id on {space}")
        cases += 1
    return cases


def suite_canonical(max_n, max_p):
    rng = np.random.default_rng(SEED + 2)
    cases = 0
    for p, q in coprime_pairs(min(max_p, 40)):
        space = normalize(p, q)
        v = rng.normal(size=(8, 4))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        z = v[:, [0, 2]] + 1j * v[:, [1, 3]]
        base, _ = lens_model.canonicalize_array(space, z)
        again, k0 = lens_model.canonicalize_array(space, base)
        _require(np.abs(again - base).max() < 1e-9 and not k0.any(), f"not idempotent on {space}")
        for j in range(p):
            moved, _ = lens_model.canonicalize_array(space, lens_model.deck_power_array(space, z, j))
            _require(np.abs(moved - base).max() < 1e-9, f"not orbit invariant on {space}, j={j}")
        cases += p
    return cases


def suite_snf(max_n, max_p):
    rng = np.random.default_rng(SEED + 3)
    trials = max(20, min(200, max_p))
    for t in range(trials):
        r, c = (int(x) for x in rng.integers(1, 9, size=2))
        m = rng.integers(-50, 51, size=(r, c)).tolist()
        u, d, v = abelian.smith_normal_form(m)
        _require(abelian.matmul(abelian.matmul(u, m), v) == d, f"U m V != D for {m}")
        _require(abs(abelian.determinant(u)) == 1 and abs(abelian.determinant(v)) == 1,
                 f"non-unimodular transform for {m}")
        diag = [d[i][i] for i in range(min(r, c))]
        off = any(d[i][j] for i in range(r) for j in range(c) if i != j)
        _require(not off, f"D not diagonal for {m}")
        nz = [x for x in diag if x]
        _require(all(b % a == 0 for a, b in zip(nz, nz[1:])) and diag[:len(nz)] == nz,
                 f"divisibility chain broken for {m}")
    return trials


def suite_filling_homology(max_n, max_p):
    cases = 0
    for n in range(1, max_n + 1):
        for ell in range(-25, 26):
            if math.gcd(n, ell) != 1:
                continue
            h = abelian.dehn_filling_H1(n, ell)
            if ell % 2:
                _require(h == abelian.AbelianGroup((4 * n,)), f"H1({n},{ell}) = {h}")
            else:
                _require(h == abelian.AbelianGroup.from_diagonal([2, 2 * n], 2) and not h.is_cyclic,
                         f"H1({n},{ell}) = {h}")
            cases += 1
    return cases


def suite_metacyclic(max_n, max_p):
    cases = 0
    for n in range(1, min(max_n, 12) + 1):
        for ell in range(-12, 13):
            if ell == 0:
                continue
            t = groups.build_metacyclic_table(n, ell)
            tag = f"(n={n}, l={ell})"
            ax = groups.check_group_axioms(t.table, seed=SEED + n * 100 + ell)
            _require(all(ax[k] for k in ("identity", "latin", "associative")), f"axioms fail {tag}")
            _require(groups.group_order(t) == 4 * n * abs(ell), f"order wrong {tag}")
            _require(len(np.unique(t.table[0])) == t.order, f"normal forms not distinct {tag}")
            _require(groups.element_order(t, 0, 1) == 2 * abs(ell), f"ord(v) wrong {tag}")
            _require(groups.is_abelian(t) == (abs(ell) == 1), f"abelian flag wrong {tag}")
            if abs(ell) == 1:
                _require(groups.is_cyclic(t), f"cyclic flag wrong {tag}")
            u, v = t.u, t.v
            uinv = int(np.nonzero(t.table[u] == 0)[0][0])
            vinv = int(np.nonzero(t.table[v] == 0)[0][0])
            _require(int(t.table[t.table[u, v], uinv]) == vinv, f"u v u^-1 != v^-1 {tag}")
            qorder, qcyclic = groups.quotient_by_v(t)
            _require(qorder == 2 * n and qcyclic, f"G/<v> not cyclic of order 2n {tag}")
            h_pres = groups.abelianization(groups.dehn_filling_presentation(n, ell))
            h_tab = groups.table_abelianization(t)
            _require(h_pres == h_tab, f"abelianizations differ {tag}: {h_pres} vs {h_tab}")
            if math.gcd(n, ell) == 1:
                _require(h_pres == abelian.dehn_filling_H1(n, ell), f"oracle mismatch {tag}")
            cases += 1
    return cases


def suite_heegaard_constructions(max_n, max_p):
    cases = 0
    for n in range(1, max_n + 1):
        for sign in Sign:
            rep = constructions.two_moebius_construction(n, sign)
            _require(rep.passed, f"two Moebius bands fail for n={n}, sign={sign.value}")
            hc = constructions.handle_boundary_class(constructions.handle_layout(n, sign))
            _require(hc.mu2_intersections == 4 * n and hc.lambda2_intersections == 2 * n + 1,
                     f"handle counts wrong for n={n}")
            cases += 2
        ident = fibration.heegaard_identification_from_fibration(n)
        _require(ident.space == normalize(4 * n, 2 * n - 1), f"fibration identification n={n}")
        _require(klein_bottle_embeds(ident.space).embeds, f"identified space rejected n={n}")
        cases += 1
    return cases


def suite_fibers(max_n, max_p):
    model = fibration.NuKModel()
    cases = 0
    for theta in np.linspace(0.0, 2 * math.pi, 100, endpoint=False):
        for r in np.linspace(-1.0, 1.0, 21):
            f = fibration.fiber_through(model, float(theta), float(r))
            special = abs(r) < 1e-12 and (abs(theta) < 1e-12 or abs(theta - math.pi) < 1e-9)
            _require(f.length == (1 if special else 2), f"fibre length wrong at ({theta}, {r})")
            cases += 1
    for n in range(1, max_n + 1):
        d = fibration.seifert_over_rp2(n)
        _require((d.fiber_class_in_filling.mu, d.fiber_class_in_filling.lam) == (1, -n),
                 f"RP2 fibre class wrong n={n}")
        cases += 1
    return cases


def suite_moebius(max_n, max_p):
    cases = 0
    for sign, expected in ((Sign.PLUS, (2, 1)), (Sign.MINUS, (2, -1))):
        wl, wm = constructions.winding_numbers(constructions.moebius_boundary_trace(10_000, sign))
        _require((round(wl), round(wm)) == expected and abs(wl - round(wl)) < 1e-9
                 and abs(wm - round(wm)) < 1e-9, f"winding {wl}, {wm} for sign {sign.value}")
        cases += 1
    _require(constructions.klein_in_s1xs2().passed, "S1xS2 assembly fails")
    return cases + 1


def suite_lens_mesh(max_n, max_p):
    cases = 0
    for n in range(1, min(max_n, 16) + 1):
        for sign in Sign:
            mesh = lens_model.klein_lens_embedding(n, sign, 64)
            worst, ok = lens_model.verify_seams(mesh)
            _require(ok, f"seam residual {worst} for n={n}")
            _require(mesh.euler_characteristic == 0, f"Euler characteristic for n={n}")
            _require(np.abs(np.abs(mesh.vertices) ** 2 @ np.ones(2) - 1).max() < 1e-12,
                     f"vertex off the sphere for n={n}")
            cases += 1
    bad = lens_model.corrupt_seam(lens_model.klein_lens_embedding(1, Sign.MINUS, 8))
    _require(not lens_model.verify_seams(bad)[1], "corrupted seam was accepted")
    return cases + 1


def suite_injectivity(max_n, max_p):
    cases = 0
    for n in range(1, min(max_n, 8) + 1):
        for sign in Sign:
            rep = lens_model.embedded_injectivity_check(
                lens_model.klein_lens_embedding(n, sign, 64), min_sep=1e-4)
            _require(rep.passed, f"injectivity fails for n={n}, sign={sign.value}: "
                                 f"separation {rep.min_separation}")
            cases += 1
    return cases


SUITES: List[Callable] = [
    suite_gluing, suite_homeomorphism, suite_klein_decision, suite_deck,
    suite_canonical, suite_snf, suite_filling_homology, suite_metacyclic,
    suite_heegaard_constructions, suite_fibers, suite_moebius, suite_lens_mesh,
    suite_injectivity,
]


def run_suite(fn: Callable, max_n: int, max_p: int) -> SuiteResult:
    name = fn.__name__.replace("suite_", "")
    start = time.perf_counter()
    try:
        cases = fn(max_n, max_p)
        return SuiteResult(name, cases, True, seconds=time.perf_counter() - start)
    except _Fail as exc:
        return SuiteResult(name, 0, False, str(exc), time.perf_counter() - start)


def run_verification(max_n: int, max_p: int, suites=None) -> List[SuiteResult]:
    if max_n < 1 or max_p < 1:
        raise ValueError("bounds must be positive")
    return [run_suite(fn, max_n, max_p) for fn in (suites if suites is not None else SUITES)]
