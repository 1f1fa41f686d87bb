"""Acceptance suite: one test per criterion, printing one PASS/FAIL line
each (run with ``pytest tests/test_acceptance.py -v -s``).
"""

import cmath
import math
import random

from realsurf.ambient import blow_up, cp2, e, k3
from realsurf.bishop import (
    Jet2,
    PointType,
    bishop_alpha,
    classify,
    find_complex_points,
    flat_torus,
    graph_normal_form,
    round_sphere,
    survey,
    wrinkled_sphere,
)
from realsurf.constructions import (
    Infeasible,
    NoRecipe,
    stein_disc_bundle,
    stein_disc_bundle_nonorientable,
    totally_real_nonorientable,
    totally_real_oriented_in_k3,
    verify_certificate,
)
from realsurf.embedded import SurfaceClass, connected_sum, i_pm, i_total
from realsurf.lattice import HClass, basis_class, determinant, signature


class _Criterion:
    def __init__(self, number, title):
        self.number = number
        self.title = title
        self.failures = []

    def check(self, condition, message):
        if not condition:
            self.failures.append(message)

    def equal(self, expected, actual, message):
        if expected != actual:
            self.failures.append(f"{message}: expected {expected}, got {actual}")

    def finish(self):
        verdict = "PASS" if not self.failures else "FAIL"
        print(f"[acceptance {self.number}] {verdict} - {self.title}")
        for msg in self.failures[:10]:
            print(f"    {msg}")
        assert not self.failures, self.failures


def test_criterion_1_lattice_and_ambient_catalog():
    crit = _Criterion(1, "E(n) lattices: rank, determinant, signature, chi, c1 pairings")
    for n in range(1, 7):
        x = e(n)
        crit.equal(12 * n - 2, x.rank, f"rank of E({n})")
        crit.equal(1, abs(determinant(x.lattice)), f"|det| of E({n})")
        crit.equal((2 * n - 1, 10 * n - 1, 0), signature(x.lattice), f"signature of E({n})")
        crit.equal(12 * n, x.euler_char, f"chi of E({n})")
        crit.equal(2 - n, x.pair(x.c1, x.named_class("s")), f"c1.s in E({n})")
        crit.equal(0, x.pair(x.c1, x.named_class("f")), f"c1.f in E({n})")
    crit.equal(12, e(1).euler_char, "chi of E(1)")
    crit.check(e(2).c1.is_zero, "c1 of E(2) must vanish")
    crit.finish()


def test_criterion_2_invariant_formulas():
    crit = _Criterion(2, "count formulas on the exceptional sphere, the section, s+gf")
    blown = blow_up(k3())
    exceptional = SurfaceClass(blown, True, 2, blown.named_class("e1"))
    crit.equal(1, i_total(exceptional), "I of the exceptional sphere")
    e3 = e(3)
    section = SurfaceClass(e3, True, 2, e3.named_class("s"))
    crit.equal(-1, i_total(section), "I of the section of E(3)")
    amb = k3()
    s_cls, f_cls = amb.named_class("s"), amb.named_class("f")
    for g in range(13):
        surf = SurfaceClass(amb, True, 2 - 2 * g, s_cls + g * f_cls)
        crit.equal((0, 0), i_pm(surf), f"I+- of the genus-{g} surface in K3")
    crit.finish()


def test_criterion_3_construction_engines_and_verifier():
    crit = _Criterion(3, "construction engines replay and verify; boundaries are exact")
    for g in range(13):
        crit.check(
            verify_certificate(totally_real_oriented_in_k3(g)).passed,
            f"oriented K3 certificate fails verification at g={g}",
        )
    for chi in range(1, -13, -1):
        for kind in ("k3", "k3-blow-up", "e3"):
            if kind == "k3" and chi % 4 in (1, 3):
                try:
                    totally_real_nonorientable(chi, kind)
                    crit.check(False, f"expected NoRecipe for K3 chi={chi}")
                except NoRecipe:
                    pass
                continue
            try:
                cert = totally_real_nonorientable(chi, kind)
            except NoRecipe:
                crit.check(False, f"unexpected NoRecipe for {kind} chi={chi}")
                continue
            crit.check(
                verify_certificate(cert).passed,
                f"nonorientable certificate fails at chi={chi}, kind={kind}",
            )
            crit.equal(0, cert.claimed.i_total, f"nonzero count at chi={chi}, kind={kind}")
    for g in range(11):
        for n in range(2 * g - 2, -13, -1):
            cert = stein_disc_bundle(g, n)
            m = 2 * g - n
            crit.equal(2 - m, cert.claimed.i_plus, f"I+ of D({g},{n})")
            crit.equal(0, cert.claimed.i_minus, f"I- of D({g},{n})")
            crit.equal(n, cert.claimed.normal_euler, f"[S].[S] of D({g},{n})")
            crit.check(verify_certificate(cert).passed, f"D({g},{n}) fails verification")
        try:
            stein_disc_bundle(g, 2 * g - 1)
            crit.check(False, f"expected Infeasible at D({g},{2 * g - 1})")
        except Infeasible:
            pass
    for chi in range(1, -11, -1):
        for n in range(-chi, -chi - 9, -1):
            for strategy in ("blow-up-cp2", "section-of-em"):
                cert = stein_disc_bundle_nonorientable(chi, n, strategy)
                crit.check(
                    verify_certificate(cert).passed,
                    f"nonorientable disc bundle fails at chi={chi}, n={n}, {strategy}",
                )
                crit.equal(chi + n, cert.claimed.i_total, f"count at chi={chi}, n={n}")
        for strategy in ("blow-up-cp2", "section-of-em"):
            try:
                stein_disc_bundle_nonorientable(chi, -chi + 1, strategy)
                crit.check(False, f"expected Infeasible at n+chi=1, chi={chi}")
            except Infeasible:
                pass
    crit.finish()


def _gram_blocks(lat):
    n = lat.rank
    seen = [False] * n
    blocks = []
    for start in range(n):
        if seen[start]:
            continue
        stack, comp = [start], []
        seen[start] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and i != j and lat.gram[i][j] != 0:
                    seen[j] = True
                    stack.append(j)
        blocks.append(tuple(sorted(comp)))
    return blocks


def test_criterion_4_connected_sum_additivity():
    crit = _Criterion(4, "500 random connected sums: I and I+- additivity")
    rng = random.Random(20030627)
    ambients = [k3(), e(1), e(3), blow_up(blow_up(cp2()))]
    blocks = {amb.label: _gram_blocks(amb.lattice) for amb in ambients}
    trials = 0
    while trials < 500:
        amb = rng.choice(ambients)
        ba, bb = rng.sample(blocks[amb.label], 2)

        def make(block):
            if rng.random() < 0.6:
                coeffs = [0] * amb.rank
                while all(c == 0 for c in coeffs):
                    for i in block:
                        coeffs[i] = rng.randrange(-2, 3)
                return SurfaceClass(amb, True, rng.choice([2, 0, -2, -4]), HClass(coeffs))
            return SurfaceClass(amb, False, rng.randrange(-6, 2), None, rng.randrange(-6, 7))

        a, b = make(ba), make(bb)
        out = connected_sum(a, b)
        crit.equal(i_total(a) + i_total(b) - 2, i_total(out), f"I additivity, trial {trials}")
        if out.orientable and a.hclass is not None and b.hclass is not None:
            pa, pb = i_pm(a), i_pm(b)
            crit.equal(
                (pa[0] + pb[0] - 1, pa[1] + pb[1] - 1),
                i_pm(out),
                f"I+- additivity, trial {trials}",
            )
            plus, minus = i_pm(out)
            crit.equal(plus + minus, i_total(out), f"I = I+ + I-, trial {trials}")
        trials += 1
    crit.finish()


def test_criterion_5_characteristic_parity():
    crit = _Criterion(5, "c1 pairings are characteristic on the catalog and blow-up towers")
    surfaces = [cp2(), k3()] + [e(n) for n in range(1, 7)]
    tower = cp2()
    for _ in range(20):
        tower = blow_up(tower)
        surfaces.append(tower)
    tower = k3()
    for _ in range(20):
        tower = blow_up(tower)
        surfaces.append(tower)
    for x in surfaces:
        g = x.lattice.gram
        for i in range(x.rank):
            ci = x.pair(x.c1, basis_class(x.lattice, i))
            crit.check((ci - g[i][i]) % 2 == 0, f"parity fails in {x.label} at basis {i}")
    crit.finish()


def test_criterion_6_bishop_numeric_suite():
    crit = _Criterion(6, "numerical scans: torus, round sphere, model graphs, wrinkled sphere")
    crit.equal(0, len(find_complex_points(flat_torus(), 256)), "complex points on the flat torus")

    rep = survey(round_sphere(), 256)
    crit.equal(2, len(rep.points), "complex points on the round sphere")
    crit.check(all(p.ptype is PointType.ELLIPTIC for p in rep.points), "sphere points must be elliptic")
    crit.equal([-1, 1], sorted(p.sign for p in rep.points), "sphere point signs")
    crit.equal(2, rep.i_total, "I of the sphere")
    crit.equal((1, 1), (rep.i_plus, rep.i_minus), "I+- of the sphere")
    cell = 2.3 / 256
    for p in rep.points:
        crit.check(
            math.hypot(*p.location) <= 2 * cell,
            f"sphere point {p.location} farther than 2 cells from the pole",
        )

    for a0 in (0.0, 0.5, 2.0, 10.0):
        pts = find_complex_points(graph_normal_form(a0), 256)
        crit.equal(1, len(pts), f"point count on the model graph alpha={a0}")
        if pts:
            crit.check(
                abs(pts[0].alpha - a0) <= 1e-6,
                f"alpha recovery off on the model graph: {pts[0].alpha} vs {a0}",
            )

    coarse = survey(wrinkled_sphere(), 256)
    fine = survey(wrinkled_sphere(), 512)
    crit.equal(2, coarse.e_count - coarse.h_count, "e - h on the wrinkled sphere")
    crit.check(coarse.e_count >= 2, "wrinkled sphere needs e >= 2")
    crit.equal(coarse.e_count - 2, coarse.h_count, "h = e - 2 on the wrinkled sphere")
    crit.equal(
        (coarse.e_count, coarse.h_count), (fine.e_count, fine.h_count),
        "counts stable under grid doubling",
    )
    for p in coarse.points:
        q = min(
            (q for q in fine.points if q.chart == p.chart),
            key=lambda q: math.hypot(q.location[0] - p.location[0], q.location[1] - p.location[1]),
        )
        crit.check(
            abs(p.alpha - q.alpha) <= 1e-4,
            f"wrinkled-sphere alpha unstable under refinement: {p.alpha} vs {q.alpha}",
        )
    crit.finish()


def _winding_linear(b, c, samples=4096):
    total = 0.0
    prev = None
    for k in range(samples + 1):
        z = cmath.exp(2j * math.pi * k / samples)
        w = b * z + 2 * c * z.conjugate()
        ph = math.atan2(w.imag, w.real)
        if prev is not None:
            total += (ph - prev + math.pi) % (2 * math.pi) - math.pi
        prev = ph
    return round(total / (2 * math.pi))


def test_criterion_7_bishop_invariance_and_winding_oracle():
    crit = _Criterion(7, "alpha invariance under reparametrization; winding-index oracle")
    rng = random.Random(32)
    for trial in range(200):
        a = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        b = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        c = complex(rng.uniform(0.1, 3), rng.uniform(0.1, 3))
        theta = rng.uniform(0, 2 * math.pi)
        lam = cmath.rect(rng.uniform(0.25, 4), rng.uniform(0, 2 * math.pi))
        shift = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        rot = cmath.exp(2j * theta)
        before = bishop_alpha(Jet2(a, b, c))
        after = bishop_alpha(Jet2(lam * a * rot + shift, lam * b, lam * c / rot))
        crit.check(
            abs(after - before) <= 1e-9 * max(1.0, abs(before)),
            f"alpha moved under reparametrization at trial {trial}: {before} -> {after}",
        )
    done = 0
    while done < 200:
        b = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        c = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if abs(abs(b) - 2 * abs(c)) < 0.05 * max(abs(b), 2 * abs(c), 1e-3):
            continue
        got = classify(bishop_alpha(Jet2(0.0, b, c)), parabolic_band=0.0)
        expected_elliptic = _winding_linear(b, c) == 1
        crit.equal(
            expected_elliptic,
            got is PointType.ELLIPTIC,
            f"winding oracle disagrees at B={b}, C={c}",
        )
        done += 1
    crit.finish()
