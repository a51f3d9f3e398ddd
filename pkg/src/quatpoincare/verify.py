"""Named checks run against an algebra, collected into a report."""
from __future__ import annotations

from . import epa, homgeom, twistor
from .epa import ALTERNATING, EPA
from .errors import ClosureViolation, KernelMismatch
from .exactla import fmt_rational, inertia

CHECKS = ("jacobi", "b-properties", "kernel", "decomposition", "classify",
          "metric-signature", "nomizu-oracle", "torsion", "normalizer", "einstein",
          "twistor-closure", "contact")

PASS, FAIL, SKIP = "pass", "fail", "skipped"


def _result(name, status, summary, **artifacts) -> dict:
    return {"name": name, "status": status, "residual_summary": summary, "artifacts": artifacts}


class Verifier:
    def __init__(self, alg: EPA):
        self.alg = alg
        self._cache: dict = {}

    def cached(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    # shared artifacts
    @property
    def geometric(self) -> bool:
        return self.alg.p >= 3 and self.alg.W.dim > 0

    def space(self):
        return self.cached("space", lambda: homgeom.QuaternionicSpace(self.alg))

    def kernel_blocks(self):
        alg = self.alg
        blocks = []
        for k in range(len(alg.W.blocks)):
            sl = alg.W.block_slice(k)
            if all(P[sl, :].is_zero() for P in alg.P):
                blocks.append(k)
        return blocks

    def connection(self):
        def build():
            sp = self.space()
            if sp.is_nondegenerate():
                return homgeom.nomizu_closed_form(sp), "levi-civita"
            try:
                return homgeom.nomizu_degenerate_extension(sp, self.kernel_blocks()), "extension"
            except KernelMismatch:
                return None, "kernel not a union of blocks"
        return self.cached("connection", build)

    # checks
    def check_jacobi(self):
        alg = self.alg
        if not alg.graded_antisymmetry_ok():
            return _result("jacobi", FAIL, "bracket is not graded antisymmetric")
        bad = alg.jacobi_violation()
        if bad is not None:
            return _result("jacobi", FAIL, f"Jacobi fails on basis triple {list(bad[0])}",
                           triple=list(bad[0]))
        rebuilt = EPA(alg.W, alg.P, alg.variant)
        if rebuilt.structure != alg.structure:
            return _result("jacobi", FAIL, "structure constants disagree with Pi")
        return _result("jacobi", PASS, "graded Jacobi identity holds exactly")

    def check_b_properties(self):
        if not self.geometric:
            return _result("b-properties", SKIP, "needs p >= 3 and W != 0")
        r = epa.check_b_equivariance(self.alg)
        bad = {k: r[k]["violations"] for k in ("wedge2_E", "wedge2_Eprime", "E_wedge_Eprime")
               if r[k]["violations"]}
        status = PASS if r["ok"] else FAIL
        return _result("b-properties", status,
                       "symmetry, equivariance and frame covariance" if r["ok"] else f"violations {bad}",
                       symmetric=r["b_symmetric"], skew=r["b_skew"],
                       frame_rotation=r["frame_rotation_ok"], frame_swap=r["frame_swap_ok"])

    def check_kernel(self):
        if not self.geometric:
            return _result("kernel", SKIP, "needs p >= 3 and W != 0")
        r = epa.kernel_compare(self.alg)
        return _result("kernel", PASS if r["equal"] else FAIL,
                       f"dim ker Pi = {r['dim_ker_pi']}, dim ker b = {r['dim_ker_b']}",
                       dim_kernel=r["dim_ker_pi"])

    def check_decomposition(self):
        if not self.geometric:
            return _result("decomposition", SKIP, "needs p >= 3 and W != 0")
        d = epa.decompose(self.alg)
        ok = d["b_orthogonal"] and d["kernel_equal"]
        return _result("decomposition", PASS if ok else FAIL,
                       "blocks are b-orthogonal" if ok else "blocks are not b-orthogonal",
                       blocks=[{"label": b.label, "flag": b.flag} for b in d["blocks"]])

    def check_classify(self):
        alg = self.alg
        if alg.variant != ALTERNATING or alg.p % 4 != 3 or not alg.W.dim:
            return _result("classify", SKIP, "needs the even variant with p = 3 mod 4")
        label = epa.classify(alg)
        others = [epa.classify(EPA(alg.W, [P.scale(c) for P in alg.P])) for c in (-1, 4)]
        ok = all(o == label for o in others)
        return _result("classify", PASS if ok else FAIL,
                       f"class {label}" if ok else "class changes under rescaling Pi",
                       label=list(label.value))

    def check_metric_signature(self):
        if not self.geometric or self.alg.variant != ALTERNATING:
            return _result("metric-signature", SKIP, "needs the even variant with p >= 3")
        sp = self.space()
        if not sp.is_nondegenerate():
            return _result("metric-signature", SKIP, "metric is degenerate")
        r = homgeom.metric_signature(sp)
        ok = r["positive_definite"] == r["predicted_positive"]
        return _result("metric-signature", PASS if ok else FAIL,
                       f"inertia {r['inertia']}", inertia=list(r["inertia"]),
                       positive_definite=r["positive_definite"])

    def check_nomizu_oracle(self):
        if not self.geometric or not self.space().is_nondegenerate():
            return _result("nomizu-oracle", SKIP, "needs a nondegenerate metric")
        sp = self.space()
        ok, bad = homgeom.nomizu_equal(homgeom.nomizu_closed_form(sp), homgeom.nomizu_koszul_oracle(sp))
        return _result("nomizu-oracle", PASS if ok else FAIL,
                       "closed form equals Koszul solution" if ok else
                       f"differs at {[self.alg.labels[x] for x in bad]}")

    def check_torsion(self):
        if not self.geometric:
            return _result("torsion", SKIP, "needs p >= 3 and W != 0")
        L, kind = self.connection()
        if L is None:
            return _result("torsion", SKIP, kind)
        r = homgeom.torsion(self.space(), L)
        return _result("torsion", PASS if r["zero"] else FAIL,
                       f"{kind} connection, {len(r['violations'])} nonzero pairs", connection=kind)

    def check_normalizer(self):
        if not self.geometric:
            return _result("normalizer", SKIP, "needs p >= 3 and W != 0")
        L, kind = self.connection()
        if L is None:
            return _result("normalizer", SKIP, kind)
        sp = self.space()
        r = homgeom.check_normalizer(sp, L)
        neg = homgeom.check_normalizer(sp, homgeom.negative_control(sp, L))
        ok = r["normalizes"] and not neg["normalizes"]
        return _result("normalizer", PASS if ok else FAIL,
                       f"{kind} connection normalizes Q; negative control rejected" if ok else
                       "normalizer check failed", connection=kind)

    def check_einstein(self):
        if not self.geometric or not self.space().is_nondegenerate():
            return _result("einstein", SKIP, "needs a nondegenerate metric")
        sp = self.space()
        L, _ = self.connection()
        r = homgeom.curvature_and_einstein(sp, L)
        c = r["einstein_c"]
        riem = (self.alg.variant == ALTERNATING and self.alg.p == 3
                and inertia(-sp.b).n_plus == self.alg.W.dim)
        ok = r["einstein"] and r["Q_preserved_by_R"] and (not riem or c < 0)
        return _result("einstein", PASS if ok else FAIL,
                       f"Ric = {fmt_rational(c)} g" if c is not None else "Ric not proportional to g",
                       einstein_c=None if c is None else fmt_rational(c), riemannian=riem,
                       Q_preserved_by_R=r["Q_preserved_by_R"])

    def _twistor(self):
        def build():
            L, kind = self.connection()
            return None if L is None else twistor.build_z_and_lift(self.space(), L)
        return self.cached("twistor", build)

    def check_twistor_closure(self):
        if not self.geometric or self.alg.variant != ALTERNATING:
            return _result("twistor-closure", SKIP, "needs the even variant with p >= 3")
        td = self._twistor()
        if td is None:
            return _result("twistor-closure", SKIP, "no connection available")
        r = twistor.check_distribution_invariance(td)
        ok = r["h_subalgebra"] and r["invariant"] and r["codimension_one"]
        return _result("twistor-closure", PASS if ok else FAIL,
                       f"dim h = {r['dim_h']}, dim D = {r['dim_hor10']}, dim g = {r['dim_g']}",
                       h_subalgebra=r["h_subalgebra"], invariant=r["invariant"])

    def check_contact(self):
        if not self.geometric or self.alg.variant != ALTERNATING:
            return _result("contact", SKIP, "needs the even variant with p >= 3")
        td = self._twistor()
        if td is None:
            return _result("contact", SKIP, "no connection available")
        try:
            r = twistor.frobenius_form(td)
        except ClosureViolation as exc:
            return _result("contact", FAIL, str(exc))
        nondeg = epa.kernel_compare(self.alg)["dim_ker_pi"] == 0
        ok = (r["verdict"] == "contact") == nondeg and r["cross_zero"] and r["mV_nondegenerate"]
        return _result("contact", PASS if ok else FAIL,
                       f"rank {r['rank']} of {r['dim']}", verdict=r["verdict"])

    def run(self, names=CHECKS) -> dict:
        results = [getattr(self, "check_" + n.replace("-", "_"))() for n in names]
        counts = {s: sum(r["status"] == s for r in results) for s in (PASS, FAIL, SKIP)}
        return {"schema_version": 1,
                "signature": {"p": self.alg.p, "q": self.alg.q},
                "variant": self.alg.variant,
                "checks": results,
                "summary": counts,
                "ok": counts[FAIL] == 0}


def report_text(report: dict) -> str:
    lines = []
    for r in report["checks"]:
        extra = ""
        if "einstein_c" in r["artifacts"] and r["artifacts"]["einstein_c"] is not None:
            extra = f" [c = {r['artifacts']['einstein_c']}]"
        lines.append(f"{r['name']}: {r['status'].upper()} ({r['residual_summary']}){extra}")
    s = report["summary"]
    lines.append(f"summary: {s['pass']} passed, {s['fail']} failed, {s['skipped']} skipped")
    return "\n".join(lines) + "\n"
