"""4D constructions and their diagnostics."""

import numpy as np
import pytest

from weylab import jets
from weylab.catalog import make_catalog_space
from weylab.charts import ConstField, ExprField, FormField, LambdaField, MetricField
from weylab.curvature import curvature_report_at, frobenius_norm
from weylab.metrics4d import (
    EINSTEIN_SCAL,
    Metric4Bundle,
    assemble_from_monopole,
    complex_structure_checks_at,
    einstein_selfdual_report_at,
    explicit_einstein_hypercomplex_family,
    hitchin_lebrun_metric,
    ix_projective_agreement_at,
    jones_tod_extract_at,
    sfk_linear_residual_at,
    sfk_metric,
    submersion_residuals_at,
    theorem_ix_metric,
)
from weylab.monopoles import AbelianMonopole, MonopoleError, make_catalog_monopole


def flat_trivial_bundle():
    W = make_catalog_space("flat-r3")
    m = AbelianMonopole(ConstField(W.chart, 1.0), FormField.zero_form(W.chart))
    return assemble_from_monopole(W, m)


class TestAssemble:
    def test_trivial_data_gives_flat_space(self):
        M = flat_trivial_bundle()
        rep = einstein_selfdual_report_at(M, (0.1, 0.2, 0.3, 0.5))
        assert rep.einstein_residual == 0.0
        assert rep.scal == 0.0
        assert rep.sd_weyl_norm == 0.0 and rep.asd_weyl_norm == 0.0

    def test_gibbons_hawking_hyperkahler(self):
        W = make_catalog_space("flat-r3")
        gh = make_catalog_monopole("gibbons-hawking", W)
        M = assemble_from_monopole(W, gh)
        for p in M.sample(3, seed=1):
            rep = einstein_selfdual_report_at(M, p)
            crep = curvature_report_at(M.g, None, p, 2)
            ricci = frobenius_norm(crep.ricci_sym, crep.metric0, crep.metric0_inv, "dd")
            assert ricci < 1e-9
            assert rep.asd_weyl_norm < 1e-9
            assert rep.sd_weyl_norm > 1e-2
            ck, tri = submersion_residuals_at(M, p)
            assert ck < 1e-9 and tri < 1e-9

    def test_strachan_selfdual(self):
        W = make_catalog_space("hypercr-toda", {"h": "i"})
        st = make_catalog_monopole("strachan", W, {"f": "1"})
        M = assemble_from_monopole(W, st)
        for p in M.sample(3, seed=2):
            rep = einstein_selfdual_report_at(M, p)
            assert rep.asd_weyl_norm < 1e-9
            assert rep.sd_weyl_norm > 1e-2

    def test_nonsolution_breaks_selfduality(self):
        W = make_catalog_space("flat-r3")
        gh = make_catalog_monopole("gibbons-hawking", W)
        bad = AbelianMonopole(
            w=gh.w,
            A=FormField(
                W.chart,
                1,
                {
                    (0,): gh.A.component((0,)),
                    (1,): gh.A.component((1,)),
                    (2,): ExprField(W.chart, "0.1*x"),
                },
            ),
        )
        M = assemble_from_monopole(W, bad)
        worst = max(einstein_selfdual_report_at(M, p).asd_weyl_norm for p in M.sample(3, seed=3))
        assert worst > 1e-4

    def test_vanishing_w_rejected(self):
        W = make_catalog_space("flat-r3")
        m = AbelianMonopole(ExprField(W.chart, "x"), FormField.zero_form(W.chart))
        with pytest.raises(MonopoleError):
            assemble_from_monopole(W, m)

    def test_base_gauge_is_conformal_rescale(self):
        W = make_catalog_space("flat-r3")
        gh = make_catalog_monopole("gibbons-hawking", W)
        Mw = assemble_from_monopole(W, gh, gauge="w")
        Mb = assemble_from_monopole(W, gh, gauge="base")
        p = Mw.sample(1, seed=4)[0]
        rep = einstein_selfdual_report_at(Mb, p)
        assert rep.asd_weyl_norm < 1e-9  # conformally invariant statement
        gw = Mw.g.component_jets(p, 0)
        gb = Mb.g.component_jets(p, 0)
        w_val = gh.w.eval_jet(tuple(p[:3]), 0).value
        assert gw[3, 3].value == pytest.approx(gb[3, 3].value * w_val)


class TestFillingMetrics:
    def test_hitchin_lebrun_flat(self):
        W = make_catalog_space("flat-r3")
        M = hitchin_lebrun_metric(W)
        for p in M.sample(3, seed=5):
            rep = einstein_selfdual_report_at(M, p)
            assert rep.einstein_residual < 1e-10
            assert abs(rep.scal - EINSTEIN_SCAL) < 1e-10
            assert rep.asd_weyl_norm < 1e-10 and rep.sd_weyl_norm < 1e-10
            ck, leg = submersion_residuals_at(M, p)
            assert ck < 1e-10 and leg < 1e-10

    def test_hitchin_lebrun_round_s3_is_space_form(self):
        W = make_catalog_space("round-s3")
        M = hitchin_lebrun_metric(W)
        assert M.chart.sample_domain["t"][1] == pytest.approx(0.9)
        for p in M.sample(2, seed=6):
            rep = einstein_selfdual_report_at(M, p)
            assert rep.einstein_residual < 1e-10
            assert abs(rep.scal - EINSTEIN_SCAL) < 1e-10
            assert rep.sd_weyl_norm < 1e-10 and rep.asd_weyl_norm < 1e-10

    def test_hitchin_lebrun_ward_toda(self):
        W = make_catalog_space("ward-toda", {"V": "log(rho)"})
        M = hitchin_lebrun_metric(W)
        for p in M.sample(2, seed=7):
            rep = einstein_selfdual_report_at(M, p)
            assert rep.einstein_residual < 1e-10
            assert rep.asd_weyl_norm < 1e-10
            ck, leg = submersion_residuals_at(M, p)
            assert leg < 1e-10

    def test_theorem_ix_round_s3(self):
        W = make_catalog_space("round-s3")
        M = theorem_ix_metric(W)
        for p in M.sample(2, seed=8):
            rep = einstein_selfdual_report_at(M, p)
            assert rep.einstein_residual < 1e-10
            assert rep.asd_weyl_norm < 1e-10

    def test_theorem_ix_geodesic_symmetry(self):
        W = make_catalog_space("geodesic-symmetry", {"f": "1"})
        M = theorem_ix_metric(W)
        for p in M.sample(2, seed=9):
            rep = einstein_selfdual_report_at(M, p)
            assert rep.einstein_residual < 1e-10
            assert rep.asd_weyl_norm < 1e-10

    def test_theorem_ix_needs_twist(self):
        W = make_catalog_space("ward-toda", {"V": "eta"})
        with pytest.raises(ValueError):
            theorem_ix_metric(W)

    def test_explicit_family_H_value(self):
        M = explicit_einstein_hypercomplex_family("i")
        gtt = M.g.component(3, 3).eval_jet((0.0, 0.0, 1.0, 0.3), 0).value
        assert 1.0 / (gtt * 0.3**2) == pytest.approx(0.7)

    @pytest.mark.parametrize("h", ["i", "zeta^2 + i"])
    def test_explicit_family_einstein(self, h):
        M = explicit_einstein_hypercomplex_family(h)
        for p in M.sample(2, seed=10):
            rep = einstein_selfdual_report_at(M, p)
            assert rep.einstein_residual < 1e-10
            assert abs(rep.scal - EINSTEIN_SCAL) < 1e-10
            assert rep.asd_weyl_norm < 1e-10

    def test_explicit_family_generic_h_has_sd_weyl(self):
        M = explicit_einstein_hypercomplex_family("zeta^2 + i")
        worst = max(einstein_selfdual_report_at(M, p).sd_weyl_norm for p in M.sample(3, seed=11))
        assert worst > 1e-3

    @pytest.mark.parametrize(
        "name,params",
        [
            ("hypercr-toda", {"h": "i"}),
            ("hypercr-toda", {"h": "zeta^2 + i"}),
            ("geodesic-symmetry", {"f": "1"}),
        ],
    )
    def test_ix_agrees_with_hitchin_lebrun(self, name, params):
        W = make_catalog_space(name, params)
        for p in W.sample(2, seed=12):
            assert ix_projective_agreement_at(W, p + (0.25,)) < 1e-10


class TestSFK:
    def setup_method(self):
        self.W = make_catalog_space("geodesic-symmetry", {"f": "1"})
        self.chi = self.W.congruences["beta"]
        self.rho = ConstField(self.W.chart, 1.0)
        self.Phi0 = FormField.zero_form(self.W.chart)

    def test_flat_case(self):
        W = make_catalog_space("flat-r3")
        M = sfk_metric(W, W.congruences["dz"], ConstField(W.chart, 1.0), FormField.zero_form(W.chart))
        rep = einstein_selfdual_report_at(M, (0.1, 0.2, 0.3, 0.5))
        assert rep.einstein_residual == 0.0 and rep.scal == 0.0
        assert sfk_linear_residual_at(W, W.congruences["dz"], ConstField(W.chart, 1.0),
                                      FormField.zero_form(W.chart), (0.1, 0.2, 0.3)) == 0.0

    def test_family_is_scalar_flat_kahler(self):
        M = sfk_metric(self.W, self.chi, self.rho, self.Phi0)
        for p in M.sample(3, seed=13):
            rep = einstein_selfdual_report_at(M, p)
            assert abs(rep.scal) < 1e-10
            nij, kah = complex_structure_checks_at(M, self.chi, p)
            assert nij < 1e-10 and kah < 1e-10
            assert sfk_linear_residual_at(self.W, self.chi, self.rho, self.Phi0, tuple(p[:3])) < 1e-10

    def test_perturbed_phi_detected(self):
        Phi_bad = FormField(self.W.chart, 1, {(0,): ConstField(self.W.chart, 0.1)})
        p3 = self.W.sample(1, seed=14)[0]
        assert sfk_linear_residual_at(self.W, self.chi, self.rho, Phi_bad, p3) > 1e-4
        M = sfk_metric(self.W, self.chi, self.rho, Phi_bad)
        p4 = M.sample(1, seed=15)[0]
        assert abs(einstein_selfdual_report_at(M, p4).scal) > 1e-4


class TestComplexStructures:
    def test_flat_constant_J(self):
        M = flat_trivial_bundle()
        W = M.base
        nij, kah = complex_structure_checks_at(M, W.congruences["dz"], (0.1, 0.2, 0.3, 0.5))
        assert nij == 0.0 and kah == 0.0

    def test_strachan_integrable(self):
        W = make_catalog_space("hypercr-toda", {"h": "i"})
        st = make_catalog_monopole("strachan", W, {"f": "1"})
        M = assemble_from_monopole(W, st)
        for p in M.sample(2, seed=16):
            nij, _ = complex_structure_checks_at(M, W.congruences["dz"], p)
            assert nij < 1e-10

    def test_sheared_congruence_not_integrable(self):
        W = make_catalog_space("hypercr-toda", {"h": "i"})
        st = make_catalog_monopole("strachan", W, {"f": "1"})
        M = assemble_from_monopole(W, st)
        sheared = FormField(
            W.chart, 1, {(2,): ConstField(W.chart, 1.0), (0,): ConstField(W.chart, 0.2)}
        )
        worst = max(
            complex_structure_checks_at(M, sheared, p)[0] for p in M.sample(2, seed=17)
        )
        assert worst > 1e-3

    def test_gibbons_hawking_hyperkahler_form_parallel(self):
        W = make_catalog_space("flat-r3")
        gh = make_catalog_monopole("gibbons-hawking", W)
        M = assemble_from_monopole(W, gh)
        for p in M.sample(2, seed=18):
            nij, kah = complex_structure_checks_at(M, W.congruences["dz"], p)
            assert nij < 1e-10 and kah < 1e-10


class TestRoundtrips:
    def bundles(self):
        W_flat = make_catalog_space("flat-r3")
        gh = make_catalog_monopole("gibbons-hawking", W_flat)
        yield assemble_from_monopole(W_flat, gh)
        W_toda = make_catalog_space("hypercr-toda", {"h": "i"})
        st = make_catalog_monopole("strachan", W_toda, {"f": "1"})
        yield assemble_from_monopole(W_toda, st)
        yield hitchin_lebrun_metric(make_catalog_space("ward-toda", {"V": "eta"}))
        yield theorem_ix_metric(make_catalog_space("geodesic-symmetry", {"f": "1"}))
        yield explicit_einstein_hypercomplex_family("i")

    def test_recovery(self):
        for M in self.bundles():
            for p in M.sample(2, seed=19):
                jt = jones_tod_extract_at(M, p)
                assert jt["f0_sd_residual"] < 1e-9, M.construction
                assert jt["recovered_base_mismatch"] < 1e-9, M.construction

    def test_trivial_bundle_values(self):
        M = flat_trivial_bundle()
        jt = jones_tod_extract_at(M, (0.1, 0.2, 0.3, 0.5))
        assert np.max(np.abs(jt["omega_jt"])) == 0.0
        assert np.max(np.abs(jt["gamma0"])) == 0.0
        assert jt["recovered_base_mismatch"] == 0.0


class TestConformalCovariance:
    def test_rescaled_bundle_keeps_invariant_statements(self):
        W = make_catalog_space("flat-r3")
        gh = make_catalog_monopole("gibbons-hawking", W)
        M = assemble_from_monopole(W, gh)
        f = ExprField(M.chart, "0.2*sin(x) + 0.1*y*t")

        def scaled(field):
            def fn(point, order):
                return jets.exp(2.0 * f.eval_jet(point, order)) * field.eval_jet(point, order)

            return LambdaField(M.chart, fn, depth=field.derivative_depth)

        g2 = MetricField(
            M.chart,
            {(i, j): scaled(M.g.component(i, j)) for i in range(4) for j in range(i, 4)},
            orientation_sign=M.g.orientation_sign,
        )
        M2 = Metric4Bundle(M.chart, g2, M.base, "monopole-rescaled")
        for p in M.sample(2, seed=20):
            rep = einstein_selfdual_report_at(M2, p)
            assert rep.asd_weyl_norm < 1e-9
            ck, _ = submersion_residuals_at(M2, p)
            assert ck < 1e-9
