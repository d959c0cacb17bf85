from fractions import Fraction

import pytest

import hypomean.positivity as positivity
from hypomean import (
    CertifyOptions,
    DegenerateFactorError,
    DeltaSequence,
    FactorableGenerators,
    MatrixKind,
    StructureError,
    TableWeights,
    TridiagonalForm,
    Verdict,
    certify,
    check_delta_bounds,
    d_closed_odd,
    delta_final_lower_bound_odd,
    delta_lower_bound_odd,
    delta_sequence,
    elimination_multiplier,
    finite_section,
    leading_minors,
    q_entry,
    s_closed_odd,
    tridiagonalize,
    z_closed_odd,
)
from hypomean.matrices import ExactMatrix

F = Fraction


class TestEliminationMultiplier:
    def test_closed_values(self):
        assert z_closed_odd(0) == F(3, 4)
        assert z_closed_odd(1) == F(8, 9)

    def test_matches_closed_form_to_50(self, odd_gens):
        for n in range(51):
            assert elimination_multiplier(odd_gens, n) == z_closed_odd(n)

    def test_constant_weights_give_zero_multiplier(self):
        g = FactorableGenerators(TableWeights((1, 1, 1, 1)))
        assert elimination_multiplier(g, 0) == 0
        assert elimination_multiplier(g, 1) == 0

    def test_cesaro_multiplier_is_one(self, cesaro_gens):
        # the column factor is a constant for w_n = n+1
        assert elimination_multiplier(cesaro_gens, 0) == 1
        assert elimination_multiplier(cesaro_gens, 7) == 1


class TestTridiagonalize:
    def test_n1_values(self, odd_gens):
        Q1 = finite_section(odd_gens, MatrixKind.Q, 1)
        T = tridiagonalize(Q1, [z_closed_odd(0)])
        assert T.d == (F(197, 720), F(83, 405))
        assert T.s == (F(-7, 36),)

    def test_n1_determinant_identity(self, odd_gens):
        Q1 = finite_section(odd_gens, MatrixKind.Q, 1)
        T = tridiagonalize(Q1, [z_closed_odd(0)])
        det_direct = Q1.entry(0, 0) * Q1.entry(1, 1) - Q1.entry(0, 1) ** 2
        assert det_direct == F(2663, 145800)
        assert T.d[0] * T.d[1] - T.s[0] ** 2 == F(2663, 145800)

    def test_n4_matches_closed_forms(self, odd_gens):
        Q4 = finite_section(odd_gens, MatrixKind.Q, 4)
        T = tridiagonalize(Q4, [z_closed_odd(n) for n in range(4)])
        assert T.d[0] == F(197, 720)
        assert T.d[1] == F(13488, 34020) == F(1124, 2835)
        for n in range(4):
            assert T.d[n] == d_closed_odd(n)
            assert T.s[n] == s_closed_odd(n)
        assert T.d[4] == q_entry(odd_gens, 4, 4)

    def test_wrong_multipliers_raise_structure_error(self, odd_gens):
        Q3 = finite_section(odd_gens, MatrixKind.Q, 3)
        with pytest.raises(StructureError) as exc:
            tridiagonalize(Q3, [F(1, 2)] * 3)
        i, j = exc.value.position
        assert abs(i - j) > 1

    def test_requires_symmetric_section(self, odd_gens):
        M1 = finite_section(odd_gens, MatrixKind.M, 1)
        with pytest.raises(ValueError):
            tridiagonalize(M1, [F(1)])

    def test_multiplier_count_checked(self, odd_gens):
        Q2 = finite_section(odd_gens, MatrixKind.Q, 2)
        with pytest.raises(ValueError):
            tridiagonalize(Q2, [F(1, 2)])


class TestDeltaSequence:
    def test_flagship_n1(self, odd_gens):
        Q1 = finite_section(odd_gens, MatrixKind.Q, 1)
        D = delta_sequence(tridiagonalize(Q1, [z_closed_odd(0)]))
        assert D.deltas[0] == F(197, 720)
        assert D.deltas[1] == F(83, 405) - F(245, 1773)
        assert D.all_positive and D.complete

    def test_decoupled_diagonal(self):
        D = delta_sequence(TridiagonalForm(d=(F(1), F(1)), s=(F(0),)))
        assert D.deltas == (F(1), F(1))
        assert D.all_positive

    def test_singular_two_by_two(self):
        D = delta_sequence(TridiagonalForm(d=(F(1), F(1)), s=(F(1),)))
        assert D.deltas == (F(1), F(0))
        assert D.stopped_at == 1
        assert not D.all_positive
        assert D.determinant() == 0

    def test_mid_zero_truncates(self):
        D = delta_sequence(TridiagonalForm(d=(F(1), F(1), F(9)), s=(F(1), F(1))))
        assert D.deltas == (F(1), F(0))
        assert D.stopped_at == 1
        assert D.truncated
        assert D.determinant() is None

    def test_negative_pivot_recorded(self):
        D = delta_sequence(TridiagonalForm(d=(F(1), F(1)), s=(F(2),)))
        assert D.deltas == (F(1), F(-3))
        assert D.first_nonpositive == 1
        assert D.determinant() == F(-3)


class TestLeadingMinors:
    def test_flagship_q1(self, odd_gens):
        Q1 = finite_section(odd_gens, MatrixKind.Q, 1)
        assert leading_minors(Q1) == [F(7, 72), F(2663, 145800)]

    def test_identity(self):
        eye = ExactMatrix(tuple(
            tuple(F(int(i == j)) for j in range(3)) for i in range(3)),
            symmetric=True)
        assert leading_minors(eye) == [F(1), F(1), F(1)]

    def test_zero_pivot_fallback(self):
        m = ExactMatrix(((F(0), F(1)), (F(1), F(0))), symmetric=True)
        assert leading_minors(m) == [F(0), F(-1)]

    def test_agrees_with_pivot_products(self, odd_gens):
        minors = leading_minors(finite_section(odd_gens, MatrixKind.Q, 10))
        for N in range(11):
            QN = finite_section(odd_gens, MatrixKind.Q, N)
            T = tridiagonalize(QN, [z_closed_odd(n) for n in range(N)])
            assert delta_sequence(T).determinant() == minors[N]


class TestDeltaBounds:
    def test_base_anchor_cross_multiplication(self):
        assert delta_lower_bound_odd(0) == F(10, 37)
        assert 197 * 37 == 7289 > 7200 == 720 * 10
        assert F(197, 720) > F(10, 37)

    def test_final_bound_at_n1(self, odd_gens):
        Q1 = finite_section(odd_gens, MatrixKind.Q, 1)
        D = delta_sequence(tridiagonalize(Q1, [z_closed_odd(0)]))
        assert delta_final_lower_bound_odd(1) == F(7587, 116640)
        report = check_delta_bounds(D, 1)
        assert report.final_ok
        assert not report.lower_bound_failures

    def test_second_floor_value(self, odd_gens):
        assert delta_lower_bound_odd(1) == F(14, 61)
        Q2 = finite_section(odd_gens, MatrixKind.Q, 2)
        D = delta_sequence(tridiagonalize(Q2, [z_closed_odd(n) for n in range(2)]))
        assert D.deltas[1] > F(14, 61)

    def test_requires_complete_sequence(self):
        D = delta_sequence(TridiagonalForm(d=(F(1), F(1), F(9)), s=(F(1), F(1))))
        with pytest.raises(ValueError):
            check_delta_bounds(D, 2)


class TestCertify:
    def test_flagship_n0(self, odd_gens):
        report = certify(odd_gens, 0)
        assert report.verdict is Verdict.CERTIFIED_POSITIVE
        assert report.determinant == F(7, 72)

    def test_flagship_n100_with_bounds_and_minors(self, odd_gens):
        report = certify(odd_gens, 100, CertifyOptions(
            bounds=True, cross_check_minors=True))
        assert report.verdict is Verdict.CERTIFIED_POSITIVE
        assert report.min_delta > 0
        assert report.bound_report is not None and report.bound_report.all_ok
        assert report.minors_agree

    def test_cesaro_n50(self, cesaro_gens):
        report = certify(cesaro_gens, 50)
        assert report.verdict is Verdict.CERTIFIED_POSITIVE
        assert report.min_delta > 0

    def test_steep_family_n30(self, steep_gens):
        report = certify(steep_gens, 30)
        assert report.verdict is Verdict.CERTIFIED_POSITIVE

    def test_constant_weights_certify(self):
        g = FactorableGenerators(TableWeights((1, 1, 1, 1)))
        report = certify(g, 2)
        assert report.verdict is Verdict.CERTIFIED_POSITIVE
        # Q is diagonal for constant weights: 1/(j+2) on the diagonal
        assert report.determinant == F(1, 2) * F(1, 3) * F(1, 4)

    def test_refusal_without_override(self):
        g = FactorableGenerators(TableWeights((1, F(1, 100), F(1, 100))))
        report = certify(g, 0)
        assert report.verdict is Verdict.INCONCLUSIVE
        assert "refused" in report.notes
        assert report.determinant is None

    def test_override_reaches_not_positive(self):
        g = FactorableGenerators(TableWeights((1, F(1, 100), F(1, 100))))
        assert q_entry(g, 0, 0) < 0
        report = certify(g, 0, CertifyOptions(override_hypotheses=True))
        assert report.verdict is Verdict.NOT_POSITIVE
        assert "refused" not in report.notes

    def test_minors_only_route(self, odd_gens):
        default = certify(odd_gens, 10)
        minors_only = certify(odd_gens, 10, CertifyOptions(minors_only=True))
        assert minors_only.verdict is Verdict.CERTIFIED_POSITIVE
        assert minors_only.used_minors_fallback
        assert minors_only.determinant == default.determinant

    def test_degenerate_multiplier_falls_back(self, odd_gens, monkeypatch):
        def boom(g, n):
            raise DegenerateFactorError("forced for testing")
        monkeypatch.setattr(positivity, "elimination_multiplier", boom)
        report = positivity.certify(odd_gens, 6)
        assert report.used_minors_fallback
        assert report.verdict is Verdict.CERTIFIED_POSITIVE

    def test_bounds_skipped_off_family(self, cesaro_gens):
        report = certify(cesaro_gens, 5, CertifyOptions(bounds=True))
        assert report.bound_report is None
        assert "skipped" in report.notes

    def test_report_json_shape(self, odd_gens):
        payload = certify(odd_gens, 3).to_json_dict()
        for key in ("family", "N", "verdict", "determinant", "min_delta",
                    "bound_failures", "hypothesis", "notes"):
            assert key in payload
        assert "timings" not in payload
        assert payload["verdict"] == "CertifiedPositive"
        assert payload["hypothesis"]["all_passed"] is True

    def test_negative_n_rejected(self, odd_gens):
        with pytest.raises(ValueError):
            certify(odd_gens, -1)
