"""The rank comparison, its report object, and the serializers."""

from __future__ import annotations

import pytest

from amplehk.colimits import ColimitInvariants
from amplehk.errors import ModelInvalid, SimplicityNotCertified, TruncationUnsound
from amplehk.exact_linalg import FgAbelianGroup, IntMatrix
from amplehk.hkcheck import (
    VERDICT_MATCH,
    VERDICT_PRECONDITION_FAILED,
    free_graded_commutative_dims,
    group_from_json,
    group_to_json,
    hk_check,
    periodicize,
    periodicize_groups,
    report_from_json,
    report_to_json,
    report_to_json_text,
    report_to_text,
    smale_check,
    spectral_degeneration_ranks,
)
from amplehk.homology import GradedGroup, homology_sft
from amplehk.models import (
    BratteliModel,
    CantorZModel,
    ProductModel,
    SftModel,
    cyclic_group_groupoid,
    pair_groupoid,
)


def M(rows):
    return IntMatrix.from_rows(rows)


def Z(rank):
    return FgAbelianGroup.free(rank)


class TestPeriodicize:
    def test_exact_grading(self):
        h = GradedGroup((Z(1), Z(2), FgAbelianGroup.cyclic(2), Z(1)), vanishing_above=True)
        assert periodicize(h) == (1, 3)

    def test_truncation_must_be_acknowledged(self):
        h = GradedGroup((Z(1), Z(1)), vanishing_above=False)
        with pytest.raises(TruncationUnsound):
            periodicize(h)
        assert periodicize(h, acknowledge_truncation=True) == (1, 1)

    def test_group_level_sums(self):
        h = GradedGroup(
            (Z(1), FgAbelianGroup.cyclic(2), FgAbelianGroup(1, (3,))), vanishing_above=True
        )
        even, odd = periodicize_groups(h)
        assert even == FgAbelianGroup(2, (3,))
        assert odd == FgAbelianGroup.cyclic(2)

    def test_group_level_refuses_truncations(self):
        h = GradedGroup((Z(1),), vanishing_above=False)
        with pytest.raises(TruncationUnsound):
            periodicize_groups(h)

    def test_group_level_refuses_colimit_entries(self):
        h = GradedGroup(
            (ColimitInvariants(rank=1, torsion_free=True, verified_stage=2),),
            vanishing_above=True,
        )
        with pytest.raises(TruncationUnsound):
            periodicize_groups(h)


class TestHkCheck:
    def test_full_two_shift_matches_integrally(self):
        report = hk_check(SftModel(M([[1, 1], [1, 1]])))
        assert report.verdict == VERDICT_MATCH
        assert (report.even_rank, report.odd_rank) == (0, 0)
        assert report.rational_match is True
        assert report.integral_match is True
        assert report.truncation_degree is None
        assert all(p.holds for p in report.preconditions)

    def test_isotropy_torsion_fails_the_precondition(self):
        report = hk_check(cyclic_group_groupoid(2))
        assert report.verdict == VERDICT_PRECONDITION_FAILED
        assert report.ktheory is None
        assert report.rational_match is None
        assert any("a torsion-free group for all units" in n for n in report.notes)
        # Homology is still reported in full.
        assert [str(v) for v in report.homology.by_degree] == ["Z", "Z/2", "0", "Z/2"]
        names = {p.name: p for p in report.preconditions}
        assert not names["torsion_free_isotropy"].holds
        assert names["torsion_free_isotropy"].mode == "computed"

    def test_finite_principal_model_is_a_truncated_match(self):
        report = hk_check(pair_groupoid(2), max_degree=2)
        assert report.verdict == VERDICT_MATCH
        assert report.truncation_degree == 2
        assert any("verified up to degree 2" in n for n in report.notes)
        assert report.integral_match == "not_applicable"

    def test_odometer_matches_rationally(self):
        odo = CantorZModel(BratteliModel((1,), (), M([[2]])))
        report = hk_check(odo)
        assert report.verdict == VERDICT_MATCH
        assert (report.even_rank, report.odd_rank) == (1, 1)
        assert report.integral_match == "not_applicable"
        assert report.truncation_degree is None

    def test_product_matches_integrally(self):
        model = ProductModel(SftModel(M([[1]])), SftModel(M([[1]])))
        report = hk_check(model)
        assert report.verdict == VERDICT_MATCH
        assert report.integral_match is True
        assert (report.even_rank, report.odd_rank) == (2, 2)

    def test_stage_controls_the_certificate_stamp(self):
        odo = CantorZModel(BratteliModel((1,), (), M([[2]])))
        report = hk_check(odo, stage=5)
        assert report.homology.by_degree[0].verified_stage == 5

    def test_shape_violations_raise(self):
        with pytest.raises(ModelInvalid):
            hk_check(SftModel(M([[1, -1], [1, 1]])))

    def test_uncertified_simplicity_propagates(self):
        with pytest.raises(SimplicityNotCertified):
            hk_check(CantorZModel(BratteliModel((1,), (), M([[1]]))))

    def test_relabelling_units_changes_nothing(self):
        a = hk_check(pair_groupoid(3), max_degree=2)
        b = hk_check(pair_groupoid(3, prefix="w"), max_degree=2)
        assert a == b

    def test_rational_only_mode(self):
        report = hk_check(SftModel(M([[1]])), rational_only=True)
        assert report.verdict == VERDICT_MATCH


class TestSmale:
    def test_hyperbolic_automorphism_presentation(self):
        report = smale_check(M([[1, 1], [1, 0]]))
        assert report.dialect == "smale"
        assert report.model == "smale(sft(2 vertices))"
        assert report.verdict == VERDICT_MATCH
        assert (report.even_rank, report.odd_rank) == (0, 0)
        assert any("Smale reading" in n for n in report.notes)

    def test_fixed_point_ranks(self):
        report = smale_check(SftModel(M([[1]])))
        assert (report.even_rank, report.odd_rank) == (1, 1)
        assert report.rational_match is True

    def test_text_rendering_uses_smale_labels(self):
        text = report_to_text(smale_check(M([[1]])))
        assert "H^s_0" in text
        assert "K (unstable algebra)" in text


class TestSpectral:
    def test_degeneration_on_a_match(self):
        rep = spectral_degeneration_ranks(SftModel(M([[1, 1], [1, 1]])))
        assert rep.degenerates_rationally
        assert (rep.e2_even_rank, rep.e2_odd_rank) == (0, 0)
        assert (rep.k0_rank, rep.k1_rank) == (0, 0)

    def test_refuses_failed_preconditions(self):
        with pytest.raises(ValueError):
            spectral_degeneration_ranks(cyclic_group_groupoid(2))


class TestFreeGradedCommutativeDims:
    def test_single_even_generator(self):
        assert free_graded_commutative_dims(1, 0, 3) == [(1, 0)] * 4

    def test_single_odd_generator(self):
        assert free_graded_commutative_dims(0, 1, 2) == [(1, 0), (0, 1), (0, 0)]

    def test_mixed_generators(self):
        # Two even, one odd: word length 2 holds Sym^2 (dim 3) evenly and
        # (even)(odd) words (dim 2) oddly.
        assert free_graded_commutative_dims(2, 1, 2) == [(1, 0), (2, 1), (3, 2)]

    def test_no_generators(self):
        assert free_graded_commutative_dims(0, 0, 3) == [(1, 0), (0, 0), (0, 0), (0, 0)]

    def test_exterior_algebra_binomials(self):
        dims = free_graded_commutative_dims(0, 4, 4)
        flat = [e + o for e, o in dims]
        assert flat == [1, 4, 6, 4, 1]

    def test_negative_inputs_rejected(self):
        with pytest.raises(ValueError):
            free_graded_commutative_dims(-1, 0, 2)
        with pytest.raises(ValueError):
            free_graded_commutative_dims(0, 0, -1)


class TestSerialization:
    def test_group_round_trip(self):
        for value in (
            FgAbelianGroup(2, (2, 6)),
            FgAbelianGroup.zero(),
            ColimitInvariants(rank=3, torsion_free=True, verified_stage=4),
        ):
            assert group_from_json(group_to_json(value)) == value

    def test_report_round_trip(self):
        for report in (
            hk_check(SftModel(M([[1, 1], [1, 1]]))),
            hk_check(cyclic_group_groupoid(2)),
            hk_check(CantorZModel(BratteliModel((1,), (), M([[2]])))),
            smale_check(M([[1]])),
        ):
            assert report_from_json(report_to_json(report)) == report

    def test_json_text_is_deterministic(self):
        first = report_to_json_text(hk_check(SftModel(M([[3]]))))
        second = report_to_json_text(hk_check(SftModel(M([[3]]))))
        assert first == second
        assert first.endswith("\n")

    def test_text_rendering_mentions_the_essentials(self):
        text = report_to_text(hk_check(SftModel(M([[3]]))))
        assert "verdict: match" in text
        assert "H_0 = Z/2" in text
        assert "K_0 = Z/2" in text
        assert "rational_match: true" in text
        assert "integral_match: true" in text

    def test_text_marks_failed_preconditions(self):
        text = report_to_text(hk_check(cyclic_group_groupoid(2)))
        assert "FAILS" in text
        assert "verdict: precondition_failed" in text


class TestEngineCrossChecks:
    def test_sft_report_mirrors_engine_groups(self):
        model = SftModel(M([[3]]))
        report = hk_check(model)
        h = homology_sft(model)
        assert report.homology == h
        assert report.ktheory is not None
        assert report.ktheory.k0 == h.by_degree[0]
