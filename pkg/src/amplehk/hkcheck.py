"""Rank comparison between periodicized homology and K-theory.

The rational comparison theorem says: for an ample groupoid with torsion-free
isotropy whose class satisfies the rational Baum-Connes property, the rank of
K_0 equals the total rank of the even homology and the rank of K_1 the total
rank of the odd homology.  ``hk_check`` runs that comparison on a model and
returns a full report; ``smale_check`` is the same arithmetic dressed in
Smale-space terminology, and ``spectral_degeneration_ranks`` reframes it as
collapse of the homological spectral sequence after tensoring with Q.

Preconditions are handled honestly: for finite groupoids torsion-freeness of
the isotropy is computed exactly, for the symbolic classes it is declared
with a citation, and a failing precondition produces a report with verdict
``precondition_failed`` rather than a rank verdict either way.
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass

from .colimits import ColimitInvariants
from .errors import ModelInvalid, TruncationUnsound
from .exact_linalg import FgAbelianGroup, IntMatrix
from .homology import (
    DEFAULT_SIZE_BOUND,
    GradedGroup,
    GroupValue,
    group_rank,
    homology_of_model,
)
from .ktheory import KPair, ktheory_of_model
from .models import (
    BratteliModel,
    CantorZModel,
    FiniteGroupoid,
    GroupoidModel,
    ProductModel,
    SftModel,
    isotropy_report,
    model_summary,
    shape_violations,
)

__all__ = [
    "HKReport",
    "Precondition",
    "SpectralDegenerationReport",
    "VERDICT_MATCH",
    "VERDICT_MISMATCH",
    "VERDICT_PRECONDITION_FAILED",
    "free_graded_commutative_dims",
    "group_to_json",
    "hk_check",
    "periodicize",
    "periodicize_groups",
    "report_from_json",
    "report_to_json",
    "report_to_json_text",
    "report_to_text",
    "smale_check",
    "spectral_degeneration_ranks",
]

VERDICT_MATCH = "match"
VERDICT_MISMATCH = "mismatch"
VERDICT_PRECONDITION_FAILED = "precondition_failed"


@dataclass(frozen=True)
class Precondition:
    """One hypothesis of the comparison theorem, with its status and source."""

    name: str
    holds: bool
    mode: str  # "computed" or "declared"
    justification: str


@dataclass(frozen=True)
class HKReport:
    """Everything ``hk_check`` established about one model."""

    model: str
    dialect: str
    max_degree: int
    preconditions: tuple[Precondition, ...]
    homology: GradedGroup
    ktheory: KPair | None
    even_rank: int | None
    odd_rank: int | None
    rational_match: bool | None
    integral_match: bool | str | None
    truncation_degree: int | None
    verdict: str
    notes: tuple[str, ...]


def periodicize(h: GradedGroup, acknowledge_truncation: bool = False) -> tuple[int, int]:
    """Total even and odd ranks of a graded group.

    Summing a truncated grading silently would be unsound, so a group that
    does not vanish above its listed degrees must be acknowledged as a
    truncation by the caller.
    """
    if not h.vanishing_above and not acknowledge_truncation:
        raise TruncationUnsound(
            "graded group is a truncation; pass acknowledge_truncation=True to sum anyway"
        )
    even = sum(group_rank(v) for d, v in enumerate(h.by_degree) if d % 2 == 0)
    odd = sum(group_rank(v) for d, v in enumerate(h.by_degree) if d % 2 == 1)
    return even, odd


def periodicize_groups(h: GradedGroup) -> tuple[FgAbelianGroup, FgAbelianGroup]:
    """Even and odd direct sums as presented groups; needs all entries f.g.
    and an exact (non-truncated) grading."""
    if not h.vanishing_above:
        raise TruncationUnsound("cannot form exact periodicized groups from a truncation")
    if not h.all_finitely_generated():
        raise TruncationUnsound("colimit-valued entries have no finite presentation to sum")
    even = FgAbelianGroup.zero()
    odd = FgAbelianGroup.zero()
    for d, v in enumerate(h.by_degree):
        assert isinstance(v, FgAbelianGroup)
        if d % 2 == 0:
            even = even.direct_sum(v)
        else:
            odd = odd.direct_sum(v)
    return even, odd


def _baum_connes_justification(model: GroupoidModel) -> str:
    if isinstance(model, FiniteGroupoid):
        return (
            "finite groupoids are amenable, and amenable groupoids satisfy the "
            "Baum-Connes conjecture (Tu)"
        )
    if isinstance(model, SftModel):
        return (
            "shift-of-finite-type groupoids are amenable, hence satisfy Baum-Connes "
            "(Tu); Matui established the integral comparison for this class"
        )
    if isinstance(model, BratteliModel):
        return (
            "AF groupoids are amenable, hence satisfy Baum-Connes (Tu); Matui "
            "established the integral comparison for this class"
        )
    if isinstance(model, CantorZModel):
        return (
            "transformation groupoids of Cantor minimal Z-systems are amenable, hence "
            "satisfy Baum-Connes (Tu); Matui established the integral comparison for "
            "this class"
        )
    if isinstance(model, ProductModel):
        return (
            "products of amenable groupoids are amenable, hence satisfy Baum-Connes (Tu)"
        )
    raise TypeError(f"unknown model type {type(model).__name__}")


def hk_check(
    model: GroupoidModel,
    max_degree: int = 3,
    stage: int | None = None,
    size_bound: int = DEFAULT_SIZE_BOUND,
    rational_only: bool = False,
) -> HKReport:
    """Run the rank comparison on a model and report the verdict.

    Homology is always computed, even when a precondition fails, so the
    report stays informative; the rank verdict itself is refused in that
    case.  The integral comparison is attempted only when every group in
    sight is finitely generated and the grading is exact, and an integral
    discrepancy is reported as a note, never as a failure of the rational
    statement.
    """
    bad_shapes = shape_violations(model)
    if bad_shapes:
        raise ModelInvalid(bad_shapes)

    iso = isotropy_report(model)
    preconditions = [
        Precondition(
            name="torsion_free_isotropy",
            holds=iso.torsion_free,
            mode=iso.mode,
            justification=iso.justification,
        ),
        Precondition(
            name="rational_baum_connes",
            holds=True,
            mode="declared",
            justification=_baum_connes_justification(model),
        ),
    ]

    homology = homology_of_model(
        model,
        max_degree=max_degree,
        size_bound=size_bound,
        stage=stage,
        rational_only=rational_only,
    )
    summary = model_summary(model)
    notes: list[str] = []

    if not iso.torsion_free:
        notes.append(
            "precondition failed: the comparison theorem requires the stabilizer to be "
            "a torsion-free group for all units, but " + iso.justification
        )
        return HKReport(
            model=summary,
            dialect="groupoid",
            max_degree=max_degree,
            preconditions=tuple(preconditions),
            homology=homology,
            ktheory=None,
            even_rank=None,
            odd_rank=None,
            rational_match=None,
            integral_match=None,
            truncation_degree=None if homology.vanishing_above else homology.max_degree,
            verdict=VERDICT_PRECONDITION_FAILED,
            notes=tuple(notes),
        )

    ktheory = ktheory_of_model(model, stage=stage, rational_only=rational_only)
    truncation_degree = None if homology.vanishing_above else homology.max_degree
    if truncation_degree is not None:
        notes.append(
            f"bar complex truncated: rational comparison verified up to degree {truncation_degree}"
        )
    even, odd = periodicize(homology, acknowledge_truncation=True)
    rational_match = group_rank(ktheory.k0) == even and group_rank(ktheory.k1) == odd

    integral_match: bool | str
    if (
        homology.vanishing_above
        and homology.all_finitely_generated()
        and ktheory.all_finitely_generated()
    ):
        even_group, odd_group = periodicize_groups(homology)
        integral_match = even_group == ktheory.k0 and odd_group == ktheory.k1
        if not integral_match:
            notes.append(
                "integral comparison fails for this model; this does not contradict "
                "the rational statement"
            )
    else:
        integral_match = "not_applicable"
        notes.append(
            "integral comparison not applicable: a group involved is colimit-valued "
            "or the grading is truncated"
        )

    return HKReport(
        model=summary,
        dialect="groupoid",
        max_degree=max_degree,
        preconditions=tuple(preconditions),
        homology=homology,
        ktheory=ktheory,
        even_rank=even,
        odd_rank=odd,
        rational_match=rational_match,
        integral_match=integral_match,
        truncation_degree=truncation_degree,
        verdict=VERDICT_MATCH if rational_match else VERDICT_MISMATCH,
        notes=tuple(notes),
    )


def smale_check(
    matrix: IntMatrix | SftModel,
    max_degree: int = 3,
    size_bound: int = DEFAULT_SIZE_BOUND,
) -> HKReport:
    """Rank comparison for a Smale space with totally disconnected stable sets.

    Such a space is presented, up to the relevant equivalences, by a shift of
    finite type; its stable (Putnam) homology is the homology of the unstable
    groupoid and the comparison runs against the K-theory of the unstable
    algebra.  The arithmetic is exactly ``hk_check`` on the shift model.
    """
    model = matrix if isinstance(matrix, SftModel) else SftModel(matrix)
    report = hk_check(model, max_degree=max_degree, size_bound=size_bound)
    notes = report.notes + (
        "Smale reading: H^s_n is the homology of the unstable groupoid and the ranks "
        "are compared against K_*(unstable algebra)",
    )
    return dataclasses.replace(
        report, model=f"smale({report.model})", dialect="smale", notes=notes
    )


@dataclass(frozen=True)
class SpectralDegenerationReport:
    """Rank bookkeeping for the homological spectral sequence.

    The E^2 page has the groupoid homology along even rows and zeros along
    odd rows (the coefficient K-theory of the complex numbers vanishes in
    odd degrees), so rational collapse at E^2 says precisely that the
    periodicized homology ranks hit the K-theory ranks.
    """

    model: str
    e2_even_rank: int
    e2_odd_rank: int
    k0_rank: int
    k1_rank: int
    degenerates_rationally: bool
    truncation_degree: int | None


def spectral_degeneration_ranks(
    model: GroupoidModel,
    max_degree: int = 3,
    stage: int | None = None,
    size_bound: int = DEFAULT_SIZE_BOUND,
) -> SpectralDegenerationReport:
    report = hk_check(model, max_degree=max_degree, stage=stage, size_bound=size_bound)
    if report.verdict == VERDICT_PRECONDITION_FAILED:
        raise ValueError(
            "spectral comparison needs the theorem's preconditions: " + "; ".join(report.notes)
        )
    assert report.ktheory is not None
    assert report.even_rank is not None and report.odd_rank is not None
    return SpectralDegenerationReport(
        model=report.model,
        e2_even_rank=report.even_rank,
        e2_odd_rank=report.odd_rank,
        k0_rank=group_rank(report.ktheory.k0),
        k1_rank=group_rank(report.ktheory.k1),
        degenerates_rationally=bool(report.rational_match),
        truncation_degree=report.truncation_degree,
    )


# ---------------------------------------------------------------------------
# graded dimensions of the enveloping full group's rational homology


def _sym_dim(space_dim: int, weight: int) -> int:
    if weight == 0:
        return 1
    if space_dim == 0:
        return 0
    return math.comb(space_dim + weight - 1, weight)


def free_graded_commutative_dims(
    even_dim: int, odd_dim: int, max_word_length: int
) -> list[tuple[int, int]]:
    """Graded dimensions of the free graded-commutative algebra on a Z/2-graded
    space, listed by word length.

    Even generators generate a symmetric algebra, odd generators an exterior
    one (signs make odd squares vanish).  A word's parity is the number of odd
    letters mod 2.  Entry n of the result is (even-part dim, odd-part dim) of
    the word-length-n piece.

    >>> free_graded_commutative_dims(1, 0, 3)
    [(1, 0), (1, 0), (1, 0), (1, 0)]
    >>> free_graded_commutative_dims(0, 1, 2)
    [(1, 0), (0, 1), (0, 0)]
    """
    if even_dim < 0 or odd_dim < 0 or max_word_length < 0:
        raise ValueError("dimensions and word length must be nonnegative")
    out: list[tuple[int, int]] = []
    for n in range(max_word_length + 1):
        even_total = 0
        odd_total = 0
        for sym_weight in range(n + 1):
            ext_weight = n - sym_weight
            count = _sym_dim(even_dim, sym_weight) * math.comb(odd_dim, ext_weight) if ext_weight <= odd_dim else 0
            if count == 0:
                continue
            if ext_weight % 2 == 0:
                even_total += count
            else:
                odd_total += count
        out.append((even_total, odd_total))
    return out


# ---------------------------------------------------------------------------
# serialization


def group_to_json(value: GroupValue) -> dict:
    if isinstance(value, FgAbelianGroup):
        return {"rank": value.rank, "torsion": list(value.torsion)}
    return {
        "rank": value.rank,
        "torsion_free": value.torsion_free,
        "torsion_verified_up_to_stage": value.verified_stage,
    }


def group_from_json(doc: dict) -> GroupValue:
    if "torsion" in doc:
        return FgAbelianGroup(doc["rank"], tuple(doc["torsion"]))
    return ColimitInvariants(
        rank=doc["rank"],
        torsion_free=doc["torsion_free"],
        verified_stage=doc["torsion_verified_up_to_stage"],
    )


def group_to_text(value: GroupValue) -> str:
    if isinstance(value, FgAbelianGroup):
        return str(value)
    inner = f"rank {value.rank}"
    if value.torsion_free:
        inner += f", torsion-free certified to stage {value.verified_stage}"
    return f"colimit({inner})"


def _graded_to_json(h: GradedGroup) -> dict:
    return {
        "by_degree": [group_to_json(v) for v in h.by_degree],
        "vanishing_above": h.vanishing_above,
    }


def _graded_from_json(doc: dict) -> GradedGroup:
    return GradedGroup(
        tuple(group_from_json(v) for v in doc["by_degree"]),
        vanishing_above=doc["vanishing_above"],
    )


def report_to_json(report: HKReport) -> dict:
    return {
        "model": report.model,
        "dialect": report.dialect,
        "max_degree": report.max_degree,
        "preconditions": [
            {"name": p.name, "holds": p.holds, "mode": p.mode, "justification": p.justification}
            for p in report.preconditions
        ],
        "homology": _graded_to_json(report.homology),
        "ktheory": (
            None
            if report.ktheory is None
            else {"k0": group_to_json(report.ktheory.k0), "k1": group_to_json(report.ktheory.k1)}
        ),
        "even_rank": report.even_rank,
        "odd_rank": report.odd_rank,
        "rational_match": report.rational_match,
        "integral_match": report.integral_match,
        "truncation_degree": report.truncation_degree,
        "verdict": report.verdict,
        "notes": list(report.notes),
    }


def report_from_json(doc: dict) -> HKReport:
    kdoc = doc["ktheory"]
    return HKReport(
        model=doc["model"],
        dialect=doc["dialect"],
        max_degree=doc["max_degree"],
        preconditions=tuple(
            Precondition(p["name"], p["holds"], p["mode"], p["justification"])
            for p in doc["preconditions"]
        ),
        homology=_graded_from_json(doc["homology"]),
        ktheory=None if kdoc is None else KPair(group_from_json(kdoc["k0"]), group_from_json(kdoc["k1"])),
        even_rank=doc["even_rank"],
        odd_rank=doc["odd_rank"],
        rational_match=doc["rational_match"],
        integral_match=doc["integral_match"],
        truncation_degree=doc["truncation_degree"],
        verdict=doc["verdict"],
        notes=tuple(doc["notes"]),
    )


def report_to_text(report: HKReport) -> str:
    smale = report.dialect == "smale"
    h_label = "H^s" if smale else "H"
    k_label = "K (unstable algebra)" if smale else "K"
    lines = [f"model: {report.model}", f"verdict: {report.verdict}"]
    lines.append("preconditions:")
    for p in report.preconditions:
        status = "holds" if p.holds else "FAILS"
        lines.append(f"  {p.name}: {status} ({p.mode}) - {p.justification}")
    lines.append(f"homology ({h_label}):")
    for d, v in enumerate(report.homology.by_degree):
        lines.append(f"  {h_label}_{d} = {group_to_text(v)}")
    if report.homology.vanishing_above:
        lines.append(f"  zero above degree {report.homology.max_degree}")
    else:
        lines.append(f"  truncated at degree {report.homology.max_degree}")
    if report.ktheory is not None:
        lines.append(f"ktheory ({k_label}):")
        lines.append(f"  K_0 = {group_to_text(report.ktheory.k0)}")
        lines.append(f"  K_1 = {group_to_text(report.ktheory.k1)}")
    if report.even_rank is not None:
        lines.append(f"periodicized homology ranks: even {report.even_rank}, odd {report.odd_rank}")
    if report.rational_match is not None:
        lines.append(f"rational_match: {str(report.rational_match).lower()}")
    if report.integral_match is not None:
        lines.append(f"integral_match: {str(report.integral_match).lower()}")
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def report_to_json_text(report: HKReport) -> str:
    """Canonical JSON rendering: sorted keys, fixed layout, trailing newline."""
    return json.dumps(report_to_json(report), indent=2, sort_keys=True) + "\n"
