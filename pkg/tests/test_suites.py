import pytest

from poissonforge.CheckSuite import get_all_suites
from poissonforge.config.settings import Settings
from poissonforge.exceptions import InputException
from poissonforge.report import Verdict
from poissonforge.specfile.SpecLoader import FIXTURE_DIR, SpecLoader, parse_spec, read_spec
from poissonforge.suites.bialgebra import BialgebraSuite
from poissonforge.suites.hopf import HopfSuite
from poissonforge.suites.poisson import PoissonStructureSuite
from poissonforge.suites.reduction import ReductionSuite

SL2 = {
    "name": "sl2",
    "basis": ["H", "X", "Y"],
    "brackets": {"H,X": {"X": 2}, "H,Y": {"Y": -2}, "X,Y": {"H": 1}},
}
R2 = {"name": "r2", "basis": ["xi", "eta"], "brackets": {"xi,eta": {"eta": 1}}}
PLANE = {
    "lieAlgebras": [R2],
    "cobrackets": [{"name": "r2_plane", "algebra": "r2", "wedges": {"eta": [[1, "xi", "eta"]]}}],
    "charts": [{"name": "ab", "variables": ["a", "b"], "invertible": ["a"]}],
    "bivectors": [{"name": "plane", "chart": "ab", "wedges": {"a,b": "a*b"}}],
}


def run(suite, data, **settings):
    settings = Settings(**settings)
    loader = SpecLoader(parse_spec(data), settings)
    return {r.check_id: r for r in suite(loader, settings).run()}


def verdicts(records):
    return {k: r.verdict for k, r in records.items()}


def test_quasitriangular_sl2_bialgebra():
    records = run(
        BialgebraSuite,
        {
            "lieAlgebras": [SL2],
            "rMatrices": [{"name": "skew", "algebra": "sl2", "wedges": [["1/4", "X", "Y"]]}],
            "bialgebras": [
                {
                    "name": "sl2",
                    "algebra": "sl2",
                    "rMatrix": "skew",
                    "expect": {"cybe": "fail"},
                    "cobracketClaim": {"wedges": {"X": [["1/4", "X", "H"]], "H": []}},
                },
                {
                    "name": "sl2_doubled",
                    "algebra": "sl2",
                    "rMatrix": "skew",
                    "expect": {"cybe": "fail"},
                    "cobracketClaim": {"wedges": {"X": [["1/2", "X", "H"]]}},
                },
            ],
        },
    )
    found = verdicts(records)
    assert found["sl2/symmetric_part_invariant"] == Verdict.PASS
    assert found["sl2/cybe"] == Verdict.FAIL
    assert found["sl2/cocycle"] == Verdict.PASS
    assert found["sl2/cobracket_claim"] == Verdict.PASS
    assert found["sl2_doubled/cobracket_claim"] == Verdict.DISCREPANCY
    assert records["sl2_doubled/cobracket_claim"].defect.startswith("δ(X)")
    assert all(r.satisfied for r in records.values())


def test_cobracket_claim_with_normalization():
    records = run(
        BialgebraSuite,
        {
            "lieAlgebras": [SL2],
            "rMatrices": [{"name": "skew", "algebra": "sl2", "wedges": [["1/4", "X", "Y"]]}],
            "bialgebras": [
                {
                    "name": "sl2",
                    "algebra": "sl2",
                    "rMatrix": "skew",
                    "expect": {"cybe": "fail"},
                    "cobracketClaim": {"wedges": {"X": [["1/2", "X", "H"]]}, "normalization": "1/2"},
                }
            ],
        },
    )
    assert records["sl2/cobracket_claim"].verdict == Verdict.PASS
    assert records["sl2/cobracket_claim"].inputs["normalization"] == "1/2"


def test_stated_structure_failures_are_discrepancies():
    records = run(
        BialgebraSuite,
        {
            "lieAlgebras": [SL2],
            "cobrackets": [
                {"name": "stated", "algebra": "sl2", "wedges": {"Y": [[2, "Y", "X"]], "H": [[1, "X", "H"]]}}
            ],
            "bialgebras": [{"name": "stated", "algebra": "sl2", "cobracket": "stated", "paper": True}],
        },
    )
    assert records["stated/cocycle"].verdict == Verdict.DISCREPANCY
    assert all(r.satisfied for r in records.values())


def test_jacobi_failure_stops_the_entry():
    records = run(
        BialgebraSuite,
        {
            "lieAlgebras": [
                {"name": "broken", "basis": ["e1", "e2", "e3"], "brackets": {"e1,e2": {"e1": 1}, "e1,e3": {"e2": 1}}}
            ],
            "cobrackets": [{"name": "zero", "algebra": "broken"}],
            "bialgebras": [{"name": "broken", "algebra": "broken", "cobracket": "zero"}],
        },
    )
    assert list(records) == ["broken/jacobi"]
    assert records["broken/jacobi"].verdict == Verdict.FAIL
    assert not records["broken/jacobi"].satisfied


def test_bialgebra_needs_a_cobracket():
    with pytest.raises(InputException):
        run(BialgebraSuite, {"lieAlgebras": [SL2], "bialgebras": [{"name": "sl2", "algebra": "sl2"}]})


def test_bivector_checks():
    records = run(
        PoissonStructureSuite,
        {
            "charts": [{"name": "xyz", "variables": ["x", "y", "z"]}],
            "bivectors": [
                {"name": "bad", "chart": "xyz", "wedges": {"x,y": 1, "y,z": "y"}},
                {"name": "so3", "chart": "xyz", "wedges": {"y,z": "x", "z,x": "y"}},
            ],
            "poissonStructures": [
                {"name": "bad", "bivector": "bad"},
                {"name": "so3", "bivector": "so3", "casimirs": ["x**2 + y**2", "x*y"]},
            ],
        },
    )
    assert records["bad/jacobi"].verdict == Verdict.FAIL
    assert records["bad/jacobi"].defect == "(x,y,z): -1"
    assert records["bad/schouten"].verdict == Verdict.FAIL
    assert records["so3/jacobi"].verdict == Verdict.PASS
    assert records["so3/casimir[x**2 + y**2]"].verdict == Verdict.PASS
    assert records["so3/casimir[x*y]"].verdict == Verdict.FAIL


def test_dressing_action_and_sign_flip():
    spec = {
        **PLANE,
        "poissonActions": [
            {
                "name": "dressing",
                "bivector": "plane",
                "algebra": "r2",
                "cobracket": "r2_plane",
                "fields": {"xi": {"b": "b"}, "eta": {"a": "-b"}},
            },
            {
                "name": "flipped",
                "bivector": "plane",
                "algebra": "r2",
                "cobracket": "r2_plane",
                "fields": {"xi": {"b": "-b"}, "eta": {"a": "b"}},
            },
        ],
    }
    records = run(PoissonStructureSuite, spec)
    assert records["dressing/poisson_action"].verdict == Verdict.PASS
    flipped = records["flipped/poisson_action"]
    assert flipped.verdict == Verdict.DISCREPANCY
    assert flipped.details["passingVariants"]


def test_poisson_action_needs_every_field():
    spec = {
        **PLANE,
        "poissonActions": [
            {"name": "half", "bivector": "plane", "algebra": "r2", "cobracket": "r2_plane", "fields": {"xi": {"b": "b"}}}
        ],
    }
    with pytest.raises(InputException):
        run(PoissonStructureSuite, spec)


def test_reduction_with_spectator_pair():
    records = run(
        ReductionSuite,
        {
            "lieAlgebras": [R2],
            "charts": [{"name": "abqp", "variables": ["a", "b", "q", "p"], "invertible": ["a"]}],
            "bivectors": [{"name": "pi", "chart": "abqp", "wedges": {"a,b": "a*b", "q,p": 1}}],
            "reductions": [
                {
                    "name": "dressing",
                    "bivector": "pi",
                    "algebra": "r2",
                    "fields": {"xi": {"b": "b"}, "eta": {"a": "-b"}},
                    "ideal": [["a", "a - 1"], ["b", "b"]],
                    "brackets": [["q", "p"]],
                    "claim": {"table": {"{q,p}": "1"}},
                    "pipelines": True,
                }
            ],
        },
        degree=2,
    )
    found = verdicts(records)
    for check in (
        "ideal_poisson_closed",
        "ideal_invariant",
        "action",
        "invariants",
        "sw_reduced_algebra",
        "reduced_bracket[q,p]",
        "table_claim",
        "pipelines",
    ):
        assert found[f"dressing/{check}"] == Verdict.PASS, check
    assert records["dressing/invariants"].details["count"] == 6
    assert records["dressing/sw_reduced_algebra"].details["count"] == 6


def test_reduction_accepts_nonlinear_generators():
    records = run(
        ReductionSuite,
        {
            "charts": [{"name": "ab", "variables": ["a", "b"]}],
            "bivectors": [{"name": "pi", "chart": "ab", "wedges": {"a,b": 1}}],
            "reductions": [{"name": "square", "bivector": "pi", "ideal": ["a**2 - 1"]}],
        },
        degree=2,
    )
    found = verdicts(records)
    assert found["square/ideal_poisson_closed"] == Verdict.PASS
    assert found["square/sw_reduced_algebra"] == Verdict.PASS
    # a**2 and 1 fall into the same class
    assert records["square/sw_reduced_algebra"].details["count"] == 5


def test_reduction_rejects_malformed_ideal_entry():
    with pytest.raises(InputException):
        run(
            ReductionSuite,
            {
                "charts": [{"name": "ab", "variables": ["a", "b"]}],
                "bivectors": [{"name": "pi", "chart": "ab", "wedges": {"a,b": 1}}],
                "reductions": [{"name": "bad", "bivector": "pi", "ideal": [["a", "a - 1", "b"]]}],
            },
        )


def test_first_order_r_matrix_on_enveloping_algebra():
    records = run(
        HopfSuite,
        {
            "lieAlgebras": [
                {
                    "name": "sl2",
                    "basis": ["F", "H", "E"],
                    "brackets": {"H,E": {"E": 2}, "H,F": {"F": -2}, "E,F": {"H": 1}},
                }
            ],
            "presentations": [{"name": "usl2", "enveloping": "sl2"}],
            "hopfStructures": [
                {
                    "name": "usl2",
                    "algebra": "usl2",
                    "primitive": True,
                    "rMatrix": [["1", "1"], ["hbar*H/8", "H"], ["hbar*E/2", "F"]],
                }
            ],
        },
        order=2,
        degree=2,
    )
    found = verdicts(records)
    assert found["usl2/coassociativity"] == Verdict.PASS
    assert found["usl2/quasitriangular"] == Verdict.PASS
    assert found["usl2/counit_of_r"] == Verdict.PASS
    # r is not ad-invariant, so R does not intertwine Δ with its flip.
    assert found["usl2/quasi_cocommutative"] == Verdict.FAIL


@pytest.mark.parametrize("path", sorted(FIXTURE_DIR.glob("*.json")), ids=lambda p: p.name)
def test_every_fixture_file_parses(path):
    spec = read_spec(path)
    users = [suite for suite in get_all_suites() if path.name in suite.fixture_files]
    assert users, f"{path.name} is not read by any command"
    loader = SpecLoader(spec, Settings(), str(path))
    for suite in users:
        assert suite(loader, Settings()).entries()
