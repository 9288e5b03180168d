import json

import pytest

from dihom.checks.disks import DisksCheck
from dihom.checks.dold_thom import DoldThomCheck, SymmetricPowerCheck
from dihom.checks.hom import HomCheck, NerveCheck
from dihom.checks.hurewicz import Ho1Check, HurewiczCheck
from dihom.checks.linear import LinearModelCheck
from dihom.checks.sphere import SphereCheck
from dihom.checks.wedge import WedgeCheck
from dihom.common.base_check import BaseCheck
from dihom.common.types import CaseRecord
from dihom.core.monoid import CommMonoid, parse_coefficients
from dihom.core.omegacat import globe, globe_chain
from dihom.core.pasting import tree_chain
from dihom.core.strat import builtin_model


class _FixedCheck(BaseCheck):
    def __init__(self, cases):
        super().__init__(check_name="fixed", description="Returns the cases it was given.")
        self.cases = cases

    def run(self):
        return self.cases


def test_verdict_ignores_diagnostic_failures():
    ok = CaseRecord(name="ok", passed=True)
    noted = CaseRecord(name="noted", passed=False, diagnostic=True)
    broken = CaseRecord(name="broken", passed=False)
    assert _FixedCheck([ok, noted]).execute().verdict == "pass"
    assert _FixedCheck([ok, broken]).execute().verdict == "fail"
    assert _FixedCheck([]).execute().verdict == "pass"


def test_report_payload_and_frame():
    check = HomCheck(tree_chain(2), globe_chain(1, 2))
    report = check.execute()
    payload = json.loads(check.format_report(report))
    assert payload["schema"] == 1
    assert payload["verdict"] == "pass"
    assert payload["cases"][0]["sizes"] == {"hom": 10}
    assert payload["cases"][0]["details"]["poset_oracle"] == 10
    frame = report.to_frame()
    assert list(frame["size:hom"]) == [10]


def test_report_is_deterministic_apart_from_wall_time():
    def payload():
        check = WedgeCheck(1, 2, 2, 3)
        data = json.loads(check.format_report(check.execute()))
        data.pop("wall_time")
        return data

    assert payload() == payload()


def test_nerve_check():
    report = NerveCheck(globe(1), 1, 2).execute()
    assert report.passed
    assert [c.sizes["nerve"] for c in report.cases] == [2, 3, 4]


def test_wedge_check_for_k1():
    report = WedgeCheck(1, 3, 2, 4).execute()
    assert report.passed
    assert all(not c.diagnostic for c in report.cases)


def test_wedge_check_for_k2_is_diagnostic():
    report = WedgeCheck(2, 2, 2, 2).execute()
    assert report.passed
    failing = [c for c in report.cases if not c.passed]
    assert failing and all(c.diagnostic for c in failing)
    d2 = next(c for c in failing if c.inputs["theta"] == [[[]]])
    assert d2.sizes == {"lhs": 18, "rhs": 15, "image": 15}


@pytest.mark.parametrize("k, n_max, max_dim, max_edges", [(1, 3, 2, 4), (1, 0, 1, 2), (2, 2, 2, 2)])
def test_disks_check(k, n_max, max_dim, max_edges):
    assert DisksCheck(k, n_max, max_dim, max_edges).execute().passed


def test_disks_check_records_chain_colimit():
    report = DisksCheck(1, 2, 1, 2).execute()
    chain = [c for c in report.cases if c.name.startswith("chain colimit")]
    assert len(chain) == 3
    assert all(c.passed for c in chain)


def test_dold_thom_check():
    report = DoldThomCheck(builtin_model("s1"), 1, 3).execute()
    assert report.passed
    assert len(report.cases) == 4
    assert report.cases[-1].sizes == {"colimit": 4, "linear": 4, "expected": 4}


def test_symmetric_power_check():
    report = SymmetricPowerCheck(builtin_model("s1"), 1, 3).execute()
    assert report.passed
    assert [c.sizes["simplices"] for c in report.cases] == [1, 2, 3, 4]


def test_linear_model_check(naturals):
    report = LinearModelCheck(builtin_model("figure-eight"), naturals, 1, 2, reduced=True).execute()
    assert report.passed
    assert report.cases[0].sizes["elements"] == 6
    with pytest.raises(ValueError):
        LinearModelCheck(builtin_model("point"), naturals, 9, 2, reduced=False).execute()


@pytest.mark.parametrize("coeff, n, bound", [
    ("N", 1, 6), ("Z2", 1, 6), ("trivial", 1, 2), ("N", 2, 3), ("Z2", 2, 4), ("Z3", 3, 2),
])
def test_sphere_check(coeff, n, bound):
    report = SphereCheck(parse_coefficients(coeff), n, bound).execute()
    assert report.passed, [c.witnesses for c in report.cases if not c.passed]


def test_sphere_check_natural_endomorphisms():
    report = SphereCheck(CommMonoid.naturals(), 1, 6).execute()
    endos = report.cases[-1]
    assert endos.sizes == {"homomorphisms": 7}
    assert endos.truncated
    assert not endos.diagnostic


def test_hurewicz_check():
    report = HurewiczCheck(2, CommMonoid.cyclic(2), 4).execute()
    assert report.passed
    assert report.cases[0].sizes == {"lhs": 4, "rhs": 4}


def test_ho1_check(naturals):
    report = Ho1Check(builtin_model("s1", dim=2), naturals, 4, 4).execute()
    assert report.passed
    assert report.cases[0].sizes["endo_classes"] == 5
