import csv
import io
import itertools
import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cyclesplit.errors import EmptyComponent, InputError, InvalidPolynomial, NoRecords, NoWitness
from cyclesplit.loaders import load_fibre, load_scan_spec
from cyclesplit.polys import ModPolynomial, oracle_factor_degrees
from cyclesplit.scan import (
    CSV_COLUMNS,
    ScanSpec,
    bezout,
    cross_validate,
    default_workers,
    ext_gcd,
    local_verdict,
    resolve_workers,
    scan,
    scan_records,
    witness_cycle,
)

from conftest import brute_min_maxdeg


def spec(*polys, m=1, r=1, bound=1000, model=None):
    return ScanSpec(((m, polys),), r=r, bound=bound, model=model)


def csv_bytes(records):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    w.writerows(rec.csv_row() for rec in records)
    return buf.getvalue().encode()


class TestBezout:
    @given(st.integers(-500, 500), st.integers(-500, 500))
    def test_ext_gcd(self, a, b):
        g, x, y = ext_gcd(a, b)
        assert g == math.gcd(a, b) and a * x + b * y == g

    @given(st.lists(st.integers(1, 60), min_size=1, max_size=6))
    def test_bezout(self, values):
        g, coeffs = bezout(values)
        assert g == math.gcd(*values)
        assert sum(c * v for c, v in zip(coeffs, values)) == g


class TestWitnessCycle:
    @pytest.mark.parametrize("degrees,r,expected", [
        ([2, 3], 1, [(2, -1), (3, 1)]),
        ([1], 1, [(1, 1)]),
        ([4, 6], 2, [(4, -1), (6, 1)]),
        ([1, 1, 2, 2], 1, [(1, 1)]),
        ([3, 3], 3, [(3, 1)]),
    ])
    def test_examples(self, degrees, r, expected):
        assert witness_cycle(degrees, r) == expected

    @pytest.mark.parametrize("degrees,r", [([3, 3], 1), ([2, 4, 6], 3), ([], 1), ([1], 0)])
    def test_no_witness(self, degrees, r):
        with pytest.raises(NoWitness):
            witness_cycle(degrees, r)

    def test_minimal_max_degree_exhaustive(self):
        checked = 0
        for k in range(1, 7):
            for degrees in itertools.combinations_with_replacement(range(1, 9), k):
                for r in (1, 2, 3, 4, 6):
                    best = brute_min_maxdeg(degrees, r)
                    if best is None:
                        with pytest.raises(NoWitness):
                            witness_cycle(degrees, r)
                        continue
                    cycle = witness_cycle(degrees, r)
                    assert sum(n * d for d, n in cycle) == r
                    assert all(n != 0 for _, n in cycle)
                    assert max(d for d, _ in cycle) == best
                    checked += 1
        assert checked > 5000


class TestLocalVerdict:
    def test_examples(self):
        assert local_verdict([(1, [3, 3])], 1) == (3, False)
        assert local_verdict([(1, [1, 1, 2, 2])], 1) == (1, True)
        assert local_verdict([(1, [2]), (1, [3, 3])], 1) == (1, True)
        assert local_verdict([(2, [1]), (3, [1])], 1) == (1, True)
        assert local_verdict([(2, [1, 1])], 1) == (2, False)
        assert local_verdict([(2, [1, 1])], 2) == (2, True)

    def test_empty(self):
        with pytest.raises(EmptyComponent):
            local_verdict([(1, [])], 1)
        with pytest.raises(EmptyComponent):
            local_verdict([], 1)


class TestScanSpec:
    def test_sorted_components(self):
        s = ScanSpec(((3, ("t^2+1",)), (1, ("t^2-2",))))
        assert [m for m, _ in s.components] == [1, 3]

    @pytest.mark.parametrize("kwargs", [
        dict(components=((1, ("t^2+1",)), (1, ("t^2-2",)))),
        dict(components=((0, ("t^2+1",)),)),
        dict(components=((1, ()),)),
        dict(components=()),
        dict(components=((1, ("t^2+1",)),), r=0),
        dict(components=((1, ("t^2+1",)),), bound=1),
        dict(components=((1, ("t^2+1",)),), tolerance=0),
    ])
    def test_rejects(self, kwargs):
        with pytest.raises(InputError):
            ScanSpec(**kwargs)

    def test_rejects_repeated_root(self):
        with pytest.raises(InvalidPolynomial):
            spec("t^2-2t+1")

    def test_shared_factor(self):
        with pytest.raises(InvalidPolynomial):
            spec("t^2+1", "t^2+1").ramification_discriminant()

    def test_ramification(self):
        assert spec("t^2+1", "t^6-3t^2-1").ramification_discriminant() == -1679616


class TestScan:
    def test_quadratic(self):
        records, summary = scan(spec("t^2+1", bound=200))
        assert [r.p for r in records if r.ramified] == [2]
        for rec in records[1:]:
            expected = (1, 1) if rec.p % 4 == 1 else (2,)
            assert rec.patterns == ((1, (expected,)),)
            assert rec.verdict == (rec.p % 4 == 1)
        assert summary.primes_scanned == 46
        assert summary.nonsplit_primes[:3] == (3, 7, 11)

    def test_weighted_component(self):
        records, _ = scan(spec("t^2+1", m=2, r=2, bound=200))
        for rec in records[1:]:
            assert rec.index == (2 if rec.p % 4 == 1 else 4)
            assert rec.verdict == (rec.p % 4 == 1)

    def test_record_invariants(self):
        s = spec("t^2+1", "t^6-3t^2-1", bound=3000)
        disc = s.ramification_discriminant()
        for rec in scan_records(s):
            assert rec.ramified == (disc % rec.p == 0)
            if rec.ramified:
                assert rec.patterns is None and rec.verdict is None
                continue
            for (m, pats), (_, polys) in zip(rec.patterns, s.components):
                for pat, f in zip(pats, polys):
                    assert sum(pat) == f.degree
                    if rec.p < 60:
                        assert pat == oracle_factor_degrees(ModPolynomial(rec.p, f.coefficients))
            flat = [d for _, pats in rec.patterns for pat in pats for d in pat]
            assert rec.index == math.gcd(*flat)
            assert rec.verdict == (s.r % rec.index == 0)
            if rec.verdict:
                assert sum(n * d for d, n in rec.witness) == s.r
                assert rec.witness_maxdeg == brute_min_maxdeg(flat, s.r)

    def test_summary_counts(self):
        _, summary = scan(spec("t^2+1", "t^6-3t^2-1", bound=5000))
        d = summary.to_dict()
        assert d["unramified_count"] == d["split_count"] + d["nonsplit_count"]
        assert d["ramified_primes"] == [2, 3]
        assert sum(p["count"] for p in d["patterns"]) == d["unramified_count"]
        json.dumps(d)

    def test_deterministic_across_workers(self):
        s = load_scan_spec("everywhere_split", bound=20000)
        one, _ = scan(s, workers=1)
        three, _ = scan(s, workers=3)
        assert csv_bytes(one) == csv_bytes(three)
        assert [r.to_dict() for r in one] == [r.to_dict() for r in three]

    def test_env_workers(self, monkeypatch):
        monkeypatch.delenv("CYCLESPLIT_THREADS", raising=False)
        assert default_workers() == 1
        assert resolve_workers(6) == 6
        monkeypatch.setenv("CYCLESPLIT_THREADS", "4")
        assert default_workers() == 4
        assert resolve_workers(None) == 4
        assert resolve_workers(8) == 4 and resolve_workers(2) == 2
        monkeypatch.setenv("CYCLESPLIT_THREADS", "many")
        with pytest.raises(InputError):
            default_workers()


class TestCrossValidation:
    def test_quadratic_against_c2(self):
        records = scan_records(spec("t^2+1", bound=10000))
        report = cross_validate(records, load_fibre("c2_regular"), 0.02, r=1)
        assert report.passed and not report.membership_failures
        assert report.density_predicted == Fraction(1, 2)

    def test_quadratic_against_c3_fails_membership(self):
        records = scan_records(spec("t^2+1", bound=2000))
        report = cross_validate(records, load_fibre("c3_regular"), 0.02)
        assert not report.passed
        # a degree-3 model predicts neither quadratic pattern
        assert report.membership_failures == ["1^2", "2"]

    def test_no_records(self):
        records = [rec for rec in scan_records(spec("t^2+1", bound=50)) if rec.ramified]
        with pytest.raises(NoRecords):
            cross_validate(records, load_fibre("c2_regular"))

    def test_a4_sextic_matches_a4(self):
        records = scan_records(load_scan_spec("a4_sextic", bound=30000))
        report = cross_validate(records, load_fibre("a4_c2"), 0.02, r=1)
        assert report.passed
        assert {row.key: row.predicted for row in report.rows} == {
            "1^6": Fraction(1, 12), "1^2 2^2": Fraction(1, 4), "3^2": Fraction(2, 3)}
        assert report.density_predicted == Fraction(1, 3)


@given(st.lists(st.integers(1, 12), min_size=1, max_size=7), st.integers(1, 12))
def test_witness_support_is_lexicographically_least(degrees, r):
    """Compare against every sub-multiset, ordered by (max, sorted tuple)."""
    valid = [sorted(sub) for k in range(1, len(degrees) + 1)
             for sub in itertools.combinations(sorted(degrees), k) if r % math.gcd(*sub) == 0]
    if not valid:
        with pytest.raises(NoWitness):
            witness_cycle(degrees, r)
        return
    best = min(valid, key=lambda s: (max(s), s))
    support = sorted(degrees)[:len(best)]
    assert support == best
    cycle = witness_cycle(degrees, r)
    assert {d for d, _ in cycle} <= set(support)
    assert sum(n * d for d, n in cycle) == r
