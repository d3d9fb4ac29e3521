import csv
import io
import json
from fractions import Fraction

import pytest

from cocoons.census import census
from cocoons.errors import DomainError
from cocoons.scan import CSV_HEADER, iter_scan, s_values, scan, summarize, write_csv, write_jsonl


class TestSValues:
    def test_9(self):
        assert s_values(census(9)) == (Fraction(7, 9), Fraction(7, 9))

    def test_15(self):
        assert s_values(census(15)) == (Fraction(11, 15), Fraction(7, 15))

    def test_27(self):
        s, st = s_values(census(27))
        assert s == Fraction(15, 27) == Fraction(5, 9)
        assert st == Fraction(9, 27) == Fraction(1, 3)

    def test_exact_types(self):
        s, st = s_values(census(999))
        assert isinstance(s, Fraction) and isinstance(st, Fraction)


class TestScan:
    def test_15(self):
        rows, summary = scan(15)
        assert [r.m for r in rows] == [9, 15]
        # 7/9 = 0.777..., 11/15 = 0.733...
        assert rows[-1].min_s == Fraction(11, 15)
        assert rows[-1].min_s_tilde == Fraction(7, 15)
        assert (summary.argmin_m_s, summary.argmin_m_s_tilde) == (15, 15)

    def test_9(self):
        rows, summary = scan(9)
        assert len(rows) == 1
        assert rows[0].min_s == rows[0].min_s_tilde == Fraction(7, 9)
        assert summary.rows_emitted == 1

    def test_rejects_small(self):
        with pytest.raises(DomainError):
            scan(8)

    def test_running_minima_naive(self):
        rows, summary = scan(3000)
        for i, row in enumerate(rows):
            assert row.min_s == min(r.s for r in rows[: i + 1])
            assert row.min_s_tilde == min(r.s_tilde for r in rows[: i + 1])
        assert summary.final_min_s == rows[-1].min_s
        assert summary.final_min_s_tilde == rows[-1].min_s_tilde
        assert next(r.m for r in rows if r.s == summary.final_min_s) == summary.argmin_m_s

    def test_incremental_equals_fresh(self):
        rows = {r.m: r for r in iter_scan(6003)}
        for m in [9, 21, 333, 2001, 6003]:
            fresh = census(m)
            r = rows[m]
            assert (r.t, r.a2, r.a4, r.a6, r.pi) == (fresh.t, fresh.a2, fresh.a4, fresh.a6, fresh.pi)

    def test_summarize_empty(self):
        with pytest.raises(DomainError):
            summarize(9, [])


class TestExport:
    def test_csv_header_and_rows(self):
        buf = io.StringIO()
        n = write_csv(iter_scan(99), buf)
        text = buf.getvalue()
        lines = text.split("\n")
        assert lines[0] == "m,t,a2,a4,a6,pi,s_num,s_den,s_float,st_num,st_den,st_float,min_s_float,min_st_float"
        assert n == 16 and text.endswith("\n")
        assert lines[1] == "9,1,0,0,0,4,7,9,0.777777777778,7,9,0.777777777778,0.777777777778,0.777777777778"
        assert lines[2] == "15,2,0,0,1,6,11,15,0.733333333333,7,15,0.466666666667,0.733333333333,0.466666666667"
        assert '"' not in text

    def test_csv_parses(self):
        buf = io.StringIO()
        write_csv(iter_scan(999), buf)
        rows = list(csv.DictReader(io.StringIO(buf.getvalue())))
        assert tuple(rows[0]) == CSV_HEADER
        for r in rows:
            m = int(r["m"])
            assert Fraction(int(r["s_num"]), int(r["s_den"])) == Fraction(4 * int(r["a6"]) + 7, m)

    def test_jsonl_mirrors_csv(self):
        csv_buf, json_buf = io.StringIO(), io.StringIO()
        write_csv(iter_scan(99), csv_buf)
        write_jsonl(iter_scan(99), json_buf)
        csv_rows = list(csv.DictReader(io.StringIO(csv_buf.getvalue())))
        json_rows = [json.loads(line) for line in json_buf.getvalue().splitlines()]
        assert len(csv_rows) == len(json_rows)
        for c, j in zip(csv_rows, json_rows):
            assert list(j) == list(CSV_HEADER)
            assert {k: float(v) for k, v in c.items()} == {k: float(v) for k, v in j.items()}
