import json

import pytest

from orderbij.catalog import resolve_group
from orderbij.errors import NotAssociative, ParseError, PersistenceFailure
from orderbij.io import (
    ReportStore,
    load_catalog_file,
    load_group_file,
    read_cayley_csv,
    read_permutation_file,
    read_weight_csv,
    write_cayley_csv,
)
from orderbij.lab import VerificationReport


def test_cayley_round_trip(tmp_path):
    G = resolve_group("Q8")
    p = tmp_path / "q8.csv"
    write_cayley_csv(p, G.table)
    assert read_cayley_csv(p) == G.table
    H = load_group_file(p)
    assert H.order == 8 and H.name == "q8" and sorted(H.orders) == sorted(G.orders)


def test_cayley_errors(tmp_path):
    ragged = tmp_path / "r.csv"
    ragged.write_text("0,1\n1\n")
    with pytest.raises(ParseError) as exc:
        read_cayley_csv(ragged)
    assert exc.value.line == 2 and str(ragged) in str(exc.value)
    na = tmp_path / "na.csv"
    na.write_text("0,1,2\n1,0,1\n2,1,0\n")
    with pytest.raises(NotAssociative):
        load_group_file(na)


def test_permutation_text_and_json(tmp_path):
    text = tmp_path / "s3.txt"
    text.write_text("# S3\ndegree 3\n2 3 1\n2,1,3\n")
    assert read_permutation_file(text) == (3, [[2, 3, 1], [2, 1, 3]])
    assert load_group_file(text).order == 6
    js = tmp_path / "a5.json"
    js.write_text(json.dumps({"degree": 5, "generators": [[2, 3, 1, 4, 5], [2, 3, 4, 5, 1]]}))
    assert load_group_file(js).order == 60
    trivial = tmp_path / "t.txt"
    trivial.write_text("degree 1\n")
    assert load_group_file(trivial).order == 1


def test_permutation_errors(tmp_path):
    bad = tmp_path / "b.txt"
    bad.write_text("degree 3\n1 2 x\n")
    with pytest.raises(ParseError) as exc:
        read_permutation_file(bad)
    assert exc.value.line == 2
    empty = tmp_path / "e.txt"
    empty.write_text("# nothing\n")
    with pytest.raises(ParseError):
        read_permutation_file(empty)
    js = tmp_path / "j.json"
    js.write_text(json.dumps({"generators": []}))
    with pytest.raises(ParseError):
        read_permutation_file(js)


def test_weight_csv_rules(tmp_path):
    p = tmp_path / "w.csv"
    p.write_text("1,1,1\n2,-3,4\n")
    assert read_weight_csv(p) == {1: 1, 2: pytest.approx(-0.75)}
    dup = tmp_path / "d.csv"
    dup.write_text("1,1,1\n1,2,1\n")
    with pytest.raises(ParseError) as exc:
        read_weight_csv(dup)
    assert exc.value.line == 2


def test_catalog_file_validation(tmp_path):
    good = tmp_path / "c.json"
    good.write_text(json.dumps([{"name": "X", "constructor": "cyclic", "args": [4], "order": 4}]))
    [e] = load_catalog_file(good)
    assert e.build().order == 4
    for body in ('{"name": "X"}', '[{"constructor": "cyclic"}]',
                 json.dumps([{"name": "X", "constructor": "cyclic", "args": [2]}] * 2), "[1, 2"):
        bad = tmp_path / "bad.json"
        bad.write_text(body)
        with pytest.raises(ParseError):
            load_catalog_file(bad)


def test_report_store(tmp_path):
    store = ReportStore(tmp_path / "sub" / "r.jsonl")
    assert store.read() == []
    r = VerificationReport("1970-01-01T00:00:00Z", "S3", 6, "bij", "verified", {"flow": []}, 0)
    store.append([r])
    store.append([r, r])
    assert len(store.read()) == 3 and VerificationReport.from_dict(store.read()[0]) == r
    with open(store.path, "a") as fh:
        fh.write("{not json\n")
    with pytest.raises(ParseError) as exc:
        store.read()
    assert exc.value.line == 4
    blocked = ReportStore(tmp_path)  # a directory cannot be appended to
    with pytest.raises(PersistenceFailure):
        blocked.append([r])


def test_report_json_is_compact_and_utf8():
    r = VerificationReport("t", "S₃", 6, "bij", "verified", {"x": "1/2"}, 0)
    line = r.to_json()
    assert " " not in line and "S₃" in line
