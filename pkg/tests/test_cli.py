"""End-to-end command tests: exit codes, outputs, warning reporting."""

import io
import json
import subprocess
import sys

import pytest

from corplex import cli

A_DOCS = [
    {"id": "a1", "title": "Alpha",
     "text": "The quick brown fox jumps over the lazy dog. It was a sunny day.\nBirds sang in the old trees."},
    {"id": "a2", "title": "Beta",
     "text": "A committee was established to review the documentation. Members agreed quickly."},
    {"id": "a3", "title": "Gamma",
     "text": "Rain fell on the quiet village. The river rose slowly through the night."},
]

B_DOCS = [
    {"id": "b1", "title": "Alpha",
     "text": "The quick brown fox jumps over the lazy dog while children watch from the gate. It was a sunny day in late spring.\nBirds sang in the old trees near the schoolhouse wall."},
    {"id": "b2", "title": "Beta",
     "text": "A committee was established to review the documentation before the annual meeting. Members agreed quickly on every substantive point raised."},
    {"id": "b3", "title": "Gamma",
     "text": "Rain fell on the quiet village all afternoon. The river rose slowly through the night and into the grey morning."},
    {"id": "b4", "title": "Delta",
     "text": "An unrelated appendix describes the procedure in considerable detail for new readers."},
    {"id": "b5", "title": "Epsilon",
     "text": "Farmers planted wheat along the southern ridge before the first frost arrived."},
]

TAG_LINES = [
    "The/DT cat/NN sat/VBD ./.",
    "Dogs/NNS bark/VBP loudly/RB ./.",
]


def write_jsonl(path, records):
    path.write_text("".join(json.dumps(r) + "\n" for r in records))
    return str(path)


@pytest.fixture
def corpus_a(tmp_path):
    return write_jsonl(tmp_path / "a.jsonl", A_DOCS)


@pytest.fixture
def corpus_b(tmp_path):
    return write_jsonl(tmp_path / "b.jsonl", B_DOCS)


@pytest.fixture
def tags(tmp_path):
    path = tmp_path / "tags.txt"
    path.write_text("".join(line + "\n" for line in TAG_LINES))
    return str(path)


def xml_page(title, page_id, revisions):
    revs = "".join(
        "<revision><id>{}</id><timestamp>{}</timestamp>"
        "<contributor><username>{}</username></contributor><text>{}</text></revision>".format(*r)
        for r in revisions
    )
    return f"<page><title>{title}</title><id>{page_id}</id>{revs}</page>"


def xml_dump(*pages):
    return (
        '<mediawiki xmlns="http://www.mediawiki.org/xml/export-0.10/">'
        + "".join(pages)
        + "</mediawiki>"
    )


class TestDispatch:
    def test_no_subcommand(self, capsys):
        assert cli.main([]) == 1
        assert "usage" in capsys.readouterr().err

    def test_unknown_subcommand(self, capsys):
        with pytest.raises(SystemExit) as err:
            cli.main(["frobnicate"])
        assert err.value.code == 1
        assert "error" in capsys.readouterr().err

    def test_bad_flag(self, corpus_a, capsys):
        with pytest.raises(SystemExit) as err:
            cli.main(["stats", corpus_a, "--bogus"])
        assert err.value.code == 1

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as err:
            cli.main(["--version"])
        assert err.value.code == 0
        assert capsys.readouterr().out.startswith("corplex ")

    def test_missing_input_file_is_data_error(self, tmp_path, capsys):
        assert cli.main(["stats", str(tmp_path / "nope.jsonl")]) == 2
        assert "error:" in capsys.readouterr().err


class TestExtract:
    def test_xml_export_to_jsonl(self, tmp_path, capsys):
        dump = xml_dump(
            xml_page("One", 1, [
                (1, "2020-01-01T00:00:00Z", "Ann", "Old text."),
                (2, "2020-01-02T00:00:00Z", "Ann", "'''Bold''' text with a [[link]]."),
            ]),
            xml_page("Two", 2, [(3, "2020-01-01T00:00:00Z", "Bob", "Second page text.")]),
            xml_page("Three", 3, [(4, "2020-01-01T00:00:00Z", "Bob", "#REDIRECT [[One]]")]),
        )
        src = tmp_path / "dump.xml"
        src.write_text(dump)
        out = tmp_path / "docs.jsonl"
        assert cli.main(["extract", str(src), "-o", str(out)]) == 0
        records = [json.loads(line) for line in out.read_text().splitlines()]
        assert [r["title"] for r in records] == ["One", "Two"]
        assert records[0]["text"] == "Bold text with a link."
        assert "warning: redirect_skipped x1" in capsys.readouterr().err

    def test_keep_redirects(self, tmp_path):
        dump = xml_dump(xml_page("R", 1, [(1, "2020-01-01T00:00:00Z", "Ann", "#REDIRECT [[X]]")]))
        src = tmp_path / "dump.xml"
        src.write_text(dump)
        out = tmp_path / "docs.jsonl"
        assert cli.main(["extract", str(src), "--keep-redirects", "-o", str(out)]) == 0
        assert len(out.read_text().splitlines()) == 1

    def test_jsonl_roundtrip(self, corpus_a, tmp_path):
        out = tmp_path / "copy.jsonl"
        assert cli.main(["extract", corpus_a, "--format", "jsonl", "-o", str(out)]) == 0
        records = [json.loads(line) for line in out.read_text().splitlines()]
        assert [r["id"] for r in records] == ["a1", "a2", "a3"]


class TestSample:
    def test_writes_text_and_manifest(self, corpus_a, tmp_path):
        prefix = tmp_path / "s"
        assert cli.main(["sample", corpus_a, "--target", "30", "--seed", "9",
                         "-o", str(prefix)]) == 0
        lines = (tmp_path / "s.txt").read_text().splitlines()
        assert lines
        manifest = json.loads((tmp_path / "s.manifest.json").read_text())
        assert manifest["seed"] == 9
        assert manifest["unit"] == "word"
        assert manifest["target"] == 30
        assert manifest["achieved"] >= 30
        assert manifest["source"] == corpus_a

    def test_line_granularity(self, corpus_a, tmp_path):
        prefix = tmp_path / "s"
        assert cli.main(["sample", corpus_a, "--target", "20", "--granularity", "line",
                         "--unit", "char", "-o", str(prefix)]) == 0
        manifest = json.loads((tmp_path / "s.manifest.json").read_text())
        assert manifest["unit"] == "character"

    def test_pool_exhausted(self, corpus_a, tmp_path, capsys):
        assert cli.main(["sample", corpus_a, "--target", "100000",
                         "-o", str(tmp_path / "s")]) == 2
        assert "error:" in capsys.readouterr().err


class TestStats:
    def test_json_fields(self, corpus_a, capsys):
        assert cli.main(["stats", corpus_a]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["condition"] == "WB"
        assert payload["V"] < payload["N"]
        assert 0 < payload["C"] < 1
        assert payload["entropy_bits"] > 0
        assert payload["words_per_sentence"] > 1

    def test_tsv_rows(self, corpus_a, capsys):
        assert cli.main(["stats", corpus_a, "--format", "tsv"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "condition\tWB"
        assert any(l.startswith("V\t") for l in lines)

    def test_condition_choice_enforced(self, corpus_a):
        with pytest.raises(SystemExit) as err:
            cli.main(["stats", corpus_a, "--condition", "XX"])
        assert err.value.code == 1

    def test_reads_stdin(self, corpus_a, capsys, monkeypatch):
        text = "".join(json.dumps(r) + "\n" for r in A_DOCS)
        monkeypatch.setattr(sys, "stdin", io.StringIO(text))
        assert cli.main(["stats", "-"]) == 0
        assert json.loads(capsys.readouterr().out)["N"] > 0


class TestNgram:
    def test_word_unigrams_tsv(self, corpus_a, capsys):
        assert cli.main(["ngram", corpus_a, "--n", "1"]) == 0
        lines = capsys.readouterr().out.splitlines()
        # folded stream: 7 the, 7 sentence-final periods; ties break lexically
        assert lines[0] == ".\t7"
        assert lines[1] == "the\t7"

    def test_word_json_summary(self, corpus_a, capsys):
        assert cli.main(["ngram", corpus_a, "--n", "2", "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["n"] == 2
        assert payload["total"] >= payload["distinct"]
        assert payload["entropy_bits"] > 0

    def test_tag_kind(self, tags, capsys):
        assert cli.main(["ngram", tags, "--n", "1", "--kind", "tag"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert ".\t2" in lines

    def test_empty_stream_is_data_error(self, tmp_path, capsys):
        src = write_jsonl(tmp_path / "p.jsonl", [{"id": "1", "title": "P", "text": "? !"}])
        assert cli.main(["ngram", src, "--n", "1", "--condition", "WN"]) == 2
        assert "error:" in capsys.readouterr().err


class TestPos:
    def test_identical_files_json(self, tags, capsys):
        assert cli.main(["pos", tags, tags]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload == {"n": 1, "similarity": 1.0, "angle_degrees": 0.0}

    def test_angle_table_tsv(self, tags, capsys):
        assert cli.main(["pos", tags, tags, "--format", "tsv"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "n\tangle_degrees"
        assert [l.split("\t")[0] for l in lines[1:]] == ["2", "3", "4", "5"]
        assert all(l.split("\t")[1] == "0" for l in lines[1:])


class TestFog:
    def test_per_document_json(self, corpus_a, capsys):
        assert cli.main(["fog", corpus_a]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["mode"] == "per_document"
        assert payload["group"]["n"] == 3
        assert [d["id"] for d in payload["documents"]] == ["a1", "a2", "a3"]

    def test_per_document_tsv(self, corpus_a, capsys):
        assert cli.main(["fog", corpus_a, "--format", "tsv"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 3
        assert lines[0].startswith("a1\t")

    def test_pooled(self, corpus_a, capsys):
        assert cli.main(["fog", corpus_a, "--pooled"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["mode"] == "pooled"
        assert payload["F"] > 0


class TestConflict:
    # two mutual pairs: {A,B} at weight 3 (excluded), {C,D} at weight 2
    TEXTS = ["p", "q", "p", "r", "s", "r", "u", "v", "u", "x", "v", "y", "z1", "z2"]
    EDITORS = ["A", "B", "A", "B", "A", "B", "C", "D", "C", "C", "D", "C", "A", "A"]

    def history_dump(self):
        revs = [
            (i + 1, f"2020-01-01T00:{i:02d}:00Z", self.EDITORS[i], self.TEXTS[i])
            for i in range(len(self.TEXTS))
        ]
        calm = [(100, "2020-01-01T00:00:00Z", "E", "m"), (101, "2020-01-01T00:01:00Z", "F", "n")]
        return xml_dump(xml_page("Hot", 1, revs), xml_page("Calm", 2, calm))

    def test_scores_and_ranking(self, tmp_path, capsys):
        src = tmp_path / "hist.xml"
        src.write_text(self.history_dump())
        ranking = tmp_path / "rank.tsv"
        assert cli.main(["conflict", str(src), "--ranking", str(ranking)]) == 0
        rows = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
        hot = next(r for r in rows if r["page_id"] == "1")
        assert (hot["M"], hot["E"]) == (8, 4)
        assert hot["excluded_pair"] == {"x": "A", "y": "B", "weight": 3}
        assert len(hot["revert_events"]) == 4
        calm = next(r for r in rows if r["page_id"] == "2")
        assert (calm["M"], calm["revert_events"]) == (0, [])
        assert ranking.read_text() == "1\t8\n2\t0\n"

    def test_match_policy_flag(self, tmp_path, capsys):
        src = tmp_path / "hist.xml"
        src.write_text(self.history_dump())
        assert cli.main(["conflict", str(src), "--match", "earliest"]) == 0
        rows = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
        assert {r["page_id"] for r in rows} == {"1", "2"}


class TestCompare:
    def test_repeat_runs_identical(self, corpus_a, corpus_b, tmp_path):
        outs = []
        for name in ("r1.json", "r2.json"):
            path = tmp_path / name
            assert cli.main(["compare", corpus_a, corpus_b, "--conditions", "WB,CN",
                             "--seed", "42", "-o", str(path)]) == 0
            outs.append(path.read_bytes())
        assert outs[0] == outs[1]
        payload = json.loads(outs[0])
        assert set(payload["conditions"]) == {"WB", "CN"}
        assert payload["corpus_b"]["documents"] == 5

    def test_paired_restricts_by_title(self, corpus_a, corpus_b, tmp_path):
        path = tmp_path / "r.json"
        assert cli.main(["compare", corpus_a, corpus_b, "--paired",
                         "--conditions", "WB", "-o", str(path)]) == 0
        assert json.loads(path.read_text())["corpus_b"]["documents"] == 3

    def test_paired_without_matches(self, corpus_a, tmp_path, capsys):
        other = write_jsonl(tmp_path / "c.jsonl",
                            [{"id": "c1", "title": "Zeta", "text": "Words here."}])
        assert cli.main(["compare", corpus_a, other, "--paired"]) == 2
        assert "paired" in capsys.readouterr().err


class TestPlotdata:
    def test_zipf(self, corpus_a, tmp_path):
        out = tmp_path / "z.tsv"
        assert cli.main(["plotdata", corpus_a, "--kind", "zipf", "-o", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "rank\tfreq"
        assert lines[1].startswith("1\t")

    def test_heaps(self, corpus_a, tmp_path):
        out = tmp_path / "h.tsv"
        assert cli.main(["plotdata", corpus_a, "--kind", "heaps", "-o", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "N\tV"
        assert lines[1] == "1\t1"

    def test_ngram_zipf(self, corpus_a, tmp_path):
        out = tmp_path / "n.tsv"
        assert cli.main(["plotdata", corpus_a, "--kind", "ngram_zipf", "--n", "2",
                         "-o", str(out)]) == 0
        assert out.read_text().startswith("rank\tfreq\n")

    def test_pos_dist(self, tags, tmp_path):
        out = tmp_path / "p.tsv"
        assert cli.main(["plotdata", tags, "--kind", "pos_dist", "-o", str(out)]) == 0
        assert out.read_text().startswith("tag\trelative_frequency\n")

    def test_output_required(self, corpus_a):
        with pytest.raises(SystemExit) as err:
            cli.main(["plotdata", corpus_a, "--kind", "zipf"])
        assert err.value.code == 1


class TestFetch:
    def test_file_url(self, tmp_path):
        src = tmp_path / "src.txt"
        src.write_text("payload\n")
        out = tmp_path / "got.txt"
        assert cli.main(["fetch", src.as_uri(), str(out)]) == 0
        assert out.read_text() == "payload\n"

    def test_unreachable(self, tmp_path, capsys):
        out = tmp_path / "x"
        assert cli.main(["fetch", "http://127.0.0.1:1/none", str(out)]) == 2
        assert "fetch failed" in capsys.readouterr().err


def test_console_script_runs():
    proc = subprocess.run(["corplex", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("corplex ")
