import http.server
import threading

import pytest

from randhanoi import oeis
from randhanoi.errors import NetworkError, ParseError, UnknownSequence


def test_generate_examples():
    assert oeis.generate_sequence("A007798", 5) == [0, 2, 18, 116, 660]
    assert oeis.generate_sequence("A134939", 2)[1] == 64
    assert oeis.generate_sequence("A246961", 1) == [4]
    assert oeis.generate_sequence("A003462", 6) == [1, 4, 13, 40, 121, 364]
    assert oeis.generate_sequence("A226511", 6) == [0, 3, 24, 147, 816, 4323]
    assert oeis.generate_sequence("a000244", 4) == [1, 3, 9, 27]


def test_unknown_sequence():
    with pytest.raises(UnknownSequence):
        oeis.generate_sequence("A000000", 3)


@pytest.mark.parametrize("oeis_id", sorted(oeis.SEQUENCES))
def test_integer_valued_to_40(oeis_id):
    spec = oeis.SEQUENCES[oeis_id]
    terms = oeis.generate_sequence(oeis_id, 40, start=max(spec.offset, 1))
    assert all(isinstance(t, int) for t in terms)


@pytest.mark.parametrize("oeis_id", sorted(oeis.SEQUENCES))
def test_bundled_fixtures_pass(oeis_id):
    report = oeis.verify_against_fixture(oeis_id)
    assert report.ok and report.checked >= 4
    assert oeis.fixture_path(oeis_id).read_text().startswith("#")


def test_parse_bfile():
    assert oeis.parse_bfile("# comment\n3 18\n\n4 116\n") == [(3, 18), (4, 116)]
    with pytest.raises(ParseError) as info:
        oeis.parse_bfile("1 0\nx y\n")
    assert info.value.line_no == 2
    with pytest.raises(ParseError):
        oeis.parse_bfile("1 2 3\n")


def test_bfile_roundtrip():
    terms = [(1, 0), (2, 2)]
    assert oeis.parse_bfile(oeis.format_bfile(terms, "hdr")) == terms


def test_corrupted_fixture(tmp_path):
    (tmp_path / "A007798.txt").write_text("1 0\n2 2\n3 19\n")
    report = oeis.verify_against_fixture("A007798", tmp_path)
    assert not report.ok
    assert report.mismatches == [(3, 19, 18)]


def test_empty_fixture_is_vacuous_pass(tmp_path):
    (tmp_path / "A007798.txt").write_text("# nothing here\n")
    report = oeis.verify_against_fixture("A007798", tmp_path)
    assert report.ok and report.checked == 0
    assert report.warnings


def test_align_offset():
    ref = [(1, 0), (2, 2), (3, 18)]
    assert oeis.align_offset(ref, [(1, 0), (2, 2), (3, 18), (4, 116)]) == 0
    assert oeis.align_offset(ref, [(0, 0), (1, 2), (2, 18)]) == -1
    assert oeis.align_offset(ref, [(0, 5), (1, 0), (2, 2), (3, 18)]) == 0
    assert oeis.align_offset(ref, [(1, 1), (2, 2)]) is None


@pytest.fixture
def bfile_server():
    """Local HTTP server standing in for oeis.org."""
    files = {}

    class Handler(http.server.BaseHTTPRequestHandler):
        def do_GET(self):
            body = files.get(self.path)
            if body is None:
                self.send_response(404)
                self.end_headers()
                return
            self.send_response(200)
            self.end_headers()
            self.wfile.write(body.encode())

        def log_message(self, *args):
            pass

    server = http.server.HTTPServer(("127.0.0.1", 0), Handler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_port}", files
    server.shutdown()


def test_fetch_remote(bfile_server):
    url, files = bfile_server
    files["/A007798/b007798.txt"] = "# A007798\n1 0\n2 2\n3 18\n"
    assert oeis.fetch_remote("A007798", url) == [(1, 0), (2, 2), (3, 18)]


def test_remote_env_override(bfile_server, monkeypatch):
    url, files = bfile_server
    files["/A000244/b000244.txt"] = "0 1\n1 3\n2 9\n3 27\n4 81\n5 243\n"
    monkeypatch.setenv(oeis.BASE_URL_ENV, url)
    report = oeis.verify_remote("A000244")
    assert report.ok and report.source == "remote" and report.checked == 6
    assert report.offset_shift == 0


def test_remote_offset_shift_is_flagged(bfile_server):
    url, files = bfile_server
    # native indexing one higher than ours
    files["/A226511/b226511.txt"] = "1 0\n2 3\n3 24\n4 147\n5 816\n6 4323\n"
    report = oeis.verify_remote("A226511", url)
    assert report.ok
    assert report.offset_shift == 1
    assert any("offset" in w for w in report.warnings)


def test_remote_mismatch(bfile_server):
    url, files = bfile_server
    files["/A003462/b003462.txt"] = "0 0\n1 1\n2 4\n3 13\n4 40\n5 121\n6 364\n7 1094\n"
    report = oeis.verify_remote("A003462", url)
    assert not report.ok
    assert report.mismatches == [(7, 1094, 1093)]


def test_remote_parse_error_falls_back(bfile_server):
    url, files = bfile_server
    files["/A007798/b007798.txt"] = "1 0\nnot a line\n"
    report = oeis.verify_remote("A007798", url)
    assert report.ok and report.source == "fixture-only"


def test_remote_offline_falls_back():
    with pytest.raises(NetworkError):
        oeis.fetch_remote("A007798", "http://127.0.0.1:9", timeout=2)
    report = oeis.verify_remote("A007798", "http://127.0.0.1:9", timeout=2)
    assert report.ok and report.source == "fixture-only"
    assert any("remote unavailable" in w for w in report.warnings)


def test_remote_unalignable(bfile_server):
    url, files = bfile_server
    files["/A007798/b007798.txt"] = "1 5\n2 6\n"
    report = oeis.verify_remote("A007798", url)
    assert not report.ok and report.errors
