"""End-to-end checks for the command line layer and its cache format."""

import json
import os
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp

from zetamoments import cli, moments
from zetamoments.characters import install_table
from zetamoments.cli import (
    SCHEMA_VERSION,
    CacheError,
    cache_lock,
    decode_chartable,
    decode_dimpoly,
    decode_ftable,
    decode_pzeta,
    encode_chartable,
    encode_dimpoly,
    encode_ftable,
    encode_pzeta,
    entry_filename,
    load_cache,
    load_entry,
    main,
    save_entry,
)
from zetamoments.frobenius_schur import SkewDimPoly
from zetamoments.moments import FTable, install_f_table
from zetamoments.symseries import KPoly
from zetamoments.zeta_numerics import PrimeZetaCoeffs, install_prime_zeta


@pytest.fixture(autouse=True)
def pristine_installs():
    yield
    for n in range(12):
        install_table(n, None)
    install_f_table(None)
    for r in range(1, 40):
        install_prime_zeta(r, None)
    cli._loaded_dimpoly.clear()


partition = st.lists(st.integers(1, 5), max_size=4).map(
    lambda xs: tuple(sorted(xs, reverse=True))
)
pair = st.tuples(partition, partition)


def roundtrip(entry):
    doc = json.loads(json.dumps(
        {"schema_version": entry.schema_version, "kind": entry.kind,
         "params": entry.params, "tolerances": entry.tolerances,
         "payload": entry.payload},
        sort_keys=True))
    return cli.CacheEntry(doc["kind"], doc["params"], doc["payload"],
                          doc["schema_version"], doc["tolerances"])


class TestCacheFormat:
    @settings(max_examples=40, deadline=None)
    @given(
        n=st.integers(0, 9),
        table=st.dictionaries(pair, st.integers(-(10**15), 10**15), max_size=8),
    )
    def test_chartable_roundtrip_is_exact(self, n, table):
        back = decode_chartable(roundtrip(encode_chartable(n, table)))
        assert back == table
        assert all(isinstance(v, int) for v in back.values())

    @settings(max_examples=40, deadline=None)
    @given(
        w=st.integers(1, 9),
        entries=st.dictionaries(pair, st.fractions(), max_size=8),
    )
    def test_ftable_roundtrip_is_exact(self, w, entries):
        back = decode_ftable(roundtrip(encode_ftable(FTable(w, entries))))
        assert back.max_weight == w
        assert back.entries == entries
        for v in back.entries.values():
            assert isinstance(v, Fraction)

    @settings(max_examples=25, deadline=None)
    @given(
        r=st.integers(1, 20),
        digits=st.sampled_from([15, 25, 40]),
        nums=st.lists(st.fractions(), min_size=1, max_size=6),
        tails=st.lists(st.fractions(), max_size=3),
    )
    def test_pzeta_roundtrip_restores_every_bit(self, r, digits, nums, tails):
        # mirror production: values rounded at working precision digits + 5
        with mp.workdps(digits + 5):
            coeffs = tuple(
                mp.mpf(f.numerator) / f.denominator for f in nums
            )
            tb = tuple(abs(mp.mpf(f.numerator) / max(1, f.denominator))
                       for f in tails)
        pz = PrimeZetaCoeffs(r, coeffs, digits, tb)
        back = decode_pzeta(roundtrip(encode_pzeta(pz)))
        assert back.r == r and back.digits == digits
        assert len(back.coeffs) == len(coeffs)
        for a, b in zip(coeffs, back.coeffs):
            assert a == b
        for a, b in zip(tb, back.tail_bounds):
            assert a == b

    @settings(max_examples=40, deadline=None)
    @given(
        kap=partition,
        lam=partition,
        cs=st.lists(st.fractions(), min_size=1, max_size=6),
        depth=st.integers(0, 8),
    )
    def test_dimpoly_roundtrip_is_exact(self, kap, lam, cs, depth):
        poly = SkewDimPoly(KPoly(cs), depth)
        back = decode_dimpoly(roundtrip(encode_dimpoly(kap, lam, poly)))
        assert back.B == poly.B
        assert back.depth == depth

    def test_saved_files_are_deterministic(self, tmp_path):
        entry = encode_chartable(2, {((2,), (1, 1)): -1, ((2,), (2,)): 1})
        name = entry_filename(entry.kind, entry.params)
        with cache_lock(str(tmp_path)):
            save_entry(str(tmp_path), entry)
            first = (tmp_path / name).read_bytes()
            save_entry(str(tmp_path), entry)
            second = (tmp_path / name).read_bytes()
        assert first == second

    def test_newer_schema_is_rejected(self, tmp_path):
        path = tmp_path / "chartable_n1.json"
        path.write_text(json.dumps({
            "schema_version": SCHEMA_VERSION + 1, "kind": "chartable",
            "params": {"n": 1}, "payload": {"entries": []},
        }))
        with pytest.raises(CacheError):
            load_entry(str(tmp_path), "chartable_n1.json")

    def test_garbage_file_is_reported_with_path(self, tmp_path):
        path = tmp_path / "pzeta_r1.json"
        path.write_text("{not json")
        with pytest.raises(CacheError, match="pzeta_r1"):
            load_entry(str(tmp_path), "pzeta_r1.json")


class TestLock:
    def test_lock_is_created_and_released(self, tmp_path):
        lockfile = tmp_path / ".lock"
        with cache_lock(str(tmp_path)):
            assert lockfile.exists()
        assert not lockfile.exists()

    def test_second_writer_is_refused(self, tmp_path):
        with cache_lock(str(tmp_path)):
            with pytest.raises(CacheError, match="locked"):
                with cache_lock(str(tmp_path)):
                    pass

    def test_held_lock_turns_into_exit_3(self, tmp_path):
        (tmp_path / ".lock").write_text("pid 0\n")
        rc = main(["precompute", "--nmax", "1", "--digits", "10",
                   "--cache-dir", str(tmp_path)])
        assert rc == 3


class TestPrecompute:
    def test_build_then_reuse(self, tmp_path, capsys):
        root = str(tmp_path / "c")
        status = cli.cmd_precompute(3, 15, root)
        assert status["built"]["chartable"] == 4
        assert status["built"]["ftable"] == 1
        assert status["built"]["pzeta"] > 0
        assert status["built"]["dimpoly"] > 0
        again = cli.cmd_precompute(3, 15, root)
        assert all(v == 0 for v in again["built"].values())
        assert again["reused"]["chartable"] == 4

    def test_loaded_tables_are_installed(self, tmp_path):
        root = str(tmp_path / "c")
        cli.cmd_precompute(3, 15, root)
        install_f_table(None)
        for n in range(12):
            install_table(n, None)
        counts = load_cache(root)
        assert counts["ftable"] == 1
        assert counts["chartable"] == 4
        installed = moments._f_store["installed"]
        assert installed is not None and installed.max_weight == 3
        # the installed coupling table serves lookups with the known values
        got = moments.f_table(2)
        assert got.entries[((1,), (1,))] == 1
        assert got.entries[((1, 1), (1, 1))] == Fraction(-1, 4)
        assert cli._loaded_dimpoly[((1,), (1,))].depth == 2

    def test_digit_upgrade_replaces_only_pzeta(self, tmp_path):
        root = tmp_path / "c"
        cli.cmd_precompute(2, 15, str(root))
        keep = {
            p.name: p.read_bytes()
            for p in root.iterdir()
            if p.name.startswith(("chartable", "ftable", "dimpoly"))
        }
        pz_before = {
            p.name: p.read_bytes()
            for p in root.iterdir() if p.name.startswith("pzeta")
        }
        status = cli.cmd_precompute(2, 30, str(root))
        assert status["built"]["pzeta"] == len(pz_before)
        assert status["built"]["chartable"] == 0
        assert status["built"]["ftable"] == 0
        assert status["built"]["dimpoly"] == 0
        for name, data in keep.items():
            assert (root / name).read_bytes() == data
        for name, data in pz_before.items():
            assert (root / name).read_bytes() != data

    def test_partial_cache_is_topped_up(self, tmp_path):
        root = str(tmp_path / "c")
        cli.cmd_precompute(1, 12, root)
        os.unlink(os.path.join(root, "chartable_n1.json"))
        status = cli.cmd_precompute(1, 12, root)
        assert status["built"]["chartable"] == 1
        assert status["built"]["ftable"] == 0

    def test_bad_arguments_are_input_errors(self, tmp_path):
        with pytest.raises(ValueError):
            cli.cmd_precompute(0, 10, str(tmp_path))
        with pytest.raises(ValueError):
            cli.cmd_precompute(2, 0, str(tmp_path))


class TestCommands:
    def test_coeff_matches_twice_euler_gamma(self, tmp_path, capsys):
        rc = main(["coeff", "--k", "1", "--N", "1", "--digits", "20",
                   "--format", "json", "--cache-dir", str(tmp_path / "c")])
        assert rc == 0
        doc = json.loads(capsys.readouterr().out)
        with mp.workdps(30):
            got = mp.mpf(doc["value"])
            assert abs(got - 2 * mp.euler) < mp.mpf("1e-19")
        assert doc["k"] == 1 and doc["N"] == 1
        assert "note" not in doc

    def test_degenerate_index_notes_and_succeeds(self, capsys):
        rc = main(["coeff", "--k", "2", "--N", "5", "--digits", "10",
                   "--format", "json"])
        assert rc == 0
        doc = json.loads(capsys.readouterr().out)
        assert mp.mpf(doc["value"]) == 0
        assert "beyond degree" in doc["note"]

    def test_poly_json_schema(self, capsys):
        rc = main(["poly", "--k", "1", "--digits", "15", "--format", "json"])
        assert rc == 0
        doc = json.loads(capsys.readouterr().out)
        assert set(doc) == {
            "schema_version", "k", "digits", "coefficients", "truncation",
            "cache",
        }
        assert doc["schema_version"] == SCHEMA_VERSION
        assert [c["N"] for c in doc["coefficients"]] == [0, 1]
        for c in doc["coefficients"]:
            assert set(c) == {"N", "value", "error"}
            assert isinstance(c["value"], str)
            assert isinstance(c["error"], str)
        assert set(doc["truncation"]) == {"r_max_used", "tol"}
        assert "versions" in doc["cache"]

    def test_json_output_is_byte_identical_across_runs(self, capsys):
        main(["poly", "--k", "1", "--digits", "15", "--format", "json"])
        first = capsys.readouterr().out
        main(["poly", "--k", "1", "--digits", "15", "--format", "json"])
        second = capsys.readouterr().out
        assert first == second

    def test_csv_is_labeled_lossy(self, capsys):
        rc = main(["poly", "--k", "1", "--digits", "12", "--format", "csv"])
        assert rc == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0].startswith("#") and "lossy" in out[0]
        assert out[1] == "N,value"
        assert len(out) == 4

    def test_selftest_fast_passes(self, capsys):
        assert main(["selftest", "--level", "fast"]) == 0
        out = capsys.readouterr().out
        assert "PASS" in out and "FAIL" not in out

    def test_exit_codes_for_bad_input(self, capsys):
        assert main(["coeff", "--k", "2", "--N", "-1"]) == 1
        assert main(["poly", "--k", "0"]) == 1
        assert main(["nonsense"]) == 1
        assert main([]) == 1
        capsys.readouterr()

    def test_malformed_cache_is_exit_3(self, tmp_path, capsys):
        (tmp_path / "ftable_w2.json").write_text("{broken")
        rc = main(["coeff", "--k", "1", "--N", "0", "--digits", "10",
                   "--cache-dir", str(tmp_path)])
        assert rc == 3
        capsys.readouterr()

    def test_cache_dir_env_var_and_flag(self, monkeypatch):
        monkeypatch.delenv(cli.CACHE_ENV, raising=False)
        args = cli.build_parser().parse_args(["coeff", "--k", "1", "--N", "0"])
        assert args.cache_dir == os.path.join(".", "cache")
        monkeypatch.setenv(cli.CACHE_ENV, "/tmp/fromenv")
        args = cli.build_parser().parse_args(["coeff", "--k", "1", "--N", "0"])
        assert args.cache_dir == "/tmp/fromenv"
        args = cli.build_parser().parse_args(
            ["coeff", "--k", "1", "--N", "0", "--cache-dir", "/tmp/fromflag"]
        )
        assert args.cache_dir == "/tmp/fromflag"
