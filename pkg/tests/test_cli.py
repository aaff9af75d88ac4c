import pytest

from modlat import canonical_form, covers_text, decode_digraph6, Lattice
from modlat.cli import main

from fixtures import figure_rack, m_k


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


TABLE_12 = "12\t7\t24\t127\t766"


class TestCount:
    def test_table_row_12(self, capsys):
        code, out, _ = run(capsys, "count", "--n", "12", "--table")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "n\tCycle indices\tMod. vi-racks\tMod. vi-lattices\tMod. lattices"
        assert TABLE_12 in lines

    def test_single_row(self, capsys):
        code, out, _ = run(capsys, "count", "--n", "8")
        assert code == 0
        assert out.strip() == "8\t2\t3\t7\t34"

    def test_with_disk_store(self, capsys, disk_store):
        code, out, _ = run(capsys, "count", "--n", "10", "--store", str(disk_store.path))
        assert code == 0
        assert out.strip() == "10\t3\t7\t28\t157"


class TestDecorations:
    def test_count_on_figure_rack(self, capsys, tmp_path):
        path = tmp_path / "rack.covers"
        path.write_text(covers_text(figure_rack()))
        code, out, _ = run(capsys, "decorations", "count", "--rack", str(path), "--trinkets", "2")
        assert code == 0
        assert out.strip() == "7"

    def test_list_vectors(self, capsys, tmp_path):
        path = tmp_path / "rack.covers"
        path.write_text(covers_text(figure_rack()))
        code, out, _ = run(capsys, "decorations", "list", "--rack", str(path), "--trinkets", "2")
        assert code == 0
        assert out.splitlines() == [
            "2,0,0,0", "1,1,0,0", "1,0,0,1", "0,2,0,0", "0,1,1,0", "0,1,0,1", "0,0,0,2",
        ]

    def test_unrank_and_sample(self, capsys, tmp_path):
        path = tmp_path / "rack.covers"
        path.write_text(covers_text(figure_rack()))
        code, out, _ = run(capsys, "decorations", "unrank", "--rack", str(path),
                           "--trinkets", "2", "--index", "0")
        assert code == 0 and out.strip() == "2,0,0,0"
        code1, out1, _ = run(capsys, "decorations", "sample", "--rack", str(path),
                             "--trinkets", "3", "--seed", "9", "--count", "4")
        code2, out2, _ = run(capsys, "decorations", "sample", "--rack", str(path),
                             "--trinkets", "3", "--seed", "9", "--count", "4")
        assert code1 == code2 == 0
        assert out1 == out2

    def test_store_id_reference(self, capsys, disk_store):
        code, out, _ = run(capsys, "decorations", "count", "--rack", "4.0",
                           "--trinkets", "3", "--store", str(disk_store.path))
        assert code == 0
        assert out.strip() == "1"  # the square's lone site, trivial symmetry

    def test_d6_file_reference(self, capsys, tmp_path):
        form = canonical_form(m_k(3))
        path = tmp_path / "m3.d6"
        path.write_text(form.decode() + "\n")
        code, out, _ = run(capsys, "decorations", "count", "--rack", str(path), "--trinkets", "0")
        assert code == 0 and out.strip() == "1"


class TestUnrankAndSample:
    def test_unrank_out_of_range(self, capsys):
        code, _, err = run(capsys, "unrank", "--family", "mv", "--n", "6", "--index", "5")
        assert code == 1
        assert "index out of range (cardinality 2)" in err

    def test_unrank_covers_format(self, capsys):
        code, out, _ = run(capsys, "unrank", "--family", "mv", "--n", "6", "--index", "0")
        assert code == 0
        assert out.startswith("n=6\n")

    def test_unrank_d6_format(self, capsys):
        code, out, _ = run(capsys, "unrank", "--family", "mv", "--n", "6",
                           "--index", "1", "--format", "d6")
        assert code == 0
        n, _ = decode_digraph6(out.strip().encode())
        assert n == 6

    def test_m_family_first_is_chain(self, capsys):
        code, out, _ = run(capsys, "unrank", "--family", "m", "--n", "5", "--index", "0")
        assert code == 0
        assert out == "n=5\n0<1\n1<2\n2<3\n3<4\n"

    def test_sample_reproducible(self, capsys, disk_store):
        args = ("sample", "--family", "m", "--n", "9", "--seed", "3", "--count", "5",
                "--store", str(disk_store.path))
        code1, out1, _ = run(capsys, *args)
        code2, out2, _ = run(capsys, *args)
        assert code1 == code2 == 0
        assert out1 == out2
        assert out1.count("n=9") == 5


class TestVerifyCommand:
    def test_ok_on_fresh_store(self, capsys, disk_store):
        code, out, _ = run(capsys, "verify", "--store", str(disk_store.path), "--max-n", "8")
        assert code == 0
        assert out.strip() == "ok"

    def test_fails_on_corruption(self, capsys, rack_forms_14, tmp_path):
        from modlat import store_write

        store_write({k: rack_forms_14[k] for k in range(1, 9)}, tmp_path, family="rack")
        target = tmp_path / "rack-6.d6"
        raw = bytearray(target.read_bytes())
        raw[1] ^= 0x04
        target.write_bytes(bytes(raw))
        code, _, err = run(capsys, "verify", "--store", str(tmp_path), "--max-n", "6")
        assert code == 1
        assert err


class TestGen:
    def test_gen_writes_store(self, capsys, tmp_path):
        code, out, _ = run(capsys, "gen", "--family", "rack", "--n", "8",
                           "--out", str(tmp_path / "s"))
        assert code == 0
        assert out.splitlines()[-1] == "8\t3"
        from modlat import store_open

        store = store_open(tmp_path / "s", "rack")
        assert store.count(8) == 3

    def test_usage_error_exit_2(self, capsys):
        assert main(["gen", "--family", "bogus", "--n", "4", "--out", "x"]) == 2
        assert main(["nonsense"]) == 2


class TestRender:
    def test_render_m3(self, capsys, tmp_path):
        path = tmp_path / "m3.covers"
        path.write_text(covers_text(m_k(3)))
        code, out, _ = run(capsys, "render", "--lattice", str(path))
        assert code == 0
        assert out.startswith("digraph lattice {")
        assert out.count("->") == 6
