from ooakit import full_factorial
from ooakit.cli import main
from ooakit.figures import render_array, render_bounds, render_certificate
from ooakit.klp import dual_matrix, indicator_matrix

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def _is_png(path):
    return path.stat().st_size > 0 and path.read_bytes()[:8] == PNG_MAGIC


def test_render_array(tmp_path, example_2222):
    out = render_array(example_2222, tmp_path / "arr.png", title="example")
    assert _is_png(out)


def test_render_array_degenerate(tmp_path):
    arr = full_factorial(2, 1, 1)
    assert _is_png(render_array(arr, tmp_path / "tiny.png"))


def test_render_certificate(tmp_path):
    ind = indicator_matrix(2, 2, 2, 2)
    dual = dual_matrix(2, 2, 2, 2)
    out = render_certificate(ind, dual, tmp_path / "cert.png")
    assert _is_png(out)


def test_render_bounds(tmp_path):
    out = render_bounds(2, 2, 2, tmp_path / "bounds.png")
    assert _is_png(out)


def test_cli_verify_writes_figure(tmp_path, example_2222):
    from ooakit.arrayfile import write_array_file

    path = tmp_path / "example.ooa"
    write_array_file(path, example_2222)
    figdir = tmp_path / "figs"
    assert main(["verify", str(path), "--figures", str(figdir)]) == 0
    assert _is_png(figdir / "example_array.png")


def test_cli_certify_writes_figure(tmp_path):
    figdir = tmp_path / "figs"
    code = main(["klp-certify", "--q", "2", "--n", "2", "--r", "2", "--t", "2",
                 "--figures", str(figdir)])
    assert code == 0
    assert _is_png(figdir / "certify_q2_n2_r2_t2.png")


def test_cli_bounds_writes_figure(tmp_path):
    figdir = tmp_path / "figs"
    code = main(["bounds", "--q", "2", "--n", "2", "--r", "2", "--t", "2",
                 "--figures", str(figdir)])
    assert code == 0
    assert _is_png(figdir / "bounds_q2_n2_r2.png")


def test_cli_construct_writes_figure(tmp_path):
    figdir = tmp_path / "figs"
    out = tmp_path / "h.ooa"
    code = main(["construct", "hermite", "--q", "2", "--n", "2", "--r", "2",
                 "--t", "2", "-o", str(out), "--figures", str(figdir)])
    assert code == 0
    assert _is_png(figdir / "h_array.png")
