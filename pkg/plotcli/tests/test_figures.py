import pytest

from plotcli import FigureSpec, SchemaError, PlotError, read_table, render, sniff_kind

SWEEP = """gamma,algo,K,T,iters,mean_regret,stderr
0,ucb,5,100,50,40.1,1.2
0.25,ucb,5,100,50,12.5,0.8
0.5,ucb,5,100,50,18.9,0.9
0.75,ucb,5,100,50,27.3,1.1
1,ucb,5,100,50,33,1.3
"""

LIFELONG = """episode,mean_lifelong_regret,stderr,n
1,10.5,0.5,20
2,19.8,0.9,20
3,28.4,1.4,20
4,36.1,1.6,20
"""

MORTAL = """t,mean_regret,stderr,n,agent
1,0.4,0.02,20,pu
10,3.9,0.2,20,pu
100,38.2,2.1,20,pu
"""


def put(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_read_table_parses_columns(tmp_path):
    t = read_table(put(tmp_path, "s.csv", SWEEP),
                   ("gamma", "algo", "K", "T", "iters", "mean_regret", "stderr"))
    assert t["gamma"] == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert t["algo"] == ["ucb"] * 5
    assert t["mean_regret"][1] == 12.5


def test_sweep_minimum_matches_csv_argmin(tmp_path):
    src = put(tmp_path, "s.csv", SWEEP)
    out = str(tmp_path / "fig.png")
    summary = render(FigureSpec("sweep", (src,), (None,), out))
    assert (tmp_path / "fig.png").stat().st_size > 0
    (series,) = summary["series"]
    assert series["label"] == "s"
    # row 1 (gamma 0.25, regret 12.5) is the argmin of the fixture
    assert series["argmin_x"] == 0.25
    assert series["min_y"] == 12.5


def test_render_is_byte_deterministic(tmp_path):
    src = put(tmp_path, "s.csv", SWEEP)
    a, b = str(tmp_path / "a.png"), str(tmp_path / "b.png")
    render(FigureSpec("sweep", (src,), ("x",), a))
    render(FigureSpec("sweep", (src,), ("x",), b))
    assert (tmp_path / "a.png").read_bytes() == (tmp_path / "b.png").read_bytes()


def test_lifelong_curves_two_bands(tmp_path):
    one = put(tmp_path, "one.csv", LIFELONG)
    two = put(tmp_path, "two.csv", LIFELONG.replace("36.1", "50.0"))
    out = str(tmp_path / "fig.png")
    summary = render(FigureSpec("lifelong", (one, two), ("a", "b"), out))
    finals = {s["label"]: s["final_y"] for s in summary["series"]}
    assert finals == {"a": 36.1, "b": 50.0}


def test_mortal_labels_default_to_agent(tmp_path):
    src = put(tmp_path, "m.csv", MORTAL)
    out = str(tmp_path / "fig.png")
    summary = render(FigureSpec("mortal", (src,), (None,), out))
    assert summary["series"][0]["label"] == "pu"


def test_sniff_kind(tmp_path):
    assert sniff_kind(put(tmp_path, "l.csv", LIFELONG)) == "lifelong"
    assert sniff_kind(put(tmp_path, "m.csv", MORTAL)) == "mortal"
    with pytest.raises(SchemaError, match="neither"):
        sniff_kind(put(tmp_path, "s.csv", SWEEP))


def test_header_only_file_is_an_error(tmp_path):
    src = put(tmp_path, "empty.csv", "episode,mean_lifelong_regret,stderr,n\n")
    with pytest.raises(SchemaError, match="empty.csv.*no data rows"):
        render(FigureSpec("lifelong", (src,), (None,), str(tmp_path / "f.png")))


def test_wrong_columns_name_the_mismatch(tmp_path):
    src = put(tmp_path, "odd.csv", "a,b\n1,2\n")
    with pytest.raises(SchemaError) as err:
        render(FigureSpec("sweep", (src,), (None,), str(tmp_path / "f.png")))
    assert "odd.csv" in str(err.value)
    assert "gamma,algo" in str(err.value)


def test_non_numeric_cell_names_the_column(tmp_path):
    src = put(tmp_path, "bad.csv", LIFELONG.replace("28.4", "oops"))
    with pytest.raises(SchemaError, match="mean_lifelong_regret.*oops"):
        render(FigureSpec("lifelong", (src,), (None,), str(tmp_path / "f.png")))


def test_label_count_must_match_inputs(tmp_path):
    src = put(tmp_path, "s.csv", SWEEP)
    with pytest.raises(PlotError, match="1 inputs but 2 labels"):
        FigureSpec("sweep", (src,), ("a", "b"), str(tmp_path / "f.png"))


def test_unknown_kind_rejected(tmp_path):
    with pytest.raises(PlotError, match="unknown figure kind"):
        FigureSpec("pie", ("x.csv",), (None,), "f.png")
