import logging
import threading


from enummdl import runner
from enummdl.cache import ComplexityCache
from enummdl.multinomial import nml_log_comp_m


def test_roundtrip_is_exact(tmp_path):
    path = tmp_path / "comp.txt"
    c = ComplexityCache(path)
    vals = {(n, m): c.get(n, m) for n in (1, 7, 300) for m in (2, 3, 50)}
    lines = path.read_text().splitlines()
    assert len(lines) == 9
    m, n, v = lines[0].split()
    assert (int(m), int(n)) == (2, 1)
    again = ComplexityCache(path)
    assert len(again) == 9
    for (n, m), v in vals.items():
        assert again.get(n, m) == v == nml_log_comp_m(n, m)
    assert path.read_text().count("\n") == 9  # hits do not append


def test_malformed_lines_are_skipped(tmp_path, caplog):
    path = tmp_path / "comp.txt"
    path.write_text("2 10 1.5\nthis is junk\n\n3 4 0.25\n")
    with caplog.at_level(logging.WARNING):
        c = ComplexityCache(path)
    assert len(c) == 2 and (3, 4) in c
    assert "malformed" in caplog.text


def test_concurrent_gets_append_once(tmp_path):
    path = tmp_path / "comp.txt"
    c = ComplexityCache(path)
    threads = [threading.Thread(target=c.get, args=(500, 7)) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert path.read_text().count("\n") == 1


def test_cache_never_changes_results(tmp_path):
    grid = [{"m": [3], "n": [5, 40], "code": ["nml"]}]
    plain = runner.rows_to_csv("percent_compressible", runner.run_experiment("percent_compressible", grid))
    cache = ComplexityCache(tmp_path / "c.txt")
    cold = runner.rows_to_csv("percent_compressible",
                              runner.run_experiment("percent_compressible", grid, cache=cache))
    warm = runner.rows_to_csv("percent_compressible",
                              runner.run_experiment("percent_compressible", grid,
                                                    cache=ComplexityCache(tmp_path / "c.txt")))
    assert plain == cold == warm
