"""End-to-end smoke tests for the compiled gridbench module."""

import pytest

import gridbench


def test_catalog_shape():
    tasks = gridbench.catalog()
    assert len(tasks) == 37
    ids = {t["task_id"] for t in tasks}
    assert "move.up" in ids and "size.crop" in ids
    for t in tasks:
        assert t["variable_min"] <= t["variable_max"]
        assert t["level"] in {"attribute", "spatial", "sequential", "conceptual"}


def test_budgets():
    assert gridbench.total_budget() == 3955
    assert gridbench.budget_for("move") == 1500
    assert sum(gridbench.budget_for(f) for f in {t["family"] for t in gridbench.catalog()}) == 3955


def test_generate_solve_score_round_trip():
    ep = gridbench.generate_episode("move.right", 4, master_seed=7)
    assert len(ep["train"]) == 3
    pred = gridbench.solve("move.right", 4, ep["test_input"])
    assert gridbench.score(pred, ep["test_output"])
    # deterministic in the seed
    again = gridbench.generate_episode("move.right", 4, master_seed=7)
    assert again == ep


def test_prompt_and_parse():
    ep = gridbench.generate_episode("gravity.blocks", 2, master_seed=3)
    prompt = gridbench.build_prompt(ep)
    assert "Test input:" in prompt
    assert str(ep["test_output"]) not in prompt

    assert gridbench.parse_grid("ignore [[1,2],[3,4]] trailing") == [[1, 2], [3, 4]]
    assert gridbench.parse_grid("no grids here") is None
    assert gridbench.parse_failure_reason("[[1,2],[3]]") == "ragged"


def test_render_png_magic():
    png = gridbench.render_grid([[0, 1], [2, 3]])
    assert png[:8] == b"\x89PNG\r\n\x1a\n"
    assert png == gridbench.render_grid([[0, 1], [2, 3]])


def test_errors_are_typed():
    with pytest.raises(gridbench.BenchmarkError):
        gridbench.solve("move.up", 99, [[1]])


def test_write_dataset_scaled(tmp_path):
    summary = gridbench.write_dataset(str(tmp_path), scale=0.01, master_seed=5)
    assert summary["failures"] == 0
    assert summary["total"] == sum(summary["per_family"].values())
    assert (tmp_path / "manifest.jsonl").exists()
    assert (tmp_path / "answers.jsonl").exists()
