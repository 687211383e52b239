"""Tests for seeded grid fan-out."""

import threading

from fockdens.services.parallel import cell_seed, map_cells


class TestCellSeed:
    """Tests for per-cell seed derivation."""

    def test_deterministic(self):
        """Same master seed and key give the same seed."""
        assert cell_seed(42, (1, 2)) == cell_seed(42, (1, 2))

    def test_depends_on_key_and_master(self):
        """Different keys or master seeds give different seeds."""
        seeds = {cell_seed(42, (0, 0)), cell_seed(42, (0, 1)), cell_seed(42, (1, 0))}
        assert len(seeds) == 3
        assert cell_seed(42, (0, 0)) != cell_seed(43, (0, 0))


class TestMapCells:
    """Tests for map_cells."""

    def test_results_follow_key_order(self):
        """Results are returned in key order regardless of thread count."""
        keys = [(i,) for i in range(20)]
        result = map_cells(lambda key, seed: key[0] * 10, keys, master_seed=1, threads=4)
        assert result == [i * 10 for i in range(20)]

    def test_thread_count_does_not_change_results(self):
        """Seeds are passed per key, so 1 and 4 threads agree."""
        keys = [(i, j) for i in range(3) for j in range(4)]

        def cell(key, seed):
            return seed

        assert map_cells(cell, keys, 9, threads=1) == map_cells(cell, keys, 9, threads=4)

    def test_single_thread_runs_inline(self):
        """threads=1 evaluates on the calling thread."""
        caller = threading.get_ident()
        idents = map_cells(lambda key, seed: threading.get_ident(), [(0,), (1,)], 0, threads=1)
        assert idents == [caller, caller]

    def test_empty_keys(self):
        """No keys, no work."""
        assert map_cells(lambda key, seed: 1, [], 0, threads=2) == []

    def test_threads_from_environment(self, monkeypatch):
        """The worker cap falls back to FOCKDENS_THREADS."""
        monkeypatch.setenv("FOCKDENS_THREADS", "1")
        caller = threading.get_ident()
        idents = map_cells(lambda key, seed: threading.get_ident(), [(0,), (1,)], 0)
        assert idents == [caller, caller]
