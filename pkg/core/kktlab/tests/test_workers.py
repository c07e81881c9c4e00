from kktlab.logic.workers import chunked, resolve_threads, scan_chunks


def count_odd(offset, chunk):
    return sum(1 for x in chunk if (x + offset) % 2)


def test_env_wins_over_config(monkeypatch):
    monkeypatch.setenv("KKTLAB_THREADS", "3")
    assert resolve_threads(8) == 3
    monkeypatch.setenv("KKTLAB_THREADS", "many")
    assert resolve_threads(2) == 2
    monkeypatch.delenv("KKTLAB_THREADS")
    assert resolve_threads(None) >= 1


def test_chunks_cover_everything():
    chunks = chunked(list(range(10)), 4)
    assert [len(c) for c in chunks] == [4, 4, 2]


def test_pool_and_serial_agree():
    chunks = chunked(list(range(100)), 7)
    serial = scan_chunks(count_odd, 1, chunks, threads=1)
    pooled = scan_chunks(count_odd, 1, chunks, threads=2)
    assert sum(serial) == sum(pooled) == 50
