import pytest

from partlog import PartitionFamily, generate


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("PARTLOG_CACHE_DIR", str(tmp_path / "cache"))


@pytest.fixture(scope="session")
def p_seq():
    return generate(PartitionFamily.unrestricted(), 600)


@pytest.fixture(scope="session")
def pd_seq():
    return generate(PartitionFamily.distinct(), 600)


@pytest.fixture(scope="session")
def pbar_seq():
    return generate(PartitionFamily.overpartition(), 600)
