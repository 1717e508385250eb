import pytest


@pytest.fixture(autouse=True)
def clean_env(monkeypatch: pytest.MonkeyPatch) -> None:
    """Run every test on default settings regardless of the caller's environment."""
    for name in (
        "ZONOCUBE_BUDGET",
        "ZONOCUBE_CHAIN_LIMIT",
        "ZONOCUBE_WORKERS",
        "ZONOCUBE_FRAGMENT_CHECK",
        "ZONOCUBE_LOG_LEVEL",
    ):
        monkeypatch.delenv(name, raising=False)
