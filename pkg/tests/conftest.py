import pytest

from centriscan.config import AnalyzerConfig


@pytest.fixture
def config():
    return AnalyzerConfig()
