# conftest.py
"""
Общие настройки тестов: профили hypothesis и пропуск долгих прогонов.

  HYPOTHESIS_PROFILE=acceptance  — 10⁴ примеров на каждое свойство
  KAPPA_RUN_SLOW=1               — включить тесты с маркером slow
"""

import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=200, deadline=None)
settings.register_profile(
    "acceptance",
    max_examples=10_000,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


def pytest_collection_modifyitems(config, items):
    if os.getenv("KAPPA_RUN_SLOW") == "1":
        return
    skip_slow = pytest.mark.skip(reason="долгий прогон, установите KAPPA_RUN_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)
