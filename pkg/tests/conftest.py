import pytest

from momentforge import fan_toolkit as ft
from momentforge.reports import dataset_path

BUNDLED = ["p2", "p1p1", "p1p1p1", "p112", "fp_ex2"]


def bundled(name: str) -> ft.Fan:
    return ft.load_fan(dataset_path(f"{name}.fan.json"))


@pytest.fixture(scope="session")
def fans():
    return {name: bundled(name) for name in BUNDLED}
