import io
import csv
from pathlib import Path

import pytest

from filterlens import load_csv

DATA_DIR = Path(__file__).resolve().parent.parent / "data"
DEMO_CSV = DATA_DIR / "recidivism_demo.csv"
DEMO_NUMERIC = ("decile_score", "v_decile_score")


def make_csv(header, rows) -> bytes:
    """CSV bytes from python rows; None becomes an empty cell."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if cell is None else cell for cell in row])
    return buf.getvalue().encode("utf-8")


@pytest.fixture(scope="session")
def demo_csv_bytes() -> bytes:
    return DEMO_CSV.read_bytes()


@pytest.fixture(scope="session")
def demo_dataset(demo_csv_bytes):
    return load_csv(demo_csv_bytes, name="recidivism_demo", numeric=DEMO_NUMERIC)
