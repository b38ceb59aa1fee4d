import csv
import pathlib

import numpy as np
import pytest

DATA_DIR = pathlib.Path(__file__).parent / "data"


def load_macdonald_table():
    rows = []
    with (DATA_DIR / "macdonald_table.csv").open() as fh:
        for rec in csv.DictReader(fh):
            rows.append(
                (
                    int(rec["order"]),
                    complex(float(rec["w_re"]), float(rec["w_im"])),
                    complex(float(rec["k_re"]), float(rec["k_im"])),
                )
            )
    return rows


@pytest.fixture(scope="session")
def macdonald_table():
    return load_macdonald_table()


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)


def random_hermitian(rng, scale=1.0):
    m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    return scale * (m + m.conj().T) / 2
