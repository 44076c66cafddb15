import cmath

import pytest
from hypothesis import settings

from kummer_cy.cyclotomic import Cyc

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

MU_C = cmath.exp(2j * cmath.pi / 7)


def to_complex(x: Cyc) -> complex:
    return sum(complex(float(c)) * MU_C ** k for k, c in enumerate(x.coeffs))


@pytest.fixture(scope="session")
def full_report():
    from kummer_cy.suites import run_suite

    return run_suite("all")
