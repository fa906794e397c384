import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kummer.field import Field
from kummer import fast_kummer as fk
from kummer import general_kummer as gk
from kummer import isogeny as iso

import golden


@pytest.fixture(scope="session")
def f11():
    return Field(11)


@pytest.fixture(scope="session")
def f101():
    return Field(101)


@pytest.fixture(scope="session")
def f1697():
    return Field(1697)


@pytest.fixture(scope="session")
def surface_1697(f1697):
    return fk.new_fast_surface(f1697, *golden.THETA_1697)


@pytest.fixture(scope="session")
def kernel_1697(f1697, surface_1697):
    return iso.IsogenyKernel.fast(surface_1697, 5, golden.R_1697, golden.S_1697)


@pytest.fixture(scope="session")
def psi_1697(surface_1697, kernel_1697):
    return iso.compute_psi_fast(surface_1697, kernel_1697)


@pytest.fixture(scope="session")
def curve_11(f11):
    return gk.Genus2Curve(f11, golden.F11_CURVE)


@pytest.fixture(scope="session")
def table_11(curve_11):
    return gk.load_general_biquadratics(curve_11)


@pytest.fixture(scope="session")
def general_result_11(f11, table_11):
    R = tuple(f11(c) for c in golden.R_11)
    S = tuple(f11(c) for c in golden.S_11)
    kernel = iso.IsogenyKernel.general(table_11, 5, R, S)
    return iso.general_pipeline(table_11, kernel, random.Random(7))


def forms_from_golden(field, degree, dicts):
    from kummer.forms import HomogeneousForm

    return [
        HomogeneousForm.from_terms(field, degree, [(e, field(c)) for e, c in d.items()])
        for d in dicts
    ]
