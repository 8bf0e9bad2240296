from __future__ import annotations

import pytest

from nilbreadth.gf import GF


@pytest.fixture
def F3():
    return GF.prime(3)


@pytest.fixture
def F9(F3):
    return F3.extension(2)
