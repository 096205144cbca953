from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

from logforms.poly import FieldSpec  # noqa: E402

FP = FieldSpec.prime()
QQ = FieldSpec.rational()


@pytest.fixture
def fp():
    return FP


@pytest.fixture
def qq():
    return QQ
