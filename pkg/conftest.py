import os
import sys

import pytest

# Flat layout: models, app, commands and services/ import from the repository root
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from services.hypergeometric_numbers import READING_PRINTED, hypergeometric_numbers

@pytest.fixture(autouse=True)
def printed_reading():
    """Every test starts from the default second-kind Euler reading"""
    hypergeometric_numbers.configure(READING_PRINTED)
    yield
    hypergeometric_numbers.configure(READING_PRINTED)
