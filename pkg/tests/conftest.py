import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from golden_pairs import VALIDATOR_WORDS  # noqa: E402

from psc.rules import FormalValidator, RuleEngine, load_lexicon  # noqa: E402

SMOKE_DIR = os.path.join(os.path.dirname(__file__), "fixtures", "smoke")


@pytest.fixture(scope="session")
def golden_engine() -> RuleEngine:
    """Shipped lexicon plus a validator attesting the golden formal forms."""
    return RuleEngine(lexicon=load_lexicon(),
                      validator=FormalValidator.from_words(VALIDATOR_WORDS))


@pytest.fixture(scope="session")
def smoke_dir() -> str:
    return SMOKE_DIR
