import pytest

from odeccsim.codec import HammingCode


@pytest.fixture
def reference_74() -> HammingCode:
    """The (7, 4) code whose H has data columns 111, 110, 101, 011.

    Small enough that syndromes, encodings and miscorrections can be checked
    by hand; used wherever tests assert hand-computed vectors.
    """
    return HammingCode(4, 3, (0b111, 0b011, 0b101, 0b110, 0b001, 0b010, 0b100))
