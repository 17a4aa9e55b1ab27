import pytest

from polaris.verify import PROPERTIES, verify


@pytest.mark.parametrize("name", sorted(PROPERTIES))
def test_property_holds_on_random_instances(name):
    assert verify(name, 4, seed=11) == (4, 4)


def test_unknown_property():
    with pytest.raises(KeyError):
        verify("no-such-property", 1)
