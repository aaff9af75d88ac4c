import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from modlat import MemoryStore, generate_family_up_to, store_write


@pytest.fixture(scope="session")
def rack_forms_14():
    """Canonical forms of all modular vi-racks up to 14 elements."""
    return generate_family_up_to("modular-vi-rack", 14)


@pytest.fixture(scope="session")
def rack_store(rack_forms_14):
    """In-memory rack store covering sizes 1..14."""
    return MemoryStore(rack_forms_14, "rack")


@pytest.fixture(scope="session")
def disk_store(rack_forms_14, tmp_path_factory):
    """On-disk rack store covering sizes 1..12."""
    path = tmp_path_factory.mktemp("store")
    forms = {k: rack_forms_14[k] for k in range(1, 13)}
    return store_write(forms, path, family="rack")


@pytest.fixture(scope="session")
def mv_forms_12():
    """Canonical forms of all modular vi-lattices up to 12 elements."""
    return generate_family_up_to("modular-vi", 12)
