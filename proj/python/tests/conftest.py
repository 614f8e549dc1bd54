import json
import os
import pathlib

import pytest
from referencing import Registry, Resource

ROOT = pathlib.Path(os.environ.get("LATNET_ROOT", pathlib.Path(__file__).resolve().parents[2]))


@pytest.fixture(scope="session")
def root():
    return ROOT


@pytest.fixture(scope="session")
def registry():
    resources = []
    for path in sorted((ROOT / "schemas").glob("*.schema.json")):
        schema = json.loads(path.read_text())
        resources.append((schema["$id"], Resource.from_contents(schema)))
    return Registry().with_resources(resources)


@pytest.fixture(scope="session")
def cases():
    """(name, exit code, arguments) from the golden manifest."""
    out = []
    for line in (ROOT / "tests/cli/cases.txt").read_text().splitlines():
        if not line or line.startswith("#"):
            continue
        head, args = line.split(":", 1)
        name, code = head.split()
        words = [w for w in args.split() if not (w.split("=")[0].isupper() and "=" in w)]
        out.append((name, int(code), words))
    return out
