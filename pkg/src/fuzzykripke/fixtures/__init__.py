"""Bundled demonstration model pairs.

* ``sim_showcase``     a Godel pair where all seven relation kinds exist
* ``backward_only``    only the backward-flavored bisimulations exist;
                       on the reversed pair the situation flips
* ``fully_equivalent`` all five bisimulation kinds exist; the models agree
                       on every formula
* ``crisp_pair``       a Boolean pair; all five bisimulations coincide

Each pair ships as ``<name>_a.json`` / ``<name>_b.json``; expected results
used by the test suite live under ``expected/``.
"""

from importlib import resources

PAIRS = ("sim_showcase", "backward_only", "fully_equivalent", "crisp_pair")


def fixture_path(name: str):
    """Filesystem path of a bundled fixture file such as 'sim_showcase_a.json'."""
    path = resources.files(__package__).joinpath(name)
    if not path.is_file():
        raise FileNotFoundError(f"no bundled fixture named {name!r}")
    return path


def load_pair(name: str):
    """Load a bundled model pair by its base name."""
    from ..model import KripkeModel

    if name not in PAIRS:
        raise FileNotFoundError(f"no bundled pair named {name!r}")
    a = KripkeModel.from_json(fixture_path(f"{name}_a.json").read_text())
    b = KripkeModel.from_json(fixture_path(f"{name}_b.json").read_text())
    return a, b
