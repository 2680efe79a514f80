import pytest

from pathcordial.groups import parse_group


@pytest.fixture
def M():
    return parse_group("2x2x2")


def lab(spec, kind, labels):
    """Build a labeling from compact text, e.g. lab("2x4", "path", "00-12")."""
    from pathcordial.labeling import GraphLabeling, Kind
    from pathcordial.textio import parse_labels

    g = parse_group(spec)
    return GraphLabeling(g, Kind(kind), tuple(parse_labels(g, labels)))
