from __future__ import annotations

import pytest

from socialsearch.datagen import generate_dataset
from socialsearch.service import ServiceConfig, serve

PAPER_ENTITIES = 5724
PAPER_RELATIONSHIPS = 21512


@pytest.fixture(scope="session")
def paper_dataset(tmp_path_factory):
    """Synthetic dataset at the reference scale, generated once per session."""
    path = tmp_path_factory.mktemp("dataset") / "graph.jsonl"
    counts = generate_dataset(seed=1, entities=PAPER_ENTITIES,
                              relationships=PAPER_RELATIONSHIPS, out=path)
    assert counts == {"entities": PAPER_ENTITIES, "edges": PAPER_RELATIONSHIPS}
    return path


@pytest.fixture(scope="session")
def paper_service(paper_dataset):
    """One service instance over the reference dataset, shared by slow tests."""
    handle = serve(ServiceConfig(data_path=str(paper_dataset)))
    yield handle
    handle.stop()
