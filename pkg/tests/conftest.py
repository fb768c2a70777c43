import json

import pytest

from core.multigraph import AttributeKind, Sign, make_graph
from core.polyring import VarRegistry, parse_poly
from core.signed_tutte import q_cache
from utils.limiter import DEFAULT_ENUMERATION_CAP, limiter

PLUS, MINUS = Sign.PLUS, Sign.MINUS


@pytest.fixture
def reg():
    """A fresh registry so variables registered by one test never leak into another"""
    return VarRegistry()


@pytest.fixture
def poly(reg):
    return lambda text: parse_poly(text, reg)


@pytest.fixture(autouse=True)
def reset_process_state():
    q_cache.clear()
    q_cache.enabled = True
    limiter.set_cap(DEFAULT_ENUMERATION_CAP)
    yield
    q_cache.enabled = True
    limiter.set_cap(DEFAULT_ENUMERATION_CAP)


def signed(vertices, *edges):
    """signed(2, (0, 1, "+"), ...) with ids e1, e2, ..."""
    return make_graph(vertices, [(f"e{i + 1}", u, v, Sign.parse(s)) for i, (u, v, s) in enumerate(edges)])


def colored(vertices, *edges):
    return make_graph(vertices, [(f"e{i + 1}", u, v, c) for i, (u, v, c) in enumerate(edges)],
                      AttributeKind.COLOR)


def labeled(vertices, *edges):
    return make_graph(vertices, [(f"e{i + 1}", u, v, a) for i, (u, v, a) in enumerate(edges)],
                      AttributeKind.LABEL)


@pytest.fixture
def write_json(tmp_path):
    def write(name, document):
        path = tmp_path / name
        path.write_text(json.dumps(document))
        return str(path)
    return write
