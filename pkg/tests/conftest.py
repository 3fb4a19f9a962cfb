import pathlib

import pytest

import gcube.typecheck as typecheck
from gcube.cli import load_module
from gcube.typecheck import Definitions

REPO = pathlib.Path(__file__).resolve().parents[1]
CORPUS = REPO / "corpus"


@pytest.fixture(scope="session")
def corpus_root() -> pathlib.Path:
    return CORPUS


@pytest.fixture(scope="session")
def corpus_defs() -> dict[str, Definitions]:
    """Checked definitions for each root corpus module."""
    out = {}
    for name in ("streams", "fixpoints", "guarded_y", "zipWith_preserves_comm",
                 "canonicity"):
        defs = Definitions()
        load_module(CORPUS / f"{name}.ctt", defs)
        out[name] = defs
    return out


@pytest.fixture(scope="session")
def samples():
    """(context, elaborated term, type) triples harvested from checking the
    corpus; the raw material for the randomized property suites."""
    collected = []

    def hook(ctx, term, ty):
        collected.append((ctx, term, ty))

    typecheck.SAMPLE_HOOK = hook
    try:
        for name in ("streams", "fixpoints", "guarded_y"):
            defs = Definitions()
            load_module(CORPUS / f"{name}.ctt", defs)
    finally:
        typecheck.SAMPLE_HOOK = None
    return collected
