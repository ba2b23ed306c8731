"""Shared fixtures.  Representations are expensive enough to build once
per session; everything downstream (decompositions, presentations,
analyses) hangs off the two caches below."""

from __future__ import annotations

from types import SimpleNamespace

import pytest
from hypothesis import settings

from charvar import analyze, decompose_sl, request_from_text, triangle_group
from charvar.presentation import parse_signature, presentation_of
from charvar.reps import build_representation

settings.register_profile("suite", deadline=None)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def triangle334():
    return triangle_group(3, 3, 4)


@pytest.fixture(scope="session")
def setups():
    """One (sig, pres, rep, sd) bundle per signature text and embedding."""
    cache = {}

    def get(text, embedding="standard"):
        key = (text, embedding)
        if key not in cache:
            sig = parse_signature(text)
            rep = build_representation(sig, seed=0)
            cache[key] = SimpleNamespace(
                sig=sig,
                pres=presentation_of(sig),
                rep=rep,
                sd=decompose_sl(rep, embedding),
            )
        return cache[key]

    return get


@pytest.fixture(scope="session")
def quad(setups):
    return setups("S2(3,3,3,3)")


@pytest.fixture(scope="session")
def mirrored(setups):
    return setups("D(3,3;mirror)", "type_preserving")


@pytest.fixture(scope="session")
def analyses():
    """Cached analyze() calls keyed by input text, embedding and check set."""
    cache = {}

    def get(text, embedding=None, checks=("core",), **kwargs):
        key = (text, embedding, checks, tuple(sorted(kwargs.items())))
        if key not in cache:
            cache[key] = analyze(
                request_from_text(text, embedding=embedding, checks=checks, **kwargs)
            )
        return cache[key]

    return get
