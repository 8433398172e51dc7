"""Shared populations for the exhaustive cross-checks (computed once)."""
from __future__ import annotations

import pytest

from klhom.classifier import ClassifierConfig, classify
from klhom.oracle import distinct_pruned_minors
from klhom.permutations import all_permutations


@pytest.fixture(scope="session")
def s4_perms():
    return list(all_permutations(4))


@pytest.fixture(scope="session")
def s4_distinct_minors():
    """All (v, z, minor) with the minor pruned-defining for some w in S4."""
    return list(distinct_pruned_minors(4))


@pytest.fixture(scope="session")
def s4_reports_no_shortcut(s4_perms):
    """classify() over all of S4 x S4 with the pattern shortcut disabled."""
    cfg = ClassifierConfig(pattern_shortcut=False)
    return {(v, w): classify(v, w, cfg) for v in s4_perms for w in s4_perms}


@pytest.fixture(scope="session")
def s3_reports_no_shortcut():
    cfg = ClassifierConfig(pattern_shortcut=False)
    perms = list(all_permutations(3))
    return {(v, w): classify(v, w, cfg) for v in perms for w in perms}
