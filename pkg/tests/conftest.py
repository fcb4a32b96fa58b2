import pytest
from hypothesis import settings, strategies as st

from weiltate.groupring import GroupRingElt
from weiltate.weilmodel import FieldContext, WeilClass, enumerate_sections

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


@st.composite
def group_ring_elts(draw, k=None, lo=-10, hi=10):
    if k is None:
        k = draw(st.integers(0, 4))
    coeffs = draw(st.lists(st.integers(lo, hi), min_size=1 << k, max_size=1 << k))
    return GroupRingElt(k, tuple(coeffs))


@st.composite
def same_rank(draw, n=2, lo=-10, hi=10):
    k = draw(st.integers(0, 4))
    return tuple(draw(group_ring_elts(k, lo, hi)) for _ in range(n))


@st.composite
def contexts(draw, kmin=1, kmax=3):
    k = draw(st.integers(kmin, kmax))
    c = draw(st.integers(1, (1 << k) - 1)) if k else 0
    return FieldContext(k, c)


def class_pool(ctx, elliptic_only=False):
    """Supersingular class plus every (elliptic) section, labelled by position."""
    from weiltate.weilmodel import classify_section

    pool = [WeilClass.supersingular("ss", ctx)]
    for i, m in enumerate(enumerate_sections(ctx)):
        if not elliptic_only or classify_section(ctx, m).is_elliptic:
            pool.append(WeilClass.ordinary(f"m{i}", ctx, m))
    return pool


def relabel(classes):
    return [WeilClass(f"x{i}", c.kind, c.divisor) for i, c in enumerate(classes)]


@pytest.fixture
def std():
    return FieldContext.standard()


# acceptance summary ------------------------------------------------------

ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
