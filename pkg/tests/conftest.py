import sys
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from sftkit import IntMatrix  # noqa: E402

settings.register_profile("default", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def matrices(draw, min_size=1, max_size=5, lo=0, hi=4, square=True, rows=None, cols=None):
    r = rows if rows is not None else draw(st.integers(min_size, max_size))
    c = r if square else (cols if cols is not None else draw(st.integers(min_size, max_size)))
    data = draw(st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                         min_size=r, max_size=r))
    return IntMatrix(data)


@st.composite
def no_zero_row_matrices(draw, min_size=1, max_size=5, hi=4):
    m = draw(matrices(min_size=min_size, max_size=max_size, hi=hi))
    rows = [list(r) for r in m.iter_rows()]
    for i, r in enumerate(rows):
        if not any(r):
            r[draw(st.integers(0, len(r) - 1))] = draw(st.integers(1, max(1, hi)))
    return IntMatrix(rows)


@st.composite
def outsplit_specs(draw, a, max_parts=3):
    """A random split of every row of ``a`` into nonzero parts."""
    spec = []
    for row in a.iter_rows():
        units = [j for j, x in enumerate(row) for _ in range(x)]
        k = draw(st.integers(1, min(max_parts, len(units))))
        labels = draw(st.lists(st.integers(0, k - 1), min_size=len(units), max_size=len(units)))
        parts = [[0] * len(row) for _ in range(k)]
        for u, lab in zip(units, labels):
            parts[lab][u] += 1
        spec.append([p for p in parts if any(p)])
    return spec
