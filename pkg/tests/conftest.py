import pytest
from gmpy2 import mpq

from phylon.random_instances import make_rng
from phylon.series import TruncatedSeries


def series(dim, trunc, terms):
    """Shorthand: ``series(1, 3, {2: 1, 3: "1/2"})`` or with tuple keys."""
    out = {}
    for k, v in terms.items():
        alpha = (k,) if isinstance(k, int) else tuple(k)
        out[alpha] = mpq(v)
    return TruncatedSeries(dim, trunc, out)


@pytest.fixture
def rng(request):
    seed = getattr(request, "param", 0)
    return make_rng(seed)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[key])
