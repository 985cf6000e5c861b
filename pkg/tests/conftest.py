import pytest


def pascal_rows(n_max):
    rows = [[1]]
    for _ in range(n_max):
        prev = rows[-1]
        rows.append([1] + [a + b for a, b in zip(prev, prev[1:])] + [1])
    return rows


def poly_power_coeffs(base, n):
    """Coefficients of base(x)**n by schoolbook multiplication."""
    out = [1]
    for _ in range(n):
        nxt = [0] * (len(out) + len(base) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(base):
                nxt[i + j] += a * b
        out = nxt
    return out


@pytest.fixture(scope="session")
def pascal():
    return pascal_rows(200)


def pytest_terminal_summary(terminalreporter):
    import sys

    test_acceptance = sys.modules.get("tests.test_acceptance")
    if test_acceptance is None or not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in test_acceptance.RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
