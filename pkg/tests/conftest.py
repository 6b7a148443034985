import warnings

import pytest

from acceptance_log import CRITERIA, results


@pytest.fixture(autouse=True)
def _quiet_formula_warnings():
    # literal variants warn on purpose; tests that care use pytest.warns
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        warnings.simplefilter("ignore", UserWarning)
        yield


def pytest_terminal_summary(terminalreporter):
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number, title in CRITERIA.items():
        parts = results.get(number)
        if not parts:
            terminalreporter.write_line(f"criterion {number:>2} ({title}): not run")
            continue
        failed = [name for name, ok, _ in parts if not ok]
        status = "PASS" if not failed else "FAIL"
        line = f"criterion {number:>2} ({title}): {status}"
        if failed:
            line += "  [failing: " + ", ".join(failed) + "]"
        terminalreporter.write_line(line)
        for name, ok, detail in parts:
            terminalreporter.write_line(f"    {'ok  ' if ok else 'FAIL'} {name}: {detail}")
