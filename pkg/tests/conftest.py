import pytest

_results = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    detail = "; ".join(v for k, v in item.user_properties if k == "detail")
    ok = call.excinfo is None
    _results.setdefault(number, []).append((title, ok, detail))


@pytest.fixture
def report(request):
    """Attach a one-line measurement to the acceptance summary."""

    def _report(text):
        request.node.user_properties.append(("detail", text))
        print(text)

    return _report


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        for title, ok, detail in _results[number]:
            line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {title}"
            if detail:
                line += f" | {detail}"
            terminalreporter.write_line(line)
