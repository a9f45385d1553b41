import os
import sys
from collections import OrderedDict

sys.path.insert(0, os.path.dirname(__file__))

_results: "OrderedDict[int, dict]" = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            n, title = mark.args
            _results.setdefault(n, {"title": title, "passed": True, "parts": []})


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    entry = _results[mark.args[0]]
    ok = call.excinfo is None
    entry["passed"] = entry["passed"] and ok
    entry["parts"].append((item.name, ok))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n, entry in sorted(_results.items()):
        if not entry["parts"]:
            continue
        verdict = "PASS" if entry["passed"] else "FAIL"
        tr.write_line(f"criterion {n}: {verdict}  {entry['title']}")
        if len(entry["parts"]) > 1:
            for name, ok in entry["parts"]:
                tr.write_line(f"    {'ok  ' if ok else 'FAIL'} {name}")
