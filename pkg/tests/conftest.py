from collections import defaultdict

_outcomes: dict[int, list[tuple[str, bool]]] = defaultdict(list)
_titles: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number n")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            n = mark.args[0]
            item.user_properties.append(("criterion", n))
            _titles[n] = getattr(item.module, "CRITERIA", {}).get(n, "")


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _outcomes[props["criterion"]].append((report.head_line or report.nodeid, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_outcomes):
        checks = _outcomes[n]
        failed = [name for name, ok in checks if not ok]
        status = "FAIL" if failed else "PASS"
        detail = f"{len(checks) - len(failed)}/{len(checks)} checks"
        if failed:
            detail += "; failed: " + ", ".join(failed)
        terminalreporter.write_line(f"criterion {n} {status}  {_titles.get(n, '')}  ({detail})")
