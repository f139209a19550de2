"""Collects one PASS/FAIL line per acceptance criterion."""

_RESULTS = {}


def record(n: int, title: str, ok: bool, detail: str = "") -> str:
    line = f"criterion {n} [{title}]: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f" ({detail})"
    _RESULTS[n] = line
    print(line, flush=True)
    return line


def lines():
    return [_RESULTS[k] for k in sorted(_RESULTS)]
