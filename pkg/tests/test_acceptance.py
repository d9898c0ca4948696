"""One test per acceptance criterion; each prints a single PASS/FAIL line.

Run directly (python3 tests/test_acceptance.py) for just the summary lines.
"""

import os
import time

import pytest

from ellrank import verify

CRITERIA = [
    (1, "construction round-trip", verify.check_construction),
    (2, "s-vanishing", verify.check_s_vanishing),
    (3, "Mestre quartic at scale 4/(81t^2)", verify.check_mestre_quartic),
    (4, "conic identities", verify.check_conics),
    (5, "minimal model over Q(u)", verify.check_minimal_model),
    (6, "fibre configurations", verify.check_fibres),
    (7, "heights and Gram ranks", verify.check_heights),
    (8, "section search over Q(sqrt -3)", verify.check_q14),
    (9, "rank >= 14 certificate", verify.check_theorem1),
    (10, "point counts", verify.check_counts),
    (11, "good primes", verify.check_good_primes),
    (12, "hypotheses and rank conclusions", verify.check_hypotheses),
    (13, "property suites at default seed", lambda: verify.check_properties(0)),
    (14, "extended count over F_53^3", verify.check_extended),
]

SUMMARY: list[str] = []


def _line(n, title, status, detail="", seconds=0.0):
    line = f"criterion {n:2d}: {status} {title} ({seconds:.1f}s)" + (f" :: {detail}" if detail else "")
    SUMMARY.append(line)
    print(line)
    return line


@pytest.mark.parametrize("n,title,fn", CRITERIA, ids=[f"c{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(n, title, fn):
    if n == 14 and os.environ.get("ELLRANK_EXTENDED") != "1":
        _line(n, title, "SKIP", "set ELLRANK_EXTENDED=1 (about 4 minutes)")
        pytest.skip("extended count is flag-gated")
    t0 = time.perf_counter()
    expected, computed, ok = fn()
    _line(n, title, "PASS" if ok else "FAIL", "" if ok else f"expected {expected}, got {computed}", time.perf_counter() - t0)
    assert ok, f"expected {expected}\ncomputed {computed}"


if __name__ == "__main__":
    for n, title, fn in CRITERIA:
        if n == 14 and os.environ.get("ELLRANK_EXTENDED") != "1":
            _line(n, title, "SKIP", "set ELLRANK_EXTENDED=1")
            continue
        t0 = time.perf_counter()
        expected, computed, ok = fn()
        _line(n, title, "PASS" if ok else "FAIL", "" if ok else f"expected {expected}, got {computed}", time.perf_counter() - t0)
