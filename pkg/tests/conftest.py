import itertools
from pathlib import Path

import pytest

from sesquiads import deffile, sesquiad as sq
from sesquiads import randomized as rd

ROOT = Path(__file__).resolve().parent.parent
CORPUS = sorted((ROOT / "demos" / "corpus").glob("*.ses"))


def corpus_files():
    return CORPUS


def corpus_sesquiads():
    """Named sesquiads from the definition corpus and the standard test list."""
    out = dict(rd.test_sesquiads())
    for path in CORPUS:
        df = deffile.parse(path)
        for s in df.sections:
            if s.kind == "sesquiad":
                out[f"{path.stem}:{s.name}"] = df.objects[s.name]
    return out


def commutative_monoids(n):
    """Multiplication tables on {0, 1, x2, ...} with absorbing 0 and unit 1."""
    free = list(range(2, n))
    cells = list(itertools.combinations_with_replacement(free, 2))
    for values in itertools.product(range(n), repeat=len(cells)):
        t = [[0] * n for _ in range(n)]
        for i in range(n):
            t[1][i] = t[i][1] = i
        t[0] = [0] * n
        for i in range(n):
            t[i][0] = 0
        for (i, j), v in zip(cells, values):
            t[i][j] = t[j][i] = v
        if all(t[t[i][j]][k] == t[i][t[j][k]] for i in range(n) for j in range(n)
               for k in range(n)):
            yield t


def small_monoid_sesquiads(max_size=4):
    """Every such monoid with the trivial partial addition."""
    out = []
    for n in range(2, max_size + 1):
        for t in commutative_monoids(n):
            names = ["0", "1"] + [f"x{i}" for i in range(2, n)]
            out.append(sq.build(names, t))
    return out


@pytest.fixture(scope="session")
def corpus():
    return corpus_sesquiads()


# -- acceptance reporting -------------------------------------------------------

ACCEPTANCE = {}


def record(number, ok, detail):
    """Store one criterion's verdict; printed after the run."""
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[number] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
