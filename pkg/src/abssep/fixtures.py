"""Golden worked examples with four-decimal reference values.

Spectra are loaded with a loose sum tolerance because rounding leaves their sums
slightly off 1, and matrix eigenvalues are compared to about 5e-4.

``matrix_eigs`` maps a 1-based index into :func:`canonical_pairs` to the
reference eigenvalues of that matrix. For ``example1`` each list is stored
against the matrix whose trace it matches (see ``note``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .spectrum import Spectrum, make_spectrum


@dataclass(frozen=True)
class Fixture:
    name: str
    m: int
    n: int
    eigenvalues: tuple
    sum_tolerance: float
    verdict: str
    matrix_eigs: dict
    margins: dict
    shortcut_condition: int = 0
    note: str = ""
    extra: dict = field(default_factory=dict)

    def spectrum(self) -> Spectrum:
        return make_spectrum((self.m, self.n), self.eigenvalues, self.sum_tolerance)


FIXTURES = (
    Fixture(
        name="example1",
        m=3,
        n=3,
        eigenvalues=(0.1336, 0.1336, 0.1111, 0.1111, 0.1111, 0.1111, 0.0961, 0.0961, 0.0961),
        sum_tolerance=2e-3,
        verdict="absolutely-ppt-exact",
        matrix_eigs={1: (0.1510, 0.2122, 0.2435), 2: (0.1521, 0.2222, 0.2623)},
        margins={"sufficient_sum": 0.0211},
        note="reference labels for the two lists are swapped; matrix 1 has trace 0.6066",
    ),
    Fixture(
        name="example1_part2",
        m=3,
        n=3,
        eigenvalues=(0.6412, 0.0923, 0.0905, 0.0436, 0.0430, 0.0311, 0.0228, 0.0185, 0.0171),
        sum_tolerance=2e-3,
        verdict="not-absolutely-ppt",
        matrix_eigs={1: (-0.5916, 0.0957, 0.6627), 2: (-0.5849, 0.0970, 0.6714)},
        margins={"not_abs_general": 0.0215},
    ),
    Fixture(
        name="example2",
        m=4,
        n=4,
        eigenvalues=(0.0775, 0.0775) + (0.0625,) * 12 + (0.0475, 0.0475),
        sum_tolerance=2e-3,
        verdict="absolutely-ppt-exact",
        matrix_eigs={1: (0.0733, 0.1250, 0.1250, 0.1467)},
        margins={"sufficient_sum": 0.0025},
        shortcut_condition=3,
    ),
    Fixture(
        name="example2_part2",
        m=4,
        n=4,
        eigenvalues=(0.4894, 0.0897, 0.0812, 0.0653, 0.0459, 0.0449, 0.0432, 0.0220)
        + (0.0168,) * 6
        + (0.0154, 0.0026),
        sum_tolerance=2e-3,
        verdict="not-absolutely-ppt",
        matrix_eigs={1: (-0.4781, 0.0447, 0.0965, 0.4955)},
        margins={"not_abs_ququart": 0.0300},
    ),
)


def get_fixture(name: str) -> Fixture:
    for f in FIXTURES:
        if f.name == name:
            return f
    raise KeyError(f"unknown fixture {name!r}; have {[f.name for f in FIXTURES]}")
