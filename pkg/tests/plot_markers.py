"""Expected colors of the rank-one parameter plot.

``MARKERS`` maps ``(k, lambda)`` (decimal strings) to the color of the marker
drawn there. Unmarked points are red on the lines ``k -+ lambda`` in
``{1, ..., 6}`` and white elsewhere.
"""

from fractions import Fraction

MARKERS = {
    ("1.5", "0.5"): "white",
    ("2.5", "0.5"): "white",
    ("2.5", "1.5"): "white",
    ("1.5", "-0.5"): "white",
    ("2.5", "-0.5"): "white",
    ("2.5", "-1.5"): "white",
    ("0", "-1"): "blue",
    ("1", "-1"): "blue",
    ("-1", "-2"): "blue",
    ("0", "-2"): "blue",
    ("1", "-2"): "blue",
    ("2", "-2"): "blue",
    ("-2", "-3"): "blue",
    ("-1", "-3"): "blue",
    ("0", "-3"): "blue",
    ("1", "-3"): "blue",
    ("2", "-3"): "blue",
    ("3", "-3"): "blue",
    ("0", "1"): "blue",
    ("1", "1"): "blue",
    ("-1", "2"): "blue",
    ("0", "2"): "blue",
    ("1", "2"): "blue",
    ("2", "2"): "blue",
    ("-2", "3"): "blue",
    ("-1", "3"): "blue",
    ("0", "3"): "blue",
    ("1", "3"): "blue",
    ("2", "3"): "blue",
    ("3", "3"): "blue",
    ("0.5", "0.5"): "green",
    ("-0.5", "1.5"): "green",
    ("0.5", "1.5"): "green",
    ("1.5", "1.5"): "green",
    ("-1.5", "2.5"): "green",
    ("-0.5", "2.5"): "green",
    ("0.5", "2.5"): "green",
    ("1.5", "2.5"): "green",
    ("2.5", "2.5"): "green",
    ("0.5", "-0.5"): "green",
    ("-0.5", "-1.5"): "green",
    ("0.5", "-1.5"): "green",
    ("1.5", "-1.5"): "green",
    ("-1.5", "-2.5"): "green",
    ("-0.5", "-2.5"): "green",
    ("0.5", "-2.5"): "green",
    ("1.5", "-2.5"): "green",
    ("2.5", "-2.5"): "green",
}


def expected_color(k, lam):
    """Color of the grid point ``(k, lambda)`` given as Fractions."""
    for (a, b), color in MARKERS.items():
        if Fraction(a) == k and Fraction(b) == lam:
            return color
    for s in (k - lam, k + lam):
        if s.denominator == 1 and 1 <= s <= 6:
            return "red"
    return "white"


def grid(step=Fraction(1, 2), lo=-3, hi=3):
    """The square grid ``{lo, lo + step, ..., hi}^2`` as ``(k, lambda)`` pairs."""
    count = int((hi - lo) / step)
    vals = [lo + i * step for i in range(count + 1)]
    return [(k, lam) for k in vals for lam in vals]
