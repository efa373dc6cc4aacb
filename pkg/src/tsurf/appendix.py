"""Catalog of tabulated P-resolutions for families of cyclic quotient singularities.

Each family builds an HJ chain from integer parameters and lists expected rows
as generator rules (label, applicability, zero chain, notation). The notation
is written with the tabulated shorthands and normalized before comparison.
"""

import re
from dataclasses import dataclass, field

from .cf_core import evaluate
from .errors import ValidationError
from .pres import enumerate_p_resolutions, render_parts


class Malformed(Exception):
    """A row rule does not instantiate at the given parameters."""


def twos(k):
    if k < 0:
        raise Malformed(f"negative run of 2s ({k})")
    return [2] * k


@dataclass(frozen=True)
class Row:
    label: str
    applies: object
    zcf: object
    notation: object


@dataclass(frozen=True)
class Family:
    name: str
    params: tuple
    valid: object
    chain: object
    cross_only: bool
    rows: tuple
    grid: dict = field(default_factory=dict, hash=False, compare=False)


def _always(**_):
    return True


FAMILIES = {}


def _family(name, params, valid, chain, cross_only, rows, grid):
    FAMILIES[name] = Family(name, params, valid, chain, cross_only, tuple(Row(*r) for r in rows), grid)


# [2^a, r, 2^b]
_family(
    "2r2", ("r", "a", "b"),
    lambda r, a, b: r >= 3 and a >= 0 and b >= 0,
    lambda r, a, b: twos(a) + [r] + twos(b),
    False,
    [
        ("a", _always, lambda r, a, b: [1] + twos(r - 3) + [1],
         lambda r, a, b: f"A_{a}-({r})-A_{b}"),
        ("b", lambda r, a, b: a >= r - 4 and r >= 4, lambda r, a, b: [r - 2, 1] + twos(r - 3),
         lambda r, a, b: f"A_{a - r + 4}-[({r - 2},{r - 3})]-A_{b}"),
        ("c", lambda r, a, b: b >= r - 4 and r >= 4, lambda r, a, b: twos(r - 3) + [1, r - 2],
         lambda r, a, b: f"A_{a}-[({r - 2},1)]-A_{b - r + 4}"),
    ],
    {"r": range(3, 8), "a": range(0, 5), "b": range(0, 5)},
)

# [2^b, r, a, 2^c]
_family(
    "2ra2", ("r", "a", "b", "c"),
    lambda r, a, b, c: r >= 3 and a >= 3 and b >= 0 and c >= 0,
    lambda r, a, b, c: twos(b) + [r, a] + twos(c),
    False,
    [
        ("a", _always, lambda r, a, b, c: [1] + twos(r + a - 5) + [1],
         lambda r, a, b, c: f"A_{b}-({r})-({a})-A_{c}"),
        ("b", lambda r, a, b, c: a >= 4 and c >= a - 4,
         lambda r, a, b, c: [1] + twos(r - 3) + [3] + twos(a - 4) + [1, a - 2],
         lambda r, a, b, c: f"A_{b}-({r})-[({a - 2},1)]-A_{c - a + 4}"),
        ("c", lambda r, a, b, c: r >= 4 and b >= r - 4,
         lambda r, a, b, c: [r - 2, 1] + twos(r - 4) + [3] + twos(a - 3) + [1],
         lambda r, a, b, c: f"A_{b - r + 4}-[({r - 2},{r - 3})]-({a})-A_{c}"),
        ("d", lambda r, a, b, c: b >= r + a - 6,
         lambda r, a, b, c: [r + a - 4, 1] + twos(r + a - 5),
         lambda r, a, b, c: f"A_{b - r - a + 6}-[({r + a - 4},{r + a - 5})]-(1)-[({a - 1},{a - 2})]-A_{c}"),
        ("e", lambda r, a, b, c: c >= r + a - 6,
         lambda r, a, b, c: twos(r + a - 5) + [1, r + a - 4],
         lambda r, a, b, c: f"A_{b}-[({r - 1},{r - 2})]-(1)-[({r + a - 4},{r + a - 5})]-A_{c - r - a + 6}"),
        ("f", lambda r, a, b, c: r >= 4 and a >= 4 and b >= r - 3 and c >= a - 3,
         lambda r, a, b, c: [r - 1, 1] + twos(r - 4) + [3] + twos(a - 4) + [1, a - 1],
         lambda r, a, b, c: f"A_{b - r + 3}-[({r - 1},{r - 2})]-(1)-[({a - 1},1)]-A_{c - a + 3}"),
        ("g", lambda r, a, b, c: r == 5 and b >= a - 2,
         lambda r, a, b, c: [a, 2, 1, 3] + twos(a - 2),
         lambda r, a, b, c: f"A_{b - a + 2}-[({2 * a - 1},{2 * a - 3})]-A_{c}"),
        ("h", lambda r, a, b, c: a == 5 and c >= r - 2,
         lambda r, a, b, c: twos(r - 2) + [3, 1, 2, r],
         lambda r, a, b, c: f"A_{b}-[({2 * r - 1},2)]-A_{c - r + 2}"),
    ],
    {"r": range(3, 7), "a": range(3, 7), "b": range(0, 5), "c": range(0, 5)},
)

# [2^b, r, a, 2^(n-2), 3, 2^(a-3)]
_family(
    "2ra232", ("r", "a", "b", "n"),
    lambda r, a, b, n: r >= 3 and a >= 3 and b >= 0 and n >= 2,
    lambda r, a, b, n: twos(b) + [r, a] + twos(n - 2) + [3] + twos(a - 3),
    False,
    [
        ("a", _always, lambda r, a, b, n: [1] + twos(r + a - 4) + [1],
         lambda r, a, b, n: f"A_{b}-({r})-({a})-A_{n - 2}-(3)-A_{a - 3}"),
        ("b", lambda r, a, b, n: a >= 4 and n >= a - 2,
         lambda r, a, b, n: [1] + twos(r - 3) + [3] + twos(a - 4) + [1, a - 1, 1],
         lambda r, a, b, n: f"A_{b}-({r})-[({a - 2},1)]-A_{a - 4}-(3)-A_{a - 3}"),
        ("c", _always,
         lambda r, a, b, n: [1] + twos(r - 3) + [3] + twos(a - 3) + [1, a - 1],
         lambda r, a, b, n: f"A_{b}-({r})-[{n}({a - 1},1)]"),
        ("d", lambda r, a, b, n: r >= 4 and b >= r - 4,
         lambda r, a, b, n: [r - 2, 1] + twos(r - 4) + [3] + twos(a - 2) + [1],
         lambda r, a, b, n: f"A_{b - r + 4}-[({r - 2},{r - 3})]-({a})-A_{n - 2}-(3)-A_{a - 3}"),
        ("e", lambda r, a, b, n: r >= 4 and b >= r + a - 5,
         lambda r, a, b, n: [r + a - 3, 1] + twos(r + a - 4),
         lambda r, a, b, n: f"A_{b - r - a + 5}-[({r + a - 3},{r + a - 4})]-(1)-[({a},{a - 1})]-(1)-[{n - 1}(2,1)]-A_{a - 3}"),
        ("f", lambda r, a, b, n: r >= 4 and b >= r + a - 6,
         lambda r, a, b, n: [r + a - 4, 1] + twos(r + a - 6) + [3, 1],
         lambda r, a, b, n: f"A_{b - r - a + 6}-[({r + a - 4},{r + a - 5})]-(1)-[({a - 1},{a - 2})]-A_{n - 2}-(3)-A_{a - 3}"),
        ("g", lambda r, a, b, n: r >= 4 and a >= 4 and b >= r - 2 and n >= a - 2,
         lambda r, a, b, n: [r, 1] + twos(r - 4) + [3] + twos(a - 4) + [1, a - 1, 2],
         lambda r, a, b, n: f"A_{b - r + 2}-[({r},{r - 1})]-(1)-[({2 * a - 3},{a - 1})]-(1)-[{n - a + 2}(2,1)]-A_{a - 3}"),
        ("h", lambda r, a, b, n: r >= 4 and a >= 4 and b >= r - 3 and n >= a - 1,
         lambda r, a, b, n: [r - 1, 1] + twos(r - 4) + [3] + twos(a - 4) + [1, a, 1],
         lambda r, a, b, n: f"A_{b - r + 3}-[({r - 1},{r - 2})]-(1)-[({a - 1},1)]-A_{n - a + 1}-(3)-A_{a - 3}"),
        ("i", lambda r, a, b, n: r == 5 and b >= a - 1,
         lambda r, a, b, n: [a + 1, 2, 1, 3] + twos(a - 1),
         lambda r, a, b, n: f"A_{b - a + 1}-[({2 * a + 1},{2 * a - 1})]-(1)-[{n - 1}(2,1)]-A_{a - 3}"),
        ("j", lambda r, a, b, n: r == 5 and b >= a - 2,
         lambda r, a, b, n: [a, 2, 1, 3] + twos(a - 3) + [3, 1],
         lambda r, a, b, n: f"A_{b - a + 2}-[({2 * a - 1},{2 * a - 3})]-A_{n - 2}-(3)-A_{a - 3}"),
        ("k", lambda r, a, b, n: a == 5 and b >= 1 and n >= r - 1,
         lambda r, a, b, n: [3] + twos(r - 3) + [3, 1, 2, r, 2],
         lambda r, a, b, n: f"A_{b - 2}-[({4 * (r - 1)},{2 * r - 1})]-(1)-[{n - r + 1}(2,1)]-(2)-A_1"),
        ("l", lambda r, a, b, n: a == 5 and n >= r,
         lambda r, a, b, n: twos(r - 2) + [3, 1, 2, r + 1, 1],
         lambda r, a, b, n: f"A_{b}-[({2 * r - 1},2)]-A_{n - r}-(3)-(2)-A_1"),
        ("m", lambda r, a, b, n: r >= 4 and b >= 1 and n >= r + a - 5,
         lambda r, a, b, n: [3] + twos(r + a - 6) + [1, r + a - 4, 2],
         lambda r, a, b, n: f"A_{b - 1}-[({2 * r - 3},{r - 1})]-(1)-[({2 * r + 2 * a - 9},{r + a - 4})]-(1)-[{n - r - a + 4}(2,1)]-A_{a - 3}"),
        ("n", lambda r, a, b, n: n >= r + a - 4,
         lambda r, a, b, n: twos(r + a - 5) + [1, a + r - 3, 1],
         lambda r, a, b, n: f"A_{b}-[({r - 1},1)]-(1)-[({r + a - 4},1)]-A_{n - r - a + 4}-(3)-A_{a - 3}"),
        ("o", lambda r, a, b, n: n >= a - 3 and a >= r + 1,
         lambda r, a, b, n: twos(r - 2) + [3] + twos(a - 4) + [1, a - 2, r],
         lambda r, a, b, n: f"A_{b}-[({r * a - 2 * r - 1},{a - 2})]-(1)-[{n - a + 3}({r},1)]-A_{a - r - 1}"),
    ],
    {"r": range(3, 7), "a": range(3, 7), "b": range(0, 5), "n": range(2, 8)},
)

# [2^b, a, 2^(n-2), 3, 2^(a-4)]
_family(
    "2a232", ("a", "b", "n"),
    lambda a, b, n: a >= 4 and b >= 0 and n >= 2,
    lambda a, b, n: twos(b) + [a] + twos(n - 2) + [3] + twos(a - 4),
    False,
    [
        ("a", _always, lambda a, b, n: [1] + twos(a - 2) + [1],
         lambda a, b, n: f"A_{b}-({a})-A_{n - 2}-(3)-A_{a - 4}"),
        ("b", lambda a, b, n: b >= a - 3, lambda a, b, n: [a - 1, 1] + twos(a - 2),
         lambda a, b, n: f"A_{b - a + 3}-[({a - 1},{a - 2})]-(1)-[{n - 1}(2,1)]-A_{a - 4}"),
        ("c", lambda a, b, n: b >= a - 4, lambda a, b, n: [a - 2, 1] + twos(a - 4) + [3, 1],
         lambda a, b, n: f"A_{b - a + 4}-[({a - 2},{a - 3})]-A_{n - 2}-(3)-A_{a - 4}"),
        ("d", lambda a, b, n: b >= 1 and n >= a - 3, lambda a, b, n: [3] + twos(a - 4) + [1, a - 2, 2],
         lambda a, b, n: f"A_{b - 1}-[({2 * a - 5},{a - 2})]-(1)-[{n - a + 3}(2,1)]-A_{a - 4}"),
        ("e", lambda a, b, n: n >= a - 2, lambda a, b, n: twos(a - 3) + [1, a - 1, 1],
         lambda a, b, n: f"A_{b}-[({a - 2},1)]-A_{n - a + 2}-(3)-A_{a - 4}"),
    ],
    {"a": range(4, 8), "b": range(0, 6), "n": range(2, 8)},
)

# [3, a, 2]
_family(
    "typeII", ("a",), lambda a: a >= 3, lambda a: [3, a, 2], False,
    [
        ("a", _always, lambda a: [1] + twos(a - 2) + [1], lambda a: f"(3)-({a})-A_1"),
        ("b", lambda a: a == 3, lambda a: [2, 1, 2], lambda a: "[2(2,1)]-(2)"),
        ("c", lambda a: a == 4, lambda a: [1, 3, 1, 2], lambda a: "(3)-[(2,1)]-(2)"),
        ("d", lambda a: a == 4, lambda a: [2, 2, 1, 3], lambda a: "[(2,1)]-(1)-[(3,1)]"),
        ("e", lambda a: a == 5, lambda a: [2, 3, 1, 2, 3], lambda a: "[(5,2)]"),
        ("f", lambda a: a == 5, lambda a: [1, 3, 2, 1, 3], lambda a: "(3)-[(3,1)]"),
    ],
    {"a": range(3, 12)},
)

# [4, a, 2]
_family(
    "typeIII", ("a",), lambda a: a >= 3, lambda a: [4, a, 2], False,
    [
        ("a", _always, lambda a: [1] + twos(a - 1) + [1], lambda a: f"(4)-({a})-A_1"),
        ("b", lambda a: a == 4, lambda a: [1, 2, 3, 1, 2], lambda a: "(4)-[(2,1)]-(2)"),
        ("c", lambda a: a == 5, lambda a: [1, 2, 3, 2, 1, 3], lambda a: "(4)-[(3,1)]"),
        ("d", _always, lambda a: [2, 1, 3] + twos(a - 3) + [1], lambda a: f"[(2,1)]-({a})-A_1"),
        ("e", lambda a: a == 3, lambda a: [2, 2, 1, 3], lambda a: "[2(3,2)]"),
    ],
    {"a": range(3, 12)},
)

# [3, a, 3]
_family(
    "typeIV", ("a",), lambda a: a >= 3, lambda a: [3, a, 3], False,
    [
        ("a", _always, lambda a: [1] + twos(a - 1) + [1], lambda a: f"(3)-({a})-(3)"),
        ("b", lambda a: a == 3, lambda a: [1, 3, 1, 2], lambda a: "(3)-[2(2,1)]"),
        ("c", lambda a: a == 3, lambda a: [2, 1, 3, 1], lambda a: "[2(2,1)]-(3)"),
        ("d", lambda a: a == 4, lambda a: [1, 3, 1, 3, 1], lambda a: "(3)-[(2,1)]-(3)"),
    ],
    {"a": range(3, 12)},
)

# [4, r, b, 2^(b-4)], non-A-ending only
_family(
    "4rb2", ("r", "b"), lambda r, b: r >= 3 and b >= 4,
    lambda r, b: [4, r, b] + twos(b - 4), True,
    [
        ("a", _always, lambda r, b: [2, 1, 3] + twos(r - 3) + [3] + twos(b - 3) + [1, b - 2],
         lambda r, b: f"[(2,1)]-({r})-[({b - 1},1)]"),
    ],
    {"r": range(3, 8), "b": range(4, 9)},
)

# [4, r, b, 2^(n-2), 3, 2^(b-3)], non-A-ending only
_family(
    "4rb232", ("r", "b", "n"), lambda r, b, n: r >= 3 and b >= 3 and n >= 2,
    lambda r, b, n: [4, r, b] + twos(n - 2) + [3] + twos(b - 3), True,
    [
        ("a", _always, lambda r, b, n: [2, 1, 3] + twos(r - 3) + [3] + twos(b - 3) + [1, b - 1],
         lambda r, b, n: f"[(2,1)]-({r})-[{n}({b - 1},1)]"),
        ("b", lambda r, b, n: b == 5 and n >= r - 1,
         lambda r, b, n: [2, 2, 3] + twos(r - 3) + [3, 1, 2, r, 4],
         lambda r, b, n: f"[({8 * r - 6},{2 * r - 1})]-(1)-[{n - r + 1}(4,1)]"),
        ("c", lambda r, b, n: b == 5 and n >= r,
         lambda r, b, n: [2, 2, 3] + twos(r - 1) + [1, r + 1, 4],
         lambda r, b, n: f"[({4 * r - 5},{r - 1})]-(1)-[({4 * r + 3},{r + 1})]-(1)-[{n - r}(4,1)]"),
        ("d", lambda r, b, n: b == r + 3 and n >= r,
         lambda r, b, n: twos(r) + [3] + twos(r - 1) + [1, b - 2, b - 1],
         lambda r, b, n: f"[(3,1)]-(1)-[({r * r + 2 * r + 1},{r + 1})]-(1)-[{n - r}({r + 2},1)]"),
    ],
    {"r": range(3, 7), "b": range(3, 10), "n": range(2, 9)},
)

# [2^(a-4), a, r, 3, 2^(n-2), 3], non-A-ending only
_family(
    "2ar323", ("r", "a", "n"), lambda r, a, n: r >= 3 and a >= 4 and n >= 2,
    lambda r, a, n: twos(a - 4) + [a, r, 3] + twos(n - 2) + [3], True,
    [
        ("a", _always, lambda r, a, n: [a - 2, 1] + twos(a - 4) + [3] + twos(r - 3) + [3, 1, 2],
         lambda r, a, n: f"[({a - 2},1)]-({r})-[{n}(2,1)]"),
        ("b", lambda r, a, n: a == 5 and r == 4 and n >= 4, lambda r, a, n: [3, 2, 2, 3, 1, 2, 5, 2],
         lambda r, a, n: f"[(16,9)]-(1)-[(9,5)]-(1)-[{n - 4}(2,1)]"),
        ("c", lambda r, a, n: a == 5 and r == 5 and n >= 4, lambda r, a, n: [3, 2, 2, 3, 2, 1, 3, 5, 2],
         lambda r, a, n: f"[(25,14)]-(1)-[{n - 4}(2,1)]"),
        ("d", lambda r, a, n: a == 5 and n >= r + 1, lambda r, a, n: [3] + twos(r) + [1, r + 2, 2],
         lambda r, a, n: f"[(7,4)]-(1)-[2({2 * r + 3},{r + 2})]-(1)-[{n - r - 1}(2,1)]"),
    ],
    {"r": range(3, 7), "a": range(4, 8), "n": range(2, 9)},
)

# [3, 2^(n-2), 3, r, b, 2^(n'-2), 3, 2^(b-3)], non-A-ending only
_family(
    "323rb232", ("r", "b", "n", "n2"),
    lambda r, b, n, n2: r >= 3 and b >= 3 and n >= 2 and n2 >= 2,
    lambda r, b, n, n2: [3] + twos(n - 2) + [3, r, b] + twos(n2 - 2) + [3] + twos(b - 3), True,
    [
        ("a", lambda r, b, n, n2: r == 3 and b == 4, lambda r, b, n, n2: [2, 3, 3, 1, 2, 3, 3],
         lambda r, b, n, n2: f"[{n - 2}(2,1)]-(1)-[2(13,5)]-(1)-[{n2 - 2}(3,1)]"),
        ("b", lambda r, b, n, n2: r == 4 and b == 4 and n2 >= 3, lambda r, b, n, n2: [2, 3, 3, 1, 3, 1, 4, 3],
         lambda r, b, n, n2: f"[{n - 2}(2,1)]-(1)-[(13,5)]-(1)-[(11,4)]-[{n2 - 3}(3,1)]"),
        ("c", lambda r, b, n, n2: r == 4 and b == 4 and n >= 4, lambda r, b, n, n2: [2, 5, 2, 1, 3, 2, 2, 3],
         lambda r, b, n, n2: f"[{n - 4}(2,1)]-(1)-[(9,4)]-(1)-[(16,7)]-(1)-[{n2 - 1}(3,1)]"),
        ("d", lambda r, b, n, n2: r == 5 and b == 4 and n >= 4, lambda r, b, n, n2: [2, 5, 3, 1, 2, 3, 2, 2, 3],
         lambda r, b, n, n2: f"[{n - 4}(2,1)]-(1)-[(25,11)]-(1)-[{n2 - 1}(3,1)]"),
        ("e", _always, lambda r, b, n, n2: [2, 1, 3] + twos(r - 3) + [3] + twos(b - 3) + [1, b - 1],
         lambda r, b, n, n2: f"[{n}(2,1)]-({r})-[{n2}({b - 1},1)]"),
        ("f", lambda r, b, n, n2: b == 4 and n >= r + 1, lambda r, b, n, n2: [2, r + 2, 1] + twos(r) + [3],
         lambda r, b, n, n2: f"[{n - r - 1}(2,1)]-(1)-[2({2 * r + 3},{r + 1})]-(1)-[(7,3)]-(1)-[{n2 - 1}(3,1)]"),
        ("g", lambda r, b, n, n2: b == 4 and n >= r, lambda r, b, n, n2: [2, r + 1, 1] + twos(r - 3) + [3, 1, 3, 3],
         lambda r, b, n, n2: f"[{n - r}(2,1)]-(1)-[2({2 * r + 1},{r})]-(1)-[(8,3)]-(1)-[{n2 - 2}(3,1)]"),
        ("h", lambda r, b, n, n2: b == 4 and n2 >= r, lambda r, b, n, n2: [2, 3] + twos(r - 1) + [1, r + 1, 3],
         lambda r, b, n, n2: f"[{n - 2}(2,1)]-(1)-[(5,2)]-(1)-[({3 * r - 1},{r})]-(1)-[({3 * r + 2},{r + 1})]-(1)-[{n2 - r}(3,1)]"),
        ("i", lambda r, b, n, n2: b == 5 and n2 >= r - 1,
         lambda r, b, n, n2: [2, 2, 3] + twos(r - 3) + [3, 1, 2, r, 4],
         lambda r, b, n, n2: f"[{n - 1}(2,1)]-(1)-[({8 * r - 6},{2 * r - 1})]-(1)-[{n2 - r + 1}(4,1)]"),
        ("j", lambda r, b, n, n2: b == 5 and n2 >= r, lambda r, b, n, n2: [2, 2, 3] + twos(r - 1) + [1, r + 1, 4],
         lambda r, b, n, n2: f"[{n - 1}(2,1)]-(1)-[({4 * r - 5},{r - 1})]-(1)-[({4 * r + 3},{r + 1})]-(1)-[{n2 - r}(4,1)]"),
        ("k", lambda r, b, n, n2: b == r + 3 and n2 >= r,
         lambda r, b, n, n2: twos(r) + [3] + twos(r - 1) + [1, b - 2, b - 1],
         lambda r, b, n, n2: f"[{n - 1}(2,1)]-(1)-[(3,1)]-(1)-[({r * r + 2 * r + 1},{r + 1})]-(1)-[{n2 - r}({r + 2},1)]"),
    ],
    {"r": range(3, 6), "b": range(3, 9), "n": range(2, 7), "n2": range(2, 7)},
)


@dataclass(frozen=True)
class Erratum:
    """A tabulated row that disagrees with the algorithm, with its correction.

    zcf and notation replace the tabulated rules when given; None keeps them.
    """

    reason: str
    zcf: object = None
    notation: object = None


ERRATA = {
    ("2ra2", "e"): Erratum(
        "both points are written in the mirrored orientation: a should be 1",
        notation=lambda r, a, b, c: f"A_{b}-[({r - 1},1)]-(1)-[({r + a - 4},1)]-A_{c - r - a + 6}"),
    ("2ra232", "b"): Erratum(
        "the A point between the T point and (3) has index n-a+2, not a-4",
        notation=lambda r, a, b, n: f"A_{b}-({r})-[({a - 2},1)]-A_{n - a + 2}-(3)-A_{a - 3}"),
    ("2ra232", "k"): Erratum(
        "the leading A point has index b-1, not b-2",
        notation=lambda r, a, b, n: f"A_{b - 1}-[({4 * (r - 1)},{2 * r - 1})]-(1)-[{n - r + 1}(2,1)]-(2)-A_1"),
    ("2ra232", "l"): Erratum(
        "the tail (3)-(2)-A_1 has a (-2) link next to a Du Val point, which is not ample; it is (3)-A_2",
        notation=lambda r, a, b, n: f"A_{b}-[({2 * r - 1},2)]-A_{n - r}-(3)-A_2"),
    ("2ra232", "m"): Erratum(
        "the last T point has d = n-r-a+5, one more than tabulated",
        notation=lambda r, a, b, n: (f"A_{b - 1}-[({2 * r - 3},{r - 1})]-(1)-[({2 * r + 2 * a - 9},{r + a - 4})]"
                                     f"-(1)-[{n - r - a + 5}(2,1)]-A_{a - 3}")),
    ("typeIII", "e"): Erratum(
        "the point is written in the mirrored orientation: (3,1), not (3,2)",
        notation=lambda a: "[2(3,1)]"),
    ("4rb2", "a"): Erratum(
        "the run of 2s has length b-4 and the last point is (b-2,1)",
        zcf=lambda r, b: [2, 1, 3] + twos(r - 3) + [3] + twos(b - 4) + [1, b - 2],
        notation=lambda r, b: f"[(2,1)]-({r})-[({b - 2},1)]"),
    ("4rb232", "d"): Erratum(
        "the middle point has n = r^2+3r+1 (r^2+2r+1 is not even coprime to r+1 for odd r)",
        notation=lambda r, b, n: f"[(3,1)]-(1)-[({r * r + 3 * r + 1},{r + 1})]-(1)-[{n - r}({r + 2},1)]"),
    ("2ar323", "a"): Erratum(
        "the first point is written in the mirrored orientation: (a-2,a-3)",
        notation=lambda r, a, n: f"[({a - 2},{a - 3})]-({r})-[{n}(2,1)]"),
    ("323rb232", "b"): Erratum(
        "the link (1) between the last two T points is missing",
        notation=lambda r, b, n, n2: f"[{n - 2}(2,1)]-(1)-[(13,5)]-(1)-[(11,4)]-(1)-[{n2 - 3}(3,1)]"),
    ("323rb232", "k"): Erratum(
        "the middle point has n = r^2+3r+1, as in the [4,r,b,...] family",
        notation=lambda r, b, n, n2: (f"[{n - 1}(2,1)]-(1)-[(3,1)]-(1)-[({r * r + 3 * r + 1},{r + 1})]"
                                      f"-(1)-[{n2 - r}({r + 2},1)]")),
}

# Members not covered by any row: the tabulated rows of this family assume
# r >= 4 although the family allows r = 3.
UNTABULATED = {"2ra232": lambda r, a, b, n: r == 3}


_TOKEN = re.compile(r"\((\d+)\)|\[(\d*)\((\d+),(\d+)\)\]|A_(-?\d+)")


def parse_notation(text):
    """Split bracket notation into ('link', c), ('T', d, n, a) and ('A', k) tokens."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise Malformed(f"cannot parse {text!r} at {pos}")
        if m.group(1) is not None:
            tokens.append(("link", int(m.group(1))))
        elif m.group(5) is not None:
            tokens.append(("A", int(m.group(5))))
        else:
            d = int(m.group(2)) if m.group(2) else 1
            tokens.append(("T", d, int(m.group(3)), int(m.group(4))))
        pos = m.end()
        if pos < len(text):
            if text[pos] != "-":
                raise Malformed(f"expected '-' in {text!r} at {pos}")
            pos += 1
    return tokens


def normalize_notation(text):
    """Expand the tabulated shorthands into the canonical rendering.

    A_k written directly next to a T point (no link between) stands for
    A_{k-1}-(2) on that side, and A_0 for nothing; A_0 elsewhere is a smooth
    point; a T point with d = 0 is absent together with the link joining it
    to the rest of the chain, or, inside the chain, fuses its links (c) and
    (c') into one curve (c + c' - 1). Two T points of the same
    (n, a) joined by (1) are written as one point with the d values added.
    """
    tokens = parse_notation(text)
    if any(t[0] == "A" and t[1] < 0 for t in tokens):
        raise Malformed(f"negative A index in {text!r}")
    while tokens and tokens[0] == ("A", 0):
        tokens = tokens[1:]
    while tokens and tokens[-1] == ("A", 0):
        tokens = tokens[:-1]
    # Drop vanishing T points at either end with their link.
    while tokens and tokens[0][0] == "T" and tokens[0][1] == 0:
        tokens = tokens[2:] if len(tokens) > 1 and tokens[1][0] == "link" else tokens[1:]
    while tokens and tokens[-1][0] == "T" and tokens[-1][1] == 0:
        tokens = tokens[:-2] if len(tokens) > 1 and tokens[-2][0] == "link" else tokens[:-1]
    out = []
    for i, tok in enumerate(tokens):
        if tok[0] != "A":
            out.append(tok)
            continue
        k = tok[1]
        before_t = i + 1 < len(tokens) and tokens[i + 1][0] == "T"
        after_t = i > 0 and tokens[i - 1][0] == "T"
        if before_t and after_t:
            raise Malformed(f"A point between two T points in {text!r}")
        if before_t:
            if k >= 1:
                out += [("A", k - 1), ("link", 2)]
        elif after_t:
            if k >= 1:
                out += [("link", 2), ("A", k - 1)]
        else:
            out.append(tok)
    # An interior vanishing point fuses its two links into one curve.
    i = 1
    while i < len(out) - 1:
        if out[i][0] == "T" and out[i][1] == 0 and out[i - 1][0] == "link" and out[i + 1][0] == "link":
            out[i - 1:i + 2] = [("link", out[i - 1][1] + out[i + 1][1] - 1)]
        i += 1
    if any(t[0] == "T" and t[1] == 0 for t in out):
        raise Malformed(f"vanishing interior point in {text!r}")
    # Equal T points joined by a (-1)-curve contract to one point of summed d.
    merged = []
    for tok in out:
        if (tok[0] == "T" and len(merged) >= 2 and merged[-1] == ("link", 1)
                and merged[-2][0] == "T" and merged[-2][2:] == tok[2:]):
            merged[-2:] = [("T", merged[-2][1] + tok[1], tok[2], tok[3])]
        else:
            merged.append(tok)
    parts = []
    for tok in merged:
        if tok[0] == "link":
            parts.append(f"({tok[1]})")
        elif tok[0] == "A":
            if tok[1] > 0:
                parts.append(f"A_{tok[1]}")
        else:
            _, d, n, a = tok
            parts.append(f"[{'' if d == 1 else d}({n},{a})]")
    return "-".join(parts)


@dataclass
class ComparisonReport:
    family: str
    params: dict
    chain: list
    expected: list
    actual: list
    mismatched: list
    missing: list
    extra: list
    collisions: list
    malformed: list

    @property
    def exact(self):
        return not (self.mismatched or self.missing or self.extra or self.malformed)


def family_chain(name, params):
    fam = _get(name)
    _check_params(fam, params)
    return fam.chain(**params)


def _get(name):
    if name not in FAMILIES:
        raise ValidationError(f"unknown family {name!r}; known: {sorted(FAMILIES)}")
    return FAMILIES[name]


def _check_params(fam, params):
    if set(params) != set(fam.params):
        raise ValidationError(f"family {fam.name} takes parameters {fam.params}, got {sorted(params)}")
    if not all(isinstance(v, int) for v in params.values()) or not fam.valid(**params):
        raise ValidationError(f"parameters {params} outside the range of family {fam.name}")


def actual_rows(name, params):
    """(zcf, rendering) pairs computed by the algorithm for a family member."""
    fam = _get(name)
    _check_params(fam, params)
    chain = fam.chain(**params)
    delta, omega = evaluate(chain)
    return [(list(p.zcf), render_parts(p.nodes, p.links))
            for p in enumerate_p_resolutions(delta, omega, fam.cross_only)]


def expected_rows(name, params, corrected=False):
    """Instantiated rows: list of (label, zcf, normalized notation or None, problem).

    With corrected=True the rules listed in ERRATA replace the tabulated ones.
    """
    fam = _get(name)
    _check_params(fam, params)
    out = []
    for row in fam.rows:
        if not row.applies(**params):
            continue
        fix = ERRATA.get((name, row.label)) if corrected else None
        zcf_rule = fix.zcf if fix is not None and fix.zcf is not None else row.zcf
        notation_rule = fix.notation if fix is not None and fix.notation is not None else row.notation
        try:
            zcf = zcf_rule(**params)
        except Malformed as exc:
            out.append((row.label, None, None, str(exc)))
            continue
        try:
            notation = normalize_notation(notation_rule(**params))
        except Malformed as exc:
            out.append((row.label, zcf, None, str(exc)))
            continue
        out.append((row.label, zcf, notation, None))
    return out


def appendix_check(name, params, corrected=False):
    """Compare the algorithm's P-resolutions with the tabulated rows."""
    fam = _get(name)
    _check_params(fam, params)
    chain = fam.chain(**params)
    actual = actual_rows(name, params)
    by_zcf = {tuple(z): text for z, text in actual}
    expected = expected_rows(name, params, corrected)
    mismatched, missing, malformed, collisions = [], [], [], []
    claimed = {}
    for label, zcf, notation, problem in expected:
        if problem is not None and zcf is None:
            malformed.append((label, problem))
            continue
        key = tuple(zcf)
        claimed.setdefault(key, []).append(label)
        if key not in by_zcf:
            missing.append((label, zcf, notation))
        elif problem is not None:
            malformed.append((label, problem))
        elif by_zcf[key] != notation:
            mismatched.append((label, zcf, notation, by_zcf[key]))
    for key, labels in claimed.items():
        if len(labels) > 1:
            collisions.append((list(key), labels))
    extra = [(list(z), text) for z, text in actual if tuple(z) not in claimed]
    return ComparisonReport(name, dict(params), chain, expected, actual,
                            mismatched, missing, extra, collisions, malformed)


def grid_points(name):
    """Parameter points of the frozen grid that satisfy the family's range."""
    fam = _get(name)
    keys = fam.params
    points = [{}]
    for key in keys:
        points = [dict(p, **{key: v}) for p in points for v in fam.grid[key]]
    return [p for p in points if fam.valid(**p)]
