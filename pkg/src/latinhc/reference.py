"""Reference semi-reduced counts used by ``reproduce-table2``.

Keys are ``(sizes, class)``.  The desk tier runs in seconds; the extended
tier takes minutes in pure Python.
"""

COUNTS_DESK = {
    ((2, 2, 2), 1): 1,
    ((3, 2, 2), 1): 6,
    ((3, 2, 2), 2): 4,
    ((3, 3, 2), 1): 4,
    ((3, 3, 2), 2): 448,
    ((3, 3, 3), 1): 4,
    ((3, 3, 3), 2): 40,
    ((4, 2, 2), 1): 321,
    ((4, 2, 2), 2): 81,
    ((2, 2, 2, 2), 1): 1,
    ((2, 2, 2, 2), 3): 1,
    ((3, 2, 2, 2), 1): 38,
    ((3, 2, 2, 2), 2): 0,
    ((3, 3, 2, 2), 1): 12,
    ((3, 3, 2, 2), 2): 176,
    ((3, 3, 3, 2), 1): 8,
    ((3, 3, 3, 2), 2): 104,
    ((3, 3, 3, 3), 1): 8,
    ((3, 3, 3, 3), 2): 104,
    ((4, 2, 2, 2), 2): 576,
    ((2, 2, 2, 2, 2), 1): 1,
    ((3, 3, 2, 2, 2), 2): 0,
    ((3, 3, 3, 2, 2), 1): 24,
    ((3, 3, 3, 2, 2), 2): 0,
}

# (3,2,2,2) class 3 is listed as 11520 = 16 * 6!, the count obtained when
# only a 6-cell subarray is normalised; fixing the full 12-cell first
# 3-subarray gives 16.
COUNTS_EXTENDED = {
    ((5, 2, 2), 1): 33372,
    ((5, 2, 2), 2): 1936,
    ((4, 3, 2), 2): 190992,
    ((3, 2, 2, 2), 3): 11520,
    ((4, 2, 2, 2), 1): 119001,
}

NONEXISTENT_CLASS2 = [
    (2, 2, 2, 2),
    (2, 2, 2, 2, 2), (3, 2, 2, 2, 2), (3, 3, 3, 3, 2), (3, 3, 3, 3, 3),
    (2, 2, 2, 2, 2, 2), (3, 2, 2, 2, 2, 2), (3, 3, 3, 2, 2, 2), (3, 3, 3, 3, 2, 2),
    (3, 3, 3, 3, 3, 2), (3, 3, 3, 3, 3, 3), (4, 2, 2, 2, 2, 2), (4, 3, 3, 3, 3, 2),
    (4, 4, 4, 4, 4, 2), (4, 3, 3, 3, 3, 3), (4, 4, 4, 4, 3, 3), (4, 4, 4, 4, 4, 3),
    (4, 4, 4, 4, 4, 4),
]
