"""Binary domination order, admissible good-index sets and the case tables.

Indexes are plain ints. A frozen mask is an ``R``-bit int written the way the
hex tables read: the most-significant bit is position 0, so ``0xFE`` for
``R = 8`` freezes positions 0..6 and keeps position 7.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

SUPPORTED_ENUM_R = (1, 2, 4, 8, 16, 32)


def _width(R: int) -> int:
    t = R.bit_length() - 1
    if R < 1 or (1 << t) != R:
        raise ValueError(f"block size must be a power of two, got {R}")
    return t


# ---------------------------------------------------------------------------
# index sets and masks


@dataclass(frozen=True)
class IndexSet:
    """Sorted set of distinct indexes in ``[0, 2**width)``."""

    elements: tuple[int, ...]
    width: int

    def __post_init__(self):
        els = tuple(sorted(set(int(e) for e in self.elements)))
        if self.width < 0:
            raise ValueError("width must be non-negative")
        if els and (els[0] < 0 or els[-1] >= (1 << self.width)):
            raise ValueError(f"elements out of range for width {self.width}")
        object.__setattr__(self, "elements", els)

    @classmethod
    def of(cls, elements: Iterable[int], width: int) -> "IndexSet":
        return cls(tuple(elements), width)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, item) -> bool:
        return item in self.elements

    @property
    def size(self) -> int:
        return 1 << self.width

    def complement(self) -> "IndexSet":
        own = set(self.elements)
        return IndexSet(tuple(i for i in range(self.size) if i not in own), self.width)

    def to_mask(self) -> int:
        """Frozen mask of the block whose good set is ``self``."""
        return mask_from_good(self.elements, self.size)


def mask_from_good(good: Iterable[int], R: int) -> int:
    mask = (1 << R) - 1
    for g in good:
        mask &= ~(1 << (R - 1 - int(g)))
    return mask


def good_from_mask(mask: int, R: int) -> tuple[int, ...]:
    return tuple(r for r in range(R) if not (mask >> (R - 1 - r)) & 1)


def frozen_from_mask(mask: int, R: int) -> np.ndarray:
    """Boolean frozen indicator, position ``r`` at index ``r``."""
    return np.array([(mask >> (R - 1 - r)) & 1 for r in range(R)], dtype=bool)


def mask_from_frozen(frozen: Sequence[bool]) -> int:
    mask = 0
    for f in frozen:
        mask = (mask << 1) | int(bool(f))
    return mask


def mask_hex(mask: int, R: int) -> str:
    return format(mask, f"0{max(1, R // 4)}X")


def parse_mask(text: str | int) -> int:
    if isinstance(text, (int, np.integer)):
        return int(text)
    return int(text, 16)


# ---------------------------------------------------------------------------
# order predicates


def binary_dominates(i: int, j: int, t: int | None = None) -> bool:
    """True iff every set bit of ``j`` is also set in ``i``."""
    if t is not None and not (0 <= i < (1 << t) and 0 <= j < (1 << t)):
        raise ValueError(f"indexes out of range for width {t}")
    return (i & j) == j


def is_dominance_closed(S: IndexSet) -> bool:
    """Up-set test: every dominator of a member is a member.

    Checking single-bit covers is enough since domination is generated by
    setting one bit at a time.
    """
    members = set(S.elements)
    for j in members:
        for b in range(S.width):
            if not (j >> b) & 1 and (j | (1 << b)) not in members:
                return False
    return True


def is_domination_contiguous(S: IndexSet) -> bool:
    """Order-convexity: ``h, j`` in S and ``h >= i >= j`` imply ``i`` in S."""
    members = set(S.elements)
    for h in members:
        for j in members:
            if (h & j) != j or h == j:
                continue
            # every i between j and h is j plus a subset of the bits h adds
            free = h & ~j
            sub = free
            while sub:
                if (j | sub) not in members:
                    return False
                sub = (sub - 1) & free
    return True


def upset_array(good: np.ndarray, width: int) -> bool:
    """Vectorised up-set test on a boolean membership vector of length 2**width."""
    good = np.asarray(good, dtype=bool)
    idx = np.arange(good.size)
    for b in range(width):
        lo = (idx >> b) & 1 == 0
        if np.any(good[idx[lo]] & ~good[idx[lo] | (1 << b)]):
            return False
    return True


# ---------------------------------------------------------------------------
# bit permutations


@dataclass(frozen=True)
class BitPermutation:
    """``mapping[s]`` is the destination position of source bit ``s``."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(v) for v in self.mapping)
        if sorted(m) != list(range(len(m))):
            raise ValueError(f"not a permutation of bit positions: {m}")
        object.__setattr__(self, "mapping", m)

    @property
    def width(self) -> int:
        return len(self.mapping)

    @classmethod
    def identity(cls, t: int) -> "BitPermutation":
        return cls(tuple(range(t)))

    def __call__(self, x: int) -> int:
        out = 0
        for src, dst in enumerate(self.mapping):
            out |= ((x >> src) & 1) << dst
        return out

    def index_map(self) -> np.ndarray:
        return np.array([self(x) for x in range(1 << self.width)], dtype=np.int64)


def apply_permutation(S: IndexSet, p: BitPermutation) -> IndexSet:
    if p.width != S.width:
        raise ValueError(f"permutation width {p.width} != set width {S.width}")
    return IndexSet(tuple(p(x) for x in S.elements), S.width)


def all_permutations(t: int) -> list[BitPermutation]:
    return [BitPermutation(m) for m in itertools.permutations(range(t))]


# ---------------------------------------------------------------------------
# enumeration


def _upset_masks_scan(t: int) -> list[int]:
    """All up-sets of the width-``t`` cube as membership bitmasks (bit i <-> index i)."""
    R = 1 << t
    # covers[i]: bitmask of indexes covering i (one extra bit set)
    covers = [sum(1 << (i | (1 << b)) for b in range(t) if not (i >> b) & 1) for i in range(R)]
    out = []
    for s in range(1 << R):
        ok = True
        x = s
        while x:
            low = x & -x
            i = low.bit_length() - 1
            if covers[i] & ~s:
                ok = False
                break
            x ^= low
        if ok:
            out.append(s)
    return out


def _bits_of(s: int) -> tuple[int, ...]:
    return tuple(i for i in range(s.bit_length()) if (s >> i) & 1)


def enumerate_admissible_sets(R: int) -> list[IndexSet]:
    """Every dominance-closed subset of ``[0, R)``.

    ``R <= 16`` is an exhaustive subset scan. ``R = 32`` composes a width-4
    up-set for the lower half with one for the upper half; the union is
    closed exactly when the lower half is contained in the upper half.
    """
    if R not in SUPPORTED_ENUM_R:
        raise ValueError(f"unsupported block size {R}; choose from {SUPPORTED_ENUM_R}")
    t = _width(R)
    if R <= 16:
        return [IndexSet(_bits_of(s), t) for s in _upset_masks_scan(t)]
    halves = _upset_masks_scan(t - 1)
    shift = R // 2
    out = []
    for lo in halves:
        for hi in halves:
            if lo & ~hi == 0:
                out.append(IndexSet(_bits_of(lo) + tuple(b + shift for b in _bits_of(hi)), t))
    return out


def count_admissible_sets(R: int) -> int:
    if R not in SUPPORTED_ENUM_R:
        raise ValueError(f"unsupported block size {R}; choose from {SUPPORTED_ENUM_R}")
    t = _width(R)
    if R <= 16:
        return len(_upset_masks_scan(t))
    halves = _upset_masks_scan(t - 1)
    return sum(1 for lo in halves for hi in halves if lo & ~hi == 0)


def conjugacy_classes(sets: Sequence[IndexSet]) -> list[list[IndexSet]]:
    """Partition ``sets`` into orbits under bit permutations of the index.

    Classes come out in order of first appearance; members keep input order.
    """
    if not sets:
        return []
    t = sets[0].width
    if any(s.width != t for s in sets):
        raise ValueError("all sets must share one width")
    perms = all_permutations(t)
    label: dict[tuple[int, ...], int] = {}
    classes: list[list[IndexSet]] = []
    for s in sets:
        key = s.elements
        if key in label:
            classes[label[key]].append(s)
            continue
        cid = len(classes)
        classes.append([s])
        for p in perms:
            label.setdefault(apply_permutation(s, p).elements, cid)
    return classes


def max_frozen_member(members: Sequence[IndexSet]) -> IndexSet:
    """Member whose frozen positions come earliest in natural decoding order.

    Compares sorted frozen-index tuples lexicographically. This reproduces the
    8-bit table; the 16-bit table is kept as data instead (see ``canonical_table``).
    """
    return min(members, key=lambda s: s.complement().elements)


# ---------------------------------------------------------------------------
# case tables


@dataclass(frozen=True)
class CaseTableEntry:
    mask: int
    R: int
    case_id: int
    k: int
    d_min: int | None
    retained: bool
    output: tuple[str, ...]

    @property
    def mask_hex(self) -> str:
        return mask_hex(self.mask, self.R)

    @property
    def good(self) -> IndexSet:
        return IndexSet(good_from_mask(self.mask, self.R), _width(self.R))


# (mask, d_min, retained, output column). An output symbol lists the systematic
# positions whose XOR gives that code bit ("" is a constant zero).
_TABLE_8 = [
    (0xFF, None, True, ("",) * 8),
    (0xFE, 8, True, ("7",) * 8),
    (0xFC, 4, True, ("6", "7") * 4),
    (0xFA, 4, False, ("5", "5", "7", "7") * 2),
    (0xEE, 4, False, ("3",) * 4 + ("7",) * 4),
    (0xF8, 4, True, ("567", "5", "6", "7") * 2),
    (0xEC, 4, False, ("367", "3", "367", "3", "6", "7", "6", "7")),
    (0xEA, 4, False, ("357", "357", "3", "3", "5", "5", "7", "7")),
    (0xE8, 4, True, ("356", "357", "367", "3", "567", "5", "6", "7")),
    (0xF0, 2, False, ("4", "5", "6", "7") * 2),
    (0xCC, 2, False, ("2", "3", "2", "3", "6", "7", "6", "7")),
    (0xAA, 2, False, ("1", "1", "3", "3", "5", "5", "7", "7")),
    (0xE0, 2, True, ("347", "357", "367", "3", "4", "5", "6", "7")),
    (0xC8, 2, False, ("257", "357", "2", "3", "567", "5", "6", "7")),
    (0xA8, 2, False, ("167", "1", "367", "3", "567", "5", "6", "7")),
    (0xC0, 2, True, ("246", "357", "2", "3", "4", "5", "6", "7")),
    (0xA0, 2, False, ("145", "1", "367", "3", "4", "5", "6", "7")),
    (0x88, 2, False, ("123", "1", "2", "3", "567", "5", "6", "7")),
    (0x80, 2, True, ("1234567", "1", "2", "3", "4", "5", "6", "7")),
    (0x00, 1, True, tuple("01234567")),
]

_TAIL = tuple("9abcdef")
_TABLE_16 = [
    (0xFFFF, None, ("",) * 16),
    (0xFFFE, 16, ("f",) * 16),
    (0xFFFC, 8, ("e", "f") * 8),
    (0xFFF8, 8, ("def", "d", "e", "f") * 4),
    (0xFFE8, 8, ("bde", "bdf", "bef", "b", "def", "d", "e", "f") * 2),
    (0xFEE8, 8, ("7bdef", "7bd", "7be", "7bf", "7de", "7df", "7ef", "7",
                 "bde", "bdf", "bef", "b", "def", "d", "e", "f")),
    (0xFFC0, 4, ("ace", "bdf", "a", "b", "c", "d", "e", "f") * 2),
    (0xFEE0, 4, ("7bc", "7bd", "7be", "7bf", "7cf", "7df", "7ef", "7",
                 "bcf", "bdf", "bef", "b", "c", "d", "e", "f")),
    (0xFF80, 4, ("9abcdef",) + _TAIL + ("9abcdef",) + _TAIL),
    (0xFEC0, 4, ("7acef", "7bd", "7af", "7bf", "7cf", "7df", "7ef", "7",
                 "ace", "bdf", "a", "b", "c", "d", "e", "f")),
    (0xFE80, 4, ("79abcdf", "79f", "7af", "7bf", "7cf", "7df", "7ef", "7", "9abcdef") + _TAIL),
    (0xFCC0, 4, ("6ac", "7bd", "6ae", "7bf", "6ce", "7df", "6", "7",
                 "ace", "bdf", "a", "b", "c", "d", "e", "f")),
    (0xFC80, 4, ("69abcdf", "79f", "6ae", "7bf", "6ce", "7df", "6", "7", "9abcdef") + _TAIL),
    (0xF880, 4, ("5679abc", "59d", "6ae", "7bf", "567cdef", "5", "6", "7", "9abcdef") + _TAIL),
    (0xE880, 4, ("3569acf", "3579bdf", "367abef", "3", "567cdef", "5", "6", "7", "9abcdef") + _TAIL),
    (0xE800, 2, ("3568bde", "3579bdf", "367abef", "3", "567cdef", "5", "6", "7")
                + tuple("89abcdef")),
    (0xC0C0, 2, ("246", "357", "2", "3", "4", "5", "6", "7",
                 "ace", "bdf", "a", "b", "c", "d", "e", "f")),
    (0xE000, 2, ("3478bcf", "3579bdf", "367abef", "3", "4", "5", "6", "7") + tuple("89abcdef")),
    (0xC000, 2, ("2468ace", "3579bdf") + tuple("23456789abcdef")),
    (0x8000, 2, ("123456789abcdef",) + tuple("123456789abcdef")),
    (0x0000, 1, tuple("0123456789abcdef")),
]


# (R, mask, position) -> (printed symbol, symbol that systematic encoding produces)
KNOWN_OUTPUT_ERRATA = {
    (16, 0xFE80, 0): ("79abcdf", "79abcde"),
}


def _popcount(x: int) -> int:
    return bin(x).count("1")


def canonical_table(R: int) -> list[CaseTableEntry]:
    """The published case tables as data.

    ``R = 8`` gives all 20 admissible masks, 9 of them retained. ``R = 16``
    gives the 21 retained masks only. The case id is the number of
    information bits in the block.
    """
    if R == 8:
        rows = [(m, d, keep, out) for m, d, keep, out in _TABLE_8]
    elif R == 16:
        rows = [(m, d, True, out) for m, d, out in _TABLE_16]
    else:
        raise ValueError(f"case tables exist for R = 8 and 16 only, got {R}")
    out = []
    for mask, d, keep, col in rows:
        k = R - _popcount(mask)
        out.append(CaseTableEntry(mask, R, k, k, d, keep, col))
    return out


def retained_masks(R: int) -> tuple[int, ...]:
    return tuple(e.mask for e in canonical_table(R) if e.retained)


def parse_output_symbol(sym: str) -> tuple[int, ...]:
    return tuple(sorted(int(c, 16) for c in sym))
