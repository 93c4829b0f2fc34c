"""Words in the free monoid on generators x1..xn.

Letters are 1-based generator indices. Words are ordered by deglex: shorter
words first, words of equal length lexicographically with x1 < x2 < ... < xn.
"""

from __future__ import annotations

import itertools

from .errors import CapExceeded, DomainError

DEFAULT_WORD_CAP = 100_000


class Word:
    __slots__ = ("letters", "n", "_hash")

    def __init__(self, letters=(), n: int = 1):
        letters = tuple(letters)
        if n < 1:
            raise DomainError("arity must be positive")
        for i in letters:
            if not 1 <= i <= n:
                raise DomainError(f"letter x{i} out of range for arity {n}")
        self.letters = letters
        self.n = n
        self._hash = hash((letters, n))

    @classmethod
    def one(cls, n: int) -> "Word":
        return cls((), n)

    @classmethod
    def _trusted(cls, letters: tuple, n: int) -> "Word":
        w = object.__new__(cls)
        w.letters = letters
        w.n = n
        w._hash = hash((letters, n))
        return w

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return word_concat(self, other)

    def key(self) -> tuple:
        return (len(self.letters), self.letters)

    def __lt__(self, other: "Word"):
        _check_arity(self, other)
        return self.key() < other.key()

    def __le__(self, other: "Word"):
        _check_arity(self, other)
        return self.key() <= other.key()

    def __gt__(self, other: "Word"):
        return other < self

    def __ge__(self, other: "Word"):
        return other <= self

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.letters == other.letters and self.n == other.n

    def __hash__(self):
        return self._hash

    def __str__(self):
        return render_word(self)

    def __repr__(self):
        return f"Word({render_word(self)}, n={self.n})"


def _check_arity(u: Word, v: Word):
    if u.n != v.n:
        raise DomainError(f"arity mismatch: {u.n} vs {v.n}")


def word_concat(u: Word, v: Word) -> Word:
    _check_arity(u, v)
    return Word._trusted(u.letters + v.letters, u.n)


def word_cmp_deglex(u: Word, v: Word) -> int:
    """-1, 0 or 1 as ``u`` is smaller than, equal to or larger than ``v``."""
    _check_arity(u, v)
    a, b = u.key(), v.key()
    return (a > b) - (a < b)


def enumerate_words(r: int, n: int, cap: int = DEFAULT_WORD_CAP) -> list:
    """The n^r words of length r in ascending lexicographic order."""
    if r < 0 or n < 1:
        raise DomainError("need r >= 0 and n >= 1")
    if n ** r > cap:
        raise CapExceeded(f"{n}^{r} words exceed cap {cap}")
    return [Word._trusted(t, n) for t in itertools.product(range(1, n + 1), repeat=r)]


def words_up_to(r: int, n: int, cap: int = DEFAULT_WORD_CAP) -> list:
    """All words of length <= r in ascending deglex order."""
    out = []
    for k in range(r + 1):
        out.extend(enumerate_words(k, n, cap))
    return out


def word_index(w: Word) -> int:
    """1-based position of ``w`` in ``enumerate_words(len(w), w.n)``."""
    if not w.letters:
        raise DomainError("word_index needs a nonempty word")
    j = 1
    for q in w.letters:
        # w = v x_q  ->  index = n (index(v) - 1) + q
        j = w.n * (j - 1) + q
    return j


def word_from_index(j: int, r: int, n: int) -> Word:
    """Inverse of :func:`word_index` for words of length r."""
    if not 1 <= j <= n ** r:
        raise DomainError(f"index {j} out of range for length {r}")
    letters = []
    j -= 1
    for _ in range(r):
        j, q = divmod(j, n)
        letters.append(q + 1)
    return Word._trusted(tuple(reversed(letters)), n)


def render_word(w: Word) -> str:
    return "*".join(f"x{i}" for i in w.letters) if w.letters else "1"
