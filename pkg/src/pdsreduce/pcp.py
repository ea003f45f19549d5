"""Post Correspondence Problem instances over the alphabet {A, B}.

Instances are padded with the blank symbol ``•`` to a common word length
before being compiled into a pushdown system; equality of solutions is
always judged on the trimmed words.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import yaml

BLANK = "•"
LETTERS = ("A", "B")
PADDED_LETTERS = ("A", "B", BLANK)

IndexWord = tuple[int, ...]


def trim(word: str) -> str:
    """Erase every blank from ``word``."""
    if any(ch not in PADDED_LETTERS for ch in word):
        raise ValueError(f"word {word!r} is not over {{A, B, {BLANK}}}")
    return word.replace(BLANK, "")


@dataclass(frozen=True)
class PcpInstance:
    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self):
        pairs = tuple((str(u), str(v)) for u, v in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if not pairs:
            raise ValueError("a PCP instance needs at least one pair")
        for u, v in pairs:
            for word in (u, v):
                if not word or any(ch not in LETTERS for ch in word):
                    raise ValueError(f"pair word {word!r} must be a nonempty word over {{A, B}}")

    @classmethod
    def of(cls, *pairs: Sequence[str]) -> "PcpInstance":
        return cls(tuple((u, v) for u, v in pairs))

    @property
    def n(self) -> int:
        return len(self.pairs)

    @property
    def max_length(self) -> int:
        return max(max(len(u), len(v)) for u, v in self.pairs)

    def concatenations(self, w: IndexWord) -> tuple[str, str]:
        check_index_word(w, self.n)
        top = "".join(self.pairs[j - 1][0] for j in w)
        bottom = "".join(self.pairs[j - 1][1] for j in w)
        return top, bottom


@dataclass(frozen=True)
class ModifiedPcpInstance:
    """Instance whose words all have length ``m`` after padding with blanks."""

    pairs: tuple[tuple[str, str], ...]
    m: int

    def __post_init__(self):
        if not self.pairs:
            raise ValueError("a PCP instance needs at least one pair")
        for u, v in self.pairs:
            if len(u) != self.m or len(v) != self.m:
                raise ValueError(f"pair ({u!r}, {v!r}) is not padded to length {self.m}")
            trim(u), trim(v)

    @property
    def n(self) -> int:
        return len(self.pairs)

    def original(self) -> PcpInstance:
        return PcpInstance(tuple((trim(u), trim(v)) for u, v in self.pairs))

    def concatenations(self, w: IndexWord) -> tuple[str, str]:
        check_index_word(w, self.n)
        top = "".join(self.pairs[j - 1][0] for j in w)
        bottom = "".join(self.pairs[j - 1][1] for j in w)
        return top, bottom

    def is_solution(self, w: IndexWord) -> bool:
        top, bottom = self.concatenations(w)
        return trim(top) == trim(bottom)


def check_index_word(w: IndexWord, n: int) -> None:
    if len(w) == 0:
        raise ValueError("index word must be nonempty")
    for j in w:
        if not 1 <= j <= n:
            raise IndexError(f"index {j} out of range 1..{n}")


def pad_instance(instance: PcpInstance) -> ModifiedPcpInstance:
    # blanks go on the right; any fixed placement gives the same trimmed words
    m = instance.max_length
    pairs = tuple((u.ljust(m, BLANK), v.ljust(m, BLANK)) for u, v in instance.pairs)
    return ModifiedPcpInstance(pairs, m)


def check_solution(instance: PcpInstance, w: IndexWord) -> bool:
    top, bottom = instance.concatenations(tuple(w))
    return top == bottom


def brute_force_solve(instance: PcpInstance, max_k: int) -> Optional[IndexWord]:
    """Shortest solution of length at most ``max_k``, lexicographically first among equals."""
    if max_k < 1:
        raise ValueError("max_k must be at least 1")
    indices = range(1, instance.n + 1)
    for k in range(1, max_k + 1):
        for w in itertools.product(indices, repeat=k):
            if check_solution(instance, w):
                return w
    return None


def load_instance(path) -> PcpInstance:
    """Read an instance file: a YAML/JSON mapping with ``pairs: [[u, v], ...]``."""
    data = yaml.safe_load(Path(path).read_text())
    if not isinstance(data, dict) or "pairs" not in data:
        raise ValueError(f"{path}: expected a mapping with a 'pairs' field")
    return PcpInstance(tuple(tuple(p) for p in data["pairs"]))


def dump_instance(instance: PcpInstance) -> str:
    body = ", ".join(f"[{u}, {v}]" for u, v in instance.pairs)
    return f"pairs: [{body}]\n"


def parse_index_word(text: str) -> IndexWord:
    """``"1,2,2"`` or ``"1 2 2"`` -> ``(1, 2, 2)``."""
    parts = text.replace(",", " ").split()
    if not parts:
        raise ValueError("empty index word")
    return tuple(int(p) for p in parts)
