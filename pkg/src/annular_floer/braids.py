"""Braid words: parsing, validation and the permutation they induce."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .errors import BadGenerator, BadWord


@dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators; letter ``i`` is sigma_i, ``-i`` its inverse."""

    strands: int
    letters: tuple

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(g) for g in self.letters))
        if self.strands < 1:
            raise BadWord(f"braid index must be positive, got {self.strands}")
        for g in self.letters:
            if g == 0 or abs(g) > self.strands - 1:
                raise BadGenerator(f"generator {g} is not valid on {self.strands} strands",
                                   generator=g)

    @property
    def writhe(self) -> int:
        return sum(1 if g > 0 else -1 for g in self.letters)

    def permutation(self) -> tuple:
        """``perm[p]`` = final position (0-based) of the strand starting at ``p``."""
        return letters_permutation(self.letters, self.strands)

    @property
    def num_components(self) -> int:
        perm = self.permutation()
        seen = [False] * self.strands
        count = 0
        for s in range(self.strands):
            if not seen[s]:
                count += 1
                while not seen[s]:
                    seen[s] = True
                    s = perm[s]
        return count

    def text(self) -> str:
        return " ".join(str(g) for g in self.letters)

    def __len__(self):
        return len(self.letters)


def letters_permutation(letters: Sequence[int], strands: int) -> tuple:
    at = list(range(strands))  # at[position] = strand
    for g in letters:
        i = abs(g) - 1
        at[i], at[i + 1] = at[i + 1], at[i]
    perm = [0] * strands
    for pos, s in enumerate(at):
        perm[s] = pos
    return tuple(perm)


def parse_word(text: Union[str, Sequence[int]], strands: int) -> BraidWord:
    """Parse whitespace-separated signed integers (``"1 -2 1"``)."""
    if isinstance(text, str):
        try:
            letters = [int(tok) for tok in text.replace(",", " ").split()]
        except ValueError as exc:
            raise BadWord(f"cannot parse braid word {text!r}") from exc
    else:
        letters = list(text)
    return BraidWord(int(strands), tuple(letters))


def is_permutation_braid(letters: Sequence[int], strands: int) -> bool:
    """True when all letters share a sign and no two strands cross twice."""
    if not letters:
        return True
    if len({g > 0 for g in letters}) != 1:
        return False
    at = list(range(strands))
    crossed = set()
    for g in letters:
        i = abs(g) - 1
        pair = frozenset((at[i], at[i + 1]))
        if pair in crossed:
            return False
        crossed.add(pair)
        at[i], at[i + 1] = at[i + 1], at[i]
    return True
