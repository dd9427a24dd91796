"""Graded free modules, tensor words, and the Koszul sign engine.

All signs in the engine are produced here, from shifted degrees
|x|' = |x| - 1 of basis elements.  Coefficient ring variables have even
degree by configuration, so they never contribute to sign parities; signs
are multiplied into ring coefficients at the moment a word is rewritten and
are never stored separately.

A tensor word is a tuple of basis indices; linear combinations of words are
plain dicts mapping word -> RingElement ("word sums").  The same dict idiom
is used by the Hochschild layer with (module slot, word) keys.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from .coeff import RingElement
from .errors import ConfigurationError

Word = Tuple[int, ...]
WordSum = Dict[Word, RingElement]


@dataclass(frozen=True)
class GradedBasis:
    """Finite graded basis with an optional strict unit designation."""

    names: tuple
    degrees: tuple
    unit: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if len(self.names) != len(set(self.names)):
            raise ConfigurationError("basis names must be unique")
        if len(self.names) != len(self.degrees):
            raise ConfigurationError("basis names and degrees must align")
        if self.unit is not None and self.degrees[self.unit] != 0:
            raise ConfigurationError("the unit must have degree 0")

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ConfigurationError("unknown basis element %r" % name) from None

    def degree(self, i: int) -> int:
        return self.degrees[i]

    def shifted(self, i: int) -> int:
        return self.degrees[i] - 1

    def is_unit(self, i: int) -> bool:
        return self.unit is not None and i == self.unit

    def require_unit(self) -> int:
        if self.unit is None:
            raise ConfigurationError("no unit designated")
        return self.unit


def maltese(degrees: Sequence[int], i: int) -> int:
    """Sum of shifted degrees of the first i entries.

    Only the parity is used downstream, but the exact integer is returned.
    """
    if i < 0 or i > len(degrees):
        raise ConfigurationError("maltese index out of range")
    return sum(d - 1 for d in degrees[:i])


def koszul_sign_cyclic(degrees: Sequence[int]) -> int:
    """Sign acquired when the last tensor factor moves to the front."""
    if not degrees:
        raise ConfigurationError("cyclic rotation of the empty word")
    exponent = (degrees[-1] - 1) * maltese(degrees, len(degrees) - 1)
    return -1 if exponent % 2 else 1


class Element:
    """Sparse element of the free graded module: basis index -> RingElement."""

    __slots__ = ("basis", "components")

    def __init__(self, basis: GradedBasis, components=None):
        self.basis = basis
        comp = {}
        if components:
            for i, value in components.items():
                if value:
                    comp[i] = value
        self.components = comp

    @classmethod
    def zero(cls, basis: GradedBasis) -> "Element":
        return cls(basis)

    @classmethod
    def generator(cls, basis: GradedBasis, i: int, coeff: RingElement) -> "Element":
        return cls(basis, {i: coeff})

    def __add__(self, other: "Element") -> "Element":
        comp = dict(self.components)
        for i, value in other.components.items():
            acc = comp.get(i)
            comp[i] = value if acc is None else acc + value
        return Element(self.basis, comp)

    def __neg__(self) -> "Element":
        return Element(self.basis, {i: -v for i, v in self.components.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, r) -> "Element":
        return Element(self.basis, {i: r * v for i, v in self.components.items()})

    def __rmul__(self, r):
        return self.scale(r)

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.basis == other.basis and self.components == other.components
        return NotImplemented

    def __hash__(self):
        return hash((self.basis, tuple(sorted(self.components.items(), key=lambda kv: kv[0]))))

    def is_zero(self) -> bool:
        return not self.components

    def __bool__(self):
        return bool(self.components)

    def valuation(self):
        from math import inf

        if not self.components:
            return inf
        return min(v.valuation() for v in self.components.values())

    def total_degrees(self) -> set:
        """Set of total degrees (basis degree + coefficient degree) present."""
        out = set()
        for i, value in self.components.items():
            base = self.basis.degree(i)
            out |= {base + d for d in value.degrees()}
        return out

    def is_homogeneous(self, degree: int) -> bool:
        return self.total_degrees() <= {degree}

    def unit_scalar_split(self):
        """Split off the unit component: returns (c, rest) with self = c*1 + rest."""
        unit = self.basis.require_unit()
        comp = dict(self.components)
        c = comp.pop(unit, None)
        return c, Element(self.basis, comp)

    def sorted_components(self):
        return sorted(self.components.items(), key=lambda kv: kv[0])

    def text(self, basis_names=True) -> str:
        if not self.components:
            return "0"
        parts = []
        for i, value in self.sorted_components():
            name = self.basis.names[i] if basis_names else str(i)
            parts.append("(%s)*%s" % (value.text(), name))
        return " + ".join(parts)

    def __repr__(self):
        return "Element(%s)" % self.text()


def word_shifted_degree(basis: GradedBasis, word: Word) -> int:
    return sum(basis.degree(i) - 1 for i in word)


def add_term(acc: WordSum, word: Word, value: RingElement) -> None:
    if not value:
        return
    old = acc.get(word)
    new = value if old is None else old + value
    if new:
        acc[word] = new
    elif old is not None:
        del acc[word]


def substitute(
    basis: GradedBasis,
    word: Word,
    coeff: RingElement,
    position: int,
    span: int,
    value: Element,
) -> WordSum:
    """Replace word[position:position+span] by an Element, with Koszul sign.

    The replaced span is removed and each component of ``value`` is inserted
    in its place; the coefficient picks up (-1)^{maltese(word, position)} and
    the component's ring coefficient.  Returns a word sum.
    """
    if position < 0 or span < 0 or position + span > len(word):
        raise ConfigurationError("substitution span out of range")
    degrees = [basis.degree(i) for i in word]
    sign = -1 if maltese(degrees, position) % 2 else 1
    out: WordSum = {}
    signed = coeff.scale(sign) if sign < 0 else coeff
    for comp, cval in value.components.items():
        new_word = word[:position] + (comp,) + word[position + span:]
        add_term(out, new_word, signed * cval)
    return out


def rotate_word(basis: GradedBasis, word: Word) -> Tuple[Word, int]:
    """One cyclic rotation (last factor to the front) and its Koszul sign."""
    degrees = [basis.degree(i) for i in word]
    sign = koszul_sign_cyclic(degrees)
    return (word[-1],) + word[:-1], sign


def words_over(letters: Sequence[int], length: int):
    """All tuples of the given length over the letter set, in order."""
    if length == 0:
        yield ()
        return
    for head in words_over(letters, length - 1):
        for i in letters:
            yield head + (i,)
