"""Hochschild chains of the diagonal bimodule and the cyclic operators.

A chain is a linear combination of keys (module slot, tensor word) with ring
coefficients.  Reduced chains quotient by words with the unit in a tensor
slot; the module slot itself may be the unit.  All operators below descend
to the reduced quotient (strict unitality), and the reduced flag of the
input decides whether the quotient map is applied to the output.

Sign conventions, all derived from shifted degrees:

  * b (module differential): wrap-around terms absorb a tail block of the
    word together with the module slot; the block pays the Koszul cost of
    crossing everything it moves past (module slot plus the remaining
    prefix).  Interior insertions pay |v|' plus the shifted prefix, and
    include the arity-0 insertions.
  * b' (bar-type differential): the coderivation on the full marked word,
    output marked at slot 0.
  * t: signed rotation of the full marked word (last factor to the front),
    the module marking travelling with the rotation.
  * N = 1 + t + ... + t^{n-1} on length-n marked words.
  * B (reduced only): insert the unit as the new module slot in front of
    every cyclic rotation of the full word.

Only b and B descend to the reduced quotient (b through the unit-law
cancellations, B by its explicit formula).  The bar-type operators b', t, N
are operators on the unreduced space: they coerce their input along the
canonical section of the quotient and always return unreduced chains, and
the rotation identities relating them to b hold there.

The dual side stores towers of finitely supported functionals; the dual
operators are plain precomposition with b and B.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from .ainfty import AInftyAlgebra
from .coeff import RingElement
from .errors import ConfigurationError
from .graded import Word, maltese, words_over as _tuples
from .report import Report

ChainKey = Tuple[int, Word]
ChainTerms = Dict[ChainKey, RingElement]


class HochschildChain:
    """Linear combination of (module slot, tensor word) with a reduced flag."""

    __slots__ = ("basis", "terms", "reduced")

    def __init__(self, basis, terms: Optional[ChainTerms] = None, reduced: bool = True):
        self.basis = basis
        self.reduced = reduced
        clean: ChainTerms = {}
        if terms:
            unit = basis.unit
            for (v, word), coeff in terms.items():
                if not coeff:
                    continue
                if reduced and unit is not None and unit in word:
                    continue
                key = (v, word)
                old = clean.get(key)
                new = coeff if old is None else old + coeff
                if new:
                    clean[key] = new
                elif old is not None:
                    del clean[key]
        self.terms = clean

    @classmethod
    def generator(cls, basis, module: int, word: Word, coeff: RingElement, reduced=True):
        return cls(basis, {(module, tuple(word)): coeff}, reduced)

    def __add__(self, other: "HochschildChain") -> "HochschildChain":
        if self.reduced != other.reduced:
            raise ConfigurationError("cannot mix reduced and unreduced chains")
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            old = terms.get(key)
            new = coeff if old is None else old + coeff
            if new:
                terms[key] = new
            elif old is not None:
                del terms[key]
        return HochschildChain(self.basis, terms, self.reduced)

    def __neg__(self):
        return HochschildChain(self.basis, {k: -v for k, v in self.terms.items()}, self.reduced)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, r):
        return HochschildChain(self.basis, {k: r * v for k, v in self.terms.items()}, self.reduced)

    def unreduced(self) -> "HochschildChain":
        """The canonical unreduced representative (same terms, no quotient)."""
        return HochschildChain(self.basis, self.terms, reduced=False)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, HochschildChain):
            return (self.basis, self.reduced, self.terms) == (
                other.basis,
                other.reduced,
                other.terms,
            )
        return NotImplemented

    def degree_of_key(self, key: ChainKey) -> int:
        v, word = key
        return self.basis.degree(v) + sum(self.basis.degree(i) - 1 for i in word)

    def text(self) -> str:
        if not self.terms:
            return "0"
        names = self.basis.names
        parts = []
        for (v, word), coeff in sorted(self.terms.items()):
            slot = "[%s|%s]" % (names[v], ",".join(names[i] for i in word))
            parts.append("(%s)%s" % (coeff.text(), slot))
        return " + ".join(parts)

    def __repr__(self):
        return "HochschildChain(%s)" % self.text()


def chain_degree(basis, module: int, word: Word) -> int:
    return basis.degree(module) + sum(basis.degree(i) - 1 for i in word)


def hochschild_b(algebra: AInftyAlgebra, chain: HochschildChain) -> HochschildChain:
    """The module differential, wrap-around and interior sums with exact signs."""
    basis = algebra.basis
    out: ChainTerms = {}
    arities = sorted(algebra.stored_arities())
    arity_set = set(arities)
    for (v, word), coeff in chain.terms.items():
        k = len(word)
        shifts = [basis.degree(i) - 1 for i in word]
        v_shift = basis.degree(v) - 1
        # wrap-around: m_{i+j+1}(a_{k-i+1}..a_k, v, a_1..a_j) keeps a_{j+1}..a_{k-i}
        for i in range(k + 1):
            tail = sum(shifts[k - i :])
            for j in range(k - i + 1):
                arity = i + j + 1
                if arity not in arity_set:
                    continue
                inner_word = word[k - i :] + (v,) + word[:j]
                inner = algebra.m_word(inner_word)
                if not inner:
                    continue
                crossed = v_shift + sum(shifts[: k - i])
                sign = -1 if (tail * crossed) % 2 else 1
                signed = coeff.scale(sign) if sign < 0 else coeff
                for comp, value in inner.items():
                    _cadd(out, (comp, word[j : k - i]), signed * value)
        # interior: m_j inserted in the tensor word, arity 0 included
        for arity in arities:
            for p in range(k - arity + 1):
                inner = algebra.m_word(word[p : p + arity])
                if not inner:
                    continue
                sign = -1 if (v_shift + sum(shifts[:p])) % 2 else 1
                signed = coeff.scale(sign) if sign < 0 else coeff
                for comp, value in inner.items():
                    _cadd(out, (v, word[:p] + (comp,) + word[p + arity :]), signed * value)
    return HochschildChain(basis, out, chain.reduced)


def chain_bar(algebra: AInftyAlgebra, chain: HochschildChain) -> HochschildChain:
    """Bar-type differential: coderivation on the full marked word, unreduced."""
    basis = algebra.basis
    out: ChainTerms = {}
    arities = sorted(algebra.stored_arities())
    for (v, word), coeff in chain.terms.items():
        full = (v,) + word
        degrees = [basis.degree(i) for i in full]
        for arity in arities:
            for p in range(len(full) - arity + 1):
                inner = algebra.m_word(full[p : p + arity])
                if not inner:
                    continue
                sign = -1 if maltese(degrees, p) % 2 else 1
                signed = coeff.scale(sign) if sign < 0 else coeff
                for comp, value in inner.items():
                    new_full = full[:p] + (comp,) + full[p + arity :]
                    _cadd(out, (new_full[0], new_full[1:]), signed * value)
    return HochschildChain(basis, out, reduced=False)


def bar_differential(algebra: AInftyAlgebra, words) -> dict:
    """Coderivation on plain (unmarked) tensor words; see ainfty.coderivation."""
    from .ainfty import coderivation

    return coderivation(algebra, words)


def cyclic_t(basis, chain: HochschildChain) -> HochschildChain:
    """Signed rotation of the marked word: the last factor moves to the front."""
    out: ChainTerms = {}
    for (v, word), coeff in chain.terms.items():
        full = (v,) + word
        if len(full) == 1:
            _cadd(out, (v, word), coeff)
            continue
        shifts = [basis.degree(i) - 1 for i in full]
        sign = -1 if (shifts[-1] * sum(shifts[:-1])) % 2 else 1
        rotated = (full[-1],) + full[:-1]
        _cadd(out, (rotated[0], rotated[1:]), coeff.scale(sign) if sign < 0 else coeff)
    return HochschildChain(basis, out, reduced=False)


def operator_N(basis, chain: HochschildChain) -> HochschildChain:
    """Rotation sum 1 + t + ... + t^{n-1} on each length-n component."""
    out: ChainTerms = {}
    for key, coeff in chain.terms.items():
        piece = HochschildChain(basis, {key: coeff}, reduced=False)
        n = 1 + len(key[1])
        for _ in range(n):
            for pkey, pcoeff in piece.terms.items():
                _cadd(out, pkey, pcoeff)
            piece = cyclic_t(basis, piece)
    return HochschildChain(basis, out, reduced=False)


def connes_B_reduced(basis, chain: HochschildChain) -> HochschildChain:
    """Connes operator on reduced chains: unit-marked cyclic rotations."""
    if not chain.reduced:
        raise ConfigurationError(
            "the Connes operator is only available on reduced chains"
        )
    unit = basis.require_unit()
    out: ChainTerms = {}
    for (v, word), coeff in chain.terms.items():
        full = (v,) + word
        n = len(full)
        current = full
        acc = coeff
        for _ in range(n):
            if unit not in current:
                _cadd(out, (unit, current), acc)
            if n == 1:
                break
            shifts = [basis.degree(i) - 1 for i in current]
            sign = -1 if (shifts[-1] * sum(shifts[:-1])) % 2 else 1
            current = (current[-1],) + current[:-1]
            if sign < 0:
                acc = -acc
    return HochschildChain(basis, out, True)


def _cadd(acc: ChainTerms, key: ChainKey, value: RingElement):
    if not value:
        return
    old = acc.get(key)
    new = value if old is None else old + value
    if new:
        acc[key] = new
    elif old is not None:
        del acc[key]


# -- functionals and towers ---------------------------------------------------


class Functional:
    """Finitely supported functional on reduced chains.

    The table maps (module slot, tensor word) to ring values; application to
    a chain pairs coefficients multiplicatively.  ``degree`` is the uniform
    difference deg(value) - deg(chain key) over the support (None for the
    zero functional).
    """

    __slots__ = ("basis", "spec", "table", "degree")

    def __init__(self, basis, spec, table: Optional[ChainTerms] = None):
        self.basis = basis
        self.spec = spec
        self.table: ChainTerms = {}
        if table:
            unit = basis.unit
            for (v, word), value in table.items():
                if not value:
                    continue
                if unit is not None and unit in word:
                    raise ConfigurationError(
                        "functional entry on a non-reduced word (unit in a tensor slot)"
                    )
                self.table[(v, tuple(word))] = value
        self.degree = self._uniform_degree()

    def _uniform_degree(self):
        degs = set()
        for (v, word), value in self.table.items():
            key_deg = chain_degree(self.basis, v, word)
            degs |= {d - key_deg for d in value.degrees()}
        if not degs:
            return None
        if len(degs) > 1:
            raise ConfigurationError(
                "functional is not degree-homogeneous: offsets %s" % sorted(degs)
            )
        return degs.pop()

    def is_zero(self) -> bool:
        return not self.table

    def apply(self, chain: HochschildChain) -> RingElement:
        acc = RingElement.zero(self.spec)
        for key, coeff in chain.terms.items():
            entry = self.table.get(key)
            if entry:
                acc = acc + entry * coeff
        return acc

    def supported_lengths(self) -> set:
        return {len(word) for (_, word) in self.table}

    def scale(self, r) -> "Functional":
        return Functional(self.basis, self.spec, {k: r * v for k, v in self.table.items()})

    def __add__(self, other: "Functional") -> "Functional":
        table = dict(self.table)
        for key, value in other.table.items():
            old = table.get(key)
            new = value if old is None else old + value
            if new:
                table[key] = new
            elif old is not None:
                del table[key]
        return Functional(self.basis, self.spec, table)

    def __sub__(self, other: "Functional") -> "Functional":
        return self + other.scale(-1)

    def sorted_entries(self):
        return sorted(self.table.items())

    def text(self) -> str:
        if not self.table:
            return "0"
        names = self.basis.names
        parts = []
        for (v, word), value in self.sorted_entries():
            parts.append(
                "[%s|%s] -> %s" % (names[v], ",".join(names[i] for i in word), value.text())
            )
        return "; ".join(parts)


class PrecomposedFunctional:
    """Lazy dual image f o op, evaluated chainwise (op in {b, B})."""

    def __init__(self, algebra: AInftyAlgebra, base, operator: str):
        self.algebra = algebra
        self.base = base
        self.operator = operator

    def apply(self, chain: HochschildChain) -> RingElement:
        if self.operator == "b":
            return self.base.apply(hochschild_b(self.algebra, chain))
        if self.operator == "B":
            return self.base.apply(connes_B_reduced(self.algebra.basis, chain))
        raise ConfigurationError("unknown dual operator %r" % self.operator)


def dual_b_star(algebra: AInftyAlgebra, f) -> PrecomposedFunctional:
    return PrecomposedFunctional(algebra, f, "b")


def dual_B_star(algebra: AInftyAlgebra, f) -> PrecomposedFunctional:
    return PrecomposedFunctional(algebra, f, "B")


def tabulate(algebra: AInftyAlgebra, functional, l_max: int) -> Functional:
    """Materialize a lazy functional on all basis chains up to a word length."""
    table: ChainTerms = {}
    for module, word in iter_basis_chains(algebra, l_max):
        chain = HochschildChain.generator(
            algebra.basis, module, word, algebra.one_ring(), reduced=True
        )
        value = functional.apply(chain)
        if value:
            table[(module, word)] = value
    return Functional(algebra.basis, algebra.spec, table)


def iter_basis_chains(algebra: AInftyAlgebra, l_max: int):
    """All (module, reduced word) keys with word length <= l_max, in order."""
    basis = algebra.basis
    unit = basis.require_unit()
    letters = [i for i in range(len(basis)) if i != unit]
    for length in range(l_max + 1):
        for word in _tuples(letters, length):
            for module in range(len(basis)):
                yield module, word





@dataclass
class CocycleTower:
    """Finite tower (psi_0, ..., psi_D) of functionals, one per u-power.

    Homogeneity: each nonzero level i has functional degree d_0 + 2i, where
    d_0 is the degree of the lowest nonzero level.
    """

    levels: tuple
    name: str = "tower"

    def __post_init__(self):
        self.levels = tuple(self.levels)
        if not self.levels:
            raise ConfigurationError("a tower needs at least one level")
        base = None
        for i, psi in enumerate(self.levels):
            if psi.degree is None:
                continue
            if base is None:
                base = psi.degree - 2 * i
            elif psi.degree != base + 2 * i:
                raise ConfigurationError(
                    "tower level %d has degree %d, expected %d"
                    % (i, psi.degree, base + 2 * i)
                )

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    @property
    def psi0(self) -> Functional:
        return self.levels[0]

    def degree(self):
        for i, psi in enumerate(self.levels):
            if psi.degree is not None:
                return psi.degree - 2 * i
        return None

    def is_strict(self) -> bool:
        """Strictly cyclic shape: psi_{i>0} = 0 and psi_0 on length-1 words."""
        if any(not psi.is_zero() for psi in self.levels[1:]):
            return False
        return self.psi0.supported_lengths() <= {1}


def validate_negative_cocycle(
    algebra: AInftyAlgebra, tower: CocycleTower, l_max: Optional[int] = None
) -> Report:
    """Check b* psi_i = B* psi_{i+1} for i < D and b* psi_D = 0, chainwise."""
    l_max = algebra.l_max if l_max is None else l_max
    report = Report("negative-cocycle")
    report.note("E_max", algebra.spec.cutoff)
    report.note("L_max", l_max)
    report.note("depth", tower.depth)
    basis = algebra.basis
    names = basis.names
    for module, word in iter_basis_chains(algebra, l_max):
        chain = HochschildChain.generator(basis, module, word, algebra.one_ring(), reduced=True)
        bc = hochschild_b(algebra, chain)
        Bc = connes_B_reduced(basis, chain)
        for i, psi in enumerate(tower.levels):
            lhs = psi.apply(bc)
            rhs = (
                tower.levels[i + 1].apply(Bc)
                if i + 1 < len(tower.levels)
                else RingElement.zero(algebra.spec)
            )
            report.tick()
            if lhs != rhs:
                report.fail(
                    "level %d at [%s|%s]: b* gives %s, B* of next level gives %s"
                    % (i, names[module], ",".join(names[j] for j in word),
                       lhs.text(), rhs.text())
                )
    return report


def coboundary_tower(algebra: AInftyAlgebra, chis: Sequence[Functional], l_max: int,
                     name="coboundary") -> CocycleTower:
    """The tower psi_i = b* chi_i - B* chi_{i+1}; a cocycle for any input."""
    levels = []
    for i, chi in enumerate(chis):
        psi = tabulate(algebra, dual_b_star(algebra, chi), l_max)
        if i + 1 < len(chis):
            psi = psi - tabulate(algebra, dual_B_star(algebra, chis[i + 1]), l_max)
        levels.append(psi)
    return CocycleTower(tuple(levels), name=name)


def connecting_map(algebra: AInftyAlgebra, chis: Sequence[Functional],
                   l_max: Optional[int] = None, name="connected") -> CocycleTower:
    """Levelwise B* image of positive-column data (u^0 column first).

    If the input satisfies the positive cocycle condition (b* chi_0 = 0 and
    b* chi_m = -B* chi_{m-1}), the output tower validates.
    """
    l_max = algebra.l_max if l_max is None else l_max
    levels = [tabulate(algebra, dual_B_star(algebra, chi), l_max) for chi in chis]
    return CocycleTower(tuple(levels), name=name)
