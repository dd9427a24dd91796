"""Curved gapped filtered A-infinity algebras over the Novikov-type ring.

Structure constants are stored per (arity k, monoid element beta) on the
T-free part and assembled as m_k = sum_beta T^{lam(beta)} e^{mu(beta)/2}
m_{k,beta} at evaluation time, so the gapped structure stays explicit.

Conventions:
  * operations act on the shift A[1]; m_k has uniform degree 2 - k;
  * the coderivation sign at insertion position i is (-1)^{maltese_i} with
    maltese_i the sum of shifted degrees of the first i inputs;
  * the full coderivation includes the curvature insertions (arity 0), so
    "coderivation squares to zero" is equivalent to the curved relations.

The dual bimodule machinery at the bottom of this module (diagonal and dual
differentials, bimodule words) backs ``check_bimodule_hom`` and is shared
with the pairing layer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import inf
from typing import Dict, NamedTuple, Optional, Sequence, Tuple

from .coeff import RingElement, RingSpec, as_fraction
from .errors import ConfigurationError, DivergenceError
from .graded import (Element, GradedBasis, Word, WordSum, add_term, maltese,
                     words_over)
from .report import Report


class MonoidElement(NamedTuple):
    """Energy-index pair (lam, mu) with lam >= 0 rational and mu even."""

    lam: Fraction
    mu: int


OpTable = Dict[Word, Dict[int, RingElement]]


@dataclass
class AInftyAlgebra:
    basis: GradedBasis
    monoid: tuple
    ops: Dict[Tuple[int, int], OpTable]
    spec: RingSpec
    k_max: int = 6
    l_max: int = 4
    n_max: int = 5
    higher_arities_zero: bool = True
    name: str = "algebra"
    _m_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.monoid = tuple(MonoidElement(as_fraction(l), int(m)) for l, m in self.monoid)
        self.validate()

    # -- load-time validation ------------------------------------------------

    def validate(self):
        unit = self.basis.require_unit()
        for idx, beta in enumerate(self.monoid):
            if beta.lam < 0:
                raise ConfigurationError("monoid element %d has negative energy" % idx)
            if beta.mu % 2 != 0:
                raise ConfigurationError("monoid element %d has odd index mu" % idx)
            if beta.lam == 0 and beta.mu != 0:
                raise ConfigurationError(
                    "monoid element %d: zero energy forces the neutral element (0,0)" % idx
                )
        neutral = [i for i, b in enumerate(self.monoid) if b.lam == 0]
        for (k, bidx), table in self.ops.items():
            if not 0 <= bidx < len(self.monoid):
                raise ConfigurationError(
                    "operation table (k=%d) labeled by unknown monoid element %d"
                    % (k, bidx)
                )
            if k == 0 and bidx in neutral:
                for word, out in table.items():
                    if any(v for v in out.values()):
                        raise ConfigurationError(
                            "m[0] at the neutral monoid element must be zero"
                        )
            beta = self.monoid[bidx]
            for word, out in table.items():
                if len(word) != k:
                    raise ConfigurationError(
                        "operation table (k=%d) keyed by a word of length %d" % (k, len(word))
                    )
                want = sum(self.basis.degree(i) for i in word) + 2 - k - beta.mu
                for comp, value in out.items():
                    for mono in value.terms:
                        if mono.lam != 0 or mono.e != 0:
                            raise ConfigurationError(
                                "structure constants must be T- and e-free; "
                                "energy and index come from the monoid label"
                            )
                    got = {self.basis.degree(comp) + d for d in value.degrees()}
                    if got - {want}:
                        raise ConfigurationError(
                            "m_{%d,beta%d}%s is not degree-homogeneous: "
                            "output degree %s, expected %d"
                            % (k, bidx, tuple(self.basis.names[i] for i in word),
                               sorted(got), want)
                        )
        if not self.higher_arities_zero:
            stored = {k for (k, _) in self.ops}
            if stored and max(stored) < self.k_max + 1:
                raise ConfigurationError(
                    "relation checking at arity %d needs tables up to %d; "
                    "either supply them or mark higher arities zero"
                    % (self.k_max, self.k_max + 1)
                )

    # -- evaluation ----------------------------------------------------------

    def stored_arities(self) -> set:
        return {k for (k, _) in self.ops}

    def max_stored_arity(self) -> int:
        arities = self.stored_arities()
        return max(arities) if arities else 0

    def _check_arity(self, k: int):
        if k > self.max_stored_arity() and not self.higher_arities_zero:
            raise ConfigurationError(
                "operation of arity %d requested but tables stop at %d"
                % (k, self.max_stored_arity())
            )

    def assembly_coefficient(self, bidx: int) -> RingElement:
        beta = self.monoid[bidx]
        if beta.mu % 2 != 0:
            raise ConfigurationError("odd monoid index")
        return RingElement.monomial(self.spec, 1, lam=beta.lam, e=beta.mu // 2)

    def m_word(self, word: Word) -> Dict[int, RingElement]:
        """Assembled operation of arity len(word) on a pure basis word."""
        cached = self._m_cache.get(word)
        if cached is not None:
            return cached
        k = len(word)
        self._check_arity(k)
        out: Dict[int, RingElement] = {}
        for (arity, bidx), table in self.ops.items():
            if arity != k:
                continue
            entry = table.get(word)
            if not entry:
                continue
            factor = self.assembly_coefficient(bidx)
            for comp, value in entry.items():
                piece = factor * value
                if not piece:
                    continue
                acc = out.get(comp)
                out[comp] = piece if acc is None else acc + piece
        out = {i: v for i, v in out.items() if v}
        self._m_cache[word] = out
        return out

    def m_word_element(self, word: Word) -> Element:
        return Element(self.basis, self.m_word(word))

    def zero_ring(self) -> RingElement:
        return RingElement.zero(self.spec)

    def one_ring(self) -> RingElement:
        return RingElement.one(self.spec)

    def unit_element(self) -> Element:
        return Element.generator(self.basis, self.basis.require_unit(), self.one_ring())

    def element(self, mapping) -> Element:
        comp = {}
        for key, value in mapping.items():
            idx = key if isinstance(key, int) else self.basis.index(key)
            comp[idx] = value
        return Element(self.basis, comp)

    def word_text(self, word: Word) -> str:
        return "(" + ",".join(self.basis.names[i] for i in word) + ")"


def apply_m(algebra: AInftyAlgebra, inputs: Sequence[Element]) -> Element:
    """Multilinear evaluation of the assembled operation on module elements.

    Coefficient variables all have even degree, so ring coefficients commute
    past inputs without signs and can be collected up front.
    """
    k = len(inputs)
    if k > algebra.k_max:
        raise ConfigurationError("arity %d exceeds the arity cutoff %d" % (k, algebra.k_max))
    algebra._check_arity(k)
    acc: Dict[int, RingElement] = {}
    stack = [((), algebra.one_ring())]
    for element in inputs:
        new_stack = []
        for word, coeff in stack:
            for i, value in element.components.items():
                c = coeff * value
                if c:
                    new_stack.append((word + (i,), c))
        stack = new_stack
    for word, coeff in stack:
        for comp, value in algebra.m_word(word).items():
            piece = coeff * value
            if not piece:
                continue
            old = acc.get(comp)
            acc[comp] = piece if old is None else old + piece
    return Element(algebra.basis, acc)


def coderivation(algebra: AInftyAlgebra, words: WordSum, arities=None) -> WordSum:
    """The coderivation extending the operations to tensor words.

    Includes the arity-0 insertions; on the empty word the arity-0 part
    produces the one-letter curvature word.
    """
    out: WordSum = {}
    basis = algebra.basis
    for word, coeff in words.items():
        degrees = [basis.degree(i) for i in word]
        ks = arities if arities is not None else sorted(algebra.stored_arities())
        for k in ks:
            if k > len(word):
                continue
            for i in range(len(word) - k + 1):
                inner = algebra.m_word(word[i : i + k])
                if not inner:
                    continue
                sign = -1 if maltese(degrees, i) % 2 else 1
                signed = coeff.scale(sign) if sign < 0 else coeff
                for comp, value in inner.items():
                    add_term(out, word[:i] + (comp,) + word[i + k :], signed * value)
    return out


def check_ainfty(algebra: AInftyAlgebra, k_max: Optional[int] = None) -> Report:
    """Expand the curved relations on every basis word up to the arity cutoff.

    The residual at a word (x_1..x_n) is
        sum_{l,i} (-1)^{maltese_i} m_{n-l+1}(x_1.., m_l(x_{i+1}..x_{i+l}), ..x_n)
    including the l = 0 curvature insertions; all residuals must vanish
    modulo the energy cutoff.
    """
    k_max = algebra.k_max if k_max is None else k_max
    report = Report("ainfty-relations")
    report.note("E_max", algebra.spec.cutoff)
    report.note("K_max", k_max)
    basis = algebra.basis
    arities = sorted(algebra.stored_arities())
    for n in range(k_max + 1):
        for word in _words(len(basis), n):
            degrees = [basis.degree(i) for i in word]
            residual: Dict[int, RingElement] = {}
            for l in arities:
                if l > n:
                    continue
                for i in range(n - l + 1):
                    inner = algebra.m_word(word[i : i + l])
                    if not inner:
                        continue
                    sign = -1 if maltese(degrees, i) % 2 else 1
                    for comp, value in inner.items():
                        outer_word = word[:i] + (comp,) + word[i + l :]
                        for ocomp, ovalue in algebra.m_word(outer_word).items():
                            piece = value * ovalue
                            if sign < 0:
                                piece = -piece
                            if not piece:
                                continue
                            old = residual.get(ocomp)
                            residual[ocomp] = piece if old is None else old + piece
            residual = {i: v for i, v in residual.items() if v}
            report.tick()
            if residual:
                report.fail(
                    "relation at n=%d %s: residual %s"
                    % (n, algebra.word_text(word), Element(basis, residual).text())
                )
    return report


def check_strict_unit(algebra: AInftyAlgebra, k_max: Optional[int] = None) -> Report:
    """Unit laws for m_2 and vanishing of all other unit insertions."""
    k_max = algebra.k_max if k_max is None else k_max
    report = Report("strict-unit")
    report.note("E_max", algebra.spec.cutoff)
    report.note("K_max", k_max)
    basis = algebra.basis
    unit = basis.require_unit()
    one = algebra.one_ring()
    for i in range(len(basis)):
        report.tick(2)
        left = algebra.m_word((unit, i))
        expect = {i: one}
        if {j: v for j, v in left.items() if v} != expect:
            report.fail("m2(1,%s) != %s" % (basis.names[i], basis.names[i]))
        right = algebra.m_word((i, unit))
        sign = -1 if basis.degree(i) % 2 else 1
        expect = {i: one.scale(sign)}
        if {j: v for j, v in right.items() if v} != expect:
            report.fail("m2(%s,1) != (-1)^{|%s|} %s" % (basis.names[i], basis.names[i], basis.names[i]))
    for k in range(k_max + 1):
        if k == 2:
            continue
        if k > algebra.max_stored_arity() and algebra.higher_arities_zero:
            continue
        for slot in range(k):
            for rest in _words(len(basis), k - 1):
                word = rest[:slot] + (unit,) + rest[slot:]
                report.tick()
                if algebra.m_word(word):
                    report.fail(
                        "m%d%s nonzero with the unit in slot %d"
                        % (k, algebra.word_text(word), slot)
                    )
    return report


def _words(width: int, length: int):
    return words_over(range(width), length)


def _tuples(letters: Sequence[int], length: int):
    return words_over(letters, length)


# -- weak bounding cochains -------------------------------------------------


def _require_candidate(algebra: AInftyAlgebra, b: Element):
    if b and not b.is_homogeneous(1):
        raise ConfigurationError("candidate must be homogeneous of total degree 1")
    if b.valuation() <= 0:
        raise DivergenceError("candidate must have positive valuation")


def curvature(algebra: AInftyAlgebra, b: Element) -> Element:
    """The deformed curvature m_0^b = sum_k m_k(b,...,b), truncated."""
    _require_candidate(algebra, b)
    nu = b.valuation()
    total = Element.zero(algebra.basis)
    k = 0
    while True:
        if k > 0 and nu is not inf and k * nu > algebra.spec.cutoff:
            break
        if k > algebra.max_stored_arity():
            algebra._check_arity(k)
            break
        total = total + apply_m(algebra, [b] * k)
        k += 1
        if nu is inf and k > algebra.max_stored_arity():
            break
    return total


def check_weak_mc(algebra: AInftyAlgebra, b: Element):
    """Is m_0^b a scalar multiple of the unit?  Returns (flag, c, residual)."""
    cur = curvature(algebra, b)
    c, rest = cur.unit_scalar_split()
    if c is None:
        c = algebra.zero_ring()
    return rest.is_zero(), c, rest


def validate_right_inverse(algebra: AInftyAlgebra, h: Dict[int, Element]) -> None:
    """h must satisfy m1 o h = id on the image of m1 (neutral part, degree 2)."""
    basis = algebra.basis
    neutral = [i for i, beta in enumerate(algebra.monoid) if beta.lam == 0]

    def m1_neutral(element: Element) -> Element:
        acc = Element.zero(basis)
        for i, value in element.components.items():
            for (k, bidx), table in algebra.ops.items():
                if k != 1 or bidx not in neutral:
                    continue
                entry = table.get((i,))
                if not entry:
                    continue
                acc = acc + Element(basis, {c: value * v for c, v in entry.items()})
        return acc

    for i in range(len(basis)):
        image = m1_neutral(Element.generator(basis, i, algebra.one_ring()))
        if image.is_zero():
            continue
        back = Element.zero(basis)
        for comp, value in image.components.items():
            if comp not in h:
                raise ConfigurationError(
                    "right-inverse table missing entry for %s" % basis.names[comp]
                )
            back = back + h[comp].scale(value)
        if m1_neutral(back) != image:
            raise ConfigurationError(
                "right-inverse table fails m1 o h = id on the image at %s" % basis.names[i]
            )


@dataclass
class Obstruction:
    level: Fraction
    residual: Element

    def text(self) -> str:
        return "obstruction at energy %s: %s" % (self.level, self.residual.text())


def solve_mc(algebra: AInftyAlgebra, h: Dict[int, Element], seed: Element):
    """Order-by-order correction of the curvature toward a weak MC element.

    Iterates b <- b - h(m_0^b - c 1) on the lowest uncorrected energy level.
    Returns (b, c) on success or an Obstruction naming the first energy level
    whose residual cannot be absorbed through the supplied right inverse.
    """
    validate_right_inverse(algebra, h)
    basis = algebra.basis
    b = seed
    _require_candidate(algebra, b)
    seen_levels = set()
    for _ in range(10_000):
        ok, c, rest = check_weak_mc(algebra, b)
        if ok:
            return b, c
        level = rest.valuation()
        if level in seen_levels:
            return Obstruction(level, rest)
        seen_levels.add(level)
        correction = Element.zero(basis)
        for comp, value in rest.components.items():
            part = value.level_part(level)
            if not part:
                continue
            if comp not in h:
                return Obstruction(level, Element(basis, {comp: part}))
            correction = correction + h[comp].scale(part)
        if correction.is_zero():
            return Obstruction(level, rest)
        b = b - correction
    raise ConfigurationError("energy filtration did not terminate")


# -- dual bimodule ------------------------------------------------------------


@dataclass
class Covector:
    """Functional on the module, tabulated on the basis, with its own degree."""

    table: Dict[int, RingElement]
    degree: int

    @classmethod
    def dual_basis(cls, algebra: AInftyAlgebra, i: int) -> "Covector":
        return cls({i: algebra.one_ring()}, -algebra.basis.degree(i))

    def apply(self, element: Element, zero: Optional[RingElement] = None) -> RingElement:
        acc = None
        for i, value in element.components.items():
            entry = self.table.get(i)
            if not entry:
                continue
            piece = entry * value
            acc = piece if acc is None else acc + piece
        if acc is None:
            for value in self.table.values():
                return RingElement.zero(value.spec)
            if zero is not None:
                return zero
            raise ConfigurationError("cannot type an empty covector")
        return acc


def dual_action(
    algebra: AInftyAlgebra,
    k: int,
    l: int,
    left: Sequence[Element],
    covector: Covector,
    right: Sequence[Element],
    w: Element,
) -> RingElement:
    """Structure maps of the dual bimodule, evaluated on the final argument.

    Computes (-1)^eps covector(m_{k+l+1}(right..., w, left...)) where, with
    L and R the shifted-degree sums of the left and right words and |cov|
    the covector's unshifted degree,

        eps = |cov| + 1 + L (|cov| + R + |w|').

    Crossings of the dual slot count its unshifted degree (dualizing flips
    the shift); this is the unique small convention under which the dual
    differential squares to zero exactly, the bimodule homomorphism check
    closes on generic cocycle towers, and the k = l = 0 case still reduces
    to (-1)^{|cov|'} cov(m_1(w)).
    """
    if len(left) != k or len(right) != l:
        raise ConfigurationError("dual action called with mismatched word sizes")

    def shifted_sum(elements):
        total = 0
        for el in elements:
            degs = el.total_degrees()
            if len(degs) > 1:
                raise ConfigurationError("dual action needs homogeneous inputs")
            if degs:
                total += degs.pop() - 1
        return total

    wdegs = w.total_degrees()
    if len(wdegs) > 1:
        raise ConfigurationError("dual action needs a homogeneous final argument")
    w_shift = (wdegs.pop() - 1) if wdegs else 0
    lsum = shifted_sum(left)
    rsum = shifted_sum(right)
    eps = covector.degree + 1 + lsum * (covector.degree + rsum + w_shift)
    inner = apply_m(algebra, list(right) + [w] + list(left))
    value = covector.apply(inner, zero=algebra.zero_ring())
    return -value if eps % 2 else value


# -- bimodule words and the homomorphism check --------------------------------

BimodWord = Tuple[Word, int, Word]
BimodSum = Dict[BimodWord, RingElement]
DualWord = Tuple[Word, int, int, Word]  # (left, covector degree, argument, right)
DualSum = Dict[DualWord, RingElement]


def _dadd(acc, key, value):
    if not value:
        return
    old = acc.get(key)
    new = value if old is None else old + value
    if new:
        acc[key] = new
    elif old is not None:
        del acc[key]


def delta_diagonal(algebra: AInftyAlgebra, words: BimodSum) -> BimodSum:
    """Bar differential of the diagonal bimodule on (left, y, right) words.

    The bar factors are reduced: insertion outputs hitting the unit in a
    word slot are quotiented away (the module slot is unrestricted).
    """
    basis = algebra.basis
    unit = basis.unit
    out: BimodSum = {}
    arities = sorted(algebra.stored_arities())
    for (lw, y, rw), coeff in words.items():
        ldeg = [basis.degree(i) for i in lw]
        rdeg = [basis.degree(i) for i in rw]
        y_shift = basis.degree(y) - 1
        # operations inside the left word
        for k in arities:
            for i in range(len(lw) - k + 1):
                inner = algebra.m_word(lw[i : i + k])
                sign = -1 if maltese(ldeg, i) % 2 else 1
                for comp, value in inner.items():
                    if comp == unit:
                        continue
                    _dadd(out, (lw[:i] + (comp,) + lw[i + k :], y, rw),
                          coeff.scale(sign) * value)
        # operations inside the right word
        base = maltese(ldeg, len(lw)) + y_shift
        for k in arities:
            for i in range(len(rw) - k + 1):
                inner = algebra.m_word(rw[i : i + k])
                sign = -1 if (base + maltese(rdeg, i)) % 2 else 1
                for comp, value in inner.items():
                    if comp == unit:
                        continue
                    _dadd(out, (lw, y, rw[:i] + (comp,) + rw[i + k :]),
                          coeff.scale(sign) * value)
        # operations absorbing the module slot
        for p in range(len(lw) + 1):
            for q in range(len(rw) + 1):
                word = lw[p:] + (y,) + rw[:q]
                if len(word) > algebra.max_stored_arity() and algebra.higher_arities_zero:
                    continue
                inner = algebra.m_word(word)
                sign = -1 if maltese(ldeg, p) % 2 else 1
                for comp, value in inner.items():
                    _dadd(out, (lw[:p], comp, rw[q:]), coeff.scale(sign) * value)
    return out


def delta_dual(algebra: AInftyAlgebra, words: DualSum) -> DualSum:
    """Bar differential of the dual bimodule on flattened dual words.

    The covector slot is carried as (degree, evaluated argument); absorbing
    a span (x_(p+1)..x_k | cov | z_1..z_q) produces, at each basis argument
    w, the value (-1)^eps cov(m(z_1..z_q, w, x_(p+1)..x_k)) which is again
    evaluated on basis arguments, keeping the representation flat.  Signs
    follow the dual_action convention: the covector crosses with its
    unshifted-degree parity.
    """
    basis = algebra.basis
    unit = basis.unit
    out: DualSum = {}
    arities = sorted(algebra.stored_arities())
    for (lw, cdeg, arg, rw), coeff in words.items():
        ldeg = [basis.degree(i) for i in lw]
        rdeg = [basis.degree(i) for i in rw]
        c_cross = cdeg  # dual slot crosses with unshifted-degree parity
        for k in arities:
            for i in range(len(lw) - k + 1):
                inner = algebra.m_word(lw[i : i + k])
                sign = -1 if maltese(ldeg, i) % 2 else 1
                for comp, value in inner.items():
                    if comp == unit:
                        continue
                    _dadd(out, (lw[:i] + (comp,) + lw[i + k :], cdeg, arg, rw),
                          coeff.scale(sign) * value)
        base = maltese(ldeg, len(lw)) + c_cross
        for k in arities:
            for i in range(len(rw) - k + 1):
                inner = algebra.m_word(rw[i : i + k])
                sign = -1 if (base + maltese(rdeg, i)) % 2 else 1
                for comp, value in inner.items():
                    if comp == unit:
                        continue
                    _dadd(out, (lw, cdeg, arg, rw[:i] + (comp,) + rw[i + k :]),
                          coeff.scale(sign) * value)
        # dual structure maps absorbing the covector slot
        for p in range(len(lw) + 1):
            for q in range(len(rw) + 1):
                absorbed_left = lw[p:]          # letters left of the covector
                absorbed_right = rw[:q]         # letters right of the covector
                prefix_sign = -1 if maltese(ldeg, p) % 2 else 1
                sum_left = sum(basis.degree(i) - 1 for i in absorbed_left)
                sum_right = sum(basis.degree(i) - 1 for i in absorbed_right)
                new_cdeg = cdeg + sum_left + sum_right + 1
                for w in range(len(basis)):
                    word = absorbed_right + (w,) + absorbed_left
                    if len(word) > algebra.max_stored_arity() and algebra.higher_arities_zero:
                        continue
                    inner = algebra.m_word(word)
                    value = inner.get(arg)
                    if not value:
                        continue
                    w_shift = basis.degree(w) - 1
                    eps = c_cross + 1 + sum_left * (c_cross + sum_right + w_shift)
                    sign = prefix_sign * (-1 if eps % 2 else 1)
                    _dadd(out, (lw[:p], new_cdeg, w, rw[q:]),
                          coeff.scale(sign) * value)
    return out


def phi_hat(algebra: AInftyAlgebra, phi, words: BimodSum) -> DualSum:
    """Comodule extension of a bimodule map phi into the dual bimodule.

    phi must expose eval_word(alpha, v, beta, w) -> RingElement and an
    integer ``degree`` (its shift as a map).  The extension is graded: the
    left prefix crossed by phi contributes (-1)^{deg(phi) * prefix}.  The
    produced dual slot carries covector degree deg(phi) plus the shifted
    degrees of the consumed slots.
    """
    basis = algebra.basis
    out: DualSum = {}
    d = phi.degree
    for (lw, y, rw), coeff in words.items():
        ldeg = [basis.degree(i) for i in lw]
        for p in range(len(lw) + 1):
            for q in range(len(rw) + 1):
                alpha = lw[p:]
                beta = rw[:q]
                prefix = maltese(ldeg, p) * d
                sign = -1 if prefix % 2 else 1
                cdeg = d + sum(basis.degree(i) - 1 for i in alpha) \
                    + (basis.degree(y) - 1) + sum(basis.degree(i) - 1 for i in beta)
                for w in range(len(basis)):
                    value = phi.eval_word(alpha, y, beta, w)
                    if not value:
                        continue
                    _dadd(out, (lw[:p], cdeg, w, rw[q:]), coeff.scale(sign) * value)
    return out


def check_bimodule_hom(algebra: AInftyAlgebra, phi, l_max: Optional[int] = None) -> Report:
    """Verify phi-hat o delta = (-1)^{deg(phi)} delta' o phi-hat.

    The quantifier runs over the reduced bar coalgebra: unit-free left and
    right words, with the module slot (and the flattened covector argument)
    ranging over the whole basis.  The graded sign on the right side is the
    usual chain-map sign of a degree-d map.
    """
    l_max = algebra.l_max if l_max is None else l_max
    report = Report("bimodule-hom")
    report.note("E_max", algebra.spec.cutoff)
    report.note("L_max", l_max)
    basis = algebra.basis
    unit = basis.require_unit()
    letters = [i for i in range(len(basis)) if i != unit]
    one = algebra.one_ring()
    gsign = -1 if phi.degree % 2 else 1
    for total in range(l_max + 1):
        for nl in range(total + 1):
            nr = total - nl
            for lw in _tuples(letters, nl):
                for rw in _tuples(letters, nr):
                    for y in range(len(basis)):
                        start: BimodSum = {(lw, y, rw): one}
                        lhs = phi_hat(algebra, phi, delta_diagonal(algebra, start))
                        rhs = delta_dual(algebra, phi_hat(algebra, phi, start))
                        report.tick()
                        diff = dict(lhs)
                        for key, value in rhs.items():
                            _dadd(diff, key, value.scale(-gsign))
                        if diff:
                            key = sorted(diff)[0]
                            report.fail(
                                "word %s|%s|%s: %d unbalanced terms, first %r -> %s"
                                % (algebra.word_text(lw), basis.names[y],
                                   algebra.word_text(rw), len(diff), key,
                                   diff[key].text())
                            )
    return report
