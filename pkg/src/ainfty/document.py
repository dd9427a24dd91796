"""Versioned JSON document schema: algebras, towers, candidates, paths.

One self-contained document per run.  Exact rationals are serialized as
fraction strings ("3/4"), never decimals.  Structure-constant outputs carry
only ground-field coefficients and s/t exponents; the T- and e-content of an
operation comes from its monoid label.  All load-time invariants are
enforced here with (location, message) diagnostics collected into a single
DocumentError.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional

from .ainfty import AInftyAlgebra
from .coeff import Monomial, Poly, RingElement, RingSpec, as_fraction
from .errors import ConfigurationError, DocumentError
from .graded import Element, GradedBasis
from .hochschild import CocycleTower, Functional
from .potential import GaugePath

SCHEMA_VERSION = 1


@dataclass
class LoadedDocument:
    name: str
    algebra: AInftyAlgebra
    towers: Dict[str, CocycleTower] = field(default_factory=dict)
    candidates: Dict[str, Element] = field(default_factory=dict)
    gauge_path: Optional[GaugePath] = None
    m_minus_one: Optional[RingElement] = None
    gw_tilde: Optional[RingElement] = None
    wall_pair: Optional[tuple] = None
    right_inverse: Optional[Dict[int, Element]] = None


class _Collector:
    def __init__(self):
        self.items = []

    def error(self, location, message):
        self.items.append((location, message))

    def raise_if_any(self):
        if self.items:
            raise DocumentError(self.items)


def _fraction(value, where, errors, default=None):
    if value is None:
        return default
    try:
        return as_fraction(value)
    except (ConfigurationError, ValueError, ZeroDivisionError):
        errors.error(where, "not an exact fraction: %r" % (value,))
        return default


def _term_value(term, spec, where, errors, allow_poly=False, forbid_energy=False):
    """One serialized monomial term -> (Monomial, scalar)."""
    lam = _fraction(term.get("T", "0"), where + ".T", errors, Fraction(0))
    e = term.get("e", 0)
    s = term.get("s", 0)
    t = term.get("t", [0] * spec.num_t)
    if forbid_energy and (lam != 0 or e != 0):
        errors.error(where, "structure constants must not carry T or e exponents")
        lam, e = Fraction(0), 0
    if "poly" in term:
        if not allow_poly:
            errors.error(where, "polynomial coefficients are only valid in gauge paths")
            return None
        try:
            value = Poly([as_fraction(c) for c in term["poly"]])
        except (ConfigurationError, ValueError):
            errors.error(where + ".poly", "not a list of exact fractions")
            return None
    else:
        value = _fraction(term.get("coeff", "1"), where + ".coeff", errors)
        if value is None:
            return None
    try:
        mono = spec.monomial(lam=lam, e=int(e), s=int(s), t=[int(a) for a in t])
    except (ConfigurationError, ValueError, TypeError):
        errors.error(where, "invalid monomial exponents")
        return None
    return mono, value


def _ring_element(terms, spec, where, errors, allow_poly=False, forbid_energy=False):
    acc = {}
    for i, term in enumerate(terms or []):
        parsed = _term_value(term, spec, "%s[%d]" % (where, i), errors,
                             allow_poly=allow_poly, forbid_energy=forbid_energy)
        if parsed is None:
            continue
        mono, value = parsed
        acc[mono] = (acc[mono] + value) if mono in acc else value
    return RingElement(spec, acc)


def _element(entries, algebra, where, errors, allow_poly=False):
    comp = {}
    for i, entry in enumerate(entries or []):
        name = entry.get("basis")
        if name not in algebra.basis.names:
            errors.error("%s[%d].basis" % (where, i), "unknown basis element %r" % (name,))
            continue
        idx = algebra.basis.index(name)
        parsed = _term_value(entry, algebra.spec, "%s[%d]" % (where, i), errors,
                             allow_poly=allow_poly)
        if parsed is None:
            continue
        mono, value = parsed
        piece = RingElement(algebra.spec, {mono: value})
        comp[idx] = comp[idx] + piece if idx in comp else piece
    return Element(algebra.basis, comp)


def retruncate(doc: LoadedDocument, energy) -> LoadedDocument:
    """Rebuild the document with a smaller energy cutoff.

    Truncation only discards information, so the new cutoff must not exceed
    the document's own.
    """
    energy = as_fraction(energy)
    algebra = doc.algebra
    if energy > algebra.spec.cutoff:
        raise DocumentError([("--emax", "cannot exceed the document cutoff %s"
                              % algebra.spec.cutoff)])
    spec = algebra.spec.with_cutoff(energy)

    def cut(value: RingElement) -> RingElement:
        return RingElement(spec, value.terms)

    ops = {
        key: {word: {i: cut(v) for i, v in out.items()} for word, out in table.items()}
        for key, table in algebra.ops.items()
    }
    new_algebra = AInftyAlgebra(
        basis=algebra.basis, monoid=algebra.monoid, ops=ops, spec=spec,
        k_max=algebra.k_max, l_max=algebra.l_max, n_max=algebra.n_max,
        higher_arities_zero=algebra.higher_arities_zero, name=algebra.name,
    )
    out = LoadedDocument(name=doc.name, algebra=new_algebra)
    for name, tower in doc.towers.items():
        levels = tuple(
            Functional(algebra.basis, spec, {k: cut(v) for k, v in psi.table.items()})
            for psi in tower.levels
        )
        out.towers[name] = CocycleTower(levels, name=tower.name)
    for name, element in doc.candidates.items():
        out.candidates[name] = Element(
            algebra.basis, {i: cut(v) for i, v in element.components.items()}
        )
    if doc.gauge_path is not None:
        out.gauge_path = GaugePath(Element(
            algebra.basis,
            {i: cut(v) for i, v in doc.gauge_path.element.components.items()},
        ))
    if doc.m_minus_one is not None:
        out.m_minus_one = cut(doc.m_minus_one)
    if doc.gw_tilde is not None:
        out.gw_tilde = cut(doc.gw_tilde)
    out.wall_pair = doc.wall_pair
    if doc.right_inverse is not None:
        out.right_inverse = {
            i: Element(algebra.basis, {j: cut(v) for j, v in el.components.items()})
            for i, el in doc.right_inverse.items()
        }
    return out


def load(path) -> LoadedDocument:
    try:
        with open(path) as handle:
            raw = json.load(handle)
    except json.JSONDecodeError as exc:
        raise DocumentError([("%s:%d:%d" % (path, exc.lineno, exc.colno), exc.msg)])
    except OSError as exc:
        raise DocumentError([(str(path), str(exc))])
    return load_dict(raw)


def load_dict(raw: dict) -> LoadedDocument:
    errors = _Collector()
    if raw.get("version") != SCHEMA_VERSION:
        errors.error("version", "missing or unsupported schema version (expected %d)"
                     % SCHEMA_VERSION)
    if raw.get("field", "rational") != "rational":
        errors.error("field", "only the rational ground field is supported")
    errors.raise_if_any()

    coeffs = raw.get("coefficients", {})
    cutoffs = raw.get("cutoffs", {})
    energy = _fraction(cutoffs.get("energy", "10"), "cutoffs.energy", errors, Fraction(10))
    try:
        spec = RingSpec(
            s_degree=int(coeffs.get("s_degree", 2)),
            t_degrees=tuple(int(d) for d in coeffs.get("t_degrees", [])),
            cutoff=energy,
        )
    except ConfigurationError as exc:
        errors.error("coefficients", str(exc))
        errors.raise_if_any()
    errors.raise_if_any()

    names, degrees, unit = [], [], None
    for i, entry in enumerate(raw.get("basis", [])):
        names.append(entry.get("name", "b%d" % i))
        degrees.append(int(entry.get("degree", 0)))
        if entry.get("unit"):
            if unit is not None:
                errors.error("basis[%d]" % i, "more than one unit designated")
            unit = i
    if unit is None:
        errors.error("basis", "no unit designated")
    errors.raise_if_any()
    try:
        basis = GradedBasis(tuple(names), tuple(degrees), unit=unit)
    except ConfigurationError as exc:
        errors.error("basis", str(exc))
        errors.raise_if_any()

    monoid = []
    for i, entry in enumerate(raw.get("monoid", [])):
        lam = _fraction(entry.get("energy", "0"), "monoid[%d].energy" % i, errors, Fraction(0))
        monoid.append((lam, int(entry.get("index", 0))))
    if not monoid:
        monoid = [(Fraction(0), 0)]

    ops: dict = {}
    for i, entry in enumerate(raw.get("operations", [])):
        where = "operations[%d]" % i
        arity = int(entry.get("arity", len(entry.get("inputs", []))))
        bidx = int(entry.get("monoid", 0))
        if bidx >= len(monoid):
            errors.error(where + ".monoid", "monoid index out of range")
            continue
        inputs = entry.get("inputs", [])
        if len(inputs) != arity:
            errors.error(where, "arity %d but %d inputs" % (arity, len(inputs)))
            continue
        try:
            word = tuple(basis.index(n) for n in inputs)
        except ConfigurationError as exc:
            errors.error(where + ".inputs", str(exc))
            continue
        out = {}
        for j, term in enumerate(entry.get("output", [])):
            name = term.get("basis")
            if name not in basis.names:
                errors.error("%s.output[%d]" % (where, j), "unknown basis element %r" % (name,))
                continue
            parsed = _term_value(term, spec, "%s.output[%d]" % (where, j), errors,
                                 forbid_energy=True)
            if parsed is None:
                continue
            mono, value = parsed
            idx = basis.index(name)
            piece = RingElement(spec, {mono: value})
            out[idx] = out[idx] + piece if idx in out else piece
        table = ops.setdefault((arity, bidx), {})
        if word in table:
            errors.error(where, "duplicate table entry for this input word")
        table[word] = out
    errors.raise_if_any()

    try:
        algebra = AInftyAlgebra(
            basis=basis,
            monoid=tuple(monoid),
            ops=ops,
            spec=spec,
            k_max=int(cutoffs.get("arity", 6)),
            l_max=int(cutoffs.get("word_length", 4)),
            n_max=int(cutoffs.get("n_max", 5)),
            higher_arities_zero=bool(raw.get("higher_arities_zero", True)),
            name=str(raw.get("name", "algebra")),
        )
    except ConfigurationError as exc:
        raise DocumentError([("operations", str(exc))])

    doc = LoadedDocument(name=algebra.name, algebra=algebra)

    for i, tower_raw in enumerate(raw.get("towers", [])):
        where = "towers[%d]" % i
        levels = []
        for j, level_raw in enumerate(tower_raw.get("levels", [])):
            table = {}
            for k, entry in enumerate(level_raw.get("entries", [])):
                loc = "%s.levels[%d].entries[%d]" % (where, j, k)
                mname = entry.get("module")
                if mname not in basis.names:
                    errors.error(loc + ".module", "unknown basis element %r" % (mname,))
                    continue
                try:
                    word = tuple(basis.index(n) for n in entry.get("word", []))
                except ConfigurationError as exc:
                    errors.error(loc + ".word", str(exc))
                    continue
                value = _ring_element(entry.get("value", []), spec, loc + ".value", errors)
                table[(basis.index(mname), word)] = value
            try:
                levels.append(Functional(basis, spec, table))
            except ConfigurationError as exc:
                errors.error("%s.levels[%d]" % (where, j), str(exc))
        if levels:
            try:
                tower = CocycleTower(tuple(levels), name=tower_raw.get("name", "tower%d" % i))
                doc.towers[tower.name] = tower
            except ConfigurationError as exc:
                errors.error(where, str(exc))

    for i, cand in enumerate(raw.get("candidates", [])):
        where = "candidates[%d]" % i
        name = cand.get("name", "b%d" % i)
        doc.candidates[name] = _element(cand.get("element", []), algebra, where, errors)

    if "gauge_path" in raw:
        element = _element(raw["gauge_path"].get("element", []), algebra,
                           "gauge_path.element", errors, allow_poly=True)
        # promote constant scalars so the whole path lives over polynomials
        doc.gauge_path = GaugePath(Element(
            basis, {i: v.extend_path() for i, v in element.components.items()}
        ))

    if "m_minus_one" in raw:
        doc.m_minus_one = _ring_element(raw["m_minus_one"], spec, "m_minus_one", errors)
    if "gw_tilde" in raw:
        doc.gw_tilde = _ring_element(raw["gw_tilde"], spec, "gw_tilde", errors)

    pair = raw.get("wall_crossing_pair")
    if pair:
        minus, plus = pair.get("minus"), pair.get("plus")
        for role, cname in (("minus", minus), ("plus", plus)):
            if cname not in doc.candidates:
                errors.error("wall_crossing_pair.%s" % role,
                             "unknown candidate %r" % (cname,))
        doc.wall_pair = (minus, plus)

    if "right_inverse" in raw:
        table = {}
        for name, entries in raw["right_inverse"].items():
            where = "right_inverse.%s" % name
            if name not in basis.names:
                errors.error(where, "unknown basis element %r" % (name,))
                continue
            table[basis.index(name)] = _element(entries, algebra, where, errors)
        doc.right_inverse = table

    errors.raise_if_any()
    return doc
