"""Ordinals below omega^omega in Cantor normal form.

An ordinal is a finite sum  w^k_1 * c_1 + ... + w^k_r * c_r  with strictly
decreasing natural levels k_i and positive natural coefficients c_i.  This is
exactly the value space of the complexity measure on exponential polynomials,
so only comparison, the level-merging sum and printing are needed.
"""

from __future__ import annotations

from functools import total_ordering


@total_ordering
class OrdinalCNF:
    __slots__ = ("_terms",)

    def __init__(self, terms=()):
        merged = {}
        for level, coeff in terms:
            if level < 0 or coeff < 0:
                raise ValueError("levels and coefficients must be natural")
            if coeff:
                merged[level] = merged.get(level, 0) + coeff
        self._terms = tuple(sorted(merged.items(), reverse=True))

    @classmethod
    def from_int(cls, n: int) -> "OrdinalCNF":
        return cls(((0, n),)) if n else cls()

    @classmethod
    def omega_term(cls, level: int, coeff: int = 1) -> "OrdinalCNF":
        return cls(((level, coeff),))

    @property
    def terms(self):
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other):
        if not isinstance(other, OrdinalCNF):
            return NotImplemented
        # The natural (level-merging) sum: w^i*a + w^i*b = w^i*(a+b).
        return OrdinalCNF(self._terms + other._terms)

    def __eq__(self, other):
        if not isinstance(other, OrdinalCNF):
            return NotImplemented
        return self._terms == other._terms

    def __lt__(self, other):
        if not isinstance(other, OrdinalCNF):
            return NotImplemented
        return self._terms < other._terms

    def __hash__(self):
        return hash(self._terms)

    def __repr__(self):
        return f"OrdinalCNF({list(self._terms)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for level, coeff in self._terms:
            if level == 0:
                parts.append(str(coeff))
            else:
                base = "w" if level == 1 else f"w^{level}"
                parts.append(base if coeff == 1 else f"{base}*{coeff}")
        return " + ".join(parts)
