"""Shared test utilities: seeded random values and small corpora."""

from __future__ import annotations

import random
from fractions import Fraction

from expoly import EPoly, gaussian


def random_scalar(rng: random.Random, span: int = 6, gaussian_ok: bool = False):
    re = Fraction(rng.randint(-span, span), rng.randint(1, 4))
    if gaussian_ok and rng.random() < 0.3:
        return gaussian(re, Fraction(rng.randint(-span, span),
                                     rng.randint(1, 4)))
    return re


def random_mono(rng: random.Random, nvars: int, max_deg: int = 2):
    return tuple(rng.randint(0, max_deg) for _ in range(nvars))


def random_epoly(rng: random.Random, nvars: int, height: int = 0,
                 max_terms: int = 3, gaussian_ok: bool = False) -> EPoly:
    """A random value of height at most `height`, kept deliberately small."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        mono = random_mono(rng, nvars)
        if height > 0 and rng.random() < 0.6:
            exponent = random_zero_const(rng, nvars, rng.randint(0, height - 1),
                                         max_terms=2, gaussian_ok=gaussian_ok)
            if exponent.is_zero():
                exponent = None
        else:
            exponent = None
        coeff = random_scalar(rng, gaussian_ok=gaussian_ok)
        if coeff == 0:
            continue
        key = (mono, exponent)
        terms[key] = terms.get(key, 0) + coeff
    return EPoly(nvars, terms)


def random_zero_const(rng: random.Random, nvars: int, height: int = 0,
                      max_terms: int = 3, gaussian_ok: bool = False) -> EPoly:
    p = random_epoly(rng, nvars, height, max_terms, gaussian_ok)
    return p - p.constant_term()


def random_nonzero_zero_const(rng: random.Random, nvars: int,
                              height: int = 0) -> EPoly:
    while True:
        p = random_zero_const(rng, nvars, height)
        if not p.is_zero():
            return p


def random_evaluable_arg(rng: random.Random, nvars: int, height: int) -> EPoly:
    """An exponent argument whose value lands in the maximal ideal at any
    zero-constant series point: every term carries a positive X-degree."""
    terms = {}
    for _ in range(rng.randint(1, 2)):
        mono = tuple(rng.randint(0, 2) for _ in range(nvars))
        if sum(mono) == 0:
            j = rng.randrange(nvars)
            mono = tuple(1 if k == j else 0 for k in range(nvars))
        exponent = None
        if height > 0 and rng.random() < 0.5:
            exponent = random_evaluable_arg(rng, nvars, height - 1)
        coeff = random_scalar(rng)
        if coeff:
            terms[(mono, exponent)] = terms.get((mono, exponent), 0) + coeff
    p = EPoly(nvars, terms)
    if p.is_zero():
        return EPoly.var(nvars, 0)
    return p


def random_evaluable(rng: random.Random, nvars: int, height: int) -> EPoly:
    """A random value every E-node of which evaluates inside the
    exponential domain at zero-constant series points."""
    terms = {}
    for _ in range(rng.randint(1, 3)):
        mono = random_mono(rng, nvars)
        exponent = None
        if height > 0 and rng.random() < 0.6:
            exponent = random_evaluable_arg(rng, nvars, height - 1)
        coeff = random_scalar(rng)
        if coeff:
            terms[(mono, exponent)] = terms.get((mono, exponent), 0) + coeff
    return EPoly(nvars, terms)
