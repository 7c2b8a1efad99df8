"""Built-in example data: named pairs of a root datum and a cocharacter.

Each entry is a split reductive datum together with the minuscule-type
cocharacter whose parabolic drives the rest of the library.  The names are
stable identifiers used by the command line.
"""

from __future__ import annotations

from .parabolic import ParabolicData
from .rootdata import RootDatum, Vec, product_datum, type_A, type_C


def _gl2() -> RootDatum:
    return type_A(1, reductive=True, label="GL2")


_BUILDERS = {
    "A1-modular": lambda: (_gl2(), Vec((1, 0))),
    "A1xA1-hilbert": lambda: (
        product_datum([_gl2(), _gl2()], label="GL2xGL2"),
        Vec((1, 0, 1, 0)),
    ),
    "A2-picard-like": lambda: (
        type_A(2, reductive=True, label="GL3"),
        Vec((1, 0, 0)),
    ),
    "C2-siegel": lambda: (
        type_C(2, reductive=True, label="GSp4"),
        Vec((1, 1, 1)),
    ),
    "C3-siegel": lambda: (
        type_C(3, reductive=True, label="GSp6"),
        Vec((1, 1, 1, 1)),
    ),
}


def builtin_names() -> tuple[str, ...]:
    return tuple(sorted(_BUILDERS))


def builtin_catalog() -> tuple[tuple[str, RootDatum, Vec], ...]:
    """All built-in (name, datum, cocharacter) triples, validated on load."""
    out = []
    for name in builtin_names():
        datum, mu = _BUILDERS[name]()
        ParabolicData(datum, mu)
        out.append((name, datum, mu))
    return tuple(out)


def builtin(name: str) -> tuple[RootDatum, Vec]:
    """Look up one built-in pair by name."""
    try:
        build = _BUILDERS[name]
    except KeyError:
        known = ", ".join(builtin_names())
        raise ValueError(f"unknown builtin {name!r} (known: {known})") from None
    return build()
