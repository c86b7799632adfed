"""Built-in identities with their pipeline settings."""

from __future__ import annotations

from dataclasses import dataclass

from .hyperterm import TheoremSpec
from .schema import spec_from_json, spec_to_json


@dataclass(frozen=True)
class TheoremEntry:
    """A database identity and how to run the prover on it.

    ``extensions`` lists ``(param, times)`` domain extensions applied after
    the main proof.  ``numeric_only`` holds the reason when symbolic proof
    is switched off for the entry; it is ``None`` for every shipped entry.
    """

    spec: TheoremSpec
    shift: tuple[str, int] | None = None
    extensions: tuple[tuple[str, int], ...] = ()
    expected: tuple[str, ...] = ()
    expected_before_extension: tuple[str, ...] | None = None
    numeric_only: str | None = None

    @property
    def name(self) -> str:
        return self.spec.name


def _g(*pairs):
    return [{"sign": s, "arg": a} for s, a in pairs]


_SOURCES = [
    (
        {
            "name": "kummer",
            "parameters": ["a", "b"],
            "upper": ["a", "b"],
            "lower": ["1+a-b"],
            "z": "-1",
            "rhs_gammas": _g((1, "1+a/2"), (1, "1+a-b"), (-1, "1+a"), (-1, "1+a/2-b")),
            "rhs_constant": "1",
            "conditions": ["Re(b) < 1"],
        },
        dict(shift=("a", 2), extensions=(("b", 1),), expected=("Re(b) < 1",),
             expected_before_extension=("Re(b) < 0",)),
    ),
    (
        {
            "name": "bailey",
            "parameters": ["a", "b"],
            "upper": ["a", "1-a"],
            "lower": ["b"],
            "z": "1/2",
            "rhs_gammas": _g((1, "b/2"), (1, "1/2+b/2"), (-1, "a/2+b/2"), (-1, "1/2-a/2+b/2")),
            "rhs_constant": "1",
            "conditions": [],
        },
        dict(shift=("b", 2)),
    ),
    (
        {
            "name": "dixon",
            "parameters": ["a", "b", "c"],
            "upper": ["a", "b", "c"],
            "lower": ["1+a-b", "1+a-c"],
            "z": "1",
            "rhs_gammas": _g((1, "1+a-b"), (1, "1+a-c"), (1, "1+a/2"), (1, "1+a/2-b-c"),
                             (-1, "1+a"), (-1, "1+a/2-b"), (-1, "1+a/2-c"), (-1, "1+a-b-c")),
            "rhs_constant": "1",
            "conditions": ["Re(2+a-2b-2c) > 0"],
        },
        dict(shift=("a", 2), expected=("Re(2+a-2b-2c) > 0",)),
    ),
    (
        {
            "name": "gauss",
            "parameters": ["a", "b", "c"],
            "upper": ["a", "b"],
            "lower": ["c"],
            "z": "1",
            "rhs_gammas": _g((1, "c"), (1, "c-a-b"), (-1, "c-a"), (-1, "c-b")),
            "rhs_constant": "1",
            "conditions": ["Re(c-a-b) > 0"],
        },
        dict(shift=("c", 1), expected=("Re(c-a-b) > 0",)),
    ),
    (
        {
            "name": "dixon-4f3",
            "parameters": ["a", "b", "c"],
            "upper": ["a", "1+a/2", "b", "c"],
            "lower": ["a/2", "1+a-b", "1+a-c"],
            "z": "-1",
            "rhs_gammas": _g((1, "1+a-b"), (1, "1+a-c"), (-1, "1+a"), (-1, "1+a-b-c")),
            "rhs_constant": "1",
            "conditions": ["Re(2+a-2b-2c) > 0"],
        },
        dict(shift=("a", 2), expected=("Re(2+a-2b-2c) > 0",)),
    ),
    (
        {
            "name": "dixon-5f4",
            "parameters": ["a", "b", "c", "d"],
            "upper": ["a", "1+a/2", "b", "c", "d"],
            "lower": ["a/2", "1+a-b", "1+a-c", "1+a-d"],
            "z": "1",
            "rhs_gammas": _g((1, "1+a-b"), (1, "1+a-c"), (1, "1+a-d"), (1, "1+a-b-c-d"),
                             (-1, "1+a"), (-1, "1+a-b-c"), (-1, "1+a-b-d"), (-1, "1+a-c-d")),
            "rhs_constant": "1",
            "conditions": ["Re(1+a-b-c-d) > 0"],
        },
        dict(shift=("a", 2), expected=("Re(1+a-b-c-d) > 0",)),
    ),
]


def _build() -> tuple[TheoremEntry, ...]:
    out = []
    for source, opts in _SOURCES:
        out.append(TheoremEntry(spec_from_json(source), **opts))
    names = [e.name for e in out]
    assert len(set(names)) == len(names)
    return tuple(out)


ENTRIES: tuple[TheoremEntry, ...] = _build()


def names() -> list[str]:
    return [e.name for e in ENTRIES]


def get(name: str) -> TheoremEntry:
    for e in ENTRIES:
        if e.name == name:
            return e
    raise KeyError(f"unknown theorem {name!r}; known: {', '.join(names())}")


def to_json(entry: TheoremEntry) -> dict:
    return {
        "spec": spec_to_json(entry.spec),
        "shape": entry.spec.shape,
        "shift": list(entry.shift) if entry.shift else None,
        "extensions": [list(x) for x in entry.extensions],
        "expected": list(entry.expected),
        "numeric_only": entry.numeric_only,
    }


__all__ = ["ENTRIES", "TheoremEntry", "get", "names", "to_json"]
