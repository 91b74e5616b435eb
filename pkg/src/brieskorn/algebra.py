"""Finitely presented commutative graded algebras over GF(2).

Generator degrees may be negative and a generator may be inverted by adding an
explicit inverse generator together with the relation ``u * u_inv = 1``.
Because such rings have infinitely many monomials in a single degree, Hilbert
functions are computed with a word-length cap and reported as converged only
when two consecutive caps agree on the whole window.
"""

from __future__ import annotations

import json
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

from .errors import InhomogeneousRelationError, NotConvergedError, ValidationError
from .gf2 import gf2_rank, pack
from .laurent import PeriodicGradedDims, dims_in_window

Monomial = tuple[int, ...]  # exponent vector, one entry per generator


@dataclass(frozen=True)
class GradedPresentation:
    """Generators ``(name, degree)`` and relations, each a GF(2) sum of monomials.

    A monomial in ``relations`` is a sorted tuple of generator names, repeated
    for powers; the empty tuple is 1.
    """

    generators: tuple[tuple[str, int], ...]
    relations: tuple[tuple[tuple[str, ...], ...], ...]
    name: str = ""
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        gens = tuple((str(n), int(d)) for n, d in self.generators)
        names = [n for n, _ in gens]
        dupes = sorted(n for n, c in Counter(names).items() if c > 1)
        if dupes:
            raise ValidationError(f"duplicate generator names: {dupes}")
        index = {n: i for i, n in enumerate(names)}
        rels = []
        for rel in self.relations:
            terms = []
            for mono in rel:
                mono = tuple(sorted(mono))
                unknown = [x for x in mono if x not in index]
                if unknown:
                    raise ValidationError(f"relation uses unknown generator(s) {unknown}")
                terms.append(mono)
            rels.append(tuple(terms))
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relations", tuple(rels))
        object.__setattr__(self, "_index", index)
        for rel in self.relations:
            degrees = {self.monomial_degree(self.exponents(m)) for m in rel}
            if len(degrees) > 1:
                raise InhomogeneousRelationError(
                    f"relation {format_relation(rel)} is not homogeneous "
                    f"(term degrees {sorted(degrees)})"
                )

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.generators)

    def exponents(self, mono: Sequence[str]) -> Monomial:
        e = [0] * len(self.generators)
        for x in mono:
            e[self._index[x]] += 1
        return tuple(e)

    def monomial_degree(self, e: Monomial) -> int:
        return sum(k * d for k, (_, d) in zip(e, self.generators))

    def relation_vectors(self) -> list[tuple[Monomial, ...]]:
        """Relations as exponent vectors, with GF(2) cancellation of repeated terms."""
        out = []
        for rel in self.relations:
            counts = Counter(self.exponents(m) for m in rel)
            terms = tuple(sorted(m for m, c in counts.items() if c % 2))
            if terms:
                out.append(terms)
        return out

    def is_monomial(self) -> bool:
        return all(len(r) == 1 for r in self.relation_vectors())

    def with_degrees(self, degrees: Mapping[str, int]) -> "GradedPresentation":
        gens = tuple((n, degrees.get(n, d)) for n, d in self.generators)
        return GradedPresentation(gens, self.relations, self.name)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "generators": [{"name": n, "degree": d} for n, d in self.generators],
            "relations": [[list(m) for m in rel] for rel in self.relations],
        }

    @classmethod
    def from_json(cls, data: dict) -> "GradedPresentation":
        try:
            gens = [(g["name"], g["degree"]) for g in data["generators"]]
            rels = [[tuple(m) for m in rel] for rel in data["relations"]]
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed presentation: {exc}") from None
        for _, d in gens:
            if isinstance(d, bool) or not isinstance(d, int):
                raise ValidationError(f"generator degree {d!r} is not an integer")
        return cls(tuple(gens), tuple(tuple(r) for r in rels), data.get("name", ""))

    @classmethod
    def load(cls, path: str | os.PathLike) -> "GradedPresentation":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read presentation {path}: {exc}") from None
        return cls.from_json(data)


def format_relation(rel) -> str:
    def fmt(m):
        if not m:
            return "1"
        c = Counter(m)
        return "*".join(x if k == 1 else f"{x}^{k}" for x, k in sorted(c.items()))

    return " + ".join(fmt(m) for m in rel) + " = 0"


# monomial enumeration --------------------------------------------------------


def _all_monomials(ngens: int, cap: int) -> list[Monomial]:
    out: list[Monomial] = []

    def rec(prefix: list[int], i: int, left: int):
        if i == ngens:
            out.append(tuple(prefix))
            return
        for k in range(left + 1):
            prefix.append(k)
            rec(prefix, i + 1, left - k)
            prefix.pop()

    rec([], 0, cap)
    return out


def _by_degree(p: GradedPresentation, monos: Sequence[Monomial]) -> dict[int, list[Monomial]]:
    grouped: dict[int, list[Monomial]] = {}
    for m in monos:
        grouped.setdefault(p.monomial_degree(m), []).append(m)
    for v in grouped.values():
        v.sort()
    return grouped


def _add(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True)
class HilbertResult:
    dims: dict[int, int]
    converged: bool
    cap: int
    unstable_degrees: tuple[int, ...] = ()

    def as_dict(self) -> dict:
        return {
            "converged": self.converged,
            "cap": self.cap,
            "unstable_degrees": list(self.unstable_degrees),
            "dims": {str(d): v for d, v in self.dims.items()},
        }


def _window(lo: int, hi: int) -> list[int]:
    if lo > hi:
        raise ValidationError(f"empty degree window [{lo}, {hi}]")
    return list(range(lo, hi + 1))


def _hilbert_at_cap(
    p: GradedPresentation, degrees: Sequence[int], cap: int, workers: int = 1
) -> dict[int, int]:
    monos = _all_monomials(len(p.generators), cap)
    grouped = _by_degree(p, monos)
    relations = p.relation_vectors()
    rel_info = [
        (r, p.monomial_degree(r[0]), max(sum(m) for m in r)) for r in relations
    ]

    def dim_at(d: int) -> int:
        columns = grouped.get(d, [])
        if not columns:
            return 0
        col = {m: i for i, m in enumerate(columns)}
        rows = []
        for terms, rdeg, rlen in rel_info:
            for mult in grouped.get(d - rdeg, ()):
                if sum(mult) + rlen > cap:
                    continue
                rows.append(pack(col[_add(t, mult)] for t in terms))
        return len(columns) - gf2_rank(rows)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(dim_at, degrees))
    else:
        values = [dim_at(d) for d in degrees]
    return dict(zip(degrees, values))


def _escalate(compute, word_cap: int, max_cap: int | None) -> HilbertResult:
    if word_cap < 1:
        raise ValidationError(f"word cap must be >= 1, got {word_cap}")
    last_cap = word_cap + 1 if max_cap is None else max(max_cap, word_cap + 1)
    prev = compute(word_cap)
    cap = word_cap
    while cap < last_cap:
        cap += 1
        cur = compute(cap)
        unstable = tuple(d for d in cur if cur[d] != prev[d])
        if not unstable:
            return HilbertResult(cur, True, cap)
        prev = cur
    return HilbertResult(prev, False, cap, unstable)


def hilbert_function(
    p: GradedPresentation,
    lo: int,
    hi: int,
    word_cap: int,
    *,
    max_cap: int | None = None,
    workers: int = 1,
) -> HilbertResult:
    """Per-degree GF(2) dimension on [lo, hi].

    At each cap, counts monomials of word length <= cap and subtracts the rank
    of all relation multiples staying within the cap.  Caps are raised one at a
    time from ``word_cap`` (at least one rerun, up to ``max_cap``) until two
    consecutive caps agree on the whole window.
    """
    degrees = _window(lo, hi)
    return _escalate(lambda c: _hilbert_at_cap(p, degrees, c, workers), word_cap, max_cap)


def _standard_monomials_at_cap(p: GradedPresentation, degrees: Sequence[int], cap: int) -> dict[int, int]:
    leads = [r[0] for r in p.relation_vectors()]

    def divisible(m: Monomial) -> bool:
        return any(all(x >= y for x, y in zip(m, lead)) for lead in leads)

    counts = Counter()
    level = {tuple([0] * len(p.generators))}
    seen = set()
    for _ in range(cap + 1):
        level = {m for m in level if m not in seen and not divisible(m)}
        if not level:
            break
        seen |= level
        for m in level:
            counts[p.monomial_degree(m)] += 1
        level = {
            m[:i] + (m[i] + 1,) + m[i + 1 :] for m in level for i in range(len(p.generators))
        }
    return {d: counts.get(d, 0) for d in degrees}


def monomial_quotient_dims(
    p: GradedPresentation,
    lo: int,
    hi: int,
    word_cap: int = 4,
    *,
    max_cap: int | None = 32,
) -> HilbertResult:
    """Count standard monomials (not divisible by any relation monomial) per degree.

    Only valid when every relation is a single monomial.  Standard monomials
    are closed under division, so they are grown one letter at a time.
    """
    if not p.is_monomial():
        raise ValidationError("monomial_quotient_dims needs single-monomial relations")
    degrees = _window(lo, hi)
    return _escalate(lambda c: _standard_monomials_at_cap(p, degrees, c), word_cap, max_cap)


@dataclass(frozen=True)
class ComparisonReport:
    algebra: HilbertResult
    expected: dict[int, int]
    mismatches: tuple[tuple[int, int, int], ...]  # (degree, algebra dim, expected dim)

    @property
    def consistent(self) -> bool:
        return not self.mismatches

    def as_dict(self) -> dict:
        return {
            "consistent": self.consistent,
            "cap": self.algebra.cap,
            "converged": self.algebra.converged,
            "mismatches": [
                {"degree": d, "algebra": a, "expected": e} for d, a, e in self.mismatches
            ],
        }


def compare_to_module(
    p: GradedPresentation,
    expected: PeriodicGradedDims | Mapping[int, int],
    lo: int,
    hi: int,
    cap: int = 4,
    *,
    max_cap: int = 40,
    workers: int = 1,
) -> ComparisonReport:
    """Degreewise diff between the algebra's Hilbert function and module dimensions."""
    if isinstance(expected, PeriodicGradedDims):
        target = dims_in_window(expected, lo, hi)
    else:
        target = {d: expected[d] for d in range(lo, hi + 1)}
    result = hilbert_function(p, lo, hi, cap, max_cap=max_cap, workers=workers)
    if not result.converged:
        raise NotConvergedError(
            f"Hilbert function of {p.name or 'presentation'} not converged at cap {result.cap}",
            result.unstable_degrees,
        )
    mismatches = tuple(
        (d, result.dims[d], target[d]) for d in range(lo, hi + 1) if result.dims[d] != target[d]
    )
    return ComparisonReport(result, target, mismatches)


# bundled presentations -------------------------------------------------------


def string_topology_ring(n: int) -> GradedPresentation:
    """Z2[a, u]/(a^2) with |a| = -n, |u| = n - 1."""
    return GradedPresentation(
        (("a", -n), ("u", n - 1)), ((("a", "a"),),), name=f"string_top_z2_n{n}"
    )


def cotangent_sphere_ring(n: int) -> GradedPresentation:
    """Z2[a, u, u^-1]/(a^2) with |a| = -n, |u| = n - 1."""
    return GradedPresentation(
        (("a", -n), ("u", n - 1), ("u_inv", 1 - n)),
        ((("a", "a"),), (("u", "u_inv"), ())),
        name=f"full_ring_n{n}",
    )


def _ak_common(k: int) -> tuple[list, list]:
    s = [f"s{i}" for i in range(1, k + 1)]
    gens = [(x, -2) for x in s]
    rels = [((s[i], s[j]),) for i in range(k) for j in range(i, k)]
    return gens, rels


def ak_even_ring(k: int) -> GradedPresentation:
    """SH of the A_k Milnor fibre, k even."""
    if k < 2 or k % 2:
        raise ValidationError(f"A_k even presentation needs even k >= 2, got {k}")
    gens, rels = _ak_common(k)
    gens += [("t1", -1), ("t0", 0), ("tm2", 2)]
    s = [f"s{i}" for i in range(1, k + 1)]
    rels += [((x, t),) for x in s for t in ("t1", "t0", "tm2")]
    rels += [(("t1", "t1"),), (("t0",) * k,)]
    return GradedPresentation(tuple(gens), tuple(rels), name=f"ak_even_k{k}")


def ak_odd_ring(k: int) -> GradedPresentation:
    """SH of the A_k Milnor fibre, k odd.

    The alpha/beta terms are present iff 4 divides k + 1.  As printed, the beta
    term u_{-1}^2 = t_0 (with n = 2) is not homogeneous, so that variant is
    rejected on construction.
    """
    if k < 3 or k % 2 == 0:
        raise ValidationError(f"A_k odd presentation needs odd k >= 3, got {k}")
    gens, rels = _ak_common(k)
    gens += [("t1", -1), ("t0", 0), ("um1", 1), ("tm2", 2)]
    s = [f"s{i}" for i in range(1, k + 1)]
    rels += [((x, "t1"),) for x in s] + [((x, "t0"),) for x in s]
    rels += [(("t1", "t1"),)]
    rels += [((x, "um1"), ("t1",) + ("t0",) * (k - 1)) for x in s]
    rels += [((x, "tm2"), ("t0",) * k) for x in s]
    rels += [(("t0", "um1"), ("t1", "tm2"))]
    if (k + 1) % 4 == 0:
        n = 2
        rels += [(("t1", "um1"), ("t0",) * k)]
        rels += [(("um1", "um1"), ("t0",) * (n - 1))]
    else:
        rels += [(("t1", "um1"),), (("um1", "um1"),)]
    return GradedPresentation(tuple(gens), tuple(rels), name=f"ak_odd_k{k}")


def bundled_presentation(name: str) -> GradedPresentation:
    override = os.environ.get("BRIESKORN_DATA_DIR")
    if override:
        path = Path(override) / "presentations" / f"{name}.json"
        return GradedPresentation.load(path)
    entry = resources.files("brieskorn") / "data" / "presentations" / f"{name}.json"
    if not entry.is_file():
        raise ValidationError(
            f"no bundled presentation {name!r}; available: {', '.join(bundled_presentation_names())}"
        )
    return GradedPresentation.from_json(json.loads(entry.read_text(encoding="utf-8")))


def bundled_presentation_names() -> list[str]:
    folder = resources.files("brieskorn") / "data" / "presentations"
    return sorted(e.name[:-5] for e in folder.iterdir() if e.name.endswith(".json"))
