"""Morse-Bott strata N_T of closed Reeb orbits and their GF(2) Betti numbers.

A stratum at time L (T = L * pi/2) is the fixed set of the Reeb flow at that
time: the points of Sigma(a) with z_j = 0 for every j whose exponent does not
divide L.  It is the Brieskorn manifold of the active sub-tuple, so it is
nonempty exactly when at least two coordinates are active.
"""

from __future__ import annotations

import enum
import json
import math
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .core import ExponentTuple
from .errors import MissingBettiError, ValidationError

DATA_DIR_ENV = "BRIESKORN_DATA_DIR"


class BettiSource(str, enum.Enum):
    BUILT_IN = "BuiltIn"
    USER_CONFIG = "UserConfig"


def betti_key(sub_tuple: Iterable[int]) -> str:
    return ",".join(str(a) for a in sorted(sub_tuple))


def parse_betti_key(key: str) -> tuple[int, ...]:
    try:
        parts = tuple(sorted(int(p) for p in key.split(",")))
    except ValueError:
        raise ValidationError(f"bad Betti key {key!r}: expected comma-joined integers") from None
    if len(parts) < 2 or min(parts) < 2:
        raise ValidationError(f"bad Betti key {key!r}: need >= 2 exponents, each >= 2")
    return parts


def validate_betti(key: str, values: Sequence[int]) -> tuple[int, ...]:
    values = tuple(values)
    sub = parse_betti_key(key)
    expected_len = 2 * len(sub) - 2  # dim + 1 with dim = 2|I| - 3
    if len(values) != expected_len:
        raise ValidationError(
            f"Betti list for ({key}) has length {len(values)}, expected {expected_len}"
        )
    if any(isinstance(b, bool) or not isinstance(b, int) or b < 0 for b in values):
        raise ValidationError(f"Betti list for ({key}) must hold nonnegative integers")
    if values[0] < 1:
        raise ValidationError(f"Betti list for ({key}) has b_0 = 0")
    if values != values[::-1]:
        raise ValidationError(f"Betti list for ({key}) is not palindromic")
    return values


def _load_json_table(text: str, origin: str) -> dict[tuple[int, ...], tuple[int, ...]]:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{origin}: invalid JSON ({exc})") from None
    if not isinstance(raw, dict):
        raise ValidationError(f"{origin}: expected a JSON object of key -> Betti list")
    table = {}
    for key, values in raw.items():
        if key.startswith("_"):
            continue
        if not isinstance(values, list):
            raise ValidationError(f"{origin}: value for {key!r} must be an array")
        table[parse_betti_key(key)] = validate_betti(key, values)
    return table


def _bundled_texts() -> list[tuple[str, str]]:
    override = os.environ.get(DATA_DIR_ENV)
    if override:
        folder = Path(override) / "betti"
        return [(str(p), p.read_text(encoding="utf-8")) for p in sorted(folder.glob("*.json"))]
    folder = resources.files("brieskorn") / "data" / "betti"
    return [
        (f"bundled:{entry.name}", entry.read_text(encoding="utf-8"))
        for entry in sorted(folder.iterdir(), key=lambda e: e.name)
        if entry.name.endswith(".json")
    ]


def _builtin_rule(sub: tuple[int, ...]) -> tuple[int, ...] | None:
    if len(sub) == 2:
        g = math.gcd(*sub)
        return (g, g)
    if all(a == 2 for a in sub):
        # unit cotangent bundle of S^{m-1}
        m = len(sub)
        betti = [0] * (2 * m - 2)
        for d in (0, m - 2, m - 1, 2 * m - 3):
            betti[d] = 1
        return tuple(betti)
    return None


class BettiTable:
    """Read-only lookup of GF(2) Betti numbers keyed by sorted exponent sub-tuple.

    ``user`` entries win over built-ins key by key.
    """

    def __init__(
        self,
        user: Mapping[tuple[int, ...], Sequence[int]] | None = None,
        bundled: Mapping[tuple[int, ...], Sequence[int]] | None = None,
    ):
        self._user = {
            tuple(sorted(k)): validate_betti(betti_key(k), v) for k, v in (user or {}).items()
        }
        self._bundled = dict(bundled) if bundled is not None else {}

    @classmethod
    def default(cls, user_files: Iterable[str | os.PathLike] = ()) -> "BettiTable":
        bundled: dict = {}
        for origin, text in _bundled_texts():
            bundled.update(_load_json_table(text, origin))
        user: dict = {}
        for path in user_files:
            path = Path(path)
            try:
                text = path.read_text(encoding="utf-8")
            except OSError as exc:
                raise ValidationError(f"cannot read Betti file {path}: {exc}") from None
            user.update(_load_json_table(text, str(path)))
        return cls(user=user, bundled=bundled)

    @property
    def entries(self) -> dict[tuple[int, ...], tuple[int, ...]]:
        merged = dict(self._bundled)
        merged.update(self._user)
        return merged

    def lookup(self, sub_tuple: Iterable[int]) -> tuple[tuple[int, ...], BettiSource]:
        sub = tuple(sorted(sub_tuple))
        if sub in self._user:
            return self._user[sub], BettiSource.USER_CONFIG
        rule = _builtin_rule(sub)
        if rule is not None:
            return rule, BettiSource.BUILT_IN
        if sub in self._bundled:
            return self._bundled[sub], BettiSource.BUILT_IN
        raise MissingBettiError(sub)


def resolve_betti(sub_tuple: Sequence[int], table: BettiTable) -> tuple[tuple[int, ...], BettiSource]:
    if len(sub_tuple) < 2:
        raise ValidationError(f"sub-tuple {list(sub_tuple)} does not describe a nonempty stratum")
    return table.lookup(sub_tuple)


@dataclass(frozen=True)
class Stratum:
    L: int
    active_set: tuple[int, ...]
    sub_tuple: tuple[int, ...]
    dim: int
    mu_rs: int
    betti: tuple[int, ...] | None = None
    betti_source: BettiSource | None = None

    @property
    def min_cz(self) -> int:
        """Lowest Conley-Zehnder degree of a generator on this stratum."""
        return self.mu_rs - (self.dim - 1) // 2

    def as_dict(self) -> dict:
        return {
            "L": self.L,
            "active_set": list(self.active_set),
            "sub_tuple": list(self.sub_tuple),
            "dim": self.dim,
            "mu_rs": self.mu_rs,
            "betti": list(self.betti) if self.betti is not None else None,
            "betti_source": self.betti_source.value if self.betti_source else None,
        }


def robbin_salamon_index(t: ExponentTuple, L: int) -> int:
    if L < 1:
        raise ValidationError(f"Robbin-Salamon index needs L >= 1, got {L}")
    return sum(L // a + -(-L // a) for a in t.a) - 2 * L


def active_set(t: ExponentTuple, L: int) -> tuple[int, ...]:
    if L == 0:
        return tuple(range(len(t.a)))
    return tuple(j for j, a in enumerate(t.a) if L % a == 0)


def stratum_at(t: ExponentTuple, L: int, betti: BettiTable | None = None) -> Stratum | None:
    """The stratum at time L, or None when it is empty."""
    if L < 0:
        raise ValidationError(f"L must be >= 0, got {L}")
    active = active_set(t, L)
    if len(active) < 2:
        return None
    sub = t.sub_tuple(active)
    dim = 2 * len(active) - 3
    mu = 0 if L == 0 else robbin_salamon_index(t, L)
    values = source = None
    if betti is not None:
        values, source = resolve_betti(sub, betti)
    return Stratum(L, active, sub, dim, mu, values, source)


def enumerate_strata(
    t: ExponentTuple, max_L: int, betti: BettiTable | None = None, *, min_L: int = 0
) -> list[Stratum]:
    """All nonempty strata with min_L <= L <= max_L.

    Without a Betti table the strata carry no Betti data (enough for index checks).
    """
    if max_L < 0:
        raise ValidationError(f"max_L must be >= 0, got {max_L}")
    out = []
    for L in range(min_L, max_L + 1):
        s = stratum_at(t, L, betti)
        if s is not None:
            out.append(s)
    return out
