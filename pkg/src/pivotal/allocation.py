"""Square-root voting weights for constituencies of unequal population."""
from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass
from itertools import combinations
from typing import BinaryIO

from .power import DEFAULT_CONFIG, PowerConfig, Strategy, VotingScheme, power


class TableError(ValueError):
    """Malformed population table."""


class Basis(enum.Enum):
    SQRT_POPULATION = "sqrt"
    INVERSE_POWER_BINARY = "binary"
    INVERSE_POWER_TERNARY = "ternary"


_SCHEME_BASIS = {
    VotingScheme.BINARY: Basis.INVERSE_POWER_BINARY,
    VotingScheme.TERNARY: Basis.INVERSE_POWER_TERNARY,
}


@dataclass(frozen=True)
class PopulationTable:
    entries: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if not self.entries:
            raise TableError("population table is empty")
        seen = set()
        for name, population in self.entries:
            if name in seen:
                raise TableError(f"duplicate constituency name {name!r}")
            seen.add(name)
            if population < 1:
                raise TableError(f"population of {name!r} must be >= 1, got {population}")

    @classmethod
    def from_pairs(cls, pairs) -> PopulationTable:
        return cls(tuple((str(name).strip(), int(pop)) for name, pop in pairs))

    @property
    def names(self) -> list[str]:
        return [name for name, _ in self.entries]

    @property
    def populations(self) -> list[int]:
        return [pop for _, pop in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class WeightAllocation:
    entries: tuple[tuple[str, float], ...]
    basis: Basis

    @property
    def weights(self) -> list[float]:
        return [w for _, w in self.entries]

    def as_dict(self) -> dict[str, float]:
        return dict(self.entries)


def load_population_table(source: BinaryIO | bytes | str) -> PopulationTable:
    """Parse a UTF-8 ``name,population`` CSV; LF and CRLF line endings both work."""
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise TableError(f"input is not valid UTF-8: {exc}") from None
    reader = csv.reader(io.StringIO(source, newline=""))
    rows = [(i, row) for i, row in enumerate(reader, start=1) if row and any(c.strip() for c in row)]
    if not rows:
        raise TableError("population table is empty")
    line, header = rows[0]
    if [c.strip().lower() for c in header] != ["name", "population"]:
        raise TableError(f"line {line}: expected header 'name,population', got {','.join(header)!r}")
    pairs = []
    for line, row in rows[1:]:
        if len(row) != 2:
            raise TableError(f"line {line}: expected 2 fields, got {len(row)}")
        name, raw = row[0].strip(), row[1].strip()
        if not name:
            raise TableError(f"line {line}: empty name")
        if not raw.lstrip("-").isdigit() or not raw.isascii():
            raise TableError(f"line {line}: population {raw!r} is not a plain integer")
        population = int(raw)
        if population < 1:
            raise TableError(f"line {line}: population must be >= 1, got {population}")
        pairs.append((name, population))
    if not pairs:
        raise TableError("population table has no data rows")
    return PopulationTable.from_pairs(pairs)


def _normalize(names: list[str], raw: list[float], basis: Basis) -> WeightAllocation:
    total = math.fsum(raw)
    return WeightAllocation(tuple(zip(names, (r / total for r in raw))), basis)


def sqrt_weights(table: PopulationTable) -> WeightAllocation:
    return _normalize(table.names, [math.sqrt(p) for p in table.populations], Basis.SQRT_POPULATION)


def power_based_weights(
    table: PopulationTable,
    scheme: VotingScheme,
    strategy: Strategy = Strategy.AUTO,
    config: PowerConfig = DEFAULT_CONFIG,
) -> WeightAllocation:
    """Weights inversely proportional to each citizen's voting power.

    A constituency of population p has p - 1 other voters per citizen.
    """
    raw = [1 / float(power(p - 1, scheme, strategy, config).value) for p in table.populations]
    return _normalize(table.names, raw, _SCHEME_BASIS[scheme])


@dataclass(frozen=True)
class ReportRow:
    name: str
    population: int
    binary_power: float
    ternary_power: float
    ratio: float
    sqrt_weight: float
    binary_weight: float
    ternary_weight: float
    max_dev: float


@dataclass(frozen=True)
class InvarianceReport:
    rows: tuple[ReportRow, ...]
    max_deviation: dict[str, float]


def invariance_report(
    table: PopulationTable,
    strategy: Strategy = Strategy.AUTO,
    config: PowerConfig = DEFAULT_CONFIG,
) -> InvarianceReport:
    """Compare square-root, binary-power and ternary-power allocations side by side."""
    binary = [float(power(p - 1, VotingScheme.BINARY, strategy, config)) for p in table.populations]
    ternary = [float(power(p - 1, VotingScheme.TERNARY, strategy, config)) for p in table.populations]
    vectors = {
        "sqrt": sqrt_weights(table).weights,
        "binary": _normalize(table.names, [1 / b for b in binary], Basis.INVERSE_POWER_BINARY).weights,
        "ternary": _normalize(table.names, [1 / t for t in ternary], Basis.INVERSE_POWER_TERNARY).weights,
    }
    pairs = list(combinations(vectors, 2))
    max_deviation = {
        f"{a}-{b}": max(abs(x - y) for x, y in zip(vectors[a], vectors[b])) for a, b in pairs
    }
    rows = []
    for i, (name, pop) in enumerate(table.entries):
        dev = max(abs(vectors[a][i] - vectors[b][i]) for a, b in pairs)
        rows.append(ReportRow(
            name, pop, binary[i], ternary[i], ternary[i] / binary[i],
            vectors["sqrt"][i], vectors["binary"][i], vectors["ternary"][i], dev,
        ))
    return InvarianceReport(tuple(rows), max_deviation)
