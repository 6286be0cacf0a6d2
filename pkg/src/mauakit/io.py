"""On-disk formats: the problem document (JSON), CSV option import, and
result export.

The document schema carries raw values plus attribute specs; normalized
locations are never stored, the engine is the single source of that truth.
``parse_problem`` checks structure only -- callers still run
``validate_problem`` for semantics. Serialization is canonical: fixed key
order, 2-space indent, attributes and options in model order.
"""

from __future__ import annotations

import csv as _csv
import json
from io import StringIO
from typing import Any, Mapping, Sequence

from .aggregation import EvaluationResult, Ranking
from .sensitivity import AttributeSensitivity, WhatIfDelta
from .model import (
    Aggregation,
    Attribute,
    CONCAVE_GAMMA,
    CONVEX_GAMMA,
    CurveShape,
    CurveSpec,
    DecisionProblem,
    Direction,
    DisplayScale,
    Kind,
    OptionRecord,
    Scenario,
    ValidationReport,
)

SCHEMA_VERSION = "1"


class DocumentError(ValueError):
    """Base class for problem-document failures."""


class DocumentSyntaxError(DocumentError):
    """The text is not valid JSON."""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class DocumentSchemaError(DocumentError):
    """The JSON is well-formed but violates the document schema."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class CsvImportError(ValueError):
    pass


# ---------------------------------------------------------------------------
# parsing

def _require_object(value: Any, path: str) -> dict:
    if not isinstance(value, dict):
        raise DocumentSchemaError(path, f"expected an object, got {type(value).__name__}")
    return value


def _reject_unknown(obj: Mapping[str, Any], allowed: Sequence[str], path: str) -> None:
    for key in obj:
        if key not in allowed:
            raise DocumentSchemaError(f"{path}.{key}", "unknown field")


def _get(obj: Mapping[str, Any], key: str, path: str) -> Any:
    if key not in obj:
        raise DocumentSchemaError(f"{path}.{key}", "required field is missing")
    return obj[key]


def _string(value: Any, path: str) -> str:
    if not isinstance(value, str):
        raise DocumentSchemaError(path, f"expected a string, got {type(value).__name__}")
    return value


def _number(value: Any, path: str) -> float:
    # bool is an int subclass; it is never an acceptable number here
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DocumentSchemaError(path, f"expected a number, got {type(value).__name__}")
    return float(value)


def _enum(value: Any, enum_cls, path: str):
    text = _string(value, path)
    try:
        return enum_cls(text)
    except ValueError:
        allowed = ", ".join(m.value for m in enum_cls)
        raise DocumentSchemaError(path, f"must be one of: {allowed}") from None


def _parse_curve(data: Any, path: str) -> CurveSpec:
    obj = _require_object(data, path)
    _reject_unknown(obj, ("shape", "gamma"), path)
    shape_text = _string(_get(obj, "shape", path), f"{path}.shape")
    gamma = _number(obj["gamma"], f"{path}.gamma") if "gamma" in obj else None

    # "concave"/"convex" are power-curve shorthands with conventional
    # exponents; an explicit gamma always wins.
    if shape_text == "concave":
        return CurveSpec(CurveShape.POWER, gamma if gamma is not None else CONCAVE_GAMMA)
    if shape_text == "convex":
        return CurveSpec(CurveShape.POWER, gamma if gamma is not None else CONVEX_GAMMA)
    try:
        shape = CurveShape(shape_text)
    except ValueError:
        raise DocumentSchemaError(
            f"{path}.shape",
            "must be one of: linear, power, s_shape, concave, convex") from None
    if shape is CurveShape.POWER and gamma is None:
        gamma = CONCAVE_GAMMA
    return CurveSpec(shape, gamma)


def _parse_attribute(data: Any, path: str) -> Attribute:
    obj = _require_object(data, path)
    _reject_unknown(obj, ("name", "importance", "kind", "direction", "range", "curve"), path)
    name = _string(_get(obj, "name", path), f"{path}.name")
    importance = _number(_get(obj, "importance", path), f"{path}.importance")
    kind = _enum(_get(obj, "kind", path), Kind, f"{path}.kind")

    direction = None
    if "direction" in obj:
        direction = _enum(obj["direction"], Direction, f"{path}.direction")

    range_low = range_high = None
    if "range" in obj:
        rng = obj["range"]
        if not isinstance(rng, list) or len(rng) != 2:
            raise DocumentSchemaError(f"{path}.range", "expected [low, high]")
        range_low = _number(rng[0], f"{path}.range[0]")
        range_high = _number(rng[1], f"{path}.range[1]")

    curve = _parse_curve(obj["curve"], f"{path}.curve") if "curve" in obj else None

    return Attribute(name=name, importance=importance, kind=kind,
                     direction=direction, range_low=range_low,
                     range_high=range_high, curve=curve)


def _parse_values(data: Any, path: str) -> dict[str, float]:
    obj = _require_object(data, path)
    return {key: _number(value, f"{path}.{key}") for key, value in obj.items()}


def _parse_option(data: Any, path: str) -> OptionRecord:
    obj = _require_object(data, path)
    _reject_unknown(obj, ("name", "values", "scenarios"), path)
    name = _string(_get(obj, "name", path), f"{path}.name")
    has_values = "values" in obj
    has_scenarios = "scenarios" in obj
    if has_values == has_scenarios:
        raise DocumentSchemaError(path, "exactly one of 'values' or 'scenarios' is required")
    if has_values:
        return OptionRecord.single(name, _parse_values(obj["values"], f"{path}.values"))

    raw = obj["scenarios"]
    if not isinstance(raw, list):
        raise DocumentSchemaError(f"{path}.scenarios", "expected an array")
    scenarios = []
    for k, entry in enumerate(raw):
        spath = f"{path}.scenarios[{k}]"
        sobj = _require_object(entry, spath)
        _reject_unknown(sobj, ("probability", "values"), spath)
        probability = _number(_get(sobj, "probability", spath), f"{spath}.probability")
        values = _parse_values(_get(sobj, "values", spath), f"{spath}.values")
        scenarios.append(Scenario(probability=probability, values=values))
    return OptionRecord(name=name, scenarios=tuple(scenarios))


def problem_from_data(data: Any) -> DecisionProblem:
    """Build a DecisionProblem from already-decoded JSON data.

    Raises :class:`DocumentSchemaError` on any structural violation; never
    returns a partially-built problem. Semantic checks stay with
    ``validate_problem``.
    """
    obj = _require_object(data, "$")
    _reject_unknown(
        obj,
        ("schema_version", "name", "display_scale", "aggregation", "attributes", "options"),
        "$")
    version = _string(_get(obj, "schema_version", "$"), "$.schema_version")
    if version != SCHEMA_VERSION:
        raise DocumentSchemaError(
            "$.schema_version", f"unsupported schema_version {version!r} (expected {SCHEMA_VERSION!r})")
    name = _string(_get(obj, "name", "$"), "$.name")
    display_scale = (_enum(obj["display_scale"], DisplayScale, "$.display_scale")
                     if "display_scale" in obj else DisplayScale.UNIT)
    aggregation = (_enum(obj["aggregation"], Aggregation, "$.aggregation")
                   if "aggregation" in obj else Aggregation.ADDITIVE)

    raw_attrs = _get(obj, "attributes", "$")
    if not isinstance(raw_attrs, list):
        raise DocumentSchemaError("$.attributes", "expected an array")
    attributes = tuple(_parse_attribute(a, f"$.attributes[{i}]") for i, a in enumerate(raw_attrs))

    raw_options = _get(obj, "options", "$")
    if not isinstance(raw_options, list):
        raise DocumentSchemaError("$.options", "expected an array")
    options = tuple(_parse_option(o, f"$.options[{j}]") for j, o in enumerate(raw_options))

    return DecisionProblem(name=name, attributes=attributes, options=options,
                           display_scale=display_scale, aggregation=aggregation,
                           schema_version=version)


def parse_problem(text: str) -> DecisionProblem:
    """Parse a problem document from JSON text."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    return problem_from_data(data)


# ---------------------------------------------------------------------------
# serialization

def problem_to_data(problem: DecisionProblem) -> dict:
    """Canonical plain-data form: fixed key order, model order throughout."""
    attrs = []
    for attr in problem.attributes:
        entry: dict[str, Any] = {
            "name": attr.name,
            "importance": float(attr.importance),
            "kind": attr.kind.value,
        }
        if attr.direction is not None:
            entry["direction"] = attr.direction.value
        if attr.range_low is not None or attr.range_high is not None:
            entry["range"] = [float(attr.range_low), float(attr.range_high)]
        if attr.curve is not None:
            curve: dict[str, Any] = {"shape": attr.curve.shape.value}
            if attr.curve.gamma is not None:
                curve["gamma"] = float(attr.curve.gamma)
            entry["curve"] = curve
        attrs.append(entry)

    order = problem.attribute_names()

    def ordered_values(values: Mapping[str, float]) -> dict[str, float]:
        known = {name: float(values[name]) for name in order if name in values}
        extra = {k: float(v) for k, v in values.items() if k not in known}
        return {**known, **extra}

    options = []
    for option in problem.options:
        if len(option.scenarios) == 1 and option.scenarios[0].probability == 1.0:
            options.append({"name": option.name,
                            "values": ordered_values(option.scenarios[0].values)})
        else:
            options.append({"name": option.name, "scenarios": [
                {"probability": float(s.probability), "values": ordered_values(s.values)}
                for s in option.scenarios]})

    return {
        "schema_version": problem.schema_version,
        "name": problem.name,
        "display_scale": problem.display_scale.value,
        "aggregation": problem.aggregation.value,
        "attributes": attrs,
        "options": options,
    }


def serialize_problem(problem: DecisionProblem) -> str:
    """Serialize to canonical JSON text (deterministic, newline-terminated)."""
    return json.dumps(problem_to_data(problem), indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# result export

def _render_json(value: Any, level: int = 0) -> str:
    """JSON with every float as a fixed 6-fractional-digit decimal.

    Fixed-precision decimals make exports reproducible byte-for-byte across
    re-reads, which the plain repr of a float would not guarantee once
    results are re-serialized by other tools.
    """
    pad = "  " * level
    inner = "  " * (level + 1)
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6f}"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = ",\n".join(inner + _render_json(v, level + 1) for v in value)
        return "[\n" + items + "\n" + pad + "]"
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = ",\n".join(
            f"{inner}{json.dumps(str(k), ensure_ascii=False)}: {_render_json(v, level + 1)}"
            for k, v in value.items())
        return "{\n" + items + "\n" + pad + "}"
    raise TypeError(f"cannot render {type(value).__name__}")


def render_json(obj: Any) -> str:
    return _render_json(obj) + "\n"


def ranking_to_obj(ranking: Ranking, display_scale: DisplayScale) -> list[dict]:
    scale = 100.0 if display_scale is DisplayScale.PERCENT else 1.0
    return [
        {"option": e.option, "rank": e.rank, "utility": e.utility,
         "display_utility": e.utility * scale, "tied": e.tied}
        for e in ranking.entries
    ]


def evaluation_to_obj(result: EvaluationResult, ranking: Ranking) -> dict:
    return {
        "problem": result.problem_name,
        "display_scale": result.display_scale.value,
        "aggregation": result.aggregation.value,
        "attributes": list(result.attribute_names),
        "weights": list(result.weights),
        "options": [
            {
                "name": o.name,
                "utility": o.utility,
                "display_utility": o.display_utility,
                "contributions": list(o.contributions) if o.contributions is not None else None,
                "scenario_utilities": (list(o.scenario_utilities)
                                       if o.scenario_utilities is not None else None),
            }
            for o in result.options
        ],
        "ranking": ranking_to_obj(ranking, result.display_scale),
    }


def results_to_json(result: EvaluationResult, ranking: Ranking) -> str:
    """Machine-readable evaluation export; text is stable byte-for-byte."""
    return render_json(evaluation_to_obj(result, ranking))


def critical_to_obj(entry: AttributeSensitivity) -> dict:
    return {
        "attribute": entry.attribute,
        "mode": "critical",
        "top_at_zero": entry.top_at_zero,
        "top_at_one": entry.top_at_one,
        "breakpoints": [
            {"t": b.t, "left": b.left, "right": b.right} for b in entry.breakpoints
        ],
    }


def sweep_to_obj(attribute: str, samples: Sequence[tuple[float, Ranking]],
                 display_scale: DisplayScale) -> dict:
    return {
        "attribute": attribute,
        "mode": "sweep",
        "samples": [
            {"t": t, "ranking": ranking_to_obj(ranking, display_scale)}
            for t, ranking in samples
        ],
    }


def whatif_to_obj(delta: WhatIfDelta) -> dict:
    return {
        "overrides": {
            "importances": dict(delta.overrides.importances),
            "values": {o: dict(v) for o, v in delta.overrides.values.items()},
        },
        "before": evaluation_to_obj(delta.before, delta.before_ranking),
        "after": evaluation_to_obj(delta.after, delta.after_ranking),
        "deltas": [
            {"option": d.option,
             "utility_before": d.utility_before,
             "utility_after": d.utility_after,
             "delta": d.delta,
             "rank_before": d.rank_before,
             "rank_after": d.rank_after}
            for d in delta.deltas
        ],
    }


def report_to_obj(report: ValidationReport) -> dict:
    return {
        "ok": report.ok,
        "issues": [
            {"severity": i.severity.value, "path": i.path, "message": i.message}
            for i in report.issues
        ],
    }


def results_to_csv(result: EvaluationResult, ranking: Ranking) -> str:
    """One row per option: name, display utility, rank, contributions."""
    ranks = {e.option: e.rank for e in ranking.entries}
    has_contributions = any(o.contributions is not None for o in result.options)
    buffer = StringIO()
    writer = _csv.writer(buffer, lineterminator="\n")
    header = ["option", "utility", "rank"]
    if has_contributions:
        header += [f"contribution:{name}" for name in result.attribute_names]
    writer.writerow(header)
    for option in result.options:
        row = [option.name, f"{option.display_utility:.6f}", ranks[option.name]]
        if has_contributions:
            row += [f"{c:.6f}" for c in option.contributions or ()]
        writer.writerow(row)
    return buffer.getvalue()


# ---------------------------------------------------------------------------
# CSV option import

def import_csv(text: str, attribute_spec: Sequence[Attribute]) -> list[OptionRecord]:
    """Read options from CSV: header "option" then attribute names in order.

    Each data row becomes one single-scenario option. Accepts CRLF input and
    RFC-4180 quoting; raises :class:`CsvImportError` with row and column
    context on any mismatch.
    """
    expected_header = ["option"] + [a.name for a in attribute_spec]
    rows = list(_csv.reader(StringIO(text, newline="")))
    rows = [row for row in rows if row]  # ignore blank lines
    if not rows:
        raise CsvImportError("no header row")
    header = rows[0]
    if header != expected_header:
        raise CsvImportError(
            f"header mismatch: expected {expected_header!r}, found {header!r}")
    if len(rows) == 1:
        raise CsvImportError("no options: the data section is empty")

    options: list[OptionRecord] = []
    seen: set[str] = set()
    for r, row in enumerate(rows[1:], start=1):
        if len(row) != len(expected_header):
            raise CsvImportError(
                f"row {r}: expected {len(expected_header)} cells, found {len(row)}")
        name = row[0]
        if name in seen:
            raise CsvImportError(f"row {r}: duplicate option name {name!r}")
        seen.add(name)
        values: dict[str, float] = {}
        for attr, cell in zip(attribute_spec, row[1:]):
            try:
                values[attr.name] = float(cell)
            except ValueError:
                raise CsvImportError(
                    f"row {r}, column {attr.name!r}: non-numeric value {cell!r}") from None
        options.append(OptionRecord.single(name, values))
    return options
