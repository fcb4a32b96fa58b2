"""Scenario configs: strict JSON documents naming a context, classes, a product and tasks."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

import jsonschema

from .coniveau import ProductSpec
from .groupring import MAX_RANK, GroupRingElt
from .relations import MAX_EXOTIC_DEGREE
from .weilmodel import (
    ORDINARY,
    SUPERSINGULAR,
    FieldContext,
    WeilClass,
    classify,
    construct_beta,
    enumerate_sections,
    standard_classes,
)

CONFIG_SCHEMA_ID = "weiltate-config/1"
REPORT_SCHEMA_ID = "weiltate-report/1"

#: Ceilings on task parameters; exceeding one is a config error.
LIMITS = {
    "k": 5,
    "kmax": 4,
    "bound": 64,
    "max_degree": MAX_EXOTIC_DEGREE,
    "product_dimension": 16,
}

PRESETS = ("standard_triple", "standard_quadruple", "beta")


class ConfigError(ValueError):
    """Invalid scenario config; ``where`` is a slash-separated pointer into the document."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where or '<root>'}: {message}")
        self.where = where
        self.message = message


def load_schema(name: str) -> dict:
    text = resources.files("weiltate").joinpath("schemas", name).read_text()
    return json.loads(text)


@dataclass
class Scenario:
    raw: dict
    ctx: FieldContext
    classes: list[WeilClass]
    product: ProductSpec | None
    tasks: list[dict]

    def class_by_label(self, label: str) -> WeilClass:
        for c in self.classes:
            if c.label == label:
                return c
        raise KeyError(label)


def _preset_classes(name: str, ctx: FieldContext, where: str) -> list[WeilClass]:
    if ctx != FieldContext.standard():
        raise ConfigError(where, f"preset {name!r} needs context {{k: 3, c: 7}}")
    if name == "beta":
        return [construct_beta(ctx)]
    quad = standard_classes(ctx)
    return quad[:3] if name == "standard_triple" else quad


def _build_class(spec: dict, ctx: FieldContext, where: str) -> list[WeilClass]:
    if "preset" in spec:
        return _preset_classes(spec["preset"], ctx, where + "/preset")
    label = spec["label"]
    try:
        if "section" in spec:
            sections = enumerate_sections(ctx)
            i = spec["section"]
            if i >= len(sections):
                raise ConfigError(where + "/section", f"index {i} out of range; context has {len(sections)} sections")
            return [WeilClass.ordinary(label, ctx, sections[i])]
        if "divisor" in spec:
            d = GroupRingElt.from_json(spec["divisor"])
            kind = spec.get("kind") or (
                SUPERSINGULAR if d == GroupRingElt.constant(d.k, 1) else ORDINARY
            )
            if d.k != ctx.k:
                raise ConfigError(where + "/divisor", f"length {len(d)} does not match rank {ctx.k}")
            if kind == SUPERSINGULAR:
                cls = WeilClass(label, kind, d)
            else:
                cls = WeilClass.ordinary(label, ctx, d)
            return [cls]
        return [WeilClass.supersingular(label, ctx)]
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(where, str(exc)) from None


def parse_config(raw: dict) -> Scenario:
    """Validate ``raw`` against the config schema and build a :class:`Scenario`."""
    validator = jsonschema.Draft202012Validator(load_schema("config.schema.json"))
    errors = sorted(validator.iter_errors(raw), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        where = "/".join(str(p) for p in err.absolute_path)
        raise ConfigError(where, err.message)

    c = raw["context"]
    if c["k"] > LIMITS["k"]:
        raise ConfigError("context/k", f"rank {c['k']} exceeds ceiling {LIMITS['k']}")
    try:
        ctx = FieldContext(c["k"], c["c"])
    except ValueError as exc:
        raise ConfigError("context", str(exc)) from None

    classes: list[WeilClass] = []
    for i, spec in enumerate(raw.get("classes", [])):
        classes.extend(_build_class(spec, ctx, f"classes/{i}"))
    labels = [cls.label for cls in classes]
    for i, label in enumerate(labels):
        if label in labels[:i]:
            raise ConfigError("classes", f"duplicate class label {label!r}")
    by_label = {cls.label: cls for cls in classes}

    product = None
    if "product" in raw:
        factors = []
        for i, item in enumerate(raw["product"]):
            if item["label"] not in by_label:
                raise ConfigError(f"product/{i}/label", f"unknown class {item['label']!r}")
            factors.append((by_label[item["label"]], item["multiplicity"]))
        where = "product"
    else:
        factors = [(cls, 1) for cls in classes if classify(ctx, cls).is_elliptic]
        where = "classes"
    if factors:
        try:
            product = ProductSpec(ctx, tuple(factors))
        except ValueError as exc:
            raise ConfigError(where, str(exc)) from None
        if product.dimension > LIMITS["product_dimension"]:
            raise ConfigError(where, f"product dimension {product.dimension} exceeds ceiling {LIMITS['product_dimension']}")

    for i, task in enumerate(raw["tasks"]):
        _check_task(task, f"tasks/{i}", product, by_label)

    return Scenario(raw, ctx, classes, product, list(raw["tasks"]))


def _check_task(task: dict, where: str, product: ProductSpec | None, by_label: dict) -> None:
    kind = task["task"]
    if kind == "analyze":
        if product is None:
            raise ConfigError(where, "analyze needs a product (or elliptic classes)")
        top = 2 * product.dimension
        if task["degree"] > top:
            raise ConfigError(where + "/degree", f"degree {task['degree']} exceeds 2 * dim X = {top}")
    elif kind == "verify_lemma1":
        if task["kmax"] > LIMITS["kmax"] or task["kmax"] > MAX_RANK:
            raise ConfigError(where + "/kmax", f"kmax {task['kmax']} exceeds ceiling {LIMITS['kmax']}")
    elif kind == "verify_thm2":
        if task["bound"] > LIMITS["bound"]:
            raise ConfigError(where + "/bound", f"bound {task['bound']} exceeds ceiling {LIMITS['bound']}")
    elif kind == "relations":
        if task["max_degree"] > LIMITS["max_degree"]:
            raise ConfigError(where + "/max_degree", f"max_degree {task['max_degree']} exceeds ceiling {LIMITS['max_degree']}")
        for j, label in enumerate(task.get("generators", [])):
            if label not in by_label:
                raise ConfigError(f"{where}/generators/{j}", f"unknown class {label!r}")


def preset_config(presets: list[str], tasks: list[dict], k: int = 3, c: int = 7) -> dict:
    """Config document for the named presets in the standard context."""
    return {
        "schema": CONFIG_SCHEMA_ID,
        "context": {"k": k, "c": c},
        "classes": [{"preset": p} for p in presets],
        "tasks": tasks,
    }
