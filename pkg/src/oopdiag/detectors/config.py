"""Detector thresholds with pinned defaults."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any

# Direction in which each threshold makes its detector stricter:
# "up" means raising the value can only remove findings, "down" the opposite.
_STRICTER: dict[str, str] = {}
_RATIOS: set[str] = set()


def _t(default: float, stricter: str, ratio: bool = False, doc: str = ""):
    return {"default": default, "stricter": stricter, "ratio": ratio, "doc": doc}


_DEFS: dict[str, dict[str, Any]] = {
    "wmc_high": _t(47, "up", doc="large class: weighted methods per class"),
    "tcc_low": _t(1 / 3, "down", True, "large class: tight class cohesion"),
    "atfd_few": _t(3, "up", doc="large class / feature envy: foreign data accesses"),
    "class_loc_high": _t(200, "up", doc="large class: lines"),
    "nom_high": _t(15, "up", doc="large class / swiss army knife: method count"),
    "laa_low": _t(1 / 3, "down", True, "feature envy: locality of attribute accesses"),
    "fanin_high": _t(6, "up", doc="shotgun surgery: distinct client classes"),
    "woc_low": _t(1 / 3, "down", True, "data class: weight of class"),
    "data_few": _t(3, "up", doc="data class: public fields plus accessors"),
    "data_wmc_slack": _t(2, "down", doc="data class: wmc allowance above nom"),
    "method_loc_high": _t(30, "up", doc="long method: lines"),
    "cyclo_high": _t(10, "up", doc="long method / spaghetti: cyclomatic complexity"),
    "main_share": _t(0.7, "up", True, "functional decomposition: share of program LOC in main and its static helpers"),
    "bequest_use": _t(1 / 3, "down", True, "refused bequest: share of protected members used"),
    "bequest_min": _t(3, "up", doc="refused bequest: protected members a parent needs"),
    "nesting_high": _t(5, "up", doc="spaghetti: nesting depth"),
    "divergent_clusters": _t(2, "up", doc="divergent change: disjoint method clusters"),
    "cluster_min": _t(2, "up", doc="divergent change: methods per cluster"),
    "params_high": _t(5, "up", doc="long parameter list"),
    "min_clone_tokens": _t(35, "up", doc="duplicate code: normalized tokens"),
    "speculative_implementers": _t(1, "down", doc="speculative generality: max implementers"),
    "lazy_nom": _t(2, "down", doc="lazy class: max methods"),
    "lazy_loc": _t(20, "down", doc="lazy class: lines (exclusive)"),
    "cases_min": _t(3, "up", doc="switch statement: tag branches"),
    "prim_params": _t(4, "up", doc="primitive obsession: primitive parameters"),
    "prim_field_share": _t(0.8, "up", True, "primitive obsession: primitive field share"),
    "prim_fields_min": _t(5, "up", doc="primitive obsession: fields needed"),
    "swiss_groups": _t(3, "up", doc="swiss army knife: field-access groups"),
    "clump_size": _t(3, "up", doc="data clump: shared names"),
    "clump_occurrences": _t(2, "up", doc="data clump: signatures or classes"),
    "intimacy": _t(4, "up", doc="inappropriate intimacy: accesses both ways"),
    "delegate_share": _t(0.5, "up", True, "middle man: delegating method share"),
    "middle_nom": _t(3, "up", doc="middle man: method count"),
    "chain_min": _t(3, "up", doc="message chains: chain depth"),
    "parallel_pairs": _t(2, "up", doc="parallel inheritance: matching subclass pairs"),
    "altsim": _t(0.6, "up", True, "alternative classes: method-name similarity"),
    "iface_nom": _t(6, "up", doc="ISP: interface methods"),
    "isp_share": _t(1 / 3, "up", True, "ISP: share left empty by an implementer"),
    "dip_new": _t(3, "up", doc="DIP: concrete classes instantiated"),
    "nopa_min": _t(1, "up", doc="deficient encapsulation: public fields"),
}

# Indicators whose findings each threshold can change.
_USED_BY: dict[str, tuple[str, ...]] = {
    "wmc_high": ("LARGE_CLASS",),
    "tcc_low": ("LARGE_CLASS",),
    "atfd_few": ("LARGE_CLASS", "FEATURE_ENVY"),
    "class_loc_high": ("LARGE_CLASS",),
    "nom_high": ("LARGE_CLASS", "SWISS_ARMY_KNIFE"),
    "laa_low": ("FEATURE_ENVY",),
    "fanin_high": ("SHOTGUN_SURGERY",),
    "woc_low": ("DATA_CLASS",),
    "data_few": ("DATA_CLASS",),
    "data_wmc_slack": ("DATA_CLASS",),
    "method_loc_high": ("LONG_METHOD",),
    "cyclo_high": ("LONG_METHOD", "SPAGHETTI_CODE"),
    "main_share": ("FUNCTIONAL_DECOMPOSITION",),
    "bequest_use": ("REFUSED_BEQUEST",),
    "bequest_min": ("REFUSED_BEQUEST",),
    "nesting_high": ("SPAGHETTI_CODE",),
    "divergent_clusters": ("DIVERGENT_CHANGE",),
    "cluster_min": ("DIVERGENT_CHANGE",),
    "params_high": ("LONG_PARAMETER_LIST",),
    "min_clone_tokens": ("DUPLICATE_CODE",),
    "speculative_implementers": ("SPECULATIVE_GENERALITY",),
    "lazy_nom": ("LAZY_CLASS",),
    "lazy_loc": ("LAZY_CLASS",),
    "cases_min": ("SWITCH_STATEMENT",),
    "prim_params": ("PRIMITIVE_OBSESSION",),
    "prim_field_share": ("PRIMITIVE_OBSESSION",),
    "prim_fields_min": ("PRIMITIVE_OBSESSION",),
    "swiss_groups": ("SWISS_ARMY_KNIFE",),
    "clump_size": ("DATA_CLUMP",),
    "clump_occurrences": ("DATA_CLUMP",),
    "intimacy": ("INAPPROPRIATE_INTIMACY",),
    "delegate_share": ("MIDDLE_MAN",),
    "middle_nom": ("MIDDLE_MAN",),
    "chain_min": ("MESSAGE_CHAINS",),
    "parallel_pairs": ("PARALLEL_INHERITANCE",),
    "altsim": ("ALTERNATIVE_CLASSES",),
    "iface_nom": ("ISP_VIOLATION",),
    "isp_share": ("ISP_VIOLATION",),
    "dip_new": ("DIP_VIOLATION",),
    "nopa_min": ("DEFICIENT_ENCAPSULATION",),
}
assert set(_USED_BY) == set(_DEFS)

for _name, _meta in _DEFS.items():
    _STRICTER[_name] = _meta["stricter"]
    if _meta["ratio"]:
        _RATIOS.add(_name)


@dataclass(frozen=True)
class ThresholdConfig:
    wmc_high: float = 47
    tcc_low: float = 1 / 3
    atfd_few: float = 3
    class_loc_high: float = 200
    nom_high: float = 15
    laa_low: float = 1 / 3
    fanin_high: float = 6
    woc_low: float = 1 / 3
    data_few: float = 3
    data_wmc_slack: float = 2
    method_loc_high: float = 30
    cyclo_high: float = 10
    main_share: float = 0.7
    bequest_use: float = 1 / 3
    bequest_min: float = 3
    nesting_high: float = 5
    divergent_clusters: float = 2
    cluster_min: float = 2
    params_high: float = 5
    min_clone_tokens: float = 35
    speculative_implementers: float = 1
    lazy_nom: float = 2
    lazy_loc: float = 20
    cases_min: float = 3
    prim_params: float = 4
    prim_field_share: float = 0.8
    prim_fields_min: float = 5
    swiss_groups: float = 3
    clump_size: float = 3
    clump_occurrences: float = 2
    intimacy: float = 4
    delegate_share: float = 0.5
    middle_nom: float = 3
    chain_min: float = 3
    parallel_pairs: float = 2
    altsim: float = 0.6
    iface_nom: float = 6
    isp_share: float = 1 / 3
    dip_new: float = 3
    nopa_min: float = 1

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValueError(f"threshold {f.name!r} must be a number")
            if not value > 0:
                raise ValueError(f"threshold {f.name!r} must be positive, got {value}")
            if f.name in _RATIOS and value > 1:
                raise ValueError(f"threshold {f.name!r} is a ratio and must be in (0, 1], got {value}")

    def to_doc(self) -> dict[str, float]:
        return asdict(self)

    def with_overrides(self, overrides: dict[str, Any]) -> ThresholdConfig:
        known = {f.name for f in fields(self)}
        unknown = sorted(set(overrides) - known)
        if unknown:
            raise ValueError(f"unknown threshold(s): {', '.join(unknown)}")
        return replace(self, **overrides)


def stricter_direction(name: str) -> str:
    """``"up"`` if raising ``name`` can only remove findings, else ``"down"``."""
    return _STRICTER[name]


def thresholds_for(indicator: str) -> tuple[str, ...]:
    """Thresholds that tune ``indicator`` (empty for fixed-rule detectors)."""
    return tuple(k for k, v in _USED_BY.items() if indicator in v)


def is_ratio(name: str) -> bool:
    return name in _RATIOS


def threshold_docs() -> dict[str, str]:
    return {k: v["doc"] for k, v in _DEFS.items()}


def load_thresholds(path: str | Path) -> ThresholdConfig:
    """Read a JSON object of overrides on top of the defaults."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ValueError(f"cannot read thresholds file {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValueError(f"thresholds file {path} must contain a JSON object")
    return ThresholdConfig().with_overrides(doc)
