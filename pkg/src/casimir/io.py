"""Serialization of material models and ingestion of tabulated data.

Material model files are JSON documents {"kind", "label", "parameters"}.
Tabulated absorption data travels as CSV with the fixed header
``omega_rad_s,eps_imag`` plus an optional adjacent sidecar ``<stem>.json``
configuring the extrapolation tails.
"""

import csv
import hashlib
import json
from pathlib import Path

from .errors import IngestionError
from .materials import (ConstantEpsMu, DebyeMagnetic, Drude, HighTail,
                        InfinitelyPermeable, LorentzOscillators, LowTail,
                        MaterialResponse, PerfectConductor, Plasma, Tabulated,
                        TabulatedAbsorption, vacuum)

ABSORPTION_HEADER = ["omega_rad_s", "eps_imag"]

#: names resolvable on the command line without a file
BUILTIN_MATERIALS = {
    "pc": PerfectConductor,
    "vacuum": vacuum,
    "permeable": InfinitelyPermeable,
}


def _tail_to_dict(tail):
    if isinstance(tail, LowTail):
        return {"model": tail.model}
    return {"model": tail.model, "exponent": tail.exponent}


def _low_tail_from_dict(d):
    return LowTail(model=d.get("model", "constant"))


def _high_tail_from_dict(d):
    return HighTail(model=d.get("model", "power"),
                    exponent=float(d.get("exponent", 3.0)))


def material_to_dict(model):
    """JSON-ready {kind, label, parameters} for any material model."""
    kind = model.kind
    if kind == "PerfectConductor" or kind == "InfinitelyPermeable":
        params = {}
    elif kind == "ConstantEpsMu":
        params = {"eps": model.eps_const, "mu": model.mu_const}
    elif kind == "Drude":
        params = {"omega_p": model.omega_p, "gamma": model.gamma}
    elif kind == "Plasma":
        params = {"omega_p": model.omega_p}
    elif kind == "LorentzOscillators":
        params = {"oscillators": [
            {"f": f, "omega_p": wp, "omega0": w0, "gamma": g}
            for f, wp, w0, g in model.oscillators]}
    elif kind == "DebyeMagnetic":
        params = {"delta_mu": model.delta_mu, "omega_m": model.omega_m,
                  "delta_eps": model.delta_eps, "omega_e": model.omega_e}
    elif kind == "Tabulated":
        t = model.table
        params = {"omega_rad_s": t.omega.tolist(),
                  "eps_imag": t.eps_imag.tolist(),
                  "low_tail": _tail_to_dict(t.low_tail),
                  "high_tail": _tail_to_dict(t.high_tail)}
    else:
        raise IngestionError(f"cannot serialize material kind {kind!r}")
    return {"kind": kind, "label": model.label, "parameters": params}


def material_from_dict(doc):
    """Rebuild a material model from its JSON document."""
    try:
        kind = doc["kind"]
    except (TypeError, KeyError):
        raise IngestionError("material document needs a 'kind' field")
    label = doc.get("label")
    params = doc.get("parameters", {})
    try:
        if kind == "PerfectConductor":
            return PerfectConductor(**({"label": label} if label else {}))
        if kind == "InfinitelyPermeable":
            return InfinitelyPermeable(**({"label": label} if label else {}))
        if kind == "ConstantEpsMu":
            return ConstantEpsMu(params["eps"], params["mu"], label=label)
        if kind == "Drude":
            return Drude(params["omega_p"], params["gamma"], label=label)
        if kind == "Plasma":
            return Plasma(params["omega_p"], label=label)
        if kind == "LorentzOscillators":
            osc = [(o["f"], o["omega_p"], o["omega0"], o["gamma"])
                   for o in params["oscillators"]]
            return LorentzOscillators(osc, label=label)
        if kind == "DebyeMagnetic":
            return DebyeMagnetic(params["delta_mu"], params["omega_m"],
                                 delta_eps=params.get("delta_eps", 11.0),
                                 omega_e=params.get("omega_e", 2.0e14),
                                 label=label)
        if kind == "Tabulated":
            table = TabulatedAbsorption(
                params["omega_rad_s"], params["eps_imag"],
                _low_tail_from_dict(params.get("low_tail", {})),
                _high_tail_from_dict(params.get("high_tail", {})))
            return Tabulated(table, label=label)
    except KeyError as exc:
        raise IngestionError(f"material kind {kind!r} is missing parameter {exc}")
    raise IngestionError(f"unknown material kind {kind!r}")


def load_material(spec):
    """Resolve a CLI material argument: builtin name or JSON file path."""
    if spec in BUILTIN_MATERIALS:
        return BUILTIN_MATERIALS[spec]()
    path = Path(spec)
    if not path.exists():
        raise IngestionError(
            f"material {spec!r} is neither a builtin "
            f"({', '.join(sorted(BUILTIN_MATERIALS))}) nor an existing file")
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise IngestionError(f"{path}: not valid JSON ({exc})")
    return material_from_dict(doc)


def save_material(model, path):
    Path(path).write_text(json.dumps(material_to_dict(model), indent=2) + "\n")


def material_digest(model):
    """Stable sha256 over the canonical JSON form of the model."""
    canonical = json.dumps(material_to_dict(model), sort_keys=True,
                           separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


def load_absorption_table(csv_path):
    """Read an absorption CSV plus its optional tail sidecar.

    The sidecar is ``<stem>.json`` next to the CSV, e.g. gold.csv is
    configured by gold.json; absent sidecar means default tails.
    """
    csv_path = Path(csv_path)
    if not csv_path.exists():
        raise IngestionError(f"no such file: {csv_path}")
    omega = []
    eps_imag = []
    with open(csv_path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise IngestionError(f"{csv_path}: empty file")
        if [h.strip() for h in header] != ABSORPTION_HEADER:
            raise IngestionError(
                f"{csv_path}: header must be '{','.join(ABSORPTION_HEADER)}', "
                f"got {','.join(header)!r}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                omega.append(float(row[0]))
                eps_imag.append(float(row[1]))
            except (ValueError, IndexError):
                raise IngestionError(f"{csv_path}:{lineno}: bad sample row {row!r}")
    low = None
    high = None
    sidecar = csv_path.with_suffix(".json")
    if sidecar.exists():
        try:
            cfg = json.loads(sidecar.read_text())
        except json.JSONDecodeError as exc:
            raise IngestionError(f"{sidecar}: not valid JSON ({exc})")
        low = _low_tail_from_dict(cfg.get("low_tail", {}))
        high = _high_tail_from_dict(cfg.get("high_tail", {}))
    return TabulatedAbsorption(omega, eps_imag, low, high)
