"""File formats: set files, function files, CSV report tables, and JSON
threshold reports.

Every emitted file round-trips through the parsers in this module.
Numeric CSV fields carry 17 significant digits so doubles survive the
round trip exactly; rationals appear as "num/den" strings; the infinity
sentinel is the string "inf".  Outputs are byte-stable given the same
config: the timestamp field stays null unless explicitly supplied.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Iterable, Mapping, Sequence, TextIO

import numpy as np

from . import __version__
from .ensembles import PointSet, SetDescriptor
from .field import PrimeField, VectorSpace
from .rationals import fmt as fmt_exact
from .rationals import parse as parse_exact
from .restriction import GrowthSweep, ThresholdReport
from .salem import SalemFit, SpectralProfile
from .spectral import GridFunction

PROFILE_FIELDS = ("family", "params", "p", "d", "p_exp", "norm",
                  "log_set_size", "log_norm")
FIT_FIELDS = ("family", "params", "p_exp", "fitted_s", "stderr",
              "n_points", "predicted_s")
SWEEP_FIELDS = ("family", "params", "p", "d", "q", "lower_bound",
                "witness_tag", "converged", "iters")


def f17(x: float) -> str:
    """17 significant digits: lossless for IEEE doubles."""
    return format(float(x), ".17g")


def fmt_p_exp(p_exp: float) -> str:
    if p_exp == math.inf:
        return "inf"
    if float(p_exp) == int(p_exp):
        return str(int(p_exp))
    return f17(p_exp)


def parse_p_exp(s: str) -> float:
    return math.inf if s.strip() in ("inf", "infinity") else float(s)


def envelope(config: Mapping, timestamp: str | None = None) -> dict:
    return {
        "tool": "ffrestrict",
        "version": __version__,
        "timestamp": timestamp,
        "config": dict(config),
    }


# ---------------------------------------------------------------- set files

def write_set(fp: TextIO, e: PointSet) -> None:
    """JSON header line {"p","d","family","params"}, then the sorted flat
    indices, one per line."""
    desc = e.descriptor
    header = {
        "p": e.space.p,
        "d": e.space.dimension,
        "family": desc.family if desc else "unknown",
        "params": desc.params_dict() if desc else {},
    }
    fp.write(json.dumps(header, sort_keys=True, separators=(",", ":")))
    fp.write("\n")
    for idx in e.indices():
        fp.write(f"{int(idx)}\n")


def read_set(fp: TextIO) -> PointSet:
    header = json.loads(fp.readline())
    p, d = int(header["p"]), int(header["d"])
    space = VectorSpace(PrimeField(p), d, max_points=max(p ** d, 1))
    memb = np.zeros(space.size, dtype=bool)
    for line in fp:
        line = line.strip()
        if line:
            memb[int(line)] = True
    desc = SetDescriptor.make(header.get("family", "unknown"),
                              **header.get("params", {}))
    return PointSet(space, memb, desc)


# ----------------------------------------------------------- function files

def write_function(fp: TextIO, f: GridFunction) -> None:
    """JSON header line {"p","d"}, then CSV rows index,re,im."""
    header = {"p": f.space.p, "d": f.space.dimension}
    fp.write(json.dumps(header, sort_keys=True, separators=(",", ":")))
    fp.write("\n")
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(("index", "re", "im"))
    for idx, v in enumerate(f.values):
        writer.writerow((idx, f17(v.real), f17(v.imag)))


def read_function(fp: TextIO) -> GridFunction:
    header = json.loads(fp.readline())
    p, d = int(header["p"]), int(header["d"])
    space = VectorSpace(PrimeField(p), d, max_points=max(p ** d, 1))
    values = np.zeros(space.size, dtype=np.complex128)
    reader = csv.reader(fp)
    head = next(reader)
    if head != ["index", "re", "im"]:
        raise ValueError(f"unexpected function-file header {head}")
    for row in reader:
        if not row:
            continue
        values[int(row[0])] = float(row[1]) + 1j * float(row[2])
    return GridFunction(space, values)


# ------------------------------------------------------------- CSV reports

def write_csv(fp: TextIO, fields: Sequence[str], rows: Iterable[Mapping],
              config: Mapping, timestamp: str | None = None) -> None:
    """Envelope comment line, header, then rows; '\\n' line endings."""
    fp.write("# ")
    fp.write(json.dumps(envelope(config, timestamp), sort_keys=True,
                        separators=(",", ":")))
    fp.write("\n")
    writer = csv.DictWriter(fp, fieldnames=list(fields), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: row.get(k, "") for k in fields})


def read_csv(fp: TextIO) -> tuple[dict, list[dict]]:
    first = fp.readline()
    if not first.startswith("# "):
        raise ValueError("missing envelope comment line")
    env = json.loads(first[2:])
    reader = csv.DictReader(fp)
    return env, list(reader)


def _descriptor_columns(desc: SetDescriptor | None) -> dict:
    if desc is None:
        return {"family": "unknown", "params": "{}"}
    return {"family": desc.family, "params": desc.params_json()}


def profile_rows(prof: SpectralProfile) -> list[dict]:
    base = _descriptor_columns(prof.descriptor)
    rows = []
    for p_exp, norm in prof.entries:
        rows.append({
            **base,
            "p": prof.field_size,
            "d": prof.dimension,
            "p_exp": fmt_p_exp(p_exp),
            "norm": f17(norm),
            "log_set_size": f17(math.log(prof.set_size)),
            "log_norm": f17(math.log(norm)) if norm > 0 else "-inf",
        })
    return rows


def fit_rows(fits: Sequence[SalemFit]) -> list[dict]:
    rows = []
    for fit in fits:
        base = _descriptor_columns(fit.descriptor)
        rows.append({
            **base,
            "p_exp": fmt_p_exp(fit.p_exp),
            "fitted_s": f17(fit.fitted_s),
            "stderr": f17(fit.stderr),
            "n_points": fit.n_points,
            "predicted_s": "" if fit.predicted_s is None
                           else f17(fit.predicted_s),
        })
    return rows


def sweep_rows(sweep: GrowthSweep) -> list[dict]:
    base = _descriptor_columns(sweep.descriptor)
    rows = []
    for row in sweep.rows:
        est = row.estimate
        rows.append({
            **base,
            "p": row.p,
            "d": row.d,
            "q": fmt_p_exp(sweep.q),
            "lower_bound": f17(est.lower_bound),
            "witness_tag": est.witness_tag,
            "converged": str(est.converged).lower(),
            "iters": est.iterations,
        })
    return rows


# ------------------------------------------------------------ JSON reports

def threshold_report_dict(report: ThresholdReport) -> dict:
    return {
        "family": report.family,
        "params": dict(report.params),
        "d": report.d,
        "alpha": fmt_exact(report.alpha),
        "s_inf": fmt_exact(report.s_inf),
        "optimal_p": fmt_exact(report.optimal_p),
        "s_at_optimal": fmt_exact(report.s_at_optimal),
        "beta_p": fmt_exact(report.beta_p),
        "q_main": "inadmissible" if report.q_main is None
                  else fmt_exact(report.q_main),
        "q_corollary": "inadmissible" if report.q_corollary is None
                       else fmt_exact(report.q_corollary),
        "q_mocktao": fmt_exact(report.q_mocktao),
        "improvement": report.improvement,
        "lambda": None if report.lam is None else fmt_exact(report.lam),
        "q_of_lambda": None if report.q_of_lambda is None
                       else fmt_exact(report.q_of_lambda),
    }


def parse_threshold_value(s: str):
    if s == "inadmissible":
        return None
    return parse_exact(s)


def write_json_report(fp: TextIO, payload: Mapping, config: Mapping,
                      timestamp: str | None = None) -> None:
    doc = envelope(config, timestamp)
    doc["report"] = dict(payload)
    json.dump(doc, fp, indent=2, sort_keys=True)
    fp.write("\n")


def read_json_report(fp: TextIO) -> dict:
    return json.load(fp)
