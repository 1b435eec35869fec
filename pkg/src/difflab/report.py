"""JSON/text rendering of analysis results. Fractions are written as ``"p/q"``."""

from __future__ import annotations

import json
from fractions import Fraction

from difflab.correlation import SpectralReport
from difflab.subst import (
    SubstitutionRule,
    instruction_matrices,
    is_aperiodic_pansiot,
    is_primitive,
    perron_data,
    substitution_matrix,
)


def frac(x) -> str:
    return str(Fraction(x))


def fracs(xs) -> list[str]:
    return [frac(x) for x in xs]


def rule_dict(rule: SubstitutionRule) -> dict:
    return {"alphabet": "".join(rule.alphabet), "rules": rule.as_dict()}


def analysis_dict(rule: SubstitutionRule) -> dict:
    primitive, exponent = is_primitive(rule)
    out = {
        "rule": rule_dict(rule),
        "length": rule.length,
        "instruction_matrices": instruction_matrices(rule),
        "substitution_matrix": substitution_matrix(rule),
        "primitive": primitive,
        "primitivity_exponent": exponent,
    }
    if primitive:
        aperiodic, letter = is_aperiodic_pansiot(rule)
        pf = perron_data(rule)
        out["pansiot"] = {"aperiodic": aperiodic if aperiodic else "inconclusive", "witness": letter}
        out["perron"] = {"eigenvalue": pf.eigenvalue, "frequencies": fracs(pf.frequencies)}
    return out


def spectral_dict(rep: SpectralReport) -> dict:
    semi = rep.semipositivity
    return {
        "rule": rule_dict(rep.rule),
        "horizon": rep.horizon,
        "primitivity_exponent": rep.primitive_exponent,
        "pansiot_witness": rep.pansiot_letter,
        "frequencies": fracs(rep.frequencies),
        "pair_labels": list(rep.sigma_hats[0].labels),
        "sigma_hat": {str(s.k): fracs(s.entries) for s in rep.sigma_hats},
        "ergodic_classes": [list(c) for c in rep.decomposition.ergodic_classes],
        "transient": list(rep.decomposition.transient),
        "semipositivity": {
            "w1": "1",
            "w2_interval": None if semi.lower is None else [frac(semi.lower), frac(semi.upper)],
        },
        "rays": [
            {
                "name": ray.name,
                "params": fracs(ray.params),
                "vector": fracs(ray.vector),
                "coefficients": fracs(sv.coeffs),
                "certified_values": None if sv.certified_values is None else fracs(sv.certified_values),
                "verdict": sv.verdict.value,
            }
            for ray, sv in zip(semi.rays, rep.rays)
        ],
        "balanced": {
            "weights": rep.weights,
            "autocorrelation": fracs(rep.balanced.coeffs),
            "verdict": rep.balanced.verdict.value,
        },
        "periodicity_certificate": None if rep.periodicity is None else {
            "period": rep.periodicity.period,
            "residue_checks": rep.periodicity.checked,
        },
        "notes": rep.notes,
        "verdict": rep.verdict,
    }


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _row(xs) -> str:
    return " ".join(f"{x:>5}" for x in xs)


def spectral_text(rep: SpectralReport) -> str:
    doc = spectral_dict(rep)
    out = [f"rule: {rep.rule}",
           f"primitive (M^{rep.primitive_exponent} > 0); letter {rep.pansiot_letter} has two left neighbours",
           f"frequencies u = ({', '.join(doc['frequencies'])})",
           "",
           "pair correlations (columns " + " ".join(doc["pair_labels"]) + ")"]
    for k, entries in doc["sigma_hat"].items():
        out.append(f"  S({k:>3}) = {_row(entries)}")
    out.append("")
    for i, cls in enumerate(doc["ergodic_classes"], 1):
        out.append(f"E_{i} = {{{', '.join(cls)}}}")
    out.append(f"T   = {{{', '.join(doc['transient'])}}}")
    interval = doc["semipositivity"]["w2_interval"]
    if interval:
        out.append(f"v positive semidefinite at w1 = 1 iff {interval[0]} <= w2 <= {interval[1]}")
    out.append("")
    shown = min(rep.horizon, 8)
    for ray in doc["rays"]:
        out.append(f"{ray['name']} at w = ({', '.join(ray['params'])}): {_row(ray['vector'])}")
        out.append(f"  c(0..{shown}) = {', '.join(ray['coefficients'][:shown + 1])}  ->  {ray['verdict']}")
    bal = doc["balanced"]
    out.append(f"balanced eta(0..{shown}) = {', '.join(bal['autocorrelation'][:shown + 1])}  ->  {bal['verdict']}")
    out += [f"note: {n}" for n in rep.notes]
    out.append(f"verdict: {rep.verdict}")
    return "\n".join(out) + "\n"
