"""Report emission (JSON and plain text) and pretty element rendering."""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import FiniteAlgebra


def emit(report: dict, fmt="json", stream=None):
    """Write ``report`` as JSON or as indented text; both end with a newline."""
    text = to_json_text(report) if fmt == "json" else to_text(report)
    if stream is not None:
        stream.write(text)
    return text


def to_json_text(report):
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def _scalar(v):
    if isinstance(v, (dict, list)) or v is None or isinstance(v, bool):
        return json.dumps(v, ensure_ascii=False)
    return str(v)


def _is_flat(v):
    return isinstance(v, list) and all(not isinstance(e, dict) for e in v)


def to_text(report, indent=0):
    lines = []
    pad = "  " * indent
    for key, value in report.items():
        if isinstance(value, dict) and value:
            lines.append(f"{pad}{key}:")
            lines.append(to_text(value, indent + 1).rstrip("\n"))
        elif isinstance(value, list) and value and not _is_flat(value):
            lines.append(f"{pad}{key}:")
            for item in value:
                if isinstance(item, dict):
                    body = to_text(item, indent + 2).rstrip("\n").lstrip()
                    lines.append(f"{pad}  - {body}")
                else:
                    lines.append(f"{pad}  - {_scalar(item)}")
        else:
            lines.append(f"{pad}{key}: {_scalar(value)}")
    return "\n".join(lines) + "\n"


def _fraction(k, n):
    if n == 0:
        return "0"
    f = Fraction(k, n)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _chain_lengths(alg):
    if not isinstance(alg, FiniteAlgebra):
        return None
    if alg.chain_n is not None:
        return [alg.chain_n]
    if alg.factors and all(getattr(f, "chain_n", None) is not None for f in alg.factors):
        return [f.chain_n for f in alg.factors]
    return None


def pretty_render(alg):
    """Render chain coordinates as fractions k/n; None when ``alg`` has no chain coordinates."""
    lengths = _chain_lengths(alg)
    if lengths is None:
        return None

    def render(x):
        lab = alg.labels[x]
        if alg.chain_n is not None:
            return _fraction(lab, alg.chain_n)
        return [_fraction(k, n) for k, n in zip(lab, lengths)]

    return render
