"""Frozen golden corpus of P-resolutions over the family parameter grids.

One JSON-lines file per family; each line is a canonical record
{family, params, zcf, notation} with sorted keys and no spaces.
"""

import json
from pathlib import Path

from .appendix import FAMILIES, actual_rows, grid_points
from .errors import ValidationError

DEFAULT_DIR = Path(__file__).parent / "data" / "corpus"


def canonical(record):
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def family_records(name):
    """Algorithm output for every grid point of a family, in grid order."""
    out = []
    for params in grid_points(name):
        for zcf, notation in actual_rows(name, params):
            out.append({"family": name, "params": params, "zcf": zcf, "notation": notation})
    return out


def family_text(name):
    return "".join(canonical(r) + "\n" for r in family_records(name))


def regen(path=DEFAULT_DIR):
    """Write one file per family; returns the list of written paths."""
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    written = []
    for name in sorted(FAMILIES):
        target = path / f"{name}.jsonl"
        target.write_text(family_text(name), encoding="utf-8")
        written.append(target)
    return written


def check(path=DEFAULT_DIR):
    """Regenerate every family and diff against the stored files line by line.

    Returns a list of (family, line number, stored line, regenerated line);
    a missing line is None. Raises ValidationError when a file is missing or
    does not parse.
    """
    path = Path(path)
    diffs = []
    for name in sorted(FAMILIES):
        target = path / f"{name}.jsonl"
        if not target.is_file():
            raise ValidationError(f"corpus file missing: {target}")
        stored = target.read_text(encoding="utf-8").splitlines()
        for number, line in enumerate(stored, 1):
            try:
                json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"corrupt corpus line {target}:{number}: {exc}") from None
        fresh = family_text(name).splitlines()
        for i in range(max(len(stored), len(fresh))):
            old = stored[i] if i < len(stored) else None
            new = fresh[i] if i < len(fresh) else None
            if old != new:
                diffs.append((name, i + 1, old, new))
    return diffs
