"""
Surface spec files
==================

Specs are JSON documents with 1-based indices and only the ``j < k`` slots of
the tensor.  This writes one, reads it back, and prints the same report the
``canonhilb report`` command produces.
"""
import json
import tempfile
from pathlib import Path

from canonhilb import dump_spec, load_spec, product_of_curves
from canonhilb.cli import build_report
from canonhilb.sampling import COMPLEX_POLICY, PENCIL_POLICY

text = dump_spec(product_of_curves(2, 3))
print(text[:200], "...")
assert load_spec(text) == product_of_curves(2, 3)

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "c2xc3.json"
    path.write_text(text, encoding="utf-8")
    spec = load_spec(path.read_text(encoding="utf-8"))

report = build_report(spec, PENCIL_POLICY, COMPLEX_POLICY)
print(json.dumps(report["degree"], indent=2, sort_keys=True))
