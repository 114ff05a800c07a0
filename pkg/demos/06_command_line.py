"""Driving the package through definition files and the command line.

Equivalent shell session::

    sesquiads check demos/corpus/fields.ses
    sesquiads run demos/corpus/pseudocircle.ses --task cohomology-pseudocircle --json
    SESQUIADS_BOUNDS="sep=4" sesquiads run demos/corpus/fields.ses --task separable-b
"""
import json
import subprocess
import sys
from pathlib import Path

corpus = Path(__file__).parent / "corpus"


def cli(*args):
    out = subprocess.run([sys.executable, "-m", "sesquiads", *args],
                         capture_output=True, text=True)
    return out.returncode, out.stdout.strip() or out.stderr.strip()


for path in sorted(corpus.glob("*.ses")):
    print(cli("check", str(path))[1])

code, text = cli("run", str(corpus / "pseudocircle.ses"), "--task", "cohomology-pseudocircle",
                 "--json")
(report,) = json.loads(text)
print("pseudocircle:", [h["group"] for h in report["result"]],
      "| prime definition:", report["provenance"]["prime_definition"])

code, text = cli("run", str(corpus / "modules.ses"), "--task", "flat-torsion")
print("exit", code, "|", text)

code, text = cli("run", str(corpus / "nowhere.ses"))
print("exit", code, "|", text)
