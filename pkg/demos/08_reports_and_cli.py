"""The command line front end, driven in-process; artifacts go to a temporary directory."""

import json
import tempfile
from pathlib import Path

from trapgauss.cli import main

out = Path(tempfile.mkdtemp(prefix="trapgauss-demo-"))

main(["analyze", "--surface", "desitter-product", "--grid=-1,1,10,-3,3,10",
      "--project", "1,2,3", "--out", str(out / "desitter")])
report = json.loads((out / "desitter" / "report.json").read_text())
print("taxonomy:", report["taxonomy"]["kind"], report["taxonomy"]["lambda"])
print("checks:", report["checks"])

main(["forge", "--h", "0.03125", "--eigen-k", "2", "--out", str(out / "forge")])
print("forge artifacts:", sorted(p.name for p in (out / "forge").iterdir()))

code = main(["parse-check", "sin(u"])
print("parse-check exit code:", code)
print("artifacts written under", out)
