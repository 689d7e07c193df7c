"""Runs the CLI on the bundled case-study-sized spec and validates report.json against the published schema."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def main() -> int:
    cli, data_dir, schema_path = sys.argv[1], Path(sys.argv[2]), Path(sys.argv[3])
    schema = json.loads(schema_path.read_text())
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        csv = tmp / "cases.csv"
        subprocess.run([cli, "generate", "--spec", str(data_dir / "case_study_spec.json"), "--out", str(csv)], check=True)
        subprocess.run([cli, "search", "--data", str(csv), "--budget", "300", "--out", str(tmp / "s")], check=True)
        runs = {
            "plain": ["--trials", "50"],
            "full": ["--trials", "50", "--best-from", str(tmp / "s" / "search.json"),
                     "--expert", str(data_dir / "expert_ranking.csv"), "--standardize", "--timings"],
        }
        for name, extra in runs.items():
            out = tmp / name
            subprocess.run([cli, "run", "--data", str(csv), "--out", str(out), *extra], check=True)
            report = json.loads((out / "report.json").read_text())
            jsonschema.validate(report, schema)
            print(f"{name}: report.json valid")
    return 0


if __name__ == "__main__":
    sys.exit(main())
