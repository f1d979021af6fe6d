"""Experiment records and their on-disk forms.

Every scenario emits one JSON record (resolved config, per-trial arrays,
aggregates) and one CSV summary with the fixed header
``sweep,criterion,mean,stderr,n``.  Serialization is canonical: keys are
sorted, floats use Python's shortest round-trip repr, and nothing
time- or host-dependent is stored, so identical runs produce identical
bytes.  File names are ``<scenario>_<seed>.json`` / ``.csv``.
"""

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

CSV_HEADER = ("sweep", "criterion", "mean", "stderr", "n")
SCHEMA_VERSION = 1


@dataclass
class ExperimentRecord:
    scenario: str
    seed: int
    config: dict
    trials: dict
    aggregates: dict
    failures: list = field(default_factory=list)
    schema_version: int = SCHEMA_VERSION

    def summary_rows(self) -> list:
        """CSV rows (sweep, criterion, mean, stderr, n) from the aggregates."""
        return [tuple(row) for row in self.aggregates["summary"]]

    def to_json_bytes(self) -> bytes:
        payload = {
            "schema_version": self.schema_version,
            "scenario": self.scenario,
            "seed": self.seed,
            "config": self.config,
            "trials": self.trials,
            "aggregates": self.aggregates,
            "failures": self.failures,
        }
        text = json.dumps(payload, sort_keys=True, indent=2, allow_nan=False)
        return (text + "\n").encode("utf-8")

    def write(self, out_dir) -> tuple[Path, Path]:
        """Write the JSON record and CSV summary; returns their paths."""
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        stem = f"{self.scenario}_{self.seed}"
        json_path = out / f"{stem}.json"
        csv_path = out / f"{stem}.csv"
        json_path.write_bytes(self.to_json_bytes())
        with open(csv_path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            for sweep, criterion, mean, stderr, n in self.summary_rows():
                writer.writerow([_fmt(sweep), criterion, _fmt(mean), _fmt(stderr), n])
        return json_path, csv_path


def load_record(path) -> ExperimentRecord:
    payload = json.loads(Path(path).read_text())
    return ExperimentRecord(
        scenario=payload["scenario"],
        seed=payload["seed"],
        config=payload["config"],
        trials=payload["trials"],
        aggregates=payload["aggregates"],
        failures=payload.get("failures", []),
        schema_version=payload["schema_version"],
    )


def _fmt(value):
    return repr(float(value)) if isinstance(value, float) else value
