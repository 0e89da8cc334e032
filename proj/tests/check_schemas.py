# Copyright 2026 The ExtremeCast Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Validates CLI artifacts against the JSON schemas in schemas/."""

import argparse
import json
import pathlib
import subprocess
import sys

import jsonschema

CONFIG = {
    "seed": 3,
    "dataset": {"lookback": 7},
    "features": {"top_k": 6},
    "model": {"embed_dim": 8, "lstm_hidden": 4, "gru_hidden": 4, "stream_dim": 4, "n_heads": 2, "n_states": 3},
    "baselines": {"tcn": {"filters": [4, 4], "dilations": [1, 2]}, "nbeats": {"units": 8, "stacks": 2}},
    "training": {"batch_size": 32, "max_epochs": 2, "patience": 2},
}


def run(cli, *args):
    subprocess.run([cli, *map(str, args)], check=True, stdout=subprocess.DEVNULL)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cli", required=True)
    ap.add_argument("--schemas", required=True, type=pathlib.Path)
    ap.add_argument("--workdir", required=True, type=pathlib.Path)
    a = ap.parse_args()
    w = a.workdir
    w.mkdir(parents=True, exist_ok=True)
    schema = {n: json.loads((a.schemas / f"{n}.schema.json").read_text()) for n in ("run_config", "report", "checkpoint")}
    for s in schema.values():
        jsonschema.Draft202012Validator.check_schema(s)

    cfg = w / "config.json"
    cfg.write_text(json.dumps(CONFIG))
    jsonschema.validate(CONFIG, schema["run_config"])
    run(a.cli, "synth", "--days", 500, "--seed", 3, "--out", w / "synthetic.csv")
    run(a.cli, "prepare", "--config", cfg, "--input", w / "synthetic.csv", "--out", w / "dataset.json")
    failures = 0
    for model in ("mmwstm", "tcn", "nbeats", "persistence"):
        out = w / model
        run(a.cli, "train", "--config", cfg, "--data", w / "dataset.json", "--model", model, "--out", out)
        run(a.cli, "evaluate", "--checkpoint", out / "checkpoint.json", "--data", w / "dataset.json",
            "--report", out / "report.json", "--timing", out / "timing.json")
        for name, path in (("checkpoint", out / "checkpoint.json"), ("report", out / "report.json")):
            try:
                jsonschema.validate(json.loads(path.read_text()), schema[name])
                print(f"ok {model} {name}")
            except jsonschema.ValidationError as e:
                failures += 1
                print(f"FAIL {model} {name}: {e.message}")
    bad = dict(CONFIG, bogus=1)
    try:
        jsonschema.validate(bad, schema["run_config"])
        failures += 1
        print("FAIL run_config schema accepts unknown keys")
    except jsonschema.ValidationError:
        print("ok run_config rejects unknown keys")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
