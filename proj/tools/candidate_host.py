#!/usr/bin/env python3
# Copyright 2025 The EvoStage Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Wraps one candidate source file behind the newline-delimited JSON protocol.

Usage: candidate_host.py <candidate_source.py> <component_id>

The host loads the candidate, emits {"op":"hello","component":<id>} on
stdout, then answers one JSON request per line until {"op":"bye"}.  Load
failures (syntax errors, missing entry point) are reported on stderr with a
non-zero exit before any handshake.  Candidate exceptions during a call are
reported as {"error": "..."} responses; non-finite floats are serialized as
the strings "nan" / "inf" / "-inf" because JSON has no representation for
them.
"""

import inspect
import json
import math
import sys

ENTRY_POINTS = {
    "learning_rate": "adjust_learning_rate",
    "steps": "num_steps",
    "acquisition": "utility_value",
}


def write_line(stream, payload):
    stream.write(json.dumps(payload, allow_nan=False))
    stream.write("\n")
    stream.flush()


def clean_float(value):
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def call_with_accepted_kwargs(fn, kwargs):
    parameters = inspect.signature(fn).parameters
    if any(p.kind == inspect.Parameter.VAR_KEYWORD for p in parameters.values()):
        return fn(**kwargs)
    return fn(**{k: v for k, v in kwargs.items() if k in parameters})


def main():
    if len(sys.argv) != 3:
        print("usage: candidate_host.py <source.py> <component_id>", file=sys.stderr)
        return 2
    source_path, component_id = sys.argv[1], sys.argv[2]

    protocol_out = sys.stdout
    sys.stdout = sys.stderr  # candidate print() output must not corrupt the protocol

    try:
        with open(source_path, "r", encoding="utf-8") as handle:
            source = handle.read()
        namespace = {}
        exec(compile(source, source_path, "exec"), namespace)  # noqa: S102 - the point of this host
    except BaseException as exc:  # load failure -> no handshake, IllegalCode upstream
        print(f"candidate load failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1

    entry_name = ENTRY_POINTS.get(component_id)
    if entry_name is not None and entry_name not in namespace:
        print(f"candidate load failed: missing function '{entry_name}'", file=sys.stderr)
        return 1

    write_line(protocol_out, {"op": "hello", "component": component_id})

    init_learning_rate = None
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        try:
            request = json.loads(line)
            op = request.get("op")
            if op == "bye":
                return 0
            if op == "learning_rate":
                fn = namespace[ENTRY_POINTS["learning_rate"]]
                kwargs = {k: v for k, v in request.items() if k != "op"}
                if init_learning_rate is None:
                    init_learning_rate = kwargs.get("learning_rate_prev")
                kwargs["init_learning_rate"] = init_learning_rate
                result = call_with_accepted_kwargs(fn, kwargs)
                write_line(protocol_out, {"learning_rate": clean_float(result)})
            elif op == "steps":
                fn = namespace[ENTRY_POINTS["steps"]]
                kwargs = {k: v for k, v in request.items() if k != "op"}
                result = call_with_accepted_kwargs(fn, kwargs)
                write_line(protocol_out, {"steps": int(result)})
            elif op == "utility":
                fn = namespace[ENTRY_POINTS["acquisition"]]
                points = request["points"]
                kwargs = {
                    "stage_index": request["stage_index"],
                    "iteration": request["iteration"],
                    "best_f": request["best_f"],
                    "mu": [p["mu"] for p in points],
                    "sigma": [p["sigma"] for p in points],
                }
                result = call_with_accepted_kwargs(fn, kwargs)
                utilities = [clean_float(v) for v in result]
                write_line(protocol_out, {"utility": utilities})
            else:
                write_line(protocol_out, {"error": f"unknown op: {op!r}"})
        except Exception as exc:  # candidate bug -> RuntimeFailure upstream
            write_line(protocol_out, {"error": f"{type(exc).__name__}: {exc}"})
    return 0


if __name__ == "__main__":
    sys.exit(main())
