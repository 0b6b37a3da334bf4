# Copyright 2026 The lexsimp Authors
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

"""Model-free stand-in for mlm_worker.py speaking the same protocol.

predict: a fixed ranked list mixing whole words, "##" pieces and specials;
only two whole words when segment_a contains "few". losses: words longer
than five letters split into two pieces costing 1.0 and 2.0 nats, shorter
words cost 0.1 per letter. Any request mentioning "fail" is an error, and
"die" makes the worker exit.
"""

import json
import sys

RANKED = [["sat", 0.30], ["##s", 0.20], ["lay", 0.10], ["[SEP]", 0.08], ["stood", 0.07],
          ["##ed", 0.05], ["rested", 0.04], [",", 0.03], ["slept", 0.02], ["waited", 0.01]]


def handle(req):
    words = req.get("segment_a", []) + (req.get("segment_b") or []) + req.get("tokens", [])
    if "die" in words:
        sys.exit(3)
    if "fail" in words:
        return {"ok": False, "error": "cannot score 'fail'"}
    op = req.get("op")
    if op == "info":
        return {"ok": True, "model": "fake", "max_length": 64, "args": sys.argv[1:]}
    if op == "predict":
        ranked = RANKED if "few" not in req["segment_a"] else [["sat", 0.5], ["##s", 0.3], ["lay", 0.2]]
        return {"ok": True, "predictions": ranked[:int(req["top"])]}
    if op == "losses":
        out = []
        for t in req["targets"]:
            w = t["target"]
            if len(w) > 5:
                out.append({"pieces": [w[:3], "##" + w[3:]], "nats": [1.0, 2.0]})
            else:
                out.append({"pieces": [w], "nats": [0.1 * len(w)]})
        return {"ok": True, "losses": out}
    return {"ok": False, "error": "unknown op"}


for line in sys.stdin:
    if line.strip():
        sys.stdout.write(json.dumps(handle(json.loads(line))) + "\n")
        sys.stdout.flush()
