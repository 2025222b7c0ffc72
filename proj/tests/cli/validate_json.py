# Copyright 2026 The exfree Authors
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
"""Validates CLI JSON output against the published schema."""

import json
import subprocess
import sys

import jsonschema


def main() -> int:
    schema_path, cli, *args = sys.argv[1:]
    with open(schema_path, encoding="utf-8") as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    out = subprocess.run([cli, *args], check=True, capture_output=True, text=True).stdout
    jsonschema.validate(json.loads(out), schema, cls=jsonschema.Draft202012Validator)
    return 0


if __name__ == "__main__":
    sys.exit(main())
