"""Run the CLI and validate its JSON report against the report schema."""

import json
import subprocess
import sys

import jsonschema


def main():
    schema_path, cli = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    runs = [
        ["verify", "--entry", "exampleA", "--samples", "3"],
        ["verify", "--entry", "hemisphere", "--samples", "3", "--canonical"],
        ["verify", "--entry", "random", "--n", "4", "--samples", "2"],
        ["identities", "--n", "3", "--samples", "2"],
    ]
    for args in runs:
        out = subprocess.run([cli, *args], capture_output=True, text=True)
        if out.returncode != 0:
            print(f"{' '.join(args)}: exit {out.returncode}\n{out.stderr}")
            return 1
        jsonschema.validate(json.loads(out.stdout), schema)
        print(f"{' '.join(args)}: valid")
    return 0


if __name__ == "__main__":
    sys.exit(main())
