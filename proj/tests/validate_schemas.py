"""Runs the CLI with --format json and validates each output against its schema."""
import json
import pathlib
import subprocess
import sys

import jsonschema

tool = sys.argv[1]
schemas = pathlib.Path(sys.argv[2])

cases = [
    ("enumerate", ["enumerate", "grigorchuk", "--depth", "2"], {0}),
    ("abelianize", ["abelianize", "gupta-sidki", "--depth", "3"], {0}),
    ("wp", ["wp", "grigorchuk", "adadadad"], {0}),
    ("act", ["act", "gupta-sidki", "t a", "--level", "2"], {0}),
    ("order", ["order", "grigorchuk", "--level", "3"], {0}),
    ("order", ["order", "sym(4)"], {0}),
    ("tc", ["tc", "sym(4)", "s1"], {0}),
    ("smallcanc", ["smallcanc", "x^7", "y^7", "(x y)^7"], {0}),
    ("smallcanc", ["smallcanc", "[x,y]"], {2}),
    ("catalog", ["catalog"], {0}),
    ("lpresentation", ["catalog", "lamplighter"], {0}),
    ("lpresentation", ["embed", "hnn-example"], {0}),
    ("report", ["verify", "bsv", "lamplighter"], {0}),
    ("report", ["verify", "gupta-sidki"], {0, 2}),
]

failures = 0
for schema_name, args, codes in cases:
    proc = subprocess.run([tool, *args, "--format", "json"], capture_output=True, text=True)
    label = " ".join(args)
    if proc.returncode not in codes:
        print(f"FAIL {label}: exit {proc.returncode}\n{proc.stderr}")
        failures += 1
        continue
    schema = json.loads((schemas / f"{schema_name}.schema.json").read_text())
    try:
        jsonschema.validate(json.loads(proc.stdout), schema)
        print(f"ok   {label}")
    except (jsonschema.ValidationError, json.JSONDecodeError) as e:
        print(f"FAIL {label}: {e}")
        failures += 1
sys.exit(1 if failures else 0)
