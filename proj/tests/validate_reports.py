"""Validate every JSON shape nullcone_lab emits against schema/report.schema.json."""

import json
import subprocess
import sys

import jsonschema

lab, schema_path = sys.argv[1], sys.argv[2]
with open(schema_path) as fh:
    schema = json.load(fh)
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)

commands = [
    "verify binomial",
    "verify regular-rep",
    "verify epsilon-free",
    "verify gl2-delta --p 2 --n 1",
    "verify gl2-delta --p 2 --n 2 --budget 0.0001",
    "verify va-ring --p 2 --n 1 --level 3",
    "verify torus-sigma",
    "verify ga2-example",
    "verify normal-subgroup",
    "verify nagata-miyata",
    "verify all",
    "compute epsilon --module va:p=2,n=1,m=2 --point 0,1,0 --dmax 4",
    "compute epsilon --module gl2:p=2,n=1 --dmax 1",
    "compute delta --module va:p=2,n=1,m=2 --dmax 3 --generators auto",
    "compute sigma --module regular:p=2,order=2 --dmax 2",
    "compute invariant-space --gens 1,1;0,1 --field 2 --degree 2",
    "compute invariant-space --gens 0,1;1,0 --field Q --degree 2",
    "compute nullcone --module va:p=2,n=1,m=2 --point 0,0,1 --generators auto",
    "compute nullcone --module torus:q=7,r=1,m=2 --point 1,1 --dmax 3",
    "compute nullcone --module gn:p=3 --point 0,1 --dmax 1",
]

failures = 0
for cmd in commands:
    proc = subprocess.run([lab] + cmd.split() + ["--json"], capture_output=True, text=True)
    if proc.returncode not in (0, 1):
        print(f"FAIL {cmd}: exit {proc.returncode}: {proc.stderr.strip()}")
        failures += 1
        continue
    errors = sorted(validator.iter_errors(json.loads(proc.stdout)), key=str)
    if errors:
        print(f"FAIL {cmd}: {errors[0].message}")
        failures += 1
    else:
        print(f"ok   {cmd}")

sys.exit(1 if failures else 0)
