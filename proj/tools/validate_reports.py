#!/usr/bin/env python3
"""Validate `ellsurf report` output against report_schema.json.

usage: validate_reports.py ELLSURF SCHEMA
"""
import json
import subprocess
import sys

import jsonschema

RUNS = [
    ["--fixture", "x3_plus_t_f5"],
    ["--fixture", "legendre_f5"],
    ["--fixture", "generic_i1_f5"],
    ["--fixture", "x3_plus_t_f5", "--mutate", "c_v:inf:1"],
    ["--fixture", "x3_plus_t_f5", "--mutate", "remove:inf:0"],
    ["--fixture", "legendre_f5", "--mutate", "r_i:[0, 1]:1:1", "--assume-rank", "1"],
]


def main():
    exe, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    bad = 0
    for args in RUNS:
        out = subprocess.run([exe, "report", *args], check=True, capture_output=True, text=True).stdout
        report = json.loads(out)
        errors = list(validator.iter_errors(report))
        failed = any(c["status"] == "FAIL" for c in report["checks"])
        ok = not errors and failed == report["failed"]
        bad += not ok
        print(("ok   " if ok else "FAIL ") + " ".join(args))
        for e in errors[:5]:
            print("     ", "/".join(map(str, e.absolute_path)), e.message[:200])
    # the schema must reject a damaged report
    del report["failed"]
    report["checks"][0]["status"] = "OK"
    rejected = len(list(validator.iter_errors(report))) == 2
    bad += not rejected
    print(("ok   " if rejected else "FAIL ") + "damaged report rejected")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
