"""Minimal remote policy: never moves, or answers with a wrong id on request."""
import json
import sys

bad_id = "--bad-id" in sys.argv
for line in sys.stdin:
    msg = json.loads(line)
    assert msg["op"] == "act"
    reply = {"id": msg["id"] + (1 if bad_id else 0), "targets": []}
    sys.stdout.write(json.dumps(reply) + "\n")
    sys.stdout.flush()
