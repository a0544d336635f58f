"""
Running experiments from key=value configs
==========================================

The same machinery backs the ``fracivp`` command.
"""

# %%
import json
import tempfile
from pathlib import Path

from fracivp.harness import PRESETS, ConfigError, execute, parse_config, run

print(PRESETS["riccati-fig1"])

# %%
config = parse_config(PRESETS["riccati-fig1"])
result = execute(config)
print(result.header)
print({k: v for k, v in result.summary.items() if k.endswith("deviation")})

# %%
# Validation collects every problem with its location.
try:
    parse_config("method=abm\nalpha=1.5\nt_end=1\nrhs=\n")
except ConfigError as err:
    for v in err.violations:
        print(v)

# %%
# Writing files: CSV plus a JSON summary beside it.
with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / "fig1.csv"
    status = run(parse_config(PRESETS["riccati-fig1"], {"output": str(out)}))
    print("exit status", status)
    print(out.read_text().splitlines()[:3])
    summary = json.loads(out.with_name("fig1.summary.json").read_text())
    print(summary["memory_terms"])
