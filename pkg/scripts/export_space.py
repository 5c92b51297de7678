#!/usr/bin/env python3
"""Write a built-in space in the JSON import format (see docs/schemas/space.schema.json).

    python3 scripts/export_space.py s3xs3 > s3xs3.json
    curvlab spectrum --space s3xs3.json --operator rhat
"""

import argparse
import json

from curvlab.homogeneous import BUILTINS, build_space, space_to_dict

p = argparse.ArgumentParser(description="export a built-in space as JSON")
p.add_argument("space", choices=BUILTINS)
print(json.dumps(space_to_dict(build_space(p.parse_args().space)), indent=1))
