#!/usr/bin/env python3
# ZStab - Exact asymptotic stability of numerical sheaf classes
# Copyright (C) 2025 Oleg Tokmakov
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Write the compiled-in fixtures as workspace JSON under samples/generated/."""

import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from zstab.services.presets import FIXTURES
from zstab.utils.helpers import dumps_json
from zstab.workspace import fixture_to_json


def main():
    """Export every fixture."""
    target = Path(__file__).parent.parent / "samples" / "generated"
    target.mkdir(parents=True, exist_ok=True)

    for name, build in sorted(FIXTURES.items()):
        path = target / f"{name}.json"
        path.write_text(dumps_json(fixture_to_json(build())) + "\n", encoding="utf-8")
        print(f"Wrote {path}")


if __name__ == "__main__":
    main()
