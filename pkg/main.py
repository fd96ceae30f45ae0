#!/usr/bin/env python3
"""
gfbbm-lab - numerical laboratory for the generalized fractional BBM equation.

Layered layout:
- Data models in src/gfbbm/models/
- Data access in src/gfbbm/data/
- Numerical services in src/gfbbm/services/
- Presentation in src/gfbbm/presentation/
- Utilities in src/gfbbm/utils/
"""

import sys
from pathlib import Path

# Add src directory to path for imports
src_path = Path(__file__).parent / "src"
sys.path.insert(0, str(src_path))

from gfbbm.app import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
