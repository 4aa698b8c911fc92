"""Regenerate the checked-in golden SVG renderings.

Run from the repository root after an intentional rendering change:

    python scripts/make_goldens.py

The rendering-regression tests byte-compare freshly rendered SVGs against
these files, so regenerate them only when the new output has been inspected.
"""

import pathlib
import sys

from intrinsic_metrics import extract_contours, grid_field, pentagram, render_svg

GOLDEN_DIR = pathlib.Path(__file__).resolve().parent.parent / "tests" / "golden"
METRICS = ("t", "jstar", "pointpair", "sratio")
LEVELS = tuple(k / 10.0 for k in range(1, 10))
RESOLUTION = 1000


def golden_svg(metric: str) -> str:
    dom = pentagram()
    field = grid_field(dom, metric, (0.0, 0.0), resolution=RESOLUTION)
    contours = extract_contours(field, LEVELS)
    return render_svg(contours, dom)


def main() -> int:
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    for metric in METRICS:
        path = GOLDEN_DIR / f"pentagram_{metric}_{RESOLUTION}.svg"
        text = golden_svg(metric)
        path.write_text(text)
        print(f"wrote {path} ({len(text)} bytes)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
