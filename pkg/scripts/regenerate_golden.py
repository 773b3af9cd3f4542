"""Rewrite the golden report subsets under reports/golden/ from a fresh q=2 run."""
import logging
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from hermitinv.curve import HermitianCurve  # noqa: E402
from hermitinv.group import group_order_check  # noqa: E402
from hermitinv.invariants import degree_census  # noqa: E402
from hermitinv.report import dumps, golden_subset  # noqa: E402

logging.basicConfig(level=logging.INFO, format="[%(asctime)s] %(levelname)s %(name)s: %(message)s")
LOGGER = logging.getLogger("regenerate_golden")

GOLDEN_DIR = Path(__file__).resolve().parents[1] / "reports" / "golden"


def main() -> int:
    curve = HermitianCurve(2, 1)
    reports = {
        "count_points-q2-k1.json": curve.count_check(1),
        "count_points-q2-k3.json": curve.count_check(3),
        "group_order-q2.json": group_order_check(2, 1),
        "degree_census-q2.json": degree_census(2, 1),
    }
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    for name, report in reports.items():
        if not report.passed:
            LOGGER.error("%s failed; golden file left unchanged", name)
            return 1
        (GOLDEN_DIR / name).write_text(dumps(golden_subset(report)), encoding="utf-8")
        LOGGER.info("Wrote %s", GOLDEN_DIR / name)
    return 0


if __name__ == "__main__":
    sys.exit(main())
