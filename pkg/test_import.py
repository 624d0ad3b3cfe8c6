"""Smoke script for the Zinbiel toolkit."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent / "src"))

try:
    from zinbiel.algebra import families, identities, structure
    from zinbiel.app import ZinbielApp
    from zinbiel.core.logging import get_logger, setup_logging
    from zinbiel.models import FamilyId, FamilyParams

    setup_logging(log_level="INFO")
    logger = get_logger(__name__)

    logger.info("Testing Zinbiel toolkit imports and basic functionality")

    app = ZinbielApp()
    logger.info("App created", defaults=app.defaults.model_dump())

    a = families.build_family(FamilyParams(family=FamilyId.EX31))
    logger.info("EX31 built", dim=a.dim, zinbiel=not structure.zinbiel_defects(a))

    cert = identities.nonexistence_certificate(3)
    logger.info("Certificate for p=3", determinant=str(cert.determinant), infeasible=cert.infeasible)

    logger.info("Zinbiel toolkit smoke test completed")

except Exception as e:
    print(f"Smoke test failed: {e}", file=sys.stderr)
    import traceback

    traceback.print_exc()
    sys.exit(1)
