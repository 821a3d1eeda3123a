import os

from hypothesis import settings

# reproducible property runs: CARTANQUOT_HYPOTHESIS_PROFILE=dev explores new examples
settings.register_profile("ci", derandomize=True, deadline=None)
settings.register_profile("dev", deadline=None)
settings.load_profile(os.environ.get("CARTANQUOT_HYPOTHESIS_PROFILE", "ci"))
