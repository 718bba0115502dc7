from .census import Mode, run_census, report, histogram
