from datetime import timedelta

from django_bisolve.managers import SolveRecordManager


class AlwaysCachingSolveRecordManager(SolveRecordManager):
    """
    Stores every report regardless of how long the solve took, and keeps it
    for one minute.
    """

    def __init__(self, *args, **kwargs):
        kwargs.setdefault("cache_reports_slower_than", timedelta(0))
        kwargs.setdefault("expire_cached_reports_after", timedelta(minutes=1))
        super().__init__(*args, **kwargs)
