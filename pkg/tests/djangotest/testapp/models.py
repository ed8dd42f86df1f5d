from datetime import timedelta

from django_bisolve.managers import SolveRecordManager
from django_bisolve.models import SolveRecord

from .managers import AlwaysCachingSolveRecordManager


class ShortLivedSolveRecord(SolveRecord):
    """Same table as SolveRecord, with an aggressive caching policy."""

    objects = AlwaysCachingSolveRecordManager()

    class Meta:
        proxy = True
        app_label = "testapp"


class NeverCachingSolveRecord(SolveRecord):
    objects = SolveRecordManager(cache_reports_slower_than=timedelta(days=1))

    class Meta:
        proxy = True
        app_label = "testapp"
