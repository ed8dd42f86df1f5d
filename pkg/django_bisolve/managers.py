import hashlib
import logging
import time
from datetime import timedelta

from django.core.cache import cache
from django.db.models import Manager
from django.utils import timezone

from .conf import (
    DEFAULT_CACHE_REPORTS_SLOWER_THAN,
    DEFAULT_EXPIRE_CACHED_REPORTS_AFTER,
    Config,
    setting,
)
from .parser import format_poly
from .report import SolveReportSchema, render_json, to_schema
from .solver import solve

logger = logging.getLogger(__name__)


def _as_timedelta(value):
    if isinstance(value, timedelta):
        return value
    return timedelta(seconds=float(value))


class SolveRecordManager(Manager):
    """
    Serves solve reports from Django's cache or the SolveRecord table when a
    fresh entry exists, and otherwise solves. Reports whose solve took at
    least `cache_reports_slower_than` are stored retroactively in both.
    """

    def __init__(
        self,
        expire_cached_reports_after=None,
        cache_reports_slower_than=None,
        *args,
        **kwargs,
    ):
        super().__init__(*args, **kwargs)
        self.expire_cached_reports_after = _as_timedelta(
            expire_cached_reports_after
            if expire_cached_reports_after is not None
            else setting(
                "BISOLVE_EXPIRE_CACHED_REPORTS_AFTER",
                DEFAULT_EXPIRE_CACHED_REPORTS_AFTER,
            )
        )
        self.cache_reports_slower_than = _as_timedelta(
            cache_reports_slower_than
            if cache_reports_slower_than is not None
            else setting(
                "BISOLVE_CACHE_REPORTS_SLOWER_THAN", DEFAULT_CACHE_REPORTS_SLOWER_THAN
            )
        )

    def system_key(self, F, G, config):
        """Stable key for a system and the solver options that shape its report."""
        key_string = (
            f"{self.model.__module__}.{self.model.__name__}:"
            f"{format_poly(F)}:{format_poly(G)}:{config.cache_fingerprint()}"
        )
        return hashlib.md5(key_string.encode("utf-8")).hexdigest()

    def cached_solve(self, F, G, config=None):
        """Returns a SolveReportSchema for F = G = 0; solver errors propagate."""
        config = config or Config()
        key = self.system_key(F, G, config)
        now = timezone.now()
        try:
            cached = cache.get(key)
            if cached is not None:
                return SolveReportSchema.model_validate_json(cached)
        except Exception as e:
            logger.warning("Error reading cached report %s: %s", key[:8], e)
        try:
            record = self.get(system_hash=key, expires_at__gt=now)
            expires_seconds = (record.expires_at - now).total_seconds()
            if expires_seconds > 0:
                cache.set(key, record.report_json, int(expires_seconds))
            return SolveReportSchema.model_validate_json(record.report_json)
        except self.model.DoesNotExist:
            pass
        except Exception as e:
            logger.warning("Error checking the report table for %s: %s", key[:8], e)

        start = time.perf_counter()
        report = solve(F, G, config)
        solve_ms = (time.perf_counter() - start) * 1000
        schema = to_schema(report, F, G, include_timings=True)
        if solve_ms >= self.cache_reports_slower_than.total_seconds() * 1000:
            self._store(key, F, G, schema, solve_ms, now)
        return schema

    def _store(self, key, F, G, schema, solve_ms, now):
        payload = render_json(schema)
        expires_seconds = self.expire_cached_reports_after.total_seconds()
        try:
            self.update_or_create(
                system_hash=key,
                defaults={
                    "f_text": format_poly(F),
                    "g_text": format_poly(G),
                    "report_json": payload,
                    "solve_ms": solve_ms,
                    "certified": len(schema.solutions),
                    "undecided": len(schema.undecided),
                    "expires_at": now + self.expire_cached_reports_after,
                },
            )
        except Exception as e:
            logger.warning("Error caching report %s in the database: %s", key[:8], e)
        if expires_seconds > 0:
            cache.set(key, payload, int(expires_seconds))
        logger.info("cached report %s (%.1f ms solve)", key[:8], solve_ms)

    def prune_expired(self):
        """Deletes expired records; returns how many were removed."""
        expired = self.filter(expires_at__lt=timezone.now())
        if not expired.exists():
            return 0
        num_deleted, _ = expired.delete()
        return num_deleted
