from django.db import models
from django.utils import timezone

from .managers import SolveRecordManager


class SolveRecord(models.Model):
    """
    A cached solve report, keyed by the hash of the input system and the
    result-affecting solver options.
    """

    id = models.BigAutoField(
        auto_created=True, primary_key=True, serialize=False, verbose_name="ID"
    )  # Explicit so project settings do not override
    system_hash = models.CharField(
        max_length=32,  # MD5 hash length
        unique=True,
        help_text="MD5 hash of the canonical system and solver options.",
    )
    f_text = models.TextField(help_text="First polynomial, as printed.")
    g_text = models.TextField(help_text="Second polynomial, as printed.")
    report_json = models.TextField(help_text="The serialized solve report.")
    solve_ms = models.FloatField(help_text="Wall time of the solve that produced the report.")
    certified = models.PositiveIntegerField(help_text="Number of certified solution boxes.")
    undecided = models.PositiveIntegerField(help_text="Number of undecided boxes.")
    last_updated = models.DateTimeField(
        auto_now=True,
        help_text="When the report was last computed.",
    )
    expires_at = models.DateTimeField(
        db_index=True,
        help_text="When this cached report should expire.",
    )

    objects = SolveRecordManager()

    class Meta:
        verbose_name = "Solve Report Cache Entry"
        verbose_name_plural = "Solve Report Cache Entries"

    def __str__(self):
        return f"{self.f_text} = {self.g_text} = 0 [{self.system_hash[:8]}...]"

    @property
    def is_expired(self):
        return self.expires_at <= timezone.now()
