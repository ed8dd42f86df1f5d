from django.apps import apps
from django.core.management.base import BaseCommand

from django_bisolve.managers import SolveRecordManager


class Command(BaseCommand):
    help = "Deletes expired cached solve reports."

    def handle(self, *args, **options):
        self.stdout.write("Pruning expired solve reports...")
        num_expired = 0
        seen_tables = set()
        for model in apps.get_models(include_auto_created=False):
            table = model._meta.db_table
            managers = getattr(model._meta, "managers_map", {})
            for manager_name, manager in managers.items():
                if not isinstance(manager, SolveRecordManager) or table in seen_tables:
                    continue
                seen_tables.add(table)
                self.stdout.write(
                    self.style.NOTICE(
                        f"Processing: {model._meta.app_label}.{model.__name__} "
                        f"(manager: '{manager_name}')"
                    )
                )
                num_expired += manager.prune_expired()

        self.stdout.write("-" * 30)
        if num_expired > 0:
            self.stdout.write(
                self.style.SUCCESS(f"Deleted {num_expired} expired solve reports.")
            )
        else:
            self.stdout.write(self.style.WARNING("No solve reports were expired."))
