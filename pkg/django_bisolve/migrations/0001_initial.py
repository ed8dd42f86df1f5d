# Generated by Django 5.2 on 2026-10-17 09:12

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name="SolveRecord",
            fields=[
                (
                    "id",
                    models.BigAutoField(
                        auto_created=True,
                        primary_key=True,
                        serialize=False,
                        verbose_name="ID",
                    ),
                ),
                (
                    "system_hash",
                    models.CharField(
                        help_text="MD5 hash of the canonical system and solver options.",
                        max_length=32,
                        unique=True,
                    ),
                ),
                ("f_text", models.TextField(help_text="First polynomial, as printed.")),
                ("g_text", models.TextField(help_text="Second polynomial, as printed.")),
                (
                    "report_json",
                    models.TextField(help_text="The serialized solve report."),
                ),
                (
                    "solve_ms",
                    models.FloatField(
                        help_text="Wall time of the solve that produced the report."
                    ),
                ),
                (
                    "certified",
                    models.PositiveIntegerField(
                        help_text="Number of certified solution boxes."
                    ),
                ),
                (
                    "undecided",
                    models.PositiveIntegerField(help_text="Number of undecided boxes."),
                ),
                (
                    "last_updated",
                    models.DateTimeField(
                        auto_now=True, help_text="When the report was last computed."
                    ),
                ),
                (
                    "expires_at",
                    models.DateTimeField(
                        db_index=True,
                        help_text="When this cached report should expire.",
                    ),
                ),
            ],
            options={
                "verbose_name": "Solve Report Cache Entry",
                "verbose_name_plural": "Solve Report Cache Entries",
            },
        ),
    ]
