import argparse
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from django_bisolve.conf import OUTPUT_FORMATS, Config, DEFAULT_SEED
from django_bisolve.errors import ConfigError
from django_bisolve.models import SolveRecord
from django_bisolve.runner import EXIT_OK, EXIT_UNDECIDED, run


def _read(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise CommandError(f"cannot read {path}: {e}", returncode=1)


class Command(BaseCommand):
    help = (
        "Certified real solving of bivariate polynomial systems: "
        "solve, isolate, resultant and bench."
    )

    def add_arguments(self, parser):
        sub = parser.add_subparsers(dest="subcommand", required=True)

        def with_input_options(p):
            p.add_argument(
                "--json",
                action="store_true",
                help='Input files hold {"monomials": [[i, j, "coeff"], ...]}.',
            )
            p.add_argument("--format", choices=OUTPUT_FORMATS, default=None)

        solve = sub.add_parser("solve", help="Isolate the real solutions of F = G = 0.")
        solve.add_argument("f_file")
        solve.add_argument("g_file")
        solve.add_argument("--max-depth", type=int, default=None)
        solve.add_argument("--target-width", default=None, help="Rational P/Q.")
        solve.add_argument(
            "--fast-eval", action=argparse.BooleanOptionalAction, default=None
        )
        solve.add_argument("--workers", type=int, default=None)
        solve.add_argument(
            "--timings", action="store_true", help="Include wall times in the report."
        )
        solve.add_argument(
            "--no-cache", action="store_true", help="Always solve; skip the report cache."
        )
        with_input_options(solve)

        isolate = sub.add_parser("isolate", help="Isolate the real roots of p.")
        isolate.add_argument("p_file")
        with_input_options(isolate)

        res = sub.add_parser("resultant", help="Resultant of F and G.")
        res.add_argument("f_file")
        res.add_argument("g_file")
        res.add_argument("--var", choices=("x", "y"), default="y")
        with_input_options(res)

        bench = sub.add_parser("bench", help="Benchmark random dense systems.")
        bench.add_argument("--n-min", type=int, default=2)
        bench.add_argument("--n-max", type=int, default=4)
        bench.add_argument("--tau", type=int, default=4)
        bench.add_argument("--count", type=int, default=3)
        bench.add_argument("--seed", type=int, default=DEFAULT_SEED)
        bench.add_argument("--out", default="-", help="CSV path, '-' for stdout.")
        bench.add_argument(
            "--multipoint",
            type=int,
            default=None,
            metavar="DEG",
            help="Time subproduct-tree against Horner evaluation instead.",
        )
        bench.add_argument(
            "--no-timings",
            action="store_true",
            help="Leave the wall-time columns empty.",
        )

    def handle(self, *args, **options):
        command = options["subcommand"]
        try:
            config = Config.from_settings(
                max_depth=options.get("max_depth"),
                target_width=options.get("target_width"),
                fast_eval=options.get("fast_eval"),
                workers=options.get("workers"),
                output_format=options.get("format"),
                seed=options.get("seed"),
                include_timings=options.get("timings"),
            )
        except ConfigError as e:
            raise CommandError(str(e), returncode=1)

        inputs = {"json": options.get("json", False)}
        solver = None
        if command == "solve":
            inputs.update(f=_read(options["f_file"]), g=_read(options["g_file"]))
            if not options["no_cache"]:
                solver = SolveRecord.objects.cached_solve
        elif command == "isolate":
            inputs["p"] = _read(options["p_file"])
        elif command == "resultant":
            inputs.update(
                f=_read(options["f_file"]), g=_read(options["g_file"]), var=options["var"]
            )
        else:
            inputs.update(
                n_min=options["n_min"],
                n_max=options["n_max"],
                tau=options["tau"],
                count=options["count"],
                multipoint=options["multipoint"],
                timings=not options["no_timings"],
            )

        result = run(command, inputs, config, solver=solver)
        if result.output:
            if command == "bench" and options["out"] != "-":
                Path(options["out"]).write_text(result.output, encoding="utf-8")
                self.stdout.write(self.style.SUCCESS(f"Wrote {options['out']}"))
            else:
                self.stdout.write(result.output, ending="")
        if result.exit_code == EXIT_OK:
            return
        if result.exit_code == EXIT_UNDECIDED:
            self.stderr.write(self.style.WARNING(result.message))
        raise CommandError(result.message, returncode=result.exit_code)
