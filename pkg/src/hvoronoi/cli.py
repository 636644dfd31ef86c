"""Command line pipeline: read sites, build the diagram, emit SVG or the
structured JSON format, optionally verifying the construction by sampling.

Exit status: 0 on success (including verified agreement 1.0), 2 when the
sampled verification disagrees with brute force, 1 on any input or
configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .models import GeometryError
from .oracle import verify_diagram
from .power import build_hvd
from .serialization import INPUT_MODELS, SiteFileError, diagram_to_json, load_sites
from .svg import OUTPUT_MODELS, render_svg

__all__ = ["RunConfig", "run", "main"]

VERIFY_MARGIN = 1e-7


class CLIError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    input_path: Path
    input_model: str = "klein"
    order: int = 1
    clip_radius: float = 1.0
    output_model: str = "klein"
    output_format: str = "structured"
    out_path: Path | None = None
    verify_samples: int = 0
    seed: int = 0
    arc_step: float = 0.02

    def __post_init__(self):
        if self.order < 1:
            raise CLIError(f"--order must be >= 1, got {self.order}")
        if not 0.0 < self.clip_radius <= 1.0:
            raise CLIError(f"--clip-l must satisfy 0 < l <= 1, got {self.clip_radius}")
        if self.arc_step <= 0.0:
            raise CLIError(f"--arc-step must be positive, got {self.arc_step}")
        if self.verify_samples < 0:
            raise CLIError(f"--verify-samples must be >= 0, got {self.verify_samples}")
        if self.input_model not in INPUT_MODELS:
            raise CLIError(f"--input-model must be one of {INPUT_MODELS}")
        if self.output_model not in OUTPUT_MODELS:
            raise CLIError(f"--output-model must be one of {OUTPUT_MODELS}")
        if self.output_format not in ("svg", "structured"):
            raise CLIError("--format must be svg or structured")


def run(config: RunConfig) -> int:
    """Execute the pipeline; returns the process exit status."""
    sites = load_sites(config.input_path, config.input_model)
    diagram = build_hvd(sites, order=config.order, clip_radius=config.clip_radius)

    if config.output_format == "svg":
        payload = render_svg(diagram, model=config.output_model, step=config.arc_step)
    else:
        # the structured format stores Klein coordinates by design; the
        # output model only affects rendering
        payload = diagram_to_json(diagram)
    if config.out_path is not None:
        Path(config.out_path).write_text(payload)
    else:
        sys.stdout.write(payload)

    if config.verify_samples > 0:
        report = verify_diagram(diagram, config.verify_samples, config.seed, VERIFY_MARGIN)
        print(json.dumps(report.to_dict()))
        if report.agreement_ratio != 1.0:
            return 2
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); config errors must exit 1
        raise CLIError(message)


def _build_parser() -> _Parser:
    p = _Parser(
        prog="hvoronoi",
        description="Order-k hyperbolic Voronoi diagrams in the Klein disk, "
        "built as clipped power diagrams.",
    )
    p.add_argument("--input", required=True, metavar="PATH", help="site file (one 'x y' pair per line)")
    p.add_argument("--input-model", default="klein", choices=list(INPUT_MODELS),
                   help="coordinate model of the input sites")
    p.add_argument("--order", type=int, default=1, metavar="K", help="diagram order k")
    p.add_argument("--clip-l", type=float, default=1.0, metavar="L", dest="clip_l",
                   help="clip-disk radius, 0 < L <= 1")
    p.add_argument("--output-model", default="klein", choices=list(OUTPUT_MODELS),
                   help="coordinate model of the rendered output")
    p.add_argument("--format", default="structured", choices=["svg", "structured"],
                   help="output format")
    p.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    p.add_argument("--verify-samples", type=int, default=0, metavar="N",
                   help="verify against the brute-force oracle with N samples")
    p.add_argument("--seed", type=int, default=0, metavar="S", help="verification sampling seed")
    p.add_argument("--arc-step", type=float, default=0.02, metavar="T",
                   help="sampling step for curved edges in poincare output")
    return p


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        config = RunConfig(
            input_path=Path(args.input),
            input_model=args.input_model,
            order=args.order,
            clip_radius=args.clip_l,
            output_model=args.output_model,
            output_format=args.format,
            out_path=Path(args.out) if args.out else None,
            verify_samples=args.verify_samples,
            seed=args.seed,
            arc_step=args.arc_step,
        )
        return run(config)
    except (CLIError, SiteFileError, GeometryError, OSError) as exc:
        print(f"hvoronoi: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
