#!/usr/bin/env python3
"""Regenerate docs/registry.md from the live theorem registry.

The table is the human-readable contract for every audit entry; a test keeps
it in sync with the code.
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from factorlab.theorems import REGISTRY  # noqa: E402


def render() -> str:
    lines = [
        "# Theorem registry",
        "",
        "Each entry is an executable audit: the hypothesis column is checked",
        "exactly (every quantifier enumerated), the conclusion runs a complete",
        "finder, and a campaign verdict of COUNTEREXAMPLE on any corpus graph is",
        "a build-stopping defect.  Kinds: `implication` (hypothesis => object),",
        "`iff` (criterion and finder must agree both ways), `certificate`",
        "(the run itself produces the inequality or audit it asserts).",
        "",
        "| id | kind | title | statement |",
        "|----|------|-------|-----------|",
    ]
    for tid in sorted(REGISTRY):
        e = REGISTRY[tid]
        stmt = e.statement.replace("|", "\\|")
        lines.append(f"| {e.tid} | {e.kind} | {e.title} | {stmt} |")
    lines.append("")
    return "\n".join(lines)


def main() -> None:
    out = pathlib.Path(__file__).resolve().parents[1] / "docs" / "registry.md"
    out.write_text(render())
    print(f"wrote {out} ({len(REGISTRY)} entries)")


if __name__ == "__main__":
    main()
