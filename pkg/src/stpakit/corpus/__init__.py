"""Bundled case-study models and their golden renderings.

Model files are checked against ``SHA256SUMS`` before parsing so a
corrupted install fails loudly instead of producing wrong tables.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..analysis import stats
from ..diagnostics import has_errors
from ..dsl import parse
from ..model import StpaModel
from ..report import export_dot, export_json, render_hazard_table, render_uca_table

NAMES = ("pdmp", "cjfr")
CHECKSUM_FILE = "SHA256SUMS"
GOLDEN_DIR = "golden"


class CorpusError(Exception):
    pass


def corpus_dir() -> Path:
    return Path(str(resources.files(__name__)))


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    model_path: Path
    goldens: dict[str, Path] = field(default_factory=dict)


def _check_name(name: str) -> None:
    if name not in NAMES:
        raise CorpusError(f"unknown corpus {name!r} (expected one of {', '.join(NAMES)})")


def read_checksums(root: Path | None = None) -> dict[str, str]:
    root = root or corpus_dir()
    sums: dict[str, str] = {}
    for line in (root / CHECKSUM_FILE).read_text(encoding="utf-8").splitlines():
        if line.strip():
            digest, rel = line.split(maxsplit=1)
            sums[rel.strip()] = digest
    return sums


def sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def verify(rel: str, root: Path | None = None) -> Path:
    """Return the path of ``rel`` after confirming it matches its recorded digest."""
    root = root or corpus_dir()
    expected = read_checksums(root).get(rel)
    if expected is None:
        raise CorpusError(f"{rel} has no entry in {CHECKSUM_FILE}")
    path = root / rel
    actual = sha256(path)
    if actual != expected:
        raise CorpusError(f"checksum mismatch for {rel}: expected {expected}, got {actual}")
    return path


def source(name: str) -> str:
    _check_name(name)
    return verify(f"{name}.stpa").read_text(encoding="utf-8")


def load(name: str) -> StpaModel:
    """Parse a bundled corpus model; raises CorpusError on corruption or parse errors."""
    model, diags = parse(source(name))
    if has_errors(diags):
        first = next(d for d in diags if d.is_error)
        raise CorpusError(f"{name}.stpa does not parse: {first.render()}")
    return model


def golden_texts(name: str, model: StpaModel) -> dict[str, str]:
    """Every golden file for ``name`` as rendered from ``model``, keyed by file name."""
    out = {
        f"{name}_hazards.md": render_hazard_table(model, "markdown"),
        f"{name}_hazards.csv": render_hazard_table(model, "csv"),
    }
    for loop in model.loops:
        out[f"{name}_ucas_{loop.id}.md"] = render_uca_table(model, loop.id, "markdown")
    out[f"{name}.json"] = export_json(model)
    out[f"{name}.dot"] = export_dot(model)
    out[f"{name}_stats.txt"] = stats(model).to_text()
    return out


def entry(name: str) -> CorpusEntry:
    _check_name(name)
    root = corpus_dir()
    goldens = {fname: root / GOLDEN_DIR / fname for fname in golden_texts(name, load(name))}
    return CorpusEntry(name, root / f"{name}.stpa", goldens)


def regenerate(root: Path | None = None) -> list[Path]:
    """Rewrite all goldens from the model files and refresh ``SHA256SUMS``.

    Model files are read without checksum verification since they are the
    thing being re-hashed.
    """
    root = root or corpus_dir()
    written: list[Path] = []
    (root / GOLDEN_DIR).mkdir(exist_ok=True)
    for name in NAMES:
        model, diags = parse((root / f"{name}.stpa").read_text(encoding="utf-8"))
        if has_errors(diags):
            raise CorpusError(f"{name}.stpa does not parse")
        for fname, text in golden_texts(name, model).items():
            path = root / GOLDEN_DIR / fname
            path.write_text(text, encoding="utf-8", newline="\n")
            written.append(path)
    rels = [f"{n}.stpa" for n in NAMES] + sorted(
        f"{GOLDEN_DIR}/{p.name}" for p in (root / GOLDEN_DIR).iterdir() if p.is_file())
    lines = [f"{sha256(root / rel)}  {rel}" for rel in rels]
    (root / CHECKSUM_FILE).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    return written
