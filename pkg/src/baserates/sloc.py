"""Line classification of source text into code, comment, and blank lines.

A line is blank when it holds only whitespace, a comment when its only
non-whitespace content lies inside comment regions, and code otherwise,
so mixed lines count as code. Block-comment state carries across lines,
and comment openers inside string literals are inert. Two limitations
are deliberate: block comments do not nest (the first close delimiter
ends the comment), and string literals do not span lines.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path

from .facts import FactKey, SizeRecord

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LanguageSyntax:
    """Comment and string syntax for one language, keyed by file extension."""

    name: str
    extensions: tuple[str, ...]
    line_comments: tuple[str, ...] = ()
    block_comments: tuple[tuple[str, str], ...] = ()
    string_delimiters: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.extensions:
            raise ValueError(f"language {self.name!r} declares no extensions")
        delimiters = list(self.line_comments) + list(self.string_delimiters)
        for open_delim, close_delim in self.block_comments:
            delimiters += [open_delim, close_delim]
        if any(not d for d in delimiters):
            raise ValueError(f"language {self.name!r} has an empty delimiter")


@dataclass(frozen=True)
class LineCounts:
    code: int = 0
    comment: int = 0
    blank: int = 0

    @property
    def total(self) -> int:
        return self.code + self.comment + self.blank

    def __add__(self, other: "LineCounts") -> "LineCounts":
        return LineCounts(
            self.code + other.code,
            self.comment + other.comment,
            self.blank + other.blank,
        )


@dataclass(frozen=True)
class FileCount:
    """Classification result for one file."""

    path: str
    language: str
    counts: LineCounts

    @property
    def code(self) -> int:
        return self.counts.code

    @property
    def comment(self) -> int:
        return self.counts.comment

    @property
    def blank(self) -> int:
        return self.counts.blank


def physical_lines(text: str) -> list[str]:
    """Split text into physical lines; a final unterminated line still counts."""
    if not text:
        return []
    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()
    return [line[:-1] if line.endswith("\r") else line for line in lines]


def classify_lines(text: str, syntax: LanguageSyntax) -> LineCounts:
    """Count code, comment, and blank lines of ``text`` under ``syntax``.

    The three counts always sum to the number of physical lines.
    """
    code = comment = blank = 0
    block_close: str | None = None
    for line in physical_lines(text):
        kind, block_close = _classify_line(line, syntax, block_close)
        if kind == "code":
            code += 1
        elif kind == "comment":
            comment += 1
        else:
            blank += 1
    return LineCounts(code, comment, blank)


def _match_at(line: str, pos: int, candidates) -> str | None:
    for candidate in candidates:
        if line.startswith(candidate, pos):
            return candidate
    return None


def _classify_line(
    line: str, syntax: LanguageSyntax, block_close: str | None
) -> tuple[str, str | None]:
    """Classify one line and thread the open block-comment delimiter through."""
    if not line.strip():
        return "blank", block_close

    has_code = False
    has_comment = False
    string_close: str | None = None
    i = 0
    n = len(line)
    while i < n:
        if block_close is not None:
            # The delimiters themselves count as comment content.
            has_comment = True
            end = line.find(block_close, i)
            if end == -1:
                i = n
            else:
                i = end + len(block_close)
                block_close = None
            continue
        if string_close is not None:
            if line[i] == "\\":
                i += 2
                continue
            if line.startswith(string_close, i):
                i += len(string_close)
                string_close = None
                continue
            i += 1
            continue
        if line[i].isspace():
            i += 1
            continue
        if _match_at(line, i, syntax.line_comments):
            has_comment = True
            break
        opener_pair = next(
            (pair for pair in syntax.block_comments if line.startswith(pair[0], i)),
            None,
        )
        if opener_pair is not None:
            has_comment = True
            block_close = opener_pair[1]
            i += len(opener_pair[0])
            continue
        delimiter = _match_at(line, i, syntax.string_delimiters)
        if delimiter is not None:
            has_code = True
            string_close = delimiter
            i += len(delimiter)
            continue
        has_code = True
        i += 1

    return ("code" if has_code else "comment"), block_close


def default_registry() -> list[LanguageSyntax]:
    """Built-in languages: C-style comments, hash scripting, plain text."""
    return [
        LanguageSyntax(
            name="clike",
            extensions=(
                ".c",
                ".h",
                ".cc",
                ".hh",
                ".cpp",
                ".hpp",
                ".cxx",
                ".java",
                ".js",
                ".ts",
                ".cs",
                ".go",
                ".rs",
            ),
            line_comments=("//",),
            block_comments=(("/*", "*/"),),
            string_delimiters=('"', "'"),
        ),
        LanguageSyntax(
            name="hash",
            extensions=(".py", ".sh", ".bash", ".rb", ".pl", ".r", ".yaml", ".yml", ".toml"),
            line_comments=("#",),
            string_delimiters=('"', "'"),
        ),
        LanguageSyntax(
            name="text",
            extensions=(".txt", ".md", ".rst"),
        ),
    ]


def load_registry(path) -> list[LanguageSyntax]:
    """Default registry extended by a JSON config; its entries win extension clashes.

    Expected shape: {"languages": [{"name": ..., "extensions": [...],
    "line_comments": [...], "block_comments": [[open, close], ...],
    "string_delimiters": [...]}]}.
    """
    with Path(path).open(encoding="utf-8") as handle:
        doc = json.load(handle)
    languages = default_registry()
    for raw in doc.get("languages", []):
        try:
            languages.append(
                LanguageSyntax(
                    name=str(raw["name"]),
                    extensions=tuple(raw["extensions"]),
                    line_comments=tuple(raw.get("line_comments", ())),
                    block_comments=tuple(
                        (open_delim, close_delim)
                        for open_delim, close_delim in raw.get("block_comments", ())
                    ),
                    string_delimiters=tuple(raw.get("string_delimiters", ())),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"{path}: bad registry entry {raw!r}: {exc}") from exc
    return languages


def extension_map(registry) -> dict[str, LanguageSyntax]:
    """Extension (lowercase, with dot) to syntax; later registry entries win."""
    mapping: dict[str, LanguageSyntax] = {}
    for syntax in registry:
        for extension in syntax.extensions:
            mapping[extension.lower()] = syntax
    return mapping


def count_file(path, syntax: LanguageSyntax) -> FileCount:
    """Classify one file; invalid UTF-8 bytes become replacement characters."""
    return FileCount(str(path), syntax.name, _read_and_classify(path, syntax))


def _read_and_classify(path, syntax: LanguageSyntax) -> LineCounts:
    data = Path(path).read_bytes()
    return classify_lines(data.decode("utf-8", errors="replace"), syntax)


@dataclass
class TreeCount:
    """Per-file counts plus per-language and overall totals for one tree walk."""

    files: list[FileCount] = field(default_factory=list)
    by_language: dict[str, LineCounts] = field(default_factory=dict)
    total: LineCounts = LineCounts()
    skipped: int = 0
    unreadable: list[str] = field(default_factory=list)


def count_tree(root, registry) -> TreeCount:
    """Classify every registered file under ``root``, in sorted walk order.

    Files with unregistered extensions are skipped and counted; files
    that cannot be read are recorded and left out of the totals.
    """
    root = Path(root)
    if not root.is_dir():
        raise NotADirectoryError(f"not a directory: {root}")
    by_extension = extension_map(registry)
    result = TreeCount()
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames.sort()
        for filename in sorted(filenames):
            path = Path(dirpath) / filename
            syntax = by_extension.get(path.suffix.lower())
            if syntax is None:
                result.skipped += 1
                continue
            try:
                counts = _read_and_classify(path, syntax)
            except OSError as exc:
                message = f"{path}: {exc.strerror or exc}"
                result.unreadable.append(message)
                logger.warning("skipping unreadable file %s", message)
                continue
            result.files.append(
                FileCount(path.relative_to(root).as_posix(), syntax.name, counts)
            )
            result.by_language[syntax.name] = (
                result.by_language.get(syntax.name, LineCounts()) + counts
            )
            result.total = result.total + counts
    return result


def snapshot_to_size_facts(project: str, snapshots, registry) -> list[SizeRecord]:
    """One size record per (year, month, tree root) snapshot.

    Snapshots must be strictly increasing in (year, month); a duplicate
    or out-of-order month is an error.
    """
    records: list[SizeRecord] = []
    last: tuple[int, int] | None = None
    for year, month, root in snapshots:
        if last is not None and (year, month) <= last:
            raise ValueError(
                f"snapshots must be strictly increasing; got {(year, month)} after {last}"
            )
        last = (year, month)
        tree = count_tree(root, registry)
        records.append(
            SizeRecord(
                FactKey(project, year, month),
                tree.total.code,
                tree.total.comment,
                tree.total.blank,
            )
        )
    return records
