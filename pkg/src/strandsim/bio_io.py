"""FASTA ingestion and fixed-size windowing."""
from __future__ import annotations

import io
from dataclasses import dataclass
from typing import IO, Iterator, Union

from .encoding import NucleotideSeq
from .exceptions import FastaFormatError, SequenceValidationError, UsageError
from .validation import ALPHABET, check_count, check_power_of_two

PAD_BASE = "G"

Source = Union[str, bytes, IO[str], IO[bytes]]


@dataclass(frozen=True)
class FastaRecord:
    id: str
    description: str
    sequence: NucleotideSeq

    @property
    def header(self) -> str:
        return f"{self.id} {self.description}" if self.description else self.id


@dataclass(frozen=True)
class Window:
    offset: int
    length: int
    padded_length: int
    bases: NucleotideSeq

    @property
    def pad_count(self) -> int:
        return self.padded_length - self.length


def _lines(source: Source) -> Iterator[str]:
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    if isinstance(source, str):
        source = io.StringIO(source)
    for line in source:
        if isinstance(line, bytes):
            line = line.decode("utf-8")
        yield line.rstrip("\r\n")


def iter_fasta(source: Source, skip_invalid: bool = False) -> Iterator[FastaRecord]:
    """Yield records as they are encountered.

    With ``skip_invalid`` a record holding a non-ACGT character is dropped
    whole instead of raising.
    """
    header = None
    chunks: list[str] = []
    bad = False

    def finish():
        rid, _, desc = header[1].partition(" ")
        return FastaRecord(rid, desc.strip(), NucleotideSeq(rid, "".join(chunks)))

    for lineno, line in enumerate(_lines(source), start=1):
        if line.startswith(">"):
            if header is not None and not bad:
                yield finish()
            text = line[1:].strip()
            if not text.split():
                raise FastaFormatError(f"line {lineno}: header has no identifier")
            header = (lineno, " ".join(text.split(None, 1)))
            chunks, bad = [], False
            continue
        seq = "".join(line.split()).upper()
        if not seq:
            continue
        if header is None:
            raise FastaFormatError(f"line {lineno}: sequence data before the first '>' header")
        if bad:
            continue
        for col, ch in enumerate(seq):
            if ch not in ALPHABET:
                if skip_invalid:
                    bad = True
                    break
                rid = header[1].split()[0]
                raise SequenceValidationError(
                    f"record {rid!r}, line {lineno}: invalid character {ch!r} (allowed: A, C, G, T)"
                )
        chunks.append(seq)
    if header is not None and not bad:
        if not chunks:
            raise SequenceValidationError(f"record {header[1].split()[0]!r} has no sequence")
        yield finish()


def parse_fasta(source: Source, skip_invalid: bool = False) -> list[FastaRecord]:
    return list(iter_fasta(source, skip_invalid=skip_invalid))


def read_fasta(path, skip_invalid: bool = False) -> list[FastaRecord]:
    with open(path, "rb") as fh:
        return parse_fasta(fh, skip_invalid=skip_invalid)


def format_fasta(records, width: int = 60) -> str:
    out = []
    for rec in records:
        out.append(f">{rec.header}")
        s = rec.sequence.bases
        out.extend(s[i : i + width] for i in range(0, len(s), width))
    return "\n".join(out) + ("\n" if out else "")


def windows(seq: NucleotideSeq, window_size: int, stride: int | None = None) -> list[Window]:
    """Cut ``seq`` into windows of ``window_size`` starting every ``stride`` bases.

    The last window is G-padded up to ``window_size``. Windows stop once one
    reaches the end of the sequence, so every base is covered at least once.
    """
    size = check_power_of_two(window_size, "window_size", minimum=2)
    stride = size if stride is None else check_count(stride, "stride", minimum=1)
    if stride > size:
        raise UsageError(f"stride {stride} exceeds window_size {size}; bases would be skipped")
    bases = seq.bases
    out = []
    offset = 0
    while True:
        chunk = bases[offset : offset + size]
        out.append(Window(offset, len(chunk), size, NucleotideSeq(seq.id, chunk + PAD_BASE * (size - len(chunk)))))
        if offset + size >= len(bases):
            break
        offset += stride
    return out
