"""Sequence files: a JSON sidecar plus a body.

The body holds little-endian packed bits for binary alphabets and one byte
per symbol otherwise (the marker written as 2^L). The sidecar sits next to
the body as ``<body>.json``.
"""

import logging
from pathlib import Path
from typing import Union

import numpy as np

from src.config.model import SequenceHeader
from src.core_model.alphabet import AlphabetDescriptor
from src.sequence_forge.memo import ByteBuffer, PackedBitBuffer, SymbolBuffer
from src.sequence_forge.sequence import SymbolSequence

logger = logging.getLogger("sequence_forge")


def sidecar_path(body: Union[str, Path]) -> Path:
    body = Path(body)
    return body.with_name(body.name + ".json")


def write_sequence(
    sequence: SymbolSequence, length: int, body: Union[str, Path], *, seed: int
) -> SequenceHeader:
    """Write the first ``length`` symbols of ``sequence`` and its sidecar."""
    body = Path(body)
    body.parent.mkdir(parents=True, exist_ok=True)
    symbols = np.asarray(sequence.prefix(length), dtype=np.uint8)
    alphabet = sequence.alphabet
    binary = alphabet.block_bits == 1 and not alphabet.has_dollar
    if binary:
        payload = np.packbits(symbols, bitorder="little").tobytes()
    else:
        payload = symbols.tobytes()
    body.write_bytes(payload)
    header = SequenceHeader(
        family=sequence.family,
        h=sequence.h,
        block_bits=alphabet.block_bits,
        has_dollar=alphabet.has_dollar,
        seed=seed,
        length=length,
        alphabet_size=alphabet.size,
        encoding="packed-bits" if binary else "bytes",
    )
    sidecar_path(body).write_text(header.model_dump_json(indent=2) + "\n")
    logger.info(f"wrote {length} {sequence.family} symbols to {body}")
    return header


def read_header(body: Union[str, Path]) -> SequenceHeader:
    """Read the sidecar of a sequence body file."""
    return SequenceHeader.model_validate_json(sidecar_path(body).read_text())


def load_sequence(body: Union[str, Path]) -> SymbolSequence:
    """Load a sequence file as a finite, fully memoized sequence."""
    header = read_header(body)
    raw = np.fromfile(str(body), dtype=np.uint8)
    buffer: SymbolBuffer
    if header.encoding == "packed-bits":
        symbols = np.unpackbits(raw, bitorder="little", count=header.length)
        buffer = PackedBitBuffer(capacity=header.length + 8)
    else:
        symbols = raw[: header.length]
        buffer = ByteBuffer(capacity=max(header.length, 1))
    if symbols.size != header.length:
        raise ValueError(f"{body} holds {symbols.size} symbols, sidecar says {header.length}")
    buffer.append(symbols)
    return SymbolSequence(
        family=header.family,
        alphabet=AlphabetDescriptor(block_bits=header.block_bits, has_dollar=header.has_dollar),
        generator=None,
        h=header.h,
        buffer=buffer,
        length_limit=header.length,
    )
