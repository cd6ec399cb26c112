"""On-disk formats: code descriptors, share files and message files.

Share files are binary::

    b"SMDC" | version u8 | scheme u8 | p u64le | L u8
    | len(m) u8 | m bytes | len(N) u8 | N bytes
    | L x (count u32le | count symbols, each symbol_width(p) bytes little-endian)

Message files are one line of JSON ``{"p": .., "m": [..]}`` followed by the
raw little-endian symbols of M_1, M_2, ... in order.
"""
from __future__ import annotations

import json
import struct
from typing import Sequence

import numpy as np

from .codec import SCHEME_BYTES, CodeSpec, ShareSet, SmdcCode, SubCode
from .errors import FormatError
from .field import symbol_width
from .mds import generator_from_json, generator_to_json

MAGIC = b"SMDC"
VERSION = 1
CUSTOM_SCHEME = 255
DESCRIPTOR_VERSION = 1


# ---------------------------------------------------------------------------
# descriptors


def code_to_json(code: SmdcCode) -> dict:
    doc = {
        "format": "smdc-code",
        "version": DESCRIPTOR_VERSION,
        "scheme": code.scheme,
        **code.spec.to_json(),
        "seed": code.seed,
        "blocklength": code.blocklength,
    }
    for name in ("alpha", "beta", "r"):
        if name in code.params:
            doc[name] = code.params[name]
    doc["params"] = {k: _plain(v) for k, v in code.params.items()}
    doc["generators"] = [
        {
            "level": s.level,
            "block": s.block,
            "kind": s.kind,
            "inputs": list(s.inputs),
            "positions": list(s.positions),
            "generator": generator_to_json(s.generator) if s.generator is not None else None,
        }
        for s in code.subcodes
    ]
    doc["variables"] = list(code.variables)
    doc["message_index"] = [list(ix) for ix in code.message_index]
    doc["key_index"] = list(code.key_index)
    doc["share_rows"] = [rows.tolist() for rows in code.share_rows]
    return doc


def _plain(v):
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (np.integer,)):
        return int(v)
    return v


def code_from_json(doc: dict) -> SmdcCode:
    """Rebuild an SmdcCode from a descriptor without re-running the construction."""
    try:
        if doc.get("format") != "smdc-code":
            raise FormatError("not an smdc code descriptor")
        if doc.get("version") != DESCRIPTOR_VERSION:
            raise FormatError(f"unsupported descriptor version {doc.get('version')!r}")
        spec = CodeSpec.from_json(doc)
        variables = tuple(doc["variables"])
        width = len(variables)
        share_rows = []
        for rows in doc["share_rows"]:
            arr = np.array(rows, dtype=np.int64).reshape(len(rows), width)
            if arr.size and (arr.min() < 0 or arr.max() >= spec.p):
                raise FormatError("share coefficients outside the field")
            arr.setflags(write=False)
            share_rows.append(arr)
        if len(share_rows) != spec.L:
            raise FormatError(f"descriptor lists {len(share_rows)} encoders, L={spec.L}")
        subcodes = tuple(
            SubCode(
                level=s["level"],
                block=s["block"],
                kind=s["kind"],
                generator=generator_from_json(s["generator"]) if s["generator"] is not None else None,
                inputs=tuple(s["inputs"]),
                positions=tuple(s["positions"]),
            )
            for s in doc.get("generators", [])
        )
        message_index = tuple(tuple(ix) for ix in doc["message_index"])
        key_index = tuple(doc["key_index"])
        if sorted(i for ix in message_index for i in ix) + sorted(key_index) != list(range(width)):
            raise FormatError("message and key indices do not partition the free symbols")
        return SmdcCode(
            spec=spec,
            scheme=doc["scheme"],
            blocklength=int(doc["blocklength"]),
            seed=int(doc["seed"]),
            variables=variables,
            message_index=message_index,
            key_index=key_index,
            share_rows=tuple(share_rows),
            subcodes=subcodes,
            params=dict(doc.get("params", {})),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed code descriptor: {exc}") from exc


def dump_json(doc, path=None) -> str:
    text = json.dumps(doc, indent=2) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def save_code(code: SmdcCode, path) -> None:
    dump_json(code_to_json(code), path)


def load_code(path) -> SmdcCode:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc
    return code_from_json(doc)


def load_spec(path) -> CodeSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc
    try:
        return CodeSpec.from_json(doc)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"{path}: malformed spec ({exc})") from exc


# ---------------------------------------------------------------------------
# shares


def _symbols_to_bytes(values, p: int) -> bytes:
    w = symbol_width(p)
    return b"".join(int(v).to_bytes(w, "little") for v in values)


def _symbols_from_bytes(buf: bytes, count: int, p: int) -> list[int]:
    w = symbol_width(p)
    out = [int.from_bytes(buf[i * w : (i + 1) * w], "little") for i in range(count)]
    if any(v >= p for v in out):
        raise FormatError(f"symbol outside GF({p})")
    return out


def shares_to_bytes(code_or_spec, shares, scheme: str | None = None) -> bytes:
    """Serialize a ShareSet (or per-encoder symbol lists) to the wire format."""
    if isinstance(code_or_spec, SmdcCode):
        spec, scheme = code_or_spec.spec, code_or_spec.scheme
    else:
        spec = code_or_spec
    p, L = spec.p, spec.L
    payloads = shares.shares if isinstance(shares, ShareSet) else tuple(shares)
    if len(payloads) != L:
        raise FormatError(f"expected {L} share payloads, got {len(payloads)}")
    if any(v > 255 for v in (*spec.m, *spec.N)):
        raise FormatError("m and N entries must fit in one byte each")
    out = bytearray(MAGIC)
    out += struct.pack("<BBQB", VERSION, SCHEME_BYTES.get(scheme, CUSTOM_SCHEME), p, L)
    for arr in (spec.m, spec.N):
        out += struct.pack("<B", len(arr)) + bytes(arr)
    for sym in payloads:
        out += struct.pack("<I", len(sym)) + _symbols_to_bytes(sym, p)
    return bytes(out)


def shares_from_bytes(buf: bytes) -> tuple[CodeSpec, int, ShareSet]:
    """Parse a share file; returns (spec, scheme byte, shares)."""
    if len(buf) < 4 or buf[:4] != MAGIC:
        raise FormatError("bad magic: not an SMDC share file")
    try:
        version, scheme, p, L = struct.unpack_from("<BBQB", buf, 4)
        if version != VERSION:
            raise FormatError(f"unsupported share format version {version}")
        pos = 4 + struct.calcsize("<BBQB")
        arrays = []
        for _ in range(2):
            n = buf[pos]
            arrays.append(tuple(buf[pos + 1 : pos + 1 + n]))
            if len(arrays[-1]) != n:
                raise FormatError("truncated header")
            pos += 1 + n
        spec = CodeSpec(L=L, p=p, m=arrays[0], N=arrays[1])
        w = symbol_width(p)
        payloads = []
        for _ in range(L):
            (count,) = struct.unpack_from("<I", buf, pos)
            pos += 4
            chunk = buf[pos : pos + count * w]
            if len(chunk) != count * w:
                raise FormatError("truncated share payload")
            payloads.append(tuple(_symbols_from_bytes(chunk, count, p)))
            pos += count * w
    except (struct.error, IndexError) as exc:
        raise FormatError(f"truncated share file ({exc})") from exc
    if pos != len(buf):
        raise FormatError(f"{len(buf) - pos} trailing bytes after the last payload")
    return spec, scheme, ShareSet(tuple(payloads), p)


def write_shares(path, code: SmdcCode, shares: ShareSet) -> None:
    with open(path, "wb") as fh:
        fh.write(shares_to_bytes(code, shares))


def read_shares(path) -> tuple[CodeSpec, int, ShareSet]:
    with open(path, "rb") as fh:
        return shares_from_bytes(fh.read())


# ---------------------------------------------------------------------------
# messages


def messages_to_bytes(p: int, messages: Sequence[Sequence[int]]) -> bytes:
    header = json.dumps({"p": p, "m": [len(msg) for msg in messages]}, separators=(",", ":"))
    return header.encode() + b"\n" + b"".join(_symbols_to_bytes(msg, p) for msg in messages)


def messages_from_bytes(buf: bytes) -> tuple[int, list[list[int]]]:
    nl = buf.find(b"\n")
    if nl < 0:
        raise FormatError("message file has no JSON header line")
    try:
        header = json.loads(buf[:nl])
        p, sizes = int(header["p"]), [int(v) for v in header["m"]]
    except (ValueError, KeyError, TypeError) as exc:
        raise FormatError(f"bad message header: {exc}") from exc
    w = symbol_width(p)
    body = buf[nl + 1 :]
    if len(body) != sum(sizes) * w:
        raise FormatError(f"message body has {len(body)} bytes, header implies {sum(sizes) * w}")
    out, pos = [], 0
    for n in sizes:
        out.append(_symbols_from_bytes(body[pos : pos + n * w], n, p))
        pos += n * w
    return p, out


def write_messages(path, p: int, messages) -> None:
    with open(path, "wb") as fh:
        fh.write(messages_to_bytes(p, messages))


def read_messages(path) -> tuple[int, list[list[int]]]:
    with open(path, "rb") as fh:
        return messages_from_bytes(fh.read())
